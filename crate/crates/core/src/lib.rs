//! Exact combinatorics for categories of two-row partitions: category
//! operations, bounded categorial hulls, classification of generated
//! categories, intertwiner matrices and moment counting.

pub mod catalog;
pub mod classify;
pub mod closure;
mod dsu;
pub mod linmap;
pub mod moments;
pub mod ops;
pub mod partition;
pub mod report;

pub use catalog::{named_partition, CatalogEntry, CatalogError, Category, NamedPartition, World};
pub use classify::{classify_classical, classify_easy, classify_noncrossing, ClassWorld, Classification, Evidence};
pub use closure::{closure_contains, generate_closure, Budgets, ClosureError, ClosureSet, Membership};
pub use linmap::{
    check_functor, check_intertwiner, classical_rep, delta, t_matrix, GroupRep, IntertwinerMatrix, LinmapError, RepKind,
};
pub use moments::{
    closed_form, count_moments, moments_from_cumulants, transform, ClosedForm, CumulantKind, CumulantSpec, Law, Letter,
    MomentSequence, MomentsError, Transform,
};
pub use ops::{compose, enumerate_all, involute, rotate, tensor, ComposeResult, OpError, Rotation};
pub use partition::{BlockProfile, Linearization, Mark, Partition, PartitionError, Point, Row};
