//! Bounded categorial hulls.
//!
//! Every partition is identified with its counterclockwise reading on a
//! single line, since rotations move points between rows without changing
//! that reading. On one-line partitions the category operations become:
//!
//! * cyclic rotation and reflection (rotations and involution),
//! * contraction of two cyclically adjacent points (composition with a
//!   rotated pair partition),
//! * concatenation followed by nested contractions across the two seams
//!   (tensor product and composition).
//!
//! The stored set is kept closed under the unary moves after every
//! insertion, so a binary step only needs the minimal number of seam
//! contractions that brings a transient product back under the point
//! budget.

use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use smallvec::SmallVec;
use thiserror::Error;

use crate::dsu::DisjointSets;
use crate::partition::{normalize_labels, Partition};

pub(crate) type Line = SmallVec<[u8; 16]>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("inconsistent budgets: {0}")]
    Budget(String),
    #[error("generator {0} is not noncrossing")]
    NotNoncrossing(Partition),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Largest stored element, in points.
    pub point_budget: usize,
    /// Largest transient product, in points.
    pub intermediate_budget: usize,
}

impl Budgets {
    pub const fn new(point_budget: usize, intermediate_budget: usize) -> Self {
        Budgets {
            point_budget,
            intermediate_budget,
        }
    }
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets::new(8, 16)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    Confirmed,
    NotFoundWithinBudget,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::Confirmed => "Confirmed",
            Membership::NotFoundWithinBudget => "NotFoundWithinBudget",
        })
    }
}

pub(crate) fn line_of(p: &Partition) -> Line {
    normalize_labels(&p.linear_labels()).into_iter().collect()
}

fn normalized(raw: impl IntoIterator<Item = u8>) -> Line {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    raw.into_iter()
        .map(|r| {
            if map[r as usize] == u8::MAX {
                map[r as usize] = next;
                next += 1;
            }
            map[r as usize]
        })
        .collect()
}

fn rotated(line: &Line) -> Line {
    normalized(line.iter().skip(1).chain(line.first()).copied())
}

fn reflected(line: &Line) -> Line {
    normalized(line.iter().rev().copied())
}

/// Joins the blocks of positions `i` and `i+1 (mod n)` and removes both.
fn contracted(line: &Line, i: usize) -> Line {
    let n = line.len();
    let j = (i + 1) % n;
    let (keep, merge) = (line[i], line[j]);
    normalized(
        line.iter()
            .enumerate()
            .filter(|&(pos, _)| pos != i && pos != j)
            .map(|(_, &b)| if b == merge { keep } else { b }),
    )
}

/// `x` followed by `y` on a circle, with `a` nested contractions across
/// the seam `x|y` and `b` across the seam `y|x`.
fn seam_contracted(x: &Line, y: &Line, a: usize, b: usize) -> Line {
    let (n, m) = (x.len(), y.len());
    let bx = x.iter().map(|&v| v as usize + 1).max().unwrap_or(0);
    let by = y.iter().map(|&v| v as usize + 1).max().unwrap_or(0);
    let mut sets = DisjointSets::new(bx + by);
    for i in 0..a {
        sets.union(x[n - 1 - i] as usize, bx + y[i] as usize);
    }
    for i in 0..b {
        sets.union(bx + y[m - 1 - i] as usize, x[i] as usize);
    }
    let mut raw: SmallVec<[u8; 32]> = SmallVec::new();
    raw.extend(x[b..n - a].iter().map(|&v| sets.find(v as usize) as u8));
    raw.extend(y[a..m - b].iter().map(|&v| sets.find(bx + v as usize) as u8));
    normalized(raw)
}

/// A bounded lower approximation of the category generated by a set of
/// partitions.
#[derive(Debug, Clone)]
pub struct ClosureSet {
    generators: Vec<Partition>,
    budgets: Budgets,
    store: FxHashSet<Line>,
    order: Vec<Line>,
    /// Elements before this index have already been combined with every
    /// element before it.
    processed: usize,
    saturated: bool,
}

impl ClosureSet {
    /// Seeds the closure with the generators, the unit and the pair, and
    /// closes the seed under rotation, reflection and contraction.
    pub fn new(generators: &[Partition], budgets: Budgets) -> Result<Self, ClosureError> {
        if budgets.intermediate_budget < budgets.point_budget {
            return Err(ClosureError::Budget(format!(
                "intermediate budget {} is below point budget {}",
                budgets.intermediate_budget, budgets.point_budget
            )));
        }
        if budgets.intermediate_budget > 250 {
            return Err(ClosureError::Budget("intermediate budget above 250 points".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.len() > budgets.intermediate_budget) {
            return Err(ClosureError::Budget(format!(
                "generator with {} points exceeds the intermediate budget {}",
                g.len(),
                budgets.intermediate_budget
            )));
        }
        let mut closure = ClosureSet {
            generators: generators.to_vec(),
            budgets,
            store: FxHashSet::default(),
            order: Vec::new(),
            processed: 0,
            saturated: false,
        };
        let pair: Line = SmallVec::from_slice(&[0, 0]);
        closure.insert(pair, false);
        for g in generators {
            closure.insert(line_of(g), true);
        }
        Ok(closure)
    }

    pub fn generators(&self) -> &[Partition] {
        &self.generators
    }

    pub fn budgets(&self) -> Budgets {
        self.budgets
    }

    /// True once a full sweep has added nothing.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// Number of stored one-line elements.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Inserts `line` and everything reachable from it by unary moves.
    /// Oversized lines are kept only when `pinned` (generator orbits).
    fn insert(&mut self, line: Line, pinned: bool) {
        let mut stack = vec![line];
        while let Some(line) = stack.pop() {
            let fits = line.len() <= self.budgets.point_budget;
            if !(fits || pinned) || self.store.contains(&line) {
                continue;
            }
            self.store.insert(line.clone());
            stack.push(rotated(&line));
            stack.push(reflected(&line));
            if fits && line.len() >= 2 {
                stack.extend((0..line.len()).map(|i| contracted(&line, i)));
            }
            self.order.push(line);
        }
    }

    fn products(&self, x: &Line, y: &Line, out: &mut Vec<Line>) {
        let total = x.len() + y.len();
        let Budgets {
            point_budget,
            intermediate_budget,
        } = self.budgets;
        if total > intermediate_budget {
            return;
        }
        if total <= point_budget {
            let shift = x.iter().map(|&v| v + 1).max().unwrap_or(0);
            let line: Line = x.iter().copied().chain(y.iter().map(|&v| v + shift)).collect();
            if !self.store.contains(&line) {
                out.push(line);
            }
            return;
        }
        let needed = (total - point_budget).div_ceil(2);
        if needed > x.len().min(y.len()) {
            return;
        }
        for a in 0..=needed {
            let line = seam_contracted(x, y, a, needed - a);
            if !self.store.contains(&line) {
                out.push(line);
            }
        }
    }

    /// One sweep: combines every element not yet processed with every
    /// element present at the start of the sweep. Returns whether the store
    /// grew.
    pub fn step(&mut self) -> bool {
        if self.saturated {
            return false;
        }
        let snapshot = self.order.len();
        let start = self.processed;
        let this: &ClosureSet = self;
        let found: Vec<Line> = (start..snapshot)
            .into_par_iter()
            .flat_map_iter(|i| {
                let x = &this.order[i];
                let mut out = Vec::new();
                for (j, y) in this.order[..snapshot].iter().enumerate() {
                    if j >= start && j < i {
                        continue;
                    }
                    this.products(x, y, &mut out);
                    if i != j {
                        this.products(y, x, &mut out);
                    }
                }
                out
            })
            .collect();
        for line in found {
            self.insert(line, false);
        }
        self.processed = snapshot;
        let grew = self.order.len() > snapshot;
        if !grew {
            self.saturated = true;
        }
        grew
    }

    /// Sweeps until a fixed point is reached within the budgets.
    pub fn saturate(&mut self) {
        while self.step() {}
    }

    /// Sweeps until `done` holds or the closure saturates. Returns `done`'s
    /// final value.
    pub fn saturate_until(&mut self, mut done: impl FnMut(&ClosureSet) -> bool) -> bool {
        loop {
            if done(self) {
                return true;
            }
            if !self.step() {
                return done(self);
            }
        }
    }

    /// Membership up to rotation. Never claims definitive absence.
    pub fn contains(&self, p: &Partition) -> Result<Membership, ClosureError> {
        let line = line_of(p);
        if self.store.contains(&line) {
            return Ok(Membership::Confirmed);
        }
        if p.len() > self.budgets.point_budget {
            return Err(ClosureError::Budget(format!(
                "{} points exceed the point budget {}",
                p.len(),
                self.budgets.point_budget
            )));
        }
        Ok(Membership::NotFoundWithinBudget)
    }

    pub fn confirms(&self, p: &Partition) -> bool {
        self.store.contains(&line_of(p))
    }

    /// Stored elements of `P(0,n)`, sorted.
    pub fn one_line(&self, n: usize) -> Vec<Partition> {
        let mut out: Vec<Partition> = self
            .order
            .iter()
            .filter(|line| line.len() == n)
            .map(|line| Partition::from_normalized(0, n, line.to_vec()))
            .collect();
        out.sort();
        out
    }

    /// Every stored element in every shape `P(k, n-k)`, sorted.
    pub fn elements(&self) -> Vec<Partition> {
        let mut out: Vec<Partition> = self
            .order
            .iter()
            .flat_map(|line| {
                let n = line.len();
                (0..=n).map(move |k| Partition::from_linear_labels(k, n - k, line))
            })
            .collect();
        out.sort();
        out
    }

    /// One canonical text per line for every stored one-line element,
    /// sorted by size then canonical order.
    pub fn dump(&self) -> String {
        let mut elems: Vec<Partition> = self
            .order
            .iter()
            .map(|line| Partition::from_normalized(0, line.len(), line.to_vec()))
            .collect();
        elems.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut out = String::new();
        for p in elems {
            out.push_str(&p.canonical_text());
            out.push('\n');
        }
        out
    }
}

/// Builds the closure of `generators` and sweeps it to a fixed point.
pub fn generate_closure(
    generators: &[Partition],
    point_budget: usize,
    intermediate_budget: usize,
) -> Result<ClosureSet, ClosureError> {
    let mut closure = ClosureSet::new(generators, Budgets::new(point_budget, intermediate_budget))?;
    closure.saturate();
    Ok(closure)
}

pub fn closure_contains(closure: &ClosureSet, p: &Partition) -> Result<Membership, ClosureError> {
    closure.contains(p)
}
