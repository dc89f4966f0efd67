//! Named partitions and named categories of partitions with their exact
//! membership predicates.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ops::{enumerate_all_capped, OpError, DEFAULT_ENUMERATION_CAP};
use crate::partition::{Mark, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("bad parameter for {name}: {reason}")]
    BadParam { name: &'static str, reason: String },
    #[error("category {0} has no closed membership predicate")]
    NoPredicate(Category),
    #[error("unknown category `{0}`")]
    UnknownCategory(String),
    #[error("unknown partition name `{0}`")]
    UnknownPartition(String),
    #[error(transparent)]
    Op(#[from] OpError),
}

/// The special partitions used as generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedPartition {
    Unit,
    Pair,
    Singleton,
    DoubleSingleton,
    /// A single block on `s` lower points.
    Block(usize),
    FourBlock,
    /// `{1}{2,4}{3}`.
    Positioner,
    Crossing,
    /// `{1,3'}{2,2'}{3,1'}`.
    HalfLib,
    /// Two interleaved blocks `{1,3,..,2s-1}{2,4,..,2s}`.
    H(usize),
    /// Four block on `{1,1',l+2,(l+2)'}` with vertical pairs in between.
    K(usize),
    /// `{1,2,3',4'}{3,4,1',2'}`.
    FatCrossing,
}

impl NamedPartition {
    pub fn build(self) -> Result<Partition, CatalogError> {
        let lower_row = |labels: &[usize]| Partition::from_labels(0, labels.len(), labels).expect("valid labels");
        Ok(match self {
            NamedPartition::Unit => Partition::from_labels(1, 1, &[0, 0]).expect("unit"),
            NamedPartition::Pair => lower_row(&[0, 0]),
            NamedPartition::Singleton => lower_row(&[0]),
            NamedPartition::DoubleSingleton => lower_row(&[0, 1]),
            NamedPartition::Block(s) => {
                if s == 0 {
                    return Err(bad("Block", "size must be at least 1"));
                }
                lower_row(&vec![0; s])
            }
            NamedPartition::FourBlock => lower_row(&[0, 0, 0, 0]),
            NamedPartition::Positioner => lower_row(&[0, 1, 2, 1]),
            NamedPartition::Crossing => Partition::from_labels(2, 2, &[0, 1, 1, 0]).expect("crossing"),
            NamedPartition::HalfLib => Partition::from_labels(3, 3, &[0, 1, 2, 2, 1, 0]).expect("halflib"),
            NamedPartition::H(s) => {
                if s == 0 {
                    return Err(bad("H", "s must be at least 1"));
                }
                let labels: Vec<usize> = (0..2 * s).map(|i| i % 2).collect();
                lower_row(&labels)
            }
            NamedPartition::K(l) => {
                if l == 0 {
                    return Err(bad("K", "l must be at least 1"));
                }
                let width = l + 2;
                let row: Vec<usize> = (0..width)
                    .map(|i| if i == 0 || i == width - 1 { 0 } else { i })
                    .collect();
                let labels = [row.clone(), row].concat();
                Partition::from_labels(width, width, &labels).expect("k_l")
            }
            NamedPartition::FatCrossing => {
                Partition::from_labels(4, 4, &[0, 0, 1, 1, 1, 1, 0, 0]).expect("fat crossing")
            }
        })
    }

    fn name(self) -> String {
        match self {
            NamedPartition::Unit => "unit".into(),
            NamedPartition::Pair => "pair".into(),
            NamedPartition::Singleton => "singleton".into(),
            NamedPartition::DoubleSingleton => "doublesingleton".into(),
            NamedPartition::Block(s) => format!("block{s}"),
            NamedPartition::FourBlock => "fourblock".into(),
            NamedPartition::Positioner => "positioner".into(),
            NamedPartition::Crossing => "crossing".into(),
            NamedPartition::HalfLib => "halflib".into(),
            NamedPartition::H(s) => format!("h{s}"),
            NamedPartition::K(l) => format!("k{l}"),
            NamedPartition::FatCrossing => "fatcross".into(),
        }
    }
}

fn bad(name: &'static str, reason: &str) -> CatalogError {
    CatalogError::BadParam {
        name,
        reason: reason.into(),
    }
}

impl fmt::Display for NamedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for NamedPartition {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || CatalogError::UnknownPartition(s.to_string());
        let number = |rest: &str| rest.parse::<usize>().map_err(|_| unknown());
        Ok(match s {
            "unit" => NamedPartition::Unit,
            "pair" => NamedPartition::Pair,
            "singleton" => NamedPartition::Singleton,
            "doublesingleton" => NamedPartition::DoubleSingleton,
            "fourblock" => NamedPartition::FourBlock,
            "positioner" => NamedPartition::Positioner,
            "crossing" => NamedPartition::Crossing,
            "halflib" => NamedPartition::HalfLib,
            "fatcross" => NamedPartition::FatCrossing,
            _ => {
                if let Some(rest) = s.strip_prefix("block") {
                    NamedPartition::Block(number(rest)?)
                } else if let Some(rest) = s.strip_prefix('h') {
                    NamedPartition::H(number(rest)?)
                } else if let Some(rest) = s.strip_prefix('k') {
                    NamedPartition::K(number(rest)?)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

/// Convenience wrapper around [`NamedPartition::build`].
pub fn named_partition(name: NamedPartition) -> Result<Partition, CatalogError> {
    name.build()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum World {
    Noncrossing,
    Classical,
    HalfLiberated,
    HyperoctahedralSeries,
}

/// Identifiers of every named category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    OFree,
    HFree,
    SPrimeFree,
    SFree,
    BSharpFree,
    BPrimeFree,
    BFree,
    O,
    H,
    SPrime,
    S,
    BPrime,
    B,
    OHalf,
    HHalf,
    BSharpHalf,
    /// `<halflib, fourblock, h_s>`.
    HSeries(usize),
    /// `<fatcross, fourblock>`.
    FatCross,
}

impl Category {
    pub const FREE: [Category; 7] = [
        Category::OFree,
        Category::HFree,
        Category::SPrimeFree,
        Category::SFree,
        Category::BSharpFree,
        Category::BPrimeFree,
        Category::BFree,
    ];

    pub const CLASSICAL: [Category; 6] = [
        Category::O,
        Category::H,
        Category::SPrime,
        Category::S,
        Category::BPrime,
        Category::B,
    ];

    pub const HALF_LIBERATED: [Category; 3] = [Category::OHalf, Category::HHalf, Category::BSharpHalf];

    /// The categories containing the double singleton or not containing the
    /// four block.
    pub const NONHYPEROCTAHEDRAL: [Category; 13] = [
        Category::O,
        Category::OHalf,
        Category::OFree,
        Category::S,
        Category::SFree,
        Category::B,
        Category::BFree,
        Category::SPrime,
        Category::SPrimeFree,
        Category::BPrime,
        Category::BPrimeFree,
        Category::BSharpHalf,
        Category::BSharpFree,
    ];

    pub fn world(self) -> World {
        use Category::*;
        match self {
            OFree | HFree | SPrimeFree | SFree | BSharpFree | BPrimeFree | BFree => World::Noncrossing,
            O | H | SPrime | S | BPrime | B => World::Classical,
            OHalf | HHalf | BSharpHalf => World::HalfLiberated,
            HSeries(_) | FatCross => World::HyperoctahedralSeries,
        }
    }

    pub fn generators(self) -> Vec<NamedPartition> {
        use Category::*;
        use NamedPartition as N;
        match self {
            OFree => vec![],
            HFree => vec![N::FourBlock],
            SPrimeFree => vec![N::DoubleSingleton, N::FourBlock],
            SFree => vec![N::Singleton, N::FourBlock],
            BSharpFree => vec![N::DoubleSingleton],
            BPrimeFree => vec![N::Positioner],
            BFree => vec![N::Singleton],
            O => vec![N::Crossing],
            H => vec![N::Crossing, N::FourBlock],
            SPrime => vec![N::Crossing, N::DoubleSingleton, N::FourBlock],
            S => vec![N::Crossing, N::Singleton, N::FourBlock],
            BPrime => vec![N::Crossing, N::DoubleSingleton],
            B => vec![N::Crossing, N::Singleton],
            OHalf => vec![N::HalfLib],
            HHalf => vec![N::HalfLib, N::FourBlock],
            BSharpHalf => vec![N::HalfLib, N::DoubleSingleton],
            HSeries(s) => vec![N::HalfLib, N::FourBlock, N::H(s)],
            FatCross => vec![N::FatCrossing, N::FourBlock],
        }
    }

    pub fn generator_partitions(self) -> Vec<Partition> {
        self.generators()
            .into_iter()
            .map(|g| g.build().expect("catalog generators are valid"))
            .collect()
    }

    pub fn has_predicate(self) -> bool {
        !matches!(self, Category::HSeries(_) | Category::FatCross)
    }

    /// Exact membership test.
    pub fn contains(self, p: &Partition) -> Result<bool, CatalogError> {
        use Category::*;
        let shape = BlockShape::of(p);
        Ok(match self {
            OFree => shape.noncrossing && shape.all_pairs(),
            HFree => shape.noncrossing && shape.all_even(),
            SPrimeFree => shape.noncrossing && shape.even_odd_blocks(),
            SFree => shape.noncrossing,
            BSharpFree => shape.noncrossing && shape.at_most_two() && shape.balanced_pairs() && shape.even_singletons(),
            BPrimeFree => shape.noncrossing && shape.at_most_two() && shape.even_singletons(),
            BFree => shape.noncrossing && shape.at_most_two(),
            O => shape.all_pairs(),
            H => shape.all_even(),
            SPrime => shape.even_odd_blocks(),
            S => true,
            BPrime => shape.at_most_two() && shape.even_singletons(),
            B => shape.at_most_two(),
            OHalf => shape.all_pairs() && shape.balanced_pairs(),
            HHalf => shape.all_even() && shape.balanced_blocks(),
            BSharpHalf => shape.at_most_two() && shape.balanced_pairs() && shape.even_singletons(),
            HSeries(_) | FatCross => return Err(CatalogError::NoPredicate(self)),
        })
    }

    /// Same-world categories containing this one (inclusive), for the free
    /// seven and the classical six.
    pub fn supercategories(self) -> &'static [Category] {
        use Category::*;
        match self {
            OFree => &Category::FREE,
            BSharpFree => &[BSharpFree, BPrimeFree, BFree, SPrimeFree, SFree],
            BPrimeFree => &[BPrimeFree, BFree, SPrimeFree, SFree],
            BFree => &[BFree, SFree],
            HFree => &[HFree, SPrimeFree, SFree],
            SPrimeFree => &[SPrimeFree, SFree],
            SFree => &[SFree],
            O => &Category::CLASSICAL,
            BPrime => &[BPrime, B, SPrime, S],
            B => &[B, S],
            H => &[H, SPrime, S],
            SPrime => &[SPrime, S],
            S => &[S],
            OHalf => &[OHalf],
            HHalf => &[HHalf],
            BSharpHalf => &[BSharpHalf],
            HSeries(_) | FatCross => &[],
        }
    }

    /// True when `self ⊆ other` in the inclusion lattice of its world.
    pub fn is_subcategory_of(self, other: Category) -> bool {
        self.supercategories().contains(&other)
    }
}

/// Block sizes and mark balances read off the counterclockwise labeling.
struct BlockShape {
    noncrossing: bool,
    blocks: Vec<(usize, usize)>,
}

impl BlockShape {
    fn of(p: &Partition) -> Self {
        let linear = p.linear_labels();
        let mut blocks = vec![(0usize, 0usize); p.num_blocks()];
        for (pos, &b) in linear.iter().enumerate() {
            match Mark::at(pos) {
                Mark::Plus => blocks[b as usize].0 += 1,
                Mark::Minus => blocks[b as usize].1 += 1,
            }
        }
        BlockShape {
            noncrossing: crate::partition::is_noncrossing_sequence(&linear),
            blocks,
        }
    }

    fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().map(|(p, m)| p + m)
    }

    fn all_pairs(&self) -> bool {
        self.sizes().all(|s| s == 2)
    }

    fn all_even(&self) -> bool {
        self.sizes().all(|s| s % 2 == 0)
    }

    fn even_odd_blocks(&self) -> bool {
        self.sizes().filter(|s| s % 2 == 1).count() % 2 == 0
    }

    fn at_most_two(&self) -> bool {
        self.sizes().all(|s| s <= 2)
    }

    fn even_singletons(&self) -> bool {
        self.sizes().filter(|&s| s == 1).count() % 2 == 0
    }

    fn balanced_pairs(&self) -> bool {
        self.blocks.iter().filter(|(p, m)| p + m == 2).all(|(p, m)| p == m)
    }

    fn balanced_blocks(&self) -> bool {
        self.blocks.iter().all(|(p, m)| p == m)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Category::*;
        let id = match self {
            OFree => "O+",
            HFree => "H+",
            SPrimeFree => "S'+",
            SFree => "S+",
            BSharpFree => "B#+",
            BPrimeFree => "B'+",
            BFree => "B+",
            O => "O",
            H => "H",
            SPrime => "S'",
            S => "S",
            BPrime => "B'",
            B => "B",
            OHalf => "O*",
            HHalf => "H*",
            BSharpHalf => "B#*",
            HSeries(s) => return write!(f, "H^({s})"),
            FatCross => "fatcross",
        };
        f.write_str(id)
    }
}

impl FromStr for Category {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use Category::*;
        let all = Category::FREE
            .iter()
            .chain(&Category::CLASSICAL)
            .chain(&Category::HALF_LIBERATED)
            .chain(&[FatCross]);
        if let Some(c) = all.into_iter().find(|c| c.to_string() == s) {
            return Ok(*c);
        }
        s.strip_prefix("H^(")
            .and_then(|rest| rest.strip_suffix(')'))
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= 1)
            .map(HSeries)
            .ok_or_else(|| CatalogError::UnknownCategory(s.to_string()))
    }
}

/// A named category with its generators and world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: Category,
    pub generators: Vec<NamedPartition>,
    pub world: World,
}

impl From<Category> for CatalogEntry {
    fn from(name: Category) -> Self {
        CatalogEntry {
            name,
            generators: name.generators(),
            world: name.world(),
        }
    }
}

/// Every category with a membership predicate plus the series at `s = 3`
/// and the fat-crossing category.
pub fn catalog() -> Vec<CatalogEntry> {
    Category::FREE
        .iter()
        .chain(&Category::CLASSICAL)
        .chain(&Category::HALF_LIBERATED)
        .chain(&[Category::HSeries(3), Category::FatCross])
        .map(|&c| c.into())
        .collect()
}

/// All members of `P(0, total_points)` satisfying the category predicate.
pub fn enumerate_category(name: Category, total_points: usize) -> Result<Vec<Partition>, CatalogError> {
    enumerate_category_capped(name, total_points, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_category_capped(
    name: Category,
    total_points: usize,
    cap: usize,
) -> Result<Vec<Partition>, CatalogError> {
    if !name.has_predicate() {
        return Err(CatalogError::NoPredicate(name));
    }
    let noncrossing = name.world() == World::Noncrossing;
    let all = enumerate_all_capped(0, total_points, noncrossing, cap)?;
    let mut out = Vec::new();
    for p in all {
        if name.contains(&p)? {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Partition {
        text.parse().unwrap()
    }

    #[test]
    fn named_partition_examples() {
        assert_eq!(NamedPartition::Positioner.build().unwrap(), p("P(0,4): l1; l2,l4; l3"));
        assert_eq!(
            NamedPartition::HalfLib.build().unwrap(),
            p("P(3,3): u1,l3; u2,l2; u3,l1")
        );
        assert_eq!(NamedPartition::H(3).build().unwrap(), p("P(0,6): l1,l3,l5; l2,l4,l6"));
        assert_eq!(NamedPartition::K(1).build().unwrap(), p("P(3,3): u1,u3,l1,l3; u2,l2"));
        assert_eq!(
            NamedPartition::FatCrossing.build().unwrap(),
            p("P(4,4): u1,u2,l3,l4; u3,u4,l1,l2")
        );
        assert_eq!(NamedPartition::Crossing.build().unwrap(), p("P(2,2): u1,l2; u2,l1"));
        assert!(matches!(
            NamedPartition::Block(0).build(),
            Err(CatalogError::BadParam { .. })
        ));
        assert!(matches!(
            NamedPartition::H(0).build(),
            Err(CatalogError::BadParam { .. })
        ));
    }

    #[test]
    fn named_partition_identities() {
        assert_eq!(
            NamedPartition::Block(2).build().unwrap(),
            NamedPartition::Pair.build().unwrap()
        );
        assert_eq!(
            NamedPartition::Block(4).build().unwrap(),
            NamedPartition::FourBlock.build().unwrap()
        );
        assert_eq!(
            NamedPartition::H(1).build().unwrap(),
            NamedPartition::DoubleSingleton.build().unwrap()
        );
        let crossing = NamedPartition::Crossing.build().unwrap();
        let rotated = crate::ops::rotate(&crossing, crate::ops::Rotation::DownLeft).unwrap();
        let rotated = crate::ops::rotate(&rotated, crate::ops::Rotation::DownLeft).unwrap();
        assert_eq!(NamedPartition::H(2).build().unwrap(), rotated);
    }

    #[test]
    fn names_round_trip() {
        for entry in catalog() {
            assert_eq!(entry.name.to_string().parse::<Category>().unwrap(), entry.name);
            for g in entry.generators {
                assert_eq!(g.to_string().parse::<NamedPartition>().unwrap(), g);
            }
        }
        assert!("X+".parse::<Category>().is_err());
        assert!("H^(0)".parse::<Category>().is_err());
    }

    #[test]
    fn predicate_examples() {
        let positioner = NamedPartition::Positioner.build().unwrap();
        assert!(!Category::BSharpFree.contains(&positioner).unwrap());
        assert!(Category::BPrimeFree.contains(&positioner).unwrap());
        assert!(Category::HFree
            .contains(&NamedPartition::FourBlock.build().unwrap())
            .unwrap());
        assert!(!Category::HFree
            .contains(&NamedPartition::Block(3).build().unwrap())
            .unwrap());
        assert!(Category::OHalf.contains(&p("P(0,4): l1,l2; l3,l4")).unwrap());
        assert!(!Category::OHalf.contains(&p("P(0,4): l1,l3; l2,l4")).unwrap());
        assert_eq!(
            Category::HSeries(3).contains(&positioner),
            Err(CatalogError::NoPredicate(Category::HSeries(3)))
        );
        assert_eq!(
            Category::FatCross.contains(&positioner),
            Err(CatalogError::NoPredicate(Category::FatCross))
        );
    }

    #[test]
    fn unit_and_pair_everywhere() {
        let unit = NamedPartition::Unit.build().unwrap();
        let pair = NamedPartition::Pair.build().unwrap();
        for entry in catalog().into_iter().filter(|e| e.name.has_predicate()) {
            assert!(entry.name.contains(&unit).unwrap(), "{}", entry.name);
            assert!(entry.name.contains(&pair).unwrap(), "{}", entry.name);
            for g in entry.name.generator_partitions() {
                assert!(entry.name.contains(&g).unwrap(), "{} misses {g}", entry.name);
            }
        }
    }

    #[test]
    fn enumerate_category_examples() {
        let o = enumerate_category(Category::OFree, 4).unwrap();
        assert_eq!(o, vec![p("P(0,4): l1,l2; l3,l4"), p("P(0,4): l1,l4; l2,l3")]);
        let b = enumerate_category(Category::BSharpFree, 2).unwrap();
        assert_eq!(b, vec![p("P(0,2): l1,l2"), p("P(0,2): l1; l2")]);
        let h = enumerate_category(Category::HHalf, 4).unwrap();
        assert_eq!(
            h,
            vec![
                p("P(0,4): l1,l2,l3,l4"),
                p("P(0,4): l1,l2; l3,l4"),
                p("P(0,4): l1,l4; l2,l3")
            ]
        );
        assert_eq!(
            enumerate_category(Category::HSeries(3), 4),
            Err(CatalogError::NoPredicate(Category::HSeries(3)))
        );
        assert!(matches!(
            enumerate_category(Category::S, 13),
            Err(CatalogError::Op(OpError::CapExceeded { .. }))
        ));
    }
}
