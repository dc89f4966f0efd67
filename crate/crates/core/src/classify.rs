//! Identifying generated categories against the catalog.

use std::fmt;

use num_integer::Integer;

use crate::catalog::{Category, NamedPartition};
use crate::closure::{Budgets, ClosureError, ClosureSet, Membership};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassWorld {
    Free7,
    Classical6,
    HalfLib,
    Series(usize),
    Undetermined,
}

impl fmt::Display for ClassWorld {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassWorld::Free7 => f.write_str("Free7"),
            ClassWorld::Classical6 => f.write_str("Classical6"),
            ClassWorld::HalfLib => f.write_str("HalfLib"),
            ClassWorld::Series(s) => write!(f, "Series({s})"),
            ClassWorld::Undetermined => f.write_str("Undetermined"),
        }
    }
}

/// A witness partition and what it shows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub witness: Partition,
    pub reason: String,
}

impl Evidence {
    fn new(witness: Partition, reason: impl Into<String>) -> Self {
        Evidence {
            witness,
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub world: ClassWorld,
    pub category: Option<Category>,
    pub evidence: Vec<Evidence>,
    /// Closure budgets, when the answer depends on a bounded closure.
    pub budgets: Option<Budgets>,
    /// Closure memberships consulted by the decision.
    pub memberships: Vec<(NamedPartition, Membership)>,
    pub saturated: Option<bool>,
}

impl Classification {
    fn exact(world: ClassWorld, category: Category, evidence: Vec<Evidence>) -> Self {
        Classification {
            world,
            category: Some(category),
            evidence,
            budgets: None,
            memberships: Vec::new(),
            saturated: None,
        }
    }

    pub fn name(&self) -> String {
        match self.category {
            Some(c) => c.to_string(),
            None => "undetermined".into(),
        }
    }

    pub fn is_budget_qualified(&self) -> bool {
        self.budgets.is_some()
    }

    /// Membership recorded for `name`, if it was consulted.
    pub fn membership(&self, name: NamedPartition) -> Option<Membership> {
        self.memberships.iter().find(|(n, _)| *n == name).map(|&(_, m)| m)
    }
}

/// Key-value record, one `key=value` per line.
impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "world={}", self.world)?;
        writeln!(f, "name={}", self.name())?;
        match self.budgets {
            Some(b) => writeln!(f, "budgets={}/{}", b.point_budget, b.intermediate_budget)?,
            None => writeln!(f, "budgets=exact")?,
        }
        if let Some(s) = self.saturated {
            writeln!(f, "saturated={s}")?;
        }
        for (name, m) in &self.memberships {
            writeln!(f, "membership.{name}={m}")?;
        }
        for e in &self.evidence {
            writeln!(f, "evidence={} | {}", e.witness, e.reason)?;
        }
        Ok(())
    }
}

/// Smallest category of `world` whose predicate holds on every generator,
/// with a failing generator recorded for each excluded category.
fn lattice_meet(world: &[Category], generators: &[Partition]) -> (Category, Vec<Evidence>) {
    let mut evidence = Vec::new();
    let mut admissible = Vec::new();
    for &c in world {
        let failing = generators
            .iter()
            .find(|g| !c.contains(g).expect("lattice categories have predicates"));
        match failing {
            Some(g) => evidence.push(Evidence::new(g.clone(), format!("not in {c}"))),
            None => admissible.push(c),
        }
    }
    let meet = admissible
        .iter()
        .copied()
        .find(|&c| admissible.iter().all(|&d| c.is_subcategory_of(d)))
        .expect("the predicate lattice is closed under intersection");
    evidence.extend(
        generators
            .iter()
            .map(|g| Evidence::new(g.clone(), format!("satisfies {meet}"))),
    );
    (meet, evidence)
}

/// Exact classification of a category generated by noncrossing partitions.
pub fn classify_noncrossing(generators: &[Partition]) -> Result<Classification, ClosureError> {
    if let Some(g) = generators.iter().find(|g| !g.is_noncrossing()) {
        return Err(ClosureError::NotNoncrossing(g.clone()));
    }
    let (meet, evidence) = lattice_meet(&Category::FREE, generators);
    Ok(Classification::exact(ClassWorld::Free7, meet, evidence))
}

/// Exact classification of the category generated by `generators` and the
/// crossing.
pub fn classify_classical(generators: &[Partition]) -> Classification {
    let (meet, evidence) = lattice_meet(&Category::CLASSICAL, generators);
    Classification::exact(ClassWorld::Classical6, meet, evidence)
}

fn named(n: NamedPartition) -> Partition {
    n.build().expect("fixed named partitions are valid")
}

/// Largest `t` such that `h_t` is worth searching for.
fn series_range(closure: &ClosureSet) -> usize {
    let pinned = closure.generators().iter().map(Partition::len).max().unwrap_or(0);
    closure.budgets().point_budget.max(pinned) / 2
}

fn confirmed_series(closure: &ClosureSet) -> Vec<usize> {
    (1..=series_range(closure))
        .filter(|&t| closure.confirms(&named(NamedPartition::H(t))))
        .collect()
}

/// True once further sweeps cannot change the decision in a way the
/// cascade would act on.
fn decided(closure: &ClosureSet) -> bool {
    if closure.confirms(&named(NamedPartition::Crossing)) {
        return true;
    }
    let lib = closure.confirms(&named(NamedPartition::HalfLib));
    let four = closure.confirms(&named(NamedPartition::FourBlock));
    if !(lib && four) {
        return false;
    }
    let found = confirmed_series(closure);
    match found.first() {
        Some(&least) => found.iter().all(|t| t % least == 0),
        None => false,
    }
}

fn membership(closure: &ClosureSet, name: NamedPartition) -> (NamedPartition, Membership) {
    let m = if closure.confirms(&named(name)) {
        Membership::Confirmed
    } else {
        Membership::NotFoundWithinBudget
    };
    (name, m)
}

/// Classification by the decision cascade: exact in the noncrossing world,
/// budget-qualified otherwise.
pub fn classify_easy(generators: &[Partition], budgets: Budgets) -> Result<Classification, ClosureError> {
    if generators.iter().all(Partition::is_noncrossing) {
        return classify_noncrossing(generators);
    }
    let mut closure = ClosureSet::new(generators, budgets)?;
    closure.step();
    closure.saturate_until(decided);

    let crossing = membership(&closure, NamedPartition::Crossing);
    let halflib = membership(&closure, NamedPartition::HalfLib);
    let fourblock = membership(&closure, NamedPartition::FourBlock);
    let double = membership(&closure, NamedPartition::DoubleSingleton);
    let confirmed = |m: (NamedPartition, Membership)| m.1 == Membership::Confirmed;

    let mut result = Classification {
        world: ClassWorld::Undetermined,
        category: None,
        evidence: Vec::new(),
        budgets: Some(budgets),
        memberships: vec![crossing, halflib, fourblock, double],
        saturated: Some(closure.is_saturated()),
    };

    if confirmed(crossing) {
        let classical = classify_classical(generators);
        result.world = classical.world;
        result.category = classical.category;
        result
            .evidence
            .push(Evidence::new(named(NamedPartition::Crossing), "crossing in closure"));
        result.evidence.extend(classical.evidence);
        return Ok(result);
    }
    if !confirmed(halflib) {
        result.evidence.push(Evidence::new(
            named(NamedPartition::HalfLib),
            "neither crossing nor halflib found",
        ));
        return Ok(result);
    }
    result.evidence.push(Evidence::new(
        named(NamedPartition::HalfLib),
        "halflib in closure, crossing not found",
    ));

    if !confirmed(fourblock) {
        let category = if confirmed(double) {
            Category::BSharpHalf
        } else {
            Category::OHalf
        };
        result.world = ClassWorld::HalfLib;
        result.category = Some(category);
        result.evidence.push(Evidence::new(
            named(NamedPartition::DoubleSingleton),
            format!("double singleton {}", double.1),
        ));
        return Ok(result);
    }

    let found = confirmed_series(&closure);
    for &t in &found {
        result.memberships.push((NamedPartition::H(t), Membership::Confirmed));
    }
    let gcd = found.iter().fold(0usize, |g, &t| g.gcd(&t));
    match gcd {
        0 => {
            result.world = ClassWorld::HalfLib;
            result.category = Some(Category::HHalf);
            result.evidence.push(Evidence::new(
                named(NamedPartition::FourBlock),
                format!("fourblock in closure, no h_t with t <= {}", series_range(&closure)),
            ));
        }
        1 | 2 => {
            result.evidence.push(Evidence::new(
                named(NamedPartition::H(gcd)),
                format!("h_t gcd {gcd} forces classical generators not found within budget"),
            ));
        }
        s => {
            result.world = ClassWorld::Series(s);
            result.category = Some(Category::HSeries(s));
            result.evidence.push(Evidence::new(
                named(NamedPartition::H(s)),
                format!("gcd of confirmed h_t is {s}"),
            ));
        }
    }
    Ok(result)
}
