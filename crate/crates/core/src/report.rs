//! The acceptance suite: each criterion is a self-contained check that
//! reports pass, logic failure, or budget shortfall.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::catalog::{enumerate_category, Category, NamedPartition};
use crate::classify::{classify_easy, classify_noncrossing, ClassWorld};
use crate::closure::{generate_closure, Budgets, ClosureSet, Membership};
use crate::linmap::{check_intertwiner, classical_rep, functor_identities, RepKind};
use crate::moments::{
    closed_form, count_moments, fuss_catalan_square, transform, ClosedForm, Law, MomentSequence, Transform,
};
use crate::ops::enumerate_all;
use crate::partition::Partition;

/// Tolerance for sampled orthogonal and bistochastic matrices.
pub const SAMPLE_TOLERANCE: f64 = 1e-9;
/// Number of sampled matrices per sampled representation.
pub const SAMPLE_COUNT: usize = 20;
pub const FREE_BUDGETS: Budgets = Budgets::new(8, 16);
pub const CLASSICAL_BUDGETS: Budgets = Budgets::new(6, 12);
pub const HALF_BUDGETS: Budgets = Budgets::new(8, 16);
/// Budgets for `{halflib, fourblock, h6, h9}`; `h9 ∘ h6` needs 30 points.
pub const SERIES_GCD_BUDGETS: Budgets = Budgets::new(12, 30);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Closure did not reach a required element within its budgets.
    BudgetShortfall,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::BudgetShortfall => "BUDGET",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed: Duration,
    pub time_limit: Option<Duration>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn within_time(&self) -> bool {
        self.time_limit.is_none_or(|t| self.elapsed <= t)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {} ({:.2}s",
            self.status,
            self.id,
            self.title,
            self.elapsed.as_secs_f64()
        )?;
        if let Some(limit) = self.time_limit {
            write!(f, ", limit {}s", limit.as_secs())?;
        }
        write!(f, "): {}", self.detail)
    }
}

/// Accumulates failures for one criterion.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    shortfalls: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn shortfall(&mut self, what: String) {
        self.checks += 1;
        self.shortfalls.push(what);
    }

    fn finish(self) -> (Status, String) {
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if !self.shortfalls.is_empty() {
            Status::BudgetShortfall
        } else {
            Status::Pass
        };
        let mut detail = format!("{} checks", self.checks);
        for f in self.failures.iter().chain(&self.shortfalls).take(5) {
            detail.push_str("; ");
            detail.push_str(f);
        }
        (status, detail)
    }
}

pub const TITLES: [&str; 10] = [
    "seven free categories: closure equals predicate",
    "noncrossing lattice classification of 16 generator sets",
    "six classical categories: closure equals predicate",
    "half-liberated categories and separations",
    "thirteen nonhyperoctahedral categories and the h-series",
    "character-law counts",
    "Fuss-Catalan square identity",
    "moment-cumulant identities",
    "intertwiner dictionary",
    "functor law",
];

fn time_limit(id: usize) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(60)),
        3 | 9 => Some(Duration::from_secs(120)),
        _ => None,
    }
}

pub fn run_criterion(id: usize, seed: u64) -> Option<Outcome> {
    let run: fn(u64) -> Tally = match id {
        1 => |_| free_equivalence(),
        2 => |_| lattice(),
        3 => |_| classical_equivalence(),
        4 => |_| half_liberated(),
        5 => |_| thirteen(),
        6 => |_| character_counts(),
        7 => |_| fuss_identity(),
        8 => |_| cumulant_identities(),
        9 => intertwiner_dictionary,
        10 => |_| functor_law(),
        _ => return None,
    };
    let start = Instant::now();
    let (status, detail) = run(seed).finish();
    Some(Outcome {
        id,
        title: TITLES[id - 1],
        status,
        detail,
        elapsed: start.elapsed(),
        time_limit: time_limit(id),
    })
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    (1..=10).filter_map(|id| run_criterion(id, seed)).collect()
}

fn named(n: NamedPartition) -> Partition {
    n.build().expect("fixed named partitions are valid")
}

/// Compares a closure against the predicate on `P(0,k)` for each `k`.
fn compare_closure(tally: &mut Tally, category: Category, closure: &ClosureSet, ks: impl IntoIterator<Item = usize>) {
    for k in ks {
        let got = closure.one_line(k);
        let want = enumerate_category(category, k).expect("catalog category with predicate");
        if let Some(extra) = got.iter().find(|p| want.binary_search(p).is_err()) {
            tally.check(false, || {
                format!("{category} k={k}: closure has {extra} outside predicate")
            });
        } else if got.len() < want.len() {
            tally.shortfall(format!("{category} k={k}: {} of {} found", got.len(), want.len()));
        } else {
            tally.check(true, String::new);
        }
    }
}

fn closure_of(category: Category, budgets: Budgets) -> ClosureSet {
    generate_closure(
        &category.generator_partitions(),
        budgets.point_budget,
        budgets.intermediate_budget,
    )
    .expect("catalog generators fit the budgets")
}

fn free_equivalence() -> Tally {
    let mut tally = Tally::default();
    for c in Category::FREE {
        let closure = closure_of(c, FREE_BUDGETS);
        compare_closure(&mut tally, c, &closure, 1..=FREE_BUDGETS.point_budget);
    }
    tally
}

/// Expected category for a subset of {singleton, double singleton,
/// fourblock, positioner}, as flags in that order.
pub fn expected_free(s: bool, ds: bool, four: bool, pos: bool) -> Category {
    use Category::*;
    match (s, four, ds || pos, pos) {
        (true, true, _, _) => SFree,
        (true, false, _, _) => BFree,
        (false, true, true, _) => SPrimeFree,
        (false, true, false, _) => HFree,
        (false, false, _, true) => BPrimeFree,
        (false, false, true, false) => BSharpFree,
        (false, false, false, _) => OFree,
    }
}

const FINGERPRINT: [NamedPartition; 4] = [
    NamedPartition::Singleton,
    NamedPartition::DoubleSingleton,
    NamedPartition::FourBlock,
    NamedPartition::Positioner,
];

fn lattice() -> Tally {
    let mut tally = Tally::default();
    for mask in 0u8..16 {
        let flags: Vec<bool> = (0..4).map(|i| mask >> i & 1 == 1).collect();
        let generators: Vec<Partition> = FINGERPRINT
            .iter()
            .zip(&flags)
            .filter(|(_, &on)| on)
            .map(|(&n, _)| named(n))
            .collect();
        let names: Vec<String> = FINGERPRINT
            .iter()
            .zip(&flags)
            .filter(|(_, &on)| on)
            .map(|(n, _)| n.to_string())
            .collect();
        let label = format!("{{{}}}", names.join(","));
        let expected = expected_free(flags[0], flags[1], flags[2], flags[3]);
        let got = classify_noncrossing(&generators).expect("noncrossing generators");
        tally.check(got.category == Some(expected), || {
            format!("{label}: expected {expected}, got {}", got.name())
        });

        let mut closure = ClosureSet::new(&generators, FREE_BUDGETS).expect("small generators");
        let fingerprint = |c: &ClosureSet| FINGERPRINT.map(|n| c.confirms(&named(n)));
        closure.saturate_until(|c| fingerprint(c).iter().all(|&b| b));
        let seen = fingerprint(&closure);
        for (n, present) in FINGERPRINT.iter().zip(seen) {
            let predicted = expected.contains(&named(*n)).expect("free predicate");
            if present && !predicted {
                tally.check(false, || format!("{label}: closure has {n} outside {expected}"));
            } else if !present && predicted {
                tally.shortfall(format!("{label}: {n} not found within budget"));
            } else {
                tally.check(true, String::new);
            }
        }
    }
    tally
}

fn classical_equivalence() -> Tally {
    let mut tally = Tally::default();
    for c in Category::CLASSICAL {
        let closure = closure_of(c, CLASSICAL_BUDGETS);
        compare_closure(&mut tally, c, &closure, 1..=CLASSICAL_BUDGETS.point_budget);
    }
    tally
}

fn half_liberated() -> Tally {
    let mut tally = Tally::default();
    let crossing = named(NamedPartition::Crossing);
    let halflib = named(NamedPartition::HalfLib);
    for c in Category::HALF_LIBERATED {
        let closure = closure_of(c, HALF_BUDGETS);
        compare_closure(&mut tally, c, &closure, 1..=6);
        tally.check(!c.contains(&crossing).expect("predicate"), || {
            format!("{c} predicate admits crossing")
        });
        tally.check(c.contains(&halflib).expect("predicate"), || {
            format!("{c} predicate rejects halflib")
        });
        match closure.contains(&halflib) {
            Ok(Membership::Confirmed) => tally.check(true, String::new),
            _ => tally.shortfall(format!("{c}: halflib not in closure")),
        }
        tally.check(!closure.confirms(&crossing), || format!("{c}: crossing in closure"));
    }
    tally
}

fn thirteen() -> Tally {
    let mut tally = Tally::default();
    let mut run = |generators: &[Partition], budgets: Budgets, expected: Category, required: &[NamedPartition]| {
        let got = classify_easy(generators, budgets).expect("budgets are consistent");
        tally.check(got.category == Some(expected), || {
            format!("expected {expected}, got {}", got.name())
        });
        for &n in required {
            if got.membership(n) != Some(Membership::Confirmed) {
                tally.shortfall(format!("{expected}: {n} not confirmed"));
            }
        }
    };
    for c in Category::NONHYPEROCTAHEDRAL {
        let required: &[NamedPartition] = match c.world() {
            crate::catalog::World::Classical => &[NamedPartition::Crossing],
            crate::catalog::World::HalfLiberated => &[NamedPartition::HalfLib],
            _ => &[],
        };
        run(&c.generator_partitions(), FREE_BUDGETS, c, required);
    }
    let h = |s| named(NamedPartition::H(s));
    let base = [named(NamedPartition::HalfLib), named(NamedPartition::FourBlock)];
    let required = [NamedPartition::HalfLib, NamedPartition::FourBlock, NamedPartition::H(3)];
    run(
        &[base[0].clone(), base[1].clone(), h(3)],
        FREE_BUDGETS,
        Category::HSeries(3),
        &required,
    );
    run(
        &[base[0].clone(), base[1].clone(), h(6), h(9)],
        SERIES_GCD_BUDGETS,
        Category::HSeries(3),
        &required,
    );
    let got = classify_easy(&[base[0].clone(), base[1].clone(), h(6), h(9)], SERIES_GCD_BUDGETS)
        .expect("budgets are consistent");
    tally.check(got.world == ClassWorld::Series(3), || {
        format!("gcd case world {}", got.world)
    });
    tally
}

fn sequence(form: ClosedForm, ks: impl IntoIterator<Item = usize>) -> Vec<BigInt> {
    ks.into_iter().map(|k| BigInt::from(closed_form(form, k))).collect()
}

/// `(0, a_1, 0, a_2, ..)` of length `len`.
fn even_only(form: ClosedForm, len: usize) -> Vec<BigInt> {
    (1..=len)
        .map(|k| {
            if k % 2 == 1 {
                BigInt::from(0)
            } else {
                BigInt::from(closed_form(form, k / 2))
            }
        })
        .collect()
}

pub const COUNT_KMAX: usize = 8;

fn character_counts() -> Tally {
    let mut tally = Tally::default();
    let k = COUNT_KMAX;
    let cases = [
        (Category::OFree, even_only(ClosedForm::Catalan, k)),
        (Category::SFree, sequence(ClosedForm::Catalan, 1..=k)),
        (Category::BFree, sequence(ClosedForm::Motzkin, 1..=k)),
        (Category::BSharpFree, even_only(ClosedForm::BFormula, k)),
        (Category::O, even_only(ClosedForm::DoubleFactorial, k)),
        (Category::B, sequence(ClosedForm::Involutions, 1..=k)),
        (Category::S, sequence(ClosedForm::Bell, 1..=k)),
        (Category::OHalf, even_only(ClosedForm::Factorial, k)),
    ];
    for (c, want) in cases {
        let got = count_moments(c, k).expect("countable category").integers();
        tally.check(got.as_ref() == Some(&want), || format!("{c}: got {got:?}"));
    }
    tally
}

fn fuss_identity() -> Tally {
    let mut tally = Tally::default();
    for (k, v) in fuss_catalan_square(6).into_iter().enumerate() {
        let b = closed_form(ClosedForm::BFormula, k);
        tally.check(v == b, || format!("k={k}: g^2 gives {v}, b_k = {b}"));
    }
    tally
}

fn law(spec: &str) -> Law {
    spec.parse().expect("fixed law spec")
}

fn cumulant_identities() -> Tally {
    let mut tally = Tally::default();
    let k = COUNT_KMAX;
    let count = |c| count_moments(c, k).expect("countable category");
    let mut same = |what: &str, a: MomentSequence, b: MomentSequence| {
        tally.check(a == b, || format!("{what}: {a} vs {b}"));
    };
    let b_free = count(Category::BFree);
    same(
        "B+ vs free k1=k2=1",
        b_free.clone(),
        law("free:k1=1,k2=1").moments(k).expect("law"),
    );
    same(
        "B#+ vs squeezed shifted circular",
        count(Category::BSharpFree),
        transform(
            &law("shifted-circular").moments(k / 2).expect("law"),
            Transform::Squeeze,
        ),
    );
    same(
        "B'+ vs symmetrized B+",
        count(Category::BPrimeFree),
        transform(&b_free, Transform::Symmetrize),
    );
    same(
        "B vs classical k1=k2=1",
        count(Category::B),
        law("classical:k1=1,k2=1").moments(k).expect("law"),
    );
    tally
}

/// Category paired with the group whose intertwiners it describes.
pub const DICTIONARY: [(Category, RepKind); 4] = [
    (Category::S, RepKind::SymmetricGroup),
    (Category::H, RepKind::Hyperoctahedral),
    (Category::O, RepKind::OrthogonalSample),
    (Category::B, RepKind::Bistochastic),
];

fn all_shapes(max_points: usize) -> Vec<Partition> {
    (0..=max_points)
        .flat_map(|total| (0..=total).map(move |k| (k, total - k)))
        .flat_map(|(k, l)| enumerate_all(k, l, false).expect("within cap"))
        .collect()
}

fn intertwiner_dictionary(seed: u64) -> Tally {
    let mut tally = Tally::default();
    let small = all_shapes(6);
    for (c, kind) in DICTIONARY {
        let rep = classical_rep(kind, 3, SAMPLE_COUNT, seed).expect("n = 3 reps");
        for p in small.iter().filter(|p| c.contains(p).expect("predicate")) {
            let ok = check_intertwiner(&rep, p).expect("within cap");
            tally.check(ok, || format!("{c}: {p} fails at n=3"));
        }
    }
    let tiny = all_shapes(4);
    for (c, kind) in DICTIONARY {
        if !matches!(kind, RepKind::SymmetricGroup | RepKind::Hyperoctahedral) {
            continue;
        }
        let rep = classical_rep(kind, 4, 0, seed).expect("n = 4 exact reps");
        for p in tiny.iter().filter(|p| !c.contains(p).expect("predicate")) {
            let ok = check_intertwiner(&rep, p).expect("within cap");
            tally.check(!ok, || format!("{c}: {p} intertwines at n=4"));
        }
    }
    tally
}

pub const FUNCTOR_MAX_POINTS: usize = 4;

fn functor_law() -> Tally {
    let mut tally = Tally::default();
    let m = FUNCTOR_MAX_POINTS;
    for l in 0..=m {
        let ps: Vec<Partition> = (0..=m - l)
            .flat_map(|k| enumerate_all(k, l, false).expect("cap"))
            .collect();
        let qs: Vec<Partition> = (0..=m - l)
            .flat_map(|r| enumerate_all(l, r, false).expect("cap"))
            .collect();
        for p in &ps {
            for q in &qs {
                for n in [2, 3] {
                    let check = functor_identities(p, q, n).expect("composable within cap");
                    tally.check(check.all(), || format!("n={n} p={p} q={q}: {check:?}"));
                }
            }
        }
    }
    tally
}
