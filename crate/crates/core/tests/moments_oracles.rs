use num_bigint::BigInt;
use num_rational::BigRational;
use partcat::moments::{count_moments, moment_of_word, CumulantKind, CumulantSpec, Law, Letter, MomentSequence};
use partcat::{enumerate_all, Category, Partition};
use proptest::prelude::*;

fn blocks_product(p: &Partition, kappa: impl Fn(usize) -> i64) -> i64 {
    p.blocks().iter().map(|b| kappa(b.len())).product()
}

/// Σ over partitions of `k` points of the product of `κ_{|b|}`.
fn brute_force(kappas: &[i64], k: usize, noncrossing: bool) -> i64 {
    let kappa = |s: usize| kappas.get(s - 1).copied().unwrap_or(0);
    enumerate_all(0, k, noncrossing)
        .unwrap()
        .iter()
        .map(|p| blocks_product(p, kappa))
        .sum()
}

proptest! {
    #[test]
    fn free_and_classical_sums_match_enumeration(
        kappas in proptest::collection::vec(-3i64..=3, 1..=4),
        k in 1usize..=7,
    ) {
        for (kind, nc) in [(CumulantKind::Free, true), (CumulantKind::Classical, false)] {
            let spec = CumulantSpec::uniform(kind, kappas.iter().map(|&v| BigRational::from_integer(v.into())).collect());
            let got = moment_of_word(&spec, &vec![Letter::D; k]).unwrap();
            prop_assert_eq!(got, BigRational::from_integer(brute_force(&kappas, k, nc).into()));
        }
    }
}

/// Shifted-circular block values on the alternating word, summed by
/// brute force.
fn alternating_brute_force(k: usize) -> i64 {
    let letter = |i: usize| if i % 2 == 0 { 'd' } else { 's' };
    enumerate_all(0, 2 * k, true)
        .unwrap()
        .iter()
        .map(|p| {
            p.blocks()
                .iter()
                .map(|b| {
                    let w: String = b.iter().map(|pt| letter(pt.index - 1)).collect();
                    matches!(w.as_str(), "d" | "s" | "ds" | "sd") as i64
                })
                .product::<i64>()
        })
        .sum()
}

#[test]
fn shifted_circular_matches_enumeration() {
    let law: Law = "shifted-circular".parse().unwrap();
    let got = law.moments(4).unwrap();
    let want = MomentSequence::from_integers((1..=4).map(alternating_brute_force));
    assert_eq!(got, want);
}

#[test]
fn bsharp_bijection() {
    let bsharp = count_moments(Category::BSharpFree, 8).unwrap();
    for k in 1..=4 {
        let n = 2 * k + 2;
        let even_closed = enumerate_all(0, n, true)
            .unwrap()
            .into_iter()
            .filter(|p| {
                let labels = p.labels();
                labels[0] == labels[n - 1] && p.blocks().iter().all(|b| b.len() % 2 == 0)
            })
            .count();
        assert_eq!(
            bsharp.get(2 * k),
            Some(&BigRational::from_integer(BigInt::from(even_closed))),
            "k={k}"
        );
    }
}

#[test]
fn odd_moments_vanish_without_singleton() {
    for c in [
        Category::OFree,
        Category::HFree,
        Category::SPrimeFree,
        Category::BSharpFree,
        Category::BPrimeFree,
        Category::O,
        Category::H,
        Category::OHalf,
        Category::HHalf,
    ] {
        let m = count_moments(c, 7).unwrap();
        for k in (1..=7).step_by(2) {
            assert_eq!(m.get(k), Some(&BigRational::from_integer(0.into())), "{c} k={k}");
        }
    }
}

#[test]
fn hyperoctahedral_laws_are_published() {
    let free = count_moments(Category::HFree, 8).unwrap().even_part();
    let half = count_moments(Category::HHalf, 8).unwrap().even_part();
    let classical = count_moments(Category::H, 8).unwrap().even_part();
    assert_eq!(free, MomentSequence::from_integers([1, 3, 12, 55]));
    assert_eq!(classical, MomentSequence::from_integers([1, 4, 31, 379]));
    assert!(half.values.iter().zip(&classical.values).all(|(a, b)| a <= b));
}
