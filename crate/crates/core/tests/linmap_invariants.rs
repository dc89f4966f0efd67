mod common;

use common::{named, partition, partition_in};
use itertools::Itertools;
use nalgebra::DMatrix;
use partcat::linmap::{check_functor, check_intertwiner, classical_rep, delta, t_matrix, RepKind};
use partcat::{enumerate_all, rotate, Category, NamedPartition as N, Partition, Rotation};
use proptest::prelude::*;

fn flat(digits: &[usize], n: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * n + d)
}

/// Source slot, in natural order of `p`, of each natural slot of the
/// rotated partition.
fn source_slots(r: Rotation, k: usize, l: usize) -> Vec<usize> {
    let upper: Vec<usize> = (0..k).collect();
    let lower: Vec<usize> = (k..k + l).collect();
    match r {
        Rotation::DownLeft => [&upper[1..], &upper[..1], &lower[..]].concat(),
        Rotation::UpLeft => [&lower[..1], &upper[..], &lower[1..]].concat(),
        Rotation::DownRight => [&upper[..k - 1], &lower[..], &upper[k - 1..]].concat(),
        Rotation::UpRight => [&upper[..], &lower[l - 1..], &lower[..l - 1]].concat(),
        Rotation::CycleLeft => [&lower[1..], &lower[..1]].concat(),
        Rotation::CycleRight => [&lower[l - 1..], &lower[..l - 1]].concat(),
    }
}

#[test]
fn rotation_is_reindexing() {
    let n = 2;
    for total in 0..=5 {
        for k in 0..=total {
            let l = total - k;
            for p in enumerate_all(k, l, false).unwrap() {
                let tp = t_matrix(&p, n).unwrap().entries;
                for r in Rotation::ALL {
                    let Ok(q) = rotate(&p, r) else { continue };
                    let tq = t_matrix(&q, n).unwrap().entries;
                    let src = source_slots(r, k, l);
                    let kq = q.upper_count();
                    for x in (0..total).map(|_| 0..n).multi_cartesian_product() {
                        let y: Vec<usize> = src.iter().map(|&s| x[s]).collect();
                        assert_eq!(
                            tp[(flat(&x[k..], n), flat(&x[..k], n))],
                            tq[(flat(&y[kq..], n), flat(&y[..kq], n))],
                            "{p} {r:?}"
                        );
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn matrix_matches_delta(p in partition(6), n in 1usize..=3) {
        let (k, l) = (p.upper_count(), p.lower_count());
        let t = t_matrix(&p, n).unwrap().entries;
        prop_assert_eq!(t.shape(), (n.pow(l as u32), n.pow(k as u32)));
        for x in (0..k + l).map(|_| 1..=n).multi_cartesian_product() {
            let zero: Vec<usize> = x.iter().map(|v| v - 1).collect();
            let d = delta(&p, &x[..k], &x[k..], n).unwrap();
            prop_assert_eq!(t[(flat(&zero[k..], n), flat(&zero[..k], n))], d as i64);
        }
    }

    #[test]
    fn functor_on_random_pairs(p in partition_in(0, 4), q in partition_in(4, 2)) {
        prop_assert!(check_functor(&p, &q, 2).unwrap());
    }
}

#[test]
fn loop_scalar_by_summation() {
    // Closing a pair against its reflection sums 1 over all n indices.
    for n in 1..=5 {
        let pair = t_matrix(&named(N::Pair), n).unwrap().entries;
        let product = pair.transpose() * &pair;
        assert_eq!(product, DMatrix::from_element(1, 1, n as i64));
    }
}

fn is_orthogonal(u: &DMatrix<f64>, tol: f64) -> bool {
    let n = u.nrows();
    (u * u.transpose() - DMatrix::identity(n, n)).amax() <= tol
        && (u.transpose() * u - DMatrix::identity(n, n)).amax() <= tol
}

#[test]
fn representations_are_orthogonal() {
    for kind in [
        RepKind::SymmetricGroup,
        RepKind::Hyperoctahedral,
        RepKind::OrthogonalSample,
        RepKind::Bistochastic,
    ] {
        for n in 2..=4 {
            let rep = classical_rep(kind, n, 10, 3).unwrap();
            for u in rep.float_elements() {
                assert!(is_orthogonal(&u, 1e-9), "{kind:?} n={n}");
            }
        }
    }
    assert_eq!(classical_rep(RepKind::SymmetricGroup, 4, 0, 0).unwrap().len(), 24);
    assert_eq!(classical_rep(RepKind::Hyperoctahedral, 4, 0, 0).unwrap().len(), 384);
}

#[test]
fn sampled_reps_are_sharp_on_small_partitions() {
    let orth = classical_rep(RepKind::OrthogonalSample, 4, 5, 1).unwrap();
    let bist = classical_rep(RepKind::Bistochastic, 4, 5, 1).unwrap();
    for total in 0..=4 {
        for k in 0..=total {
            for p in enumerate_all(k, total - k, false).unwrap() {
                assert_eq!(
                    check_intertwiner(&orth, &p).unwrap(),
                    Category::O.contains(&p).unwrap(),
                    "O: {p}"
                );
                assert_eq!(
                    check_intertwiner(&bist, &p).unwrap(),
                    Category::B.contains(&p).unwrap(),
                    "B: {p}"
                );
            }
        }
    }
}

#[test]
fn hyperoctahedral_separates_odd_blocks() {
    let h = classical_rep(RepKind::Hyperoctahedral, 3, 0, 0).unwrap();
    let cases: [(&str, bool); 4] = [
        ("P(0,2): l1,l2", true),
        ("P(0,1): l1", false),
        ("P(1,1): u1,l1", true),
        ("P(1,2): u1,l1,l2", false),
    ];
    for (text, want) in cases {
        let p: Partition = text.parse().unwrap();
        assert_eq!(check_intertwiner(&h, &p).unwrap(), want, "{text}");
    }
}
