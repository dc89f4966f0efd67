//! The four category operations (tensor, composition, involution, rotation)
//! and exhaustive enumeration of `P(k,l)`.

use thiserror::Error;

use crate::dsu::DisjointSets;
use crate::partition::{normalize_labels, Partition, MAX_POINTS};

/// Default limit on `k + l` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("cannot compose: lower row has {lower} points but next upper row has {upper}")]
    ArityMismatch { lower: usize, upper: usize },
    #[error("rotation {0:?} needs a point in a row that is empty")]
    EmptyRow(Rotation),
    #[error("rotation {0:?} only applies to partitions with no upper points")]
    CycleOnTwoRows(Rotation),
    #[error("enumeration of {points} points exceeds the cap of {cap}")]
    CapExceeded { points: usize, cap: usize },
    #[error("result with {0} points exceeds the limit of {MAX_POINTS}")]
    TooLarge(usize),
}

/// Result of a vertical concatenation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeResult {
    pub result: Partition,
    /// Middle-row components touching neither surviving row.
    pub removed_loops: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rotation {
    /// Leftmost upper point moves to the leftmost lower position.
    DownLeft,
    /// Leftmost lower point moves to the leftmost upper position.
    UpLeft,
    /// Rightmost upper point moves to the rightmost lower position.
    DownRight,
    /// Rightmost lower point moves to the rightmost upper position.
    UpRight,
    /// On `P(0,l)`: the first lower point moves to the end.
    CycleLeft,
    /// On `P(0,l)`: the last lower point moves to the front.
    CycleRight,
}

impl Rotation {
    pub const ALL: [Rotation; 6] = [
        Rotation::DownLeft,
        Rotation::UpLeft,
        Rotation::DownRight,
        Rotation::UpRight,
        Rotation::CycleLeft,
        Rotation::CycleRight,
    ];

    pub fn inverse(self) -> Rotation {
        match self {
            Rotation::DownLeft => Rotation::UpLeft,
            Rotation::UpLeft => Rotation::DownLeft,
            Rotation::DownRight => Rotation::UpRight,
            Rotation::UpRight => Rotation::DownRight,
            Rotation::CycleLeft => Rotation::CycleRight,
            Rotation::CycleRight => Rotation::CycleLeft,
        }
    }
}

/// Horizontal concatenation, `p` to the left of `q`.
pub fn tensor(p: &Partition, q: &Partition) -> Result<Partition, OpError> {
    let total = p.len() + q.len();
    if total > MAX_POINTS {
        return Err(OpError::TooLarge(total));
    }
    let (k, l) = (p.upper_count(), p.lower_count());
    let (k2, l2) = (q.upper_count(), q.lower_count());
    let shift = p.num_blocks();
    let pl = p.labels();
    let ql: Vec<usize> = q.labels().iter().map(|&x| x as usize + shift).collect();
    let mut labels: Vec<usize> = Vec::with_capacity(total);
    labels.extend(pl[..k].iter().map(|&x| x as usize));
    labels.extend(&ql[..k2]);
    labels.extend(pl[k..].iter().map(|&x| x as usize));
    labels.extend(&ql[k2..]);
    Ok(Partition::from_normalized(k + k2, l + l2, normalize_labels(&labels)))
}

/// Vertical concatenation: `p ∈ P(k,l)` on top of `q ∈ P(l,m)`.
pub fn compose(p: &Partition, q: &Partition) -> Result<ComposeResult, OpError> {
    let (k, l) = (p.upper_count(), p.lower_count());
    if q.upper_count() != l {
        return Err(OpError::ArityMismatch {
            lower: l,
            upper: q.upper_count(),
        });
    }
    let m = q.lower_count();
    let mut sets = DisjointSets::new(k + l + m);
    join_blocks(&mut sets, p.labels(), |slot| slot);
    join_blocks(&mut sets, q.labels(), |slot| k + slot);

    let mut surviving: Vec<usize> = Vec::with_capacity(k + m);
    for node in (0..k).chain(k + l..k + l + m) {
        surviving.push(sets.find(node));
    }
    let mut middle_roots: Vec<usize> = (k..k + l).map(|node| sets.find(node)).collect();
    middle_roots.sort_unstable();
    middle_roots.dedup();
    let removed_loops = middle_roots.iter().filter(|root| !surviving.contains(root)).count();
    Ok(ComposeResult {
        result: Partition::from_normalized(k, m, normalize_labels(&surviving)),
        removed_loops,
    })
}

fn join_blocks(sets: &mut DisjointSets, labels: &[u8], node: impl Fn(usize) -> usize) {
    let mut first: Vec<Option<usize>> = vec![None; labels.len()];
    for (slot, &b) in labels.iter().enumerate() {
        match first[b as usize] {
            Some(anchor) => sets.union(anchor, node(slot)),
            None => first[b as usize] = Some(node(slot)),
        }
    }
}

/// Turns `p` upside down.
pub fn involute(p: &Partition) -> Partition {
    let (k, l) = (p.upper_count(), p.lower_count());
    let labels = p.labels();
    let mut swapped: Vec<u8> = Vec::with_capacity(k + l);
    swapped.extend(&labels[k..]);
    swapped.extend(&labels[..k]);
    Partition::from_normalized(l, k, normalize_labels(&swapped))
}

pub fn rotate(p: &Partition, rotation: Rotation) -> Result<Partition, OpError> {
    let (k, l) = (p.upper_count(), p.lower_count());
    let x = p.labels();
    let empty = Err(OpError::EmptyRow(rotation));
    let (upper, lower, raw): (usize, usize, Vec<u8>) = match rotation {
        Rotation::DownLeft => {
            if k == 0 {
                return empty;
            }
            (k - 1, l + 1, [&x[1..k], &x[..1], &x[k..]].concat())
        }
        Rotation::UpLeft => {
            if l == 0 {
                return empty;
            }
            (k + 1, l - 1, [&x[k..k + 1], &x[..k], &x[k + 1..]].concat())
        }
        Rotation::DownRight => {
            if k == 0 {
                return empty;
            }
            (k - 1, l + 1, [&x[..k - 1], &x[k..], &x[k - 1..k]].concat())
        }
        Rotation::UpRight => {
            if l == 0 {
                return empty;
            }
            let last = k + l - 1;
            (k + 1, l - 1, [&x[..k], &x[last..], &x[k..last]].concat())
        }
        Rotation::CycleLeft | Rotation::CycleRight => {
            if k != 0 {
                return Err(OpError::CycleOnTwoRows(rotation));
            }
            if l == 0 {
                return empty;
            }
            let mut v = x.to_vec();
            if rotation == Rotation::CycleLeft {
                v.rotate_left(1);
            } else {
                v.rotate_right(1);
            }
            (0, l, v)
        }
    };
    Ok(Partition::from_normalized(upper, lower, normalize_labels(&raw)))
}

/// All partitions of `P(k,l)` in canonical order, optionally only the
/// noncrossing ones. Uses [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_all(k: usize, l: usize, noncrossing_only: bool) -> Result<Vec<Partition>, OpError> {
    enumerate_all_capped(k, l, noncrossing_only, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_all_capped(k: usize, l: usize, noncrossing_only: bool, cap: usize) -> Result<Vec<Partition>, OpError> {
    let n = k + l;
    if n > cap {
        return Err(OpError::CapExceeded { points: n, cap });
    }
    let mut out = Vec::new();
    for_each_rgs(n, |labels| {
        let p = Partition::from_normalized(k, l, labels.to_vec());
        if !noncrossing_only || p.is_noncrossing() {
            out.push(p);
        }
    });
    Ok(out)
}

/// Visits every restricted growth string of length `n` in lexicographic order.
pub(crate) fn for_each_rgs(n: usize, mut visit: impl FnMut(&[u8])) {
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut labels = vec![0u8; n];
    // maxes[i] = max(labels[..i]) + 1, the largest value allowed at i.
    let mut maxes = vec![0u8; n];
    loop {
        for i in 1..n {
            maxes[i] = maxes[i - 1].max(labels[i - 1] + 1);
        }
        visit(&labels);
        // Advance: rightmost position that can still grow.
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if labels[i] < maxes[i] {
                labels[i] += 1;
                for x in &mut labels[i + 1..] {
                    *x = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Partition {
        text.parse().unwrap()
    }

    #[test]
    fn tensor_examples() {
        let s = p("P(0,1): l1");
        assert_eq!(tensor(&s, &s).unwrap(), p("P(0,2): l1; l2"));
        let pair = p("P(0,2): l1,l2");
        assert_eq!(tensor(&pair, &pair).unwrap(), p("P(0,4): l1,l2; l3,l4"));
        assert_eq!(tensor(&Partition::empty(), &pair).unwrap(), pair);
        let unit = p("P(1,1): u1,l1");
        assert_eq!(tensor(&unit, &pair).unwrap(), p("P(1,3): u1,l1; l2,l3"));
    }

    #[test]
    fn compose_connects_two_three_blocks() {
        let b3 = p("P(0,3): l1,l2,l3");
        let top = tensor(&b3, &b3).unwrap();
        let bottom = p("P(6,4): u1,l1; u2,l2; u3,u4; u5,l3; u6,l4");
        let r = compose(&top, &bottom).unwrap();
        assert_eq!(r.result, p("P(0,4): l1,l2,l3,l4"));
        assert_eq!(r.removed_loops, 0);
    }

    #[test]
    fn compose_closed_circle() {
        let r = compose(&p("P(0,2): l1,l2"), &p("P(2,0): u1,u2")).unwrap();
        assert_eq!(r.result, Partition::empty());
        assert_eq!(r.removed_loops, 1);
    }

    #[test]
    fn compose_erases_to_three_block() {
        let nested = p("P(0,7): l1,l6,l7; l2,l5; l3,l4");
        let eraser = p("P(7,3): u1,l1; u2,u3; u4,u5; u6,l2; u7,l3");
        let r = compose(&nested, &eraser).unwrap();
        assert_eq!(r.result, p("P(0,3): l1,l2,l3"));
        assert_eq!(r.removed_loops, 1);
    }

    #[test]
    fn compose_arity_mismatch() {
        let err = compose(&p("P(0,2): l1,l2"), &p("P(1,1): u1,l1"));
        assert_eq!(err, Err(OpError::ArityMismatch { lower: 2, upper: 1 }));
    }

    #[test]
    fn involute_examples() {
        assert_eq!(involute(&p("P(0,2): l1,l2")), p("P(2,0): u1,u2"));
        let unit = p("P(1,1): u1,l1");
        assert_eq!(involute(&unit), unit);
        let crossing = p("P(2,2): u1,l2; u2,l1");
        assert_eq!(involute(&crossing), crossing);
    }

    #[test]
    fn rotate_examples() {
        let pair = p("P(0,2): l1,l2");
        assert_eq!(
            rotate(&pair, Rotation::DownLeft),
            Err(OpError::EmptyRow(Rotation::DownLeft))
        );
        let unit = p("P(1,1): u1,l1");
        assert_eq!(rotate(&unit, Rotation::DownLeft).unwrap(), pair);
        assert_eq!(rotate(&unit, Rotation::UpLeft).unwrap(), p("P(2,0): u1,u2"));
        let four_rot = p("P(2,2): u1,u2,l1,l2");
        let once = rotate(&four_rot, Rotation::DownLeft).unwrap();
        assert_eq!(rotate(&once, Rotation::DownLeft).unwrap(), p("P(0,4): l1,l2,l3,l4"));
        let positioner = p("P(0,4): l1; l2,l4; l3");
        assert_eq!(
            rotate(&positioner, Rotation::CycleLeft).unwrap(),
            p("P(0,4): l1,l3; l2; l4")
        );
        assert_eq!(
            rotate(&unit, Rotation::CycleLeft),
            Err(OpError::CycleOnTwoRows(Rotation::CycleLeft))
        );
        assert_eq!(
            rotate(&Partition::empty(), Rotation::CycleRight),
            Err(OpError::EmptyRow(Rotation::CycleRight))
        );
    }

    #[test]
    fn rotation_keeps_counterclockwise_order() {
        let x = p("P(2,3): u1,l3; u2,l1; l2");
        let down = rotate(&x, Rotation::DownLeft).unwrap();
        assert_eq!(
            normalize_labels(&down.linear_labels()),
            normalize_labels(&x.linear_labels())
        );
        let right = rotate(&x, Rotation::DownRight).unwrap();
        let mut expected = x.linear_labels();
        expected.rotate_left(1);
        assert_eq!(normalize_labels(&right.linear_labels()), normalize_labels(&expected));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_all(0, 3, false).unwrap().len(), 5);
        assert_eq!(enumerate_all(0, 4, true).unwrap().len(), 14);
        let units = enumerate_all(1, 1, false).unwrap();
        assert_eq!(units, vec![p("P(1,1): u1,l1"), p("P(1,1): u1; l1")]);
        assert_eq!(enumerate_all(0, 0, false).unwrap(), vec![Partition::empty()]);
        assert_eq!(
            enumerate_all(6, 7, false),
            Err(OpError::CapExceeded { points: 13, cap: 12 })
        );
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        let all = enumerate_all(2, 3, false).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
