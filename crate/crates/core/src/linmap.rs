//! The linear maps `T_p` as exact integer matrices, and intertwiner checks
//! against concrete classical groups.
//!
//! Tuples of indices are flattened big-endian: `(i_1, .., i_k)` with
//! `1 <= i_a <= n` sits at `Σ (i_a - 1) n^(k-a)`.

use std::ops::{Add, Mul};

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::ops::{compose, involute, tensor, OpError};
use crate::partition::Partition;

/// Largest allowed number of rows or columns of a matrix.
pub const MAX_SIDE: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinmapError {
    #[error("index {index} out of range 1..={n}")]
    IndexRange { index: usize, n: usize },
    #[error("expected {expected} indices, got {got}")]
    TupleLength { expected: usize, got: usize },
    #[error("matrix side {side} exceeds the cap of {MAX_SIDE}")]
    MemoryCap { side: usize },
    #[error("group of order {order} is too large to enumerate")]
    EnumerationTooLarge { order: usize },
    #[error("dimension {0} is too small")]
    Dimension(usize),
    #[error(transparent)]
    Op(#[from] OpError),
}

fn side(n: usize, exponent: usize) -> Result<usize, LinmapError> {
    let side = u32::try_from(exponent).ok().and_then(|e| n.checked_pow(e));
    match side {
        Some(s) if s <= MAX_SIDE => Ok(s),
        _ => Err(LinmapError::MemoryCap {
            side: side.unwrap_or(usize::MAX),
        }),
    }
}

/// `δ_p(i, j)`: 1 iff indices agree along every block of `p`.
pub fn delta(p: &Partition, i: &[usize], j: &[usize], n: usize) -> Result<u8, LinmapError> {
    if i.len() != p.upper_count() {
        return Err(LinmapError::TupleLength {
            expected: p.upper_count(),
            got: i.len(),
        });
    }
    if j.len() != p.lower_count() {
        return Err(LinmapError::TupleLength {
            expected: p.lower_count(),
            got: j.len(),
        });
    }
    if let Some(&index) = i.iter().chain(j).find(|&&x| x == 0 || x > n) {
        return Err(LinmapError::IndexRange { index, n });
    }
    let mut value: Vec<Option<usize>> = vec![None; p.num_blocks()];
    for (&b, &x) in p.labels().iter().zip(i.iter().chain(j)) {
        match value[b as usize] {
            Some(v) if v != x => return Ok(0),
            _ => value[b as usize] = Some(x),
        }
    }
    Ok(1)
}

/// `T_p` at dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntertwinerMatrix {
    pub n: usize,
    pub partition: Partition,
    /// `n^l × n^k` matrix of 0/1 entries.
    pub entries: DMatrix<i64>,
}

pub fn t_matrix(p: &Partition, n: usize) -> Result<IntertwinerMatrix, LinmapError> {
    if n == 0 {
        return Err(LinmapError::Dimension(n));
    }
    let (k, l) = (p.upper_count(), p.lower_count());
    let cols = side(n, k)?;
    let rows = side(n, l)?;
    let mut entries = DMatrix::<i64>::zeros(rows, cols);
    let labels = p.labels();
    // Each assignment of a value to every block gives exactly one nonzero entry.
    for assignment in (0..p.num_blocks()).map(|_| 0..n).multi_cartesian_product() {
        let mut col = 0;
        let mut row = 0;
        for &b in &labels[..k] {
            col = col * n + assignment[b as usize];
        }
        for &b in &labels[k..] {
            row = row * n + assignment[b as usize];
        }
        entries[(row, col)] = 1;
    }
    if p.num_blocks() == 0 {
        entries[(0, 0)] = 1;
    }
    Ok(IntertwinerMatrix {
        n,
        partition: p.clone(),
        entries,
    })
}

/// Outcome of the three functor identities for a composable pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctorCheck {
    /// `T_q T_p = n^loops T_{qp}`.
    pub composition: bool,
    /// `T_{p⊗q} = T_p ⊗ T_q`.
    pub tensor: bool,
    /// `T_{p*} = T_p^t`.
    pub involution: bool,
}

impl FunctorCheck {
    pub fn all(&self) -> bool {
        self.composition && self.tensor && self.involution
    }
}

/// Checks the functor identities for `p ∈ P(k,l)` over `q ∈ P(l,m)`.
pub fn functor_identities(p: &Partition, q: &Partition, n: usize) -> Result<FunctorCheck, LinmapError> {
    let composed = compose(p, q)?;
    let tp = t_matrix(p, n)?.entries;
    let tq = t_matrix(q, n)?.entries;
    let tqp = t_matrix(&composed.result, n)?.entries;
    let scale = (n as i64).pow(composed.removed_loops as u32);
    let composition = &tq * &tp == tqp * scale;

    let t_tensor = t_matrix(&tensor(p, q)?, n)?.entries;
    let tensor_ok = t_tensor == tp.kronecker(&tq);

    let involution = t_matrix(&involute(p), n)?.entries == tp.transpose();
    Ok(FunctorCheck {
        composition,
        tensor: tensor_ok,
        involution,
    })
}

pub fn check_functor(p: &Partition, q: &Partition, n: usize) -> Result<bool, LinmapError> {
    Ok(functor_identities(p, q, n)?.all())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepKind {
    SymmetricGroup,
    Hyperoctahedral,
    Bistochastic,
    OrthogonalSample,
}

impl std::str::FromStr for RepKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "symmetric" | "symmetricgroup" | "s" => Ok(RepKind::SymmetricGroup),
            "hyperoctahedral" | "h" => Ok(RepKind::Hyperoctahedral),
            "bistochastic" | "b" => Ok(RepKind::Bistochastic),
            "orthogonal" | "orthogonalsample" | "o" => Ok(RepKind::OrthogonalSample),
            _ => Err(format!("unknown representation kind `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RepElements {
    Exact(Vec<DMatrix<i64>>),
    Sampled(Vec<DMatrix<f64>>),
}

/// A finite set of `n × n` orthogonal matrices from a classical group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupRep {
    pub kind: RepKind,
    pub n: usize,
    pub elements: RepElements,
    /// Zero for exact kinds.
    pub tolerance: f64,
}

impl GroupRep {
    pub fn len(&self) -> usize {
        match &self.elements {
            RepElements::Exact(v) => v.len(),
            RepElements::Sampled(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Elements as floating-point matrices.
    pub fn float_elements(&self) -> Vec<DMatrix<f64>> {
        match &self.elements {
            RepElements::Exact(v) => v.iter().map(|m| m.map(|x| x as f64)).collect(),
            RepElements::Sampled(v) => v.clone(),
        }
    }
}

/// Default tolerance for sampled representations.
pub const SAMPLE_TOLERANCE: f64 = 1e-9;

const MAX_GROUP_ORDER: usize = 50_000;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn signed_permutations(n: usize, signed: bool) -> Vec<DMatrix<i64>> {
    let signs: Vec<u32> = if signed { (0..1u32 << n).collect() } else { vec![0] };
    let mut out = Vec::new();
    for perm in (0..n).permutations(n) {
        for &mask in &signs {
            let mut m = DMatrix::<i64>::zeros(n, n);
            for (i, &j) in perm.iter().enumerate() {
                m[(i, j)] = if mask >> i & 1 == 1 { -1 } else { 1 };
            }
            out.push(m);
        }
    }
    out
}

/// Haar-distributed orthogonal matrix from a Gaussian matrix via QR.
fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| StandardNormal.sample(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for c in 0..n {
        if r[(c, c)] < 0.0 {
            q.column_mut(c).neg_mut();
        }
    }
    q
}

/// Orthogonal reflection sending `e_1` to `(1, .., 1) / sqrt(n)`.
fn averaging_reflection(n: usize) -> DMatrix<f64> {
    let xi = DVector::<f64>::from_element(n, 1.0 / (n as f64).sqrt());
    let mut v = -xi;
    v[0] += 1.0;
    let norm2 = v.norm_squared();
    let mut t = DMatrix::<f64>::identity(n, n);
    if norm2 > 0.0 {
        t -= (&v * v.transpose()) * (2.0 / norm2);
    }
    t
}

/// Builds the classical representation of `kind` at dimension `n`. Sampled
/// kinds draw `sample_count` elements from a generator seeded by `seed`.
pub fn classical_rep(kind: RepKind, n: usize, sample_count: usize, seed: u64) -> Result<GroupRep, LinmapError> {
    if n < 2 {
        return Err(LinmapError::Dimension(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (elements, tolerance) = match kind {
        RepKind::SymmetricGroup | RepKind::Hyperoctahedral => {
            let signed = kind == RepKind::Hyperoctahedral;
            let order = factorial(n).saturating_mul(if signed { 1 << n.min(60) } else { 1 });
            if n > 8 || order > MAX_GROUP_ORDER {
                return Err(LinmapError::EnumerationTooLarge { order });
            }
            (RepElements::Exact(signed_permutations(n, signed)), 0.0)
        }
        RepKind::OrthogonalSample => {
            let v = (0..sample_count).map(|_| random_orthogonal(n, &mut rng)).collect();
            (RepElements::Sampled(v), SAMPLE_TOLERANCE)
        }
        RepKind::Bistochastic => {
            let t = averaging_reflection(n);
            let v = (0..sample_count)
                .map(|_| {
                    let inner = random_orthogonal(n - 1, &mut rng);
                    let mut block = DMatrix::<f64>::zeros(n, n);
                    block[(0, 0)] = 1.0;
                    block.view_mut((1, 1), (n - 1, n - 1)).copy_from(&inner);
                    &t * block * t.transpose()
                })
                .collect();
            (RepElements::Sampled(v), SAMPLE_TOLERANCE)
        }
    };
    Ok(GroupRep {
        kind,
        n,
        elements,
        tolerance,
    })
}

/// Row-major dense buffer with `n`-ary tensor-power structure on both sides.
struct Tensorial<S> {
    data: Vec<S>,
    rows: usize,
    cols: usize,
}

impl<S> Tensorial<S>
where
    S: Copy + Zero + Add<Output = S> + Mul<Output = S>,
{
    fn from_matrix(m: &DMatrix<S>) -> Self
    where
        S: nalgebra::Scalar,
    {
        let (rows, cols) = m.shape();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(m[(r, c)]);
            }
        }
        Tensorial { data, rows, cols }
    }

    /// `self · u^{⊗modes}` on the column side.
    fn right_apply(&self, u: &[S], n: usize, modes: usize) -> Self {
        let mut cur = self.data.clone();
        for a in 0..modes {
            let stride = n.pow((modes - 1 - a) as u32);
            let mut next = vec![S::zero(); cur.len()];
            for r in 0..self.rows {
                let row = &cur[r * self.cols..(r + 1) * self.cols];
                let out = &mut next[r * self.cols..(r + 1) * self.cols];
                for (c, &x) in row.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let digit = (c / stride) % n;
                    let base = c - digit * stride;
                    for t in 0..n {
                        out[base + t * stride] = out[base + t * stride] + x * u[digit * n + t];
                    }
                }
            }
            cur = next;
        }
        Tensorial {
            data: cur,
            rows: self.rows,
            cols: self.cols,
        }
    }

    /// `u^{⊗modes} · self` on the row side.
    fn left_apply(&self, u: &[S], n: usize, modes: usize) -> Self {
        let mut cur = self.data.clone();
        for a in 0..modes {
            let stride = n.pow((modes - 1 - a) as u32);
            let mut next = vec![S::zero(); cur.len()];
            for r in 0..self.rows {
                let digit = (r / stride) % n;
                let base = r - digit * stride;
                for c in 0..self.cols {
                    let x = cur[r * self.cols + c];
                    if x.is_zero() {
                        continue;
                    }
                    for t in 0..n {
                        let target = (base + t * stride) * self.cols + c;
                        next[target] = next[target] + u[t * n + digit] * x;
                    }
                }
            }
            cur = next;
        }
        Tensorial {
            data: cur,
            rows: self.rows,
            cols: self.cols,
        }
    }
}

fn row_major<S: nalgebra::Scalar + Copy>(u: &DMatrix<S>) -> Vec<S> {
    let n = u.nrows();
    (0..n * n).map(|i| u[(i / n, i % n)]).collect()
}

fn intertwines<S>(t: &DMatrix<S>, u: &DMatrix<S>, k: usize, l: usize, close: impl Fn(S, S) -> bool) -> bool
where
    S: nalgebra::Scalar + Copy + Zero + Add<Output = S> + Mul<Output = S>,
{
    let n = u.nrows();
    let flat = row_major(u);
    let base = Tensorial::from_matrix(t);
    let lhs = base.right_apply(&flat, n, k);
    let rhs = base.left_apply(&flat, n, l);
    lhs.data.iter().zip(&rhs.data).all(|(&a, &b)| close(a, b))
}

/// True iff `T_p u^{⊗k} = u^{⊗l} T_p` for every element `u` of `rep`.
pub fn check_intertwiner(rep: &GroupRep, p: &Partition) -> Result<bool, LinmapError> {
    let t = t_matrix(p, rep.n)?.entries;
    let (k, l) = (p.upper_count(), p.lower_count());
    Ok(match &rep.elements {
        RepElements::Exact(us) => us.iter().all(|u| intertwines(&t, u, k, l, |a, b| a == b)),
        RepElements::Sampled(us) => {
            let tf = t.map(|x| x as f64);
            let tol = rep.tolerance;
            us.iter()
                .all(|u| intertwines(&tf, u, k, l, |a, b| (a - b).abs() <= tol))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::NamedPartition;

    fn p(text: &str) -> Partition {
        text.parse().unwrap()
    }

    #[test]
    fn delta_examples() {
        let pair = NamedPartition::Pair.build().unwrap();
        assert_eq!(delta(&pair, &[], &[1, 1], 2), Ok(1));
        assert_eq!(delta(&pair, &[], &[1, 2], 2), Ok(0));
        let unit = NamedPartition::Unit.build().unwrap();
        assert_eq!(delta(&unit, &[2], &[2], 2), Ok(1));
        let positioner = NamedPartition::Positioner.build().unwrap();
        assert_eq!(delta(&positioner, &[], &[1, 2, 3, 2], 3), Ok(1));
        assert_eq!(delta(&positioner, &[], &[1, 2, 3, 1], 3), Ok(0));
        assert_eq!(
            delta(&pair, &[], &[1, 3], 2),
            Err(LinmapError::IndexRange { index: 3, n: 2 })
        );
        assert!(matches!(
            delta(&pair, &[1], &[1, 1], 2),
            Err(LinmapError::TupleLength { .. })
        ));
    }

    #[test]
    fn t_matrix_examples() {
        let unit = NamedPartition::Unit.build().unwrap();
        assert_eq!(t_matrix(&unit, 3).unwrap().entries, DMatrix::<i64>::identity(3, 3));
        let pair = NamedPartition::Pair.build().unwrap();
        assert_eq!(
            t_matrix(&pair, 2).unwrap().entries,
            DMatrix::from_column_slice(4, 1, &[1, 0, 0, 1])
        );
        let four_rot = p("P(2,2): u1,u2,l1,l2");
        assert_eq!(
            t_matrix(&four_rot, 2).unwrap().entries,
            DMatrix::from_diagonal(&DVector::from_vec(vec![1, 0, 0, 1]))
        );
        assert_eq!(
            t_matrix(&Partition::empty(), 4).unwrap().entries,
            DMatrix::from_element(1, 1, 1)
        );
        assert!(matches!(
            t_matrix(&NamedPartition::Block(9).build().unwrap(), 3),
            Err(LinmapError::MemoryCap { .. })
        ));
    }

    #[test]
    fn t_matrix_agrees_with_delta() {
        let q = p("P(2,3): u1,l3; u2; l1,l2");
        let n = 3;
        let t = t_matrix(&q, n).unwrap().entries;
        for (r, c) in (0..27).cartesian_product(0..9) {
            let i = [c / 3 + 1, c % 3 + 1];
            let j = [r / 9 + 1, (r / 3) % 3 + 1, r % 3 + 1];
            assert_eq!(t[(r, c)], delta(&q, &i, &j, n).unwrap() as i64);
        }
    }

    #[test]
    fn functor_examples() {
        let pair = NamedPartition::Pair.build().unwrap();
        let cap = involute(&pair);
        let tp = t_matrix(&pair, 3).unwrap().entries;
        let tq = t_matrix(&cap, 3).unwrap().entries;
        assert_eq!((tq * tp)[(0, 0)], 3);
        assert!(check_functor(&pair, &cap, 3).unwrap());
        let unit = NamedPartition::Unit.build().unwrap();
        assert!(check_functor(&unit, &unit, 4).unwrap());
        assert!(matches!(check_functor(&pair, &unit, 2), Err(LinmapError::Op(_))));
    }

    #[test]
    fn classical_rep_examples() {
        let s3 = classical_rep(RepKind::SymmetricGroup, 3, 0, 0).unwrap();
        assert_eq!(s3.len(), 6);
        let h2 = classical_rep(RepKind::Hyperoctahedral, 2, 0, 0).unwrap();
        assert_eq!(h2.len(), 8);
        let b3 = classical_rep(RepKind::Bistochastic, 3, 5, 7).unwrap();
        assert_eq!(b3.len(), 5);
        for u in b3.float_elements() {
            let ones = DVector::from_element(3, 1.0);
            assert!((&u * &ones - &ones).amax() < 1e-9);
            assert!((u.transpose() * &ones - &ones).amax() < 1e-9);
            assert!((&u * u.transpose() - DMatrix::identity(3, 3)).amax() < 1e-9);
        }
        assert!(matches!(
            classical_rep(RepKind::Hyperoctahedral, 9, 0, 0),
            Err(LinmapError::EnumerationTooLarge { .. })
        ));
        assert_eq!(
            classical_rep(RepKind::OrthogonalSample, 1, 3, 0),
            Err(LinmapError::Dimension(1))
        );
    }

    #[test]
    fn sampling_is_seeded() {
        let a = classical_rep(RepKind::OrthogonalSample, 3, 4, 11).unwrap();
        let b = classical_rep(RepKind::OrthogonalSample, 3, 4, 11).unwrap();
        let c = classical_rep(RepKind::OrthogonalSample, 3, 4, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn intertwiner_examples() {
        let s3 = classical_rep(RepKind::SymmetricGroup, 3, 0, 0).unwrap();
        for q in crate::ops::enumerate_all(0, 4, false).unwrap() {
            assert!(check_intertwiner(&s3, &q).unwrap(), "{q}");
        }
        let h3 = classical_rep(RepKind::Hyperoctahedral, 3, 0, 0).unwrap();
        assert!(!check_intertwiner(&h3, &NamedPartition::Block(3).build().unwrap()).unwrap());
        assert!(check_intertwiner(&h3, &NamedPartition::FourBlock.build().unwrap()).unwrap());
        let o3 = classical_rep(RepKind::OrthogonalSample, 3, 5, 0).unwrap();
        assert!(check_intertwiner(&o3, &NamedPartition::Pair.build().unwrap()).unwrap());
        assert!(!check_intertwiner(&o3, &NamedPartition::Singleton.build().unwrap()).unwrap());
        assert!(check_intertwiner(&o3, &NamedPartition::Crossing.build().unwrap()).unwrap());
    }
}
