//! Moment sequences: partition counts per category, closed forms, and the
//! free and classical moment-cumulant formulas in exact arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::catalog::{enumerate_category_capped, CatalogError, Category};
use crate::ops::DEFAULT_ENUMERATION_CAP;

/// Longest word accepted by the cumulant evaluators.
pub const MAX_WORD: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentsError {
    #[error("no block value for {0}")]
    UndefinedBlockValue(String),
    #[error("starred cumulant entries are limited to blocks of size <= 2, got size {0}")]
    StarredCumulantTooLarge(usize),
    #[error("word of length {len} exceeds the limit of {MAX_WORD}")]
    WordTooLong { len: usize },
    #[error("empty word")]
    EmptyWord,
    #[error("bad law spec `{0}`")]
    Syntax(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Moments `m_1..m_K`, indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MomentSequence {
    pub values: Vec<BigRational>,
}

impl MomentSequence {
    pub fn from_integers<I, T>(values: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        MomentSequence {
            values: values
                .into_iter()
                .map(|v| BigRational::from_integer(v.into()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `m_k`, 1-indexed.
    pub fn get(&self, k: usize) -> Option<&BigRational> {
        k.checked_sub(1).and_then(|i| self.values.get(i))
    }

    /// The entries as integers, when all of them are.
    pub fn integers(&self) -> Option<Vec<BigInt>> {
        self.values
            .iter()
            .map(|v| v.is_integer().then(|| v.to_integer()))
            .collect()
    }

    /// `m_2, m_4, ..`.
    pub fn even_part(&self) -> MomentSequence {
        MomentSequence {
            values: self.values.iter().skip(1).step_by(2).cloned().collect(),
        }
    }
}

impl fmt::Display for MomentSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(", "))
    }
}

/// `m_k = #{p in P(0,k) of the category}` for `k = 1..=k_max`.
pub fn count_moments(category: Category, k_max: usize) -> Result<MomentSequence, MomentsError> {
    count_moments_capped(category, k_max, DEFAULT_ENUMERATION_CAP)
}

pub fn count_moments_capped(category: Category, k_max: usize, cap: usize) -> Result<MomentSequence, MomentsError> {
    let counts = (1..=k_max)
        .map(|k| enumerate_category_capped(category, k, cap).map(|v| v.len()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MomentSequence::from_integers(counts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    Catalan,
    Bell,
    Motzkin,
    Involutions,
    /// `(2k-1)!!`, the number of pairings of `2k` points.
    DoubleFactorial,
    /// `binom(3k, k) / (2k+1)`.
    FussCatalan2,
    /// `binom(3k+1, k) / (k+1)`.
    BFormula,
    Factorial,
}

impl FromStr for ClosedForm {
    type Err = MomentsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "catalan" => ClosedForm::Catalan,
            "bell" => ClosedForm::Bell,
            "motzkin" => ClosedForm::Motzkin,
            "involutions" => ClosedForm::Involutions,
            "doublefactorial" => ClosedForm::DoubleFactorial,
            "fusscatalan2" => ClosedForm::FussCatalan2,
            "bformula" => ClosedForm::BFormula,
            "factorial" => ClosedForm::Factorial,
            _ => return Err(MomentsError::Syntax(s.to_string())),
        })
    }
}

fn binom(n: usize, k: usize) -> BigUint {
    binomial(BigUint::from(n), BigUint::from(k))
}

pub fn closed_form(name: ClosedForm, k: usize) -> BigUint {
    match name {
        ClosedForm::Catalan => binom(2 * k, k) / BigUint::from(k + 1),
        ClosedForm::FussCatalan2 => binom(3 * k, k) / BigUint::from(2 * k + 1),
        ClosedForm::BFormula => binom(3 * k + 1, k) / BigUint::from(k + 1),
        ClosedForm::Factorial => (1..=k).map(BigUint::from).product(),
        ClosedForm::DoubleFactorial => (1..=k).map(|i| BigUint::from(2 * i - 1)).product(),
        ClosedForm::Bell => {
            // Bell triangle.
            let mut row = vec![BigUint::one()];
            for _ in 0..k {
                let mut next = vec![row.last().cloned().expect("nonempty")];
                for v in &row {
                    let x = next.last().expect("nonempty") + v;
                    next.push(x);
                }
                row = next;
            }
            row[0].clone()
        }
        ClosedForm::Motzkin => {
            let mut m: Vec<BigUint> = Vec::with_capacity(k + 1);
            for n in 0..=k {
                let v = if n < 2 {
                    BigUint::one()
                } else {
                    let mut v = m[n - 1].clone();
                    for i in 0..=n - 2 {
                        v += &m[i] * &m[n - 2 - i];
                    }
                    v
                };
                m.push(v);
            }
            m[k].clone()
        }
        ClosedForm::Involutions => {
            let (mut a, mut b) = (BigUint::one(), BigUint::one());
            for n in 2..=k {
                let c = &b + &a * BigUint::from(n - 1);
                a = b;
                b = c;
            }
            if k == 0 {
                a
            } else {
                b
            }
        }
    }
}

/// Coefficients of `g(x)^2` up to `degree`, where
/// `g(x) = Σ FussCatalan2(k) x^k`.
pub fn fuss_catalan_square(degree: usize) -> Vec<BigUint> {
    let g: Vec<BigUint> = (0..=degree).map(|k| closed_form(ClosedForm::FussCatalan2, k)).collect();
    (0..=degree).map(|n| (0..=n).map(|i| &g[i] * &g[n - i]).sum()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    D,
    DStar,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::D => "d",
            Letter::DStar => "d*",
        })
    }
}

fn word_text(letters: &[Letter]) -> String {
    letters.iter().map(Letter::to_string).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CumulantKind {
    Free,
    Classical,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockRule {
    /// `κ_1, κ_2, ..` of a single variable; zero past the end.
    Uniform(Vec<BigRational>),
    /// Cumulants of `d, d*` keyed by the letters a block touches, in order.
    /// Unlisted words, including every block of size above 2, are zero.
    Marked(Vec<(Vec<Letter>, BigRational)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CumulantSpec {
    pub kind: CumulantKind,
    rule: BlockRule,
}

impl CumulantSpec {
    pub fn uniform(kind: CumulantKind, kappas: Vec<BigRational>) -> Self {
        CumulantSpec {
            kind,
            rule: BlockRule::Uniform(kappas),
        }
    }

    pub fn marked(kind: CumulantKind, entries: Vec<(Vec<Letter>, BigRational)>) -> Result<Self, MomentsError> {
        if let Some((word, _)) = entries.iter().find(|(w, _)| w.len() > 2) {
            return Err(MomentsError::StarredCumulantTooLarge(word.len()));
        }
        Ok(CumulantSpec {
            kind,
            rule: BlockRule::Marked(entries),
        })
    }

    pub fn rule(&self) -> &BlockRule {
        &self.rule
    }

    /// Largest block size with a possibly nonzero value.
    fn max_block(&self) -> usize {
        match &self.rule {
            BlockRule::Uniform(k) => k.len(),
            BlockRule::Marked(e) => e.iter().map(|(w, _)| w.len()).max().unwrap_or(0),
        }
    }

    pub fn block_value(&self, letters: &[Letter]) -> Result<BigRational, MomentsError> {
        match &self.rule {
            BlockRule::Uniform(kappas) => {
                if letters.windows(2).any(|w| w[0] != w[1]) {
                    return Err(MomentsError::UndefinedBlockValue(word_text(letters)));
                }
                Ok(letters
                    .len()
                    .checked_sub(1)
                    .and_then(|i| kappas.get(i))
                    .cloned()
                    .unwrap_or_else(BigRational::zero))
            }
            BlockRule::Marked(entries) => Ok(entries
                .iter()
                .find(|(w, _)| w.as_slice() == letters)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(BigRational::zero)),
        }
    }
}

/// Σ over noncrossing partitions of `word[lo..hi]` of the block-value product.
struct FreeSum<'a> {
    spec: &'a CumulantSpec,
    word: &'a [Letter],
    max_block: usize,
    memo: FxHashMap<(usize, usize), BigRational>,
}

impl FreeSum<'_> {
    fn interval(&mut self, lo: usize, hi: usize) -> Result<BigRational, MomentsError> {
        if lo >= hi {
            return Ok(BigRational::one());
        }
        if let Some(v) = self.memo.get(&(lo, hi)) {
            return Ok(v.clone());
        }
        let mut letters = vec![self.word[lo]];
        let mut total = BigRational::zero();
        self.extend(lo, hi, &mut letters, BigRational::one(), &mut total)?;
        self.memo.insert((lo, hi), total.clone());
        Ok(total)
    }

    /// Grows the block containing `lo`; `last` is its latest point and
    /// `inner` the product over the gaps closed so far.
    fn extend(
        &mut self,
        last: usize,
        hi: usize,
        letters: &mut Vec<Letter>,
        inner: BigRational,
        total: &mut BigRational,
    ) -> Result<(), MomentsError> {
        let value = self.spec.block_value(letters)?;
        if !value.is_zero() {
            *total += value * &inner * self.interval(last + 1, hi)?;
        }
        if letters.len() >= self.max_block {
            return Ok(());
        }
        for next in last + 1..hi {
            let gap = self.interval(last + 1, next)?;
            if gap.is_zero() {
                continue;
            }
            letters.push(self.word[next]);
            self.extend(next, hi, letters, &inner * gap, total)?;
            letters.pop();
        }
        Ok(())
    }
}

/// Σ over all set partitions of the positions in `mask`.
struct ClassicalSum<'a> {
    spec: &'a CumulantSpec,
    word: &'a [Letter],
    max_block: usize,
    memo: FxHashMap<u32, BigRational>,
}

impl ClassicalSum<'_> {
    fn set(&mut self, mask: u32) -> Result<BigRational, MomentsError> {
        if mask == 0 {
            return Ok(BigRational::one());
        }
        if let Some(v) = self.memo.get(&mask) {
            return Ok(v.clone());
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let mut total = BigRational::zero();
        let mut block = vec![first];
        self.choose(rest, 0, &mut block, &mut total)?;
        self.memo.insert(mask, total.clone());
        Ok(total)
    }

    /// Adds positions of `rest` at or above `from` to `block`, or closes it.
    fn choose(
        &mut self,
        rest: u32,
        from: usize,
        block: &mut Vec<usize>,
        total: &mut BigRational,
    ) -> Result<(), MomentsError> {
        let letters: Vec<Letter> = block.iter().map(|&i| self.word[i]).collect();
        let value = self.spec.block_value(&letters)?;
        if !value.is_zero() {
            *total += value * self.set(rest)?;
        }
        if block.len() >= self.max_block {
            return Ok(());
        }
        for i in from..self.word.len() {
            if rest >> i & 1 == 1 {
                block.push(i);
                self.choose(rest & !(1 << i), i + 1, block, total)?;
                block.pop();
            }
        }
        Ok(())
    }
}

/// Moment `φ(word)` from cumulants.
pub fn moment_of_word(spec: &CumulantSpec, word: &[Letter]) -> Result<BigRational, MomentsError> {
    if word.len() > MAX_WORD {
        return Err(MomentsError::WordTooLong { len: word.len() });
    }
    let max_block = spec.max_block().min(word.len());
    match spec.kind {
        CumulantKind::Free => FreeSum {
            spec,
            word,
            max_block,
            memo: FxHashMap::default(),
        }
        .interval(0, word.len()),
        CumulantKind::Classical => ClassicalSum {
            spec,
            word,
            max_block,
            memo: FxHashMap::default(),
        }
        .set(((1u64 << word.len()) - 1) as u32),
    }
}

/// `m_k = φ(unit^k)` for `k = 1..=k_max`.
pub fn moments_from_cumulants(
    spec: &CumulantSpec,
    unit: &[Letter],
    k_max: usize,
) -> Result<MomentSequence, MomentsError> {
    if unit.is_empty() {
        return Err(MomentsError::EmptyWord);
    }
    let values = (1..=k_max)
        .map(|k| moment_of_word(spec, &unit.repeat(k)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MomentSequence { values })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    Squeeze,
    Symmetrize,
}

pub fn transform(seq: &MomentSequence, which: Transform) -> MomentSequence {
    let values = match which {
        Transform::Squeeze => seq
            .values
            .iter()
            .flat_map(|v| [BigRational::zero(), v.clone()])
            .collect(),
        Transform::Symmetrize => seq
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| if i % 2 == 0 { BigRational::zero() } else { v.clone() })
            .collect(),
    };
    MomentSequence { values }
}

/// A cumulant spec together with the repeating unit of its moment word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Law {
    pub spec: CumulantSpec,
    pub unit: Vec<Letter>,
}

impl Law {
    pub fn moments(&self, k_max: usize) -> Result<MomentSequence, MomentsError> {
        moments_from_cumulants(&self.spec, &self.unit, k_max)
    }
}

fn one() -> BigRational {
    BigRational::one()
}

fn parse_value(s: &str, whole: &str) -> Result<BigRational, MomentsError> {
    let bad = || MomentsError::Syntax(whole.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn parse_letters(s: &str) -> Option<Vec<Letter>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        rest = rest.strip_prefix('d')?;
        if let Some(r) = rest.strip_prefix('*') {
            out.push(Letter::DStar);
            rest = r;
        } else {
            out.push(Letter::D);
        }
    }
    (!out.is_empty()).then_some(out)
}

/// Presets: `semicircle`, `shifted-semicircle`, `gaussian`,
/// `shifted-gaussian`, `circular`, `shifted-circular`. Explicit forms:
/// `free:k1=1,k2=1` or `classical:k2=1` for one variable, and
/// `free*:d=1,d*=1,dd*=1,d*d=1` (or `classical*:..`) for `φ((dd*)^k)`.
impl FromStr for Law {
    type Err = MomentsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use CumulantKind::*;
        let marked = |kind, entries: &[(&[Letter], BigRational)]| -> Result<Law, MomentsError> {
            let entries = entries.iter().map(|(w, v)| (w.to_vec(), v.clone())).collect();
            Ok(Law {
                spec: CumulantSpec::marked(kind, entries)?,
                unit: vec![Letter::D, Letter::DStar],
            })
        };
        let uniform = |kind, kappas: Vec<BigRational>| Law {
            spec: CumulantSpec::uniform(kind, kappas),
            unit: vec![Letter::D],
        };
        let (d, ds) = (Letter::D, Letter::DStar);
        match s.trim() {
            "semicircle" => return Ok(uniform(Free, vec![BigRational::zero(), one()])),
            "shifted-semicircle" => return Ok(uniform(Free, vec![one(), one()])),
            "gaussian" => return Ok(uniform(Classical, vec![BigRational::zero(), one()])),
            "shifted-gaussian" => return Ok(uniform(Classical, vec![one(), one()])),
            "circular" => return marked(Free, &[(&[d, ds], one()), (&[ds, d], one())]),
            "shifted-circular" => {
                return marked(
                    Free,
                    &[(&[d], one()), (&[ds], one()), (&[d, ds], one()), (&[ds, d], one())],
                )
            }
            _ => {}
        }
        let bad = || MomentsError::Syntax(s.to_string());
        let (head, body) = s.split_once(':').ok_or_else(bad)?;
        let (kind, starred) = match head.trim() {
            "free" => (Free, false),
            "classical" => (Classical, false),
            "free*" => (Free, true),
            "classical*" => (Classical, true),
            _ => return Err(bad()),
        };
        let mut kappas: Vec<BigRational> = Vec::new();
        let mut entries: Vec<(Vec<Letter>, BigRational)> = Vec::new();
        for item in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(bad)?;
            let value = parse_value(value, s)?;
            if starred {
                entries.push((parse_letters(key).ok_or_else(bad)?, value));
            } else {
                let n: usize = key
                    .trim()
                    .strip_prefix('k')
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(bad)?;
                if n == 0 || n > MAX_WORD {
                    return Err(bad());
                }
                if kappas.len() < n {
                    kappas.resize(n, BigRational::zero());
                }
                kappas[n - 1] = value;
            }
        }
        if starred {
            Ok(Law {
                spec: CumulantSpec::marked(kind, entries)?,
                unit: vec![Letter::D, Letter::DStar],
            })
        } else {
            Ok(uniform(kind, kappas))
        }
    }
}

/// CSV rows `category,k,m_k` with a header line.
pub fn to_csv(rows: &[(String, MomentSequence)]) -> String {
    let mut out = String::from("category,k,m_k\n");
    for (name, seq) in rows {
        for (i, v) in seq.values.iter().enumerate() {
            out.push_str(&format!("{name},{},{v}\n", i + 1));
        }
    }
    out
}

/// Converts exact moments to `u64` for compact display, when they fit.
pub fn as_u64(seq: &MomentSequence) -> Option<Vec<u64>> {
    seq.integers()?.iter().map(ToPrimitive::to_u64).collect()
}
