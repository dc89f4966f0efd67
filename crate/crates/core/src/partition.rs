//! Two-row set partitions `P(k,l)`, their canonical form and text grammar.
//!
//! A partition of `k` upper and `l` lower points is stored as a vector of
//! block labels in the natural point order `u1..uk, l1..ll`. Labels form a
//! restricted growth string, so the label vector is unique for a partition
//! and blocks are automatically ordered by their least point.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest number of points a single partition may carry.
pub const MAX_POINTS: usize = 255;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Row {
    Upper,
    Lower,
}

/// A point of a two-row partition, indexed from 1 within its row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub row: Row,
    pub index: usize,
}

impl Point {
    pub fn upper(index: usize) -> Self {
        Point { row: Row::Upper, index }
    }

    pub fn lower(index: usize) -> Self {
        Point { row: Row::Lower, index }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.row {
            Row::Upper => write!(f, "u{}", self.index),
            Row::Lower => write!(f, "l{}", self.index),
        }
    }
}

/// Alternating counterclockwise mark of a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mark {
    Plus,
    Minus,
}

impl Mark {
    pub fn at(position: usize) -> Mark {
        if position % 2 == 0 {
            Mark::Plus
        } else {
            Mark::Minus
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("point {0} appears in more than one block")]
    Overlap(Point),
    #[error("point {0} is not assigned to any block")]
    Coverage(Point),
    #[error("point {point} out of range for P({upper},{lower})")]
    Range { point: Point, upper: usize, lower: usize },
    #[error("empty block")]
    EmptyBlock,
    #[error("partition with {0} points exceeds the limit of {MAX_POINTS}")]
    TooLarge(usize),
    #[error("syntax error: {0}")]
    Syntax(String),
}

/// Counterclockwise reading of a partition: `u_k, ..., u_1, l_1, ..., l_l`
/// together with the alternating marks starting at `Plus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linearization {
    pub points: Vec<Point>,
    pub marks: Vec<Mark>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockProfile {
    /// Block sizes, ascending.
    pub sizes: Vec<usize>,
    pub singleton_count: usize,
    pub odd_block_count: usize,
    /// `(plus, minus)` counts per block, in canonical block order.
    pub marks: Vec<(usize, usize)>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    upper: usize,
    lower: usize,
    labels: Vec<u8>,
}

/// Relabels an arbitrary label vector into restricted growth form.
pub(crate) fn normalize_labels<T: Copy + Into<usize>>(raw: &[T]) -> Vec<u8> {
    let mut map: Vec<u8> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    let mut out = Vec::with_capacity(raw.len());
    for &r in raw {
        let r: usize = r.into();
        if r >= map.len() {
            map.resize(r + 1, u8::MAX);
        }
        if map[r] == u8::MAX {
            map[r] = seen.len() as u8;
            seen.push(r);
        }
        out.push(map[r]);
    }
    out
}

impl Partition {
    /// Builds a partition from explicit blocks of points.
    pub fn new(upper: usize, lower: usize, blocks: &[Vec<Point>]) -> Result<Self, PartitionError> {
        let total = upper + lower;
        if total > MAX_POINTS {
            return Err(PartitionError::TooLarge(total));
        }
        let mut labels: Vec<Option<usize>> = vec![None; total];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            for &point in block {
                let slot = match point.row {
                    Row::Upper if point.index >= 1 && point.index <= upper => point.index - 1,
                    Row::Lower if point.index >= 1 && point.index <= lower => upper + point.index - 1,
                    _ => return Err(PartitionError::Range { point, upper, lower }),
                };
                if labels[slot].is_some() {
                    return Err(PartitionError::Overlap(point));
                }
                labels[slot] = Some(b);
            }
        }
        let mut raw = Vec::with_capacity(total);
        for (slot, label) in labels.iter().enumerate() {
            match label {
                Some(b) => raw.push(*b),
                None => {
                    let point = if slot < upper {
                        Point::upper(slot + 1)
                    } else {
                        Point::lower(slot - upper + 1)
                    };
                    return Err(PartitionError::Coverage(point));
                }
            }
        }
        Ok(Partition {
            upper,
            lower,
            labels: normalize_labels(&raw),
        })
    }

    /// Builds a partition from block labels given in natural point order
    /// (`u1..uk` then `l1..ll`). Labels are arbitrary identifiers.
    pub fn from_labels(upper: usize, lower: usize, labels: &[usize]) -> Result<Self, PartitionError> {
        let total = upper + lower;
        if total > MAX_POINTS {
            return Err(PartitionError::TooLarge(total));
        }
        if labels.len() != total {
            return Err(PartitionError::Syntax(format!(
                "expected {total} labels, got {}",
                labels.len()
            )));
        }
        Ok(Partition {
            upper,
            lower,
            labels: normalize_labels(labels),
        })
    }

    /// Builds a partition from block labels given in counterclockwise order
    /// (`u_k..u_1` then `l_1..l_l`).
    pub fn from_linear_labels<T: Copy + Into<usize>>(upper: usize, lower: usize, linear: &[T]) -> Self {
        debug_assert_eq!(linear.len(), upper + lower);
        let mut natural: Vec<usize> = Vec::with_capacity(linear.len());
        natural.extend(linear[..upper].iter().rev().map(|&x| x.into()));
        natural.extend(linear[upper..].iter().map(|&x| x.into()));
        Partition {
            upper,
            lower,
            labels: normalize_labels(&natural),
        }
    }

    /// Fast path for already normalized natural-order labels.
    pub(crate) fn from_normalized(upper: usize, lower: usize, labels: Vec<u8>) -> Self {
        debug_assert_eq!(normalize_labels(&labels), labels);
        Partition { upper, lower, labels }
    }

    /// The partition with no points and no blocks.
    pub fn empty() -> Self {
        Partition {
            upper: 0,
            lower: 0,
            labels: Vec::new(),
        }
    }

    pub fn upper_count(&self) -> usize {
        self.upper
    }

    pub fn lower_count(&self) -> usize {
        self.lower
    }

    /// Total number of points `k + l`.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Block labels in natural order (restricted growth string).
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().map(|&x| x as usize + 1).max().unwrap_or(0)
    }

    pub fn point_at(&self, slot: usize) -> Point {
        if slot < self.upper {
            Point::upper(slot + 1)
        } else {
            Point::lower(slot - self.upper + 1)
        }
    }

    /// Blocks in canonical order, each sorted.
    pub fn blocks(&self) -> Vec<Vec<Point>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (slot, &b) in self.labels.iter().enumerate() {
            blocks[b as usize].push(self.point_at(slot));
        }
        blocks
    }

    /// Block labels in counterclockwise order.
    pub fn linear_labels(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len());
        out.extend(self.labels[..self.upper].iter().rev());
        out.extend(&self.labels[self.upper..]);
        out
    }

    pub fn linearize(&self) -> Linearization {
        let mut points = Vec::with_capacity(self.len());
        points.extend((1..=self.upper).rev().map(Point::upper));
        points.extend((1..=self.lower).map(Point::lower));
        let marks = (0..points.len()).map(Mark::at).collect();
        Linearization { points, marks }
    }

    /// True iff no two blocks interleave in the counterclockwise order.
    pub fn is_noncrossing(&self) -> bool {
        is_noncrossing_sequence(&self.linear_labels())
    }

    pub fn block_profile(&self) -> BlockProfile {
        let nb = self.num_blocks();
        let mut marks = vec![(0usize, 0usize); nb];
        for (pos, &b) in self.linear_labels().iter().enumerate() {
            match Mark::at(pos) {
                Mark::Plus => marks[b as usize].0 += 1,
                Mark::Minus => marks[b as usize].1 += 1,
            }
        }
        let mut sizes: Vec<usize> = marks.iter().map(|(p, m)| p + m).collect();
        sizes.sort_unstable();
        BlockProfile {
            singleton_count: sizes.iter().filter(|&&s| s == 1).count(),
            odd_block_count: sizes.iter().filter(|&&s| s % 2 == 1).count(),
            sizes,
            marks,
        }
    }

    pub fn canonical_text(&self) -> String {
        self.to_string()
    }
}

/// Noncrossing test on a sequence of block labels read along a line.
pub(crate) fn is_noncrossing_sequence(seq: &[u8]) -> bool {
    let nb = seq.iter().map(|&x| x as usize + 1).max().unwrap_or(0);
    let mut last = vec![0usize; nb];
    for (i, &b) in seq.iter().enumerate() {
        last[b as usize] = i;
    }
    let mut open = vec![false; nb];
    let mut stack: Vec<u8> = Vec::new();
    for (i, &b) in seq.iter().enumerate() {
        if open[b as usize] {
            if stack.last() != Some(&b) {
                return false;
            }
            if last[b as usize] == i {
                stack.pop();
                open[b as usize] = false;
            }
        } else if last[b as usize] != i {
            open[b as usize] = true;
            stack.push(b);
        }
    }
    true
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{}):", self.upper, self.lower)?;
        for (i, block) in self.blocks().iter().enumerate() {
            f.write_str(if i == 0 { " " } else { "; " })?;
            for (j, point) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{point}")?;
            }
        }
        Ok(())
    }
}

fn syntax(msg: impl Into<String>) -> PartitionError {
    PartitionError::Syntax(msg.into())
}

fn parse_count(s: &str, what: &str) -> Result<usize, PartitionError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(format!("bad {what} `{s}`")));
    }
    s.parse().map_err(|_| syntax(format!("bad {what} `{s}`")))
}

fn parse_point(code: &str) -> Result<Point, PartitionError> {
    let (row, rest) = match code.as_bytes().first() {
        Some(b'u') => (Row::Upper, &code[1..]),
        Some(b'l') => (Row::Lower, &code[1..]),
        _ => return Err(syntax(format!("bad point code `{code}`"))),
    };
    let index = parse_count(rest, "point index")?;
    Ok(Point { row, index })
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Parses `P(<k>,<l>): <block> (';' <block>)*`, ignoring whitespace.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = compact.strip_prefix("P(").ok_or_else(|| syntax("expected `P(`"))?;
        let (header, body) = rest.split_once("):").ok_or_else(|| syntax("expected `):`"))?;
        let (k, l) = header.split_once(',').ok_or_else(|| syntax("expected `<k>,<l>`"))?;
        let upper = parse_count(k, "upper count")?;
        let lower = parse_count(l, "lower count")?;
        let mut blocks = Vec::new();
        if !body.is_empty() {
            for block in body.split(';') {
                if block.is_empty() {
                    return Err(syntax("empty block"));
                }
                let points = block.split(',').map(parse_point).collect::<Result<Vec<_>, _>>()?;
                blocks.push(points);
            }
        }
        Partition::new(upper, lower, &blocks)
    }
}
