#![allow(dead_code)]

use partcat::{NamedPartition, Partition};
use proptest::prelude::*;

pub fn named(n: NamedPartition) -> Partition {
    n.build().unwrap()
}

pub fn parse(text: &str) -> Partition {
    text.parse().unwrap()
}

/// Random partitions with at most `max` points in random shapes.
pub fn partition(max: usize) -> impl Strategy<Value = Partition> {
    (0..=max)
        .prop_flat_map(|n| (0..=n, proptest::collection::vec(0..n.max(1), n)))
        .prop_map(|(k, labels)| Partition::from_labels(k, labels.len() - k, &labels).unwrap())
}

/// Random partitions of a fixed shape.
pub fn partition_in(k: usize, l: usize) -> impl Strategy<Value = Partition> {
    let n = k + l;
    proptest::collection::vec(0..n.max(1), n).prop_map(move |labels| Partition::from_labels(k, l, &labels).unwrap())
}
