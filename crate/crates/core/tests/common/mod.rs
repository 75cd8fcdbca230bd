#![allow(dead_code)]

use accord_core::{Framework, ValueId, ValueOrder, ValueSet};
use proptest::prelude::*;

pub fn arg_name(i: usize) -> String {
    format!("a{i:02}")
}

pub fn framework(n: usize, attacks: &[(usize, usize)]) -> Framework {
    Framework::new(
        (0..n).map(arg_name),
        attacks.iter().map(|&(i, j)| (arg_name(i), arg_name(j))),
    )
    .unwrap()
}

/// Random attack relations over up to `max_n` arguments, self-attacks included.
pub fn attack_graph(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (0..=max_n, prop::sample::select(vec![0.1, 0.25, 0.5])).prop_flat_map(|(n, p)| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        prop::collection::vec(prop::bool::weighted(p), pairs.len()).prop_map(move |mask| {
            let attacks = pairs
                .iter()
                .zip(mask)
                .filter(|(_, keep)| *keep)
                .map(|(pair, _)| *pair)
                .collect();
            (n, attacks)
        })
    })
}

pub fn value_name(i: usize) -> ValueId {
    ValueId::new(format!("v{i}")).unwrap()
}

/// A random preorder over `1..=max_values` values given by generating pairs.
pub fn preorder(max_values: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_values).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=n * 2)))
}

pub fn order(n: usize, pairs: &[(usize, usize)]) -> ValueOrder {
    ValueOrder::from_pairs(
        (0..n).map(value_name),
        pairs.iter().map(|&(i, j)| (value_name(i), value_name(j))),
    )
    .unwrap()
}

/// The subset of `0..n` selected by the bits of `mask`.
pub fn subset(n: usize, mask: u32) -> ValueSet {
    (0..n)
        .filter(|i| mask >> i & 1 == 1)
        .map(value_name)
        .collect()
}
