//! Value orders and the lifting of a value order to sets of values.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::ids::{ArgumentId, ValueId};

pub type ValueSet = BTreeSet<ValueId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("unknown value `{0}`")]
    UnknownValue(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("argument `{0}` is not in the framework")]
    UnknownArgument(String),
    #[error("epistemic argument `{0}` cannot carry values")]
    ValuesOnEpistemic(ArgumentId),
    #[error("practical argument `{from}` cannot attack epistemic argument `{to}`")]
    PracticalAttacksEpistemic { from: ArgumentId, to: ArgumentId },
}

/// A preorder over values: `geq(a, b)` reads "a is at least as good as b".
///
/// Stored as its reflexive-transitive closure. Cycles among distinct values
/// are allowed and make them mutually `>=`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueOrder {
    values: Vec<ValueId>,
    geq: Vec<Vec<bool>>,
}

impl ValueOrder {
    pub fn from_pairs<V, P>(values: V, pairs: P) -> Result<Self, ValueError>
    where
        V: IntoIterator<Item = ValueId>,
        P: IntoIterator<Item = (ValueId, ValueId)>,
    {
        let values: Vec<ValueId> = values
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let n = values.len();
        let mut geq = vec![vec![false; n]; n];
        for (i, row) in geq.iter_mut().enumerate() {
            row[i] = true;
        }
        let lookup = |v: &ValueId| {
            values
                .binary_search(v)
                .map_err(|_| ValueError::UnknownValue(v.to_string()))
        };
        for (hi, lo) in pairs {
            geq[lookup(&hi)?][lookup(&lo)?] = true;
        }
        // Warshall closure.
        for k in 0..n {
            let via = geq[k].clone();
            for row in geq.iter_mut() {
                if row[k] {
                    for (cell, &reach) in row.iter_mut().zip(&via) {
                        *cell |= reach;
                    }
                }
            }
        }
        Ok(Self { values, geq })
    }

    /// Each chain `[v1, v2, v3]` declares `v1 >= v2 >= v3`.
    pub fn from_chains<V>(values: V, chains: &[Vec<ValueId>]) -> Result<Self, ValueError>
    where
        V: IntoIterator<Item = ValueId>,
    {
        let pairs = chains
            .iter()
            .flat_map(|c| c.windows(2).map(|w| (w[0].clone(), w[1].clone())))
            .collect::<Vec<_>>();
        Self::from_pairs(values, pairs)
    }

    pub fn values(&self) -> &[ValueId] {
        &self.values
    }

    pub fn contains(&self, value: &str) -> bool {
        self.index(value).is_ok()
    }

    pub fn geq(&self, v1: &str, v2: &str) -> Result<bool, ValueError> {
        Ok(self.geq[self.index(v1)?][self.index(v2)?])
    }

    /// All pairs of the closure, in canonical order.
    pub fn closure_pairs(&self) -> impl Iterator<Item = (&ValueId, &ValueId)> + '_ {
        let n = self.values.len();
        (0..n).flat_map(move |i| {
            (0..n)
                .filter(move |&j| self.geq[i][j])
                .map(move |j| (&self.values[i], &self.values[j]))
        })
    }

    fn index(&self, value: &str) -> Result<usize, ValueError> {
        self.values
            .binary_search_by(|v| v.as_str().cmp(value))
            .map_err(|_| ValueError::UnknownValue(value.to_owned()))
    }

    fn indices(&self, set: &ValueSet) -> Result<Vec<usize>, ValueError> {
        set.iter().map(|v| self.index(v.as_str())).collect()
    }

    pub(crate) fn lift_indices(
        &self,
        principle: LiftingPrinciple,
        v1: &[usize],
        v2: &[usize],
    ) -> bool {
        // The empty set is only at least as good as itself, and every set is
        // at least as good as the empty set.
        if v2.is_empty() {
            return true;
        }
        if v1.is_empty() {
            return false;
        }
        match principle {
            LiftingPrinciple::Elitist => v2
                .iter()
                .any(|&low| v1.iter().all(|&high| self.geq[high][low])),
            LiftingPrinciple::Democratic => v2
                .iter()
                .all(|&low| v1.iter().any(|&high| self.geq[high][low])),
        }
    }

    pub(crate) fn strictly_indices(
        &self,
        principle: LiftingPrinciple,
        v1: &[usize],
        v2: &[usize],
    ) -> bool {
        self.lift_indices(principle, v1, v2) && !self.lift_indices(principle, v2, v1)
    }

    pub(crate) fn set_indices(&self, set: &ValueSet) -> Result<Vec<usize>, ValueError> {
        self.indices(set)
    }
}

/// Extends a value order to sets of values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftingPrinciple {
    /// `V1 ⪰ V2` iff some member of `V2` is at most every member of `V1`.
    Elitist,
    /// `V1 ⪰ V2` iff every member of `V2` is at most some member of `V1`.
    #[default]
    Democratic,
}

impl LiftingPrinciple {
    pub fn as_str(self) -> &'static str {
        match self {
            LiftingPrinciple::Elitist => "elitist",
            LiftingPrinciple::Democratic => "democratic",
        }
    }
}

impl fmt::Display for LiftingPrinciple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LiftingPrinciple {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "elitist" => Ok(LiftingPrinciple::Elitist),
            "democratic" => Ok(LiftingPrinciple::Democratic),
            other => Err(format!(
                "unknown lifting principle `{other}` (expected elitist or democratic)"
            )),
        }
    }
}

/// Elitist lifting. An empty side follows the empty-set convention of
/// [`lift`]: `{} ⪰ V` only for `V = {}`, and `V ⪰ {}` always.
pub fn lift_elitist(order: &ValueOrder, v1: &ValueSet, v2: &ValueSet) -> Result<bool, ValueError> {
    lift(order, LiftingPrinciple::Elitist, v1, v2)
}

pub fn lift_democratic(
    order: &ValueOrder,
    v1: &ValueSet,
    v2: &ValueSet,
) -> Result<bool, ValueError> {
    lift(order, LiftingPrinciple::Democratic, v1, v2)
}

/// `v1 ⪰ v2` under `principle`.
///
/// Read literally, the elitist definition makes `{}` at least as good as any
/// non-empty set. Here the empty set is at least as good only as itself, under
/// both principles, and every set is at least as good as the empty set.
pub fn lift(
    order: &ValueOrder,
    principle: LiftingPrinciple,
    v1: &ValueSet,
    v2: &ValueSet,
) -> Result<bool, ValueError> {
    let a = order.indices(v1)?;
    let b = order.indices(v2)?;
    Ok(order.lift_indices(principle, &a, &b))
}

/// `v1 ≻ v2`: `v1 ⪰ v2` and not `v2 ⪰ v1`.
pub fn strictly_preferred(
    order: &ValueOrder,
    principle: LiftingPrinciple,
    v1: &ValueSet,
    v2: &ValueSet,
) -> Result<bool, ValueError> {
    let a = order.indices(v1)?;
    let b = order.indices(v2)?;
    Ok(order.strictly_indices(principle, &a, &b))
}

/// Convenience for building value sets in tests and examples.
pub fn value_set<I, S>(names: I) -> Result<ValueSet, crate::ids::NameError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    names
        .into_iter()
        .map(|n| ValueId::new(n.as_ref()))
        .collect()
}
