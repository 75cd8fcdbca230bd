//! Abstract argumentation frameworks and their extension semantics.
//!
//! A [`Framework`] is an immutable directed graph of arguments and attacks.
//! Arguments are stored in lexicographic order, so index order and canonical
//! order coincide everywhere below.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::ids::{ArgumentId, NameError};
use crate::labelling;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameworkError {
    #[error(transparent)]
    Name(#[from] NameError),
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
    #[error("framework has {size} arguments, above the oracle cap of {cap}")]
    OracleCapExceeded { size: usize, cap: usize },
}

/// Extension semantics offered by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Complete,
    #[default]
    Preferred,
    Grounded,
}

impl Semantics {
    pub const ALL: [Semantics; 3] = [
        Semantics::Grounded,
        Semantics::Complete,
        Semantics::Preferred,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::Complete => "complete",
            Semantics::Preferred => "preferred",
            Semantics::Grounded => "grounded",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "complete" => Ok(Semantics::Complete),
            "preferred" => Ok(Semantics::Preferred),
            "grounded" => Ok(Semantics::Grounded),
            other => Err(format!(
                "unknown semantics `{other}` (expected grounded, complete or preferred)"
            )),
        }
    }
}

/// Acceptance of a single argument across all extensions of a semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Acceptance {
    /// In every extension.
    Skeptical,
    /// In at least one extension but not all.
    Credulous,
    Rejected,
}

/// A set of arguments accepted together.
///
/// Extensions order by size first and then by their sorted member list, which
/// is the canonical order of every result list in this crate.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Extension {
    members: BTreeSet<ArgumentId>,
}

impl Extension {
    pub fn new(members: impl IntoIterator<Item = ArgumentId>) -> Self {
        Self {
            members: members.into_iter().collect(),
        }
    }

    /// Builds an extension from raw names.
    pub fn from_names<I, S>(names: I) -> Result<Self, NameError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names
            .into_iter()
            .map(|n| ArgumentId::new(n.as_ref()))
            .collect::<Result<BTreeSet<_>, _>>()
            .map(|members| Self { members })
    }

    pub fn members(&self) -> &BTreeSet<ArgumentId> {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = &ArgumentId> {
        self.members.iter()
    }

    pub fn contains(&self, argument: &str) -> bool {
        self.members.contains(argument)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &Extension) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Keeps only the members named in `arguments`.
    pub fn project<S: AsRef<str>>(&self, arguments: &[S]) -> Extension {
        Extension {
            members: self
                .members
                .iter()
                .filter(|m| arguments.iter().any(|a| a.as_ref() == m.as_str()))
                .cloned()
                .collect(),
        }
    }
}

impl Ord for Extension {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.iter().cmp(other.members.iter()))
    }
}

impl PartialOrd for Extension {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(m.as_str())?;
        }
        f.write_str("}")
    }
}

impl Serialize for Extension {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members.iter())
    }
}

/// An abstract argumentation framework `(arguments, attacks)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Framework {
    names: Vec<ArgumentId>,
    attacks: Vec<(usize, usize)>,
    attackers: Vec<Vec<usize>>,
    targets: Vec<Vec<usize>>,
}

impl Framework {
    /// Builds a framework. Duplicate arguments and attacks are merged; an
    /// attack endpoint that is not a declared argument is an error.
    pub fn new<A, S, R, T>(arguments: A, attacks: R) -> Result<Self, FrameworkError>
    where
        A: IntoIterator<Item = S>,
        S: AsRef<str>,
        R: IntoIterator<Item = (T, T)>,
        T: AsRef<str>,
    {
        let names: BTreeSet<ArgumentId> = arguments
            .into_iter()
            .map(|a| ArgumentId::new(a.as_ref()))
            .collect::<Result<_, _>>()?;
        let names: Vec<ArgumentId> = names.into_iter().collect();
        let lookup = |name: &str| {
            names
                .binary_search_by(|n| n.as_str().cmp(name))
                .map_err(|_| FrameworkError::UnknownArgument(name.to_owned()))
        };
        let mut pairs = BTreeSet::new();
        for (from, to) in attacks {
            let from = lookup(from.as_ref())?;
            let to = lookup(to.as_ref())?;
            pairs.insert((from, to));
        }
        let mut attackers = vec![Vec::new(); names.len()];
        let mut targets = vec![Vec::new(); names.len()];
        for &(from, to) in &pairs {
            attackers[to].push(from);
            targets[from].push(to);
        }
        Ok(Self {
            names,
            attacks: pairs.into_iter().collect(),
            attackers,
            targets,
        })
    }

    pub fn empty() -> Self {
        Self {
            names: Vec::new(),
            attacks: Vec::new(),
            attackers: Vec::new(),
            targets: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Arguments in canonical (lexicographic) order.
    pub fn arguments(&self) -> &[ArgumentId] {
        &self.names
    }

    /// Attack pairs `(attacker, target)` in canonical order.
    pub fn attacks(&self) -> impl Iterator<Item = (&ArgumentId, &ArgumentId)> + '_ {
        self.attacks
            .iter()
            .map(|&(a, b)| (&self.names[a], &self.names[b]))
    }

    pub fn attack_count(&self) -> usize {
        self.attacks.len()
    }

    pub fn contains(&self, argument: &str) -> bool {
        self.index_of(argument).is_ok()
    }

    pub fn attacks_between(&self, from: &str, to: &str) -> Result<bool, FrameworkError> {
        let from = self.index_of(from)?;
        let to = self.index_of(to)?;
        Ok(self.targets[from].contains(&to))
    }

    pub fn attackers(&self, argument: &str) -> Result<BTreeSet<ArgumentId>, FrameworkError> {
        let idx = self.index_of(argument)?;
        Ok(self.attackers[idx]
            .iter()
            .map(|&b| self.names[b].clone())
            .collect())
    }

    /// Arguments attacked by `argument`.
    pub fn targets(&self, argument: &str) -> Result<BTreeSet<ArgumentId>, FrameworkError> {
        let idx = self.index_of(argument)?;
        Ok(self.targets[idx]
            .iter()
            .map(|&b| self.names[b].clone())
            .collect())
    }

    pub fn is_conflict_free<I, S>(&self, set: I) -> Result<bool, FrameworkError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mask = self.mask_of(set)?;
        Ok(self.mask_conflict_free(&mask))
    }

    /// True iff every attacker of `argument` is attacked by some member of `set`.
    pub fn defends<I, S>(&self, set: I, argument: &str) -> Result<bool, FrameworkError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mask = self.mask_of(set)?;
        let idx = self.index_of(argument)?;
        let attacked = self.attacked_by(&mask);
        Ok(self.attackers[idx].iter().all(|&b| attacked[b]))
    }

    pub fn is_admissible<I, S>(&self, set: I) -> Result<bool, FrameworkError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mask = self.mask_of(set)?;
        Ok(self.mask_admissible(&mask))
    }

    /// The least fixpoint of the characteristic function.
    pub fn grounded_extension(&self) -> Extension {
        self.grounded_trace()
            .pop()
            .expect("trace always holds the starting empty set")
    }

    /// Every iterate of the characteristic function starting from the empty
    /// set, ending with the fixpoint (which appears once).
    pub fn grounded_trace(&self) -> Vec<Extension> {
        let mut current = vec![false; self.len()];
        let mut trace = vec![self.extension_of(&current)];
        loop {
            let attacked = self.attacked_by(&current);
            let next: Vec<bool> = (0..self.len())
                .map(|a| self.attackers[a].iter().all(|&b| attacked[b]))
                .collect();
            if next == current {
                return trace;
            }
            current = next;
            trace.push(self.extension_of(&current));
        }
    }

    pub fn complete_extensions(&self) -> Vec<Extension> {
        let mut out: Vec<Extension> = labelling::complete_labellings(self)
            .into_iter()
            .map(|mask| self.extension_of(&mask))
            .collect();
        out.sort();
        out
    }

    /// The ⊆-maximal complete extensions.
    pub fn preferred_extensions(&self) -> Vec<Extension> {
        let mut complete = labelling::complete_labellings(self);
        complete.sort_by_key(|m| std::cmp::Reverse(m.iter().filter(|&&x| x).count()));
        let mut maximal: Vec<Vec<bool>> = Vec::new();
        for candidate in complete {
            let covered = maximal
                .iter()
                .any(|big| candidate.iter().zip(big).all(|(&c, &b)| !c || b));
            if !covered {
                maximal.push(candidate);
            }
        }
        let mut out: Vec<Extension> = maximal.iter().map(|m| self.extension_of(m)).collect();
        out.sort();
        out
    }

    pub fn extensions(&self, semantics: Semantics) -> Vec<Extension> {
        match semantics {
            Semantics::Complete => self.complete_extensions(),
            Semantics::Preferred => self.preferred_extensions(),
            Semantics::Grounded => vec![self.grounded_extension()],
        }
    }

    pub fn acceptance_status(
        &self,
        semantics: Semantics,
        argument: &str,
    ) -> Result<Acceptance, FrameworkError> {
        self.index_of(argument)?;
        let extensions = self.extensions(semantics);
        let hits = extensions.iter().filter(|e| e.contains(argument)).count();
        Ok(if hits == extensions.len() && hits > 0 {
            Acceptance::Skeptical
        } else if hits > 0 {
            Acceptance::Credulous
        } else {
            Acceptance::Rejected
        })
    }

    pub(crate) fn index_of(&self, argument: &str) -> Result<usize, FrameworkError> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(argument))
            .map_err(|_| FrameworkError::UnknownArgument(argument.to_owned()))
    }

    pub(crate) fn attackers_of(&self, idx: usize) -> &[usize] {
        &self.attackers[idx]
    }

    pub(crate) fn targets_of(&self, idx: usize) -> &[usize] {
        &self.targets[idx]
    }

    pub(crate) fn mask_of<I, S>(&self, set: I) -> Result<Vec<bool>, FrameworkError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut mask = vec![false; self.len()];
        for name in set {
            mask[self.index_of(name.as_ref())?] = true;
        }
        Ok(mask)
    }

    pub(crate) fn extension_of(&self, mask: &[bool]) -> Extension {
        Extension {
            members: mask
                .iter()
                .zip(&self.names)
                .filter(|(&inside, _)| inside)
                .map(|(_, n)| n.clone())
                .collect(),
        }
    }

    fn attacked_by(&self, mask: &[bool]) -> Vec<bool> {
        let mut attacked = vec![false; self.len()];
        for &(from, to) in &self.attacks {
            if mask[from] {
                attacked[to] = true;
            }
        }
        attacked
    }

    fn mask_conflict_free(&self, mask: &[bool]) -> bool {
        self.attacks.iter().all(|&(a, b)| !(mask[a] && mask[b]))
    }

    fn mask_admissible(&self, mask: &[bool]) -> bool {
        if !self.mask_conflict_free(mask) {
            return false;
        }
        let attacked = self.attacked_by(mask);
        (0..self.len())
            .filter(|&a| mask[a])
            .all(|a| self.attackers[a].iter().all(|&b| attacked[b]))
    }
}
