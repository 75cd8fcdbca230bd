//! Value-based argumentation frameworks and agreement selection.
//!
//! Agreement is reached in two steps: compute the extensions of the reduced
//! framework under a semantics, then keep every extension whose value set is
//! not strictly beaten by the value set of another extension.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::framework::{Extension, Framework, Semantics};
use crate::ids::{AgentId, ArgumentId};
use crate::values::{LiftingPrinciple, ValueError, ValueOrder, ValueSet};

/// An argumentation framework whose arguments are split into practical and
/// epistemic ones, with values on practical arguments and contributing agents
/// on every argument.
///
/// Attacks may go practical→practical, epistemic→epistemic and
/// epistemic→practical, never practical→epistemic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueFramework {
    framework: Framework,
    practical: BTreeSet<ArgumentId>,
    epistemic: BTreeSet<ArgumentId>,
    agents: BTreeSet<AgentId>,
    order: ValueOrder,
    val: BTreeMap<ArgumentId, ValueSet>,
    pi: BTreeMap<ArgumentId, BTreeSet<AgentId>>,
}

impl ValueFramework {
    /// `val` may only mention practical arguments; missing entries mean no
    /// values. Missing `pi` entries mean no contributing agents.
    pub fn new(
        framework: Framework,
        practical: BTreeSet<ArgumentId>,
        agents: BTreeSet<AgentId>,
        order: ValueOrder,
        val: BTreeMap<ArgumentId, ValueSet>,
        pi: BTreeMap<ArgumentId, BTreeSet<AgentId>>,
    ) -> Result<Self, ValueError> {
        for a in &practical {
            if !framework.contains(a.as_str()) {
                return Err(ValueError::UnknownArgument(a.to_string()));
            }
        }
        let epistemic: BTreeSet<ArgumentId> = framework
            .arguments()
            .iter()
            .filter(|a| !practical.contains(*a))
            .cloned()
            .collect();
        for (arg, values) in &val {
            if !framework.contains(arg.as_str()) {
                return Err(ValueError::UnknownArgument(arg.to_string()));
            }
            if epistemic.contains(arg) && !values.is_empty() {
                return Err(ValueError::ValuesOnEpistemic(arg.clone()));
            }
            if let Some(v) = values.iter().find(|v| !order.contains(v.as_str())) {
                return Err(ValueError::UnknownValue(v.to_string()));
            }
        }
        for (arg, who) in &pi {
            if !framework.contains(arg.as_str()) {
                return Err(ValueError::UnknownArgument(arg.to_string()));
            }
            if let Some(a) = who.iter().find(|a| !agents.contains(*a)) {
                return Err(ValueError::UnknownAgent(a.to_string()));
            }
        }
        if let Some((from, to)) = framework
            .attacks()
            .find(|(from, to)| practical.contains(*from) && epistemic.contains(*to))
        {
            return Err(ValueError::PracticalAttacksEpistemic {
                from: from.clone(),
                to: to.clone(),
            });
        }
        let val = practical
            .iter()
            .map(|a| (a.clone(), val.get(a).cloned().unwrap_or_default()))
            .collect();
        let pi = framework
            .arguments()
            .iter()
            .map(|a| (a.clone(), pi.get(a).cloned().unwrap_or_default()))
            .collect();
        Ok(Self {
            framework,
            practical,
            epistemic,
            agents,
            order,
            val,
            pi,
        })
    }

    /// Drops values and agents.
    pub fn reduce(&self) -> &Framework {
        &self.framework
    }

    pub fn practical(&self) -> &BTreeSet<ArgumentId> {
        &self.practical
    }

    pub fn epistemic(&self) -> &BTreeSet<ArgumentId> {
        &self.epistemic
    }

    pub fn agents(&self) -> &BTreeSet<AgentId> {
        &self.agents
    }

    pub fn order(&self) -> &ValueOrder {
        &self.order
    }

    /// Values of a practical argument; `None` for epistemic or unknown ones.
    pub fn val(&self, argument: &str) -> Option<&ValueSet> {
        self.val.get(argument)
    }

    pub fn pi(&self, argument: &str) -> Option<&BTreeSet<AgentId>> {
        self.pi.get(argument)
    }

    /// Union of `val` over the practical members of `extension`.
    pub fn extension_values(&self, extension: &Extension) -> Result<ValueSet, ValueError> {
        let mut out = ValueSet::new();
        for member in extension.iter() {
            if !self.framework.contains(member.as_str()) {
                return Err(ValueError::UnknownArgument(member.to_string()));
            }
            if let Some(values) = self.val.get(member) {
                out.extend(values.iter().cloned());
            }
        }
        Ok(out)
    }

    /// Union of `pi` over all members of `extension`.
    pub fn extension_agents(&self, extension: &Extension) -> BTreeSet<AgentId> {
        extension
            .iter()
            .filter_map(|m| self.pi.get(m))
            .flatten()
            .cloned()
            .collect()
    }
}

/// One extension together with its value set and the candidates that beat it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub extension: Extension,
    pub values: ValueSet,
    /// Indices of candidates whose value sets are strictly preferred.
    pub dominated_by: Vec<usize>,
}

impl Candidate {
    pub fn is_maximal(&self) -> bool {
        self.dominated_by.is_empty()
    }
}

/// All extensions of a semantics ranked under a lifting principle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub semantics: Semantics,
    pub principle: LiftingPrinciple,
    /// Every extension, in canonical order.
    pub candidates: Vec<Candidate>,
    /// Indices of the maximal candidates, in canonical order. Never empty.
    pub winners: Vec<usize>,
}

impl Agreement {
    /// The canonical pick among the winners.
    pub fn selected(&self) -> &Candidate {
        &self.candidates[self.winners[0]]
    }

    pub fn is_tie(&self) -> bool {
        self.winners.len() > 1
    }

    pub fn winning_extensions(&self) -> Vec<Extension> {
        self.winners
            .iter()
            .map(|&i| self.candidates[i].extension.clone())
            .collect()
    }
}

pub fn rank_extensions(
    vf: &ValueFramework,
    semantics: Semantics,
    principle: LiftingPrinciple,
) -> Agreement {
    let extensions = vf.reduce().extensions(semantics);
    let value_sets: Vec<ValueSet> = extensions
        .iter()
        .map(|e| {
            vf.extension_values(e)
                .expect("extensions only contain framework arguments")
        })
        .collect();
    let indexed: Vec<Vec<usize>> = value_sets
        .iter()
        .map(|v| {
            vf.order
                .set_indices(v)
                .expect("values were checked against the order on construction")
        })
        .collect();
    let candidates: Vec<Candidate> = extensions
        .into_iter()
        .zip(value_sets)
        .enumerate()
        .map(|(i, (extension, values))| Candidate {
            extension,
            values,
            dominated_by: (0..indexed.len())
                .filter(|&j| {
                    j != i
                        && vf
                            .order
                            .strictly_indices(principle, &indexed[j], &indexed[i])
                })
                .collect(),
        })
        .collect();
    let winners = (0..candidates.len())
        .filter(|&i| candidates[i].is_maximal())
        .collect();
    Agreement {
        semantics,
        principle,
        candidates,
        winners,
    }
}

/// The extensions reaching the maximal extent of agreement over values.
pub fn maximal_agreement(
    vf: &ValueFramework,
    semantics: Semantics,
    principle: LiftingPrinciple,
) -> Vec<Extension> {
    rank_extensions(vf, semantics, principle).winning_extensions()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::values::value_set;

    fn ids<T>(names: &[&str]) -> BTreeSet<T>
    where
        T: std::str::FromStr + Ord,
        T::Err: std::fmt::Debug,
    {
        names.iter().map(|n| n.parse().unwrap()).collect()
    }

    pub(crate) fn smart_home_vba() -> ValueFramework {
        let framework = Framework::new(
            ["A", "B", "C", "D", "E"],
            [
                ("A", "B"),
                ("B", "A"),
                ("B", "C"),
                ("C", "B"),
                ("D", "B"),
                ("E", "D"),
            ],
        )
        .unwrap();
        let chain: Vec<_> = [
            "Legality",
            "Responsibility",
            "Protect_Privacy",
            "Autonomy",
            "Good_To_Consumers",
            "Healthy",
        ]
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();
        let order = ValueOrder::from_chains(chain.clone(), &[chain]).unwrap();
        let arg = |n: &str| ArgumentId::new(n).unwrap();
        let val = BTreeMap::from([
            (
                arg("A"),
                value_set(["Healthy", "Responsibility", "Autonomy"]).unwrap(),
            ),
            (arg("B"), value_set(["Healthy", "Legality"]).unwrap()),
            (
                arg("C"),
                value_set(["Good_To_Consumers", "Protect_Privacy"]).unwrap(),
            ),
        ]);
        let pi = BTreeMap::from([
            (arg("A"), ids(&["Parents"])),
            (arg("B"), ids(&["The_law"])),
            (arg("C"), ids(&["Manufacturer"])),
            (arg("D"), ids(&["Child"])),
        ]);
        ValueFramework::new(
            framework,
            ids(&["A", "B", "C"]),
            ids(&["Parents", "Child", "Manufacturer", "The_law"]),
            order,
            val,
            pi,
        )
        .unwrap()
    }

    fn ext(names: &[&str]) -> Extension {
        Extension::from_names(names).unwrap()
    }

    #[test]
    fn reduce_is_a_projection() {
        let vf = smart_home_vba();
        assert_eq!(vf.reduce().len(), 5);
        assert_eq!(vf.reduce().attack_count(), 6);
        assert_eq!(vf.epistemic(), &ids::<ArgumentId>(&["D", "E"]));
        assert!(vf.pi("E").unwrap().is_empty());
    }

    #[test]
    fn extension_values_examples() {
        let vf = smart_home_vba();
        assert_eq!(
            vf.extension_values(&ext(&["B", "E"])).unwrap(),
            value_set(["Healthy", "Legality"]).unwrap()
        );
        assert_eq!(
            vf.extension_values(&ext(&["A", "C", "E"])).unwrap(),
            value_set([
                "Healthy",
                "Responsibility",
                "Autonomy",
                "Good_To_Consumers",
                "Protect_Privacy"
            ])
            .unwrap()
        );
        assert!(vf.extension_values(&ext(&["E"])).unwrap().is_empty());
        assert!(vf.extension_values(&ext(&["Z"])).is_err());
    }

    #[test]
    fn maximal_agreement_examples() {
        let vf = smart_home_vba();
        assert_eq!(
            maximal_agreement(&vf, Semantics::Preferred, LiftingPrinciple::Democratic),
            vec![ext(&["B", "E"])]
        );
        assert_eq!(
            maximal_agreement(&vf, Semantics::Preferred, LiftingPrinciple::Elitist),
            vec![ext(&["B", "E"]), ext(&["A", "C", "E"])]
        );
        let ranked = rank_extensions(&vf, Semantics::Preferred, LiftingPrinciple::Democratic);
        assert_eq!(ranked.candidates[1].dominated_by, vec![0]);
        assert!(!ranked.is_tie());
    }

    #[test]
    fn without_practical_arguments_every_extension_wins() {
        let framework = Framework::new(["X", "Y"], [("X", "Y"), ("Y", "X")]).unwrap();
        let order = ValueOrder::from_pairs([], []).unwrap();
        let vf = ValueFramework::new(
            framework,
            BTreeSet::new(),
            BTreeSet::new(),
            order,
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(
            maximal_agreement(&vf, Semantics::Preferred, LiftingPrinciple::Democratic),
            vec![ext(&["X"]), ext(&["Y"])]
        );
    }

    #[test]
    fn practical_to_epistemic_attack_is_rejected() {
        let framework = Framework::new(["P", "Q"], [("P", "Q")]).unwrap();
        let order = ValueOrder::from_pairs([], []).unwrap();
        let err = ValueFramework::new(
            framework,
            ids(&["P"]),
            BTreeSet::new(),
            order,
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .unwrap_err();
        assert!(matches!(err, ValueError::PracticalAttacksEpistemic { .. }));
    }

    #[test]
    fn values_on_epistemic_arguments_are_rejected() {
        let framework = Framework::new(["Q"], Vec::<(&str, &str)>::new()).unwrap();
        let x: crate::ids::ValueId = "x".parse().unwrap();
        let order = ValueOrder::from_pairs([x], []).unwrap();
        let err = ValueFramework::new(
            framework,
            BTreeSet::new(),
            BTreeSet::new(),
            order,
            BTreeMap::from([(ArgumentId::new("Q").unwrap(), value_set(["x"]).unwrap())]),
            BTreeMap::new(),
        )
        .unwrap_err();
        assert!(matches!(err, ValueError::ValuesOnEpistemic(_)));
    }
}
