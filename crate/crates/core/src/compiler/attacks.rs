use std::collections::{BTreeMap, BTreeSet};

use super::{Conclusion, StructuredArgument};
use crate::ids::{ArgumentId, RuleId};
use crate::norms::Literal;

/// Rebut, undercut and undermine attacks among constructed arguments.
pub fn compute_attacks(arguments: &[StructuredArgument]) -> BTreeSet<(ArgumentId, ArgumentId)> {
    let mut rebuttable: BTreeMap<&Literal, Vec<&StructuredArgument>> = BTreeMap::new();
    let mut by_norm: BTreeMap<&RuleId, Vec<&StructuredArgument>> = BTreeMap::new();
    let mut by_assumption: BTreeMap<&Literal, Vec<&StructuredArgument>> = BTreeMap::new();
    for arg in arguments {
        for lit in &arg.rule_conclusions {
            rebuttable.entry(lit).or_default().push(arg);
        }
        for norm in &arg.uses_norms {
            by_norm.entry(norm).or_default().push(arg);
        }
        for lit in &arg.uses_assumptions {
            by_assumption.entry(lit).or_default().push(arg);
        }
    }

    let mut attacks = BTreeSet::new();
    for source in arguments {
        let targets: Vec<&StructuredArgument> = match &source.conclusion {
            Conclusion::Literal(_) if source.is_bare_assumption() => Vec::new(),
            Conclusion::Literal(lit) => {
                let complement = lit.complement();
                let rebut = rebuttable.get(&complement).into_iter().flatten();
                let undermine = by_assumption.get(&complement).into_iter().flatten();
                rebut.chain(undermine).copied().collect()
            }
            Conclusion::Inapplicable(norm) => by_norm.get(norm).cloned().unwrap_or_default(),
        };
        for target in targets {
            if source.is_practical() && !target.is_practical() {
                continue;
            }
            attacks.insert((source.id.clone(), target.id.clone()));
        }
    }
    attacks
}
