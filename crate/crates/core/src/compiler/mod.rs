//! Compiles scenarios into value-based argumentation frameworks.
//!
//! Structured scenarios are turned into arguments by chaining norms, beliefs
//! and standpoints over observations and assumptions; attacks then follow
//! from three kinds of conflict:
//!
//! * rebut: `X` concludes the complement of a literal that some norm or belief
//!   step of `Y` concludes;
//! * undercut: `X` concludes that norm `n` is inapplicable and `Y` uses `n`;
//! * undermine: `X` concludes the complement of an assumption used by `Y`.
//!
//! Observations are never attacked. Assumptions are attacked by undermining
//! only, and a bare assumption attacks nothing. An attack from a practical
//! argument (one that uses a norm) onto an epistemic one is never produced.

mod attacks;
mod construct;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::agreement::ValueFramework;
use crate::framework::{Framework, FrameworkError};
use crate::ids::{AgentId, ArgumentId, RuleId, ValueId};
use crate::norms::Literal;
use crate::scenario::{ArgumentKind, Scenario, ScenarioBody, ScenarioKind, StructuredBody};
use crate::values::{ValueError, ValueOrder, ValueSet};

pub use attacks::compute_attacks;

pub const DEFAULT_ARGUMENT_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("argument construction exceeded the cap of {cap} arguments")]
    CapExceeded { cap: usize },
    #[error("alias `{alias}` matches no constructed argument (derivation {term})")]
    UnmatchedAlias { alias: ArgumentId, term: String },
    #[error("alias `{0}` collides with another argument name")]
    AliasCollision(ArgumentId),
    #[error("argument ids `{0}` collide; add an alias to disambiguate")]
    IdCollision(String),
    #[error("standpoint `{standpoint}` targets `{norm}`, which is not a norm")]
    UnknownNorm { standpoint: RuleId, norm: RuleId },
    #[error(transparent)]
    Framework(#[from] FrameworkError),
    #[error(transparent)]
    Value(#[from] ValueError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    Norm,
    Belief,
    Standpoint,
}

/// What an argument claims.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Conclusion {
    Literal(Literal),
    /// The named norm does not apply.
    Inapplicable(RuleId),
}

impl Conclusion {
    pub fn literal(&self) -> Option<&Literal> {
        match self {
            Conclusion::Literal(l) => Some(l),
            Conclusion::Inapplicable(_) => None,
        }
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::Literal(l) => write!(f, "{l}"),
            Conclusion::Inapplicable(n) => write!(f, "inapplicable({n})"),
        }
    }
}

impl Serialize for Conclusion {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "literal", rename_all = "lowercase")]
pub enum Premise {
    Observation(Literal),
    Assumption(Literal),
}

impl Premise {
    pub fn literal(&self) -> &Literal {
        match self {
            Premise::Observation(l) | Premise::Assumption(l) => l,
        }
    }
}

/// One rule application inside an argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub kind: RuleKind,
    pub rule: RuleId,
    pub stakeholder: Option<AgentId>,
    pub values: BTreeSet<ValueId>,
    pub antecedents: Vec<Literal>,
    pub conclusion: Conclusion,
}

/// A constructed argument with its full derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuredArgument {
    pub id: ArgumentId,
    pub conclusion: Conclusion,
    /// Last rule applied; `None` for a bare premise.
    pub rule: Option<(RuleKind, RuleId)>,
    /// Direct sub-arguments, one per antecedent of the last rule.
    pub subarguments: Vec<ArgumentId>,
    pub premises: BTreeSet<Premise>,
    /// Rule applications, each after the ones it depends on.
    pub steps: Vec<Step>,
    pub uses_norms: BTreeSet<RuleId>,
    pub uses_beliefs: BTreeSet<RuleId>,
    pub uses_standpoints: BTreeSet<RuleId>,
    pub uses_assumptions: BTreeSet<Literal>,
    /// Literals concluded by norm or belief steps; these are rebuttable.
    pub rule_conclusions: BTreeSet<Literal>,
    /// Every literal appearing in the argument.
    pub literals: BTreeSet<Literal>,
    pub values: ValueSet,
    pub agents: BTreeSet<AgentId>,
    /// Canonical derivation term, the basis of the content id.
    pub term: String,
}

impl StructuredArgument {
    pub fn is_practical(&self) -> bool {
        !self.uses_norms.is_empty()
    }

    pub fn is_bare_assumption(&self) -> bool {
        self.rule.is_none() && !self.uses_assumptions.is_empty()
    }

    pub fn is_consistent(&self) -> bool {
        self.literals
            .iter()
            .all(|l| !self.literals.contains(&l.complement()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompileOptions {
    pub max_arguments: usize,
}

impl Default for CompileOptions {
    fn default() -> Self {
        Self {
            max_arguments: DEFAULT_ARGUMENT_CAP,
        }
    }
}

/// All constructed arguments of a structured scenario, in a deterministic
/// order, with aliases applied.
pub fn construct_arguments(
    body: &StructuredBody,
    options: CompileOptions,
) -> Result<Vec<StructuredArgument>, CompileError> {
    let built = construct::Builder::new(body, options.max_arguments).run(body)?;
    let index = construct::term_index(&built);
    let mut names: Vec<Option<ArgumentId>> = vec![None; built.len()];
    for alias in &body.aliases {
        let term = alias.term.canonical();
        let &i = index
            .get(term.as_str())
            .ok_or_else(|| CompileError::UnmatchedAlias {
                alias: alias.name.clone(),
                term: alias.term.to_string(),
            })?;
        if names[i].is_some() {
            return Err(CompileError::AliasCollision(alias.name.clone()));
        }
        names[i] = Some(alias.name.clone());
    }
    let ids: Vec<ArgumentId> = built
        .iter()
        .zip(names)
        .map(|(b, name)| {
            name.unwrap_or_else(|| {
                ArgumentId::new(construct::content_id(&b.argument.term))
                    .expect("content ids are valid names")
            })
        })
        .collect();
    let mut seen = BTreeSet::new();
    for (id, b) in ids.iter().zip(&built) {
        if !seen.insert(id) {
            return Err(if body.aliases.iter().any(|a| &a.name == id) {
                CompileError::AliasCollision(id.clone())
            } else {
                CompileError::IdCollision(b.argument.term.clone())
            });
        }
    }
    let mut out: Vec<StructuredArgument> = built
        .into_iter()
        .zip(&ids)
        .map(|(b, id)| {
            let mut arg = b.argument;
            arg.id = id.clone();
            arg.subarguments = b.children.iter().map(|&c| ids[c].clone()).collect();
            arg
        })
        .collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

/// A scenario ready for solving.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledScenario {
    pub name: String,
    pub kind: ScenarioKind,
    pub vf: ValueFramework,
    /// Derivations of structured arguments; empty for abstract scenarios.
    pub provenance: BTreeMap<ArgumentId, StructuredArgument>,
    /// Known conclusions per argument.
    pub conclusions: BTreeMap<ArgumentId, Conclusion>,
}

impl CompiledScenario {
    /// Arguments concluding `literal`, in canonical order.
    pub fn arguments_concluding(&self, literal: &Literal) -> Vec<ArgumentId> {
        self.conclusions
            .iter()
            .filter(|(_, c)| c.literal() == Some(literal))
            .map(|(a, _)| a.clone())
            .collect()
    }
}

fn value_order(scenario: &Scenario) -> Result<ValueOrder, ValueError> {
    ValueOrder::from_chains(scenario.values.iter().cloned(), &scenario.order)
}

/// Compiles a scenario of either kind.
pub fn compile_scenario(
    scenario: &Scenario,
    options: CompileOptions,
) -> Result<CompiledScenario, CompileError> {
    match &scenario.body {
        ScenarioBody::Structured(body) => compile(scenario, body, options),
        ScenarioBody::Abstract(body) => {
            let framework = Framework::new(
                body.arguments.iter().map(|a| a.id.as_str()),
                body.attacks.iter().map(|(a, b)| (a.as_str(), b.as_str())),
            )?;
            let practical = body
                .arguments
                .iter()
                .filter(|a| a.kind == ArgumentKind::Practical)
                .map(|a| a.id.clone())
                .collect();
            let val = body
                .arguments
                .iter()
                .filter(|a| a.kind == ArgumentKind::Practical)
                .map(|a| (a.id.clone(), a.values.iter().cloned().collect()))
                .collect();
            let pi = body
                .arguments
                .iter()
                .map(|a| (a.id.clone(), a.agents.iter().cloned().collect()))
                .collect();
            let vf = ValueFramework::new(
                framework,
                practical,
                scenario.stakeholders.iter().cloned().collect(),
                value_order(scenario)?,
                val,
                pi,
            )?;
            let conclusions = body
                .arguments
                .iter()
                .filter_map(|a| {
                    a.conclusion
                        .clone()
                        .map(|c| (a.id.clone(), Conclusion::Literal(c)))
                })
                .collect();
            Ok(CompiledScenario {
                name: scenario.name.clone(),
                kind: ScenarioKind::Abstract,
                vf,
                provenance: BTreeMap::new(),
                conclusions,
            })
        }
    }
}

/// Compiles a structured scenario: practical arguments are those using a
/// norm, `val` collects the values of the norms used and `pi` the
/// stakeholders of the norms and standpoints used.
pub fn compile(
    scenario: &Scenario,
    body: &StructuredBody,
    options: CompileOptions,
) -> Result<CompiledScenario, CompileError> {
    for s in &body.standpoints {
        if !body.norms.iter().any(|n| n.id == s.target_norm) {
            return Err(CompileError::UnknownNorm {
                standpoint: s.id.clone(),
                norm: s.target_norm.clone(),
            });
        }
    }
    let arguments = construct_arguments(body, options)?;
    let attacks = compute_attacks(&arguments);
    let framework = Framework::new(
        arguments.iter().map(|a| a.id.as_str()),
        attacks.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    )?;
    let practical = arguments
        .iter()
        .filter(|a| a.is_practical())
        .map(|a| a.id.clone())
        .collect();
    let val = arguments
        .iter()
        .filter(|a| a.is_practical())
        .map(|a| (a.id.clone(), a.values.clone()))
        .collect();
    let pi = arguments
        .iter()
        .map(|a| (a.id.clone(), a.agents.clone()))
        .collect();
    let vf = ValueFramework::new(
        framework,
        practical,
        scenario.stakeholders.iter().cloned().collect(),
        value_order(scenario)?,
        val,
        pi,
    )?;
    let conclusions = arguments
        .iter()
        .map(|a| (a.id.clone(), a.conclusion.clone()))
        .collect();
    let provenance = arguments.into_iter().map(|a| (a.id.clone(), a)).collect();
    Ok(CompiledScenario {
        name: scenario.name.clone(),
        kind: ScenarioKind::Structured,
        vf,
        provenance,
        conclusions,
    })
}
