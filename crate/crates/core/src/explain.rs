//! Explanations of decisions: how the deciding argument is derived, why its
//! extension was chosen over the others, and why it survives its attackers.

use std::collections::BTreeSet;
use std::fmt::{self, Write};

use serde::Serialize;
use thiserror::Error;

use crate::agreement::{rank_extensions, Agreement};
use crate::compiler::{CompiledScenario, Conclusion, Premise, RuleKind, Step};
use crate::framework::{Extension, Framework, FrameworkError, Semantics};
use crate::ids::{AgentId, ArgumentId};
use crate::norms::Literal;
use crate::values::{LiftingPrinciple, ValueSet};

/// Justification trees stop expanding after this many nodes; further nodes
/// are rendered as references.
pub const MAX_JUSTIFICATION_NODES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplainError {
    #[error("unknown target `{target}`; known conclusions: {}", known.join(", "))]
    UnknownTarget { target: String, known: Vec<String> },
    #[error("{0} is not an admissible set")]
    NotAdmissible(Extension),
    #[error(transparent)]
    Framework(#[from] FrameworkError),
}

/// What to explain: a specific argument or any argument with a conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Argument(ArgumentId),
    Literal(Literal),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Argument(a) => write!(f, "{a}"),
            Target::Literal(l) => write!(f, "{l}"),
        }
    }
}

/// Argument names take precedence over literals.
pub fn resolve_target(compiled: &CompiledScenario, text: &str) -> Result<Target, ExplainError> {
    if compiled.vf.reduce().contains(text) {
        return Ok(Target::Argument(
            ArgumentId::new(text).expect("framework names are valid"),
        ));
    }
    if let Some(lit) = Literal::parse(text) {
        if !compiled.arguments_concluding(&lit).is_empty() {
            return Ok(Target::Literal(lit));
        }
    }
    let known: BTreeSet<String> = compiled
        .conclusions
        .values()
        .filter_map(|c| c.literal().map(|l| l.to_string()))
        .collect();
    Err(ExplainError::UnknownTarget {
        target: text.to_owned(),
        known: known.into_iter().collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Accepted,
    Rejected,
}

/// Why an argument has its status relative to an extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Reason {
    /// Accepted: one entry per attacker, each rejected.
    AttackersRejected { attackers: Vec<JustificationNode> },
    /// Rejected: attacked by an accepted argument.
    AttackedBy { attacker: Box<JustificationNode> },
    /// Rejected: `attacker` is not counter-attacked by the extension.
    Undefended { attacker: ArgumentId },
    /// Rejected: defended, but left out of a non-complete extension.
    NotIncluded,
    /// Already justified on the path from the root.
    Reference,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JustificationNode {
    pub argument: ArgumentId,
    pub status: Status,
    pub reason: Reason,
}

impl JustificationNode {
    /// Depth-first visit of all nodes.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a JustificationNode)) {
        visit(self);
        match &self.reason {
            Reason::AttackersRejected { attackers } => {
                attackers.iter().for_each(|n| n.walk(visit));
            }
            Reason::AttackedBy { attacker } => attacker.walk(visit),
            _ => {}
        }
    }
}

struct TreeBuilder<'f> {
    framework: &'f Framework,
    members: Vec<bool>,
    attacked: Vec<bool>,
    path: Vec<bool>,
    budget: usize,
}

impl TreeBuilder<'_> {
    fn node(&mut self, arg: usize) -> JustificationNode {
        let argument = self.framework.arguments()[arg].clone();
        let status = if self.members[arg] {
            Status::Accepted
        } else {
            Status::Rejected
        };
        if self.path[arg] || self.budget == 0 {
            return JustificationNode {
                argument,
                status,
                reason: Reason::Reference,
            };
        }
        self.budget -= 1;
        self.path[arg] = true;
        let reason = if self.members[arg] {
            let attackers = self
                .framework
                .attackers_of(arg)
                .to_vec()
                .into_iter()
                .map(|b| self.node(b))
                .collect();
            Reason::AttackersRejected { attackers }
        } else {
            // Lexicographically least accepted attacker, if any.
            let cited = self
                .framework
                .attackers_of(arg)
                .iter()
                .copied()
                .find(|&b| self.members[b]);
            match cited {
                Some(b) => Reason::AttackedBy {
                    attacker: Box::new(self.node(b)),
                },
                None => match self
                    .framework
                    .attackers_of(arg)
                    .iter()
                    .copied()
                    .find(|&b| !self.attacked[b])
                {
                    Some(b) => Reason::Undefended {
                        attacker: self.framework.arguments()[b].clone(),
                    },
                    None => Reason::NotIncluded,
                },
            }
        };
        self.path[arg] = false;
        JustificationNode {
            argument,
            status,
            reason,
        }
    }
}

/// Justifies the status of `argument` relative to `extension`, which must be
/// admissible.
pub fn justification_tree(
    framework: &Framework,
    extension: &Extension,
    argument: &str,
) -> Result<JustificationNode, ExplainError> {
    let root = framework.index_of(argument)?;
    if !framework.is_admissible(extension.iter())? {
        return Err(ExplainError::NotAdmissible(extension.clone()));
    }
    let members = framework.mask_of(extension.iter())?;
    let mut attacked = vec![false; framework.len()];
    for (i, inside) in members.iter().enumerate() {
        if *inside {
            for &t in framework.targets_of(i) {
                attacked[t] = true;
            }
        }
    }
    let mut builder = TreeBuilder {
        framework,
        path: vec![false; framework.len()],
        members,
        attacked,
        budget: MAX_JUSTIFICATION_NODES,
    };
    Ok(builder.node(root))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    /// The decision argument belongs to a winning extension.
    Selected,
    /// No argument for the target belongs to a winning extension.
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivability {
    pub argument: ArgumentId,
    pub conclusion: Option<Conclusion>,
    pub premises: Vec<Premise>,
    pub steps: Vec<Step>,
    pub values: ValueSet,
    pub agents: BTreeSet<AgentId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledExtension {
    /// `E1`, `E2`, ... by canonical position among all extensions.
    pub label: String,
    pub extension: Extension,
    pub values: ValueSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    /// Strictly beaten by the listed extensions.
    Dominated { by: Vec<String> },
    /// Also maximal; lost only on canonical order.
    Tied,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contrast {
    #[serde(flatten)]
    pub candidate: LabeledExtension,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub semantics: Semantics,
    pub principle: LiftingPrinciple,
    pub chosen: LabeledExtension,
    pub tie: bool,
    pub tied_with: Vec<String>,
    /// Every other extension under the semantics.
    pub contrast: Vec<Contrast>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Explanation {
    pub scenario: String,
    pub target: String,
    pub outcome: Outcome,
    pub decision: ArgumentId,
    pub derivability: Derivability,
    pub agreement: AgreementReport,
    pub justification: JustificationNode,
}

fn label(i: usize) -> String {
    format!("E{}", i + 1)
}

fn labeled(agreement: &Agreement, i: usize) -> LabeledExtension {
    LabeledExtension {
        label: label(i),
        extension: agreement.candidates[i].extension.clone(),
        values: agreement.candidates[i].values.clone(),
    }
}

pub fn explain_decision(
    compiled: &CompiledScenario,
    semantics: Semantics,
    principle: LiftingPrinciple,
    target: &Target,
) -> Result<Explanation, ExplainError> {
    let framework = compiled.vf.reduce();
    let mut concluding = match target {
        Target::Argument(a) => {
            framework.index_of(a.as_str())?;
            vec![a.clone()]
        }
        Target::Literal(l) => compiled.arguments_concluding(l),
    };
    if concluding.is_empty() {
        return Err(resolve_target(compiled, &target.to_string()).unwrap_err());
    }
    // Prefer the shortest derivation, then the canonical name.
    let steps = |a: &ArgumentId| compiled.provenance.get(a).map_or(0, |p| p.steps.len());
    concluding.sort_by(|a, b| steps(a).cmp(&steps(b)).then_with(|| a.cmp(b)));

    let agreement = rank_extensions(&compiled.vf, semantics, principle);
    let found = agreement.winners.iter().find_map(|&w| {
        let ext = &agreement.candidates[w].extension;
        concluding
            .iter()
            .find(|a| ext.contains(a.as_str()))
            .map(|a| (w, a.clone()))
    });
    let (chosen, decision, outcome) = match found {
        Some((w, a)) => (w, a, Outcome::Selected),
        None => (
            agreement.winners[0],
            concluding[0].clone(),
            Outcome::Rejected,
        ),
    };

    let provenance = compiled.provenance.get(&decision);
    let derivability = Derivability {
        argument: decision.clone(),
        conclusion: compiled.conclusions.get(&decision).cloned(),
        premises: provenance
            .map(|p| p.premises.iter().cloned().collect())
            .unwrap_or_default(),
        steps: provenance.map(|p| p.steps.clone()).unwrap_or_default(),
        values: compiled
            .vf
            .val(decision.as_str())
            .cloned()
            .unwrap_or_default(),
        agents: compiled
            .vf
            .pi(decision.as_str())
            .cloned()
            .unwrap_or_default(),
    };

    let contrast = (0..agreement.candidates.len())
        .filter(|&i| i != chosen)
        .map(|i| Contrast {
            candidate: labeled(&agreement, i),
            verdict: if agreement.candidates[i].is_maximal() {
                Verdict::Tied
            } else {
                Verdict::Dominated {
                    by: agreement.candidates[i]
                        .dominated_by
                        .iter()
                        .map(|&j| label(j))
                        .collect(),
                }
            },
        })
        .collect();
    let report = AgreementReport {
        semantics,
        principle,
        chosen: labeled(&agreement, chosen),
        tie: agreement.is_tie(),
        tied_with: agreement
            .winners
            .iter()
            .filter(|&&w| w != chosen)
            .map(|&w| label(w))
            .collect(),
        contrast,
    };

    let justification = justification_tree(
        framework,
        &agreement.candidates[chosen].extension,
        decision.as_str(),
    )?;

    Ok(Explanation {
        scenario: compiled.name.clone(),
        target: target.to_string(),
        outcome,
        decision,
        derivability,
        agreement: report,
        justification,
    })
}

// ---------------------------------------------------------------------------
// Text rendering

fn list<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn braces<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    format!("{{{}}}", list(items))
}

fn step_line(step: &Step) -> String {
    let kind = match step.kind {
        RuleKind::Norm => "norm",
        RuleKind::Belief => "belief",
        RuleKind::Standpoint => "standpoint",
    };
    let mut notes = Vec::new();
    if let Some(who) = &step.stakeholder {
        notes.push(format!("by {who}"));
    }
    if !step.values.is_empty() {
        notes.push(format!("values {}", list(&step.values)));
    }
    let notes = if notes.is_empty() {
        String::new()
    } else {
        format!(" ({})", notes.join("; "))
    };
    let body = if step.antecedents.is_empty() {
        format!("=> {}", step.conclusion)
    } else {
        format!("{} => {}", list(&step.antecedents), step.conclusion)
    };
    format!("{kind} {}{notes}: {body}", step.rule)
}

fn render_children(out: &mut String, node: &JustificationNode, depth: usize) {
    let Reason::AttackersRejected { attackers } = &node.reason else {
        return;
    };
    let indent = "  ".repeat(depth + 1);
    for child in attackers {
        match &child.reason {
            Reason::AttackedBy { attacker } => {
                let expands = matches!(
                    &attacker.reason,
                    Reason::AttackersRejected { attackers } if !attackers.is_empty()
                );
                if expands {
                    writeln!(
                        out,
                        "{indent}- argument {} is rejected because its attacker {} is accepted, \
                         and {} is accepted because all its attackers are rejected:",
                        child.argument, attacker.argument, attacker.argument
                    )
                    .unwrap();
                    render_children(out, attacker, depth + 1);
                } else {
                    writeln!(
                        out,
                        "{indent}- argument {} is rejected because its attacker {} is accepted.",
                        child.argument, attacker.argument
                    )
                    .unwrap();
                }
            }
            Reason::Reference => writeln!(
                out,
                "{indent}- argument {} is {} (justified above).",
                child.argument,
                status_word(child.status)
            )
            .unwrap(),
            Reason::Undefended { attacker } => writeln!(
                out,
                "{indent}- argument {} is rejected because its attacker {attacker} is not counter-attacked.",
                child.argument
            )
            .unwrap(),
            Reason::NotIncluded => writeln!(
                out,
                "{indent}- argument {} is rejected because it is not part of the extension.",
                child.argument
            )
            .unwrap(),
            Reason::AttackersRejected { .. } => writeln!(
                out,
                "{indent}- argument {} is accepted.",
                child.argument
            )
            .unwrap(),
        }
    }
}

fn status_word(status: Status) -> &'static str {
    match status {
        Status::Accepted => "accepted",
        Status::Rejected => "rejected",
    }
}

/// Plain-text rendering with one section per part of the explanation.
pub fn render_text(x: &Explanation) -> String {
    let mut out = String::new();
    let chosen = &x.agreement.chosen;
    let chosen_name = format!("{} = {}", chosen.label, chosen.extension);

    writeln!(
        out,
        "Explanation for `{}` in scenario {}",
        x.target, x.scenario
    )
    .unwrap();
    match x.outcome {
        Outcome::Selected => writeln!(out, "Outcome: selected (argument {})", x.decision),
        Outcome::Rejected => writeln!(out, "Outcome: rejected (argument {})", x.decision),
    }
    .unwrap();

    out.push_str("\nDerivability\n");
    let d = &x.derivability;
    match &d.conclusion {
        Some(c) => writeln!(out, "  `{c}` is the conclusion of argument {}.", d.argument),
        None => writeln!(out, "  The decision concerns argument {}.", d.argument),
    }
    .unwrap();
    if !d.premises.is_empty() {
        let premises = d.premises.iter().map(|p| match p {
            Premise::Observation(l) => format!("observation {l}"),
            Premise::Assumption(l) => format!("assumption {l}"),
        });
        writeln!(out, "  It is derived from {}", list(premises)).unwrap();
        for (i, step) in d.steps.iter().enumerate() {
            writeln!(out, "    {}. {}", i + 1, step_line(step)).unwrap();
        }
        if !d.values.is_empty() {
            writeln!(out, "  Values: {}", list(&d.values)).unwrap();
        }
        if !d.agents.is_empty() {
            writeln!(out, "  Stakeholders: {}", list(&d.agents)).unwrap();
        }
    }

    out.push_str("\nAgreement reaching\n");
    let a = &x.agreement;
    writeln!(
        out,
        "  Semantics: {}; lifting principle: {}.",
        a.semantics, a.principle
    )
    .unwrap();
    let relation = match x.outcome {
        Outcome::Selected => format!("which contains argument {}", x.decision),
        Outcome::Rejected => format!("which does not contain argument {}", x.decision),
    };
    writeln!(
        out,
        "  The extension {chosen_name} {relation} is selected since it maximizes the extent \
         of agreement over the values {} by using the {} principle.",
        braces(&chosen.values),
        a.principle
    )
    .unwrap();
    if a.tie {
        writeln!(
            out,
            "  Tie: {} also maximize{} the extent of agreement; {} is chosen by canonical order.",
            list(&a.tied_with),
            if a.tied_with.len() == 1 { "s" } else { "" },
            chosen.label
        )
        .unwrap();
    }
    if a.contrast.is_empty() {
        out.push_str("  There are no competing extensions.\n");
    } else {
        out.push_str("  Competing extensions:\n");
        for c in &a.contrast {
            let verdict = match &c.verdict {
                Verdict::Tied => "tied (also maximal)".to_owned(),
                Verdict::Dominated { by } => format!("dominated by {}", list(by)),
            };
            writeln!(
                out,
                "  - {} = {} with values {}: {verdict}.",
                c.candidate.label,
                c.candidate.extension,
                braces(&c.candidate.values)
            )
            .unwrap();
        }
    }

    out.push_str("\nJustification in a dialogue graph\n");
    let j = &x.justification;
    match &j.reason {
        Reason::AttackersRejected { attackers } if attackers.is_empty() => writeln!(
            out,
            "  Argument {} is accepted with respect to {chosen_name}, because it has no attackers.",
            j.argument
        )
        .unwrap(),
        Reason::AttackersRejected { .. } => {
            writeln!(
                out,
                "  Argument {} is accepted with respect to {chosen_name}, because all its attackers are rejected:",
                j.argument
            )
            .unwrap();
            render_children(&mut out, j, 0);
        }
        Reason::AttackedBy { attacker } => {
            writeln!(
                out,
                "  Argument {} is rejected with respect to {chosen_name}, because its attacker {} is accepted.",
                j.argument, attacker.argument
            )
            .unwrap();
        }
        Reason::Undefended { attacker } => writeln!(
            out,
            "  Argument {} is rejected with respect to {chosen_name}, because its attacker {attacker} is not counter-attacked.",
            j.argument
        )
        .unwrap(),
        Reason::NotIncluded | Reason::Reference => writeln!(
            out,
            "  Argument {} is rejected with respect to {chosen_name}.",
            j.argument
        )
        .unwrap(),
    }
    out
}
