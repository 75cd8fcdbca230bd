use std::fmt::Write;

use super::{ArgumentKind, Scenario, ScenarioBody};
use crate::norms::Literal;

fn join<T: std::fmt::Display>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn rule_body(antecedents: &[Literal], consequent: &Literal) -> String {
    if antecedents.is_empty() {
        format!("=> {consequent}")
    } else {
        format!("{} => {consequent}", join(antecedents, ", "))
    }
}

/// Canonical text of a scenario: header, declarations, then the body grouped
/// by statement kind, each group in its original order.
pub fn serialize_scenario(scenario: &Scenario) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line("version 1".into());
    line(format!("scenario {}", scenario.name));
    line(format!("kind {}", scenario.kind().as_str()));
    if !scenario.stakeholders.is_empty() {
        line(format!(
            "stakeholders {}",
            join(&scenario.stakeholders, " ")
        ));
    }
    if !scenario.values.is_empty() {
        line(format!("values {}", join(&scenario.values, " ")));
    }
    for chain in &scenario.order {
        line(format!("order {}", join(chain, " >= ")));
    }
    match &scenario.body {
        ScenarioBody::Abstract(body) => {
            for arg in &body.arguments {
                let mut s = format!("argument {} ", arg.id);
                s.push_str(match arg.kind {
                    ArgumentKind::Practical => "practical",
                    ArgumentKind::Epistemic => "epistemic",
                });
                if !arg.values.is_empty() {
                    write!(s, " values {}", join(&arg.values, " ")).unwrap();
                }
                if !arg.agents.is_empty() {
                    write!(s, " by {}", join(&arg.agents, " ")).unwrap();
                }
                if let Some(c) = &arg.conclusion {
                    write!(s, " concludes {c}").unwrap();
                }
                line(s);
            }
            for (from, to) in &body.attacks {
                line(format!("attack {from} -> {to}"));
            }
        }
        ScenarioBody::Structured(body) => {
            for f in &body.facts {
                line(format!("fact {f}"));
            }
            for a in &body.assumptions {
                line(format!("assumption {a}"));
            }
            for b in &body.beliefs {
                line(format!(
                    "belief {}: {}",
                    b.id,
                    rule_body(&b.antecedents, &b.consequent)
                ));
            }
            for n in &body.norms {
                let values = if n.values.is_empty() {
                    String::new()
                } else {
                    format!(" values {}", join(&n.values, " "))
                };
                line(format!(
                    "norm {} by {}{values}: {}",
                    n.id,
                    n.stakeholder,
                    rule_body(&n.antecedents, &n.consequent)
                ));
            }
            for s in &body.standpoints {
                let ants = if s.antecedents.is_empty() {
                    String::new()
                } else {
                    format!("{} ", join(&s.antecedents, ", "))
                };
                line(format!(
                    "standpoint {} by {}: {ants}undercuts {}",
                    s.id, s.stakeholder, s.target_norm
                ));
            }
            for a in &body.aliases {
                line(format!("alias {} = {}", a.name, a.term));
            }
        }
    }
    out
}
