//! Scenario files: the line-oriented input language and its data model.
//!
//! ```text
//! version 1
//! scenario smart_home
//! kind structured
//! stakeholders Parents The_law
//! values Healthy Legality
//! order Legality >= Healthy
//! fact child_smokes_marijuana
//! norm n7 by The_law values Healthy Legality: child_smokes_marijuana => illegal_behavior
//! ```
//!
//! Structured scenarios hold normative systems (`fact`, `assumption`,
//! `belief`, `norm`, `standpoint`, `alias`); abstract scenarios list
//! arguments and attacks directly (`argument`, `attack`). `#` starts a
//! comment, negation is written `~atom`.

mod parse;
mod write;

use serde::Serialize;

use crate::ids::{AgentId, ArgumentId, ValueId};
use crate::norms::{Alias, Belief, Literal, Norm, Standpoint};

pub use parse::{parse_scenario, parse_scenario_bytes, ParseError, ParseErrorKind};
pub use write::serialize_scenario;

/// Statement keywords that cannot be used as declared stakeholder or value names.
pub const RESERVED_WORDS: [&str; 4] = ["by", "values", "concludes", "undercuts"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    Abstract,
    Structured,
}

impl ScenarioKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioKind::Abstract => "abstract",
            ScenarioKind::Structured => "structured",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub stakeholders: Vec<AgentId>,
    pub values: Vec<ValueId>,
    /// Each chain `[a, b, c]` reads `a >= b >= c`.
    pub order: Vec<Vec<ValueId>>,
    pub body: ScenarioBody,
}

impl Scenario {
    pub fn kind(&self) -> ScenarioKind {
        match self.body {
            ScenarioBody::Abstract(_) => ScenarioKind::Abstract,
            ScenarioBody::Structured(_) => ScenarioKind::Structured,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScenarioBody {
    Abstract(AbstractBody),
    Structured(StructuredBody),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArgumentKind {
    Practical,
    Epistemic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractArgument {
    pub id: ArgumentId,
    pub kind: ArgumentKind,
    pub values: Vec<ValueId>,
    pub agents: Vec<AgentId>,
    /// What the argument claims, if known; lets explanations target literals.
    pub conclusion: Option<Literal>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AbstractBody {
    pub arguments: Vec<AbstractArgument>,
    pub attacks: Vec<(ArgumentId, ArgumentId)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructuredBody {
    pub facts: Vec<Literal>,
    pub assumptions: Vec<Literal>,
    pub beliefs: Vec<Belief>,
    pub norms: Vec<Norm>,
    pub standpoints: Vec<Standpoint>,
    pub aliases: Vec<Alias>,
}

/// Scenario files shipped with the crate.
pub mod bundled {
    pub const SMART_HOME_ABSTRACT: &str = include_str!("../../scenarios/smart_home_abstract.scn");
    pub const SMART_HOME_STRUCTURED: &str =
        include_str!("../../scenarios/smart_home_structured.scn");

    pub const ALL: [(&str, &str); 2] = [
        ("smart_home_abstract", SMART_HOME_ABSTRACT),
        ("smart_home_structured", SMART_HOME_STRUCTURED),
    ];
}
