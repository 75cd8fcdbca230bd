//! Value-based argumentation for reaching agreement among stakeholders.
//!
//! A scenario declares stakeholders, a preference order over values and
//! either an abstract argument graph or norms, beliefs and observations from
//! which arguments are built. The engine computes extensions under complete,
//! preferred or grounded semantics, picks those that best promote the
//! stakeholders' values and explains the decision.
//!
//! ```
//! use accord_core::{bundled, compile_scenario, parse_scenario, rank_extensions};
//! use accord_core::{CompileOptions, LiftingPrinciple, Semantics};
//!
//! let scenario = parse_scenario(bundled::SMART_HOME_ABSTRACT).unwrap();
//! let compiled = compile_scenario(&scenario, CompileOptions::default()).unwrap();
//! let agreement = rank_extensions(&compiled.vf, Semantics::Preferred, LiftingPrinciple::Democratic);
//! assert_eq!(agreement.selected().extension.to_string(), "{B, E}");
//! ```

pub mod agreement;
pub mod compiler;
pub mod explain;
pub mod framework;
pub mod ids;
mod labelling;
pub mod norms;
pub mod oracle;
pub mod scenario;
pub mod values;

pub use agreement::{maximal_agreement, rank_extensions, Agreement, Candidate, ValueFramework};
pub use compiler::{
    compile_scenario, CompileError, CompileOptions, CompiledScenario, Conclusion,
    StructuredArgument,
};
pub use explain::{
    explain_decision, justification_tree, render_text, resolve_target, ExplainError, Explanation,
    JustificationNode, Target,
};
pub use framework::{Acceptance, Extension, Framework, FrameworkError, Semantics};
pub use ids::{AgentId, ArgumentId, Atom, NameError, RuleId, ValueId};
pub use norms::Literal;
pub use oracle::{oracle_extensions, DEFAULT_ORACLE_CAP, MAX_ORACLE_CAP};
pub use scenario::{
    bundled, parse_scenario, parse_scenario_bytes, serialize_scenario, ParseError, ParseErrorKind,
    Scenario,
};
pub use values::{lift, strictly_preferred, LiftingPrinciple, ValueOrder, ValueSet};
