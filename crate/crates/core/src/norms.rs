//! Literals, norms, beliefs and standpoints of a normative system.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::ids::{AgentId, Atom, RuleId, ValueId};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub negated: bool,
}

impl Literal {
    pub fn positive(atom: Atom) -> Self {
        Self {
            atom,
            negated: false,
        }
    }

    pub fn negative(atom: Atom) -> Self {
        Self {
            atom,
            negated: true,
        }
    }

    /// Parses `atom` or `~atom`.
    pub fn parse(text: &str) -> Option<Self> {
        let (negated, atom) = match text.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        if atom.is_empty() || !atom.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return None;
        }
        Some(Self {
            atom: Atom::new(atom).ok()?,
            negated,
        })
    }

    pub fn complement(&self) -> Self {
        Self {
            atom: self.atom.clone(),
            negated: !self.negated,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("~")?;
        }
        f.write_str(self.atom.as_str())
    }
}

impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A defeasible rule of a stakeholder, annotated with the values it promotes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Norm {
    pub id: RuleId,
    pub stakeholder: AgentId,
    pub values: Vec<ValueId>,
    /// Empty for unconditional norms.
    pub antecedents: Vec<Literal>,
    pub consequent: Literal,
}

/// A defeasible rule of the background knowledge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Belief {
    pub id: RuleId,
    pub antecedents: Vec<Literal>,
    pub consequent: Literal,
}

/// A stakeholder claim that a norm does not apply under some conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Standpoint {
    pub id: RuleId,
    pub stakeholder: AgentId,
    pub antecedents: Vec<Literal>,
    pub target_norm: RuleId,
}

/// A derivation written as a term, e.g. `n8(n7(child_smokes))`.
///
/// Leaves are premises (observations or assumptions); inner nodes apply the
/// named rule to one sub-derivation per antecedent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivationTerm {
    Premise(Literal),
    Apply {
        rule: RuleId,
        args: Vec<DerivationTerm>,
    },
}

impl DerivationTerm {
    /// Order-insensitive rendering: sub-derivations are sorted, so two terms
    /// describing the same argument render identically.
    pub fn canonical(&self) -> String {
        match self {
            DerivationTerm::Premise(lit) => lit.to_string(),
            DerivationTerm::Apply { rule, args } => {
                let mut parts: Vec<String> = args.iter().map(|a| a.canonical()).collect();
                parts.sort();
                format!("{rule}({})", parts.join(","))
            }
        }
    }
}

impl fmt::Display for DerivationTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivationTerm::Premise(lit) => write!(f, "{lit}"),
            DerivationTerm::Apply { rule, args } => {
                write!(f, "{rule}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Pins a human-readable argument name onto the argument built by `term`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alias {
    pub name: crate::ids::ArgumentId,
    pub term: DerivationTerm,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> Literal {
        Literal::parse(s).unwrap()
    }

    #[test]
    fn complement_is_an_involution() {
        let p = lit("p");
        assert_eq!(p.complement(), lit("~p"));
        assert_eq!(p.complement().complement(), p);
        assert_eq!(lit("~p").to_string(), "~p");
    }

    #[test]
    fn literal_syntax() {
        assert!(Literal::parse("").is_none());
        assert!(Literal::parse("~").is_none());
        assert!(Literal::parse("~~p").is_none());
        assert!(Literal::parse("a-b").is_none());
    }

    #[test]
    fn canonical_terms_ignore_argument_order() {
        let rule = |r: &str, args: Vec<DerivationTerm>| DerivationTerm::Apply {
            rule: r.parse().unwrap(),
            args,
        };
        let leaf = |s: &str| DerivationTerm::Premise(lit(s));
        let t1 = rule("n3", vec![leaf("b"), leaf("a")]);
        let t2 = rule("n3", vec![leaf("a"), leaf("b")]);
        assert_eq!(t1.canonical(), "n3(a,b)");
        assert_eq!(t1.canonical(), t2.canonical());
        assert_eq!(t1.to_string(), "n3(b, a)");
    }
}
