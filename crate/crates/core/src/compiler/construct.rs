//! Exhaustive argument construction by semi-naive forward chaining.
//!
//! Arguments are trees: leaves are observations or assumptions, inner nodes
//! apply a norm, belief or standpoint to one sub-argument per antecedent.
//! Every sub-argument is itself an argument.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{CompileError, Conclusion, Premise, RuleKind, Step, StructuredArgument};
use crate::ids::{AgentId, ArgumentId, RuleId, ValueId};
use crate::norms::Literal;
use crate::scenario::StructuredBody;

/// A rule of any kind, viewed uniformly.
pub(super) struct Rule<'s> {
    kind: RuleKind,
    id: &'s RuleId,
    antecedents: &'s [Literal],
    conclusion: Conclusion,
    stakeholder: Option<&'s AgentId>,
    values: &'s [ValueId],
}

pub(super) fn rules(body: &StructuredBody) -> Vec<Rule<'_>> {
    let norms = body.norms.iter().map(|n| Rule {
        kind: RuleKind::Norm,
        id: &n.id,
        antecedents: &n.antecedents,
        conclusion: Conclusion::Literal(n.consequent.clone()),
        stakeholder: Some(&n.stakeholder),
        values: &n.values,
    });
    let beliefs = body.beliefs.iter().map(|b| Rule {
        kind: RuleKind::Belief,
        id: &b.id,
        antecedents: &b.antecedents,
        conclusion: Conclusion::Literal(b.consequent.clone()),
        stakeholder: None,
        values: &[],
    });
    let standpoints = body.standpoints.iter().map(|s| Rule {
        kind: RuleKind::Standpoint,
        id: &s.id,
        antecedents: &s.antecedents,
        conclusion: Conclusion::Inapplicable(s.target_norm.clone()),
        stakeholder: Some(&s.stakeholder),
        values: &[],
    });
    norms.chain(beliefs).chain(standpoints).collect()
}

enum Top {
    Premise(Premise),
    Rule(usize),
}

struct Node {
    top: Top,
    conclusion: Conclusion,
    children: Vec<usize>,
    literals: BTreeSet<Literal>,
    term: String,
}

pub(super) struct Builder<'s> {
    rules: Vec<Rule<'s>>,
    nodes: Vec<Node>,
    by_literal: HashMap<Literal, Vec<usize>>,
    terms: HashMap<String, usize>,
    cap: usize,
}

impl<'s> Builder<'s> {
    pub(super) fn new(body: &'s StructuredBody, cap: usize) -> Self {
        Self {
            rules: rules(body),
            nodes: Vec::new(),
            by_literal: HashMap::new(),
            terms: HashMap::new(),
            cap,
        }
    }

    pub(super) fn run(mut self, body: &StructuredBody) -> Result<Vec<Built>, CompileError> {
        for fact in &body.facts {
            self.premise(Premise::Observation(fact.clone()))?;
        }
        for assumption in &body.assumptions {
            self.premise(Premise::Assumption(assumption.clone()))?;
        }

        let mut old_end = 0;
        let mut first = true;
        loop {
            let new_end = self.nodes.len();
            for r in 0..self.rules.len() {
                let antecedents = self.rules[r].antecedents;
                if antecedents.is_empty() {
                    if first {
                        self.apply(r, Vec::new())?;
                    }
                    continue;
                }
                // Candidate sub-arguments per antecedent, split into those
                // known before the last round and those added in it.
                let lists: Vec<&[usize]> = antecedents
                    .iter()
                    .map(|a| {
                        let all = self.by_literal.get(a).map_or(&[][..], |v| v.as_slice());
                        &all[..all.partition_point(|&i| i < new_end)]
                    })
                    .collect();
                let mut combos = Vec::new();
                for pivot in 0..lists.len() {
                    let choices: Vec<Vec<usize>> = lists
                        .iter()
                        .enumerate()
                        .map(|(p, list)| {
                            let split = list.partition_point(|&i| i < old_end);
                            match p.cmp(&pivot) {
                                std::cmp::Ordering::Less => list[..split].to_vec(),
                                std::cmp::Ordering::Equal => list[split..].to_vec(),
                                std::cmp::Ordering::Greater => list.to_vec(),
                            }
                        })
                        .collect();
                    cartesian(&choices, &mut combos);
                }
                for children in combos {
                    self.apply(r, children)?;
                }
            }
            first = false;
            if self.nodes.len() == new_end {
                break;
            }
            old_end = new_end;
        }
        Ok(self.finish())
    }

    fn premise(&mut self, premise: Premise) -> Result<(), CompileError> {
        let literal = premise.literal().clone();
        let term = literal.to_string();
        self.push(Node {
            top: Top::Premise(premise),
            conclusion: Conclusion::Literal(literal.clone()),
            children: Vec::new(),
            literals: BTreeSet::from([literal]),
            term,
        })
    }

    fn apply(&mut self, rule: usize, children: Vec<usize>) -> Result<(), CompileError> {
        let mut literals = BTreeSet::new();
        for &c in &children {
            for lit in &self.nodes[c].literals {
                if literals.contains(&lit.complement()) {
                    return Ok(());
                }
                literals.insert(lit.clone());
            }
        }
        let conclusion = self.rules[rule].conclusion.clone();
        if let Conclusion::Literal(lit) = &conclusion {
            // Re-deriving a literal already used below would make the
            // derivation circular; deriving its complement is inconsistent.
            if literals.contains(lit) || literals.contains(&lit.complement()) {
                return Ok(());
            }
            literals.insert(lit.clone());
        }
        let mut parts: Vec<&str> = children
            .iter()
            .map(|&c| self.nodes[c].term.as_str())
            .collect();
        parts.sort_unstable();
        let term = format!("{}({})", self.rules[rule].id, parts.join(","));
        if self.terms.contains_key(&term) {
            return Ok(());
        }
        self.push(Node {
            top: Top::Rule(rule),
            conclusion,
            children,
            literals,
            term,
        })
    }

    fn push(&mut self, node: Node) -> Result<(), CompileError> {
        if self.nodes.len() >= self.cap {
            return Err(CompileError::CapExceeded { cap: self.cap });
        }
        let idx = self.nodes.len();
        if let Conclusion::Literal(lit) = &node.conclusion {
            self.by_literal.entry(lit.clone()).or_default().push(idx);
        }
        self.terms.insert(node.term.clone(), idx);
        self.nodes.push(node);
        Ok(())
    }

    fn finish(self) -> Vec<Built> {
        let mut out = Vec::with_capacity(self.nodes.len());
        for idx in 0..self.nodes.len() {
            let mut order = Vec::new();
            let mut visited = BTreeSet::new();
            post_order(&self.nodes, idx, &mut visited, &mut order);
            let node = &self.nodes[idx];
            let mut arg = StructuredArgument {
                id: ArgumentId::new("pending").unwrap(),
                conclusion: node.conclusion.clone(),
                rule: None,
                subarguments: Vec::new(),
                premises: BTreeSet::new(),
                steps: Vec::new(),
                uses_norms: BTreeSet::new(),
                uses_beliefs: BTreeSet::new(),
                uses_standpoints: BTreeSet::new(),
                uses_assumptions: BTreeSet::new(),
                rule_conclusions: BTreeSet::new(),
                literals: node.literals.clone(),
                values: BTreeSet::new(),
                agents: BTreeSet::new(),
                term: node.term.clone(),
            };
            for &n in &order {
                match &self.nodes[n].top {
                    Top::Premise(p) => {
                        if let Premise::Assumption(lit) = p {
                            arg.uses_assumptions.insert(lit.clone());
                        }
                        arg.premises.insert(p.clone());
                    }
                    Top::Rule(r) => {
                        let rule = &self.rules[*r];
                        match rule.kind {
                            RuleKind::Norm => {
                                arg.uses_norms.insert(rule.id.clone());
                                arg.values.extend(rule.values.iter().cloned());
                            }
                            RuleKind::Belief => {
                                arg.uses_beliefs.insert(rule.id.clone());
                            }
                            RuleKind::Standpoint => {
                                arg.uses_standpoints.insert(rule.id.clone());
                            }
                        }
                        if let (RuleKind::Norm | RuleKind::Belief, Conclusion::Literal(l)) =
                            (rule.kind, &self.nodes[n].conclusion)
                        {
                            arg.rule_conclusions.insert(l.clone());
                        }
                        if let Some(who) = rule.stakeholder {
                            arg.agents.insert(who.clone());
                        }
                        arg.steps.push(Step {
                            kind: rule.kind,
                            rule: rule.id.clone(),
                            stakeholder: rule.stakeholder.cloned(),
                            values: rule.values.iter().cloned().collect(),
                            antecedents: rule.antecedents.to_vec(),
                            conclusion: self.nodes[n].conclusion.clone(),
                        });
                    }
                }
            }
            if let Top::Rule(r) = node.top {
                arg.rule = Some((self.rules[r].kind, self.rules[r].id.clone()));
            }
            out.push(Built {
                argument: arg,
                children: node.children.clone(),
            });
        }
        out
    }
}

/// A constructed argument before ids are assigned.
pub(super) struct Built {
    pub argument: StructuredArgument,
    pub children: Vec<usize>,
}

fn post_order(nodes: &[Node], idx: usize, visited: &mut BTreeSet<usize>, order: &mut Vec<usize>) {
    if !visited.insert(idx) {
        return;
    }
    for &c in &nodes[idx].children {
        post_order(nodes, c, visited, order);
    }
    order.push(idx);
}

fn cartesian(choices: &[Vec<usize>], out: &mut Vec<Vec<usize>>) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut cursor = vec![0; choices.len()];
    loop {
        out.push(cursor.iter().zip(choices).map(|(&i, c)| c[i]).collect());
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            cursor[pos] += 1;
            if cursor[pos] < choices[pos].len() {
                break;
            }
            cursor[pos] = 0;
        }
    }
}

/// 48-bit FNV-1a digest of a derivation term, as lowercase hex.
pub(super) fn content_id(term: &str) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in term.bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0100_0000_01b3);
    }
    format!("arg_{:012x}", hash >> 16)
}

/// Canonical terms of the built arguments, for alias lookup.
pub(super) fn term_index(built: &[Built]) -> BTreeMap<&str, usize> {
    built
        .iter()
        .enumerate()
        .map(|(i, b)| (b.argument.term.as_str(), i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartesian_product_enumerates_all_tuples() {
        let mut out = Vec::new();
        cartesian(&[vec![1, 2], vec![3], vec![4, 5]], &mut out);
        assert_eq!(
            out,
            vec![vec![1, 3, 4], vec![1, 3, 5], vec![2, 3, 4], vec![2, 3, 5]]
        );
        let mut none = Vec::new();
        cartesian(&[vec![1], vec![]], &mut none);
        assert!(none.is_empty());
    }

    #[test]
    fn content_ids_are_stable() {
        assert_eq!(content_id("n1(p)"), content_id("n1(p)"));
        assert_ne!(content_id("n1(p)"), content_id("n1(q)"));
        assert_eq!(content_id("x").len(), 16);
    }
}
