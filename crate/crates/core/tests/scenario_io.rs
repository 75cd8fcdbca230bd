use std::collections::BTreeSet;

use accord_core::norms::{Alias, Belief, DerivationTerm, Norm, Standpoint};
use accord_core::scenario::{
    AbstractArgument, AbstractBody, ArgumentKind, ScenarioBody, StructuredBody,
};
use accord_core::{
    bundled, parse_scenario, parse_scenario_bytes, serialize_scenario, AgentId, ArgumentId, Atom,
    Literal, ParseErrorKind, Scenario, ValueId,
};
use proptest::prelude::*;

#[test]
fn bundled_scenarios_round_trip() {
    for (name, text) in bundled::ALL {
        let parsed = parse_scenario(text).unwrap();
        assert_eq!(parsed.name, name);
        let canonical = serialize_scenario(&parsed);
        assert_eq!(parse_scenario(&canonical).unwrap(), parsed);
        assert_eq!(
            serialize_scenario(&parse_scenario(&canonical).unwrap()),
            canonical
        );
    }
}

#[test]
fn bundled_scenario_contents() {
    let s = parse_scenario(bundled::SMART_HOME_STRUCTURED).unwrap();
    assert_eq!(s.stakeholders.len(), 4);
    assert_eq!(s.values.len(), 6);
    let ScenarioBody::Structured(body) = &s.body else {
        panic!()
    };
    assert_eq!(body.norms.len(), 8);
    assert_eq!(body.standpoints.len(), 1);
    assert_eq!(body.aliases.len(), 5);

    let s = parse_scenario(bundled::SMART_HOME_ABSTRACT).unwrap();
    let ScenarioBody::Abstract(body) = &s.body else {
        panic!()
    };
    assert_eq!(body.arguments.len(), 5);
    assert_eq!(body.attacks.len(), 6);
}

#[test]
fn empty_abstract_scenario_is_header_only() {
    let s = parse_scenario("scenario nothing\nkind abstract\n").unwrap();
    assert_eq!(
        serialize_scenario(&s),
        "version 1\nscenario nothing\nkind abstract\n"
    );
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let text = "# header\n\nversion 1\nscenario s   # trailing\r\nkind abstract\n\n   \nargument A epistemic\n";
    let s = parse_scenario(text).unwrap();
    let ScenarioBody::Abstract(body) = &s.body else {
        panic!()
    };
    assert_eq!(body.arguments.len(), 1);
}

#[test]
fn undeclared_stakeholder_is_named() {
    let text = "scenario s\nkind structured\nstakeholders Parents\nvalues Healthy\nnorm n1 by Ghost values Healthy: p => q\n";
    let err = parse_scenario(text).unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::Reference);
    assert_eq!((err.line, err.column), (5, 12));
    assert!(err.message.contains("Ghost"), "{err}");
}

#[test]
fn undeclared_value_is_named() {
    let text =
        "scenario s\nkind abstract\nvalues Healthy\nargument A practical values Healthy Wealth\n";
    let err = parse_scenario(text).unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::Reference);
    assert_eq!((err.line, err.column), (4, 37));
    assert!(err.to_string().contains("Wealth"));
}

#[test]
fn practical_cannot_attack_epistemic() {
    let text =
        "scenario s\nkind abstract\nargument A practical\nargument B epistemic\nattack A -> B\n";
    let err = parse_scenario(text).unwrap_err();
    assert_eq!(err.line, 5);
    assert_eq!(err.kind, ParseErrorKind::Validation);
}

#[test]
fn junk_tokens_are_located_exactly() {
    let lines: Vec<&str> = bundled::SMART_HOME_STRUCTURED.lines().collect();
    for (row, line) in lines.iter().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        for col in [0, line.len()] {
            let mut broken = lines.clone();
            let edited = format!("{}@{}", &line[..col], &line[col..]);
            broken[row] = &edited;
            let err = parse_scenario(&broken.join("\n")).unwrap_err();
            assert_eq!(
                (err.line, err.column, err.kind),
                (row + 1, col + 1, ParseErrorKind::Syntax),
                "{edited}"
            );
        }
    }
}

#[test]
fn missing_pieces_report_expected_tokens() {
    let err = parse_scenario("scenario s\nkind structured\nbelief b1 p => q\n").unwrap_err();
    assert_eq!(err.line, 3);
    assert!(
        err.expected
            .as_ref()
            .is_some_and(|e| e.iter().any(|t| t.contains(':'))),
        "{err:?}"
    );
    let err = parse_scenario("kind abstract\n").unwrap_err();
    assert_eq!(err.line, 1);
    let err = parse_scenario("scenario s\nkind fancy\n").unwrap_err();
    assert_eq!((err.line, err.column), (2, 6));
}

#[test]
fn invalid_utf8_is_positioned() {
    let err = parse_scenario_bytes(b"scenario s\nkind ab\xffstract\n").unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::Encoding);
    assert_eq!((err.line, err.column), (2, 8));
}

#[test]
fn duplicate_declarations_are_rejected() {
    for text in [
        "scenario s\nkind abstract\nargument A epistemic\nargument A epistemic\n",
        "scenario s\nkind abstract\nvalues V V\n",
        "scenario s\nkind structured\nfact p\nfact ~p\n",
        "scenario s\nkind structured\nbelief r: p => q\nbelief r: q => s\n",
    ] {
        let err = parse_scenario(text).unwrap_err();
        assert_ne!(err.kind, ParseErrorKind::Syntax, "{text}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn parser_never_panics_on_bytes(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        if let Err(e) = parse_scenario_bytes(&bytes) {
            prop_assert!(e.line >= 1 && e.column >= 1);
        }
    }

    #[test]
    fn parser_never_panics_on_mutated_scenarios(
        edits in prop::collection::vec((any::<prop::sample::Index>(), any::<u8>()), 1..6)
    ) {
        let mut bytes = bundled::SMART_HOME_STRUCTURED.as_bytes().to_vec();
        for (at, b) in edits {
            let i = at.index(bytes.len());
            bytes[i] = b;
        }
        match parse_scenario_bytes(&bytes) {
            Ok(s) => prop_assert_eq!(parse_scenario(&serialize_scenario(&s)).unwrap(), s),
            Err(e) => {
                let lines = bytes.split(|&b| b == b'\n').count();
                prop_assert!(e.line >= 1 && e.line <= lines);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Generated scenarios

fn id<T: std::str::FromStr>(prefix: &str, i: usize) -> T
where
    T::Err: std::fmt::Debug,
{
    format!("{prefix}{i}").parse().unwrap()
}

fn lit(i: usize, negated: bool) -> Literal {
    let atom: Atom = id("p", i);
    if negated {
        Literal::negative(atom)
    } else {
        Literal::positive(atom)
    }
}

fn abstract_scenario() -> impl Strategy<Value = Scenario> {
    (
        0..6usize,
        prop::collection::vec(
            (any::<bool>(), 0..8u32, 0..4u32, any::<Option<(u8, bool)>>()),
            0..6,
        ),
        prop::collection::btree_set((0..6usize, 0..6usize), 0..10),
    )
        .prop_map(|(chain, specs, attacks)| {
            let values: Vec<ValueId> = (0..3).map(|i| id("v", i)).collect();
            let agents: Vec<AgentId> = (0..2).map(|i| id("s", i)).collect();
            let arguments: Vec<AbstractArgument> = specs
                .iter()
                .enumerate()
                .map(|(i, (practical, vmask, amask, concl))| AbstractArgument {
                    id: id("A", i),
                    kind: if *practical {
                        ArgumentKind::Practical
                    } else {
                        ArgumentKind::Epistemic
                    },
                    values: if *practical {
                        (0..3)
                            .filter(|b| vmask >> b & 1 == 1)
                            .map(|b| values[b].clone())
                            .collect()
                    } else {
                        Vec::new()
                    },
                    agents: (0..2)
                        .filter(|b| amask >> b & 1 == 1)
                        .map(|b| agents[b].clone())
                        .collect(),
                    conclusion: concl.map(|(a, n)| lit(a as usize % 4, n)),
                })
                .collect();
            let n = arguments.len();
            let attacks = attacks
                .into_iter()
                .filter(|&(i, j)| i < n && j < n)
                .filter(|&(i, j)| {
                    !(arguments[i].kind == ArgumentKind::Practical
                        && arguments[j].kind == ArgumentKind::Epistemic)
                })
                .map(|(i, j)| (arguments[i].id.clone(), arguments[j].id.clone()))
                .collect();
            let order = if chain > 1 {
                vec![values[..chain.min(3)].to_vec()]
            } else {
                Vec::new()
            };
            Scenario {
                name: "generated".into(),
                stakeholders: agents,
                values,
                order,
                body: ScenarioBody::Abstract(AbstractBody { arguments, attacks }),
            }
        })
}

fn ants() -> impl Strategy<Value = Vec<Literal>> {
    prop::collection::btree_set((0..5usize, any::<bool>()), 0..3)
        .prop_map(|s| s.into_iter().map(|(i, n)| lit(i, n)).collect())
}

fn structured_scenario() -> impl Strategy<Value = Scenario> {
    (
        prop::collection::btree_map(0..5usize, any::<bool>(), 0..3),
        prop::collection::btree_map(0..5usize, any::<bool>(), 0..3),
        prop::collection::vec((ants(), (0..5usize, any::<bool>())), 0..3),
        prop::collection::vec(
            (ants(), (0..5usize, any::<bool>()), 0..2usize, 0..4u32),
            1..4,
        ),
        prop::collection::vec((ants(), 0..2usize), 0..2),
    )
        .prop_map(|(facts, assumptions, beliefs, norms, standpoints)| {
            let values: Vec<ValueId> = (0..2).map(|i| id("v", i)).collect();
            let agents: Vec<AgentId> = (0..2).map(|i| id("s", i)).collect();
            let strip = |ants: Vec<Literal>, c: &Literal| -> Vec<Literal> {
                ants.into_iter().filter(|a| a != c).collect()
            };
            let norms: Vec<Norm> = norms
                .into_iter()
                .enumerate()
                .map(|(i, (a, (c, neg), s, vmask))| {
                    let consequent = lit(c, neg);
                    Norm {
                        id: id("n", i),
                        stakeholder: agents[s].clone(),
                        values: (0..2)
                            .filter(|b| vmask >> b & 1 == 1)
                            .map(|b| values[b].clone())
                            .collect(),
                        antecedents: strip(a, &consequent),
                        consequent,
                    }
                })
                .collect();
            let mut aliases = Vec::new();
            if let Some(n) = norms.iter().find(|n| n.antecedents.is_empty()) {
                aliases.push(Alias {
                    name: ArgumentId::new("Named").unwrap(),
                    term: DerivationTerm::Apply {
                        rule: n.id.clone(),
                        args: Vec::new(),
                    },
                });
            }
            let fact_atoms: BTreeSet<usize> = facts.keys().copied().collect();
            Scenario {
                name: "generated".into(),
                stakeholders: agents,
                values: values.clone(),
                order: vec![values],
                body: ScenarioBody::Structured(StructuredBody {
                    facts: facts.iter().map(|(&i, &n)| lit(i, n)).collect(),
                    assumptions: assumptions
                        .iter()
                        .filter(|(i, _)| !fact_atoms.contains(i))
                        .map(|(&i, &n)| lit(i, n))
                        .collect(),
                    beliefs: beliefs
                        .into_iter()
                        .enumerate()
                        .map(|(i, (a, (c, neg)))| {
                            let consequent = lit(c, neg);
                            Belief {
                                id: id("b", i),
                                antecedents: strip(a, &consequent),
                                consequent,
                            }
                        })
                        .collect(),
                    standpoints: standpoints
                        .into_iter()
                        .enumerate()
                        .map(|(i, (a, s))| Standpoint {
                            id: id("a", i),
                            stakeholder: id("s", s),
                            antecedents: a,
                            target_norm: norms[i % norms.len()].id.clone(),
                        })
                        .collect(),
                    norms,
                    aliases,
                }),
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn generated_abstract_scenarios_round_trip(s in abstract_scenario()) {
        let text = serialize_scenario(&s);
        let parsed = parse_scenario(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&parsed, &s);
        prop_assert_eq!(serialize_scenario(&parsed), text);
    }

    #[test]
    fn generated_structured_scenarios_round_trip(s in structured_scenario()) {
        let text = serialize_scenario(&s);
        let parsed = parse_scenario(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&parsed, &s);
        prop_assert_eq!(serialize_scenario(&parsed), text);
    }
}

#[test]
fn rule_ids_may_not_repeat_across_kinds() {
    let err = parse_scenario(
        "scenario s\nkind structured\nstakeholders S\nnorm r by S: => p\nbelief r: p => q\n",
    )
    .unwrap_err();
    assert_eq!(err.line, 5);
}
