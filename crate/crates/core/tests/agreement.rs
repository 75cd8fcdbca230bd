mod common;

use std::collections::{BTreeMap, BTreeSet};

use accord_core::values::value_set;
use accord_core::{
    lift, maximal_agreement, rank_extensions, strictly_preferred, AgentId, ArgumentId, Extension,
    Framework, LiftingPrinciple, Semantics, ValueFramework, ValueId, ValueOrder, ValueSet,
};
use common::{arg_name, attack_graph, order, preorder, subset, value_name};
use proptest::prelude::*;

const PRINCIPLES: [LiftingPrinciple; 2] = [LiftingPrinciple::Elitist, LiftingPrinciple::Democratic];

/// Lifting straight from the definitions, with the empty-set convention.
fn lift_direct(order: &ValueOrder, p: LiftingPrinciple, v1: &ValueSet, v2: &ValueSet) -> bool {
    if v2.is_empty() {
        return true;
    }
    if v1.is_empty() {
        return false;
    }
    let geq = |a: &ValueId, b: &ValueId| order.geq(a.as_str(), b.as_str()).unwrap();
    match p {
        LiftingPrinciple::Elitist => v2.iter().any(|v| v1.iter().all(|w| geq(w, v))),
        LiftingPrinciple::Democratic => v2.iter().all(|v| v1.iter().any(|w| geq(w, v))),
    }
}

fn has_internal_minimum(order: &ValueOrder, v: &ValueSet) -> bool {
    v.iter()
        .any(|m| v.iter().all(|w| order.geq(w.as_str(), m.as_str()).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn lifting_matches_definitions((n, pairs) in preorder(8), a in any::<u32>(), b in any::<u32>()) {
        let o = order(n, &pairs);
        let (v1, v2) = (subset(n, a), subset(n, b));
        for p in PRINCIPLES {
            prop_assert_eq!(lift(&o, p, &v1, &v2).unwrap(), lift_direct(&o, p, &v1, &v2));
        }
    }

    #[test]
    fn lifting_laws((n, pairs) in preorder(8), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let o = order(n, &pairs);
        let (x, y, z) = (subset(n, a), subset(n, b), subset(n, c));
        let dem = LiftingPrinciple::Democratic;
        let eli = LiftingPrinciple::Elitist;
        prop_assert!(lift(&o, dem, &x, &x).unwrap());
        if has_internal_minimum(&o, &x) || x.is_empty() {
            prop_assert!(lift(&o, eli, &x, &x).unwrap());
        }
        for p in PRINCIPLES {
            if lift(&o, p, &x, &y).unwrap() && lift(&o, p, &y, &z).unwrap() {
                prop_assert!(lift(&o, p, &x, &z).unwrap(), "{} not transitive", p);
            }
            prop_assert!(!strictly_preferred(&o, p, &x, &x).unwrap());
            if strictly_preferred(&o, p, &x, &y).unwrap() {
                prop_assert!(!strictly_preferred(&o, p, &y, &x).unwrap());
            }
        }
    }

    #[test]
    fn value_order_is_reflexive_and_transitive((n, pairs) in preorder(8)) {
        let o = order(n, &pairs);
        let vs: Vec<ValueId> = (0..n).map(value_name).collect();
        for a in &vs {
            prop_assert!(o.geq(a.as_str(), a.as_str()).unwrap());
            for b in &vs {
                for c in &vs {
                    if o.geq(a.as_str(), b.as_str()).unwrap() && o.geq(b.as_str(), c.as_str()).unwrap() {
                        prop_assert!(o.geq(a.as_str(), c.as_str()).unwrap());
                    }
                }
            }
        }
        for &(i, j) in &pairs {
            prop_assert!(o.geq(value_name(i).as_str(), value_name(j).as_str()).unwrap());
        }
    }

    #[test]
    fn maximal_agreement_matches_pairwise_filter(
        (n, attacks) in attack_graph(8),
        (nv, pairs) in preorder(6),
        masks in prop::collection::vec((any::<bool>(), any::<u32>()), 8),
    ) {
        let vf = value_framework(n, &attacks, nv, &pairs, &masks);
        for sem in Semantics::ALL {
            for p in PRINCIPLES {
                let got = maximal_agreement(&vf, sem, p);
                let exts = vf.reduce().extensions(sem);
                let values: Vec<ValueSet> = exts.iter().map(|e| union_of_values(&vf, e)).collect();
                let expected: Vec<Extension> = exts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| {
                        !(0..exts.len()).any(|j| {
                            lift_direct(vf.order(), p, &values[j], &values[i])
                                && !lift_direct(vf.order(), p, &values[i], &values[j])
                        })
                    })
                    .map(|(_, e)| e.clone())
                    .collect();
                prop_assert!(!got.is_empty());
                prop_assert_eq!(&got, &expected);
                let ranked = rank_extensions(&vf, sem, p);
                prop_assert_eq!(ranked.is_tie(), got.len() > 1);
                prop_assert_eq!(&ranked.selected().extension, &got[0]);
            }
        }
    }

    #[test]
    fn renaming_arguments_preserves_agreement(
        (n, attacks) in attack_graph(7),
        (nv, pairs) in preorder(5),
        masks in prop::collection::vec((any::<bool>(), any::<u32>()), 7),
    ) {
        let vf = value_framework(n, &attacks, nv, &pairs, &masks);
        let renamed = rename(&vf, |a| format!("z_{a}"));
        for p in PRINCIPLES {
            let original: BTreeSet<Vec<String>> = maximal_agreement(&vf, Semantics::Preferred, p)
                .iter()
                .map(|e| e.iter().map(|a| format!("z_{a}")).collect())
                .collect();
            let after: BTreeSet<Vec<String>> = maximal_agreement(&renamed, Semantics::Preferred, p)
                .iter()
                .map(|e| e.iter().map(|a| a.to_string()).collect())
                .collect();
            prop_assert_eq!(original, after);
        }
    }
}

fn union_of_values(vf: &ValueFramework, e: &Extension) -> ValueSet {
    e.iter()
        .filter_map(|a| vf.val(a.as_str()))
        .flatten()
        .cloned()
        .collect()
}

fn value_framework(
    n: usize,
    attacks: &[(usize, usize)],
    nv: usize,
    pairs: &[(usize, usize)],
    masks: &[(bool, u32)],
) -> ValueFramework {
    let framework = common::framework(n, attacks);
    let practical: BTreeSet<usize> = (0..n).filter(|&i| masks[i].0).collect();
    // Drop practical-to-epistemic attacks so the framework is well formed.
    let attacks: Vec<(usize, usize)> = attacks
        .iter()
        .copied()
        .filter(|(i, j)| !(practical.contains(i) && !practical.contains(j)))
        .collect();
    let framework = if attacks.len() == framework.attack_count() {
        framework
    } else {
        common::framework(n, &attacks)
    };
    let val = practical
        .iter()
        .map(|&i| {
            (
                ArgumentId::new(arg_name(i)).unwrap(),
                subset(nv, masks[i].1),
            )
        })
        .collect();
    ValueFramework::new(
        framework,
        practical
            .iter()
            .map(|&i| ArgumentId::new(arg_name(i)).unwrap())
            .collect(),
        BTreeSet::new(),
        order(nv, pairs),
        val,
        BTreeMap::new(),
    )
    .unwrap()
}

fn rename(vf: &ValueFramework, f: impl Fn(&str) -> String) -> ValueFramework {
    let id = |a: &ArgumentId| ArgumentId::new(f(a.as_str())).unwrap();
    let fw = vf.reduce();
    let framework = Framework::new(
        fw.arguments().iter().map(id),
        fw.attacks()
            .map(|(a, b)| (id(a), id(b)))
            .collect::<Vec<_>>(),
    )
    .unwrap();
    ValueFramework::new(
        framework,
        vf.practical().iter().map(id).collect(),
        vf.agents().clone(),
        vf.order().clone(),
        vf.practical()
            .iter()
            .map(|a| (id(a), vf.val(a.as_str()).cloned().unwrap_or_default()))
            .collect(),
        BTreeMap::<ArgumentId, BTreeSet<AgentId>>::new(),
    )
    .unwrap()
}

#[test]
fn smart_home_democratic_and_elitist() {
    let vf = smart_home();
    let show = |p| -> Vec<String> {
        maximal_agreement(&vf, Semantics::Preferred, p)
            .iter()
            .map(|e| e.to_string())
            .collect()
    };
    assert_eq!(show(LiftingPrinciple::Democratic), ["{B, E}"]);
    assert_eq!(show(LiftingPrinciple::Elitist), ["{B, E}", "{A, C, E}"]);
    assert_eq!(
        maximal_agreement(&vf, Semantics::Grounded, LiftingPrinciple::Democratic),
        vec![Extension::from_names(["E"]).unwrap()]
    );
}

#[test]
fn chain_lifting_examples() {
    let chain: Vec<ValueId> = ["v_l", "v_r", "v_p", "v_a", "v_g", "v_h"]
        .iter()
        .map(|v| ValueId::new(*v).unwrap())
        .collect();
    let o = ValueOrder::from_chains(chain.clone(), &[chain]).unwrap();
    let e1 = value_set(["v_h", "v_l"]).unwrap();
    let e2 = value_set(["v_h", "v_r", "v_a", "v_g", "v_p"]).unwrap();
    let dem = LiftingPrinciple::Democratic;
    let eli = LiftingPrinciple::Elitist;
    assert!(strictly_preferred(&o, dem, &e1, &e2).unwrap());
    assert!(lift(&o, eli, &e1, &e2).unwrap() && lift(&o, eli, &e2, &e1).unwrap());
    assert!(!strictly_preferred(&o, eli, &e1, &e2).unwrap());
}

fn smart_home() -> ValueFramework {
    let scenario = accord_core::parse_scenario(accord_core::bundled::SMART_HOME_ABSTRACT).unwrap();
    accord_core::compile_scenario(&scenario, Default::default())
        .unwrap()
        .vf
}
