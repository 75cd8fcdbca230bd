//! Brute-force reference semantics.
//!
//! Enumerates every subset of the arguments and tests the textbook
//! definitions literally against the raw attack list. Nothing here is shared
//! with the labelling search in [`crate::framework`], so the two can be
//! checked against each other.

use crate::framework::{Extension, Framework, FrameworkError, Semantics};

pub const DEFAULT_ORACLE_CAP: usize = 16;
/// Subsets are bitmasks in a `u64`; beyond this the enumeration is hopeless anyway.
pub const MAX_ORACLE_CAP: usize = 30;

pub fn oracle_extensions(
    framework: &Framework,
    semantics: Semantics,
    cap: usize,
) -> Result<Vec<Extension>, FrameworkError> {
    let n = framework.len();
    if n > cap.min(MAX_ORACLE_CAP) {
        return Err(FrameworkError::OracleCapExceeded {
            size: n,
            cap: cap.min(MAX_ORACLE_CAP),
        });
    }
    let names = framework.arguments();
    let position = |name: &str| names.iter().position(|a| a.as_str() == name).unwrap();
    let attacks: Vec<(usize, usize)> = framework
        .attacks()
        .map(|(a, b)| (position(a.as_str()), position(b.as_str())))
        .collect();

    let in_set = |set: u64, a: usize| set & (1 << a) != 0;
    let conflict_free = |set: u64| {
        !attacks
            .iter()
            .any(|&(a, b)| in_set(set, a) && in_set(set, b))
    };
    // E defends a iff every attacker of a is attacked by some member of E.
    let defends = |set: u64, a: usize| {
        attacks
            .iter()
            .filter(|&&(_, t)| t == a)
            .all(|&(b, _)| attacks.iter().any(|&(c, t)| t == b && in_set(set, c)))
    };
    let admissible = |set: u64| {
        conflict_free(set) && (0..n).filter(|&a| in_set(set, a)).all(|a| defends(set, a))
    };
    let complete = |set: u64| admissible(set) && (0..n).all(|a| !defends(set, a) || in_set(set, a));

    let complete_sets: Vec<u64> = (0..1u64 << n).filter(|&s| complete(s)).collect();
    let subset = |a: u64, b: u64| a & !b == 0;
    let chosen: Vec<u64> = match semantics {
        Semantics::Complete => complete_sets,
        Semantics::Preferred => complete_sets
            .iter()
            .copied()
            .filter(|&s| !complete_sets.iter().any(|&t| t != s && subset(s, t)))
            .collect(),
        Semantics::Grounded => complete_sets
            .iter()
            .copied()
            .filter(|&s| !complete_sets.iter().any(|&t| t != s && subset(t, s)))
            .collect(),
    };

    let mut out: Vec<Extension> = chosen
        .into_iter()
        .map(|s| Extension::new((0..n).filter(|&a| in_set(s, a)).map(|a| names[a].clone())))
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(names: &[&str]) -> Extension {
        Extension::from_names(names).unwrap()
    }

    #[test]
    fn smart_home_grounded() {
        let f = Framework::new(
            ["A", "B", "C", "D", "E"],
            [
                ("A", "B"),
                ("B", "A"),
                ("B", "C"),
                ("C", "B"),
                ("D", "B"),
                ("E", "D"),
            ],
        )
        .unwrap();
        assert_eq!(
            oracle_extensions(&f, Semantics::Grounded, DEFAULT_ORACLE_CAP).unwrap(),
            vec![ext(&["E"])]
        );
    }

    #[test]
    fn empty_framework_has_the_empty_preferred_extension() {
        assert_eq!(
            oracle_extensions(
                &Framework::empty(),
                Semantics::Preferred,
                DEFAULT_ORACLE_CAP
            )
            .unwrap(),
            vec![ext(&[])]
        );
    }

    #[test]
    fn two_cycle_complete() {
        let f = Framework::new(["X", "Y"], [("X", "Y"), ("Y", "X")]).unwrap();
        assert_eq!(
            oracle_extensions(&f, Semantics::Complete, DEFAULT_ORACLE_CAP).unwrap(),
            vec![ext(&[]), ext(&["X"]), ext(&["Y"])]
        );
    }

    #[test]
    fn cap_is_enforced() {
        let names: Vec<String> = (0..20).map(|i| format!("a{i}")).collect();
        let f = Framework::new(&names, Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(
            oracle_extensions(&f, Semantics::Grounded, DEFAULT_ORACLE_CAP),
            Err(FrameworkError::OracleCapExceeded { size: 20, cap: 16 })
        );
    }
}
