//! Complete-labelling enumeration by propagation and backtracking.
//!
//! A complete labelling maps each argument to `In`, `Out` or `Undec` such that
//! an argument is `In` iff all its attackers are `Out`, and `Out` iff some
//! attacker is `In`. Its `In` arguments form a complete extension, and the
//! correspondence is one-to-one, so the search never yields duplicates.

use crate::framework::Framework;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    Unset,
    In,
    Out,
    Undec,
}

struct Conflict;

struct Search<'f> {
    framework: &'f Framework,
    found: Vec<Vec<bool>>,
}

/// Returns the `In` masks of all complete labellings, in discovery order.
pub(crate) fn complete_labellings(framework: &Framework) -> Vec<Vec<bool>> {
    let mut search = Search {
        framework,
        found: Vec::new(),
    };
    let mut labels = vec![Label::Unset; framework.len()];
    let queue: Vec<usize> = (0..framework.len()).collect();
    if search.propagate(&mut labels, queue).is_ok() {
        search.branch(labels);
    }
    search.found
}

impl Search<'_> {
    fn branch(&mut self, labels: Vec<Label>) {
        let Some(pick) = labels.iter().position(|&l| l == Label::Unset) else {
            debug_assert!(self.is_complete_labelling(&labels));
            self.found
                .push(labels.iter().map(|&l| l == Label::In).collect());
            return;
        };
        for choice in [Label::In, Label::Out, Label::Undec] {
            let mut next = labels.clone();
            next[pick] = choice;
            let mut queue = vec![pick];
            queue.extend_from_slice(self.framework.targets_of(pick));
            if self.propagate(&mut next, queue).is_ok() {
                self.branch(next);
            }
        }
    }

    /// Applies forced labels until nothing changes.
    fn propagate(&self, labels: &mut [Label], mut queue: Vec<usize>) -> Result<(), Conflict> {
        while let Some(arg) = queue.pop() {
            for (target, label) in self.forced(labels, arg)? {
                match labels[target] {
                    Label::Unset => {
                        labels[target] = label;
                        queue.push(target);
                        queue.extend_from_slice(self.framework.targets_of(target));
                    }
                    current if current == label => {}
                    _ => return Err(Conflict),
                }
            }
        }
        Ok(())
    }

    /// Labels implied by the local condition of `arg`: either for `arg`
    /// itself or for one of its attackers.
    fn forced(&self, labels: &[Label], arg: usize) -> Result<Vec<(usize, Label)>, Conflict> {
        let attackers = self.framework.attackers_of(arg);
        let mut ins = 0;
        let mut outs = 0;
        let mut undecs = 0;
        let mut unset = Vec::new();
        for &b in attackers {
            match labels[b] {
                Label::In => ins += 1,
                Label::Out => outs += 1,
                Label::Undec => undecs += 1,
                Label::Unset => unset.push(b),
            }
        }
        let own = labels[arg];
        if ins > 0 {
            return Ok(vec![(arg, Label::Out)]);
        }
        if outs == attackers.len() {
            return Ok(vec![(arg, Label::In)]);
        }
        if unset.is_empty() {
            // No attacker is in, at least one is undecided.
            debug_assert!(undecs > 0);
            return Ok(vec![(arg, Label::Undec)]);
        }
        Ok(match own {
            Label::In => unset.into_iter().map(|b| (b, Label::Out)).collect(),
            Label::Out if unset.len() == 1 => vec![(unset[0], Label::In)],
            Label::Undec if unset.len() == 1 && undecs == 0 => vec![(unset[0], Label::Undec)],
            _ => Vec::new(),
        })
    }

    fn is_complete_labelling(&self, labels: &[Label]) -> bool {
        (0..labels.len()).all(|a| {
            let attackers = self.framework.attackers_of(a);
            let any_in = attackers.iter().any(|&b| labels[b] == Label::In);
            let all_out = attackers.iter().all(|&b| labels[b] == Label::Out);
            match labels[a] {
                Label::In => all_out,
                Label::Out => any_in,
                Label::Undec => !any_in && !all_out,
                Label::Unset => false,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_cycle_has_only_the_empty_labelling() {
        let f = Framework::new(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        assert_eq!(complete_labellings(&f), vec![vec![false, false, false]]);
    }

    #[test]
    fn even_cycle_has_three_labellings() {
        let f = Framework::new(
            ["a", "b", "c", "d"],
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
        .unwrap();
        let mut found = complete_labellings(&f);
        found.sort();
        assert_eq!(
            found,
            vec![
                vec![false, false, false, false],
                vec![false, true, false, true],
                vec![true, false, true, false],
            ]
        );
    }
}
