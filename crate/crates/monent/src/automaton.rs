//! Failure-link automaton for forbidden-factor detection.
//!
//! States are the proper prefixes of the forbidden words (plus the root);
//! the goto table is completed through failure links so every legality
//! check and every counting step is a single table lookup per letter.
//! Composability of arrows is a separate concern handled by callers.

use std::collections::BTreeMap;

use crate::quiver::Word;

/// Precompiled factor-avoidance automaton over arrow indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorAutomaton {
    /// `goto[state][arrow]`: next state in the completed transition table.
    goto: Vec<Vec<usize>>,
    /// States at which some forbidden word has just been completed.
    terminal: Vec<bool>,
}

pub const ROOT: usize = 0;

impl FactorAutomaton {
    pub fn build(forbidden: &[Word], arrow_count: usize) -> Self {
        // Trie construction.
        let mut children: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new()];
        let mut terminal = vec![false];
        for word in forbidden {
            let mut node = ROOT;
            for &a in word.arrows() {
                node = match children[node].get(&a) {
                    Some(&c) => c,
                    None => {
                        children.push(BTreeMap::new());
                        terminal.push(false);
                        let c = children.len() - 1;
                        children[node].insert(a, c);
                        c
                    }
                };
            }
            terminal[node] = true;
        }

        // Failure links and goto completion, breadth-first.
        let n = children.len();
        let mut fail = vec![ROOT; n];
        let mut goto = vec![vec![ROOT; arrow_count]; n];
        let mut queue = std::collections::VecDeque::new();
        for a in 0..arrow_count {
            if let Some(&c) = children[ROOT].get(&a) {
                goto[ROOT][a] = c;
                queue.push_back(c);
            }
        }
        while let Some(node) = queue.pop_front() {
            if terminal[fail[node]] {
                terminal[node] = true;
            }
            for a in 0..arrow_count {
                match children[node].get(&a) {
                    Some(&c) => {
                        fail[c] = goto[fail[node]][a];
                        queue.push_back(c);
                    }
                    None => {
                        goto[node][a] = goto[fail[node]][a];
                    }
                }
            }
            for a in 0..arrow_count {
                if let Some(&c) = children[node].get(&a) {
                    goto[node][a] = c;
                }
            }
        }

        FactorAutomaton { goto, terminal }
    }

    pub fn state_count(&self) -> usize {
        self.goto.len()
    }

    /// Advances by one arrow; `None` means a forbidden factor was completed.
    pub fn step(&self, state: usize, arrow: usize) -> Option<usize> {
        let next = self.goto[state][arrow];
        if self.terminal[next] {
            None
        } else {
            Some(next)
        }
    }

    /// True iff the arrow sequence avoids every forbidden factor.
    pub fn scan(&self, arrows: &[usize]) -> bool {
        let mut state = ROOT;
        for &a in arrows {
            match self.step(state, a) {
                Some(s) => state = s,
                None => return false,
            }
        }
        true
    }

    /// Live (non-terminal) states, usable as counting-DP states.
    pub fn live_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.goto.len()).filter(|&s| !self.terminal[s])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn words(q: &Quiver, specs: &[&[usize]]) -> Vec<Word> {
        specs
            .iter()
            .map(|s| Word::path(s.to_vec(), q).unwrap())
            .collect()
    }

    #[test]
    fn detects_overlapping_occurrences() {
        // forbidden {xyx} over x,y: "xyxy" must die at position 3
        let q = Quiver::loops("*", &["x", "y"]);
        let aut = FactorAutomaton::build(&words(&q, &[&[0, 1, 0]]), 2);
        assert!(aut.scan(&[0, 1])); // xy
        assert!(!aut.scan(&[0, 1, 0])); // xyx
        assert!(!aut.scan(&[1, 0, 1, 0])); // yxyx
        assert!(aut.scan(&[1, 0, 0, 1])); // yxxy
    }

    #[test]
    fn failure_links_carry_suffix_matches() {
        // forbidden {xx, yxy}: after reading yx, an x completes nothing,
        // but xx must still be caught through the fallback chain.
        let q = Quiver::loops("*", &["x", "y"]);
        let aut = FactorAutomaton::build(&words(&q, &[&[0, 0], &[1, 0, 1]]), 2);
        assert!(!aut.scan(&[1, 0, 0])); // yxx contains xx
        assert!(!aut.scan(&[1, 1, 0, 1])); // yyxy contains yxy
        assert!(aut.scan(&[1, 1, 0])); // yyx is clean
        assert!(aut.scan(&[0, 1, 1, 0])); // xyyx is clean
    }

    #[test]
    fn empty_forbidden_set_accepts_everything() {
        let aut = FactorAutomaton::build(&[], 3);
        assert!(aut.scan(&[0, 1, 2, 2, 1, 0]));
        assert_eq!(aut.state_count(), 1);
    }
}
