//! Finitely presented monomial quotients of path algebras.
//!
//! A presentation is a quiver together with a finite set of forbidden
//! words. Normalization makes the forbidden set an antichain under the
//! factor order, deletes arrows named by length-1 forbidden words, and
//! derives the junction bound `l` (max forbidden length minus one). A
//! presentation with empty normalized forbidden set is *free* and takes
//! `l = 0`, under which the generic Ufnarovski construction returns the
//! quiver itself.

use crate::automaton::FactorAutomaton;
use crate::quiver::{Arrow, Quiver, Word};

/// A normalized monomial presentation. Immutable after construction; all
/// operations on it are pure functions.
#[derive(Debug, Clone)]
pub struct Presentation {
    quiver: Quiver,
    forbidden: Vec<Word>,
    l: usize,
    automaton: FactorAutomaton,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.forbidden == other.forbidden
    }
}
impl Eq for Presentation {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("forbidden word is not a path in the quiver")]
    ForbiddenNotAPath,
}

impl Presentation {
    /// Builds and normalizes a presentation. The forbidden words must be
    /// paths of `quiver` (the parser guarantees this; direct callers get
    /// an error otherwise).
    pub fn new(quiver: Quiver, forbidden: Vec<Word>) -> Result<Self, PresentationError> {
        for w in &forbidden {
            if w.is_empty() || !quiver.is_path(w.arrows()) {
                return Err(PresentationError::ForbiddenNotAPath);
            }
        }

        // Antichain normalization: keep only words containing no other
        // forbidden word as a contiguous factor (also removes duplicates).
        let mut sorted = forbidden;
        sorted.sort_by(|a, b| (a.len(), a.arrows()).cmp(&(b.len(), b.arrows())));
        let mut kept: Vec<Word> = Vec::new();
        for w in sorted {
            if !kept.iter().any(|k| w.contains_factor(k)) {
                kept.push(w);
            }
        }

        // Length-1 forbidden words delete their arrows: a forbidden arrow
        // is simply absent from the algebra.
        let pruned: Vec<usize> = kept
            .iter()
            .filter(|w| w.len() == 1)
            .map(|w| w.arrows()[0])
            .collect();
        let (quiver, kept) = if pruned.is_empty() {
            (quiver, kept)
        } else {
            let mut remap = vec![usize::MAX; quiver.arrow_count()];
            let mut arrows: Vec<Arrow> = Vec::new();
            for (i, a) in quiver.arrows().iter().enumerate() {
                if !pruned.contains(&i) {
                    remap[i] = arrows.len();
                    arrows.push(a.clone());
                }
            }
            let quiver = Quiver::new(quiver.vertices().to_vec(), arrows)
                .expect("pruning preserves quiver validity");
            let kept = kept
                .into_iter()
                .filter(|w| w.len() >= 2)
                .map(|w| {
                    // The antichain step already removed any word containing
                    // a pruned arrow (it would contain that length-1 word).
                    let arrows: Vec<usize> =
                        w.arrows().iter().map(|&a| remap[a]).collect();
                    debug_assert!(arrows.iter().all(|&a| a != usize::MAX));
                    Word::path(arrows, &quiver).expect("remapped word stays a path")
                })
                .collect();
            (quiver, kept)
        };

        let l = kept.iter().map(|w| w.len()).max().map_or(0, |m| m - 1);
        let automaton = FactorAutomaton::build(&kept, quiver.arrow_count());
        Ok(Presentation {
            quiver,
            forbidden: kept,
            l,
            automaton,
        })
    }

    /// The free path algebra of a quiver (no relations).
    pub fn free(quiver: Quiver) -> Self {
        Presentation::new(quiver, Vec::new()).expect("empty forbidden set is valid")
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// The normalized forbidden set, in canonical (length, arrows) order.
    pub fn forbidden(&self) -> &[Word] {
        &self.forbidden
    }

    /// The junction bound: `l + 1` is the maximum forbidden word length;
    /// `0` for free presentations.
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn is_free(&self) -> bool {
        self.forbidden.is_empty()
    }

    pub(crate) fn automaton(&self) -> &FactorAutomaton {
        &self.automaton
    }

    /// True iff no forbidden word occurs as a contiguous factor. The word
    /// is assumed to be a path (which the [`Word`] type guarantees).
    pub fn is_legal(&self, word: &Word) -> bool {
        self.automaton.scan(word.arrows())
    }

    /// True iff the arrow sequence composes in this presentation's quiver.
    pub fn is_path(&self, arrows: &[usize]) -> bool {
        self.quiver.is_path(arrows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(q: &Quiver, arrows: &[usize]) -> Word {
        Word::path(arrows.to_vec(), q).unwrap()
    }

    /// x, y, z loops with forbidden {xz, yz}.
    pub(crate) fn three_loops() -> Presentation {
        let q = Quiver::loops("*", &["x", "y", "z"]);
        let f = vec![word(&q, &[0, 2]), word(&q, &[1, 2])];
        Presentation::new(q, f).unwrap()
    }

    #[test]
    fn junction_bound_from_max_length() {
        let p = three_loops();
        assert_eq!(p.l(), 1);
        assert_eq!(p.forbidden().len(), 2);
        assert!(!p.is_free());
    }

    #[test]
    fn antichain_drops_words_containing_others() {
        let q = Quiver::loops("*", &["x", "z"]);
        let f = vec![word(&q, &[0, 1]), word(&q, &[0, 1, 0])]; // {xz, xzx}
        let p = Presentation::new(q, f).unwrap();
        assert_eq!(p.forbidden().len(), 1);
        assert_eq!(p.forbidden()[0].arrows(), &[0, 1]);
        assert_eq!(p.l(), 1);
    }

    #[test]
    fn empty_forbidden_is_free_with_l_zero() {
        let p = Presentation::free(Quiver::loops("*", &["x", "y", "z"]));
        assert!(p.is_free());
        assert_eq!(p.l(), 0);
    }

    #[test]
    fn length_one_words_prune_arrows() {
        let q = Quiver::loops("*", &["x", "y"]);
        let f = vec![word(&q, &[0])]; // forbid the arrow x itself
        let p = Presentation::new(q, f).unwrap();
        assert!(p.is_free());
        assert_eq!(p.quiver().arrow_count(), 1);
        assert_eq!(p.quiver().arrows()[0].label, "y");
        assert_eq!(p.l(), 0);
    }

    #[test]
    fn pruning_remaps_surviving_words() {
        let q = Quiver::loops("*", &["x", "y", "z"]);
        // forbid the arrow x and the word zy; zy survives with remapped indices
        let f = vec![word(&q, &[0]), word(&q, &[2, 1])];
        let p = Presentation::new(q, f).unwrap();
        assert_eq!(p.quiver().arrow_count(), 2); // y, z
        assert_eq!(p.forbidden().len(), 1);
        let zy = p.forbidden()[0].clone();
        assert_eq!(
            zy.display(p.quiver()).to_string(),
            "zy",
        );
        assert_eq!(p.l(), 1);
    }

    #[test]
    fn legality_checks() {
        let p = three_loops();
        let q = p.quiver();
        assert!(!p.is_legal(&word(q, &[0, 2]))); // xz forbidden
        assert!(p.is_legal(&word(q, &[2, 0]))); // zx legal
        assert!(p.is_legal(&Word::trivial(0))); // empty word
    }

    #[test]
    fn legality_is_factor_monotone() {
        let p = three_loops();
        let q = p.quiver();
        // every extension of the illegal xz stays illegal
        for &a in &[0usize, 1, 2] {
            for &b in &[0usize, 1, 2] {
                let w = word(q, &[a, 0, 2, b]);
                assert!(!p.is_legal(&w));
            }
        }
    }
}
