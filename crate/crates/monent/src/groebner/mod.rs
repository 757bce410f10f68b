//! Right-ideal Groebner bases in monomial quotients of path algebras.
//!
//! Elements of the quotient algebra are kept as normal forms: linear
//! combinations of normal words (words with no forbidden factor) over
//! exact rationals. Multiplication is the star product a*b = N(ab):
//! concatenate vertex-compatibly and delete the products that hit a
//! forbidden factor.
//!
//! The monomial order is degree-lexicographic with configurable arrow
//! precedence (declaration order by default). It is a multiplicative
//! well-order with the trivial paths minimal, which is what the degree
//! certificate and every descent argument below rely on.

mod basis;
mod oracle;
mod syzygy;

pub use basis::{ideal_member, reduce, right_gb, DegreeCertificate, GroebnerBasis, GroebnerError};
pub use oracle::{
    graded_oracle, kernel_nullity_at_degree, predicted_lm_set, syzygy_span_rank_at_degree,
    OracleError, DEFAULT_ORACLE_SLACK,
};
pub use syzygy::{syzygy_generators, ModuleElement, Syzygy, SyzygySet};

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::automaton::ROOT;
use crate::presentation::Presentation;
use crate::quiver::{Quiver, Word};

// ---------------------------------------------------------------------------
// Monomial order
// ---------------------------------------------------------------------------

/// Degree-lexicographic order on words, parameterized by a precedence
/// (total order) on arrow labels. Trivial paths are minimal and ordered
/// among themselves by base vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    /// rank\[arrow index\] = position in the precedence; smaller = lesser.
    rank: Vec<usize>,
}

impl MonomialOrder {
    /// Precedence = arrow declaration order (the default).
    pub fn declaration(quiver: &Quiver) -> Self {
        MonomialOrder {
            rank: (0..quiver.arrow_count()).collect(),
        }
    }

    /// Precedence given as a permutation of the labels, smallest first.
    pub fn from_labels(labels: &[String], quiver: &Quiver) -> Result<Self, String> {
        if labels.len() != quiver.arrow_count() {
            return Err(format!(
                "precedence must list all {} labels",
                quiver.arrow_count()
            ));
        }
        let mut rank = vec![usize::MAX; quiver.arrow_count()];
        for (pos, label) in labels.iter().enumerate() {
            let idx = quiver
                .arrow_index(label)
                .ok_or_else(|| format!("unknown label `{label}` in precedence"))?;
            if rank[idx] != usize::MAX {
                return Err(format!("label `{label}` repeated in precedence"));
            }
            rank[idx] = pos;
        }
        Ok(MonomialOrder { rank })
    }

    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (&x, &y) in a.arrows().iter().zip(b.arrows()) {
                match self.rank[x].cmp(&self.rank[y]) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            // equal length, equal ranks: identical unless both trivial
            if a.is_empty() {
                // compare base vertices through a cheap total order
                return a.cmp(b);
            }
            Ordering::Equal
        })
    }

    /// An order-compatible key: keys compare exactly as the words do
    /// and identify the word uniquely.
    pub fn key(&self, w: &Word) -> OrderKey {
        OrderKey {
            len: w.len(),
            ranks: w.arrows().iter().map(|&a| self.rank[a]).collect(),
            base: w.base(),
        }
    }
}

/// Comparison key for deglex-with-precedence; derives Ord.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrderKey {
    len: usize,
    ranks: Vec<usize>,
    /// Base vertex for trivial paths; `None` for nonempty words.
    base: Option<usize>,
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// One term: a normal word with a nonzero exact rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub word: Word,
    pub coeff: BigRational,
}

/// A linear combination of normal words, held in strictly descending
/// monomial order. Leading data is positional, never stored separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    terms: Vec<Term>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The normal form of a raw linear combination of paths: monomials
    /// containing a forbidden factor are deleted, duplicates collected.
    pub fn normal_form(
        raw: impl IntoIterator<Item = (BigRational, Word)>,
        p: &Presentation,
        order: &MonomialOrder,
    ) -> Poly {
        let mut terms: Vec<Term> = raw
            .into_iter()
            .filter(|(c, w)| !c.is_zero() && p.is_legal(w))
            .map(|(coeff, word)| Term { word, coeff })
            .collect();
        terms.sort_by(|a, b| order.cmp_words(&b.word, &a.word));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.word == t.word => last.coeff += t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Poly { terms: out }
    }

    pub fn monomial(word: Word) -> Poly {
        Poly {
            terms: vec![Term { word, coeff: BigRational::one() }],
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Word> {
        self.terms.first().map(|t| &t.word)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Degree = length of the leading monomial (deglex puts the longest
    /// word in front). `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.first().map(|t| t.word.len())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(first) => self.terms.iter().all(|t| t.word.len() == first.word.len()),
        }
    }

    pub fn make_monic(mut self) -> Poly {
        if let Some(lc) = self.leading_coefficient().cloned() {
            if !lc.is_one() {
                for t in &mut self.terms {
                    t.coeff /= &lc;
                }
            }
        }
        self
    }

    /// self + c * other, merged under the order.
    pub fn add_scaled(&self, other: &Poly, c: &BigRational, order: &MonomialOrder) -> Poly {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < other.terms.len() {
            match order.cmp_words(&self.terms[i].word, &other.terms[j].word) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        word: other.terms[j].word.clone(),
                        coeff: c * &other.terms[j].coeff,
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = &self.terms[i].coeff + c * &other.terms[j].coeff;
                    if !coeff.is_zero() {
                        out.push(Term {
                            word: self.terms[i].word.clone(),
                            coeff,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for t in &other.terms[j..] {
            out.push(Term {
                word: t.word.clone(),
                coeff: c * &t.coeff,
            });
        }
        Poly { terms: out }
    }

    /// self * w in the quotient algebra: vertex-incompatible and
    /// forbidden products are deleted. The order of surviving terms is
    /// preserved (right multiplication by a fixed word is monotone).
    pub fn right_mul_word(&self, w: &Word, p: &Presentation) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let word = t.word.concat(w, p.quiver())?;
                if p.is_legal(&word) {
                    Some(Term { word, coeff: t.coeff.clone() })
                } else {
                    None
                }
            })
            .collect();
        Poly { terms }
    }

    /// Renders against a quiver, for diagnostics and JSON.
    pub fn display_string(&self, q: &Quiver) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let c = &t.coeff;
            if i == 0 {
                if c.is_negative() {
                    out.push_str("- ");
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let abs = c.abs();
            if !abs.is_one() || t.word.is_empty() {
                out.push_str(&abs.to_string());
                out.push(' ');
            }
            if !t.word.is_empty() {
                out.push_str(&t.word.display(q).to_string());
            } else {
                out.push_str(&format!("e({})", q.vertices()[t.word.source(q)]));
            }
        }
        out
    }
}

/// The normal form N(f) of a raw linear combination of paths: deletes
/// every monomial containing a forbidden factor, keeps the rest.
pub fn normal_form_free(
    raw: impl IntoIterator<Item = (BigRational, Word)>,
    p: &Presentation,
    order: &MonomialOrder,
) -> Poly {
    Poly::normal_form(raw, p, order)
}

/// The star product a*b = N(ab): monomial pairs concatenate when
/// vertex-compatible and survive when the product is normal.
pub fn star_multiply(a: &Poly, b: &Poly, p: &Presentation, order: &MonomialOrder) -> Poly {
    let mut raw = Vec::new();
    for ta in a.terms() {
        for tb in b.terms() {
            if let Some(word) = ta.word.concat(&tb.word, p.quiver()) {
                raw.push((&ta.coeff * &tb.coeff, word));
            }
        }
    }
    Poly::normal_form(raw, p, order)
}

// ---------------------------------------------------------------------------
// Annihilator tails
// ---------------------------------------------------------------------------

/// The minimal normal monomials m (of length 1..=l) such that w·m gains a
/// forbidden factor spanning the junction and ending at the last letter
/// of m. Together with the trivial paths at vertices other than the
/// target of w, these generate the right annihilator of w in the
/// monomial algebra.
pub fn annihilator_tails(w: &Word, p: &Presentation) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    for f in p.forbidden() {
        let fa = f.arrows();
        for k in 1..fa.len() {
            let (left, tail) = fa.split_at(k);
            if w.len() < k || &w.arrows()[w.len() - k..] != left {
                continue;
            }
            // Minimality: w·tail must stay legal until the very last
            // letter; an earlier kill means a shorter tail (generated
            // from its own forbidden word) subsumes this one.
            let mut state = ROOT;
            for &a in w.arrows() {
                state = p
                    .automaton()
                    .step(state, a)
                    .expect("annihilator tails need a normal word");
            }
            let mut minimal = true;
            for (j, &a) in tail.iter().enumerate() {
                match p.automaton().step(state, a) {
                    Some(s) => {
                        debug_assert!(j + 1 < tail.len(), "the split factor must kill w·tail");
                        state = s;
                    }
                    None => {
                        minimal = j + 1 == tail.len();
                        break;
                    }
                }
            }
            if minimal {
                let word = Word::path(tail.to_vec(), p.quiver())
                    .expect("a factor of a forbidden word is a path");
                if !out.contains(&word) {
                    out.push(word);
                }
            }
        }
    }
    out.sort_by(|a, b| (a.len(), a.arrows()).cmp(&(b.len(), b.arrows())));
    out
}

/// Trivial paths at vertices other than the target of w. These are the
/// vertex-incompatibility generators of the right annihilator; the set
/// is empty on single-vertex quivers.
pub(crate) fn trivial_tails(w: &Word, p: &Presentation) -> Vec<Word> {
    let q = p.quiver();
    if q.vertex_count() <= 1 {
        return Vec::new();
    }
    let t = w.target(q);
    (0..q.vertex_count())
        .filter(|&u| u != t)
        .map(Word::trivial)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_presentation};

    fn poly(text: &str, p: &Presentation, order: &MonomialOrder) -> Poly {
        Poly::normal_form(
            parse_poly(text, p.quiver()).unwrap().into_iter().map(|(c, w)| (c, w)),
            p,
            order,
        )
    }

    fn three_loops() -> Presentation {
        parse_presentation("arrows: x, y, z\nforbidden: xz, yz\n").unwrap()
    }

    #[test]
    fn deglex_orders_by_degree_then_precedence() {
        let p = parse_presentation("arrows: x, y\n").unwrap();
        let order = MonomialOrder::declaration(p.quiver());
        let q = p.quiver();
        let x = Word::path(vec![0], q).unwrap();
        let y = Word::path(vec![1], q).unwrap();
        let yx = Word::path(vec![1, 0], q).unwrap();
        assert_eq!(order.cmp_words(&x, &y), Ordering::Less);
        assert_eq!(order.cmp_words(&yx, &y), Ordering::Greater);
        assert_eq!(order.cmp_words(&Word::trivial(0), &x), Ordering::Less);
    }

    #[test]
    fn precedence_flag_changes_the_order() {
        let p = parse_presentation("arrows: x, y\n").unwrap();
        let order = MonomialOrder::from_labels(&["y".into(), "x".into()], p.quiver()).unwrap();
        let q = p.quiver();
        let x = Word::path(vec![0], q).unwrap();
        let y = Word::path(vec![1], q).unwrap();
        assert_eq!(order.cmp_words(&x, &y), Ordering::Greater);
        assert!(MonomialOrder::from_labels(&["x".into()], p.quiver()).is_err());
        assert!(
            MonomialOrder::from_labels(&["x".into(), "x".into()], p.quiver()).is_err()
        );
    }

    #[test]
    fn normal_form_deletes_forbidden_monomials() {
        let p = three_loops();
        let order = MonomialOrder::declaration(p.quiver());
        let f = poly("x z + z x", &p, &order);
        assert_eq!(f.terms().len(), 1);
        assert_eq!(f.display_string(p.quiver()), "zx");

        let zero = poly("x z", &p, &order);
        assert!(zero.is_zero());

        let fixed = poly("2 z x + y", &p, &order);
        assert_eq!(fixed.display_string(p.quiver()), "2 zx + y");
    }

    #[test]
    fn star_product_in_three_loops() {
        let p = three_loops();
        let order = MonomialOrder::declaration(p.quiver());
        let x = poly("x", &p, &order);
        let y = poly("y", &p, &order);
        let z = poly("z", &p, &order);
        assert!(star_multiply(&x, &z, &p, &order).is_zero());
        assert_eq!(
            star_multiply(&x, &y, &p, &order).display_string(p.quiver()),
            "xy"
        );
        let xy = poly("x + y", &p, &order);
        assert!(star_multiply(&xy, &z, &p, &order).is_zero());
    }

    #[test]
    fn star_product_respects_vertices() {
        let p = parse_presentation("vertices: a b\narrows: x a b, y b a\n").unwrap();
        let order = MonomialOrder::declaration(p.quiver());
        let x = poly("x", &p, &order);
        let y = poly("y", &p, &order);
        assert_eq!(star_multiply(&x, &y, &p, &order).display_string(p.quiver()), "xy");
        assert!(star_multiply(&x, &x, &p, &order).is_zero());
    }

    #[test]
    fn annihilator_tails_of_xyx_quotient() {
        let p = parse_presentation("arrows: x, y\nforbidden: xyx\n").unwrap();
        let q = p.quiver();
        let xy = Word::path(vec![0, 1], q).unwrap();
        let tails = annihilator_tails(&xy, &p);
        assert_eq!(tails.len(), 1);
        assert_eq!(tails[0].display(q).to_string(), "x");

        let x = Word::path(vec![0], q).unwrap();
        let tails = annihilator_tails(&x, &p);
        assert_eq!(tails.len(), 1);
        assert_eq!(tails[0].display(q).to_string(), "yx");
    }

    #[test]
    fn annihilator_tails_empty_when_nothing_extends() {
        let p = three_loops();
        let q = p.quiver();
        let z = Word::path(vec![2], q).unwrap();
        // nothing beginning with z's junction dies: forbidden words end in z
        assert!(annihilator_tails(&z, &p).is_empty());

        let free = parse_presentation("arrows: x, y\n").unwrap();
        let w = Word::path(vec![0, 1], free.quiver()).unwrap();
        assert!(annihilator_tails(&w, &free).is_empty());
    }

    #[test]
    fn annihilator_tails_match_brute_force() {
        // Oracle: m is a minimal annihilator iff w·m is illegal and every
        // proper prefix keeps w·m legal.
        for text in [
            "arrows: x, y\nforbidden: xyx\n",
            "arrows: x, y\nforbidden: xx, yxy\n",
            "arrows: x, y, z\nforbidden: xz, yz\n",
            "arrows: x, y\nforbidden: xyyx, yy\n",
        ] {
            let p = parse_presentation(text).unwrap();
            for w_len in 1..=3usize {
                for w in crate::language::enumerate_legal(&p, w_len).unwrap() {
                    let got = annihilator_tails(&w, &p);
                    let mut expected = Vec::new();
                    for m_len in 1..=p.l() {
                        for m in crate::language::enumerate_legal(&p, m_len).unwrap() {
                            let Some(wm) = w.concat(&m, p.quiver()) else {
                                continue;
                            };
                            if p.is_legal(&wm) {
                                continue;
                            }
                            let shorter_works = (1..m.len()).any(|k| {
                                let pre = m.prefix(k, p.quiver());
                                w.concat(&pre, p.quiver())
                                    .map(|wp| !p.is_legal(&wp))
                                    .unwrap_or(false)
                            });
                            if !shorter_works {
                                expected.push(m);
                            }
                        }
                    }
                    expected.sort_by(|a, b| (a.len(), a.arrows()).cmp(&(b.len(), b.arrows())));
                    assert_eq!(
                        got, expected,
                        "tails mismatch for w={} in {text:?}",
                        w.display(p.quiver())
                    );
                }
            }
        }
    }

    #[test]
    fn add_scaled_merges_and_cancels() {
        let p = parse_presentation("arrows: x, y\n").unwrap();
        let order = MonomialOrder::declaration(p.quiver());
        let f = poly("x + y", &p, &order);
        let g = poly("y", &p, &order);
        let h = f.add_scaled(&g, &BigRational::from_integer((-1).into()), &order);
        assert_eq!(h.display_string(p.quiver()), "x");
        let z = h.add_scaled(&h, &BigRational::from_integer((-1).into()), &order);
        assert!(z.is_zero());
    }
}
