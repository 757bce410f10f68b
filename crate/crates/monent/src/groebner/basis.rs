//! Right-ideal Groebner basis completion with the d+l degree certificate.
//!
//! S-elements arise from two sources only: annihilator tails of leading
//! monomials (the leading term dies against a forbidden factor or a
//! vertex mismatch, exposing lower terms) and left-divisibility between
//! leading monomials (handled by re-reducing the displaced element).
//! There are no classical two-sided overlaps: the working ideal is
//! right-sided and the quotient relations are monomial.
//!
//! Every nonzero remainder adjoined to the basis must have degree at
//! most d + l, where d is the maximum generator degree and l + 1 the
//! maximum forbidden-word length. A violation aborts with a hard error:
//! the bound is a theorem about this completion, so exceeding it can
//! only mean an implementation bug.

use std::collections::VecDeque;

use num_traits::One;

use crate::presentation::Presentation;
use crate::quiver::Word;

use super::{annihilator_tails, trivial_tails, MonomialOrder, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("no nonzero generators after normal form")]
    EmptyGeneratorList,
    #[error("degree certificate violated: element of degree {degree} exceeds bound {bound}")]
    CertificateViolation { degree: usize, bound: usize },
    #[error("leading monomial of an ideal element is not reducible by the basis")]
    IncompleteBasis,
}

/// The §-certificate carried by every completed basis: the largest
/// element degree and the bound d + l it must respect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeCertificate {
    pub max_degree: usize,
    pub bound: usize,
}

/// A reduced right-ideal Groebner basis: monic elements with pairwise
/// non-left-divisible leading monomials and fully reduced tails, sorted
/// ascending by leading monomial. Reducedness makes the output canonical
/// for a given ideal and order, independent of processing order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    elements: Vec<Poly>,
    order: MonomialOrder,
    pub certificate: DegreeCertificate,
    pub minimal: bool,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// True iff `lm` left-divides `word`: `word = lm · q` with the cofactor a
/// (normal) suffix. For word monomials this is exactly the prefix test;
/// a trivial `lm` divides any word sharing its vertex.
fn left_divides(lm: &Word, word: &Word, p: &Presentation) -> bool {
    if lm.is_empty() {
        return lm.base() == Some(word.source(p.quiver()));
    }
    lm.len() <= word.len() && &word.arrows()[..lm.len()] == lm.arrows()
}

/// The right cofactor q with word = lm · q.
fn cofactor(lm: &Word, word: &Word, p: &Presentation) -> Word {
    word.suffix(word.len() - lm.len(), p.quiver())
}

fn reduce_against(f: &Poly, elements: &[Poly], p: &Presentation, order: &MonomialOrder) -> Poly {
    let mut rest = f.clone();
    let mut done: Vec<super::Term> = Vec::new();
    while let Some(lt) = rest.leading_term().cloned() {
        // Largest applicable divisor: prefix-comparable leading monomials
        // form a chain, so "largest" is well-defined and gives
        // deterministic reductions.
        let reducer = elements
            .iter()
            .filter(|g| {
                g.leading_monomial()
                    .is_some_and(|lm| left_divides(lm, &lt.word, p))
            })
            .max_by(|a, b| {
                order.cmp_words(
                    a.leading_monomial().expect("nonzero"),
                    b.leading_monomial().expect("nonzero"),
                )
            });
        match reducer {
            Some(g) => {
                let lm = g.leading_monomial().expect("nonzero");
                let q = cofactor(lm, &lt.word, p);
                let prod = g.right_mul_word(&q, p);
                debug_assert_eq!(prod.leading_monomial(), Some(&lt.word));
                let c = -(&lt.coeff / g.leading_coefficient().expect("nonzero"));
                rest = rest.add_scaled(&prod, &c, order);
            }
            None => {
                rest.pop_leading_term();
                done.push(lt);
            }
        }
    }
    Poly::from_sorted_terms(done)
}

/// Fully reduces f by the basis: the result contains no monomial
/// left-divisible by any basis leading monomial.
pub fn reduce(f: &Poly, gb: &GroebnerBasis, p: &Presentation) -> Poly {
    reduce_against(f, &gb.elements, p, &gb.order)
}

/// Membership in the right ideal: reduce-to-zero test.
pub fn ideal_member(f: &Poly, gb: &GroebnerBasis, p: &Presentation) -> bool {
    reduce(f, gb, p).is_zero()
}

/// Completes a generating set to the reduced right-ideal Groebner basis,
/// certifying the d+l degree bound.
pub fn right_gb(
    gens: &[Poly],
    order: &MonomialOrder,
    p: &Presentation,
) -> Result<GroebnerBasis, GroebnerError> {
    let live: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if live.is_empty() {
        return Err(GroebnerError::EmptyGeneratorList);
    }
    let d = live
        .iter()
        .map(|g| g.degree().expect("nonzero"))
        .max()
        .expect("nonempty");
    let bound = d + p.l();

    let mut basis: Vec<Poly> = Vec::new();
    let mut queue: VecDeque<Poly> = live.into_iter().collect();

    while let Some(candidate) = queue.pop_front() {
        let remainder = reduce_against(&candidate, &basis, p, order);
        if remainder.is_zero() {
            continue;
        }
        let degree = remainder.degree().expect("nonzero");
        if degree > bound {
            return Err(GroebnerError::CertificateViolation { degree, bound });
        }
        let remainder = remainder.make_monic();
        let lm = remainder.leading_monomial().expect("nonzero").clone();

        // Existing elements whose leading monomial the newcomer divides
        // go back to the queue; re-reduction against the grown basis is
        // exactly the divisibility S-element.
        let mut retained = Vec::with_capacity(basis.len());
        for g in basis.drain(..) {
            let glm = g.leading_monomial().expect("nonzero");
            if left_divides(&lm, glm, p) {
                queue.push_back(g);
            } else {
                retained.push(g);
            }
        }
        basis = retained;

        // S-elements from the annihilator of the new leading monomial:
        // junction tails and, on multi-vertex quivers, trivial paths at
        // the other vertices.
        for m in annihilator_tails(&lm, p)
            .into_iter()
            .chain(trivial_tails(&lm, p))
        {
            let s = remainder.right_mul_word(&m, p);
            if !s.is_zero() {
                queue.push_back(s);
            }
        }
        basis.push(remainder);
    }

    // Tail inter-reduction: leading monomials are already pairwise
    // non-divisible; rewrite every tail to its normal form against the
    // others. Repeat until stable (a rewritten tail can expose another
    // reducible monomial in a different element only through changed
    // coefficients, so this settles quickly).
    loop {
        let mut changed = false;
        for i in 0..basis.len() {
            let others: Vec<Poly> = basis
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let reduced = reduce_against(&basis[i], &others, p, order).make_monic();
            debug_assert!(!reduced.is_zero(), "minimal leading monomials cannot vanish");
            if reduced != basis[i] {
                basis[i] = reduced;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    basis.sort_by(|a, b| {
        order.cmp_words(
            a.leading_monomial().expect("nonzero"),
            b.leading_monomial().expect("nonzero"),
        )
    });
    let max_degree = basis
        .iter()
        .map(|g| g.degree().expect("nonzero"))
        .max()
        .expect("nonempty basis");
    debug_assert!(max_degree <= bound);
    debug_assert!(basis
        .iter()
        .all(|g| g.leading_coefficient().is_some_and(|c| c.is_one())));

    Ok(GroebnerBasis {
        elements: basis,
        order: order.clone(),
        certificate: DegreeCertificate { max_degree, bound },
        minimal: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_presentation};
    use num_rational::BigRational;

    fn setup(pres: &str) -> (Presentation, MonomialOrder) {
        let p = parse_presentation(pres).unwrap();
        let order = MonomialOrder::declaration(p.quiver());
        (p, order)
    }

    fn poly(text: &str, p: &Presentation, order: &MonomialOrder) -> Poly {
        Poly::normal_form(parse_poly(text, p.quiver()).unwrap(), p, order)
    }

    fn lm_strings(gb: &GroebnerBasis, p: &Presentation) -> Vec<String> {
        gb.elements()
            .iter()
            .map(|g| {
                g.leading_monomial()
                    .unwrap()
                    .display(p.quiver())
                    .to_string()
            })
            .collect()
    }

    #[test]
    fn free_algebra_cancellation_example() {
        // gens {yx + x, y} in free k<x,y>, deglex x < y: the reduced
        // basis has leading monomials {x, y}
        let (p, order) = setup("arrows: x, y\n");
        let gens = vec![poly("y x + x", &p, &order), poly("y", &p, &order)];
        let gb = right_gb(&gens, &order, &p).unwrap();
        assert_eq!(lm_strings(&gb, &p), vec!["x", "y"]);
        assert_eq!(gb.certificate.bound, 2);
        assert_eq!(gb.certificate.max_degree, 1);
        assert!(gb.minimal);
    }

    #[test]
    fn monomial_generators_are_already_a_basis() {
        let (p, order) = setup("arrows: x, y\n");
        let gens = vec![poly("x y", &p, &order), poly("y", &p, &order)];
        let gb = right_gb(&gens, &order, &p).unwrap();
        // xy is not a left multiple of y, so both stay
        assert_eq!(lm_strings(&gb, &p), vec!["y", "xy"]);
        assert_eq!(gb.len(), 2);
    }

    #[test]
    fn nilpotent_generator_stays_alone() {
        let (p, order) = setup("arrows: x, y\nforbidden: xx\n");
        let gens = vec![poly("x", &p, &order)];
        let gb = right_gb(&gens, &order, &p).unwrap();
        assert_eq!(lm_strings(&gb, &p), vec!["x"]);
    }

    #[test]
    fn xyx_quotient_single_generator() {
        let (p, order) = setup("arrows: x, y\nforbidden: xyx\n");
        let gens = vec![poly("x y", &p, &order)];
        let gb = right_gb(&gens, &order, &p).unwrap();
        assert_eq!(lm_strings(&gb, &p), vec!["xy"]);
    }

    #[test]
    fn multi_vertex_ideals_split_by_target() {
        // arrows x: u->w, y: u->v; (x + y) contains x = (x+y)e_w and
        // y = (x+y)e_v, so the reduced basis is {x, y}
        let (p, order) = setup("vertices: u w v\narrows: x u w, y u v\n");
        let gens = vec![poly("x + y", &p, &order)];
        let gb = right_gb(&gens, &order, &p).unwrap();
        assert_eq!(lm_strings(&gb, &p), vec!["x", "y"]);
    }

    #[test]
    fn empty_generator_list_is_an_error() {
        let (p, order) = setup("arrows: x, y\n");
        assert_eq!(
            right_gb(&[], &order, &p).unwrap_err(),
            GroebnerError::EmptyGeneratorList
        );
        let zero = vec![Poly::zero()];
        assert_eq!(
            right_gb(&zero, &order, &p).unwrap_err(),
            GroebnerError::EmptyGeneratorList
        );
    }

    #[test]
    fn reduction_of_basis_elements_vanishes() {
        let (p, order) = setup("arrows: x, y\nforbidden: xyx\n");
        let gens = vec![poly("x y + y", &p, &order), poly("y y", &p, &order)];
        let gb = right_gb(&gens, &order, &p).unwrap();
        for g in gb.elements() {
            assert!(reduce(g, &gb, &p).is_zero());
        }
        for g in &gens {
            assert!(ideal_member(g, &gb, &p), "generators lie in the ideal");
        }
    }

    #[test]
    fn reduce_leaves_irreducible_elements_alone() {
        // GB = {x + y} with LM y (x < y); x is irreducible
        let (p, order) = setup("arrows: x, y\n");
        let gb = right_gb(&[poly("x + y", &p, &order)], &order, &p).unwrap();
        assert_eq!(lm_strings(&gb, &p), vec!["y"]);
        let x = poly("x", &p, &order);
        assert_eq!(reduce(&x, &gb, &p), x);
        assert!(!ideal_member(&x, &gb, &p));
        assert!(reduce(&Poly::zero(), &gb, &p).is_zero());
    }

    #[test]
    fn right_multiples_are_members() {
        let (p, order) = setup("arrows: x, y\nforbidden: yy\n");
        let gens = vec![poly("x + y", &p, &order)];
        let gb = right_gb(&gens, &order, &p).unwrap();
        for w_len in 1..=4usize {
            for w in crate::language::enumerate_legal(&p, w_len).unwrap() {
                let f = gens[0].right_mul_word(&w, &p);
                assert!(ideal_member(&f, &gb, &p));
            }
        }
    }

    #[test]
    fn reduction_is_idempotent() {
        let (p, order) = setup("arrows: x, y\nforbidden: xyx\n");
        let gb = right_gb(
            &[poly("x y + y", &p, &order), poly("y y + x", &p, &order)],
            &order,
            &p,
        )
        .unwrap();
        for text in ["x y x y", "x + y + x y", "2 y x - 1/3 x", "y y y"] {
            let f = poly(text, &p, &order);
            let r1 = reduce(&f, &gb, &p);
            let r2 = reduce(&r1, &gb, &p);
            assert_eq!(r1, r2, "idempotence fails on {text}");
        }
    }

    #[test]
    fn completion_is_deterministic_under_generator_permutation() {
        let (p, order) = setup("arrows: x, y\nforbidden: xyx\n");
        let a = poly("x y + y", &p, &order);
        let b = poly("y y + x", &p, &order);
        let gb1 = right_gb(&[a.clone(), b.clone()], &order, &p).unwrap();
        let gb2 = right_gb(&[b, a], &order, &p).unwrap();
        assert_eq!(gb1.elements(), gb2.elements());
    }

    #[test]
    fn monic_scaling_does_not_change_the_basis() {
        let (p, order) = setup("arrows: x, y\n");
        let f = poly("2 y x + 2 x", &p, &order);
        let g = poly("3 y", &p, &order);
        let gb = right_gb(&[f, g], &order, &p).unwrap();
        assert_eq!(lm_strings(&gb, &p), vec!["x", "y"]);
        for e in gb.elements() {
            assert_eq!(e.leading_coefficient(), Some(&BigRational::one()));
        }
    }

}
