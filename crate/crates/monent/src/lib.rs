//! Entropy and Groebner machinery for finitely presented monomial
//! quotients of path algebras.
//!
//! Given a quiver and a finite set of forbidden words, this crate
//! computes and cross-checks the growth data of the quotient algebra
//! A = kGamma/(F):
//!
//! * exact graded dimensions (legal-word counts) and the growth-rate /
//!   entropy estimators over them ([`language`]),
//! * the Ufnarovski graph with its labeling, adjacency matrix, path
//!   counts, spectral radius and graph entropy ([`ufnarovski`]),
//! * Serre-twist multiplicities of projectives, categorical entropy, and
//!   the consolidated entropy report tying all pipelines together
//!   ([`qgr`]),
//! * right-ideal Groebner bases with the degree certificate, annihilator
//!   tails, syzygy generators and an independent linear-algebra oracle
//!   ([`groebner`]).
//!
//! All counting and linear algebra is exact (big integers, big
//! rationals); floating point enters only in final spectral and entropy
//! estimates. Every value is immutable after construction and every
//! operation is a pure function, so shared inputs are safe to use from
//! multiple threads.

pub mod automaton;
pub mod language;
pub mod parse;
pub mod presentation;
pub mod quiver;
pub mod ufnarovski;

pub use parse::{parse_presentation, to_text, ParseError};
pub use presentation::Presentation;
pub use quiver::{Arrow, Quiver, Word};
