//! Quivers and composable words (paths) over them.
//!
//! A [`Word`] is the universal currency of the crate: legal-word counting,
//! the Ufnarovski graph and the Groebner machinery all speak in words. A
//! word stores arrow indices, not labels, so comparisons and automaton
//! transitions are integer operations; rendering back to labels needs the
//! quiver.

use std::fmt;

/// An arrow of a quiver: a label together with source and target vertices
/// (indices into the quiver's vertex list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver: ordered vertices and ordered labeled arrows.
///
/// Vertex identifiers and arrow labels are unique (enforced by
/// [`Quiver::new`]); arrow endpoints index declared vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// Construction errors for [`Quiver::new`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("duplicate vertex identifier `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow label `{0}`")]
    DuplicateLabel(String),
    #[error("arrow `{label}` references vertex index {index} out of range")]
    VertexOutOfRange { label: String, index: usize },
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|b| b.label == a.label) {
                return Err(QuiverError::DuplicateLabel(a.label.clone()));
            }
            for &ix in [a.source, a.target].iter() {
                if ix >= vertices.len() {
                    return Err(QuiverError::VertexOutOfRange {
                        label: a.label.clone(),
                        index: ix,
                    });
                }
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Single vertex, one loop per label.
    pub fn loops(vertex: &str, labels: &[&str]) -> Self {
        Quiver::new(
            vec![vertex.to_string()],
            labels
                .iter()
                .map(|l| Arrow {
                    label: l.to_string(),
                    source: 0,
                    target: 0,
                })
                .collect(),
        )
        .expect("loop quiver is always valid")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// True iff consecutive arrows compose (target of each = source of the next).
    ///
    /// Out-of-range indices make a sequence a non-path rather than a panic.
    pub fn is_path(&self, arrows: &[usize]) -> bool {
        if arrows.iter().any(|&a| a >= self.arrows.len()) {
            return false;
        }
        arrows
            .windows(2)
            .all(|w| self.arrows[w[0]].target == self.arrows[w[1]].source)
    }

    /// True iff every arrow label is a single character (enables the
    /// contiguous word syntax in the text format).
    pub fn single_char_labels(&self) -> bool {
        self.arrows.iter().all(|a| a.label.chars().count() == 1)
    }
}

/// A composable sequence of arrows. The empty word carries an explicit
/// base vertex: it is the trivial path `e_v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    arrows: Vec<usize>,
    /// Base vertex, only meaningful (and only `Some`) when `arrows` is empty.
    base: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("arrow sequence is not a path in the quiver")]
    NotAPath,
}

impl Word {
    /// The trivial path at a vertex.
    pub fn trivial(vertex: usize) -> Self {
        Word {
            arrows: Vec::new(),
            base: Some(vertex),
        }
    }

    /// A validated path.
    pub fn path(arrows: Vec<usize>, quiver: &Quiver) -> Result<Self, WordError> {
        if arrows.is_empty() {
            return Err(WordError::NotAPath);
        }
        if !quiver.is_path(&arrows) {
            return Err(WordError::NotAPath);
        }
        Ok(Word { arrows, base: None })
    }

    /// Builds a word without re-checking composability. Callers guarantee
    /// the sequence is a path (used by enumeration, which extends paths
    /// arrow by arrow).
    pub(crate) fn path_unchecked(arrows: Vec<usize>) -> Self {
        debug_assert!(!arrows.is_empty());
        Word { arrows, base: None }
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// The base vertex of a trivial path; `None` for nonempty words.
    pub fn base(&self) -> Option<usize> {
        self.base
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self, quiver: &Quiver) -> usize {
        match self.base {
            Some(v) => v,
            None => quiver.arrows()[self.arrows[0]].source,
        }
    }

    pub fn target(&self, quiver: &Quiver) -> usize {
        match self.base {
            Some(v) => v,
            None => quiver.arrows()[*self.arrows.last().unwrap()].target,
        }
    }

    /// First arrow index, if any. This is the Ufnarovski edge label.
    pub fn first_arrow(&self) -> Option<usize> {
        self.arrows.first().copied()
    }

    /// The length-`n` prefix as a word (trivial path at the source when n = 0).
    pub fn prefix(&self, n: usize, quiver: &Quiver) -> Word {
        if n == 0 {
            Word::trivial(self.source(quiver))
        } else {
            Word::path_unchecked(self.arrows[..n].to_vec())
        }
    }

    /// The length-`n` suffix as a word (trivial path at the target when n = 0).
    pub fn suffix(&self, n: usize, quiver: &Quiver) -> Word {
        if n == 0 {
            Word::trivial(self.target(quiver))
        } else {
            Word::path_unchecked(self.arrows[self.arrows.len() - n..].to_vec())
        }
    }

    /// Concatenation, `None` when the endpoints do not compose.
    pub fn concat(&self, other: &Word, quiver: &Quiver) -> Option<Word> {
        if self.target(quiver) != other.source(quiver) {
            return None;
        }
        if self.is_empty() {
            return Some(other.clone());
        }
        if other.is_empty() {
            return Some(self.clone());
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Word { arrows, base: None })
    }

    /// True iff `factor` occurs as a contiguous factor (for nonempty factors).
    pub fn contains_factor(&self, factor: &Word) -> bool {
        if factor.is_empty() {
            return true;
        }
        if factor.len() > self.len() {
            return false;
        }
        self.arrows
            .windows(factor.len())
            .any(|w| w == factor.arrows.as_slice())
    }

    /// Renders the word using the quiver's labels. Labels are joined
    /// without separators when all labels are single characters, with
    /// spaces otherwise; trivial paths render as `e(<vertex>)`.
    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> WordDisplay<'a> {
        WordDisplay { word: self, quiver }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    quiver: &'a Quiver,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(
                f,
                "e({})",
                self.quiver.vertices()[self.word.base.unwrap()]
            );
        }
        let sep = if self.quiver.single_char_labels() { "" } else { " " };
        let mut first = true;
        for &a in self.word.arrows() {
            if !first {
                f.write_str(sep)?;
            }
            f.write_str(&self.quiver.arrows()[a].label)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_vertex() -> Quiver {
        Quiver::new(
            vec!["a".into(), "b".into()],
            vec![Arrow {
                label: "x".into(),
                source: 0,
                target: 1,
            }],
        )
        .unwrap()
    }

    #[test]
    fn single_vertex_everything_composes() {
        let q = Quiver::loops("*", &["x", "y", "z"]);
        assert!(q.is_path(&[0, 1, 2, 2, 0]));
        assert!(q.is_path(&[2, 1])); // "zy" in the free single-vertex quiver
    }

    #[test]
    fn non_composable_sequence_rejected() {
        let q = two_vertex();
        // x ends at b, x starts at a: xx is not a path
        assert!(!q.is_path(&[0, 0]));
        assert!(Word::path(vec![0, 0], &q).is_err());
        assert!(q.is_path(&[0]));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let err = Quiver::new(
            vec!["v".into()],
            vec![
                Arrow { label: "x".into(), source: 0, target: 0 },
                Arrow { label: "x".into(), source: 0, target: 0 },
            ],
        )
        .unwrap_err();
        assert_eq!(err, QuiverError::DuplicateLabel("x".into()));
    }

    #[test]
    fn prefix_suffix_and_endpoints() {
        let q = Quiver::loops("*", &["x", "y"]);
        let w = Word::path(vec![0, 1, 1], &q).unwrap();
        assert_eq!(w.prefix(2, &q).arrows(), &[0, 1]);
        assert_eq!(w.suffix(2, &q).arrows(), &[1, 1]);
        assert_eq!(w.prefix(0, &q), Word::trivial(0));
        assert_eq!(w.source(&q), 0);
        assert_eq!(w.target(&q), 0);
        assert_eq!(w.display(&q).to_string(), "xyy");
    }

    #[test]
    fn factor_search() {
        let q = Quiver::loops("*", &["x", "y", "z"]);
        let w = Word::path(vec![2, 0, 1], &q).unwrap(); // zxy
        let zx = Word::path(vec![2, 0], &q).unwrap();
        let xz = Word::path(vec![0, 2], &q).unwrap();
        assert!(w.contains_factor(&zx));
        assert!(!w.contains_factor(&xz));
        assert!(w.contains_factor(&Word::trivial(0)));
    }

    #[test]
    fn trivial_path_display_and_concat() {
        let q = two_vertex();
        let e_a = Word::trivial(0);
        let x = Word::path(vec![0], &q).unwrap();
        assert_eq!(e_a.concat(&x, &q), Some(x.clone()));
        assert_eq!(x.concat(&e_a, &q), None); // x ends at b
        assert_eq!(e_a.display(&q).to_string(), "e(a)");
    }
}
