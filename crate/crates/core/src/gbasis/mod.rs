//! Truncated noncommutative Gröbner bases, normal forms, normal-word bases
//! and Hilbert series.

mod automaton;
mod buchberger;
mod reduce;
mod series;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::freealg::{Letter, MonomialOrder, NcPoly, Presentation, Word};
use crate::scalar::Field;

pub use automaton::LeadAutomaton;
pub use buchberger::{buchberger_truncated, buchberger_with, GbOptions};
pub use series::{invert_series, PowerSeries};

pub(crate) use reduce::add_into as add_term_into;
use reduce::Reducer;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GbError {
    #[error("truncation degree {requested} exceeds the configured cap {cap}")]
    TruncationOverflow { requested: u32, cap: u32 },
    #[error("Gröbner basis is incomplete at degree {degree}; complete through {complete_through}")]
    Incomplete { degree: u32, complete_through: u32 },
    #[error("polynomial of degree {degree} exceeds the truncation degree {max}")]
    DegreeExceeds { degree: u32, max: u32 },
    #[error("a count overflowed 128-bit integers")]
    CountOverflow,
    #[error("constant term {0} is not a unit in the integers")]
    NonUnitSeries(i128),
    #[error("invalid bound: {0}")]
    InvalidBound(String),
}

/// A reduced Gröbner basis complete for all degrees `<= max_degree`.
#[derive(Debug, Clone)]
pub struct TruncatedGb<F: Field> {
    presentation: Presentation<F>,
    order: MonomialOrder,
    max_degree: u32,
    complete_all: bool,
    reducer: Arc<Reducer<F>>,
}

impl<F: Field> TruncatedGb<F> {
    pub(crate) fn from_parts(
        presentation: Presentation<F>,
        order: MonomialOrder,
        max_degree: u32,
        basis: Vec<NcPoly<F>>,
        complete_all: bool,
    ) -> Self {
        let reducer = Reducer::new(
            presentation.field().clone(),
            presentation.degrees().to_vec(),
            basis,
        );
        TruncatedGb {
            presentation,
            order,
            max_degree,
            complete_all,
            reducer: Arc::new(reducer),
        }
    }

    pub fn presentation(&self) -> &Presentation<F> {
        &self.presentation
    }

    pub fn field(&self) -> &F {
        self.presentation.field()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// True when no overlap lies above the truncation, so the basis is a
    /// Gröbner basis in every degree.
    pub fn is_complete_in_all_degrees(&self) -> bool {
        self.complete_all
    }

    /// Is the basis valid in degree `d`?
    pub fn is_complete_at(&self, d: u32) -> bool {
        self.complete_all || d <= self.max_degree
    }

    /// Error unless the basis is valid through degree `d`.
    pub fn require_complete(&self, d: u32) -> Result<(), GbError> {
        if self.is_complete_at(d) {
            Ok(())
        } else {
            Err(GbError::Incomplete {
                degree: self.max_degree + 1,
                complete_through: self.max_degree,
            })
        }
    }

    pub fn basis(&self) -> &[NcPoly<F>] {
        self.reducer.basis()
    }

    pub fn leading_words(&self) -> impl Iterator<Item = &Word> {
        self.basis().iter().map(|g| g.leading_word().unwrap())
    }

    pub fn automaton(&self) -> &LeadAutomaton {
        self.reducer.automaton()
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.reducer.is_normal(w)
    }

    /// The canonical representative of `f` modulo the ideal.
    pub fn normal_form(&self, f: &NcPoly<F>) -> Result<NcPoly<F>, GbError> {
        if let Some(d) = f.max_degree() {
            if !self.is_complete_at(d) {
                return Err(GbError::DegreeExceeds {
                    degree: d,
                    max: self.max_degree,
                });
            }
        }
        Ok(self.reducer.reduce(f))
    }

    /// Normal form of a single word, largest term first. The caller is
    /// responsible for the degree bound.
    pub fn word_nf(&self, w: &Word) -> Arc<Vec<(Word, F::Elem)>> {
        self.reducer.word_nf(w)
    }

    /// Product in the quotient algebra of two polynomials.
    pub fn multiply(&self, f: &NcPoly<F>, g: &NcPoly<F>) -> Result<NcPoly<F>, GbError> {
        self.normal_form(&f.mul(g))
    }

    /// Number of normal words in each degree `0..=d`.
    pub fn dims(&self, d: u32) -> Result<Vec<u128>, GbError> {
        self.require_complete(d)?;
        self.automaton().count_by_degree(self.presentation.degrees(), d)
    }

    /// Normal words of degree `d` in increasing order.
    pub fn normal_words(&self, d: u32) -> Result<Vec<Word>, GbError> {
        self.require_complete(d)?;
        Ok(self.automaton().words_of_degree(self.presentation.degrees(), d))
    }

    pub fn normal_basis(&self, d: u32) -> Result<NormalBasis, GbError> {
        let words = (0..=d).map(|k| self.normal_words(k)).collect::<Result<Vec<_>, _>>()?;
        let dims = self.dims(d)?;
        Ok(NormalBasis { words, dims })
    }

    /// `sum_d dim A_d g^d` through degree `d`.
    pub fn hilbert_series(&self, d: u32) -> Result<PowerSeries, GbError> {
        let dims = self.dims(d)?;
        let coeffs = dims
            .into_iter()
            .map(|c| i128::try_from(c).map_err(|_| GbError::CountOverflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PowerSeries::new(coeffs))
    }

    pub fn summary(&self) -> GbSummary {
        let names = self.presentation.names();
        let mut per_degree: BTreeMap<u32, usize> = BTreeMap::new();
        for w in self.leading_words() {
            *per_degree.entry(w.degree()).or_default() += 1;
        }
        GbSummary {
            order: self.order.name().to_string(),
            field: self.field().spec().to_string(),
            max_degree: self.max_degree,
            complete: (0..=self.max_degree).map(|d| self.is_complete_at(d)).collect(),
            complete_in_all_degrees: self.complete_all,
            basis_size: self.basis().len(),
            basis_by_degree: per_degree,
            leading_words: self
                .leading_words()
                .map(|w| crate::freealg::format_word(w, names))
                .collect(),
            dims: self
                .dims(self.max_degree)
                .map(|v| v.into_iter().map(|c| c.to_string()).collect())
                .unwrap_or_default(),
        }
    }

    /// The basis in presentation syntax, one `rel` line per element.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "# reduced Gröbner basis, order {}, complete through degree {}\n",
            self.order.name(),
            self.max_degree
        );
        let p = self.presentation.with_relations(self.basis().to_vec());
        match p {
            Ok(p) => s.push_str(&p.to_text()),
            Err(_) => s.push_str(&self.presentation.to_text()),
        }
        s
    }

    /// Letters of each generator, for callers building words by index.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.presentation.num_generators() as Letter
    }
}

/// Normal words per degree together with the dimension table.
#[derive(Debug, Clone)]
pub struct NormalBasis {
    pub words: Vec<Vec<Word>>,
    pub dims: Vec<u128>,
}

/// Machine-readable description of a truncated basis.
#[derive(Debug, Clone, Serialize)]
pub struct GbSummary {
    pub order: String,
    pub field: String,
    pub max_degree: u32,
    pub complete: Vec<bool>,
    pub complete_in_all_degrees: bool,
    pub basis_size: usize,
    pub basis_by_degree: BTreeMap<u32, usize>,
    pub leading_words: Vec<String>,
    /// dim A_d as decimal strings, since they can exceed 64 bits
    pub dims: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::PrimeField;

    fn gb(text: &str, d: u32) -> TruncatedGb<PrimeField> {
        let p = Presentation::parse(text, &PrimeField::default()).unwrap();
        buchberger_truncated(&p, MonomialOrder::DegLex, d).unwrap()
    }

    #[test]
    fn single_relation_without_overlaps() {
        let g = gb("gens n p q; rel n*p - n*q;", 5);
        assert_eq!(g.basis().len(), 1);
        assert!(g.is_complete_in_all_degrees());
        let rel = g.presentation().poly("n*p - n*q").unwrap();
        assert!(g.normal_form(&rel).unwrap().is_zero());
    }

    #[test]
    fn commutative_plane() {
        let g = gb("gens x y; rel x*y - y*x;", 6);
        assert_eq!(g.dims(6).unwrap(), vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn overlap_generates_new_element() {
        // xy = yx and xx = yy produce a cubic element
        let g = gb("gens x y; rel x*y - y*x; rel x*x - y*y;", 6);
        let dims = g.dims(6).unwrap();
        assert_eq!(dims[..4], [1, 2, 2, 2]);
    }

    #[test]
    fn degree_checks() {
        // the self-overlap x*y*x*y*x lies above the truncation
        let g = gb("gens x y; rel x*y*x - y*x*y;", 3);
        assert!(!g.is_complete_in_all_degrees());
        let f = g.presentation().poly("x*x*x*x").unwrap();
        assert!(matches!(g.normal_form(&f), Err(GbError::DegreeExceeds { .. })));
        assert!(matches!(g.hilbert_series(5), Err(GbError::Incomplete { .. })));
        let p = Presentation::parse("gens x; rel x*x;", &PrimeField::default()).unwrap();
        assert!(matches!(
            buchberger_with(&p, MonomialOrder::DegLex, 100, GbOptions::default()),
            Err(GbError::TruncationOverflow { .. })
        ));
    }

    #[test]
    fn free_algebra_series() {
        let g = gb("gens a b c;", 4);
        assert_eq!(g.hilbert_series(4).unwrap().coeffs(), &[1, 3, 9, 27, 81]);
    }
}
