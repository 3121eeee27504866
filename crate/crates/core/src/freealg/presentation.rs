use std::collections::HashMap;

use thiserror::Error;

use crate::scalar::Field;

use super::parser::{self, ExprContext, ParseError};
use super::poly::{format_word, NcPoly};
use super::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub index: usize,
    pub degree: u32,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("generator `{0}` has degree 0")]
    ZeroDegree(String),
    #[error("relation {0} is not homogeneous")]
    Inhomogeneous(usize),
    #[error("relation {index} has degree {degree} < 2")]
    LowDegree { index: usize, degree: u32 },
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error("relation {0} uses an undeclared generator")]
    UnknownLetter(usize),
    #[error("presentation has no generators")]
    NoGenerators,
}

/// Generators with degrees plus homogeneous relations: the graded algebra
/// `k<V>/I`. Relations are stored monic with respect to the monomial order.
#[derive(Debug, Clone)]
pub struct Presentation<F: Field> {
    name: Option<String>,
    field: F,
    generators: Vec<Generator>,
    names: Vec<String>,
    degrees: Vec<u32>,
    index: HashMap<String, Letter>,
    relations: Vec<NcPoly<F>>,
}

impl<F: Field> PartialEq for Presentation<F> {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.relations == other.relations
    }
}

impl<F: Field> Presentation<F> {
    pub fn new(
        field: F,
        name: Option<String>,
        generators: Vec<(String, u32)>,
        relations: Vec<NcPoly<F>>,
    ) -> Result<Self, PresentationError> {
        if generators.is_empty() {
            return Err(PresentationError::NoGenerators);
        }
        let mut index = HashMap::new();
        let mut gens = Vec::with_capacity(generators.len());
        for (i, (n, d)) in generators.into_iter().enumerate() {
            if d == 0 {
                return Err(PresentationError::ZeroDegree(n));
            }
            if index.insert(n.clone(), i as Letter).is_some() {
                return Err(PresentationError::DuplicateName(n));
            }
            gens.push(Generator {
                name: n,
                index: i,
                degree: d,
            });
        }
        let names: Vec<String> = gens.iter().map(|g| g.name.clone()).collect();
        let degrees: Vec<u32> = gens.iter().map(|g| g.degree).collect();
        let mut rels = Vec::with_capacity(relations.len());
        for (i, r) in relations.into_iter().enumerate() {
            if r.is_zero() {
                return Err(PresentationError::ZeroRelation(i));
            }
            if r
                .terms()
                .any(|(w, _)| w.letters().iter().any(|&l| l as usize >= gens.len()))
            {
                return Err(PresentationError::UnknownLetter(i));
            }
            let d = r.homogeneous_degree().ok_or(PresentationError::Inhomogeneous(i))?;
            if d < 2 {
                return Err(PresentationError::LowDegree { index: i, degree: d });
            }
            rels.push(r.monic());
        }
        Ok(Presentation {
            name,
            field,
            generators: gens,
            names,
            degrees,
            index,
            relations: rels,
        })
    }

    pub fn parse(text: &str, field: &F) -> Result<Self, ParseError> {
        parser::parse_presentation(text, field)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn relations(&self) -> &[NcPoly<F>] {
        &self.relations
    }

    pub fn gen_index(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    /// Word from generator names; panics on an unknown name.
    pub fn word(&self, names: &[&str]) -> Word {
        let letters: Vec<Letter> = names
            .iter()
            .map(|n| self.gen_index(n).unwrap_or_else(|| panic!("unknown generator `{n}`")))
            .collect();
        Word::new(&letters, &self.degrees)
    }

    pub fn letter_word(&self, l: Letter) -> Word {
        Word::letter(l, self.degrees[l as usize])
    }

    /// Parses a polynomial expression such as `y1*x2 + z1*y2` over this
    /// presentation's generators.
    pub fn poly(&self, expr: &str) -> Result<NcPoly<F>, ParseError> {
        self.poly_at(expr, 1, 1)
    }

    /// As [`Presentation::poly`], reporting positions relative to `line`
    /// and `col` of an enclosing file.
    pub fn poly_at(&self, expr: &str, line: usize, col: usize) -> Result<NcPoly<F>, ParseError> {
        let toks = parser::tokenize(expr, line, col)?;
        let toks: Vec<_> = toks
            .into_iter()
            .filter(|t| t.tok != parser::Tok::Newline)
            .collect();
        let ctx = ExprContext {
            field: &self.field,
            index: &self.index,
            degrees: &self.degrees,
        };
        let end = (line, col + expr.chars().count());
        let terms = parser::parse_terms(&toks, &ctx, end.0, end.1)?;
        Ok(parser::terms_to_poly(&self.field, terms))
    }

    pub fn format_poly(&self, p: &NcPoly<F>) -> String {
        p.format(&self.names)
    }

    pub fn format_word(&self, w: &Word) -> String {
        format_word(w, &self.names)
    }

    /// Number of words of internal degree `d` in the free algebra.
    pub fn graded_component_dim_free(&self, d: u32) -> Option<u128> {
        let mut dp: Vec<u128> = vec![0; d as usize + 1];
        dp[0] = 1;
        for k in 1..=d as usize {
            let mut acc: u128 = 0;
            for &g in &self.degrees {
                if g as usize <= k {
                    acc = acc.checked_add(dp[k - g as usize])?;
                }
            }
            dp[k] = acc;
        }
        Some(dp[d as usize])
    }

    /// Canonical serialization, stable byte for byte.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(n) = &self.name {
            s.push_str(&format!("algebra {n}\n"));
        }
        s.push_str(&format!("field {}\n", self.field.spec()));
        for chunk in self.names.chunks(16) {
            s.push_str(&format!("gens {}\n", chunk.join(" ")));
        }
        s.push_str("deg all 1\n");
        for g in &self.generators {
            if g.degree != 1 {
                s.push_str(&format!("deg {} {}\n", g.name, g.degree));
            }
        }
        for r in &self.relations {
            s.push_str(&format!("rel {};\n", self.format_poly(r)));
        }
        s
    }

    /// Same generators, different relation list.
    pub fn with_relations(&self, relations: Vec<NcPoly<F>>) -> Result<Self, PresentationError> {
        Presentation::new(
            self.field.clone(),
            self.name.clone(),
            self.generators.iter().map(|g| (g.name.clone(), g.degree)).collect(),
            relations,
        )
    }
}
