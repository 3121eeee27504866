use std::collections::BTreeMap;

use crate::scalar::Field;

use super::word::Word;

/// A noncommutative polynomial: a finite linear combination of words.
/// Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct NcPoly<F: Field> {
    field: F,
    terms: BTreeMap<Word, F::Elem>,
}

impl<F: Field> PartialEq for NcPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> Eq for NcPoly<F> {}

impl<F: Field> NcPoly<F> {
    pub fn zero(field: &F) -> Self {
        NcPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &F) -> Self {
        Self::monomial(field, Word::one(), field.one())
    }

    pub fn monomial(field: &F, word: Word, coeff: F::Elem) -> Self {
        let mut p = Self::zero(field);
        if !field.is_zero(&coeff) {
            p.terms.insert(word, coeff);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, F::Elem)>>(field: &F, terms: I) -> Self {
        let mut p = Self::zero(field);
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> F::Elem {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<(&Word, &F::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.leading_word().map(Word::degree)
    }

    /// Degree shared by every term, or `None` for zero or mixed polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|w| w.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add_term(&mut self, w: Word, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &other.terms {
            r.add_term(w.clone(), c);
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &other.terms {
            r.add_term(w.clone(), &self.field.neg(c));
        }
        r
    }

    pub fn add_scaled(&mut self, other: &Self, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        for (w, d) in &other.terms {
            let x = self.field.mul(c, d);
            self.add_term(w.clone(), &x);
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field);
        }
        NcPoly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, d)| (w.clone(), self.field.mul(c, d)))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    /// Concatenation product, extended bilinearly.
    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero(&self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                r.add_term(u.concat(v), &self.field.mul(a, b));
            }
        }
        r
    }

    /// `left · self · right` for words `left`, `right`.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Self {
        NcPoly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.sandwich(left, right), c.clone()))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn into_terms(self) -> BTreeMap<Word, F::Elem> {
        self.terms
    }

    /// Canonical text: terms from the leading word down, generator names
    /// joined by `*`, unit coefficients omitted.
    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let s = self.field.format(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let word = format_word(w, names);
            if w.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&word);
            } else {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&word);
            }
        }
        out
    }
}

pub fn format_word(w: &Word, names: &[String]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.letters()
        .iter()
        .map(|&l| names[l as usize].as_str())
        .collect::<Vec<_>>()
        .join("*")
}
