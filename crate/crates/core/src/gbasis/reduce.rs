//! Normal forms with respect to a fixed reduced basis.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use crate::freealg::{Letter, NcPoly, Word};
use crate::scalar::Field;

use super::automaton::LeadAutomaton;

const SHARDS: usize = 64;

pub(crate) type Terms<F> = Arc<Vec<(Word, <F as Field>::Elem)>>;

/// Rewrites words using a fixed list of monic basis elements. Always
/// reduces by the largest leading word occurring in a word, leftmost
/// occurrence first, and caches the normal form of every word it rewrites.
#[derive(Debug)]
pub(crate) struct Reducer<F: Field> {
    field: F,
    degrees: Vec<u32>,
    basis: Vec<NcPoly<F>>,
    lead_lens: Vec<usize>,
    automaton: LeadAutomaton,
    cache: Vec<Mutex<HashMap<Word, Terms<F>>>>,
}

impl<F: Field> Reducer<F> {
    pub fn new(field: F, degrees: Vec<u32>, basis: Vec<NcPoly<F>>) -> Self {
        let leads: Vec<&[Letter]> = basis
            .iter()
            .map(|g| g.leading_word().expect("basis elements are nonzero").letters())
            .collect();
        let lead_lens = leads.iter().map(|l| l.len()).collect();
        let automaton = LeadAutomaton::new(leads.iter().copied(), degrees.len());
        Reducer {
            field,
            degrees,
            basis,
            lead_lens,
            automaton,
            cache: (0..SHARDS).map(|_| Mutex::new(HashMap::new())).collect(),
        }
    }

    pub fn automaton(&self) -> &LeadAutomaton {
        &self.automaton
    }

    pub fn basis(&self) -> &[NcPoly<F>] {
        &self.basis
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.automaton.is_normal(w.letters())
    }

    fn shard(&self, w: &Word) -> &Mutex<HashMap<Word, Terms<F>>> {
        let mut h = DefaultHasher::new();
        w.hash(&mut h);
        &self.cache[h.finish() as usize % SHARDS]
    }

    fn cached(&self, w: &Word) -> Option<Terms<F>> {
        self.shard(w).lock().unwrap().get(w).cloned()
    }

    /// One rewriting step: `w = a·L·b` becomes `-a·tail·b`.
    fn rewrite(&self, w: &Word) -> Option<Vec<(Word, F::Elem)>> {
        let lens = &self.lead_lens;
        let matches = self.automaton.matches(w.letters(), |id| lens[id as usize]);
        let &(id, start) = matches.iter().max_by(|x, y| {
            let lx = self.basis[x.0 as usize].leading_word().unwrap();
            let ly = self.basis[y.0 as usize].leading_word().unwrap();
            lx.cmp(ly).then(y.1.cmp(&x.1))
        })?;
        let g = &self.basis[id as usize];
        let end = start + lens[id as usize];
        let left = w.subword(0, start, &self.degrees);
        let right = w.subword(end, w.len(), &self.degrees);
        Some(
            g.terms()
                .rev()
                .skip(1)
                .map(|(t, c)| (t.sandwich(&left, &right), self.field.neg(c)))
                .collect(),
        )
    }

    /// Normal form of a single word as a list of terms, largest first.
    pub fn word_nf(&self, w: &Word) -> Terms<F> {
        if self.is_normal(w) {
            return Arc::new(vec![(w.clone(), self.field.one())]);
        }
        if let Some(t) = self.cached(w) {
            return t;
        }
        // iterative post-order over the rewriting graph
        let mut stack: Vec<(Word, Vec<(Word, F::Elem)>)> = Vec::new();
        let step = self.rewrite(w).expect("non-normal word has a factor");
        stack.push((w.clone(), step));
        while let Some((top, step)) = stack.last() {
            let missing = step
                .iter()
                .find(|(t, _)| !self.is_normal(t) && self.cached(t).is_none())
                .map(|(t, _)| t.clone());
            match missing {
                Some(t) => {
                    let s = self.rewrite(&t).expect("non-normal word has a factor");
                    stack.push((t, s));
                }
                None => {
                    let mut acc: BTreeMap<Word, F::Elem> = BTreeMap::new();
                    for (t, c) in step {
                        if self.is_normal(t) {
                            add_into(&self.field, &mut acc, t.clone(), c.clone());
                        } else {
                            let sub = self.cached(t).expect("computed above");
                            for (u, d) in sub.iter() {
                                add_into(&self.field, &mut acc, u.clone(), self.field.mul(c, d));
                            }
                        }
                    }
                    let terms: Terms<F> = Arc::new(acc.into_iter().rev().collect());
                    self.shard(top).lock().unwrap().insert(top.clone(), terms);
                    stack.pop();
                }
            }
        }
        self.cached(w).expect("just computed")
    }

    pub fn reduce(&self, f: &NcPoly<F>) -> NcPoly<F> {
        let mut acc: BTreeMap<Word, F::Elem> = BTreeMap::new();
        for (w, c) in f.terms() {
            for (u, d) in self.word_nf(w).iter() {
                add_into(&self.field, &mut acc, u.clone(), self.field.mul(c, d));
            }
        }
        NcPoly::from_terms(&self.field, acc)
    }
}

pub(crate) fn add_into<F: Field>(field: &F, acc: &mut BTreeMap<Word, F::Elem>, w: Word, c: F::Elem) {
    use std::collections::btree_map::Entry;
    if field.is_zero(&c) {
        return;
    }
    match acc.entry(w) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let s = field.add(e.get(), &c);
            if field.is_zero(&s) {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}
