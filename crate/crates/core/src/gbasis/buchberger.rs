//! Homogeneous Buchberger completion, one degree at a time.

use std::collections::{BTreeMap, BTreeSet};

use crate::freealg::{MonomialOrder, NcPoly, Presentation, Word};
use crate::par::ExecMode;
use crate::scalar::Field;

use super::reduce::{add_into, Reducer};
use super::{GbError, TruncatedGb};

/// Tuning knobs for [`buchberger_with`].
#[derive(Debug, Clone, Copy)]
pub struct GbOptions {
    /// Largest truncation degree accepted.
    pub cap: u32,
    pub mode: ExecMode,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            cap: 64,
            mode: ExecMode::Parallel,
        }
    }
}

/// Reduced Gröbner basis of the relation ideal, complete for every
/// degree up to `max_degree`.
pub fn buchberger_truncated<F: Field>(
    p: &Presentation<F>,
    ord: MonomialOrder,
    max_degree: u32,
) -> Result<TruncatedGb<F>, GbError> {
    buchberger_with(p, ord, max_degree, GbOptions::default())
}

pub fn buchberger_with<F: Field>(
    p: &Presentation<F>,
    ord: MonomialOrder,
    max_degree: u32,
    opts: GbOptions,
) -> Result<TruncatedGb<F>, GbError> {
    if max_degree > opts.cap {
        return Err(GbError::TruncationOverflow {
            requested: max_degree,
            cap: opts.cap,
        });
    }
    let field = p.field().clone();
    let degrees = p.degrees().to_vec();
    let max_rel = p.relations().iter().filter_map(|r| r.max_degree()).max().unwrap_or(0);
    if max_degree < max_rel {
        return Err(GbError::InvalidBound(format!(
            "truncation degree {max_degree} is below the largest relation degree {max_rel}"
        )));
    }

    let mut basis: Vec<NcPoly<F>> = Vec::new();
    // overlap words by degree; each entry is (overlap word, i, j, k) where
    // the last k letters of lead i equal the first k letters of lead j
    let mut pending: BTreeMap<u32, BTreeSet<(Word, usize, usize, usize)>> = BTreeMap::new();

    for d in 1..=max_degree {
        let reducer = Reducer::new(field.clone(), degrees.clone(), basis.clone());
        let mut candidates: Vec<NcPoly<F>> = p
            .relations()
            .iter()
            .filter(|r| r.homogeneous_degree() == Some(d))
            .cloned()
            .collect();
        if let Some(ovs) = pending.remove(&d) {
            for (_, i, j, k) in ovs {
                candidates.push(s_poly(&basis[i], &basis[j], k, &degrees));
            }
        }
        if candidates.is_empty() {
            continue;
        }
        let reduced = opts.mode.map(candidates, |c| reducer.reduce(&c));
        let new = rref(&field, reduced);
        for g in new {
            let j = basis.len();
            basis.push(g);
            for i in 0..=j {
                for (a, b) in [(i, j), (j, i)] {
                    let la = basis[a].leading_word().unwrap().letters();
                    let lb = basis[b].leading_word().unwrap().letters();
                    for k in 1..la.len().min(lb.len()) {
                        if la[la.len() - k..] == lb[..k] {
                            let mut letters = la.to_vec();
                            letters.extend_from_slice(&lb[k..]);
                            let w = Word::new(&letters, &degrees);
                            pending.entry(w.degree()).or_default().insert((w, a, b, k));
                        }
                    }
                }
            }
        }
    }

    // every remaining overlap lies above the truncation
    let complete_all = pending.is_empty()
        && p.relations().iter().all(|r| r.max_degree().unwrap_or(0) <= max_degree);
    Ok(TruncatedGb::from_parts(p.clone(), ord, max_degree, basis, complete_all))
}

/// `f·w_j − w_i·g` for the overlap of `lead(f)` and `lead(g)` in `k` letters.
fn s_poly<F: Field>(f: &NcPoly<F>, g: &NcPoly<F>, k: usize, degrees: &[u32]) -> NcPoly<F> {
    let lf = f.leading_word().unwrap();
    let lg = g.leading_word().unwrap();
    let right = lg.subword(k, lg.len(), degrees);
    let left = lf.subword(0, lf.len() - k, degrees);
    f.sandwich(&Word::one(), &right).sub(&g.sandwich(&left, &Word::one()))
}

/// Reduced row echelon form of homogeneous polynomials of one degree:
/// distinct monic leading words, and no leading word appears in another row.
fn rref<F: Field>(field: &F, polys: Vec<NcPoly<F>>) -> Vec<NcPoly<F>> {
    let mut rows: BTreeMap<Word, BTreeMap<Word, F::Elem>> = BTreeMap::new();
    for p in polys {
        let mut r: BTreeMap<Word, F::Elem> = p.into_terms();
        loop {
            let Some((lw, lc)) = r.iter().next_back().map(|(w, c)| (w.clone(), c.clone())) else {
                break;
            };
            match rows.get(&lw) {
                Some(pivot) => {
                    let c = field.neg(&lc);
                    for (w, pc) in pivot {
                        add_into(field, &mut r, w.clone(), field.mul(&c, pc));
                    }
                }
                None => {
                    let inv = field.inv(&lc).expect("nonzero leading coefficient");
                    let r: BTreeMap<Word, F::Elem> =
                        r.into_iter().map(|(w, c)| (w, field.mul(&inv, &c))).collect();
                    rows.insert(lw, r);
                    break;
                }
            }
        }
    }
    // back-substitution, smallest pivot first
    let keys: Vec<Word> = rows.keys().cloned().collect();
    for (idx, key) in keys.iter().enumerate() {
        let pivot = rows[key].clone();
        for other in &keys[idx + 1..] {
            let row = rows.get_mut(other).unwrap();
            if let Some(c) = row.get(key).cloned() {
                let c = field.neg(&c);
                for (w, pc) in &pivot {
                    add_into(field, row, w.clone(), field.mul(&c, pc));
                }
            }
        }
    }
    rows.into_values().map(|r| NcPoly::from_terms(field, r)).collect()
}
