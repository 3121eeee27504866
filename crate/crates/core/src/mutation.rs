//! Single-entry mutations of a complex, used to check that the verifiers
//! notice a damaged matrix.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::freealg::NcPoly;
use crate::grading::GradedAlgebra;
use crate::par::ExecMode;
use crate::resolution::verify::{exactness_with, graded_chain};
use crate::resolution::{verify_complex, verify_minimality, FreeModuleMap, ResolutionError};
use crate::scalar::Field;

#[derive(Debug, Clone, Serialize)]
pub struct Mutation {
    /// `maps[map]` was changed, i.e. the differential out of `P_{map+1}`.
    pub map: usize,
    pub row: usize,
    pub col: usize,
    pub before: String,
    pub after: String,
    /// Names of the verifiers that failed on the mutated complex.
    pub detected_by: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MutationReport {
    pub seed: u64,
    pub trials: usize,
    pub detected: usize,
    pub mutations: Vec<Mutation>,
}

impl MutationReport {
    pub fn all_detected(&self) -> bool {
        self.detected == self.trials
    }
}

/// Replaces one term of `entry` by another normal word of the same
/// multidegree, or drops the entry when no such word exists.
fn mutate_entry<F: Field>(alg: &GradedAlgebra<F>, entry: &NcPoly<F>, rng: &mut ChaCha8Rng) -> Option<NcPoly<F>> {
    let gb = alg.gb();
    let before = gb.normal_form(entry).ok()?;
    let terms: Vec<_> = entry.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    let (w, c) = terms.choose(rng)?.clone();
    let piece = alg.piece(&alg.grading().word_mdeg(&w));
    let mut others: Vec<_> = piece.words.iter().filter(|&x| *x != w).cloned().collect();
    others.shuffle(rng);
    for x in others {
        let mut p = entry.clone();
        p.add_term(w.clone(), &alg.field().neg(&c));
        p.add_term(x, &c);
        if gb.normal_form(&p).ok()? != before {
            return Some(p);
        }
    }
    Some(NcPoly::zero(alg.field()))
}

/// Applies `trials` independent random single-entry mutations to `maps`
/// and records which verifiers reject each one. Each mutation either
/// zeroes a nonzero entry or swaps one of its words for a different
/// normal word of the same multidegree, so the maps stay homogeneous.
pub fn mutation_test<F: Field>(
    maps: &[FreeModuleMap<F>],
    alg: &GradedAlgebra<F>,
    jmax: u32,
    trials: usize,
    seed: u64,
    mode: ExecMode,
) -> Result<MutationReport, ResolutionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // mutations keep every entry in its multidegree, so the grading of the
    // original chain stays valid even when a row becomes zero
    let (graded, mdegs) = graded_chain(maps, alg)?;
    let gb = alg.gb();
    let names = gb.presentation().names();
    // entries that are nonzero in the algebra
    let mut cells = Vec::new();
    for (k, m) in maps.iter().enumerate() {
        for (r, row) in m.rows().iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if !gb.normal_form(e)?.is_zero() {
                    cells.push((k, r, c));
                }
            }
        }
    }
    let mut mutations = Vec::with_capacity(trials);
    for _ in 0..trials {
        let Some(&(k, r, c)) = cells.choose(&mut rng) else { break };
        let old = maps[k].entry(r, c).clone();
        let new = if rng.gen_bool(0.5) {
            NcPoly::zero(alg.field())
        } else {
            mutate_entry(alg, &old, &mut rng).unwrap_or_else(|| NcPoly::zero(alg.field()))
        };
        let mut mutated = maps.to_vec();
        mutated[k].set_entry(r, c, new.clone())?;
        let mut detected_by = Vec::new();
        if !verify_complex(&mutated, alg)?.ok {
            detected_by.push("complex".to_string());
        }
        if !verify_minimality(&mutated) {
            detected_by.push("minimality".to_string());
        }
        match exactness_with(&mutated, &graded, &mdegs, jmax, mode) {
            Ok(ex) if ex.exact => {}
            _ => detected_by.push("exactness".to_string()),
        }
        mutations.push(Mutation {
            map: k,
            row: r,
            col: c,
            before: old.format(names),
            after: new.format(names),
            detected_by,
        });
    }
    Ok(MutationReport {
        seed,
        trials: mutations.len(),
        detected: mutations.iter().filter(|m| !m.detected_by.is_empty()).count(),
        mutations,
    })
}
