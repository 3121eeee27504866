//! Linear algebra of free modules one multidegree at a time.

use std::sync::Arc;

use crate::freealg::{NcPoly, Word};
use crate::grading::{GradedAlgebra, GradingError, GradingKind, MDeg, Piece};
use crate::linalg::SparseVec;
use crate::scalar::Field;

use super::module::FreeModuleMap;

/// Basis of `(P)_W` for a free module `P` whose generators have the given
/// multidegrees: pairs `(generator, normal word u)` with `mdeg(u)·m_g = W`.
#[derive(Debug, Clone)]
pub(crate) struct PieceBasis {
    /// `(offset, words)` per generator, or `None` if the generator does not
    /// contribute.
    slots: Vec<Option<(usize, Arc<Piece>)>>,
    dim: usize,
}

impl PieceBasis {
    pub fn new<F: Field>(alg: &GradedAlgebra<F>, mdegs: &[MDeg], w: &MDeg) -> Self {
        let g = alg.grading();
        let mut dim = 0;
        let slots = mdegs
            .iter()
            .map(|m| {
                let u = g.strip_suffix(w, m)?;
                let piece = alg.piece(&u);
                if piece.is_empty() {
                    return None;
                }
                let off = dim;
                dim += piece.len();
                Some((off, piece))
            })
            .collect();
        PieceBasis { slots, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coord(&self, gen: usize, w: &Word) -> Option<usize> {
        let (off, piece) = self.slots[gen].as_ref()?;
        piece.index.get(w).map(|i| off + i)
    }

    /// Every basis element as `(generator, word)`.
    pub fn elements(&self) -> impl Iterator<Item = (usize, &Word)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(g, s)| s.as_ref().map(|(_, p)| (g, p)))
            .flat_map(|(g, p)| p.words.iter().map(move |w| (g, w)))
    }

    /// Coordinates of a module element (one polynomial per generator).
    pub fn coords<F: Field>(&self, elem: &[NcPoly<F>]) -> SparseVec<F::Elem> {
        let mut v: SparseVec<F::Elem> = Vec::new();
        for (g, p) in elem.iter().enumerate() {
            for (w, c) in p.terms() {
                let i = self
                    .coord(g, w)
                    .expect("element lies in this multidegree");
                v.push((i, c.clone()));
            }
        }
        v.sort_by_key(|x| x.0);
        v
    }

    /// Module element from coordinates.
    pub fn element<F: Field>(&self, field: &F, v: &[(usize, F::Elem)]) -> Vec<NcPoly<F>> {
        let mut out = vec![NcPoly::zero(field); self.slots.len()];
        for (i, c) in v {
            let (g, w) = self.locate(*i);
            out[g].add_term(w.clone(), c);
        }
        out
    }

    pub fn locate(&self, i: usize) -> (usize, &Word) {
        for (g, s) in self.slots.iter().enumerate() {
            if let Some((off, p)) = s {
                if i >= *off && i < off + p.len() {
                    return (g, &p.words[i - off]);
                }
            }
        }
        panic!("coordinate {i} out of range")
    }
}

/// Coordinates of `u · row` in the target piece, where `row` is a list of
/// entries indexed by target generator.
pub(crate) fn left_times_row<F: Field>(
    alg: &GradedAlgebra<F>,
    u: &Word,
    row: &[NcPoly<F>],
    target: &PieceBasis,
) -> SparseVec<F::Elem> {
    let mut v: SparseVec<F::Elem> = Vec::new();
    for (k, e) in row.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        for (w, c) in alg.left_mul_word(u, e) {
            let i = target
                .coord(k, &w)
                .expect("products stay in their multidegree");
            v.push((i, c));
        }
    }
    v.sort_by_key(|x| x.0);
    v
}

/// Images of all basis elements of `(source)_W` under a map given by rows.
pub(crate) fn images<F: Field>(
    alg: &GradedAlgebra<F>,
    rows: &[&[NcPoly<F>]],
    source: &PieceBasis,
    target: &PieceBasis,
) -> Vec<SparseVec<F::Elem>> {
    source
        .elements()
        .map(|(g, u)| left_times_row(alg, u, rows[g], target))
        .collect()
}

/// Multidegrees of the source generators of `map`, given those of the
/// target. Fails when a row is zero or mixes multidegrees.
pub(crate) fn source_mdegs<F: Field>(
    alg: &GradedAlgebra<F>,
    map: &FreeModuleMap<F>,
    target: &[MDeg],
) -> Result<Vec<MDeg>, GradingError> {
    let g = alg.grading();
    if g.kind() == GradingKind::Total {
        return Ok(map
            .source()
            .shifts()
            .iter()
            .map(|&s| smallvec::smallvec![s as u16])
            .collect());
    }
    (0..map.num_rows())
        .map(|r| {
            let mut found: Option<MDeg> = None;
            for (c, e) in map.row(r).iter().enumerate() {
                let Some(m) = g.poly_mdeg(e)? else { continue };
                let m = g.concat(&m, &target[c]);
                match &found {
                    Some(f) if *f != m => return Err(GradingError::NotHomogeneous),
                    _ => found = Some(m),
                }
            }
            found.ok_or(GradingError::NotHomogeneous)
        })
        .collect()
}

/// Multidegrees of the generators of every module in a chain of maps
/// ending at `A` (rank one, shift zero). Index 0 is `A` itself. A
/// generator with a zero row takes its multidegree from its column in the
/// next map.
pub(crate) fn chain_mdegs<F: Field>(
    alg: &GradedAlgebra<F>,
    maps: &[FreeModuleMap<F>],
) -> Result<Vec<Vec<MDeg>>, GradingError> {
    let g = alg.grading();
    let base = match maps.first() {
        Some(m) => m.target().shifts().to_vec(),
        None => vec![0],
    };
    if base.iter().any(|&s| s != 0) {
        return Err(GradingError::NotHomogeneous);
    }
    if g.kind() == GradingKind::Total {
        let mut out = vec![base.iter().map(|_| g.unit()).collect::<Vec<_>>()];
        for m in maps {
            out.push(source_mdegs(alg, m, out.last().unwrap())?);
        }
        return Ok(out);
    }
    // entry multidegrees, None for zero entries
    let entry_mdegs: Vec<Vec<Vec<Option<MDeg>>>> = maps
        .iter()
        .map(|m| {
            m.rows()
                .iter()
                .map(|row| row.iter().map(|e| g.poly_mdeg(e)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let mut levels: Vec<Vec<Option<MDeg>>> = vec![base.iter().map(|_| Some(g.unit())).collect()];
    levels.extend(maps.iter().map(|m| vec![None; m.num_rows()]));
    let set = |slot: &mut Option<MDeg>, m: MDeg| -> Result<bool, GradingError> {
        match slot {
            Some(old) if *old != m => Err(GradingError::NotHomogeneous),
            Some(_) => Ok(false),
            None => {
                *slot = Some(m);
                Ok(true)
            }
        }
    };
    loop {
        let mut changed = false;
        for (k, em) in entry_mdegs.iter().enumerate() {
            for (r, row) in em.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    let Some(e) = e else { continue };
                    // row r of P_{k+1} has multidegree e·(column c of P_k)
                    if let Some(t) = levels[k][c].clone() {
                        changed |= set(&mut levels[k + 1][r], g.concat(e, &t))?;
                    } else if let Some(s) = levels[k + 1][r].clone() {
                        let t = g.strip_prefix(&s, e).ok_or(GradingError::NotHomogeneous)?;
                        changed |= set(&mut levels[k][c], t)?;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut out = Vec::with_capacity(levels.len());
    for (k, level) in levels.into_iter().enumerate() {
        let level: Vec<MDeg> = level.into_iter().collect::<Option<_>>().ok_or(GradingError::NotHomogeneous)?;
        // multidegrees must agree with the declared shifts
        if k > 0 {
            let src = maps[k - 1].source();
            if level.iter().enumerate().any(|(j, md)| g.degree(md) != src.shift(j)) {
                return Err(GradingError::NotHomogeneous);
            }
        }
        out.push(level);
    }
    Ok(out)
}
