use std::collections::BTreeMap;

use serde::Serialize;

use crate::freealg::NcPoly;
use crate::grading::{GradedAlgebra, GradingKind, MDeg};
use crate::linalg::{kernel, rank, Echelon};
use crate::par::ExecMode;
use crate::scalar::Field;

use super::module::{FreeModuleMap, MapError};
use super::piece::{chain_mdegs, images, left_times_row, source_mdegs, PieceBasis};
use super::ResolutionError;

/// A nonzero entry of a composite `λ_i λ_{i-1}`.
#[derive(Debug, Clone, Serialize)]
pub struct CompositeFailure {
    /// `i` for the composite of map `i` followed by map `i-1`.
    pub position: usize,
    pub row: usize,
    pub col: usize,
    pub normal_form: String,
    /// Blocks of map `i` meeting the row.
    pub row_blocks: Vec<String>,
    /// Blocks of map `i-1` meeting the column.
    pub col_blocks: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexCertificate {
    pub ok: bool,
    pub composites_checked: usize,
    pub failures: Vec<CompositeFailure>,
}

/// Checks that consecutive maps compose to zero modulo the ideal. `maps[0]`
/// is `P_1 → P_0`.
pub fn verify_complex<F: Field>(
    maps: &[FreeModuleMap<F>],
    alg: &GradedAlgebra<F>,
) -> Result<ComplexCertificate, ResolutionError> {
    let gb = alg.gb();
    let names = gb.presentation().names();
    let mut failures = Vec::new();
    for i in 1..maps.len() {
        let (lower, upper) = (&maps[i - 1], &maps[i]);
        if upper.num_cols() != lower.num_rows() {
            return Err(MapError::NotComposable {
                index: i + 1,
                expected: lower.num_rows(),
                found: upper.num_cols(),
            }
            .into());
        }
        let d = upper.source().shifts().iter().copied().max().unwrap_or(0);
        alg.require(d)?;
        let prod = upper.compose(lower, gb)?;
        for (r, row) in prod.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    failures.push(CompositeFailure {
                        position: i + 1,
                        row: r,
                        col: c,
                        normal_form: e.format(names),
                        row_blocks: upper.blocks_in_row(r).into_iter().map(String::from).collect(),
                        col_blocks: lower.blocks_in_col(c).into_iter().map(String::from).collect(),
                    });
                }
            }
        }
    }
    Ok(ComplexCertificate {
        ok: failures.is_empty(),
        composites_checked: maps.len().saturating_sub(1),
        failures,
    })
}

/// No entry of any map has a degree-zero term.
pub fn verify_minimality<F: Field>(maps: &[FreeModuleMap<F>]) -> bool {
    maps.iter().all(|m| m.is_minimal())
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactnessFailure {
    /// Homology is nonzero at `P_position`.
    pub position: usize,
    pub degree: u32,
    pub multidegree: String,
    pub kernel_dim: usize,
    pub image_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactnessCertificate {
    pub exact: bool,
    pub jmax: u32,
    pub grading: String,
    pub multidegrees_checked: usize,
    /// `(position, degree) -> (dim ker, dim im)` summed over the checked
    /// multidegrees.
    pub dims: BTreeMap<String, (usize, usize)>,
    pub first_failure: Option<ExactnessFailure>,
}

/// Checks `ker(λ_i) = im(λ_{i+1})` in every internal degree up to `jmax`,
/// including `ker(augmentation) = im(λ_1)` and injectivity of the last map.
pub fn verify_exactness<F: Field>(
    maps: &[FreeModuleMap<F>],
    alg: &GradedAlgebra<F>,
    jmax: u32,
    mode: ExecMode,
) -> Result<ExactnessCertificate, ResolutionError> {
    alg.require(jmax)?;
    let (alg, mdegs) = graded_chain(maps, alg)?;
    exactness_with(maps, &alg, &mdegs, jmax, mode)
}

/// Exactness check for maps homogeneous with respect to the given
/// generator multidegrees, `mdegs[i]` for the generators of `P_i`.
pub(crate) fn exactness_with<F: Field>(
    maps: &[FreeModuleMap<F>],
    alg: &GradedAlgebra<F>,
    mdegs: &[Vec<MDeg>],
    jmax: u32,
    mode: ExecMode,
) -> Result<ExactnessCertificate, ResolutionError> {
    let g = alg.grading();
    let field = alg.field().clone();
    let ws: Vec<MDeg> = g.candidates(jmax);
    let n = maps.len();
    // per multidegree: dim of P_i and rank of λ_i (rank[0] unused)
    let per_w = mode.map(ws.clone(), |w| {
        let bases: Vec<PieceBasis> = mdegs.iter().map(|m| PieceBasis::new(alg, m, &w)).collect();
        let mut ranks = vec![0usize; n + 1];
        for i in 1..=n {
            if bases[i].dim() == 0 {
                continue;
            }
            let rows: Vec<&[NcPoly<F>]> = maps[i - 1].rows().iter().map(|r| r.as_slice()).collect();
            let imgs = images(alg, &rows, &bases[i], &bases[i - 1]);
            ranks[i] = rank(&field, bases[i - 1].dim(), &imgs);
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.dim()).collect();
        (dims, ranks)
    });
    let mut dims: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut first_failure: Option<ExactnessFailure> = None;
    for (w, (pdims, ranks)) in ws.iter().zip(per_w) {
        let j = g.degree(w);
        for i in 0..=n {
            // the augmentation kills all of P_0 in positive degree
            let ker = if i == 0 { pdims[0] } else { pdims[i] - ranks[i] };
            let im = if i < n { ranks[i + 1] } else { 0 };
            let e = dims.entry(format!("{i},{j}")).or_default();
            e.0 += ker;
            e.1 += im;
            if ker != im && first_failure.as_ref().is_none_or(|f| (i, j) < (f.position, f.degree)) {
                first_failure = Some(ExactnessFailure {
                    position: i,
                    degree: j,
                    multidegree: g.describe(w),
                    kernel_dim: ker,
                    image_dim: im,
                });
            }
        }
    }
    Ok(ExactnessCertificate {
        exact: first_failure.is_none(),
        jmax,
        grading: format!("{:?}", g.kind()).to_lowercase(),
        multidegrees_checked: ws.len(),
        dims,
        first_failure,
    })
}

/// The algebra to use for a chain, with generator multidegrees. Falls back
/// to the internal-degree grading when the maps do not respect the class
/// grading or place generators outside the candidate multidegrees.
pub(crate) fn graded_chain<F: Field>(
    maps: &[FreeModuleMap<F>],
    alg: &GradedAlgebra<F>,
) -> Result<(GradedAlgebra<F>, Vec<Vec<MDeg>>), ResolutionError> {
    if alg.grading().kind() == GradingKind::Classes {
        if let Ok(m) = chain_mdegs(alg, maps) {
            if m.iter().flatten().all(|w| alg.grading().is_unit(w) || alg.grading().is_candidate(w)) {
                return Ok((alg.clone(), m));
            }
        }
    }
    let coarse = alg.coarsened();
    let m = chain_mdegs(&coarse, maps).map_err(|_| ResolutionError::NotAChain)?;
    Ok((coarse, m))
}

/// Basis of `{x in (source)_j : x·M = 0}`, one polynomial per source
/// generator. The target generators of `f` must all have shift zero or
/// the computation uses the internal-degree grading.
pub fn graded_kernel<F: Field>(
    f: &FreeModuleMap<F>,
    alg: &GradedAlgebra<F>,
    j: u32,
) -> Result<Vec<Vec<NcPoly<F>>>, ResolutionError> {
    alg.require(j)?;
    let (alg, src_m, tgt_m) = graded_map(f, alg);
    let g = alg.grading();
    let field = alg.field().clone();
    let rows: Vec<&[NcPoly<F>]> = f.rows().iter().map(|r| r.as_slice()).collect();
    let mut out = Vec::new();
    for w in multidegrees_of_degree(&alg, &src_m, j) {
        let src = PieceBasis::new(&alg, &src_m, &w);
        if src.dim() == 0 {
            continue;
        }
        let tgt = PieceBasis::new(&alg, &tgt_m, &w);
        let imgs = images(&alg, &rows, &src, &tgt);
        for rel in kernel(&field, tgt.dim(), &imgs) {
            out.push(src.element(&field, &rel));
        }
        let _ = g;
    }
    Ok(out)
}

/// Multidegrees `U·m` of internal degree `j` for the given generator
/// multidegrees `m`.
fn multidegrees_of_degree<F: Field>(alg: &GradedAlgebra<F>, gens: &[MDeg], j: u32) -> Vec<MDeg> {
    let g = alg.grading();
    let mut out: Vec<MDeg> = Vec::new();
    for m in gens {
        let dm = g.degree(m);
        if dm > j {
            continue;
        }
        for u in g.all_of_degree(j - dm) {
            let w = g.concat(&u, m);
            if !out.contains(&w) {
                out.push(w);
            }
        }
    }
    g.sort(&mut out);
    out
}

fn graded_map<F: Field>(f: &FreeModuleMap<F>, alg: &GradedAlgebra<F>) -> (GradedAlgebra<F>, Vec<MDeg>, Vec<MDeg>) {
    if alg.grading().kind() == GradingKind::Classes && f.target().shifts().iter().all(|&s| s == 0) {
        let tgt: Vec<MDeg> = vec![alg.grading().unit(); f.num_cols()];
        if let Ok(src) = source_mdegs(alg, f, &tgt) {
            return (alg.clone(), src, tgt);
        }
    }
    let coarse = alg.coarsened();
    let tgt = f.target().shifts().iter().map(|&s| smallvec::smallvec![s as u16]).collect();
    let src = f.source().shifts().iter().map(|&s| smallvec::smallvec![s as u16]).collect();
    (coarse, src, tgt)
}

/// Per-degree comparison of a left annihilator with a proposed generating
/// set.
#[derive(Debug, Clone, Serialize)]
pub struct AnnihilatorReport {
    pub equal: bool,
    /// Every proposed generator annihilates the matrix.
    pub generators_annihilate: bool,
    /// `(degree, dim of annihilator, dim of span of generators)`.
    pub per_degree: Vec<(u32, usize, usize)>,
    pub grading: String,
}

/// Compares the left annihilator of the matrix `m` (rows of length `cols`,
/// target shifts zero) with the left submodule generated by `gens` (row
/// vectors over the same source), in every internal degree up to `jmax`.
/// With the class grading only candidate multidegrees are examined; the
/// rest follow by the tensor factorization.
pub fn compare_left_annihilator<F: Field>(
    alg: &GradedAlgebra<F>,
    m: &FreeModuleMap<F>,
    gens: &[Vec<NcPoly<F>>],
    jmax: u32,
) -> Result<AnnihilatorReport, ResolutionError> {
    alg.require(jmax)?;
    let (calg, src_m, tgt_m) = graded_map(m, alg);
    // multidegrees of the proposed generators
    let mut gen_m: Vec<Option<MDeg>> = Vec::new();
    let mut use_coarse = calg.grading().kind() == GradingKind::Total;
    for v in gens {
        let mut found: Option<MDeg> = None;
        for (k, e) in v.iter().enumerate() {
            match calg.grading().poly_mdeg(e) {
                Ok(Some(md)) => {
                    let w = calg.grading().concat(&md, &src_m[k]);
                    if found.as_ref().is_some_and(|f| *f != w) {
                        use_coarse = true;
                    }
                    found = Some(w);
                }
                Ok(None) => {}
                Err(_) => use_coarse = true,
            }
        }
        gen_m.push(found);
    }
    let all_candidates = src_m
        .iter()
        .chain(gen_m.iter().flatten())
        .all(|w| calg.grading().is_candidate(w));
    let (calg, src_m, tgt_m, gen_m) = if use_coarse || !all_candidates {
        let coarse = alg.coarsened();
        let src: Vec<MDeg> = m.source().shifts().iter().map(|&s| smallvec::smallvec![s as u16]).collect();
        let tgt: Vec<MDeg> = m.target().shifts().iter().map(|&s| smallvec::smallvec![s as u16]).collect();
        let gm = gens
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .find(|(_, e)| !e.is_zero())
                    .map(|(k, e)| {
                        let d = e.max_degree().unwrap() + m.source().shift(k);
                        smallvec::smallvec![d as u16]
                    })
            })
            .collect();
        (coarse, src, tgt, gm)
    } else {
        (calg, src_m, tgt_m, gen_m)
    };
    let g = calg.grading();
    let field = calg.field().clone();
    let rows: Vec<&[NcPoly<F>]> = m.rows().iter().map(|r| r.as_slice()).collect();
    let mut per: BTreeMap<u32, (usize, usize)> = (1..=jmax).map(|j| (j, (0, 0))).collect();
    let mut equal = true;
    let mut annihilate = true;
    for w in g.candidates(jmax) {
        let src = PieceBasis::new(&calg, &src_m, &w);
        if src.dim() == 0 {
            continue;
        }
        let tgt = PieceBasis::new(&calg, &tgt_m, &w);
        let imgs = images(&calg, &rows, &src, &tgt);
        let ker = kernel(&field, tgt.dim(), &imgs);
        let mut kech = Echelon::new(&field, src.dim());
        for k in &ker {
            kech.insert(k);
        }
        let mut span = Echelon::new(&field, src.dim());
        for (v, vm) in gens.iter().zip(&gen_m) {
            let Some(vm) = vm else { continue };
            let Some(u) = g.strip_suffix(&w, vm) else { continue };
            for a in calg.piece(&u).words.iter() {
                let x = left_times_row(&calg, a, v, &src);
                if !kech.contains(&x) {
                    annihilate = false;
                }
                span.insert(&x);
            }
        }
        let e = per.get_mut(&g.degree(&w)).unwrap();
        e.0 += ker.len();
        e.1 += span.rank();
        if span.rank() != ker.len() {
            equal = false;
        }
    }
    Ok(AnnihilatorReport {
        equal: equal && annihilate,
        generators_annihilate: annihilate,
        per_degree: per.into_iter().map(|(j, (a, b))| (j, a, b)).collect(),
        grading: format!("{:?}", g.kind()).to_lowercase(),
    })
}
