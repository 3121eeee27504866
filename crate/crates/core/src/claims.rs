//! End-to-end claim suite for the built-in algebras: builds the algebra,
//! its Gröbner basis, resolution and explicit complex, and evaluates each
//! structural claim to pass or fail.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::constructions::{
    b_complex, build_b, build_c, c_complex, c_complex_ranks, c_complex_shifts, BVariant, Blocks, ConstructionError,
};
use crate::freealg::{MonomialOrder, NcPoly, Presentation, Word};
use crate::gbasis::{buchberger_with, invert_series, GbError, GbOptions, PowerSeries};
use crate::grading::GradedAlgebra;
use crate::linalg::{rank, SparseVec};
use crate::par::ExecMode;
use crate::resolution::{
    compare_left_annihilator, koszulity_report, minimal_resolution, verify_complex, verify_exactness,
    verify_minimality, FreeModuleMap, GradedFreeModule, KoszulVerdict, ResolutionError, ResolutionOptions,
};
use crate::scalar::Field;
use crate::yoneda::{generation_profile, YonedaError};

#[derive(Debug, Error)]
pub enum ClaimError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Yoneda(#[from] YonedaError),
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub name: String,
    pub passed: bool,
    /// Informational claims are reported but do not affect the verdict.
    pub required: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub algebra: String,
    pub field: String,
    pub order: String,
    pub imax: usize,
    pub jmax: u32,
    pub claims: Vec<Claim>,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed || !c.required)
    }

    pub fn failures(&self) -> Vec<&Claim> {
        self.claims.iter().filter(|c| c.required && !c.passed).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} over {} ({} order, i <= {}, j <= {})\n",
            self.algebra, self.field, self.order, self.imax, self.jmax
        );
        for c in &self.claims {
            let tag = match (c.passed, c.required) {
                (true, _) => "PASS",
                (false, true) => "FAIL",
                (false, false) => "NOTE",
            };
            s.push_str(&format!("  [{tag}] {}: {}\n", c.name, c.detail));
        }
        s
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub mode: ExecMode,
    /// Internal-degree bound; defaults to `m + 3` for `C(m)` and 8 for `B`.
    pub jmax: Option<u32>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            mode: ExecMode::Parallel,
            jmax: None,
        }
    }
}

struct Suite {
    claims: Vec<Claim>,
}

impl Suite {
    fn add(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.claims.push(Claim {
            name: name.into(),
            passed,
            required: true,
            detail: detail.into(),
        });
    }

    fn note(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.claims.push(Claim {
            name: name.into(),
            passed,
            required: false,
            detail: detail.into(),
        });
    }
}

/// A matrix whose entries all have degree `deg`, as a map to a free module
/// with shifts zero.
pub fn matrix_map<F: Field>(rows: Vec<Vec<NcPoly<F>>>, deg: u32) -> Result<FreeModuleMap<F>, ResolutionError> {
    let cols = rows.first().map_or(0, |r| r.len());
    Ok(FreeModuleMap::new(
        GradedFreeModule::uniform(rows.len(), deg),
        GradedFreeModule::uniform(cols, 0),
        rows,
    )?)
}

/// Whether two lists of polynomials span the same subspace of the free
/// algebra.
pub fn same_span<F: Field>(field: &F, a: &[NcPoly<F>], b: &[NcPoly<F>]) -> bool {
    let mut index: HashMap<Word, usize> = HashMap::new();
    let mut vecs = |ps: &[NcPoly<F>]| -> Vec<SparseVec<F::Elem>> {
        ps.iter()
            .map(|p| {
                let mut v: SparseVec<F::Elem> = p
                    .terms()
                    .map(|(w, c)| {
                        let n = index.len();
                        (*index.entry(w.clone()).or_insert(n), c.clone())
                    })
                    .collect();
                v.sort_by_key(|x| x.0);
                v
            })
            .collect()
    };
    let va = vecs(a);
    let vb = vecs(b);
    let n = index.len();
    let ra = rank(field, n, &va);
    let rb = rank(field, n, &vb);
    let both: Vec<_> = va.into_iter().chain(vb).collect();
    ra == rb && rank(field, n, &both) == ra
}

/// Entries of `λ2 · λ1` computed in the free algebra.
fn products_in_free<F: Field>(field: &F, upper: &FreeModuleMap<F>, lower: &FreeModuleMap<F>) -> Vec<NcPoly<F>> {
    upper
        .rows()
        .iter()
        .map(|row| {
            let mut acc = NcPoly::zero(field);
            for (k, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    acc = acc.add(&e.mul(lower.entry(k, 0)));
                }
            }
            acc
        })
        .collect()
}

/// Dimension of the span of the normal forms of `polys`.
fn span_dim<F: Field>(alg: &GradedAlgebra<F>, polys: &[NcPoly<F>]) -> Result<usize, GbError> {
    let nfs: Vec<NcPoly<F>> = polys.iter().map(|p| alg.gb().normal_form(p)).collect::<Result<_, _>>()?;
    Ok(rank_of_polys(alg.field(), &nfs))
}

fn rank_of_polys<F: Field>(field: &F, ps: &[NcPoly<F>]) -> usize {
    let mut index: HashMap<Word, usize> = HashMap::new();
    let vecs: Vec<SparseVec<F::Elem>> = ps
        .iter()
        .map(|p| {
            let mut v: SparseVec<F::Elem> = p
                .terms()
                .map(|(w, c)| {
                    let n = index.len();
                    (*index.entry(w.clone()).or_insert(n), c.clone())
                })
                .collect();
            v.sort_by_key(|x| x.0);
            v
        })
        .collect();
    rank(field, index.len(), &vecs)
}

fn products<F: Field>(p: &Presentation<F>, left: &[&str], right: &[&str]) -> Vec<NcPoly<F>> {
    let mut out = Vec::new();
    for a in left {
        for b in right {
            out.push(NcPoly::monomial(p.field(), p.word(&[a, b]), p.field().one()));
        }
    }
    out
}

fn build_gb<F: Field>(p: &Presentation<F>, d: u32, mode: ExecMode) -> Result<GradedAlgebra<F>, GbError> {
    let gb = buchberger_with(p, MonomialOrder::DegLex, d, GbOptions { mode, ..Default::default() })?;
    Ok(GradedAlgebra::new(gb))
}

fn annihilator_claim<F: Field>(
    suite: &mut Suite,
    alg: &GradedAlgebra<F>,
    name: &str,
    m: Block<F>,
    deg: u32,
    gens: Block<F>,
    jmax: u32,
    required: bool,
) -> Result<(), ClaimError> {
    let map = matrix_map(m, deg)?;
    let r = compare_left_annihilator(alg, &map, &gens, jmax)?;
    let dims: Vec<String> = r
        .per_degree
        .iter()
        .filter(|(_, a, b)| *a != 0 || *b != 0)
        .map(|(j, a, b)| format!("j={j}: {a}/{b}"))
        .collect();
    let detail = if dims.is_empty() {
        format!("zero through degree {jmax}")
    } else {
        format!("dim ann / dim span per degree: {}", dims.join(", "))
    };
    if required {
        suite.add(name, r.equal, detail);
    } else {
        suite.note(name, r.equal, detail);
    }
    Ok(())
}

type Block<F> = Vec<Vec<NcPoly<F>>>;

fn series_text(s: &PowerSeries) -> String {
    let v: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    v.join(", ")
}

/// All claims for `C(m)`, `m >= 5`.
pub fn check_c<F: Field>(field: &F, m: usize, opts: CheckOptions) -> Result<ClaimReport, ClaimError> {
    let p = build_c(field, m)?;
    let jmax = opts.jmax.unwrap_or(m as u32 + 3);
    let imax = m + 1;
    let mut s = Suite { claims: Vec::new() };

    s.add(
        "generator and relation counts",
        p.num_generators() == 3 * m && p.relations().len() == 3 * m + 4,
        format!("{} generators, {} relations", p.num_generators(), p.relations().len()),
    );

    let alg = build_gb(&p, jmax, opts.mode)?;
    s.add(
        "Groebner basis complete",
        alg.gb().is_complete_at(jmax),
        format!("through degree {jmax}, {} elements", alg.gb().basis().len()),
    );
    let hilbert = alg.gb().hilbert_series(jmax)?;

    let res = minimal_resolution(
        &alg,
        imax,
        jmax,
        ResolutionOptions {
            mode: opts.mode,
            keep_solvers: true,
        },
    )?;
    let betti = res.betti_table();
    let ranks = c_complex_ranks(m);
    let shifts = c_complex_shifts(m);
    let mut expected = vec![vec![0u64; jmax as usize + 1]; imax + 1];
    for i in 0..=m {
        if (shifts[i] as usize) < expected[i].len() {
            expected[i][shifts[i] as usize] = ranks[i] as u64;
        }
    }
    let diffs: Vec<String> = betti
        .nonzero()
        .into_iter()
        .filter(|&(i, j, b)| expected[i][j as usize] != b)
        .map(|(i, j, b)| format!("b({i},{j})={b}"))
        .chain((0..=imax).flat_map(|i| {
            let betti = &betti;
            let expected = &expected;
            (0..=jmax)
                .filter(move |&j| expected[i][j as usize] != 0 && betti.get(i, j) == 0)
                .map(move |j| format!("b({i},{j})=0"))
        }))
        .collect();
    s.add(
        "Betti table equals the ranks and shifts of the explicit complex",
        diffs.is_empty(),
        if diffs.is_empty() {
            format!("nonzero cells {:?}", betti.nonzero())
        } else {
            format!("mismatches: {}", diffs.join(", "))
        },
    );
    s.add(
        format!("b({m},{}) = 1", m + 1),
        betti.get(m, m as u32 + 1) == 1,
        format!("b({m},{}) = {}", m + 1, betti.get(m, m as u32 + 1)),
    );

    let k = koszulity_report(&betti);
    let not_koszul = matches!(k.verdict, KoszulVerdict::NotKoszul { i, j, .. } if i == m && j as usize == m + 1);
    s.add(
        format!("{m}-Koszul and not Koszul"),
        k.m_koszul == m && not_koszul,
        format!("m-Koszul through {}, verdict {:?}", k.m_koszul, k.verdict),
    );
    s.add(
        format!("global dimension {m}"),
        betti.row_sum(m + 1) == 0 && betti.row_sum(m) > 0,
        format!("row {} sum {}, row {m} sum {}", m + 1, betti.row_sum(m + 1), betti.row_sum(m)),
    );
    let ph = betti.euler_series().mul(&hilbert)?;
    s.add(
        "Poincare-Hilbert identity",
        ph.is_one(),
        format!("product {}", series_text(&ph)),
    );

    let cx = c_complex(&p, m)?;
    s.add(
        "relations are the entries of lambda_2 lambda_1",
        same_span(field, &products_in_free(field, &cx.maps[1], &cx.maps[0]), p.relations()),
        "equal spans in the free algebra",
    );
    let cc = verify_complex(&cx.maps, &alg)?;
    s.add(
        "explicit complex: composites vanish",
        cc.ok,
        match cc.failures.first() {
            None => format!("{} composites zero", cc.composites_checked),
            Some(f) => format!(
                "lambda_{} lambda_{} entry ({},{}) = {} [blocks {:?} / {:?}]",
                f.position,
                f.position - 1,
                f.row,
                f.col,
                f.normal_form,
                f.row_blocks,
                f.col_blocks
            ),
        },
    );
    let ex = verify_exactness(&cx.maps, &alg, jmax, opts.mode)?;
    s.add(
        "explicit complex: exact",
        ex.exact,
        match &ex.first_failure {
            None => format!("through degree {jmax}"),
            Some(f) => format!(
                "homology at position {} degree {} (ker {}, im {})",
                f.position, f.degree, f.kernel_dim, f.image_dim
            ),
        },
    );
    s.add("explicit complex: minimal", verify_minimality(&cx.maps), "no degree-zero entries");

    // annihilators
    let b = Blocks::new(&p);
    annihilator_claim(&mut s, &alg, "ann(n) = 0", b.letter("n")?, 1, vec![], jmax, true)?;
    annihilator_claim(&mut s, &alg, "ann(eta) = 0", b.eta()?, 1, vec![], jmax, true)?;
    annihilator_claim(&mut s, &alg, "ann(eta') = 0", b.eta_prime()?, 1, vec![], jmax, true)?;
    annihilator_claim(&mut s, &alg, "ann(alpha) = 0", b.alpha()?, 1, vec![], jmax, true)?;
    annihilator_claim(&mut s, &alg, format!("ann(lambda_{m}) = 0").as_str(), b.top_row()?, 2, vec![], jmax, true)?;
    annihilator_claim(&mut s, &alg, "ann(x2) = rows of gamma'", b.letter("x2")?, 1, b.gamma_prime()?, jmax, true)?;
    annihilator_claim(&mut s, &alg, "ann(beta) = rows of alpha", b.beta()?, 1, b.alpha_prime()?, jmax, true)?;
    annihilator_claim(
        &mut s,
        &alg,
        "ann(delta) = eta",
        b.delta()?,
        1,
        b.matrix(&[&["n", "n", "-n"]])?,
        jmax,
        true,
    )?;
    annihilator_claim(&mut s, &alg, "ann(gamma') = rows of beta'", b.gamma_prime()?, 1, b.beta_prime()?, jmax, true)?;
    annihilator_claim(
        &mut s,
        &alg,
        "ann(beta') = (np, np, -np)",
        b.beta_prime()?,
        1,
        b.matrix(&[&["n*p", "n*p", "-n*p"]])?,
        jmax,
        false,
    )?;
    let d = span_dim(&alg, &products(&p, &["s", "t", "u"], &["v", "w", "x1", "y1", "z1"]))?;
    s.note("S3 S4 spans a 6-dimensional subspace of degree 2", d == 6, format!("dimension {d}"));

    let prof = generation_profile(&res, opts.mode)?;
    let gens = prof.generator_bidegrees();
    s.add(
        format!("Ext algebra generated in bidegrees (1,1) and ({m},{})", m + 1),
        gens == vec![(1, 1), (m, m as u32 + 1)],
        prof.summary(),
    );
    let diag_ok = prof.diagonal.iter().filter(|d| d.0 >= 2 && d.0 < m).all(|d| d.1 == d.2);
    s.add(
        "diagonal Ext spanned by products of Ext^{1,1}",
        diag_ok,
        format!("(i, span, b(i,i)): {:?}", prof.diagonal),
    );

    Ok(ClaimReport {
        algebra: format!("C{m}"),
        field: field.spec().to_string(),
        order: MonomialOrder::DegLex.name().into(),
        imax,
        jmax,
        claims: s.claims,
    })
}

/// All claims for `B` (or its 11-relation variant).
pub fn check_b<F: Field>(field: &F, variant: BVariant, opts: CheckOptions) -> Result<ClaimReport, ClaimError> {
    let p = build_b(field, variant)?;
    let jmax = opts.jmax.unwrap_or(8);
    let imax = 5;
    let mut s = Suite { claims: Vec::new() };
    s.add(
        "generator and relation counts",
        p.num_generators() == 13 && p.relations().len() == 14,
        format!("{} generators, {} relations", p.num_generators(), p.relations().len()),
    );
    let alg = build_gb(&p, jmax, opts.mode)?;
    let hilbert = alg.gb().hilbert_series(jmax)?;
    let closed = invert_series(&PowerSeries::from_polynomial(&[1, -13, 14, -7, 0, 1], jmax as usize), jmax as usize)?;
    s.add(
        "Hilbert series is (1-13g+14g^2-7g^3+g^5)^-1",
        hilbert == closed,
        format!("computed {}; expected {}", series_text(&hilbert), series_text(&closed)),
    );
    let res = minimal_resolution(
        &alg,
        imax,
        jmax,
        ResolutionOptions {
            mode: opts.mode,
            keep_solvers: true,
        },
    )?;
    let betti = res.betti_table();
    let want: Vec<(usize, u32, u64)> = vec![(0, 0, 1), (1, 1, 13), (2, 2, 14), (3, 3, 7), (4, 5, 1)];
    s.add(
        "Betti table is 1, 13, 14, 7 on the diagonal and b(4,5) = 1",
        betti.nonzero() == want,
        format!("nonzero cells {:?}", betti.nonzero()),
    );
    let ph = betti.euler_series().mul(&hilbert)?;
    s.add(
        "Poincare-Hilbert identity",
        ph.is_one(),
        format!("product {}", series_text(&ph)),
    );
    let cx = b_complex(&p)?;
    s.add(
        "relations are the entries of psi_2 psi_1",
        same_span(field, &products_in_free(field, &cx.maps[1], &cx.maps[0]), p.relations()),
        "compared as spans in the free algebra",
    );
    let cc = verify_complex(&cx.maps, &alg)?;
    s.add(
        "explicit complex: composites vanish",
        cc.ok,
        format!("{} composites, {} nonzero entries", cc.composites_checked, cc.failures.len()),
    );
    if cc.ok {
        let ex = verify_exactness(&cx.maps, &alg, jmax, opts.mode)?;
        s.add(
            "explicit complex: exact",
            ex.exact,
            match &ex.first_failure {
                None => format!("through degree {jmax}"),
                Some(f) => format!(
                    "homology at position {} degree {} (ker {}, im {})",
                    f.position, f.degree, f.kernel_dim, f.image_dim
                ),
            },
        );
    } else {
        s.add("explicit complex: exact", false, "not checked: the maps do not form a complex");
    }
    s.add("explicit complex: minimal", verify_minimality(&cx.maps), "no degree-zero entries");
    let d = span_dim(&alg, &{
        let mut v = Vec::new();
        for a in ["p", "q", "r"] {
            for c in ["s", "t", "u"] {
                v.push(NcPoly::monomial(field, p.word(&["n", a, c]), field.one()));
            }
        }
        v
    })?;
    s.note("S1 S2 S3 spans a 1-dimensional subspace of degree 3", d == 1, format!("dimension {d}"));
    let prof = generation_profile(&res, opts.mode)?;
    s.note("Ext algebra generators", true, prof.summary());
    Ok(ClaimReport {
        algebra: match variant {
            BVariant::Full => "B".into(),
            BVariant::Short => "B11".into(),
        },
        field: field.spec().to_string(),
        order: MonomialOrder::DegLex.name().into(),
        imax,
        jmax,
        claims: s.claims,
    })
}
