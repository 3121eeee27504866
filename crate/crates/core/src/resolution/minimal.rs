use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::freealg::{NcPoly, Word};
use crate::gbasis::PowerSeries;
use crate::grading::{GradedAlgebra, MDeg};
use crate::linalg::{kernel, Echelon, Inserted, SparseVec};
use crate::par::ExecMode;
use crate::scalar::Field;

use super::module::{FreeModuleMap, GradedFreeModule};
use super::piece::{images, left_times_row, PieceBasis};
use super::ResolutionError;

const NEW: usize = 1 << (usize::BITS - 1);
const DISCARDED: usize = usize::MAX;

/// A generator of one module of the resolution.
#[derive(Debug, Clone)]
pub struct ResGen<F: Field> {
    pub mdeg: MDeg,
    pub degree: u32,
    /// Image under the differential, one entry per generator of the
    /// previous module.
    pub image: Vec<NcPoly<F>>,
}

/// Row-reduced image of `(P_i)_W` in `(P_{i-1})_W`, remembering which
/// `word·generator` each input was.
#[derive(Debug)]
pub(crate) struct Solver<F: Field> {
    pub echelon: Echelon<F>,
    pub sources: Vec<(usize, Word)>,
    pub target: PieceBasis,
}

impl<F: Field> Solver<F> {
    /// Some `x` in `(P_i)_W` with `d(x) = y`, as one polynomial per
    /// generator of `P_i`.
    pub fn solve(&self, field: &F, y: &[NcPoly<F>], rank: usize) -> Option<Vec<NcPoly<F>>> {
        let v = self.target.coords(y);
        let combo = self.echelon.solve(&v)?;
        let mut x = vec![NcPoly::zero(field); rank];
        for (id, c) in combo {
            let (g, w) = &self.sources[id];
            debug_assert_ne!(*g, DISCARDED);
            x[*g].add_term(w.clone(), &c);
        }
        Some(x)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ResolutionOptions {
    pub mode: ExecMode,
    /// Keep the per-multidegree solvers needed for Yoneda products.
    pub keep_solvers: bool,
}

impl Default for ResolutionOptions {
    fn default() -> Self {
        ResolutionOptions {
            mode: ExecMode::Parallel,
            keep_solvers: false,
        }
    }
}

/// Minimal graded free resolution of the trivial module within bounds.
#[derive(Debug, Clone)]
pub struct Resolution<F: Field> {
    alg: GradedAlgebra<F>,
    imax: usize,
    jmax: u32,
    gens: Vec<Vec<ResGen<F>>>,
    solvers: HashMap<(usize, MDeg), Arc<Solver<F>>>,
    kept_solvers: bool,
}

/// Computes generators of `P_1, ..., P_imax` in every internal degree up to
/// `jmax`. `P_0 = A`.
pub fn minimal_resolution<F: Field>(
    alg: &GradedAlgebra<F>,
    imax: usize,
    jmax: u32,
    opts: ResolutionOptions,
) -> Result<Resolution<F>, ResolutionError> {
    if imax == 0 {
        return Err(ResolutionError::InvalidBound("imax must be at least 1".into()));
    }
    alg.require(jmax)?;
    let g = alg.grading();
    let field = alg.field().clone();
    let cands = g.candidates(jmax);
    let unit = ResGen {
        mdeg: g.unit(),
        degree: 0,
        image: Vec::new(),
    };
    let mut gens: Vec<Vec<ResGen<F>>> = vec![vec![unit]];
    let mut solvers = HashMap::new();

    for i in 1..=imax {
        let prev_mdegs: Vec<MDeg> = gens[i - 1].iter().map(|z| z.mdeg.clone()).collect();
        let prev2_mdegs: Vec<MDeg> = if i >= 2 {
            gens[i - 2].iter().map(|z| z.mdeg.clone()).collect()
        } else {
            Vec::new()
        };
        let prev_rows: Vec<&[NcPoly<F>]> = gens[i - 1].iter().map(|z| z.image.as_slice()).collect();
        let mut cur: Vec<ResGen<F>> = Vec::new();

        let mut start = 0;
        while start < cands.len() {
            let d = g.degree(&cands[start]);
            let mut end = start;
            while end < cands.len() && g.degree(&cands[end]) == d {
                end += 1;
            }
            let group: Vec<MDeg> = cands[start..end].to_vec();
            start = end;
            let found = &cur;
            let results = opts.mode.map(group, |w| {
                let src = PieceBasis::new(alg, &prev_mdegs, &w);
                if src.dim() == 0 {
                    return (w, Vec::new(), None);
                }
                let kern: Vec<SparseVec<F::Elem>> = if i == 1 {
                    (0..src.dim()).map(|k| vec![(k, field.one())]).collect()
                } else {
                    let tgt = PieceBasis::new(alg, &prev2_mdegs, &w);
                    let imgs = images(alg, &prev_rows, &src, &tgt);
                    kernel(&field, tgt.dim(), &imgs)
                };
                let mut ech = Echelon::tracking(&field, src.dim());
                let mut sources: Vec<(usize, Word)> = Vec::new();
                for (zi, z) in found.iter().enumerate() {
                    let Some(u) = g.strip_suffix(&w, &z.mdeg) else { continue };
                    if g.is_unit(&u) {
                        continue;
                    }
                    for a in alg.piece(&u).words.iter() {
                        let v = left_times_row(alg, a, &z.image, &src);
                        let kept = matches!(ech.insert(&v), Inserted::Pivot(_));
                        sources.push((if kept { zi } else { DISCARDED }, a.clone()));
                    }
                }
                let mut new = Vec::new();
                for k in kern {
                    match ech.insert(&k) {
                        Inserted::Pivot(_) => {
                            sources.push((NEW | new.len(), Word::one()));
                            new.push(ResGen {
                                mdeg: w.clone(),
                                degree: d,
                                image: src.element(&field, &k),
                            });
                        }
                        Inserted::Dependent(_) => sources.push((DISCARDED, Word::one())),
                    }
                }
                let solver = Solver {
                    echelon: ech,
                    sources,
                    target: src,
                };
                (w, new, Some(solver))
            });
            for (w, new, solver) in results {
                let base = cur.len();
                cur.extend(new);
                if let (true, Some(mut s)) = (opts.keep_solvers, solver) {
                    for src in s.sources.iter_mut() {
                        if src.0 != DISCARDED && src.0 & NEW != 0 {
                            src.0 = base + (src.0 & !NEW);
                        }
                    }
                    solvers.insert((i, w), Arc::new(s));
                }
            }
        }
        gens.push(cur);
    }
    Ok(Resolution {
        alg: alg.clone(),
        imax,
        jmax,
        gens,
        solvers,
        kept_solvers: opts.keep_solvers,
    })
}

impl<F: Field> Resolution<F> {
    pub fn algebra(&self) -> &GradedAlgebra<F> {
        &self.alg
    }

    pub fn imax(&self) -> usize {
        self.imax
    }

    pub fn jmax(&self) -> u32 {
        self.jmax
    }

    /// Generators of `P_i`; `P_0` has the single unit generator.
    pub fn generators(&self, i: usize) -> &[ResGen<F>] {
        &self.gens[i]
    }

    pub fn rank(&self, i: usize) -> usize {
        self.gens.get(i).map_or(0, |g| g.len())
    }

    pub(crate) fn solver(&self, i: usize, w: &MDeg) -> Option<&Arc<Solver<F>>> {
        self.solvers.get(&(i, w.clone()))
    }

    pub fn has_solvers(&self) -> bool {
        self.kept_solvers
    }

    /// The differential `P_i → P_{i-1}` as a matrix, `1 <= i <= imax`.
    pub fn differential(&self, i: usize) -> FreeModuleMap<F> {
        let source = GradedFreeModule::new(self.gens[i].iter().map(|z| z.degree).collect());
        let target = GradedFreeModule::new(self.gens[i - 1].iter().map(|z| z.degree).collect());
        let rows = self.gens[i].iter().map(|z| z.image.clone()).collect();
        FreeModuleMap::new(source, target, rows).expect("resolution maps respect degrees")
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = vec![vec![0u64; self.jmax as usize + 1]; self.imax + 1];
        for (i, gs) in self.gens.iter().enumerate() {
            for z in gs {
                entries[i][z.degree as usize] += 1;
            }
        }
        let gb = self.alg.gb();
        BettiTable {
            imax: self.imax,
            jmax: self.jmax,
            entries,
            complete: true,
            field: gb.field().spec().to_string(),
            order: gb.order().name().to_string(),
            grading: format!("{:?}", self.alg.grading().kind()).to_lowercase(),
        }
    }
}

/// `b(i,j) = dim Ext^{i,j}(k,k)` for `i <= imax`, `j <= jmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub imax: usize,
    pub jmax: u32,
    /// `entries[i][j]`.
    pub entries: Vec<Vec<u64>>,
    /// Every entry within the bounds is exact.
    pub complete: bool,
    pub field: String,
    pub order: String,
    pub grading: String,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries
            .get(i)
            .and_then(|r| r.get(j as usize))
            .copied()
            .unwrap_or(0)
    }

    /// Total rank of `P_i`.
    pub fn row_sum(&self, i: usize) -> u64 {
        self.entries.get(i).map_or(0, |r| r.iter().sum())
    }

    /// Nonzero cells as `(i, j, b)`.
    pub fn nonzero(&self) -> Vec<(usize, u32, u64)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b != 0 {
                    out.push((i, j as u32, b));
                }
            }
        }
        out
    }

    /// `sum_{i,j} (-1)^i b(i,j) g^j` truncated at `jmax`.
    pub fn euler_series(&self) -> PowerSeries {
        let mut c = vec![0i128; self.jmax as usize + 1];
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                let s = if i % 2 == 0 { 1 } else { -1 };
                c[j] += s * b as i128;
            }
        }
        PowerSeries::new(c)
    }

    /// Aligned table: rows are cohomological degrees, columns internal
    /// degrees, zeros shown as dots.
    pub fn to_text(&self) -> String {
        let cell = |b: u64| if b == 0 { ".".to_string() } else { b.to_string() };
        let width = self
            .entries
            .iter()
            .flatten()
            .map(|&b| cell(b).len())
            .chain(std::iter::once((self.jmax.to_string()).len()))
            .max()
            .unwrap_or(1)
            + 1;
        let label = (self.imax.to_string().len() + 1).max(4);
        let mut s = format!("{:>label$}", "i\\j");
        for j in 0..=self.jmax {
            s.push_str(&format!("{:>width$}", j));
        }
        s.push('\n');
        for (i, row) in self.entries.iter().enumerate() {
            s.push_str(&format!("{:>label$}", format!("{i}:")));
            for &b in row {
                s.push_str(&format!("{:>width$}", cell(b)));
            }
            s.push('\n');
        }
        s
    }

    /// Header `i,0,1,...,jmax` then one line per cohomological degree.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("i");
        for j in 0..=self.jmax {
            s.push_str(&format!(",{j}"));
        }
        s.push('\n');
        for (i, row) in self.entries.iter().enumerate() {
            s.push_str(&i.to_string());
            for b in row {
                s.push_str(&format!(",{b}"));
            }
            s.push('\n');
        }
        s
    }
}
