//! Yoneda products on `Ext_A(k,k)` by lifting cocycles to chain maps over
//! the minimal resolution, and the generation profile of the Ext algebra.
//!
//! Convention: for `e2 ∈ Ext^b` with lift `f_s : P_{b+s} → P_s`, the
//! product `e1·e2` with `e1 ∈ Ext^a` is `e1 ∘ f_a`. Chain maps satisfy
//! `f_s(g)·λ_s = f_{s-1}(g·λ_{b+s})` with no signs.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::freealg::NcPoly;
use crate::gbasis::GbError;
use crate::grading::MDeg;
use crate::linalg::{Echelon, Inserted, SparseVec};
use crate::par::ExecMode;
use crate::resolution::Resolution;
use crate::scalar::Field;

#[derive(Debug, Error)]
pub enum YonedaError {
    #[error("resolution was computed without solvers; rerun with keep_solvers")]
    NoSolvers,
    #[error("bidegree ({i},{j}) lies outside the resolution bounds")]
    OutOfBounds { i: usize, j: u32 },
    #[error("class has {found} coordinates, Ext^({i},{j}) has dimension {expected}")]
    BadClass { i: usize, j: u32, expected: usize, found: usize },
    #[error("lift obstructed at stage {stage}, internal degree {degree}")]
    Obstructed { stage: usize, degree: u32 },
    #[error(transparent)]
    Gb(#[from] GbError),
}

/// An element of `Ext^{i,j}`: coordinates over the degree-`j` generators of
/// `P_i`, in resolution order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtClass<E> {
    pub i: usize,
    pub j: u32,
    pub coords: Vec<E>,
}

/// Indices of the degree-`j` generators of `P_i`.
pub fn slots<F: Field>(res: &Resolution<F>, i: usize, j: u32) -> Vec<usize> {
    if i > res.imax() {
        return Vec::new();
    }
    res.generators(i)
        .iter()
        .enumerate()
        .filter(|(_, g)| g.degree == j)
        .map(|(k, _)| k)
        .collect()
}

impl<E: Clone> ExtClass<E> {
    /// Dual of the `k`-th degree-`j` generator of `P_i`.
    pub fn basis<F: Field<Elem = E>>(res: &Resolution<F>, i: usize, j: u32, k: usize) -> Self {
        let f = res.algebra().field();
        let n = slots(res, i, j).len();
        let coords = (0..n).map(|t| if t == k { f.one() } else { f.zero() }).collect();
        ExtClass { i, j, coords }
    }

    /// The unit of `Ext^{0,0}`.
    pub fn unit<F: Field<Elem = E>>(field: &F) -> Self {
        ExtClass {
            i: 0,
            j: 0,
            coords: vec![field.one()],
        }
    }
}

/// Components `f_0, ..., f_top` of a chain map lifting a class of
/// `Ext^{i,j}`. `maps[s][g]` is the image of generator `g` of `P_{i+s}`,
/// one entry per generator of `P_s`.
#[derive(Debug, Clone)]
pub struct ChainLift<F: Field> {
    pub i: usize,
    pub j: u32,
    pub maps: Vec<Vec<Vec<NcPoly<F>>>>,
}

/// Lift of the dual of one generator, computed one multidegree at a time.
fn lift_generator<F: Field>(
    res: &Resolution<F>,
    b: usize,
    h: usize,
    top: usize,
) -> Result<Vec<Vec<Vec<NcPoly<F>>>>, YonedaError> {
    let alg = res.algebra();
    let g = alg.grading();
    let gb = alg.gb();
    let field = alg.field();
    let w0 = res.generators(b)[h].mdeg.clone();
    let zero = NcPoly::zero(field);
    let mut f: Vec<Vec<Vec<NcPoly<F>>>> = Vec::with_capacity(top + 1);
    f.push(
        (0..res.rank(b))
            .map(|k| vec![if k == h { NcPoly::one(field) } else { zero.clone() }])
            .collect(),
    );
    for s in 1..=top {
        let prev = &f[s - 1];
        let mut cur = Vec::with_capacity(res.rank(b + s));
        for gen in res.generators(b + s) {
            let mut row = vec![zero.clone(); res.rank(s)];
            let Some(v) = g.strip_suffix(&gen.mdeg, &w0) else {
                cur.push(row);
                continue;
            };
            // y = f_{s-1}(gen · λ_{b+s})
            let mut y = vec![zero.clone(); res.rank(s - 1)];
            for (l, c) in gen.image.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, e) in prev[l].iter().enumerate() {
                    if !e.is_zero() {
                        y[k] = y[k].add(&gb.multiply(c, e)?);
                    }
                }
            }
            if y.iter().any(|e| !e.is_zero()) {
                let obstructed = YonedaError::Obstructed {
                    stage: s,
                    degree: gen.degree,
                };
                let solver = res.solver(s, &v).ok_or(obstructed)?;
                row = solver.solve(field, &y, res.rank(s)).ok_or(YonedaError::Obstructed {
                    stage: s,
                    degree: gen.degree,
                })?;
            }
            cur.push(row);
        }
        f.push(cur);
    }
    Ok(f)
}

fn check_bounds<F: Field>(res: &Resolution<F>, i: usize, j: u32) -> Result<(), YonedaError> {
    if !res.has_solvers() {
        return Err(YonedaError::NoSolvers);
    }
    if i > res.imax() || j > res.jmax() {
        return Err(YonedaError::OutOfBounds { i, j });
    }
    Ok(())
}

fn check_class<F: Field>(res: &Resolution<F>, e: &ExtClass<F::Elem>) -> Result<Vec<usize>, YonedaError> {
    check_bounds(res, e.i, e.j)?;
    let sl = slots(res, e.i, e.j);
    if sl.len() != e.coords.len() {
        return Err(YonedaError::BadClass {
            i: e.i,
            j: e.j,
            expected: sl.len(),
            found: e.coords.len(),
        });
    }
    Ok(sl)
}

/// Chain map `f_s : P_{i+s} → P_s`, `0 <= s <= stages`, lifting `e`.
pub fn lift_cocycle<F: Field>(
    e: &ExtClass<F::Elem>,
    res: &Resolution<F>,
    stages: usize,
) -> Result<ChainLift<F>, YonedaError> {
    let sl = check_class(res, e)?;
    if e.i + stages > res.imax() {
        return Err(YonedaError::OutOfBounds {
            i: e.i + stages,
            j: e.j,
        });
    }
    let field = res.algebra().field();
    let zero = NcPoly::zero(field);
    let mut maps: Vec<Vec<Vec<NcPoly<F>>>> = (0..=stages)
        .map(|s| vec![vec![zero.clone(); res.rank(s)]; res.rank(e.i + s)])
        .collect();
    for (k, c) in sl.iter().zip(&e.coords) {
        if field.is_zero(c) {
            continue;
        }
        let part = if e.i == 0 {
            // the unit class lifts to the identity
            (0..=stages)
                .map(|s| {
                    (0..res.rank(s))
                        .map(|g| {
                            (0..res.rank(s))
                                .map(|t| if g == t { NcPoly::one(field) } else { zero.clone() })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        } else {
            lift_generator(res, e.i, *k, stages)?
        };
        for (acc, p) in maps.iter_mut().zip(part) {
            for (ar, pr) in acc.iter_mut().zip(p) {
                for (a, x) in ar.iter_mut().zip(pr) {
                    if !x.is_zero() {
                        *a = a.add(&x.scale(c));
                    }
                }
            }
        }
    }
    Ok(ChainLift {
        i: e.i,
        j: e.j,
        maps,
    })
}

impl<F: Field> ChainLift<F> {
    /// The first stage `s` where `f_s(g)·λ_s != f_{s-1}(g·λ_{i+s})`, if any.
    pub fn check(&self, res: &Resolution<F>) -> Result<Option<usize>, YonedaError> {
        let gb = res.algebra().gb();
        let field = gb.field();
        for s in 1..self.maps.len() {
            for (gi, gen) in res.generators(self.i + s).iter().enumerate() {
                for t in 0..res.rank(s - 1) {
                    let mut lhs = NcPoly::zero(field);
                    for (k, x) in self.maps[s][gi].iter().enumerate() {
                        let d = &res.generators(s)[k].image[t];
                        if !x.is_zero() && !d.is_zero() {
                            lhs = lhs.add(&gb.multiply(x, d)?);
                        }
                    }
                    let mut rhs = NcPoly::zero(field);
                    for (l, c) in gen.image.iter().enumerate() {
                        let y = &self.maps[s - 1][l][t];
                        if !c.is_zero() && !y.is_zero() {
                            rhs = rhs.add(&gb.multiply(c, y)?);
                        }
                    }
                    if !lhs.sub(&rhs).is_zero() {
                        return Ok(Some(s));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Coordinates of `e1 · e2` in `Ext^{i1+i2, j1+j2}`.
pub fn yoneda_product<F: Field>(
    e1: &ExtClass<F::Elem>,
    e2: &ExtClass<F::Elem>,
    res: &Resolution<F>,
) -> Result<ExtClass<F::Elem>, YonedaError> {
    let s1 = check_class(res, e1)?;
    check_class(res, e2)?;
    let (i, j) = (e1.i + e2.i, e1.j + e2.j);
    check_bounds(res, i, j)?;
    let field = res.algebra().field();
    let lift = lift_cocycle(e2, res, e1.i)?;
    let out_slots = slots(res, i, j);
    let coords = out_slots
        .iter()
        .map(|&g| {
            let mut acc = field.zero();
            for (&h1, c) in s1.iter().zip(&e1.coords) {
                let k = constant_term(field, &lift.maps[e1.i][g][h1]);
                acc = field.add(&acc, &field.mul(c, &k));
            }
            acc
        })
        .collect();
    Ok(ExtClass { i, j, coords })
}

fn constant_term<F: Field>(field: &F, p: &NcPoly<F>) -> F::Elem {
    p.terms()
        .find(|(w, _)| w.is_empty())
        .map_or_else(|| field.zero(), |(_, c)| c.clone())
}

/// One cell of the generation profile.
#[derive(Debug, Clone, Serialize)]
pub struct ProfileCell {
    pub i: usize,
    pub j: u32,
    pub betti: u64,
    /// Dimension of the span of products of classes of lower cohomological
    /// degree.
    pub decomposable: u64,
    pub new: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GenerationProfile {
    pub imax: usize,
    pub jmax: u32,
    pub sign_convention: String,
    /// Nonzero cells with `i >= 1`.
    pub cells: Vec<ProfileCell>,
    /// `(i, j, count)` where new algebra generators are needed.
    pub new_generators: Vec<(usize, u32, u64)>,
    /// `(i, dim of the span of i-fold products of Ext^{1,1}, b(i,i))`.
    pub diagonal: Vec<(usize, u64, u64)>,
}

impl GenerationProfile {
    pub fn generator_bidegrees(&self) -> Vec<(usize, u32)> {
        self.new_generators.iter().map(|&(i, j, _)| (i, j)).collect()
    }

    pub fn summary(&self) -> String {
        let gens: Vec<String> = self
            .new_generators
            .iter()
            .map(|(i, j, c)| format!("({i},{j}) x{c}"))
            .collect();
        format!(
            "generated in bidegrees {} (within i <= {}, j <= {})",
            gens.join(", "),
            self.imax,
            self.jmax
        )
    }
}

/// Products `h1* · h*` for all generators `h1` of `P_a`, `a >= 1`, and `h`
/// of `P_b`, as sparse vectors over the generators of `P_{a+b}`.
type ProductTable<E> = BTreeMap<(usize, usize), BTreeMap<(usize, usize), Vec<(usize, E)>>>;

/// For every generator `h` of `P_b`, `b >= 1`, and every `a >= 1` with
/// `a + b <= imax`, the products with duals of generators of `P_a`.
fn all_products<F: Field>(res: &Resolution<F>, mode: ExecMode) -> Result<ProductTable<F::Elem>, YonedaError> {
    let imax = res.imax();
    let g = res.algebra().grading();
    let field = res.algebra().field();
    let items: Vec<(usize, usize)> = (1..imax)
        .flat_map(|b| (0..res.rank(b)).map(move |h| (b, h)))
        .collect();
    let results = mode.map(items, |(b, h)| {
        let top = imax - b;
        let lift = lift_generator(res, b, h, top)?;
        let w0 = &res.generators(b)[h].mdeg;
        let mut out: BTreeMap<(usize, usize), Vec<(usize, F::Elem)>> = BTreeMap::new();
        for a in 1..=top {
            for (gi, gen) in res.generators(a + b).iter().enumerate() {
                let Some(v) = g.strip_suffix(&gen.mdeg, w0) else { continue };
                for (h1, z) in res.generators(a).iter().enumerate() {
                    if z.mdeg != v {
                        continue;
                    }
                    let c = constant_term(field, &lift[a][gi][h1]);
                    if !field.is_zero(&c) {
                        out.entry((a, h1)).or_default().push((gi, c));
                    }
                }
            }
        }
        Ok::<_, YonedaError>(((b, h), out))
    });
    let mut table: ProductTable<F::Elem> = BTreeMap::new();
    for r in results {
        let (key, out) = r?;
        table.insert(key, out);
    }
    Ok(table)
}

/// Which bidegrees of the Ext algebra need new generators, within the
/// bounds of `res`.
pub fn generation_profile<F: Field>(res: &Resolution<F>, mode: ExecMode) -> Result<GenerationProfile, YonedaError> {
    check_bounds(res, res.imax(), res.jmax())?;
    let imax = res.imax();
    let field = res.algebra().field().clone();
    let betti = res.betti_table();
    let products = all_products(res, mode)?;

    // decomposables per (i, mdeg)
    let mut spans: BTreeMap<(usize, MDeg), Echelon<F>> = BTreeMap::new();
    for (&(b, _), per) in &products {
        for (&(a, _), v) in per {
            let i = a + b;
            let md = res.generators(i)[v[0].0].mdeg.clone();
            spans
                .entry((i, md))
                .or_insert_with(|| Echelon::new(&field, res.rank(i)))
                .insert(v);
        }
    }
    let mut decomposable: BTreeMap<(usize, u32), u64> = BTreeMap::new();
    for ((i, md), e) in &spans {
        *decomposable.entry((*i, res.algebra().grading().degree(md))).or_default() += e.rank() as u64;
    }
    let mut cells = Vec::new();
    let mut new_generators = Vec::new();
    for (i, j, b) in betti.nonzero() {
        if i == 0 {
            continue;
        }
        let d = decomposable.get(&(i, j)).copied().unwrap_or(0);
        cells.push(ProfileCell {
            i,
            j,
            betti: b,
            decomposable: d,
            new: b - d,
        });
        if b > d {
            new_generators.push((i, j, b - d));
        }
    }

    // iterated products of Ext^{1,1}
    let mut diagonal = Vec::new();
    let mut current: Vec<SparseVec<F::Elem>> = slots(res, 1, 1).into_iter().map(|k| vec![(k, field.one())]).collect();
    diagonal.push((1, current.len() as u64, betti.get(1, 1)));
    let ones = slots(res, 1, 1);
    for i in 2..=imax {
        let mut ech = Echelon::new(&field, res.rank(i));
        let mut next = Vec::new();
        for v in &current {
            for &h1 in &ones {
                let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
                for (h, c) in v {
                    let Some(per) = products.get(&(i - 1, *h)) else { continue };
                    let Some(prod) = per.get(&(1, h1)) else { continue };
                    for (gi, x) in prod {
                        let t = field.mul(c, x);
                        let e = acc.entry(*gi).or_insert_with(|| field.zero());
                        *e = field.add(e, &t);
                    }
                }
                let w: SparseVec<F::Elem> = acc.into_iter().filter(|(_, x)| !field.is_zero(x)).collect();
                if !w.is_empty() && matches!(ech.insert(&w), Inserted::Pivot(_)) {
                    next.push(w);
                }
            }
        }
        diagonal.push((i, next.len() as u64, betti.get(i, i as u32)));
        current = next;
    }

    Ok(GenerationProfile {
        imax,
        jmax: res.jmax(),
        sign_convention: "plain composition of right-multiplication matrices, no Koszul signs".into(),
        cells,
        new_generators,
        diagonal,
    })
}
