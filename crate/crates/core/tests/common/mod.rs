//! Independent oracles for the integration tests. They use plain sparse
//! elimination mod p and none of the crate's Gröbner, grading or piece code.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use quadalg::freealg::{Letter, NcPoly, Presentation, Word};
use quadalg::gbasis::TruncatedGb;
use quadalg::grading::GradedAlgebra;
use quadalg::resolution::{FreeModuleMap, GradedFreeModule};
use quadalg::scalar::{PrimeField, DEFAULT_PRIME};

pub const P: u64 = DEFAULT_PRIME as u64;

fn inv(a: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % P;
    let mut e = P - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Row echelon form over F_p with sparse rows; each stored row starts
/// with its pivot, normalized to 1.
#[derive(Default)]
pub struct Echelon {
    rows: Vec<Vec<(u32, u64)>>,
    pivot: HashMap<u32, usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<(u32, u64)>] {
        &self.rows
    }

    /// Adds a row already known to be independent and reduced, with a
    /// pivot column no other row uses.
    fn push_pivot_row(&mut self, row: Vec<(u32, u64)>) {
        self.pivot.insert(row[0].0, self.rows.len());
        self.rows.push(row);
    }

    /// Returns true when `v` was independent of the rows so far.
    pub fn insert(&mut self, v: impl IntoIterator<Item = (u32, u64)>) -> bool {
        let mut w: BTreeMap<u32, u64> = BTreeMap::new();
        for (c, x) in v {
            let e = w.entry(c).or_insert(0);
            *e = (*e + x) % P;
        }
        w.retain(|_, x| *x != 0);
        loop {
            let Some((&c, &x)) = w.iter().next() else { return false };
            let Some(&r) = self.pivot.get(&c) else { break };
            for &(col, y) in &self.rows[r] {
                let e = w.entry(col).or_insert(0);
                *e = (*e + P - x * y % P) % P;
                if *e == 0 {
                    w.remove(&col);
                }
            }
        }
        let lead = *w.values().next().unwrap();
        let s = inv(lead);
        let row: Vec<(u32, u64)> = w.into_iter().map(|(c, x)| (c, x * s % P)).collect();
        self.push_pivot_row(row);
        true
    }
}

/// `dim A_d` for a presentation with degree-one generators and quadratic
/// relations, from `I_d = V·I_{d-1} + R·V^{d-2}` split by class words.
/// Classes are the finest partition of the generators that makes every
/// relation homogeneous position by position.
pub struct IdealOracle {
    members: Vec<Vec<Letter>>,
    pos: Vec<usize>,
    class_of: Vec<usize>,
    /// (class pair, terms (a, b, coefficient))
    rels: Vec<((usize, usize), Vec<(Letter, Letter, u64)>)>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

impl IdealOracle {
    pub fn new(p: &Presentation<PrimeField>) -> Self {
        let n = p.num_generators();
        assert!(p.degrees().iter().all(|&d| d == 1));
        let mut parent: Vec<usize> = (0..n).collect();
        let mut rels = Vec::new();
        for r in p.relations() {
            let terms: Vec<(Letter, Letter, u64)> = r
                .terms()
                .map(|(w, c)| {
                    let l = w.letters();
                    assert_eq!(l.len(), 2, "quadratic relations only");
                    (l[0], l[1], *c as u64)
                })
                .collect();
            for t in &terms[1..] {
                for (a, b) in [(t.0, terms[0].0), (t.1, terms[0].1)] {
                    let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
                    parent[ra] = rb;
                }
            }
            rels.push(terms);
        }
        let mut roots: BTreeMap<usize, usize> = BTreeMap::new();
        let mut class_of = vec![0; n];
        let mut members: Vec<Vec<Letter>> = Vec::new();
        let mut pos = vec![0; n];
        for x in 0..n {
            let r = find(&mut parent, x);
            let k = *roots.entry(r).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            class_of[x] = k;
            pos[x] = members[k].len();
            members[k].push(x as Letter);
        }
        let rels = rels
            .into_iter()
            .map(|t| ((class_of[t[0].0 as usize], class_of[t[0].1 as usize]), t))
            .collect();
        IdealOracle {
            members,
            pos,
            class_of,
            rels,
        }
    }

    fn size(&self, w: &[usize]) -> u32 {
        w.iter().map(|&c| self.members[c].len() as u32).product()
    }

    /// `dim A_d` for `0 <= d <= dmax`.
    pub fn dims(&self, dmax: usize) -> Vec<u128> {
        let k = self.members.len();
        let mut out = vec![1u128];
        if dmax >= 1 {
            out.push(self.class_of.len() as u128);
        }
        let mut prev: HashMap<Vec<usize>, Echelon> = HashMap::new();
        for d in 2..=dmax {
            let mut cur: HashMap<Vec<usize>, Echelon> = HashMap::new();
            let mut dim = 0u128;
            let mut w = vec![0usize; d];
            loop {
                let e = self.piece(&w, &prev);
                dim += (self.size(&w) as usize - e.rank()) as u128;
                if d < dmax && e.rank() > 0 {
                    cur.insert(w.clone(), e);
                }
                // next class word
                let mut i = d;
                while i > 0 {
                    i -= 1;
                    w[i] += 1;
                    if w[i] < k {
                        break;
                    }
                    w[i] = 0;
                }
                if w.iter().all(|&c| c == 0) {
                    break;
                }
            }
            out.push(dim);
            prev = cur;
        }
        out
    }

    fn piece(&self, w: &[usize], prev: &HashMap<Vec<usize>, Echelon>) -> Echelon {
        let mut e = Echelon::default();
        let tail = self.size(&w[1..]);
        // x · I_{w[1..]}: already independent, pivots shifted per letter
        if let Some(sub) = prev.get(&w[1..]) {
            for i0 in 0..self.members[w[0]].len() as u32 {
                for row in sub.rows() {
                    e.push_pivot_row(row.iter().map(|&(c, x)| (i0 * tail + c, x)).collect());
                }
            }
        }
        let tail2 = self.size(&w[2..]);
        let c1 = self.members[w[1]].len() as u32;
        for ((a, b), terms) in &self.rels {
            if (*a, *b) != (w[0], w[1]) {
                continue;
            }
            for v in 0..tail2 {
                let row: Vec<(u32, u64)> = terms
                    .iter()
                    .map(|&(x, y, c)| {
                        let i = self.pos[x as usize] as u32 * c1 + self.pos[y as usize] as u32;
                        (i * tail2 + v, c)
                    })
                    .collect();
                e.insert(row);
            }
        }
        e
    }
}

/// Dimension of `{x in (source)_j : x·M = 0}` by building the full matrix
/// of right multiplication by `M` on the normal-word basis of degree `j`,
/// with products reduced by the Gröbner basis.
pub fn brute_kernel_dim(f: &FreeModuleMap<PrimeField>, gb: &TruncatedGb<PrimeField>, j: u32) -> usize {
    let field = gb.field();
    let mut cols: HashMap<(usize, Word), u32> = HashMap::new();
    let mut n = 0usize;
    let mut e = Echelon::default();
    for (k, row) in f.rows().iter().enumerate() {
        let s = f.source().shift(k);
        if s > j {
            continue;
        }
        for u in gb.normal_words(j - s).unwrap() {
            n += 1;
            let mut v: Vec<(u32, u64)> = Vec::new();
            for (c, entry) in row.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let prod = gb
                    .normal_form(&NcPoly::monomial(field, u.clone(), 1).mul(entry))
                    .unwrap();
                for (w, x) in prod.terms() {
                    let next = cols.len() as u32;
                    let idx = *cols.entry((c, w.clone())).or_insert(next);
                    v.push((idx, *x as u64));
                }
            }
            e.insert(v);
        }
    }
    n - e.rank()
}

/// A random map `P -> A^2` over `alg`. With `graded`, every row has a
/// single class word so the multigraded path is used.
pub fn random_map(alg: &GradedAlgebra<PrimeField>, rng: &mut ChaCha8Rng, graded: bool) -> FreeModuleMap<PrimeField> {
    let f = alg.field();
    let gbasis = alg.gb();
    let shifts: Vec<u32> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(1..=2)).collect();
    let cols = 2;
    let mut rows = Vec::new();
    for &s in &shifts {
        let words = gbasis.normal_words(s).unwrap();
        let pool = if graded {
            let w = &words[rng.gen_range(0..words.len())];
            alg.piece(&alg.grading().word_mdeg(w)).words.clone()
        } else {
            words
        };
        let row: Vec<NcPoly<PrimeField>> = (0..cols)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    return NcPoly::zero(f);
                }
                let terms = (0..rng.gen_range(1..=3)).map(|_| {
                    let w = pool[rng.gen_range(0..pool.len())].clone();
                    (w, rng.gen_range(1..32003u32))
                });
                NcPoly::from_terms(f, terms)
            })
            .collect();
        rows.push(row);
    }
    FreeModuleMap::new(GradedFreeModule::new(shifts), GradedFreeModule::uniform(cols, 0), rows).unwrap()
}
