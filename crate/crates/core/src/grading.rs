//! Multigradings finer than the internal degree.
//!
//! When every relation has all its terms of one length, the generators can
//! be split into classes so that every term of every relation has the same
//! sequence of classes. The algebra is then graded by the free monoid on the
//! classes, and so is every free module over it whose maps respect that
//! grading. Each graded piece is small, and pieces factor: if two adjacent
//! classes never meet inside a leading word of the Gröbner basis, normal
//! words split there and the whole complex in that multidegree is `A_U`
//! tensored with the complex in the part after the split. Only class words
//! without such a split ("candidates") can carry new syzygies.
//!
//! When the relations do not allow classes, the grading falls back to the
//! internal degree alone and every degree is a candidate.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use smallvec::SmallVec;
use thiserror::Error;

use crate::freealg::{Letter, NcPoly, Word};
use crate::gbasis::{GbError, TruncatedGb};
use crate::scalar::Field;

/// A multidegree: a class word, or a one-element internal degree in the
/// fallback grading.
pub type MDeg = SmallVec<[u16; 16]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("polynomial is not homogeneous for the multigrading")]
    NotHomogeneous,
    #[error(transparent)]
    Gb(#[from] GbError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradingKind {
    /// Graded by words in generator classes.
    Classes,
    /// Graded by internal degree only.
    Total,
}

#[derive(Debug, Clone)]
pub struct Grading {
    kind: GradingKind,
    degrees: Vec<u32>,
    class_of: Vec<u16>,
    members: Vec<Vec<Letter>>,
    class_deg: Vec<u32>,
    active: Vec<Vec<bool>>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

impl Grading {
    /// The finest class grading the relations allow, or the internal-degree
    /// grading when there is none.
    pub fn fine<F: Field>(gb: &TruncatedGb<F>) -> Self {
        let p = gb.presentation();
        let n = p.num_generators();
        let degrees = p.degrees().to_vec();
        let mut parent: Vec<usize> = (0..n).collect();
        for r in p.relations() {
            let mut terms = r.terms().map(|(w, _)| w.letters());
            let first = terms.next().expect("relations are nonzero");
            for t in terms {
                if t.len() != first.len() {
                    return Self::total(degrees);
                }
                for (a, b) in first.iter().zip(t) {
                    let (ra, rb) = (find(&mut parent, *a as usize), find(&mut parent, *b as usize));
                    parent[ra] = rb;
                }
            }
        }
        // classes numbered by first member in declaration order
        let mut id_of_root: HashMap<usize, u16> = HashMap::new();
        let mut class_of = vec![0u16; n];
        let mut members: Vec<Vec<Letter>> = Vec::new();
        let mut class_deg: Vec<u32> = Vec::new();
        for l in 0..n {
            let root = find(&mut parent, l);
            let id = *id_of_root.entry(root).or_insert_with(|| {
                members.push(Vec::new());
                class_deg.push(degrees[l]);
                (members.len() - 1) as u16
            });
            if class_deg[id as usize] != degrees[l] {
                return Self::total(degrees);
            }
            class_of[l] = id;
            members[id as usize].push(l as Letter);
        }
        let k = members.len();
        let mut active = vec![vec![false; k]; k];
        for w in gb.leading_words() {
            for pair in w.letters().windows(2) {
                active[class_of[pair[0] as usize] as usize][class_of[pair[1] as usize] as usize] = true;
            }
        }
        Grading {
            kind: GradingKind::Classes,
            degrees,
            class_of,
            members,
            class_deg,
            active,
        }
    }

    /// Grading by internal degree only.
    pub fn total(degrees: Vec<u32>) -> Self {
        let n = degrees.len();
        Grading {
            kind: GradingKind::Total,
            degrees,
            class_of: vec![0; n],
            members: vec![(0..n as Letter).collect()],
            class_deg: vec![],
            active: vec![vec![true]],
        }
    }

    pub fn kind(&self) -> GradingKind {
        self.kind
    }

    pub fn num_classes(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self, class: u16) -> &[Letter] {
        &self.members[class as usize]
    }

    pub fn class_of(&self, l: Letter) -> u16 {
        self.class_of[l as usize]
    }

    pub fn is_active(&self, a: u16, b: u16) -> bool {
        self.active[a as usize][b as usize]
    }

    pub fn unit(&self) -> MDeg {
        match self.kind {
            GradingKind::Classes => MDeg::new(),
            GradingKind::Total => smallvec::smallvec![0],
        }
    }

    pub fn is_unit(&self, m: &MDeg) -> bool {
        self.degree(m) == 0
    }

    pub fn word_mdeg(&self, w: &Word) -> MDeg {
        match self.kind {
            GradingKind::Classes => w.letters().iter().map(|&l| self.class_of[l as usize]).collect(),
            GradingKind::Total => smallvec::smallvec![w.degree() as u16],
        }
    }

    /// Multidegree of a nonzero homogeneous polynomial; `None` for zero.
    pub fn poly_mdeg<F: Field>(&self, p: &NcPoly<F>) -> Result<Option<MDeg>, GradingError> {
        let mut it = p.terms().map(|(w, _)| self.word_mdeg(w));
        let Some(first) = it.next() else {
            return Ok(None);
        };
        if it.any(|m| m != first) {
            return Err(GradingError::NotHomogeneous);
        }
        Ok(Some(first))
    }

    pub fn degree(&self, m: &MDeg) -> u32 {
        match self.kind {
            GradingKind::Classes => m.iter().map(|&c| self.class_deg[c as usize]).sum(),
            GradingKind::Total => m[0] as u32,
        }
    }

    pub fn concat(&self, a: &MDeg, b: &MDeg) -> MDeg {
        match self.kind {
            GradingKind::Classes => a.iter().chain(b.iter()).copied().collect(),
            GradingKind::Total => smallvec::smallvec![a[0] + b[0]],
        }
    }

    /// `U` with `w = U·suffix`, if `suffix` ends `w`.
    pub fn strip_suffix(&self, w: &MDeg, suffix: &MDeg) -> Option<MDeg> {
        match self.kind {
            GradingKind::Classes => {
                if suffix.len() <= w.len() && w[w.len() - suffix.len()..] == suffix[..] {
                    Some(w[..w.len() - suffix.len()].iter().copied().collect())
                } else {
                    None
                }
            }
            GradingKind::Total => w[0].checked_sub(suffix[0]).map(|d| smallvec::smallvec![d]),
        }
    }

    /// `V` with `w = prefix·V`, if `prefix` starts `w`.
    pub fn strip_prefix(&self, w: &MDeg, prefix: &MDeg) -> Option<MDeg> {
        match self.kind {
            GradingKind::Classes => w.strip_prefix(&prefix[..]).map(|v| v.iter().copied().collect()),
            GradingKind::Total => w[0].checked_sub(prefix[0]).map(|d| smallvec::smallvec![d]),
        }
    }

    /// No adjacent pair of classes that leading words never contain.
    pub fn is_candidate(&self, m: &MDeg) -> bool {
        match self.kind {
            GradingKind::Classes => m.windows(2).all(|p| self.is_active(p[0], p[1])),
            GradingKind::Total => true,
        }
    }

    /// Candidate multidegrees of positive degree at most `max_deg`, by
    /// increasing degree, then length, then class sequence.
    pub fn candidates(&self, max_deg: u32) -> Vec<MDeg> {
        let mut out = Vec::new();
        match self.kind {
            GradingKind::Total => {
                for d in 1..=max_deg {
                    out.push(smallvec::smallvec![d as u16]);
                }
            }
            GradingKind::Classes => {
                let mut stack: Vec<MDeg> = (0..self.num_classes() as u16)
                    .filter(|&c| self.class_deg[c as usize] <= max_deg)
                    .map(|c| smallvec::smallvec![c])
                    .collect();
                while let Some(m) = stack.pop() {
                    let d = self.degree(&m);
                    let last = *m.last().unwrap();
                    for c in 0..self.num_classes() as u16 {
                        if self.is_active(last, c) && d + self.class_deg[c as usize] <= max_deg {
                            let mut next = m.clone();
                            next.push(c);
                            stack.push(next);
                        }
                    }
                    out.push(m);
                }
            }
        }
        self.sort(&mut out);
        out
    }

    /// All multidegrees of degree exactly `d` (candidates or not).
    pub fn all_of_degree(&self, d: u32) -> Vec<MDeg> {
        match self.kind {
            GradingKind::Total => vec![smallvec::smallvec![d as u16]],
            GradingKind::Classes => {
                let mut out = Vec::new();
                let mut cur = MDeg::new();
                self.extend_all(d, &mut cur, &mut out);
                self.sort(&mut out);
                out
            }
        }
    }

    fn extend_all(&self, rem: u32, cur: &mut MDeg, out: &mut Vec<MDeg>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for c in 0..self.num_classes() as u16 {
            let cd = self.class_deg[c as usize];
            if cd <= rem {
                cur.push(c);
                self.extend_all(rem - cd, cur, out);
                cur.pop();
            }
        }
    }

    pub fn sort(&self, ms: &mut [MDeg]) {
        ms.sort_by(|a, b| {
            self.degree(a)
                .cmp(&self.degree(b))
                .then(a.len().cmp(&b.len()))
                .then(a.cmp(b))
        });
    }

    /// Human-readable form such as `[0 1 2]` or `deg 4`.
    pub fn describe(&self, m: &MDeg) -> String {
        match self.kind {
            GradingKind::Classes => {
                let parts: Vec<String> = m.iter().map(|c| c.to_string()).collect();
                format!("[{}]", parts.join(" "))
            }
            GradingKind::Total => format!("deg {}", m[0]),
        }
    }

    fn letter_choices(&self, m: &MDeg) -> Vec<&[Letter]> {
        m.iter().map(|&c| self.members[c as usize].as_slice()).collect()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }
}

/// Normal words of one multidegree with a reverse index.
#[derive(Debug)]
pub struct Piece {
    pub words: Vec<Word>,
    pub index: HashMap<Word, usize>,
}

impl Piece {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// A Gröbner basis together with a multigrading and a cache of the normal
/// words in each multidegree.
#[derive(Debug, Clone)]
pub struct GradedAlgebra<F: Field> {
    gb: TruncatedGb<F>,
    grading: Grading,
    pieces: Arc<Mutex<HashMap<MDeg, Arc<Piece>>>>,
}

impl<F: Field> GradedAlgebra<F> {
    pub fn new(gb: TruncatedGb<F>) -> Self {
        let grading = Grading::fine(&gb);
        Self::with_grading(gb, grading)
    }

    pub fn with_grading(gb: TruncatedGb<F>, grading: Grading) -> Self {
        GradedAlgebra {
            gb,
            grading,
            pieces: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    /// Same basis, graded by internal degree only.
    pub fn coarsened(&self) -> Self {
        Self::with_grading(self.gb.clone(), Grading::total(self.gb.presentation().degrees().to_vec()))
    }

    pub fn gb(&self) -> &TruncatedGb<F> {
        &self.gb
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn field(&self) -> &F {
        self.gb.field()
    }

    /// Normal words of multidegree `m`.
    pub fn piece(&self, m: &MDeg) -> Arc<Piece> {
        if let Some(p) = self.pieces.lock().unwrap().get(m) {
            return p.clone();
        }
        let degrees = self.gb.presentation().degrees();
        let words = match self.grading.kind {
            GradingKind::Classes => {
                let choices = self.grading.letter_choices(m);
                self.gb.automaton().words_with_letter_choices(degrees, &choices)
            }
            GradingKind::Total => self.gb.automaton().words_of_degree(degrees, m[0] as u32),
        };
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let piece = Arc::new(Piece { words, index });
        self.pieces.lock().unwrap().insert(m.clone(), piece.clone());
        piece
    }

    /// Normal form of `u·p` as terms.
    pub fn left_mul_word(&self, u: &Word, p: &NcPoly<F>) -> Vec<(Word, F::Elem)> {
        let f = self.field();
        let mut acc: std::collections::BTreeMap<Word, F::Elem> = Default::default();
        for (t, c) in p.terms() {
            for (w, d) in self.gb.word_nf(&u.concat(t)).iter() {
                let v = f.mul(c, d);
                crate::gbasis::add_term_into(f, &mut acc, w.clone(), v);
            }
        }
        acc.into_iter().collect()
    }

    /// Error unless the basis is complete through degree `d`.
    pub fn require(&self, d: u32) -> Result<(), GbError> {
        self.gb.require_complete(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{MonomialOrder, Presentation};
    use crate::gbasis::buchberger_truncated;
    use crate::scalar::PrimeField;

    fn alg(text: &str, d: u32) -> GradedAlgebra<PrimeField> {
        let p = Presentation::parse(text, &PrimeField::default()).unwrap();
        GradedAlgebra::new(buchberger_truncated(&p, MonomialOrder::DegLex, d).unwrap())
    }

    #[test]
    fn classes_follow_relation_positions() {
        let a = alg("gens n p q s t; rel n*p - n*q; rel p*s - q*t;", 4);
        let g = a.grading();
        assert_eq!(g.kind(), GradingKind::Classes);
        assert_eq!(g.num_classes(), 3);
        assert_eq!(g.class_of(1), g.class_of(2));
        assert_eq!(g.class_of(3), g.class_of(4));
        // n·(pq)·(st) is the longest run
        let c = g.candidates(5);
        assert!(c.iter().any(|m| m.len() == 3));
        assert!(c.iter().all(|m| m.len() <= 3));
    }

    #[test]
    fn pieces_partition_the_normal_words() {
        let a = alg("gens n p q s t; rel n*p - n*q; rel p*s - q*t;", 4);
        for d in 0..=4 {
            let total: usize = a.grading().all_of_degree(d).iter().map(|m| a.piece(m).len()).sum();
            assert_eq!(total as u128, a.gb().dims(d).unwrap()[d as usize]);
        }
    }

    #[test]
    fn mixed_lengths_fall_back_to_total_degree() {
        let p = Presentation::parse("gens x y; deg y 2; rel x*x - y;", &PrimeField::default());
        // x*x - y is inhomogeneous in length but homogeneous in degree
        let p = p.unwrap();
        let a = GradedAlgebra::new(buchberger_truncated(&p, MonomialOrder::DegLex, 4).unwrap());
        assert_eq!(a.grading().kind(), GradingKind::Total);
        assert_eq!(a.grading().candidates(3).len(), 3);
    }
}
