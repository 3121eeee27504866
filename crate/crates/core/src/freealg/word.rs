use std::cmp::Ordering;

use smallvec::SmallVec;

/// Index of a generator in its presentation's declaration order.
pub type Letter = u16;

pub type Letters = SmallVec<[Letter; 12]>;

/// A monomial of the free algebra.
///
/// Words compare by degree-lexicographic order: higher internal degree is
/// larger, and among words of equal degree the first differing letter
/// decides, with the earlier-declared generator being the larger one.
/// The order is total, multiplicative and degree-compatible.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    deg: u32,
    letters: Letters,
}

impl Word {
    /// The empty word, i.e. the unit.
    pub fn one() -> Self {
        Word::default()
    }

    pub fn new(letters: &[Letter], degrees: &[u32]) -> Self {
        let deg = letters.iter().map(|&l| degrees[l as usize]).sum();
        Word {
            deg,
            letters: letters.iter().copied().collect(),
        }
    }

    pub fn letter(l: Letter, degree: u32) -> Self {
        Word {
            deg: degree,
            letters: smallvec::smallvec![l],
        }
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            deg: self.deg + other.deg,
            letters,
        }
    }

    /// `left · self · right`
    pub fn sandwich(&self, left: &Word, right: &Word) -> Word {
        let mut letters = Letters::with_capacity(left.len() + self.len() + right.len());
        letters.extend_from_slice(&left.letters);
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&right.letters);
        Word {
            deg: left.deg + self.deg + right.deg,
            letters,
        }
    }

    pub fn subword(&self, start: usize, end: usize, degrees: &[u32]) -> Word {
        Word::new(&self.letters[start..end], degrees)
    }

    /// Leftmost position where `pattern` occurs as a factor.
    pub fn find_factor(&self, pattern: &[Letter]) -> Option<usize> {
        if pattern.is_empty() {
            return Some(0);
        }
        if pattern.len() > self.len() {
            return None;
        }
        self.letters.windows(pattern.len()).position(|w| w == pattern)
    }

    pub fn has_factor(&self, pattern: &[Letter]) -> bool {
        self.find_factor(pattern).is_some()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.letters.iter().zip(other.letters.iter()) {
            if a != b {
                // earlier generator is the larger letter
                return b.cmp(a);
            }
        }
        self.letters.len().cmp(&other.letters.len())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The monomial orders the engine knows about. Only degree-lex is
/// implemented; the enum exists so reports can name the order they used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub enum MonomialOrder {
    #[default]
    DegLex,
}

impl MonomialOrder {
    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::DegLex => "deglex",
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "deglex" => Ok(MonomialOrder::DegLex),
            other => Err(format!("unsupported monomial order `{other}` (only `deglex`)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(l: &[Letter]) -> Word {
        Word::new(l, &[1; 8])
    }

    #[test]
    fn earlier_generator_is_larger() {
        // n=0, p=1, q=2: np > nq
        assert!(w(&[0, 1]) > w(&[0, 2]));
        assert!(w(&[3]) < w(&[0, 0]));
        assert_eq!(Word::one().degree(), 0);
    }

    #[test]
    fn weighted_degree_dominates() {
        let degs = [2, 1];
        let a = Word::new(&[0], &degs);
        let b = Word::new(&[1, 1], &degs);
        let c = Word::new(&[1, 1, 1], &degs);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn factors() {
        let x = w(&[0, 1, 2, 1, 2]);
        assert_eq!(x.find_factor(&[1, 2]), Some(1));
        assert_eq!(x.find_factor(&[2, 2]), None);
        assert!(x.has_factor(&[]));
    }

    proptest! {
        #[test]
        fn order_is_multiplicative(
            u in proptest::collection::vec(0u16..4, 3),
            v in proptest::collection::vec(0u16..4, 3),
            a in proptest::collection::vec(0u16..4, 0..3),
            b in proptest::collection::vec(0u16..4, 0..3),
        ) {
            let (u, v, a, b) = (w(&u), w(&v), w(&a), w(&b));
            prop_assert_eq!(u.cmp(&v), u.sandwich(&a, &b).cmp(&v.sandwich(&a, &b)));
        }
    }
}
