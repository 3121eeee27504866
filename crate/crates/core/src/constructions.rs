//! The algebras `C(m)` for `m >= 5` and `B`, their named block matrices and
//! the explicit complexes built from those blocks.

use serde::Serialize;
use thiserror::Error;

use crate::freealg::{NcPoly, ParseError, Presentation};
use crate::resolution::{FreeModuleMap, GradedFreeModule, MapError};
use crate::scalar::Field;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("C(m) is only constructed for m >= 5, got m = {0}")]
    BadM(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Which relation list to use for `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BVariant {
    /// The rows of `ψ2 ψ1`: 14 relations.
    Full,
    /// The 11 relations without `sv - sy1`, `tw - ty1`, `ux1 - uy1`.
    Short,
}

/// Generator sets `S_1, ..., S_{m+1}` of `C(m)`.
pub fn c_generator_sets(m: usize) -> Result<Vec<Vec<String>>, ConstructionError> {
    if m < 5 {
        return Err(ConstructionError::BadM(m));
    }
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut sets = vec![s(&["n"]), s(&["p", "q", "r"]), s(&["s", "t", "u"]), s(&["v", "w", "x1", "y1", "z1"])];
    for k in 2..=m - 4 {
        sets.push(vec![format!("x{k}"), format!("y{k}"), format!("z{k}")]);
    }
    sets.push(vec![format!("x{}", m - 3), format!("y{}", m - 3)]);
    sets.push(vec![format!("x{}", m - 2)]);
    Ok(sets)
}

/// The relations of `C(m)` as expressions, in a fixed order.
pub fn c_relations(m: usize) -> Result<Vec<String>, ConstructionError> {
    if m < 5 {
        return Err(ConstructionError::BadM(m));
    }
    let mut rels: Vec<String> = [
        "n*p - n*q", "n*p - n*r", "p*s - p*t", "q*t - q*u", "r*s - r*u", "s*v - s*w", "t*w - t*x1",
        "u*v - u*x1", "v*x2", "w*x2",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for i in 1..=m - 3 {
        rels.push(format!("x{i}*x{}", i + 1));
    }
    for r in ["s*v - s*y1", "t*w - t*y1", "u*x1 - u*y1", "s*z1", "t*z1", "u*z1"] {
        rels.push(r.to_string());
    }
    for i in 2..=m - 3 {
        rels.push(format!("y{}*x{i} + z{}*y{i}", i - 1, i - 1));
    }
    for i in 1..=m.saturating_sub(5) {
        rels.push(format!("z{i}*z{}", i + 1));
    }
    Ok(rels)
}

/// Presentation text of `C(m)`.
pub fn c_text(m: usize) -> Result<String, ConstructionError> {
    let sets = c_generator_sets(m)?;
    let mut s = format!("algebra C{m}\n");
    for set in &sets {
        s.push_str(&format!("gens {}\n", set.join(" ")));
    }
    s.push_str("deg all 1\n");
    for r in c_relations(m)? {
        s.push_str(&format!("rel {r};\n"));
    }
    Ok(s)
}

/// `C(m)`: `3m` generators of degree one and `3m + 4` quadratic relations.
pub fn build_c<F: Field>(field: &F, m: usize) -> Result<Presentation<F>, ConstructionError> {
    Ok(Presentation::parse(&c_text(m)?, field)?)
}

pub const B_GENERATORS: [&str; 13] = ["n", "p", "q", "r", "s", "t", "u", "v", "w", "x1", "y1", "a", "b"];

pub fn b_relations(variant: BVariant) -> Vec<String> {
    let mut rels = vec![
        "n*p - n*q", "n*p - n*r", "p*s - p*t", "q*t - q*u", "r*s - r*u", "s*v - s*w", "t*w - t*x1",
        "u*v - u*x1", "v*a - v*b", "w*a - w*b", "x1*a - x1*b",
    ];
    if variant == BVariant::Full {
        rels.extend(["s*v - s*y1", "t*w - t*y1", "u*x1 - u*y1"]);
    }
    rels.into_iter().map(String::from).collect()
}

pub fn b_text(variant: BVariant) -> String {
    let name = match variant {
        BVariant::Full => "B",
        BVariant::Short => "B11",
    };
    let mut s = format!("algebra {name}\ngens {}\ndeg all 1\n", B_GENERATORS.join(" "));
    for r in b_relations(variant) {
        s.push_str(&format!("rel {r};\n"));
    }
    s
}

pub fn build_b<F: Field>(field: &F, variant: BVariant) -> Result<Presentation<F>, ConstructionError> {
    Ok(Presentation::parse(&b_text(variant), field)?)
}

type Block<F> = Vec<Vec<NcPoly<F>>>;

/// The named blocks, with entries in a given presentation.
pub struct Blocks<'a, F: Field> {
    p: &'a Presentation<F>,
}

impl<'a, F: Field> Blocks<'a, F> {
    pub fn new(p: &'a Presentation<F>) -> Self {
        Blocks { p }
    }

    /// Matrix from expressions; `"0"` is zero.
    pub fn matrix(&self, rows: &[&[&str]]) -> Result<Block<F>, ConstructionError> {
        rows.iter()
            .map(|r| r.iter().map(|e| self.p.poly(e).map_err(ConstructionError::from)).collect())
            .collect()
    }

    fn owned(&self, rows: &[Vec<String>]) -> Result<Block<F>, ConstructionError> {
        let refs: Vec<Vec<&str>> = rows.iter().map(|r| r.iter().map(|s| s.as_str()).collect()).collect();
        let slices: Vec<&[&str]> = refs.iter().map(|r| r.as_slice()).collect();
        self.matrix(&slices)
    }

    /// 3×9.
    pub fn alpha(&self) -> Result<Block<F>, ConstructionError> {
        self.matrix(&[
            &["0", "0", "0", "p", "0", "0", "-p", "p", "0"],
            &["0", "0", "0", "0", "q", "0", "0", "-q", "q"],
            &["0", "0", "0", "0", "0", "r", "-r", "0", "r"],
        ])
    }

    /// 3×6.
    pub fn alpha_prime(&self) -> Result<Block<F>, ConstructionError> {
        self.matrix(&[
            &["p", "0", "0", "-p", "p", "0"],
            &["0", "q", "0", "0", "-q", "q"],
            &["0", "0", "r", "-r", "0", "r"],
        ])
    }

    /// 6×4.
    pub fn beta(&self) -> Result<Block<F>, ConstructionError> {
        self.matrix(&[
            &["s", "-s", "0", "0"],
            &["0", "t", "-t", "0"],
            &["u", "0", "-u", "0"],
            &["s", "0", "0", "-s"],
            &["0", "t", "0", "-t"],
            &["0", "0", "u", "-u"],
        ])
    }

    /// 3×3.
    pub fn beta_prime(&self) -> Result<Block<F>, ConstructionError> {
        self.matrix(&[&["s", "-s", "0"], &["0", "t", "-t"], &["u", "0", "-u"]])
    }

    /// 4×2.
    pub fn gamma(&self) -> Result<Block<F>, ConstructionError> {
        self.matrix(&[&["v", "0"], &["w", "0"], &["x1", "0"], &["y1", "z1"]])
    }

    /// 3×1.
    pub fn gamma_prime(&self) -> Result<Block<F>, ConstructionError> {
        self.matrix(&[&["v"], &["w"], &["x1"]])
    }

    /// 2×2.
    pub fn chi(&self, j: usize) -> Result<Block<F>, ConstructionError> {
        self.owned(&[
            vec![format!("x{j}"), "0".into()],
            vec![format!("y{j}"), format!("z{j}")],
        ])
    }

    /// 3×3.
    pub fn delta(&self) -> Result<Block<F>, ConstructionError> {
        self.matrix(&[&["-p", "p", "0"], &["0", "-q", "q"], &["-r", "0", "r"]])
    }

    /// 3×1.
    pub fn epsilon(&self) -> Result<Block<F>, ConstructionError> {
        self.matrix(&[&["s"], &["t"], &["u"]])
    }

    /// `j×j` diagonal with `z1, ..., zj`.
    pub fn zeta(&self, j: usize) -> Result<Block<F>, ConstructionError> {
        let rows: Vec<Vec<String>> = (1..=j)
            .map(|i| (1..=j).map(|k| if i == k { format!("z{i}") } else { "0".into() }).collect())
            .collect();
        self.owned(&rows)
    }

    /// 1×4.
    pub fn eta(&self) -> Result<Block<F>, ConstructionError> {
        self.matrix(&[&["0", "n", "n", "-n"]])
    }

    /// 2×4.
    pub fn eta_prime(&self) -> Result<Block<F>, ConstructionError> {
        self.matrix(&[&["0", "n", "-n", "0"], &["0", "n", "0", "-n"]])
    }

    /// 1×1 with a single generator.
    pub fn letter(&self, name: &str) -> Result<Block<F>, ConstructionError> {
        self.matrix(&[&[name]])
    }

    /// The top row `(0,0,0,0,np,np,-np)`.
    pub fn top_row(&self) -> Result<Block<F>, ConstructionError> {
        self.matrix(&[&["0", "0", "0", "0", "n*p", "n*p", "-n*p"]])
    }

    /// A column of generators.
    pub fn column(&self, names: &[String]) -> Result<Block<F>, ConstructionError> {
        let rows: Vec<Vec<String>> = names.iter().map(|n| vec![n.clone()]).collect();
        self.owned(&rows)
    }
}

/// Prepends `k` zero columns.
fn pad_left<F: Field>(field: &F, b: Block<F>, k: usize) -> Block<F> {
    b.into_iter()
        .map(|r| {
            let mut v = vec![NcPoly::zero(field); k];
            v.extend(r);
            v
        })
        .collect()
}

/// Places blocks along the diagonal: each starts below and to the right of
/// the previous one. The blocks must exactly fill the matrix.
fn diagonal<F: Field>(
    field: &F,
    source: GradedFreeModule,
    target: GradedFreeModule,
    blocks: Vec<(String, Block<F>)>,
) -> Result<FreeModuleMap<F>, MapError> {
    let mut m = FreeModuleMap::zero(field, source, target);
    let (mut r, mut c) = (0, 0);
    for (name, b) in &blocks {
        m.place_block(name, r, c, b)?;
        r += b.len();
        c += b.first().map_or(0, |x| x.len());
    }
    if r != m.num_rows() || c != m.num_cols() {
        let name = blocks.last().map_or(String::new(), |b| b.0.clone());
        return Err(MapError::Block {
            name,
            row: r,
            col: c,
            reason: format!("blocks cover {r}x{c} of a {}x{} matrix", m.num_rows(), m.num_cols()),
        });
    }
    Ok(m)
}

/// An explicit complex `P_len → ... → P_1 → P_0 = A`, `maps[i-1]` being
/// the map out of `P_i`.
#[derive(Debug, Clone)]
pub struct PaperComplex<F: Field> {
    pub name: String,
    pub labels: Vec<String>,
    pub maps: Vec<FreeModuleMap<F>>,
}

impl<F: Field> PaperComplex<F> {
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![1];
        r.extend(self.maps.iter().map(|m| m.num_rows()));
        r
    }

    pub fn shifts(&self) -> Vec<u32> {
        let mut s = vec![0];
        s.extend(self.maps.iter().map(|m| m.source().shift(0)));
        s
    }
}

/// Ranks of `P_0, ..., P_m` for `C(m)`.
pub fn c_complex_ranks(m: usize) -> Vec<usize> {
    (0..=m)
        .map(|i| match i {
            0 => 1,
            1 => 3 * m,
            2 => 3 * m + 4,
            _ if i == m => 1,
            _ if i == m - 1 => 7,
            _ if i == m - 2 => 16,
            _ => 3 * m + 12 - 3 * i,
        })
        .collect()
}

/// Internal degrees of the generators of `P_0, ..., P_m` for `C(m)`.
pub fn c_complex_shifts(m: usize) -> Vec<u32> {
    (0..=m).map(|i| if i == m { m as u32 + 1 } else { i as u32 }).collect()
}

/// The complex built from the named blocks over `C(m)`, `p` being the
/// presentation returned by [`build_c`].
pub fn c_complex<F: Field>(p: &Presentation<F>, m: usize) -> Result<PaperComplex<F>, ConstructionError> {
    if m < 5 {
        return Err(ConstructionError::BadM(m));
    }
    let f = p.field();
    let b = Blocks::new(p);
    let ranks = c_complex_ranks(m);
    let shifts = c_complex_shifts(m);
    let module = |i: usize| GradedFreeModule::uniform(ranks[i], shifts[i]);
    let mut maps = Vec::new();
    let mut labels = Vec::new();

    // λ1: n p q r s t u z1..z_{m-4} v w x1 y1 x2 y2 .. x_{m-3} y_{m-3} x_{m-2}
    let mut col: Vec<String> = ["n", "p", "q", "r", "s", "t", "u"].iter().map(|s| s.to_string()).collect();
    col.extend((1..=m - 4).map(|k| format!("z{k}")));
    col.extend(["v", "w", "x1", "y1"].iter().map(|s| s.to_string()));
    for k in 2..=m - 3 {
        col.push(format!("x{k}"));
        col.push(format!("y{k}"));
    }
    col.push(format!("x{}", m - 2));
    maps.push(diagonal(f, module(1), module(0), vec![("lambda_1".into(), b.column(&col)?)])?);

    // λ2
    let mut bl: Vec<(String, Block<F>)> = vec![
        ("eta'".into(), b.eta_prime()?),
        ("delta".into(), b.delta()?),
        ("epsilon".into(), b.epsilon()?),
    ];
    if m > 5 {
        bl.push((format!("zeta_{}", m - 5), b.zeta(m - 5)?));
    }
    bl.push(("beta".into(), b.beta()?));
    bl.push(("gamma".into(), b.gamma()?));
    for k in 2..=m - 4 {
        bl.push((format!("chi_{k}"), b.chi(k)?));
    }
    bl.push((format!("x{}", m - 3), b.letter(&format!("x{}", m - 3))?));
    maps.push(diagonal(f, module(2), module(1), bl)?);

    // λ3
    let eta0 = ("(0|eta)".to_string(), pad_left(f, b.eta()?, 1));
    let bl = if m == 5 {
        vec![
            eta0,
            ("delta".into(), b.delta()?),
            ("alpha'".into(), b.alpha_prime()?),
            ("beta".into(), b.beta()?),
            ("gamma'".into(), b.gamma_prime()?),
        ]
    } else {
        let mut bl = vec![eta0, ("delta".into(), b.delta()?), ("epsilon".into(), b.epsilon()?)];
        if m > 6 {
            bl.push((format!("zeta_{}", m - 6), b.zeta(m - 6)?));
        }
        bl.push(("alpha'".into(), b.alpha_prime()?));
        bl.push(("beta".into(), b.beta()?));
        bl.push(("gamma".into(), b.gamma()?));
        for k in 2..=m - 5 {
            bl.push((format!("chi_{k}"), b.chi(k)?));
        }
        bl.push((format!("x{}", m - 4), b.letter(&format!("x{}", m - 4))?));
        bl
    };
    maps.push(diagonal(f, module(3), module(2), bl)?);

    // λj, 4 <= j <= m-3
    for j in 4..=m.saturating_sub(3) {
        let mut bl = vec![
            ("eta".to_string(), b.eta()?),
            ("delta".into(), b.delta()?),
            ("epsilon".into(), b.epsilon()?),
        ];
        if m - j - 3 > 0 {
            bl.push((format!("zeta_{}", m - j - 3), b.zeta(m - j - 3)?));
        }
        bl.push(("alpha".into(), b.alpha()?));
        bl.push(("beta".into(), b.beta()?));
        bl.push(("gamma".into(), b.gamma()?));
        for k in 2..=m - j - 2 {
            bl.push((format!("chi_{k}"), b.chi(k)?));
        }
        bl.push((format!("x{}", m - j - 1), b.letter(&format!("x{}", m - j - 1))?));
        maps.push(diagonal(f, module(j), module(j - 1), bl)?);
    }

    // λ_{m-2} (already built as λ3 when m = 5)
    if m > 5 {
        let bl = vec![
            ("eta".to_string(), b.eta()?),
            ("delta".into(), b.delta()?),
            ("alpha".into(), b.alpha()?),
            ("beta".into(), b.beta()?),
            ("gamma'".into(), b.gamma_prime()?),
        ];
        maps.push(diagonal(f, module(m - 2), module(m - 3), bl)?);
    }

    // λ_{m-1}
    let bl = vec![
        ("eta".to_string(), b.eta()?),
        ("alpha".into(), b.alpha()?),
        ("beta'".into(), b.beta_prime()?),
    ];
    maps.push(diagonal(f, module(m - 1), module(m - 2), bl)?);

    // λ_m
    maps.push(diagonal(f, module(m), module(m - 1), vec![(format!("lambda_{m}"), b.top_row()?)])?);

    for i in 1..=m {
        labels.push(format!("lambda_{i}"));
    }
    Ok(PaperComplex {
        name: format!("C{m}"),
        labels,
        maps,
    })
}

/// The complex `R_4 → R_3 → R_2 → R_1 → B` built from the same blocks.
pub fn b_complex<F: Field>(p: &Presentation<F>) -> Result<PaperComplex<F>, ConstructionError> {
    let f = p.field();
    let b = Blocks::new(p);
    let ranks = [1usize, 13, 14, 7, 1];
    let shifts = [0u32, 1, 2, 3, 5];
    let module = |i: usize| GradedFreeModule::uniform(ranks[i], shifts[i]);
    let names: Vec<String> = B_GENERATORS.iter().map(|s| s.to_string()).collect();
    let psi1 = diagonal(f, module(1), module(0), vec![("psi_1".into(), b.column(&names)?)])?;
    let mut gg = b.gamma_prime()?;
    for row in gg.iter_mut() {
        let neg = row[0].neg();
        row.push(neg);
    }
    let psi2 = diagonal(
        f,
        module(2),
        module(1),
        vec![
            ("eta'".into(), b.eta_prime()?),
            ("delta".into(), b.delta()?),
            ("beta".into(), b.beta()?),
            ("gamma'|-gamma'".into(), gg),
        ],
    )?;
    let psi3 = diagonal(
        f,
        module(3),
        module(2),
        vec![
            ("(0|eta)".into(), pad_left(f, b.eta()?, 1)),
            ("alpha'".into(), b.alpha_prime()?),
            ("beta'".into(), b.beta_prime()?),
        ],
    )?;
    let psi4 = diagonal(f, module(4), module(3), vec![("psi_4".into(), b.top_row()?)])?;
    Ok(PaperComplex {
        name: "B".into(),
        labels: (1..=4).map(|i| format!("psi_{i}")).collect(),
        maps: vec![psi1, psi2, psi3, psi4],
    })
}
