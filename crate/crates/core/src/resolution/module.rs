use serde::Serialize;
use thiserror::Error;

use crate::freealg::NcPoly;
use crate::gbasis::{GbError, TruncatedGb};
use crate::scalar::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("matrix has {found} rows but the source has rank {expected}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has {found} entries but the target has rank {expected}")]
    ColCount { row: usize, expected: usize, found: usize },
    #[error("entry ({row},{col}) has degree {found}, expected {expected}")]
    EntryDegree { row: usize, col: usize, expected: i64, found: u32 },
    #[error("entry ({row},{col}) is not homogeneous")]
    Inhomogeneous { row: usize, col: usize },
    #[error("map {index} has target rank {found} but the previous map has source rank {expected}")]
    NotComposable { index: usize, expected: usize, found: usize },
    #[error("block `{name}` at ({row},{col}) does not fit: {reason}")]
    Block { name: String, row: usize, col: usize, reason: String },
    #[error(transparent)]
    Gb(#[from] GbError),
}

/// Direct sum of shifted copies `A[-j]`, one per generator, where
/// `A[j]_k = A_{j+k}`: a generator with shift `j` lives in internal degree `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedFreeModule {
    shifts: Vec<u32>,
}

impl GradedFreeModule {
    pub fn new(shifts: Vec<u32>) -> Self {
        GradedFreeModule { shifts }
    }

    /// `A[-shift]^rank`.
    pub fn uniform(rank: usize, shift: u32) -> Self {
        GradedFreeModule { shifts: vec![shift; rank] }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[u32] {
        &self.shifts
    }

    pub fn shift(&self, g: usize) -> u32 {
        self.shifts[g]
    }

    pub fn is_sorted(&self) -> bool {
        self.shifts.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Where a named block sits inside an assembled matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockPlacement {
    pub name: String,
    pub row: usize,
    pub col: usize,
    pub rows: usize,
    pub cols: usize,
}

impl BlockPlacement {
    pub fn contains(&self, r: usize, c: usize) -> bool {
        r >= self.row && r < self.row + self.rows && c >= self.col && c < self.col + self.cols
    }
}

/// A map of graded free left modules given by RIGHT multiplication: a row
/// vector `x` over the source maps to `x · M`. Row `g` of `M` is the image
/// of the `g`-th source generator.
#[derive(Debug, Clone)]
pub struct FreeModuleMap<F: Field> {
    source: GradedFreeModule,
    target: GradedFreeModule,
    entries: Vec<Vec<NcPoly<F>>>,
    blocks: Vec<BlockPlacement>,
}

impl<F: Field> PartialEq for FreeModuleMap<F> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.entries == other.entries
    }
}

impl<F: Field> FreeModuleMap<F> {
    pub fn new(
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<NcPoly<F>>>,
    ) -> Result<Self, MapError> {
        if entries.len() != source.rank() {
            return Err(MapError::RowCount {
                expected: source.rank(),
                found: entries.len(),
            });
        }
        for (r, row) in entries.iter().enumerate() {
            if row.len() != target.rank() {
                return Err(MapError::ColCount {
                    row: r,
                    expected: target.rank(),
                    found: row.len(),
                });
            }
            for (c, e) in row.iter().enumerate() {
                check_entry(e, r, c, &source, &target)?;
            }
        }
        Ok(FreeModuleMap {
            source,
            target,
            entries,
            blocks: Vec::new(),
        })
    }

    pub fn zero(field: &F, source: GradedFreeModule, target: GradedFreeModule) -> Self {
        let entries = vec![vec![NcPoly::zero(field); target.rank()]; source.rank()];
        FreeModuleMap {
            source,
            target,
            entries,
            blocks: Vec::new(),
        }
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn num_rows(&self) -> usize {
        self.entries.len()
    }

    pub fn num_cols(&self) -> usize {
        self.target.rank()
    }

    pub fn entry(&self, r: usize, c: usize) -> &NcPoly<F> {
        &self.entries[r][c]
    }

    pub fn row(&self, r: usize) -> &[NcPoly<F>] {
        &self.entries[r]
    }

    pub fn rows(&self) -> &[Vec<NcPoly<F>>] {
        &self.entries
    }

    /// Replaces one entry, keeping the degree contract.
    pub fn set_entry(&mut self, r: usize, c: usize, p: NcPoly<F>) -> Result<(), MapError> {
        check_entry(&p, r, c, &self.source, &self.target)?;
        self.entries[r][c] = p;
        Ok(())
    }

    /// Writes `block` with its top-left corner at `(row, col)` and records
    /// its name for diagnostics.
    pub fn place_block(
        &mut self,
        name: &str,
        row: usize,
        col: usize,
        block: &[Vec<NcPoly<F>>],
    ) -> Result<(), MapError> {
        let rows = block.len();
        let cols = block.first().map_or(0, |r| r.len());
        let err = |reason: String| MapError::Block {
            name: name.to_string(),
            row,
            col,
            reason,
        };
        if row + rows > self.num_rows() || col + cols > self.num_cols() {
            return Err(err(format!(
                "{rows}x{cols} block overruns a {}x{} matrix",
                self.num_rows(),
                self.num_cols()
            )));
        }
        for (i, brow) in block.iter().enumerate() {
            if brow.len() != cols {
                return Err(err("ragged block".into()));
            }
            for (j, e) in brow.iter().enumerate() {
                if !e.is_zero() {
                    check_entry(e, row + i, col + j, &self.source, &self.target)
                        .map_err(|e| err(e.to_string()))?;
                }
                self.entries[row + i][col + j] = e.clone();
            }
        }
        self.blocks.push(BlockPlacement {
            name: name.to_string(),
            row,
            col,
            rows,
            cols,
        });
        Ok(())
    }

    pub fn blocks(&self) -> &[BlockPlacement] {
        &self.blocks
    }

    pub fn with_blocks(mut self, blocks: Vec<BlockPlacement>) -> Self {
        self.blocks = blocks;
        self
    }

    /// Name of the block covering entry `(r, c)`, if any.
    pub fn block_at(&self, r: usize, c: usize) -> Option<&str> {
        self.blocks.iter().find(|b| b.contains(r, c)).map(|b| b.name.as_str())
    }

    /// Names of blocks meeting row `r`.
    pub fn blocks_in_row(&self, r: usize) -> Vec<&str> {
        self.blocks
            .iter()
            .filter(|b| r >= b.row && r < b.row + b.rows)
            .map(|b| b.name.as_str())
            .collect()
    }

    /// Names of blocks meeting column `c`.
    pub fn blocks_in_col(&self, c: usize) -> Vec<&str> {
        self.blocks
            .iter()
            .filter(|b| c >= b.col && c < b.col + b.cols)
            .map(|b| b.name.as_str())
            .collect()
    }

    /// No entry has a term of degree zero.
    pub fn is_minimal(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|e| e.terms().all(|(w, _)| w.degree() > 0))
    }

    /// Matrix of the composite `x ↦ (x·self)·next`, reduced modulo the ideal.
    pub fn compose(&self, next: &FreeModuleMap<F>, gb: &TruncatedGb<F>) -> Result<Vec<Vec<NcPoly<F>>>, MapError> {
        if self.num_cols() != next.num_rows() {
            return Err(MapError::NotComposable {
                index: 0,
                expected: self.num_cols(),
                found: next.num_rows(),
            });
        }
        let field = gb.field();
        let mut out = Vec::with_capacity(self.num_rows());
        for r in 0..self.num_rows() {
            let mut row = Vec::with_capacity(next.num_cols());
            for c in 0..next.num_cols() {
                let mut acc = NcPoly::zero(field);
                for k in 0..self.num_cols() {
                    let a = &self.entries[r][k];
                    let b = &next.entries[k][c];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                row.push(gb.normal_form(&acc)?);
            }
            out.push(row);
        }
        Ok(out)
    }
}

fn check_entry<F: Field>(
    e: &NcPoly<F>,
    r: usize,
    c: usize,
    source: &GradedFreeModule,
    target: &GradedFreeModule,
) -> Result<(), MapError> {
    if e.is_zero() {
        return Ok(());
    }
    let d = e
        .homogeneous_degree()
        .ok_or(MapError::Inhomogeneous { row: r, col: c })?;
    let expected = source.shift(r) as i64 - target.shift(c) as i64;
    if d as i64 != expected {
        return Err(MapError::EntryDegree {
            row: r,
            col: c,
            expected,
            found: d,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Presentation;
    use crate::scalar::PrimeField;

    #[test]
    fn degree_contract_and_minimality() {
        let p = Presentation::parse("gens x y;", &PrimeField::default()).unwrap();
        let x = p.poly("x").unwrap();
        let one = p.poly("1").unwrap();
        let m = FreeModuleMap::new(
            GradedFreeModule::uniform(1, 1),
            GradedFreeModule::uniform(1, 0),
            vec![vec![x.clone()]],
        )
        .unwrap();
        assert!(m.is_minimal());
        let bad = FreeModuleMap::new(
            GradedFreeModule::uniform(1, 1),
            GradedFreeModule::uniform(1, 0),
            vec![vec![one.clone()]],
        );
        assert!(matches!(bad, Err(MapError::EntryDegree { .. })));
        let unit = FreeModuleMap::new(
            GradedFreeModule::uniform(1, 0),
            GradedFreeModule::uniform(1, 0),
            vec![vec![one]],
        )
        .unwrap();
        assert!(!unit.is_minimal());
    }
}
