//! Text format for complexes of free modules.
//!
//! ```text
//! complex C5
//! module 0 rank 1 shift 0
//! module 1 rank 15 shift 1
//! module 2 shifts 2 2 3
//! map 1
//! block lambda_1 0 0 15 1
//! row n
//! row p
//! ```
//!
//! `map i` is the map from module `i` to module `i-1`; each `row` lists the
//! image of one source generator as comma-separated expressions. `block`
//! lines are optional names for rectangular regions.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::freealg::{NcPoly, Presentation};
use crate::scalar::Field;

use super::module::{BlockPlacement, FreeModuleMap, GradedFreeModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}: {message}")]
pub struct MapsError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> MapsError {
    MapsError {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone)]
pub struct ComplexFile<F: Field> {
    pub name: Option<String>,
    /// `maps[i-1]` goes from module `i` to module `i-1`.
    pub maps: Vec<FreeModuleMap<F>>,
}

struct MapDraft<F: Field> {
    line: usize,
    rows: Vec<Vec<NcPoly<F>>>,
    blocks: Vec<BlockPlacement>,
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize, MapsError> {
    tok.ok_or_else(|| err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| err(line, format!("bad {what}")))
}

pub fn parse_maps<F: Field>(text: &str, p: &Presentation<F>) -> Result<ComplexFile<F>, MapsError> {
    let mut name = None;
    let mut modules: BTreeMap<usize, GradedFreeModule> = BTreeMap::new();
    let mut maps: BTreeMap<usize, MapDraft<F>> = BTreeMap::new();
    let mut current: Option<usize> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let head = toks.next().unwrap();
        match head {
            "complex" => name = toks.next().map(String::from),
            "module" => {
                let i = parse_usize(toks.next(), line, "module index")?;
                let rest: Vec<&str> = toks.collect();
                let shifts = match rest.first() {
                    Some(&"rank") => {
                        if rest.len() != 4 || rest[2] != "shift" {
                            return Err(err(line, "expected `module i rank r shift s`"));
                        }
                        let r = parse_usize(Some(rest[1]), line, "rank")?;
                        let s = parse_usize(Some(rest[3]), line, "shift")? as u32;
                        vec![s; r]
                    }
                    Some(&"shifts") => rest[1..]
                        .iter()
                        .map(|t| parse_usize(Some(t), line, "shift").map(|s| s as u32))
                        .collect::<Result<_, _>>()?,
                    _ => return Err(err(line, "expected `rank` or `shifts`")),
                };
                if modules.insert(i, GradedFreeModule::new(shifts)).is_some() {
                    return Err(err(line, format!("module {i} declared twice")));
                }
            }
            "map" => {
                let i = parse_usize(toks.next(), line, "map index")?;
                if i == 0 {
                    return Err(err(line, "maps are numbered from 1"));
                }
                if maps.contains_key(&i) {
                    return Err(err(line, format!("map {i} declared twice")));
                }
                maps.insert(
                    i,
                    MapDraft {
                        line,
                        rows: Vec::new(),
                        blocks: Vec::new(),
                    },
                );
                current = Some(i);
            }
            "block" => {
                let i = current.ok_or_else(|| err(line, "`block` outside a map"))?;
                let bname = toks.next().ok_or_else(|| err(line, "missing block name"))?;
                let nums: Vec<usize> = toks
                    .map(|t| parse_usize(Some(t), line, "block bound"))
                    .collect::<Result<_, _>>()?;
                if nums.len() != 4 {
                    return Err(err(line, "expected `block name row col rows cols`"));
                }
                maps.get_mut(&i).unwrap().blocks.push(BlockPlacement {
                    name: bname.to_string(),
                    row: nums[0],
                    col: nums[1],
                    rows: nums[2],
                    cols: nums[3],
                });
            }
            "row" => {
                let i = current.ok_or_else(|| err(line, "`row` outside a map"))?;
                let start = body.find("row").unwrap() + 3;
                let mut col = start + 1;
                let mut row = Vec::new();
                for e in body[start..].split(',') {
                    let poly = p.poly_at(e, line, col).map_err(|e| err(line, e.to_string()))?;
                    row.push(poly);
                    col += e.chars().count() + 1;
                }
                maps.get_mut(&i).unwrap().rows.push(row);
            }
            other => return Err(err(line, format!("unknown statement `{other}`"))),
        }
    }
    let n = maps.len();
    if maps.keys().copied().ne(1..=n) {
        return Err(err(0, "maps must be numbered 1..n without gaps"));
    }
    let mut out = Vec::with_capacity(n);
    for (i, draft) in maps {
        let source = modules
            .get(&i)
            .cloned()
            .ok_or_else(|| err(draft.line, format!("module {i} not declared")))?;
        let target = modules
            .get(&(i - 1))
            .cloned()
            .ok_or_else(|| err(draft.line, format!("module {} not declared", i - 1)))?;
        let m = FreeModuleMap::new(source, target, draft.rows)
            .map_err(|e| err(draft.line, format!("map {i}: {e}")))?;
        out.push(m.with_blocks(draft.blocks));
    }
    Ok(ComplexFile { name, maps: out })
}

fn write_module(s: &mut String, i: usize, m: &GradedFreeModule) {
    let sh = m.shifts();
    if !sh.is_empty() && sh.iter().all(|&x| x == sh[0]) {
        s.push_str(&format!("module {i} rank {} shift {}\n", sh.len(), sh[0]));
    } else {
        let v: Vec<String> = sh.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("module {i} shifts {}\n", v.join(" ")));
    }
}

/// Canonical text for a complex; `maps[0]` is the map out of module 1.
pub fn write_maps<F: Field>(name: Option<&str>, maps: &[FreeModuleMap<F>], p: &Presentation<F>) -> String {
    let mut s = String::new();
    if let Some(n) = name {
        s.push_str(&format!("complex {n}\n"));
    }
    if let Some(first) = maps.first() {
        write_module(&mut s, 0, first.target());
    }
    for (k, m) in maps.iter().enumerate() {
        write_module(&mut s, k + 1, m.source());
    }
    for (k, m) in maps.iter().enumerate() {
        s.push_str(&format!("map {}\n", k + 1));
        for b in m.blocks() {
            s.push_str(&format!("block {} {} {} {} {}\n", b.name, b.row, b.col, b.rows, b.cols));
        }
        for row in m.rows() {
            let e: Vec<String> = row.iter().map(|x| p.format_poly(x)).collect();
            s.push_str(&format!("row {}\n", e.join(", ")));
        }
    }
    s
}
