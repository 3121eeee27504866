use serde::Serialize;

use super::minimal::BettiTable;

/// Bounded Koszul-type verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KoszulVerdict {
    /// Some `b(i,j) != 0` with `i < j`.
    NotKoszul { i: usize, j: u32, dim: u64 },
    /// No off-diagonal class within the bounds; `m`-Koszul for every `m`
    /// up to the stated value and nothing is claimed beyond it.
    NoWitnessWithinBounds { m_through: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct KoszulityReport {
    pub imax: usize,
    pub jmax: u32,
    /// Largest `m` such that `b(i,j) = 0` for all `i < j <= m` and every
    /// such cell lies within the bounds.
    pub m_koszul: usize,
    pub verdict: KoszulVerdict,
    /// Nonzero cells with `i < j`.
    pub off_diagonal: Vec<(usize, u32, u64)>,
    /// `(j, i)` for every internal degree `j` whose column has exactly one
    /// nonzero row `i`.
    pub delta_fit: Vec<(u32, usize)>,
    /// Internal degrees whose column has several nonzero rows.
    pub delta_conflicts: Vec<u32>,
    /// Largest row with a nonzero entry, if the rows above it within the
    /// bounds are empty.
    pub global_dimension_bound: Option<usize>,
}

pub fn koszulity_report(b: &BettiTable) -> KoszulityReport {
    let off_diagonal: Vec<(usize, u32, u64)> = b.nonzero().into_iter().filter(|&(i, j, _)| (i as u32) < j).collect();
    // every cell (i, j) with i < j <= m must be inside the table
    let m_max = (b.jmax as usize).min(b.imax + 1);
    let m_koszul = (1..=m_max)
        .take_while(|&m| off_diagonal.iter().all(|&(_, j, _)| j as usize > m))
        .last()
        .unwrap_or(0);
    let verdict = match off_diagonal.iter().min_by_key(|c| (c.1, c.0)) {
        Some(&(i, j, dim)) => KoszulVerdict::NotKoszul { i, j, dim },
        None => KoszulVerdict::NoWitnessWithinBounds { m_through: m_koszul },
    };
    let mut delta_fit = Vec::new();
    let mut delta_conflicts = Vec::new();
    for j in 1..=b.jmax {
        let rows: Vec<usize> = (0..=b.imax).filter(|&i| b.get(i, j) != 0).collect();
        match rows.len() {
            0 => {}
            1 => delta_fit.push((j, rows[0])),
            _ => delta_conflicts.push(j),
        }
    }
    let top = (0..=b.imax).rev().find(|&i| b.row_sum(i) != 0);
    let global_dimension_bound = top.filter(|&t| t < b.imax);
    KoszulityReport {
        imax: b.imax,
        jmax: b.jmax,
        m_koszul,
        verdict,
        off_diagonal,
        delta_fit,
        delta_conflicts,
        global_dimension_bound,
    }
}

impl KoszulityReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match &self.verdict {
            KoszulVerdict::NotKoszul { i, j, dim } => {
                s.push_str(&format!("not Koszul: b({i},{j}) = {dim}\n"));
            }
            KoszulVerdict::NoWitnessWithinBounds { m_through } => {
                s.push_str(&format!("m-Koszul for all checked m <= {m_through}; no verdict beyond the bounds\n"));
            }
        }
        s.push_str(&format!("m-Koszul through m = {}\n", self.m_koszul));
        let cells: Vec<String> = self.delta_fit.iter().map(|(j, i)| format!("{j}->{i}")).collect();
        s.push_str(&format!("column pattern (j->i): {}\n", cells.join(" ")));
        if !self.delta_conflicts.is_empty() {
            s.push_str(&format!("columns with several rows: {:?}\n", self.delta_conflicts));
        }
        match self.global_dimension_bound {
            Some(g) => s.push_str(&format!("no generators beyond row {g} within the bounds\n")),
            None => s.push_str("top row nonempty; global dimension not bounded\n"),
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(imax: usize, jmax: u32, cells: &[(usize, u32, u64)]) -> BettiTable {
        let mut entries = vec![vec![0; jmax as usize + 1]; imax + 1];
        entries[0][0] = 1;
        for &(i, j, b) in cells {
            entries[i][j as usize] = b;
        }
        BettiTable {
            imax,
            jmax,
            entries,
            complete: true,
            field: "p:32003".into(),
            order: "deglex".into(),
            grading: "classes".into(),
        }
    }

    #[test]
    fn off_diagonal_witness() {
        let t = table(6, 8, &[(1, 1, 15), (2, 2, 19), (3, 3, 16), (4, 4, 7), (5, 6, 1)]);
        let r = koszulity_report(&t);
        assert_eq!(r.m_koszul, 5);
        assert_eq!(r.verdict, KoszulVerdict::NotKoszul { i: 5, j: 6, dim: 1 });
        assert_eq!(r.delta_fit, vec![(1, 1), (2, 2), (3, 3), (4, 4), (6, 5)]);
        assert_eq!(r.global_dimension_bound, Some(5));
    }

    #[test]
    fn diagonal_is_bounded() {
        let t = table(3, 5, &[(1, 1, 2), (2, 2, 1)]);
        let r = koszulity_report(&t);
        assert_eq!(r.verdict, KoszulVerdict::NoWitnessWithinBounds { m_through: 4 });
        assert_eq!(r.global_dimension_bound, Some(2));
    }
}
