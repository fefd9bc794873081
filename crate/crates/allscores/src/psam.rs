//! Live encoding of the suffix/prefix matrix under prepend-to-`A` and
//! append-to-`B`.
//!
//! `A` is stored reversed so that a prepend becomes an append for the
//! dynamic match tables; public coordinates are translated at the
//! boundary. An append to `B` is the same scan run through the reversal
//! correspondence `Psi_{A,B}[i,j] = Psi_{rev(B),rev(A)}[m-j, n-i]`, which
//! swaps the roles of the two strings and of rows and columns.
//!
//! Unlike the substring/string case, the pivot rows touched by one update
//! are not consecutive: a block here is the set of pivots between two
//! occurrences of the updated symbol, so the scan leans on constant-time
//! NextMatch/PrevMatch queries instead of direct string walking. The work
//! per operation is proportional to `L = LCS(A, B)`.

use crate::counters::OpCounters;
use crate::error::Result;
use crate::oracle::oracle_pivots;
use crate::pivots::{apply_delta, DeltaPivots, MatrixKind, OrderTag, Pivot, PivotSet};
use crate::sequences::{Alphabet, DynamicMatchTables, MatchOracle, Sequence};
use crate::ssam::Emissions;

pub(crate) struct PsamScan {
    pub emissions: Emissions,
    /// Minimum pivot column of the topmost block when that block starts
    /// before the first occurrence of the symbol — the step column of row
    /// 0, which the joint structure needs.
    pub head_jmin: Option<usize>,
}

/// Density-change scan for a prepend of `sym` to the column-side string.
///
/// `pts` must be sorted by increasing row with one pivot per row; `tables`
/// answers match queries over the row-side string (length `tables.len()`).
/// Emissions use the same coordinates as `pts`, plus column 0 for the
/// pivot created left of the old matrix.
pub(crate) fn psam_delta_scan(
    pts: &[Pivot],
    tables: &dyn MatchOracle,
    sym: u8,
    counters: &mut OpCounters,
) -> PsamScan {
    let n = tables.len();
    let mut ems = Emissions::new();
    let mut head_jmin = None;
    let mut t = 0;
    while t < pts.len() {
        counters.touched_pivots += 1;
        let i1 = pts[t].row - 1;
        counters.table_queries += 2;
        let k_minus = tables.prev_match(i1, sym);
        let k_plus = tables.next_match(i1, sym);
        // Forward scan: the block is every pivot at or above row k_plus.
        let mut u = t + 1;
        while u < pts.len() && k_plus.map_or(true, |kp| pts[u].row <= kp) {
            counters.touched_pivots += 1;
            u += 1;
        }
        if u < pts.len() {
            counters.touched_pivots += 1;
        }
        // Backward scan with the running minimum column of pivots below.
        let mut jmin: Option<usize> = None;
        for v in (t..u).rev() {
            counters.touched_pivots += 1;
            let pv = pts[v];
            if Some(pv.row) == k_plus {
                // Match row at the block end: its pivot always survives to
                // a +1; its -1, if any, belongs to the next block's scan.
                ems.push((pv.row, pv.col, 1));
            } else if k_plus.is_some() && jmin.map_or(true, |jm| pv.col < jm) {
                ems.push((pv.row, pv.col, 1));
                if let Some(jm) = jmin {
                    ems.push((pv.row, jm, -1));
                }
            }
            jmin = Some(jmin.map_or(pv.col, |jm| jm.min(pv.col)));
        }
        // The match row opening the block takes its -1 from this block's
        // minimum column.
        if let (Some(km), Some(_)) = (k_minus, k_plus) {
            if let Some(jm) = jmin {
                ems.push((km, jm, -1));
            }
        }
        if t == 0 && k_minus.is_none() && k_plus.is_some() {
            head_jmin = jmin;
        }
        t = u;
    }
    // The last occurrence of sym turns into the single column-0 pivot.
    counters.table_queries += 1;
    if let Some(i_star) = tables.prev_match(n, sym) {
        ems.push((i_star, 0, -1));
    }
    PsamScan {
        emissions: ems,
        head_jmin,
    }
}

/// Map current pivots into the reversed orientation in which an append to
/// `B` looks like a prepend. Input must be sorted by increasing column;
/// output is sorted by increasing (mirror) row.
pub(crate) fn mirror_pivots(points: &[Pivot], n: usize, m: usize) -> Vec<Pivot> {
    points
        .iter()
        .rev()
        .map(|p| Pivot {
            row: m + 1 - p.col,
            col: n + 1 - p.row,
        })
        .collect()
}

/// Map a mirror-space emission back to original coordinates. A mirror
/// column of 0 lands on the freshly appended row `n + 1`.
pub(crate) fn unmirror_emission(
    (row, col, value): (usize, usize, i32),
    n: usize,
    m: usize,
) -> (usize, usize, i32) {
    (n + 1 - col, m + 1 - row, value)
}

/// The live suffix/prefix encoding.
pub struct PsamState {
    alphabet: Alphabet,
    a_rev: Sequence,
    b: Sequence,
    pivots: PivotSet,
    tables_a: DynamicMatchTables,
    tables_b: DynamicMatchTables,
    last_op: OpCounters,
}

impl PsamState {
    pub fn new(a: &[u8], b: &[u8], alphabet: Alphabet) -> Result<Self> {
        let a_seq = Sequence::from_bytes(a, &alphabet)?;
        let b_seq = Sequence::from_bytes(b, &alphabet)?;
        let mut pivots = oracle_pivots(MatrixKind::Psam, &a_seq, &b_seq);
        pivots.sort_by_row();
        let a_rev = a_seq.reversed();
        let tables_a = DynamicMatchTables::from_sequence(&a_rev, &alphabet)?;
        let tables_b = DynamicMatchTables::from_sequence(&b_seq, &alphabet)?;
        Ok(PsamState {
            alphabet,
            a_rev,
            b: b_seq,
            pivots,
            tables_a,
            tables_b,
            last_op: OpCounters::default(),
        })
    }

    /// Re-arrange the pivot list; both one-sided modes then run unchanged.
    /// A comparison sort, so O(L log L).
    pub fn resort(&mut self, order: OrderTag) {
        match order {
            OrderTag::RowSorted => {
                if self.pivots.order != OrderTag::RowSorted {
                    self.pivots.sort_by_row();
                }
            }
            OrderTag::ColumnSorted => {
                if self.pivots.order != OrderTag::ColumnSorted {
                    self.pivots.sort_by_col();
                }
            }
            _ => {}
        }
    }

    pub fn prepend_a(&mut self, sym: u8) -> Result<()> {
        self.alphabet.index_of(sym)?;
        self.last_op = OpCounters::default();
        self.resort(OrderTag::RowSorted);
        let scan = psam_delta_scan(&self.pivots.points, &self.tables_b, sym, &mut self.last_op);
        let delta = DeltaPivots::from_emissions(MatrixKind::Psam, &scan.emissions);
        let bounds = (self.b.len(), self.a_rev.len() + 1);
        let base = std::mem::replace(
            &mut self.pivots,
            PivotSet::empty(MatrixKind::Psam, bounds),
        );
        let mut merged = apply_delta(base, &delta)?;
        // Reindex: the prepended symbol becomes column 1 of the new matrix.
        for p in &mut merged.points {
            p.col += 1;
        }
        merged.bounds = bounds;
        merged.sort_by_row();
        self.pivots = merged;
        self.a_rev.push_back(sym);
        self.tables_a.append(sym)?;
        Ok(())
    }

    pub fn append_b(&mut self, sym: u8) -> Result<()> {
        self.alphabet.index_of(sym)?;
        self.last_op = OpCounters::default();
        self.resort(OrderTag::ColumnSorted);
        let (n, m) = (self.b.len(), self.a_rev.len());
        let mirrored = mirror_pivots(&self.pivots.points, n, m);
        let scan = psam_delta_scan(&mirrored, &self.tables_a, sym, &mut self.last_op);
        let emissions: Emissions = scan
            .emissions
            .iter()
            .map(|&e| unmirror_emission(e, n, m))
            .collect();
        let delta = DeltaPivots::from_emissions(MatrixKind::Psam, &emissions);
        let bounds = (n + 1, m);
        let base = std::mem::replace(
            &mut self.pivots,
            PivotSet::empty(MatrixKind::Psam, bounds),
        );
        let mut merged = apply_delta(base, &delta)?;
        merged.bounds = bounds;
        merged.sort_by_col();
        self.pivots = merged;
        self.b.push_back(sym);
        self.tables_b.append(sym)?;
        Ok(())
    }

    pub fn pivots(&self) -> &PivotSet {
        &self.pivots
    }

    /// Logical `A`, i.e. the reversal of the internal storage.
    pub fn a_bytes(&self) -> Vec<u8> {
        let mut v = self.a_rev.bytes().to_vec();
        v.reverse();
        v
    }

    pub fn b(&self) -> &Sequence {
        &self.b
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Tables over `rev(A)` and over `B`, for consistency checks.
    pub fn tables(&self) -> (&DynamicMatchTables, &DynamicMatchTables) {
        (&self.tables_a, &self.tables_b)
    }

    pub fn last_op(&self) -> OpCounters {
        self.last_op
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::lcs_length;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn state(a: &str, b: &str) -> PsamState {
        PsamState::new(a.as_bytes(), b.as_bytes(), Alphabet::lowercase()).unwrap()
    }

    fn cells(st: &PsamState) -> Vec<(usize, usize)> {
        st.pivots().canonical_cells()
    }

    fn oracle_cells(st: &PsamState) -> Vec<(usize, usize)> {
        let a = Sequence::from_bytes(&st.a_bytes(), st.alphabet()).unwrap();
        oracle_pivots(MatrixKind::Psam, &a, st.b()).canonical_cells()
    }

    #[test]
    fn build_fixture() {
        let st = state("bbcbbaa", "aacabba");
        assert_eq!(cells(&st), vec![(3, 5), (5, 2), (6, 1), (7, 6)]);
    }

    #[test]
    fn build_trivial_cases() {
        assert!(cells(&state("", "abba")).is_empty());
        assert_eq!(state("ab", "ab").pivots().len(), 2);
    }

    #[test]
    fn prepend_fixture() {
        let mut st = state("bbcbbaa", "aacabba");
        st.prepend_a(b'a').unwrap();
        assert_eq!(cells(&st), vec![(2, 6), (4, 2), (5, 3), (6, 7), (7, 1)]);
        assert_eq!(cells(&st), oracle_cells(&st));
    }

    #[test]
    fn prepend_symbol_absent_from_b() {
        let mut st = state("bbcbbaa", "aacabba");
        st.prepend_a(b'z').unwrap();
        // Only the column reindex applies.
        assert_eq!(cells(&st), vec![(3, 6), (5, 3), (6, 2), (7, 7)]);
        assert_eq!(cells(&st), oracle_cells(&st));
    }

    #[test]
    fn append_b_examples() {
        let mut st = state("bbcbbaa", "aacabba");
        st.append_b(b'a').unwrap();
        assert_eq!(cells(&st), oracle_cells(&st));

        // Appending a symbol absent from A leaves the pivots unchanged.
        let mut st = state("ab", "ba");
        let before = cells(&st);
        st.append_b(b'z').unwrap();
        assert_eq!(cells(&st), before);
        assert_eq!(cells(&st), oracle_cells(&st));

        // (a, empty): the new bottom row carries the first pivot.
        let mut st = state("a", "");
        st.append_b(b'a').unwrap();
        assert_eq!(cells(&st), vec![(1, 1)]);
        assert_eq!(cells(&st), oracle_cells(&st));
    }

    #[test]
    fn resort_examples() {
        let mut st = state("bbcbbaa", "aacabba");
        st.resort(OrderTag::ColumnSorted);
        let pts: Vec<(usize, usize)> = st.pivots().points.iter().map(|p| (p.row, p.col)).collect();
        assert_eq!(pts, vec![(6, 1), (5, 2), (3, 5), (7, 6)]);
        st.resort(OrderTag::ColumnSorted);
        let again: Vec<(usize, usize)> =
            st.pivots().points.iter().map(|p| (p.row, p.col)).collect();
        assert_eq!(pts, again);
        let mut st = state("", "");
        st.resort(OrderTag::ColumnSorted);
        assert!(st.pivots().is_empty());
    }

    #[test]
    fn streams_match_oracle_with_counter_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let al = Alphabet::lowercase_prefix(2).unwrap();
        for _ in 0..60 {
            let la = rng.gen_range(0..=10);
            let lb = rng.gen_range(0..=12);
            let a: Vec<u8> = (0..la).map(|_| b'a' + rng.gen_range(0..2)).collect();
            let b: Vec<u8> = (0..lb).map(|_| b'a' + rng.gen_range(0..2)).collect();
            let mut st = PsamState::new(&a, &b, al.clone()).unwrap();
            for _ in 0..12 {
                let sym = b'a' + rng.gen_range(0..2);
                let l_before = st.pivots().len() as u64;
                if rng.gen_bool(0.5) {
                    st.prepend_a(sym).unwrap();
                } else {
                    st.append_b(sym).unwrap();
                }
                assert_eq!(cells(&st), oracle_cells(&st), "stream diverged");
                let a_now = Sequence::from_bytes(&st.a_bytes(), &al).unwrap();
                assert_eq!(st.pivots().len(), lcs_length(&a_now, st.b()));
                let c = st.last_op();
                assert!(c.touched_pivots <= 4 * (l_before + 1));
                assert!(c.table_queries <= 2 * (l_before + 1) + 8);
            }
        }
    }
}
