//! Live encoding of the substring/string matrix under two-sided growth
//! of `A`.
//!
//! The state keeps the pivot list twice, once in row-block order and once
//! in column-block order, so that a prepend and an append each find their
//! scan order ready. `B` is fixed: growing it would add a density column
//! that the encoding has no information to fill.
//!
//! A prepend of `sigma` changes scores by 0/1; the scan finds, per maximal
//! run of consecutive pivot rows, the stretches ending at an occurrence of
//! `sigma` in `B`, and converts their step indices into signed density
//! changes. Work is proportional to the number of pivots, which equals
//! `|B| - LCS(A, B)`.

use std::collections::VecDeque;

use crate::counters::OpCounters;
use crate::error::Result;
use crate::oracle::oracle_pivots;
use crate::pivots::{
    apply_delta, cluster_blocks, Axis, DeltaPivots, MatrixKind, PivotSet, ScratchArray,
};
use crate::sequences::{Alphabet, Sequence};

/// Raw density emissions `(row, col, +-1)` of one update.
pub(crate) type Emissions = Vec<(usize, usize, i32)>;

/// Step scan for a prepend to `A`: walk each row block upward to the next
/// occurrence of `sym` in `B`, then walk back accumulating the running
/// maximum pivot column, emitting a density change wherever the step
/// column changes between adjacent rows.
pub(crate) fn prepend_delta_scan(
    row_blocks: &PivotSet,
    b: &Sequence,
    sym: u8,
    counters: &mut OpCounters,
) -> Emissions {
    debug_assert_eq!(row_blocks.kind, MatrixKind::Ssam);
    let pts = &row_blocks.points;
    let mut ems = Emissions::new();
    let mut s = 0;
    while s < pts.len() {
        counters.touched_pivots += 1;
        let mut e = s + 1;
        while e < pts.len() && pts[e].row + 1 == pts[e - 1].row {
            counters.touched_pivots += 1;
            e += 1;
        }
        // Block spans rows r1..=r2, stored with rows decreasing.
        let r2 = pts[s].row;
        let r1 = pts[e - 1].row;
        let col_of = |r: usize| pts[s + (r2 - r)].col;

        let mut start = r1;
        while start <= r2 {
            let i1 = start - 1;
            // Scan B for sym; every row up to the match must hold a pivot,
            // so the walk never leaves the block on success.
            let mut found = None;
            for i in start..=r2 {
                counters.table_queries += 1;
                if b.at(i) == sym {
                    found = Some(i);
                    break;
                }
            }
            let Some(k) = found else { break };
            // Rows i1..k-1 all carry step indices; the step column of row
            // i is the maximum pivot column over rows i+1..=k.
            counters.touched_pivots += 1;
            let mut jmax = col_of(k);
            ems.push((k, jmax, -1));
            let mut i = k - 1;
            while i > i1 {
                counters.touched_pivots += 1;
                let jn = jmax.max(col_of(i));
                if jn != jmax {
                    ems.push((i, jmax, 1));
                    ems.push((i, jn, -1));
                    jmax = jn;
                }
                i -= 1;
            }
            if i1 >= 1 {
                ems.push((i1, jmax, 1));
            }
            start = k + 1;
        }
        s = e;
    }
    ems
}

/// Mirror scan for an append to `A`: walk each column block leftward to
/// the previous occurrence of `sym` in `B`, then rightward with the running
/// minimum pivot row. Also reports the step row at column `|B|`, which the
/// joint structure turns into a new suffix/prefix pivot.
pub(crate) fn append_delta_scan(
    col_blocks: &PivotSet,
    b: &Sequence,
    sym: u8,
    counters: &mut OpCounters,
) -> (Emissions, Option<usize>) {
    debug_assert_eq!(col_blocks.kind, MatrixKind::Ssam);
    let n = b.len();
    let pts = &col_blocks.points;
    let mut ems = Emissions::new();
    let mut last_col_step = None;
    let mut s = 0;
    while s < pts.len() {
        counters.touched_pivots += 1;
        let mut e = s + 1;
        while e < pts.len() && pts[e].col + 1 == pts[e - 1].col {
            counters.touched_pivots += 1;
            e += 1;
        }
        let c2 = pts[s].col;
        let c1 = pts[e - 1].col;
        let row_of = |c: usize| pts[s + (c2 - c)].row;

        let mut start = c2;
        while start >= c1 {
            let j1 = start;
            let mut found = None;
            let mut j = start;
            loop {
                counters.table_queries += 1;
                if b.at(j) == sym {
                    found = Some(j);
                    break;
                }
                if j == c1 {
                    break;
                }
                j -= 1;
            }
            let Some(k) = found else { break };
            counters.touched_pivots += 1;
            let mut imin = row_of(k);
            ems.push((imin, k, -1));
            let mut j = k + 1;
            while j <= j1 {
                counters.touched_pivots += 1;
                let inn = imin.min(row_of(j));
                if inn != imin {
                    ems.push((imin, j, 1));
                    ems.push((inn, j, -1));
                    imin = inn;
                }
                j += 1;
            }
            if j1 + 1 <= n {
                ems.push((imin, j1 + 1, 1));
            }
            if j1 == n {
                last_col_step = Some(imin);
            }
            if k == c1 {
                break;
            }
            start = k - 1;
        }
        s = e;
    }
    (ems, last_col_step)
}

/// The live substring/string encoding.
pub struct SsamState {
    alphabet: Alphabet,
    a: VecDeque<u8>,
    b: Sequence,
    row_blocks: PivotSet,
    col_blocks: PivotSet,
    scratch: ScratchArray,
    last_op: OpCounters,
}

impl SsamState {
    /// Build from scratch: full oracle matrix, density, pivot extraction,
    /// then clustering into both block orders.
    pub fn new(a: &[u8], b: &[u8], alphabet: Alphabet) -> Result<Self> {
        let a_seq = Sequence::from_bytes(a, &alphabet)?;
        let b_seq = Sequence::from_bytes(b, &alphabet)?;
        let pivots = oracle_pivots(MatrixKind::Ssam, &a_seq, &b_seq);
        let mut scratch = ScratchArray::with_capacity_for(b_seq.len().max(a_seq.len()));
        let row_blocks = cluster_blocks(pivots.clone(), Axis::Row, &mut scratch)?;
        let col_blocks = cluster_blocks(pivots, Axis::Column, &mut scratch)?;
        Ok(SsamState {
            alphabet,
            a: a.iter().copied().collect(),
            b: b_seq,
            row_blocks,
            col_blocks,
            scratch,
            last_op: OpCounters::default(),
        })
    }

    pub fn prepend_a(&mut self, sym: u8) -> Result<()> {
        self.alphabet.index_of(sym)?;
        self.last_op = OpCounters::default();
        let ems = prepend_delta_scan(&self.row_blocks, &self.b, sym, &mut self.last_op);
        self.a.push_front(sym);
        self.merge(&ems)
    }

    pub fn append_a(&mut self, sym: u8) -> Result<()> {
        self.alphabet.index_of(sym)?;
        self.last_op = OpCounters::default();
        let (ems, _) = append_delta_scan(&self.col_blocks, &self.b, sym, &mut self.last_op);
        self.a.push_back(sym);
        self.merge(&ems)
    }

    fn merge(&mut self, ems: &Emissions) -> Result<()> {
        let delta = DeltaPivots::from_emissions(MatrixKind::Ssam, ems);
        let bounds = (self.b.len(), self.a.len());
        let base = std::mem::replace(
            &mut self.row_blocks,
            PivotSet::empty(MatrixKind::Ssam, bounds),
        );
        let mut merged = apply_delta(base, &delta)?;
        merged.bounds = bounds;
        self.row_blocks = cluster_blocks(merged.clone(), Axis::Row, &mut self.scratch)?;
        self.col_blocks = cluster_blocks(merged, Axis::Column, &mut self.scratch)?;
        Ok(())
    }

    /// The current pivot set (row-block arrangement).
    pub fn pivots(&self) -> &PivotSet {
        &self.row_blocks
    }

    pub fn a_bytes(&self) -> Vec<u8> {
        self.a.iter().copied().collect()
    }

    pub fn b(&self) -> &Sequence {
        &self.b
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Work counters of the most recent operation.
    pub fn last_op(&self) -> OpCounters {
        self.last_op
    }
}
