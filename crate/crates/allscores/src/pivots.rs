//! The compact encoding: pivot sets, score reconstruction by dominance
//! counting, block clustering, and signed-delta merging.
//!
//! A pivot set is the complete encoding of an all-scores matrix — the
//! non-zero cells of its density matrix, which number `n - L` for the
//! substring/string matrix and `L` for the suffix/prefix matrix. Updates
//! arrive as signed density changes: a change with the kind's sign creates
//! a pivot, the opposite sign cancels an existing one exactly.

use crate::error::{Error, Result};

/// Which all-scores matrix a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    /// `K[i,j] = LCS(B[i..j], A)`; density non-zeros are all +1.
    Ssam,
    /// `Psi[i,j] = LCS(B[i..n], A[0..j])`; density non-zeros are all -1.
    Psam,
}

impl MatrixKind {
    pub fn sign(self) -> i32 {
        match self {
            MatrixKind::Ssam => 1,
            MatrixKind::Psam => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::Ssam => "SSAM",
            MatrixKind::Psam => "PSAM",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "SSAM" => Ok(MatrixKind::Ssam),
            "PSAM" => Ok(MatrixKind::Psam),
            other => Err(Error::Parse(format!("unknown matrix kind {other:?}"))),
        }
    }
}

/// A non-zero density cell. Rows are always >= 1; column 0 appears only
/// transiently inside suffix/prefix updates, before the reindex shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pivot {
    pub row: usize,
    pub col: usize,
}

/// How the point list of a [`PivotSet`] is currently arranged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderTag {
    /// Maximal runs of consecutive occupied rows stored contiguously,
    /// decreasing row inside a run; run order arbitrary.
    RowBlocks,
    /// Same with columns.
    ColumnBlocks,
    RowSorted,
    ColumnSorted,
    Unordered,
}

/// The encoding of one all-scores matrix: its pivots plus bookkeeping.
///
/// `bounds` is `(n, m)` = (|B|, |A|). At most one pivot per row and at most
/// one per column; `order` truthfully describes the list arrangement.
#[derive(Debug, Clone)]
pub struct PivotSet {
    pub kind: MatrixKind,
    pub points: Vec<Pivot>,
    pub order: OrderTag,
    pub bounds: (usize, usize),
}

impl PivotSet {
    pub fn new(kind: MatrixKind, points: Vec<Pivot>, bounds: (usize, usize)) -> Self {
        PivotSet {
            kind,
            points,
            order: OrderTag::Unordered,
            bounds,
        }
    }

    pub fn empty(kind: MatrixKind, bounds: (usize, usize)) -> Self {
        PivotSet::new(kind, Vec::new(), bounds)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Lexicographic (row, col) order — the canonical dump arrangement.
    pub fn sort_canonical(&mut self) {
        self.points.sort_unstable();
        self.order = OrderTag::RowSorted;
    }

    pub fn sort_by_row(&mut self) {
        self.points.sort_unstable_by_key(|p| p.row);
        self.order = OrderTag::RowSorted;
    }

    pub fn sort_by_col(&mut self) {
        self.points.sort_unstable_by_key(|p| p.col);
        self.order = OrderTag::ColumnSorted;
    }

    /// Cells as a sorted list, for comparisons against the oracle.
    pub fn canonical_cells(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.points.iter().map(|p| (p.row, p.col)).collect();
        v.sort_unstable();
        v
    }
}

/// Signed density changes produced by one update: pivots to create and
/// pivots to cancel. Disjoint by construction; [`apply_delta`] re-checks.
#[derive(Debug, Clone, Default)]
pub struct DeltaPivots {
    pub additions: Vec<Pivot>,
    pub removals: Vec<Pivot>,
}

impl DeltaPivots {
    /// Interpret raw density emissions `(row, col, value)` for a matrix
    /// kind: the kind's sign creates a pivot, the opposite sign cancels.
    pub fn from_emissions(kind: MatrixKind, emissions: &[(usize, usize, i32)]) -> Self {
        let mut delta = DeltaPivots::default();
        for &(row, col, value) in emissions {
            debug_assert!(value == 1 || value == -1);
            let p = Pivot { row, col };
            if value == kind.sign() {
                delta.additions.push(p);
            } else {
                delta.removals.push(p);
            }
        }
        delta
    }

    pub fn is_empty(&self) -> bool {
        self.additions.is_empty() && self.removals.is_empty()
    }
}

/// Zero-initialized work array shared across update operations.
///
/// Sized to `max(n, m) + 2` and grown on demand; every user zeroes exactly
/// the cells it wrote, so no operation pays for the full array.
#[derive(Debug, Clone)]
pub struct ScratchArray {
    cells: Vec<usize>,
}

impl ScratchArray {
    pub fn with_capacity_for(max_dim: usize) -> Self {
        ScratchArray {
            cells: vec![0; max_dim + 2],
        }
    }

    pub fn ensure(&mut self, max_dim: usize) {
        if self.cells.len() < max_dim + 2 {
            self.cells.resize(max_dim + 2, 0);
        }
    }

    #[cfg(debug_assertions)]
    fn assert_clean(&self) {
        debug_assert!(
            self.cells.iter().all(|&c| c == 0),
            "scratch array not restored to zero"
        );
    }
}

/// `K[i,j]` reconstructed from pivots by a linear dominance count:
/// `(j - i) - |{(r,c) : i < r <= j, c <= j}|` above the diagonal, `j - i`
/// below it.
pub fn score_ssam(p: &PivotSet, n: usize, i: usize, j: usize) -> Result<i64> {
    debug_assert_eq!(p.kind, MatrixKind::Ssam);
    if i > n || j > n {
        return Err(Error::QueryOutOfRange {
            kind: "SSAM",
            i,
            j,
            n,
            m: n,
        });
    }
    if i > j {
        return Ok(j as i64 - i as i64);
    }
    let dominated = p
        .points
        .iter()
        .filter(|p| i < p.row && p.row <= j && p.col <= j)
        .count();
    Ok((j - i) as i64 - dominated as i64)
}

/// `Psi[i,j]` reconstructed from pivots: `|{(r,c) : r > i, c <= j}|`.
pub fn score_psam(p: &PivotSet, i: usize, j: usize) -> Result<i64> {
    debug_assert_eq!(p.kind, MatrixKind::Psam);
    let (n, m) = p.bounds;
    if i > n || j > m {
        return Err(Error::QueryOutOfRange {
            kind: "PSAM",
            i,
            j,
            n,
            m,
        });
    }
    Ok(p.points.iter().filter(|p| p.row > i && p.col <= j).count() as i64)
}

/// Clustering axis for [`cluster_blocks`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

/// Rearrange a pivot set into block order along `axis`.
///
/// A block is a maximal run of consecutive occupied rows (or columns); the
/// output stores each block contiguously with keys decreasing inside it,
/// while the order between blocks is arbitrary. Runs in O(|P|) cell touches
/// of the scratch array, which is returned to all-zero.
pub fn cluster_blocks(p: PivotSet, axis: Axis, z: &mut ScratchArray) -> Result<PivotSet> {
    let max_key = p
        .points
        .iter()
        .map(|pt| match axis {
            Axis::Row => pt.row,
            Axis::Column => pt.col,
        })
        .max()
        .unwrap_or(0);
    z.ensure(max_key);

    let key = |pt: &Pivot| match axis {
        Axis::Row => pt.row,
        Axis::Column => pt.col,
    };
    let counterpart = |pt: &Pivot| match axis {
        Axis::Row => pt.col,
        Axis::Column => pt.row,
    };

    // Pass 1: mark occupancy, catching duplicate keys. The counterpart is
    // stored +1 so that genuine position 0 never collides with "empty"
    // (counterparts are >= 1 in steady state, but stay defensive-free here:
    // the shift makes any value unambiguous).
    let mut seen_counterpart = std::collections::HashSet::with_capacity(p.points.len());
    for pt in &p.points {
        let k = key(pt);
        if z.cells[k] != 0 {
            // Unwind before erroring so the scratch invariant survives.
            for q in &p.points {
                z.cells[key(q)] = 0;
            }
            return Err(Error::Structural(format!(
                "duplicate pivot {} {}",
                match axis {
                    Axis::Row => "row",
                    Axis::Column => "column",
                },
                k
            )));
        }
        z.cells[k] = counterpart(pt) + 1;
        if !seen_counterpart.insert(counterpart(pt)) {
            for q in &p.points {
                z.cells[key(q)] = 0;
            }
            return Err(Error::Structural(format!(
                "duplicate pivot {}",
                match axis {
                    Axis::Row => "column",
                    Axis::Column => "row",
                }
            )));
        }
    }

    // Pass 2: for each pivot whose block is still marked, walk up to the
    // block's high end, then emit downward while zeroing.
    let mut out = Vec::with_capacity(p.points.len());
    for pt in &p.points {
        let k = key(pt);
        if z.cells[k] == 0 {
            continue;
        }
        let mut hi = k;
        while z.cells[hi + 1] != 0 {
            hi += 1;
        }
        let mut cur = hi;
        while cur >= 1 && z.cells[cur] != 0 {
            let cp = z.cells[cur] - 1;
            out.push(match axis {
                Axis::Row => Pivot { row: cur, col: cp },
                Axis::Column => Pivot { row: cp, col: cur },
            });
            z.cells[cur] = 0;
            cur -= 1;
        }
    }

    #[cfg(debug_assertions)]
    z.assert_clean();

    Ok(PivotSet {
        kind: p.kind,
        points: out,
        order: match axis {
            Axis::Row => OrderTag::RowBlocks,
            Axis::Column => OrderTag::ColumnBlocks,
        },
        bounds: p.bounds,
    })
}

/// Merge signed density changes into a pivot set.
///
/// Every removal must be present and no addition may collide; violations
/// signal an algorithm bug upstream and surface as structural errors, as
/// does a result with two pivots in one row or column.
pub fn apply_delta(p: PivotSet, delta: &DeltaPivots) -> Result<PivotSet> {
    use std::collections::HashSet;
    let mut set: HashSet<Pivot> = p.points.iter().copied().collect();
    for r in &delta.removals {
        if !set.remove(r) {
            return Err(Error::Structural(format!(
                "removal of absent pivot ({},{})",
                r.row, r.col
            )));
        }
    }
    for a in &delta.additions {
        if !set.insert(*a) {
            return Err(Error::Structural(format!(
                "duplicate addition ({},{})",
                a.row, a.col
            )));
        }
    }
    let mut rows = HashSet::with_capacity(set.len());
    let mut cols = HashSet::with_capacity(set.len());
    for pt in &set {
        if !rows.insert(pt.row) {
            return Err(Error::Structural(format!("two pivots in row {}", pt.row)));
        }
        if !cols.insert(pt.col) {
            return Err(Error::Structural(format!("two pivots in column {}", pt.col)));
        }
    }
    Ok(PivotSet {
        kind: p.kind,
        points: set.into_iter().collect(),
        order: OrderTag::Unordered,
        bounds: p.bounds,
    })
}

/// Canonical text dump: header `kind n m count`, one `row col` line per
/// pivot in lexicographic order. Byte equality of dumps is set equality.
pub fn format_dump(p: &PivotSet) -> String {
    let mut out = String::new();
    let (n, m) = p.bounds;
    out.push_str(&format!("{} {} {} {}\n", p.kind.name(), n, m, p.len()));
    for (row, col) in p.canonical_cells() {
        out.push_str(&format!("{row} {col}\n"));
    }
    out
}

/// Parse one or more concatenated dump sections.
pub fn parse_dump(text: &str) -> Result<Vec<PivotSet>> {
    let mut sets = Vec::new();
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    while let Some(header) = lines.next() {
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::Parse(format!("bad dump header {header:?}")));
        }
        let kind = MatrixKind::parse(fields[0])?;
        let parse_num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad number {s:?} in dump header")))
        };
        let n = parse_num(fields[1])?;
        let m = parse_num(fields[2])?;
        let count = parse_num(fields[3])?;
        let mut points = Vec::with_capacity(count);
        for _ in 0..count {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("dump truncated".into()))?;
            let nums: Vec<&str> = line.split_whitespace().collect();
            if nums.len() != 2 {
                return Err(Error::Parse(format!("bad pivot line {line:?}")));
            }
            points.push(Pivot {
                row: parse_num(nums[0])?,
                col: parse_num(nums[1])?,
            });
        }
        let mut set = PivotSet::new(kind, points, (n, m));
        set.order = OrderTag::RowSorted;
        sets.push(set);
    }
    Ok(sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_pivots, oracle_psam, oracle_ssam};
    use crate::sequences::{Alphabet, Sequence};

    fn seq(s: &str) -> Sequence {
        Sequence::from_bytes(s.as_bytes(), &Alphabet::lowercase()).unwrap()
    }

    fn pset(kind: MatrixKind, cells: &[(usize, usize)], bounds: (usize, usize)) -> PivotSet {
        PivotSet::new(
            kind,
            cells.iter().map(|&(row, col)| Pivot { row, col }).collect(),
            bounds,
        )
    }

    const K_FIXTURE: &[(usize, usize)] = &[(1, 3), (2, 5), (3, 4), (5, 7), (6, 8), (8, 9)];
    const PSI_FIXTURE: &[(usize, usize)] = &[(3, 5), (5, 2), (6, 1), (7, 6)];

    #[test]
    fn score_ssam_fixture() {
        let p = pset(MatrixKind::Ssam, K_FIXTURE, (9, 5));
        assert_eq!(score_ssam(&p, 9, 1, 3).unwrap(), 2);
        assert_eq!(score_ssam(&p, 9, 4, 4).unwrap(), 0);
        assert_eq!(score_ssam(&p, 9, 7, 2).unwrap(), -5);
        assert_eq!(score_ssam(&p, 9, 0, 9).unwrap(), 3);
        assert!(score_ssam(&p, 9, 0, 10).is_err());
    }

    #[test]
    fn score_psam_fixture() {
        let p = pset(MatrixKind::Psam, PSI_FIXTURE, (7, 7));
        assert_eq!(score_psam(&p, 0, 7).unwrap(), 4);
        assert_eq!(score_psam(&p, 7, 3).unwrap(), 0);
        assert_eq!(score_psam(&p, 3, 5).unwrap(), 2);
        assert!(score_psam(&p, 8, 0).is_err());
    }

    #[test]
    fn scores_match_oracle_on_small_instances() {
        let al = Alphabet::lowercase_prefix(2).unwrap();
        let mut state = 0xabcdef12345u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..100 {
            let la = (next() % 21) as usize;
            let lb = (next() % 21) as usize;
            let a: Vec<u8> = (0..la).map(|_| b'a' + (next() % 2) as u8).collect();
            let b: Vec<u8> = (0..lb).map(|_| b'a' + (next() % 2) as u8).collect();
            let a = Sequence::from_bytes(&a, &al).unwrap();
            let b = Sequence::from_bytes(&b, &al).unwrap();

            let k = oracle_ssam(&a, &b);
            let pk = oracle_pivots(MatrixKind::Ssam, &a, &b);
            for i in 0..=b.len() {
                for j in 0..=b.len() {
                    assert_eq!(
                        score_ssam(&pk, b.len(), i, j).unwrap(),
                        k.get(i, j) as i64
                    );
                }
            }

            let psi = oracle_psam(&a, &b);
            let pp = oracle_pivots(MatrixKind::Psam, &a, &b);
            for i in 0..=b.len() {
                for j in 0..=a.len() {
                    assert_eq!(score_psam(&pp, i, j).unwrap(), psi.get(i, j) as i64);
                }
            }
        }
    }

    #[test]
    fn cluster_blocks_row_fixture() {
        let mut z = ScratchArray::with_capacity_for(9);
        let p = pset(MatrixKind::Ssam, K_FIXTURE, (9, 5));
        let clustered = cluster_blocks(p, Axis::Row, &mut z).unwrap();
        let rows: Vec<usize> = clustered.points.iter().map(|p| p.row).collect();
        // Blocks {1..3}, {5..6}, {8}, decreasing inside each; block order
        // follows first encounter in the input list.
        assert_eq!(rows, vec![3, 2, 1, 6, 5, 8]);
        assert_eq!(clustered.order, OrderTag::RowBlocks);
    }

    #[test]
    fn cluster_blocks_column_fixture() {
        let mut z = ScratchArray::with_capacity_for(9);
        let p = pset(MatrixKind::Ssam, K_FIXTURE, (9, 5));
        let clustered = cluster_blocks(p, Axis::Column, &mut z).unwrap();
        let cols: Vec<usize> = clustered.points.iter().map(|p| p.col).collect();
        // Column blocks {3..5} and {7..9}.
        assert_eq!(cols, vec![5, 4, 3, 9, 8, 7]);
        let cells = clustered.canonical_cells();
        assert_eq!(cells, K_FIXTURE.to_vec());
    }

    #[test]
    fn cluster_single_pivot() {
        let mut z = ScratchArray::with_capacity_for(4);
        let p = pset(MatrixKind::Ssam, &[(2, 4)], (4, 4));
        let clustered = cluster_blocks(p, Axis::Column, &mut z).unwrap();
        assert_eq!(clustered.points, vec![Pivot { row: 2, col: 4 }]);
    }

    #[test]
    fn cluster_rejects_duplicates() {
        let mut z = ScratchArray::with_capacity_for(4);
        let p = pset(MatrixKind::Ssam, &[(1, 2), (1, 3)], (4, 4));
        assert!(cluster_blocks(p, Axis::Row, &mut z).is_err());
        // Scratch must still be clean for the next caller.
        let p = pset(MatrixKind::Ssam, &[(1, 2), (3, 2)], (4, 4));
        assert!(cluster_blocks(p, Axis::Column, &mut z).is_err());
        let p = pset(MatrixKind::Ssam, &[(1, 2), (2, 3)], (4, 4));
        assert!(cluster_blocks(p, Axis::Column, &mut z).is_ok());
    }

    #[test]
    fn apply_delta_ssam_fixture() {
        let base = pset(MatrixKind::Ssam, K_FIXTURE, (9, 5));
        let delta = DeltaPivots {
            additions: vec![
                Pivot { row: 2, col: 4 },
                Pivot { row: 4, col: 7 },
                Pivot { row: 7, col: 9 },
            ],
            removals: vec![
                Pivot { row: 2, col: 5 },
                Pivot { row: 3, col: 4 },
                Pivot { row: 5, col: 7 },
                Pivot { row: 8, col: 9 },
            ],
        };
        let merged = apply_delta(base, &delta).unwrap();
        assert_eq!(
            merged.canonical_cells(),
            vec![(1, 3), (2, 4), (4, 7), (6, 8), (7, 9)]
        );
        assert_eq!(merged.order, OrderTag::Unordered);
    }

    #[test]
    fn apply_delta_psam_fixture() {
        let base = pset(MatrixKind::Psam, PSI_FIXTURE, (7, 7));
        let delta = DeltaPivots {
            additions: vec![
                Pivot { row: 2, col: 5 },
                Pivot { row: 4, col: 1 },
                Pivot { row: 6, col: 6 },
                Pivot { row: 7, col: 0 },
            ],
            removals: vec![
                Pivot { row: 3, col: 5 },
                Pivot { row: 6, col: 1 },
                Pivot { row: 7, col: 6 },
            ],
        };
        let merged = apply_delta(base, &delta).unwrap();
        assert_eq!(
            merged.canonical_cells(),
            vec![(2, 5), (4, 1), (5, 2), (6, 6), (7, 0)]
        );
    }

    #[test]
    fn apply_delta_empty_is_identity() {
        let base = pset(MatrixKind::Ssam, K_FIXTURE, (9, 5));
        let merged = apply_delta(base, &DeltaPivots::default()).unwrap();
        assert_eq!(merged.canonical_cells(), K_FIXTURE.to_vec());
    }

    #[test]
    fn apply_delta_rejects_bad_deltas() {
        let base = pset(MatrixKind::Ssam, &[(1, 1)], (3, 3));
        let delta = DeltaPivots {
            additions: vec![],
            removals: vec![Pivot { row: 2, col: 2 }],
        };
        assert!(apply_delta(base.clone(), &delta).is_err());
        let delta = DeltaPivots {
            additions: vec![Pivot { row: 1, col: 1 }],
            removals: vec![],
        };
        assert!(apply_delta(base.clone(), &delta).is_err());
        // One-per-row violated by the merge itself.
        let delta = DeltaPivots {
            additions: vec![Pivot { row: 1, col: 2 }],
            removals: vec![],
        };
        assert!(apply_delta(base, &delta).is_err());
    }

    #[test]
    fn dump_roundtrip() {
        let p = pset(MatrixKind::Psam, PSI_FIXTURE, (7, 7));
        let text = format_dump(&p);
        assert!(text.starts_with("PSAM 7 7 4\n"));
        let parsed = parse_dump(&text).unwrap();
        assert_eq!(parsed.len(), 1);
        assert_eq!(parsed[0].canonical_cells(), p.canonical_cells());
        assert_eq!(parsed[0].bounds, (7, 7));
    }

    #[test]
    fn dump_empty_set() {
        let p = PivotSet::empty(MatrixKind::Psam, (0, 0));
        assert_eq!(format_dump(&p), "PSAM 0 0 0\n");
    }
}
