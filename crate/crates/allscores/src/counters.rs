/// Deterministic work counters recorded by every update operation.
///
/// `touched_pivots` counts pivot examinations made by the delta scans
/// (block walks plus forward and backward passes). `table_queries` counts
/// match-table lookups and direct string accesses. Housekeeping that is
/// bounded by the output size — re-clustering, re-sorting, delta merging —
/// is not counted; the counters exist to measure the scan work that the
/// sparsity bounds govern.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCounters {
    pub touched_pivots: u64,
    pub table_queries: u64,
}
