//! Exact crossing counts for the geometric halving graph.

use crate::geom::segments_cross;
use crate::graph::HalvingGraph;

/// Result of counting proper pairwise edge crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingReport {
    /// Number of unordered edge pairs whose open segments cross.
    pub cr: u64,
    /// Edge pairs actually submitted to the predicate (pairs sharing an
    /// endpoint are skipped beforehand; they cannot cross).
    pub pairs_tested: u64,
}

/// Counts unordered edge pairs with a proper interior crossing, O(m^2) exact
/// predicate tests.
pub fn crossing_number(g: &HalvingGraph) -> CrossingReport {
    let ps = g.points();
    let edges = g.edges();
    let mut cr = 0u64;
    let mut pairs_tested = 0u64;
    for (idx, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[idx + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            pairs_tested += 1;
            if segments_cross(ps.get(a), ps.get(b), ps.get(c), ps.get(d)) {
                cr += 1;
            }
        }
    }
    CrossingReport { cr, pairs_tested }
}
