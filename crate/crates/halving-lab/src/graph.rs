//! Halving-edge and k-edge enumeration, with degree statistics.
//!
//! A pair (p, q) of an n-point general-position set is a *halving edge* when
//! the line through p and q leaves exactly (n-2)/2 of the remaining points
//! strictly on each side (n even). More generally it is a *k-edge* when one
//! side holds exactly k-1 points, in either orientation; k = n/2 recovers the
//! halving case.
//!
//! Two enumerators are provided: an O(n^3) brute force that counts sides
//! directly, serving as the oracle, and an O(n^2 log n) sweep that sorts the
//! points around each pivot once and reads every side count from the angular
//! order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::geom::{
    check_general_position, orient_sign, orientation, GpViolation, Orientation, Point, PointSet,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("halving edges need an even number of points, got n = {0}")]
    OddN(usize),
    #[error(transparent)]
    Degenerate(#[from] GpViolation),
    #[error("k must satisfy 1 <= k <= n-1, got k = {k} with n = {n}")]
    KOutOfRange { k: usize, n: usize },
}

/// A geometric graph over a point set: the halving edges or the k-edges.
///
/// Owns a copy of its source points; edges are stored as (i, j) pairs with
/// i < j in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalvingGraph {
    points: PointSet,
    edges: Vec<(u32, u32)>,
    adjacency: Vec<Vec<u32>>,
}

impl HalvingGraph {
    fn new(points: &PointSet, mut edges: Vec<(u32, u32)>) -> HalvingGraph {
        edges.sort_unstable();
        let mut adjacency = vec![Vec::new(); points.n()];
        for &(i, j) in &edges {
            adjacency[i as usize].push(j);
            adjacency[j as usize].push(i);
        }
        HalvingGraph {
            points: points.clone(),
            edges,
            adjacency,
        }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.n()
    }

    /// Edge count m.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.iter().map(Vec::len)
    }

    /// Debug dump: header line with m, then one "i j" line per edge, i < j,
    /// lexicographically sorted.
    pub fn dump(&self) -> String {
        let mut out = format!("{}\n", self.m());
        for &(i, j) in &self.edges {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }
}

fn require_even(ps: &PointSet) -> Result<(), GraphError> {
    if ps.n() < 2 || !ps.n().is_multiple_of(2) {
        return Err(GraphError::OddN(ps.n()));
    }
    Ok(())
}

/// O(n^3) halving-edge enumeration by direct side counting; the oracle for
/// every faster path.
pub fn halving_edges_bruteforce(ps: &PointSet) -> Result<HalvingGraph, GraphError> {
    require_even(ps)?;
    check_general_position(ps)?;
    let pts = ps.points();
    let mut edges = Vec::new();
    for (a, p) in pts.iter().enumerate() {
        for q in &pts[a + 1..] {
            let mut ccw = 0usize;
            for r in pts {
                if r.id != p.id && r.id != q.id && orientation(*p, *q, *r) == Orientation::Ccw {
                    ccw += 1;
                }
            }
            if 2 * ccw == ps.n() - 2 {
                edges.push((p.id, q.id));
            }
        }
    }
    Ok(HalvingGraph::new(ps, edges))
}

/// O(n^2 log n) halving-edge enumeration via a rotational sweep per pivot.
pub fn halving_edges_rotational(ps: &PointSet) -> Result<HalvingGraph, GraphError> {
    require_even(ps)?;
    check_general_position(ps)?;
    let half = (ps.n() - 2) / 2;
    let edges = sweep_edges(ps, |left| left == half);
    Ok(HalvingGraph::new(ps, edges))
}

/// Pairs whose line leaves exactly k-1 points on one side (either side).
/// k = n/2 reproduces the halving edges; k = 1 yields the convex hull edges.
pub fn k_edges(ps: &PointSet, k: usize) -> Result<HalvingGraph, GraphError> {
    let n = ps.n();
    if k < 1 || k + 1 > n {
        return Err(GraphError::KOutOfRange { k, n });
    }
    check_general_position(ps)?;
    let edges = sweep_edges(ps, |left| left == k - 1 || left + k + 1 == n);
    Ok(HalvingGraph::new(ps, edges))
}

/// Angular order of q and w around pivot p: ascending angle in [0, 2pi),
/// measured from the positive x axis. Exact; ties cannot occur in general
/// position.
pub(crate) fn compare_around(p: Point, q: Point, w: Point) -> Ordering {
    let half = |t: Point| -> u8 {
        let (dx, dy) = (t.x as i128 - p.x as i128, t.y as i128 - p.y as i128);
        if dy > 0 || (dy == 0 && dx > 0) {
            0
        } else {
            1
        }
    };
    half(q).cmp(&half(w)).then_with(|| {
        // within a half turn, q precedes w iff w lies counterclockwise of q
        match orient_sign(
            p.x as i128,
            p.y as i128,
            q.x as i128,
            q.y as i128,
            w.x as i128,
            w.y as i128,
        ) {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    })
}

/// For every pivot p, sorts the other points by angle around p and derives,
/// for each q, the number of points strictly left of the directed line p->q
/// in O(1) amortized. Emits (p, q) pairs passing `keep` once (from the
/// endpoint with the smaller id).
fn sweep_edges(ps: &PointSet, keep: impl Fn(usize) -> bool) -> Vec<(u32, u32)> {
    let pts = ps.points();
    let n = pts.len();
    let mut edges = Vec::new();
    let mut others: Vec<Point> = Vec::with_capacity(n - 1);
    for p in pts {
        others.clear();
        others.extend(pts.iter().filter(|q| q.id != p.id).copied());
        others.sort_unstable_by(|a, b| compare_around(*p, *a, *b));
        let k = others.len();
        // Points strictly left of p->others[j] occupy a contiguous angular
        // window starting right after j; its end only advances with j.
        let is_left = |j: usize, e: usize| {
            orientation(*p, others[j], others[e % k]) == Orientation::Ccw
        };
        let mut e = 1usize;
        #[allow(clippy::needless_range_loop)] // j drives window arithmetic, not just indexing
        for j in 0..k {
            if e < j + 1 {
                e = j + 1;
            }
            while e - (j + 1) < k - 1 && is_left(j, e) {
                e += 1;
            }
            let left = e - (j + 1);
            if others[j].id > p.id && keep(left) {
                edges.push((p.id, others[j].id));
            }
        }
    }
    edges
}

/// The degree histogram and the statistic M = sum over i of i^2 * n_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHistogram {
    /// degree -> number of vertices with that degree; only nonzero entries.
    pub counts: BTreeMap<usize, usize>,
    /// Maximum degree.
    pub alpha: usize,
    /// M = sum of i^2 * n_i = sum of squared vertex degrees.
    pub sum_sq: u64,
}

impl DegreeHistogram {
    /// Sparse ascending (degree, count) pairs.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.counts.iter().map(|(&i, &c)| (i, c)).collect()
    }
}

pub fn degree_histogram(g: &HalvingGraph) -> DegreeHistogram {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for d in g.degrees() {
        *counts.entry(d).or_insert(0) += 1;
    }
    let alpha = counts.keys().last().copied().unwrap_or(0);
    let sum_sq = counts
        .iter()
        .map(|(&i, &c)| (i * i * c) as u64)
        .sum();
    DegreeHistogram {
        counts,
        alpha,
        sum_sq,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointgen::{generate, GeneratorSpec, Kind};

    fn quad() -> PointSet {
        PointSet::from_coords([(0, 0), (10, 0), (10, 10), (0, 10)])
    }

    fn star() -> PointSet {
        PointSet::from_coords([(0, 0), (10, 0), (5, 10), (5, 4)])
    }

    #[test]
    fn quad_has_its_diagonals() {
        let g = halving_edges_bruteforce(&quad()).unwrap();
        assert_eq!(g.edges(), [(0, 2), (1, 3)]);
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn star_has_three_edges_at_center() {
        let g = halving_edges_bruteforce(&star()).unwrap();
        assert_eq!(g.edges(), [(0, 3), (1, 3), (2, 3)]);
        assert_eq!(g.degree(3), 3);
    }

    #[test]
    fn two_points_form_one_halving_edge() {
        let ps = PointSet::from_coords([(0, 0), (1, 1)]);
        let g = halving_edges_bruteforce(&ps).unwrap();
        assert_eq!(g.edges(), [(0, 1)]);
    }

    #[test]
    fn rotational_matches_bruteforce_on_hand_cases() {
        for ps in [quad(), star()] {
            let brute = halving_edges_bruteforce(&ps).unwrap();
            let fast = halving_edges_rotational(&ps).unwrap();
            assert_eq!(brute.edges(), fast.edges());
        }
    }

    #[test]
    fn rotational_matches_bruteforce_on_random_sets() {
        for n in (4..=16).step_by(2) {
            for seed in 0..20 {
                let ps = generate(&GeneratorSpec::new(Kind::RandomSquare, n, seed)).unwrap();
                let brute = halving_edges_bruteforce(&ps).unwrap();
                let fast = halving_edges_rotational(&ps).unwrap();
                assert_eq!(brute.edges(), fast.edges(), "n = {n}, seed = {seed}");
            }
        }
    }

    #[test]
    fn k_1_is_the_convex_hull() {
        let g = k_edges(&quad(), 1).unwrap();
        assert_eq!(g.edges(), [(0, 1), (0, 3), (1, 2), (2, 3)]);
        let g = k_edges(&star(), 1).unwrap();
        assert_eq!(g.edges(), [(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn k_half_n_equals_halving() {
        for seed in 0..10 {
            let ps = generate(&GeneratorSpec::new(Kind::RandomSquare, 10, seed)).unwrap();
            let halving = halving_edges_bruteforce(&ps).unwrap();
            let k = k_edges(&ps, 5).unwrap();
            assert_eq!(halving.edges(), k.edges());
        }
    }

    #[test]
    fn k_edges_counted_once_across_orientations() {
        // every pair is a k-edge for exactly one k in 1..=n/2 (side counts
        // k-1 and n-k-1); summing m over that range must cover all pairs
        let ps = generate(&GeneratorSpec::new(Kind::RandomSquare, 10, 77)).unwrap();
        let total: usize = (1..=5).map(|k| k_edges(&ps, k).unwrap().m()).sum();
        assert_eq!(total, 10 * 9 / 2);
    }

    #[test]
    fn degree_histograms_of_hand_cases() {
        let h = degree_histogram(&halving_edges_bruteforce(&quad()).unwrap());
        assert_eq!(h.pairs(), [(1, 4)]);
        assert_eq!((h.alpha, h.sum_sq), (1, 4));

        let h = degree_histogram(&halving_edges_bruteforce(&star()).unwrap());
        assert_eq!(h.pairs(), [(1, 3), (3, 1)]);
        assert_eq!((h.alpha, h.sum_sq), (3, 12));

        let two = PointSet::from_coords([(0, 0), (1, 1)]);
        let h = degree_histogram(&halving_edges_bruteforce(&two).unwrap());
        assert_eq!(h.pairs(), [(1, 2)]);
        assert_eq!((h.alpha, h.sum_sq), (1, 2));
    }

    #[test]
    fn convex_position_closed_form() {
        for n in [4usize, 6, 8, 10, 12] {
            let ps = generate(&GeneratorSpec::new(Kind::ConvexPosition, n, 5)).unwrap();
            let g = halving_edges_bruteforce(&ps).unwrap();
            assert_eq!(g.m(), n / 2, "n = {n}");
            let expected: Vec<(u32, u32)> =
                (0..n / 2).map(|i| (i as u32, (i + n / 2) as u32)).collect();
            assert_eq!(g.edges(), expected, "long diagonals, n = {n}");
        }
    }

    #[test]
    fn degrees_are_odd_and_sum_to_2m() {
        for seed in 0..20 {
            let ps = generate(&GeneratorSpec::new(Kind::RandomSquare, 14, seed)).unwrap();
            let g = halving_edges_rotational(&ps).unwrap();
            assert!(g.degrees().all(|d| d % 2 == 1));
            assert_eq!(g.degrees().sum::<usize>(), 2 * g.m());
            let h = degree_histogram(&g);
            assert_eq!(h.counts.values().sum::<usize>(), ps.n());
            assert_eq!(
                h.counts.iter().map(|(&i, &c)| i * c).sum::<usize>(),
                2 * g.m()
            );
        }
    }

    #[test]
    fn error_cases() {
        let odd = PointSet::from_coords([(0, 0), (1, 0), (0, 1)]);
        assert!(matches!(
            halving_edges_bruteforce(&odd),
            Err(GraphError::OddN(3))
        ));
        let degenerate = PointSet::from_coords([(0, 0), (1, 1), (2, 2), (0, 5)]);
        assert!(matches!(
            halving_edges_rotational(&degenerate),
            Err(GraphError::Degenerate(_))
        ));
        let ps = quad();
        assert!(matches!(
            k_edges(&ps, 0),
            Err(GraphError::KOutOfRange { k: 0, n: 4 })
        ));
        assert!(matches!(
            k_edges(&ps, 4),
            Err(GraphError::KOutOfRange { k: 4, n: 4 })
        ));
    }

    #[test]
    fn dump_format() {
        let g = halving_edges_bruteforce(&quad()).unwrap();
        assert_eq!(g.dump(), "2\n0 2\n1 3\n");
    }
}
