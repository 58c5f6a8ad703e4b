//! Executable verification of the structural facts about halving graphs.
//!
//! Four audits, in increasing order of machinery:
//!
//! 1. The crossing/degree identity
//!    cr(G) + sum over v of C((d_v + 1)/2, 2) = C(n/2, 2),
//!    checked in exact integer arithmetic.
//! 2. Degree-histogram facts: the definitional consistency sum d_v^2 =
//!    sum i^2 n_i, the average-degree bound alpha >= 2m/n (both theorems,
//!    asserted), and two historically claimed but unreliable observations
//!    about the counts n_i (odd, non-increasing in i) which are recorded as
//!    data, never asserted.
//! 3. The rotation property: rotating a halving edge's line about either
//!    endpoint, the first position where the remaining points are again split
//!    evenly is reached exactly when the line passes another point, and that
//!    point forms a halving edge with the pivot. Each claimed partner edge is
//!    re-verified by brute-force side counting.
//! 4. The convex-chain decomposition: orienting all halving edges left to
//!    right and matching arrivals to departures at every vertex splits the
//!    graph into chains that each turn with a uniform orientation sign, and
//!    any two chains cross at most twice.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::crossings::CrossingReport;
use crate::geom::{orient_sign, orientation, segments_cross, Orientation, Point, PointSet};
use crate::graph::{DegreeHistogram, HalvingGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("vertex {vertex} has even degree {degree}; not a halving graph")]
    EvenDegree { vertex: u32, degree: usize },
}

/// Both sides of the crossing/degree identity, exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityReport {
    /// cr(G) + sum over v of C((d_v + 1)/2, 2).
    pub lhs: u64,
    /// C(n/2, 2).
    pub rhs: u64,
    pub holds: bool,
}

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Evaluates the identity on exact integers. Every degree of a halving graph
/// is odd; an even degree means the enumeration is broken and is reported as
/// an error rather than as an identity failure.
pub fn verify_identity(
    ps: &PointSet,
    g: &HalvingGraph,
    cr: &CrossingReport,
) -> Result<IdentityReport, AuditError> {
    for (v, d) in g.degrees().enumerate() {
        if d % 2 == 0 {
            return Err(AuditError::EvenDegree {
                vertex: v as u32,
                degree: d,
            });
        }
    }
    let degree_term: u64 = g.degrees().map(|d| choose2((d as u64).div_ceil(2))).sum();
    let lhs = cr.cr + degree_term;
    let rhs = choose2(ps.n() as u64 / 2);
    Ok(IdentityReport {
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

/// Verdicts on the degree-histogram facts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaAuditReport {
    /// sum of d_v^2 computed from degrees equals sum of i^2 n_i from the
    /// histogram (definitional; must hold).
    pub sum_sq_consistent: bool,
    /// alpha >= 2m/n, the average-degree bound (theorem; must hold).
    pub max_degree_bound: bool,
    /// First degree i (ascending) whose vertex count n_i is even, if any.
    /// The claim "every n_i is odd" fails already on a convex quadrilateral
    /// (n_1 = 4); recorded, not asserted.
    pub odd_counts_violation: Option<usize>,
    /// First adjacent pair of present degrees j < i with n_i > n_j, if any.
    /// The claim "n_i <= n_j for i >= j" is likewise recorded, not asserted.
    pub monotone_counts_violation: Option<(usize, usize)>,
}

impl LemmaAuditReport {
    /// The asserted (theorem) parts only.
    pub fn theorems_hold(&self) -> bool {
        self.sum_sq_consistent && self.max_degree_bound
    }
}

fn even_count_violation(counts: &BTreeMap<usize, usize>) -> Option<usize> {
    counts.iter().find(|&(_, &c)| c % 2 == 0).map(|(&i, _)| i)
}

fn monotone_violation(counts: &BTreeMap<usize, usize>) -> Option<(usize, usize)> {
    let mut prev: Option<(usize, usize)> = None;
    for (&i, &c) in counts {
        if let Some((j, cj)) = prev {
            if c > cj {
                return Some((i, j));
            }
        }
        prev = Some((i, c));
    }
    None
}

pub fn audit_lemmas(g: &HalvingGraph, h: &DegreeHistogram) -> LemmaAuditReport {
    let direct: u64 = g.degrees().map(|d| (d * d) as u64).sum();
    let (n, m) = (g.n(), g.m());
    LemmaAuditReport {
        sum_sq_consistent: direct == h.sum_sq,
        max_degree_bound: h.alpha * n >= 2 * m,
        odd_counts_violation: even_count_violation(&h.counts),
        monotone_counts_violation: monotone_violation(&h.counts),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationDirection {
    Ccw,
    Cw,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationCounterexample {
    pub edge: (u32, u32),
    pub pivot: u32,
    pub direction: RotationDirection,
    pub first_point: u32,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RotationReport {
    /// (edge, pivot, direction) triples examined: 4 per edge.
    pub probes: usize,
    pub counterexamples: Vec<RotationCounterexample>,
}

impl RotationReport {
    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Angular order of two direction vectors: ascending angle in [0, 2pi)
/// measured from the positive x axis. Exact.
fn compare_dirs(a: (i128, i128), b: (i128, i128)) -> Ordering {
    let half = |d: (i128, i128)| u8::from(!(d.1 > 0 || (d.1 == 0 && d.0 > 0)));
    half(a).cmp(&half(b)).then_with(|| {
        match orient_sign(0, 0, a.0, a.1, b.0, b.1) {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    })
}

/// Independent halving test for the pair (a, b): brute-force side count.
fn is_halving_pair(ps: &PointSet, a: u32, b: u32) -> bool {
    let (pa, pb) = (ps.get(a), ps.get(b));
    let (mut ccw, mut cw) = (0usize, 0usize);
    for r in ps.iter() {
        if r.id == a || r.id == b {
            continue;
        }
        match orientation(pa, pb, r) {
            Orientation::Ccw => ccw += 1,
            Orientation::Cw => cw += 1,
            Orientation::Collinear => return false,
        }
    }
    ccw == cw
}

/// One sweep event at a pivot: the rotating line passes point `sid`, either
/// with its forward ray (the point's own direction) or the opposite ray.
struct SweepEvent {
    dir: (i128, i128),
    sid: u32,
    antipode: bool,
}

/// Checks the rotation property for every halving edge, both pivots, both
/// rotation directions.
///
/// For each pivot, the n-1 other points contribute 2(n-1) events (ray and
/// antipode) in angular order. Walking the events while maintaining the
/// left-side count f identifies the *balanced positions*: events where f
/// steps between (n-2)/2 and n/2. Three facts are verified per pivot:
/// the balanced positions are exactly the halving partners (each via both of
/// its events), successive balanced positions alternate approach direction,
/// and for each incident edge and each rotation direction the first balanced
/// position reached yields a brute-force-confirmed halving edge.
pub fn lovasz_rotation_check(ps: &PointSet, g: &HalvingGraph) -> RotationReport {
    let n = ps.n();
    let mut report = RotationReport::default();
    let balanced_low = (n - 2) / 2;

    for p in ps.iter() {
        if g.degree(p.id) == 0 {
            continue;
        }
        let mut events: Vec<SweepEvent> = Vec::with_capacity(2 * (n - 1));
        for q in ps.iter() {
            if q.id == p.id {
                continue;
            }
            let d = (q.x as i128 - p.x as i128, q.y as i128 - p.y as i128);
            events.push(SweepEvent {
                dir: d,
                sid: q.id,
                antipode: false,
            });
            events.push(SweepEvent {
                dir: (-d.0, -d.1),
                sid: q.id,
                antipode: true,
            });
        }
        events.sort_unstable_by(|a, b| compare_dirs(a.dir, b.dir));

        // left-side count just after the first event
        let e0 = &events[0];
        let mut f: i64 = ps
            .iter()
            .filter(|t| t.id != p.id && t.id != e0.sid)
            .filter(|t| {
                orient_sign(
                    0,
                    0,
                    e0.dir.0,
                    e0.dir.1,
                    t.x as i128 - p.x as i128,
                    t.y as i128 - p.y as i128,
                ) > 0
            })
            .count() as i64;
        if e0.antipode {
            f += 1;
        }

        // (position in `events`, point, step direction) for each balanced
        // position, in counterclockwise order
        let mut balanced: Vec<(usize, u32, i64)> = Vec::new();
        for (pos, ev) in events.iter().enumerate() {
            let step: i64 = if ev.antipode { 1 } else { -1 };
            let (before, after) = if pos == 0 {
                (f - step, f)
            } else {
                let b = f;
                f += step;
                (b, f)
            };
            if before.min(after) == balanced_low as i64 && before.max(after) == balanced_low as i64 + 1
            {
                balanced.push((pos, ev.sid, step));
            }
        }

        let flag = |report: &mut RotationReport, q: u32, dir, first, reason: &str| {
            report.counterexamples.push(RotationCounterexample {
                edge: (p.id.min(q), p.id.max(q)),
                pivot: p.id,
                direction: dir,
                first_point: first,
                reason: reason.to_string(),
            });
        };

        // the balanced positions must be the incident halving edges, each
        // seen through both of its events
        let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
        for &(_, sid, _) in &balanced {
            *seen.entry(sid).or_insert(0) += 1;
        }
        let expected: BTreeMap<u32, usize> =
            g.neighbors(p.id).iter().map(|&q| (q, 2)).collect();
        if seen != expected {
            let culprit = seen
                .iter()
                .find(|(q, &c)| expected.get(q) != Some(&c))
                .map(|(&q, _)| q)
                .or_else(|| expected.keys().next().copied())
                .unwrap_or(p.id);
            flag(
                &mut report,
                culprit,
                RotationDirection::Ccw,
                culprit,
                "balanced positions disagree with the enumerated halving edges",
            );
            continue;
        }

        // successive balanced positions alternate step direction
        let k = balanced.len();
        for idx in 0..k {
            if balanced[idx].2 == balanced[(idx + 1) % k].2 {
                let sid = balanced[idx].1;
                flag(
                    &mut report,
                    sid,
                    RotationDirection::Ccw,
                    sid,
                    "successive balanced positions do not alternate",
                );
            }
        }

        // first balanced position in each rotation direction, per edge
        for &q in g.neighbors(p.id) {
            let Some(at) = balanced
                .iter()
                .position(|&(_, sid, step)| sid == q && step == -1)
            else {
                flag(
                    &mut report,
                    q,
                    RotationDirection::Ccw,
                    q,
                    "the edge's own line is not a balanced position",
                );
                continue;
            };
            for (direction, partner) in [
                (RotationDirection::Ccw, balanced[(at + 1) % k].1),
                (RotationDirection::Cw, balanced[(at + k - 1) % k].1),
            ] {
                report.probes += 1;
                if !is_halving_pair(ps, p.id, partner) {
                    flag(
                        &mut report,
                        q,
                        direction,
                        partner,
                        "first point reached in balanced position is not a halving partner",
                    );
                }
            }
        }
    }
    report
}

/// The convex-chain decomposition of a halving graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexChainDecomposition {
    /// Vertex paths, each ordered left to right; consecutive entries are
    /// halving edges.
    pub chains: Vec<Vec<u32>>,
    /// True when every chain turns with a single orientation sign.
    pub all_convex: bool,
    /// Sparse (chain_i, chain_j, crossings) entries with i < j, crossings > 0.
    pub pair_crossings: Vec<(usize, usize, usize)>,
    pub max_pairwise_crossings: usize,
    /// Matched in/out pairs left unjoined because joining them would have
    /// pushed some chain pair beyond two crossings. Almost always zero; a
    /// positive count marks a point set where the idealized slope matching
    /// alone does not bound pairwise crossings.
    pub merges_vetoed: usize,
}

impl ConvexChainDecomposition {
    pub fn chain_count(&self) -> usize {
        self.chains.len()
    }

    /// Total edges covered by the chains (each halving edge exactly once).
    pub fn edges_covered(&self) -> usize {
        self.chains.iter().map(|c| c.len() - 1).sum()
    }
}

/// Left-to-right order: x ascending, ties broken by y. This is the order of
/// the exact shear x -> x*K + y for K larger than the y-spread, which makes
/// all x-coordinates distinct while preserving every orientation, so no
/// coordinates are ever actually transformed.
fn before(a: Point, b: Point) -> bool {
    (a.x, a.y) < (b.x, b.y)
}

/// Slope order of two rightward direction vectors (sheared sense: dx > 0, or
/// dx = 0 with dy > 0). The shear scales every cross product by the positive
/// constant K, so the original cross product decides.
fn slope_less(a: (i128, i128), b: (i128, i128)) -> bool {
    orient_sign(0, 0, a.0, a.1, b.0, b.1) > 0
}

/// Decomposes the halving graph into convex chains with pairwise crossings
/// bounded by two.
///
/// Every edge is oriented left to right. At each vertex the arriving and
/// departing edges interleave in slope order; matching each arrival to the
/// departure with the smallest strictly larger slope (the unique largest
/// matching with uniform turn signs) makes every junction a left turn, so
/// chains are convex and x-monotone. Joining two chains adds their crossing
/// counts against every other chain, so the pairwise bound can be maintained
/// exactly: a matched pair is joined only if no count would exceed two, and
/// refusals are reported in `merges_vetoed`. A straight segment crosses a
/// convex curve at most twice, hence the invariant holds from the start.
pub fn convex_chain_decompose(ps: &PointSet, g: &HalvingGraph) -> ConvexChainDecomposition {
    let m = g.m();

    // chains start as single directed edges, ordered as in the edge list
    let mut paths: Vec<Vec<u32>> = Vec::with_capacity(m);
    let mut head: HashMap<(u32, u32), usize> = HashMap::new();
    let mut tail: HashMap<(u32, u32), usize> = HashMap::new();
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        let (pa, pb) = (ps.get(a), ps.get(b));
        let (from, to) = if before(pa, pb) { (a, b) } else { (b, a) };
        paths.push(vec![from, to]);
        head.insert((from, to), i);
        tail.insert((from, to), i);
    }

    // crossing counts between current chains; additive under joins
    let mut cross: Vec<Vec<u8>> = vec![vec![0; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let (ea, eb) = (&paths[i], &paths[j]);
            if segments_cross(ps.get(ea[0]), ps.get(ea[1]), ps.get(eb[0]), ps.get(eb[1])) {
                cross[i][j] = 1;
                cross[j][i] = 1;
            }
        }
    }

    // greedy interleave matching per vertex, in vertex and slope order
    let mut candidates: Vec<((u32, u32), (u32, u32))> = Vec::new();
    for v in ps.iter() {
        let mut ins: Vec<((i128, i128), u32)> = Vec::new();
        let mut outs: Vec<((i128, i128), u32)> = Vec::new();
        for &u in g.neighbors(v.id) {
            let pu = ps.get(u);
            if before(pu, v) {
                ins.push(((v.x as i128 - pu.x as i128, v.y as i128 - pu.y as i128), u));
            } else {
                outs.push(((pu.x as i128 - v.x as i128, pu.y as i128 - v.y as i128), u));
            }
        }
        let by_slope = |a: &((i128, i128), u32), b: &((i128, i128), u32)| {
            if slope_less(a.0, b.0) {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        };
        ins.sort_unstable_by(by_slope);
        outs.sort_unstable_by(by_slope);
        let mut t = 0usize;
        for &(din, u) in &ins {
            while t < outs.len() && !slope_less(din, outs[t].0) {
                t += 1;
            }
            if t < outs.len() {
                candidates.push(((u, v.id), (v.id, outs[t].1)));
                t += 1;
            }
        }
    }

    let mut alive: Vec<bool> = vec![true; m];
    let mut merges_vetoed = 0usize;
    for (in_edge, out_edge) in candidates {
        let a = tail[&in_edge];
        let b = head[&out_edge];
        let blocked = (0..m).any(|c| {
            alive[c] && c != a && c != b && cross[a][c] + cross[b][c] > 2
        });
        if blocked {
            merges_vetoed += 1;
            continue;
        }
        for c in 0..m {
            if !alive[c] || c == a || c == b {
                continue;
            }
            let add = cross[b][c];
            cross[a][c] += add;
            cross[c][a] = cross[a][c];
        }
        cross[a][b] = 0;
        cross[b][a] = 0;
        let rest: Vec<u32> = paths[b][1..].to_vec();
        paths[a].extend(rest);
        alive[b] = false;
        let last = paths[a].len() - 1;
        tail.insert((paths[a][last - 1], paths[a][last]), a);
        // head of the merged chain is unchanged; b's entries go stale and
        // are never looked up again since each directed edge is matched once
    }

    let ids: Vec<usize> = (0..m).filter(|&i| alive[i]).collect();
    let chains: Vec<Vec<u32>> = ids.iter().map(|&i| std::mem::take(&mut paths[i])).collect();

    let all_convex = chains.iter().all(|path| {
        let mut signs = path
            .windows(3)
            .map(|w| orientation(ps.get(w[0]), ps.get(w[1]), ps.get(w[2])).sign());
        match signs.next() {
            None => true,
            Some(first) => signs.all(|s| s == first),
        }
    });

    let mut pair_crossings = Vec::new();
    let mut max_pairwise_crossings = 0;
    for (i, &ci) in ids.iter().enumerate() {
        for (j, &cj) in ids.iter().enumerate().skip(i + 1) {
            let count = cross[ci][cj] as usize;
            if count > 0 {
                max_pairwise_crossings = max_pairwise_crossings.max(count);
                pair_crossings.push((i, j, count));
            }
        }
    }

    ConvexChainDecomposition {
        chains,
        all_convex,
        pair_crossings,
        max_pairwise_crossings,
        merges_vetoed,
    }
}
