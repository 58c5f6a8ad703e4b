//! Exact geometric predicates on integer points.
//!
//! Every decision made anywhere in this crate reduces to the sign of a 2x2
//! integer determinant computed here. The sign is evaluated in `i128` with
//! checked arithmetic and falls back to arbitrary precision if an intermediate
//! would overflow, so predicates are exact for all representable inputs.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

/// A point with exact integer coordinates and its index in the owning set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    pub id: u32,
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn new(id: u32, x: i64, y: i64) -> Self {
        Point { id, x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An ordered sequence of points; ids always equal positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Builds a set from coordinates, assigning ids in order.
    pub fn from_coords<I>(coords: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let points = coords
            .into_iter()
            .enumerate()
            .map(|(id, (x, y))| Point::new(id as u32, x, y))
            .collect();
        PointSet { points }
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, id: u32) -> Point {
        self.points[id as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.points.iter().copied()
    }
}

/// Sign of the determinant | q-p  r-p |.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Counterclockwise turn: r lies strictly left of the directed line p->q.
    Ccw,
    /// Clockwise turn: r lies strictly right of p->q.
    Cw,
    Collinear,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Ccw => 1,
            Orientation::Cw => -1,
            Orientation::Collinear => 0,
        }
    }
}

/// Exact orientation of the triple (p, q, r).
pub fn orientation(p: Point, q: Point, r: Point) -> Orientation {
    match orient_sign(
        p.x as i128,
        p.y as i128,
        q.x as i128,
        q.y as i128,
        r.x as i128,
        r.y as i128,
    ) {
        1 => Orientation::Ccw,
        -1 => Orientation::Cw,
        _ => Orientation::Collinear,
    }
}

/// Sign of (q-p) x (r-p) over raw i128 coordinates, exact for all inputs.
pub(crate) fn orient_sign(px: i128, py: i128, qx: i128, qy: i128, rx: i128, ry: i128) -> i8 {
    if let Some(s) = orient_sign_checked(px, py, qx, qy, rx, ry) {
        return s;
    }
    let ax = BigInt::from(qx) - BigInt::from(px);
    let ay = BigInt::from(qy) - BigInt::from(py);
    let bx = BigInt::from(rx) - BigInt::from(px);
    let by = BigInt::from(ry) - BigInt::from(py);
    let det = ax * by - ay * bx;
    match det.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

fn orient_sign_checked(px: i128, py: i128, qx: i128, qy: i128, rx: i128, ry: i128) -> Option<i8> {
    let ax = qx.checked_sub(px)?;
    let ay = qy.checked_sub(py)?;
    let bx = rx.checked_sub(px)?;
    let by = ry.checked_sub(py)?;
    let t = ax.checked_mul(by)?;
    let u = ay.checked_mul(bx)?;
    Some(t.checked_sub(u)?.signum() as i8)
}

/// True iff the open segments ab and cd intersect in exactly one interior
/// point. Segments that share an endpoint, merely touch, or overlap along a
/// line do not cross.
pub fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orientation(a, b, c).sign();
    let o2 = orientation(a, b, d).sign();
    let o3 = orientation(c, d, a).sign();
    let o4 = orientation(c, d, b).sign();
    o1 * o2 < 0 && o3 * o4 < 0
}

/// Why a point set fails general position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GpViolation {
    #[error("points {i} and {j} coincide")]
    Duplicate { i: u32, j: u32 },
    #[error("points {i}, {j}, {k} are collinear")]
    Collinear { i: u32, j: u32, k: u32 },
}

/// Checks that all points are pairwise distinct and no three are collinear.
///
/// Returns the first violation in a deterministic order: duplicate pairs
/// (smallest second index, then smallest first index) before collinear
/// triples (smallest pivot, then scan order of the later two points).
/// Runs in O(n^2) expected time via direction hashing per pivot.
pub fn check_general_position(ps: &PointSet) -> Result<(), GpViolation> {
    let pts = ps.points();
    let mut seen: HashMap<(i64, i64), u32> = HashMap::with_capacity(pts.len());
    for p in pts {
        if let Some(&i) = seen.get(&(p.x, p.y)) {
            return Err(GpViolation::Duplicate { i, j: p.id });
        }
        seen.insert((p.x, p.y), p.id);
    }
    let mut dirs: HashMap<(i64, i64), u32> = HashMap::new();
    for (i, p) in pts.iter().enumerate() {
        dirs.clear();
        for q in &pts[i + 1..] {
            let d = canonical_direction(q.x - p.x, q.y - p.y);
            if let Some(&j) = dirs.get(&d) {
                return Err(GpViolation::Collinear {
                    i: p.id,
                    j,
                    k: q.id,
                });
            }
            dirs.insert(d, q.id);
        }
    }
    Ok(())
}

/// Reduces (dx, dy) to a primitive vector in the upper half plane, so that
/// collinear directions (same or opposite) map to the same key.
fn canonical_direction(dx: i64, dy: i64) -> (i64, i64) {
    let g = gcd(dx.unsigned_abs(), dy.unsigned_abs()) as i64;
    let (mut dx, mut dy) = (dx / g, dy / g);
    if dy < 0 || (dy == 0 && dx < 0) {
        dx = -dx;
        dy = -dy;
    }
    (dx, dy)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
