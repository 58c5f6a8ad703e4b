//! Reproducible general-position point-set generators.
//!
//! All randomness flows through a seeded ChaCha stream, so a given
//! [`GeneratorSpec`] always produces the same point set. General position is
//! achieved by re-drawing offending points (never by symbolic perturbation),
//! with a budget of 100 re-draws per point before giving up.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geom::{check_general_position, orientation, GpViolation, Orientation, PointSet};

/// Positive rational density parameter for the dense-grid generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gamma {
    pub num: u32,
    pub den: u32,
}

impl Gamma {
    pub fn new(num: u32, den: u32) -> Option<Gamma> {
        if num == 0 || den == 0 {
            return None;
        }
        let g = gcd_u32(num, den);
        Some(Gamma {
            num: num / g,
            den: den / g,
        })
    }
}

fn gcd_u32(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Gamma {
    type Err = String;

    /// Accepts an integer ("4"), a fraction ("7/2"), or a short decimal
    /// ("3.5"), all parsed exactly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid gamma '{s}': expected N, N/D, or a decimal");
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            let den: u32 = den.trim().parse().map_err(|_| bad())?;
            return Gamma::new(num, den).ok_or_else(bad);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 6 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let int: u32 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let den = 10u32.pow(frac.len() as u32);
            let frac: u32 = frac.parse().map_err(|_| bad())?;
            let num = int
                .checked_mul(den)
                .and_then(|v| v.checked_add(frac))
                .ok_or_else(bad)?;
            return Gamma::new(num, den).ok_or_else(bad);
        }
        let num: u32 = s.trim().parse().map_err(|_| bad())?;
        Gamma::new(num, 1).ok_or_else(bad)
    }
}

/// Which point-set family to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Uniform integer points in the bbox square.
    RandomSquare,
    /// Points in strictly convex position, placed on a circle of radius bbox
    /// in counterclockwise order.
    ConvexPosition,
    /// A perturbed ceil(sqrt(n)) x ceil(sqrt(n)) grid whose max/min
    /// interpoint-distance ratio is at most gamma * sqrt(n).
    DenseGrid,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::RandomSquare => "random-square",
            Kind::ConvexPosition => "convex-position",
            Kind::DenseGrid => "dense-grid",
        })
    }
}

/// A complete, reproducible description of a generated point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: Kind,
    pub n: usize,
    pub seed: u64,
    /// Coordinate half-width: all coordinates land in [-bbox, bbox].
    pub bbox: i64,
    /// Density parameter; required for [`Kind::DenseGrid`], ignored otherwise.
    pub gamma: Option<Gamma>,
}

pub const DEFAULT_BBOX: i64 = 1_000_000;

impl GeneratorSpec {
    pub fn new(kind: Kind, n: usize, seed: u64) -> GeneratorSpec {
        GeneratorSpec {
            kind,
            n,
            seed,
            bbox: DEFAULT_BBOX,
            gamma: None,
        }
    }

    pub fn with_bbox(mut self, bbox: i64) -> GeneratorSpec {
        self.bbox = bbox;
        self
    }

    pub fn with_gamma(mut self, gamma: Gamma) -> GeneratorSpec {
        self.gamma = Some(gamma);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("n must be even and at least 2, got {0}")]
    BadN(usize),
    #[error("bbox must be at least n = {n}, got {bbox}")]
    BboxTooSmall { bbox: i64, n: usize },
    #[error("the dense-grid generator requires gamma")]
    MissingGamma,
    #[error(
        "rejection budget exhausted after {attempts} re-draws \
         (bbox {bbox} leaves too little room for n = {n})"
    )]
    RejectionBudget { attempts: usize, n: usize, bbox: i64 },
    #[error(
        "could not meet max/min distance ratio <= {gamma}*sqrt(n) for n = {n}; \
         gamma is too small for a perturbed grid"
    )]
    RatioUnsatisfied { gamma: Gamma, n: usize },
}

/// Generates the point set described by `spec`.
///
/// The output always passes [`check_general_position`] and is identical for
/// identical specs.
pub fn generate(spec: &GeneratorSpec) -> Result<PointSet, GenError> {
    if spec.n < 2 || !spec.n.is_multiple_of(2) {
        return Err(GenError::BadN(spec.n));
    }
    if spec.bbox < spec.n as i64 {
        return Err(GenError::BboxTooSmall {
            bbox: spec.bbox,
            n: spec.n,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        Kind::RandomSquare => random_square(spec, &mut rng),
        Kind::ConvexPosition => convex_position(spec, &mut rng),
        Kind::DenseGrid => dense_grid(spec, &mut rng),
    }
}

/// Re-draw loop shared by the generators: `fix` replaces the coordinates of
/// one offending point, identified by the general-position check.
fn fix_until_general_position(
    coords: &mut Vec<(i64, i64)>,
    spec: &GeneratorSpec,
    mut fix: impl FnMut(&mut Vec<(i64, i64)>, usize),
) -> Result<PointSet, GenError> {
    let budget = 100 * spec.n;
    let mut attempts = 0;
    loop {
        let ps = PointSet::from_coords(coords.iter().copied());
        let victim = match check_general_position(&ps) {
            Ok(()) => return Ok(ps),
            Err(GpViolation::Duplicate { j, .. }) => j,
            Err(GpViolation::Collinear { k, .. }) => k,
        };
        attempts += 1;
        if attempts > budget {
            return Err(GenError::RejectionBudget {
                attempts,
                n: spec.n,
                bbox: spec.bbox,
            });
        }
        fix(coords, victim as usize);
    }
}

fn random_square(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Result<PointSet, GenError> {
    let b = spec.bbox;
    let draw = |rng: &mut ChaCha8Rng| (rng.random_range(-b..=b), rng.random_range(-b..=b));
    let mut coords: Vec<(i64, i64)> = (0..spec.n).map(|_| draw(rng)).collect();
    fix_until_general_position(&mut coords, spec, |c, victim| {
        c[victim] = draw(rng);
    })
}

fn convex_position(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Result<PointSet, GenError> {
    let n = spec.n;
    let radius = spec.bbox as f64;
    // One point per angular slot, jittered within the slot's first half so
    // the counterclockwise placement order is preserved no matter the draws.
    let place = |slot: usize, jitter: f64| -> (i64, i64) {
        let angle = (slot as f64 + jitter) * std::f64::consts::TAU / n as f64;
        (
            (radius * angle.cos()).round() as i64,
            (radius * angle.sin()).round() as i64,
        )
    };
    let draw_jitter = |rng: &mut ChaCha8Rng| rng.random_range(0..=4096) as f64 / 8192.0;
    let mut coords: Vec<(i64, i64)> = (0..n)
        .map(|slot| place(slot, draw_jitter(rng)))
        .collect();

    let budget = 100 * n;
    let mut attempts = 0;
    loop {
        let ps = PointSet::from_coords(coords.iter().copied());
        let victim = match check_general_position(&ps) {
            Err(GpViolation::Duplicate { j, .. }) => Some(j as usize),
            Err(GpViolation::Collinear { k, .. }) => Some(k as usize),
            Ok(()) => hull_violation(&ps),
        };
        let Some(victim) = victim else {
            return Ok(ps);
        };
        attempts += 1;
        if attempts > budget {
            return Err(GenError::RejectionBudget {
                attempts,
                n,
                bbox: spec.bbox,
            });
        }
        coords[victim] = place(victim, draw_jitter(rng));
    }
}

/// Index of a point breaking strict convexity of the placement order, if any.
fn hull_violation(ps: &PointSet) -> Option<usize> {
    let n = ps.n();
    if n <= 2 {
        return None;
    }
    (0..n).find_map(|i| {
        let (a, b, c) = (ps.get(i as u32), ps.get(((i + 1) % n) as u32), ps.get(((i + 2) % n) as u32));
        (orientation(a, b, c) != Orientation::Ccw).then_some((i + 1) % n)
    })
}

fn dense_grid(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Result<PointSet, GenError> {
    let gamma = spec.gamma.ok_or(GenError::MissingGamma)?;
    let n = spec.n;
    let side = (n as f64).sqrt().ceil() as i64;
    // One grid cell per point, spacing s, perturbation up to s/4 in each axis.
    let s = (2 * spec.bbox) / side.max(2);
    if s < 4 {
        return Err(GenError::BboxTooSmall {
            bbox: spec.bbox,
            n,
        });
    }
    let delta = s / 4;
    let origin = -(side - 1) * s / 2;
    let place = |rng: &mut ChaCha8Rng, cell: usize| {
        let (row, col) = (cell as i64 / side, cell as i64 % side);
        (
            origin + col * s + rng.random_range(-delta..=delta),
            origin + row * s + rng.random_range(-delta..=delta),
        )
    };
    for _ in 0..10 {
        let mut coords: Vec<(i64, i64)> = (0..n).map(|cell| place(rng, cell)).collect();
        let ps = fix_until_general_position(&mut coords, spec, |c, victim| {
            c[victim] = place(rng, victim);
        })?;
        if ratio_within(&ps, gamma) {
            return Ok(ps);
        }
    }
    Err(GenError::RatioUnsatisfied { gamma, n })
}

/// Exact check that max/min interpoint distance is at most gamma * sqrt(n):
/// maxd^2 * den^2 <= num^2 * n * mind^2, all in integers.
fn ratio_within(ps: &PointSet, gamma: Gamma) -> bool {
    let pts = ps.points();
    let (mut min_sq, mut max_sq) = (u128::MAX, 0u128);
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let dx = (p.x - q.x).unsigned_abs() as u128;
            let dy = (p.y - q.y).unsigned_abs() as u128;
            let d = dx * dx + dy * dy;
            min_sq = min_sq.min(d);
            max_sq = max_sq.max(d);
        }
    }
    let num = gamma.num as u128;
    let den = gamma.den as u128;
    max_sq * den * den <= num * num * ps.n() as u128 * min_sq
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: Kind, n: usize, seed: u64) -> GeneratorSpec {
        GeneratorSpec::new(kind, n, seed)
    }

    #[test]
    fn random_square_contract() {
        let s = spec(Kind::RandomSquare, 10, 42);
        let ps = generate(&s).unwrap();
        assert_eq!(ps.n(), 10);
        assert!(check_general_position(&ps).is_ok());
        assert!(ps
            .iter()
            .all(|p| p.x.abs() <= s.bbox && p.y.abs() <= s.bbox));
        assert_eq!(generate(&s).unwrap(), ps, "same spec must replay exactly");
    }

    #[test]
    fn convex_position_all_hull_vertices() {
        for n in [2usize, 4, 6, 8, 20] {
            let ps = generate(&spec(Kind::ConvexPosition, n, 1)).unwrap();
            assert_eq!(ps.n(), n);
            assert!(check_general_position(&ps).is_ok());
            assert_eq!(hull_violation(&ps), None, "n = {n}");
        }
    }

    #[test]
    fn dense_grid_ratio_holds() {
        let s = spec(Kind::DenseGrid, 16, 7).with_gamma(Gamma::new(4, 1).unwrap());
        let ps = generate(&s).unwrap();
        assert_eq!(ps.n(), 16);
        assert!(check_general_position(&ps).is_ok());
        assert!(ratio_within(&ps, Gamma::new(4, 1).unwrap()));
        assert_eq!(generate(&s).unwrap(), ps);
    }

    #[test]
    fn dense_grid_infeasible_gamma_errors() {
        let s = spec(Kind::DenseGrid, 16, 7).with_gamma(Gamma::new(1, 100).unwrap());
        assert!(matches!(
            generate(&s),
            Err(GenError::RatioUnsatisfied { .. })
        ));
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            generate(&spec(Kind::RandomSquare, 7, 0)),
            Err(GenError::BadN(7))
        ));
        assert!(matches!(
            generate(&spec(Kind::RandomSquare, 10, 0).with_bbox(9)),
            Err(GenError::BboxTooSmall { .. })
        ));
        assert!(matches!(
            generate(&spec(Kind::DenseGrid, 10, 0)),
            Err(GenError::MissingGamma)
        ));
    }

    #[test]
    fn gamma_parsing() {
        assert_eq!("4".parse::<Gamma>().unwrap(), Gamma::new(4, 1).unwrap());
        assert_eq!("7/2".parse::<Gamma>().unwrap(), Gamma::new(7, 2).unwrap());
        assert_eq!("3.5".parse::<Gamma>().unwrap(), Gamma::new(7, 2).unwrap());
        assert_eq!("0.25".parse::<Gamma>().unwrap(), Gamma::new(1, 4).unwrap());
        assert!("0".parse::<Gamma>().is_err());
        assert!("-1".parse::<Gamma>().is_err());
        assert!("x/y".parse::<Gamma>().is_err());
    }

    #[test]
    fn generators_are_seed_sensitive() {
        let a = generate(&spec(Kind::RandomSquare, 12, 1)).unwrap();
        let b = generate(&spec(Kind::RandomSquare, 12, 2)).unwrap();
        assert_ne!(a, b);
    }
}
