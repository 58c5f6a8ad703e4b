//! Closed-form (Cardano) real-root solver for cubics with real coefficients.
//!
//! The solver works on the substitution x = t + p with
//!
//!   p = -b/(3a),  r = c/(3a),  q = p^3 + (bc - 3ad)/(6a^2),
//!
//! which turns a x^3 + b x^2 + c x + d into t^3 + 3(r - p^2) t - 2q and makes
//! the radicand q^2 + (r - p^2)^3 decide the root structure: positive gives
//! one real root (two real cube roots), negative gives three distinct real
//! roots (handled trigonometrically to stay in real arithmetic), and a value
//! inside a noise-relative band around zero gives repeated roots with the
//! closed form 2q^(1/3), -q^(1/3), -q^(1/3).
//!
//! Closed forms lose digits through cancellation, so every root is finished
//! with Newton steps using a compensated Horner evaluation of the original
//! polynomial; the steps are kept only while they reduce the scaled residual.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum CubicError {
    #[error("leading coefficient is zero: not a cubic")]
    ZeroLeadingCoefficient,
    #[error("coefficient {0} is not finite")]
    NonFiniteCoefficient(f64),
}

/// a x^3 + b x^2 + c x + d with a != 0.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CubicPolynomial {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl CubicPolynomial {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, CubicError> {
        for v in [a, b, c, d] {
            if !v.is_finite() {
                return Err(CubicError::NonFiniteCoefficient(v));
            }
        }
        if a == 0.0 {
            return Err(CubicError::ZeroLeadingCoefficient);
        }
        Ok(Self { a, b, c, d })
    }

    /// Compensated Horner evaluation: Horner with error-free transformations
    /// folded back in, roughly doubling the working precision.
    pub fn eval(&self, x: f64) -> f64 {
        let mut s = self.a;
        let mut comp = 0.0_f64;
        for coef in [self.b, self.c, self.d] {
            let (prod, prod_err) = two_prod(s, x);
            let (sum, sum_err) = two_sum(prod, coef);
            comp = comp.mul_add(x, prod_err + sum_err);
            s = sum;
        }
        s + comp
    }

    fn eval_derivative(&self, x: f64) -> f64 {
        (3.0 * self.a).mul_add(x, 2.0 * self.b).mul_add(x, self.c)
    }
}

impl fmt::Display for CubicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}*x^3 + {}*x^2 + {}*x + {}",
            self.a, self.b, self.c, self.d
        )
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// |P(x)| relative to the coefficient magnitudes at |x|: the quantity the
/// residual acceptance bound is stated in.
pub fn scaled_residual(p: &CubicPolynomial, x: f64) -> f64 {
    let xb = x.abs().max(1.0);
    let scale = (p.a.abs() * xb * xb * xb)
        .max(p.b.abs() * xb * xb)
        .max(p.c.abs() * xb)
        .max(p.d.abs())
        .max(f64::MIN_POSITIVE);
    p.eval(x).abs() / scale
}

/// The substitution constants of the simplified formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CardanoIntermediates {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    /// q^2 + (r - p^2)^3, the radicand under the square root.
    pub radicand: f64,
}

pub fn cardano_intermediates(poly: &CubicPolynomial) -> CardanoIntermediates {
    let (a, b, c, d) = (poly.a, poly.b, poly.c, poly.d);
    let p = -b / (3.0 * a);
    let r = c / (3.0 * a);
    let q = p * p * p + (b * c - 3.0 * a * d) / (6.0 * a * a);
    let e = r - p * p;
    CardanoIntermediates {
        p,
        q,
        r,
        radicand: q * q + e * e * e,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscriminantClass {
    OneReal,
    ThreeRealDistinct,
    Repeated,
}

impl fmt::Display for DiscriminantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiscriminantClass::OneReal => "one-real",
            DiscriminantClass::ThreeRealDistinct => "three-real-distinct",
            DiscriminantClass::Repeated => "repeated",
        })
    }
}

/// Real roots in ascending order, repeated roots listed with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicRoots {
    pub roots: Vec<f64>,
    pub class: DiscriminantClass,
}

pub fn solve_cubic(poly: &CubicPolynomial) -> CubicRoots {
    let im = cardano_intermediates(poly);
    let (p, q) = (im.p, im.q);
    let e = im.r - p * p;

    // Repeated-root band, relative to the terms forming the radicand: the
    // roundoff floor of q^2 + e^3 is a few hundred ulps of max(q^2, |e|^3)
    // (~1e-13 relative), while genuinely separated roots push the radicand
    // orders of magnitude above it, so 1e-11 splits the two regimes.
    let band = 1e-11 * (q * q).max(e.abs().powi(3));

    let (mut roots, class) = if im.radicand > band {
        // one real root; take the cube root of the large-magnitude term and
        // recover the other factor from u*v = -e to dodge cancellation
        let s = im.radicand.sqrt();
        let big = (q + s.copysign(q)).cbrt();
        let other = if big == 0.0 { 0.0 } else { -e / big };
        (vec![big + other + p], DiscriminantClass::OneReal)
    } else if im.radicand < -band {
        // three distinct real roots: trigonometric form of the same formula
        let radius = (-e).sqrt();
        let phi = (-im.radicand).sqrt().atan2(q);
        let root = |k: f64| 2.0 * radius * ((phi + 2.0 * std::f64::consts::PI * k) / 3.0).cos() + p;
        (
            vec![root(0.0), root(1.0), root(2.0)],
            DiscriminantClass::ThreeRealDistinct,
        )
    } else {
        // radicand ~ 0: a double root -q^(1/3) and a simple root 2q^(1/3),
        // collapsing to a triple root at q ~ 0
        let u = q.cbrt();
        (vec![2.0 * u + p, -u + p, -u + p], DiscriminantClass::Repeated)
    };

    for root in &mut roots {
        *root = polish(poly, *root);
    }
    roots.sort_unstable_by(f64::total_cmp);
    CubicRoots { roots, class }
}

/// Newton steps on the original coefficients, keeping a step only while it
/// reduces the scaled residual (near repeated roots the derivative shrinks
/// and a raw step can overshoot).
fn polish(poly: &CubicPolynomial, mut x: f64) -> f64 {
    let mut best = scaled_residual(poly, x);
    for _ in 0..8 {
        let fp = poly.eval_derivative(x);
        if fp == 0.0 || !fp.is_finite() {
            break;
        }
        let candidate = x - poly.eval(x) / fp;
        if !candidate.is_finite() {
            break;
        }
        let res = scaled_residual(poly, candidate);
        if res < best {
            best = res;
            x = candidate;
        } else {
            break;
        }
    }
    x
}

/// The largest real root strictly greater than zero, if any.
pub fn largest_positive_root(poly: &CubicPolynomial) -> Option<f64> {
    solve_cubic(poly)
        .roots
        .into_iter()
        .filter(|&x| x > 0.0)
        .max_by(f64::total_cmp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cubic(a: f64, b: f64, c: f64, d: f64) -> CubicPolynomial {
        CubicPolynomial::new(a, b, c, d).unwrap()
    }

    /// Bisection to near machine precision; sign change required.
    fn bisect(poly: &CubicPolynomial, mut lo: f64, mut hi: f64) -> f64 {
        let (flo, fhi) = (poly.eval(lo), poly.eval(hi));
        assert!(flo * fhi < 0.0, "no sign change on [{lo}, {hi}]");
        let increasing = flo < 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if (poly.eval(mid) < 0.0) == increasing {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn from_roots(a: f64, r1: f64, r2: f64, r3: f64) -> CubicPolynomial {
        cubic(
            a,
            -a * (r1 + r2 + r3),
            a * (r1 * r2 + r1 * r3 + r2 * r3),
            -a * r1 * r2 * r3,
        )
    }

    #[test]
    fn intermediates_hand_cases() {
        let im = cardano_intermediates(&cubic(1.0, 0.0, 0.0, -1.0));
        assert_eq!((im.p, im.q, im.r), (0.0, 0.5, 0.0));

        let im = cardano_intermediates(&cubic(1.0, -6.0, 11.0, -6.0));
        assert_eq!(im.p, 2.0);
        assert_eq!(im.q, 0.0);
        assert!((im.r - 11.0 / 3.0).abs() < 1e-15);

        let im = cardano_intermediates(&cubic(2.0, 0.0, 0.0, 0.0));
        assert_eq!((im.p, im.q, im.r, im.radicand), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn construction_validation() {
        assert_eq!(
            CubicPolynomial::new(0.0, 1.0, 1.0, 1.0),
            Err(CubicError::ZeroLeadingCoefficient)
        );
        assert!(matches!(
            CubicPolynomial::new(f64::NAN, 1.0, 1.0, 1.0),
            Err(CubicError::NonFiniteCoefficient(_))
        ));
    }

    #[test]
    fn known_root_sets() {
        let r = solve_cubic(&cubic(1.0, 0.0, 0.0, -1.0));
        assert_eq!(r.class, DiscriminantClass::OneReal);
        assert_eq!(r.roots.len(), 1);
        assert!((r.roots[0] - 1.0).abs() < 1e-14);

        let r = solve_cubic(&cubic(1.0, -6.0, 11.0, -6.0));
        assert_eq!(r.class, DiscriminantClass::ThreeRealDistinct);
        for (got, want) in r.roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }

        let r = solve_cubic(&cubic(1.0, 0.0, 0.0, 0.0));
        assert_eq!(r.class, DiscriminantClass::Repeated);
        assert_eq!(r.roots, vec![0.0, 0.0, 0.0]);

        // (x - 1)^2 (x + 2) = x^3 - 3x + 2
        let r = solve_cubic(&cubic(1.0, 0.0, -3.0, 2.0));
        assert_eq!(r.class, DiscriminantClass::Repeated);
        assert_eq!(r.roots.len(), 3);
        assert!((r.roots[0] + 2.0).abs() < 1e-12);
        assert!((r.roots[1] - 1.0).abs() < 1e-7);
        assert!((r.roots[2] - 1.0).abs() < 1e-7);
    }

    #[test]
    fn casus_irreducibilis_matches_bisection() {
        let poly = cubic(1.0, 0.0, -3.0, 1.0);
        let r = solve_cubic(&poly);
        assert_eq!(r.class, DiscriminantClass::ThreeRealDistinct);
        let oracle = [
            bisect(&poly, -2.0, -1.5),
            bisect(&poly, 0.0, 0.5),
            bisect(&poly, 1.5, 2.0),
        ];
        for (got, want) in r.roots.iter().zip(oracle) {
            assert!(
                (got - want).abs() <= 1e-12 * want.abs().max(1.0),
                "{got} vs oracle {want}"
            );
        }
    }

    #[test]
    fn thousand_constructed_cubics() {
        // Clustered roots demand care: rounding the constructed coefficients
        // to f64 already perturbs near-double roots beyond 1e-9, so clustered
        // cases use dyadic roots (grid 2^-9, |root| <= 16) whose expanded
        // coefficients are exact; separations stay >= 1e-3 by the grid.
        let mut rng = ChaCha8Rng::seed_from_u64(0xCA4DA40);
        let grid = (2.0_f64).powi(-9);
        for case in 0..1000 {
            let lead = [1.0, -2.0, 0.5, 1024.0][case % 4];
            let (r1, r2, r3) = if case % 5 == 0 {
                let k1 = rng.random_range(-(1 << 13)..(1 << 13) - 16i64);
                let k2 = k1 + rng.random_range(1..=8);
                let mut k3 = rng.random_range(-(1 << 13)..1 << 13);
                while k3 == k1 || k3 == k2 {
                    k3 = rng.random_range(-(1 << 13)..1 << 13);
                }
                (k1 as f64 * grid, k2 as f64 * grid, k3 as f64 * grid)
            } else {
                (
                    rng.random_range(-1e3..1e3),
                    rng.random_range(-1e3..1e3),
                    rng.random_range(-1e3..1e3),
                )
            };
            let poly = from_roots(lead, r1, r2, r3);
            let mut want = [r1, r2, r3];
            want.sort_unstable_by(f64::total_cmp);
            let got = solve_cubic(&poly);
            assert_eq!(got.roots.len(), 3, "case {case}: {poly}");
            for (g, w) in got.roots.iter().zip(want) {
                assert!(
                    (g - w).abs() <= 1e-9 * w.abs().max(1.0),
                    "case {case}: root {g} vs {w} for {poly}"
                );
            }
            for &g in &got.roots {
                assert!(scaled_residual(&poly, g) <= 1e-9, "case {case}");
            }
        }
    }

    #[test]
    fn scale_invariance() {
        let base = cubic(1.0, -6.0, 11.0, -6.0);
        for lambda in [1.0, -1.0, 1e6, 1e-6] {
            let scaled = cubic(
                lambda * base.a,
                lambda * base.b,
                lambda * base.c,
                lambda * base.d,
            );
            let roots = solve_cubic(&scaled).roots;
            for (got, want) in roots.iter().zip([1.0, 2.0, 3.0]) {
                assert!((got - want).abs() < 1e-9, "lambda {lambda}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn largest_positive_root_selection() {
        assert_eq!(
            largest_positive_root(&cubic(1.0, -6.0, 11.0, -6.0)),
            Some(3.0)
        );
        assert_eq!(largest_positive_root(&cubic(1.0, 0.0, 0.0, 1.0)), None);
        let r = largest_positive_root(&cubic(1.0, 0.0, -1.0, 0.0)).unwrap();
        assert!((r - 1.0).abs() < 1e-14);
    }
}
