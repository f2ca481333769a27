use num_complex::Complex64;
use serde::Serialize;

use super::roots::{durand_kerner, newton_polish, Polynomial};
use super::{cmp_lex, ser_c64, ser_vec_c64};
use crate::{Error, Result};

/// Tolerance for the critical-point root finder.
pub const CRITICAL_POINT_TOL: f64 = 1e-12;
/// Critical values closer than this (relative) are one puncture.
const SAME_VALUE_TOL: f64 = 1e-9;
/// Critical points closer than this are treated as a repeated root of `p'`.
const DEGENERATE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberPoint {
    #[serde(serialize_with = "ser_c64")]
    pub point: Complex64,
    pub multiplicity: usize,
}

/// The full preimage of one critical value, with multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalFiber {
    #[serde(serialize_with = "ser_c64")]
    pub value: Complex64,
    pub points: Vec<FiberPoint>,
}

/// A monic polynomial `p` of degree `d ≥ 2` viewed as the covering
/// `ℂ − p⁻¹(V) → ℂ − V`, where `V` is its set of critical values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyCovering {
    #[serde(skip)]
    poly: Polynomial,
    #[serde(serialize_with = "ser_vec_c64")]
    critical_points: Vec<Complex64>,
    #[serde(serialize_with = "ser_vec_c64")]
    critical_values: Vec<Complex64>,
    #[serde(serialize_with = "ser_vec_c64")]
    target_punctures: Vec<Complex64>,
    critical_fibers: Vec<CriticalFiber>,
    #[serde(serialize_with = "ser_vec_c64")]
    domain_punctures: Vec<Complex64>,
}

impl PolyCovering {
    /// Builds the covering from coefficients in descending powers.
    pub fn new(coeffs: &[Complex64]) -> Result<Self> {
        let poly = Polynomial::from_descending(coeffs.to_vec());
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidPolynomial("non-finite coefficient".into()));
        }
        if poly.degree() < 2 {
            return Err(Error::InvalidPolynomial(format!(
                "degree {} < 2",
                poly.degree()
            )));
        }
        if (poly.leading() - 1.0).norm() > 1e-12 {
            return Err(Error::InvalidPolynomial(format!(
                "leading coefficient {} is not 1",
                poly.leading()
            )));
        }

        let dp = poly.derivative();
        // repeated roots of p' stall the iteration; the looser retry lets the
        // degeneracy checks below report them
        let mut critical_points = durand_kerner(&dp, None, CRITICAL_POINT_TOL, 2000)
            .or_else(|| durand_kerner(&dp, None, 1e-7, 20_000))
            .ok_or_else(|| Error::InvalidPolynomial("critical points did not converge".into()))?;
        for c in critical_points.iter_mut() {
            *c = newton_polish(&dp, *c, 3);
        }
        critical_points.sort_by(cmp_lex);
        let min_gap = min_pairwise_distance(&critical_points);
        if min_gap < DEGENERATE_TOL {
            return Err(Error::DegenerateCriticalPoints(min_gap));
        }
        let ddp = dp.derivative();
        let ddp_scale = ddp
            .coefficients()
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        if critical_points
            .iter()
            .any(|&c| ddp.eval(c).norm() < DEGENERATE_TOL * ddp_scale)
        {
            return Err(Error::DegenerateCriticalPoints(min_gap));
        }
        let scale = dp
            .coefficients()
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        for &c in &critical_points {
            let residual = dp.eval(c).norm();
            if residual > 1e-9 * scale * (1.0 + c.norm()).powi(dp.degree() as i32) {
                return Err(Error::InvalidPolynomial(format!(
                    "critical point {c} has residual {residual:e}"
                )));
            }
        }
        let critical_values: Vec<Complex64> =
            critical_points.iter().map(|&c| poly.eval(c)).collect();

        let mut target_punctures: Vec<Complex64> = Vec::new();
        for &v in &critical_values {
            if !target_punctures.iter().any(|&u| same_value(u, v)) {
                target_punctures.push(v);
            }
        }
        target_punctures.sort_by(cmp_lex);

        let mut critical_fibers = Vec::with_capacity(target_punctures.len());
        for &v in &target_punctures {
            critical_fibers.push(fiber_over_critical_value(
                &poly,
                v,
                critical_points
                    .iter()
                    .zip(&critical_values)
                    .filter(|(_, &cv)| same_value(cv, v))
                    .map(|(&c, _)| c),
            )?);
        }
        let mut domain_punctures: Vec<Complex64> = critical_fibers
            .iter()
            .flat_map(|f| f.points.iter().map(|p| p.point))
            .collect();
        domain_punctures.sort_by(cmp_lex);

        Ok(PolyCovering {
            poly,
            critical_points,
            critical_values,
            target_punctures,
            critical_fibers,
            domain_punctures,
        })
    }

    /// `w³ − 3w`.
    pub fn cubic() -> Self {
        let c = |x: f64| Complex64::new(x, 0.0);
        PolyCovering::new(&[c(1.0), c(0.0), c(-3.0), c(0.0)]).expect("cubic is valid")
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        self.poly.eval(w)
    }

    pub fn critical_points(&self) -> &[Complex64] {
        &self.critical_points
    }

    /// `p(c)` for each critical point `c`, in the same order.
    pub fn critical_values(&self) -> &[Complex64] {
        &self.critical_values
    }

    /// Distinct critical values, sorted lexicographically.
    pub fn target_punctures(&self) -> &[Complex64] {
        &self.target_punctures
    }

    pub fn critical_fibers(&self) -> &[CriticalFiber] {
        &self.critical_fibers
    }

    pub fn domain_punctures(&self) -> &[Complex64] {
        &self.domain_punctures
    }

    /// Roots of `p(w) = value`, sorted lexicographically.
    pub fn fiber(&self, value: Complex64) -> Result<Vec<Complex64>> {
        self.fiber_seeded(value, None)
    }

    pub(crate) fn fiber_seeded(
        &self,
        value: Complex64,
        seed: Option<&[Complex64]>,
    ) -> Result<Vec<Complex64>> {
        let shifted = self.poly.shift(value);
        let roots = durand_kerner(&shifted, seed, 1e-12, 500)
            .or_else(|| durand_kerner(&shifted, None, 1e-9, 5000))
            .ok_or_else(|| Error::Continuation(format!("fiber over {value} did not converge")))?;
        let mut roots = roots;
        roots.sort_by(cmp_lex);
        Ok(roots)
    }
}

fn same_value(u: Complex64, v: Complex64) -> bool {
    (u - v).norm() <= SAME_VALUE_TOL * (1.0 + u.norm().max(v.norm()))
}

pub(crate) fn min_pairwise_distance(points: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.min((points[i] - points[j]).norm());
        }
    }
    best
}

/// Divides `p - v` by `(w - c)²` for every critical point `c` over `v`; the
/// quotient's roots are the simple points of the fiber.
fn fiber_over_critical_value(
    poly: &Polynomial,
    v: Complex64,
    doubles: impl Iterator<Item = Complex64>,
) -> Result<CriticalFiber> {
    let mut rest = poly.shift(v);
    let scale = 1.0
        + poly
            .coefficients()
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let mut points = Vec::new();
    for c in doubles {
        for _ in 0..2 {
            let (q, r) = rest.deflate(c);
            if r.norm() > 1e-8 * scale * (1.0 + c.norm()).powi(poly.degree() as i32) {
                return Err(Error::InvalidPolynomial(format!(
                    "critical point {c} is not a double root of p - {v} (remainder {:e})",
                    r.norm()
                )));
            }
            rest = q;
        }
        points.push(FiberPoint {
            point: c,
            multiplicity: 2,
        });
    }
    if rest.degree() > 0 {
        let simple = durand_kerner(&rest, None, 1e-14, 2000)
            .ok_or_else(|| Error::InvalidPolynomial(format!("fiber over {v} did not converge")))?;
        for s in simple {
            points.push(FiberPoint {
                point: newton_polish(&poly.shift(v), s, 2),
                multiplicity: 1,
            });
        }
    }
    points.sort_by(|a, b| cmp_lex(&a.point, &b.point));
    Ok(CriticalFiber { value: v, points })
}
