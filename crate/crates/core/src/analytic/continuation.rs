use std::fmt::Write;

use num_complex::Complex64;

use super::poly::{min_pairwise_distance, PolyCovering};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuationOptions {
    /// Minimum distance between the path and every target puncture.
    pub min_clearance: f64,
    /// Allowed `|p(start) − path[0]|`, relative to `1 + |path[0]|`.
    pub start_tol: f64,
    /// Required `|p(end) − path[last]|`.
    pub end_tol: f64,
    /// Newton corrector residual tolerance, relative to `1 + |target|`.
    pub corrector_tol: f64,
    pub max_corrector_iters: usize,
    /// Step sizes as fractions of a path segment.
    pub initial_step: f64,
    pub max_step: f64,
    pub min_step: f64,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        ContinuationOptions {
            min_clearance: 1e-6,
            start_tol: 1e-8,
            end_tol: 1e-9,
            corrector_tol: 1e-12,
            max_corrector_iters: 40,
            initial_step: 0.25,
            max_step: 0.25,
            min_step: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSample {
    /// Segment index plus the fraction of that segment travelled.
    pub t: f64,
    pub root: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuationTrace {
    pub end: Complex64,
    pub samples: Vec<TraceSample>,
    /// Smallest distance between two fiber points seen at an accepted step.
    pub min_separation: f64,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

/// Endpoint of the lift starting at `start_root` of the polyline `path`.
pub fn continue_root(
    cov: &PolyCovering,
    path: &[Complex64],
    start_root: Complex64,
) -> Result<Complex64> {
    continue_root_traced(cov, path, start_root, &ContinuationOptions::default()).map(|t| t.end)
}

fn segment_distance(a: Complex64, b: Complex64, q: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (q - a).norm();
    }
    let s = (((q - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (a + ab * s - q).norm()
}

fn nearest(points: &[Complex64], z: Complex64) -> (usize, f64) {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| (i, (p - z).norm()))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("nonempty fiber")
}

/// Distance from `z` to the nearest fiber point other than the one it sits on.
fn separation(points: &[Complex64], z: Complex64) -> f64 {
    let (own, _) = nearest(points, z);
    points
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != own)
        .map(|(_, p)| (p - z).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Damped Newton for `p(w) = target` from `z0`; fails if the iterate leaves
/// the disc of radius `radius` around `z0` or stops decreasing the residual.
fn correct(
    cov: &PolyCovering,
    z0: Complex64,
    target: Complex64,
    radius: f64,
    opts: &ContinuationOptions,
) -> Option<Complex64> {
    let p = cov.polynomial();
    let tol = opts.corrector_tol * (1.0 + target.norm());
    let mut w = z0;
    let (mut f, mut df) = p.eval_with_derivative(w);
    f -= target;
    for _ in 0..opts.max_corrector_iters {
        if f.norm() <= tol {
            return Some(w);
        }
        if df.norm() == 0.0 {
            return None;
        }
        let delta = f / df;
        let mut damping = 1.0;
        let mut improved = None;
        for _ in 0..6 {
            let cand = w - delta * damping;
            let (fc, dfc) = p.eval_with_derivative(cand);
            let fc = fc - target;
            if fc.norm() < f.norm() {
                improved = Some((cand, fc, dfc));
                break;
            }
            damping *= 0.5;
        }
        let (cand, fc, dfc) = improved?;
        if (cand - z0).norm() > radius {
            return None;
        }
        w = cand;
        f = fc;
        df = dfc;
    }
    (f.norm() <= tol).then_some(w)
}

/// Root continuation with adaptive stepping. Each step predicts the previous
/// root, corrects with damped Newton, and is accepted only if the corrected
/// root is still the fiber point nearest the previous root and moved less
/// than half the distance to the nearest other fiber point; otherwise the
/// step halves.
pub fn continue_root_traced(
    cov: &PolyCovering,
    path: &[Complex64],
    start_root: Complex64,
    opts: &ContinuationOptions,
) -> Result<ContinuationTrace> {
    let first = *path
        .first()
        .ok_or_else(|| Error::InvalidArgument("path is empty".into()))?;

    for (i, window) in path.windows(2).enumerate() {
        check_clearance(cov, window[0], window[1], opts.min_clearance, i)?;
    }
    check_clearance(cov, first, first, opts.min_clearance, 0)?;

    let start_residual = (cov.eval(start_root) - first).norm();
    if start_residual > opts.start_tol * (1.0 + first.norm()) {
        return Err(Error::InvalidArgument(format!(
            "start root {start_root} is not over {first} (residual {start_residual:e})"
        )));
    }

    let mut fiber = cov.fiber(first)?;
    let (idx, _) = nearest(&fiber, start_root);
    let mut z = fiber[idx];
    let mut samples = vec![TraceSample { t: 0.0, root: z }];
    let mut min_separation = min_pairwise_distance(&fiber);
    let mut accepted_steps = 0;
    let mut rejected_steps = 0;

    for (seg, window) in path.windows(2).enumerate() {
        let (a, b) = (window[0], window[1]);
        if a == b {
            continue;
        }
        let mut t = 0.0;
        let mut h = opts.initial_step;
        while t < 1.0 {
            h = h.min(1.0 - t);
            let t_next = if t + h >= 1.0 { 1.0 } else { t + h };
            let target = if t_next == 1.0 {
                b
            } else {
                a + (b - a) * t_next
            };
            let sep = separation(&fiber, z);
            let accepted = correct(cov, z, target, 0.5 * sep, opts).and_then(|z_new| {
                let new_fiber = cov.fiber_seeded(target, Some(&fiber)).ok()?;
                let (j, dist) = nearest(&new_fiber, z_new);
                let (k, _) = nearest(&new_fiber, z);
                let ok =
                    j == k && dist <= 1e-8 * (1.0 + z_new.norm()) && (z_new - z).norm() < 0.5 * sep;
                ok.then_some((z_new, new_fiber))
            });
            match accepted {
                Some((z_new, new_fiber)) => {
                    min_separation = min_separation.min(min_pairwise_distance(&new_fiber));
                    z = z_new;
                    fiber = new_fiber;
                    t = t_next;
                    samples.push(TraceSample {
                        t: seg as f64 + t,
                        root: z,
                    });
                    accepted_steps += 1;
                    h = (2.0 * h).min(opts.max_step);
                }
                None => {
                    rejected_steps += 1;
                    h *= 0.5;
                    if h < opts.min_step {
                        return Err(Error::StepUnderflow { segment: seg, t });
                    }
                }
            }
        }
    }

    let last = *path.last().expect("nonempty");
    let residual = (cov.eval(z) - last).norm();
    if residual > opts.end_tol {
        return Err(Error::Continuation(format!(
            "end residual {residual:e} exceeds {:e}",
            opts.end_tol
        )));
    }
    Ok(ContinuationTrace {
        end: z,
        samples,
        min_separation,
        accepted_steps,
        rejected_steps,
    })
}

fn check_clearance(
    cov: &PolyCovering,
    a: Complex64,
    b: Complex64,
    clearance: f64,
    segment: usize,
) -> Result<()> {
    for &v in cov.target_punctures() {
        let distance = segment_distance(a, b, v);
        if distance < clearance {
            return Err(Error::ClearanceViolation {
                puncture: format!("{v} (segment {segment})"),
                distance,
                clearance,
            });
        }
    }
    Ok(())
}

/// `t,re,im` rows for external plotting.
pub fn trace_csv(trace: &ContinuationTrace) -> String {
    let mut out = String::from("t,re,im\n");
    for s in &trace.samples {
        writeln!(out, "{},{},{}", s.t, s.root.re, s.root.im).expect("write to string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Middle real root of w³ − 3w = value on [-1, 1], by bisection; the
    /// cubic is decreasing there.
    fn middle_branch(value: f64) -> f64 {
        let (mut lo, mut hi) = (-1.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid * mid * mid - 3.0 * mid > value {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn constant_path() {
        let cov = PolyCovering::cubic();
        let root = 3f64.sqrt();
        let end = continue_root(&cov, &[c(0.0, 0.0), c(0.0, 0.0)], c(root, 0.0)).unwrap();
        assert!((end - c(root, 0.0)).norm() < 1e-12);
        let single = continue_root(&cov, &[c(0.0, 0.0)], c(0.0, 0.0)).unwrap();
        assert!(single.norm() < 1e-12);
    }

    #[test]
    fn real_segment_stays_on_middle_branch() {
        let cov = PolyCovering::cubic();
        let end = continue_root(&cov, &[c(0.0, 0.0), c(1.9, 0.0)], c(0.0, 0.0)).unwrap();
        let oracle = middle_branch(1.9);
        assert!((end.re - oracle).abs() < 1e-9, "{end} vs {oracle}");
        assert!(end.im.abs() < 1e-9);
    }

    #[test]
    fn there_and_back() {
        let cov = PolyCovering::cubic();
        let path = [c(0.0, 0.0), c(1.0, 1.0), c(3.0, 0.5), c(-1.0, -2.0)];
        let mut round_trip: Vec<Complex64> = path.to_vec();
        round_trip.extend(path.iter().rev().skip(1));
        for start in cov.fiber(c(0.0, 0.0)).unwrap() {
            let end = continue_root(&cov, &round_trip, start).unwrap();
            assert!((end - start).norm() < 1e-6);
        }
    }

    #[test]
    fn clearance_and_start_errors() {
        let cov = PolyCovering::cubic();
        let through_puncture = [c(0.0, 0.0), c(3.0, 0.0)];
        assert!(matches!(
            continue_root(&cov, &through_puncture, c(0.0, 0.0)),
            Err(Error::ClearanceViolation { .. })
        ));
        assert!(matches!(
            continue_root(&cov, &[c(0.0, 0.0), c(1.0, 0.0)], c(0.5, 0.0)),
            Err(Error::InvalidArgument(_))
        ));
        assert!(continue_root(&cov, &[], c(0.0, 0.0)).is_err());
    }

    #[test]
    fn step_underflow_is_reported() {
        let cov = PolyCovering::cubic();
        let opts = ContinuationOptions {
            min_step: 0.3,
            initial_step: 0.5,
            corrector_tol: 0.0,
            max_corrector_iters: 1,
            ..Default::default()
        };
        let r = continue_root_traced(&cov, &[c(0.0, 0.0), c(1.0, 0.0)], c(0.0, 0.0), &opts);
        assert!(matches!(r, Err(Error::StepUnderflow { segment: 0, .. })));
    }

    #[test]
    fn csv_trace() {
        let cov = PolyCovering::cubic();
        let trace = continue_root_traced(
            &cov,
            &[c(0.0, 0.0), c(1.0, 0.0)],
            c(0.0, 0.0),
            &ContinuationOptions::default(),
        )
        .unwrap();
        let csv = trace_csv(&trace);
        assert!(csv.starts_with("t,re,im\n0,0,0\n"));
        assert_eq!(csv.lines().count(), trace.samples.len() + 1);
        assert!(trace.min_separation > 10.0 * 1e-12);
    }
}
