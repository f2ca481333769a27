use num_complex::Complex64;
use serde::Serialize;

use super::continuation::{continue_root_traced, ContinuationOptions, ContinuationTrace};
use super::poly::PolyCovering;
use super::{ser_c64, ser_vec_c64};
use crate::covering::deck_group;
use crate::graph::{coset_graph, nielsen_schreier_rank, rank};
use crate::perm::{centralizer, is_transitive, Permutation};
use crate::{Error, Result};

const SAMPLES_PER_SIDE: usize = 16;
/// Endpoints of a lifted loop must land this close to a fiber point.
const MATCH_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopMonodromy {
    #[serde(serialize_with = "ser_c64")]
    pub puncture: Complex64,
    pub permutation: Permutation,
    #[serde(skip)]
    pub path: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonodromyReport {
    pub degree: usize,
    #[serde(serialize_with = "ser_c64")]
    pub base_value: Complex64,
    #[serde(serialize_with = "ser_vec_c64")]
    pub critical_points: Vec<Complex64>,
    #[serde(serialize_with = "ser_vec_c64")]
    pub critical_values: Vec<Complex64>,
    #[serde(serialize_with = "ser_vec_c64")]
    pub domain_punctures: Vec<Complex64>,
    #[serde(serialize_with = "ser_vec_c64")]
    pub fiber: Vec<Complex64>,
    pub loop_perms: Vec<LoopMonodromy>,
    pub transitive: bool,
    pub deck_elements: Vec<Permutation>,
    /// Index of the sheet-0 stabilizer, i.e. the sheet count.
    pub stabilizer_index: usize,
    pub stabilizer_rank: usize,
}

impl MonodromyReport {
    pub fn permutations(&self) -> Vec<Permutation> {
        self.loop_perms
            .iter()
            .map(|l| l.permutation.clone())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report is serializable")
    }
}

/// Closed polyline from `base` around the puncture `v`: a straight spoke to
/// an axis-aligned square centered at `v`, once around it counterclockwise,
/// and back along the spoke. The half-width is half the distance from `v`
/// to the nearest other puncture or to `base`, whichever is smaller.
pub fn puncture_loop(
    base: Complex64,
    v: Complex64,
    punctures: &[Complex64],
) -> Result<Vec<Complex64>> {
    let to_base = (base - v).norm();
    if to_base == 0.0 {
        return Err(Error::InvalidArgument(format!("base {base} is a puncture")));
    }
    let nearest_other = punctures
        .iter()
        .filter(|&&q| q != v)
        .map(|q| (q - v).norm())
        .fold(f64::INFINITY, f64::min);
    let r = 0.5 * nearest_other.min(to_base);

    // entry point: where the ray from v toward base leaves the square
    let u = (base - v) / to_base;
    let entry = v + u * (r / u.re.abs().max(u.im.abs()));

    // perimeter parameter s ∈ [0, 8r), starting at the corner (r, -r)
    let point_at = |s: f64| -> Complex64 {
        let s = s.rem_euclid(8.0 * r);
        let (x, y) = if s < 2.0 * r {
            (r, s - r)
        } else if s < 4.0 * r {
            (r - (s - 2.0 * r), r)
        } else if s < 6.0 * r {
            (-r, r - (s - 4.0 * r))
        } else {
            (s - 6.0 * r - r, -r)
        };
        v + Complex64::new(x, y)
    };
    let rel = entry - v;
    let s_entry = if (rel.re - r).abs() <= 1e-12 * r && rel.im < r {
        rel.im + r
    } else if (rel.im - r).abs() <= 1e-12 * r && rel.re > -r {
        2.0 * r + (r - rel.re)
    } else if (rel.re + r).abs() <= 1e-12 * r && rel.im > -r {
        4.0 * r + (r - rel.im)
    } else {
        6.0 * r + (rel.re + r)
    };

    let step = 2.0 * r / SAMPLES_PER_SIDE as f64;
    let total = 4 * SAMPLES_PER_SIDE;
    let mut path = vec![base, entry];
    let first_k = (s_entry / step).floor() as usize + 1;
    for k in first_k..first_k + total {
        let s = k as f64 * step;
        if (s - s_entry).abs() > 1e-12 * r && (s - s_entry - 8.0 * r).abs() > 1e-12 * r {
            path.push(point_at(s));
        }
    }
    path.push(entry);
    path.push(base);
    Ok(path)
}

fn match_index(fiber: &[Complex64], z: Complex64) -> Result<usize> {
    let (i, d) = fiber
        .iter()
        .enumerate()
        .map(|(i, p)| (i, (p - z).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty fiber");
    if d > MATCH_TOL {
        return Err(Error::Continuation(format!(
            "lift ends at {z}, {d:e} away from the fiber"
        )));
    }
    Ok(i)
}

/// Permutation of the sorted fiber over `path[0]` induced by the closed
/// path: sheet `i` goes to the index of the end of the lift starting at
/// `fiber[i]`.
pub fn loop_permutation(
    cov: &PolyCovering,
    path: &[Complex64],
    opts: &ContinuationOptions,
) -> Result<Permutation> {
    loop_permutation_traced(cov, path, opts).map(|(p, _)| p)
}

pub(crate) fn loop_permutation_traced(
    cov: &PolyCovering,
    path: &[Complex64],
    opts: &ContinuationOptions,
) -> Result<(Permutation, Vec<ContinuationTrace>)> {
    let (first, last) = match (path.first(), path.last()) {
        (Some(f), Some(l)) => (*f, *l),
        _ => return Err(Error::InvalidArgument("path is empty".into())),
    };
    if first != last {
        return Err(Error::InvalidArgument(
            "loop must start and end at the same point".into(),
        ));
    }
    let fiber = cov.fiber(first)?;
    let mut images = Vec::with_capacity(fiber.len());
    let mut traces = Vec::with_capacity(fiber.len());
    for &root in &fiber {
        let trace = continue_root_traced(cov, path, root, opts)?;
        images.push(match_index(&fiber, trace.end)?);
        traces.push(trace);
    }
    let perm = Permutation::new(images)
        .map_err(|e| Error::Continuation(format!("lifted endpoints collide: {e}")))?;
    Ok((perm, traces))
}

pub fn monodromy(cov: &PolyCovering, base_value: Complex64) -> Result<MonodromyReport> {
    monodromy_with(cov, base_value, &ContinuationOptions::default())
}

/// Fiber over `base_value`, one loop permutation per target puncture, and
/// the deck group computed both as the centralizer of the loop permutations
/// and as the automorphisms of their coset graph.
pub fn monodromy_with(
    cov: &PolyCovering,
    base_value: Complex64,
    opts: &ContinuationOptions,
) -> Result<MonodromyReport> {
    monodromy_traced(cov, base_value, opts).map(|(r, _)| r)
}

/// As [`monodromy_with`], also returning the traces of every lift, grouped
/// per loop.
pub fn monodromy_traced(
    cov: &PolyCovering,
    base_value: Complex64,
    opts: &ContinuationOptions,
) -> Result<(MonodromyReport, Vec<Vec<ContinuationTrace>>)> {
    let punctures = cov.target_punctures();
    let fiber = cov.fiber(base_value)?;
    let mut loop_perms = Vec::with_capacity(punctures.len());
    let mut traces = Vec::with_capacity(punctures.len());
    for &v in punctures {
        let path = puncture_loop(base_value, v, punctures)?;
        let (permutation, loop_traces) = loop_permutation_traced(cov, &path, opts)?;
        loop_perms.push(LoopMonodromy {
            puncture: v,
            permutation,
            path,
        });
        traces.push(loop_traces);
    }

    let d = fiber.len();
    let perms: Vec<Permutation> = loop_perms.iter().map(|l| l.permutation.clone()).collect();
    let transitive = is_transitive(d, &perms);
    if !transitive {
        // the stabilizer rank is read off the coset graph, which needs a transitive action
        return Err(Error::NotTransitive);
    }
    let mut from_centralizer = centralizer(d, &perms);
    from_centralizer.sort();
    let g = coset_graph(&perms, 0)?;
    let deck_elements = deck_group(&g)?;
    if from_centralizer != deck_elements {
        return Err(Error::Continuation(format!(
            "centralizer has {} elements but the coset graph has {} automorphisms",
            from_centralizer.len(),
            deck_elements.len()
        )));
    }
    let stabilizer_rank = rank(&g)?;

    let report = MonodromyReport {
        degree: cov.degree(),
        base_value,
        critical_points: cov.critical_points().to_vec(),
        critical_values: cov.critical_values().to_vec(),
        domain_punctures: cov.domain_punctures().to_vec(),
        fiber,
        loop_perms,
        transitive,
        deck_elements,
        stabilizer_index: d,
        stabilizer_rank,
    };
    Ok((report, traces))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NsCrosscheck {
    pub k: usize,
    pub sheets: usize,
    pub stabilizer_rank: usize,
    pub predicted_rank: usize,
    pub holds: bool,
}

/// Compares the stabilizer rank with `(k − 1)·d + 1`, `k` the number of
/// loop generators and `d` the sheet count.
pub fn ns_crosscheck(report: &MonodromyReport, k: usize) -> Result<NsCrosscheck> {
    if k != report.loop_perms.len() {
        return Err(Error::RankMismatch {
            expected: report.loop_perms.len(),
            found: k,
        });
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let predicted_rank = nielsen_schreier_rank(k, report.stabilizer_index);
    Ok(NsCrosscheck {
        k,
        sheets: report.stabilizer_index,
        stabilizer_rank: report.stabilizer_rank,
        predicted_rank,
        holds: predicted_rank == report.stabilizer_rank,
    })
}
