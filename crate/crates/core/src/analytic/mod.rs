//! Monodromy of polynomial coverings `p : ℂ − p⁻¹(V) → ℂ − V`, where `V`
//! is the set of critical values, computed by numerical root continuation.
//!
//! For `p(w) = w³ − 3w` the critical points are `±1` with critical values
//! `∓2`; the covering has three sheets, its two loop permutations are
//! transpositions generating `S_3`, its deck group is trivial and the
//! stabilizer of a sheet is a free subgroup of rank 4 and index 3 in `F_2`.

mod continuation;
mod monodromy;
mod poly;
pub mod roots;

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::Serializer;

pub use continuation::{
    continue_root, continue_root_traced, trace_csv, ContinuationOptions, ContinuationTrace,
    TraceSample,
};
pub use monodromy::{
    loop_permutation, monodromy, monodromy_traced, monodromy_with, ns_crosscheck, puncture_loop,
    LoopMonodromy, MonodromyReport, NsCrosscheck,
};
pub use poly::{CriticalFiber, FiberPoint, PolyCovering, CRITICAL_POINT_TOL};

/// Lexicographic order on `(re, im)` after rounding to `1e-9`.
pub fn cmp_lex(a: &Complex64, b: &Complex64) -> Ordering {
    let key = |x: f64| (x * 1e9).round();
    key(a.re)
        .total_cmp(&key(b.re))
        .then(key(a.im).total_cmp(&key(b.im)))
}

pub(crate) fn ser_c64<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&[z.re, z.im], s)
}

pub(crate) fn ser_vec_c64<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}
