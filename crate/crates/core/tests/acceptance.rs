//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Run with `cargo test -p freecover-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use freecover::analytic::{
    continue_root, loop_permutation, monodromy, ns_crosscheck, puncture_loop, ContinuationOptions,
    PolyCovering,
};
use freecover::covering::{
    artin_certificate, grid, grid_basis, homology_image_check, is_regular, lift_closes,
    torus_covering,
};
use freecover::graph::{
    canonical_form, coset_graph, fold_with_edge_order, ns_check, prune_to_core, rank,
    wedge_of_words,
};
use freecover::{Homomorphism, Index, Permutation, SubgroupGraph, Word};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    check(elapsed < limit, || {
        format!("{what} took {elapsed:.2?}, limit {limit:.0?}")
    })
}

fn grid_rank_law() -> Outcome {
    let start = Instant::now();
    for n in 1..=12usize {
        let g = grid(n);
        // Euler characteristic of the (n+1)×(n+1) lattice graph by counting
        let expected = 2 * n * (n + 1) + 1 - (n + 1) * (n + 1);
        check(expected == n * n, || {
            format!("edge count oracle off at n = {n}")
        })?;
        let r = rank(&g).map_err(|e| e.to_string())?;
        check(r == n * n, || format!("rank(grid({n})) = {r}"))?;
        let b = grid_basis(n).map_err(|e| e.to_string())?.len();
        check(b == n * n, || format!("|grid_basis({n})| = {b}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1), "n = 1..12")?;
    Ok(format!("n = 1..12, {elapsed:.2?}"))
}

fn commutator_identification() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut members = 0;
    for _ in 0..10_000 {
        let w = common::random_word(&mut rng, 2, 40);
        let closes = lift_closes(&w).map_err(|e| e.to_string())?;
        let in_c2 = w.in_commutator_subgroup();
        let oracle = common::naive_grid_walk(&w.to_string(), (0, 0)) == (0, 0);
        check(closes == in_c2 && closes == oracle, || {
            format!("mismatch on {w}: lift {closes}, C2 {in_c2}, walk {oracle}")
        })?;
        members += usize::from(in_c2);
    }
    let mut basis_words = 0;
    for n in 1..=12 {
        for w in grid_basis(n).map_err(|e| e.to_string())? {
            check(
                lift_closes(&w).unwrap() && w.in_commutator_subgroup(),
                || format!("basis word {w} of G_{n} fails"),
            )?;
            basis_words += 1;
        }
    }
    Ok(format!(
        "10000 random words ({members} in C2), {basis_words} basis words, 0 mismatches"
    ))
}

fn artin_certificates() -> Outcome {
    let mut previous = 0;
    let mut timing = Duration::ZERO;
    for n in 1..=5usize {
        let start = Instant::now();
        let cert = artin_certificate(n).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        if n == 5 {
            timing = elapsed;
            within(elapsed, Duration::from_secs(30), "n = 5")?;
        }
        let basis = grid_basis(n).unwrap();
        let (edges, v) = common::wedge_edges(&basis);
        let (cv, ce) = common::naive_fold_core(edges, v);
        let oracle = ce + 1 - cv;
        check(
            cert.holds() && cert.stallings_rank == n * n && oracle == n * n,
            || {
                format!(
                    "n = {n}: certificate rank {}, oracle {oracle}",
                    cert.stallings_rank
                )
            },
        )?;
        check(cert.stallings_rank > previous, || {
            format!("rank not increasing at n = {n}")
        })?;
        previous = cert.stallings_rank;
        println!("  {}", cert.to_json());
    }
    Ok(format!("ranks 1, 4, 9, 16, 25; n = 5 in {timing:.2?}"))
}

fn homology_triviality() -> Outcome {
    for n in 1..=12 {
        check(homology_image_check(n).map_err(|e| e.to_string())?, || {
            format!("n = {n}")
        })?;
        for w in grid_basis(n).unwrap() {
            check(
                common::naive_abelianize(&w.to_string(), 2) == [0, 0],
                || format!("{w} has nonzero exponent sums"),
            )?;
        }
    }
    Ok("n = 1..12".into())
}

fn nielsen_schreier() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..100 {
        let k = rng.gen_range(2..=3);
        let m = rng.gen_range(1..=50);
        let perms = common::to_perms(&common::random_transitive_action(&mut rng, k, m));
        let g = coset_graph(&perms, 0).map_err(|e| e.to_string())?;
        let cert = ns_check(k, &g).map_err(|e| e.to_string())?;
        let counted = k * m + 1 - m;
        check(
            cert.index == Index::Finite(m)
                && cert.rank == counted
                && cert.formula_holds == Some(true),
            || format!("trial {trial}: k = {k}, m = {m}, certificate {cert:?}"),
        )?;
    }

    let cubic =
        monodromy(&PolyCovering::cubic(), Complex64::new(0.0, 0.0)).map_err(|e| e.to_string())?;
    let g3 = coset_graph(&cubic.permutations(), 0).map_err(|e| e.to_string())?;
    let c3 = ns_check(2, &g3).map_err(|e| e.to_string())?;
    check(c3.index == Index::Finite(3) && c3.rank == 4, || {
        format!("cubic: {c3:?}")
    })?;

    let six = common::to_perms(&common::random_transitive_action(&mut rng, 2, 6));
    let c6 = ns_check(2, &coset_graph(&six, 0).unwrap()).map_err(|e| e.to_string())?;
    check(c6.index == Index::Finite(6) && c6.rank == 7, || {
        format!("six sheets: {c6:?}")
    })?;
    Ok("100 random actions, index 3 -> rank 4, index 6 -> rank 7".into())
}

/// Every permutation of `0..n` in lexicographic order.
fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn cubic_monodromy() -> Outcome {
    let start = Instant::now();
    let cov = PolyCovering::cubic();
    let mut values = cov.critical_values().to_vec();
    values.sort_by(|a, b| a.re.total_cmp(&b.re));
    check(values.len() == 2, || {
        format!("{} critical values", values.len())
    })?;
    for (v, expected) in values.iter().zip([-2.0, 2.0]) {
        check((v - Complex64::new(expected, 0.0)).norm() <= 1e-9, || {
            format!("critical value {v}, expected {expected}")
        })?;
    }

    let base = Complex64::new(0.0, 0.0);
    let report = monodromy(&cov, base).map_err(|e| e.to_string())?;
    let perms = report.permutations();
    check(perms.len() == 2, || format!("{} loops", perms.len()))?;
    for p in &perms {
        check(p.cycle_type() == [2, 1], || {
            format!("{p} is not a transposition")
        })?;
    }
    check(
        report.transitive && common::act_is_transitive(&perms),
        || "monodromy is not transitive".into(),
    )?;

    let commuting: Vec<Vec<usize>> = all_permutations(3)
        .into_iter()
        .filter(|s| {
            perms
                .iter()
                .all(|p| (0..3).all(|i| s[p.apply(i)] == p.apply(s[i])))
        })
        .collect();
    check(commuting == [vec![0, 1, 2]], || {
        format!("centralizer {commuting:?}")
    })?;
    check(report.deck_elements == [Permutation::identity(3)], || {
        format!("deck elements {:?}", report.deck_elements)
    })?;
    check(report.stabilizer_rank == 4, || {
        format!("stabilizer rank {}", report.stabilizer_rank)
    })?;
    let ns = ns_crosscheck(&report, 2).map_err(|e| e.to_string())?;
    check(ns.holds, || format!("{ns:?}"))?;

    let opts = ContinuationOptions::default();
    let punctures = cov.target_punctures().to_vec();
    let loops: Vec<Vec<Complex64>> = punctures
        .iter()
        .map(|&v| puncture_loop(base, v, &punctures).unwrap())
        .collect();
    for (path, p) in loops.iter().zip(&perms) {
        let rev: Vec<Complex64> = path.iter().rev().copied().collect();
        let q = loop_permutation(&cov, &rev, &opts).map_err(|e| e.to_string())?;
        check(q == p.inverse(), || {
            format!("reversed loop gives {q}, expected {}", p.inverse())
        })?;
    }
    for (i, j) in [(0, 1), (1, 0)] {
        let mut path = loops[i].clone();
        path.extend_from_slice(&loops[j][1..]);
        let q = loop_permutation(&cov, &path, &opts).map_err(|e| e.to_string())?;
        let expected = perms[i].then(&perms[j]);
        check(q == expected, || {
            format!("concatenation gives {q}, expected {expected}")
        })?;
    }

    let excursion = [
        base,
        Complex64::new(1.0, 1.5),
        Complex64::new(-3.0, 0.5),
        Complex64::new(0.5, -2.0),
    ];
    let mut round_trip = excursion.to_vec();
    round_trip.extend(excursion.iter().rev().skip(1));
    let mut worst: f64 = 0.0;
    for &z in &report.fiber {
        let end = continue_root(&cov, &round_trip, z).map_err(|e| e.to_string())?;
        worst = worst.max((end - z).norm());
    }
    check(worst <= 1e-6, || format!("round trip error {worst:e}"))?;

    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5), "cubic monodromy")?;
    Ok(format!(
        "values -2, 2; loops {} and {}; deck trivial; rank 4; round trip {worst:.1e}; {elapsed:.2?}",
        perms[0], perms[1]
    ))
}

fn regularity_dichotomy() -> Outcome {
    for m in 2..=4u64 {
        let r = is_regular(&torus_covering(m).map_err(|e| e.to_string())?, None)
            .map_err(|e| e.to_string())?;
        check(
            r.is_regular() && r.condition_iii_holds && r.deck_order as u64 == m * m,
            || format!("torus m = {m}: {r:?}"),
        )?;
    }
    let s = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
    let t = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
    let images = vec![s.images().to_vec(), t.images().to_vec()];
    let g = coset_graph(&[s, t], 0).unwrap();
    let r = is_regular(&g, None).map_err(|e| e.to_string())?;
    check(
        !r.is_regular() && !r.condition_iii_holds && r.deck_order == 1,
        || format!("cubic coset graph: {r:?}"),
    )?;
    let w = r.witness.ok_or("no witness")?;
    let closed: Vec<usize> = (0..3)
        .filter(|&v| common::act(&images, v, &w.word) == v)
        .collect();
    check(!closed.is_empty() && closed.len() < 3, || {
        format!("witness {} closes at {closed:?}", w.word)
    })?;
    Ok(format!(
        "tori m = 2..4 regular with deck orders 4, 9, 16; cubic irregular, witness \"{}\" closed at {:?}",
        w.word, closed
    ))
}

fn property_suites() -> Outcome {
    const CASES: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(8);

    for _ in 0..CASES {
        let k = rng.gen_range(1..=4);
        let letters = common::random_letters(&mut rng, k, 30);
        let text: String = letters.iter().map(|l| l.to_char()).collect();
        let w = Word::reduce(letters, k).unwrap();
        let again = Word::reduce(w.letters().iter().copied(), k).unwrap();
        check(
            again == w && w.to_string() == common::naive_reduce(&text),
            || format!("reduction of {text}"),
        )?;
    }

    for _ in 0..CASES {
        let k = rng.gen_range(1..=4);
        let u = common::random_word(&mut rng, k, 20);
        let v = common::random_word(&mut rng, k, 20);
        let lhs = u.multiply(&v).unwrap().abelianize().coords;
        let (a, b) = (
            common::naive_abelianize(&u.to_string(), k),
            common::naive_abelianize(&v.to_string(), k),
        );
        let rhs: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        check(lhs == rhs, || format!("abelianize({u} * {v})"))?;
    }

    for _ in 0..CASES {
        let (k, l) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let images: Vec<Word> = (0..k)
            .map(|_| common::random_word(&mut rng, l, 5))
            .collect();
        let h = Homomorphism::new(k, l, images.clone()).unwrap();
        let u = common::random_word(&mut rng, k, 12);
        let v = common::random_word(&mut rng, k, 12);
        let huv = h.apply(&u.multiply(&v).unwrap()).unwrap();
        let product = h
            .apply(&u)
            .unwrap()
            .multiply(&h.apply(&v).unwrap())
            .unwrap();
        // substitution oracle: splice image text for each letter, then reduce
        let spliced: String = u
            .multiply(&v)
            .unwrap()
            .letters()
            .iter()
            .map(|x| {
                let img = &images[x.gen - 1];
                if x.inverted {
                    img.inverse()
                } else {
                    img.clone()
                }
                .to_string()
            })
            .filter(|s| s != "1")
            .collect();
        check(
            huv == product && huv.to_string() == common::naive_reduce(&spliced),
            || format!("h({u} * {v})"),
        )?;
    }

    for case in 0..CASES {
        let k = rng.gen_range(1..=3);
        let count = rng.gen_range(1..=6);
        let words: Vec<Word> = (0..count)
            .map(|_| common::random_word(&mut rng, k, 8))
            .collect();
        let wedge = wedge_of_words(k, &words).unwrap();
        let mut forms = Vec::new();
        for _ in 0..3 {
            let mut order: Vec<usize> = (0..wedge.edge_count()).collect();
            order.shuffle(&mut rng);
            let folded = fold_with_edge_order(&wedge, &order).map_err(|e| e.to_string())?;
            forms.push(canonical_form(&prune_to_core(&folded)).map_err(|e| e.to_string())?);
        }
        let (edges, v) = common::wedge_edges(&words);
        let (cv, ce) = common::naive_fold_core(edges, v);
        check(
            forms.windows(2).all(|w| w[0] == w[1])
                && forms[0].vertex_count() == cv
                && forms[0].edge_count() == ce,
            || format!("confluence case {case}: {words:?}"),
        )?;
    }

    let mut members = 0;
    for case in 0..CASES {
        let k = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=8);
        let perms = common::random_transitive_action(&mut rng, k, m);
        let sg = SubgroupGraph::from_words(k, &common::schreier_generators(&perms))
            .map_err(|e| e.to_string())?;
        check(sg.index() == Index::Finite(m), || {
            format!("case {case}: index {} for {m} cosets", sg.index())
        })?;
        let w = common::random_word(&mut rng, k, 10);
        let expected = common::act(&perms, 0, &w) == 0;
        check(sg.contains(&w).unwrap() == expected, || {
            format!("case {case}: membership of {w}")
        })?;
        members += usize::from(expected);
    }

    Ok(format!(
        "5 suites x {CASES} cases, 0 failures ({members} member words in the membership suite)"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("grid rank law", grid_rank_law),
        (
            "commutator subgroup identification",
            commutator_identification,
        ),
        ("artin certificate", artin_certificates),
        ("homology triviality", homology_triviality),
        ("nielsen-schreier", nielsen_schreier),
        ("cubic monodromy", cubic_monodromy),
        ("regularity dichotomy", regularity_dichotomy),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({why})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
