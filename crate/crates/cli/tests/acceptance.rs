//! End-to-end acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p ehrhart-cli --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::Instant;

use ehrhart_core::realizer::{
    construct_lemma_first, construct_lemma_second, construct_section2, construct_section3_two,
    construct_segment, construct_triangle_111, construct_unit,
};
use ehrhart_core::{
    count_points, delta_from_box, delta_from_counts, delta_star, enumerate_candidates,
    evaluate_ehrhart, inequality_report, is_realizable, realize, CandidateDelta, DeltaVector,
    LatticeSimplex, DEFAULT_BUDGET,
};
use num_bigint::BigInt;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ones_at(d: usize, positions: &[usize]) -> Vec<u64> {
    let mut v = vec![0u64; d + 1];
    for &p in positions {
        v[p] += 1;
    }
    v
}

fn delta_of(s: &LatticeSimplex) -> Result<DeltaVector, String> {
    delta_from_box(s).map_err(|e| e.to_string())
}

fn abs_det(s: &LatticeSimplex) -> Result<BigInt, String> {
    s.normalized_volume().map_err(|e| e.to_string())
}

fn counts_delta(s: &LatticeSimplex) -> Result<DeltaVector, String> {
    let d = s.dim();
    let counts: Vec<u64> = (1..=d as u64)
        .map(|n| count_points(s, n, false, DEFAULT_BUDGET))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    delta_from_counts(&counts, d).map_err(|e| e.to_string())
}

fn section2_family() -> Outcome {
    for d in [3usize, 5, 7, 9, 11] {
        let s = construct_section2(d).map_err(|e| e.to_string())?;
        let delta = delta_of(&s)?;
        let expected = ones_at(d, &[0, d.div_ceil(2)]);
        ensure(delta.entries() == expected, || {
            format!("d={d}: got {delta}")
        })?;
        ensure(delta.sum() == 2, || format!("d={d}: sum {}", delta.sum()))?;
        let det = abs_det(&s)?;
        ensure(det == BigInt::from(2), || format!("d={d}: |det| = {det}"))?;
        if d <= 5 {
            let brute = counts_delta(&s)?;
            ensure(brute == delta, || format!("d={d}: counts give {brute}"))?;
        }
    }
    Ok("d = 3,5,7,9,11; brute force agrees at d = 3,5".into())
}

fn lemma_first_family() -> Outcome {
    for k in 1..=3usize {
        let s = construct_lemma_first(k).map_err(|e| e.to_string())?;
        let d = 3 * k + 2;
        ensure(s.dim() == d && s.is_full_dimensional(), || {
            format!("k={k}: dim {}", s.dim())
        })?;
        let delta = delta_of(&s)?;
        let expected = ones_at(d, &[0, k + 1, 2 * k + 2]);
        ensure(delta.entries() == expected, || {
            format!("k={k}: got {delta}")
        })?;
        let det = abs_det(&s)?;
        ensure(det == BigInt::from(3), || format!("k={k}: |det| = {det}"))?;
    }
    Ok("k = 1,2,3".into())
}

fn lemma_second_family() -> Outcome {
    let params = [(0usize, 1usize), (0, 2), (0, 3), (1, 1), (1, 2), (2, 1)];
    for (k, l) in params {
        let s = construct_lemma_second(k, l).map_err(|e| e.to_string())?;
        let d = 3 * k + 2 + 2 * l;
        ensure(s.dim() == d && s.is_full_dimensional(), || {
            format!("(k,l)=({k},{l}): dim {}", s.dim())
        })?;
        let delta = delta_of(&s)?;
        let expected = ones_at(d, &[0, k + l + 1, 2 * k + l + 2]);
        ensure(delta.entries() == expected, || {
            format!("(k,l)=({k},{l}): got {delta}")
        })?;
    }
    Ok(format!("{} parameter pairs", params.len()))
}

fn end_to_end() -> Outcome {
    let mut realized = 0usize;
    for d in 3..=10usize {
        for (candidate, verdict) in enumerate_candidates(d, 3) {
            if !verdict.is_yes() {
                continue;
            }
            let (s, plan) = realize(&candidate).map_err(|e| format!("{candidate}: {e}"))?;
            ensure(s.dim() == d && s.is_full_dimensional(), || {
                format!("{candidate}: witness of dimension {}", s.dim())
            })?;
            let delta = delta_of(&s)?;
            ensure(CandidateDelta::from(&delta) == candidate, || {
                format!("{candidate}: {plan} gives {delta}")
            })?;
            let det = abs_det(&s)?;
            ensure(det == BigInt::from(delta.sum()), || {
                format!("{candidate}: |det| = {det}")
            })?;
            ensure(
                inequality_report(&CandidateDelta::from(&delta)).all_pass(),
                || format!("{candidate}: computed delta fails an inequality"),
            )?;
            realized += 1;
        }
    }
    Ok(format!("{realized} candidates realized and verified"))
}

fn two_ones_equivalence() -> Outcome {
    let mut checked = 0usize;
    for d in 3..=20usize {
        for m in 2..d {
            for n in (m + 1)..d {
                let mut entries = vec![0i64; d + 1];
                entries[0] = 1;
                entries[m] = 1;
                entries[n] = 1;
                let c = CandidateDelta::new(entries).map_err(|e| e.to_string())?;
                let yes = is_realizable(&c).is_yes();
                let (p, q, r) = (m - 1, n - m - 1, d - n);
                let expected = q <= p && p <= r;
                ensure(yes == expected, || {
                    format!("d={d} m={m} n={n}: classifier says {yes}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (d, m, n) triples"))
}

fn run_cli(args: &[&str]) -> Result<(String, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ehrhart"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().ok_or("terminated by signal")?;
    Ok((String::from_utf8_lossy(&out.stdout).into_owned(), code))
}

fn cli_examples() -> Outcome {
    let (text, code) = run_cli(&["check", "1", "0", "1", "0", "1", "1", "0", "0"])?;
    ensure(code == 3, || format!("first example exit {code}"))?;
    for line in [
        "basic: pass=true",
        "stanley: pass=true",
        "hibi: pass=true",
        "lower_bound: pass=true",
        "inequalities_pass: true",
        "verdict: out-of-scope",
    ] {
        ensure(text.lines().any(|l| l == line), || {
            format!("first example lacks `{line}`")
        })?;
    }
    let (text, code) = run_cli(&["check", "1", "0", "1", "0", "0", "1", "0"])?;
    ensure(code == 2, || format!("second example exit {code}"))?;
    for line in ["stanley: pass=false index=2 lhs=2 rhs=1", "verdict: no"] {
        ensure(text.lines().any(|l| l == line), || {
            format!("second example lacks `{line}`")
        })?;
    }
    Ok("out-of-scope with all inequalities passing; stanley fails at i=2".into())
}

fn reeve(r: i64) -> LatticeSimplex {
    LatticeSimplex::from_coords(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, r]]).unwrap()
}

fn corpus() -> Vec<(String, LatticeSimplex)> {
    let mut c: Vec<(String, LatticeSimplex)> = Vec::new();
    for d in 1..=5 {
        c.push((format!("unit d={d}"), construct_unit(d).unwrap()));
    }
    for d in [3, 5] {
        c.push((format!("section2 d={d}"), construct_section2(d).unwrap()));
        c.push((
            format!("section3_two d={d}"),
            construct_section3_two(d).unwrap(),
        ));
    }
    for r in 1..=3 {
        c.push((format!("reeve r={r}"), reeve(r)));
    }
    c.push(("triangle_111".into(), construct_triangle_111().unwrap()));
    c.push(("segment 2".into(), construct_segment(2).unwrap()));
    c.push(("segment 3".into(), construct_segment(3).unwrap()));
    c.push(("lemma_first k=1".into(), construct_lemma_first(1).unwrap()));
    c.push((
        "lemma_second k=0 l=1".into(),
        construct_lemma_second(0, 1).unwrap(),
    ));
    let extra: Vec<(&str, Vec<Vec<i64>>)> = vec![
        ("triangle 2x2", vec![vec![0, 0], vec![2, 0], vec![0, 2]]),
        ("triangle 3x1", vec![vec![0, 0], vec![3, 1], vec![1, 3]]),
        ("segment 1..3", vec![vec![1], vec![3]]),
        (
            "tetra 2,2,2",
            vec![vec![0, 0, 0], vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]],
        ),
        (
            "tetra skew",
            vec![vec![1, 0, 0], vec![0, 3, 1], vec![2, 1, 3], vec![3, 3, 0]],
        ),
        (
            "simplex 4d",
            vec![
                vec![0, 0, 0, 0],
                vec![1, 1, 0, 0],
                vec![0, 1, 1, 0],
                vec![0, 0, 1, 1],
                vec![1, 0, 1, 3],
            ],
        ),
        (
            "tetra 3,1,2",
            vec![vec![0, 0, 0], vec![3, 0, 0], vec![0, 1, 0], vec![1, 1, 2]],
        ),
    ];
    for (name, verts) in extra {
        c.push((name.into(), LatticeSimplex::from_coords(&verts).unwrap()));
    }
    c
}

/// `delta*_i` for `i = 0..=d+1`, from brute-force interior counts alone.
fn star_from_interior_counts(s: &LatticeSimplex) -> Result<Vec<i128>, String> {
    let d = s.dim();
    let mut interior = vec![0i128];
    for n in 1..=(d as u64 + 1) {
        let c = count_points(s, n, true, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        interior.push(c as i128);
    }
    let choose = |n: usize, k: usize| -> i128 {
        (0..k).fold(1i128, |acc, j| acc * (n - j) as i128 / (j + 1) as i128)
    };
    Ok((0..=d + 1)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * choose(d + 1, j) * interior[i - j]
                })
                .sum()
        })
        .collect())
}

fn agreement_and_reciprocity() -> Outcome {
    let corpus = corpus();
    ensure(corpus.len() >= 20, || {
        format!("corpus has only {} members", corpus.len())
    })?;
    for (name, s) in &corpus {
        let d = s.dim();
        ensure(d <= 5, || format!("{name}: dimension {d}"))?;
        let in_range = s
            .vertices()
            .iter()
            .flatten()
            .all(|x| *x >= BigInt::from(0) && *x <= BigInt::from(3));
        ensure(in_range, || format!("{name}: coordinate outside [0, 3]"))?;
        let delta = delta_of(s)?;
        let brute = counts_delta(s)?;
        ensure(brute == delta, || {
            format!("{name}: box {delta} vs counts {brute}")
        })?;

        let mut expected = vec![0i128; d + 2];
        for (i, &v) in delta.entries().iter().enumerate() {
            expected[d + 1 - i] = v as i128;
        }
        let star = star_from_interior_counts(s)?;
        ensure(star == expected, || {
            format!("{name}: delta* {star:?} vs {expected:?}")
        })?;
        let from_box: Vec<i128> = delta_star(s)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(i128::from)
            .collect();
        ensure(from_box == expected, || {
            format!("{name}: box delta* {from_box:?}")
        })?;

        for n in 1..=3u64 {
            let open = count_points(s, n, true, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let mut reflected = evaluate_ehrhart(&delta, -(n as i64));
            if d % 2 == 1 {
                reflected = -reflected;
            }
            ensure(BigInt::from(open) == reflected, || {
                format!("{name}: i*({n}) = {open} but (-1)^d i(-{n}) = {reflected}")
            })?;
        }
    }
    Ok(format!("{} simplices", corpus.len()))
}

fn pyramid_law() -> Outcome {
    let corpus = corpus();
    for (name, s) in &corpus {
        let delta = delta_of(s)?;
        let lifted = delta_of(&s.pyramid())?;
        ensure(lifted == delta.with_trailing_zero(), || {
            format!("{name}: {delta} lifts to {lifted}")
        })?;
    }
    Ok(format!("{} simplices", corpus.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("volume-2 odd-dimensional family", section2_family),
        ("volume-3 family in dimension 3k+2", lemma_first_family),
        ("volume-3 family in dimension 3k+2+2l", lemma_second_family),
        ("every YES candidate is realized, d = 3..10", end_to_end),
        ("two-ones classification, d <= 20", two_ones_equivalence),
        ("check command examples", cli_examples),
        (
            "method agreement, duality and reciprocity",
            agreement_and_reciprocity,
        ),
        ("pyramid appends a zero", pyramid_law),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] AC{} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("[FAIL] AC{} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
