//! Acceptance matrix: one line per criterion, plus independent oracles for
//! the values the suite derives itself. Exits nonzero on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Duration;

use grapes_core::homology::reduced_homology;
use grapes_core::verify::enumerate::all_complexes_up_to;
use grapes_core::verify::gen::{random_complex_with, rng};
use grapes_core::verify::suite::{run_criterion, Level, SuiteOptions, CRITERIA, DEFAULT_SEED};
use grapes_core::{Complex, Face, Status};

/// Wall-clock limits in seconds, where the criterion sets one.
fn limit(id: u32) -> Option<u64> {
    match id {
        1 => Some(60),
        2 | 3 => Some(300),
        5 | 6 => Some(600),
        _ => None,
    }
}

/// Criteria that may end with Unknown verdicts (weak variants only).
fn tolerates_unknown(id: u32) -> bool {
    id == 3
}

fn main() -> ExitCode {
    let opts = SuiteOptions {
        level: Level::Full,
        seed: DEFAULT_SEED,
        only: Vec::new(),
    };
    let mut failed = 0;
    for (id, name) in CRITERIA {
        let outcome = run_criterion(id, &opts);
        let r = &outcome.report;
        let over_time = limit(id).is_some_and(|s| outcome.elapsed > Duration::from_secs(s));
        let ok = match r.status {
            Status::Pass => !over_time,
            Status::Unknown => tolerates_unknown(id) && !over_time,
            Status::Fail => false,
        };
        println!(
            "criterion {id:>2}: {} [{} checks, {} fail, {} unknown, {:.1}s{}] {name}",
            if ok { "PASS" } else { "FAIL" },
            r.observed["checks"],
            r.observed["fail"],
            r.observed["unknown"],
            outcome.elapsed.as_secs_f64(),
            limit(id).map_or(String::new(), |s| format!(" of {s}s")),
        );
        if !r.observed["details"].is_null() {
            println!("              details: {}", r.observed["details"]);
        }
        if !ok {
            failed += 1;
            if let Some(a) = &r.attachments {
                println!("              flagged: {a}");
            }
        }
    }
    for (name, result) in [
        ("oracle: dual from the definition", dual_oracle()),
        ("oracle: betti numbers by rank mod p", betti_oracle()),
    ] {
        match result {
            Ok(n) => println!("{name}: PASS [{n} complexes]"),
            Err(e) => {
                failed += 1;
                println!("{name}: FAIL {e}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} failing");
        ExitCode::FAILURE
    }
}

/// The criterion-1 instance set, rebuilt here from the public generators.
fn instances() -> Vec<Complex> {
    let mut out = all_complexes_up_to(4);
    let mut r = rng(DEFAULT_SEED, 100);
    use rand::seq::SliceRandom;
    use rand::Rng;
    for _ in 0..500 {
        let n = r.gen_range(0..=6);
        let density = *[0.35, 0.5, 0.65].choose(&mut r).unwrap();
        out.push(random_complex_with(&mut r, n, density));
    }
    out
}

type FaceSet = BTreeSet<u64>;

fn face_set(c: &Complex) -> FaceSet {
    c.faces().into_iter().map(Face::bits).collect()
}

/// `F ∈ Δ*` iff `X ∖ F ∉ Δ`, checked subset by subset.
fn dual_oracle() -> Result<usize, String> {
    let all = instances();
    for c in &all {
        let faces = face_set(c);
        let ground = c.ground_face().bits();
        let expected: FaceSet = c
            .ground_face()
            .subsets()
            .map(Face::bits)
            .filter(|f| !faces.contains(&(ground & !f)))
            .collect();
        if face_set(&c.alexander_dual()) != expected {
            return Err(format!("dual mismatch on {c:?}"));
        }
    }
    Ok(all.len())
}

const P: i64 = 1_000_003;

fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] % P != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow(rows[rank][col].rem_euclid(P), P - 2);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] % P != 0 {
                let f = rows[r][col].rem_euclid(P) * inv % P;
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] - f * rows[rank][k]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow(mut b: i64, mut e: i64) -> i64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

/// Reduced Betti numbers from ranks of boundary maps built here from
/// scratch; agrees with the integral computation whenever there is no
/// torsion of order `P`.
fn betti_oracle() -> Result<usize, String> {
    let all = instances();
    for c in &all {
        let faces: Vec<u64> = face_set(c).into_iter().collect();
        let by_dim = |k: i64| -> Vec<u64> {
            faces
                .iter()
                .copied()
                .filter(|f| f.count_ones() as i64 == k + 1)
                .collect()
        };
        let top = faces.iter().map(|f| f.count_ones() as i64 - 1).max().unwrap_or(-2);
        let boundary_rank = |k: i64| -> usize {
            let (hi, lo) = (by_dim(k), by_dim(k - 1));
            if hi.is_empty() || lo.is_empty() {
                return 0;
            }
            let rows = lo
                .iter()
                .map(|&g| {
                    hi.iter()
                        .map(|&f| {
                            if g & !f != 0 || (f & !g).count_ones() != 1 {
                                return 0;
                            }
                            let removed = f & !g;
                            let pos = (f & (removed - 1)).count_ones();
                            if pos % 2 == 0 {
                                1
                            } else {
                                -1
                            }
                        })
                        .collect()
                })
                .collect();
            rank_mod_p(rows)
        };
        let h = reduced_homology(c);
        for k in -1..=top.max(-1) {
            let expected =
                by_dim(k).len() as i64 - boundary_rank(k) as i64 - boundary_rank(k + 1) as i64;
            if h.betti(k) as i64 != expected {
                return Err(format!("betti_{k} mismatch on {c:?}: {} vs {expected}", h.betti(k)));
            }
        }
    }
    Ok(all.len())
}
