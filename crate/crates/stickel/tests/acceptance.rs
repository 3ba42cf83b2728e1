//! Acceptance suite: one PASS/FAIL line per criterion. Criteria listed in
//! `KNOWN_FAILURES` are expected to fail; the target errors if any criterion
//! deviates from its expected outcome.

use std::time::Instant;

use stickel::commands::run;
use stickel::suites;
use stickel::Params;
use stickel_core::coleman::{
    col, cw_closed_form, cw_coeffs, cw_generating_oracle, cyclotomic_series, d_moments,
    measure_moment, mel_invert, mel_truncation, ColemanSeries,
};
use stickel_core::eigenspace::{
    herbrand_check, iwasawa_invariants, lp_constant_check, sharp_moment_check, theta_psi, zp_ring,
    PadicCharacter, SHARP_MOMENT_SLACK,
};
use stickel_core::gauss::{primes_above, verify_stickelberger};
use stickel_core::ring::{arith, padic::reduce_rational, PadicRing, Zpn};
use stickel_core::series::{SeriesModulus, TruncSeries};
use stickel_core::stickelberger::{
    integral_exponent_basis, norm_identity_check, row_to_element, theta_coherence_check,
};

/// Criteria expected to fail; see the notes printed with them.
const KNOWN_FAILURES: &[u32] = &[5];

/// Pinned tolerances and sizes.
const SEED: u64 = stickel::seed::DEFAULT_SEED;
const LP_PRECISION: u32 = 4;
const IWASAWA_PRECISION: u32 = 5;
const COL_CASES: u64 = 200;
const IKY_CASES: u64 = 100;
const FITTING_CASES: u64 = 50;
const MOMENTS: usize = 10;
/// Coefficient precision for the Coates-Wiles and Mel criteria, per prime.
fn coleman_precision(p: u64) -> u32 {
    if p == 5 {
        4
    } else {
        3
    }
}

struct Outcome {
    pass: bool,
    note: String,
}

fn ok(pass: bool, note: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        note: note.into(),
    }
}

fn params(kv: &[(&str, String)]) -> Params {
    let mut p = Params::new();
    for (k, v) in kv {
        p.set(k, v);
    }
    p
}

fn c1() -> Outcome {
    let mut checked = 0;
    for c in [3u64, 5, 7] {
        let basis = integral_exponent_basis(c, 1).unwrap();
        for l in arith::primes_below(100).into_iter().filter(|l| c % l != 0) {
            for p in primes_above(c, l).unwrap() {
                for row in &basis {
                    let rep = verify_stickelberger(&p, &row_to_element(c, row).unwrap()).unwrap();
                    if !rep.pass {
                        return ok(false, format!("{rep:?}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    ok(true, format!("{checked} (P, beta) pairs"))
}

fn c2() -> Outcome {
    let mut runs = 0;
    for c in [3u64, 4, 5, 7, 8, 9, 12] {
        for l in arith::primes_below(50).into_iter().filter(|l| c % l != 0) {
            let r = run(
                "gauss",
                None,
                &params(&[("c", c.to_string()), ("l", l.to_string())]),
            )
            .unwrap();
            if !r.pass {
                return ok(false, format!("c={c} l={l}"));
            }
            runs += 1;
        }
    }
    ok(
        true,
        format!("{runs} (c, l) pairs, all primes and all delta"),
    )
}

fn c3() -> Outcome {
    for c in [5u64, 7] {
        for l in arith::primes_below(50).into_iter().filter(|l| c % l != 0) {
            let r = run(
                "jacobi",
                None,
                &params(&[("c", c.to_string()), ("l", l.to_string())]),
            )
            .unwrap();
            if !r.pass {
                return ok(false, format!("c={c} l={l}"));
            }
        }
    }
    ok(true, "c in {5, 7}, l < 50, all non-degenerate (i, j)")
}

fn c4() -> Outcome {
    let bad: Vec<u64> = (3..=60)
        .filter(|&c| !norm_identity_check(c).unwrap())
        .collect();
    ok(bad.is_empty(), format!("3 <= c <= 60, failing {bad:?}"))
}

fn c5() -> Outcome {
    let mut failing = Vec::new();
    let mut coherent_variants = true;
    for p in [3u64, 5, 7] {
        for f in [1u64, 3, 4] {
            for n in 0..=1 {
                let rep = theta_coherence_check(p, f, n).unwrap();
                if !rep.literal {
                    failing.push(format!(
                        "({p},{f},{n}) off by {} N",
                        rep.correction.unwrap_or_default()
                    ));
                }
                coherent_variants &= rep.minus_parts_coherent && rep.normalized_coherent;
            }
        }
    }
    let note = format!(
        "literal restriction fails for {} of 18 cases, e.g. {}; the difference is ((p-1)/2) N. \
         Minus parts and Theta - N/2 coherent in all cases: {coherent_variants}",
        failing.len(),
        failing.first().cloned().unwrap_or_default()
    );
    ok(failing.is_empty(), note)
}

fn c6() -> Outcome {
    let mut count = 0;
    for p in [5u64, 7, 11, 13, 37] {
        let ring = zp_ring(p, LP_PRECISION);
        for i in (3..p - 1).step_by(2) {
            let psi = PadicCharacter::omega_power(p, i as i64).unwrap();
            let rep = lp_constant_check(&ring, &psi).unwrap();
            if !rep.pass {
                return ok(false, format!("{rep:?}"));
            }
            count += 1;
        }
    }
    ok(
        true,
        format!(
            "{count} characters, idempotent = Bernoulli = series constant mod p^{LP_PRECISION}"
        ),
    )
}

fn c7() -> Outcome {
    let mut pairs = Vec::new();
    for p in arith::primes_below(150).into_iter().filter(|&p| p > 2) {
        let rep = herbrand_check(p).unwrap();
        if !rep.pass {
            return ok(false, format!("{rep:?}"));
        }
        pairs.extend(rep.from_eigenvalues.iter().map(|&i| (p, p - i)));
    }
    let frozen = [
        (37, 32),
        (59, 44),
        (67, 58),
        (101, 68),
        (103, 24),
        (131, 22),
        (149, 130),
    ];
    ok(
        pairs == frozen,
        format!("odd-i sets agree for all p < 150; irregular pairs (p, p - i) {pairs:?}"),
    )
}

fn c8() -> Outcome {
    let ring = zp_ring(37, IWASAWA_PRECISION);
    let psi = PadicCharacter::omega_power(37, 5).unwrap();
    let at = |n| iwasawa_invariants(&theta_psi(&ring, &psi, n).unwrap()).unwrap();
    let (i2, i1) = (at(2), at(1));
    let pass = i2.mu == 0 && i2.lambda == 1 && i2.confident && i1 == i2;
    ok(pass, format!("n=2: {i2:?}, n=1: {i1:?}"))
}

fn c9() -> Outcome {
    for (p, big_n) in [(3u64, 4u32), (5, 4), (7, 3)] {
        let ring = Zpn::new(p, big_n);
        let one_t = ColemanSeries::new(
            TruncSeries::from_i64s(&ring, SeriesModulus::TPow(20), &[1, 1]),
            "1+T",
        )
        .unwrap();
        if !col(&one_t).unwrap().is_zero() {
            return ok(false, format!("col(1+T) != 0 at p={p}"));
        }
        let rep = suites::col_integrality_suite(p, big_n, COL_CASES, SEED).unwrap();
        if !rep.pass {
            return ok(false, format!("{} failures {:?}", rep.name, rep.failures));
        }
    }
    ok(
        true,
        format!("col(1+T) = 0 and {COL_CASES} random units integral per (p, N)"),
    )
}

fn c10() -> Outcome {
    for a in [2u64, 3] {
        let oracle = cw_generating_oracle(a, MOMENTS);
        for m in 1..=MOMENTS {
            if oracle[m - 1] != cw_closed_form(a, m as u32) {
                return ok(
                    false,
                    format!("generating function disagrees with closed form at a={a} m={m}"),
                );
            }
        }
        for p in [5u64, 7] {
            let ring = Zpn::new(p, coleman_precision(p));
            let cw =
                cw_coeffs(&cyclotomic_series(&ring, MOMENTS + 1, a).unwrap(), MOMENTS).unwrap();
            for m in (2..=MOMENTS).step_by(2) {
                let want = reduce_rational(&cw_closed_form(a, m as u32), ring.modulus());
                if want != Some(cw[m - 1]) {
                    return ok(
                        false,
                        format!("a={a} p={p} m={m}: {} vs {want:?}", cw[m - 1]),
                    );
                }
            }
        }
    }
    ok(
        true,
        "closed form re-derived from the generating function; phi_m matches mod p^N, slack 0",
    )
}

fn c11() -> Outcome {
    for p in [5u64, 7] {
        let big_n = coleman_precision(p);
        let ring = Zpn::new(p, big_n);
        for n in 0..=2u32 {
            for a in [2u64, 3] {
                let f = cyclotomic_series(&ring, mel_truncation(p, n, big_n), a).unwrap();
                let c = col(&f).unwrap();
                let (alpha, residual) = mel_invert(&c, n).unwrap();
                if !residual.is_zero() {
                    return ok(false, format!("nonzero residual p={p} n={n} a={a}"));
                }
                let dm = d_moments(&c, MOMENTS).unwrap();
                let md = arith::ipow(p, big_n.min(n + 1));
                for m in 1..=MOMENTS {
                    if measure_moment(&alpha, m as u64) % md != dm[m] % md {
                        return ok(false, format!("moment m={m} p={p} n={n} a={a}"));
                    }
                }
            }
        }
    }
    ok(
        true,
        "residual 0; moments agree mod p^min(N, n+1) for m <= 10",
    )
}

fn c12() -> Outcome {
    for (p, n) in [(3u64, 2u32), (5, 2), (7, 1)] {
        let rep = suites::iky_suite(p, n, IKY_CASES, SEED).unwrap();
        if !rep.pass {
            return ok(false, format!("{} failures {:?}", rep.name, rep.failures));
        }
    }
    ok(
        true,
        format!("{IKY_CASES} random Kummer vectors per (p, n); moment weight N^(1-m)"),
    )
}

fn c13() -> Outcome {
    let mut vals = Vec::new();
    for n in 1..=2u32 {
        for m in (2..=8u32).step_by(2) {
            let rep = sharp_moment_check(5, n, m).unwrap();
            if !rep.pass {
                return ok(false, format!("{rep:?}"));
            }
            vals.push(rep.valuation.unwrap_or(i64::MAX));
        }
    }
    ok(
        true,
        format!("slack {SHARP_MOMENT_SLACK}; difference valuations {vals:?}"),
    )
}

fn c14() -> Outcome {
    let mut p = params(&[
        ("seed", SEED.to_string()),
        ("cases", FITTING_CASES.to_string()),
    ]);
    p.set("p", 3);
    p.set("n", 1);
    p.set("N", 3);
    let r = run("fitting", Some("all"), &p).unwrap();
    let failing: Vec<&str> = r
        .checks
        .iter()
        .filter(|c| c.pass == Some(false))
        .map(|c| c.name.as_str())
        .collect();
    ok(r.pass, format!("examples + {FITTING_CASES} diagonal + {FITTING_CASES} multiplicativity cases; failing {failing:?}"))
}

fn c15() -> Outcome {
    let runs = || {
        let mut out = Vec::new();
        for (p, n) in [(3u64, 2u32), (5, 2), (7, 1)] {
            out.push(serde_json::to_string(&suites::iky_suite(p, n, 20, SEED).unwrap()).unwrap());
        }
        out.push(
            serde_json::to_string(&suites::col_integrality_suite(5, 4, 20, SEED).unwrap()).unwrap(),
        );
        out.push(
            serde_json::to_string(&suites::fitting_diagonal_suite(3, 1, 3, 10, SEED).unwrap())
                .unwrap(),
        );
        out.push(
            serde_json::to_string(
                &suites::fitting_multiplicativity_suite(3, 1, 3, 10, SEED).unwrap(),
            )
            .unwrap(),
        );
        let axes = vec!["c=3,5".to_string(), "l=primes:2..30".to_string()];
        out.push(
            stickel::sweep::run_sweep("gauss", None, &Params::new(), &axes, 2)
                .unwrap()
                .to_json(),
        );
        out
    };
    let (a, b) = (runs(), runs());
    ok(
        a == b,
        format!("{} suite outputs compared byte for byte", a.len()),
    )
}

fn main() {
    let criteria: Vec<(u32, &str, fn() -> Outcome)> = vec![
        (1, "Stickelberger factorization", c1),
        (2, "Gauss sum magnitude and equivariance", c2),
        (3, "Jacobi two-route oracle", c3),
        (4, "norm identity", c4),
        (5, "projective coherence of Theta", c5),
        (6, "level-0 eigenvalue", c6),
        (7, "Herbrand set equality", c7),
        (8, "Iwasawa invariants at p = 37", c8),
        (9, "Coleman kernel and integrality", c9),
        (10, "Coates-Wiles closed form", c10),
        (11, "Mel round trip", c11),
        (12, "IKY identities", c12),
        (13, "Stickelberger sharp moments", c13),
        (14, "Fitting suites", c14),
        (15, "determinism", c15),
    ];
    let mut unexpected = Vec::new();
    for (k, name, f) in criteria {
        let start = Instant::now();
        let out = f();
        let expected_fail = KNOWN_FAILURES.contains(&k);
        let status = if out.pass { "PASS" } else { "FAIL" };
        let tag = if expected_fail {
            " (known failure)"
        } else {
            ""
        };
        println!(
            "criterion {k:>2}: {status}{tag} {name} [{:.1}s] {}",
            start.elapsed().as_secs_f64(),
            out.note
        );
        if out.pass == expected_fail {
            unexpected.push(k);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
    println!("acceptance: all outcomes as expected (known failures {KNOWN_FAILURES:?})");
}
