//! Seeded random suites. Each case owns its RNG stream, so results do not
//! depend on scheduling.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use stickel_core::coleman::{col, iky_check, ColemanSeries, KummerVector};
use stickel_core::fitting::{
    diagonal_check, fitting_multiplicativity_check, AlgElt, Presentation, TruncAlgebra,
    WeierstrassEntry,
};
use stickel_core::ring::{arith, PadicRing, Zpn};
use stickel_core::series::{SeriesModulus, TruncSeries};
use stickel_core::Error;

use crate::seed::case_rng;
use crate::CliError;

/// Truncation used for random Coleman series.
pub const COL_TRUNCATION: usize = 20;
/// Largest moment index in the IKY suite.
pub const IKY_MOMENTS: u64 = 10;
/// Redraws allowed when a random diagonal lcm is not determined at precision.
pub const MAX_REDRAWS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub cases: u64,
    pub failures: Vec<u64>,
    /// per-case summaries, in case order
    pub outcomes: Vec<String>,
    pub pass: bool,
}

fn run_cases(
    name: &str,
    seed: u64,
    cases: u64,
    f: impl Fn(u64) -> Result<(bool, String), CliError> + Sync,
) -> Result<SuiteReport, CliError> {
    let results: Vec<(bool, String)> = (0..cases)
        .into_par_iter()
        .map(&f)
        .collect::<Result<_, _>>()?;
    let failures: Vec<u64> = results
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.0)
        .map(|(k, _)| k as u64)
        .collect();
    Ok(SuiteReport {
        name: name.to_string(),
        seed,
        cases,
        pass: failures.is_empty(),
        failures,
        outcomes: results.into_iter().map(|r| r.1).collect(),
    })
}

pub fn random_unit_series<G: Rng>(
    rng: &mut G,
    ring: &Zpn,
    truncation: usize,
) -> ColemanSeries<Zpn> {
    let q = ring.modulus();
    let p = ring.prime();
    let mut coeffs: Vec<u64> = (0..truncation).map(|_| rng.random_range(0..q)).collect();
    while coeffs[0] % p == 0 {
        coeffs[0] = rng.random_range(0..q);
    }
    ColemanSeries::new(
        TruncSeries::new(ring, SeriesModulus::TPow(truncation), coeffs),
        "random unit",
    )
    .expect("T-adic truncation")
}

/// `col` of random unit series is integral (the `1/p` division is exact).
pub fn col_integrality_suite(
    p: u64,
    big_n: u32,
    cases: u64,
    seed: u64,
) -> Result<SuiteReport, CliError> {
    let ring = Zpn::new(p, big_n);
    run_cases(
        &format!("col-integrality p={p} N={big_n}"),
        seed,
        cases,
        |k| {
            let f = random_unit_series(&mut case_rng(seed, k), &ring, COL_TRUNCATION);
            match col(&f) {
                Ok(c) => Ok((true, format!("{:?}", c.coeffs()))),
                Err(Error::IntegralityFailure { index }) => {
                    Ok((false, format!("non-integral at T^{index}")))
                }
                Err(e) => Err(CliError::from(e)),
            }
        },
    )
}

pub fn random_kummer<G: Rng>(rng: &mut G, p: u64, n: u32) -> (KummerVector, u64) {
    let m = arith::ipow(p, n);
    let len = arith::units(m).len();
    let entries = (0..len).map(|_| rng.random_range(0..m)).collect();
    let mut n_chi = rng.random_range(1..1000u64);
    while n_chi % p == 0 {
        n_chi = rng.random_range(1..1000u64);
    }
    (
        KummerVector::new(p, n, entries).expect("right length"),
        n_chi,
    )
}

/// Both moment routes and the sharp identity for random Kummer vectors.
pub fn iky_suite(p: u64, n: u32, cases: u64, seed: u64) -> Result<SuiteReport, CliError> {
    run_cases(&format!("iky p={p} n={n}"), seed, cases, |k| {
        let (b, n_chi) = random_kummer(&mut case_rng(seed, k), p, n);
        let rep = iky_check(&b, n_chi, IKY_MOMENTS)?;
        Ok((rep.pass, serde_json::to_string(&rep).expect("serializes")))
    })
}

/// `p^k P(T)` with `P` distinguished of degree at most `max_deg`.
pub fn random_weierstrass<G: Rng>(
    rng: &mut G,
    p: u64,
    big_n: u32,
    max_k: u32,
    max_deg: usize,
) -> WeierstrassEntry {
    let k = rng.random_range(0..=max_k);
    let deg = rng.random_range(0..=max_deg);
    let q = arith::ipow(p, big_n.saturating_sub(1));
    let mut poly: Vec<i64> = (0..deg)
        .map(|_| (p * rng.random_range(0..q)) as i64)
        .collect();
    poly.push(1);
    WeierstrassEntry::from_i64s(p, k, &poly).expect("distinguished by construction")
}

fn random_element<G: Rng>(rng: &mut G, algebra: &TruncAlgebra<Zpn>) -> AlgElt<Zpn> {
    let q = algebra.coefficient_ring().modulus();
    let c: Vec<u64> = (0..algebra.t_rank())
        .map(|_| rng.random_range(0..q))
        .collect();
    TruncSeries::new(algebra.coefficient_ring(), algebra.modulus(), c)
}

/// A presentation whose cokernel is killed by `(p^a, T^b)`: random relations
/// stacked over `p^a I` and `T^b I`.
pub fn random_finite_presentation<G: Rng>(
    rng: &mut G,
    algebra: &TruncAlgebra<Zpn>,
) -> Presentation<Zpn> {
    let g = rng.random_range(1..=2usize);
    let extra = rng.random_range(0..=1usize);
    let a = rng.random_range(1..=2u32);
    let b = rng.random_range(1..=2usize);
    let pa = algebra.scalar(
        algebra
            .coefficient_ring()
            .from_u64(arith::ipow(algebra.prime(), a)),
    );
    let mut tb = vec![0i64; b + 1];
    tb[b] = 1;
    let tb = algebra.from_i64s(&tb);
    let mut rows = Vec::new();
    for _ in 0..extra {
        rows.push((0..g).map(|_| random_element(rng, algebra)).collect());
    }
    for d in [pa, tb] {
        for i in 0..g {
            rows.push(
                (0..g)
                    .map(|j| if i == j { d.clone() } else { algebra.zero() })
                    .collect(),
            );
        }
    }
    Presentation::new(algebra, rows).expect("rectangular")
}

/// Diagonal presentations: `Fitt = (det)`, and the lcm annihilates.
pub fn fitting_diagonal_suite(
    p: u64,
    n: u32,
    big_n: u32,
    cases: u64,
    seed: u64,
) -> Result<SuiteReport, CliError> {
    let algebra = TruncAlgebra::new(Zpn::new(p, big_n), n);
    run_cases(
        &format!("fitting-diagonal p={p} n={n} N={big_n}"),
        seed,
        cases,
        |k| {
            let mut rng = case_rng(seed, k);
            for _ in 0..MAX_REDRAWS {
                let len = rng.random_range(1..=3usize);
                let entries: Vec<WeierstrassEntry> = (0..len)
                    .map(|_| random_weierstrass(&mut rng, p, big_n, 1, 2))
                    .collect();
                match diagonal_check(&algebra, &entries) {
                    Ok(rep) => {
                        return Ok((rep.pass, serde_json::to_string(&rep).expect("serializes")))
                    }
                    Err(Error::LcmIllDefined) => continue,
                    Err(e) => return Err(e.into()),
                }
            }
            Err(CliError::Internal(format!(
                "case {k}: no well-defined lcm after {MAX_REDRAWS} draws"
            )))
        },
    )
}

/// `Fitt(R/(f) + coker Q) = (f) Fitt(coker Q)` for random `f` and finite `coker Q`.
pub fn fitting_multiplicativity_suite(
    p: u64,
    n: u32,
    big_n: u32,
    cases: u64,
    seed: u64,
) -> Result<SuiteReport, CliError> {
    let algebra = TruncAlgebra::new(Zpn::new(p, big_n), n);
    run_cases(
        &format!("fitting-multiplicativity p={p} n={n} N={big_n}"),
        seed,
        cases,
        |k| {
            let mut rng = case_rng(seed, k);
            let f = random_weierstrass(&mut rng, p, big_n, 1, 2).image(&algebra);
            let q = random_finite_presentation(&mut rng, &algebra);
            let rep = fitting_multiplicativity_check(&f, Some(&q))?;
            Ok((rep.pass, serde_json::to_string(&rep).expect("serializes")))
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_are_deterministic() {
        let a = iky_suite(3, 2, 5, 11).unwrap();
        let b = iky_suite(3, 2, 5, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.pass);
        let c = iky_suite(3, 2, 5, 12).unwrap();
        assert_ne!(a.outcomes, c.outcomes);
    }

    #[test]
    fn small_suites_pass() {
        assert!(col_integrality_suite(5, 4, 10, 1).unwrap().pass);
        assert!(fitting_diagonal_suite(3, 1, 3, 5, 1).unwrap().pass);
        assert!(fitting_multiplicativity_suite(3, 1, 3, 5, 1).unwrap().pass);
    }
}
