//! Subcommand implementations. Each returns a `Report`; a failed check makes
//! the report fail, bad parameters are `CliError::Usage`.

use num_bigint::BigInt;
use serde_json::json;

use stickel_core::coleman::{
    col, conductor_interpolation, cw_closed_form, cw_coeffs, cyclotomic_interpolation,
    cyclotomic_series, d_moments, dbar, iky_check, iky_delta, measure_moment, mel_invert,
    mel_truncation, ColemanSeries, KummerVector,
};
use stickel_core::eigenspace::{
    herbrand_check, iwasawa_invariants, lp_constant_check, theta_psi, zp_ring, PadicCharacter,
};
use stickel_core::fitting::{
    annihilator_elementary, diagonal_check, fitting_ideal, fitting_multiplicativity_check,
    Presentation, RingIdeal, TruncAlgebra, WeierstrassEntry,
};
use stickel_core::gauss::{
    galois_on_zeta_c, gauss_route, gauss_sum_power, jacobi_double_sum, jacobi_double_sums,
    jacobi_gauss_quotient, jacobi_gauss_quotients, primes_above, residue_character,
    verify_stickelberger,
};
use stickel_core::ring::{arith, padic::reduce_rational, CycloElt, GaloisRing, PadicRing, Zpn};
use stickel_core::series::{SeriesModulus, TruncSeries};
use stickel_core::stickelberger::{
    integral_exponent_basis, minus_index, norm_identity_check, row_to_element, row_to_i64,
    stickelberger_ideal_basis, theta, theta_coherence_check,
};

use crate::config::Params;
use crate::report::{big_strings, Report};
use crate::seed::{case_rng, DEFAULT_SEED};
use crate::suites;
use crate::CliError;

type Out = Result<Report, CliError>;

/// Subcommands and their actions.
pub const COMMANDS: &[(&str, &[&str])] = &[
    ("gauss", &[]),
    ("jacobi", &[]),
    ("verify-stickelberger", &[]),
    ("theta", &["print", "coherence", "basis"]),
    (
        "eigens",
        &["theta-psi", "invariants", "lp-constant", "herbrand"],
    ),
    ("herbrand", &[]),
    ("coleman", &["col", "cw", "interp", "mel"]),
    ("iky", &["delta", "dbar", "sharp-check", "random-suite"]),
    (
        "fitting",
        &["all", "examples", "diagonal", "multiplicativity"],
    ),
];

/// Built-in defaults; flags and config entries override them.
pub fn defaults(command: &str, action: Option<&str>) -> Params {
    let mut p = Params::new().with("seed", DEFAULT_SEED);
    let kv: &[(&str, &str)] = match (command, action) {
        ("gauss", _) => &[("i", "1")],
        ("verify-stickelberger", _) => &[("lmax", "100")],
        ("theta", Some("coherence")) => &[("f", "1"), ("n", "0")],
        ("eigens", Some("theta-psi")) => &[("n", "1"), ("N", "4")],
        ("eigens", Some("invariants")) => &[("n", "2"), ("N", "5")],
        ("eigens", Some("lp-constant")) => &[("N", "4")],
        ("eigens", Some("herbrand")) | ("herbrand", _) => &[("pmax", "150")],
        ("coleman", Some("col")) => &[("N", "4"), ("a", "2"), ("M", "20")],
        ("coleman", Some("cw")) => &[("N", "4"), ("a", "2"), ("mmax", "10")],
        ("coleman", Some("interp")) => &[("N", "3"), ("n", "1")],
        ("coleman", Some("mel")) => &[("N", "4"), ("n", "1"), ("a", "2"), ("mmax", "10")],
        ("iky", Some("random-suite")) => &[("cases", "100"), ("mmax", "10")],
        ("iky", _) => &[("nchi", "1"), ("mmax", "10")],
        ("fitting", _) => &[("p", "3"), ("n", "1"), ("N", "3"), ("cases", "50")],
        _ => &[],
    };
    for (k, v) in kv {
        p.set(k, v);
    }
    p
}

fn check_action(command: &str, action: Option<&str>) -> Result<(), CliError> {
    let Some((_, actions)) = COMMANDS.iter().find(|(c, _)| *c == command) else {
        return Err(CliError::Usage(format!("unknown command '{command}'")));
    };
    match action {
        None if actions.is_empty() || command == "fitting" => Ok(()),
        Some(a) if actions.contains(&a) => Ok(()),
        _ => Err(CliError::Usage(format!(
            "'{command}' takes one of {actions:?}, got {action:?}"
        ))),
    }
}

/// Runs a subcommand on fully merged parameters.
pub fn run(command: &str, action: Option<&str>, params: &Params) -> Out {
    check_action(command, action)?;
    let mut merged = defaults(command, action);
    merged.overlay(params);
    let p = &merged;
    match (command, action) {
        ("gauss", _) => gauss(p),
        ("jacobi", _) => jacobi(p),
        ("verify-stickelberger", _) => verify(p),
        ("theta", Some("print")) => theta_print(p),
        ("theta", Some("coherence")) => theta_coherence(p),
        ("theta", Some("basis")) => theta_basis(p),
        ("eigens", Some("theta-psi")) => eigens_theta_psi(p),
        ("eigens", Some("invariants")) => eigens_invariants(p),
        ("eigens", Some("lp-constant")) => eigens_lp_constant(p),
        ("eigens", Some("herbrand")) | ("herbrand", _) => herbrand(command, p),
        ("coleman", Some("col")) => coleman_col(p),
        ("coleman", Some("cw")) => coleman_cw(p),
        ("coleman", Some("interp")) => coleman_interp(p),
        ("coleman", Some("mel")) => coleman_mel(p),
        ("iky", Some(a)) => iky(a, p),
        ("fitting", a) => fitting(a.unwrap_or("all"), p),
        _ => Err(CliError::Usage(format!("unknown command '{command}'"))),
    }
}

fn cyclo_json(x: &CycloElt) -> serde_json::Value {
    json!({ "order": x.order(), "coeffs": big_strings(x.coeffs()) })
}

fn conductor_and_prime(p: &Params) -> Result<(u64, u64), CliError> {
    let c: u64 = p.get("c")?;
    let l = p.prime("l")?;
    if c < 2 || c % l == 0 {
        return Err(CliError::Usage(format!(
            "need c >= 2 prime to l, got c={c}, l={l}"
        )));
    }
    Ok((c, l))
}

fn gauss(p: &Params) -> Out {
    let (c, l) = conductor_and_prime(p)?;
    let i: u64 = p.get("i")?;
    let mut r = Report::new("gauss", p);
    let m = c * l;
    for (k, prime) in primes_above(c, l)?.iter().enumerate() {
        let tau = gauss_sum_power(prime, i)?;
        let q = prime.norm();
        let sign = (residue_character(prime).exponent_at_minus_one() * i) % c;
        let target = CycloElt::zeta(m, (sign * l) as i64).scale(&BigInt::from(q));
        let norm_ok = tau.mul(&galois_on_zeta_c(&tau, c, l, -1)?) == target;
        r.check(
            format!("tau*sigma_-1(tau) = chi(-1)q, P{k}"),
            norm_ok,
            json!({ "h": prime.factor(), "q": q, "route": gauss_route(prime, i)?, "tau": cyclo_json(&tau) }),
        );
        let mut bad = Vec::new();
        for delta in arith::units(c) {
            let lhs = galois_on_zeta_c(&tau, c, l, delta as i64)?;
            if lhs != gauss_sum_power(&prime.conjugate(delta as i64)?, i)? {
                bad.push(delta);
            }
        }
        r.check(
            format!("tau(P)^delta = tau(P^delta), P{k}"),
            bad.is_empty(),
            json!({ "failing_delta": bad }),
        );
    }
    Ok(r)
}

fn jacobi(p: &Params) -> Out {
    let (c, l) = conductor_and_prime(p)?;
    let pairs: Vec<(u64, u64)> = match (p.opt::<u64>("i")?, p.opt::<u64>("j")?) {
        (Some(i), Some(j)) => vec![(i, j)],
        (None, None) => (1..c)
            .flat_map(|i| (1..c).map(move |j| (i, j)))
            .filter(|&(i, j)| (i + j) % c != 0)
            .collect(),
        _ => return Err(CliError::Usage("give both --i and --j, or neither".into())),
    };
    let mut r = Report::new("jacobi", p);
    for (k, prime) in primes_above(c, l)?.iter().enumerate() {
        let mut bad = Vec::new();
        let mut values = Vec::new();
        let (sums, quotients) = if pairs.len() == 1 {
            let (i, j) = pairs[0];
            (
                [((i, j), jacobi_double_sum(prime, i, j))]
                    .into_iter()
                    .collect(),
                [((i, j), jacobi_gauss_quotient(prime, i, j)?)]
                    .into_iter()
                    .collect(),
            )
        } else {
            (jacobi_double_sums(prime)?, jacobi_gauss_quotients(prime)?)
        };
        for &(i, j) in &pairs {
            let a = sums[&(i, j)].clone()?;
            let b = &quotients[&(i, j)];
            if a != *b {
                bad.push((i, j));
            }
            if pairs.len() == 1 {
                values.push(
                    json!({ "i": i, "j": j, "J": cyclo_json(&a), "norm": a.norm()?.to_string() }),
                );
            }
        }
        r.check(
            format!("double sum = Gauss quotient, P{k}"),
            bad.is_empty(),
            json!({ "h": prime.factor(), "pairs": pairs.len(), "failing": bad, "values": values }),
        );
    }
    Ok(r)
}

fn verify(p: &Params) -> Out {
    let c: u64 = p.get("c")?;
    if c < 3 {
        return Err(CliError::Usage("need c >= 3".into()));
    }
    let ls: Vec<u64> = match p.opt::<u64>("l")? {
        Some(_) => vec![p.prime("l")?],
        None => arith::primes_below(p.get("lmax")?),
    };
    let basis = integral_exponent_basis(c, 1)?;
    let mut r = Report::new("verify-stickelberger", p);
    r.info(
        "exponent basis",
        basis.iter().map(|row| row_to_i64(row)).collect::<Vec<_>>(),
    );
    for l in ls.into_iter().filter(|l| c % l != 0) {
        let mut failing = Vec::new();
        let primes = primes_above(c, l)?;
        for (k, prime) in primes.iter().enumerate() {
            for row in &basis {
                let rep = verify_stickelberger(prime, &row_to_element(c, row)?)?;
                if !rep.pass {
                    failing.push(json!({ "prime": k, "report": rep }));
                }
            }
        }
        r.check(
            format!("l={l}"),
            failing.is_empty(),
            json!({ "primes": primes.len(), "failing": failing }),
        );
    }
    Ok(r)
}

fn theta_print(p: &Params) -> Out {
    let c: u64 = p.get("c")?;
    let t = theta(c)?;
    let e = t.element();
    let coeffs: Vec<_> = e
        .group()
        .elements()
        .iter()
        .zip(e.coeffs())
        .map(|(a, x)| json!({ "sigma": a, "coeff": x.to_string() }))
        .collect();
    let mut r = Report::new("theta print", p);
    r.info("theta", coeffs);
    r.check(
        "theta + sigma_-1 theta = N",
        norm_identity_check(c)?,
        json!({ "c": c }),
    );
    Ok(r)
}

fn theta_coherence(p: &Params) -> Out {
    let rep = theta_coherence_check(p.prime("p")?, p.get("f")?, p.get("n")?)?;
    let mut r = Report::new("theta coherence", p);
    r.check("restriction equals lower level", rep.literal, &rep);
    r.info("minus parts coherent", rep.minus_parts_coherent);
    r.info("theta - N/2 coherent", rep.normalized_coherent);
    Ok(r)
}

fn theta_basis(p: &Params) -> Out {
    let c: u64 = p.get("c")?;
    let rows = |m: &[Vec<BigInt>]| m.iter().map(|r| big_strings(r)).collect::<Vec<_>>();
    let mut r = Report::new("theta basis", p);
    r.info(
        "integral exponents (beta with beta*theta integral)",
        rows(&integral_exponent_basis(c, 1)?),
    );
    r.info("stickelberger ideal", rows(&stickelberger_ideal_basis(c)?));
    r.info("minus index", minus_index(c)?.to_string());
    Ok(r)
}

fn omega_char(p: &Params) -> Result<(u64, PadicCharacter), CliError> {
    let prime = p.odd_prime("p")?;
    let i: i64 = p.get("i")?;
    Ok((prime, PadicCharacter::omega_power(prime, i)?))
}

fn eigens_theta_psi(p: &Params) -> Out {
    let (prime, psi) = omega_char(p)?;
    let n: u32 = p.get("n")?;
    let ring = zp_ring(prime, p.get("N")?);
    let s = theta_psi(&ring, &psi, n)?;
    let mut r = Report::new("eigens theta-psi", p);
    r.info("series", json!({ "level": s.level, "precision": s.precision, "coeffs": s.coords(), "provenance": s.provenance }));
    if n > 0 {
        let lower = theta_psi(&ring, &psi, n - 1)?;
        r.check(
            "projects to the lower level",
            s.project(n - 1)? == lower,
            json!({ "lower": lower.coords() }),
        );
    }
    Ok(r)
}

fn eigens_invariants(p: &Params) -> Out {
    let (prime, psi) = omega_char(p)?;
    let n: u32 = p.get("n")?;
    let ring = zp_ring(prime, p.get("N")?);
    let inv = iwasawa_invariants(&theta_psi(&ring, &psi, n)?)?;
    let mut r = Report::new("eigens invariants", p);
    r.check("confident", inv.confident, inv);
    if n > 0 {
        let lower = iwasawa_invariants(&theta_psi(&ring, &psi, n - 1)?)?;
        r.check("stable under level change", lower == inv, lower);
    }
    Ok(r)
}

fn eigens_lp_constant(p: &Params) -> Out {
    let (prime, psi) = omega_char(p)?;
    let rep = lp_constant_check(&zp_ring(prime, p.get("N")?), &psi)?;
    let mut r = Report::new("eigens lp-constant", p);
    r.check("idempotent = Bernoulli = series constant", rep.pass, &rep);
    Ok(r)
}

fn herbrand(command: &str, p: &Params) -> Out {
    let pmax: u64 = p.get("pmax")?;
    let name = if command == "herbrand" {
        "herbrand"
    } else {
        "eigens herbrand"
    };
    let mut r = Report::new(name, p);
    let mut table = Vec::new();
    for prime in arith::primes_below(pmax).into_iter().filter(|&q| q > 2) {
        let rep = herbrand_check(prime)?;
        table.extend(
            rep.from_eigenvalues
                .iter()
                .map(|&i| json!({ "p": prime, "i": i })),
        );
        r.check(format!("p={prime}"), rep.pass, &rep);
    }
    r.info("pairs (p, i) with B_(1, omega^-i) divisible by p", table);
    Ok(r)
}

fn coleman_ring(p: &Params) -> Result<Zpn, CliError> {
    let prime = p.odd_prime("p")?;
    let big_n: u32 = p.get("N")?;
    if big_n == 0 {
        return Err(CliError::Usage("--N must be positive".into()));
    }
    Ok(Zpn::new(prime, big_n))
}

fn coleman_col(p: &Params) -> Out {
    let ring = coleman_ring(p)?;
    let m: usize = p.get("M")?;
    let f = match p.list::<i64>("coeffs")? {
        Some(c) => ColemanSeries::new(
            TruncSeries::from_i64s(&ring, SeriesModulus::TPow(m), &c),
            "coeffs",
        )?,
        None => cyclotomic_series(&ring, m, p.get("a")?)?,
    };
    let mut r = Report::new("coleman col", p);
    match col(&f) {
        Ok(c) => r.check(
            "integral",
            true,
            json!({ "input": f.provenance(), "col": c.coeffs() }),
        ),
        Err(stickel_core::Error::IntegralityFailure { index }) => {
            r.check("integral", false, json!({ "index": index }))
        }
        Err(e) => return Err(e.into()),
    }
    let one_t = ColemanSeries::new(
        TruncSeries::from_i64s(&ring, SeriesModulus::TPow(m), &[1, 1]),
        "1+T",
    )?;
    r.check("col(1+T) = 0", col(&one_t)?.is_zero(), json!(null));
    Ok(r)
}

fn coleman_cw(p: &Params) -> Out {
    let ring = coleman_ring(p)?;
    let a: u64 = p.get("a")?;
    let mmax: usize = p.get("mmax")?;
    let cw = cw_coeffs(&cyclotomic_series(&ring, mmax + 1, a)?, mmax)?;
    let mut r = Report::new("coleman cw", p);
    for m in 1..=mmax {
        let closed = cw_closed_form(a, m as u32);
        let want = reduce_rational(&closed, ring.modulus());
        r.check(
            format!("phi_{m} = (a^m - 1) B_m / m"),
            want == Some(cw[m - 1]),
            json!({ "phi": cw[m - 1], "closed_form": closed.to_string() }),
        );
    }
    Ok(r)
}

fn coleman_interp(p: &Params) -> Out {
    let prime = p.odd_prime("p")?;
    let big_n: u32 = p.get("N")?;
    let n: u32 = p.get("n")?;
    let mut r = Report::new("coleman interp", p);
    if let Some(f) = p.opt::<u64>("f")? {
        let w = GaloisRing::new(prime, GaloisRing::degree_for_roots(prime, f), big_n);
        let rep = conductor_interpolation(&w, f, n)?;
        r.check("f(zeta - 1) = eps^(sigma^n)", rep.pass, &rep);
        r.check("norm coherent", rep.norm_coherent == Some(true), &rep);
    } else {
        let a: u64 = p.opt("a")?.unwrap_or(2);
        let rep = cyclotomic_interpolation(&Zpn::new(prime, big_n), a, n)?;
        r.check("f_a(zeta - 1) = (zeta^a - 1)/(zeta - 1)", rep.pass, &rep);
    }
    Ok(r)
}

fn coleman_mel(p: &Params) -> Out {
    let ring = coleman_ring(p)?;
    let prime = ring.prime();
    let n: u32 = p.get("n")?;
    let mmax: usize = p.get("mmax")?;
    let big_n = ring.precision();
    let f = cyclotomic_series(&ring, mel_truncation(prime, n, big_n), p.get("a")?)?;
    let c = col(&f)?;
    let (alpha, residual) = mel_invert(&c, n)?;
    let dm = d_moments(&c, mmax)?;
    let md = arith::ipow(prime, big_n.min(n + 1));
    let mut r = Report::new("coleman mel", p);
    r.check(
        "residual = 0",
        residual.is_zero(),
        json!({ "measure": alpha.coeffs() }),
    );
    for m in 1..=mmax as u64 {
        let gm = measure_moment(&alpha, m);
        r.check(
            format!("M_{m}(alpha) = D^{m} col(0) mod {md}"),
            gm % md == dm[m as usize] % md,
            json!({ "moment": gm, "series": dm[m as usize] }),
        );
    }
    Ok(r)
}

fn kummer(p: &Params) -> Result<KummerVector, CliError> {
    let prime = p.odd_prime("p")?;
    let n: u32 = p.get("n")?;
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    match p.list::<u64>("entries")? {
        Some(e) => Ok(KummerVector::new(prime, n, e)?),
        None => Ok(suites::random_kummer(&mut case_rng(p.get("seed")?, 0), prime, n).0),
    }
}

fn iky(action: &str, p: &Params) -> Out {
    let mut r = Report::new(&format!("iky {action}"), p);
    if action == "random-suite" {
        let rep = suites::iky_suite(
            p.odd_prime("p")?,
            p.get("n")?,
            p.get("cases")?,
            p.get("seed")?,
        )?;
        r.check(rep.name.clone(), rep.pass, &rep);
        return Ok(r);
    }
    let b = kummer(p)?;
    let n_chi: u64 = p.get("nchi")?;
    match action {
        "delta" => {
            let d = iky_delta(&b, n_chi)?;
            r.info("kummer vector", &b);
            r.info(
                "delta",
                json!({ "sigma": d.group().elements(), "coeffs": d.coeffs() }),
            );
        }
        "dbar" => {
            let d = dbar(&b)?;
            r.info("kummer vector", &b);
            r.info(
                "dbar",
                json!({ "sigma": d.group().elements(), "coeffs": d.coeffs() }),
            );
        }
        _ => {}
    }
    let rep = iky_check(&b, n_chi, p.get("mmax")?)?;
    r.check("moment routes and sharp identity", rep.pass, &rep);
    Ok(r)
}

fn fitting_examples(r: &mut Report) -> Result<(), CliError> {
    let a27 = TruncAlgebra::new(Zpn::new(3, 3), 0);
    let d = Presentation::diagonal(&a27, &[a27.from_i64s(&[3]), a27.from_i64s(&[3])])?;
    r.check(
        "Fitt diag(3, 3) = (9) over Z/27",
        fitting_ideal(&d)? == RingIdeal::principal(&a27, a27.from_i64s(&[9]))?,
        json!(null),
    );
    let z = Presentation::from_i64s(&a27, &[vec![vec![0]]])?;
    r.check("Fitt (0) = 0", fitting_ideal(&z)?.is_zero(), json!(null));
    let ann = annihilator_elementary(
        &a27,
        &[
            WeierstrassEntry::p_power_only(1),
            WeierstrassEntry::p_power_only(2),
        ],
    )?;
    r.check(
        "lcm(3, 9) = 9",
        ann.ideal == RingIdeal::principal(&a27, a27.from_i64s(&[9]))?,
        &ann.lcm,
    );
    let a = TruncAlgebra::new(Zpn::new(5, 3), 1);
    let t = WeierstrassEntry::from_i64s(5, 0, &[0, 1])?;
    let tp = WeierstrassEntry::from_i64s(5, 0, &[5, 1])?;
    let ann = annihilator_elementary(&a, &[t, tp])?;
    let prod = RingIdeal::principal(&a, a.from_i64s(&[0, 5, 1]))?;
    r.check("lcm(T, T+5) = T(T+5)", ann.ideal == prod, &ann.lcm);
    let f = a.from_i64s(&[5, 1]);
    let q = Presentation::diagonal(&a, &[a.from_i64s(&[5]), a.t()])?;
    let rep = fitting_multiplicativity_check(&f, Some(&q))?;
    r.check("Fitt(R/(T+5) + R/5 + R/T) = (T+5) Fitt", rep.pass, &rep);
    let rep = fitting_multiplicativity_check(&f, None)?;
    r.check("Fitt(R/(T+5)) = (T+5)", rep.pass, &rep);
    let rep = diagonal_check(
        &a,
        &[
            WeierstrassEntry::from_i64s(5, 1, &[5, 1])?,
            WeierstrassEntry::p_power_only(1),
        ],
    )?;
    r.check("diagonal (5(T+5), 5)", rep.pass, &rep);
    Ok(())
}

fn fitting(suite: &str, p: &Params) -> Out {
    let prime = p.prime("p")?;
    let (n, big_n, cases, seed): (u32, u32, u64, u64) =
        (p.get("n")?, p.get("N")?, p.get("cases")?, p.get("seed")?);
    if big_n == 0 {
        return Err(CliError::Usage("--N must be positive".into()));
    }
    let mut r = Report::new(&format!("fitting {suite}"), p);
    if matches!(suite, "all" | "examples") {
        fitting_examples(&mut r)?;
    }
    if matches!(suite, "all" | "diagonal") {
        let rep = suites::fitting_diagonal_suite(prime, n, big_n, cases, seed)?;
        r.check(rep.name.clone(), rep.pass, &rep);
    }
    if matches!(suite, "all" | "multiplicativity") {
        let rep = suites::fitting_multiplicativity_suite(prime, n, big_n, cases, seed)?;
        r.check(rep.name.clone(), rep.pass, &rep);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(cmd: &str, action: Option<&str>, kv: &[(&str, &str)]) -> Report {
        let mut p = Params::new();
        for (k, v) in kv {
            p.set(k, v);
        }
        run(cmd, action, &p).unwrap()
    }

    #[test]
    fn gauss_c3_l7() {
        let r = run_ok("gauss", None, &[("c", "3"), ("l", "7")]);
        assert!(r.pass);
        assert_eq!(r.checks.len(), 4);
    }

    #[test]
    fn usage_errors() {
        let p = Params::new().with("c", 7).with("l", 7);
        assert!(matches!(run("gauss", None, &p), Err(CliError::Usage(_))));
        assert!(matches!(
            run("theta", Some("nope"), &p),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(run("theta", None, &p), Err(CliError::Usage(_))));
        assert!(matches!(run("nope", None, &p), Err(CliError::Usage(_))));
    }

    #[test]
    fn small_commands_pass() {
        assert!(run_ok("jacobi", None, &[("c", "5"), ("l", "11")]).pass);
        assert!(run_ok("verify-stickelberger", None, &[("c", "5"), ("lmax", "20")]).pass);
        assert!(run_ok("theta", Some("print"), &[("c", "7")]).pass);
        assert!(run_ok("theta", Some("basis"), &[("c", "7")]).pass);
        assert!(!run_ok("theta", Some("coherence"), &[("p", "3")]).pass);
        assert!(run_ok("eigens", Some("lp-constant"), &[("p", "7"), ("i", "3")]).pass);
        assert!(run_ok("herbrand", None, &[("pmax", "40")]).pass);
        assert!(run_ok("coleman", Some("col"), &[("p", "5")]).pass);
        assert!(run_ok("coleman", Some("cw"), &[("p", "7"), ("a", "3")]).pass);
        assert!(run_ok("coleman", Some("interp"), &[("p", "5"), ("f", "4")]).pass);
        assert!(run_ok("coleman", Some("mel"), &[("p", "5")]).pass);
        assert!(
            run_ok(
                "iky",
                Some("delta"),
                &[("p", "5"), ("n", "2"), ("nchi", "3")]
            )
            .pass
        );
        assert!(
            run_ok(
                "iky",
                Some("dbar"),
                &[("p", "3"), ("n", "2"), ("entries", "1,2,3,4,5,6")]
            )
            .pass
        );
        assert!(run_ok("fitting", Some("examples"), &[]).pass);
    }
}
