//! Truncated Coleman theory: `log`, `Col = (1 - phi/p) log`, Coates-Wiles
//! coefficients, measures on `(Z/p^(n+1))^x` and the IKY measure.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::group_ring::{GaloisGroup, GroupRingElt};
use crate::ring::{arith, log_floor, CycloRing, PadicRing, Ring, Zpn};
use crate::series::{SeriesModulus, TruncSeries};
use crate::{Error, Result};

/// A unit-or-not power series over `W`, truncated modulo `T^M`.
#[derive(Clone, Debug, PartialEq)]
pub struct ColemanSeries<R: PadicRing> {
    body: TruncSeries<R>,
    provenance: String,
}

impl<R: PadicRing> ColemanSeries<R> {
    pub fn new(body: TruncSeries<R>, provenance: impl Into<String>) -> Result<Self> {
        if !matches!(body.modulus(), SeriesModulus::TPow(_)) {
            return Err(crate::invalid!("Coleman series are truncated modulo T^M"));
        }
        Ok(ColemanSeries {
            body,
            provenance: provenance.into(),
        })
    }
    pub fn body(&self) -> &TruncSeries<R> {
        &self.body
    }
    pub fn ring(&self) -> &R {
        self.body.ring()
    }
    pub fn provenance(&self) -> &str {
        &self.provenance
    }
    pub fn truncation(&self) -> usize {
        self.body.len()
    }
    pub fn is_unit(&self) -> bool {
        self.ring().is_unit(&self.body.constant_term())
    }
    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(ColemanSeries {
            body: self.body.mul(&other.body)?,
            provenance: alloc::format!("({})*({})", self.provenance, other.provenance),
        })
    }
}

pub fn phi_op<R: PadicRing>(f: &ColemanSeries<R>) -> Result<ColemanSeries<R>> {
    Ok(ColemanSeries {
        body: f.body.phi_op()?,
        provenance: alloc::format!("phi({})", f.provenance),
    })
}

pub fn d_op<R: PadicRing>(f: &ColemanSeries<R>) -> Result<ColemanSeries<R>> {
    Ok(ColemanSeries {
        body: f.body.d_op()?,
        provenance: alloc::format!("D({})", f.provenance),
    })
}

/// `Df / f`, with the truncation dropping by one.
fn log_derivative<R: PadicRing>(f: &TruncSeries<R>) -> Result<TruncSeries<R>> {
    let df = f.d_op()?;
    let finv = f.inv()?.with_modulus(df.modulus());
    df.mul(&finv)
}

/// `p^shift log f` at precision `N + shift`; coefficient `k` of `log f` has
/// denominator dividing `p^(v_p(k))`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogSeries<R: PadicRing> {
    pub scaled: TruncSeries<R>,
    pub shift: u32,
    /// absolute precision of `log f` itself
    pub absolute_precision: u32,
    /// `v_p(k)` per coefficient
    pub denominators: Vec<u32>,
}

fn log_scaled<R: PadicRing>(f: &TruncSeries<R>, hi: &R, shift: u32) -> Result<TruncSeries<R>> {
    let p = hi.prime();
    let fh = f.convert(hi);
    let c0 = fh.constant_term();
    let l0 = hi.log_unit(&c0).ok_or(Error::NotUnit)?;
    let SeriesModulus::TPow(m) = fh.modulus() else {
        unreachable!()
    };
    let fprime: Vec<R::Elem> = (1..m)
        .map(|k| hi.scale_i64(&fh.coeff(k), k as i64))
        .collect();
    let fprime = TruncSeries::new(hi, SeriesModulus::TPow(m - 1), fprime);
    let g = fprime.mul(&fh.inv()?.with_modulus(SeriesModulus::TPow(m - 1)))?;
    let mut out = alloc::vec![hi.mul_p_power(&l0, shift)];
    for k in 1..m {
        let v = arith::val(k as u64, p);
        let unit = k as u64 / arith::ipow(p, v);
        let c = hi.mul(&g.coeff(k - 1), &hi.inv(&hi.from_u64(unit)).expect("unit"));
        out.push(hi.mul_p_power(&c, shift - v));
    }
    Ok(TruncSeries::new(hi, fh.modulus(), out))
}

fn log_shift<R: PadicRing>(f: &TruncSeries<R>) -> u32 {
    log_floor(f.len().saturating_sub(1).max(1) as u64, f.ring().prime())
}

pub fn log_unit_series<R: PadicRing>(f: &ColemanSeries<R>) -> Result<LogSeries<R>> {
    if !f.is_unit() {
        return Err(Error::NotUnit);
    }
    let ring = f.ring();
    let shift = log_shift(&f.body);
    let hi = ring.with_precision(ring.precision() + shift);
    let scaled = log_scaled(&f.body, &hi, shift)?;
    let p = ring.prime();
    let denominators = (0..f.truncation())
        .map(|k| if k == 0 { 0 } else { arith::val(k as u64, p) })
        .collect();
    Ok(LogSeries {
        scaled,
        shift,
        absolute_precision: ring.precision(),
        denominators,
    })
}

/// `Col(f) = log f - phi(log f)/p`, integral for every unit `f`. Inputs
/// known mod `p^N` determine the output mod `p^(N-1)`; exact inputs give
/// all `N` digits.
pub fn col<R: PadicRing>(f: &ColemanSeries<R>) -> Result<TruncSeries<R>> {
    if !f.is_unit() {
        return Err(Error::NotUnit);
    }
    let ring = f.ring();
    let e = log_shift(&f.body);
    let hi = ring.with_precision(ring.precision() + e + 1);
    let l = log_scaled(&f.body, &hi, e)?;
    let p = hi.from_u64(ring.prime());
    let num = l.scale(&p).sub(&l.phi_op()?)?;
    for (k, c) in num.coeffs().iter().enumerate() {
        if hi.div_p_power(c, e + 1).is_none() {
            return Err(Error::IntegralityFailure { index: k });
        }
    }
    let q = num.div_p_power(e + 1).expect("checked");
    Ok(q.convert(ring))
}

/// `phi_m = (D^(m-1)(Df/f))(0)` for `m = 1..=mmax`.
pub fn cw_coeffs<R: PadicRing>(f: &ColemanSeries<R>, mmax: usize) -> Result<Vec<R::Elem>> {
    if !f.is_unit() {
        return Err(Error::NotUnit);
    }
    if f.truncation() < mmax + 1 {
        return Err(Error::PrecisionExhausted(alloc::format!(
            "truncation {} too short for {mmax} coefficients",
            f.truncation()
        )));
    }
    let mut g = log_derivative(&f.body)?;
    let mut out = Vec::with_capacity(mmax);
    for _ in 0..mmax {
        out.push(g.constant_term());
        g = g.d_op()?;
    }
    Ok(out)
}

/// `(D^m g)(0)` for `m = 0..=mmax`.
pub fn d_moments<R: PadicRing>(g: &TruncSeries<R>, mmax: usize) -> Result<Vec<R::Elem>> {
    let mut g = g.clone();
    let mut out = Vec::with_capacity(mmax + 1);
    for m in 0..=mmax {
        out.push(g.constant_term());
        if m < mmax {
            g = g.d_op()?;
        }
    }
    Ok(out)
}

/// `f_a = ((1+T)^a - 1)/T`.
pub fn cyclotomic_series<R: PadicRing>(
    ring: &R,
    truncation: usize,
    a: u64,
) -> Result<ColemanSeries<R>> {
    if a == 0 || a % ring.prime() == 0 {
        return Err(Error::NotCoprime {
            a: a as i64,
            m: ring.prime(),
        });
    }
    let full = TruncSeries::one_plus_t_pow(ring, SeriesModulus::TPow(truncation + 1), a);
    let coeffs: Vec<R::Elem> = full.coeffs().iter().skip(1).cloned().collect();
    ColemanSeries::new(
        TruncSeries::new(ring, SeriesModulus::TPow(truncation), coeffs),
        alloc::format!("cyclotomic(a={a})"),
    )
}

/// `1 - zeta_f (1+T)` for the canonical root `zeta_f` of `W`.
pub fn conductor_series<R: PadicRing>(
    ring: &R,
    truncation: usize,
    f: u64,
) -> Result<ColemanSeries<R>> {
    if f <= 1 || f % ring.prime() == 0 {
        return Err(crate::invalid!(
            "conductor {f} must exceed 1 and be prime to {}",
            ring.prime()
        ));
    }
    let z = ring
        .root_of_unity(f)
        .ok_or_else(|| crate::invalid!("mu_{f} is not contained in the coefficient ring"))?;
    let nz = ring.neg(&z);
    ColemanSeries::new(
        TruncSeries::new(
            ring,
            SeriesModulus::TPow(truncation),
            alloc::vec![ring.add(&ring.one(), &nz), nz],
        ),
        alloc::format!("conductor(f={f})"),
    )
}

fn frobenius_power<R: PadicRing>(ring: &R, a: &R::Elem, k: i64) -> R::Elem {
    let r = ring.degree() as i64;
    let k = k.rem_euclid(r.max(1));
    let mut x = a.clone();
    for _ in 0..k {
        x = ring.frobenius(&x);
    }
    x
}

/// Evaluation at `zeta_(p^(n+1)) - 1` in `W[zeta_(p^(n+1))]`; needs the
/// series to be a polynomial below its truncation.
pub fn eval_at_torsion<R: PadicRing>(f: &ColemanSeries<R>, n: u32) -> Result<Vec<R::Elem>> {
    let ring = f.ring();
    let m = arith::ipow(ring.prime(), n + 1);
    let target = CycloRing::new(ring.clone(), m);
    let x = target.sub(&target.zeta(1), &target.one());
    Ok(f.body
        .eval_with(&target, |c| target.from_base(c.clone()), &x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterpolationReport {
    pub p: u64,
    pub n: u32,
    pub precision: u32,
    pub kind: String,
    pub pass: bool,
    /// only for the conductor system: `N(eps_(n+1)) = eps_n`
    pub norm_coherent: Option<bool>,
}

/// `f_a(zeta - 1) = (zeta^a - 1)/(zeta - 1) = 1 + zeta + ... + zeta^(a-1)`.
pub fn cyclotomic_interpolation<R: PadicRing>(
    ring: &R,
    a: u64,
    n: u32,
) -> Result<InterpolationReport> {
    let f = cyclotomic_series(ring, a as usize + 1, a)?;
    let lhs = eval_at_torsion(&f, n)?;
    let target = CycloRing::new(ring.clone(), arith::ipow(ring.prime(), n + 1));
    let mut rhs = target.zero();
    for k in 0..a {
        rhs = target.add(&rhs, &target.zeta(k as i64));
    }
    Ok(InterpolationReport {
        p: ring.prime(),
        n,
        precision: ring.precision(),
        kind: alloc::format!("cyclotomic a={a}"),
        pass: lhs == rhs,
        norm_coherent: None,
    })
}

/// `eps_n = 1 - sigma_p^(-n)(zeta_f) zeta_(p^(n+1))` inside `W[zeta_(p^k)]`, `k >= n+1`.
fn conductor_unit<R: PadicRing>(
    ring: &R,
    target: &CycloRing<R>,
    f: u64,
    n: u32,
) -> Result<Vec<R::Elem>> {
    let z = ring
        .root_of_unity(f)
        .ok_or_else(|| crate::invalid!("mu_{f} not in W"))?;
    let zt = frobenius_power(ring, &z, -(n as i64));
    let step = target.order() / arith::ipow(ring.prime(), n + 1);
    let term = target.scale(&target.zeta(step as i64), &zt);
    Ok(target.sub(&target.one(), &term))
}

/// `f(zeta_(p^(n+1)) - 1) = eps_n^(sigma_p^n)` for the conductor system, plus
/// the norm relation from level `n+1` down to `n`.
pub fn conductor_interpolation<R: PadicRing>(
    ring: &R,
    f: u64,
    n: u32,
) -> Result<InterpolationReport> {
    let p = ring.prime();
    let series = conductor_series(ring, 2, f)?;
    let lhs = eval_at_torsion(&series, n)?;
    let target = CycloRing::new(ring.clone(), arith::ipow(p, n + 1));
    let eps = conductor_unit(ring, &target, f, n)?;
    let twisted: Vec<R::Elem> = eps
        .iter()
        .map(|c| frobenius_power(ring, c, n as i64))
        .collect();
    let big = CycloRing::new(ring.clone(), arith::ipow(p, n + 2));
    let upper = conductor_unit(ring, &big, f, n + 1)?;
    let pn1 = arith::ipow(p, n + 1);
    let mut norm = big.one();
    for j in 0..p {
        norm = big.mul(&norm, &big.galois(&upper, (1 + j * pn1) as i64)?);
    }
    let lower = conductor_unit(ring, &big, f, n)?;
    Ok(InterpolationReport {
        p,
        n,
        precision: ring.precision(),
        kind: alloc::format!("conductor f={f}"),
        pass: lhs == twisted,
        norm_coherent: Some(norm == lower),
    })
}

/// `(Z/p^(n+1))^x` with `kappa(sigma_a) = a`.
pub fn measure_group(p: u64, n: u32) -> Arc<GaloisGroup> {
    let m = arith::ipow(p, n + 1);
    GaloisGroup::units_with_kappa(m, m).expect("kappa modulus divides itself")
}

/// `sum_a alpha_a (1+T)^a` modulo `((1+T)^(p^(n+1)) - 1, p^N)`.
pub fn measure_to_series<R: PadicRing>(alpha: &GroupRingElt<R>) -> Result<TruncSeries<R>> {
    let ring = alpha.ring();
    let p = ring.prime();
    let m = alpha.group().modulus();
    let e = arith::val(m, p);
    if arith::ipow(p, e) != m {
        return Err(crate::invalid!(
            "measures live on (Z/p^k)^x, got modulus {m}"
        ));
    }
    let mut s = alloc::vec![ring.zero(); m as usize];
    for (&a, c) in alpha.group().elements().iter().zip(alpha.coeffs()) {
        s[a as usize] = ring.add(&s[a as usize], c);
    }
    Ok(TruncSeries::from_s_basis(ring, SeriesModulus::Omega(e), &s))
}

/// Truncation `T^M` at which a series determines its class modulo
/// `((1+T)^(p^(n+1)) - 1, p^N)`.
pub fn mel_truncation(p: u64, n: u32, big_n: u32) -> usize {
    (big_n as usize + 1) * arith::ipow(p, n + 1) as usize
}

/// Solves `sum_a alpha_a (1+T)^a = h` with `a` prime to `p`. The powers
/// `(1+T)^j`, `j < p^(n+1)`, form a basis whose change of basis to `T^k` is
/// unitriangular, so the solve is a back substitution; the residual is the
/// part on `j` divisible by `p`.
pub fn mel_invert<R: PadicRing>(
    h: &TruncSeries<R>,
    n: u32,
) -> Result<(GroupRingElt<R>, TruncSeries<R>)> {
    let ring = h.ring();
    let p = ring.prime();
    let level = n + 1;
    let h = match h.modulus() {
        SeriesModulus::Omega(e) if e == level => h.clone(),
        SeriesModulus::TPow(m) if m >= mel_truncation(p, n, ring.precision()) => {
            h.with_modulus(SeriesModulus::Omega(level))
        }
        other => {
            return Err(crate::invalid!(
                "series modulo {other:?} does not determine a level-{n} measure"
            ));
        }
    };
    let s = h.to_s_basis();
    let group = measure_group(p, n);
    let coeffs: Vec<R::Elem> = group
        .elements()
        .iter()
        .map(|&a| s[a as usize].clone())
        .collect();
    let alpha = GroupRingElt::from_coeffs(&group, ring, coeffs)?;
    let residual = h.sub(&measure_to_series(&alpha)?)?;
    Ok((alpha, residual))
}

/// `sum_a alpha_a a^m` with `a` read as the representative in `[1, p^(n+1))`.
pub fn measure_moment<R: PadicRing>(alpha: &GroupRingElt<R>, m: u64) -> R::Elem {
    let ring = alpha.ring();
    let modulus = ring.modulus();
    let mut acc = ring.zero();
    for (&a, c) in alpha.group().elements().iter().zip(alpha.coeffs()) {
        let am = arith::pow_mod(a % modulus, m, modulus);
        acc = ring.add(&acc, &ring.mul(c, &ring.from_u64(am)));
    }
    acc
}

/// `phi_m(f_a)` from the generating function
/// `d/dX log((e^(aX) - 1)/(e^X - 1))`, expanded over Q.
pub fn cw_generating_oracle(a: u64, mmax: usize) -> Vec<BigRational> {
    let len = mmax + 1;
    // (e^(cX) - 1)/X = sum c^(k+1) X^k / (k+1)!
    let series = |c: u64| -> Vec<BigRational> {
        let mut out = Vec::with_capacity(len);
        let mut fact = BigInt::one();
        for k in 0..len {
            fact *= BigInt::from(k + 1);
            out.push(BigRational::new(
                num_traits::pow(BigInt::from(c), k + 1),
                fact.clone(),
            ));
        }
        out
    };
    let num = series(a);
    let den = series(1);
    let mul = |x: &[BigRational], y: &[BigRational]| -> Vec<BigRational> {
        let mut out = alloc::vec![BigRational::zero(); len];
        for (i, u) in x.iter().enumerate() {
            for (j, v) in y.iter().enumerate().take(len - i) {
                out[i + j] += u * v;
            }
        }
        out
    };
    let inv = |x: &[BigRational]| -> Vec<BigRational> {
        let mut out = alloc::vec![BigRational::zero(); len];
        out[0] = x[0].recip();
        for k in 1..len {
            let mut s = BigRational::zero();
            for j in 1..=k {
                s += &x[j] * &out[k - j];
            }
            out[k] = -(s * &out[0]);
        }
        out
    };
    let deriv = |x: &[BigRational]| -> Vec<BigRational> {
        let mut out: Vec<BigRational> = (1..len)
            .map(|k| &x[k] * BigRational::from_integer(BigInt::from(k)))
            .collect();
        out.push(BigRational::zero());
        out
    };
    // F = num/den, F'/F = num'/num - den'/den (the X factors cancel)
    let g: Vec<BigRational> = mul(&deriv(&num), &inv(&num))
        .into_iter()
        .zip(mul(&deriv(&den), &inv(&den)))
        .map(|(x, y)| x - y)
        .collect();
    // phi_m = (m-1)! [X^(m-1)] g
    let mut fact = BigInt::one();
    let mut out = Vec::with_capacity(mmax);
    for m in 1..=mmax {
        if m > 1 {
            fact *= BigInt::from(m - 1);
        }
        out.push(&g[m - 1] * BigRational::from_integer(fact.clone()));
    }
    out
}

/// `(a^m - 1) B_m / m`, with `B_1 = +1/2` as in the generating function.
pub fn cw_closed_form(a: u64, m: u32) -> BigRational {
    let mut b = crate::ring::bernoulli(m as usize);
    if m == 1 {
        b = BigRational::new(BigInt::one(), BigInt::from(2));
    }
    let am = num_traits::pow(BigInt::from(a), m as usize) - BigInt::one();
    b * BigRational::from_integer(am) / BigRational::from_integer(BigInt::from(m))
}

/// Entries `b_(n, a)` mod `p^n`, indexed by the units mod `p^n` in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KummerVector {
    pub p: u64,
    pub n: u32,
    pub entries: Vec<u64>,
}

impl KummerVector {
    pub fn new(p: u64, n: u32, entries: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(crate::invalid!("level must be positive"));
        }
        let m = arith::ipow(p, n);
        let units = arith::units(m);
        if entries.len() != units.len() {
            return Err(crate::invalid!(
                "expected {} entries, got {}",
                units.len(),
                entries.len()
            ));
        }
        Ok(KummerVector {
            p,
            n,
            entries: entries.into_iter().map(|x| x % m).collect(),
        })
    }

    pub fn indicator(p: u64, n: u32, a: u64) -> Result<Self> {
        let m = arith::ipow(p, n);
        let units = arith::units(m);
        let idx = units
            .iter()
            .position(|&u| u == a % m)
            .ok_or(Error::NotCoprime { a: a as i64, m })?;
        let mut e = alloc::vec![0; units.len()];
        e[idx] = 1;
        Self::new(p, n, e)
    }

    pub fn modulus(&self) -> u64 {
        arith::ipow(self.p, self.n)
    }

    pub fn group(&self) -> Arc<GaloisGroup> {
        let m = self.modulus();
        GaloisGroup::units_with_kappa(m, m).expect("kappa modulus divides itself")
    }

    pub fn ring(&self) -> Zpn {
        Zpn::new(self.p, self.n)
    }

    pub fn entry(&self, a: u64) -> u64 {
        let g = self.group();
        self.entries[g.index_of(a % self.modulus()).expect("unit")]
    }
}

/// `delta_n(b) = sum_a b_a c^{-1} sigma_c` with `c = a N^{-1}`.
pub fn iky_delta(b: &KummerVector, n_chi: u64) -> Result<GroupRingElt<Zpn>> {
    let m = b.modulus();
    if n_chi % b.p == 0 {
        return Err(Error::NotCoprime {
            a: n_chi as i64,
            m: b.p,
        });
    }
    let ninv = arith::inv_mod(n_chi % m, m).expect("unit");
    let g = b.group();
    let r = b.ring();
    let mut coeffs = alloc::vec![0u64; g.order()];
    for (&a, &ba) in g.elements().iter().zip(&b.entries) {
        let c = arith::mul_mod(a, ninv, m);
        let cinv = arith::inv_mod(c, m).expect("unit");
        let k = g.index_of(c).expect("unit");
        coeffs[k] = r.add(&coeffs[k], &arith::mul_mod(ba, cinv, m));
    }
    GroupRingElt::from_coeffs(&g, &r, coeffs)
}

/// `dbar_n(b) = sum_tau b_tau sigma_tau^{-1}`.
pub fn dbar(b: &KummerVector) -> Result<GroupRingElt<Zpn>> {
    let g = b.group();
    let m = b.modulus();
    let mut coeffs = alloc::vec![0u64; g.order()];
    for (&t, &bt) in g.elements().iter().zip(&b.entries) {
        coeffs[g
            .index_of(arith::inv_mod(t, m).expect("unit"))
            .expect("unit")] = bt;
    }
    GroupRingElt::from_coeffs(&g, &b.ring(), coeffs)
}

/// `sum_a b_a a^(m-1) N^(1-m)` mod `p^n`, the moment of `delta_n(b)`.
pub fn iky_moment_direct(b: &KummerVector, n_chi: u64, m: u64) -> Result<u64> {
    let md = b.modulus();
    let ninv = arith::inv_mod(n_chi % md, md).ok_or(Error::NotCoprime {
        a: n_chi as i64,
        m: md,
    })?;
    let w = if m == 0 {
        n_chi % md
    } else {
        arith::pow_mod(ninv, m - 1, md)
    };
    let mut s = 0u64;
    for (&a, &ba) in b.group().elements().iter().zip(&b.entries) {
        let term = if m == 0 {
            arith::mul_mod(ba, arith::inv_mod(a, md).expect("unit"), md)
        } else {
            arith::mul_mod(ba, arith::pow_mod(a, m - 1, md), md)
        };
        s = arith::add_mod(s, term, md);
    }
    Ok(arith::mul_mod(s, w, md))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IkyReport {
    pub p: u64,
    pub n: u32,
    pub n_chi: u64,
    /// `m` where the group-ring moment and the direct sum disagree
    pub moment_failures: Vec<u64>,
    /// `m` where `D^m` of the series at 0 disagrees with the direct sum
    pub series_failures: Vec<u64>,
    pub sharp_identity: bool,
    pub pass: bool,
}

/// Both moment routes for `m = 1..=mmax` and `delta^# = sigma_N dbar`.
pub fn iky_check(b: &KummerVector, n_chi: u64, mmax: u64) -> Result<IkyReport> {
    let delta = iky_delta(b, n_chi)?;
    let series = measure_to_series(&delta)?;
    let moments = d_moments(&series, mmax as usize)?;
    let mut moment_failures = Vec::new();
    let mut series_failures = Vec::new();
    for m in 1..=mmax {
        let direct = iky_moment_direct(b, n_chi, m)?;
        if delta.moment(m)? != direct {
            moment_failures.push(m);
        }
        if moments[m as usize] != direct {
            series_failures.push(m);
        }
    }
    let lhs = delta.sharp()?;
    let rhs = dbar(b)?.mul_sigma(n_chi as i64)?;
    let sharp_identity = lhs == rhs;
    Ok(IkyReport {
        p: b.p,
        n: b.n,
        n_chi,
        pass: moment_failures.is_empty() && series_failures.is_empty() && sharp_identity,
        moment_failures,
        series_failures,
        sharp_identity,
    })
}

/// `a -> a^(m+1) mod p^n` over the units mod `p^n`.
pub fn soule_exponents(p: u64, n: u32, m: u64) -> Vec<(u64, u64)> {
    let md = arith::ipow(p, n);
    arith::units(md)
        .into_iter()
        .map(|a| (a, arith::pow_mod(a, m + 1, md)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::GaloisRing;

    fn zpn_series(r: &Zpn, m: usize, c: &[i64]) -> ColemanSeries<Zpn> {
        ColemanSeries::new(TruncSeries::from_i64s(r, SeriesModulus::TPow(m), c), "test").unwrap()
    }

    #[test]
    fn col_kernel_and_constants() {
        let r = Zpn::new(5, 4);
        let one_t = zpn_series(&r, 20, &[1, 1]);
        assert!(col(&one_t).unwrap().is_zero());
        let w = crate::ring::zpn::teichmuller(2, 5, 4).unwrap();
        let tw = ColemanSeries::new(
            TruncSeries::constant(&r, SeriesModulus::TPow(20), w),
            "teich",
        )
        .unwrap();
        // omega is only known mod p^N, so the kernel holds mod p^(N-1)
        let c = col(&tw.mul(&one_t).unwrap()).unwrap();
        assert!(c.coeffs().iter().all(|x| x % 125 == 0));
        // constant u: (1 - 1/p) log u
        let u = zpn_series(&r, 20, &[6]);
        let c = col(&u).unwrap();
        let hi = Zpn::new(5, 5);
        let l = hi.log_unit(&6).unwrap();
        let want = hi.div_p_power(&hi.mul(&l, &4), 1).unwrap() % 625;
        assert_eq!(c.constant_term(), want);
        assert!(c.coeffs()[1..].iter().all(|x| *x == 0));
    }

    #[test]
    fn d_phi_commutation() {
        let r = Zpn::new(5, 4);
        let g =
            TruncSeries::from_i64s(&r, SeriesModulus::TPow(30), &[3, 1, 4, 1, 5, 9, 2, 6, 5, 3]);
        let lhs = g.phi_op().unwrap().d_op().unwrap();
        let rhs = g
            .d_op()
            .unwrap()
            .with_modulus(SeriesModulus::TPow(30))
            .phi_op()
            .unwrap()
            .scale(&5);
        assert_eq!(lhs, rhs.with_modulus(SeriesModulus::TPow(29)));
    }

    #[test]
    fn cw_one_plus_t() {
        let r = Zpn::new(7, 3);
        let f = zpn_series(&r, 12, &[1, 1]);
        let cw = cw_coeffs(&f, 10).unwrap();
        assert_eq!(cw[0], 1);
        assert!(cw[1..].iter().all(|x| *x == 0));
    }

    #[test]
    fn cw_closed_form_matches_oracle() {
        for a in [2, 3] {
            let oracle = cw_generating_oracle(a, 10);
            for m in 1..=10u32 {
                assert_eq!(oracle[m as usize - 1], cw_closed_form(a, m), "a={a} m={m}");
            }
        }
        let r = Zpn::new(5, 4);
        let f = cyclotomic_series(&r, 12, 2).unwrap();
        let cw = cw_coeffs(&f, 10).unwrap();
        for m in (2..=10).step_by(2) {
            let want =
                crate::ring::padic::reduce_rational(&cw_closed_form(2, m as u32), 625).unwrap();
            assert_eq!(cw[m - 1], want, "m={m}");
        }
    }

    #[test]
    fn interpolation() {
        let r = Zpn::new(5, 3);
        for n in 0..=2 {
            assert!(cyclotomic_interpolation(&r, 3, n).unwrap().pass);
        }
        let w = GaloisRing::new(5, GaloisRing::degree_for_roots(5, 4), 3);
        let rep = conductor_interpolation(&w, 4, 1).unwrap();
        assert!(rep.pass && rep.norm_coherent == Some(true));
        let w = GaloisRing::new(7, GaloisRing::degree_for_roots(7, 3), 3);
        let rep = conductor_interpolation(&w, 3, 1).unwrap();
        assert!(rep.pass && rep.norm_coherent == Some(true));
        let w = GaloisRing::new(3, GaloisRing::degree_for_roots(3, 5), 3);
        let rep = conductor_interpolation(&w, 5, 1).unwrap();
        assert!(rep.pass && rep.norm_coherent == Some(true));
    }

    #[test]
    fn mel_examples() {
        let r = Zpn::new(5, 3);
        let h = TruncSeries::one_plus_t_pow(&r, SeriesModulus::Omega(2), 3);
        let (alpha, res) = mel_invert(&h, 1).unwrap();
        assert!(res.is_zero());
        assert_eq!(
            alpha,
            GroupRingElt::sigma(&measure_group(5, 1), &r, 3).unwrap()
        );
        let (_, res) = mel_invert(&TruncSeries::one(&r, SeriesModulus::Omega(2)), 1).unwrap();
        assert!(!res.is_zero());
    }

    #[test]
    fn mel_of_col_cyclotomic() {
        let (p, n, big_n) = (5u64, 1u32, 4u32);
        let r = Zpn::new(p, big_n);
        let f = cyclotomic_series(&r, mel_truncation(p, n, big_n), 2).unwrap();
        let c = col(&f).unwrap();
        let (alpha, res) = mel_invert(&c, n).unwrap();
        assert!(res.is_zero());
        let dm = d_moments(&c, 10).unwrap();
        let md = arith::ipow(p, n + 1);
        for m in 1..=10u64 {
            assert_eq!(measure_moment(&alpha, m) % md, dm[m as usize] % md, "m={m}");
        }
        // moments of Col(f_2) are (1 - p^(m-1)) phi_m
        for m in (2..=10u32).step_by(2) {
            let euler = BigRational::one()
                - BigRational::from_integer(num_traits::pow(BigInt::from(p), m as usize - 1));
            let want =
                crate::ring::padic::reduce_rational(&(euler * cw_closed_form(2, m)), r.modulus())
                    .unwrap();
            assert_eq!(dm[m as usize], want, "m={m}");
        }
    }

    #[test]
    fn iky_examples() {
        let b = KummerVector::indicator(5, 2, 1).unwrap();
        assert_eq!(
            iky_delta(&b, 1).unwrap(),
            GroupRingElt::sigma(&b.group(), &b.ring(), 1).unwrap()
        );
        let b = KummerVector::indicator(3, 1, 2).unwrap();
        let d = iky_delta(&b, 1).unwrap();
        assert_eq!(
            d,
            GroupRingElt::sigma(&b.group(), &b.ring(), 2)
                .unwrap()
                .scale(&2)
        );
        let b = KummerVector::new(5, 2, (0..20).map(|k| k * 7 + 3).collect()).unwrap();
        for n_chi in [1, 2, 3, 7] {
            let rep = iky_check(&b, n_chi, 10).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
        assert_eq!(
            dbar(&KummerVector::indicator(7, 1, 1).unwrap())
                .unwrap()
                .coeff(1),
            1
        );
    }

    #[test]
    fn soule_periodicity() {
        assert_eq!(soule_exponents(3, 1, 1), alloc::vec![(1, 1), (2, 1)]);
        let (p, n) = (5u64, 2u32);
        let period = arith::ipow(p, n - 1) * (p - 1);
        assert_eq!(soule_exponents(p, n, 3), soule_exponents(p, n, 3 + period));
        assert!(soule_exponents(p, n, period - 1)
            .iter()
            .all(|&(_, e)| e == 1));
    }
}
