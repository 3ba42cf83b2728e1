//! Cyclotomic rings in the power basis modulo the cyclotomic polynomial.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::arith;
use super::zpoly;
use super::{Integers, Ring};
use crate::{Error, Result};

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_poly(m: u64) -> Vec<i64> {
    assert!(m >= 1);
    let mut num: Vec<i128> = alloc::vec![1];
    let mut dens: Vec<u64> = Vec::new();
    for d in arith::divisors(m) {
        match arith::mobius(m / d) {
            1 => {
                // multiply by x^d - 1
                let mut next = alloc::vec![0i128; num.len() + d as usize];
                for (i, &c) in num.iter().enumerate() {
                    next[i + d as usize] += c;
                    next[i] -= c;
                }
                num = next;
            }
            -1 => dens.push(d),
            _ => {}
        }
    }
    for d in dens {
        let d = d as usize;
        let qlen = num.len() - d;
        let mut q = alloc::vec![0i128; qlen];
        for i in 0..qlen {
            let prev = if i >= d { q[i - d] } else { 0 };
            q[i] = prev - num[i];
        }
        num = q;
    }
    num.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient fits i64"))
        .collect()
}

/// Reduces a coefficient vector modulo `x^m - 1` and then modulo `Phi_m`.
fn reduce_with<R: Ring>(ring: &R, coeffs: Vec<R::Elem>, m: u64, phi: &[i64]) -> Vec<R::Elem> {
    let deg = phi.len() - 1;
    let mut v = coeffs;
    if v.len() > m as usize {
        let mut folded = alloc::vec![ring.zero(); m as usize];
        for (i, c) in v.into_iter().enumerate() {
            let k = i % m as usize;
            folded[k] = ring.add(&folded[k], &c);
        }
        v = folded;
    }
    if v.len() < deg {
        v.resize(deg, ring.zero());
        return v;
    }
    let nz: Vec<(usize, R::Elem)> = phi[..deg]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, ring.from_i64(c)))
        .collect();
    for i in (deg..v.len()).rev() {
        if ring.is_zero(&v[i]) {
            continue;
        }
        let c = core::mem::replace(&mut v[i], ring.zero());
        for (j, pj) in &nz {
            let t = ring.mul(&c, pj);
            v[i - deg + j] = ring.sub(&v[i - deg + j], &t);
        }
    }
    v.truncate(deg);
    v
}

fn galois_with<R: Ring>(ring: &R, x: &[R::Elem], a: u64, m: u64, phi: &[i64]) -> Vec<R::Elem> {
    let mut out = alloc::vec![ring.zero(); m as usize];
    for (k, c) in x.iter().enumerate() {
        let e = arith::mul_mod(k as u64, a, m) as usize;
        out[e] = ring.add(&out[e], c);
    }
    reduce_with(ring, out, m, phi)
}

/// The ring `R[zeta_m] = R[x]/Phi_m` over a base ring `R`.
#[derive(Clone, Debug)]
pub struct CycloRing<R: Ring> {
    base: R,
    m: u64,
    phi: Arc<[i64]>,
}

impl<R: Ring> PartialEq for CycloRing<R> {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.base == other.base
    }
}

impl<R: Ring> CycloRing<R> {
    pub fn new(base: R, m: u64) -> Self {
        CycloRing {
            base,
            m,
            phi: cyclotomic_poly(m).into(),
        }
    }
    pub fn base(&self) -> &R {
        &self.base
    }
    pub fn order(&self) -> u64 {
        self.m
    }
    pub fn rank(&self) -> usize {
        self.phi.len() - 1
    }
    pub fn reduce(&self, coeffs: Vec<R::Elem>) -> Vec<R::Elem> {
        reduce_with(&self.base, coeffs, self.m, &self.phi)
    }
    /// `zeta_m^k`.
    pub fn zeta(&self, k: i64) -> Vec<R::Elem> {
        let e = arith::reduce_i64(k, self.m) as usize;
        let mut v = alloc::vec![self.base.zero(); e + 1];
        v[e] = self.base.one();
        self.reduce(v)
    }
    pub fn from_base(&self, c: R::Elem) -> Vec<R::Elem> {
        let mut v = alloc::vec![self.base.zero(); self.rank()];
        v[0] = c;
        v
    }
    pub fn scale(&self, x: &[R::Elem], c: &R::Elem) -> Vec<R::Elem> {
        x.iter().map(|a| self.base.mul(a, c)).collect()
    }
    /// Image under `zeta_m -> zeta_m^a`.
    pub fn galois(&self, x: &[R::Elem], a: i64) -> Result<Vec<R::Elem>> {
        let a = arith::reduce_i64(a, self.m);
        if arith::gcd(a, self.m) != 1 {
            return Err(Error::NotCoprime {
                a: a as i64,
                m: self.m,
            });
        }
        Ok(galois_with(&self.base, x, a, self.m, &self.phi))
    }
    /// Evaluation of a base-ring polynomial at `zeta_m`.
    pub fn eval_poly(&self, coeffs: &[R::Elem]) -> Vec<R::Elem> {
        self.reduce(coeffs.to_vec())
    }
}

impl<R: Ring> Ring for CycloRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        alloc::vec![self.base.zero(); self.rank()]
    }
    fn one(&self) -> Self::Elem {
        self.from_base(self.base.one())
    }
    fn from_i64(&self, a: i64) -> Self::Elem {
        self.from_base(self.base.from_i64(a))
    }
    fn from_bigint(&self, a: &BigInt) -> Self::Elem {
        self.from_base(self.base.from_bigint(a))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(self.base.poly_mul(a, b))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        // units detected only among base-ring scalars and roots of unity
        if a.iter().skip(1).all(|x| self.base.is_zero(x)) {
            return self.base.inv(&a[0]).map(|c| self.from_base(c));
        }
        (0..self.m as i64)
            .find(|&k| &self.zeta(k) == a)
            .map(|k| self.zeta(-k))
    }
    fn characteristic(&self) -> Option<u64> {
        self.base.characteristic()
    }
}

/// An element of Z[zeta_m], or of its reduction modulo an integer.
#[derive(Clone)]
pub struct CycloElt {
    order: u64,
    coeffs: Vec<BigInt>,
    modulus: Option<BigInt>,
    phi: Arc<[i64]>,
}

impl PartialEq for CycloElt {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.modulus == other.modulus && self.coeffs == other.coeffs
    }
}
impl Eq for CycloElt {}

impl fmt::Debug for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CycloElt(m={}, {:?}",
            self.order,
            self.coeffs_i128_lossy()
        )?;
        if let Some(m) = &self.modulus {
            write!(f, " mod {m}")?;
        }
        write!(f, ")")
    }
}

/// Canonical representative of a coefficient vector in Z[zeta_m].
pub fn cyclotomic_reduce(coeffs: &[BigInt], m: u64) -> CycloElt {
    CycloElt::from_coeffs(coeffs.to_vec(), m)
}

pub fn cyclo_galois(x: &CycloElt, a: i64) -> Result<CycloElt> {
    x.galois(a)
}

pub fn cyclo_norm(x: &CycloElt) -> Result<BigInt> {
    x.norm()
}

impl CycloElt {
    pub fn from_coeffs(coeffs: Vec<BigInt>, m: u64) -> Self {
        let phi: Arc<[i64]> = cyclotomic_poly(m).into();
        let coeffs = reduce_with(&Integers, coeffs, m, &phi);
        CycloElt {
            order: m,
            coeffs,
            modulus: None,
            phi,
        }
    }
    pub fn from_i64s(coeffs: &[i64], m: u64) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect(), m)
    }
    pub fn zero(m: u64) -> Self {
        Self::from_coeffs(Vec::new(), m)
    }
    pub fn from_int(a: impl Into<BigInt>, m: u64) -> Self {
        Self::from_coeffs(alloc::vec![a.into()], m)
    }
    pub fn one(m: u64) -> Self {
        Self::from_int(1, m)
    }
    /// `zeta_m^k`.
    pub fn zeta(m: u64, k: i64) -> Self {
        let e = arith::reduce_i64(k, m) as usize;
        let mut v = alloc::vec![BigInt::zero(); e + 1];
        v[e] = BigInt::one();
        Self::from_coeffs(v, m)
    }

    /// Reduction of the coefficients modulo `modulus` (e.g. p^N).
    pub fn with_modulus(mut self, modulus: BigInt) -> Self {
        assert!(modulus.is_positive());
        for c in self.coeffs.iter_mut() {
            *c = c.mod_floor(&modulus);
        }
        self.modulus = Some(modulus);
        self
    }

    pub fn order(&self) -> u64 {
        self.order
    }
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }
    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    fn coeffs_i128_lossy(&self) -> Vec<alloc::string::String> {
        self.coeffs.iter().map(|c| alloc::format!("{c}")).collect()
    }

    fn rebuild(&self, mut coeffs: Vec<BigInt>) -> Self {
        if let Some(m) = &self.modulus {
            for c in coeffs.iter_mut() {
                *c = c.mod_floor(m);
            }
        }
        CycloElt {
            order: self.order,
            coeffs,
            modulus: self.modulus.clone(),
            phi: self.phi.clone(),
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order, other.order, "cyclotomic orders differ");
        assert_eq!(self.modulus, other.modulus, "coefficient moduli differ");
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        self.rebuild(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        self.rebuild(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
    pub fn neg(&self) -> Self {
        self.rebuild(self.coeffs.iter().map(|a| -a).collect())
    }
    pub fn scale(&self, k: &BigInt) -> Self {
        self.rebuild(self.coeffs.iter().map(|a| a * k).collect())
    }
    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let prod = Integers.poly_mul(&self.coeffs, &other.coeffs);
        let red = reduce_with(&Integers, prod, self.order, &self.phi);
        self.rebuild(red)
    }
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.rebuild(CycloElt::one(self.order).coeffs);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division of every coefficient by an integer.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(self.rebuild(out))
    }

    /// Image under `zeta_m -> zeta_m^a`.
    pub fn galois(&self, a: i64) -> Result<Self> {
        let a = arith::reduce_i64(a, self.order);
        if arith::gcd(a, self.order) != 1 {
            return Err(Error::NotCoprime {
                a: a as i64,
                m: self.order,
            });
        }
        let v = galois_with(&Integers, &self.coeffs, a, self.order, &self.phi);
        Ok(self.rebuild(v))
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    /// Absolute norm, as the resultant of `Phi_m` and the coefficient polynomial.
    pub fn norm(&self) -> Result<BigInt> {
        if self.modulus.is_some() {
            return Err(crate::invalid!("norm needs an exact element"));
        }
        let phi: Vec<BigInt> = self.phi.iter().map(|&c| BigInt::from(c)).collect();
        Ok(zpoly::resultant(&phi, &self.coeffs))
    }

    /// Image in Z[zeta_M] for a multiple `M` of the order.
    pub fn embed(&self, big: u64) -> Self {
        assert_eq!(big % self.order, 0, "order must divide the target order");
        let step = (big / self.order) as usize;
        let mut v = alloc::vec![BigInt::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step] = c.clone();
        }
        let out = CycloElt::from_coeffs(v, big);
        match &self.modulus {
            Some(m) => out.with_modulus(m.clone()),
            None => out,
        }
    }

    /// For order `c*l` with `l` prime to `c` and prime: the element of Z[zeta_c]
    /// equal to `self`, if it lies in that subring.
    pub fn descend(&self, c: u64) -> Result<Self> {
        let m = self.order;
        if m % c != 0 {
            return Err(crate::invalid!("{c} does not divide {m}"));
        }
        let l = m / c;
        if l == 1 {
            return Ok(self.clone());
        }
        if arith::gcd(c, l) != 1 || !arith::is_prime(l) {
            return Err(crate::invalid!(
                "descent needs m = c*l with l prime to c and prime"
            ));
        }
        let linv = arith::inv_mod(l % c.max(1), c.max(1)).unwrap_or(0);
        let cinv = arith::inv_mod(c % l, l).expect("coprime");
        // y_j collects the zeta_c-polynomial multiplying zeta_l^j
        let mut parts: Vec<Vec<BigInt>> =
            alloc::vec![alloc::vec![BigInt::zero(); c as usize]; l as usize];
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let k = k as u64;
            let i = if c == 1 {
                0
            } else {
                arith::mul_mod(k, linv, c)
            };
            let j = arith::mul_mod(k, cinv, l);
            parts[j as usize][i as usize] += a;
        }
        let red: Vec<CycloElt> = parts
            .into_iter()
            .map(|v| CycloElt::from_coeffs(v, c))
            .collect();
        let last = red[l as usize - 1].clone();
        for y in &red[1..l as usize - 1] {
            if *y != last {
                return Err(Error::NotInSubring { c });
            }
        }
        let out = red[0].sub(&last);
        Ok(match &self.modulus {
            Some(md) => out.with_modulus(md.clone()),
            None => out,
        })
    }
}

impl core::ops::Add for &CycloElt {
    type Output = CycloElt;
    fn add(self, rhs: &CycloElt) -> CycloElt {
        CycloElt::add(self, rhs)
    }
}
impl core::ops::Sub for &CycloElt {
    type Output = CycloElt;
    fn sub(self, rhs: &CycloElt) -> CycloElt {
        CycloElt::sub(self, rhs)
    }
}
impl core::ops::Mul for &CycloElt {
    type Output = CycloElt;
    fn mul(self, rhs: &CycloElt) -> CycloElt {
        CycloElt::mul(self, rhs)
    }
}
impl core::ops::Neg for &CycloElt {
    type Output = CycloElt;
    fn neg(self) -> CycloElt {
        CycloElt::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rationals;
    use num_rational::BigRational;

    fn e(v: &[i64], m: u64) -> CycloElt {
        CycloElt::from_i64s(v, m)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), alloc::vec![-1, 1]);
        assert_eq!(cyclotomic_poly(3), alloc::vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(12), alloc::vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(9), alloc::vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(105).iter().filter(|&&c| c == -2).count(), 2);
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(e(&[0, 0, 1], 3), e(&[-1, -1], 3));
        assert_eq!(e(&[0, 0, 0, 0, 1], 5), e(&[-1, -1, -1, -1], 5));
        assert_eq!(e(&[0, 0, 0, 0, 1], 12), e(&[-1, 0, 1], 12));
        assert_eq!(e(&[0, 0, 0, 0, 0, 0, 1], 12), e(&[-1], 12));
        assert_eq!(CycloElt::zeta(7, 7), CycloElt::one(7));
    }

    #[test]
    fn galois_examples() {
        let z3 = CycloElt::zeta(3, 1);
        assert_eq!(z3.galois(2).unwrap(), e(&[-1, -1], 3));
        let x = e(&[3, 1], 3);
        assert_eq!(x.galois(1).unwrap(), x);
        let y = &CycloElt::zeta(5, 1) + &CycloElt::zeta(5, 4);
        assert_eq!(
            y.galois(2).unwrap(),
            &CycloElt::zeta(5, 2) + &CycloElt::zeta(5, 3)
        );
        assert!(x.galois(3).is_err());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(e(&[3, 1], 3).norm().unwrap(), BigInt::from(7));
        assert_eq!(CycloElt::one(9).norm().unwrap(), BigInt::one());
        assert_eq!(e(&[1, -1], 5).norm().unwrap(), BigInt::from(5));
        assert_eq!(CycloElt::from_int(2, 12).norm().unwrap(), BigInt::from(16));
    }

    #[test]
    fn descend_tensor_basis() {
        // zeta_3 inside Z[zeta_21]
        let x = CycloElt::zeta(3, 1).embed(21);
        assert_eq!(x.descend(3).unwrap(), CycloElt::zeta(3, 1));
        assert_eq!(
            CycloElt::zeta(21, 3).descend(3),
            Err(Error::NotInSubring { c: 3 })
        );
        let y = &e(&[2, -5], 5).embed(55) * &CycloElt::zeta(5, 3).embed(55);
        assert_eq!(
            y.descend(5).unwrap(),
            &e(&[2, -5], 5) * &CycloElt::zeta(5, 3)
        );
    }

    #[test]
    fn generic_ring_over_q() {
        let k = CycloRing::new(Rationals, 4);
        let i = k.zeta(1);
        let half = BigRational::new(1.into(), 2.into());
        let x = k.add(&k.one(), &k.scale(&i, &half));
        let y = k.mul(&x, &k.galois(&x, -1).unwrap());
        assert_eq!(y, k.from_base(BigRational::new(5.into(), 4.into())));
    }

    #[test]
    fn modular_reduction_commutes() {
        let m = BigInt::from(25);
        let a = e(&[7, -3, 11, 2], 5);
        let b = e(&[1, 9, -4], 5);
        let lhs = (&a * &b).with_modulus(m.clone());
        let rhs = &a.clone().with_modulus(m.clone()) * &b.with_modulus(m);
        assert_eq!(lhs, rhs);
    }
}
