//! Truncated power series over p-adic coefficient rings.

use alloc::vec::Vec;

use crate::ring::{arith, PadicRing, Ring};
use crate::{Error, Result};

/// The ideal a series is reduced by (together with `p^N` from the ring).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesModulus {
    /// `T^M`
    TPow(usize),
    /// `(1+T)^(p^e) - 1`
    Omega(u32),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<R: PadicRing> {
    ring: R,
    modulus: SeriesModulus,
    coeffs: Vec<R::Elem>,
}

/// Binomial coefficients `C(k, j)` for `j <= k < len`, as ring elements.
fn binomial_rows<R: PadicRing>(ring: &R, len: usize) -> Vec<Vec<R::Elem>> {
    let mut rows: Vec<Vec<R::Elem>> = Vec::with_capacity(len);
    for k in 0..len {
        let mut row = alloc::vec![ring.one(); k + 1];
        for j in 1..k {
            row[j] = ring.add(&rows[k - 1][j - 1], &rows[k - 1][j]);
        }
        rows.push(row);
    }
    rows
}

/// `(1+T)^(p^e) - 1` as a monic polynomial over the ring.
fn omega_poly<R: PadicRing>(ring: &R, e: u32) -> Vec<R::Elem> {
    let d = arith::ipow(ring.prime(), e) as usize;
    // C(d, k) via C(d, k) = C(d, k-1) (d-k+1)/k over the integers
    let mut out = alloc::vec![ring.zero(); d + 1];
    let mut b = num_bigint::BigInt::from(1);
    for k in 1..=d {
        b = b * num_bigint::BigInt::from(d - k + 1) / num_bigint::BigInt::from(k);
        out[k] = ring.from_bigint(&b);
    }
    out
}

impl<R: PadicRing> TruncSeries<R> {
    pub fn new(ring: &R, modulus: SeriesModulus, coeffs: Vec<R::Elem>) -> Self {
        let mut s = TruncSeries {
            ring: ring.clone(),
            modulus,
            coeffs,
        };
        s.reduce();
        s
    }

    pub fn from_i64s(ring: &R, modulus: SeriesModulus, coeffs: &[i64]) -> Self {
        Self::new(
            ring,
            modulus,
            coeffs.iter().map(|&c| ring.from_i64(c)).collect(),
        )
    }

    pub fn zero(ring: &R, modulus: SeriesModulus) -> Self {
        Self::new(ring, modulus, Vec::new())
    }

    pub fn constant(ring: &R, modulus: SeriesModulus, c: R::Elem) -> Self {
        Self::new(ring, modulus, alloc::vec![c])
    }

    pub fn one(ring: &R, modulus: SeriesModulus) -> Self {
        Self::constant(ring, modulus, ring.one())
    }

    /// `(1+T)^a`.
    pub fn one_plus_t_pow(ring: &R, modulus: SeriesModulus, a: u64) -> Self {
        let len = match modulus {
            SeriesModulus::TPow(m) => m.min(a as usize + 1),
            SeriesModulus::Omega(e) => {
                let d = arith::ipow(ring.prime(), e);
                return Self::one_plus_t_pow(ring, SeriesModulus::TPow(d as usize + 1), a % d)
                    .with_modulus(modulus);
            }
        };
        let mut coeffs = Vec::with_capacity(len);
        let mut b = num_bigint::BigInt::from(1);
        for k in 0..len {
            if k > 0 {
                b = b * num_bigint::BigInt::from(a - k as u64 + 1) / num_bigint::BigInt::from(k);
            }
            coeffs.push(ring.from_bigint(&b));
        }
        Self::new(ring, modulus, coeffs)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn modulus(&self) -> SeriesModulus {
        self.modulus
    }
    /// Number of stored coefficients (the truncation length).
    pub fn len(&self) -> usize {
        self.bound()
    }
    pub fn is_empty(&self) -> bool {
        self.bound() == 0
    }
    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }
    pub fn coeff(&self, k: usize) -> R::Elem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }
    pub fn constant_term(&self) -> R::Elem {
        self.coeff(0)
    }

    fn bound(&self) -> usize {
        match self.modulus {
            SeriesModulus::TPow(m) => m,
            SeriesModulus::Omega(e) => arith::ipow(self.ring.prime(), e) as usize,
        }
    }

    fn reduce(&mut self) {
        let b = self.bound();
        if let SeriesModulus::Omega(e) = self.modulus {
            if self.coeffs.len() > b {
                let w = omega_poly(&self.ring, e);
                for top in (b..self.coeffs.len()).rev() {
                    let c = self.coeffs[top].clone();
                    if self.ring.is_zero(&c) {
                        continue;
                    }
                    for (k, wk) in w.iter().enumerate().take(b) {
                        let t = self.ring.mul(&c, wk);
                        self.coeffs[top - b + k] = self.ring.sub(&self.coeffs[top - b + k], &t);
                    }
                }
            }
        }
        self.coeffs.resize(b, self.ring.zero());
    }

    /// The same series read modulo another ideal (reduction or zero-padding).
    pub fn with_modulus(&self, modulus: SeriesModulus) -> Self {
        Self::new(&self.ring, modulus, self.coeffs.clone())
    }

    /// Coefficients converted to another ring of the same prime (precision change).
    pub fn convert(&self, ring: &R) -> Self {
        Self::new(
            ring,
            self.modulus,
            self.coeffs
                .iter()
                .map(|c| ring.convert(&self.ring, c))
                .collect(),
        )
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring || self.modulus != other.modulus {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(TruncSeries {
            ring: self.ring.clone(),
            modulus: self.modulus,
            coeffs: c,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(TruncSeries {
            ring: self.ring.clone(),
            modulus: self.modulus,
            coeffs: c,
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|a| self.ring.neg(a))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map(|a| self.ring.mul(a, c))
    }

    pub fn map(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        TruncSeries {
            ring: self.ring.clone(),
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut prod = self.ring.poly_mul(&self.coeffs, &other.coeffs);
        if let SeriesModulus::TPow(m) = self.modulus {
            prod.truncate(m);
        }
        Ok(Self::new(&self.ring, self.modulus, prod))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.ring, self.modulus);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    /// Inverse of a series with unit constant term, modulo `T^M`.
    pub fn inv(&self) -> Result<Self> {
        let SeriesModulus::TPow(m) = self.modulus else {
            return Err(crate::invalid!("series inverse needs a T-adic truncation"));
        };
        let c0inv = self.ring.inv(&self.constant_term()).ok_or(Error::NotUnit)?;
        let mut out = alloc::vec![self.ring.zero(); m];
        if m == 0 {
            return Ok(self.clone());
        }
        out[0] = c0inv.clone();
        for k in 1..m {
            let mut s = self.ring.zero();
            for j in 1..=k {
                if !self.ring.is_zero(&self.coeffs[j]) {
                    s = self
                        .ring
                        .add(&s, &self.ring.mul(&self.coeffs[j], &out[k - j]));
                }
            }
            out[k] = self.ring.neg(&self.ring.mul(&s, &c0inv));
        }
        Ok(Self::new(&self.ring, self.modulus, out))
    }

    /// Coefficients in the basis `S^j`, `S = 1 + T`: `b_j = sum_k a_k C(k,j) (-1)^(k-j)`.
    pub fn to_s_basis(&self) -> Vec<R::Elem> {
        let n = self.coeffs.len();
        let rows = binomial_rows(&self.ring, n);
        let mut out = alloc::vec![self.ring.zero(); n];
        for (k, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in rows[k].iter().enumerate() {
                let t = self.ring.mul(a, b);
                out[j] = if (k - j) % 2 == 0 {
                    self.ring.add(&out[j], &t)
                } else {
                    self.ring.sub(&out[j], &t)
                };
            }
        }
        out
    }

    /// Inverse of [`to_s_basis`](Self::to_s_basis): `a_k = sum_j b_j C(j,k)`.
    pub fn from_s_basis(ring: &R, modulus: SeriesModulus, s: &[R::Elem]) -> Self {
        let rows = binomial_rows(ring, s.len());
        let mut out = alloc::vec![ring.zero(); s.len()];
        for (j, b) in s.iter().enumerate() {
            if ring.is_zero(b) {
                continue;
            }
            for (k, c) in rows[j].iter().enumerate() {
                out[k] = ring.add(&out[k], &ring.mul(b, c));
            }
        }
        Self::new(ring, modulus, out)
    }

    /// `D f = (1+T) f'`. Modulo `T^M` the result is known modulo `T^(M-1)`;
    /// modulo `(1+T)^(p^e) - 1` it is defined when `p^e` kills the ring,
    /// acting as `S^j -> j S^j` on powers of `S = 1 + T`.
    pub fn d_op(&self) -> Result<Self> {
        match self.modulus {
            SeriesModulus::TPow(m) => {
                if m == 0 {
                    return Ok(self.clone());
                }
                let mut out = Vec::with_capacity(m - 1);
                for k in 0..m - 1 {
                    let a = self.ring.scale_i64(&self.coeffs[k + 1], (k + 1) as i64);
                    let b = self.ring.scale_i64(&self.coeffs[k], k as i64);
                    out.push(self.ring.add(&a, &b));
                }
                Ok(Self::new(&self.ring, SeriesModulus::TPow(m - 1), out))
            }
            SeriesModulus::Omega(e) => {
                if self.ring.precision() > e {
                    return Err(crate::invalid!(
                        "D is not defined modulo (1+T)^(p^{e}) - 1 at precision {}",
                        self.ring.precision()
                    ));
                }
                let s: Vec<R::Elem> = self
                    .to_s_basis()
                    .iter()
                    .enumerate()
                    .map(|(j, b)| self.ring.scale_i64(b, j as i64))
                    .collect();
                Ok(Self::from_s_basis(&self.ring, self.modulus, &s))
            }
        }
    }

    /// `f^sigma((1+T)^p - 1)` by Horner's rule modulo `T^M`.
    pub fn phi_op(&self) -> Result<Self> {
        let SeriesModulus::TPow(m) = self.modulus else {
            return Err(crate::invalid!("phi is computed on T-adic truncations"));
        };
        let p = self.ring.prime();
        let tp = Self::one_plus_t_pow(&self.ring, self.modulus, p)
            .sub(&Self::one(&self.ring, self.modulus))?;
        let tp_nz: Vec<(usize, R::Elem)> = tp
            .coeffs
            .iter()
            .cloned()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .collect();
        let mut acc = alloc::vec![self.ring.zero(); m];
        for a in self.coeffs.iter().rev() {
            // acc = acc * tp + frob(a)
            let mut next = alloc::vec![self.ring.zero(); m];
            for (i, x) in acc.iter().enumerate() {
                if self.ring.is_zero(x) {
                    continue;
                }
                for (j, y) in &tp_nz {
                    if i + j >= m {
                        break;
                    }
                    next[i + j] = self.ring.add(&next[i + j], &self.ring.mul(x, y));
                }
            }
            next[0] = self.ring.add(&next[0], &self.ring.frobenius(a));
            acc = next;
        }
        Ok(Self::new(&self.ring, self.modulus, acc))
    }

    /// Evaluates at `x` in a ring `S`, mapping coefficients with `embed`.
    pub fn eval_with<S: Ring>(
        &self,
        target: &S,
        embed: impl Fn(&R::Elem) -> S::Elem,
        x: &S::Elem,
    ) -> S::Elem {
        let mut acc = target.zero();
        for a in self.coeffs.iter().rev() {
            acc = target.add(&target.mul(&acc, x), &embed(a));
        }
        acc
    }

    /// Minimum coefficient valuation; `None` for zero.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs
            .iter()
            .filter_map(|c| self.ring.valuation(c))
            .min()
    }

    /// Exact division by `p^k`, if every coefficient allows it.
    pub fn div_p_power(&self, k: u32) -> Option<Self> {
        let c: Option<Vec<R::Elem>> = self
            .coeffs
            .iter()
            .map(|a| self.ring.div_p_power(a, k))
            .collect();
        Some(TruncSeries {
            ring: self.ring.clone(),
            modulus: self.modulus,
            coeffs: c?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Zpn;

    #[test]
    fn binomial_series_and_shift() {
        let r = Zpn::new(5, 3);
        let s = TruncSeries::one_plus_t_pow(&r, SeriesModulus::TPow(8), 3);
        assert_eq!(s.coeffs(), &[1, 3, 3, 1, 0, 0, 0, 0]);
        let sb = s.to_s_basis();
        assert_eq!(sb, alloc::vec![0, 0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(
            TruncSeries::from_s_basis(&r, SeriesModulus::TPow(8), &sb),
            s
        );
    }

    #[test]
    fn omega_reduction() {
        let r = Zpn::new(3, 4);
        // (1+T)^3 = 1 modulo (1+T)^3 - 1
        let s = TruncSeries::one_plus_t_pow(&r, SeriesModulus::Omega(1), 3);
        assert_eq!(s, TruncSeries::one(&r, SeriesModulus::Omega(1)));
        let a = TruncSeries::one_plus_t_pow(&r, SeriesModulus::Omega(1), 2);
        let b = TruncSeries::one_plus_t_pow(&r, SeriesModulus::Omega(1), 5);
        assert_eq!(
            a.mul(&b).unwrap(),
            TruncSeries::one_plus_t_pow(&r, SeriesModulus::Omega(1), 7)
        );
    }

    #[test]
    fn operators() {
        let r = Zpn::new(5, 4);
        let m = SeriesModulus::TPow(12);
        let one_t = TruncSeries::from_i64s(&r, m, &[1, 1]);
        assert_eq!(
            one_t.d_op().unwrap(),
            one_t.with_modulus(SeriesModulus::TPow(11))
        );
        let t = TruncSeries::from_i64s(&r, m, &[0, 1]);
        assert_eq!(
            t.d_op().unwrap(),
            one_t.with_modulus(SeriesModulus::TPow(11))
        );
        assert_eq!(
            one_t.phi_op().unwrap(),
            TruncSeries::one_plus_t_pow(&r, m, 5)
        );
        let a = TruncSeries::one_plus_t_pow(&r, m, 7);
        assert_eq!(
            a.d_op().unwrap(),
            a.scale(&7).with_modulus(SeriesModulus::TPow(11))
        );
        let f = TruncSeries::from_i64s(&r, m, &[3, 1, 4, 1, 5, 9, 2, 6]);
        assert_eq!(f.mul(&f.inv().unwrap()).unwrap(), TruncSeries::one(&r, m));
    }
}
