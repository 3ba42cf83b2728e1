//! Base rings: Z, Q, Z/p^N, Galois rings, cyclotomic rings and finite fields.

use alloc::vec::Vec;
use core::fmt::Debug;
use num_bigint::BigInt;

pub mod arith;
pub mod bernoulli;
pub mod cyclo;
pub mod finite_field;
pub mod fp_poly;
pub mod galois_ring;
pub mod integers;
pub mod padic;
pub mod zpn;
pub mod zpoly;

pub use bernoulli::{bernoulli, bernoulli_poly};
pub use cyclo::{cyclo_galois, cyclo_norm, cyclotomic_reduce, CycloElt, CycloRing};
pub use finite_field::{FfElt, FiniteField};
pub use galois_ring::GaloisRing;
pub use integers::{Integers, Rationals};
pub use padic::PadicRational;
pub use zpn::Zpn;

/// A commutative ring with canonical element representatives.
///
/// Two rings compare equal exactly when their elements may be mixed.
pub trait Ring: Clone + Debug + PartialEq {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, a: i64) -> Self::Elem;
    fn from_bigint(&self, a: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Multiplicative inverse, when it exists.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Additive order of 1, if finite.
    fn characteristic(&self) -> Option<u64>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn scale_i64(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        self.mul(a, &self.from_i64(k))
    }

    /// Dense product of coefficient vectors (no reduction).
    fn poly_mul(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = alloc::vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.mul(x, y);
                out[i + j] = self.add(&out[i + j], &t);
            }
        }
        out
    }
}

/// A finite unramified p-adic coefficient ring `W = Z/p^N[x]/(h)` of residue
/// degree `r`, with `h` dividing `x^(p^r-1) - 1` so that `x` is a root of unity.
///
/// Elements have `r` coordinates in `[0, p^N)`.
pub trait PadicRing: Ring {
    fn prime(&self) -> u64;
    fn precision(&self) -> u32;
    fn degree(&self) -> usize;
    /// The same ring at another precision.
    fn with_precision(&self, n: u32) -> Self;
    fn coords(&self, a: &Self::Elem) -> Vec<u64>;
    fn from_coords(&self, c: &[u64]) -> Self::Elem;
    fn from_u64(&self, a: u64) -> Self::Elem;
    /// Arithmetic Frobenius (identity when `r = 1`).
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem;
    /// The canonical primitive `d`-th root of unity, if `d | p^r - 1`.
    fn root_of_unity(&self, d: u64) -> Option<Self::Elem>;

    fn modulus(&self) -> u64 {
        arith::ipow(self.prime(), self.precision())
    }

    /// p-adic valuation; `None` for zero.
    fn valuation(&self, a: &Self::Elem) -> Option<u32> {
        let p = self.prime();
        self.coords(a)
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| arith::val(c, p))
            .min()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.valuation(a) == Some(0)
    }

    /// Reinterprets an element of `from` (same `p`, `h`) at this precision:
    /// reduction when lowering, representative lift when raising.
    fn convert(&self, from: &Self, a: &Self::Elem) -> Self::Elem {
        let m = self.modulus();
        let c: Vec<u64> = from.coords(a).iter().map(|&x| x % m).collect();
        self.from_coords(&c)
    }

    /// `a = p^k q + r` with every coordinate of `r` in `[0, p^k)`.
    fn divrem_p_power(&self, a: &Self::Elem, k: u32) -> (Self::Elem, Self::Elem) {
        let pk = arith::ipow(self.prime(), k);
        let c = self.coords(a);
        let q: Vec<u64> = c.iter().map(|&x| x / pk).collect();
        let r: Vec<u64> = c.iter().map(|&x| x % pk).collect();
        (self.from_coords(&q), self.from_coords(&r))
    }

    /// Exact division by `p^k`; `None` unless `p^k | a`.
    fn div_p_power(&self, a: &Self::Elem, k: u32) -> Option<Self::Elem> {
        let (q, r) = self.divrem_p_power(a, k);
        if self.is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }

    fn mul_p_power(&self, a: &Self::Elem, k: u32) -> Self::Elem {
        if k >= self.precision() {
            return self.zero();
        }
        self.mul(a, &self.from_u64(arith::ipow(self.prime(), k)))
    }

    /// Teichmuller representative of a unit.
    fn teichmuller_lift(&self, a: &Self::Elem) -> Self::Elem {
        let mut t = a.clone();
        let steps = self.degree() as u32 * self.precision().saturating_sub(1);
        for _ in 0..steps {
            t = self.pow(&t, self.prime());
        }
        t
    }

    /// Iwasawa logarithm of a unit (kills roots of unity).
    fn log_unit(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if !self.is_unit(a) {
            return None;
        }
        let p = self.prime();
        let n = self.precision();
        let e = arith::ipow(p, self.degree() as u32) - 1;
        // terms z^k/k with v(z) >= 1 stop mattering once k - v_p(k) >= n
        let mut kmax = 1u64;
        while (kmax as i64) - (log_floor(kmax, p) as i64) < n as i64 {
            kmax += 1;
        }
        let extra = log_floor(kmax, p) + 1;
        let hi = self.with_precision(n + extra);
        let u = hi.pow(&hi.convert(self, a), e);
        let z = hi.sub(&u, &hi.one());
        let mut acc = hi.zero();
        let mut zk = hi.one();
        for k in 1..=kmax {
            zk = hi.mul(&zk, &z);
            let v = arith::val(k, p);
            let unit = k / arith::ipow(p, v);
            let num = hi.mul(&zk, &hi.inv(&hi.from_u64(unit)).expect("unit"));
            let term = hi.div_p_power(&num, v).expect("z^k divisible by k");
            acc = if k % 2 == 1 {
                hi.add(&acc, &term)
            } else {
                hi.sub(&acc, &term)
            };
        }
        let einv = hi.inv(&hi.from_u64(e)).expect("p^r - 1 is a unit");
        let l = hi.mul(&acc, &einv);
        Some(self.convert(&hi, &l))
    }
}

/// `floor(log_p(k))` for `k >= 1`.
pub fn log_floor(mut k: u64, p: u64) -> u32 {
    let mut e = 0;
    while k >= p {
        k /= p;
        e += 1;
    }
    e
}
