use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::arith::{self, add_mod, inv_mod, ipow, mul_mod, sub_mod};
use super::{PadicRing, Ring};

/// The ring Z/p^N with elements stored in `[0, p^N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zpn {
    p: u64,
    n: u32,
    m: u64,
}

impl Zpn {
    /// Panics unless `p` is prime and `p^n < 2^63`.
    pub fn new(p: u64, n: u32) -> Self {
        assert!(arith::is_prime(p), "{p} is not prime");
        assert!(n >= 1, "precision must be positive");
        let m = p
            .checked_pow(n)
            .filter(|&m| m < 1 << 63)
            .expect("p^N must stay below 2^63");
        Zpn { p, n, m }
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        arith::reduce_i64(a, self.m)
    }

    /// Signed representative in `(-p^N/2, p^N/2]`.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.m / 2 {
            a as i64 - self.m as i64
        } else {
            a as i64
        }
    }
}

impl Ring for Zpn {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.m
    }
    fn from_i64(&self, a: i64) -> u64 {
        self.reduce_i64(a)
    }
    fn from_bigint(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.m))
            .to_u64()
            .expect("reduced")
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        add_mod(*a, *b, self.m)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.m)
    }
    fn neg(&self, a: &u64) -> u64 {
        sub_mod(0, *a, self.m)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.m)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.m)
    }
    fn characteristic(&self) -> Option<u64> {
        Some(self.m)
    }
    fn pow(&self, a: &u64, e: u64) -> u64 {
        arith::pow_mod(*a, e, self.m)
    }

    fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let len = a.len() + b.len() - 1;
        if self.m < 1 << 32 {
            // products fit in 64 bits, so u128 accumulators never overflow
            let mut acc = alloc::vec![0u128; len];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    acc[i + j] += (x * y) as u128;
                }
            }
            acc.into_iter()
                .map(|s| (s % self.m as u128) as u64)
                .collect()
        } else {
            let mut out = alloc::vec![0u64; len];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    out[i + j] = add_mod(out[i + j], mul_mod(x, y, self.m), self.m);
                }
            }
            out
        }
    }
}

impl PadicRing for Zpn {
    fn prime(&self) -> u64 {
        self.p
    }
    fn precision(&self) -> u32 {
        self.n
    }
    fn degree(&self) -> usize {
        1
    }
    fn modulus(&self) -> u64 {
        self.m
    }
    fn with_precision(&self, n: u32) -> Self {
        Zpn::new(self.p, n)
    }
    fn coords(&self, a: &u64) -> Vec<u64> {
        alloc::vec![*a]
    }
    fn from_coords(&self, c: &[u64]) -> u64 {
        c[0] % self.m
    }
    fn from_u64(&self, a: u64) -> u64 {
        a % self.m
    }
    fn frobenius(&self, a: &u64) -> u64 {
        *a
    }
    fn root_of_unity(&self, d: u64) -> Option<u64> {
        if d == 0 || (self.p - 1) % d != 0 {
            return None;
        }
        let g = self.teichmuller_lift(&arith::primitive_root(self.p));
        Some(arith::pow_mod(g, (self.p - 1) / d, self.m))
    }
    fn valuation(&self, a: &u64) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(arith::val(*a, self.p))
        }
    }
    fn divrem_p_power(&self, a: &u64, k: u32) -> (u64, u64) {
        let pk = ipow(self.p, k);
        (a / pk, a % pk)
    }
    fn teichmuller_lift(&self, a: &u64) -> u64 {
        arith::pow_mod(*a, ipow(self.p, self.n - 1), self.m)
    }
    fn convert(&self, from: &Self, a: &u64) -> u64 {
        debug_assert_eq!(from.p, self.p);
        a % self.m
    }
}

/// Teichmuller representative of `a` in Z/p^N: the limit of `a^(p^k)`.
pub fn teichmuller(a: i64, p: u64, n: u32) -> crate::Result<u64> {
    let r = Zpn::new(p, n);
    let a = r.reduce_i64(a);
    if a % p == 0 {
        return Err(crate::Error::NotCoprime { a: a as i64, m: p });
    }
    Ok(r.teichmuller_lift(&a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn teichmuller_examples() {
        assert_eq!(teichmuller(1, 5, 3).unwrap(), 1);
        assert_eq!(teichmuller(2, 5, 2).unwrap(), 7);
        assert!(teichmuller(10, 5, 2).is_err());
        let (p, n) = (7, 4);
        for a in 1..7i64 {
            for b in 1..7i64 {
                let r = Zpn::new(p, n);
                let lhs = r.mul(
                    &teichmuller(a, p, n).unwrap(),
                    &teichmuller(b, p, n).unwrap(),
                );
                assert_eq!(lhs, teichmuller(a * b, p, n).unwrap());
            }
        }
    }

    #[test]
    fn log_kills_roots_and_is_additive() {
        let r = Zpn::new(5, 4);
        let w = teichmuller(2, 5, 4).unwrap();
        assert_eq!(r.log_unit(&w), Some(0));
        let a = 6u64;
        let b = 11u64;
        let la = r.log_unit(&a).unwrap();
        let lb = r.log_unit(&b).unwrap();
        assert_eq!(r.log_unit(&r.mul(&a, &b)).unwrap(), r.add(&la, &lb));
        // log(1+5) = 5 - 25/2 + 125/3 - ... mod 5^4, summed with exact rationals
        assert_eq!(r.log_unit(&6).unwrap(), 555);
    }
}
