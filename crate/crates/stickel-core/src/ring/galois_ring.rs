//! Galois rings GR(p^N, r) = Z/p^N[x]/(h), with h the Teichmuller lift of the
//! least primitive polynomial of degree r over F_p.

use alloc::sync::Arc;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::arith::{self, add_mod, ipow, mul_mod, sub_mod};
use super::fp_poly;
use super::{PadicRing, Ring};

#[derive(Clone, Debug)]
pub struct GaloisRing {
    p: u64,
    n: u32,
    r: usize,
    m: u64,
    /// monic, `r + 1` coefficients
    h: Arc<[u64]>,
    /// `x^(p i) mod h` for `i < r`
    frob: Arc<[Vec<u64>]>,
}

impl PartialEq for GaloisRing {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.h == other.h
    }
}

/// Product modulo a monic `h`, coefficients modulo `m`.
fn mul_mod_h(a: &[u64], b: &[u64], h: &[u64], m: u64) -> Vec<u64> {
    let r = h.len() - 1;
    let mut prod = alloc::vec![0u64; 2 * r - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, m), m);
        }
    }
    for i in (r..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        for j in 0..r {
            prod[i - r + j] = sub_mod(prod[i - r + j], mul_mod(c, h[j], m), m);
        }
    }
    prod.truncate(r);
    prod
}

fn pow_mod_h(a: &[u64], mut e: u128, h: &[u64], m: u64) -> Vec<u64> {
    let r = h.len() - 1;
    let mut acc = alloc::vec![0u64; r];
    acc[0] = 1 % m;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_h(&acc, &base, h, m);
        }
        e >>= 1;
        if e > 0 {
            base = mul_mod_h(&base, &base, h, m);
        }
    }
    acc
}

/// Teichmuller modulus: the characteristic polynomial of `xi = x^(p^(r(N-1)))`
/// in `Z/p^N[x]/(h0)`, which divides `X^(p^r - 1) - 1`.
fn teichmuller_modulus(h0: &[u64], p: u64, n: u32, m: u64) -> Vec<u64> {
    let r = h0.len() - 1;
    let mut x = alloc::vec![0u64; r];
    if r == 1 {
        x[0] = sub_mod(0, h0[0], m);
    } else {
        x[1] = 1;
    }
    let mut xi = x;
    for _ in 0..(r as u32) * (n - 1) {
        xi = pow_mod_h(&xi, p as u128, h0, m);
    }
    // prod_{j<r} (X - xi^(p^j)) with coefficients in Z/p^N[x]/(h0)
    let mut poly: Vec<Vec<u64>> = alloc::vec![{
        let mut one = alloc::vec![0u64; r];
        one[0] = 1 % m;
        one
    }];
    let mut root = xi;
    for _ in 0..r {
        let mut next = alloc::vec![alloc::vec![0u64; r]; poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            for k in 0..r {
                next[i + 1][k] = add_mod(next[i + 1][k], c[k], m);
            }
            let t = mul_mod_h(c, &root, h0, m);
            for k in 0..r {
                next[i][k] = sub_mod(next[i][k], t[k], m);
            }
        }
        poly = next;
        root = pow_mod_h(&root, p as u128, h0, m);
    }
    poly.into_iter()
        .map(|c| {
            assert!(
                c[1..].iter().all(|&v| v == 0),
                "Teichmuller polynomial has scalar coefficients"
            );
            c[0]
        })
        .collect()
}

impl GaloisRing {
    /// Panics unless `p` is prime and `p^N < 2^63`.
    pub fn new(p: u64, r: usize, n: u32) -> Self {
        assert!(arith::is_prime(p) && r >= 1 && n >= 1);
        let m = p
            .checked_pow(n)
            .filter(|&m| m < 1 << 63)
            .expect("p^N must stay below 2^63");
        let h0 = if r == 1 {
            // x - g for the least primitive root g
            alloc::vec![sub_mod(0, arith::primitive_root(p) % p, p), 1]
        } else {
            fp_poly::least_primitive(r, p)
        };
        let h = teichmuller_modulus(&h0, p, n, m);
        let mut ring = GaloisRing {
            p,
            n,
            r,
            m,
            h: h.into(),
            frob: Arc::from(Vec::new()),
        };
        let xp = ring.x_power(p as u128);
        let mut frob = Vec::with_capacity(r);
        let mut cur = ring.one();
        for _ in 0..r {
            frob.push(cur.clone());
            cur = ring.mul(&cur, &xp);
        }
        ring.frob = frob.into();
        ring
    }

    /// Smallest degree `r` with `d | p^r - 1`.
    pub fn degree_for_roots(p: u64, d: u64) -> usize {
        if d <= 1 {
            return 1;
        }
        arith::mult_order(p % d, d).expect("d prime to p") as usize
    }

    pub fn modulus_poly(&self) -> &[u64] {
        &self.h
    }

    /// `x^e`; `x` is a primitive `(p^r - 1)`-th root of unity.
    pub fn x_power(&self, e: u128) -> Vec<u64> {
        let mut x = alloc::vec![0u64; self.r];
        if self.r == 1 {
            x[0] = sub_mod(0, self.h[0], self.m);
        } else {
            x[1] = 1;
        }
        pow_mod_h(&x, e, &self.h, self.m)
    }

    fn unit_order(&self) -> u64 {
        ipow(self.p, self.r as u32) - 1
    }
}

impl Ring for GaloisRing {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        alloc::vec![0; self.r]
    }
    fn one(&self) -> Vec<u64> {
        self.from_u64(1)
    }
    fn from_i64(&self, a: i64) -> Vec<u64> {
        self.from_u64(arith::reduce_i64(a, self.m))
    }
    fn from_bigint(&self, a: &BigInt) -> Vec<u64> {
        self.from_u64(
            a.mod_floor(&BigInt::from(self.m))
                .to_u64()
                .expect("reduced"),
        )
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| add_mod(x, y, self.m))
            .collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| sub_mod(x, y, self.m))
            .collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|&x| sub_mod(0, x, self.m)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        if self.r == 1 {
            return alloc::vec![mul_mod(a[0], b[0], self.m)];
        }
        mul_mod_h(a, b, &self.h, self.m)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if !self.is_unit(a) {
            return None;
        }
        // inverse in the residue field, then Newton steps b <- b (2 - a b)
        let res = self.with_precision(1);
        let a1 = res.convert(self, a);
        let b1 = pow_mod_h(&a1, self.unit_order() as u128 - 1, &res.h, res.m);
        let mut b = self.convert(&res, &b1);
        let two = self.from_u64(2);
        let mut prec = 1;
        while prec < self.n {
            let ab = self.mul(a, &b);
            b = self.mul(&b, &self.sub(&two, &ab));
            prec *= 2;
        }
        debug_assert_eq!(self.mul(a, &b), self.one());
        Some(b)
    }
    fn characteristic(&self) -> Option<u64> {
        Some(self.m)
    }
}

impl PadicRing for GaloisRing {
    fn prime(&self) -> u64 {
        self.p
    }
    fn precision(&self) -> u32 {
        self.n
    }
    fn degree(&self) -> usize {
        self.r
    }
    fn modulus(&self) -> u64 {
        self.m
    }
    fn with_precision(&self, n: u32) -> Self {
        GaloisRing::new(self.p, self.r, n)
    }
    fn coords(&self, a: &Vec<u64>) -> Vec<u64> {
        a.clone()
    }
    fn from_coords(&self, c: &[u64]) -> Vec<u64> {
        c.iter().map(|&x| x % self.m).collect()
    }
    fn from_u64(&self, a: u64) -> Vec<u64> {
        let mut v = alloc::vec![0; self.r];
        v[0] = a % self.m;
        v
    }
    fn frobenius(&self, a: &Vec<u64>) -> Vec<u64> {
        let mut out = self.zero();
        for (c, img) in a.iter().zip(self.frob.iter()) {
            if *c == 0 {
                continue;
            }
            for k in 0..self.r {
                out[k] = add_mod(out[k], mul_mod(*c, img[k], self.m), self.m);
            }
        }
        out
    }
    fn root_of_unity(&self, d: u64) -> Option<Vec<u64>> {
        let order = self.unit_order();
        if d == 0 || order % d != 0 {
            return None;
        }
        Some(self.x_power((order / d) as u128))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn teichmuller_modulus_roots_of_unity() {
        for (p, r, n) in [(3, 2, 3), (5, 2, 3), (7, 3, 2), (2, 3, 4), (5, 1, 4)] {
            let w = GaloisRing::new(p, r, n);
            let order = ipow(p, r as u32) - 1;
            let x = w.x_power(1);
            assert_eq!(w.pow(&x, order), w.one());
            assert_eq!(w.frobenius(&x), w.pow(&x, p));
            let z = w.root_of_unity(order).unwrap();
            assert_eq!(z, x);
        }
    }

    #[test]
    fn frobenius_is_ring_automorphism_of_order_r() {
        let w = GaloisRing::new(5, 3, 3);
        let a = w.from_coords(&[3, 17, 101]);
        let b = w.from_coords(&[44, 0, 9]);
        assert_eq!(
            w.frobenius(&w.mul(&a, &b)),
            w.mul(&w.frobenius(&a), &w.frobenius(&b))
        );
        let mut c = a.clone();
        for _ in 0..3 {
            c = w.frobenius(&c);
        }
        assert_eq!(c, a);
    }

    #[test]
    fn inverses() {
        let w = GaloisRing::new(3, 2, 4);
        let a = w.from_coords(&[4, 9]);
        let b = w.inv(&a).unwrap();
        assert_eq!(w.mul(&a, &b), w.one());
        assert!(w.inv(&w.from_coords(&[3, 6])).is_none());
    }

    #[test]
    fn degree_one_matches_zpn_root() {
        use crate::ring::Zpn;
        let w = GaloisRing::new(7, 1, 3);
        let z = Zpn::new(7, 3);
        assert_eq!(w.root_of_unity(6).unwrap()[0], z.root_of_unity(6).unwrap());
        assert_eq!(
            w.log_unit(&w.from_u64(8)).unwrap()[0],
            z.log_unit(&8).unwrap()
        );
    }
}
