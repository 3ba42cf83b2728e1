//! Dense polynomials over a prime field F_p, little-endian, trimmed.

use alloc::vec::Vec;

use super::arith::{add_mod, inv_mod, mul_mod, sub_mod};

pub type FpPoly = Vec<u64>;

pub fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| add_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(out)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(out)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let lc_inv = inv_mod(b[db], p).expect("leading coefficient invertible");
    let mut r: FpPoly = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = alloc::vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = mul_mod(r[i], lc_inv, p);
        if c == 0 {
            continue;
        }
        q[i - db] = c;
        for j in 0..=db {
            r[i - db + j] = sub_mod(r[i - db + j], mul_mod(c, b[j], p), p);
        }
    }
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    divrem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> FpPoly {
    let a = trim(a.to_vec());
    match a.last() {
        None => a,
        Some(&lc) => {
            let inv = inv_mod(lc, p).expect("nonzero");
            a.iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

/// Monic gcd.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Extended Euclid: `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn xgcd(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1): (FpPoly, FpPoly) = (alloc::vec![1], Vec::new());
    let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), alloc::vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
        t0 = core::mem::replace(&mut t1, t2);
    }
    let lc = *r0.last().expect("not both zero");
    let inv = inv_mod(lc, p).expect("field");
    let sc = |v: &[u64]| trim(v.iter().map(|&c| mul_mod(c, inv, p)).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> FpPoly {
    rem(&mul(a, b, p), m, p)
}

pub fn powmod(a: &[u64], mut e: u128, m: &[u64], p: u64) -> FpPoly {
    let mut base = rem(a, m, p);
    let mut acc: FpPoly = rem(&[1], m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &base, m, p);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(&base, &base, m, p);
        }
    }
    acc
}

/// Ben-Or irreducibility test for a polynomial of positive degree.
pub fn is_irreducible(g: &[u64], p: u64) -> bool {
    let d = match degree(g) {
        None | Some(0) => return false,
        Some(d) => d,
    };
    let x: FpPoly = alloc::vec![0, 1];
    let mut xp = rem(&x, g, p);
    for _ in 0..d / 2 {
        xp = powmod(&xp, p as u128, g, p);
        let h = sub(&xp, &x, p);
        if gcd(g, &h, p).len() != 1 {
            return false;
        }
    }
    true
}

/// Monic polynomial of degree `d` whose lower coefficients are the base-p
/// digits of `code` (least significant digit = constant term).
pub fn from_code(code: u64, d: usize, p: u64) -> FpPoly {
    let mut c = code;
    let mut out = Vec::with_capacity(d + 1);
    for _ in 0..d {
        out.push(c % p);
        c /= p;
    }
    out.push(1);
    out
}

/// Monic polynomials of degree `d` ordered lexicographically from the
/// coefficient of `x^(d-1)` down to the constant term; returns the first
/// satisfying `pred`.
pub fn least_monic(d: usize, p: u64, mut pred: impl FnMut(&FpPoly) -> bool) -> Option<FpPoly> {
    let count = p.checked_pow(d as u32)?;
    (0..count).map(|c| from_code(c, d, p)).find(|g| pred(g))
}

pub fn least_irreducible(d: usize, p: u64) -> FpPoly {
    least_monic(d, p, |g| is_irreducible(g, p)).expect("irreducible polynomials exist")
}

/// Whether `x` generates `(F_p[x]/g)^x`, for irreducible `g`.
pub fn is_primitive(g: &[u64], p: u64) -> bool {
    let d = degree(g).unwrap_or(0);
    let order = (p as u128).pow(d as u32) - 1;
    let x: FpPoly = alloc::vec![0, 1];
    let one: FpPoly = rem(&[1], g, p);
    if powmod(&x, order, g, p) != one {
        return false;
    }
    let ord64 = u64::try_from(order).expect("field size fits u64");
    super::arith::factor(ord64)
        .iter()
        .all(|&(q, _)| powmod(&x, order / q as u128, g, p) != one)
}

pub fn least_primitive(d: usize, p: u64) -> FpPoly {
    least_monic(d, p, |g| is_irreducible(g, p) && is_primitive(g, p))
        .expect("primitive polynomials exist")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert_eq!(least_irreducible(2, 3), alloc::vec![1, 0, 1]);
        assert_eq!(least_irreducible(1, 5), alloc::vec![0, 1]);
        assert_eq!(least_irreducible(3, 2), alloc::vec![1, 1, 0, 1]);
    }

    #[test]
    fn gcd_and_division() {
        let p = 7;
        let a = mul(&[1, 1], &[3, 1], p);
        let b = mul(&[1, 1], &[5, 1], p);
        assert_eq!(gcd(&a, &b, p), alloc::vec![1, 1]);
        let (q, r) = divrem(&a, &[1, 1], p);
        assert_eq!(q, alloc::vec![3, 1]);
        assert!(r.is_empty());
    }

    #[test]
    fn bezout() {
        let p = 5;
        let a = alloc::vec![1, 0, 1];
        let b = alloc::vec![1, 1];
        let (g, s, t) = xgcd(&a, &b, p);
        assert_eq!(g, alloc::vec![1]);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), alloc::vec![1]);
    }

    #[test]
    fn primitivity() {
        // x^2 + 1 is irreducible over F_3 but x has order 4, not 8
        assert!(!is_primitive(&[1, 0, 1], 3));
        assert_eq!(least_primitive(2, 3), alloc::vec![2, 1, 1]);
    }
}
