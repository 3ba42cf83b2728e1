//! Integer polynomials: resultants over Z and Hensel lifting modulo p^K.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp_poly;

pub type ZPoly = Vec<BigInt>;

pub fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn deg(a: &[BigInt]) -> usize {
    a.len() - 1
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(deg a - deg b + 1) a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = deg(b);
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut e = deg(a) + 1 - db;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for j in 0..=db {
            r[dr - db + j] -= &lr * &b[j];
        }
        r = trim(r);
        e -= 1;
    }
    let f = num_traits::pow(lb.clone(), e);
    r.iter().map(|c| c * &f).collect()
}

/// Resultant over Z by the subresultant algorithm.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let mut s = BigInt::one();
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
        core::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        return s * num_traits::pow(b[0].clone(), deg(&a));
    }
    let ca = content(&a);
    let cb = content(&b);
    let mut t = num_traits::pow(ca.clone(), deg(&b)) * num_traits::pow(cb.clone(), deg(&a));
    t *= &s;
    a = a.iter().map(|c| c / &ca).collect();
    b = b.iter().map(|c| c / &cb).collect();
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    let mut sign = BigInt::one();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        a = b;
        let div = &g * num_traits::pow(h.clone(), delta);
        b = r.iter().map(|c| c / &div).collect();
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if deg(&b) == 0 {
            let da = deg(&a);
            let lb = b[0].clone();
            let hh = if da == 0 {
                h
            } else {
                num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
            };
            return sign * t * hh;
        }
    }
}

fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

pub fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out.iter().map(|c| modp(c, m)).collect())
}

/// Remainder modulo a monic polynomial, coefficients reduced mod `m`.
pub fn rem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let db = deg(b);
    debug_assert!(b[db].is_one());
    let mut r: ZPoly = a.iter().map(|c| modp(c, m)).collect();
    for i in (db..r.len()).rev() {
        let c = r[i].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            r[i - db + j] = modp(&(&r[i - db + j] - &c * &b[j]), m);
        }
    }
    r.truncate(db);
    trim(r)
}

fn div_monic_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = deg(b);
    let mut r: ZPoly = a.iter().map(|c| modp(c, m)).collect();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = alloc::vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i].clone();
        q[i - db] = c.clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            r[i - db + j] = modp(&(&r[i - db + j] - &c * &b[j]), m);
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn to_fp(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    fp_poly::trim(
        a.iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced"))
            .collect(),
    )
}

fn from_fp(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts a coprime factorization `f = g0 h0 mod p` (`f`, `g0`, `h0` monic) to
/// `f = g h mod p^k`.
pub fn hensel_lift(f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (one, _s, t) = fp_poly::xgcd(g0, h0, p);
    assert_eq!(one, alloc::vec![1], "factors must be coprime mod p");
    let pb = BigInt::from(p);
    let mut g = from_fp(g0);
    let mut h = from_fp(h0);
    let mut pk = pb.clone();
    for _ in 1..k {
        let next = &pk * &pb;
        let gh = mul_mod(&g, &h, &next);
        let n = f.len().max(gh.len());
        let diff: ZPoly = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = gh.get(i).cloned().unwrap_or_default();
                modp(&(a - b), &next)
            })
            .collect();
        debug_assert!(diff.iter().all(|c| (c % &pk).is_zero()));
        let e: ZPoly = diff.iter().map(|c| c / &pk).collect();
        let e = to_fp(&e, p);
        // g dh + h dg = e mod p with deg dg < deg g, deg dh < deg h
        let dg = fp_poly::rem(&fp_poly::mul(&t, &e, p), g0, p);
        let rest = fp_poly::sub(&e, &fp_poly::mul(h0, &dg, p), p);
        let (dh, r) = fp_poly::divrem(&rest, g0, p);
        debug_assert!(r.is_empty());
        let lift = |base: &ZPoly, d: &[u64]| -> ZPoly {
            let n = base.len().max(d.len());
            trim(
                (0..n)
                    .map(|i| {
                        let a = base.get(i).cloned().unwrap_or_default();
                        let b = BigInt::from(*d.get(i).unwrap_or(&0));
                        modp(&(a + &pk * b), &next)
                    })
                    .collect(),
            )
        };
        g = lift(&g, &dg);
        h = lift(&h, &dh);
        pk = next;
    }
    (g, h)
}

/// Quotient of exact division by a monic polynomial modulo `m`.
pub fn div_exact_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Option<ZPoly> {
    let (q, r) = div_monic_mod(a, b, m);
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

pub fn is_zero_mod(a: &[BigInt], m: &BigInt) -> bool {
    a.iter().all(|c| modp(c, m).is_zero())
}

pub fn max_abs(a: &[BigInt]) -> BigInt {
    a.iter().map(|c| c.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_resultants() {
        // Res(x^2+x+1, x+3) = 3^2 - 3 + 1
        assert_eq!(resultant(&z(&[1, 1, 1]), &z(&[3, 1])), BigInt::from(7));
        assert_eq!(
            resultant(&z(&[1, 1, 1, 1, 1]), &z(&[1, -1])),
            BigInt::from(5)
        );
        assert_eq!(resultant(&z(&[-1, 0, 1]), &z(&[1, 1])), BigInt::zero());
        assert_eq!(resultant(&z(&[2]), &z(&[1, 0, 1])), BigInt::from(4));
    }

    #[test]
    fn lift_cyclotomic_factor() {
        // Phi_3 = (x - 2)(x - 4) mod 7
        let f = z(&[1, 1, 1]);
        let (g, h) = hensel_lift(&f, &[5, 1], &[3, 1], 7, 6);
        let m = BigInt::from(7u64.pow(6));
        let prod = mul_mod(&g, &h, &m);
        assert_eq!(prod, f);
    }
}
