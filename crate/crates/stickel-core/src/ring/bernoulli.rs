//! Bernoulli numbers and polynomials as exact rationals (B_1 = -1/2).

use alloc::boxed::Box;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::race::OnceBox;

use super::arith;

/// Indices up to this bound are computed once and cached.
pub const MEMO_BOUND: usize = 200;

static TABLE: OnceBox<Vec<BigRational>> = OnceBox::new();

fn binomials(n: usize) -> Vec<BigInt> {
    let mut row = alloc::vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// `B_0..=B_n` from `sum_{k<=n} C(n+1, k) B_k = 0`.
fn compute(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        if m >= 3 && m % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        let c = binomials(m + 1);
        let mut s = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                s += BigRational::from_integer(c[k].clone()) * bk;
            }
        }
        b.push(-s / BigRational::from_integer(c[m].clone()));
    }
    b
}

fn table() -> &'static Vec<BigRational> {
    TABLE.get_or_init(|| Box::new(compute(MEMO_BOUND)))
}

pub fn bernoulli(n: usize) -> BigRational {
    if n <= MEMO_BOUND {
        table()[n].clone()
    } else {
        compute(n).pop().expect("nonempty")
    }
}

/// `B_n(x) = sum_k C(n, k) B_k x^(n-k)`.
pub fn bernoulli_poly(n: usize, x: &BigRational) -> BigRational {
    let c = binomials(n);
    let mut acc = BigRational::zero();
    let mut xp = BigRational::one();
    for k in (0..=n).rev() {
        let bk = bernoulli(k);
        if !bk.is_zero() {
            acc += BigRational::from_integer(c[k].clone()) * bk * &xp;
        }
        xp *= x;
    }
    acc
}

/// Denominator of `B_{2k}` predicted by von Staudt-Clausen.
pub fn von_staudt_denominator(two_k: u64) -> BigInt {
    arith::divisors(two_k)
        .into_iter()
        .map(|d| d + 1)
        .filter(|&p| arith::is_prime(p))
        .fold(BigInt::one(), |acc, p| acc * BigInt::from(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn examples() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(12), q(-691, 2730));
        assert_eq!(bernoulli_poly(2, &q(1, 3)), q(-1, 18));
        assert_eq!(bernoulli_poly(1, &q(3, 7)), q(3, 7) - q(1, 2));
        assert_eq!(bernoulli_poly(7, &q(0, 1)), bernoulli(7));
    }

    #[test]
    fn staudt_clausen_up_to_bound() {
        for k in 1..=MEMO_BOUND / 2 {
            let b = bernoulli(2 * k);
            assert_eq!(
                b.denom(),
                &von_staudt_denominator(2 * k as u64),
                "B_{}",
                2 * k
            );
        }
        for n in (3..MEMO_BOUND).step_by(2) {
            assert!(bernoulli(n).is_zero());
        }
    }

    #[test]
    fn beyond_memo_bound() {
        let b = bernoulli(MEMO_BOUND + 2);
        assert_eq!(b.denom(), &von_staudt_denominator(MEMO_BOUND as u64 + 2));
    }
}
