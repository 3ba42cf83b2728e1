use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Ring;

/// The integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

/// The rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, a: i64) -> BigInt {
        BigInt::from(a)
    }
    fn from_bigint(&self, a: &BigInt) -> BigInt {
        a.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn characteristic(&self) -> Option<u64> {
        None
    }

    fn poly_mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        if let Some(out) = small_poly_mul(a, b) {
            return out;
        }
        let mut out = alloc::vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }
}

/// i128 convolution when the result provably fits.
fn small_poly_mul(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let a64: Vec<i64> = a.iter().map(|x| x.to_i64()).collect::<Option<_>>()?;
    let b64: Vec<i64> = b.iter().map(|x| x.to_i64()).collect::<Option<_>>()?;
    let ma = a64.iter().map(|x| x.unsigned_abs() as u128).max()?;
    let mb = b64.iter().map(|x| x.unsigned_abs() as u128).max()?;
    let terms = a.len().min(b.len()) as u128;
    let bound = ma.checked_mul(mb)?.checked_mul(terms)?;
    if bound >= (1u128 << 126) {
        return None;
    }
    let mut out = alloc::vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a64.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b64.iter().enumerate() {
            out[i + j] += x as i128 * y as i128;
        }
    }
    Some(out.into_iter().map(BigInt::from).collect())
}

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, a: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(a))
    }
    fn from_bigint(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn characteristic(&self) -> Option<u64> {
        None
    }
}
