use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::arith;

/// A rational number viewed p-adically: `value = p^v u` with `u` a p-unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicRational {
    pub value: BigRational,
    pub p: u64,
    pub precision: u32,
}

/// p-adic valuation of a nonzero integer.
pub fn val_bigint(a: &BigInt, p: u64) -> u32 {
    debug_assert!(!a.is_zero());
    let pb = BigInt::from(p);
    let mut a = a.abs();
    let mut v = 0;
    loop {
        let (q, r) = a.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        a = q;
        v += 1;
    }
}

/// p-adic valuation of a rational; `None` for zero.
pub fn val_rational(a: &BigRational, p: u64) -> Option<i64> {
    if a.is_zero() {
        return None;
    }
    Some(val_bigint(a.numer(), p) as i64 - val_bigint(a.denom(), p) as i64)
}

/// Image of a p-integral rational in Z/m for `m` a power of `p`.
pub fn reduce_rational(a: &BigRational, m: u64) -> Option<u64> {
    let mb = BigInt::from(m);
    let d = a.denom().mod_floor(&mb).to_u64()?;
    let dinv = arith::inv_mod(d, m)?;
    let n = a.numer().mod_floor(&mb).to_u64()?;
    Some(arith::mul_mod(n, dinv, m))
}

impl PadicRational {
    pub fn new(value: BigRational, p: u64, precision: u32) -> Self {
        PadicRational {
            value,
            p,
            precision,
        }
    }

    pub fn valuation(&self) -> Option<i64> {
        val_rational(&self.value, self.p)
    }

    /// Residue mod p^N when the value is p-integral.
    pub fn reduce(&self) -> Option<u64> {
        reduce_rational(&self.value, arith::ipow(self.p, self.precision))
    }

    pub fn mul(&self, other: &Self) -> Self {
        PadicRational::new(
            &self.value * &other.value,
            self.p,
            self.precision.min(other.precision),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn valuations() {
        let x = PadicRational::new(q(50, 3), 5, 3);
        assert_eq!(x.valuation(), Some(2));
        let y = PadicRational::new(q(1, 5), 5, 3);
        assert_eq!(x.mul(&y).valuation(), Some(1));
        assert_eq!(y.reduce(), None);
        assert_eq!(PadicRational::new(q(1, 2), 5, 2).reduce(), Some(13));
    }
}
