//! The finite field F_q = F_l[y]/g(y) with g the least monic irreducible.

use alloc::vec::Vec;

use super::arith::{self, add_mod, mul_mod, sub_mod};
use super::fp_poly::{self, FpPoly};

/// Coordinates on the basis `1, y, ..., y^(f-1)`.
pub type FfElt = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    l: u64,
    f: usize,
    q: u64,
    modulus: FpPoly,
    generator: FfElt,
    order_factors: Vec<u64>,
    basis_traces: Vec<u64>,
}

impl FiniteField {
    /// Panics unless `l` is prime and `l^f` fits in 63 bits.
    pub fn new(l: u64, f: usize) -> Self {
        assert!(arith::is_prime(l), "{l} is not prime");
        assert!(f >= 1);
        let q = l
            .checked_pow(f as u32)
            .filter(|&q| q < 1 << 63)
            .expect("field too large");
        let modulus = fp_poly::least_irreducible(f, l);
        let order_factors: Vec<u64> = arith::factor(q - 1).into_iter().map(|(p, _)| p).collect();
        let mut field = FiniteField {
            l,
            f,
            q,
            modulus,
            generator: Vec::new(),
            order_factors,
            basis_traces: Vec::new(),
        };
        field.basis_traces = (0..f)
            .map(|i| {
                let mut e = field.zero();
                e[i] = 1;
                field.trace_slow(&e)
            })
            .collect();
        let generator = (1..q)
            .map(|code| field.decode(code))
            .find(|x| field.is_generator(x))
            .expect("cyclic multiplicative group");
        field.generator = generator;
        field
    }

    pub fn characteristic(&self) -> u64 {
        self.l
    }
    pub fn degree(&self) -> usize {
        self.f
    }
    pub fn order(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }
    /// The least element (by code) of multiplicative order `q - 1`.
    pub fn generator(&self) -> &FfElt {
        &self.generator
    }

    pub fn zero(&self) -> FfElt {
        alloc::vec![0; self.f]
    }
    pub fn one(&self) -> FfElt {
        self.from_int(1)
    }
    pub fn from_int(&self, a: i64) -> FfElt {
        let mut e = self.zero();
        e[0] = arith::reduce_i64(a, self.l);
        e
    }
    pub fn is_zero(&self, a: &FfElt) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// Integer code `sum a_i l^i`, a bijection onto `[0, q)`.
    pub fn encode(&self, a: &FfElt) -> u64 {
        a.iter().rev().fold(0, |acc, &c| acc * self.l + c)
    }
    pub fn decode(&self, mut code: u64) -> FfElt {
        let mut e = self.zero();
        for c in e.iter_mut() {
            *c = code % self.l;
            code /= self.l;
        }
        e
    }

    pub fn add(&self, a: &FfElt, b: &FfElt) -> FfElt {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| add_mod(x, y, self.l))
            .collect()
    }
    pub fn sub(&self, a: &FfElt, b: &FfElt) -> FfElt {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| sub_mod(x, y, self.l))
            .collect()
    }
    pub fn neg(&self, a: &FfElt) -> FfElt {
        a.iter().map(|&x| sub_mod(0, x, self.l)).collect()
    }
    pub fn scale(&self, a: &FfElt, k: u64) -> FfElt {
        a.iter().map(|&x| mul_mod(x, k, self.l)).collect()
    }

    pub fn mul(&self, a: &FfElt, b: &FfElt) -> FfElt {
        let f = self.f;
        let l = self.l;
        let mut prod = alloc::vec![0u64; 2 * f - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, l), l);
            }
        }
        for i in (f..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..f {
                prod[i - f + j] = sub_mod(prod[i - f + j], mul_mod(c, self.modulus[j], l), l);
            }
        }
        prod.truncate(f);
        prod
    }

    pub fn pow(&self, a: &FfElt, mut e: u64) -> FfElt {
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

    pub fn inv(&self, a: &FfElt) -> Option<FfElt> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.q - 2))
        }
    }

    pub fn frobenius(&self, a: &FfElt) -> FfElt {
        self.pow(a, self.l)
    }

    fn trace_slow(&self, a: &FfElt) -> u64 {
        let mut acc = self.zero();
        let mut c = a.clone();
        for _ in 0..self.f {
            acc = self.add(&acc, &c);
            c = self.frobenius(&c);
        }
        debug_assert!(acc[1..].iter().all(|&x| x == 0));
        acc[0]
    }

    /// Absolute trace to F_l, linear in the coordinates.
    pub fn trace(&self, a: &FfElt) -> u64 {
        a.iter().zip(&self.basis_traces).fold(0, |acc, (&x, &t)| {
            add_mod(acc, mul_mod(x, t, self.l), self.l)
        })
    }

    pub fn is_generator(&self, a: &FfElt) -> bool {
        if self.is_zero(a) {
            return false;
        }
        if self.q == 2 {
            return true;
        }
        self.order_factors
            .iter()
            .all(|&r| self.pow(a, (self.q - 1) / r) != self.one())
    }

    pub fn mult_order(&self, a: &FfElt) -> u64 {
        let mut ord = self.q - 1;
        for &r in &self.order_factors {
            while ord % r == 0 && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        ord
    }

    /// Minimal polynomial over F_l (monic), from the Frobenius orbit.
    pub fn min_poly(&self, a: &FfElt) -> FpPoly {
        let mut orbit: Vec<FfElt> = alloc::vec![a.clone()];
        loop {
            let next = self.frobenius(orbit.last().expect("nonempty"));
            if next == orbit[0] {
                break;
            }
            orbit.push(next);
        }
        // product of (X - root) with coefficients in F_q
        let mut poly: Vec<FfElt> = alloc::vec![self.one()];
        for root in &orbit {
            let mut next = alloc::vec![self.zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = self.add(&next[i + 1], c);
                next[i] = self.sub(&next[i], &self.mul(c, root));
            }
            poly = next;
        }
        poly.iter()
            .map(|c| {
                debug_assert!(c[1..].iter().all(|&x| x == 0));
                c[0]
            })
            .collect()
    }

    /// Evaluates an F_l-polynomial at a field element.
    pub fn eval(&self, poly: &[u64], a: &FfElt) -> FfElt {
        poly.iter().rev().fold(self.zero(), |acc, &c| {
            let t = self.mul(&acc, a);
            self.add(&t, &self.from_int(c as i64))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        for (l, f) in [(2, 1), (2, 3), (3, 2), (5, 2), (7, 1), (2, 4), (3, 3)] {
            let k = FiniteField::new(l, f);
            assert_eq!(k.mult_order(k.generator()), k.order() - 1);
            for code in 0..k.order() {
                let x = k.decode(code);
                assert_eq!(k.encode(&x), code);
                assert_eq!(k.pow(&x, k.order()), x);
                assert_eq!(k.trace(&x), k.trace_slow(&x));
                if !k.is_zero(&x) {
                    assert_eq!(k.mul(&x, &k.inv(&x).unwrap()), k.one());
                }
            }
        }
    }

    #[test]
    fn min_poly_divides_modulus_degree() {
        let k = FiniteField::new(3, 4);
        let y = k.decode(3);
        let h = k.min_poly(&y);
        assert_eq!(k.eval(&h, &y), k.zero());
        assert_eq!(4 % (h.len() - 1), 0);
    }
}
