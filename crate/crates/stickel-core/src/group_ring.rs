//! Group rings of finite abelian groups labeled by residues prime to a modulus.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::ring::arith;
use crate::ring::{Ring, Zpn};
use crate::{Error, Result};

/// A subgroup of `(Z/cZ)^x`, with `sigma_a sigma_b = sigma_{ab mod c}`.
///
/// `kappa_modulus`, when present, reads the cyclotomic character as
/// `kappa(sigma_a) = a mod kappa_modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisGroup {
    c: u64,
    elements: Vec<u64>,
    index: Vec<u32>,
    kappa_modulus: Option<u64>,
}

const ABSENT: u32 = u32::MAX;

impl GaloisGroup {
    /// The full unit group `(Z/cZ)^x`.
    pub fn units(c: u64) -> Arc<Self> {
        Arc::new(Self::build(c, arith::units(c)))
    }

    /// `(Z/cZ)^x` with `kappa(sigma_a) = a mod kappa_modulus`.
    pub fn units_with_kappa(c: u64, kappa_modulus: u64) -> Result<Arc<Self>> {
        let g = Self::build(c, arith::units(c));
        Ok(Arc::new(g.with_kappa(kappa_modulus)?))
    }

    /// A subgroup given by its elements; checks closure.
    pub fn subgroup(c: u64, mut elements: Vec<u64>) -> Result<Arc<Self>> {
        elements.iter_mut().for_each(|a| *a %= c.max(1));
        elements.sort_unstable();
        elements.dedup();
        let g = Self::build(c, elements);
        let one = 1 % c.max(1);
        if g.index_of(one).is_none() {
            return Err(crate::invalid!("subgroup must contain 1"));
        }
        for &a in &g.elements {
            if arith::gcd(a, c) != 1 && c > 1 {
                return Err(Error::NotCoprime { a: a as i64, m: c });
            }
            for &b in &g.elements {
                if g.index_of(arith::mul_mod(a, b, c.max(1))).is_none() {
                    return Err(crate::invalid!(
                        "elements are not closed under multiplication mod {c}"
                    ));
                }
            }
        }
        Ok(Arc::new(g))
    }

    fn build(c: u64, elements: Vec<u64>) -> Self {
        assert!(c >= 1);
        let mut index = alloc::vec![ABSENT; c as usize];
        for (i, &a) in elements.iter().enumerate() {
            index[a as usize] = i as u32;
        }
        GaloisGroup {
            c,
            elements,
            index,
            kappa_modulus: None,
        }
    }

    pub fn with_kappa(mut self, kappa_modulus: u64) -> Result<Self> {
        if kappa_modulus == 0 || self.c % kappa_modulus != 0 {
            return Err(Error::KappaUndefined(alloc::format!(
                "kappa modulus {kappa_modulus} must divide {}",
                self.c
            )));
        }
        self.kappa_modulus = Some(kappa_modulus);
        Ok(self)
    }

    pub fn modulus(&self) -> u64 {
        self.c
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }
    pub fn kappa_modulus(&self) -> Option<u64> {
        self.kappa_modulus
    }

    pub fn index_of(&self, a: u64) -> Option<usize> {
        let a = a % self.c;
        match self.index[a as usize] {
            ABSENT => None,
            i => Some(i as usize),
        }
    }

    /// Index of a signed residue, e.g. `-1`.
    pub fn index_of_i64(&self, a: i64) -> Option<usize> {
        self.index_of(arith::reduce_i64(a, self.c))
    }

    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        let prod = arith::mul_mod(self.elements[i], self.elements[j], self.c);
        self.index_of(prod).expect("closed under multiplication")
    }

    pub fn inv_index(&self, i: usize) -> usize {
        if self.c == 1 {
            return i;
        }
        let inv = arith::inv_mod(self.elements[i], self.c).expect("unit");
        self.index_of(inv).expect("closed under inversion")
    }

    /// Whether reduction mod `target.modulus()` maps this group into `target`.
    pub fn maps_onto(&self, target: &GaloisGroup) -> bool {
        let d = target.c;
        self.c % d == 0
            && self
                .elements
                .iter()
                .all(|&a| target.index_of(a % d).is_some())
    }
}

/// Finitely supported map `sigma_a -> coefficient`, stored densely in the
/// order of `group.elements()`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRingElt<R: Ring> {
    group: Arc<GaloisGroup>,
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> GroupRingElt<R> {
    pub fn zero(group: &Arc<GaloisGroup>, ring: &R) -> Self {
        GroupRingElt {
            group: group.clone(),
            ring: ring.clone(),
            coeffs: alloc::vec![ring.zero(); group.order()],
        }
    }

    /// `sigma_a`.
    pub fn sigma(group: &Arc<GaloisGroup>, ring: &R, a: i64) -> Result<Self> {
        let i = group.index_of_i64(a).ok_or(Error::NotCoprime {
            a,
            m: group.modulus(),
        })?;
        let mut x = Self::zero(group, ring);
        x.coeffs[i] = ring.one();
        Ok(x)
    }

    pub fn one(group: &Arc<GaloisGroup>, ring: &R) -> Self {
        Self::sigma(group, ring, 1).expect("identity")
    }

    /// Coefficients listed in the order of `group.elements()`.
    pub fn from_coeffs(group: &Arc<GaloisGroup>, ring: &R, coeffs: Vec<R::Elem>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(crate::invalid!(
                "expected {} coefficients, got {}",
                group.order(),
                coeffs.len()
            ));
        }
        Ok(GroupRingElt {
            group: group.clone(),
            ring: ring.clone(),
            coeffs,
        })
    }

    /// Builds `sum_a f(a) sigma_a`.
    pub fn from_fn(group: &Arc<GaloisGroup>, ring: &R, mut f: impl FnMut(u64) -> R::Elem) -> Self {
        let coeffs = group.elements().iter().map(|&a| f(a)).collect();
        GroupRingElt {
            group: group.clone(),
            ring: ring.clone(),
            coeffs,
        }
    }

    /// The norm element `sum_a sigma_a`.
    pub fn norm_element(group: &Arc<GaloisGroup>, ring: &R) -> Self {
        Self::from_fn(group, ring, |_| ring.one())
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }
    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }
    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    /// Coefficient of `sigma_a` (zero outside the group).
    pub fn coeff(&self, a: i64) -> R::Elem {
        match self.group.index_of_i64(a) {
            Some(i) => self.coeffs[i].clone(),
            None => self.ring.zero(),
        }
    }

    /// `(a, coefficient)` pairs with nonzero coefficient.
    pub fn support(&self) -> Vec<(u64, R::Elem)> {
        self.group
            .elements()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(&a, c)| (a, c.clone()))
            .collect()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.group, &other.group) && *self.group != *other.group {
            return Err(Error::GroupMismatch);
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(GroupRingElt {
            coeffs,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(GroupRingElt {
            coeffs,
            ..self.clone()
        })
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.neg(a)).collect();
        GroupRingElt {
            coeffs,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        GroupRingElt {
            coeffs,
            ..self.clone()
        }
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let g = &self.group;
        let mut out = alloc::vec![self.ring.zero(); g.order()];
        for (i, x) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(x) {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if self.ring.is_zero(y) {
                    continue;
                }
                let k = g.mul_index(i, j);
                out[k] = self.ring.add(&out[k], &self.ring.mul(x, y));
            }
        }
        Ok(GroupRingElt {
            coeffs: out,
            ..self.clone()
        })
    }

    /// `sigma_b * x`, a permutation of coefficients.
    pub fn mul_sigma(&self, b: i64) -> Result<Self> {
        let g = &self.group;
        let j = g.index_of_i64(b).ok_or(Error::NotCoprime {
            a: b,
            m: g.modulus(),
        })?;
        let mut out = alloc::vec![self.ring.zero(); g.order()];
        for (i, x) in self.coeffs.iter().enumerate() {
            out[g.mul_index(i, j)] = x.clone();
        }
        Ok(GroupRingElt {
            coeffs: out,
            ..self.clone()
        })
    }

    /// The image under `sigma_a -> sigma_a^{-1}`.
    pub fn invert_group(&self) -> Self {
        let g = &self.group;
        let mut out = alloc::vec![self.ring.zero(); g.order()];
        for (i, x) in self.coeffs.iter().enumerate() {
            out[g.inv_index(i)] = x.clone();
        }
        GroupRingElt {
            coeffs: out,
            ..self.clone()
        }
    }

    pub fn augmentation(&self) -> R::Elem {
        self.coeffs
            .iter()
            .fold(self.ring.zero(), |acc, c| self.ring.add(&acc, c))
    }

    /// Pushforward along reduction modulo `target.modulus()`.
    pub fn restrict(&self, target: &Arc<GaloisGroup>) -> Result<Self> {
        if !self.group.maps_onto(target) {
            return Err(Error::BadQuotient {
                from: self.group.modulus(),
                to: target.modulus(),
            });
        }
        let d = target.modulus();
        let mut out = alloc::vec![self.ring.zero(); target.order()];
        for (&a, x) in self.group.elements().iter().zip(&self.coeffs) {
            let k = target.index_of(a % d).expect("checked");
            out[k] = self.ring.add(&out[k], x);
        }
        Ok(GroupRingElt {
            group: target.clone(),
            ring: self.ring.clone(),
            coeffs: out,
        })
    }

    /// `kappa(sigma_a)` in the base ring; requires the ring characteristic to
    /// divide the kappa modulus so that the value is well defined.
    fn kappa_values(&self) -> Result<Vec<R::Elem>> {
        let km = self
            .group
            .kappa_modulus()
            .ok_or_else(|| Error::KappaUndefined("group carries no kappa modulus".into()))?;
        if let Some(ch) = self.ring.characteristic() {
            if km % ch != 0 {
                return Err(Error::KappaUndefined(alloc::format!(
                    "characteristic {ch} does not divide kappa modulus {km}"
                )));
            }
        }
        Ok(self
            .group
            .elements()
            .iter()
            .map(|&a| self.ring.from_i64((a % km) as i64))
            .collect())
    }

    /// The involution `sigma -> kappa(sigma) sigma^{-1}`, extended linearly.
    pub fn sharp(&self) -> Result<Self> {
        let kappa = self.kappa_values()?;
        let g = &self.group;
        let mut out = alloc::vec![self.ring.zero(); g.order()];
        for (i, x) in self.coeffs.iter().enumerate() {
            out[g.inv_index(i)] = self.ring.mul(x, &kappa[i]);
        }
        Ok(GroupRingElt {
            coeffs: out,
            ..self.clone()
        })
    }

    /// `M_m(x) = sum_a x_a kappa(sigma_a)^m`.
    pub fn moment(&self, m: u64) -> Result<R::Elem> {
        let kappa = self.kappa_values()?;
        Ok(self
            .coeffs
            .iter()
            .zip(&kappa)
            .fold(self.ring.zero(), |acc, (x, k)| {
                self.ring.add(&acc, &self.ring.mul(x, &self.ring.pow(k, m)))
            }))
    }

    /// Same element with coefficients mapped into another ring.
    pub fn map_ring<S: Ring>(&self, ring: &S, f: impl Fn(&R::Elem) -> S::Elem) -> GroupRingElt<S> {
        GroupRingElt {
            group: self.group.clone(),
            ring: ring.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

pub fn gr_mul<R: Ring>(x: &GroupRingElt<R>, y: &GroupRingElt<R>) -> Result<GroupRingElt<R>> {
    x.mul(y)
}

pub fn gr_restrict<R: Ring>(
    x: &GroupRingElt<R>,
    target: &Arc<GaloisGroup>,
) -> Result<GroupRingElt<R>> {
    x.restrict(target)
}

pub fn gr_sharp<R: Ring>(x: &GroupRingElt<R>) -> Result<GroupRingElt<R>> {
    x.sharp()
}

pub fn gr_moment<R: Ring>(x: &GroupRingElt<R>, m: u64) -> Result<R::Elem> {
    x.moment(m)
}

pub fn gr_norm_element<R: Ring>(group: &Arc<GaloisGroup>, ring: &R) -> GroupRingElt<R> {
    GroupRingElt::norm_element(group, ring)
}

/// The splitting `(Z/f p^(n+1))^x = Delta x Gamma_n` for odd `p` prime to `f`,
/// with `Delta = (Z/f p)^x` (via reduction) and `Gamma_n` cyclic of order
/// `p^n` generated by `gamma_0 = sigma_{1+p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSplit {
    p: u64,
    f: u64,
    n: u32,
    /// discrete log of `(1+p)^k mod p^(n+1)`, indexed by residue
    gamma_log: Vec<u32>,
}

impl TowerSplit {
    pub fn new(p: u64, f: u64, n: u32) -> Result<Self> {
        if p == 2 || !arith::is_prime(p) {
            return Err(crate::invalid!("the tower needs an odd prime, got {p}"));
        }
        if f == 0 || f % p == 0 {
            return Err(crate::invalid!("conductor {f} must be prime to {p}"));
        }
        if arith::euler_phi(f * p) % p == 0 {
            return Err(Error::NotSemisimple);
        }
        let pn1 = arith::ipow(p, n + 1);
        let mut gamma_log = alloc::vec![u32::MAX; pn1 as usize];
        let mut x = 1u64;
        for k in 0..arith::ipow(p, n) {
            gamma_log[x as usize] = k as u32;
            x = arith::mul_mod(x, 1 + p, pn1);
        }
        Ok(TowerSplit { p, f, n, gamma_log })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
    pub fn base_conductor(&self) -> u64 {
        self.f
    }
    pub fn level(&self) -> u32 {
        self.n
    }
    /// `c_n = f p^(n+1)`.
    pub fn conductor(&self) -> u64 {
        self.f * arith::ipow(self.p, self.n + 1)
    }
    pub fn delta_group(&self) -> Arc<GaloisGroup> {
        GaloisGroup::units(self.f * self.p)
    }

    /// `(delta, k)` with `a = delta * gamma_0^k`, `delta` labeled mod `f p`.
    pub fn split(&self, a: u64) -> (u64, u64) {
        let pn1 = arith::ipow(self.p, self.n + 1);
        let ap = a % pn1;
        let w = Zpn::new(self.p, self.n + 1);
        let omega = crate::ring::PadicRing::teichmuller_lift(&w, &ap);
        let unit = arith::mul_mod(ap, arith::inv_mod(omega, pn1).expect("unit"), pn1);
        let k = self.gamma_log[unit as usize];
        debug_assert!(k != u32::MAX);
        (a % (self.f * self.p), k as u64)
    }
}
