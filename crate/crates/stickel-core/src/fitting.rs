//! Fitting ideals and elementary annihilators over
//! `R_n = W[T]/((1+T)^(p^n) - 1)` with `W` a finite p-adic coefficient ring.

use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::ring::{arith, PadicRing};
use crate::series::{SeriesModulus, TruncSeries};
use crate::{Error, Result};

/// Limit on the number of maximal minors expanded by `fitting_ideal`.
pub const MINOR_LIMIT: u64 = 200_000;

/// The ring `R_n`, elements being `TruncSeries` modulo `Omega(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncAlgebra<R: PadicRing> {
    ring: R,
    level: u32,
}

pub type AlgElt<R> = TruncSeries<R>;

impl<R: PadicRing> TruncAlgebra<R> {
    pub fn new(ring: R, level: u32) -> Self {
        TruncAlgebra { ring, level }
    }
    pub fn coefficient_ring(&self) -> &R {
        &self.ring
    }
    pub fn prime(&self) -> u64 {
        self.ring.prime()
    }
    pub fn precision(&self) -> u32 {
        self.ring.precision()
    }
    pub fn level(&self) -> u32 {
        self.level
    }
    pub fn modulus(&self) -> SeriesModulus {
        SeriesModulus::Omega(self.level)
    }
    /// `p^n`, the rank of `R_n` over `W`.
    pub fn t_rank(&self) -> usize {
        arith::ipow(self.prime(), self.level) as usize
    }
    /// Rank over `Z/p^N`.
    pub fn dimension(&self) -> usize {
        self.t_rank() * self.ring.degree()
    }
    pub fn zero(&self) -> AlgElt<R> {
        TruncSeries::zero(&self.ring, self.modulus())
    }
    pub fn one(&self) -> AlgElt<R> {
        TruncSeries::one(&self.ring, self.modulus())
    }
    pub fn t(&self) -> AlgElt<R> {
        self.from_i64s(&[0, 1])
    }
    pub fn from_i64s(&self, c: &[i64]) -> AlgElt<R> {
        TruncSeries::from_i64s(&self.ring, self.modulus(), c)
    }
    pub fn from_bigints(&self, c: &[BigInt]) -> AlgElt<R> {
        TruncSeries::new(
            &self.ring,
            self.modulus(),
            c.iter().map(|x| self.ring.from_bigint(x)).collect(),
        )
    }
    pub fn scalar(&self, c: R::Elem) -> AlgElt<R> {
        TruncSeries::constant(&self.ring, self.modulus(), c)
    }
    pub fn check(&self, x: &AlgElt<R>) -> Result<()> {
        if x.ring() != &self.ring || x.modulus() != self.modulus() {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }
    /// Coordinates over `Z/p^N`: `W`-coordinates of each `T^j` coefficient.
    pub fn coords(&self, x: &AlgElt<R>) -> Vec<u64> {
        x.coeffs()
            .iter()
            .flat_map(|c| self.ring.coords(c))
            .collect()
    }
    pub fn from_coords(&self, v: &[u64]) -> AlgElt<R> {
        let r = self.ring.degree();
        let coeffs = v.chunks(r).map(|c| self.ring.from_coords(c)).collect();
        TruncSeries::new(&self.ring, self.modulus(), coeffs)
    }
    fn w_basis(&self) -> Vec<AlgElt<R>> {
        let r = self.ring.degree();
        (0..r)
            .map(|k| {
                let mut e = alloc::vec![0u64; r];
                e[k] = 1;
                self.scalar(self.ring.from_coords(&e))
            })
            .collect()
    }
    /// Reduction `R_n -> R_m` for `m <= n`.
    pub fn project(&self, x: &AlgElt<R>, level: u32) -> Result<AlgElt<R>> {
        if level > self.level {
            return Err(crate::invalid!(
                "cannot project from level {} up to {level}",
                self.level
            ));
        }
        Ok(x.with_modulus(SeriesModulus::Omega(level)))
    }
}

/// Howell form of the `Z/p^N`-span of `rows`: echelon with pivots `p^k`,
/// entries above a pivot reduced below it, and every `p^(N-k)` multiple of
/// a pivot row lying in the span of the later rows.
pub fn howell_form(rows: &[Vec<u64>], p: u64, big_n: u32) -> Vec<Vec<u64>> {
    let q = arith::ipow(p, big_n);
    let dim = rows.first().map_or(0, Vec::len);
    let mut pending: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x % q).collect::<Vec<u64>>())
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    let mut out: Vec<(usize, u32, Vec<u64>)> = Vec::new();
    for c in 0..dim {
        let best = pending
            .iter()
            .enumerate()
            .filter(|(_, r)| r[c] != 0)
            .min_by_key(|(_, r)| arith::val(r[c], p))
            .map(|(i, _)| i);
        let Some(i) = best else { continue };
        let mut piv = pending.swap_remove(i);
        let k = arith::val(piv[c], p);
        let pk = arith::ipow(p, k);
        let uinv = arith::inv_mod(piv[c] / pk, q).expect("unit part");
        for x in piv.iter_mut() {
            *x = arith::mul_mod(*x, uinv, q);
        }
        for r in pending.iter_mut() {
            if r[c] != 0 {
                let f = r[c] / pk;
                for (x, y) in r.iter_mut().zip(&piv) {
                    *x = arith::sub_mod(*x, arith::mul_mod(f, *y, q), q);
                }
            }
        }
        if k > 0 {
            let s = arith::ipow(p, big_n - k);
            pending.push(piv.iter().map(|&x| arith::mul_mod(x, s, q)).collect());
        }
        pending.retain(|r| r.iter().any(|&x| x != 0));
        out.push((c, k, piv));
    }
    for i in 0..out.len() {
        let (c, k, row) = out[i].clone();
        let pk = arith::ipow(p, k);
        for (_, _, upper) in out.iter_mut().take(i) {
            let f = upper[c] / pk;
            if f != 0 {
                for (x, y) in upper.iter_mut().zip(&row) {
                    *x = arith::sub_mod(*x, arith::mul_mod(f, *y, q), q);
                }
            }
        }
    }
    out.into_iter().map(|(_, _, r)| r).collect()
}

/// Membership of `v` in the span of a Howell basis.
pub fn howell_contains(basis: &[Vec<u64>], v: &[u64], p: u64, big_n: u32) -> bool {
    let q = arith::ipow(p, big_n);
    let mut v: Vec<u64> = v.iter().map(|x| x % q).collect();
    let mut rows = basis.iter().peekable();
    for c in 0..v.len() {
        let pivot_here = rows
            .peek()
            .is_some_and(|r| r.iter().position(|&x| x != 0) == Some(c));
        if pivot_here {
            let r = rows.next().expect("peeked");
            let pk = r[c];
            if v[c] % pk != 0 {
                return false;
            }
            let f = v[c] / pk;
            for (x, y) in v.iter_mut().zip(r) {
                *x = arith::sub_mod(*x, arith::mul_mod(f, *y, q), q);
            }
        } else if v[c] != 0 {
            return false;
        }
    }
    true
}

/// An ideal of `R_n`, canonicalized by the Howell form of its `Z/p^N`-span.
#[derive(Clone, Debug)]
pub struct RingIdeal<R: PadicRing> {
    algebra: TruncAlgebra<R>,
    generators: Vec<AlgElt<R>>,
    basis: Vec<Vec<u64>>,
}

impl<R: PadicRing> PartialEq for RingIdeal<R> {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.basis == other.basis
    }
}

impl<R: PadicRing> RingIdeal<R> {
    pub fn new(algebra: &TruncAlgebra<R>, generators: Vec<AlgElt<R>>) -> Result<Self> {
        for g in &generators {
            algebra.check(g)?;
        }
        let t = algebra.t();
        let ws = algebra.w_basis();
        let mut rows = Vec::new();
        for g in &generators {
            for w in &ws {
                let mut x = g.mul(w)?;
                for _ in 0..algebra.t_rank() {
                    rows.push(algebra.coords(&x));
                    x = x.mul(&t)?;
                }
            }
        }
        let basis = howell_form(&rows, algebra.prime(), algebra.precision());
        Ok(RingIdeal {
            algebra: algebra.clone(),
            generators,
            basis,
        })
    }
    pub fn principal(algebra: &TruncAlgebra<R>, x: AlgElt<R>) -> Result<Self> {
        Self::new(algebra, alloc::vec![x])
    }
    pub fn zero(algebra: &TruncAlgebra<R>) -> Self {
        RingIdeal {
            algebra: algebra.clone(),
            generators: Vec::new(),
            basis: Vec::new(),
        }
    }
    pub fn unit(algebra: &TruncAlgebra<R>) -> Self {
        Self::principal(algebra, algebra.one()).expect("same algebra")
    }
    pub fn algebra(&self) -> &TruncAlgebra<R> {
        &self.algebra
    }
    pub fn generators(&self) -> &[AlgElt<R>] {
        &self.generators
    }
    /// The canonical Howell basis over `Z/p^N`.
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    /// `k` with `|I| = p^k`.
    pub fn log_cardinality(&self) -> u32 {
        let p = self.algebra.prime();
        let n = self.algebra.precision();
        self.basis
            .iter()
            .map(|r| n - arith::val(*r.iter().find(|&&x| x != 0).expect("nonzero row"), p))
            .sum()
    }
    pub fn contains(&self, x: &AlgElt<R>) -> bool {
        self.algebra.check(x).is_ok()
            && howell_contains(
                &self.basis,
                &self.algebra.coords(x),
                self.algebra.prime(),
                self.algebra.precision(),
            )
    }
    pub fn contains_ideal(&self, other: &Self) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.mul(b)?);
            }
        }
        Self::new(&self.algebra, gens)
    }
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::new(&self.algebra, gens)
    }
    /// Image under `R_n -> R_m`.
    pub fn project(&self, level: u32) -> Result<Self> {
        let target = TruncAlgebra::new(self.algebra.ring.clone(), level);
        let gens = self
            .generators
            .iter()
            .map(|g| self.algebra.project(g, level))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&target, gens)
    }
}

pub fn ideal_membership<R: PadicRing>(x: &AlgElt<R>, ideal: &RingIdeal<R>) -> bool {
    ideal.contains(x)
}

/// Rows are relations, columns generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation<R: PadicRing> {
    algebra: TruncAlgebra<R>,
    rows: Vec<Vec<AlgElt<R>>>,
    generators: usize,
}

impl<R: PadicRing> Presentation<R> {
    pub fn new(algebra: &TruncAlgebra<R>, rows: Vec<Vec<AlgElt<R>>>) -> Result<Self> {
        let generators = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || generators == 0 {
            return Err(crate::invalid!(
                "presentation matrices need positive dimensions"
            ));
        }
        for r in &rows {
            if r.len() != generators {
                return Err(crate::invalid!("ragged presentation matrix"));
            }
            for x in r {
                algebra.check(x)?;
            }
        }
        Ok(Presentation {
            algebra: algebra.clone(),
            rows,
            generators,
        })
    }
    pub fn from_i64s(algebra: &TruncAlgebra<R>, rows: &[Vec<Vec<i64>>]) -> Result<Self> {
        Self::new(
            algebra,
            rows.iter()
                .map(|r| r.iter().map(|x| algebra.from_i64s(x)).collect())
                .collect(),
        )
    }
    pub fn diagonal(algebra: &TruncAlgebra<R>, entries: &[AlgElt<R>]) -> Result<Self> {
        let rows = (0..entries.len())
            .map(|i| {
                (0..entries.len())
                    .map(|j| {
                        if i == j {
                            entries[i].clone()
                        } else {
                            algebra.zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(algebra, rows)
    }
    pub fn cyclic(algebra: &TruncAlgebra<R>, f: AlgElt<R>) -> Result<Self> {
        Self::new(algebra, alloc::vec![alloc::vec![f]])
    }
    pub fn algebra(&self) -> &TruncAlgebra<R> {
        &self.algebra
    }
    pub fn rows(&self) -> &[Vec<AlgElt<R>>] {
        &self.rows
    }
    pub fn relations(&self) -> usize {
        self.rows.len()
    }
    pub fn generators(&self) -> usize {
        self.generators
    }
    /// Block-diagonal presentation of the direct sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::RingMismatch);
        }
        let z = self.algebra.zero();
        let mut rows = Vec::with_capacity(self.relations() + other.relations());
        for r in &self.rows {
            let mut row = r.clone();
            row.extend(core::iter::repeat(z.clone()).take(other.generators));
            rows.push(row);
        }
        for r in &other.rows {
            let mut row: Vec<AlgElt<R>> = core::iter::repeat(z.clone())
                .take(self.generators)
                .collect();
            row.extend(r.iter().cloned());
            rows.push(row);
        }
        Self::new(&self.algebra, rows)
    }
    /// Adds a free generator killed by the relation `1` (same cokernel).
    pub fn stabilize(&self) -> Result<Self> {
        self.direct_sum(&Self::cyclic(&self.algebra, self.algebra.one())?)
    }
    /// Adds `c` times row `j` to row `i`.
    pub fn row_op(&self, i: usize, j: usize, c: &AlgElt<R>) -> Result<Self> {
        if i == j || i >= self.relations() || j >= self.relations() {
            return Err(crate::invalid!("bad row indices ({i}, {j})"));
        }
        let mut out = self.clone();
        for k in 0..self.generators {
            out.rows[i][k] = out.rows[i][k].add(&self.rows[j][k].mul(c)?)?;
        }
        Ok(out)
    }
    /// Adds `c` times column `j` to column `i`.
    pub fn col_op(&self, i: usize, j: usize, c: &AlgElt<R>) -> Result<Self> {
        if i == j || i >= self.generators || j >= self.generators {
            return Err(crate::invalid!("bad column indices ({i}, {j})"));
        }
        let mut out = self.clone();
        for r in out.rows.iter_mut() {
            r[i] = r[i].add(&r[j].mul(c)?)?;
        }
        Ok(out)
    }
}

/// Determinant by Laplace expansion along the first row.
pub fn determinant<R: PadicRing>(
    algebra: &TruncAlgebra<R>,
    m: &[Vec<AlgElt<R>>],
) -> Result<AlgElt<R>> {
    let cols: Vec<usize> = (0..m.len()).collect();
    laplace(algebra, m, 0, &cols)
}

fn laplace<R: PadicRing>(
    algebra: &TruncAlgebra<R>,
    m: &[Vec<AlgElt<R>>],
    row: usize,
    cols: &[usize],
) -> Result<AlgElt<R>> {
    if cols.is_empty() {
        return Ok(algebra.one());
    }
    let mut acc = algebra.zero();
    for (k, &c) in cols.iter().enumerate() {
        let x = &m[row][c];
        if x.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&d| d != c).collect();
        let term = x.mul(&laplace(algebra, m, row + 1, &rest)?)?;
        acc = if k % 2 == 0 {
            acc.add(&term)?
        } else {
            acc.sub(&term)?
        };
    }
    Ok(acc)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The maximal minors of `P`.
pub fn maximal_minors<R: PadicRing>(pres: &Presentation<R>) -> Result<Vec<AlgElt<R>>> {
    let (r, g) = (pres.relations(), pres.generators());
    if r < g {
        return Ok(Vec::new());
    }
    if binomial(r as u64, g as u64) > MINOR_LIMIT {
        return Err(Error::TooLarge(alloc::format!(
            "C({r}, {g}) maximal minors"
        )));
    }
    combinations(r, g)
        .into_iter()
        .map(|sel| {
            let sub: Vec<Vec<AlgElt<R>>> = sel.iter().map(|&i| pres.rows[i].clone()).collect();
            determinant(pres.algebra(), &sub)
        })
        .collect()
}

/// The initial Fitting ideal, generated by the maximal minors.
pub fn fitting_ideal<R: PadicRing>(pres: &Presentation<R>) -> Result<RingIdeal<R>> {
    let minors: Vec<AlgElt<R>> = maximal_minors(pres)?
        .into_iter()
        .filter(|m| !m.is_zero())
        .collect();
    RingIdeal::new(pres.algebra(), minors)
}

/// `p^k P(T)` with `P` distinguished, kept exactly over `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeierstrassEntry {
    pub p_power: u32,
    /// low-to-high coefficients; monic with all lower coefficients divisible by `p`
    #[serde(serialize_with = "serialize_bigints")]
    pub poly: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(
    v: &[BigInt],
    s: S,
) -> core::result::Result<S::Ok, S::Error> {
    use alloc::string::ToString;
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl WeierstrassEntry {
    pub fn new(p: u64, p_power: u32, poly: Vec<BigInt>) -> Result<Self> {
        let mut poly = poly;
        while poly.len() > 1 && poly.last().is_some_and(Zero::is_zero) {
            poly.pop();
        }
        let pb = BigInt::from(p);
        let monic = poly.last().is_some_and(One::is_one);
        let distinguished = poly[..poly.len().saturating_sub(1)]
            .iter()
            .all(|c| c.is_multiple_of(&pb));
        if !monic || !distinguished {
            return Err(crate::invalid!(
                "{poly:?} is not a distinguished polynomial at {p}"
            ));
        }
        Ok(WeierstrassEntry { p_power, poly })
    }
    pub fn from_i64s(p: u64, p_power: u32, poly: &[i64]) -> Result<Self> {
        Self::new(p, p_power, poly.iter().map(|&c| BigInt::from(c)).collect())
    }
    pub fn p_power_only(k: u32) -> Self {
        WeierstrassEntry {
            p_power: k,
            poly: alloc::vec![BigInt::one()],
        }
    }
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }
    pub fn image<R: PadicRing>(&self, algebra: &TruncAlgebra<R>) -> AlgElt<R> {
        let pk = num_traits::pow(BigInt::from(algebra.prime()), self.p_power as usize);
        let c: Vec<BigInt> = self.poly.iter().map(|x| x * &pk).collect();
        algebra.from_bigints(&c)
    }
}

type QPoly = Vec<BigRational>;

fn q_trim(mut a: QPoly) -> QPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn q_rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let f = r.last().expect("nonempty") / &lb;
        let s = r.len() - b.len();
        for (k, bk) in b.iter().enumerate() {
            r[s + k] -= &f * bk;
        }
        r = q_trim(r);
    }
    r
}

fn q_div(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let lb = b.last().expect("nonzero divisor").clone();
    let mut q = alloc::vec![BigRational::zero(); a.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let f = r.last().expect("nonempty") / &lb;
        let s = r.len() - b.len();
        for (k, bk) in b.iter().enumerate() {
            r[s + k] -= &f * bk;
        }
        q[s] = f;
        r.pop();
        r = q_trim(r);
    }
    q
}

fn to_q(a: &[BigInt]) -> QPoly {
    a.iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn to_z(a: &QPoly) -> Result<Vec<BigInt>> {
    a.iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(crate::internal!("non-integral monic factor"))
            }
        })
        .collect()
}

/// Monic gcd over `Q`; integral for monic integer inputs.
fn monic_gcd(a: &[BigInt], b: &[BigInt]) -> Result<Vec<BigInt>> {
    let (mut x, mut y) = (to_q(a), to_q(b));
    while !y.is_empty() {
        let r = q_rem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().expect("gcd of nonzero polynomials").clone();
    to_z(&x.into_iter().map(|c| c / &lead).collect())
}

fn exact_div(a: &[BigInt], b: &[BigInt]) -> Result<Vec<BigInt>> {
    to_z(&q_trim(q_div(&to_q(a), &to_q(b))))
}

fn poly_mul_z(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = alloc::vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ElementaryAnnihilator<R: PadicRing> {
    pub lcm: WeierstrassEntry,
    pub ideal: RingIdeal<R>,
}

/// `lcm` of the diagonal entries. Distinct coprime factors must stay apart at
/// the working precision: `v_p(Res) < N - max k`, else `LcmIllDefined`.
pub fn annihilator_elementary<R: PadicRing>(
    algebra: &TruncAlgebra<R>,
    entries: &[WeierstrassEntry],
) -> Result<ElementaryAnnihilator<R>> {
    if entries.is_empty() {
        return Err(crate::invalid!("no diagonal entries"));
    }
    let p = algebra.prime();
    let big_n = algebra.precision();
    let kmax = entries.iter().map(|e| e.p_power).max().expect("nonempty");
    if kmax >= big_n {
        return Err(Error::LcmIllDefined);
    }
    let pb = BigInt::from(p);
    let mut lcm = alloc::vec![BigInt::one()];
    for e in entries {
        let g = monic_gcd(&lcm, &e.poly)?;
        let a = exact_div(&lcm, &g)?;
        let b = exact_div(&e.poly, &g)?;
        if a.len() > 1 && b.len() > 1 {
            let res = crate::ring::zpoly::resultant(&a, &b).abs();
            let mut v = 0u32;
            let mut r = res;
            while !r.is_zero() && r.is_multiple_of(&pb) {
                r /= &pb;
                v += 1;
            }
            if v >= big_n - kmax {
                return Err(Error::LcmIllDefined);
            }
        }
        lcm = poly_mul_z(&lcm, &b);
    }
    let lcm = WeierstrassEntry {
        p_power: kmax,
        poly: lcm,
    };
    let ideal = RingIdeal::principal(algebra, lcm.image(algebra))?;
    Ok(ElementaryAnnihilator { lcm, ideal })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalReport {
    pub entries: Vec<WeierstrassEntry>,
    pub lcm: WeierstrassEntry,
    /// `Fitt = (prod d_i)`
    pub fitting_is_product: bool,
    /// `lcm` kills every `R/(d_i)`
    pub lcm_annihilates: bool,
    /// `Fitt` inside the annihilator
    pub fitting_in_annihilator: bool,
    pub pass: bool,
}

/// Fitting ideal and annihilator of `R/(d_1) + ... + R/(d_k)`.
pub fn diagonal_check<R: PadicRing>(
    algebra: &TruncAlgebra<R>,
    entries: &[WeierstrassEntry],
) -> Result<DiagonalReport> {
    let images: Vec<AlgElt<R>> = entries.iter().map(|e| e.image(algebra)).collect();
    let pres = Presentation::diagonal(algebra, &images)?;
    let fitt = fitting_ideal(&pres)?;
    let mut prod = algebra.one();
    for x in &images {
        prod = prod.mul(x)?;
    }
    let fitting_is_product = fitt == RingIdeal::principal(algebra, prod)?;
    let ann = annihilator_elementary(algebra, entries)?;
    let l = ann.lcm.image(algebra);
    let mut lcm_annihilates = true;
    for x in &images {
        lcm_annihilates &= RingIdeal::principal(algebra, x.clone())?.contains(&l);
    }
    let fitting_in_annihilator = ann.ideal.contains_ideal(&fitt);
    Ok(DiagonalReport {
        entries: entries.to_vec(),
        lcm: ann.lcm,
        pass: fitting_is_product && lcm_annihilates && fitting_in_annihilator,
        fitting_is_product,
        lcm_annihilates,
        fitting_in_annihilator,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicativityReport {
    pub p: u64,
    pub level: u32,
    pub precision: u32,
    pub lhs_basis: Vec<Vec<u64>>,
    pub rhs_basis: Vec<Vec<u64>>,
    /// the same identity after projecting to level `n - 1`, when `n > 0`
    pub projected: Option<bool>,
    pub pass: bool,
    pub note: String,
}

/// `Fitt(R/(f) + coker Q) = (f) Fitt(coker Q)`; `None` stands for `Q = 0`.
pub fn fitting_multiplicativity_check<R: PadicRing>(
    f: &AlgElt<R>,
    q: Option<&Presentation<R>>,
) -> Result<MultiplicativityReport> {
    let algebra = TruncAlgebra::new(
        f.ring().clone(),
        match f.modulus() {
            SeriesModulus::Omega(e) => e,
            SeriesModulus::TPow(_) => return Err(crate::invalid!("element of R_n expected")),
        },
    );
    let cyc = Presentation::cyclic(&algebra, f.clone())?;
    let (lhs, rhs) = match q {
        Some(q) => (
            fitting_ideal(&cyc.direct_sum(q)?)?,
            RingIdeal::principal(&algebra, f.clone())?.mul(&fitting_ideal(q)?)?,
        ),
        None => (
            fitting_ideal(&cyc)?,
            RingIdeal::principal(&algebra, f.clone())?,
        ),
    };
    let projected = if algebra.level() > 0 {
        let lower = algebra.level() - 1;
        let lower_alg = TruncAlgebra::new(algebra.ring.clone(), lower);
        let fp = algebra.project(f, lower)?;
        let pcyc = Presentation::cyclic(&lower_alg, fp.clone())?;
        let pl = match q {
            Some(q) => {
                let rows = q
                    .rows()
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| algebra.project(x, lower))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                fitting_ideal(&pcyc.direct_sum(&Presentation::new(&lower_alg, rows)?)?)?
            }
            None => fitting_ideal(&pcyc)?,
        };
        Some(pl == lhs.project(lower)?)
    } else {
        None
    };
    let pass = lhs == rhs && projected != Some(false);
    Ok(MultiplicativityReport {
        p: algebra.prime(),
        level: algebra.level(),
        precision: algebra.precision(),
        lhs_basis: lhs.basis().to_vec(),
        rhs_basis: rhs.basis().to_vec(),
        projected,
        pass,
        note: String::from(if q.is_some() { "block" } else { "cyclic" }),
    })
}
