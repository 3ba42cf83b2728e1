//! Integer lattices: Hermite normal form, kernels and indices.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Row-style Hermite normal form with zero rows dropped: pivots positive,
/// strictly increasing columns, entries above a pivot in `[0, pivot)`.
pub fn hnf(rows: &[Vec<BigInt>]) -> IntMatrix {
    let mut a: IntMatrix = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        if r == a.len() {
            break;
        }
        // gcd-combine all rows below r into row r at this column
        for i in r + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            if a[r][col].is_zero() {
                a.swap(r, i);
                continue;
            }
            let ext = a[r][col].extended_gcd(&a[i][col]);
            let (g, x, y) = (ext.gcd, ext.x, ext.y);
            let u = &a[r][col] / &g;
            let v = &a[i][col] / &g;
            for k in col..ncols {
                let top = &x * &a[r][k] + &y * &a[i][k];
                let bot = &u * &a[i][k] - &v * &a[r][k];
                a[r][k] = top;
                a[i][k] = bot;
            }
        }
        if a[r][col].is_zero() {
            continue;
        }
        if a[r][col].is_negative() {
            for k in col..ncols {
                a[r][k] = -&a[r][k];
            }
        }
        for i in 0..r {
            let q = a[i][col].div_floor(&a[r][col]);
            if !q.is_zero() {
                for k in col..ncols {
                    let t = &q * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Basis of `{y in Z^rows : y A = 0}`.
pub fn integer_kernel(a: &[Vec<BigInt>]) -> IntMatrix {
    let m = a.len();
    if m == 0 {
        return Vec::new();
    }
    let n = a[0].len();
    let aug: IntMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..m).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            r
        })
        .collect();
    hnf(&aug)
        .into_iter()
        .filter(|r| r[..n].iter().all(Zero::is_zero))
        .map(|r| r[n..].to_vec())
        .collect()
}

/// Basis of `{y in Z^rows : y A = 0 mod modulus}`.
pub fn kernel_mod(a: &[Vec<BigInt>], modulus: &BigInt) -> IntMatrix {
    let m = a.len();
    if m == 0 {
        return Vec::new();
    }
    let n = a[0].len();
    let mut aug: IntMatrix = Vec::with_capacity(m + n);
    for (i, row) in a.iter().enumerate() {
        let mut r: Vec<BigInt> = row.iter().map(|x| x.mod_floor(modulus)).collect();
        r.extend((0..m).map(|j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        }));
        aug.push(r);
    }
    for j in 0..n {
        let mut r = alloc::vec![BigInt::zero(); n + m];
        r[j] = modulus.clone();
        aug.push(r);
    }
    hnf(&aug)
        .into_iter()
        .filter(|r| r[..n].iter().all(Zero::is_zero))
        .map(|r| r[n..].to_vec())
        .collect()
}

/// Row vector times matrix.
pub fn vec_mul(y: &[BigInt], a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.first().map_or(0, |r| r.len());
    let mut out = alloc::vec![BigInt::zero(); n];
    for (c, row) in y.iter().zip(a) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o += c * x;
        }
    }
    out
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMatrix {
    a.iter().map(|r| vec_mul(r, b)).collect()
}

/// Determinant by fraction-free elimination.
pub fn det(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: IntMatrix = a.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Coordinates of `v` in an HNF basis, if `v` lies in the lattice.
pub fn hnf_coordinates(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest: Vec<BigInt> = v.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for row in basis {
        let col = row.iter().position(|x| !x.is_zero())?;
        let (q, r) = rest[col].div_rem(&row[col]);
        if !r.is_zero() {
            return None;
        }
        for (x, b) in rest.iter_mut().zip(row) {
            *x -= &q * b;
        }
        coords.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

pub fn hnf_contains(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    hnf_coordinates(basis, v).is_some()
}

/// Index `[sup : sub]` for lattices of equal rank with `sub` inside `sup`.
pub fn sublattice_index(sub: &[Vec<BigInt>], sup: &[Vec<BigInt>]) -> Option<BigInt> {
    let sup = hnf(sup);
    let sub = hnf(sub);
    if sub.len() != sup.len() {
        return None;
    }
    let coords: Option<IntMatrix> = sub.iter().map(|v| hnf_coordinates(&sup, v)).collect();
    Some(det(&coords?).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        to_matrix(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn hnf_small() {
        let h = hnf(&m(&[&[2, 4], &[3, 5]]));
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
        let h = hnf(&m(&[&[4, 6], &[6, 9]]));
        assert_eq!(h, m(&[&[2, 3]]));
    }

    #[test]
    fn kernel_examples() {
        let k = integer_kernel(&m(&[&[1], &[2], &[3]]));
        assert_eq!(k.len(), 2);
        for r in &k {
            assert!(vec_mul(r, &m(&[&[1], &[2], &[3]]))[0].is_zero());
        }
        let k = kernel_mod(&m(&[&[2], &[3]]), &BigInt::from(6));
        let want = m(&[&[3, 0], &[0, 2]]);
        assert_eq!(hnf(&k), want);
    }

    #[test]
    fn determinant_and_index() {
        assert_eq!(det(&m(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(
            det(&m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 7]])),
            BigInt::from(-7)
        );
        let sup = m(&[&[1, 0], &[0, 1]]);
        let sub = m(&[&[2, 0], &[1, 3]]);
        assert_eq!(sublattice_index(&sub, &sup), Some(BigInt::from(6)));
        assert!(hnf_contains(
            &hnf(&sub),
            &[BigInt::from(3), BigInt::from(3)]
        ));
        assert!(!hnf_contains(
            &hnf(&sub),
            &[BigInt::from(1), BigInt::from(0)]
        ));
    }
}
