//! Exact linear algebra over ℚ and ℤ.
//!
//! Everything here is small-dimensional (at most a few hundred rows, twelve
//! columns), so the routines favour plain Gaussian elimination over anything
//! clever. Rational matrices are `Vec<Vec<BigRational>>` in row-major order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Matrix = Vec<Vec<Rational>>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_rational_matrix(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| rat_int(x)).collect())
        .collect()
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Rank of an integer matrix, by fraction-free elimination.
pub fn int_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            let g = a.gcd(&b);
            let (a, b) = (&a / &g, &b / &g);
            let mut content = BigInt::zero();
            for j in c..cols {
                let v = &m[i][j] * &a - &m[r][j] * &b;
                content = content.gcd(&v);
                m[i][j] = v;
            }
            if content > BigInt::one() {
                for j in c..cols {
                    m[i][j] = &m[i][j] / &content;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Determinant of a square integer matrix (Bareiss).
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Scales a rational vector to the primitive integer vector on the same ray.
/// The zero vector maps to zero.
pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    primitive_int(&ints)
}

pub fn primitive_int(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or(Error::Overflow))
        .collect()
}

/// Primitive integer representative of a rational vector, as `i64`.
pub fn primitive_i64(v: &[Rational]) -> Result<Vec<i64>> {
    to_i64_vec(&primitive(v))
}

/// Smith normal form `left · m · right = diag`, with `left` and `right`
/// unimodular and each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: Vec<Vec<BigInt>>,
    pub diag: Vec<BigInt>,
    pub right: Vec<Vec<BigInt>>,
}

fn identity_int(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn smith_normal_form(m: &[Vec<BigInt>]) -> SmithForm {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.to_vec();
    let mut left = identity_int(rows);
    let mut right = identity_int(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_smith(a, left, right, rows.min(cols));
            };
            a.swap(t, pi);
            left.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in right.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in 0..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                for j in 0..rows {
                    let v = &q * &left[t][j];
                    left[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in 0..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
                for i in 0..cols {
                    let v = &q * &right[i][t];
                    right[i][j] -= v;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold any offending row into row t and retry
            let offending =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match offending {
                Some(i) => {
                    for j in 0..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                    for j in 0..rows {
                        let v = left[i][j].clone();
                        left[t][j] += v;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for j in 0..cols {
                a[t][j] = -a[t][j].clone();
            }
            for j in 0..rows {
                left[t][j] = -left[t][j].clone();
            }
        }
    }
    finish_smith(a, left, right, rows.min(cols))
}

fn finish_smith(
    a: Vec<Vec<BigInt>>,
    left: Vec<Vec<BigInt>>,
    right: Vec<Vec<BigInt>>,
    k: usize,
) -> SmithForm {
    SmithForm {
        diag: (0..k).map(|i| a[i][i].abs()).collect(),
        left,
        right,
    }
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let q: Matrix = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let inv = inverse(&q)?;
    inv.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect()
        })
        .collect()
}

/// A row basis kept in reduced echelon form, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` if it is independent of the current rows.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn insert_int(&mut self, v: &[i64]) -> bool {
        let r: Vec<Rational> = v.iter().map(|&x| rat_int(x)).collect();
        self.insert(&r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        (0..a.len())
            .map(|i| {
                (0..b[0].len())
                    .map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = to_rational_matrix(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let d: Rational = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(d.is_zero());
        }
        assert_eq!(int_rank(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]), 2);
        assert_eq!(int_rank(&[vec![0, 0], vec![0, 0]]), 0);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = to_rational_matrix(&[vec![2, 1], vec![1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, to_rational_matrix(&[vec![1, -1], vec![-1, 2]]));
        assert!(inverse(&to_rational_matrix(&[vec![1, 2], vec![2, 4]])).is_none());
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(determinant(&bi(&[&[1, 1], &[0, 3]])), BigInt::from(3));
        assert_eq!(
            determinant(&bi(&[&[0, 2, 1], &[1, 0, 0], &[0, 1, 1]])),
            BigInt::from(-1)
        );
        assert_eq!(determinant(&bi(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn primitive_clears_denominators() {
        let v = vec![rat(1, 2), rat(-3, 4), rat_int(0)];
        assert_eq!(primitive_i64(&v).unwrap(), vec![2, -3, 0]);
    }

    #[test]
    fn smith_form_reconstructs() {
        let m = bi(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&m);
        assert_eq!(
            s.diag,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        let prod = mul(&mul(&s.left, &m), &s.right);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j {
                    s.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(prod[i][j].abs(), want);
            }
        }
        assert!(determinant(&s.left).abs().is_one());
        assert!(determinant(&s.right).abs().is_one());
    }

    #[test]
    fn echelon_tracks_rank() {
        let mut e = Echelon::new(3);
        assert!(e.insert_int(&[1, 2, 3]));
        assert!(!e.insert_int(&[2, 4, 6]));
        assert!(e.insert_int(&[0, 1, 1]));
        assert!(!e.insert_int(&[1, 3, 4]));
        assert!(e.contains(&[rat_int(1), rat_int(3), rat_int(4)]));
        assert!(e.insert_int(&[0, 0, 5]));
        assert_eq!(e.rank(), 3);
    }
}
