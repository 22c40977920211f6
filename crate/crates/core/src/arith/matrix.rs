//! Dense row-major matrices over ℤ and ℚ: Hermite normal form, determinants,
//! inverses and nullspaces, all exact.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::{Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<Integer>;
pub type RationalMatrix = Matrix<Rational>;

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from equally long rows. A zero-row matrix needs `cols`.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let n = rows.len();
        Self { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn map<U: Clone + Zero + One>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

macro_rules! impl_matmul {
    ($t:ty, $vec_mat:ident) => {
        impl Mul for &Matrix<$t> {
            type Output = Matrix<$t>;
            fn mul(self, rhs: &Matrix<$t>) -> Matrix<$t> {
                assert_eq!(self.cols, rhs.rows, "dimension mismatch");
                let mut out = Matrix::<$t>::zeros(self.rows, rhs.cols);
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = &self[(i, k)];
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..rhs.cols {
                            let prod = a * &rhs[(k, j)];
                            out[(i, j)] += prod;
                        }
                    }
                }
                out
            }
        }

        /// Row vector times matrix.
        pub fn $vec_mat(v: &[$t], m: &Matrix<$t>) -> Vec<$t> {
            assert_eq!(v.len(), m.rows);
            let mut out = vec![<$t>::zero(); m.cols];
            for (k, a) in v.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, o) in out.iter_mut().enumerate() {
                    *o += a * &m[(k, j)];
                }
            }
            out
        }
    };
}

impl_matmul!(Integer, vec_mat_int);
impl_matmul!(Rational, vec_mat);

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect(),
            cols,
        )
    }

    pub fn to_rational(&self) -> RationalMatrix {
        self.map(|x| Rational::from_integer(x.clone()))
    }

    /// gcd of all entries (0 for the zero matrix).
    pub fn content(&self) -> Integer {
        self.data.iter().fold(Integer::zero(), |g, x| g.gcd(x))
    }
}

impl RationalMatrix {
    /// Common denominator `D` and integer matrix `N` with `self = N / D`.
    pub fn clear_denominators(&self) -> (Integer, IntMatrix) {
        let den = super::common_denominator(self.data.iter());
        let num = self.map(|x| (x * Rational::from_integer(den.clone())).to_integer());
        (den, num)
    }
}

fn sub_scaled_row(rows: &mut [Vec<Integer>], target: usize, source: usize, q: &Integer) {
    if q.is_zero() {
        return;
    }
    let (src, dst) = if source < target {
        let (a, b) = rows.split_at_mut(target);
        (&a[source], &mut b[0])
    } else {
        let (a, b) = rows.split_at_mut(source);
        (&b[0], &mut a[target])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

/// Row-style Hermite normal form of the row lattice of `m`.
///
/// The result is upper triangular in echelon form with positive pivots, each
/// entry above a pivot reduced into `[0, pivot)`, and zero rows removed.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let cols = m.ncols();
    let mut rows: Vec<Vec<Integer>> =
        m.row_vecs().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let n = rows.len();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let mut found = false;
        loop {
            let pivot = (r..n)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(pi) = pivot else { break };
            found = true;
            rows.swap(r, pi);
            let mut clean = true;
            for i in r + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                sub_scaled_row(&mut rows, i, r, &q);
                if !rows[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            sub_scaled_row(&mut rows, i, r, &q);
        }
        r += 1;
    }
    rows.truncate(r);
    IntMatrix::from_rows(rows, cols)
}

/// HNF of `lattice(m) + modulus·ℤ^n`; entries are reduced modulo `modulus`
/// before elimination. Valid whenever `modulus·ℤ^n` is already contained in
/// the lattice, and then equal to `hnf(m)`.
pub fn hnf_with_multiple(m: &IntMatrix, modulus: &Integer) -> IntMatrix {
    let n = m.ncols();
    let reduced = m.map(|x| x.mod_floor(modulus));
    let scaled = IntMatrix::identity(n).map(|x| x * modulus);
    hnf(&scaled.vstack(&reduced))
}

/// Determinant of a square integer matrix by fraction-free Bareiss elimination.
pub fn det_bareiss(m: &IntMatrix) -> Integer {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return Integer::one();
    }
    let mut a = m.row_vecs();
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Integer::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = Integer::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(a: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let n = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(pi) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, pi);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let (src, dst) = if r < i {
                let (x, y) = a.split_at_mut(i);
                (&x[r], &mut y[0])
            } else {
                let (x, y) = a.split_at_mut(r);
                (&y[0], &mut x[i])
            };
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d -= &f * s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact determinant over ℚ.
pub fn det(m: &RationalMatrix) -> Rational {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.nrows();
    let mut a = m.row_vecs();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(pi) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if pi != c {
            a.swap(c, pi);
            d = -d;
        }
        let pivot = a[c][c].clone();
        d *= &pivot;
        let inv = pivot.recip();
        let (top, rest) = a.split_at_mut(c + 1);
        let pivot_row = &top[c];
        for row in rest {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &f * y;
            }
        }
    }
    d
}

/// Exact inverse over ℚ.
pub fn inverse(m: &RationalMatrix) -> Result<RationalMatrix> {
    assert!(m.is_square(), "inverse of a non-square matrix");
    let n = m.nrows();
    let mut aug: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return Err(Error::SingularMatrix);
    }
    Ok(RationalMatrix::from_rows(aug.into_iter().map(|r| r[n..].to_vec()).collect(), n))
}

pub fn rank(m: &RationalMatrix) -> usize {
    let mut a = m.row_vecs();
    rref(&mut a, m.ncols()).len()
}

/// Basis of the left kernel `{x : x·m = 0}` as rows.
pub fn left_kernel(m: &RationalMatrix) -> RationalMatrix {
    right_kernel(&m.transpose())
}

/// Basis of the right kernel `{x : m·x = 0}` as rows.
pub fn right_kernel(m: &RationalMatrix) -> RationalMatrix {
    let cols = m.ncols();
    let mut a = m.row_vecs();
    let pivots = rref(&mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect();
    RationalMatrix::from_rows(basis, cols)
}

/// Solves `x·m = b` for square invertible `m`.
pub fn solve_left(m: &RationalMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    Ok(vec_mat(b, &inverse(m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn hnf_examples() {
        let id = IntMatrix::identity(2);
        assert_eq!(hnf(&id), id);
        let m = IntMatrix::from_i64(&[&[4, 0], &[2, 2]]);
        assert_eq!(hnf(&m), IntMatrix::from_i64(&[&[2, 2], &[0, 4]]));
        let z = IntMatrix::from_i64(&[&[0, 0], &[0, 0]]);
        let h = hnf(&z);
        assert_eq!((h.nrows(), h.ncols()), (0, 2));
    }

    #[test]
    fn hnf_brute_force_membership() {
        // Enumerate lattice vectors with coordinates in [-8, 8] for both bases.
        let a = IntMatrix::from_i64(&[&[4, 0], &[2, 2]]);
        let b = IntMatrix::from_i64(&[&[2, 2], &[0, 4]]);
        let span = |m: &IntMatrix| {
            let mut s = std::collections::BTreeSet::new();
            for x in -8i64..=8 {
                for y in -8i64..=8 {
                    let v0 = &m[(0, 0)] * x + &m[(1, 0)] * y;
                    let v1 = &m[(0, 1)] * x + &m[(1, 1)] * y;
                    if v0.abs() <= int(8) && v1.abs() <= int(8) {
                        s.insert((v0, v1));
                    }
                }
            }
            s
        };
        assert_eq!(span(&a), span(&b));
        assert_eq!(det_bareiss(&a).abs(), int(8));
    }

    #[test]
    fn determinant_and_inverse() {
        let id = RationalMatrix::identity(3);
        assert_eq!(det(&id), rat(1, 1));
        assert_eq!(inverse(&id).unwrap(), id);
        let m = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]).to_rational();
        assert_eq!(det(&m), rat(1, 1));
        assert_eq!(inverse(&m).unwrap(), IntMatrix::from_i64(&[&[1, -1], &[-1, 2]]).to_rational());
        let gram = IntMatrix::from_i64(&[&[2, 0], &[0, -2]]);
        assert_eq!(det(&gram.to_rational()), rat(-4, 1));
        assert_eq!(det_bareiss(&gram), int(-4));
        let sing = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]).to_rational();
        assert_eq!(inverse(&sing), Err(Error::SingularMatrix));
    }

    #[test]
    fn kernels() {
        let m = IntMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]).to_rational();
        let k = right_kernel(&m);
        assert_eq!(k.nrows(), 2);
        for i in 0..k.nrows() {
            let v = k.row(i);
            let s = &v[0] + &v[1] * rat(2, 1) + &v[2] * rat(3, 1);
            assert!(s.is_zero());
        }
        assert_eq!(rank(&m), 1);
    }
}
