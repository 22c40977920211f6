//! Dense univariate polynomials over ℤ and ℚ.
//!
//! Coefficients are stored in ascending degree order; the vector is empty for
//! the zero polynomial and otherwise ends in a nonzero coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::matrix::{det_bareiss, IntMatrix};
use super::{Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn monomial(c: Integer, deg: usize) -> Self {
        let mut coeffs = vec![Integer::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Integer::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        self.coeffs.iter().rev().fold(Integer::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, k: &Integer) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn content(&self) -> Integer {
        self.coeffs.iter().fold(Integer::zero(), |g, c| g.gcd(c))
    }

    pub fn to_rational(&self) -> QPolynomial {
        QPolynomial::new(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    /// Coefficients listed from the leading term down.
    pub fn descending(&self) -> Vec<Integer> {
        self.coeffs.iter().rev().cloned().collect()
    }
}

fn fmt_terms<T: fmt::Display + Zero + One + PartialEq + Signed + Clone>(
    coeffs: &[T],
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let unit = mag.is_one();
        match i {
            0 => write!(f, "{mag}")?,
            1 if unit => write!(f, "x")?,
            1 => write!(f, "{mag}*x")?,
            _ if unit => write!(f, "x^{i}")?,
            _ => write!(f, "{mag}*x^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(&self.coeffs, f)
    }
}

fn zip_with<T: Clone + Zero>(a: &[T], b: &[T], op: impl Fn(&T, &T) -> T) -> Vec<T> {
    let n = a.len().max(b.len());
    let z = T::zero();
    (0..n)
        .map(|i| op(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect()
}

fn convolve<T: Clone + Zero + std::ops::AddAssign>(a: &[T], b: &[T], mul: impl Fn(&T, &T) -> T) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += mul(x, y);
        }
    }
    out
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(zip_with(&self.coeffs, &rhs.coeffs, |a, b| a + b))
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(zip_with(&self.coeffs, &rhs.coeffs, |a, b| a - b))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(convolve(&self.coeffs, &rhs.coeffs, |a, b| a * b))
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Polynomial with rational coefficients; same conventions as [`IntPolynomial`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: Vec<Rational>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &QPolynomial) -> (QPolynomial, QPolynomial) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd together with Bezout cofactors: `s*a + t*b = g`.
    pub fn ext_gcd(a: &QPolynomial, b: &QPolynomial) -> (QPolynomial, QPolynomial, QPolynomial) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Returns the integer polynomial when every coefficient is integral.
    pub fn to_integer(&self) -> Option<IntPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::new)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(&self.coeffs, f)
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        QPolynomial::new(zip_with(&self.coeffs, &rhs.coeffs, |a, b| a + b))
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        QPolynomial::new(zip_with(&self.coeffs, &rhs.coeffs, |a, b| a - b))
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        QPolynomial::new(convolve(&self.coeffs, &rhs.coeffs, |a, b| a * b))
    }
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n), size (m+n)×(m+n).
pub fn sylvester_matrix(f: &IntPolynomial, g: &IntPolynomial) -> IntMatrix {
    let m = f.degree().expect("nonzero f");
    let n = g.degree().expect("nonzero g");
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    for i in 0..n {
        for (k, c) in f.descending().into_iter().enumerate() {
            s[(i, i + k)] = c;
        }
    }
    for i in 0..m {
        for (k, c) in g.descending().into_iter().enumerate() {
            s[(n + i, i + k)] = c;
        }
    }
    s
}

/// Res(f, g) as the determinant of the Sylvester matrix (fraction-free Bareiss).
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Integer {
    let (m, n) = (f.degree().expect("nonzero f"), g.degree().expect("nonzero g"));
    if m == 0 && n == 0 {
        return Integer::one();
    }
    if m == 0 {
        return f.coeff(0).pow(n as u32);
    }
    if n == 0 {
        return g.coeff(0).pow(m as u32);
    }
    det_bareiss(&sylvester_matrix(f, g))
}

/// disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f).
pub fn poly_discriminant(f: &IntPolynomial) -> Integer {
    let d = f.degree().expect("nonzero polynomial");
    if d == 0 {
        return Integer::one();
    }
    if d == 1 {
        return Integer::one();
    }
    let res = resultant(f, &f.derivative());
    let lc = f.leading().expect("nonzero");
    let r = res.div_floor(lc);
    if (d * (d - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn resultant_examples() {
        // Res(x - a, x - b) = a - b
        for a in -5..5 {
            for b in -5..5 {
                assert_eq!(resultant(&p(&[-a, 1]), &p(&[-b, 1])), int(b - a) * -1);
            }
        }
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[0, 1])), int(1));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[0, 2])), int(4));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(poly_discriminant(&p(&[1, 0, 1])), int(-4));
        assert_eq!(poly_discriminant(&p(&[-1, -1, 0, 1])), int(-23));
        assert_eq!(poly_discriminant(&p(&[-1, -1, 1])), int(5));
        assert_eq!(poly_discriminant(&p(&[1, 0, 5, 0, 1, 0, 1])), int(-11075584));
    }

    #[test]
    fn cubic_discriminant_formula() {
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                let expected = -4 * a * a * a - 27 * b * b;
                assert_eq!(poly_discriminant(&p(&[b, a, 0, 1])), int(expected));
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 5, 0, 1, 0, 1]).to_string(), "x^6 + x^4 + 5*x^2 + 1");
        assert_eq!(p(&[-1, -1, 1]).to_string(), "x^2 - x - 1");
        assert_eq!(p(&[]).to_string(), "0");
    }

    #[test]
    fn rational_ext_gcd() {
        let a = p(&[-1, 0, 1]).to_rational();
        let b = p(&[1, 1]).to_rational();
        let (g, s, t) = QPolynomial::ext_gcd(&a, &b);
        assert_eq!(g, p(&[1, 1]).to_rational());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }
}
