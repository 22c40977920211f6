//! Exact arithmetic foundation: big integers and rationals, dense univariate
//! polynomials over ℤ, ℚ and 𝔽_p, dense matrices with Hermite normal form,
//! resultants, and integer factorization for discriminants.

pub mod factor;
pub mod matrix;
pub mod modp;
pub mod poly;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use factor::{factor_integer, is_probable_prime, Factorization};
pub use matrix::{hnf, IntMatrix, Matrix, RationalMatrix};
pub use modp::{check_prime, factor_mod_p, ModPPolynomial};
pub use poly::{poly_discriminant, resultant, IntPolynomial, QPolynomial};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;
/// Reduced fraction with positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn rat_int(n: Integer) -> Rational {
    Rational::from_integer(n)
}

/// Extended gcd with the canonical cofactor choice `|u| <= |b| / (2g)`.
///
/// Returns `(g, u, v)` with `g > 0` and `u*a + v*b = g`.
pub fn int_gcd_bezout(a: &Integer, b: &Integer) -> Result<(Integer, Integer, Integer)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    if b.is_zero() {
        return Ok((a.abs(), a.signum(), Integer::zero()));
    }
    if a.is_zero() {
        return Ok((b.abs(), Integer::zero(), b.signum()));
    }
    let ext = a.extended_gcd(b);
    let (mut g, mut u) = (ext.gcd, ext.x);
    if g.is_negative() {
        g = -g;
        u = -u;
    }
    // u is determined modulo |b/g|; pick the representative in (-m/2, m/2].
    let m = (b / &g).abs();
    u = u.mod_floor(&m);
    if &u * 2 > m {
        u -= &m;
    }
    let v = (&g - &u * a) / b;
    debug_assert_eq!(&u * a + &v * b, g);
    Ok((g, u, v))
}

/// p-adic valuation of a nonzero integer.
pub fn valuation_int(n: &Integer, p: &Integer) -> u32 {
    debug_assert!(!n.is_zero());
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Squarefree kernel with sign: the unique squarefree `k` with `n = k * s^2`.
pub fn squarefree_kernel(n: &Integer) -> Result<Integer> {
    if n.is_zero() {
        return Ok(Integer::zero());
    }
    let fac = factor_integer(&n.abs())?;
    let mut k = n.signum();
    for (p, e) in fac.primes() {
        if e % 2 == 1 {
            k *= p;
        }
    }
    Ok(k)
}

pub fn is_squarefree(n: &Integer) -> Result<bool> {
    if n.is_zero() {
        return Ok(false);
    }
    Ok(factor_integer(&n.abs())?.primes().iter().all(|(_, e)| *e == 1))
}

/// Least common multiple of the denominators of a rational slice.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Integer {
    xs.into_iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_examples() {
        assert_eq!(int_gcd_bezout(&int(3), &int(2)).unwrap(), (int(1), int(1), int(-1)));
        assert_eq!(int_gcd_bezout(&int(6), &int(4)).unwrap(), (int(2), int(1), int(-1)));
        assert_eq!(int_gcd_bezout(&int(-7), &int(0)).unwrap(), (int(7), int(-1), int(0)));
        assert_eq!(int_gcd_bezout(&int(7), &int(0)).unwrap(), (int(7), int(1), int(0)));
        assert_eq!(int_gcd_bezout(&int(0), &int(0)), Err(Error::BothZero));
    }

    #[test]
    fn bezout_small_exhaustive() {
        for a in -30i64..=30 {
            for b in -30i64..=30 {
                if a == 0 && b == 0 {
                    continue;
                }
                let (g, u, v) = int_gcd_bezout(&int(a), &int(b)).unwrap();
                assert_eq!(g, int(num_integer::gcd(a, b)));
                assert_eq!(&u * a + &v * b, g);
                if b != 0 {
                    assert!(&u.abs() * 2 * &g <= int(b.abs()), "a={a} b={b} u={u}");
                }
            }
        }
    }

    #[test]
    fn kernels() {
        assert_eq!(squarefree_kernel(&int(65)).unwrap(), int(65));
        assert_eq!(squarefree_kernel(&int(-12)).unwrap(), int(-3));
        assert_eq!(squarefree_kernel(&int(25)).unwrap(), int(1));
        assert!(is_squarefree(&int(21)).unwrap());
        assert!(!is_squarefree(&int(18)).unwrap());
        assert_eq!(valuation_int(&int(-173056), &int(2)), 10);
        assert_eq!(valuation_int(&int(-173056), &int(13)), 2);
    }
}
