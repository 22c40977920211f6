//! Polynomials and linear algebra over 𝔽_p, with complete factorization by
//! squarefree decomposition, distinct-degree and equal-degree splitting.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::{Integer, IntPolynomial};

/// Largest modulus accepted by the deterministic primality check.
pub const MAX_MODULUS: u64 = 330_000_000_000_000;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn miller_rabin(n: u64) -> bool {
    let d0 = n - 1;
    let s = d0.trailing_zeros();
    let d = d0 >> s;
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17] {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Deterministic primality: trial division up to 10^6, then Miller–Rabin
/// with bases 2..17 (exact below 3.4·10^14). Larger moduli are rejected.
pub fn check_prime(p: &Integer) -> Result<u64> {
    let Some(v) = p.to_u64() else {
        if p.sign() == num_bigint::Sign::Minus {
            return Err(Error::NotPrime(p.to_string()));
        }
        return Err(Error::ModulusTooLarge(p.to_string()));
    };
    if v > MAX_MODULUS {
        return Err(Error::ModulusTooLarge(p.to_string()));
    }
    if is_prime_u64(v) {
        Ok(v)
    } else {
        Err(Error::NotPrime(p.to_string()))
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in super::factor::primes_below(1_000_001) {
        if q * q > n {
            return true;
        }
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    miller_rabin(n)
}

/// Polynomial over 𝔽_p with coefficients in `[0, p)`, ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModPPolynomial {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPPolynomial {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn from_int_poly(f: &IntPolynomial, p: u64) -> Self {
        let pb = Integer::from(p);
        Self::new(
            p,
            f.coeffs()
                .iter()
                .map(|c| {
                    let r = ((c % &pb) + &pb) % &pb;
                    r.to_u64().expect("reduced residue fits")
                })
                .collect(),
        )
    }

    /// Lift with coefficients in `[0, p)`.
    pub fn to_int_poly(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| mul_mod(c, k, self.p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            self.p,
            (0..n)
                .map(|i| {
                    add_mod(
                        *self.coeffs.get(i).unwrap_or(&0),
                        *o.coeffs.get(i).unwrap_or(&0),
                        self.p,
                    )
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            self.p,
            (0..n)
                .map(|i| {
                    sub_mod(
                        *self.coeffs.get(i).unwrap_or(&0),
                        *o.coeffs.get(i).unwrap_or(&0),
                        self.p,
                    )
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % pp;
            }
        }
        Self::new(p, out.into_iter().map(|c| c as u64).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let p = self.p;
        if self.coeffs.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(d.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = mul_mod(rem[i + dd], inv, p);
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = sub_mod(rem[i + j], mul_mod(c, dc, p), p);
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic gcd `g` with `s*a + t*b = g`.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, (i as u64) % p, p))
                .collect(),
        )
    }

    pub fn mul_mod_poly(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    /// `self^e mod m` for an arbitrary-size exponent.
    pub fn pow_mod_big(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul_mod_poly(&result, m);
            if e.bit(i) {
                result = result.mul_mod_poly(&base, m);
            }
        }
        result
    }

    pub fn pow_mod_u64(&self, e: u64, m: &Self) -> Self {
        self.pow_mod_big(&BigUint::from(e), m)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    /// p-th root of a polynomial whose exponents are all multiples of p.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }
}

impl fmt::Display for ModPPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.to_int_poly(), self.p)
    }
}

fn squarefree_decomposition(f: &ModPPolynomial) -> Vec<(ModPPolynomial, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let w0 = f.derivative();
    if w0.is_zero() {
        for (g, m) in squarefree_decomposition(&f.pth_root()) {
            out.push((g, m * p as usize));
        }
        return out;
    }
    let mut c = f.gcd(&w0);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if !z.is_one() {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, m * p as usize));
        }
    }
    out
}

fn distinct_degree(f: &ModPPolynomial) -> Vec<(ModPPolynomial, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut g = f.clone();
    let x = ModPPolynomial::x(p);
    let mut h = x.rem(&g);
    let mut d = 1;
    while g.deg() >= 2 * d {
        h = h.pow_mod_u64(p, &g);
        let factor = g.gcd(&h.sub(&x));
        if !factor.is_one() {
            g = g.div_exact(&factor);
            h = h.rem(&g);
            out.push((factor, d));
        }
        d += 1;
    }
    if g.deg() > 0 {
        let dg = g.deg();
        out.push((g.monic(), dg));
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng, p: u64, below: usize) -> ModPPolynomial {
    ModPPolynomial::new(p, (0..below).map(|_| rng.gen_range(0..p)).collect())
}

fn equal_degree(f: &ModPPolynomial, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ModPPolynomial>) {
    let n = f.deg();
    if n == d {
        out.push(f.monic());
        return;
    }
    let p = f.p;
    loop {
        let a = random_poly(rng, p, n);
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1)) over 𝔽_{2^d}
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul_mod_poly(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            a.pow_mod_big(&e, f).sub(&ModPPolynomial::one(p))
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            let other = f.div_exact(&g);
            equal_degree(&g, d, rng, out);
            equal_degree(&other, d, rng, out);
            return;
        }
    }
}

fn seed_for(f: &ModPPolynomial) -> u64 {
    let mut h = DefaultHasher::new();
    f.p.hash(&mut h);
    f.coeffs.hash(&mut h);
    h.finish()
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by degree then by ascending coefficient vector.
///
/// The leading coefficient is dropped; `f = lc(f) * ∏ g^m`.
pub fn factor_mod_p(f: &ModPPolynomial) -> Vec<(ModPPolynomial, usize)> {
    assert!(!f.is_zero(), "factoring the zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(f));
    let mut out = Vec::new();
    for (sq, m) in squarefree_decomposition(&f.monic()) {
        for (block, d) in distinct_degree(&sq) {
            let mut pieces = Vec::new();
            equal_degree(&block, d, &mut rng, &mut pieces);
            out.extend(pieces.into_iter().map(|g| (g, m)));
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.coeffs.cmp(&b.0.coeffs)));
    // equal irreducibles never appear twice after squarefree decomposition
    out
}

/// Factor an integer polynomial modulo a checked prime.
pub fn factor_int_poly_mod(f: &IntPolynomial, p: &Integer) -> Result<Vec<(ModPPolynomial, usize)>> {
    let p = check_prime(p)?;
    let fp = ModPPolynomial::from_int_poly(f, p);
    if fp.is_zero() {
        return Err(Error::Internal("polynomial vanishes modulo p".into()));
    }
    Ok(factor_mod_p(&fp))
}

/// Reduced row echelon form over 𝔽_p in place; returns pivot columns.
pub fn rref_mod_p(a: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let n = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(pi) = (r..n).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pi);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &s) in row.iter_mut().zip(pivot_row.iter()) {
                if s != 0 {
                    *x = sub_mod(*x, mul_mod(f, s, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Right kernel `{x : m·x = 0}` over 𝔽_p, as basis vectors.
pub fn kernel_mod_p(m: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a = m.to_vec();
    let pivots = rref_mod_p(&mut a, cols, p);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = sub_mod(0, a[r][f], p);
            }
            v
        })
        .collect()
}

/// Basis (in echelon form) of the row span of `vectors` over 𝔽_p.
pub fn span_mod_p(vectors: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a = vectors.to_vec();
    let k = rref_mod_p(&mut a, cols, p).len();
    a.truncate(k);
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: u64, c: &[u64]) -> ModPPolynomial {
        ModPPolynomial::new(p, c.to_vec())
    }

    fn reconstruct(factors: &[(ModPPolynomial, usize)], p: u64) -> ModPPolynomial {
        factors.iter().fold(ModPPolynomial::one(p), |acc, (g, m)| {
            (0..*m).fold(acc, |a, _| a.mul(g))
        })
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor_mod_p(&mp(2, &[1, 0, 1])), vec![(mp(2, &[1, 1]), 2)]);
        assert_eq!(factor_mod_p(&mp(5, &[1, 0, 1])), vec![(mp(5, &[2, 1]), 1), (mp(5, &[3, 1]), 1)]);
        assert_eq!(factor_mod_p(&mp(3, &[1, 0, 1])), vec![(mp(3, &[1, 0, 1]), 1)]);
    }

    #[test]
    fn factor_mixed_multiplicities() {
        // (x+1)^3 (x^2+x+1)^2 x over 𝔽_2 and an inseparable-looking case over 𝔽_3
        let p = 2;
        let f = reconstruct(&[(mp(p, &[1, 1]), 3), (mp(p, &[1, 1, 1]), 2), (mp(p, &[0, 1]), 1)], p);
        let fac = factor_mod_p(&f);
        assert_eq!(reconstruct(&fac, p), f);
        assert_eq!(fac.len(), 3);
        let g = reconstruct(&[(mp(3, &[1, 0, 1]), 3), (mp(3, &[1, 1]), 1)], 3);
        let fac = factor_mod_p(&g);
        assert_eq!(fac, vec![(mp(3, &[1, 1]), 1), (mp(3, &[1, 0, 1]), 3)]);
    }

    #[test]
    fn primality() {
        assert_eq!(check_prime(&Integer::from(13)).unwrap(), 13);
        assert!(matches!(check_prime(&Integer::from(15)), Err(Error::NotPrime(_))));
        assert!(matches!(check_prime(&Integer::from(1)), Err(Error::NotPrime(_))));
        assert!(matches!(
            check_prime(&Integer::from(1_000_000_000_000_000_003u64)),
            Err(Error::ModulusTooLarge(_))
        ));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
    }

    #[test]
    fn kernel_small() {
        let m = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let k = kernel_mod_p(&m, 3, 2);
        assert_eq!(k, vec![vec![1, 1, 1]]);
    }
}
