//! Fractional ideals of an order as Hermite-normal-form lattices, prime
//! decomposition of pO and ℘-adic valuations.
//!
//! Ideal coordinates are always taken with respect to the integral basis of
//! the order. An ideal is `hnf / denominator` with `gcd(content, denominator) = 1`,
//! so equality of ideals is equality of the stored data.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::matrix::{hnf, hnf_with_multiple, inverse, vec_mat};
use crate::arith::modp::{check_prime, factor_mod_p, span_mod_p, ModPPolynomial};
use crate::arith::{valuation_int, IntMatrix, Integer, Rational, RationalMatrix};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::order::Order;

/// Element attempts before the idempotent splitting gives up.
const SPLIT_ATTEMPTS: usize = 400;

#[derive(Clone, Debug)]
pub struct FractionalIdeal {
    order: Order,
    denominator: Integer,
    hnf: IntMatrix,
}

impl PartialEq for FractionalIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.denominator == other.denominator && self.hnf == other.hnf
    }
}

impl Eq for FractionalIdeal {}

fn clear_rows(order: &Order, rows: Vec<Vec<Rational>>) -> (Integer, IntMatrix) {
    let d = order.degree();
    RationalMatrix::from_rows(rows, d).clear_denominators()
}

impl FractionalIdeal {
    /// The ideal whose ℤ-lattice is spanned by `rows / denominator`. The span
    /// must already be an O-module; use [`FractionalIdeal::from_generators`]
    /// otherwise.
    pub fn from_rows(order: &Order, denominator: Integer, rows: &IntMatrix) -> Result<Self> {
        Self::normalize(order, denominator, hnf(rows))
    }

    /// As [`FractionalIdeal::from_rows`] when `modulus·O` is known to lie in
    /// the integer lattice spanned by `rows`.
    fn from_rows_with_multiple(order: &Order, denominator: Integer, rows: &IntMatrix, modulus: &Integer) -> Result<Self> {
        if modulus.is_zero() {
            return Self::from_rows(order, denominator, rows);
        }
        Self::normalize(order, denominator, hnf_with_multiple(rows, &modulus.abs()))
    }

    fn normalize(order: &Order, mut denominator: Integer, mut h: IntMatrix) -> Result<Self> {
        let d = order.degree();
        if h.nrows() == 0 {
            return Err(Error::ZeroIdeal);
        }
        if h.nrows() != d {
            return Err(Error::Internal("nonzero ideal lattice must have full rank".into()));
        }
        let g = h.content().gcd(&denominator);
        if !g.is_one() {
            h = h.map(|x| x / &g);
            denominator /= &g;
        }
        Ok(Self { order: order.clone(), denominator, hnf: h })
    }

    /// The O-module generated by the given elements.
    pub fn from_generators(order: &Order, gens: &[FieldElement]) -> Result<Self> {
        let d = order.degree();
        let mut rows = Vec::with_capacity(gens.len() * d);
        for g in gens {
            if g.field() != order.field() {
                return Err(Error::FieldMismatch);
            }
            let c = order.coords_of(g);
            for w in 0..d {
                let mut e = vec![Rational::zero(); d];
                e[w] = Rational::one();
                rows.push(order.mul_coords_q(&c, &e));
            }
        }
        if rows.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let (den, m) = clear_rows(order, rows);
        Self::from_rows(order, den, &m)
    }

    pub fn unit(order: &Order) -> Self {
        let d = order.degree();
        Self { order: order.clone(), denominator: Integer::one(), hnf: IntMatrix::identity(d) }
    }

    /// The principal ideal aO.
    pub fn principal(order: &Order, a: &FieldElement) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        Self::from_generators(order, std::slice::from_ref(a))
    }

    /// The principal ideal (n/m)·O.
    pub fn from_rational(order: &Order, q: &Rational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let d = order.degree();
        let h = IntMatrix::identity(d).map(|x| x * q.numer().abs());
        Self::normalize(order, q.denom().clone(), h)
    }

    pub fn from_integer(order: &Order, n: &Integer) -> Result<Self> {
        Self::from_rational(order, &Rational::from_integer(n.clone()))
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn denominator(&self) -> &Integer {
        &self.denominator
    }

    /// Rows are `denominator·(basis vectors)` in integral-basis coordinates.
    pub fn hnf(&self) -> &IntMatrix {
        &self.hnf
    }

    pub fn is_integral(&self) -> bool {
        self.denominator.is_one()
    }

    /// ℤ-basis of the ideal as field elements.
    pub fn basis(&self) -> Vec<FieldElement> {
        let den = Rational::new(Integer::one(), self.denominator.clone());
        (0..self.order.degree()).map(|i| self.order.element(self.hnf.row(i)).scale(&den)).collect()
    }

    /// Basis rows as rational integral-basis coordinates.
    fn rational_rows(&self) -> Vec<Vec<Rational>> {
        let den = Rational::from_integer(self.denominator.clone());
        self.hnf.row_vecs().into_iter().map(|r| r.into_iter().map(|x| Rational::from_integer(x) / &den).collect()).collect()
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch)
        }
    }

    /// |det| of the numerator lattice.
    fn lattice_det(&self) -> Integer {
        self.hnf.diagonal().into_iter().fold(Integer::one(), |a, b| a * b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let d = self.order.degree();
        let mut rows = Vec::with_capacity(d * d);
        for a in self.hnf.row_vecs() {
            for b in other.hnf.row_vecs() {
                rows.push(self.order.mul_coords(&a, &b));
            }
        }
        let modulus = self.lattice_det() * other.lattice_det();
        Self::from_rows_with_multiple(
            &self.order,
            &self.denominator * &other.denominator,
            &IntMatrix::from_rows(rows, d),
            &modulus,
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let d = self.order.degree();
        let l = self.denominator.lcm(&other.denominator);
        let sa = &l / &self.denominator;
        let sb = &l / &other.denominator;
        let mut rows: Vec<Vec<Integer>> = self.hnf.row_vecs().into_iter().map(|r| r.into_iter().map(|x| x * &sa).collect()).collect();
        rows.extend(other.hnf.row_vecs().into_iter().map(|r| r.into_iter().map(|x| x * &sb).collect::<Vec<_>>()));
        let modulus = self.lattice_det() * &sa;
        Self::from_rows_with_multiple(&self.order, l, &IntMatrix::from_rows(rows, d), &modulus)
    }

    /// aI for a field element a.
    pub fn scale(&self, a: &FieldElement) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let c = self.order.coords_of(a);
        let rows = self.rational_rows().iter().map(|r| self.order.mul_coords_q(r, &c)).collect();
        let (den, m) = clear_rows(&self.order, rows);
        Self::from_rows(&self.order, den, &m)
    }

    /// Trace dual {x : Tr(xI) ⊆ ℤ}.
    pub fn dual(&self) -> Result<Self> {
        let g = self.order.gram_matrix().to_rational();
        let b = RationalMatrix::from_rows(self.rational_rows(), self.order.degree());
        let c = inverse(&(&b * &g))?.transpose();
        let (den, m) = c.clear_denominators();
        Self::from_rows(&self.order, den, &m)
    }

    /// I⁻¹ = (I·Ô)^∨ where Ô is the codifferent.
    pub fn inverse(&self) -> Result<Self> {
        self.mul(&codifferent(&self.order)?)?.dual()
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let mut base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::unit(&self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Absolute norm |det(hnf)| / denominator^d.
    pub fn norm(&self) -> Rational {
        Rational::new(self.lattice_det().abs(), self.denominator.pow(self.order.degree() as u32))
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        if a.field() != self.order.field() {
            return false;
        }
        let den = Rational::from_integer(self.denominator.clone());
        let x: Vec<Rational> = self.order.coords_of(a).into_iter().map(|c| c * &den).collect();
        let inv = inverse(&self.hnf.to_rational()).expect("full rank");
        vec_mat(&x, &inv).iter().all(|c| c.is_integer())
    }

    /// I ⊆ J.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    /// Integral-ideal numerator `denominator·I`.
    fn numerator(&self) -> Self {
        Self { order: self.order.clone(), denominator: Integer::one(), hnf: self.hnf.clone() }
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .hnf
            .row_vecs()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        if self.denominator.is_one() {
            write!(f, "<{}>", rows.join(", "))
        } else {
            write!(f, "1/{}*<{}>", self.denominator, rows.join(", "))
        }
    }
}

/// The codifferent Ô = {x : Tr(xO) ⊆ ℤ}, basis rows G⁻¹.
pub fn codifferent(order: &Order) -> Result<FractionalIdeal> {
    FractionalIdeal::unit(order).dual()
}

/// A prime ideal ℘ above p with ramification index e and residue degree f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub p: Integer,
    pub ideal: FractionalIdeal,
    pub e: u32,
    pub f: u32,
    /// An element of ℘⁻¹ outside O; lies in (1/p)O.
    pub valuation_element: FieldElement,
}

impl PrimeIdeal {
    fn new(order: &Order, p: &Integer, ideal: FractionalIdeal) -> Result<Self> {
        let norm = ideal.norm();
        if !norm.is_integer() {
            return Err(Error::Internal("prime ideal has fractional norm".into()));
        }
        let f = valuation_int(&norm.to_integer(), p);
        let inv = ideal.inverse()?;
        let valuation_element = inv
            .basis()
            .into_iter()
            .find(|b| !order.contains(b))
            .ok_or_else(|| Error::Internal("inverse of a prime ideal lies in the order".into()))?;
        let mut prime = Self { p: p.clone(), ideal, e: 0, f, valuation_element };
        let po = FractionalIdeal::from_integer(order, p)?;
        prime.e = u32::try_from(valuation_integral(&po, &prime)).expect("nonnegative");
        Ok(prime)
    }

    /// Two-sided comparison key: (e, f, HNF rows).
    fn sort_key(&self) -> (u32, u32, Vec<Vec<Integer>>) {
        (self.e, self.f, self.ideal.hnf().row_vecs())
    }
}

fn cmp_primes(a: &PrimeIdeal, b: &PrimeIdeal) -> Ordering {
    a.sort_key().cmp(&b.sort_key())
}

fn valuation_integral(j: &FractionalIdeal, prime: &PrimeIdeal) -> i64 {
    debug_assert!(j.is_integral());
    let mut cur = j.clone();
    let mut v = 0;
    loop {
        let next = cur.scale(&prime.valuation_element).expect("nonzero");
        if !next.is_integral() {
            return v;
        }
        cur = next;
        v += 1;
    }
}

/// Exact ℘-adic valuation of a nonzero fractional ideal.
pub fn valuation(a: &FractionalIdeal, prime: &PrimeIdeal) -> Result<i64> {
    if a.order() != prime.ideal.order() {
        return Err(Error::OrderMismatch);
    }
    let num = a.numerator();
    let v_den = valuation_int(a.denominator(), &prime.p) as i64;
    Ok(valuation_integral(&num, prime) - prime.e as i64 * v_den)
}

/// Prime ideal factorization of pO, sorted by (e, f, HNF).
pub fn decompose_prime(order: &Order, p: &Integer) -> Result<Vec<PrimeIdeal>> {
    let pp = check_prime(p)?;
    let mut primes = if (order.index() % p).is_zero() {
        decompose_by_idempotents(order, p, pp)?
    } else {
        decompose_by_dedekind(order, p, pp)?
    };
    primes.sort_by(cmp_primes);
    let total: u32 = primes.iter().map(|q| q.e * q.f).sum();
    if total as usize != order.degree() {
        return Err(Error::Internal(format!("Σ e·f = {total} differs from the degree at p = {p}")));
    }
    Ok(primes)
}

/// ℘ᵢ = pO + gᵢ(θ)O for the irreducible factors gᵢ of f mod p. Valid when p ∤ [O : ℤ[θ]].
pub fn decompose_by_dedekind(order: &Order, p: &Integer, pp: u64) -> Result<Vec<PrimeIdeal>> {
    let field = order.field();
    let fbar = ModPPolynomial::from_int_poly(field.poly(), pp);
    let po = FractionalIdeal::from_integer(order, p)?;
    let mut out = Vec::new();
    for (g, mult) in factor_mod_p(&fbar) {
        let g_theta = field.element_from_poly(&g.to_int_poly().to_rational());
        let ideal = if g_theta.is_zero() {
            po.clone()
        } else {
            po.add(&FractionalIdeal::principal(order, &g_theta)?)?
        };
        let prime = PrimeIdeal::new(order, p, ideal)?;
        if prime.e as usize != mult || prime.f as usize != g.deg() {
            return Err(Error::Internal(format!(
                "Dedekind factor of degree {} and multiplicity {mult} gave (e, f) = ({}, {})",
                g.deg(),
                prime.e,
                prime.f
            )));
        }
        out.push(prime);
    }
    Ok(out)
}

enum Split {
    Local,
    Parts(Vec<Vec<u64>>),
}

/// Splits O/pO into local components via idempotents and returns the maximal
/// ideal above each. Works for every p.
pub fn decompose_by_idempotents(order: &Order, p: &Integer, pp: u64) -> Result<Vec<PrimeIdeal>> {
    let d = order.degree();
    let alg = order.residue_algebra(pp);
    let rad = alg.radical();
    let mut hasher = DefaultHasher::new();
    (pp, order.discriminant().to_string()).hash(&mut hasher);
    let mut rng = ChaCha8Rng::seed_from_u64(hasher.finish());

    let split = |e: &[u64], rng: &mut ChaCha8Rng| -> Result<Split> {
        let comp: Vec<Vec<u64>> = (0..d).map(|i| alg.mul(e, &alg.unit_vector(i))).collect();
        let dim = span_mod_p(&comp, d, pp).len();
        let rad_part: Vec<Vec<u64>> = rad.iter().map(|r| alg.mul(e, r)).collect();
        let target = dim - span_mod_p(&rad_part, d, pp).len();
        if target == 1 {
            return Ok(Split::Local);
        }
        for attempt in 0..SPLIT_ATTEMPTS {
            let y: Vec<u64> = if attempt < d {
                alg.unit_vector(attempt)
            } else {
                (0..d).map(|_| rng.gen_range(0..pp)).collect()
            };
            let x = alg.mul(e, &y);
            let m = alg.min_poly(&x, e);
            let factors = factor_mod_p(&m);
            if factors.len() == 1 {
                if factors[0].0.deg() == target {
                    return Ok(Split::Local);
                }
                continue;
            }
            let mut parts = Vec::with_capacity(factors.len());
            for (pi, k) in &factors {
                let pk = (1..*k).fold(pi.clone(), |acc, _| acc.mul(pi));
                let q = m.div_exact(&pk);
                let (_, _, t) = ModPPolynomial::ext_gcd(&pk, &q);
                let idem = t.mul(&q).rem(&m);
                parts.push(alg.eval_poly(&idem, &x, e));
            }
            return Ok(Split::Parts(parts));
        }
        Err(Error::Internal(format!("idempotent splitting at p = {pp} did not converge")))
    };

    let mut pending = vec![alg.one()];
    let mut local = Vec::new();
    while let Some(e) = pending.pop() {
        match split(&e, &mut rng)? {
            Split::Local => local.push(e),
            Split::Parts(parts) => pending.extend(parts),
        }
    }

    let pz = Integer::from(pp);
    let one = alg.one();
    let mut out = Vec::with_capacity(local.len());
    for e in &local {
        let complement: Vec<u64> = one.iter().zip(e).map(|(&a, &b)| crate::arith::modp::sub_mod(a, b, pp)).collect();
        let mut rows: Vec<Vec<Integer>> =
            rad.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect();
        for i in 0..d {
            let v = alg.mul(&complement, &alg.unit_vector(i));
            rows.push(v.into_iter().map(Integer::from).collect());
        }
        let ideal = FractionalIdeal::from_rows_with_multiple(order, Integer::one(), &IntMatrix::from_rows(rows, d), &pz)?;
        out.push(PrimeIdeal::new(order, p, ideal)?);
    }
    Ok(out)
}

/// ∏ ℘ᵢ^{eᵢ}.
pub fn reconstruct(order: &Order, primes: &[PrimeIdeal]) -> Result<FractionalIdeal> {
    primes.iter().try_fold(FractionalIdeal::unit(order), |acc, q| acc.mul(&q.ideal.pow(q.e as i64)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::field::NumberField;
    use crate::order::round2;

    fn maximal(c: &[i64]) -> Order {
        round2(&NumberField::from_i64(c).unwrap()).unwrap()
    }

    fn ef(primes: &[PrimeIdeal]) -> Vec<(u32, u32)> {
        primes.iter().map(|q| (q.e, q.f)).collect()
    }

    #[test]
    fn unit_and_principal() {
        let o = maximal(&[1, 0, 1]);
        let unit = FractionalIdeal::unit(&o);
        assert_eq!(unit.mul(&unit).unwrap(), unit);
        assert_eq!(unit.inverse().unwrap(), unit);
        assert_eq!(unit.norm(), rat(1, 1));
        let two = FractionalIdeal::from_integer(&o, &int(2)).unwrap();
        assert_eq!(two.inverse().unwrap(), FractionalIdeal::from_rational(&o, &rat(1, 2)).unwrap());
        assert_eq!(two.norm(), rat(4, 1));
        assert_eq!(FractionalIdeal::from_integer(&o, &int(0)), Err(Error::ZeroIdeal));
    }

    #[test]
    fn different_of_gaussian_integers() {
        let o = maximal(&[1, 0, 1]);
        let diff = codifferent(&o).unwrap().inverse().unwrap();
        assert_eq!(diff.norm(), rat(4, 1));
        let primes = decompose_prime(&o, &int(2)).unwrap();
        assert_eq!(ef(&primes), vec![(2, 1)]);
        assert_eq!(valuation(&diff, &primes[0]).unwrap(), 2);
        assert_eq!(valuation(&FractionalIdeal::unit(&o), &primes[0]).unwrap(), 0);
    }

    #[test]
    fn sextic_decompositions() {
        let o = maximal(&[1, 0, 5, 0, 1, 0, 1]);
        let at2 = decompose_prime(&o, &int(2)).unwrap();
        assert_eq!(ef(&at2), vec![(1, 2), (4, 1)]);
        let two = FractionalIdeal::from_integer(&o, &int(2)).unwrap();
        assert_eq!(reconstruct(&o, &at2).unwrap(), two);
        assert_eq!(at2[0].ideal.add(&at2[1].ideal).unwrap(), FractionalIdeal::unit(&o));
        let at13 = decompose_prime(&o, &int(13)).unwrap();
        assert_eq!(ef(&at13), vec![(1, 1), (1, 1), (2, 2)]);
        let at3 = decompose_prime(&o, &int(3)).unwrap();
        assert_eq!(at3.iter().map(|q| q.e * q.f).sum::<u32>(), 6);
    }

    #[test]
    fn both_routes_agree_when_p_does_not_divide_index() {
        let o = maximal(&[1, 0, 5, 0, 1, 0, 1]);
        for p in [3u64, 5, 7, 13] {
            let pz = Integer::from(p);
            let mut a = decompose_by_dedekind(&o, &pz, p).unwrap();
            let mut b = decompose_by_idempotents(&o, &pz, p).unwrap();
            a.sort_by(cmp_primes);
            b.sort_by(cmp_primes);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn golden_ratio_field() {
        let o = maximal(&[-1, -1, 1]);
        assert_eq!(ef(&decompose_prime(&o, &int(5)).unwrap()), vec![(2, 1)]);
        assert_eq!(ef(&decompose_prime(&o, &int(11)).unwrap()), vec![(1, 1), (1, 1)]);
        assert_eq!(ef(&decompose_prime(&o, &int(2)).unwrap()), vec![(1, 2)]);
        assert_eq!(decompose_prime(&o, &int(9)), Err(Error::NotPrime("9".into())));
    }
}
