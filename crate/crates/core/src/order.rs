//! Orders of a number field and the computation of the maximal order.
//!
//! An order is stored as a lattice in power-basis coordinates: the rows of an
//! integer matrix `B` divided by a common denominator. `B` is kept lower
//! triangular (Hermite form read right to left), so the first basis element
//! is always 1 and the k-th involves only `1, θ, …, θ^{k-1}`.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::matrix::{det_bareiss, hnf, inverse, vec_mat, vec_mat_int};
use crate::arith::modp::{check_prime, factor_mod_p, kernel_mod_p, span_mod_p, ModPPolynomial};
use crate::arith::{factor_integer, IntMatrix, IntPolynomial, Integer, Rational, RationalMatrix};
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};

#[derive(Debug)]
struct OrderData {
    field: NumberField,
    denominator: Integer,
    basis: IntMatrix,
    /// Inverse of `basis / denominator`: power coordinates → basis coordinates.
    to_basis: RationalMatrix,
    /// `table[i]` row j = basis coordinates of ωᵢ·ωⱼ.
    table: Vec<IntMatrix>,
    traces: Vec<Integer>,
    gram: IntMatrix,
    discriminant: Integer,
    index: Integer,
}

/// A full-rank multiplicatively closed lattice containing 1. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Order(Arc<OrderData>);

impl PartialEq for Order {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.denominator == other.0.denominator
                && self.0.basis == other.0.basis)
    }
}

impl Eq for Order {}

/// Hermite form with pivots on the diagonal, zeros to the right of each pivot.
pub(crate) fn lower_hnf(m: &IntMatrix) -> IntMatrix {
    let n = m.ncols();
    let flipped = IntMatrix::from_rows(
        m.row_vecs().into_iter().map(|r| r.into_iter().rev().collect()).collect(),
        n,
    );
    let h = hnf(&flipped);
    let rows = h.row_vecs().into_iter().rev().map(|r| r.into_iter().rev().collect()).collect();
    IntMatrix::from_rows(rows, n)
}

pub(crate) fn residue(x: &Integer, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    x.mod_floor(&Integer::from(p)).to_u64().expect("reduced below p")
}

impl Order {
    /// ℤ[θ].
    pub fn equation_order(field: &NumberField) -> Self {
        let d = field.degree();
        Self::from_lattice(field, Integer::one(), &IntMatrix::identity(d))
            .expect("the equation order is a ring")
    }

    /// The order spanned by the rows of `rows / denominator` (power-basis
    /// coordinates). The rows must span a lattice of rank d that is closed
    /// under multiplication and contains 1.
    pub fn from_lattice(field: &NumberField, denominator: Integer, rows: &IntMatrix) -> Result<Self> {
        let d = field.degree();
        let mut h = lower_hnf(rows);
        if h.nrows() != d {
            return Err(Error::Internal("order lattice is not of full rank".into()));
        }
        let mut den = denominator;
        let g = h.content().gcd(&den);
        if !g.is_one() {
            h = h.map(|x| x / &g);
            den /= &g;
        }
        let scaled = h.to_rational().map(|x| x / Rational::from_integer(den.clone()));
        let to_basis = inverse(&scaled)?;
        let basis_elems: Vec<FieldElement> = (0..d).map(|i| field.element(scaled.row(i).to_vec())).collect();
        if basis_elems[0] != field.one() {
            return Err(Error::Internal("order does not contain 1 as first basis element".into()));
        }
        let mut table = Vec::with_capacity(d);
        for wi in &basis_elems {
            let mut rows = Vec::with_capacity(d);
            for wj in &basis_elems {
                let c = vec_mat((wi * wj).coords(), &to_basis);
                if c.iter().any(|x| !x.is_integer()) {
                    return Err(Error::Internal("lattice is not closed under multiplication".into()));
                }
                rows.push(c.into_iter().map(|x| x.to_integer()).collect());
            }
            table.push(IntMatrix::from_rows(rows, d));
        }
        let traces: Vec<Integer> = basis_elems.iter().map(|w| w.trace().to_integer()).collect();
        let mut gram = IntMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                gram[(i, j)] = table[i]
                    .row(j)
                    .iter()
                    .zip(&traces)
                    .map(|(c, t)| c * t)
                    .fold(Integer::zero(), |a, b| a + b);
            }
        }
        let discriminant = det_bareiss(&gram);
        let index = den.pow(d as u32) / det_bareiss(&h).abs();
        Ok(Self(Arc::new(OrderData {
            field: field.clone(),
            denominator: den,
            basis: h,
            to_basis,
            table,
            traces,
            gram,
            discriminant,
            index,
        })))
    }

    pub fn field(&self) -> &NumberField {
        &self.0.field
    }

    pub fn degree(&self) -> usize {
        self.0.field.degree()
    }

    pub fn denominator(&self) -> &Integer {
        &self.0.denominator
    }

    /// Rows are `denominator·ωᵢ` in power-basis coordinates.
    pub fn basis_matrix(&self) -> &IntMatrix {
        &self.0.basis
    }

    pub fn discriminant(&self) -> &Integer {
        &self.0.discriminant
    }

    /// Index [O : ℤ[θ]].
    pub fn index(&self) -> &Integer {
        &self.0.index
    }

    /// Gram matrix of the trace form, entries Tr(ωᵢωⱼ).
    pub fn gram_matrix(&self) -> &IntMatrix {
        &self.0.gram
    }

    /// Tr(ωᵢ) for each basis element.
    pub fn basis_traces(&self) -> &[Integer] {
        &self.0.traces
    }

    /// Matrix of multiplication by ωᵢ in basis coordinates.
    pub fn structure_matrix(&self, i: usize) -> &IntMatrix {
        &self.0.table[i]
    }

    pub fn basis_element(&self, i: usize) -> FieldElement {
        let mut c = vec![Integer::zero(); self.degree()];
        c[i] = Integer::one();
        self.element(&c)
    }

    pub fn basis(&self) -> Vec<FieldElement> {
        (0..self.degree()).map(|i| self.basis_element(i)).collect()
    }

    /// Field element with the given integral-basis coordinates.
    pub fn element(&self, coords: &[Integer]) -> FieldElement {
        let v = vec_mat_int(coords, &self.0.basis);
        let den = Rational::from_integer(self.0.denominator.clone());
        self.field().element(v.into_iter().map(|x| Rational::from_integer(x) / &den).collect())
    }

    /// Rational coordinates of a field element in the integral basis.
    pub fn coords_of(&self, a: &FieldElement) -> Vec<Rational> {
        vec_mat(a.coords(), &self.0.to_basis)
    }

    /// Integral coordinates when `a` lies in the order.
    pub fn integral_coords(&self, a: &FieldElement) -> Option<Vec<Integer>> {
        let c = self.coords_of(a);
        c.iter().all(|x| x.is_integer()).then(|| c.into_iter().map(|x| x.to_integer()).collect())
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        self.integral_coords(a).is_some()
    }

    /// Product of two elements given in basis coordinates.
    pub fn mul_coords(&self, a: &[Integer], b: &[Integer]) -> Vec<Integer> {
        let d = self.degree();
        let mut out = vec![Integer::zero(); d];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let row = vec_mat_int(b, &self.0.table[i]);
            for (o, r) in out.iter_mut().zip(row) {
                *o += ai * r;
            }
        }
        out
    }

    /// Rational version of [`Order::mul_coords`].
    pub fn mul_coords_q(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let d = self.degree();
        let mut out = vec![Rational::zero(); d];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let t = self.0.table[i].to_rational();
            for (o, r) in out.iter_mut().zip(vec_mat(b, &t)) {
                *o += ai * r;
            }
        }
        out
    }

    /// Trace of an element given in basis coordinates.
    pub fn trace_coords(&self, a: &[Integer]) -> Integer {
        a.iter().zip(&self.0.traces).map(|(x, t)| x * t).fold(Integer::zero(), |s, v| s + v)
    }

    /// Checks that every ωᵢωⱼ has integral coordinates and that ℤ[θ] ⊆ O.
    pub fn verify_ring(&self) -> bool {
        let field = self.field();
        let mut power = field.one();
        for _ in 0..self.degree() {
            if !self.contains(&power) {
                return false;
            }
            power = &power * &field.theta();
        }
        let b = self.basis();
        b.iter().all(|wi| b.iter().all(|wj| self.contains(&(wi * wj))))
    }

    /// 𝔽_p-algebra O/pO with structure constants reduced mod p.
    pub(crate) fn residue_algebra(&self, p: u64) -> ResidueAlgebra {
        let d = self.degree();
        let table = (0..d)
            .map(|i| (0..d).map(|j| self.0.table[i].row(j).iter().map(|x| residue(x, p)).collect()).collect())
            .collect();
        ResidueAlgebra { p, d, table }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis().iter().map(|w| w.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// The finite algebra O/pO in the reduced integral basis.
#[derive(Clone, Debug)]
pub(crate) struct ResidueAlgebra {
    pub p: u64,
    pub d: usize,
    /// `table[i][j]` = coordinates of ωᵢωⱼ mod p.
    table: Vec<Vec<Vec<u64>>>,
}

impl ResidueAlgebra {
    pub fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.d];
        v[0] = 1;
        v
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        use crate::arith::modp::{add_mod, mul_mod};
        let p = self.p;
        let mut out = vec![0u64; self.d];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = mul_mod(ai, bj, p);
                for (o, &t) in out.iter_mut().zip(&self.table[i][j]) {
                    if t != 0 {
                        *o = add_mod(*o, mul_mod(c, t, p), p);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
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

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| crate::arith::modp::add_mod(x, y, self.p)).collect()
    }

    pub fn scale(&self, a: &[u64], k: u64) -> Vec<u64> {
        a.iter().map(|&x| crate::arith::modp::mul_mod(x, k, self.p)).collect()
    }

    pub fn unit_vector(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.d];
        v[i] = 1;
        v
    }

    /// The nilradical: kernel of x ↦ x^{p^k} with p^k ≥ d.
    pub fn radical(&self) -> Vec<Vec<u64>> {
        let mut q = self.p;
        while (q as u128) < self.d as u128 {
            q *= self.p;
        }
        let images: Vec<Vec<u64>> = (0..self.d).map(|i| self.pow(&self.unit_vector(i), q)).collect();
        // left kernel of the image rows = right kernel of the transpose
        let transposed: Vec<Vec<u64>> = (0..self.d).map(|c| images.iter().map(|r| r[c]).collect()).collect();
        span_mod_p(&kernel_mod_p(&transposed, self.d, self.p), self.d, self.p)
    }

    /// Evaluates a polynomial over 𝔽_p at `x`, with `unit` playing the role of 1.
    pub fn eval_poly(&self, g: &ModPPolynomial, x: &[u64], unit: &[u64]) -> Vec<u64> {
        let mut acc = vec![0; self.d];
        for &c in g.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, &self.scale(unit, c));
        }
        acc
    }

    /// Minimal polynomial of `x` inside the unital subalgebra with identity `unit`.
    pub fn min_poly(&self, x: &[u64], unit: &[u64]) -> ModPPolynomial {
        let p = self.p;
        let mut powers = vec![unit.to_vec()];
        loop {
            let next = self.mul(powers.last().expect("nonempty"), x);
            powers.push(next);
            let k = powers.len() - 1;
            let transposed: Vec<Vec<u64>> = (0..self.d).map(|c| powers.iter().map(|r| r[c]).collect()).collect();
            let ker = kernel_mod_p(&transposed, k + 1, p);
            if let Some(rel) = ker.into_iter().find(|v| v[k] != 0) {
                return ModPPolynomial::new(p, rel).monic();
            }
            assert!(k <= self.d, "Krylov sequence failed to become dependent");
        }
    }
}

/// Outcome of Dedekind's criterion at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DedekindVerdict {
    pub p: Integer,
    pub is_p_maximal: bool,
    /// Elements T(θ)θ^i/p that enlarge ℤ[θ]; empty iff p-maximal.
    pub enlargement: Vec<FieldElement>,
}

/// Decides whether ℤ[θ] is p-maximal for the defining polynomial of `field`.
pub fn dedekind_criterion(field: &NumberField, p: &Integer) -> Result<DedekindVerdict> {
    let pp = check_prime(p)?;
    let f = field.poly();
    let fbar = ModPPolynomial::from_int_poly(f, pp);
    let factors = factor_mod_p(&fbar);
    let g = factors.iter().fold(ModPPolynomial::one(pp), |acc, (gi, _)| acc.mul(gi));
    let h = fbar.div_exact(&g);
    let lifted = &g.to_int_poly() * &h.to_int_poly();
    let diff = &lifted - f;
    let big_f = IntPolynomial::new(diff.coeffs().iter().map(|c| c / p).collect());
    let big_f = ModPPolynomial::from_int_poly(&big_f, pp);
    let u = big_f.gcd(&g).gcd(&h);
    if u.deg() == 0 {
        return Ok(DedekindVerdict { p: p.clone(), is_p_maximal: true, enlargement: Vec::new() });
    }
    let t = fbar.div_exact(&u).to_int_poly().to_rational();
    let inv_p = Rational::new(Integer::one(), p.clone());
    let t_theta = field.element_from_poly(&t).scale(&inv_p);
    let theta = field.theta();
    let mut enlargement = Vec::with_capacity(u.deg());
    let mut cur = t_theta;
    for _ in 0..u.deg() {
        enlargement.push(cur.clone());
        cur = &cur * &theta;
    }
    Ok(DedekindVerdict { p: p.clone(), is_p_maximal: false, enlargement })
}

/// One Round-2 step: the ring of multipliers of the p-radical. Returns `None`
/// when the order is already p-maximal.
fn enlarge_at(order: &Order, p: u64) -> Result<Option<Order>> {
    let d = order.degree();
    let alg = order.residue_algebra(p);
    let pz = Integer::from(p);
    let mut rows: Vec<Vec<Integer>> = alg
        .radical()
        .into_iter()
        .map(|v| v.into_iter().map(Integer::from).collect())
        .collect();
    for i in 0..d {
        let mut r = vec![Integer::zero(); d];
        r[i] = pz.clone();
        rows.push(r);
    }
    let ip = hnf(&IntMatrix::from_rows(rows, d));
    let ip_inv = inverse(&ip.to_rational())?;
    // x ∈ U ⟺ x·βⱼ ∈ p·I_p for every basis vector βⱼ of I_p
    let mut system: Vec<Vec<u64>> = vec![Vec::with_capacity(d * d); d];
    for j in 0..d {
        let beta = ip.row(j).to_vec();
        for (i, sys_row) in system.iter_mut().enumerate() {
            let mut e = vec![Integer::zero(); d];
            e[i] = Integer::one();
            let prod = order.mul_coords(&e, &beta);
            let q: Vec<Rational> = prod.into_iter().map(Rational::from_integer).collect();
            for c in vec_mat(&q, &ip_inv) {
                debug_assert!(c.is_integer(), "radical is an ideal");
                sys_row.push(residue(&c.to_integer(), p));
            }
        }
    }
    let transposed: Vec<Vec<u64>> = (0..d * d).map(|c| system.iter().map(|r| r[c]).collect()).collect();
    let kernel = kernel_mod_p(&transposed, d, p);
    if kernel.is_empty() {
        return Ok(None);
    }
    let mut u_rows: Vec<Vec<Integer>> =
        kernel.into_iter().map(|v| v.into_iter().map(Integer::from).collect()).collect();
    for i in 0..d {
        let mut r = vec![Integer::zero(); d];
        r[i] = pz.clone();
        u_rows.push(r);
    }
    // O' = U/p, in power coordinates (U·B)/(p·den)
    let u = IntMatrix::from_rows(u_rows, d);
    let power_rows = &u * order.basis_matrix();
    let bigger = Order::from_lattice(order.field(), order.denominator() * &pz, &power_rows)?;
    Ok(Some(bigger))
}

/// Enlarges `order` until it is p-maximal.
pub fn p_maximal_order(order: &Order, p: &Integer) -> Result<Order> {
    let pp = check_prime(p)?;
    let mut cur = order.clone();
    while let Some(next) = enlarge_at(&cur, pp)? {
        cur = next;
    }
    Ok(cur)
}

/// Primes whose square divides disc(f); only these can divide the index.
pub fn index_candidate_primes(field: &NumberField) -> Result<Vec<Integer>> {
    let disc = field.poly_discriminant();
    Ok(factor_integer(&disc)?.primes().into_iter().filter(|(_, e)| *e >= 2).map(|(p, _)| p).collect())
}

/// The maximal order O_L by Round 2 at every prime p with p² | disc(f).
/// Primes certified by Dedekind's criterion are skipped.
pub fn round2(field: &NumberField) -> Result<Order> {
    let mut order = Order::equation_order(field);
    for p in index_candidate_primes(field)? {
        if dedekind_criterion(field, &p)?.is_p_maximal {
            continue;
        }
        order = p_maximal_order(&order, &p)?;
    }
    Ok(order)
}

/// Gram matrix Tr(ωᵢωⱼ) of an order.
pub fn gram_matrix(order: &Order) -> IntMatrix {
    order.gram_matrix().clone()
}
