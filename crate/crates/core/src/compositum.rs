//! Composita of number fields, coprime-degree trace-one witnesses,
//! multiquadratic fields, and tameness of composita of normal fields.
//!
//! The compositum KM is realized inside the tensor algebra K ⊗ M as ℚ(γ) with
//! γ = θ_K ⊗ 1 + c·1 ⊗ θ_M. No polynomial is ever factored over ℤ.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::matrix::{inverse, left_kernel, rank, vec_mat};
use crate::arith::modp::{factor_mod_p, is_prime_u64, ModPPolynomial};
use crate::arith::{
    int_gcd_bezout, is_squarefree, squarefree_kernel, IntPolynomial, Integer, QPolynomial, Rational, RationalMatrix,
};
use crate::error::{Error, Result};
use crate::field::{irreducibility_sieve, FieldElement, NumberField, SieveOutcome};
use crate::order::round2;
use crate::trace::{analyze, trace_index, TraceReport};

/// Largest shift tried in γ = θ_K + c·θ_M.
pub const MAX_SHIFT: i64 = 20;
/// Good primes below this bound are used by the normality heuristic.
pub const NORMALITY_PRIME_BOUND: u64 = 200;

/// K ⊗ M with basis θ_K^i ⊗ θ_M^j at index i·d_M + j.
struct TensorAlgebra {
    fk: Vec<Integer>,
    fm: Vec<Integer>,
    dk: usize,
    dm: usize,
}

impl TensorAlgebra {
    fn new(k: &NumberField, m: &NumberField) -> Self {
        Self { fk: k.poly().coeffs().to_vec(), fm: m.poly().coeffs().to_vec(), dk: k.degree(), dm: m.degree() }
    }

    fn dim(&self) -> usize {
        self.dk * self.dm
    }

    /// Multiplication by θ_K ⊗ 1.
    fn mul_x(&self, v: &[Rational]) -> Vec<Rational> {
        let (dk, dm) = (self.dk, self.dm);
        let mut out = vec![Rational::zero(); self.dim()];
        for i in 0..dk {
            for j in 0..dm {
                let c = &v[i * dm + j];
                if c.is_zero() {
                    continue;
                }
                if i + 1 < dk {
                    out[(i + 1) * dm + j] += c;
                } else {
                    for (l, a) in self.fk.iter().take(dk).enumerate() {
                        if !a.is_zero() {
                            out[l * dm + j] -= c * Rational::from_integer(a.clone());
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiplication by 1 ⊗ θ_M.
    fn mul_y(&self, v: &[Rational]) -> Vec<Rational> {
        let (dk, dm) = (self.dk, self.dm);
        let mut out = vec![Rational::zero(); self.dim()];
        for i in 0..dk {
            for j in 0..dm {
                let c = &v[i * dm + j];
                if c.is_zero() {
                    continue;
                }
                if j + 1 < dm {
                    out[i * dm + j + 1] += c;
                } else {
                    for (l, a) in self.fm.iter().take(dm).enumerate() {
                        if !a.is_zero() {
                            out[i * dm + l] -= c * Rational::from_integer(a.clone());
                        }
                    }
                }
            }
        }
        out
    }

    fn unit(&self, index: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[index] = Rational::one();
        v
    }

    /// Powers γ^0, …, γ^D of γ = x + c·y.
    fn krylov(&self, c: i64) -> Vec<Vec<Rational>> {
        let cr = Rational::from_integer(Integer::from(c));
        let mut out = vec![self.unit(0)];
        for _ in 0..self.dim() {
            let last = out.last().expect("nonempty");
            let x = self.mul_x(last);
            let y = self.mul_y(last);
            out.push(x.into_iter().zip(y).map(|(a, b)| a + b * &cr).collect());
        }
        out
    }
}

/// How linear disjointness of the two factors was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DisjointnessCertificate {
    CoprimeDegrees,
    DegreePatternSieve,
    QuadraticSquareClass,
}

impl fmt::Display for DisjointnessCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::CoprimeDegrees => "coprime degrees",
            Self::DegreePatternSieve => "degree-pattern sieve",
            Self::QuadraticSquareClass => "quadratic square classes",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CompositumField {
    pub left: NumberField,
    pub right: NumberField,
    pub shift: i64,
    pub field: NumberField,
    /// Row i = coordinates of θ_K^i in the compositum.
    pub embed_left: RationalMatrix,
    /// Row j = coordinates of θ_M^j in the compositum.
    pub embed_right: RationalMatrix,
    pub certificate: DisjointnessCertificate,
}

impl CompositumField {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn embed_from_left(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.field() != &self.left {
            return Err(Error::FieldMismatch);
        }
        Ok(self.field.element(vec_mat(a.coords(), &self.embed_left)))
    }

    pub fn embed_from_right(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.field() != &self.right {
            return Err(Error::FieldMismatch);
        }
        Ok(self.field.element(vec_mat(a.coords(), &self.embed_right)))
    }

    /// The images of θ_K and θ_M satisfy the source defining polynomials.
    pub fn verify_embeddings(&self) -> bool {
        let check = |src: &NumberField, m: &RationalMatrix| {
            let img = self.field.element(m.row(1.min(src.degree() - 1)).to_vec());
            let img = if src.degree() == 1 { self.field.from_rational(m.row(0)[0].clone()) } else { img };
            let f = src.poly();
            let mut acc = self.field.zero();
            for c in f.coeffs().iter().rev() {
                acc = &(&acc * &img) + &self.field.from_rational(Rational::from_integer(c.clone()));
            }
            acc.is_zero()
        };
        check(&self.left, &self.embed_left) && check(&self.right, &self.embed_right)
    }
}

fn quadratic_discriminant(k: &NumberField) -> Integer {
    k.poly_discriminant()
}

/// Certifies that the degree-D minimal polynomial of γ is irreducible, i.e.
/// that K ⊗ M is a field.
fn certify_disjoint(k: &NumberField, m: &NumberField, minpoly: &IntPolynomial) -> Result<Option<DisjointnessCertificate>> {
    if k.degree().gcd(&m.degree()) == 1 {
        return Ok(Some(DisjointnessCertificate::CoprimeDegrees));
    }
    if irreducibility_sieve(minpoly)? == SieveOutcome::Irreducible {
        return Ok(Some(DisjointnessCertificate::DegreePatternSieve));
    }
    if k.degree() == 2 && m.degree() == 2 {
        let prod = quadratic_discriminant(k) * quadratic_discriminant(m);
        let is_square = !prod.is_negative() && {
            let r = prod.sqrt();
            &r * &r == prod
        };
        return Ok((!is_square).then_some(DisjointnessCertificate::QuadraticSquareClass));
    }
    Err(Error::IrreducibilityUnproven)
}

/// The compositum of K and M when they are linearly disjoint.
pub fn compose(k: &NumberField, m: &NumberField) -> Result<CompositumField> {
    let alg = TensorAlgebra::new(k, m);
    let dim = alg.dim();
    let mut best = 0usize;
    for c in 1..=MAX_SHIFT {
        let powers = alg.krylov(c);
        let basis = RationalMatrix::from_rows(powers[..dim].to_vec(), dim);
        let deg = rank(&basis);
        best = best.max(deg);
        if deg < dim {
            continue;
        }
        let all = RationalMatrix::from_rows(powers.clone(), dim);
        let rel = left_kernel(&all).row(0).to_vec();
        let mp = QPolynomial::new(rel).monic();
        let mp = mp.to_integer().ok_or_else(|| Error::Internal("minimal polynomial of γ is not integral".into()))?;
        let Some(certificate) = certify_disjoint(k, m, &mp)? else {
            // K ⊗ M splits: the compositum is a proper quotient.
            let actual = if k.degree() == 2 && m.degree() == 2 { 2 } else { best };
            return Err(Error::NotLinearlyDisjoint { best_degree: actual, expected: dim });
        };
        let mut field = NumberField::from_construction(mp)?;
        if k.is_declared_normal() && m.is_declared_normal() {
            field = field.declare_normal();
        }
        let to_gamma = inverse(&basis)?;
        let theta_k = field.element(vec_mat(&alg.unit(alg.dm), &to_gamma));
        let theta_m = field.element(vec_mat(&alg.unit(1.min(dim - 1)), &to_gamma));
        let theta_k = if k.degree() == 1 { field.from_rational(k.theta().coords()[0].clone()) } else { theta_k };
        let theta_m = if m.degree() == 1 { field.from_rational(m.theta().coords()[0].clone()) } else { theta_m };
        let powers_of = |t: &FieldElement, n: usize| {
            let mut rows = Vec::with_capacity(n);
            let mut cur = field.one();
            for _ in 0..n {
                rows.push(cur.coords().to_vec());
                cur = &cur * t;
            }
            RationalMatrix::from_rows(rows, dim)
        };
        return Ok(CompositumField {
            left: k.clone(),
            right: m.clone(),
            shift: c,
            embed_left: powers_of(&theta_k, k.degree()),
            embed_right: powers_of(&theta_m, m.degree()),
            field,
            certificate,
        });
    }
    Err(Error::NotLinearlyDisjoint { best_degree: best, expected: dim })
}

/// A trace-one element in the compositum of fields with pairwise coprime degrees.
#[derive(Clone, Debug)]
pub struct TraceOneWitness {
    pub field: NumberField,
    pub steps: Vec<CompositumField>,
    /// Bezout pairs (u, v) used at each step: u·deg(L_r) + v·deg(K) = 1.
    pub bezout: Vec<(Integer, Integer)>,
    pub witness: FieldElement,
    pub trace: Rational,
}

pub fn theorem3_i_witness(fields: &[NumberField]) -> Result<TraceOneWitness> {
    if fields.is_empty() {
        return Err(Error::Internal("no fields given".into()));
    }
    for (i, a) in fields.iter().enumerate() {
        for b in &fields[i + 1..] {
            if a.degree().gcd(&b.degree()) != 1 {
                return Err(Error::DegreesNotCoprime(a.degree(), b.degree()));
            }
        }
    }
    let mut witnesses = Vec::with_capacity(fields.len());
    for (index, f) in fields.iter().enumerate() {
        let (t, w) = trace_index(&round2(f)?);
        if !t.is_one() {
            return Err(Error::InputNotSurjective { index, t: t.to_string() });
        }
        witnesses.push(w);
    }
    let mut k = fields[0].clone();
    let mut alpha = witnesses[0].clone();
    let mut steps = Vec::new();
    let mut bezout = Vec::new();
    for (lr, beta) in fields.iter().zip(&witnesses).skip(1) {
        let comp = compose(&k, lr)?;
        let (_, u, v) = int_gcd_bezout(&Integer::from(lr.degree()), &Integer::from(k.degree()))?;
        let a = comp.embed_from_left(&alpha)?;
        let b = comp.embed_from_right(beta)?;
        alpha = &a.scale(&Rational::from_integer(u.clone())) + &b.scale(&Rational::from_integer(v.clone()));
        k = comp.field.clone();
        bezout.push((u, v));
        steps.push(comp);
    }
    let trace = alpha.trace();
    if !trace.is_one() {
        return Err(Error::Internal(format!("constructed witness has trace {trace}")));
    }
    Ok(TraceOneWitness { field: k, steps, bezout, witness: alpha, trace })
}

/// ℚ(√m₁, …, √m_s) with a reduced generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiquadraticField {
    pub input: Vec<Integer>,
    pub generators: Vec<Integer>,
    pub rejected: Vec<Integer>,
}

/// Element Σ c_S·b_S over the basis b_S = ∏_{i∈S} √mᵢ, indexed by bitmask S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiquadraticElement {
    pub coeffs: Vec<Rational>,
}

impl MultiquadraticField {
    pub fn s(&self) -> usize {
        self.generators.len()
    }

    pub fn degree(&self) -> usize {
        1 << self.s()
    }

    pub fn one(&self) -> MultiquadraticElement {
        let mut coeffs = vec![Rational::zero(); self.degree()];
        coeffs[0] = Rational::one();
        MultiquadraticElement { coeffs }
    }

    /// √mᵢ.
    pub fn sqrt_generator(&self, i: usize) -> MultiquadraticElement {
        let mut coeffs = vec![Rational::zero(); self.degree()];
        coeffs[1 << i] = Rational::one();
        MultiquadraticElement { coeffs }
    }

    pub fn add(&self, a: &MultiquadraticElement, b: &MultiquadraticElement) -> MultiquadraticElement {
        MultiquadraticElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn scale(&self, a: &MultiquadraticElement, k: &Rational) -> MultiquadraticElement {
        MultiquadraticElement { coeffs: a.coeffs.iter().map(|x| x * k).collect() }
    }

    /// b_S·b_T = b_{S△T}·∏_{i∈S∩T} mᵢ.
    pub fn mul(&self, a: &MultiquadraticElement, b: &MultiquadraticElement) -> MultiquadraticElement {
        let n = self.degree();
        let mut coeffs = vec![Rational::zero(); n];
        for (s, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (t, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let common = s & t;
                let factor = (0..self.s())
                    .filter(|i| common >> i & 1 == 1)
                    .fold(Integer::one(), |acc, i| acc * &self.generators[i]);
                coeffs[s ^ t] += x * y * Rational::from_integer(factor);
            }
        }
        MultiquadraticElement { coeffs }
    }

    /// Tr(b_S) = 0 for S ≠ ∅ and Tr(1) = 2^s.
    pub fn trace(&self, a: &MultiquadraticElement) -> Rational {
        &a.coeffs[0] * Rational::from_integer(Integer::from(self.degree()))
    }

    /// α = ∏ (1 + √mᵢ)/2.
    pub fn alpha(&self) -> MultiquadraticElement {
        let half = Rational::new(Integer::one(), Integer::from(2));
        (0..self.s()).fold(self.one(), |acc, i| {
            let factor = self.scale(&self.add(&self.one(), &self.sqrt_generator(i)), &half);
            self.mul(&acc, &factor)
        })
    }

    /// α written as a product, e.g. `(1+√5)(1+√13)/4`.
    pub fn alpha_display(&self) -> String {
        if self.s() == 0 {
            return "1".into();
        }
        let prod: String = self.generators.iter().map(|m| format!("(1+√{m})")).collect();
        format!("{prod}/{}", 1u64 << self.s())
    }

    pub fn element_display(&self, a: &MultiquadraticElement) -> String {
        let mut parts = Vec::new();
        for (s, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let radicals: Vec<String> =
                (0..self.s()).filter(|i| s >> i & 1 == 1).map(|i| format!("√{}", self.generators[i])).collect();
            if radicals.is_empty() {
                parts.push(c.to_string());
            } else {
                parts.push(format!("{c}*{}", radicals.join("*")));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// A primitive element θ = Σ(1+√mᵢ)/2 as a certified number field, with
    /// the coordinate map from the subset basis into powers of θ.
    pub fn primitive_field(&self) -> Result<(NumberField, RationalMatrix)> {
        let n = self.degree();
        let half = Rational::new(Integer::one(), Integer::from(2));
        let mut theta = MultiquadraticElement { coeffs: vec![Rational::zero(); n] };
        for i in 0..self.s() {
            theta = self.add(&theta, &self.scale(&self.add(&self.one(), &self.sqrt_generator(i)), &half));
        }
        let mut powers = vec![self.one()];
        for _ in 0..n {
            let next = self.mul(powers.last().expect("nonempty"), &theta);
            powers.push(next);
        }
        let rows: Vec<Vec<Rational>> = powers.iter().map(|p| p.coeffs.clone()).collect();
        let basis = RationalMatrix::from_rows(rows[..n].to_vec(), n);
        if rank(&basis) != n {
            return Err(Error::Internal("sum of square roots is not primitive".into()));
        }
        let rel = left_kernel(&RationalMatrix::from_rows(rows, n)).row(0).to_vec();
        let mp = QPolynomial::new(rel)
            .monic()
            .to_integer()
            .ok_or_else(|| Error::Internal("primitive element is not integral".into()))?;
        let field = NumberField::from_construction(mp)?.declare_normal();
        Ok((field, inverse(&basis)?))
    }

    /// Maps a subset-basis element into the primitive field.
    pub fn to_field(&self, field: &NumberField, change: &RationalMatrix, a: &MultiquadraticElement) -> FieldElement {
        field.element(vec_mat(&a.coeffs, change))
    }
}

/// Validates the list, applies the minimality reduction and returns α with
/// its symbolic trace.
pub fn multiquadratic(ms: &[Integer]) -> Result<(MultiquadraticField, MultiquadraticElement, Rational)> {
    let four = Integer::from(4);
    for m in ms {
        if !is_squarefree(m)? {
            return Err(Error::NotSquarefree(m.to_string()));
        }
        if !m.mod_floor(&four).is_one() {
            return Err(Error::NotOneMod4(m.to_string()));
        }
    }
    // squarefree kernels of all subset products of accepted generators
    let mut group: BTreeSet<Integer> = BTreeSet::from([Integer::one()]);
    let mut generators = Vec::new();
    let mut rejected = Vec::new();
    for m in ms {
        if group.contains(m) {
            rejected.push(m.clone());
            continue;
        }
        let mut next = group.clone();
        for g in &group {
            next.insert(squarefree_kernel(&(g * m))?);
        }
        group = next;
        generators.push(m.clone());
    }
    let field = MultiquadraticField { input: ms.to_vec(), generators, rejected };
    let alpha = field.alpha();
    let trace = field.trace(&alpha);
    if !trace.is_one() {
        return Err(Error::Internal(format!("trace of α is {trace}")));
    }
    Ok((field, alpha, trace))
}

/// Result of the equal-degree splitting test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityEvidence {
    pub primes_checked: usize,
    /// A prime where f mod p has factors of unequal degree, with the degrees.
    pub refuted_at: Option<(u64, Vec<usize>)>,
}

impl NormalityEvidence {
    pub fn refuted(&self) -> bool {
        self.refuted_at.is_some()
    }
}

/// In a normal field every unramified prime splits into factors of equal
/// degree. A single unequal pattern refutes normality; equal patterns only
/// support it.
pub fn normality_heuristic(field: &NumberField) -> NormalityEvidence {
    let disc = field.poly_discriminant();
    let mut checked = 0;
    for p in 2..NORMALITY_PRIME_BOUND {
        if !is_prime_u64(p) || (&disc % Integer::from(p)).is_zero() {
            continue;
        }
        checked += 1;
        let fp = ModPPolynomial::from_int_poly(field.poly(), p);
        let degrees: Vec<usize> = factor_mod_p(&fp).iter().map(|(g, _)| g.deg()).collect();
        if degrees.windows(2).any(|w| w[0] != w[1]) {
            return NormalityEvidence { primes_checked: checked, refuted_at: Some((p, degrees)) };
        }
    }
    NormalityEvidence { primes_checked: checked, refuted_at: None }
}

/// Ramification indices above p in each factor and in the compositum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationRow {
    pub p: Integer,
    pub e_left: Vec<u32>,
    pub e_right: Vec<u32>,
    pub e_compositum: Vec<u32>,
    /// Every index in the compositum is a multiple of every factor index.
    pub multiplicative: bool,
}

#[derive(Clone, Debug)]
pub struct Theorem3IiiReport {
    pub compositum: Option<CompositumField>,
    /// Degree found when the pair is not linearly disjoint.
    pub degenerate_degree: Option<usize>,
    pub t: Integer,
    pub tame: bool,
    pub ramification: Vec<RamificationRow>,
}

impl Theorem3IiiReport {
    pub fn holds(&self) -> bool {
        self.t.is_one() && self.tame && self.ramification.iter().all(|r| r.multiplicative)
    }
}

fn e_list(report: &TraceReport, p: &Integer) -> Result<Vec<u32>> {
    Ok(match report.splitting_at(p) {
        Some(s) => s.primes.iter().map(|q| q.e).collect(),
        None => crate::trace::splitting(&report.order, p)?.primes.iter().map(|q| q.e).collect(),
    })
}

/// Composes two declared-normal fields with t = 1 and checks that the
/// compositum is tame with t = 1.
pub fn theorem3_iii_check(k: &NumberField, m: &NumberField) -> Result<Theorem3IiiReport> {
    for f in [k, m] {
        if !f.is_declared_normal() {
            return Err(Error::NotDeclaredNormal);
        }
        if let Some((p, degs)) = normality_heuristic(f).refuted_at {
            return Err(Error::NormalityRefuted(format!("{} splits with degrees {degs:?} modulo {p}", f.poly())));
        }
    }
    let rk = analyze(k)?;
    let rm = analyze(m)?;
    for (index, r) in [&rk, &rm].into_iter().enumerate() {
        if !r.t.is_one() {
            return Err(Error::InputNotSurjective { index, t: r.t.to_string() });
        }
    }
    let (compositum, degenerate_degree, rc) = match compose(k, m) {
        Ok(c) => {
            let rc = analyze(&c.field)?;
            (Some(c), None, rc)
        }
        Err(Error::NotLinearlyDisjoint { best_degree, .. }) if best_degree == k.degree() && k.degree() == 2 => {
            // equal quadratic fields: the compositum is K itself
            (None, Some(best_degree), rk.clone())
        }
        Err(e) => return Err(e),
    };
    let mut primes: BTreeSet<Integer> = BTreeSet::new();
    for r in [&rk, &rm, &rc] {
        primes.extend(crate::trace::ramified_primes(&r.order)?);
    }
    let mut ramification = Vec::new();
    for p in primes {
        let e_left = e_list(&rk, &p)?;
        let e_right = e_list(&rm, &p)?;
        let e_compositum = e_list(&rc, &p)?;
        let multiplicative =
            e_compositum.iter().all(|ec| e_left.iter().chain(&e_right).all(|e| (ec % e) == 0));
        ramification.push(RamificationRow { p, e_left, e_right, e_compositum, multiplicative });
    }
    Ok(Theorem3IiiReport { compositum, degenerate_degree, t: rc.t.clone(), tame: rc.tame, ramification })
}

/// Quadratic field ℚ(√m) for squarefree m ≠ 1, via x² − x − (m−1)/4 when
/// m ≡ 1 mod 4 and x² − m otherwise; declared normal.
pub fn quadratic_field(m: &Integer) -> Result<NumberField> {
    if !is_squarefree(m)? || m.is_one() {
        return Err(Error::NotSquarefree(m.to_string()));
    }
    let poly = if m.mod_floor(&Integer::from(4)).is_one() {
        IntPolynomial::new(vec![-(m - Integer::one()) / Integer::from(4), Integer::from(-1), Integer::one()])
    } else {
        IntPolynomial::new(vec![-m.clone(), Integer::zero(), Integer::one()])
    };
    Ok(NumberField::new(poly)?.declare_normal())
}

/// Machine-size degree helper for reports.
pub fn degree_product(fields: &[NumberField]) -> Option<u64> {
    fields.iter().try_fold(1u64, |acc, f| acc.checked_mul(f.degree().to_u64()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn field(c: &[i64]) -> NumberField {
        NumberField::from_i64(c).unwrap()
    }

    #[test]
    fn golden_with_cubic() {
        let c = compose(&field(&[-1, -1, 1]), &field(&[-1, -1, 0, 1])).unwrap();
        assert_eq!(c.degree(), 6);
        assert_eq!(c.certificate, DisjointnessCertificate::CoprimeDegrees);
        assert!(c.verify_embeddings());
        let k = field(&[-1, -1, 1]);
        let a = k.element(vec![rat(3, 1), rat(2, 1)]);
        assert_eq!(c.embed_from_left(&a).unwrap().trace(), a.trace() * rat(3, 1));
    }

    #[test]
    fn equal_quadratics_are_not_disjoint() {
        let k = field(&[-1, -1, 1]);
        assert_eq!(compose(&k, &k).unwrap_err(), Error::NotLinearlyDisjoint { best_degree: 2, expected: 4 });
        let m = field(&[-3, -1, 1]);
        let c = compose(&k, &m).unwrap();
        assert_eq!(c.degree(), 4);
        assert_eq!(c.certificate, DisjointnessCertificate::QuadraticSquareClass);
        assert!(c.verify_embeddings());
    }

    #[test]
    fn coprime_witness() {
        let w = theorem3_i_witness(&[field(&[-1, -1, 1]), field(&[-1, -1, 0, 1])]).unwrap();
        assert_eq!(w.field.degree(), 6);
        assert_eq!(w.trace, rat(1, 1));
        assert_eq!(w.bezout, vec![(int(1), int(-1))]);
        let single = theorem3_i_witness(&[field(&[-1, -1, 1])]).unwrap();
        assert_eq!(single.trace, rat(1, 1));
        assert!(matches!(
            theorem3_i_witness(&[field(&[1, 0, 1]), field(&[-1, -1, 0, 1])]),
            Err(Error::InputNotSurjective { index: 0, .. })
        ));
        assert_eq!(
            theorem3_i_witness(&[field(&[-1, -1, 1]), field(&[-3, -1, 1])]).unwrap_err(),
            Error::DegreesNotCoprime(2, 2)
        );
    }

    #[test]
    fn multiquadratic_examples() {
        let (f, a, t) = multiquadratic(&[int(5), int(13)]).unwrap();
        assert_eq!(f.s(), 2);
        assert_eq!(t, rat(1, 1));
        assert_eq!(a.coeffs, vec![rat(1, 4); 4]);
        assert_eq!(f.alpha_display(), "(1+√5)(1+√13)/4");
        let (f, _, _) = multiquadratic(&[int(5), int(5)]).unwrap();
        assert_eq!(f.generators, vec![int(5)]);
        let (f, _, _) = multiquadratic(&[int(5), int(13), int(65)]).unwrap();
        assert_eq!(f.s(), 2);
        assert_eq!(f.rejected, vec![int(65)]);
        assert_eq!(multiquadratic(&[int(6), int(10)]).unwrap_err(), Error::NotOneMod4("6".into()));
        assert_eq!(multiquadratic(&[int(45)]).unwrap_err(), Error::NotSquarefree("45".into()));
        let (f, a, _) = multiquadratic(&[int(-3), int(5)]).unwrap();
        let (field, change) = f.primitive_field().unwrap();
        assert_eq!(field.degree(), 4);
        assert_eq!(f.to_field(&field, &change, &a).trace(), rat(1, 1));
    }

    #[test]
    fn normality() {
        assert!(!normality_heuristic(&field(&[-1, -1, 1])).refuted());
        let ev = normality_heuristic(&field(&[-1, -1, 0, 1]));
        assert_eq!(ev.refuted_at, Some((5, vec![1, 2])));
        let r = theorem3_iii_check(&quadratic_field(&int(5)).unwrap(), &quadratic_field(&int(13)).unwrap()).unwrap();
        assert!(r.holds());
        let same = theorem3_iii_check(&quadratic_field(&int(5)).unwrap(), &quadratic_field(&int(5)).unwrap()).unwrap();
        assert!(same.holds() && same.degenerate_degree == Some(2));
        assert_eq!(
            theorem3_iii_check(&quadratic_field(&int(5)).unwrap(), &field(&[-1, -1, 0, 1])).unwrap_err(),
            Error::NotDeclaredNormal
        );
    }
}
