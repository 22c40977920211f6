//! The trace-module index t_L, the different, ramification data, and the
//! decision procedures tying them together.
//!
//! Every check here returns a verdict instead of panicking; a `false` verdict
//! means an arithmetic bug, since the statements being checked are theorems.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::matrix::hnf;
use crate::arith::{factor_integer, valuation_int, IntMatrix, IntPolynomial, Integer, Rational};
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::ideal::{codifferent, decompose_prime, valuation, FractionalIdeal, PrimeIdeal};
use crate::order::{round2, Order};

/// Integer witness coordinates plus a basis of the trace-zero sublattice,
/// both from one Hermite reduction of `[Tr(ωᵢ) | I]`.
fn bezout_lattice(traces: &[Integer]) -> (Integer, Vec<Integer>, Vec<Vec<Integer>>) {
    let d = traces.len();
    let rows: Vec<Vec<Integer>> = (0..d)
        .map(|i| {
            let mut r = vec![Integer::zero(); d + 1];
            r[0] = traces[i].clone();
            r[i + 1] = Integer::one();
            r
        })
        .collect();
    let h = hnf(&IntMatrix::from_rows(rows, d + 1));
    let t = h[(0, 0)].clone();
    let witness = h.row(0)[1..].to_vec();
    let kernel = (1..h.nrows()).map(|i| h.row(i)[1..].to_vec()).collect();
    (t, witness, kernel)
}

fn max_abs(v: &[Integer]) -> (Integer, Integer) {
    let m = v.iter().map(|x| x.abs()).max().unwrap_or_default();
    let s = v.iter().map(|x| x.abs()).fold(Integer::zero(), |a, b| a + b);
    (m, s)
}

/// Shortens `w` modulo the lattice `kernel`: centered reduction along the
/// echelon pivots, then greedy ±k steps while (max |wᵢ|, Σ|wᵢ|) decreases.
fn reduce_witness(mut w: Vec<Integer>, kernel: &[Vec<Integer>]) -> Vec<Integer> {
    for k in kernel.iter().rev() {
        let Some(c) = k.iter().position(|x| !x.is_zero()) else { continue };
        let two = Integer::from(2);
        // nearest integer to w_c / k_c
        let q = (&w[c] * &two + &k[c]).div_floor(&(&k[c] * &two));
        if !q.is_zero() {
            for (x, y) in w.iter_mut().zip(k) {
                *x -= &q * y;
            }
        }
    }
    loop {
        let current = max_abs(&w);
        let mut best: Option<(Vec<Integer>, (Integer, Integer))> = None;
        for k in kernel {
            for sign in [1i32, -1] {
                let cand: Vec<Integer> = w.iter().zip(k).map(|(x, y)| x - y * Integer::from(sign)).collect();
                let score = max_abs(&cand);
                if score < current && best.as_ref().is_none_or(|(_, s)| score < *s) {
                    best = Some((cand, score));
                }
            }
        }
        match best {
            Some((cand, _)) => w = cand,
            None => return w,
        }
    }
}

/// t_L = gcd of the basis traces, with an element of trace exactly t_L.
pub fn trace_index(order: &Order) -> (Integer, FieldElement) {
    let (t, w, kernel) = bezout_lattice(order.basis_traces());
    let w = reduce_witness(w, &kernel);
    debug_assert_eq!(order.trace_coords(&w), t);
    (t, order.element(&w))
}

/// Integral-basis coordinates of the reduced witness.
pub fn trace_witness_coords(order: &Order) -> Vec<Integer> {
    let (_, w, kernel) = bezout_lattice(order.basis_traces());
    reduce_witness(w, &kernel)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentData {
    pub codifferent: FractionalIdeal,
    pub different: FractionalIdeal,
    pub norm_of_different: Integer,
}

pub fn different(order: &Order) -> Result<DifferentData> {
    let codiff = codifferent(order)?;
    let diff = codiff.inverse()?;
    let norm = diff.norm();
    if !diff.is_integral() || !norm.is_integer() {
        return Err(Error::Internal("the different is not an integral ideal".into()));
    }
    Ok(DifferentData { codifferent: codiff, different: diff, norm_of_different: norm.to_integer() })
}

/// Prime decomposition data at one rational prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSplitting {
    pub p: Integer,
    pub primes: Vec<PrimeIdeal>,
}

impl PrimeSplitting {
    pub fn ef(&self) -> Vec<(u32, u32)> {
        self.primes.iter().map(|q| (q.e, q.f)).collect()
    }

    /// p divides some eᵢ.
    pub fn is_wild(&self) -> bool {
        self.primes.iter().any(|q| (Integer::from(q.e) % &self.p).is_zero())
    }

    /// p divides every eᵢ.
    pub fn divides_all_e(&self) -> bool {
        self.primes.iter().all(|q| (Integer::from(q.e) % &self.p).is_zero())
    }

    pub fn is_ramified(&self) -> bool {
        self.primes.iter().any(|q| q.e > 1)
    }

    pub fn is_uniform(&self) -> bool {
        self.primes.windows(2).all(|w| w[0].e == w[1].e)
    }
}

pub fn splitting(order: &Order, p: &Integer) -> Result<PrimeSplitting> {
    Ok(PrimeSplitting { p: p.clone(), primes: decompose_prime(order, p)? })
}

/// Primes dividing disc(L); these are exactly the ramified primes.
pub fn ramified_primes(order: &Order) -> Result<Vec<Integer>> {
    Ok(factor_integer(order.discriminant())?.primes().into_iter().map(|(p, _)| p).collect())
}

pub fn wild_primes(order: &Order) -> Result<Vec<Integer>> {
    let mut out = Vec::new();
    for p in ramified_primes(order)? {
        if splitting(order, &p)?.is_wild() {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn is_tame(order: &Order) -> Result<bool> {
    Ok(wild_primes(order)?.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Verdict {
    /// D_L ⊆ t_L·O_L.
    pub contained: bool,
    /// Largest n with D_L ⊆ n·O_L.
    pub max_n: Integer,
    pub max_n_divides_t: bool,
}

impl Lemma1Verdict {
    pub fn holds(&self) -> bool {
        self.contained && self.max_n_divides_t
    }
}

pub fn lemma1_check(order: &Order, t: &Integer, diff: &DifferentData) -> Result<Lemma1Verdict> {
    let t_o = FractionalIdeal::from_integer(order, t)?;
    let contained = diff.different.basis().iter().all(|g| t_o.contains(g));
    // D integral with denominator 1: D ⊆ nO iff n divides every coordinate
    let max_n = diff.different.hnf().content();
    let max_n_divides_t = (t % &max_n).is_zero();
    Ok(Lemma1Verdict { contained, max_n, max_n_divides_t })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma2Entry {
    pub p: Integer,
    /// Position of ℘ in the sorted decomposition of pO_L.
    pub prime_index: usize,
    pub e: u32,
    pub f: u32,
    pub v: i64,
    /// Allowed closed interval for v.
    pub lower: i64,
    pub upper: i64,
}

impl Lemma2Entry {
    pub fn holds(&self) -> bool {
        self.lower <= self.v && self.v <= self.upper
    }

    pub fn is_tame(&self) -> bool {
        !(Integer::from(self.e) % &self.p).is_zero()
    }
}

/// v_℘(D_L) for every ℘ above p, with the admissible interval: {e−1} when
/// p ∤ e, [e, e−1+e·v_p(e)] when p | e.
pub fn lemma2_check(split: &PrimeSplitting, diff: &DifferentData) -> Result<Vec<Lemma2Entry>> {
    let mut out = Vec::with_capacity(split.primes.len());
    for (i, q) in split.primes.iter().enumerate() {
        let v = valuation(&diff.different, q)?;
        let e = q.e as i64;
        let vp_e = valuation_int(&Integer::from(q.e), &split.p) as i64;
        let (lower, upper) = if vp_e == 0 { (e - 1, e - 1) } else { (e, e - 1 + e * vp_e) };
        out.push(Lemma2Entry { p: split.p.clone(), prime_index: i, e: q.e, f: q.f, v, lower, upper });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem1Verdict {
    /// Some prime p | d divides every eᵢ above p.
    pub criterion: bool,
    pub certificate_prime: Option<Integer>,
    /// (p, [(e, f)]) for each prime p | d.
    pub patterns: Vec<(Integer, Vec<(u32, u32)>)>,
}

pub fn theorem1_criterion(order: &Order, splits: &[PrimeSplitting]) -> Result<Theorem1Verdict> {
    let d = Integer::from(order.degree());
    let mut patterns = Vec::new();
    let mut certificate_prime = None;
    for (p, _) in factor_integer(&d)?.primes() {
        let split = match splits.iter().find(|s| s.p == p) {
            Some(s) => s.clone(),
            None => splitting(order, &p)?,
        };
        if certificate_prime.is_none() && split.divides_all_e() {
            certificate_prime = Some(p.clone());
        }
        patterns.push((p, split.ef()));
    }
    Ok(Theorem1Verdict { criterion: certificate_prime.is_some(), certificate_prime, patterns })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Theorem2Flags {
    /// t_L ≥ 2.
    pub a: bool,
    /// Some p | d has p^d | disc(L).
    pub b: bool,
    /// L is wild.
    pub c: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Theorem2Verdict {
    pub flags: Theorem2Flags,
    pub a_implies_b: bool,
    pub b_implies_c: bool,
    /// Checked only when d is prime or d = 4.
    pub b_iff_a: Option<bool>,
    /// Checked only for fields declared normal.
    pub c_implies_a: Option<bool>,
}

impl Theorem2Verdict {
    pub fn holds(&self) -> bool {
        self.a_implies_b && self.b_implies_c && self.b_iff_a != Some(false) && self.c_implies_a != Some(false)
    }
}

fn is_small_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

pub fn theorem2_report(order: &Order, t: &Integer, wild: bool) -> Result<Theorem2Verdict> {
    let d = order.degree();
    let disc = order.discriminant().abs();
    let mut b = false;
    for (p, _) in factor_integer(&Integer::from(d))?.primes() {
        if (&disc % p.pow(d as u32)).is_zero() {
            b = true;
        }
    }
    let flags = Theorem2Flags { a: t > &Integer::one(), b, c: wild };
    let b_iff_a = (is_small_prime(d) || d == 4).then_some(flags.a == flags.b);
    let c_implies_a = order.field().is_declared_normal().then_some(!flags.c || flags.a);
    Ok(Theorem2Verdict {
        flags,
        a_implies_b: !flags.a || flags.b,
        b_implies_c: !flags.b || flags.c,
        b_iff_a,
        c_implies_a,
    })
}

/// (p, all eᵢ equal) per ramified prime.
pub fn uniformly_ramified_check(splits: &[PrimeSplitting]) -> Vec<(Integer, bool)> {
    splits.iter().filter(|s| s.is_ramified()).map(|s| (s.p.clone(), s.is_uniform())).collect()
}

/// Primes p | deg f at which f is Eisenstein.
pub fn eisenstein_detect(f: &IntPolynomial) -> Vec<Integer> {
    let Some(d) = f.degree() else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    let Ok(fact) = factor_integer(&Integer::from(d)) else { return Vec::new() };
    fact.primes()
        .into_iter()
        .map(|(p, _)| p)
        .filter(|p| {
            (0..d).all(|i| (f.coeff(i) % p).is_zero())
                && !(f.coeff(0) % (p * p)).is_zero()
        })
        .collect()
}

/// Exponent of p in disc(L) versus Σ(eᵢ−1)fᵢ at a tame prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma3Entry {
    pub p: Integer,
    pub disc_exponent: u32,
    pub tame_sum: u32,
}

impl Lemma3Entry {
    pub fn holds(&self, d: usize) -> bool {
        self.disc_exponent == self.tame_sum && (self.tame_sum as usize) < d
    }
}

pub fn lemma3_check(order: &Order, splits: &[PrimeSplitting]) -> Vec<Lemma3Entry> {
    splits
        .iter()
        .filter(|s| s.is_ramified() && !s.is_wild())
        .map(|s| Lemma3Entry {
            p: s.p.clone(),
            disc_exponent: valuation_int(order.discriminant(), &s.p),
            tame_sum: s.primes.iter().map(|q| (q.e - 1) * q.f).sum(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeRow {
    pub p: Integer,
    pub ef: Vec<(u32, u32)>,
    pub tame_at_p: bool,
    pub theorem1_at_p: bool,
    /// v_℘(D_L) for each ℘ above p, in decomposition order.
    pub different_valuations: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremVerdicts {
    /// Criterion of Theorem 1 agrees with t_L ≥ 2.
    pub thm1: bool,
    /// A prime dividing every eᵢ above it forces t_L ≥ 2.
    pub thm1_any_prime: bool,
    pub thm2_chain: bool,
    pub lemma1: bool,
    pub lemma2: bool,
    pub lemma3: bool,
    pub norm_different: bool,
    /// t_L | d and t_L^d | disc(L).
    pub t_divisibility: bool,
    /// A wild, uniformly ramified prime forces t_L ≥ 2.
    pub uniform_wild: bool,
    /// Eisenstein at p | d forces p | t_L.
    pub eisenstein: bool,
}

impl TheoremVerdicts {
    pub fn all_hold(&self) -> bool {
        self.thm1
            && self.thm1_any_prime
            && self.thm2_chain
            && self.lemma1
            && self.lemma2
            && self.lemma3
            && self.norm_different
            && self.t_divisibility
            && self.uniform_wild
            && self.eisenstein
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let checks = [
            (self.thm1, "thm1"),
            (self.thm1_any_prime, "thm1_any_prime"),
            (self.thm2_chain, "thm2_chain"),
            (self.lemma1, "lemma1"),
            (self.lemma2, "lemma2"),
            (self.lemma3, "lemma3"),
            (self.norm_different, "norm_different"),
            (self.t_divisibility, "t_divisibility"),
            (self.uniform_wild, "uniform_wild"),
            (self.eisenstein, "eisenstein"),
        ];
        for (ok, name) in checks {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

/// Everything computed for one field.
#[derive(Clone, Debug)]
pub struct TraceReport {
    pub order: Order,
    pub t: Integer,
    pub witness: FieldElement,
    pub witness_coords: Vec<Integer>,
    pub integral_basis_traces: Vec<Integer>,
    pub splittings: Vec<PrimeSplitting>,
    pub per_prime: Vec<PrimeRow>,
    pub different: DifferentData,
    pub lemma1: Lemma1Verdict,
    pub lemma2: Vec<Lemma2Entry>,
    pub lemma3: Vec<Lemma3Entry>,
    pub theorem1: Theorem1Verdict,
    pub theorem2: Theorem2Verdict,
    pub uniform: Vec<(Integer, bool)>,
    pub eisenstein_primes: Vec<Integer>,
    pub tame: bool,
    pub verdicts: TheoremVerdicts,
}

impl TraceReport {
    pub fn field(&self) -> &NumberField {
        self.order.field()
    }

    pub fn splitting_at(&self, p: &Integer) -> Option<&PrimeSplitting> {
        self.splittings.iter().find(|s| &s.p == p)
    }
}

/// Computes the maximal order and the full report.
pub fn analyze(field: &NumberField) -> Result<TraceReport> {
    analyze_order(&round2(field)?)
}

pub fn analyze_order(order: &Order) -> Result<TraceReport> {
    let d = order.degree();
    let witness_coords = trace_witness_coords(order);
    let t = order.trace_coords(&witness_coords);
    let witness = order.element(&witness_coords);
    let diff = different(order)?;

    let mut primes = ramified_primes(order)?;
    for (p, _) in factor_integer(&Integer::from(d))?.primes() {
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    primes.sort();
    let splittings: Vec<PrimeSplitting> = primes.iter().map(|p| splitting(order, p)).collect::<Result<_>>()?;

    let mut lemma2 = Vec::new();
    let mut per_prime = Vec::with_capacity(splittings.len());
    for s in &splittings {
        let entries = lemma2_check(s, &diff)?;
        let dz = Integer::from(d);
        per_prime.push(PrimeRow {
            p: s.p.clone(),
            ef: s.ef(),
            tame_at_p: !s.is_wild(),
            theorem1_at_p: (&dz % &s.p).is_zero() && s.divides_all_e(),
            different_valuations: entries.iter().map(|e| e.v).collect(),
        });
        lemma2.extend(entries);
    }

    let lemma1 = lemma1_check(order, &t, &diff)?;
    let lemma3 = lemma3_check(order, &splittings);
    let theorem1 = theorem1_criterion(order, &splittings)?;
    let wild = splittings.iter().any(|s| s.is_wild());
    let theorem2 = theorem2_report(order, &t, wild)?;
    let uniform = uniformly_ramified_check(&splittings);
    let eisenstein_primes = eisenstein_detect(order.field().poly());
    let t_ge_2 = t > Integer::one();

    let disc_abs = order.discriminant().abs();
    let verdicts = TheoremVerdicts {
        thm1: theorem1.criterion == t_ge_2,
        thm1_any_prime: !splittings.iter().any(|s| s.divides_all_e()) || t_ge_2,
        thm2_chain: theorem2.holds(),
        lemma1: lemma1.holds(),
        lemma2: lemma2.iter().all(Lemma2Entry::holds),
        lemma3: lemma3.iter().all(|l| l.holds(d)),
        norm_different: diff.norm_of_different == disc_abs,
        t_divisibility: (Integer::from(d) % &t).is_zero() && (&disc_abs % t.pow(d as u32)).is_zero(),
        uniform_wild: !splittings.iter().any(|s| s.is_wild() && s.is_uniform()) || t_ge_2,
        eisenstein: eisenstein_primes.iter().all(|p| (&t % p).is_zero()),
    };

    Ok(TraceReport {
        order: order.clone(),
        integral_basis_traces: order.basis_traces().to_vec(),
        t,
        witness,
        witness_coords,
        splittings,
        per_prime,
        different: diff,
        lemma1,
        lemma2,
        lemma3,
        theorem1,
        theorem2,
        uniform,
        eisenstein_primes,
        tame: !wild,
        verdicts,
    })
}

/// Rational t with Tr(t/d) = t; used as a sanity identity on traces.
pub fn scaled_one(field: &NumberField, k: &Rational) -> FieldElement {
    field.from_rational(k / Rational::from_integer(Integer::from(field.degree())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn report(c: &[i64]) -> TraceReport {
        analyze(&NumberField::from_i64(c).unwrap()).unwrap()
    }

    #[test]
    fn quadratic_examples() {
        let r = report(&[-1, -1, 1]);
        assert_eq!(r.t, int(1));
        assert!(r.tame);
        let g = report(&[1, 0, 1]);
        assert_eq!(g.t, int(2));
        assert!(!g.tame);
        assert_eq!(g.witness.trace(), rat(2, 1));
        let f = g.theorem2.flags;
        assert!(f.a && f.b && f.c);
        assert!(g.verdicts.all_hold(), "{:?}", g.verdicts.failures());
        assert_eq!(g.lemma2[0].v, 2);
        assert_eq!((g.lemma2[0].lower, g.lemma2[0].upper), (2, 3));
        let s5 = report(&[-5, 0, 1]);
        assert_eq!(s5.witness, NumberField::from_i64(&[-5, 0, 1]).unwrap().element(vec![rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn sextic_report() {
        let r = report(&[1, 0, 5, 0, 1, 0, 1]);
        assert_eq!(r.t, int(1));
        assert_eq!(r.witness.trace(), rat(1, 1));
        assert_eq!(r.different.norm_of_different, int(173056));
        let f = r.theorem2.flags;
        assert!(!f.a && f.b && f.c);
        assert!(!r.theorem1.criterion);
        assert_eq!(r.splitting_at(&int(2)).unwrap().ef(), vec![(1, 2), (4, 1)]);
        assert_eq!(r.uniform, vec![(int(2), false), (int(13), false)]);
        assert!(r.verdicts.all_hold(), "{:?}", r.verdicts.failures());
        assert!(r.lemma1.contained);
    }

    #[test]
    fn cubic_and_eisenstein() {
        let r = report(&[-1, -1, 0, 1]);
        assert_eq!(r.order.discriminant(), &int(-23));
        assert!(r.tame && r.t == int(1));
        let f = r.theorem2.flags;
        assert!(!f.a && !f.b && !f.c);
        let e = report(&[-2, 0, 0, 0, 1]);
        assert_eq!(e.eisenstein_primes, vec![int(2)]);
        assert_eq!(e.splitting_at(&int(2)).unwrap().ef(), vec![(4, 1)]);
        assert!(e.theorem1.criterion && e.t >= int(2));
        assert!(e.verdicts.all_hold(), "{:?}", e.verdicts.failures());
        assert_eq!(eisenstein_detect(&IntPolynomial::from_i64(&[3, 0, -3, 0, 0, 0, 1])), vec![int(3)]);
        assert!(eisenstein_detect(&IntPolynomial::from_i64(&[1, 0, 5, 0, 1, 0, 1])).is_empty());
    }

    #[test]
    fn scaled_rational_trace() {
        let k = NumberField::from_i64(&[1, 0, 5, 0, 1, 0, 1]).unwrap();
        assert_eq!(scaled_one(&k, &rat(7, 3)).trace(), rat(7, 3));
    }
}
