//! JSON and human-readable field reports. Integers are emitted as decimal
//! strings so no consumer truncates them.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use tracegate_core::arith::factor_integer;
use tracegate_core::{Integer, TraceReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantJson {
    pub value: String,
    pub sign: i8,
    /// `|disc|` as `p^e * ...`, or the raw decimal when factoring failed.
    pub factored: String,
    pub factors: Vec<(String, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralBasisJson {
    pub denominator: String,
    /// Row i = power-basis numerators of ωᵢ.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    /// Coordinates in the integral basis.
    pub coordinates: Vec<String>,
    pub element: String,
    pub trace: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeIdealJson {
    pub e: u32,
    pub f: u32,
    pub v_different: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeJson {
    pub p: String,
    pub ideals: Vec<PrimeIdealJson>,
    pub tame: bool,
    pub divides_all_e: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsJson {
    #[serde(rename = "A")]
    pub a: bool,
    #[serde(rename = "B")]
    pub b: bool,
    #[serde(rename = "C")]
    pub c: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictsJson {
    pub thm1: bool,
    pub thm2_chain: bool,
    pub lemma1: bool,
    pub lemma2: bool,
    pub norm_different: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldReportJson {
    pub defining_poly: String,
    pub coefficients: Vec<String>,
    pub degree: usize,
    pub disc: DiscriminantJson,
    pub index: String,
    pub integral_basis: IntegralBasisJson,
    pub t_l: String,
    pub witness: WitnessJson,
    pub primes: Vec<PrimeJson>,
    pub tame: bool,
    pub flags: FlagsJson,
    pub theorem_verdicts: VerdictsJson,
    /// Names of any internal consistency checks that failed.
    pub failures: Vec<String>,
}

impl FieldReportJson {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn e_patterns(&self, p: &str) -> Option<Vec<(u32, u32)>> {
        self.primes.iter().find(|r| r.p == p).map(|r| r.ideals.iter().map(|i| (i.e, i.f)).collect())
    }
}

pub fn discriminant_json(disc: &Integer) -> DiscriminantJson {
    let sign = if disc.is_negative() { -1 } else { i8::from(!disc.is_zero()) };
    match factor_integer(disc) {
        Ok(f) => DiscriminantJson {
            value: disc.to_string(),
            sign,
            factored: f.display(),
            factors: f.primes().into_iter().map(|(p, e)| (p.to_string(), e)).collect(),
        },
        Err(_) => DiscriminantJson { value: disc.to_string(), sign, factored: disc.abs().to_string(), factors: Vec::new() },
    }
}

pub fn field_report(r: &TraceReport) -> FieldReportJson {
    let order = &r.order;
    let field = r.field();
    let basis = order.basis_matrix();
    let matrix = (0..basis.nrows()).map(|i| basis.row(i).iter().map(Integer::to_string).collect()).collect();
    let primes = r
        .splittings
        .iter()
        .map(|s| {
            let vs: Vec<i64> = r.lemma2.iter().filter(|l| l.p == s.p).map(|l| l.v).collect();
            PrimeJson {
                p: s.p.to_string(),
                ideals: s
                    .primes
                    .iter()
                    .zip(vs.into_iter().chain(std::iter::repeat(0)))
                    .map(|(q, v)| PrimeIdealJson { e: q.e, f: q.f, v_different: v })
                    .collect(),
                tame: !s.is_wild(),
                divides_all_e: s.divides_all_e(),
            }
        })
        .collect();
    let flags = r.theorem2.flags;
    let failures = r.verdicts.failures().into_iter().map(String::from).collect();
    FieldReportJson {
        defining_poly: field.poly().to_string(),
        coefficients: field.poly().coeffs().iter().map(Integer::to_string).collect(),
        degree: field.degree(),
        disc: discriminant_json(order.discriminant()),
        index: order.index().to_string(),
        integral_basis: IntegralBasisJson { denominator: order.denominator().to_string(), matrix },
        t_l: r.t.to_string(),
        witness: WitnessJson {
            coordinates: r.witness_coords.iter().map(Integer::to_string).collect(),
            element: r.witness.to_string(),
            trace: r.witness.trace().to_string(),
        },
        primes,
        tame: r.tame,
        flags: FlagsJson { a: flags.a, b: flags.b, c: flags.c },
        theorem_verdicts: VerdictsJson {
            thm1: r.verdicts.thm1,
            thm2_chain: r.verdicts.thm2_chain,
            lemma1: r.verdicts.lemma1,
            lemma2: r.verdicts.lemma2,
            norm_different: r.verdicts.norm_different,
        },
        failures,
    }
}

fn signed_factored(d: &DiscriminantJson) -> String {
    if d.sign < 0 {
        format!("-{}", d.factored)
    } else {
        d.factored.clone()
    }
}

pub fn render_human(r: &FieldReportJson) -> String {
    let mut out = String::new();
    let yes = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(out, "field      {}  (degree {})", r.defining_poly, r.degree);
    let _ = writeln!(out, "disc(L)    {}  ({})", signed_factored(&r.disc), r.disc.value);
    let _ = writeln!(out, "index      {}", r.index);
    let _ = writeln!(out, "basis      denominator {}", r.integral_basis.denominator);
    for row in &r.integral_basis.matrix {
        let _ = writeln!(out, "             [{}]", row.join(", "));
    }
    let _ = writeln!(out, "t_L        {}", r.t_l);
    let _ = writeln!(out, "witness    {}  trace {}", r.witness.element, r.witness.trace);
    let _ = writeln!(out, "tame       {}", yes(r.tame));
    let _ = writeln!(out, "{:>8}  {:<28} {:<6} p|all e", "p", "(e, f, v_p(D))", "tame");
    for p in &r.primes {
        let ideals: Vec<String> = p.ideals.iter().map(|i| format!("({},{},{})", i.e, i.f, i.v_different)).collect();
        let _ = writeln!(out, "{:>8}  {:<28} {:<6} {}", p.p, ideals.join(" "), yes(p.tame), yes(p.divides_all_e));
    }
    let _ = writeln!(out, "flags      A={} B={} C={}", r.flags.a, r.flags.b, r.flags.c);
    let v = r.theorem_verdicts;
    let _ = writeln!(
        out,
        "verdicts   thm1={} thm2_chain={} lemma1={} lemma2={} norm_different={}",
        v.thm1, v.thm2_chain, v.lemma1, v.lemma2, v.norm_different
    );
    if !r.failures.is_empty() {
        let _ = writeln!(out, "FAILED     {}", r.failures.join(", "));
    }
    out
}
