//! Corpus files: one field per line, plus `compose:` lines for composita.
//!
//! ```text
//! # comment
//! sextic: [1,0,5,0,1,0,1] expect t=1 disc=-173056 split2=(1,2),(4,1)
//! q5: [-1,-1,1] normal
//! compose: [-1,-1,1], [-1,-1,0,1]
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use tracegate_core::arith::squarefree_kernel;
use tracegate_core::{
    analyze, theorem3_i_witness, theorem3_iii_check, IntPolynomial, Integer, NumberField, TraceReport,
};

use crate::error::CliError;
use crate::parse::{parse_coefficients, ParseError};
use crate::report::{field_report, FieldReportJson};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectations {
    pub t: Option<String>,
    pub disc: Option<String>,
    /// p → sorted (e, f) list.
    pub splits: BTreeMap<String, Vec<(u32, u32)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub label: String,
    pub coefficients: Vec<String>,
    pub declared_normal: bool,
    pub expectations: Option<Expectations>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeEntry {
    pub line: usize,
    pub polys: Vec<Vec<Integer>>,
    pub declared_normal: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    /// Sorted by label.
    pub fields: Vec<CorpusEntry>,
    pub compositions: Vec<ComposeEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct CorpusError {
    pub line: usize,
    pub message: String,
}

fn line_err(line: usize, message: impl Into<String>) -> CorpusError {
    CorpusError { line, message: message.into() }
}

/// Splits `[..]` groups and the trailing words of a line body.
fn split_lists(body: &str, line: usize) -> Result<(Vec<&str>, Vec<&str>), CorpusError> {
    let mut lists = Vec::new();
    let mut rest = body.trim();
    while rest.starts_with('[') {
        let end = rest.find(']').ok_or_else(|| line_err(line, "unterminated '['"))?;
        lists.push(&rest[..=end]);
        rest = rest[end + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok((lists, rest.split_whitespace().collect()))
}

fn parse_list(text: &str, line: usize) -> Result<Vec<Integer>, CorpusError> {
    let coeffs = parse_coefficients(text).map_err(|e: ParseError| line_err(line, e.to_string()))?;
    let poly = IntPolynomial::new(coeffs.clone());
    if poly.degree().unwrap_or(0) < 1 || !poly.is_monic() || coeffs.last().is_some_and(|c| !c.is_one()) {
        return Err(line_err(line, "polynomial must be monic of degree ≥ 1 with leading coefficient last"));
    }
    Ok(coeffs)
}

fn parse_pairs(text: &str, line: usize) -> Result<Vec<(u32, u32)>, CorpusError> {
    let bad = || line_err(line, format!("malformed (e,f) list '{text}'"));
    let inner = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
    let mut out = Vec::new();
    for pair in inner.split("),(") {
        let (e, f) = pair.split_once(',').ok_or_else(bad)?;
        out.push((e.trim().parse().map_err(|_| bad())?, f.trim().parse().map_err(|_| bad())?));
    }
    out.sort_unstable();
    Ok(out)
}

fn parse_expectations(words: &[&str], line: usize) -> Result<Expectations, CorpusError> {
    let mut ex = Expectations::default();
    for w in words {
        let (key, value) = w.split_once('=').ok_or_else(|| line_err(line, format!("expected key=value, found '{w}'")))?;
        let int = || {
            value
                .parse::<Integer>()
                .map(|v| v.to_string())
                .map_err(|_| line_err(line, format!("'{value}' is not an integer")))
        };
        match key {
            "t" => ex.t = Some(int()?),
            "disc" => ex.disc = Some(int()?),
            _ if key.starts_with("split") => {
                let p: Integer =
                    key["split".len()..].parse().map_err(|_| line_err(line, format!("bad prime in '{key}'")))?;
                ex.splits.insert(p.to_string(), parse_pairs(value, line)?);
            }
            _ => return Err(line_err(line, format!("unknown expectation '{key}'"))),
        }
    }
    Ok(ex)
}

pub fn parse_corpus(text: &str) -> Result<Corpus, CorpusError> {
    let mut corpus = Corpus::default();
    let mut labels = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (label, body) = content.split_once(':').ok_or_else(|| line_err(line, "expected 'label: [coefficients]'"))?;
        let label = label.trim();
        let (lists, words) = split_lists(body, line)?;
        if lists.is_empty() {
            return Err(line_err(line, "missing coefficient list"));
        }
        let normal = words.first() == Some(&"normal");
        let words = if normal { &words[1..] } else { &words[..] };
        if label == "compose" {
            if lists.len() < 2 || !words.is_empty() {
                return Err(line_err(line, "expected 'compose: [f], [g], ... [normal]'"));
            }
            let polys = lists.iter().map(|l| parse_list(l, line)).collect::<Result<_, _>>()?;
            corpus.compositions.push(ComposeEntry { line, polys, declared_normal: normal });
            continue;
        }
        if label.is_empty() || label.contains(char::is_whitespace) {
            return Err(line_err(line, format!("invalid label '{label}'")));
        }
        if lists.len() != 1 {
            return Err(line_err(line, "expected exactly one coefficient list"));
        }
        if !labels.insert(label.to_string()) {
            return Err(line_err(line, format!("duplicate label '{label}'")));
        }
        let expectations = match words.split_first() {
            None => None,
            Some((&"expect", rest)) => Some(parse_expectations(rest, line)?),
            Some((w, _)) => return Err(line_err(line, format!("unexpected '{w}'"))),
        };
        corpus.fields.push(CorpusEntry {
            label: label.to_string(),
            coefficients: parse_list(lists[0], line)?.iter().map(Integer::to_string).collect(),
            declared_normal: normal,
            expectations,
            line,
        });
    }
    corpus.fields.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(corpus)
}

impl CorpusEntry {
    pub fn poly(&self) -> IntPolynomial {
        IntPolynomial::new(self.coefficients.iter().map(|c| c.parse().expect("validated integer")).collect())
    }
}

/// Which theorem suites a corpus run checks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Suites {
    pub thm1: bool,
    pub thm2: bool,
    pub lemma1: bool,
    pub lemma2: bool,
    pub norm_different: bool,
    pub thm3: bool,
}

impl Suites {
    pub fn all() -> Self {
        Self { thm1: true, thm2: true, lemma1: true, lemma2: true, norm_different: true, thm3: true }
    }

    /// No flag selected means every suite.
    pub fn or_all(self) -> Self {
        if self == Self::default() {
            Self::all()
        } else {
            self
        }
    }
}

/// Reads `TRACEGATE_BUDGET_MS`.
pub fn budget_from_env() -> Option<Duration> {
    std::env::var("TRACEGATE_BUDGET_MS").ok()?.trim().parse().ok().map(Duration::from_millis)
}

pub fn build_field(poly: IntPolynomial, assert_irreducible: bool, normal: bool) -> Result<NumberField, CliError> {
    let field = if assert_irreducible { NumberField::new_asserted(poly)? } else { NumberField::new(poly)? };
    Ok(if normal { field.declare_normal() } else { field })
}

/// Runs the full analysis, failing with a budget error when the soft cap
/// was exceeded.
pub fn analyze_within(field: &NumberField, budget: Option<Duration>) -> Result<TraceReport, CliError> {
    let start = Instant::now();
    let report = analyze(field)?;
    match budget {
        Some(b) if start.elapsed() > b => Err(CliError::Budget(format!(
            "analysis took {} ms, over the {} ms budget",
            start.elapsed().as_millis(),
            b.as_millis()
        ))),
        _ => Ok(report),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldOutcome {
    pub label: String,
    pub report: Option<FieldReportJson>,
    pub checks: Vec<Check>,
    pub error: Option<String>,
    pub exit_code: i32,
}

impl FieldOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposeOutcome {
    pub line: usize,
    pub description: String,
    pub checks: Vec<Check>,
    pub error: Option<String>,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub fields: Vec<FieldOutcome>,
    pub compositions: Vec<ComposeOutcome>,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl CorpusSummary {
    pub fn exit_code(&self) -> i32 {
        let codes = self.fields.iter().map(|f| f.exit_code).chain(self.compositions.iter().map(|c| c.exit_code));
        let codes: Vec<i32> = codes.collect();
        if codes.contains(&crate::error::EXIT_VIOLATION) {
            crate::error::EXIT_VIOLATION
        } else {
            codes.into_iter().max().unwrap_or(0)
        }
    }
}

fn check(name: &str, pass: bool) -> Check {
    Check { name: name.to_string(), pass }
}

/// Disc and t of ℚ(√m): (m, 1, tame) for m ≡ 1 mod 4, else (4m, 2, wild).
pub fn quadratic_dichotomy(r: &TraceReport) -> Option<bool> {
    let f = r.field().poly();
    if f.degree() != Some(2) {
        return None;
    }
    let (b, c) = (f.coeff(1), f.coeff(0));
    let m = squarefree_kernel(&(&b * &b - Integer::from(4) * c)).ok()?;
    let disc = r.order.discriminant();
    let one_mod_4 = num_integer::Integer::mod_floor(&m, &Integer::from(4)).is_one();
    Some(if one_mod_4 {
        disc == &m && r.t.is_one() && r.tame
    } else {
        disc == &(Integer::from(4) * &m) && r.t == Integer::from(2) && !r.tame
    })
}

fn expectation_checks(ex: &Expectations, rep: &FieldReportJson) -> Vec<Check> {
    let mut out = Vec::new();
    if let Some(t) = &ex.t {
        out.push(check("expect_t", &rep.t_l == t));
    }
    if let Some(d) = &ex.disc {
        out.push(check("expect_disc", &rep.disc.value == d));
    }
    for (p, pattern) in &ex.splits {
        let got = rep.e_patterns(p).map(|mut v| {
            v.sort_unstable();
            v
        });
        out.push(check(&format!("expect_split{p}"), got.as_ref() == Some(pattern)));
    }
    out
}

pub fn run_field(entry: &CorpusEntry, suites: Suites, assert_irreducible: bool, budget: Option<Duration>) -> FieldOutcome {
    let fail = |e: CliError| FieldOutcome {
        label: entry.label.clone(),
        report: None,
        checks: Vec::new(),
        exit_code: e.exit_code(),
        error: Some(e.to_string()),
    };
    let report = match build_field(entry.poly(), assert_irreducible, entry.declared_normal)
        .and_then(|f| analyze_within(&f, budget))
    {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let json = field_report(&report);
    let v = &report.verdicts;
    let mut checks = Vec::new();
    if suites.thm1 {
        checks.push(check("thm1", v.thm1 && v.thm1_any_prime));
    }
    if suites.thm2 {
        checks.push(check("thm2_chain", v.thm2_chain));
        if let Some(ok) = quadratic_dichotomy(&report) {
            checks.push(check("quadratic_dichotomy", ok));
        }
    }
    if suites.lemma1 {
        checks.push(check("lemma1", v.lemma1));
    }
    if suites.lemma2 {
        checks.push(check("lemma2", v.lemma2));
    }
    if suites.norm_different {
        checks.push(check("norm_different", v.norm_different));
    }
    checks.push(check("consistency", v.lemma3 && v.t_divisibility && v.uniform_wild && v.eisenstein));
    if let Some(ex) = &entry.expectations {
        checks.extend(expectation_checks(ex, &json));
    }
    let exit_code = if checks.iter().all(|c| c.pass) { 0 } else { crate::error::EXIT_VIOLATION };
    FieldOutcome { label: entry.label.clone(), report: Some(json), checks, error: None, exit_code }
}

fn describe(polys: &[Vec<Integer>]) -> String {
    polys.iter().map(|p| IntPolynomial::new(p.clone()).to_string()).collect::<Vec<_>>().join(" , ")
}

fn pairwise_coprime(degrees: &[usize]) -> bool {
    degrees.iter().enumerate().all(|(i, a)| degrees[i + 1..].iter().all(|b| num_integer::gcd(*a, *b) == 1))
}

pub fn run_compose(entry: &ComposeEntry, assert_irreducible: bool) -> ComposeOutcome {
    let description = describe(&entry.polys);
    let result = (|| -> Result<Vec<Check>, CliError> {
        let fields = entry
            .polys
            .iter()
            .map(|p| {
                let normal = entry.declared_normal || p.len() == 3;
                build_field(IntPolynomial::new(p.clone()), assert_irreducible, normal)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let degrees: Vec<usize> = fields.iter().map(NumberField::degree).collect();
        if pairwise_coprime(&degrees) {
            let w = theorem3_i_witness(&fields)?;
            let product: usize = degrees.iter().product();
            Ok(vec![check("compositum_degree", w.field.degree() == product), check("witness_trace_one", w.trace.is_one())])
        } else if fields.len() == 2 {
            let r = theorem3_iii_check(&fields[0], &fields[1])?;
            Ok(vec![
                check("compositum_t_one", r.t.is_one()),
                check("compositum_tame", r.tame),
                check("ramification_multiplicative", r.ramification.iter().all(|row| row.multiplicative)),
            ])
        } else {
            Err(CliError::Input("degrees are not pairwise coprime and more than two fields were given".into()))
        }
    })();
    match result {
        Ok(checks) => {
            let exit_code = if checks.iter().all(|c| c.pass) { 0 } else { crate::error::EXIT_VIOLATION };
            ComposeOutcome { line: entry.line, description, checks, error: None, exit_code }
        }
        Err(e) => ComposeOutcome {
            line: entry.line,
            description,
            checks: Vec::new(),
            exit_code: e.exit_code(),
            error: Some(e.to_string()),
        },
    }
}

/// Runs every field (and, with the thm3 suite, every composition) on a pool
/// of `parallel` workers. Output order does not depend on `parallel`.
pub fn run_corpus(
    corpus: &Corpus,
    suites: Suites,
    parallel: usize,
    assert_irreducible: bool,
    budget: Option<Duration>,
) -> Result<CorpusSummary, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallel.max(1))
        .build()
        .map_err(|e| CliError::Budget(format!("cannot start worker pool: {e}")))?;
    let (fields, compositions) = pool.install(|| {
        let fields: Vec<FieldOutcome> =
            corpus.fields.par_iter().map(|e| run_field(e, suites, assert_irreducible, budget)).collect();
        let compositions: Vec<ComposeOutcome> = if suites.thm3 {
            corpus.compositions.par_iter().map(|c| run_compose(c, assert_irreducible)).collect()
        } else {
            Vec::new()
        };
        (fields, compositions)
    });
    let total = fields.len() + compositions.len();
    let passed = fields.iter().filter(|f| f.passed()).count()
        + compositions.iter().filter(|c| c.error.is_none() && c.checks.iter().all(|k| k.pass)).count();
    Ok(CorpusSummary { fields, compositions, total, passed, failed: total - passed })
}

pub fn render_summary(s: &CorpusSummary) -> String {
    let mut out = String::new();
    for f in &s.fields {
        let status = if f.passed() { "PASS" } else { "FAIL" };
        let detail = match (&f.report, &f.error) {
            (_, Some(e)) => format!("error: {e}"),
            (Some(r), None) => {
                let failed: Vec<&str> = f.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
                let mut d = format!("d={} disc={} t={} tame={}", r.degree, r.disc.value, r.t_l, r.tame);
                if !failed.is_empty() {
                    d.push_str(&format!(" failed=[{}]", failed.join(",")));
                }
                d
            }
            (None, None) => String::new(),
        };
        out.push_str(&format!("{status} {:<24} {detail}\n", f.label));
    }
    for c in &s.compositions {
        let ok = c.error.is_none() && c.checks.iter().all(|k| k.pass);
        let detail = match &c.error {
            Some(e) => format!("error: {e}"),
            None => c.checks.iter().map(|k| format!("{}={}", k.name, k.pass)).collect::<Vec<_>>().join(" "),
        };
        out.push_str(&format!("{} compose@{:<15} {} :: {detail}\n", if ok { "PASS" } else { "FAIL" }, c.line, c.description));
    }
    out.push_str(&format!("total {} passed {} failed {}\n", s.total, s.passed, s.failed));
    out
}

/// Degree of a corpus entry, for filtering.
pub fn entry_degree(e: &CorpusEntry) -> usize {
    e.coefficients.len() - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lines_and_expectations() {
        let text = "# header\nb: [-1,-1,1] normal\na: [1,0,5,0,1,0,1] expect t=1 disc=-173056 split2=(4,1),(1,2)\ncompose: [-1,-1,1], [-1,-1,0,1]\n";
        let c = parse_corpus(text).unwrap();
        assert_eq!(c.fields[0].label, "a");
        assert!(c.fields[1].declared_normal);
        let ex = c.fields[0].expectations.as_ref().unwrap();
        assert_eq!(ex.splits["2"], vec![(1, 2), (4, 1)]);
        assert_eq!(ex.disc.as_deref(), Some("-173056"));
        assert_eq!(c.compositions[0].polys.len(), 2);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert_eq!(parse_corpus("a: [1,2]\n").unwrap_err().line, 1);
        assert_eq!(parse_corpus("\na: [1,1]\na: [2,1]").unwrap_err().message, "duplicate label 'a'");
        assert_eq!(parse_corpus("a [1,1]").unwrap_err().line, 1);
        assert!(parse_corpus("a: [1,1] expect q=3").is_err());
    }
}
