//! Subcommand bodies. Each returns a human rendering, a JSON value and an
//! exit code so they can be driven without spawning the binary.

use num_traits::One;
use serde_json::{json, Value};
use tracegate_core::arith::IntMatrix;
use tracegate_core::compositum::DisjointnessCertificate;
use tracegate_core::{
    compose, decompose_prime, different, multiquadratic, round2, theorem3_i_witness, theorem3_iii_check,
    trace_index, FractionalIdeal, IntPolynomial, Integer, NumberField,
};

use crate::corpus::{analyze_within, budget_from_env, build_field, parse_corpus, render_summary, run_corpus, Suites};
use crate::error::{CliError, EXIT_OK, EXIT_VIOLATION};
use crate::example::{verify_sextic_example, SEXTIC};
use crate::parse::parse_polynomial;
use crate::report::{field_report, render_human};

#[derive(Debug, Clone, Copy, Default)]
pub struct GlobalOpts {
    pub json: bool,
    pub assert_irreducible: bool,
    pub allow_nonmonic: bool,
    pub parallel: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub human: String,
    pub json: Value,
    pub exit_code: i32,
}

impl Output {
    fn ok(human: String, json: Value) -> Self {
        Self { human, json, exit_code: EXIT_OK }
    }

    /// What the binary prints on stdout.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
            s.push('\n');
            s
        } else {
            self.human.clone()
        }
    }
}

fn field_from_text(text: &str, opts: GlobalOpts, normal: bool) -> Result<NumberField, CliError> {
    build_field(parse_polynomial(text, opts.allow_nonmonic)?, opts.assert_irreducible, normal)
}

fn matrix_json(m: &IntMatrix) -> Vec<Vec<String>> {
    m.row_vecs().iter().map(|r| r.iter().map(Integer::to_string).collect()).collect()
}

fn ideal_json(i: &FractionalIdeal) -> Value {
    json!({ "denominator": i.denominator().to_string(), "hnf": matrix_json(i.hnf()) })
}

pub fn cmd_analyze(poly: &str, opts: GlobalOpts) -> Result<Output, CliError> {
    let field = field_from_text(poly, opts, false)?;
    let report = field_report(&analyze_within(&field, budget_from_env())?);
    let exit_code = if report.all_hold() { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Output {
        human: render_human(&report),
        json: serde_json::to_value(&report).expect("serializable"),
        exit_code,
    })
}

pub fn cmd_decompose(poly: &str, p: &str, opts: GlobalOpts) -> Result<Output, CliError> {
    let field = field_from_text(poly, opts, false)?;
    let p: Integer = p.trim().parse().map_err(|_| CliError::Input(format!("'{p}' is not an integer")))?;
    let order = round2(&field)?;
    let primes = decompose_prime(&order, &p)?;
    let mut human = format!("{p}O_L in {}\n", field);
    let mut list = Vec::new();
    for (i, q) in primes.iter().enumerate() {
        human.push_str(&format!("  P{} e={} f={} {}\n", i + 1, q.e, q.f, q.ideal));
        list.push(json!({ "e": q.e, "f": q.f, "ideal": ideal_json(&q.ideal) }));
    }
    Ok(Output::ok(human, json!({ "p": p.to_string(), "primes": list })))
}

pub fn cmd_different(poly: &str, opts: GlobalOpts) -> Result<Output, CliError> {
    let field = field_from_text(poly, opts, false)?;
    let order = round2(&field)?;
    let d = different(&order)?;
    let disc = order.discriminant();
    let human = format!(
        "codifferent {}\ndifferent   {}\nN(D_L)      {}\n|disc(L)|   {}\n",
        d.codifferent,
        d.different,
        d.norm_of_different,
        num_traits::Signed::abs(disc)
    );
    let json = json!({
        "codifferent": ideal_json(&d.codifferent),
        "different": ideal_json(&d.different),
        "norm_different": d.norm_of_different.to_string(),
        "disc": disc.to_string(),
    });
    let exit_code = if d.norm_of_different == num_traits::Signed::abs(disc) { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Output { human, json, exit_code })
}

pub fn cmd_trace_index(poly: &str, opts: GlobalOpts) -> Result<Output, CliError> {
    let field = field_from_text(poly, opts, false)?;
    let order = round2(&field)?;
    let (t, w) = trace_index(&order);
    let traces: Vec<String> = order.basis_traces().iter().map(Integer::to_string).collect();
    let human = format!("t_L {t}\nTr(basis) [{}]\nwitness {w}  trace {}\n", traces.join(", "), w.trace());
    let json = json!({ "t_l": t.to_string(), "basis_traces": traces, "witness": w.to_string(), "trace": w.trace().to_string() });
    Ok(Output::ok(human, json))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum ComposeMode {
    /// Coprime degrees: build a trace-one element of the compositum.
    #[default]
    Witness,
    /// Two normal fields with t = 1: check the compositum is tame with t = 1.
    Normal,
    /// Only construct the compositum.
    Plain,
}

fn certificate_name(c: DisjointnessCertificate) -> String {
    c.to_string()
}

pub fn cmd_compositum(polys: &[String], mode: ComposeMode, opts: GlobalOpts) -> Result<Output, CliError> {
    let normal = mode == ComposeMode::Normal;
    let fields = polys.iter().map(|p| field_from_text(p, opts, normal)).collect::<Result<Vec<_>, _>>()?;
    match mode {
        ComposeMode::Witness => {
            let w = theorem3_i_witness(&fields)?;
            let bezout: Vec<(String, String)> = w.bezout.iter().map(|(u, v)| (u.to_string(), v.to_string())).collect();
            let human = format!(
                "compositum {}\ndegree {}\nwitness {}\ntrace {}\n",
                w.field.poly(),
                w.field.degree(),
                w.witness,
                w.trace
            );
            let json = json!({
                "defining_poly": w.field.poly().to_string(),
                "degree": w.field.degree(),
                "bezout": bezout,
                "witness": w.witness.to_string(),
                "trace": w.trace.to_string(),
            });
            let exit_code = if w.trace.is_one() { EXIT_OK } else { EXIT_VIOLATION };
            Ok(Output { human, json, exit_code })
        }
        ComposeMode::Plain => {
            let [k, m] = fields.as_slice() else {
                return Err(CliError::Input("plain mode takes exactly two polynomials".into()));
            };
            let c = compose(k, m)?;
            let human = format!(
                "compositum {}\ndegree {}\nshift {}\ndisjointness {}\n",
                c.field.poly(),
                c.degree(),
                c.shift,
                c.certificate
            );
            let json = json!({
                "defining_poly": c.field.poly().to_string(),
                "degree": c.degree(),
                "shift": c.shift,
                "certificate": certificate_name(c.certificate),
            });
            Ok(Output::ok(human, json))
        }
        ComposeMode::Normal => {
            let [k, m] = fields.as_slice() else {
                return Err(CliError::Input("normal mode takes exactly two polynomials".into()));
            };
            let r = theorem3_iii_check(k, m)?;
            let poly = r.compositum.as_ref().map_or_else(|| k.poly().to_string(), |c| c.field.poly().to_string());
            let mut human = format!("compositum {poly}\nt_L {}\ntame {}\n", r.t, r.tame);
            let mut rows = Vec::new();
            for row in &r.ramification {
                human.push_str(&format!(
                    "  p={} e(K)={:?} e(M)={:?} e(KM)={:?} multiplicative={}\n",
                    row.p, row.e_left, row.e_right, row.e_compositum, row.multiplicative
                ));
                rows.push(json!({
                    "p": row.p.to_string(),
                    "e_left": row.e_left,
                    "e_right": row.e_right,
                    "e_compositum": row.e_compositum,
                    "multiplicative": row.multiplicative,
                }));
            }
            let json = json!({
                "defining_poly": poly,
                "t_l": r.t.to_string(),
                "tame": r.tame,
                "ramification": rows,
                "holds": r.holds(),
            });
            let exit_code = if r.holds() { EXIT_OK } else { EXIT_VIOLATION };
            Ok(Output { human, json, exit_code })
        }
    }
}

pub fn cmd_multiquadratic(ms: &[String], check_order: bool) -> Result<Output, CliError> {
    let ms = ms
        .iter()
        .map(|m| m.trim().parse::<Integer>().map_err(|_| CliError::Input(format!("'{m}' is not an integer"))))
        .collect::<Result<Vec<_>, _>>()?;
    let (field, alpha, trace) = multiquadratic(&ms)?;
    let gens: Vec<String> = field.generators.iter().map(Integer::to_string).collect();
    let rejected: Vec<String> = field.rejected.iter().map(Integer::to_string).collect();
    let mut human = format!(
        "generators [{}]\nrejected [{}]\ndegree {}\nalpha {} = {}\ntrace {trace}\n",
        gens.join(", "),
        rejected.join(", "),
        field.degree(),
        field.alpha_display(),
        field.element_display(&alpha)
    );
    let mut json = json!({
        "generators": gens,
        "rejected": rejected,
        "degree": field.degree(),
        "alpha": field.alpha_display(),
        "trace": trace.to_string(),
    });
    let mut exit_code = if trace.is_one() { EXIT_OK } else { EXIT_VIOLATION };
    if check_order {
        let (nf, change) = field.primitive_field()?;
        let (t, _) = trace_index(&round2(&nf)?);
        let mapped = field.to_field(&nf, &change, &alpha).trace();
        human.push_str(&format!("primitive field {}\nt_L {t}\ntrace of alpha there {mapped}\n", nf.poly()));
        json["primitive_poly"] = json!(nf.poly().to_string());
        json["t_l"] = json!(t.to_string());
        if !t.is_one() || !mapped.is_one() {
            exit_code = EXIT_VIOLATION;
        }
    }
    Ok(Output { human, json, exit_code })
}

pub fn cmd_corpus(path: &std::path::Path, suites: Suites, opts: GlobalOpts) -> Result<Output, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let corpus = parse_corpus(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let summary = run_corpus(&corpus, suites.or_all(), opts.parallel, opts.assert_irreducible, budget_from_env())?;
    Ok(Output {
        human: render_summary(&summary),
        json: serde_json::to_value(&summary).expect("serializable"),
        exit_code: summary.exit_code(),
    })
}

pub fn cmd_verify_example(poly: Option<&str>, opts: GlobalOpts) -> Result<Output, CliError> {
    let poly = match poly {
        Some(text) => parse_polynomial(text, opts.allow_nonmonic)?,
        None => IntPolynomial::from_i64(&SEXTIC),
    };
    let list = verify_sextic_example(&poly);
    let exit_code = if list.all_pass() { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Output { human: list.render(), json: serde_json::to_value(&list).expect("serializable"), exit_code })
}
