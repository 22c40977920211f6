//! End-to-end replication of the sextic x⁶+x⁴+5x²+1.

use num_traits::One;
use serde::{Deserialize, Serialize};
use tracegate_core::arith::{int, rat};
use tracegate_core::{IntPolynomial, Integer, NumberField, Rational};

use crate::report::discriminant_json;

pub const SEXTIC: [i64; 7] = [1, 0, 5, 0, 1, 0, 1];
/// Same shape with the constant term changed; β is not integral here.
pub const TAMPERED_SEXTIC: [i64; 7] = [3, 0, 5, 0, 1, 0, 1];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecklistItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checklist {
    pub defining_poly: String,
    pub items: Vec<ChecklistItem>,
}

impl Checklist {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn render(&self) -> String {
        let mut out = format!("field {}\n", self.defining_poly);
        for i in &self.items {
            out.push_str(&format!("{} {:<34} {}\n", if i.pass { "PASS" } else { "FAIL" }, i.name, i.detail));
        }
        out
    }
}

fn item(name: &str, pass: bool, detail: String) -> ChecklistItem {
    ChecklistItem { name: name.to_string(), pass, detail }
}

const NAMES: [&str; 5] = [
    "disc(L) = -2^10 * 13^2",
    "2O_L = P1^4 * P2",
    "beta integral with Tr(beta) = -7",
    "t_L = 1",
    "criterion false at p = 2 and p = 3",
];

/// β = (α⁵+α⁴+2α³+2α²−α−1)/4 in the power basis.
pub fn beta(field: &NumberField) -> tracegate_core::FieldElement {
    let q = |n: i64| rat(n, 4);
    field.element(vec![q(-1), q(-1), q(2), q(2), q(1), q(1)])
}

/// The five checks, evaluated on `poly` (normally [`SEXTIC`]).
pub fn verify_sextic_example(poly: &IntPolynomial) -> Checklist {
    let defining_poly = poly.to_string();
    let failed_all = |why: String| Checklist {
        defining_poly: defining_poly.clone(),
        items: NAMES.iter().map(|n| item(n, false, why.clone())).collect(),
    };
    let field = match NumberField::new_asserted(poly.clone()) {
        Ok(f) if f.degree() == 6 => f,
        Ok(_) => return failed_all("field is not of degree 6".into()),
        Err(e) => return failed_all(e.to_string()),
    };
    let report = match tracegate_core::analyze(&field) {
        Ok(r) => r,
        Err(e) => return failed_all(e.to_string()),
    };
    let disc = report.order.discriminant();
    let expected_disc = -(int(2).pow(10u32) * int(13).pow(2u32));
    let dj = discriminant_json(disc);
    let sign = if dj.sign < 0 { "-" } else { "" };

    let two = report.splitting_at(&int(2)).map(|s| s.ef()).unwrap_or_default();
    let mut sorted = two.clone();
    sorted.sort_unstable();

    let b = beta(&field);
    let b_integral = b.is_integral();
    let b_trace = b.trace();

    let crit = |p: i64| report.splitting_at(&int(p)).map(|s| s.divides_all_e());
    let (c2, c3) = (crit(2), crit(3));
    let crit_detail = format!("p=2 divides all e: {c2:?}; p=3 divides all e: {c3:?}");

    Checklist {
        defining_poly,
        items: vec![
            item(NAMES[0], disc == &expected_disc, format!("{sign}{} ({disc})", dj.factored)),
            item(NAMES[1], sorted == vec![(1, 2), (4, 1)], format!("(e,f) above 2: {two:?}")),
            item(
                NAMES[2],
                b_integral && b_trace == Rational::from_integer(Integer::from(-7)),
                format!("integral: {b_integral}, trace {b_trace}"),
            ),
            item(
                NAMES[3],
                report.t.is_one() && report.witness.trace().is_one(),
                format!("t = {}, witness {} has trace {}", report.t, report.witness, report.witness.trace()),
            ),
            item(NAMES[4], c2 == Some(false) && c3 == Some(false), crit_detail),
        ],
    }
}
