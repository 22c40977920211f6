//! Benchmark inputs shared by the criterion targets.

use tracegate_core::NumberField;

/// (name, ascending coefficients) of the fields the benches run on.
pub const FIELDS: &[(&str, &[i64])] = &[
    ("x^3-x-1", &[-1, -1, 0, 1]),
    ("x^3-x^2-2x-8", &[-8, -2, -1, 1]),
    ("x^4-2", &[-2, 0, 0, 0, 1]),
    ("x^6+x^4+5x^2+1", &[1, 0, 5, 0, 1, 0, 1]),
    ("x^6-3x^2+3", &[3, 0, -3, 0, 0, 0, 1]),
    ("x^7-7x+3", &[3, -7, 0, 0, 0, 0, 0, 1]),
];

pub fn field(coeffs: &[i64]) -> NumberField {
    NumberField::from_i64(coeffs).expect("benchmark field is certified irreducible")
}
