pub mod arith;
pub mod compositum;
pub mod error;
pub mod field;
pub mod ideal;
pub mod order;
pub mod trace;

pub use error::{Error, Result};
pub use arith::{Integer, IntPolynomial, QPolynomial, Rational};
pub use compositum::{
    compose, multiquadratic, normality_heuristic, quadratic_field, theorem3_i_witness, theorem3_iii_check,
    CompositumField, MultiquadraticField, Theorem3IiiReport, TraceOneWitness,
};
pub use field::{FieldElement, NumberField};
pub use ideal::{codifferent, decompose_prime, valuation, FractionalIdeal, PrimeIdeal};
pub use order::{round2, Order};
pub use trace::{analyze, analyze_order, different, trace_index, TraceReport};
