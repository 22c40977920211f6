use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("modulus {0} exceeds the supported primality range")]
    ModulusTooLarge(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("irreducibility could not be certified (use the assertion flag to proceed)")]
    IrreducibilityUnproven,
    #[error("could not factor {0} within the trial-division/Pollard-rho budget")]
    FactorizationBudgetExceeded(String),
    #[error("operation is undefined on the zero ideal")]
    ZeroIdeal,
    #[error("ideals belong to different orders")]
    OrderMismatch,
    #[error("fields are not linearly disjoint (best compositum degree found: {best_degree}, expected {expected})")]
    NotLinearlyDisjoint { best_degree: usize, expected: usize },
    #[error("input field {index} has trace index {t} (expected 1)")]
    InputNotSurjective { index: usize, t: String },
    #[error("degrees {0} and {1} are not coprime")]
    DegreesNotCoprime(usize, usize),
    #[error("{0} is not squarefree")]
    NotSquarefree(String),
    #[error("{0} is not congruent to 1 mod 4")]
    NotOneMod4(String),
    #[error("field is not declared normal")]
    NotDeclaredNormal,
    #[error("normality refuted: {0}")]
    NormalityRefuted(String),
    #[error("internal failure: {0}")]
    Internal(String),
}
