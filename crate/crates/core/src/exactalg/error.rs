use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("operands live in different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("polynomial is reducible over the rationals: factor {factor}")]
    Reducible { factor: String },
    #[error("minimal polynomial must have degree between 1 and 4, got {0}")]
    UnsupportedDegree(usize),
    #[error("bad denominator: element is not {ell}-integral")]
    BadDenominator { ell: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field of order {ell}^{r} exceeds the 2^16 bound")]
    FieldTooLarge { ell: u32, r: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("residue degree {residue} does not divide target degree {target}")]
    ResidueDegree { residue: u32, target: u32 },
    #[error("cannot parse polynomial text {text:?}: {reason}")]
    Parse { text: String, reason: String },
}
