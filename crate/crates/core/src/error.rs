use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate q: q = 1 makes 1 - q vanish (use the q -> 1 limit instead)")]
    DegenerateQ,
    #[error("invalid q: {0}")]
    InvalidQ(String),
    #[error("invalid weight: alpha and beta must be >= 1 (got alpha = {alpha}, beta = {beta})")]
    InvalidWeight { alpha: u32, beta: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("empty tail: n must be at least 1")]
    EmptyTail,
    #[error("parity violation: d = {0} must be odd")]
    ParityViolation(u32),
    #[error("order too small: got {order}, need at least {required}")]
    OrderTooSmall { order: usize, required: usize },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("q = {q} is not admissible for p = {p}: need q = 1 (mod p)")]
    InadmissibleQ { q: String, p: u64 },
    #[error("precision exhausted")]
    PrecisionExhausted,
    #[error("budget exceeded: {needed} terms requested, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("not Abel-summable under budget: {0}")]
    NotAbelSummable(String),
    #[error("non-finite floating point result in {0}")]
    NonFinite(&'static str),
}
