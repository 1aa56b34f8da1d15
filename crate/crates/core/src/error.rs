use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("period {value} at position {pos} is below 2")]
    PeriodBelowTwo { pos: usize, value: u64 },

    #[error("no such signature: {0}")]
    NoSignature(String),

    #[error("area {0} is not positive")]
    NonPositiveArea(String),

    #[error("no surface kernel: {0}")]
    NotASurfaceKernel(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("expression error: {0}")]
    Expr(String),

    #[error("recipe error: {0}")]
    Recipe(String),

    #[error("group of order {order} exceeds the bound {bound}")]
    TooLarge { order: usize, bound: usize },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("search space estimate {estimate} exceeds the limit {limit}")]
    BudgetExceeded { estimate: u128, limit: u128 },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("species: {0}")]
    Species(String),

    #[error("ledger: {0}")]
    Ledger(String),
}

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }
}
