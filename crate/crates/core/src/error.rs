use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid has {got} values, expected {rows}x{cols}")]
    Shape { rows: usize, cols: usize, got: usize },

    #[error("grid dimensions must be positive, got {rows}x{cols}")]
    EmptyGrid { rows: usize, cols: usize },

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("template {template_rows}x{template_cols} does not fit in measurement {rows}x{cols}")]
    Dimension {
        rows: usize,
        cols: usize,
        template_rows: usize,
        template_cols: usize,
    },

    #[error("template must be square, got {rows}x{cols}")]
    NonSquareTemplate { rows: usize, cols: usize },

    #[error("placements ({a_n},{a_m}) and ({b_n},{b_m}) are closer than {w} pixels")]
    Conflict {
        a_n: usize,
        a_m: usize,
        b_n: usize,
        b_m: usize,
        w: usize,
    },

    #[error("no feasible allocation of {k} non-overlapping placements exists")]
    Infeasible { k: usize },

    #[error("brute force needs {needed} subsets, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("search exceeded its time limit of {seconds} s")]
    TimedOut { seconds: f64 },

    #[error("could not place {k} occurrences within {attempts} draws")]
    Generation { k: usize, attempts: u64 },

    #[error("every candidate K was infeasible")]
    NoCandidates,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
