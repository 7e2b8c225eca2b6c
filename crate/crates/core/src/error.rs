use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dilation parameter must be positive, got {0}")]
    NonPositiveDilation(f64),
    #[error("convolution needs {required} pair evaluations, budget is {limit}")]
    BudgetExceeded { required: u128, limit: u128 },
    #[error("grid too coarse: {0} nodes per axis, need at least 5")]
    GridTooCoarse(usize),
    #[error("lambda = 0 is not a point of the Gelfand space")]
    ZeroLambda,
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("band [{lo}, {hi}] lies outside the grid range [{grid_lo}, {grid_hi}]")]
    BandOutsideGrid { lo: f64, hi: f64, grid_lo: f64, grid_hi: f64 },
    #[error("multiplier {name} is unbounded on the grid (value {value} at xi = {xi})")]
    UnboundedMultiplier { name: String, xi: f64, value: f64 },
    #[error("multiplier {0} is not square-integrable on the grid")]
    NonIntegrableMultiplier(String),
    #[error("grid xi range reaches {grid_max}, partition covers only {covered}")]
    CoverageExceeded { grid_max: f64, covered: f64 },
    #[error("band {j} out of range [-1, {max}]")]
    BandOutOfRange { j: i64, max: i64 },
    #[error("multiplier {0} is not admissible")]
    NotAdmissible(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("calibration disagrees with the binomial weights: {0}")]
    Calibration(String),
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
