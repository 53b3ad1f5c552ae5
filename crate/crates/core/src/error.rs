use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported dimension {0}: meshing is implemented for n = 2 and n = 3 only")]
    UnsupportedDimension(usize),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point {point:?} is not inside the domain")]
    OutsideDomain { point: Vec<f64> },

    #[error("pole {pole:?} lies in the closure of the domain")]
    PoleInsideClosure { pole: Vec<f64> },

    #[error("singular evaluation at {point:?}")]
    Singularity { point: Vec<f64> },

    #[error("invalid pole: alpha must be nonzero")]
    InvalidPole,

    #[error("evaluation point within {distance:e} of the singular set (need > {required:e})")]
    NearSingularity { distance: f64, required: f64 },

    #[error("non-finite integrand value {value} at facet {facet} (point {point:?})")]
    NonFinite {
        facet: usize,
        point: Vec<f64>,
        value: f64,
    },

    #[error("inconsistent orientation: divergence volume {0} is not positive")]
    Orientation(f64),

    #[error("mesh exceeds the facet budget of {0}")]
    MeshTooLarge(usize),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("configuration error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
