use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("wavelength {lambda:e} m outside the valid window [{lo:e}, {hi:e}] m")]
    OutOfWindow { lambda: f64, lo: f64, hi: f64 },

    #[error("wavelength {lambda:e} m outside the interpolation range [{lo:e}, {hi:e}] m")]
    InterpolationDomain { lambda: f64, lo: f64, hi: f64 },

    #[error("no resonance with azimuthal number {m} inside [{lo:e}, {hi:e}] m")]
    NoResonance { m: u32, lo: f64, hi: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{source_name}:{line}: {msg}")]
    Parse {
        source_name: String,
        line: u64,
        msg: String,
    },

    #[error(
        "near-defective coupled-amplitude matrix (eigenvector condition number {condition:e}); \
         perturb the detunings slightly and retry"
    )]
    DegenerateSystem { condition: f64 },

    #[error("yield integral diverges: eigenvalue pair with non-positive real part {real_part:e}")]
    DivergentIntegral { real_part: f64 },

    #[error("quality factor undefined for zero dissipated power")]
    UndefinedQuality,

    #[error("field carries zero power")]
    ZeroPower,

    #[error("far-field sample with s_z = {sz:e} makes the Debye-Wolf integrand ill-conditioned; clip to NA < 1 first")]
    IllConditionedIntegral { sz: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
