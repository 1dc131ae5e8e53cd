use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}:{line}: {msg}")]
    Config { path: PathBuf, line: usize, msg: String },
    #[error("cannot read config {path}: {source}")]
    ConfigIo {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("invalid parameter: {0}")]
    Model(#[source] cylosc_core::Error),
    #[error("numerical failure: {0}")]
    Numeric(#[from] cylosc_core::Error),
    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for bad input, 1 for failures while computing or writing.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } | CliError::ConfigIo { .. } | CliError::Invalid(_) | CliError::Model(_) => 2,
            CliError::Numeric(_) | CliError::Output { .. } => 1,
        }
    }
}
