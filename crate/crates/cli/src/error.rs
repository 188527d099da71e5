use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("input error: {0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] gasket_core::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1 for a failed mathematical check, 2 for bad input or configuration.
    pub fn exit_code(&self) -> u8 {
        use gasket_core::Error as E;
        match self {
            CliError::Core(
                E::NotProportional { .. } | E::NoChain(_) | E::PreconditionViolated { .. },
            ) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
