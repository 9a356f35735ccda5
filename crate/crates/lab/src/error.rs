use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("unknown campaign {0:?}")]
    UnknownCampaign(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown export format {0:?}")]
    Format(String),

    #[error("no certified distance from the sphere to the doubled arcs in the ball")]
    NoCertifiedDistance,

    #[error(transparent)]
    Model(#[from] dhl_core::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
