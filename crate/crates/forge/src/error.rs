use thiserror::Error;

use forge_core::ahss::AhssError;
use forge_core::emspaces::EmError;
use forge_core::fusionalg::FusionError;
use forge_core::groupcoh::GroupCohError;
use forge_core::steenrod::SteenrodError;
use forge_core::twogroups::TwoGroupError;

#[derive(Debug, Error)]
pub enum ForgeError {
    #[error(transparent)]
    Steenrod(#[from] SteenrodError),
    #[error(transparent)]
    Em(#[from] EmError),
    #[error(transparent)]
    GroupCoh(#[from] GroupCohError),
    #[error(transparent)]
    Ahss(#[from] AhssError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    TwoGroup(#[from] TwoGroupError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("FORGE_WINDOW must be a non-negative integer, got {0:?}")]
    Window(String),
    #[error("unknown manifest id {0:?}")]
    UnknownId(String),
    #[error("bad manifest: {0}")]
    Manifest(String),
    #[error("{0}")]
    Usage(String),
}
