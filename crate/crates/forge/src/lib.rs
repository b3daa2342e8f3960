//! IO, file formats and the result-manifest runner around `forge-core`.

pub mod checks;
pub mod error;
pub mod json;
pub mod manifest;

pub use error::ForgeError;

/// Default total-degree window for spectral sequences.
pub const DEFAULT_WINDOW: u32 = 6;

/// `FORGE_WINDOW` if set, else `default`.
pub fn window_or(default: u32) -> Result<u32, ForgeError> {
    match std::env::var("FORGE_WINDOW") {
        Ok(v) => v.trim().parse().map_err(|_| ForgeError::Window(v)),
        Err(std::env::VarError::NotPresent) => Ok(default),
        Err(e) => Err(ForgeError::Window(e.to_string())),
    }
}
