//! Graded free modules, maps between them, minimal resolutions of the
//! trivial module and certificates for explicit complexes.

mod koszul;
mod maps_format;
mod minimal;
mod module;
pub(crate) mod piece;
pub(crate) mod verify;

use thiserror::Error;

use crate::gbasis::GbError;
use crate::grading::GradingError;

pub use koszul::{koszulity_report, KoszulVerdict, KoszulityReport};
pub use maps_format::{parse_maps, write_maps, ComplexFile, MapsError};
pub use minimal::{minimal_resolution, BettiTable, ResGen, Resolution, ResolutionOptions};
pub use module::{BlockPlacement, FreeModuleMap, GradedFreeModule, MapError};
pub use verify::{
    compare_left_annihilator, graded_kernel, verify_complex, verify_exactness, verify_minimality,
    AnnihilatorReport, ComplexCertificate, CompositeFailure, ExactnessCertificate, ExactnessFailure,
};

#[derive(Debug, Error)]
pub enum ResolutionError {
    #[error("invalid bound: {0}")]
    InvalidBound(String),
    #[error("maps do not form a chain ending at A with consistent degrees")]
    NotAChain,
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Grading(#[from] GradingError),
}
