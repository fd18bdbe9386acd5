//! The bounded derived category modelled by bounded complexes of
//! projectives up to homotopy.
//!
//! Cohomological grading: differentials raise degree. A module placed in
//! degree `0` and shifted by `[n]` sits in degree `-n`.

mod complex;
mod hom;
mod registry;
mod serre;
mod topf;

use thiserror::Error;

use crate::modcat::ModCatError;

pub use complex::{cone, minimize, shift, ChainMap, PerfectComplex};
pub use hom::{compose_cocycles, derived_hom_dim, is_indecomposable_d, iso_test, DerivedEnd, GradedMap, HomComplex, HomK};
pub(crate) use hom::iso_with_end;
pub use registry::{knit_registry, RegArrow, Registry, RegistryEntry, DEFAULT_MAX_OBJECTS};
pub use serre::DerivedContext;
pub use topf::{to_perfect, ModComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivedError {
    #[error("differentials do not compose to zero")]
    NotAComplex,
    #[error("shapes of terms and differentials disagree")]
    ShapeMismatch,
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("window [{lo},{hi}] is too small: it must contain [{need_lo},{need_hi}]")]
    WindowTooSmall { lo: i32, hi: i32, need_lo: i32, need_hi: i32 },
    #[error("knitting exceeded {0} objects; the algebra is probably not of finite derived type")]
    NonTerminating(usize),
    #[error("input complex is not indecomposable")]
    NotIndecomposableInput,
    #[error("map does not commute with the differentials")]
    NotAChainMap,
    #[error(transparent)]
    ModCat(#[from] ModCatError),
}

/// `window` must contain `[-gldim, gldim]`.
pub fn check_window(window: (i32, i32), gldim: usize) -> Result<(), DerivedError> {
    let g = gldim as i32;
    if window.0 > -g || window.1 < g || window.0 > window.1 {
        return Err(DerivedError::WindowTooSmall { lo: window.0, hi: window.1, need_lo: -g, need_hi: g });
    }
    Ok(())
}
