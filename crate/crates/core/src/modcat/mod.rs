//! Computations inside `mod A`: Hom spaces, structural submodules,
//! projective covers, syzygies, minimal projective resolutions, Ext groups,
//! indecomposables and the Auslander-Reiten quiver.

mod arquiver;
mod indec;
mod resolution;
mod structure;

use thiserror::Error;

use crate::exactlin::{LeftInverse, Matrix, Rational, Subspace, Vector};
use crate::quiveralg::{Module, ModuleMap};

pub use arquiver::{ar_quiver, ArArrow, ArQuiver};
pub use indec::{
    enumerate_indecomposables, interval_module, is_indecomposable, iso_module, linear_chains, EndRing, Indecomposable,
};
pub use resolution::{
    ext_dim, ext_dim_via_syzygy, global_dimension, min_proj_resolution, projective_cover, projective_dimension,
    syzygy, ProjectiveCover, Resolution, DEFAULT_MAX_LEN,
};
pub use structure::{cokernel, image, kernel, quotient, radical, socle, submodule, top};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModCatError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("the zero module has no projective cover")]
    ZeroModule,
    #[error("projective resolution did not terminate within {0} steps")]
    TruncationReached(usize),
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("input module is not indecomposable")]
    NotIndecomposableInput,
}

/// `Hom_A(source, target)` with an explicit basis of module maps.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Module,
    target: Module,
    basis: Vec<ModuleMap>,
    solver: LeftInverse,
}

impl HomSpace {
    pub fn new(source: &Module, target: &Module) -> Result<Self, ModCatError> {
        let basis = hom_basis(source, target)?;
        let flat: Vec<Vector> = basis.iter().map(ModuleMap::flatten).collect();
        let n = ModuleMap::flat_len(source, target);
        let solver = LeftInverse::new(&Matrix::from_columns(&flat, n)).expect("hom basis is independent");
        Ok(HomSpace { source: source.clone(), target: target.clone(), basis, solver })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ModuleMap] {
        &self.basis
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    /// Coordinates of a homomorphism in the basis.
    pub fn coordinates(&self, f: &ModuleMap) -> Vector {
        self.solver.apply(&f.flatten()).expect("map is a homomorphism between the same modules")
    }

    pub fn combination(&self, coeffs: &[Rational]) -> ModuleMap {
        let mut out = ModuleMap::zero(&self.source, &self.target);
        for (b, c) in self.basis.iter().zip(coeffs) {
            if !c.is_zero() {
                out = out.add(&b.scale(*c));
            }
        }
        out
    }
}

/// Basis of the space of intertwiners `m -> n`.
pub fn hom_basis(m: &Module, n: &Module) -> Result<Vec<ModuleMap>, ModCatError> {
    if !m.same_algebra(n) {
        return Err(ModCatError::AlgebraMismatch);
    }
    let alg = m.algebra();
    let nv = alg.vertex_count();
    let mut off = vec![0; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + n.dim_at(v) * m.dim_at(v);
    }
    let unknowns = off[nv];
    let mut eqs: Vec<Vector> = Vec::new();
    for (ai, a) in alg.quiver().arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let na = n.arrow_map(ai);
        let ma = m.arrow_map(ai);
        // (N_a X_s - X_t M_a)[i][j] = 0
        for i in 0..n.dim_at(t) {
            for j in 0..m.dim_at(s) {
                let mut row = vec![Rational::default(); unknowns];
                for k in 0..n.dim_at(s) {
                    row[off[s] + k * m.dim_at(s) + j] += na[(i, k)];
                }
                for l in 0..m.dim_at(t) {
                    row[off[t] + i * m.dim_at(t) + l] -= ma[(l, j)];
                }
                eqs.push(row);
            }
        }
    }
    let kernel = if eqs.is_empty() { Subspace::full(unknowns) } else { Matrix::from_rows(&eqs, unknowns).kernel_basis() };
    Ok(kernel.basis().iter().map(|v| ModuleMap::from_flat(m, n, v)).collect())
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize, ModCatError> {
    Ok(hom_basis(m, n)?.len())
}
