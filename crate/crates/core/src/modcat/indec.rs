use std::sync::Arc;

use super::{HomSpace, ModCatError};
use crate::exactlin::{trace_form_radical, Matrix, Quotient, Subspace, Vector};
use crate::quiveralg::{Algebra, Module};

/// An indecomposable module together with its interval label `⟨top,socle⟩`.
#[derive(Clone, Debug)]
pub struct Indecomposable {
    pub label: String,
    /// Vertex index of the top.
    pub top: usize,
    /// Vertex index of the socle.
    pub socle: usize,
    pub module: Module,
}

/// The connected components of the quiver as linearly oriented chains, or an
/// error when some component is not of that shape.
pub fn linear_chains(alg: &Algebra) -> Result<Vec<Vec<usize>>, ModCatError> {
    let n = alg.vertex_count();
    let arrows = alg.quiver().arrows();
    let mut next = vec![None; n];
    let mut has_pred = vec![false; n];
    for a in arrows {
        if next[a.source].is_some() || has_pred[a.target] {
            return Err(ModCatError::UnsupportedAlgebra("quiver is not a disjoint union of linearly oriented A_n".into()));
        }
        next[a.source] = Some(a.target);
        has_pred[a.target] = true;
    }
    let mut chains = Vec::new();
    for start in (0..n).filter(|&v| !has_pred[v]) {
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(w) = next[cur] {
            chain.push(w);
            cur = w;
        }
        chains.push(chain);
    }
    Ok(chains)
}

/// The interval module supported on `chain[i..=j]` with identity arrow maps.
pub fn interval_module(alg: &Arc<Algebra>, chain: &[usize], i: usize, j: usize) -> Module {
    let mut dims = vec![0; alg.vertex_count()];
    for &v in &chain[i..=j] {
        dims[v] = 1;
    }
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .map(|a| {
            if dims[a.source] == 1 && dims[a.target] == 1 {
                Matrix::identity(1)
            } else {
                Matrix::zeros(dims[a.target], dims[a.source])
            }
        })
        .collect();
    Module::new(alg.clone(), dims, maps).expect("interval avoids every relation")
}

/// All indecomposables of a Nakayama algebra with linearly oriented quiver:
/// the interval modules whose supporting path is nonzero, sorted by
/// `(top, socle)`.
pub fn enumerate_indecomposables(alg: &Arc<Algebra>) -> Result<Vec<Indecomposable>, ModCatError> {
    let chains = linear_chains(alg)?;
    let mut out = Vec::new();
    for chain in &chains {
        for i in 0..chain.len() {
            for j in i..chain.len() {
                if alg.paths_between(chain[i], chain[j]).is_empty() {
                    break;
                }
                out.push(Indecomposable {
                    label: format!("⟨{},{}⟩", alg.vertex_label(chain[i]), alg.vertex_label(chain[j])),
                    top: chain[i],
                    socle: chain[j],
                    module: interval_module(alg, chain, i, j),
                });
            }
        }
    }
    out.sort_by_key(|x| (x.top, x.socle));
    Ok(out)
}

/// `End(m)` with its Jacobson radical in basis coordinates.
#[derive(Clone, Debug)]
pub struct EndRing {
    pub hom: HomSpace,
    pub radical: Subspace,
}

impl EndRing {
    pub fn new(m: &Module) -> Self {
        let hom = HomSpace::new(m, m).expect("same algebra");
        let basis = hom.basis();
        let structure: Vec<Vec<Vector>> = basis
            .iter()
            .map(|x| basis.iter().map(|y| hom.coordinates(&x.compose(y))).collect())
            .collect();
        let radical = trace_form_radical(&structure);
        EndRing { hom, radical }
    }

    /// `dim End(m) / rad End(m)`.
    pub fn semisimple_dim(&self) -> usize {
        self.hom.dim() - self.radical.dim()
    }

    /// Basis of the radical as module maps.
    pub fn radical_maps(&self) -> Vec<crate::quiveralg::ModuleMap> {
        self.radical.basis().iter().map(|c| self.hom.combination(c)).collect()
    }

    pub fn in_radical(&self, coords: &[crate::exactlin::Rational]) -> bool {
        self.radical.contains(coords)
    }

    pub fn quotient(&self) -> Quotient {
        Quotient::new(&Subspace::full(self.hom.dim()), &self.radical)
    }
}

/// True iff `End(m)/rad End(m)` is one-dimensional.
pub fn is_indecomposable(m: &Module) -> bool {
    !m.is_zero() && EndRing::new(m).semisimple_dim() == 1
}

/// Isomorphism test for indecomposables: some composite `m -> n -> m` is
/// invertible, i.e. lies outside the radical of `End(m)`.
pub fn iso_module(m: &Module, n: &Module) -> Result<bool, ModCatError> {
    if !m.same_algebra(n) {
        return Err(ModCatError::AlgebraMismatch);
    }
    let end = EndRing::new(m);
    if m.is_zero() || end.semisimple_dim() != 1 || !is_indecomposable(n) {
        return Err(ModCatError::NotIndecomposableInput);
    }
    if m.dims() != n.dims() {
        return Ok(false);
    }
    let there = HomSpace::new(m, n)?;
    let back = HomSpace::new(n, m)?;
    for g in there.basis() {
        for h in back.basis() {
            let c = end.hom.coordinates(&h.compose(g));
            if !end.in_radical(&c) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
