use crate::exactlin::{LeftInverse, Matrix, Subspace, Vector};
use crate::quiveralg::{Module, ModuleMap};

/// The submodule spanned fiberwise by `subspaces`, with its inclusion.
/// The subspaces must be stable under the arrows.
pub fn submodule(m: &Module, subspaces: &[Subspace]) -> (Module, ModuleMap) {
    let alg = m.algebra();
    let dims: Vec<usize> = subspaces.iter().map(Subspace::dim).collect();
    let solvers: Vec<LeftInverse> = subspaces.iter().map(LeftInverse::from_basis).collect();
    let mut maps = Vec::new();
    for (ai, a) in alg.quiver().arrows().iter().enumerate() {
        let cols: Vec<Vector> = subspaces[a.source]
            .basis()
            .iter()
            .map(|b| {
                let img = m.arrow_map(ai).mul_vec(b);
                solvers[a.target].apply(&img).expect("subspaces are not stable under the arrows")
            })
            .collect();
        maps.push(Matrix::from_columns(&cols, dims[a.target]));
    }
    let sub = Module::new_unchecked(alg.clone(), dims, maps);
    let incl = subspaces.iter().map(Subspace::basis_matrix).collect();
    let incl = ModuleMap::new_unchecked(sub.clone(), m.clone(), incl);
    (sub, incl)
}

/// `m / sub` for fiberwise subspaces stable under the arrows, with the
/// projection. Complements are spanned by standard basis vectors.
pub fn quotient(m: &Module, subspaces: &[Subspace]) -> (Module, ModuleMap) {
    let alg = m.algebra();
    let n = alg.vertex_count();
    let mut projections = Vec::with_capacity(n);
    let mut complements = Vec::with_capacity(n);
    for (v, sub) in subspaces.iter().enumerate() {
        let comp = sub.complement_basis();
        let mut all: Vec<Vector> = sub.basis().to_vec();
        all.extend(comp.iter().cloned());
        let full = Matrix::from_columns(&all, m.dim_at(v));
        let inv = full.inverse().expect("basis plus complement is invertible");
        projections.push(inv.block(sub.dim(), 0, comp.len(), m.dim_at(v)));
        complements.push(Matrix::from_columns(&comp, m.dim_at(v)));
    }
    let dims: Vec<usize> = projections.iter().map(Matrix::rows).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| projections[a.target].mul(&m.arrow_map(ai).mul(&complements[a.source])))
        .collect();
    let q = Module::new_unchecked(alg.clone(), dims, maps);
    let proj = ModuleMap::new_unchecked(m.clone(), q.clone(), projections);
    (q, proj)
}

pub fn kernel(f: &ModuleMap) -> (Module, ModuleMap) {
    let subs: Vec<Subspace> = f.components().iter().map(Matrix::kernel_basis).collect();
    submodule(f.source(), &subs)
}

/// The image as a submodule of the target.
pub fn image(f: &ModuleMap) -> (Module, ModuleMap) {
    let subs: Vec<Subspace> = f.components().iter().map(Matrix::column_space).collect();
    submodule(f.target(), &subs)
}

pub fn cokernel(f: &ModuleMap) -> (Module, ModuleMap) {
    let subs: Vec<Subspace> = f.components().iter().map(Matrix::column_space).collect();
    quotient(f.target(), &subs)
}

fn radical_subspaces(m: &Module) -> Vec<Subspace> {
    let alg = m.algebra();
    (0..alg.vertex_count())
        .map(|v| {
            let vectors = alg
                .quiver()
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.target == v)
                .flat_map(|(ai, _)| {
                    let mat = m.arrow_map(ai);
                    (0..mat.cols()).map(move |j| mat.column(j))
                })
                .collect::<Vec<_>>();
            Subspace::span(m.dim_at(v), vectors)
        })
        .collect()
}

/// Sum of the images of all arrows.
pub fn radical(m: &Module) -> (Module, ModuleMap) {
    submodule(m, &radical_subspaces(m))
}

/// `m / rad m`.
pub fn top(m: &Module) -> (Module, ModuleMap) {
    quotient(m, &radical_subspaces(m))
}

/// Joint kernel of the outgoing arrows.
pub fn socle(m: &Module) -> (Module, ModuleMap) {
    let alg = m.algebra();
    let subs = (0..alg.vertex_count())
        .map(|v| {
            let outgoing: Vec<&Matrix> = alg
                .quiver()
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.source == v)
                .map(|(ai, _)| m.arrow_map(ai))
                .collect();
            let mut stacked = Matrix::zeros(0, m.dim_at(v));
            for o in outgoing {
                stacked = stacked.vstack(o);
            }
            stacked.kernel_basis()
        })
        .collect::<Vec<_>>();
    submodule(m, &subs)
}

pub(crate) fn radical_of(m: &Module) -> Vec<Subspace> {
    radical_subspaces(m)
}
