use std::sync::Arc;

use super::structure::{kernel, radical_of};
use super::{hom_basis, hom_dim, ModCatError};
use crate::exactlin::{Matrix, Subspace, Vector};
use crate::quiveralg::{Algebra, Module, ModuleMap, ProjMap, StandardKind};

/// Guard on resolution length; acyclic monomial algebras always stop well
/// before this.
pub const DEFAULT_MAX_LEN: usize = 32;

/// A projective cover `P_{v_1} + ... + P_{v_k} -> M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// Vertex of each indecomposable summand, in vertex order.
    pub vertices: Vec<usize>,
    /// Image of the generator of each summand, an element of `M` at that vertex.
    pub generators: Vec<Vector>,
    pub map: ModuleMap,
}

/// Lifts a basis of `top(m)` fiberwise: at each vertex, standard basis
/// vectors completing the radical.
pub fn projective_cover(m: &Module) -> Result<ProjectiveCover, ModCatError> {
    if m.is_zero() {
        return Err(ModCatError::ZeroModule);
    }
    let rad = radical_of(m);
    let mut vertices = Vec::new();
    let mut generators = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        for g in r.complement_basis() {
            vertices.push(v);
            generators.push(g);
        }
    }
    let map = ModuleMap::from_generators(m, &vertices, &generators);
    Ok(ProjectiveCover { vertices, generators, map })
}

/// `Omega^power(m)`; the zero module once a projective is reached.
pub fn syzygy(m: &Module, power: usize) -> Module {
    let mut cur = m.clone();
    for _ in 0..power {
        if cur.is_zero() {
            break;
        }
        let cover = projective_cover(&cur).expect("nonzero");
        cur = kernel(&cover.map).0;
    }
    cur
}

/// A minimal projective resolution `... -> P_1 -> P_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub target: Module,
    /// `terms[k]` lists the vertices of the summands of `P_k`.
    pub terms: Vec<Vec<usize>>,
    /// `differentials[k]: P_{k+1} -> P_k` in path coordinates.
    pub differentials: Vec<ProjMap>,
    pub augmentation: ModuleMap,
}

impl Resolution {
    /// Projective dimension of the target (0 for the zero module).
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    /// Every differential lies in the radical.
    pub fn is_minimal(&self) -> bool {
        let alg = self.target.algebra();
        self.differentials.iter().all(|d| d.is_radical(alg))
    }

    /// `im d_{k+1} = ker d_k` at every spot, the augmentation is onto and
    /// the last differential is injective.
    pub fn is_exact(&self) -> bool {
        if self.terms.is_empty() {
            return self.target.is_zero();
        }
        let alg = self.target.algebra();
        if !self.augmentation.is_surjective() {
            return false;
        }
        let maps: Vec<ModuleMap> = self.differentials.iter().map(|d| d.to_module_map(alg)).collect();
        let mut prev_kernel: Vec<Subspace> = self.augmentation.components().iter().map(Matrix::kernel_basis).collect();
        for d in &maps {
            let img: Vec<Subspace> = d.components().iter().map(Matrix::column_space).collect();
            if !img.iter().zip(&prev_kernel).all(|(a, b)| a.same_as(b)) {
                return false;
            }
            prev_kernel = d.components().iter().map(Matrix::kernel_basis).collect();
        }
        prev_kernel.iter().all(|k| k.dim() == 0)
    }
}

pub fn min_proj_resolution(m: &Module, max_len: usize) -> Result<Resolution, ModCatError> {
    let alg = m.algebra().clone();
    if m.is_zero() {
        return Ok(Resolution {
            target: m.clone(),
            terms: Vec::new(),
            differentials: Vec::new(),
            augmentation: ModuleMap::zero(&Module::zero(alg), m),
        });
    }
    let cover = projective_cover(m)?;
    let mut terms = vec![cover.vertices.clone()];
    let mut differentials = Vec::new();
    let augmentation = cover.map.clone();
    let (mut k, mut incl) = kernel(&cover.map);
    while !k.is_zero() {
        if terms.len() > max_len {
            return Err(ModCatError::TruncationReached(max_len));
        }
        let c = projective_cover(&k)?;
        let prev = terms.last().expect("nonempty");
        differentials.push(projective_columns(&alg, prev, &c, &incl));
        terms.push(c.vertices.clone());
        (k, incl) = kernel(&c.map);
    }
    Ok(Resolution { target: m.clone(), terms, differentials, augmentation })
}

/// Writes the generators of a cover of a submodule of `projective_sum(rows)`
/// as the columns of a path-coordinate map.
pub(crate) fn projective_columns(alg: &Arc<Algebra>, rows: &[usize], cover: &ProjectiveCover, incl: &ModuleMap) -> ProjMap {
    let mut d = ProjMap::zero(alg, rows, &cover.vertices);
    for (j, (&v, g)) in cover.vertices.iter().zip(&cover.generators).enumerate() {
        let elem = incl.component(v).mul_vec(g);
        let mut off = 0;
        for (r, &w) in rows.iter().enumerate() {
            let n = alg.paths_between(w, v).len();
            d.entry_mut(r, j).copy_from_slice(&elem[off..off + n]);
            off += n;
        }
    }
    d
}

pub fn projective_dimension(m: &Module) -> Result<usize, ModCatError> {
    Ok(min_proj_resolution(m, DEFAULT_MAX_LEN)?.length())
}

/// Maximum projective dimension of the simple modules.
pub fn global_dimension(alg: &Arc<Algebra>) -> Result<usize, ModCatError> {
    let mut best = 0;
    for v in 0..alg.vertex_count() {
        let s = Module::standard(alg, StandardKind::Simple, v).expect("vertex in range");
        best = best.max(projective_dimension(&s)?);
    }
    Ok(best)
}

/// Matrix of `Hom(P_k, N) -> Hom(P_{k+1}, N)`, `phi -> phi . d`, where
/// `Hom(P_v, N)` is identified with the fiber `N_v`.
fn coboundary(alg: &Algebra, rows: &[usize], d: &ProjMap, n: &Module) -> Matrix {
    let cols = d.cols();
    let row_dims: Vec<usize> = rows.iter().map(|&v| n.dim_at(v)).collect();
    let col_dims: Vec<usize> = cols.iter().map(|&v| n.dim_at(v)).collect();
    let mut out = Matrix::zeros(col_dims.iter().sum(), row_dims.iter().sum());
    let mut coff = 0;
    for c in 0..cols.len() {
        let mut roff = 0;
        for r in 0..rows.len() {
            let paths = alg.paths_between(rows[r], cols[c]);
            let mut block = Matrix::zeros(col_dims[c], row_dims[r]);
            for (i, x) in d.entry(r, c).iter().enumerate() {
                if !x.is_zero() {
                    block = block.add(&n.path_action(paths[i]).scale(*x));
                }
            }
            out.set_block(coff, roff, &block);
            roff += row_dims[r];
        }
        coff += col_dims[c];
    }
    out
}

/// `dim Ext^i(m, n)` as cohomology of `Hom(P_*, n)` for the minimal
/// projective resolution `P_*` of `m`.
pub fn ext_dim(m: &Module, n: &Module, i: usize) -> Result<usize, ModCatError> {
    if !m.same_algebra(n) {
        return Err(ModCatError::AlgebraMismatch);
    }
    let res = min_proj_resolution(m, DEFAULT_MAX_LEN)?;
    if i >= res.terms.len() {
        return Ok(0);
    }
    let alg = m.algebra();
    let cochain_dim = |k: usize| res.terms[k].iter().map(|&v| n.dim_at(v)).sum::<usize>();
    let out_rank = if i + 1 < res.terms.len() { coboundary(alg, &res.terms[i], &res.differentials[i], n).rank() } else { 0 };
    let in_rank = if i > 0 { coboundary(alg, &res.terms[i - 1], &res.differentials[i - 1], n).rank() } else { 0 };
    Ok(cochain_dim(i) - out_rank - in_rank)
}

/// `dim Ext^i(m, n)` by dimension shifting: for `K = Omega^{i-1} m` with
/// projective cover `P -> K`, `Ext^i(m, n)` is `Hom(Omega K, n)` modulo the
/// maps that extend to `P`.
pub fn ext_dim_via_syzygy(m: &Module, n: &Module, i: usize) -> Result<usize, ModCatError> {
    if i == 0 {
        return hom_dim(m, n);
    }
    let k = syzygy(m, i - 1);
    if k.is_zero() {
        return Ok(0);
    }
    let cover = projective_cover(&k)?;
    let (omega, incl) = kernel(&cover.map);
    if omega.is_zero() {
        return Ok(0);
    }
    let all = hom_dim(&omega, n)?;
    let restricted: Vec<Vector> = hom_basis(cover.map.source(), n)?.iter().map(|phi| phi.compose(&incl).flatten()).collect();
    let len = ModuleMap::flat_len(&omega, n);
    let rank = Subspace::span(len, restricted).dim();
    Ok(all - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::iso_module;
    use crate::modcat::tests::a5_rad2;

    fn simple(alg: &Arc<Algebra>, v: usize) -> Module {
        Module::standard(alg, StandardKind::Simple, v).unwrap()
    }

    fn proj(alg: &Arc<Algebra>, v: usize) -> Module {
        Module::standard(alg, StandardKind::Projective, v).unwrap()
    }

    #[test]
    fn covers() {
        let a = a5_rad2();
        let c = projective_cover(&simple(&a, 0)).unwrap();
        assert_eq!(c.vertices, vec![0]);
        assert!(c.map.is_surjective());
        let c = projective_cover(&proj(&a, 2)).unwrap();
        assert_eq!(c.vertices, vec![2]);
        assert!(c.map.is_injective() && c.map.is_surjective());
        let s23 = Module::direct_sum(&a, &[&simple(&a, 1), &simple(&a, 2)]);
        assert_eq!(projective_cover(&s23).unwrap().vertices, vec![1, 2]);
        assert_eq!(projective_cover(&Module::zero(a)).unwrap_err(), ModCatError::ZeroModule);
    }

    #[test]
    fn syzygies_of_simples() {
        let a = a5_rad2();
        // Omega S_1 = rad P_1 = S_2, Omega S_2 = S_3
        assert!(iso_module(&syzygy(&simple(&a, 0), 1), &simple(&a, 1)).unwrap());
        assert!(iso_module(&syzygy(&simple(&a, 0), 2), &simple(&a, 2)).unwrap());
        assert!(iso_module(&syzygy(&simple(&a, 2), 2), &simple(&a, 4)).unwrap());
        for v in 0..5 {
            assert!(syzygy(&proj(&a, v), 1).is_zero());
        }
    }

    #[test]
    fn resolution_of_top_simple() {
        let a = a5_rad2();
        let r = min_proj_resolution(&simple(&a, 0), DEFAULT_MAX_LEN).unwrap();
        assert_eq!(r.terms, vec![vec![0], vec![1], vec![2], vec![3], vec![4]]);
        assert_eq!(r.length(), 4);
        assert!(r.is_exact());
        assert!(r.is_minimal());
        assert_eq!(min_proj_resolution(&proj(&a, 1), DEFAULT_MAX_LEN).unwrap().length(), 0);
        let s5 = min_proj_resolution(&simple(&a, 4), DEFAULT_MAX_LEN).unwrap();
        assert_eq!(s5.terms, vec![vec![4]]);
        assert_eq!(
            min_proj_resolution(&simple(&a, 0), 2).unwrap_err(),
            ModCatError::TruncationReached(2)
        );
    }

    #[test]
    fn ext_values() {
        let a = a5_rad2();
        for v in 0..5 {
            for w in 0..5 {
                for i in 1..6 {
                    assert_eq!(ext_dim(&proj(&a, v), &simple(&a, w), i).unwrap(), 0);
                }
            }
        }
        assert_eq!(ext_dim(&simple(&a, 0), &simple(&a, 2), 1).unwrap(), 0);
        assert_eq!(ext_dim(&simple(&a, 0), &simple(&a, 1), 1).unwrap(), 1);
        assert_eq!(ext_dim(&simple(&a, 0), &simple(&a, 4), 4).unwrap(), 1);
        assert_eq!(ext_dim_via_syzygy(&simple(&a, 0), &simple(&a, 1), 1).unwrap(), 1);
        assert_eq!(ext_dim_via_syzygy(&simple(&a, 0), &simple(&a, 4), 4).unwrap(), 1);
    }

    #[test]
    fn global_dimensions() {
        let a = a5_rad2();
        assert_eq!(global_dimension(&a).unwrap(), 4);
        let h = Arc::new(Algebra::parse("vertices: 1 2 3 4 5\narrow a1: 1 -> 2\narrow a2: 2 -> 3\narrow a3: 3 -> 4\narrow a4: 4 -> 5\n").unwrap());
        assert_eq!(global_dimension(&h).unwrap(), 1);
        let ss = Arc::new(Algebra::parse("vertices: 1 2\n").unwrap());
        assert_eq!(global_dimension(&ss).unwrap(), 0);
    }
}
