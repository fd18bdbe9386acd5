use std::sync::Arc;

use num_traits::One;
use thiserror::Error;

use super::Algebra;
use crate::exactlin::{Matrix, Rational, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("matrix for arrow {arrow} has shape {got:?}, expected {expected:?}")]
    ShapeMismatch { arrow: usize, got: (usize, usize), expected: (usize, usize) },
    #[error("relation {0} does not act by zero")]
    RelationViolated(usize),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("map does not commute with arrow {0}")]
    NotIntertwiner(usize),
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("wrong number of components")]
    WrongArity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Projective,
    Injective,
    Simple,
}

/// A finite-dimensional right module, i.e. a representation of the bound
/// quiver.
#[derive(Clone, Debug)]
pub struct Module {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Module {
    /// Validates matrix shapes and that every relation acts by zero.
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self, ModuleError> {
        if dims.len() != alg.vertex_count() || maps.len() != alg.quiver().arrows().len() {
            return Err(ModuleError::WrongArity);
        }
        for (i, (a, m)) in alg.quiver().arrows().iter().zip(&maps).enumerate() {
            let expected = (dims[a.target], dims[a.source]);
            if (m.rows(), m.cols()) != expected {
                return Err(ModuleError::ShapeMismatch { arrow: i, got: (m.rows(), m.cols()), expected });
            }
        }
        let module = Module { alg, dims, maps };
        for (i, r) in module.alg.relations().iter().enumerate() {
            if !module.arrow_sequence_action(r).is_zero() {
                return Err(ModuleError::RelationViolated(i));
            }
        }
        Ok(module)
    }

    pub(crate) fn new_unchecked(alg: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        debug_assert!(Module::new(alg.clone(), dims.clone(), maps.clone()).is_ok());
        Module { alg, dims, maps }
    }

    pub fn zero(alg: Arc<Algebra>) -> Self {
        let dims = vec![0; alg.vertex_count()];
        let maps = vec![Matrix::zeros(0, 0); alg.quiver().arrows().len()];
        Module { alg, dims, maps }
    }

    /// The standard projective, injective or simple module at `v`.
    pub fn standard(alg: &Arc<Algebra>, kind: StandardKind, v: usize) -> Result<Self, ModuleError> {
        if v >= alg.vertex_count() {
            return Err(ModuleError::UnknownVertex(v));
        }
        Ok(match kind {
            StandardKind::Projective => Module::projective_sum(alg, &[v]),
            StandardKind::Injective => Module::injective_sum(alg, &[v]),
            StandardKind::Simple => {
                let mut dims = vec![0; alg.vertex_count()];
                dims[v] = 1;
                let maps = alg
                    .quiver()
                    .arrows()
                    .iter()
                    .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
                    .collect();
                Module { alg: alg.clone(), dims, maps }
            }
        })
    }

    /// `P_{v_1} + ... + P_{v_k}`. At vertex `u` the basis is the
    /// concatenation, over summands, of the paths from `v_j` to `u`.
    pub fn projective_sum(alg: &Arc<Algebra>, vertices: &[usize]) -> Self {
        let n = alg.vertex_count();
        let dims: Vec<usize> = (0..n).map(|u| vertices.iter().map(|&v| alg.paths_between(v, u).len()).sum()).collect();
        let mut maps = Vec::new();
        for (ai, a) in alg.quiver().arrows().iter().enumerate() {
            let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
            let (mut off_s, mut off_t) = (0, 0);
            for &v in vertices {
                for (col, &p) in alg.paths_between(v, a.source).iter().enumerate() {
                    if let Some(q) = alg.mul(p, alg.arrow_path(ai)) {
                        m[(off_t + alg.local_index(q), off_s + col)] = Rational::one();
                    }
                }
                off_s += alg.paths_between(v, a.source).len();
                off_t += alg.paths_between(v, a.target).len();
            }
            maps.push(m);
        }
        Module { alg: alg.clone(), dims, maps }
    }

    /// `I_{v_1} + ... + I_{v_k}`. At vertex `u` the basis of `I_v` is dual to
    /// the paths from `u` to `v`; an arrow `a` sends `(a q)^*` to `q^*`.
    pub fn injective_sum(alg: &Arc<Algebra>, vertices: &[usize]) -> Self {
        let n = alg.vertex_count();
        let dims: Vec<usize> = (0..n).map(|u| vertices.iter().map(|&v| alg.paths_between(u, v).len()).sum()).collect();
        let mut maps = Vec::new();
        for (ai, a) in alg.quiver().arrows().iter().enumerate() {
            let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
            let (mut off_s, mut off_t) = (0, 0);
            for &v in vertices {
                for (row, &q) in alg.paths_between(a.target, v).iter().enumerate() {
                    if let Some(p) = alg.mul(alg.arrow_path(ai), q) {
                        m[(off_t + row, off_s + alg.local_index(p))] = Rational::one();
                    }
                }
                off_s += alg.paths_between(a.source, v).len();
                off_t += alg.paths_between(a.target, v).len();
            }
            maps.push(m);
        }
        Module { alg: alg.clone(), dims, maps }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow_map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    pub fn arrow_maps(&self) -> &[Matrix] {
        &self.maps
    }

    fn arrow_sequence_action(&self, arrows: &[usize]) -> Matrix {
        let start = self.alg.quiver().arrows()[arrows[0]].source;
        let mut m = Matrix::identity(self.dims[start]);
        for &a in arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Matrix by which basis path `p` acts, from the fiber at its source to
    /// the fiber at its target.
    pub fn path_action(&self, p: usize) -> Matrix {
        let path = self.alg.path(p);
        if path.is_trivial() {
            Matrix::identity(self.dims[path.source])
        } else {
            self.arrow_sequence_action(&path.arrows)
        }
    }

    /// `x . p` for `x` in the fiber at the source of `p`.
    pub fn act(&self, x: &[Rational], p: usize) -> Vector {
        let path = self.alg.path(p);
        let mut v = x.to_vec();
        for &a in &path.arrows {
            v = self.maps[a].mul_vec(&v);
        }
        v
    }

    /// Offsets of the vertex fibers inside the flattened total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for d in &self.dims {
            out.push(acc);
            acc += d;
        }
        out
    }

    pub fn direct_sum(alg: &Arc<Algebra>, parts: &[&Module]) -> Module {
        let n = alg.vertex_count();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let mut maps = Vec::new();
        for (ai, a) in alg.quiver().arrows().iter().enumerate() {
            let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
            let (mut r, mut c) = (0, 0);
            for part in parts {
                m.set_block(r, c, &part.maps[ai]);
                r += part.dims[a.target];
                c += part.dims[a.source];
            }
            maps.push(m);
        }
        Module { alg: alg.clone(), dims, maps }
    }

    /// The vector-space dual, a module over `op` (which must be the opposite
    /// algebra): dimensions are kept and arrow matrices transposed.
    pub fn dual(&self, op: &Arc<Algebra>) -> Module {
        let maps = self.maps.iter().map(Matrix::transpose).collect();
        Module::new_unchecked(op.clone(), self.dims.clone(), maps)
    }
}

/// A homomorphism of right modules, one matrix per vertex.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    comps: Vec<Matrix>,
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, comps: Vec<Matrix>) -> Result<Self, ModuleError> {
        if !source.same_algebra(&target) {
            return Err(ModuleError::AlgebraMismatch);
        }
        if comps.len() != source.dims.len() {
            return Err(ModuleError::WrongArity);
        }
        for (v, c) in comps.iter().enumerate() {
            if (c.rows(), c.cols()) != (target.dims[v], source.dims[v]) {
                return Err(ModuleError::ShapeMismatch { arrow: v, got: (c.rows(), c.cols()), expected: (target.dims[v], source.dims[v]) });
            }
        }
        for (ai, a) in source.alg.quiver().arrows().iter().enumerate() {
            let lhs = target.maps[ai].mul(&comps[a.source]);
            let rhs = comps[a.target].mul(&source.maps[ai]);
            if lhs != rhs {
                return Err(ModuleError::NotIntertwiner(ai));
            }
        }
        Ok(ModuleMap { source, target, comps })
    }

    pub(crate) fn new_unchecked(source: Module, target: Module, comps: Vec<Matrix>) -> Self {
        debug_assert!(ModuleMap::new(source.clone(), target.clone(), comps.clone()).is_ok());
        ModuleMap { source, target, comps }
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        let comps = (0..source.dims.len()).map(|v| Matrix::zeros(target.dims[v], source.dims[v])).collect();
        ModuleMap { source: source.clone(), target: target.clone(), comps }
    }

    pub fn identity(m: &Module) -> Self {
        let comps = m.dims.iter().map(|&d| Matrix::identity(d)).collect();
        ModuleMap { source: m.clone(), target: m.clone(), comps }
    }

    /// The map out of `P_{v_1} + ... + P_{v_k}` sending the generator `e_{v_j}`
    /// of the `j`-th summand to `gens[j]`, an element of `target` at `v_j`.
    pub fn from_generators(target: &Module, vertices: &[usize], gens: &[Vector]) -> Self {
        let alg = target.algebra().clone();
        let source = Module::projective_sum(&alg, vertices);
        let n = alg.vertex_count();
        let mut comps: Vec<Matrix> = (0..n).map(|u| Matrix::zeros(target.dims[u], source.dims[u])).collect();
        for u in 0..n {
            let mut off = 0;
            for (j, &v) in vertices.iter().enumerate() {
                for (pos, &p) in alg.paths_between(v, u).iter().enumerate() {
                    let img = target.act(&gens[j], p);
                    for (i, x) in img.into_iter().enumerate() {
                        comps[u][(i, off + pos)] = x;
                    }
                }
                off += alg.paths_between(v, u).len();
            }
        }
        ModuleMap::new_unchecked(source, target.clone(), comps)
    }

    /// Assembles a map between direct sums from blocks `(row, col, map)`,
    /// where `map` goes from `sources[col]` to `targets[row]`.
    pub fn from_blocks(alg: &Arc<Algebra>, sources: &[&Module], targets: &[&Module], blocks: &[(usize, usize, &ModuleMap)]) -> Self {
        let source = Module::direct_sum(alg, sources);
        let target = Module::direct_sum(alg, targets);
        let n = alg.vertex_count();
        let mut comps: Vec<Matrix> = (0..n).map(|u| Matrix::zeros(target.dims[u], source.dims[u])).collect();
        for u in 0..n {
            let row_off: Vec<usize> = prefix(targets.iter().map(|m| m.dims[u]));
            let col_off: Vec<usize> = prefix(sources.iter().map(|m| m.dims[u]));
            for &(r, c, f) in blocks {
                comps[u].set_block(row_off[r], col_off[c], &f.comps[u]);
            }
        }
        ModuleMap::new_unchecked(source, target, comps)
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn component(&self, v: usize) -> &Matrix {
        &self.comps[v]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    /// `self . before`, i.e. first `before`, then `self`.
    pub fn compose(&self, before: &ModuleMap) -> ModuleMap {
        assert_eq!(before.target.dims, self.source.dims, "composition of incompatible maps");
        let comps = self.comps.iter().zip(&before.comps).map(|(a, b)| a.mul(b)).collect();
        ModuleMap { source: before.source.clone(), target: self.target.clone(), comps }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn scale(&self, s: Rational) -> ModuleMap {
        let comps = self.comps.iter().map(|a| a.scale(s)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    /// All components concatenated row-major, vertex by vertex.
    pub fn flatten(&self) -> Vector {
        self.comps.iter().flat_map(|c| c.data().iter().copied()).collect()
    }

    pub fn flat_len(source: &Module, target: &Module) -> usize {
        source.dims.iter().zip(&target.dims).map(|(s, t)| s * t).sum()
    }

    pub fn from_flat(source: &Module, target: &Module, flat: &[Rational]) -> ModuleMap {
        let mut comps = Vec::new();
        let mut off = 0;
        for v in 0..source.dims.len() {
            let (r, c) = (target.dims[v], source.dims[v]);
            comps.push(Matrix::new(r, c, flat[off..off + r * c].to_vec()));
            off += r * c;
        }
        ModuleMap { source: source.clone(), target: target.clone(), comps }
    }

    /// The dual map between dual modules over the opposite algebra.
    pub fn dual(&self, op: &Arc<Algebra>) -> ModuleMap {
        ModuleMap {
            source: self.target.dual(op),
            target: self.source.dual(op),
            comps: self.comps.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().zip(&self.target.dims).all(|(c, &d)| c.rank() == d)
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().zip(&self.source.dims).all(|(c, &d)| c.rank() == d)
    }
}

fn prefix<I: Iterator<Item = usize>>(it: I) -> Vec<usize> {
    let mut acc = 0;
    it.map(|d| {
        let o = acc;
        acc += d;
        o
    })
    .collect()
}
