//! Quivers, monomial bound path algebras and their standard modules.
//!
//! Paths compose left to right: for arrows `a: u -> v` and `b: v -> w` the
//! path `a b` runs from `u` to `w`. Right modules are covariant
//! representations, so an arrow `a: u -> v` acts by a matrix from the fiber
//! at `u` to the fiber at `v`.

mod module;
mod projmap;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

pub use module::{Module, ModuleError, ModuleMap, StandardKind};
pub use projmap::ProjMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("quiver has a directed cycle through vertex {0}")]
    CyclicQuiver(String),
    #[error("line {line}: relation must have length at least 2")]
    ShortRelation { line: usize },
    #[error("line {line}: relation arrows are not composable")]
    NotComposable { line: usize },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite acyclic quiver. Vertices and arrows are addressed by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, AlgebraError> {
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(AlgebraError::DuplicateId(v.clone()));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for a in &arrows {
            if !seen.insert(a.id.clone()) {
                return Err(AlgebraError::DuplicateId(a.id.clone()));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(AlgebraError::UnknownVertex(a.id.clone()));
            }
        }
        let q = Quiver { vertices, arrows };
        q.check_acyclic()?;
        Ok(q)
    }

    fn check_acyclic(&self) -> Result<(), AlgebraError> {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        for a in &self.arrows {
            indegree[a.target] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = ready.pop() {
            removed += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indegree[a.target] -= 1;
                if indegree[a.target] == 0 {
                    ready.push(a.target);
                }
            }
        }
        if removed < n {
            let v = (0..n).find(|&v| indegree[v] > 0).unwrap_or(0);
            return Err(AlgebraError::CyclicQuiver(self.vertices[v].clone()));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }
}

/// A nonzero path in the bound quiver algebra; `arrows` is empty for the
/// trivial path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// `kQ / I` for an acyclic quiver `Q` and an ideal `I` generated by paths of
/// length at least two.
#[derive(Clone, Debug)]
pub struct Algebra {
    quiver: Quiver,
    relations: Vec<Vec<usize>>,
    basis: Vec<Path>,
    between: Vec<Vec<Vec<usize>>>,
    local: Vec<usize>,
    product: Vec<Option<usize>>,
    trivial: Vec<usize>,
    arrow_path: Vec<usize>,
    lookup: HashMap<(usize, Vec<usize>), usize>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.relations == other.relations
    }
}

impl Eq for Algebra {}

impl Algebra {
    pub fn new(quiver: Quiver, relations: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        for (i, r) in relations.iter().enumerate() {
            if r.len() < 2 {
                return Err(AlgebraError::ShortRelation { line: i + 1 });
            }
            for w in r.windows(2) {
                if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                    return Err(AlgebraError::NotComposable { line: i + 1 });
                }
            }
        }

        let n = quiver.vertex_count();
        let mut basis = Vec::new();
        for v in 0..n {
            let mut stack = vec![Path { source: v, target: v, arrows: Vec::new() }];
            while let Some(p) = stack.pop() {
                for (ai, a) in quiver.arrows.iter().enumerate() {
                    if a.source != p.target {
                        continue;
                    }
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    let killed = relations
                        .iter()
                        .any(|r| r.len() <= arrows.len() && arrows[arrows.len() - r.len()..] == r[..]);
                    if !killed {
                        stack.push(Path { source: v, target: a.target, arrows });
                    }
                }
                basis.push(p);
            }
        }
        basis.sort_by(|a, b| (a.source, a.len(), &a.arrows).cmp(&(b.source, b.len(), &b.arrows)));

        let mut between = vec![vec![Vec::new(); n]; n];
        let mut local = vec![0; basis.len()];
        let mut lookup = HashMap::new();
        for (i, p) in basis.iter().enumerate() {
            local[i] = between[p.source][p.target].len();
            between[p.source][p.target].push(i);
            lookup.insert((p.source, p.arrows.clone()), i);
        }
        let trivial = (0..n).map(|v| lookup[&(v, Vec::new())]).collect();
        let arrow_path = quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| lookup[&(a.source, vec![ai])])
            .collect();

        let dim = basis.len();
        let mut product = vec![None; dim * dim];
        for (i, p) in basis.iter().enumerate() {
            for (j, q) in basis.iter().enumerate() {
                if p.target != q.source {
                    continue;
                }
                let mut arrows = p.arrows.clone();
                arrows.extend_from_slice(&q.arrows);
                product[i * dim + j] = lookup.get(&(p.source, arrows)).copied();
            }
        }

        Ok(Algebra { quiver, relations, basis, between, local, product, trivial, arrow_path, lookup })
    }

    /// Parses the line-oriented algebra format:
    ///
    /// ```text
    /// vertices: 1 2 3
    /// arrow a: 1 -> 2
    /// arrow b: 2 -> 3
    /// relation: a b
    /// ```
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let mut vertices: Option<Vec<String>> = None;
        let mut arrows: Vec<Arrow> = Vec::new();
        let mut relations: Vec<(usize, Vec<String>)> = Vec::new();
        let perr = |line: usize, message: &str| AlgebraError::Parse { line, message: message.to_string() };

        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                if vertices.is_some() {
                    return Err(perr(line_no, "duplicate `vertices:` line"));
                }
                let vs: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if vs.is_empty() {
                    return Err(perr(line_no, "no vertices listed"));
                }
                vertices = Some(vs);
            } else if let Some(rest) = line.strip_prefix("arrow ") {
                let vs = vertices.as_ref().ok_or_else(|| perr(line_no, "arrow before `vertices:`"))?;
                let (id, ends) = rest.split_once(':').ok_or_else(|| perr(line_no, "expected `arrow <id>: <src> -> <tgt>`"))?;
                let id = id.trim();
                if id.is_empty() || id.contains(char::is_whitespace) {
                    return Err(perr(line_no, "bad arrow id"));
                }
                let (s, t) = ends.split_once("->").ok_or_else(|| perr(line_no, "expected `->`"))?;
                let (s, t) = (s.trim(), t.trim());
                let find = |x: &str| {
                    vs.iter().position(|v| v == x).ok_or_else(|| AlgebraError::UnknownVertex(x.to_string()))
                };
                arrows.push(Arrow { id: id.to_string(), source: find(s)?, target: find(t)? });
            } else if let Some(rest) = line.strip_prefix("relation:") {
                let ids: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if ids.iter().any(|s| s.parse::<f64>().is_ok() || s == "+" || s == "-") {
                    return Err(perr(line_no, "only monomial relations are supported"));
                }
                relations.push((line_no, ids));
            } else {
                return Err(perr(line_no, "unrecognised line"));
            }
        }

        let vertices = vertices.ok_or_else(|| perr(0, "missing `vertices:` line"))?;
        let quiver = Quiver::new(vertices, arrows)?;
        let mut rels = Vec::new();
        for (line, ids) in relations {
            if ids.len() < 2 {
                return Err(AlgebraError::ShortRelation { line });
            }
            let r = ids
                .iter()
                .map(|id| quiver.arrow_index(id).ok_or_else(|| AlgebraError::UnknownArrow(id.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            for w in r.windows(2) {
                if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                    return Err(AlgebraError::NotComposable { line });
                }
            }
            rels.push(r);
        }
        Algebra::new(quiver, rels)
    }

    /// Canonical text form; `parse(to_text())` reproduces the algebra.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "vertices: {}", self.quiver.vertices.join(" "));
        for a in &self.quiver.arrows {
            let _ = writeln!(s, "arrow {}: {} -> {}", a.id, self.quiver.vertices[a.source], self.quiver.vertices[a.target]);
        }
        for r in &self.relations {
            let ids: Vec<&str> = r.iter().map(|&a| self.quiver.arrows[a].id.as_str()).collect();
            let _ = writeln!(s, "relation: {}", ids.join(" "));
        }
        s
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.quiver.vertices[v]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.quiver.vertex_index(id)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    /// Basis paths from `s` to `t`, as indices into [`Algebra::basis`].
    pub fn paths_between(&self, s: usize, t: usize) -> &[usize] {
        &self.between[s][t]
    }

    /// Position of basis path `i` within `paths_between(source, target)`.
    pub fn local_index(&self, i: usize) -> usize {
        self.local[i]
    }

    /// Product `p * q` (first `p`, then `q`), or `None` when it vanishes.
    pub fn mul(&self, p: usize, q: usize) -> Option<usize> {
        self.product[p * self.basis.len() + q]
    }

    pub fn trivial_path(&self, v: usize) -> usize {
        self.trivial[v]
    }

    pub fn arrow_path(&self, a: usize) -> usize {
        self.arrow_path[a]
    }

    pub fn path_index(&self, source: usize, arrows: &[usize]) -> Option<usize> {
        self.lookup.get(&(source, arrows.to_vec())).copied()
    }

    pub fn path_label(&self, i: usize) -> String {
        let p = &self.basis[i];
        if p.is_trivial() {
            format!("e{}", self.quiver.vertices[p.source])
        } else {
            p.arrows.iter().map(|&a| self.quiver.arrows[a].id.as_str()).collect::<Vec<_>>().join("")
        }
    }

    /// Same vertices, every arrow reversed (keeping its id), every relation
    /// read backwards.
    pub fn opposite(&self) -> Algebra {
        let arrows = self
            .quiver
            .arrows
            .iter()
            .map(|a| Arrow { id: a.id.clone(), source: a.target, target: a.source })
            .collect();
        let quiver = Quiver { vertices: self.quiver.vertices.clone(), arrows };
        let relations = self.relations.iter().map(|r| r.iter().rev().copied().collect()).collect();
        Algebra::new(quiver, relations).expect("opposite of a valid algebra is valid")
    }

    /// For each basis path of `self`, the index of the reversed path in
    /// `other`, which must be the opposite algebra.
    pub fn reversal_map(&self, other: &Algebra) -> Vec<usize> {
        self.basis
            .iter()
            .map(|p| {
                let rev: Vec<usize> = p.arrows.iter().rev().copied().collect();
                other.path_index(p.target, &rev).expect("reversed path is a basis path of the opposite")
            })
            .collect()
    }

    pub fn is_semisimple(&self) -> bool {
        self.quiver.arrows.is_empty()
    }
}

pub type AlgebraRef = Arc<Algebra>;
