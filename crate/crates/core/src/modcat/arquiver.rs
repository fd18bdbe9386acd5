use std::fmt::Write as _;

use serde::Serialize;

use super::{EndRing, HomSpace, Indecomposable};
use crate::exactlin::{Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArArrow {
    pub source: usize,
    pub target: usize,
    pub multiplicity: usize,
}

/// Vertices are iso-class labels; arrows index into `vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArArrow>,
}

impl ArQuiver {
    pub fn multiplicity(&self, source: &str, target: &str) -> usize {
        let s = self.vertices.iter().position(|v| v == source);
        let t = self.vertices.iter().position(|v| v == target);
        match (s, t) {
            (Some(s), Some(t)) => self
                .arrows
                .iter()
                .find(|a| a.source == s && a.target == t)
                .map_or(0, |a| a.multiplicity),
            _ => 0,
        }
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {name} {{").unwrap();
        for (i, v) in self.vertices.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{v}\"];").unwrap();
        }
        for a in &self.arrows {
            writeln!(out, "  n{} -> n{} [multiplicity={}];", a.source, a.target, a.multiplicity).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Irreducible maps between the listed indecomposables, measured by
/// `dim rad(X,Y) / rad²(X,Y)`. The list must contain every indecomposable
/// up to isomorphism, each exactly once; this is not checked.
pub fn ar_quiver(indecs: &[Indecomposable]) -> ArQuiver {
    let n = indecs.len();
    let homs: Vec<Vec<HomSpace>> = indecs
        .iter()
        .map(|x| indecs.iter().map(|y| HomSpace::new(&x.module, &y.module).expect("same algebra")).collect())
        .collect();
    let rad: Vec<Vec<Vec<Vector>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        EndRing::new(&indecs[i].module).radical.basis().to_vec()
                    } else {
                        Subspace::full(homs[i][j].dim()).basis().to_vec()
                    }
                })
                .collect()
        })
        .collect();
    let mut arrows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let h = &homs[x][y];
            if rad[x][y].is_empty() {
                continue;
            }
            let mut squares = Vec::new();
            for z in 0..n {
                for f in &rad[x][z] {
                    let f = homs[x][z].combination(f);
                    for g in &rad[z][y] {
                        let g = homs[z][y].combination(g);
                        squares.push(h.coordinates(&g.compose(&f)));
                    }
                }
            }
            let rad2 = Subspace::span(h.dim(), squares);
            let multiplicity = rad[x][y].len() - rad2.dim();
            if multiplicity > 0 {
                arrows.push(ArArrow { source: x, target: y, multiplicity });
            }
        }
    }
    ArQuiver { vertices: indecs.iter().map(|x| x.label.clone()).collect(), arrows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::enumerate_indecomposables;
    use crate::modcat::tests::a5_rad2;
    use crate::quiveralg::Algebra;
    use std::sync::Arc;

    #[test]
    fn rad2_quiver_is_a_zigzag() {
        let q = ar_quiver(&enumerate_indecomposables(&a5_rad2()).unwrap());
        assert_eq!(q.vertices.len(), 9);
        let mut expected = Vec::new();
        for i in 1..=4 {
            // S_{i+1} -> P_i -> S_i
            expected.push((format!("⟨{},{}⟩", i + 1, i + 1), format!("⟨{},{}⟩", i, i + 1)));
            expected.push((format!("⟨{},{}⟩", i, i + 1), format!("⟨{},{}⟩", i, i)));
        }
        assert_eq!(q.arrows.len(), expected.len());
        for (s, t) in &expected {
            assert_eq!(q.multiplicity(s, t), 1, "{s} -> {t}");
        }
    }

    #[test]
    fn small_cases() {
        let ss = Arc::new(Algebra::parse("vertices: 1 2\n").unwrap());
        assert!(ar_quiver(&enumerate_indecomposables(&ss).unwrap()).arrows.is_empty());
        let a2 = Arc::new(Algebra::parse("vertices: 1 2\narrow a: 1 -> 2\n").unwrap());
        let q = ar_quiver(&enumerate_indecomposables(&a2).unwrap());
        assert_eq!(q.arrows.len(), 2);
        assert_eq!(q.multiplicity("⟨2,2⟩", "⟨1,2⟩"), 1);
        assert_eq!(q.multiplicity("⟨1,2⟩", "⟨1,1⟩"), 1);
    }
}
