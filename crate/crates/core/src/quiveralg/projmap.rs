use std::sync::Arc;

use super::{Algebra, Module, ModuleMap};
use crate::exactlin::{is_zero_vec, zero_vec, Matrix, Rational, Vector};

/// A morphism `P_{cols[0]} + ... -> P_{rows[0]} + ...` in path coordinates.
///
/// Entry `(r, c)` is an element of `e_{rows[r]} A e_{cols[c]}`, stored as a
/// coefficient vector over `paths_between(rows[r], cols[c])`; the path `p`
/// acts on `P_{cols[c]}` by left multiplication. Composition is the ordinary
/// matrix product with path concatenation in the natural order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjMap {
    rows: Vec<usize>,
    cols: Vec<usize>,
    entries: Vec<Vector>,
}

impl ProjMap {
    pub fn zero(alg: &Algebra, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(zero_vec(alg.paths_between(r, c).len()));
            }
        }
        ProjMap { rows: rows.to_vec(), cols: cols.to_vec(), entries }
    }

    pub fn identity(alg: &Algebra, verts: &[usize]) -> Self {
        let mut m = Self::zero(alg, verts, verts);
        for i in 0..verts.len() {
            let t = alg.trivial_path(verts[i]);
            m.entry_mut(i, i)[alg.local_index(t)] = Rational::from_int(1);
        }
        m
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &Vector {
        &self.entries[r * self.cols.len() + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Vector {
        let n = self.cols.len();
        &mut self.entries[r * n + c]
    }

    /// Sets the coefficient of basis path `p` in entry `(r, c)`.
    pub fn set_path(&mut self, alg: &Algebra, r: usize, c: usize, p: usize, x: Rational) {
        let path = alg.path(p);
        assert!(path.source == self.rows[r] && path.target == self.cols[c], "path does not fit entry");
        self.entry_mut(r, c)[alg.local_index(p)] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| is_zero_vec(e))
    }

    /// `self . before`: first `before`, then `self`.
    pub fn compose(&self, alg: &Algebra, before: &ProjMap) -> ProjMap {
        assert_eq!(self.cols, before.rows, "composition of incompatible maps");
        let mut out = ProjMap::zero(alg, &self.rows, &before.cols);
        for r in 0..self.rows.len() {
            for k in 0..self.cols.len() {
                let left = self.entry(r, k);
                if is_zero_vec(left) {
                    continue;
                }
                let lpaths = alg.paths_between(self.rows[r], self.cols[k]);
                for c in 0..before.cols.len() {
                    let right = before.entry(k, c);
                    if is_zero_vec(right) {
                        continue;
                    }
                    let rpaths = alg.paths_between(before.rows[k], before.cols[c]);
                    for (i, x) in left.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (j, y) in right.iter().enumerate() {
                            if y.is_zero() {
                                continue;
                            }
                            if let Some(p) = alg.mul(lpaths[i], rpaths[j]) {
                                let slot = alg.local_index(p);
                                out.entry_mut(r, c)[slot] += *x * *y;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ProjMap) -> ProjMap {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x + *y).collect())
            .collect();
        ProjMap { rows: self.rows.clone(), cols: self.cols.clone(), entries }
    }

    pub fn scale(&self, s: Rational) -> ProjMap {
        let entries = self.entries.iter().map(|e| e.iter().map(|x| *x * s).collect()).collect();
        ProjMap { rows: self.rows.clone(), cols: self.cols.clone(), entries }
    }

    pub fn sub(&self, other: &ProjMap) -> ProjMap {
        self.add(&other.scale(Rational::from_int(-1)))
    }

    /// First entry with a nonzero trivial-path coefficient, i.e. an
    /// invertible component `P_v -> P_v`, together with that coefficient.
    pub fn unit_entry(&self, alg: &Algebra) -> Option<(usize, usize, Rational)> {
        for r in 0..self.rows.len() {
            for c in 0..self.cols.len() {
                if self.rows[r] != self.cols[c] {
                    continue;
                }
                let t = alg.local_index(alg.trivial_path(self.rows[r]));
                let x = self.entry(r, c)[t];
                if !x.is_zero() {
                    return Some((r, c, x));
                }
            }
        }
        None
    }

    /// True when every component lies in the radical.
    pub fn is_radical(&self, alg: &Algebra) -> bool {
        self.unit_entry(alg).is_none()
    }

    pub fn without_row(&self, r: usize) -> ProjMap {
        self.select(&(0..self.rows.len()).filter(|&i| i != r).collect::<Vec<_>>(), &(0..self.cols.len()).collect::<Vec<_>>())
    }

    pub fn without_col(&self, c: usize) -> ProjMap {
        self.select(&(0..self.rows.len()).collect::<Vec<_>>(), &(0..self.cols.len()).filter(|&j| j != c).collect::<Vec<_>>())
    }

    /// Submatrix on the given row and column positions.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> ProjMap {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.entry(r, c).clone());
            }
        }
        ProjMap {
            rows: rows.iter().map(|&r| self.rows[r]).collect(),
            cols: cols.iter().map(|&c| self.cols[c]).collect(),
            entries,
        }
    }

    /// Block matrix `[[a, b], [c, d]]`; all blocks must agree on shapes.
    pub fn from_blocks(alg: &Algebra, rows: (&[usize], &[usize]), cols: (&[usize], &[usize]), blocks: [Option<&ProjMap>; 4]) -> ProjMap {
        let all_rows: Vec<usize> = rows.0.iter().chain(rows.1).copied().collect();
        let all_cols: Vec<usize> = cols.0.iter().chain(cols.1).copied().collect();
        let mut out = ProjMap::zero(alg, &all_rows, &all_cols);
        let offsets = [(0, 0), (0, cols.0.len()), (rows.0.len(), 0), (rows.0.len(), cols.0.len())];
        for (b, (r0, c0)) in blocks.iter().zip(offsets) {
            if let Some(m) = b {
                for r in 0..m.rows.len() {
                    for c in 0..m.cols.len() {
                        assert_eq!(m.rows[r], all_rows[r0 + r]);
                        assert_eq!(m.cols[c], all_cols[c0 + c]);
                        *out.entry_mut(r0 + r, c0 + c) = m.entry(r, c).clone();
                    }
                }
            }
        }
        out
    }

    /// Number of coordinates when flattened.
    pub fn coordinate_len(alg: &Algebra, rows: &[usize], cols: &[usize]) -> usize {
        rows.iter().map(|&r| cols.iter().map(|&c| alg.paths_between(r, c).len()).sum::<usize>()).sum()
    }

    pub fn flatten(&self) -> Vector {
        self.entries.iter().flat_map(|e| e.iter().copied()).collect()
    }

    pub fn from_flat(alg: &Algebra, rows: &[usize], cols: &[usize], flat: &[Rational]) -> ProjMap {
        let mut m = ProjMap::zero(alg, rows, cols);
        let mut off = 0;
        for e in m.entries.iter_mut() {
            let n = e.len();
            e.copy_from_slice(&flat[off..off + n]);
            off += n;
        }
        assert_eq!(off, flat.len());
        m
    }

    /// The induced homomorphism between the projective modules
    /// `projective_sum(cols) -> projective_sum(rows)`.
    pub fn to_module_map(&self, alg: &Arc<Algebra>) -> ModuleMap {
        let source = Module::projective_sum(alg, &self.cols);
        let target = Module::projective_sum(alg, &self.rows);
        let n = alg.vertex_count();
        let mut comps = Vec::with_capacity(n);
        for u in 0..n {
            let mut m = Matrix::zeros(target.dim_at(u), source.dim_at(u));
            let row_off = offsets(self.rows.iter().map(|&w| alg.paths_between(w, u).len()));
            let col_off = offsets(self.cols.iter().map(|&v| alg.paths_between(v, u).len()));
            for c in 0..self.cols.len() {
                for (pos, &p) in alg.paths_between(self.cols[c], u).iter().enumerate() {
                    for r in 0..self.rows.len() {
                        let coeffs = self.entry(r, c);
                        let cpaths = alg.paths_between(self.rows[r], self.cols[c]);
                        for (i, x) in coeffs.iter().enumerate() {
                            if x.is_zero() {
                                continue;
                            }
                            if let Some(q) = alg.mul(cpaths[i], p) {
                                m[(row_off[r] + alg.local_index(q), col_off[c] + pos)] += *x;
                            }
                        }
                    }
                }
            }
            comps.push(m);
        }
        ModuleMap::new_unchecked(source, target, comps)
    }

    /// The image under the Nakayama functor: the induced homomorphism
    /// `injective_sum(cols) -> injective_sum(rows)`, sending `p^*` to `x^*`
    /// whenever `p = x c` for a path `c` of the entry.
    pub fn nakayama_module_map(&self, alg: &Arc<Algebra>) -> ModuleMap {
        let source = Module::injective_sum(alg, &self.cols);
        let target = Module::injective_sum(alg, &self.rows);
        let n = alg.vertex_count();
        let mut comps = Vec::with_capacity(n);
        for u in 0..n {
            let mut m = Matrix::zeros(target.dim_at(u), source.dim_at(u));
            let row_off = offsets(self.rows.iter().map(|&w| alg.paths_between(u, w).len()));
            let col_off = offsets(self.cols.iter().map(|&v| alg.paths_between(u, v).len()));
            for r in 0..self.rows.len() {
                for c in 0..self.cols.len() {
                    let cpaths = alg.paths_between(self.rows[r], self.cols[c]);
                    for (i, coeff) in self.entry(r, c).iter().enumerate() {
                        if coeff.is_zero() {
                            continue;
                        }
                        for (xpos, &x) in alg.paths_between(u, self.rows[r]).iter().enumerate() {
                            if let Some(p) = alg.mul(x, cpaths[i]) {
                                m[(row_off[r] + xpos, col_off[c] + alg.local_index(p))] += *coeff;
                            }
                        }
                    }
                }
            }
            comps.push(m);
        }
        ModuleMap::new_unchecked(source, target, comps)
    }

    /// Transpose with every path reversed, landing in the opposite algebra.
    /// `reversal` is `alg.reversal_map(op)`.
    pub fn reversed_transpose(&self, alg: &Algebra, op: &Algebra, reversal: &[usize]) -> ProjMap {
        let mut out = ProjMap::zero(op, &self.cols, &self.rows);
        for r in 0..self.rows.len() {
            for c in 0..self.cols.len() {
                let paths = alg.paths_between(self.rows[r], self.cols[c]);
                for (i, x) in self.entry(r, c).iter().enumerate() {
                    if !x.is_zero() {
                        let q = reversal[paths[i]];
                        out.entry_mut(c, r)[op.local_index(q)] = *x;
                    }
                }
            }
        }
        out
    }
}

fn offsets<I: Iterator<Item = usize>>(it: I) -> Vec<usize> {
    let mut acc = 0;
    it.map(|d| {
        let o = acc;
        acc += d;
        o
    })
    .collect()
}
