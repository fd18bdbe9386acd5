use std::ops::RangeInclusive;

use super::complex::{minimize, ChainMap, PerfectComplex};
use super::DerivedError;
use crate::exactlin::{trace_form_radical, zero_vec, Matrix, Quotient, Rational, Subspace, Vector};
use crate::quiveralg::{Algebra, ProjMap};

/// Block of `Hom^n` sitting in `Hom(X^k, Y^{k+n})`.
#[derive(Clone, Debug)]
struct Block {
    rows: Vec<usize>,
    cols: Vec<usize>,
    offset: usize,
    /// Offset of entry `(r, c)` inside the block, row-major.
    entry_off: Vec<usize>,
    len: usize,
}

#[derive(Clone, Debug)]
struct Layout {
    blocks: Vec<Block>,
    dim: usize,
}

/// The total Hom complex `Hom^n = prod_k Hom(X^k, Y^{k+n})` with
/// differential `D f = d_Y f - (-1)^n f d_X`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    x: PerfectComplex,
    y: PerfectComplex,
}

impl HomComplex {
    pub fn new(x: &PerfectComplex, y: &PerfectComplex) -> Result<Self, DerivedError> {
        if x.algebra() != y.algebra() {
            return Err(DerivedError::AlgebraMismatch);
        }
        Ok(HomComplex { x: x.clone(), y: y.clone() })
    }

    pub fn source(&self) -> &PerfectComplex {
        &self.x
    }

    pub fn target(&self) -> &PerfectComplex {
        &self.y
    }

    fn alg(&self) -> &Algebra {
        self.x.algebra()
    }

    /// Degrees where `Hom^n` can be nonzero.
    pub fn range(&self) -> RangeInclusive<i32> {
        if self.x.is_zero() || self.y.is_zero() {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        (self.y.lo() - self.x.hi())..=(self.y.hi() - self.x.lo())
    }

    fn layout(&self, n: i32) -> Layout {
        let alg = self.alg();
        let mut blocks = Vec::new();
        let mut offset = 0;
        for k in self.x.lo()..=self.x.hi() {
            let rows = self.y.term(k + n).to_vec();
            let cols = self.x.term(k).to_vec();
            let mut entry_off = Vec::with_capacity(rows.len() * cols.len());
            let mut len = 0;
            for &r in &rows {
                for &c in &cols {
                    entry_off.push(len);
                    len += alg.paths_between(r, c).len();
                }
            }
            blocks.push(Block { rows, cols, offset, entry_off, len });
            offset += len;
        }
        Layout { blocks, dim: offset }
    }

    pub fn dim(&self, n: i32) -> usize {
        if !self.range().contains(&n) {
            return 0;
        }
        self.layout(n).dim
    }

    /// Matrix of `D: Hom^n -> Hom^{n+1}`.
    pub fn differential(&self, n: i32) -> Matrix {
        let src = self.layout(n);
        let tgt = self.layout(n + 1);
        let mut m = Matrix::zeros(tgt.dim, src.dim);
        if src.dim == 0 || tgt.dim == 0 {
            return m;
        }
        let alg = self.alg();
        let sign = if n % 2 == 0 { Rational::from_int(-1) } else { Rational::from_int(1) };
        let lo = self.x.lo();
        for (bi, b) in src.blocks.iter().enumerate() {
            let k = lo + bi as i32;
            let dy = self.y.diff(k + n);
            let dx = self.x.diff(k - 1);
            for (r, &rv) in b.rows.iter().enumerate() {
                for (c, &cv) in b.cols.iter().enumerate() {
                    for (i, &p) in alg.paths_between(rv, cv).iter().enumerate() {
                        let col = b.offset + b.entry_off[r * b.cols.len() + c] + i;
                        // d_Y f lands in block k of Hom^{n+1}
                        let tb = &tgt.blocks[bi];
                        for r2 in 0..dy.rows().len() {
                            let qs = alg.paths_between(dy.rows()[r2], rv);
                            for (j, mu) in dy.entry(r2, r).iter().enumerate() {
                                if mu.is_zero() {
                                    continue;
                                }
                                if let Some(prod) = alg.mul(qs[j], p) {
                                    let row = tb.offset + tb.entry_off[r2 * tb.cols.len() + c] + alg.local_index(prod);
                                    m[(row, col)] += *mu;
                                }
                            }
                        }
                        // -(-1)^n f d_X lands in block k-1
                        if bi == 0 {
                            continue;
                        }
                        let tb = &tgt.blocks[bi - 1];
                        for c2 in 0..dx.cols().len() {
                            let qs = alg.paths_between(cv, dx.cols()[c2]);
                            for (j, mu) in dx.entry(c, c2).iter().enumerate() {
                                if mu.is_zero() {
                                    continue;
                                }
                                if let Some(prod) = alg.mul(p, qs[j]) {
                                    let row = tb.offset + tb.entry_off[r * tb.cols.len() + c2] + alg.local_index(prod);
                                    m[(row, col)] += sign * *mu;
                                }
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// `dim H^n Hom(X, Y)`, i.e. `dim Hom_K(X, Y[n])`.
    pub fn cohomology_dim(&self, n: i32) -> usize {
        let d = self.dim(n);
        if d == 0 {
            return 0;
        }
        d - self.differential(n).rank() - self.differential(n - 1).rank()
    }

    /// Splits flat coordinates of `Hom^n` into components per degree of `X`.
    pub fn to_graded(&self, n: i32, flat: &[Rational]) -> GradedMap {
        let layout = self.layout(n);
        assert_eq!(flat.len(), layout.dim);
        let alg = self.alg();
        let comps = layout
            .blocks
            .iter()
            .enumerate()
            .map(|(bi, b)| (self.x.lo() + bi as i32, ProjMap::from_flat(alg, &b.rows, &b.cols, &flat[b.offset..b.offset + b.len])))
            .collect();
        GradedMap { degree: n, comps }
    }

    pub fn from_graded(&self, f: &GradedMap) -> Vector {
        let layout = self.layout(f.degree);
        let mut out = zero_vec(layout.dim);
        for (k, m) in &f.comps {
            if *k < self.x.lo() || *k > self.x.hi() {
                assert!(m.is_zero(), "component outside the support");
                continue;
            }
            let b = &layout.blocks[(k - self.x.lo()) as usize];
            assert!(m.rows() == b.rows.as_slice() && m.cols() == b.cols.as_slice(), "component has the wrong shape");
            out[b.offset..b.offset + b.len].copy_from_slice(&m.flatten());
        }
        out
    }
}

/// A degree-`n` map `X -> Y[n]` given by its components
/// `X^k -> Y^{k+n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub degree: i32,
    pub comps: Vec<(i32, ProjMap)>,
}

impl GradedMap {
    fn component(&self, k: i32) -> Option<&ProjMap> {
        self.comps.iter().find(|(j, _)| *j == k).map(|(_, m)| m)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|(_, m)| m.is_zero())
    }
}

/// `dim Hom_K(x, y[n])`.
pub fn derived_hom_dim(x: &PerfectComplex, y: &PerfectComplex, n: i32) -> usize {
    HomComplex::new(x, y).expect("objects over the same algebra").cohomology_dim(n)
}

/// `H^n Hom(X, Y)` with chosen cocycle representatives.
#[derive(Clone, Debug)]
pub struct HomK {
    complex: HomComplex,
    n: i32,
    quotient: Quotient,
}

impl HomK {
    pub fn new(x: &PerfectComplex, y: &PerfectComplex, n: i32) -> Result<Self, DerivedError> {
        let complex = HomComplex::new(x, y)?;
        let dim = complex.dim(n);
        let (cycles, boundaries) = if dim == 0 {
            (Subspace::zero(0), Subspace::zero(0))
        } else {
            (complex.differential(n).kernel_basis(), complex.differential(n - 1).column_space())
        };
        let quotient = Quotient::new(&cycles, &boundaries);
        Ok(HomK { complex, n, quotient })
    }

    pub fn degree(&self) -> i32 {
        self.n
    }

    pub fn complex(&self) -> &HomComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Cocycles whose classes form a basis.
    pub fn basis(&self) -> &[Vector] {
        self.quotient.reps()
    }

    /// Coordinates of the class of a cocycle.
    pub fn coordinates(&self, cocycle: &[Rational]) -> Vector {
        if cocycle.is_empty() {
            return Vec::new();
        }
        self.quotient.coordinates(cocycle).expect("not a cocycle")
    }

    pub fn is_null_homotopic(&self, cocycle: &[Rational]) -> bool {
        self.coordinates(cocycle).iter().all(Rational::is_zero)
    }

    pub fn combination(&self, coeffs: &[Rational]) -> Vector {
        let mut out = zero_vec(self.complex.dim(self.n));
        for (b, c) in self.basis().iter().zip(coeffs) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += *c * *x;
            }
        }
        out
    }

    pub fn to_graded(&self, cocycle: &[Rational]) -> GradedMap {
        if cocycle.is_empty() {
            return GradedMap { degree: self.n, comps: Vec::new() };
        }
        self.complex.to_graded(self.n, cocycle)
    }

    /// The chain map `X -> Y[n]` represented by a cocycle.
    pub fn to_chain_map(&self, cocycle: &[Rational]) -> ChainMap {
        let x = self.complex.x.clone();
        let y = super::shift(&self.complex.y, self.n);
        let g = self.to_graded(cocycle);
        let comps = (x.lo()..=x.hi())
            .map(|k| g.component(k).cloned().unwrap_or_else(|| ProjMap::zero(x.algebra(), y.term(k), x.term(k))))
            .collect();
        ChainMap::new(x, y, comps).expect("cocycles give chain maps")
    }
}

/// Composite `g . f` of cocycles `f` in `first` (X -> Y[n]) and `g` in
/// `second` (Y -> Z[m]), as flat coordinates of `Hom^{n+m}` in `out`
/// (X -> Z).
pub fn compose_cocycles(out: &HomComplex, second: &HomK, g: &[Rational], first: &HomK, f: &[Rational]) -> Vector {
    let alg = out.x.algebra();
    let (n, m) = (first.n, second.n);
    let total = out.layout(n + m);
    let mut res = zero_vec(total.dim);
    if f.is_empty() || g.is_empty() || total.dim == 0 {
        return res;
    }
    let fg = first.complex.to_graded(n, f);
    let gg = second.complex.to_graded(m, g);
    for (bi, b) in total.blocks.iter().enumerate() {
        let k = out.x.lo() + bi as i32;
        let (Some(fk), Some(gk)) = (fg.component(k), gg.component(k + n)) else { continue };
        let c = gk.compose(alg, fk);
        res[b.offset..b.offset + b.len].copy_from_slice(&c.flatten());
    }
    res
}

/// `End_K(X)` with its Jacobson radical.
#[derive(Clone, Debug)]
pub struct DerivedEnd {
    pub hom: HomK,
    pub radical: Subspace,
}

impl DerivedEnd {
    pub fn new(x: &PerfectComplex) -> Self {
        let hom = HomK::new(x, x, 0).expect("same algebra");
        let basis = hom.basis();
        let structure: Vec<Vec<Vector>> = basis
            .iter()
            .map(|a| basis.iter().map(|b| hom.coordinates(&compose_cocycles(&hom.complex, &hom, a, &hom, b))).collect())
            .collect();
        let radical = trace_form_radical(&structure);
        DerivedEnd { hom, radical }
    }

    pub fn semisimple_dim(&self) -> usize {
        self.hom.dim() - self.radical.dim()
    }

    pub fn in_radical(&self, cocycle: &[Rational]) -> bool {
        self.radical.contains(&self.hom.coordinates(cocycle))
    }
}

pub fn is_indecomposable_d(x: &PerfectComplex) -> bool {
    !x.is_zero() && DerivedEnd::new(x).semisimple_dim() == 1
}

/// Isomorphism test for indecomposable complexes.
pub fn iso_test(x: &PerfectComplex, y: &PerfectComplex) -> Result<bool, DerivedError> {
    if x.algebra() != y.algebra() {
        return Err(DerivedError::AlgebraMismatch);
    }
    let (x, y) = (minimize(x), minimize(y));
    let end = DerivedEnd::new(&x);
    if x.is_zero() || end.semisimple_dim() != 1 || !is_indecomposable_d(&y) {
        return Err(DerivedError::NotIndecomposableInput);
    }
    Ok(iso_with_end(&end, &y))
}

/// Iso test against a precomputed local `End(x)`; `x`, `y` minimal.
pub(crate) fn iso_with_end(end: &DerivedEnd, y: &PerfectComplex) -> bool {
    let x = end.hom.complex.source();
    if x.graded_multiplicities() != y.graded_multiplicities() {
        return false;
    }
    let there = HomK::new(x, y, 0).expect("same algebra");
    let back = HomK::new(y, x, 0).expect("same algebra");
    for g in there.basis() {
        for h in back.basis() {
            let c = compose_cocycles(&end.hom.complex, &back, h, &there, g);
            if !end.in_radical(&c) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::complex::{cone, shift};
    use crate::derived::tests::a5_rad2;
    use crate::modcat::{enumerate_indecomposables, ext_dim, min_proj_resolution};
    use std::sync::Arc;

    fn stalks(alg: &Arc<Algebra>) -> Vec<(String, crate::quiveralg::Module, PerfectComplex)> {
        enumerate_indecomposables(alg)
            .unwrap()
            .into_iter()
            .map(|x| {
                let c = PerfectComplex::from_resolution(&min_proj_resolution(&x.module, 32).unwrap());
                (x.label, x.module, c)
            })
            .collect()
    }

    #[test]
    fn stalk_homs_are_ext() {
        let a = a5_rad2();
        let s = stalks(&a);
        for (_, m, x) in &s {
            for (_, n, y) in &s {
                for i in -2..=6 {
                    let expect = if i < 0 { 0 } else { ext_dim(m, n, i as usize).unwrap() };
                    assert_eq!(derived_hom_dim(x, y, i), expect);
                }
            }
        }
    }

    #[test]
    fn witness_homs() {
        let a = a5_rad2();
        let x = crate::derived::complex::tests::witness(&a);
        let s = stalks(&a);
        let find = |l: &str| s.iter().find(|t| t.0 == l).unwrap().2.clone();
        assert_eq!(derived_hom_dim(&x, &find("⟨3,3⟩"), 1), 1);
        assert_eq!(derived_hom_dim(&x, &find("⟨4,5⟩"), 1), 0);
        assert!(derived_hom_dim(&x, &x, 0) >= 1);
        assert!(is_indecomposable_d(&x));
    }

    #[test]
    fn iso_tests() {
        let a = a5_rad2();
        let s = stalks(&a);
        for (i, (_, _, x)) in s.iter().enumerate() {
            assert!(is_indecomposable_d(x));
            for (j, (_, _, y)) in s.iter().enumerate() {
                assert_eq!(iso_test(x, y).unwrap(), i == j);
            }
        }
        let x = crate::derived::complex::tests::witness(&a);
        let pad = cone(&ChainMap::identity(&PerfectComplex::stalk(&a, &[1], 0)));
        let padded = PerfectComplex::direct_sum(&a, &[&x, &pad]);
        assert!(!padded.is_minimal());
        assert!(iso_test(&x, &padded).unwrap());
        let two = PerfectComplex::direct_sum(&a, &[&x, &x]);
        assert_eq!(iso_test(&two, &x).unwrap_err(), DerivedError::NotIndecomposableInput);
    }

    #[test]
    fn chain_map_from_cocycle() {
        let a = a5_rad2();
        let s = stalks(&a);
        let s1 = &s.iter().find(|t| t.0 == "⟨1,1⟩").unwrap().2;
        let s3 = &s.iter().find(|t| t.0 == "⟨3,3⟩").unwrap().2;
        let h = HomK::new(s1, s3, 2).unwrap();
        assert_eq!(h.dim(), 1);
        let f = h.to_chain_map(&h.basis()[0]);
        assert_eq!(f.target(), &shift(s3, 2));
        // the cone of a nonzero map is not the direct sum
        let c = crate::derived::complex::minimize(&cone(&f));
        assert!(c.summand_count() < s1.summand_count() + s3.summand_count());
    }
}
