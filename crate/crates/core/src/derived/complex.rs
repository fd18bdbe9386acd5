use std::borrow::Cow;
use std::fmt::Write as _;
use std::sync::Arc;

use super::DerivedError;
use crate::exactlin::Rational;
use crate::modcat::{linear_chains, Resolution};
use crate::quiveralg::{Algebra, ProjMap};

/// A bounded complex of finitely generated projectives.
///
/// `terms[i]` lists the vertices of the indecomposable summands in degree
/// `lo + i`; `diffs[i]` is the differential from degree `lo + i` to
/// `lo + i + 1`. Empty outer terms are trimmed, so `lo` and `hi` are the
/// actual support.
#[derive(Clone, PartialEq, Eq)]
pub struct PerfectComplex {
    alg: Arc<Algebra>,
    lo: i32,
    terms: Vec<Vec<usize>>,
    diffs: Vec<ProjMap>,
}

impl std::fmt::Debug for PerfectComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PerfectComplex").field("lo", &self.lo).field("terms", &self.terms).field("diffs", &self.diffs).finish()
    }
}

impl PerfectComplex {
    pub fn new(alg: Arc<Algebra>, lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<ProjMap>) -> Result<Self, DerivedError> {
        if diffs.len() != terms.len().saturating_sub(1) {
            return Err(DerivedError::ShapeMismatch);
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.cols() != terms[i].as_slice() || d.rows() != terms[i + 1].as_slice() {
                return Err(DerivedError::ShapeMismatch);
            }
        }
        for w in diffs.windows(2) {
            if !w[1].compose(&alg, &w[0]).is_zero() {
                return Err(DerivedError::NotAComplex);
            }
        }
        Ok(Self::from_parts(alg, lo, terms, diffs))
    }

    /// Trusted constructor; validity is asserted in debug builds.
    pub(crate) fn from_parts(alg: Arc<Algebra>, lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<ProjMap>) -> Self {
        debug_assert!(diffs.windows(2).all(|w| w[1].compose(&alg, &w[0]).is_zero()), "d o d != 0");
        let mut x = PerfectComplex { alg, lo, terms, diffs };
        x.trim();
        x
    }

    fn trim(&mut self) {
        while self.terms.last().is_some_and(Vec::is_empty) {
            self.terms.pop();
            self.diffs.pop();
        }
        while self.terms.first().is_some_and(Vec::is_empty) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.terms.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        PerfectComplex { alg: alg.clone(), lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `P_{v_1} + ... + P_{v_k}` concentrated in `degree`.
    pub fn stalk(alg: &Arc<Algebra>, vertices: &[usize], degree: i32) -> Self {
        Self::from_parts(alg.clone(), degree, vec![vertices.to_vec()], Vec::new())
    }

    /// A projective resolution, with `P_k` in degree `-k`.
    pub fn from_resolution(res: &Resolution) -> Self {
        let alg = res.target.algebra().clone();
        let n = res.terms.len();
        if n == 0 {
            return Self::zero(&alg);
        }
        let terms: Vec<Vec<usize>> = res.terms.iter().rev().cloned().collect();
        let diffs: Vec<ProjMap> = res.differentials.iter().rev().cloned().collect();
        Self::from_parts(alg, -(n as i32 - 1), terms, diffs)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// `lo - 1` for the zero complex.
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, k: i32) -> &[usize] {
        if k < self.lo || k > self.hi() {
            return &[];
        }
        &self.terms[(k - self.lo) as usize]
    }

    /// Differential from degree `k` to `k + 1`.
    pub fn diff(&self, k: i32) -> Cow<'_, ProjMap> {
        if k >= self.lo && k < self.hi() {
            Cow::Borrowed(&self.diffs[(k - self.lo) as usize])
        } else {
            Cow::Owned(ProjMap::zero(&self.alg, self.term(k + 1), self.term(k)))
        }
    }

    pub fn summand_count(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    /// Number of copies of each `P_v` in each degree of the support.
    pub fn graded_multiplicities(&self) -> Vec<(i32, Vec<usize>)> {
        let n = self.alg.vertex_count();
        (self.lo..=self.hi())
            .map(|k| {
                let mut m = vec![0; n];
                for &v in self.term(k) {
                    m[v] += 1;
                }
                (k, m)
            })
            .collect()
    }

    /// No differential has an invertible component.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| d.is_radical(&self.alg))
    }

    /// Dimension vectors of the nonzero cohomology modules.
    pub fn cohomology_dims(&self) -> Vec<(i32, Vec<usize>)> {
        let alg = &self.alg;
        let n = alg.vertex_count();
        let term_dims = |k: i32| -> Vec<usize> {
            (0..n).map(|u| self.term(k).iter().map(|&w| alg.paths_between(w, u).len()).sum()).collect()
        };
        let ranks = |k: i32| -> Vec<usize> {
            let m = self.diff(k).to_module_map(alg);
            m.components().iter().map(|c| c.rank()).collect()
        };
        let mut out = Vec::new();
        let mut prev = vec![0; n];
        for k in self.lo..=self.hi() {
            let dims = term_dims(k);
            let here = ranks(k);
            let h: Vec<usize> = (0..n).map(|u| dims[u] - here[u] - prev[u]).collect();
            if h.iter().any(|&x| x > 0) {
                out.push((k, h));
            }
            prev = here;
        }
        out
    }

    /// Readable name for an indecomposable object: `⟨i,j⟩[n]` for shifted
    /// interval modules, otherwise the terms with their degree range.
    pub fn label(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let coh = self.cohomology_dims();
        if coh.len() == 1 {
            let (deg, dims) = &coh[0];
            if let Some((a, b)) = interval_support(&self.alg, dims) {
                let base = format!("⟨{},{}⟩", self.alg.vertex_label(a), self.alg.vertex_label(b));
                return if *deg == 0 { base } else { format!("{base}[{}]", -deg) };
            }
        }
        let mut s = String::new();
        for k in self.lo..=self.hi() {
            if k > self.lo {
                s.push('→');
            }
            let parts: Vec<String> = self.term(k).iter().map(|&v| format!("P{}", self.alg.vertex_label(v))).collect();
            s.push_str(if parts.is_empty() { "0".into() } else { parts.join("+") }.as_str());
        }
        write!(s, " @[{},{}]", self.lo, self.hi()).unwrap();
        s
    }

    pub fn direct_sum(alg: &Arc<Algebra>, parts: &[&PerfectComplex]) -> PerfectComplex {
        let nonzero: Vec<&&PerfectComplex> = parts.iter().filter(|p| !p.is_zero()).collect();
        if nonzero.is_empty() {
            return Self::zero(alg);
        }
        let lo = nonzero.iter().map(|p| p.lo).min().unwrap();
        let hi = nonzero.iter().map(|p| p.hi()).max().unwrap();
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for k in lo..=hi {
            terms.push(nonzero.iter().flat_map(|p| p.term(k).iter().copied()).collect::<Vec<_>>());
            if k < hi {
                diffs.push(block_diagonal(alg, nonzero.iter().map(|p| p.diff(k).into_owned()).collect()));
            }
        }
        Self::from_parts(alg.clone(), lo, terms, diffs)
    }

    /// Applies `g^{k+1} d^k (g^k)^{-1}` for automorphisms `g^k` of the terms
    /// given with their inverses; used to produce isomorphic copies.
    pub fn conjugate(&self, autos: &[(ProjMap, ProjMap)]) -> PerfectComplex {
        assert_eq!(autos.len(), self.terms.len());
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, d)| autos[i + 1].0.compose(&self.alg, &d.compose(&self.alg, &autos[i].1)))
            .collect();
        Self::from_parts(self.alg.clone(), self.lo, self.terms.clone(), diffs)
    }
}

fn block_diagonal(alg: &Algebra, blocks: Vec<ProjMap>) -> ProjMap {
    let rows: Vec<usize> = blocks.iter().flat_map(|b| b.rows().iter().copied()).collect();
    let cols: Vec<usize> = blocks.iter().flat_map(|b| b.cols().iter().copied()).collect();
    let mut out = ProjMap::zero(alg, &rows, &cols);
    let (mut r0, mut c0) = (0, 0);
    for b in &blocks {
        for r in 0..b.rows().len() {
            for c in 0..b.cols().len() {
                *out.entry_mut(r0 + r, c0 + c) = b.entry(r, c).clone();
            }
        }
        r0 += b.rows().len();
        c0 += b.cols().len();
    }
    out
}

/// `Some((top, socle))` when `dims` is the dimension vector of an interval
/// module on a linearly oriented chain.
fn interval_support(alg: &Algebra, dims: &[usize]) -> Option<(usize, usize)> {
    if dims.iter().any(|&d| d > 1) {
        return None;
    }
    let chains = linear_chains(alg).ok()?;
    for chain in chains {
        let pos: Vec<usize> = (0..chain.len()).filter(|&i| dims[chain[i]] == 1).collect();
        if pos.is_empty() {
            continue;
        }
        let total: usize = dims.iter().sum();
        if pos.len() == total && pos[pos.len() - 1] - pos[0] + 1 == pos.len() {
            return Some((chain[pos[0]], chain[pos[pos.len() - 1]]));
        }
        return None;
    }
    None
}

/// `(x[n])^k = x^{k+n}` with differentials multiplied by `(-1)^n`.
pub fn shift(x: &PerfectComplex, n: i32) -> PerfectComplex {
    if x.is_zero() {
        return x.clone();
    }
    let sign = if n % 2 == 0 { Rational::from_int(1) } else { Rational::from_int(-1) };
    PerfectComplex {
        alg: x.alg.clone(),
        lo: x.lo - n,
        terms: x.terms.clone(),
        diffs: x.diffs.iter().map(|d| d.scale(sign)).collect(),
    }
}

/// A degree-zero chain map; `comps[i]` is the component in degree
/// `source.lo() + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: PerfectComplex,
    target: PerfectComplex,
    comps: Vec<ProjMap>,
}

impl ChainMap {
    pub fn new(source: PerfectComplex, target: PerfectComplex, comps: Vec<ProjMap>) -> Result<Self, DerivedError> {
        if source.alg != target.alg {
            return Err(DerivedError::AlgebraMismatch);
        }
        if comps.len() != source.terms.len() {
            return Err(DerivedError::ShapeMismatch);
        }
        for (i, c) in comps.iter().enumerate() {
            let k = source.lo + i as i32;
            if c.cols() != source.term(k) || c.rows() != target.term(k) {
                return Err(DerivedError::ShapeMismatch);
            }
        }
        let f = ChainMap { source, target, comps };
        let alg = f.source.alg.clone();
        let lo = f.source.lo.min(f.target.lo) - 1;
        let hi = f.source.hi().max(f.target.hi());
        for k in lo..=hi {
            let left = f.target.diff(k).compose(&alg, &f.component(k));
            let right = f.component(k + 1).compose(&alg, &f.source.diff(k));
            if left != right {
                return Err(DerivedError::NotAChainMap);
            }
        }
        Ok(f)
    }

    pub fn identity(x: &PerfectComplex) -> Self {
        let comps = x.terms.iter().map(|t| ProjMap::identity(&x.alg, t)).collect();
        ChainMap { source: x.clone(), target: x.clone(), comps }
    }

    pub fn zero(x: &PerfectComplex, y: &PerfectComplex) -> Self {
        let comps = (x.lo..=x.hi()).map(|k| ProjMap::zero(&x.alg, y.term(k), x.term(k))).collect();
        ChainMap { source: x.clone(), target: y.clone(), comps }
    }

    pub fn source(&self) -> &PerfectComplex {
        &self.source
    }

    pub fn target(&self) -> &PerfectComplex {
        &self.target
    }

    pub fn component(&self, k: i32) -> Cow<'_, ProjMap> {
        if k >= self.source.lo && k <= self.source.hi() {
            Cow::Borrowed(&self.comps[(k - self.source.lo) as usize])
        } else {
            Cow::Owned(ProjMap::zero(&self.source.alg, self.target.term(k), self.source.term(k)))
        }
    }

    /// `self . before`.
    pub fn compose(&self, before: &ChainMap) -> ChainMap {
        assert_eq!(before.target, self.source, "composition of incompatible chain maps");
        let alg = &self.source.alg;
        let comps = (before.source.lo..=before.source.hi())
            .map(|k| self.component(k).compose(alg, &before.component(k)))
            .collect();
        ChainMap { source: before.source.clone(), target: self.target.clone(), comps }
    }
}

/// `C^k = X^{k+1} + Y^k` with differential `[[-d_X, 0], [f, d_Y]]`.
pub fn cone(f: &ChainMap) -> PerfectComplex {
    let (x, y) = (&f.source, &f.target);
    let alg = x.alg.clone();
    if x.is_zero() && y.is_zero() {
        return PerfectComplex::zero(&alg);
    }
    let lo = if x.is_zero() { y.lo } else if y.is_zero() { x.lo - 1 } else { (x.lo - 1).min(y.lo) };
    let hi = if x.is_zero() { y.hi() } else if y.is_zero() { x.hi() - 1 } else { (x.hi() - 1).max(y.hi()) };
    let minus = Rational::from_int(-1);
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for k in lo..=hi {
        terms.push(x.term(k + 1).iter().chain(y.term(k)).copied().collect::<Vec<_>>());
        if k < hi {
            let dx = x.diff(k + 1).scale(minus);
            let fk = f.component(k + 1);
            let dy = y.diff(k);
            diffs.push(ProjMap::from_blocks(
                &alg,
                (x.term(k + 2), y.term(k + 1)),
                (x.term(k + 1), y.term(k)),
                [Some(&dx), None, Some(&fk), Some(&dy)],
            ));
        }
    }
    PerfectComplex::from_parts(alg, lo, terms, diffs)
}

/// Removes contractible summands `P_v -> P_v` by Gaussian elimination until
/// no differential has an invertible component.
pub fn minimize(x: &PerfectComplex) -> PerfectComplex {
    let alg = x.alg.clone();
    let mut terms = x.terms.clone();
    let mut diffs = x.diffs.clone();
    loop {
        let hit = diffs.iter().enumerate().find_map(|(i, d)| d.unit_entry(&alg).map(|(r, c, l)| (i, r, c, l)));
        let Some((i, r, c, lambda)) = hit else { break };
        let d = &diffs[i];
        let rest_rows: Vec<usize> = (0..d.rows().len()).filter(|&j| j != r).collect();
        let rest_cols: Vec<usize> = (0..d.cols().len()).filter(|&j| j != c).collect();
        let eps = d.select(&rest_rows, &rest_cols);
        let gamma = d.select(&rest_rows, &[c]);
        let delta = d.select(&[r], &rest_cols);
        let correction = gamma.compose(&alg, &delta).scale(lambda.recip());
        diffs[i] = eps.sub(&correction);
        if i > 0 {
            diffs[i - 1] = diffs[i - 1].without_row(c);
        }
        if i + 1 < diffs.len() {
            diffs[i + 1] = diffs[i + 1].without_col(r);
        }
        terms[i].remove(c);
        terms[i + 1].remove(r);
    }
    PerfectComplex::from_parts(alg, x.lo, terms, diffs)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::derived::tests::a5_rad2;
    use crate::modcat::min_proj_resolution;
    use crate::quiveralg::{Module, StandardKind};

    fn arrow_map(alg: &Algebra, from: usize, to: usize) -> ProjMap {
        // P_from -> P_to given by the arrow to -> from
        let mut m = ProjMap::zero(alg, &[to], &[from]);
        let a = alg.quiver().arrows().iter().position(|a| a.source == to && a.target == from).unwrap();
        m.set_path(alg, 0, 0, alg.arrow_path(a), Rational::from_int(1));
        m
    }

    pub(crate) fn witness(alg: &Arc<Algebra>) -> PerfectComplex {
        PerfectComplex::new(alg.clone(), -1, vec![vec![2], vec![1], vec![0]], vec![arrow_map(alg, 2, 1), arrow_map(alg, 1, 0)]).unwrap()
    }

    #[test]
    fn d_squared_is_checked() {
        let a = Arc::new(crate::quiveralg::Algebra::parse("vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\n").unwrap());
        let bad = PerfectComplex::new(a.clone(), 0, vec![vec![2], vec![1], vec![0]], vec![arrow_map(&a, 2, 1), arrow_map(&a, 1, 0)]);
        assert_eq!(bad.unwrap_err(), DerivedError::NotAComplex);
        let p = a5_rad2();
        let x = witness(&p);
        assert_eq!((x.lo(), x.hi()), (-1, 1));
        assert!(x.is_minimal());
        let coh = x.cohomology_dims();
        assert_eq!(coh, vec![(-1, vec![0, 0, 0, 1, 0]), (1, vec![1, 0, 0, 0, 0])]);
    }

    #[test]
    fn shift_round_trips() {
        let x = witness(&a5_rad2());
        assert_eq!(shift(&x, 0), x);
        assert_eq!(shift(&shift(&x, 2), -2), x);
        let y = shift(&x, 3);
        assert_eq!(y.lo(), -4);
        assert_eq!(y.diff(-4).into_owned(), x.diff(-1).scale(Rational::from_int(-1)));
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let p = a5_rad2();
        let p1 = PerfectComplex::stalk(&p, &[0], 0);
        let c = cone(&ChainMap::identity(&p1));
        assert_eq!((c.lo(), c.hi()), (-1, 0));
        assert!(minimize(&c).is_zero());
        let x = witness(&p);
        assert!(minimize(&cone(&ChainMap::identity(&x))).is_zero());
    }

    #[test]
    fn one_elimination_step() {
        let p = a5_rad2();
        // P_1 + P_2 -> P_1 + P_3 by identity on P_1 and the arrow P_3 -> P_2? use P_2 <- P_3
        let mut d = ProjMap::zero(&p, &[0, 1], &[0, 2]);
        d.set_path(&p, 0, 0, p.trivial_path(0), Rational::from_int(1));
        let a2 = arrow_map(&p, 2, 1);
        *d.entry_mut(1, 1) = a2.entry(0, 0).clone();
        let x = PerfectComplex::new(p.clone(), 0, vec![vec![0, 2], vec![0, 1]], vec![d]).unwrap();
        let m = minimize(&x);
        let expected = PerfectComplex::new(p.clone(), 0, vec![vec![2], vec![1]], vec![a2]).unwrap();
        assert_eq!(m, expected);
        assert_eq!(minimize(&m), m);
    }

    #[test]
    fn resolution_as_complex() {
        let p = a5_rad2();
        let s1 = Module::standard(&p, StandardKind::Simple, 0).unwrap();
        let x = PerfectComplex::from_resolution(&min_proj_resolution(&s1, 32).unwrap());
        assert_eq!((x.lo(), x.hi()), (-4, 0));
        assert_eq!(x.term(-4), &[4]);
        assert_eq!(x.term(0), &[0]);
        assert_eq!(x.cohomology_dims(), vec![(0, vec![1, 0, 0, 0, 0])]);
        assert_eq!(x.label(), "⟨1,1⟩");
        assert_eq!(shift(&x, 2).label(), "⟨1,1⟩[2]");
        assert_eq!(witness(&p).label(), "P3→P2→P1 @[-1,1]");
    }

    #[test]
    fn chain_map_validation() {
        let p = a5_rad2();
        let x = witness(&p);
        assert!(ChainMap::new(x.clone(), x.clone(), vec![ProjMap::identity(&p, &[2]), ProjMap::identity(&p, &[1]), ProjMap::identity(&p, &[0])]).is_ok());
        let bad = vec![ProjMap::identity(&p, &[2]), ProjMap::zero(&p, &[1], &[1]), ProjMap::identity(&p, &[0])];
        assert_eq!(ChainMap::new(x.clone(), x, bad).unwrap_err(), DerivedError::NotAChainMap);
    }
}
