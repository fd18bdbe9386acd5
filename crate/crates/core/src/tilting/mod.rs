//! Rigid and cluster-tilting subcategories, in `mod A` and in `D^b(mod A)`
//! with a shift period, and the checks assembled into a certificate.

mod certificate;
mod derived;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::derived::DerivedError;
use crate::exactlin::Matrix;
use crate::modcat::{
    enumerate_indecomposables, ext_dim, global_dimension, hom_basis, iso_module, syzygy, EndRing, Indecomposable, ModCatError,
};
use crate::quiveralg::{Algebra, Module, StandardKind};

pub use certificate::{build_certificate, AlgebraInfo, Certificate, Check, CheckStatus, Config, CertificateRun, VERDICT_PASS};
pub use derived::{
    four_angle_obstruction, is_rigid_derived, remark_witness, u_members, verify_not_two_ct_in_derived,
    verify_unique_rigid_extension, ClaimOneReport, DerivedSubcat, FourAngleReport, HomWitness, NotCtReport, PlacementRecord,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TiltingError {
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("object {0} is not available for this algebra")]
    MissingObject(String),
    #[error(transparent)]
    Derived(#[from] DerivedError),
    #[error(transparent)]
    ModCat(#[from] ModCatError),
}

/// The indecomposables of `mod A` with their Ext groups up to the global
/// dimension.
#[derive(Clone, Debug)]
pub struct ModuleCategory {
    pub alg: Arc<Algebra>,
    pub indecs: Vec<Indecomposable>,
    pub gldim: usize,
    /// `ext[i][j][n] = dim Ext^n(X_i, X_j)` for `n <= gldim`.
    ext: Vec<Vec<Vec<usize>>>,
}

impl ModuleCategory {
    pub fn new(alg: &Arc<Algebra>) -> Result<Self, TiltingError> {
        let indecs = enumerate_indecomposables(alg)?;
        let gldim = global_dimension(alg)?;
        let mut ext = Vec::with_capacity(indecs.len());
        for x in &indecs {
            let mut row = Vec::with_capacity(indecs.len());
            for y in &indecs {
                row.push((0..=gldim).map(|n| ext_dim(&x.module, &y.module, n)).collect::<Result<Vec<_>, _>>()?);
            }
            ext.push(row);
        }
        Ok(ModuleCategory { alg: alg.clone(), indecs, gldim, ext })
    }

    pub fn len(&self) -> usize {
        self.indecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indecs.is_empty()
    }

    pub fn ext(&self, i: usize, j: usize, n: usize) -> usize {
        if n > self.gldim {
            0
        } else {
            self.ext[i][j][n]
        }
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.indecs.iter().position(|x| x.label == label)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.indecs[i].label
    }

    /// Index of the listed module isomorphic to the indecomposable `m`.
    pub fn find(&self, m: &Module) -> Option<usize> {
        self.indecs.iter().position(|x| x.module.dims() == m.dims() && iso_module(&x.module, m).unwrap_or(false))
    }

    fn standard(&self, kind: StandardKind) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.alg.vertex_count())
            .filter_map(|v| self.find(&Module::standard(&self.alg, kind, v).expect("valid vertex")))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn projectives(&self) -> Vec<usize> {
        self.standard(StandardKind::Projective)
    }

    pub fn injectives(&self) -> Vec<usize> {
        self.standard(StandardKind::Injective)
    }

    /// Krull-Schmidt decomposition of `m` into listed indecomposables, as
    /// `(index, multiplicity)` pairs.
    pub fn decompose(&self, m: &Module) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut total = 0;
        for (i, z) in self.indecs.iter().enumerate() {
            let into = hom_basis(&z.module, m).expect("same algebra");
            let back = hom_basis(m, &z.module).expect("same algebra");
            if into.is_empty() || back.is_empty() {
                continue;
            }
            let end = EndRing::new(&z.module);
            let q = end.quotient();
            assert_eq!(q.dim(), 1, "listed modules have End/rad = k");
            let mut pairing = Matrix::zeros(into.len(), back.len());
            for (a, f) in into.iter().enumerate() {
                for (b, g) in back.iter().enumerate() {
                    let c = end.hom.coordinates(&g.compose(f));
                    pairing[(a, b)] = q.coordinates(&c).expect("in End")[0];
                }
            }
            let mult = pairing.rank();
            if mult > 0 {
                total += mult * z.module.total_dim();
                out.push((i, mult));
            }
        }
        assert_eq!(total, m.total_dim(), "list of indecomposables is incomplete");
        out
    }
}

/// A subcategory `add` of listed indecomposables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subcat {
    pub members: BTreeSet<usize>,
}

impl Subcat {
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Self {
        Subcat { members: members.into_iter().collect() }
    }

    pub fn from_labels(cat: &ModuleCategory, labels: &[&str]) -> Result<Self, TiltingError> {
        labels
            .iter()
            .map(|l| cat.index(l).ok_or_else(|| TiltingError::MissingObject((*l).to_string())))
            .collect::<Result<BTreeSet<_>, _>>()
            .map(|members| Subcat { members })
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn labels(&self, cat: &ModuleCategory) -> Vec<String> {
        self.members.iter().map(|&i| cat.label(i).to_string()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtViolation {
    pub source: String,
    pub target: String,
    pub degree: usize,
    pub dim: usize,
}

/// `Ext^i(X, Y) = 0` for all members and `0 < i < d`.
pub fn is_d_rigid(cat: &ModuleCategory, s: &Subcat, d: usize) -> Result<(), ExtViolation> {
    for &x in &s.members {
        for &y in &s.members {
            for i in 1..d {
                let e = cat.ext(x, y, i);
                if e > 0 {
                    return Err(ExtViolation { source: cat.label(x).into(), target: cat.label(y).into(), degree: i, dim: e });
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CtDefect {
    /// In the orthogonal on the given side but not in the subcategory.
    MissingFromSubcat { object: String, side: Side },
    /// A member outside its own orthogonal.
    NotOrthogonal { object: String, side: Side },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `{X : Ext(s, X) = 0}`
    Right,
    /// `{X : Ext(X, s) = 0}`
    Left,
}

struct Masks {
    /// bit `j` of `out[i]`: `Ext^{0<k<d}(X_i, X_j) != 0`
    out: Vec<u64>,
    /// bit `i` of `inc[j]`: the same relation
    inc: Vec<u64>,
}

fn masks(cat: &ModuleCategory, d: usize) -> Result<Masks, TiltingError> {
    let n = cat.len();
    if n > 64 {
        return Err(TiltingError::UnsupportedAlgebra(format!("{n} indecomposables exceed the supported 64")));
    }
    let mut out = vec![0u64; n];
    let mut inc = vec![0u64; n];
    for i in 0..n {
        for j in 0..n {
            if (1..d).any(|k| cat.ext(i, j, k) > 0) {
                out[i] |= 1 << j;
                inc[j] |= 1 << i;
            }
        }
    }
    Ok(Masks { out, inc })
}

fn orthogonals(m: &Masks, s: u64) -> (u64, u64) {
    let n = m.out.len();
    let mut right = 0u64;
    let mut left = 0u64;
    for x in 0..n {
        if m.inc[x] & s == 0 {
            right |= 1 << x;
        }
        if m.out[x] & s == 0 {
            left |= 1 << x;
        }
    }
    (right, left)
}

fn to_mask(s: &Subcat) -> u64 {
    s.members.iter().fold(0, |acc, &i| acc | (1 << i))
}

fn from_mask(mask: u64, n: usize) -> Subcat {
    Subcat::new((0..n).filter(|&i| mask & (1 << i) != 0))
}

/// `s` equals both of its `Ext^{0<i<d}`-orthogonals.
pub fn is_d_cluster_tilting_modules(cat: &ModuleCategory, s: &Subcat, d: usize) -> Result<Result<(), CtDefect>, TiltingError> {
    let m = masks(cat, d)?;
    let sm = to_mask(s);
    let (right, left) = orthogonals(&m, sm);
    for (side, orth) in [(Side::Right, right), (Side::Left, left)] {
        for x in 0..cat.len() {
            let in_s = sm & (1 << x) != 0;
            let in_o = orth & (1 << x) != 0;
            let object = cat.label(x).to_string();
            if in_o && !in_s {
                return Ok(Err(CtDefect::MissingFromSubcat { object, side }));
            }
            if in_s && !in_o {
                return Ok(Err(CtDefect::NotOrthogonal { object, side }));
            }
        }
    }
    Ok(Ok(()))
}

/// All `d`-cluster-tilting subcategories. Every such subcategory contains
/// the projectives and injectives, so only the remaining indecomposables
/// are varied.
pub fn enumerate_d_ct(cat: &ModuleCategory, d: usize) -> Result<Vec<Subcat>, TiltingError> {
    let m = masks(cat, d)?;
    let fixed: u64 = cat.projectives().into_iter().chain(cat.injectives()).fold(0, |acc, i| acc | (1 << i));
    let free: Vec<usize> = (0..cat.len()).filter(|&i| fixed & (1 << i) == 0).collect();
    if free.len() > 24 {
        return Err(TiltingError::UnsupportedAlgebra(format!("{} non-projective-injective indecomposables", free.len())));
    }
    let mut out = Vec::new();
    for bits in 0u64..(1 << free.len()) {
        let mut s = fixed;
        for (b, &i) in free.iter().enumerate() {
            if bits & (1 << b) != 0 {
                s |= 1 << i;
            }
        }
        if orthogonals(&m, s) == (s, s) {
            out.push(from_mask(s, cat.len()));
        }
    }
    out.sort();
    Ok(out)
}

/// The same scan over every subset, without pruning.
pub fn enumerate_d_ct_exhaustive(cat: &ModuleCategory, d: usize) -> Result<Vec<Subcat>, TiltingError> {
    let m = masks(cat, d)?;
    if cat.len() > 24 {
        return Err(TiltingError::UnsupportedAlgebra(format!("{} indecomposables", cat.len())));
    }
    let mut out: Vec<Subcat> =
        (0u64..(1 << cat.len())).filter(|&s| orthogonals(&m, s) == (s, s)).map(|s| from_mask(s, cat.len())).collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyImage {
    pub object: String,
    /// Summands of `Omega^power(object)`, with multiplicity.
    pub summands: Vec<(String, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyReport {
    pub power: usize,
    pub images: Vec<SyzygyImage>,
    /// Members whose syzygy has a summand outside the subcategory.
    pub escapes: Vec<String>,
}

impl SyzygyReport {
    pub fn closed(&self) -> bool {
        self.escapes.is_empty()
    }

    pub fn image_of(&self, label: &str) -> Option<&[(String, usize)]> {
        self.images.iter().find(|i| i.object == label).map(|i| i.summands.as_slice())
    }
}

/// Whether `Omega^power` maps `add s` into itself.
pub fn syzygy_closure_check(cat: &ModuleCategory, s: &Subcat, power: usize) -> SyzygyReport {
    let mut images = Vec::new();
    let mut escapes = Vec::new();
    for &x in &s.members {
        let omega = syzygy(&cat.indecs[x].module, power);
        let parts = cat.decompose(&omega);
        if parts.iter().any(|(i, _)| !s.contains(*i)) {
            escapes.push(cat.label(x).to_string());
        }
        images.push(SyzygyImage {
            object: cat.label(x).to_string(),
            summands: parts.into_iter().map(|(i, m)| (cat.label(i).to_string(), m)).collect(),
        });
    }
    SyzygyReport { power, images, escapes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::tests::{hereditary, a5_rad2};

    const M_A: [&str; 7] = ["⟨5,5⟩", "⟨4,5⟩", "⟨3,4⟩", "⟨3,3⟩", "⟨2,3⟩", "⟨1,2⟩", "⟨1,1⟩"];

    #[test]
    fn rigidity_of_m_a() {
        let cat = ModuleCategory::new(&a5_rad2()).unwrap();
        let m = Subcat::from_labels(&cat, &M_A).unwrap();
        assert!(is_d_rigid(&cat, &m, 2).is_ok());
        let all = Subcat::new(0..cat.len());
        let v = is_d_rigid(&cat, &all, 2).unwrap_err();
        assert_eq!(v.degree, 1);
        assert!(v.dim > 0);
    }

    #[test]
    fn cluster_tilting_checks() {
        let cat = ModuleCategory::new(&a5_rad2()).unwrap();
        let m = Subcat::from_labels(&cat, &M_A).unwrap();
        assert_eq!(is_d_cluster_tilting_modules(&cat, &m, 2).unwrap(), Ok(()));
        let mut smaller = m.clone();
        smaller.members.remove(&cat.index("⟨3,3⟩").unwrap());
        let defect = is_d_cluster_tilting_modules(&cat, &smaller, 2).unwrap().unwrap_err();
        assert!(matches!(defect, CtDefect::MissingFromSubcat { ref object, .. } if object == "⟨3,3⟩"));
        let all = Subcat::new(0..cat.len());
        assert_eq!(is_d_cluster_tilting_modules(&cat, &all, 1).unwrap(), Ok(()));
    }

    #[test]
    fn enumeration() {
        let cat = ModuleCategory::new(&a5_rad2()).unwrap();
        let two = enumerate_d_ct(&cat, 2).unwrap();
        assert_eq!(two, vec![Subcat::from_labels(&cat, &M_A).unwrap()]);
        assert_eq!(enumerate_d_ct(&cat, 1).unwrap(), vec![Subcat::new(0..9)]);
        assert_eq!(enumerate_d_ct_exhaustive(&cat, 2).unwrap(), two);

        let h = ModuleCategory::new(&hereditary()).unwrap();
        assert_eq!(h.len(), 15);
        let pruned = enumerate_d_ct(&h, 2).unwrap();
        assert_eq!(pruned, enumerate_d_ct_exhaustive(&h, 2).unwrap());
    }

    #[test]
    fn syzygy_closure() {
        let cat = ModuleCategory::new(&a5_rad2()).unwrap();
        let m = Subcat::from_labels(&cat, &M_A).unwrap();
        let r = syzygy_closure_check(&cat, &m, 2);
        assert!(r.closed());
        assert_eq!(r.image_of("⟨1,1⟩").unwrap(), &[("⟨3,3⟩".to_string(), 1)]);
        assert_eq!(r.image_of("⟨3,3⟩").unwrap(), &[("⟨5,5⟩".to_string(), 1)]);
        assert!(r.image_of("⟨1,2⟩").unwrap().is_empty());
        let r1 = syzygy_closure_check(&cat, &m, 1);
        assert!(!r1.closed());
        assert_eq!(r1.image_of("⟨1,1⟩").unwrap(), &[("⟨2,2⟩".to_string(), 1)]);
        let proj = Subcat::new(cat.projectives());
        assert!(syzygy_closure_check(&cat, &proj, 3).closed());
    }

    #[test]
    fn decomposition_of_sums() {
        let a = a5_rad2();
        let cat = ModuleCategory::new(&a).unwrap();
        let s2 = Module::standard(&a, StandardKind::Simple, 1).unwrap();
        let p1 = Module::standard(&a, StandardKind::Projective, 0).unwrap();
        let m = Module::direct_sum(&a, &[&s2, &p1, &s2]);
        let d = cat.decompose(&m);
        assert_eq!(d, vec![(cat.index("⟨1,2⟩").unwrap(), 1), (cat.index("⟨2,2⟩").unwrap(), 2)]);
    }
}
