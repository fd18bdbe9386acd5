#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use nakcert::derived::{cone, derived_hom_dim, iso_test, knit_registry, minimize, shift, ChainMap, DerivedContext, HomComplex, PerfectComplex, Registry};
use nakcert::exactlin::{Matrix, Rational};
use nakcert::quiveralg::{Algebra, ProjMap};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const A5_RAD2: &str = include_str!("../../../../algebras/a5rad2.alg");
pub const HEREDITARY_A5: &str = include_str!("../../../../algebras/hereditary_a5.alg");
pub const GOLDEN_MODULE_DOT: &str = include_str!("../golden/ar_quiver_module.dot");

pub fn a5_rad2() -> Arc<Algebra> {
    Arc::new(Algebra::parse(A5_RAD2).unwrap())
}

pub fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| knit_registry(&DerivedContext::new(&a5_rad2()), (-6, 6), 5000).unwrap())
}

pub fn rat() -> impl Strategy<Value = Rational> {
    (-4i128..=4, 1i128..=3).prop_map(|(n, d)| Rational::new(n, d))
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(rat(), r * c).prop_map(move |data| Matrix::new(r, c, data)))
}

/// Matrices of low rank are rare among uniform samples; build some as products.
pub fn any_matrix() -> impl Strategy<Value = Matrix> {
    prop_oneof![
        matrix(7),
        (1usize..=6, 1usize..=3, 1usize..=6).prop_flat_map(|(r, k, c)| {
            (prop::collection::vec(rat(), r * k), prop::collection::vec(rat(), k * c))
                .prop_map(move |(a, b)| Matrix::new(r, k, a).mul(&Matrix::new(k, c, b)))
        }),
    ]
}

pub fn check_rank_nullity(m: &Matrix) -> Result<(), TestCaseError> {
    let ker = m.kernel_basis();
    prop_assert_eq!(m.rank() + ker.dim(), m.cols());
    for v in ker.basis() {
        prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
    }
    prop_assert_eq!(m.transpose().rank(), m.rank());
    Ok(())
}

pub fn check_rref(m: &Matrix) -> Result<(), TestCaseError> {
    let (r, pivots) = m.rref();
    let (rr, pivots2) = r.rref();
    prop_assert_eq!(&rr, &r);
    prop_assert_eq!(&pivots, &pivots2);
    prop_assert_eq!(pivots.len(), m.rank());
    Ok(())
}

pub fn check_solve(m: &Matrix, seed: &[Rational], consistent: bool) -> Result<(), TestCaseError> {
    let b: Vec<Rational> = if consistent { m.mul_vec(&seed[..m.cols()]) } else { seed.iter().cycle().take(m.rows()).copied().collect() };
    let augmented = m.hstack(&Matrix::from_columns(std::slice::from_ref(&b), m.rows()));
    let solvable = augmented.rank() == m.rank();
    match m.solve(&b) {
        Some(x) => {
            prop_assert!(solvable);
            prop_assert_eq!(m.mul_vec(&x), b);
        }
        None => prop_assert!(!solvable),
    }
    Ok(())
}

/// A random automorphism of `P_verts` with its inverse: nonzero scalars on
/// the diagonal followed by one elementary operation along a path.
fn automorphism(alg: &Algebra, verts: &[usize], pick: &[(u8, i8)]) -> (ProjMap, ProjMap) {
    let n = verts.len();
    let mut diag = ProjMap::identity(alg, verts);
    let mut diag_inv = ProjMap::identity(alg, verts);
    for i in 0..n {
        let s = Rational::from_int(pick[i % pick.len()].1 as i64 % 3 + 3);
        let t = alg.trivial_path(verts[i]);
        diag.set_path(alg, i, i, t, s);
        diag_inv.set_path(alg, i, i, t, s.recip());
    }
    let slots: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|r| (0..n).filter(move |&c| c != r).map(move |c| (r, c)))
        .flat_map(|(r, c)| alg.paths_between(verts[r], verts[c]).iter().map(move |&p| (r, c, p)))
        .collect();
    let mut e = ProjMap::identity(alg, verts);
    let mut e_inv = ProjMap::identity(alg, verts);
    if !slots.is_empty() {
        let (r, c, p) = slots[pick[0].0 as usize % slots.len()];
        let k = Rational::from_int(pick[0].1 as i64);
        e.set_path(alg, r, c, p, k);
        e_inv.set_path(alg, r, c, p, -k);
    }
    (e.compose(alg, &diag), diag_inv.compose(alg, &e_inv))
}

/// `x` plus a contractible complex `P_v -> P_v` ending in `degree`, with
/// every term conjugated by a random automorphism.
pub fn perturb(x: &PerfectComplex, v: usize, degree: i32, pick: &[(u8, i8)]) -> PerfectComplex {
    let alg = x.algebra().clone();
    let c = cone(&ChainMap::identity(&PerfectComplex::stalk(&alg, &[v], degree)));
    let sum = PerfectComplex::direct_sum(&alg, &[x, &c]);
    let autos: Vec<(ProjMap, ProjMap)> =
        (sum.lo()..=sum.hi()).enumerate().map(|(i, k)| automorphism(&alg, sum.term(k), &pick[i % pick.len()..])).collect();
    sum.conjugate(&autos)
}

fn is_complex(x: &PerfectComplex) -> bool {
    let alg = x.algebra();
    (x.lo()..x.hi()).all(|k| x.diff(k + 1).compose(alg, &x.diff(k)).is_zero())
}

fn hom_profile(x: &PerfectComplex, y: &PerfectComplex) -> Vec<(i32, usize)> {
    let lo = y.lo() - x.hi() - 12;
    let hi = y.hi() - x.lo() + 12;
    (lo..=hi).map(|n| (n, derived_hom_dim(x, y, n))).filter(|&(_, d)| d > 0).collect()
}

pub fn entry() -> impl Strategy<Value = usize> {
    0..registry().len()
}

pub fn pick() -> impl Strategy<Value = Vec<(u8, i8)>> {
    prop::collection::vec((any::<u8>(), -3i8..=3), 8)
}

pub fn check_perturbation(i: usize, j: usize, v: usize, degree: i32, pick: &[(u8, i8)]) -> Result<(), TestCaseError> {
    let reg = registry();
    let (x, y) = (&reg.entries[i].complex, &reg.entries[j].complex);
    let px = perturb(x, v, degree, pick);
    prop_assert!(is_complex(&px));
    prop_assert_eq!(px.summand_count(), x.summand_count() + 2);
    prop_assert!(!px.is_minimal());
    prop_assert!(iso_test(&minimize(&px), x).unwrap());
    prop_assert_eq!(hom_profile(&px, y), hom_profile(x, y));
    prop_assert_eq!(hom_profile(y, &px), hom_profile(y, x));
    Ok(())
}

/// `Hom(X[k], Y[n+k]) = Hom(X, Y[n]) = Hom(X, (Y[k])[n-k])`.
pub fn check_shift_adjunction(i: usize, j: usize, k: i32) -> Result<(), TestCaseError> {
    let reg = registry();
    let (x, y) = (&reg.entries[i].complex, &reg.entries[j].complex);
    for n in HomComplex::new(x, y).unwrap().range() {
        let d = derived_hom_dim(x, y, n);
        prop_assert_eq!(derived_hom_dim(&shift(x, k), y, n + k), d);
        prop_assert_eq!(derived_hom_dim(x, &shift(y, k), n - k), d);
    }
    Ok(())
}

pub fn check_serre(i: usize, j: usize) -> Result<(), TestCaseError> {
    let reg = registry();
    let (x, y) = (&reg.entries[i].complex, &reg.entries[j].complex);
    let nu_x = reg.ctx.serre(x);
    for n in HomComplex::new(x, y).unwrap().range() {
        prop_assert_eq!(derived_hom_dim(x, y, n), derived_hom_dim(y, &nu_x, -n));
    }
    prop_assert!(iso_test(&reg.ctx.serre_inverse(&nu_x), x).unwrap());
    Ok(())
}
