use std::sync::Arc;

use super::complex::{shift, PerfectComplex};
use super::topf::{to_perfect, ModComplex};
use super::DerivedError;
use crate::quiveralg::{Algebra, Module};

/// An algebra together with its opposite, which is needed to invert the
/// Nakayama functor.
#[derive(Clone, Debug)]
pub struct DerivedContext {
    alg: Arc<Algebra>,
    op: Arc<Algebra>,
    to_op: Vec<usize>,
    from_op: Vec<usize>,
}

impl DerivedContext {
    pub fn new(alg: &Arc<Algebra>) -> Self {
        let op = Arc::new(alg.opposite());
        let to_op = alg.reversal_map(&op);
        let from_op = op.reversal_map(alg);
        DerivedContext { alg: alg.clone(), op, to_op, from_op }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// The minimal projective resolution of `m`, placed in degrees `<= degree`.
    pub fn stalk(&self, m: &Module, degree: i32) -> Result<PerfectComplex, DerivedError> {
        to_perfect(&ModComplex::stalk(m, degree))
    }

    /// `nu(x)`: `P_v -> I_v` termwise, then resolved.
    pub fn serre(&self, x: &PerfectComplex) -> PerfectComplex {
        serre_over(&self.alg, x)
    }

    /// `nu^{-1}(x)`, computed as `(nu_op(x^*))^*` where `*` is
    /// `Hom(-, A)` and `nu_op` the Nakayama functor of the opposite algebra.
    pub fn serre_inverse(&self, x: &PerfectComplex) -> PerfectComplex {
        let dual = transpose(x, &self.op, &self.to_op);
        let y = serre_over(&self.op, &dual);
        transpose(&y, &self.alg, &self.from_op)
    }

    /// `tau = nu . [-1]`.
    pub fn ar_translate(&self, x: &PerfectComplex) -> PerfectComplex {
        shift(&self.serre(x), -1)
    }

    pub fn ar_translate_inverse(&self, x: &PerfectComplex) -> PerfectComplex {
        self.serre_inverse(&shift(x, 1))
    }
}

fn serre_over(alg: &Arc<Algebra>, x: &PerfectComplex) -> PerfectComplex {
    if x.is_zero() {
        return x.clone();
    }
    let terms = (x.lo()..=x.hi()).map(|k| Module::injective_sum(alg, x.term(k))).collect();
    let diffs = (x.lo()..x.hi()).map(|k| x.diff(k).nakayama_module_map(alg)).collect();
    let c = ModComplex::new(alg.clone(), x.lo(), terms, diffs).expect("Nakayama functor preserves complexes");
    to_perfect(&c).expect("finite global dimension")
}

/// `Hom(x, A)` as a complex over `target` (the opposite algebra), with
/// `(x^*)^{-k} = (x^k)^*`.
fn transpose(x: &PerfectComplex, target: &Arc<Algebra>, reversal: &[usize]) -> PerfectComplex {
    if x.is_zero() {
        return PerfectComplex::zero(target);
    }
    let alg = x.algebra();
    let terms: Vec<Vec<usize>> = (x.lo()..=x.hi()).rev().map(|k| x.term(k).to_vec()).collect();
    let diffs = (x.lo()..x.hi()).rev().map(|k| x.diff(k).reversed_transpose(alg, target, reversal)).collect();
    PerfectComplex::from_parts(target.clone(), -x.hi(), terms, diffs)
}
