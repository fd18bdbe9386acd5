use std::sync::Arc;

use super::complex::{minimize, PerfectComplex};
use super::DerivedError;
use crate::exactlin::{zero_vec, Vector};
use crate::modcat::{kernel, projective_cover, ModCatError, DEFAULT_MAX_LEN};
use crate::quiveralg::{Algebra, Module, ModuleMap, ProjMap};

/// A bounded complex of modules; `diffs[i]` goes from degree `lo + i` to
/// `lo + i + 1`.
#[derive(Clone, Debug)]
pub struct ModComplex {
    alg: Arc<Algebra>,
    lo: i32,
    terms: Vec<Module>,
    diffs: Vec<ModuleMap>,
}

impl ModComplex {
    pub fn new(alg: Arc<Algebra>, lo: i32, terms: Vec<Module>, diffs: Vec<ModuleMap>) -> Result<Self, DerivedError> {
        if diffs.len() != terms.len().saturating_sub(1) {
            return Err(DerivedError::ShapeMismatch);
        }
        for (i, d) in diffs.iter().enumerate() {
            if !d.source().same_algebra(&terms[i]) || d.source().dims() != terms[i].dims() || d.target().dims() != terms[i + 1].dims() {
                return Err(DerivedError::ShapeMismatch);
            }
        }
        for w in diffs.windows(2) {
            if !w[1].compose(&w[0]).is_zero() {
                return Err(DerivedError::NotAComplex);
            }
        }
        Ok(ModComplex { alg, lo, terms, diffs })
    }

    pub fn stalk(m: &Module, degree: i32) -> Self {
        ModComplex { alg: m.algebra().clone(), lo: degree, terms: vec![m.clone()], diffs: Vec::new() }
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    fn term(&self, k: i32) -> Module {
        if k < self.lo || k > self.hi() {
            return Module::zero(self.alg.clone());
        }
        self.terms[(k - self.lo) as usize].clone()
    }

    fn diff(&self, k: i32) -> ModuleMap {
        if k >= self.lo && k < self.hi() {
            return self.diffs[(k - self.lo) as usize].clone();
        }
        ModuleMap::zero(&self.term(k), &self.term(k + 1))
    }
}

/// A minimal complex of projectives quasi-isomorphic to `c`.
///
/// Built from the top degree down: `P^k` covers the cycles of the partial
/// mapping cone in `P^{k+1} + C^k`, which makes the cone acyclic.
pub fn to_perfect(c: &ModComplex) -> Result<PerfectComplex, DerivedError> {
    let alg = c.alg.clone();
    if c.terms.is_empty() {
        return Ok(PerfectComplex::zero(&alg));
    }
    // degrees hi, hi-1, ... ; stored top-down
    let mut p_terms: Vec<Vec<usize>> = Vec::new();
    let mut p_diffs: Vec<ProjMap> = Vec::new(); // d^k: P^k -> P^{k+1}, top-down
    let mut pis: Vec<ModuleMap> = Vec::new();
    let mut k = c.hi();
    loop {
        let empty: Vec<usize> = Vec::new();
        let above = p_terms.last().unwrap_or(&empty).clone();
        let above2 = if p_terms.len() >= 2 { p_terms[p_terms.len() - 2].clone() } else { Vec::new() };
        let p1 = Module::projective_sum(&alg, &above);
        let p2 = Module::projective_sum(&alg, &above2);
        let ck = c.term(k);
        let ck1 = c.term(k + 1);
        let d_above = match p_diffs.last() {
            Some(d) => d.to_module_map(&alg),
            None => ModuleMap::zero(&p1, &p2),
        };
        let pi_above = match pis.last() {
            Some(p) => p.clone(),
            None => ModuleMap::zero(&p1, &ck1),
        };
        let minus_dc = c.diff(k).scale(crate::exactlin::Rational::from_int(-1));
        let map = ModuleMap::from_blocks(&alg, &[&p1, &ck], &[&p2, &ck1], &[(0, 0, &d_above), (1, 0, &pi_above), (1, 1, &minus_dc)]);
        let (z, incl) = kernel(&map);
        if z.is_zero() {
            if k < c.lo {
                break;
            }
            p_diffs.push(ProjMap::zero(&alg, &above, &[]));
            pis.push(ModuleMap::zero(&Module::zero(alg.clone()), &ck));
            p_terms.push(Vec::new());
            k -= 1;
            continue;
        }
        if k < c.lo - DEFAULT_MAX_LEN as i32 {
            return Err(ModCatError::TruncationReached(DEFAULT_MAX_LEN).into());
        }
        let cover = projective_cover(&z)?;
        let mut d = ProjMap::zero(&alg, &above, &cover.vertices);
        let mut gens: Vec<Vector> = Vec::new();
        for (j, (&v, g)) in cover.vertices.iter().zip(&cover.generators).enumerate() {
            let elem = incl.component(v).mul_vec(g);
            let mut off = 0;
            for (r, &w) in above.iter().enumerate() {
                let len = alg.paths_between(w, v).len();
                d.entry_mut(r, j).copy_from_slice(&elem[off..off + len]);
                off += len;
            }
            let mut rest = zero_vec(ck.dim_at(v));
            rest.copy_from_slice(&elem[off..]);
            gens.push(rest);
        }
        pis.push(ModuleMap::from_generators(&ck, &cover.vertices, &gens));
        p_diffs.push(d);
        p_terms.push(cover.vertices);
        k -= 1;
    }
    // p_terms[i] sits in degree hi - i; p_diffs[i] is d^{hi - i}
    let lo = c.hi() - p_terms.len() as i32 + 1;
    let terms: Vec<Vec<usize>> = p_terms.into_iter().rev().collect();
    // drop d^{hi} (into the zero term above the top) and reverse
    let mut diffs: Vec<ProjMap> = p_diffs.into_iter().skip(1).collect();
    diffs.reverse();
    Ok(minimize(&PerfectComplex::from_parts(alg, lo, terms, diffs)))
}
