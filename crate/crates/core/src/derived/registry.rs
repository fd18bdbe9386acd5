use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use super::complex::{shift, PerfectComplex};
use super::hom::{compose_cocycles, iso_with_end, DerivedEnd, HomComplex, HomK};
use super::serre::DerivedContext;
use super::{check_window, DerivedError};
use crate::exactlin::{Subspace, Vector};
use crate::modcat::{enumerate_indecomposables, global_dimension};
use crate::quiveralg::{Module, StandardKind};

/// Default bound on the number of registered objects.
pub const DEFAULT_MAX_OBJECTS: usize = 5000;

#[derive(Clone, Debug)]
pub struct RegistryEntry {
    pub label: String,
    pub complex: PerfectComplex,
    /// Index of the orbit, numbered in order of discovery.
    pub orbit: usize,
    /// The object is `tau^{-position}` of its seed.
    pub position: i32,
    end: DerivedEnd,
}

impl RegistryEntry {
    pub fn end(&self) -> &DerivedEnd {
        &self.end
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegArrow {
    pub source: usize,
    pub target: usize,
    pub multiplicity: usize,
}

/// Indecomposable objects of `D^b` supported in a window of degrees.
#[derive(Clone, Debug)]
pub struct Registry {
    pub ctx: DerivedContext,
    pub window: (i32, i32),
    pub entries: Vec<RegistryEntry>,
    pub arrows: Vec<RegArrow>,
    /// Each seed with the orbit it landed in.
    pub seeds: Vec<(String, usize)>,
    by_shape: HashMap<Vec<(i32, Vec<usize>)>, Vec<usize>>,
}

/// Knits the objects reachable by `tau` and `tau^{-1}` from the seeds,
/// keeping those whose support lies in `window`.
///
/// Seeds are the projective stalks followed by the stalks of all
/// indecomposable modules (or of simples and injectives when the module
/// category cannot be enumerated): projectives alone may share orbits, as
/// for radical square zero Nakayama algebras where `tau^{-1} P_i = P_{i+1}[1]`.
pub fn knit_registry(ctx: &DerivedContext, window: (i32, i32), max_objects: usize) -> Result<Registry, DerivedError> {
    let alg = ctx.algebra().clone();
    let gldim = global_dimension(&alg)?;
    check_window(window, gldim)?;
    let margin = gldim as i32 + 2;
    let mut reg = Registry {
        ctx: ctx.clone(),
        window,
        entries: Vec::new(),
        arrows: Vec::new(),
        seeds: Vec::new(),
        by_shape: HashMap::new(),
    };
    let mut orbits = 0;
    for (seed_label, p) in seeds(ctx)? {
        if let Some(i) = reg.find(&p) {
            reg.seeds.push((seed_label, reg.entries[i].orbit));
            continue;
        }
        let orbit = orbits;
        orbits += 1;
        reg.seeds.push((seed_label, orbit));
        reg.push(p.clone(), orbit, 0);
        for step in [1, -1] {
            let mut cur = p.clone();
            let mut pos: i32 = 0;
            loop {
                cur = if step == 1 { ctx.ar_translate_inverse(&cur) } else { ctx.ar_translate(&cur) };
                pos += step;
                // orbits drift monotonically only up to the global dimension
                if cur.is_zero() || cur.hi() < window.0 - margin || cur.lo() > window.1 + margin {
                    break;
                }
                if reg.entries.len() >= max_objects || pos.unsigned_abs() as usize > max_objects {
                    return Err(DerivedError::NonTerminating(max_objects));
                }
                if !reg.contains_support(&cur) {
                    continue;
                }
                if reg.find(&cur).is_some() {
                    break;
                }
                reg.push(cur.clone(), orbit, pos);
            }
        }
    }
    reg.dedupe_labels();
    reg.arrows = reg.ar_arrows();
    Ok(reg)
}

fn seeds(ctx: &DerivedContext) -> Result<Vec<(String, PerfectComplex)>, DerivedError> {
    let alg = ctx.algebra();
    let mut out: Vec<(String, PerfectComplex)> =
        (0..alg.vertex_count()).map(|v| (format!("P{}", alg.vertex_label(v)), PerfectComplex::stalk(alg, &[v], 0))).collect();
    match enumerate_indecomposables(alg) {
        Ok(list) => {
            for m in list {
                out.push((m.label.clone(), ctx.stalk(&m.module, 0)?));
            }
        }
        Err(_) => {
            for kind in [StandardKind::Simple, StandardKind::Injective] {
                for v in 0..alg.vertex_count() {
                    let m = Module::standard(alg, kind, v).expect("valid vertex");
                    let name = match kind {
                        StandardKind::Simple => format!("S{}", alg.vertex_label(v)),
                        _ => format!("I{}", alg.vertex_label(v)),
                    };
                    out.push((name, ctx.stalk(&m, 0)?));
                }
            }
        }
    }
    Ok(out)
}

impl Registry {
    fn contains_support(&self, x: &PerfectComplex) -> bool {
        x.lo() >= self.window.0 && x.hi() <= self.window.1
    }

    fn push(&mut self, x: PerfectComplex, orbit: usize, position: i32) {
        let end = DerivedEnd::new(&x);
        self.by_shape.entry(x.graded_multiplicities()).or_default().push(self.entries.len());
        self.entries.push(RegistryEntry { label: x.label(), complex: x, orbit, position, end });
    }

    fn dedupe_labels(&mut self) {
        let mut seen: HashMap<String, usize> = HashMap::new();
        for e in &mut self.entries {
            let c = seen.entry(e.label.clone()).or_insert(0);
            *c += 1;
            if *c > 1 {
                e.label = format!("{}#{}", e.label, c);
            }
        }
    }

    /// Registered object isomorphic to the minimal indecomposable `x`.
    pub fn find(&self, x: &PerfectComplex) -> Option<usize> {
        let candidates = self.by_shape.get(&x.graded_multiplicities())?;
        candidates.iter().copied().find(|&i| iso_with_end(&self.entries[i].end, x))
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.label == label)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn orbit_count(&self) -> usize {
        let mut o: Vec<usize> = self.entries.iter().map(|e| e.orbit).collect();
        o.sort_unstable();
        o.dedup();
        o.len()
    }

    /// Shift normalizing `x` so that its lowest degree lies in `[0, period)`.
    pub fn normalizing_shift(x: &PerfectComplex, period: i32) -> i32 {
        x.lo() - x.lo().rem_euclid(period)
    }

    /// Classes of registry objects modulo `[period]`, as lists of entry
    /// indices in registry order.
    pub fn classes_mod_shift(&self, period: i32) -> Vec<Vec<usize>> {
        let mut reps: Vec<(PerfectComplex, DerivedEnd)> = Vec::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, e) in self.entries.iter().enumerate() {
            let n = Self::normalizing_shift(&e.complex, period);
            let x = shift(&e.complex, n);
            match reps.iter().position(|(_, end)| iso_with_end(end, &x)) {
                Some(c) => classes[c].push(i),
                None => {
                    let end = DerivedEnd::new(&x);
                    reps.push((x, end));
                    classes.push(vec![i]);
                }
            }
        }
        classes
    }

    /// Irreducible maps between registered objects: `dim rad/rad²`, with
    /// `rad²` formed through registered middle terms.
    fn ar_arrows(&self) -> Vec<RegArrow> {
        let n = self.entries.len();
        let mut homs: Vec<Vec<Option<HomK>>> = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (&self.entries[i].complex, &self.entries[j].complex);
                if y.lo() > x.hi() || x.lo() > y.hi() {
                    continue;
                }
                if HomComplex::new(x, y).expect("same algebra").dim(0) == 0 {
                    continue;
                }
                let h = HomK::new(x, y, 0).expect("same algebra");
                if h.dim() > 0 {
                    homs[i][j] = Some(h);
                }
            }
        }
        let rad = |i: usize, j: usize| -> Vec<Vector> {
            match &homs[i][j] {
                None => Vec::new(),
                Some(_) if i == j => {
                    let end = &self.entries[i].end;
                    end.radical.basis().iter().map(|c| end.hom.combination(c)).collect()
                }
                Some(h) => h.basis().to_vec(),
            }
        };
        let rads: Vec<Vec<Vec<Vector>>> = (0..n).map(|i| (0..n).map(|j| rad(i, j)).collect()).collect();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let Some(h) = &homs[i][j] else { continue };
                if rads[i][j].is_empty() {
                    continue;
                }
                let mut squares = Vec::new();
                for z in 0..n {
                    if rads[i][z].is_empty() || rads[z][j].is_empty() {
                        continue;
                    }
                    let (f_space, g_space) = (homs[i][z].as_ref().unwrap(), homs[z][j].as_ref().unwrap());
                    for f in &rads[i][z] {
                        for g in &rads[z][j] {
                            squares.push(h.coordinates(&compose_cocycles(h.complex(), g_space, g, f_space, f)));
                        }
                    }
                }
                let in_rad: Vec<Vector> = rads[i][j].iter().map(|r| h.coordinates(r)).collect();
                let rad_dim = Subspace::span(h.dim(), in_rad).dim();
                let m = rad_dim - Subspace::span(h.dim(), squares).dim();
                if m > 0 {
                    arrows.push(RegArrow { source: i, target: j, multiplicity: m });
                }
            }
        }
        arrows
    }

    pub fn to_json(&self) -> Value {
        let alg = self.ctx.algebra();
        let objects: Vec<Value> = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let x = &e.complex;
                let terms: Vec<Value> = (x.lo()..=x.hi())
                    .map(|k| json!({"degree": k, "projectives": x.term(k).iter().map(|&v| alg.vertex_label(v)).collect::<Vec<_>>()}))
                    .collect();
                let coh: Vec<Value> = x.cohomology_dims().into_iter().map(|(k, d)| json!({"degree": k, "dims": d})).collect();
                json!({
                    "id": i,
                    "label": e.label,
                    "orbit": e.orbit,
                    "position": e.position,
                    "degrees": [x.lo(), x.hi()],
                    "terms": terms,
                    "cohomology": coh,
                })
            })
            .collect();
        json!({
            "window": [self.window.0, self.window.1],
            "objects": objects,
            "orbits": self.orbit_count(),
            "arrows": self.arrows,
        })
    }

    /// DOT rendering; `bold[i]` marks entries drawn in bold.
    pub fn to_dot(&self, bold: &[bool]) -> String {
        let mut out = String::from("digraph derived_ar_quiver {\n");
        for (i, e) in self.entries.iter().enumerate() {
            let style = if bold.get(i).copied().unwrap_or(false) { ", style=bold, fontname=\"bold\"" } else { "" };
            writeln!(out, "  n{i} [label=\"{}\"{style}];", e.label).unwrap();
        }
        for a in &self.arrows {
            writeln!(out, "  n{} -> n{} [multiplicity={}];", a.source, a.target, a.multiplicity).unwrap();
        }
        out.push_str("}\n");
        out
    }
}
