use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::derived::{
    four_angle_obstruction, remark_witness, u_members, verify_not_two_ct_in_derived, verify_unique_rigid_extension, DerivedSubcat,
};
use super::{enumerate_d_ct, syzygy_closure_check, ModuleCategory, Subcat, TiltingError};
use crate::derived::{derived_hom_dim, is_indecomposable_d, knit_registry, DerivedContext, PerfectComplex, Registry, DEFAULT_MAX_OBJECTS};
use crate::modcat::{ar_quiver, ext_dim, ext_dim_via_syzygy, global_dimension, iso_module, ArQuiver};
use crate::quiveralg::Algebra;

pub const VERDICT_PASS: &str = "counterexample certified";

/// The subcategory `M(A)` expected for the radical square zero `A5`.
const EXPECTED_M_A: [&str; 7] = ["⟨5,5⟩", "⟨4,5⟩", "⟨3,4⟩", "⟨3,3⟩", "⟨2,3⟩", "⟨1,2⟩", "⟨1,1⟩"];

#[derive(Clone, Debug)]
pub struct Config {
    pub window: (i32, i32),
    pub d: usize,
    pub max_objects: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { window: (-6, 6), d: 2, max_objects: DEFAULT_MAX_OBJECTS }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AlgebraInfo {
    pub file: String,
    pub hash: String,
    pub dim: Option<usize>,
    pub gldim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub id: &'static str,
    pub statement: &'static str,
    pub anchor: &'static str,
    pub status: CheckStatus,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Certificate {
    pub algebra: AlgebraInfo,
    pub checks: Vec<Check>,
    pub verdict: String,
    pub methodology: Vec<&'static str>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict == VERDICT_PASS
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    /// One line per check, with its anchor.
    pub fn summary(&self) -> String {
        let mut out = format!("algebra {} (sha256 {})\n", self.algebra.file, self.algebra.hash);
        if let Some(e) = &self.algebra.error {
            out += &format!("input error: {e}\n");
        }
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            out += &format!("{status:<5}{:<24}{}  [\"{}\"]\n", c.id, c.statement, c.anchor);
        }
        out += &format!("verdict: {}\n", self.verdict);
        out
    }
}

/// A certificate together with the figures produced along the way.
#[derive(Clone, Debug)]
pub struct CertificateRun {
    pub certificate: Certificate,
    pub module_dot: Option<String>,
    pub derived_dot: Option<String>,
    pub input_error: bool,
}

const METHODOLOGY: [&str; 4] = [
    "all arithmetic is exact over the rationals",
    "the derived category is modelled by minimal bounded complexes of projectives up to homotopy",
    "functorial finiteness holds automatically since every subcategory involved has finitely many indecomposables up to shift",
    "the last step of the 4-angle argument is an imported result and is recorded without computation",
];

struct CheckDef {
    id: &'static str,
    statement: &'static str,
    anchor: &'static str,
}

const CHECK_DEFS: [CheckDef; 11] = [
    CheckDef { id: "algebra-stats", statement: "dim A = 9 and gldim A = 4", anchor: "global dimension 4" },
    CheckDef {
        id: "mod-indecomposables",
        statement: "mod A has 9 pairwise non-isomorphic indecomposables, the intervals of length at most 2",
        anchor: "The Auslander--Reiten quiver of mod A is the following",
    },
    CheckDef {
        id: "mod-ar-quiver",
        statement: "the AR quiver of mod A is the zigzag ⟨i+1,i+1⟩ → ⟨i,i+1⟩ → ⟨i,i⟩",
        anchor: "The Auslander--Reiten quiver of mod A is the following",
    },
    CheckDef {
        id: "unique-2ct",
        statement: "add(⟨5,5⟩ ⊕ ⟨4,5⟩ ⊕ ⟨3,4⟩ ⊕ ⟨3,3⟩ ⊕ ⟨2,3⟩ ⊕ ⟨1,2⟩ ⊕ ⟨1,1⟩) is the unique 2-cluster-tilting subcategory",
        anchor: "is the unique 2-cluster-tilting subcategory of mod A",
    },
    CheckDef { id: "omega2-closure", statement: "Ω²(M(A)) ⊂ M(A)", anchor: "Ω²(M) ⊂ M, where Ω is Heller's syzygy functor" },
    CheckDef {
        id: "ext-cross-oracle",
        statement: "Ext via syzygies, via projective resolutions and via Hom complexes of stalks agree in degrees 0 to 5",
        anchor: "internal consistency",
    },
    CheckDef {
        id: "derived-registry",
        statement: "D^b(mod A) has 15 indecomposables per shift band in 5 τ-orbits, all with local endomorphism rings",
        anchor: "the algebras kQ and A are derived equivalent",
    },
    CheckDef {
        id: "derived-vanishing-band",
        statement: "Hom(M, N[n]) = 0 for indecomposable modules M, N unless 0 ≤ n ≤ gldim A",
        anchor: "global dimension 4",
    },
    CheckDef {
        id: "prop-claim1",
        statement: "U(A) is rigid and [2]-closed, and adjoining any other [2]-orbit to M(A) breaks rigidity",
        anchor: "Then, U = U(A)",
    },
    CheckDef {
        id: "remark-ext1",
        statement: "a shift of X = ⟨3,4⟩ → ⟨2,3⟩ → ⟨1,2⟩ lies in an Ext^1-orthogonal of U(A) but not in U(A), \
so U(A) is not 2-cluster-tilting",
        anchor: "Ext_A^1(34→23→12, 3) ≠ 0 while Ext_A^1(U(A), 34→23→12) = 0",
    },
    CheckDef {
        id: "four-angle-steps",
        statement: "f: ⟨3,4⟩ → ⟨2,3⟩ is not split, forces X = ⟨1,2⟩ and Y = ⟨1,1⟩, and Hom(⟨1,1⟩, -[2]) vanishes on both ends",
        anchor: "Taking a minimal version of g, we may assume that X = 12 ... h is non-zero and Y = 1 ... there are no non-zero homomorphisms",
    },
];

type Outcome = Result<(bool, Value), String>;

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    fn record(&mut self, id: &str, outcome: Option<Outcome>) -> bool {
        let def = CHECK_DEFS.iter().find(|s| s.id == id).expect("known check id");
        let (status, witness) = match outcome {
            None => (CheckStatus::Skipped, Value::Null),
            Some(Ok((ok, w))) => (if ok { CheckStatus::Pass } else { CheckStatus::Fail }, w),
            Some(Err(e)) => (CheckStatus::Fail, json!({ "error": e })),
        };
        self.checks.push(Check { id: def.id, statement: def.statement, anchor: def.anchor, status, witness });
        status == CheckStatus::Pass
    }

    fn skip_all(&mut self, from: usize) {
        for s in &CHECK_DEFS[from..] {
            self.record(s.id, None);
        }
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Runs every check on the algebra given by `text`. Failures are recorded
/// per check; later checks that need an earlier result are skipped.
pub fn build_certificate(file: &str, text: &str, config: &Config) -> CertificateRun {
    let hash = hex::encode(Sha256::digest(text.as_bytes()));
    let mut info = AlgebraInfo { file: file.to_string(), hash, dim: None, gldim: None, error: None };
    let mut b = Builder { checks: Vec::new() };
    let mut run = CertificateRun {
        certificate: Certificate { algebra: info.clone(), checks: Vec::new(), verdict: String::new(), methodology: METHODOLOGY.to_vec() },
        module_dot: None,
        derived_dot: None,
        input_error: false,
    };

    let alg = match Algebra::parse(text) {
        Ok(a) => Arc::new(a),
        Err(e) => {
            info.error = Some(format!("parse error: {e}"));
            run.input_error = true;
            b.skip_all(0);
            return finish(run, info, b);
        }
    };
    info.dim = Some(alg.dim());
    let gldim = match global_dimension(&alg) {
        Ok(g) => g,
        Err(e) => {
            info.error = Some(format!("global dimension: {e}"));
            run.input_error = true;
            b.skip_all(0);
            return finish(run, info, b);
        }
    };
    info.gldim = Some(gldim);
    b.record("algebra-stats", Some(Ok((alg.dim() == 9 && gldim == 4, json!({ "dim": alg.dim(), "gldim": gldim })))));

    // module category
    let cat = match ModuleCategory::new(&alg) {
        Ok(c) => Some(c),
        Err(e) => {
            b.record("mod-indecomposables", Some(Err(err(e))));
            None
        }
    };
    let mut m_a: Option<Subcat> = None;
    if let Some(cat) = &cat {
        b.record("mod-indecomposables", Some(Ok(check_indecomposables(cat))));
        let q = ar_quiver(&cat.indecs);
        run.module_dot = Some(q.to_dot("ar_quiver"));
        b.record("mod-ar-quiver", Some(Ok(check_zigzag(cat, &q))));
        let found = enumerate_d_ct(cat, config.d);
        let outcome = found.as_ref().map_err(err).map(|list| {
            let labels: Vec<Vec<String>> = list.iter().map(|s| s.labels(cat)).collect();
            let mut expected: Vec<String> = EXPECTED_M_A.iter().map(|s| s.to_string()).collect();
            expected.sort();
            let ok = labels.len() == 1 && {
                let mut l = labels[0].clone();
                l.sort();
                l == expected
            };
            (ok, json!({ "d": config.d, "count": labels.len(), "subcategories": labels }))
        });
        if let Ok(list) = &found {
            if list.len() == 1 {
                m_a = Some(list[0].clone());
            }
        }
        b.record("unique-2ct", Some(outcome));
        b.record("omega2-closure", m_a.as_ref().map(|m| Ok(check_omega(cat, m, config.d))));
        b.record("ext-cross-oracle", Some(check_ext_oracle(cat)));
    } else {
        for id in ["mod-ar-quiver", "unique-2ct", "omega2-closure", "ext-cross-oracle"] {
            b.record(id, None);
        }
    }

    // derived category
    let ctx = DerivedContext::new(&alg);
    let reg = match knit_registry(&ctx, config.window, config.max_objects) {
        Ok(r) => Some(r),
        Err(e) => {
            b.record("derived-registry", Some(Err(err(e))));
            None
        }
    };
    let Some(reg) = reg else {
        b.skip_all(7);
        return finish(run, info, b);
    };
    b.record("derived-registry", Some(Ok(check_registry(&reg))));
    b.record("derived-vanishing-band", cat.as_ref().map(|c| check_band(&ctx, c, gldim)));

    let (Some(cat), Some(m_a)) = (cat.as_ref(), m_a.as_ref()) else {
        run.derived_dot = Some(reg.to_dot(&vec![false; reg.len()]));
        b.skip_all(8);
        return finish(run, info, b);
    };
    let base: Result<Vec<PerfectComplex>, _> = m_a.members.iter().map(|&i| ctx.stalk(&cat.indecs[i].module, 0)).collect();
    let base = match base {
        Ok(b) => b,
        Err(e) => {
            b.record("prop-claim1", Some(Err(err(e))));
            b.skip_all(9);
            return finish(run, info, b);
        }
    };
    let period = config.d as i32;
    let u = DerivedSubcat::new(period, &base);
    run.derived_dot = Some(reg.to_dot(&u_members(&reg, &u)));

    b.record("prop-claim1", Some(check_claim_one(&reg, &base, config.d)));
    b.record("remark-ext1", Some(check_remark(&reg, cat, &u)));
    b.record("four-angle-steps", Some(check_four_angle(&reg, cat, &u)));
    finish(run, info, b)
}

fn finish(mut run: CertificateRun, info: AlgebraInfo, b: Builder) -> CertificateRun {
    let failed: Vec<&str> = b.checks.iter().filter(|c| c.status == CheckStatus::Fail).map(|c| c.id).collect();
    let skipped: Vec<&str> = b.checks.iter().filter(|c| c.status == CheckStatus::Skipped).map(|c| c.id).collect();
    let verdict = if failed.is_empty() && skipped.is_empty() {
        VERDICT_PASS.to_string()
    } else {
        let mut v = "not certified".to_string();
        if !failed.is_empty() {
            v += &format!("; failed: {}", failed.join(", "));
        }
        if !skipped.is_empty() {
            v += &format!("; inapplicable: {}", skipped.join(", "));
        }
        v
    };
    run.certificate.algebra = info;
    run.certificate.checks = b.checks;
    run.certificate.verdict = verdict;
    run
}

fn is_short_interval(label: &str) -> bool {
    let inner = label.trim_start_matches('⟨').trim_end_matches('⟩');
    let parts: Vec<&str> = inner.split(',').collect();
    match parts.as_slice() {
        [a, b] => match (a.parse::<i64>(), b.parse::<i64>()) {
            (Ok(a), Ok(b)) => b - a == 0 || b - a == 1,
            _ => false,
        },
        _ => false,
    }
}

fn check_indecomposables(cat: &ModuleCategory) -> (bool, Value) {
    let n = cat.len();
    let mut isos = 0;
    for i in 0..n {
        for j in i + 1..n {
            if iso_module(&cat.indecs[i].module, &cat.indecs[j].module).unwrap_or(true) {
                isos += 1;
            }
        }
    }
    let labels: Vec<&str> = cat.indecs.iter().map(|x| x.label.as_str()).collect();
    let ok = n == 9 && isos == 0 && labels.iter().all(|l| is_short_interval(l));
    (ok, json!({ "count": n, "labels": labels, "isomorphic_pairs": isos }))
}

fn check_zigzag(cat: &ModuleCategory, q: &ArQuiver) -> (bool, Value) {
    let k = cat.alg.vertex_count();
    let mut expected = Vec::new();
    for i in 1..k {
        expected.push((format!("⟨{},{}⟩", i + 1, i + 1), format!("⟨{},{}⟩", i, i + 1)));
        expected.push((format!("⟨{},{}⟩", i, i + 1), format!("⟨{i},{i}⟩")));
    }
    let mut actual: Vec<(String, String)> = q
        .arrows
        .iter()
        .map(|a| (q.vertices[a.source].clone(), q.vertices[a.target].clone()))
        .collect();
    actual.sort();
    expected.sort();
    let ok = actual == expected && q.arrows.iter().all(|a| a.multiplicity == 1);
    let arrows: Vec<String> = q.arrows.iter().map(|a| format!("{} -> {}", q.vertices[a.source], q.vertices[a.target])).collect();
    (ok, json!({ "vertices": q.vertices.len(), "arrows": arrows }))
}

fn check_omega(cat: &ModuleCategory, m: &Subcat, power: usize) -> (bool, Value) {
    let r = syzygy_closure_check(cat, m, power);
    let is = |x: &str, y: &str| r.image_of(x).is_some_and(|s| s.len() == 1 && s[0] == (y.to_string(), 1));
    let ok = r.closed() && is("⟨1,1⟩", "⟨3,3⟩") && is("⟨3,3⟩", "⟨5,5⟩");
    let images: Vec<Value> = r
        .images
        .iter()
        .map(|i| json!({ "object": i.object, "syzygy": i.summands.iter().map(|(l, m)| json!([l, m])).collect::<Vec<_>>() }))
        .collect();
    (ok, json!({ "power": power, "images": images, "escapes": r.escapes }))
}

fn check_ext_oracle(cat: &ModuleCategory) -> Outcome {
    let ctx = DerivedContext::new(&cat.alg);
    let stalks: Vec<PerfectComplex> = cat.indecs.iter().map(|x| ctx.stalk(&x.module, 0)).collect::<Result<_, _>>().map_err(err)?;
    let mut mismatches = Vec::new();
    let mut comparisons = 0;
    for (i, x) in cat.indecs.iter().enumerate() {
        for (j, y) in cat.indecs.iter().enumerate() {
            for n in 0..=5usize {
                let a = ext_dim(&x.module, &y.module, n).map_err(err)?;
                let b = ext_dim_via_syzygy(&x.module, &y.module, n).map_err(err)?;
                let c = derived_hom_dim(&stalks[i], &stalks[j], n as i32);
                comparisons += 1;
                if a != b || a != c {
                    mismatches.push(json!({ "source": x.label, "target": y.label, "degree": n, "values": [a, b, c] }));
                }
            }
        }
    }
    let pairs = cat.len() * cat.len();
    Ok((mismatches.is_empty(), json!({ "pairs": pairs, "degrees": [0, 5], "comparisons": comparisons, "mismatches": mismatches })))
}

fn check_registry(reg: &Registry) -> (bool, Value) {
    let per_band = reg.classes_mod_shift(1).len();
    let per_two = reg.classes_mod_shift(2).len();
    let orbits = reg.orbit_count();
    let not_indec: Vec<&str> = reg.entries.iter().filter(|e| !is_indecomposable_d(&e.complex)).map(|e| e.label.as_str()).collect();
    let ok = per_band == 15 && orbits == 5 && not_indec.is_empty();
    (
        ok,
        json!({
            "classes_per_shift_band": per_band,
            "classes_modulo_shift_2": per_two,
            "tau_orbits": orbits,
            "not_indecomposable": not_indec,
        }),
    )
}

fn check_band(ctx: &DerivedContext, cat: &ModuleCategory, gldim: usize) -> Outcome {
    let stalks: Vec<PerfectComplex> = cat.indecs.iter().map(|x| ctx.stalk(&x.module, 0)).collect::<Result<_, _>>().map_err(err)?;
    let mut violations = Vec::new();
    let mut top = None;
    for (i, x) in stalks.iter().enumerate() {
        for (j, y) in stalks.iter().enumerate() {
            let h = crate::derived::HomComplex::new(x, y).map_err(err)?;
            for n in h.range() {
                let d = h.cohomology_dim(n);
                if d == 0 {
                    continue;
                }
                top = top.max(Some(n));
                if n < 0 || n > gldim as i32 {
                    violations.push(json!({ "source": cat.label(i), "target": cat.label(j), "degree": n, "dim": d }));
                }
            }
        }
    }
    Ok((violations.is_empty(), json!({ "pairs": stalks.len() * stalks.len(), "highest_nonzero_degree": top, "violations": violations })))
}

fn check_claim_one(reg: &Registry, base: &[PerfectComplex], d: usize) -> Outcome {
    let r = verify_unique_rigid_extension(reg, base, d).map_err(err)?;
    let proj: Vec<PerfectComplex> = (0..reg.ctx.algebra().vertex_count()).map(|v| PerfectComplex::stalk(reg.ctx.algebra(), &[v], 0)).collect();
    let control = verify_unique_rigid_extension(reg, &proj, d).map_err(err)?;
    let mut all_reverified = true;
    let rejections: Vec<Value> = r
        .rejections
        .iter()
        .map(|x| {
            let ok = x.witness.reverify(&reg.ctx);
            all_reverified &= ok;
            json!({
                "class": x.class,
                "source": x.witness.source,
                "target": x.witness.target,
                "degree": x.witness.degree,
                "dim": x.witness.dim,
                "reverified": ok,
            })
        })
        .collect();
    let ok = r.holds() && all_reverified && r.classes == r.member_classes + r.rejections.len() && control.extensions.len() > 1;
    Ok((
        ok,
        json!({
            "period": r.period,
            "base": r.base,
            "base_rigid": r.base_violation.is_none(),
            "shift_closed": r.closure_failures.is_empty(),
            "classes": r.classes,
            "member_classes": r.member_classes,
            "rejected_classes": r.rejections.len(),
            "rejections": rejections,
            "rigid_extensions": r.extensions,
            "control_projective_stalks_extensions": control.extensions.len(),
        }),
    ))
}

fn stalk_of(reg: &Registry, cat: &ModuleCategory, label: &str) -> Result<PerfectComplex, String> {
    let i = cat.index(label).ok_or_else(|| err(TiltingError::MissingObject(label.to_string())))?;
    reg.ctx.stalk(&cat.indecs[i].module, 0).map_err(err)
}

fn check_remark(reg: &Registry, cat: &ModuleCategory, u: &DerivedSubcat) -> Outcome {
    let x = remark_witness(reg.ctx.algebra()).map_err(err)?;
    let target = stalk_of(reg, cat, "⟨3,3⟩")?;
    let r = verify_not_two_ct_in_derived(u, &x, &target);
    let control_stalk = stalk_of(reg, cat, "⟨3,4⟩")?;
    let c1 = verify_not_two_ct_in_derived(u, &control_stalk, &target);
    let control_45 = derived_hom_dim(&x, &stalk_of(reg, cat, "⟨4,5⟩")?, 1);
    let given = &r.placements[0];
    let ok = r.shows_not_ct() && !c1.shows_not_ct() && control_45 == 0;
    let placements: Vec<Value> = r
        .placements
        .iter()
        .map(|p| {
            json!({
                "label": p.label,
                "degrees": [p.degrees.0, p.degrees.1],
                "in_U": p.in_subcat,
                "hom_X_to_3_3_shift_1": p.hom_into_target,
                "hom_3_3_to_X_shift_1": p.hom_from_target,
                "hom_U_to_X_odd_nonzero": p.right_violations,
                "hom_X_to_U_odd_nonzero": p.left_violations,
                "right_orthogonal_witness": p.right_witness(),
                "left_orthogonal_witness": p.left_witness(),
            })
        })
        .collect();
    Ok((
        ok,
        json!({
            "witness": r.witness,
            "cohomology": x.cohomology_dims(),
            "displayed_form_holds": r.as_given(),
            "displayed_form": {
                "degrees": [given.degrees.0, given.degrees.1],
                "hom_X_to_3_3_shift_1": given.hom_into_target,
                "hom_U_to_X_odd_nonzero": given.right_violations,
            },
            "placements": placements,
            "control_stalk_3_4": { "in_U": c1.placements[0].in_subcat, "separates": c1.shows_not_ct() },
            "control_hom_X_to_4_5_shift_1": control_45,
        }),
    ))
}

fn check_four_angle(reg: &Registry, cat: &ModuleCategory, u: &DerivedSubcat) -> Outcome {
    let m = |l: &str| cat.index(l).map(|i| cat.indecs[i].module.clone()).ok_or_else(|| err(TiltingError::MissingObject(l.to_string())));
    let r = four_angle_obstruction(reg, u, &m("⟨3,4⟩")?, &m("⟨2,3⟩")?, &m("⟨3,3⟩")?).map_err(err)?;
    let steps = r.steps_hold();
    let ok = steps.iter().all(|&s| s) && r.third_terms == ["⟨1,2⟩"] && r.fourth_terms == ["⟨1,1⟩"];
    Ok((
        ok,
        json!({
            "steps_hold": steps,
            "report": r,
            "step5_computed": false,
        }),
    ))
}
