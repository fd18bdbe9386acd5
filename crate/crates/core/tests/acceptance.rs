//! Acceptance criteria for the radical square zero `A5`, one line each.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use nakcert::derived::{derived_hom_dim, is_indecomposable_d, DerivedContext, HomComplex, PerfectComplex};
use nakcert::modcat::{ar_quiver, enumerate_indecomposables, ext_dim_via_syzygy, global_dimension, iso_module, syzygy};
use nakcert::tilting::{
    build_certificate, enumerate_d_ct, four_angle_obstruction, remark_witness, syzygy_closure_check, verify_unique_rigid_extension, Config,
    DerivedSubcat, ModuleCategory, Subcat,
};
use proptest::prelude::*;
use proptest::test_runner::{RngAlgorithm, TestRng, TestRunner};

const M_A: [&str; 7] = ["⟨5,5⟩", "⟨4,5⟩", "⟨3,4⟩", "⟨3,3⟩", "⟨2,3⟩", "⟨1,2⟩", "⟨1,1⟩"];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Paths of the quiver in `text` containing no relation as a subpath,
/// read straight from the file.
fn path_count_oracle(text: &str) -> usize {
    let mut vertices = 0;
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut relations: Vec<Vec<String>> = Vec::new();
    for line in text.lines().map(str::trim) {
        if let Some(rest) = line.strip_prefix("vertices:") {
            vertices = rest.split_whitespace().count();
        } else if let Some(rest) = line.strip_prefix("arrow ") {
            let (name, ends) = rest.split_once(':').unwrap();
            let (s, t) = ends.split_once("->").unwrap();
            arrows.push((name.trim().into(), s.trim().into(), t.trim().into()));
        } else if let Some(rest) = line.strip_prefix("relation:") {
            relations.push(rest.split_whitespace().map(String::from).collect());
        }
    }
    let allowed = |p: &[usize]| {
        let names: Vec<&str> = p.iter().map(|&a| arrows[a].0.as_str()).collect();
        !relations.iter().any(|r| names.windows(r.len()).any(|w| w.iter().zip(r).all(|(a, b)| *a == b)))
    };
    let mut count = vertices;
    let mut frontier: Vec<Vec<usize>> = (0..arrows.len()).map(|a| vec![a]).filter(|p| allowed(p)).collect();
    while !frontier.is_empty() {
        count += frontier.len();
        let mut next = Vec::new();
        for p in &frontier {
            let end = &arrows[*p.last().unwrap()].2;
            for (b, arrow) in arrows.iter().enumerate() {
                if &arrow.1 == end {
                    let mut q = p.clone();
                    q.push(b);
                    if allowed(&q) {
                        next.push(q);
                    }
                }
            }
        }
        frontier = next;
    }
    count
}

/// The AR quiver of `k[1 -> ... -> n]` modulo paths of length 2: its
/// irreducible maps are `rad P -> P` and `P -> top P` for the non-simple
/// projectives `P = ⟨i,i+1⟩`.
fn ar_oracle(n: usize) -> String {
    let mut labels: Vec<(usize, usize)> = Vec::new();
    for i in 1..=n {
        labels.push((i, i));
        if i < n {
            labels.push((i, i + 1));
        }
    }
    let idx = |l: (usize, usize)| labels.iter().position(|&x| x == l).unwrap();
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    for i in 1..n {
        arrows.push((idx((i + 1, i + 1)), idx((i, i + 1))));
        arrows.push((idx((i, i + 1)), idx((i, i))));
    }
    arrows.sort();
    let mut out = String::from("digraph ar_quiver {\n");
    for (k, (i, j)) in labels.iter().enumerate() {
        out += &format!("  n{k} [label=\"⟨{i},{j}⟩\"];\n");
    }
    for (s, t) in arrows {
        out += &format!("  n{s} -> n{t} [multiplicity=1];\n");
    }
    out + "}\n"
}

fn stalks(cat: &ModuleCategory, labels: &[&str]) -> Vec<PerfectComplex> {
    let ctx = DerivedContext::new(&cat.alg);
    labels.iter().map(|l| ctx.stalk(&cat.indecs[cat.index(l).unwrap()].module, 0).unwrap()).collect()
}

fn criterion_1() -> Outcome {
    let alg = a5_rad2();
    let oracle = path_count_oracle(A5_RAD2);
    let gldim = global_dimension(&alg).map_err(|e| e.to_string())?;
    ensure(oracle == 9 && alg.dim() == oracle, format!("dim {} vs path count {oracle}", alg.dim()))?;
    ensure(gldim == 4, format!("gldim {gldim}"))?;
    Ok(format!("dim A = {} (path count {oracle}), gldim A = {gldim}", alg.dim()))
}

fn criterion_2() -> Outcome {
    let alg = a5_rad2();
    let indecs = enumerate_indecomposables(&alg).map_err(|e| e.to_string())?;
    ensure(indecs.len() == 9, format!("{} indecomposables", indecs.len()))?;
    for (i, x) in indecs.iter().enumerate() {
        for y in &indecs[i + 1..] {
            ensure(!iso_module(&x.module, &y.module).unwrap(), format!("{} ≅ {}", x.label, y.label))?;
        }
    }
    let expected: BTreeSet<String> = (1..=5).flat_map(|i| (i..=(i + 1).min(5)).map(move |j| format!("⟨{i},{j}⟩"))).collect();
    let got: BTreeSet<String> = indecs.iter().map(|x| x.label.clone()).collect();
    ensure(got == expected, format!("labels {got:?}"))?;
    let oracle = ar_oracle(5);
    ensure(oracle == GOLDEN_MODULE_DOT, "golden file differs from the rad/rad² oracle")?;
    let dot = ar_quiver(&indecs).to_dot("ar_quiver");
    ensure(dot == GOLDEN_MODULE_DOT, format!("AR quiver DOT differs from golden file:\n{dot}"))?;
    Ok("9 pairwise non-isomorphic intervals of length ≤ 2; DOT matches golden file".into())
}

fn criterion_3() -> Outcome {
    let cat = ModuleCategory::new(&a5_rad2()).map_err(|e| e.to_string())?;
    let found = enumerate_d_ct(&cat, 2).map_err(|e| e.to_string())?;
    ensure(found.len() == 1, format!("{} subcategories", found.len()))?;
    let got: BTreeSet<String> = found[0].labels(&cat).into_iter().collect();
    let want: BTreeSet<String> = M_A.iter().map(|s| s.to_string()).collect();
    ensure(got == want, format!("found {got:?}"))?;
    Ok(format!("unique 2-CT subcategory add({})", M_A.join(" ⊕ ")))
}

fn criterion_4() -> Outcome {
    let cat = ModuleCategory::new(&a5_rad2()).map_err(|e| e.to_string())?;
    let m = Subcat::from_labels(&cat, &M_A).map_err(|e| e.to_string())?;
    let r = syzygy_closure_check(&cat, &m, 2);
    ensure(r.closed(), format!("escapes {:?}", r.escapes))?;
    let one = |l: &str| vec![(l.to_string(), 1usize)];
    ensure(r.image_of("⟨1,1⟩") == Some(&one("⟨3,3⟩")[..]), format!("Ω²⟨1,1⟩ = {:?}", r.image_of("⟨1,1⟩")))?;
    ensure(r.image_of("⟨3,3⟩") == Some(&one("⟨5,5⟩")[..]), format!("Ω²⟨3,3⟩ = {:?}", r.image_of("⟨3,3⟩")))?;
    // Ω S_i = S_{i+1} for i < 5
    let s = |l: &str| cat.indecs[cat.index(l).unwrap()].module.clone();
    ensure(syzygy(&s("⟨1,1⟩"), 2).dims() == [0, 0, 1, 0, 0], "dimension vector of Ω²⟨1,1⟩")?;
    ensure(syzygy(&s("⟨3,3⟩"), 2).dims() == [0, 0, 0, 0, 1], "dimension vector of Ω²⟨3,3⟩")?;
    Ok("Ω²(M(A)) ⊂ M(A), Ω²⟨1,1⟩ = ⟨3,3⟩, Ω²⟨3,3⟩ = ⟨5,5⟩".into())
}

fn criterion_5() -> Outcome {
    let reg = registry();
    let per_band = reg.classes_mod_shift(1).len();
    let orbits = reg.orbit_count();
    let bad: Vec<&str> = reg.entries.iter().filter(|e| !is_indecomposable_d(&e.complex)).map(|e| e.label.as_str()).collect();
    // derived equivalent to k[1 -> ... -> 5]: n(n+1)/2 indecomposables per band, n orbits
    let n = 5;
    ensure(per_band == n * (n + 1) / 2, format!("{per_band} classes per shift band"))?;
    ensure(orbits == n, format!("{orbits} τ-orbits"))?;
    ensure(bad.is_empty(), format!("not indecomposable: {bad:?}"))?;
    let hereditary = ModuleCategory::new(&std::sync::Arc::new(nakcert::quiveralg::Algebra::parse(HEREDITARY_A5).unwrap()))
        .map_err(|e| e.to_string())?;
    ensure(hereditary.len() == per_band, format!("hereditary A5 has {} indecomposables", hereditary.len()))?;
    Ok(format!("{} objects in [-6,6]; {per_band} classes per shift band, {orbits} τ-orbits, all indecomposable", reg.len()))
}

fn criterion_6() -> Outcome {
    let reg = registry();
    let cat = ModuleCategory::new(reg.ctx.algebra()).map_err(|e| e.to_string())?;
    let base = stalks(&cat, &M_A);
    let r = verify_unique_rigid_extension(reg, &base, 2).map_err(|e| e.to_string())?;
    ensure(r.base_violation.is_none(), format!("U(A) not rigid: {:?}", r.base_violation))?;
    ensure(r.closure_failures.is_empty() && r.closure_checked > 0, format!("not [2]-closed: {:?}", r.closure_failures))?;
    ensure(r.extensions.is_empty(), format!("rigid extensions {:?}", r.extensions))?;
    let rejected = r.rejections.len();
    ensure(rejected == 23 && r.classes - r.member_classes == 23, format!("{rejected} rejections of {} classes", r.classes - r.member_classes))?;
    let reverified = r.rejections.iter().filter(|x| x.witness.degree % 2 != 0 && x.witness.dim > 0 && x.witness.reverify(&reg.ctx)).count();
    ensure(reverified == rejected, format!("{reverified}/{rejected} witnesses re-verified"))?;
    Ok(format!("U(A) rigid and [2]-closed; {reverified}/{rejected} rejections with re-verified odd-shift witnesses"))
}

fn criterion_7() -> Outcome {
    let reg = registry();
    let cat = ModuleCategory::new(reg.ctx.algebra()).map_err(|e| e.to_string())?;
    let x = remark_witness(reg.ctx.algebra()).map_err(|e| e.to_string())?;
    ensure((x.lo(), x.hi()) == (-1, 1), "X not in degrees [-1,1]")?;
    let s33 = &stalks(&cat, &["⟨3,3⟩"])[0];
    let into = derived_hom_dim(&x, s33, 1);
    // Hom(M[2i], X[n]) = Hom(M, X[n-2i]): odd shifts of the members of M(A) cover U(A)
    let mut nonzero = Vec::new();
    for (label, m) in M_A.iter().zip(stalks(&cat, &M_A)) {
        for n in HomComplex::new(&m, &x).unwrap().range().filter(|n| n % 2 != 0) {
            let d = derived_hom_dim(&m, &x, n);
            if d > 0 {
                nonzero.push(format!("Hom({label}, X[{n}]) = {d}"));
            }
        }
    }
    let head = format!("Hom(X, ⟨3,3⟩[1]) = {into}");
    ensure(into >= 1 && nonzero.is_empty(), format!("{head}, but {}", nonzero.join(", ")))?;
    Ok(format!("{head}, Hom(U(A), X[odd]) = 0"))
}

fn criterion_8() -> Outcome {
    let reg = registry();
    let cat = ModuleCategory::new(reg.ctx.algebra()).map_err(|e| e.to_string())?;
    let u = DerivedSubcat::new(2, &stalks(&cat, &M_A));
    let m = |l: &str| cat.indecs[cat.index(l).unwrap()].module.clone();
    let r = four_angle_obstruction(reg, &u, &m("⟨3,4⟩"), &m("⟨2,3⟩"), &m("⟨3,3⟩")).map_err(|e| e.to_string())?;
    ensure(r.steps_hold() == [true; 4], format!("steps {:?}", r.steps_hold()))?;
    ensure(r.third_terms == ["⟨1,2⟩"], format!("third terms {:?}", r.third_terms))?;
    ensure(r.fourth_terms == ["⟨1,1⟩"], format!("fourth terms {:?}", r.fourth_terms))?;
    Ok("steps 1-4 hold with third terms {⟨1,2⟩} and fourth terms {⟨1,1⟩}".into())
}

fn criterion_9() -> Outcome {
    let cat = ModuleCategory::new(&a5_rad2()).map_err(|e| e.to_string())?;
    let labels: Vec<&str> = cat.indecs.iter().map(|x| x.label.as_str()).collect();
    let st = stalks(&cat, &labels);
    let mut comparisons = 0;
    let mut mismatches = Vec::new();
    for (i, x) in cat.indecs.iter().enumerate() {
        for (j, y) in cat.indecs.iter().enumerate() {
            for n in 0..=5usize {
                let a = ext_dim_via_syzygy(&x.module, &y.module, n).map_err(|e| e.to_string())?;
                let b = derived_hom_dim(&st[i], &st[j], n as i32);
                comparisons += 1;
                if a != b {
                    mismatches.push(format!("Ext^{n}({}, {}): {a} vs {b}", x.label, y.label));
                }
            }
        }
    }
    ensure(comparisons == 486, format!("{comparisons} comparisons"))?;
    ensure(mismatches.is_empty(), mismatches.join("; "))?;
    Ok(format!("{comparisons} comparisons agree"))
}

fn runner(cases: u32) -> TestRunner {
    let config = ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn criterion_10() -> Outcome {
    let fail = |name: &str, e: String| format!("{name}: {e}");
    runner(200).run(&any_matrix(), |m| check_rank_nullity(&m)).map_err(|e| fail("rank-nullity", e.to_string()))?;
    runner(50)
        .run(&(entry(), entry(), 0usize..5, -3i32..=3, pick()), |(i, j, v, d, p)| check_perturbation(i, j, v, d, &p))
        .map_err(|e| fail("perturbation", e.to_string()))?;
    runner(50).run(&(entry(), entry(), -3i32..=3), |(i, j, k)| check_shift_adjunction(i, j, k)).map_err(|e| fail("shift adjunction", e.to_string()))?;
    let cert = |window| build_certificate("a5rad2.alg", A5_RAD2, &Config { window, ..Config::default() }).certificate.to_json();
    ensure(cert((-6, 6)) == cert((-8, 8)), "certificates for [-6,6] and [-8,8] differ")?;
    Ok("rank-nullity x200, d∘d = 0 and homotopy invariance x50, shift adjunction x50, [-6,6] and [-8,8] certificates identical".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("algebra stats", criterion_1),
        ("indecomposables and AR quiver", criterion_2),
        ("unique 2-cluster-tilting subcategory", criterion_3),
        ("Ω² closure", criterion_4),
        ("derived registry", criterion_5),
        ("U(A) is the unique rigid extension", criterion_6),
        ("Ext^1 statements for X in degrees [-1,1]", criterion_7),
        ("four-angle obstruction", criterion_8),
        ("Ext cross-oracle", criterion_9),
        ("property suites", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or("panic".into()))
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail} ({ms} ms)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {detail} ({ms} ms)", k + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
