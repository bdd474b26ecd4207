//! Acceptance criteria 1 to 8. Runs without the libtest harness so the
//! PASS/FAIL lines always print; exits non-zero if any criterion fails.

use std::process::Command;
use std::time::Instant;

use weakyd::algebra::{check_multiplier_algebra, multiplier_algebra, Multiplier};
use weakyd::exact::{Mat, SVec, Scalar};
use weakyd::examples::{
    character_module, corpus, graded_comodule, groupoid_algebra, sign_characters, standard_comodules, standard_modules,
    FiniteGroupoid, Instance,
};
use weakyd::rep::{
    e2_map, firm_tensor, induced_r_actions_comodule, induced_r_actions_module, iota_pi_mixed, regular_comodule,
    regular_module, AComodule, AModule,
};
use weakyd::wmb::{
    base_algebra, separator_expressions, extend_comultiplication, is_regular_hopf, structure_suite, BaseAlgebra,
    Component, WmbStructure,
};
use weakyd::yd::{check_unit_laws, check_yd, find_yd_structures, kappa, phi_hat_inverse, yd_dual, yd_tensor, YdModule};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn unit(i: usize) -> SVec {
    vec![(i, Scalar::one())]
}

/// Entries to corrupt: all of them up to dimension 6, a fixed stride sample
/// above.
fn mutation_sites(w: &WmbStructure) -> Vec<(Component, usize, usize)> {
    let mut out = Vec::new();
    for c in Component::ALL {
        let Some((rows, cols)) = w.component_shape(c) else { continue };
        let total = rows * cols;
        let step = if w.dim() <= 6 { 1 } else { (total / 60).max(1) | 1 };
        let mut k = 0;
        while k < total {
            out.push((c, k / cols, k % cols));
            k += step;
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_weakyd");
    for inst in corpus() {
        let (rep, _) = structure_suite(&inst.structure);
        ensure(rep.passed(), || format!("{} fails its suite:\n{rep}", inst.name))?;
        let out = Command::new(bin).args(["examples", &inst.name]).output().map_err(|e| e.to_string())?;
        let path = dir.path().join("instance.json");
        std::fs::write(&path, &out.stdout).map_err(|e| e.to_string())?;
        let st = Command::new(bin).arg("check").arg(&path).output().map_err(|e| e.to_string())?;
        ensure(st.status.code() == Some(0), || format!("weakyd check {} exits {:?}", inst.name, st.status.code()))?;
    }
    let (mut injected, mut detected) = (0usize, 0usize);
    let mut missed = Vec::new();
    for inst in corpus() {
        let w = &inst.structure;
        for (c, r, col) in mutation_sites(w) {
            injected += 1;
            let v = w.entry(c, r, col).add(&Scalar::one());
            let caught = match w.with_entry(c, r, col, v) {
                Ok(bad) => !structure_suite(&bad).0.passed(),
                Err(_) => true,
            };
            if caught {
                detected += 1;
            } else if missed.len() < 5 {
                missed.push(format!("{} {} ({r},{col})", inst.name, c.name()));
            }
        }
    }
    let cover = detected as f64 / injected as f64;
    ensure(cover >= 0.95, || format!("coverage {detected}/{injected}, missed e.g. {missed:?}"))?;
    Ok(format!("corpus passes; {detected}/{injected} corruptions detected ({:.1}%)", 100.0 * cover))
}

fn criterion_2() -> Outcome {
    let mut sizes = Vec::new();
    for n in [2usize, 3, 4] {
        let w = groupoid_algebra(&FiniteGroupoid::pair(n)).map_err(|e| e.to_string())?;
        let b = base_algebra(&w).map_err(|e| e.to_string())?;
        let tag = format!("kP{n}");
        let m = b.dim();
        ensure(m == n, || format!("{tag}: dim R = {m}"))?;
        for i in 0..m {
            let r = unit(i);
            ensure(b.product.mat.apply_sparse(&b.coproduct(&r)) == r, || format!("{tag}: μδ ≠ id at r{i}"))?;
            // δ(r) = (r⊗1)F in A⊗A
            let lhs = b.embed_pair(&b.coproduct(&r));
            let rhs = w.mul2(&w.tensor_one(&b.element(&r)).map_err(|e| e.to_string())?, &b.separator);
            ensure(lhs == rhs, || format!("{tag}: δ(r{i}) ≠ (r{i}⊗1)F"))?;
            for j in 0..m {
                let s = unit(j);
                let left = b.eps(&b.mul(&r, &s));
                let right = b.eps(&b.mul(&b.nakayama.mat.apply_sparse(&s), &r));
                ensure(left == right, || format!("{tag}: ε(r{i}r{j}) ≠ ε(ϑ(r{j})r{i})"))?;
            }
        }
        let id_l = Mat::identity(b.l.dim());
        let id_r = Mat::identity(m);
        ensure(b.r_to_l.mat.mul(&b.l_to_r.mat) == id_l, || format!("{tag}: τσ ≠ id"))?;
        ensure(b.r_to_l_bar.mat.mul(&b.l_to_r_bar.mat) == id_l, || format!("{tag}: τ̄σ̄ ≠ id"))?;
        ensure(b.l_to_r.mat.mul(&b.r_to_l.mat) == id_r, || format!("{tag}: στ ≠ id"))?;
        ensure(b.nakayama.mat == id_r, || format!("{tag}: ϑ ≠ id"))?;
        for a in 0..w.dim() {
            let ex = separator_expressions(&w, &b, &unit(a)).map_err(|e| e.to_string())?;
            ensure(ex.iter().all(|x| *x == ex[0]), || format!("{tag}: the four expressions differ at basis {a}"))?;
        }
        sizes.push(m);
    }
    Ok(format!("kP2, kP3, kP4: R dims {sizes:?}, all identities exact"))
}

fn criterion_3() -> Outcome {
    let mut pairs = 0;
    for inst in corpus() {
        let w = &inst.structure;
        let b = base_algebra(w).map_err(|e| e.to_string())?;
        let mods = standard_modules(&inst).map_err(|e| e.to_string())?;
        let comods = standard_comodules(&inst).map_err(|e| e.to_string())?;
        // the regular objects only on the larger instance
        let big = w.dim() > 6;
        let mods: Vec<_> = mods.into_iter().filter(|(n, _)| !big || n == "A" || n == "R").collect();
        let comods: Vec<_> = comods.into_iter().filter(|(n, _)| !big || n == "A" || n == "R").collect();
        let mx: Vec<_> = mods
            .iter()
            .map(|(_, v)| induced_r_actions_module(w, &b, v))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let cx: Vec<_> = comods
            .iter()
            .map(|(_, c)| induced_r_actions_comodule(w, &b, c))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for (i, (vn, v)) in mods.iter().enumerate() {
            for (j, (cn, c)) in comods.iter().enumerate() {
                let at = || format!("{} {vn}/{cn}", inst.name);
                let t_mv = firm_tensor(&b, &cx[j], &mx[i]).map_err(|e| e.to_string())?;
                let t_vm = firm_tensor(&b, &mx[i], &cx[j]).map_err(|e| e.to_string())?;
                for t in [&t_mv, &t_vm] {
                    ensure(t.pi.mat.mul(&t.iota.mat) == Mat::identity(t.dim()), || format!("{}: πι ≠ id", at()))?;
                }
                let (mv, vm) = iota_pi_mixed(w, &b, c, v).map_err(|e| e.to_string())?;
                ensure(mv.mat == t_mv.idempotent(), || format!("{}: closed form on M⊗V differs", at()))?;
                ensure(vm.mat == t_vm.idempotent(), || format!("{}: closed form on V⊗M differs", at()))?;
                pairs += 1;
            }
            for (k, (un, u)) in mods.iter().enumerate() {
                let t = firm_tensor(&b, &mx[i], &mx[k]).map_err(|e| e.to_string())?;
                ensure(t.pi.mat.mul(&t.iota.mat) == Mat::identity(t.dim()), || {
                    format!("{} {vn}/{un}: πι ≠ id", inst.name)
                })?;
                let e2 = e2_map(w, v, u).map_err(|e| e.to_string())?;
                ensure(e2.mat == t.idempotent(), || format!("{} {vn}/{un}: E₂ differs from ιπ", inst.name))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs: πι = id, ιπ matches E₂ and the closed forms"))
}

struct Case {
    label: String,
    inst: Instance,
    module: AModule,
    comodule: AComodule,
    expect_yd: bool,
}

fn search_positives(inst: &Instance, out: &mut Vec<Case>, negatives: &mut Vec<Case>) -> Result<(), String> {
    let w = &inst.structure;
    let b = base_algebra(w).map_err(|e| e.to_string())?;
    let mods = standard_modules(inst).map_err(|e| e.to_string())?;
    for (name, v) in mods {
        if v.dim() * w.dim() > 16 || name == "A" && w.dim() > 2 {
            continue;
        }
        let found = find_yd_structures(w, &b, &v, 64, 12).map_err(|e| e.to_string())?;
        for (k, y) in found.structures.into_iter().enumerate() {
            out.push(Case {
                label: format!("{} {name} #{k}", inst.name),
                inst: inst.clone(),
                module: y.module,
                comodule: y.comodule,
                expect_yd: true,
            });
        }
        for (k, c) in found.negatives.into_iter().enumerate().take(3) {
            negatives.push(Case {
                label: format!("{} {name} negative #{k}", inst.name),
                inst: inst.clone(),
                module: v.clone(),
                comodule: c,
                expect_yd: false,
            });
        }
    }
    Ok(())
}

fn battery() -> Result<Vec<Case>, String> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for name in ["kZ2", "kZ3", "kS3", "kP2", "k^P2"] {
        let inst = corpus().into_iter().find(|i| i.name == name).unwrap();
        search_positives(&inst, &mut pos, &mut neg)?;
    }
    let kp2 = corpus().into_iter().find(|i| i.name == "kP2").unwrap();
    neg.push(Case {
        label: "kP2 regular action with regular coaction".into(),
        module: regular_module(&kp2.structure),
        comodule: regular_comodule(&kp2.structure),
        inst: kp2,
        expect_yd: false,
    });
    let s3 = corpus().into_iter().find(|i| i.name == "kS3").unwrap();
    for (k, chi) in sign_characters(&s3.groupoid).iter().enumerate() {
        for h in 1..s3.structure.dim() {
            neg.push(Case {
                label: format!("kS3 char{k} graded by {}", s3.groupoid.morphisms[h].name),
                module: character_module(&s3.structure, "x", chi),
                comodule: graded_comodule(&s3.structure, "x", h),
                inst: s3.clone(),
                expect_yd: false,
            });
        }
    }
    pos.extend(neg);
    Ok(pos)
}

fn criterion_4(cases: &[Case]) -> Outcome {
    let (mut np, mut nn) = (0, 0);
    for c in cases {
        let w = &c.inst.structure;
        let b = base_algebra(w).map_err(|e| e.to_string())?;
        let chk = check_yd(w, &b, &c.module, &c.comodule, &[], &[]);
        let v = chk.verdicts;
        ensure(v.cond_a == v.cond_c && v.cond_c == v.cond_e, || {
            format!("{}: (a) {} (c) {} (e) {}\n{}", c.label, v.cond_a, v.cond_c, v.cond_e, chk.report)
        })?;
        ensure(v.conditions_agree(), || format!("{}: verdicts disagree\n{}", c.label, chk.report))?;
        ensure(chk.yd.is_some() == c.expect_yd, || format!("{}: expected YD = {}", c.label, c.expect_yd))?;
        if c.expect_yd {
            np += 1;
        } else {
            nn += 1;
        }
    }
    ensure(cases.len() >= 20 && np > 0 && nn > 0, || format!("battery too small: {np} positive, {nn} negative"))?;
    Ok(format!("{} instances ({np} positive, {nn} negative): (a), (c), (e) agree", cases.len()))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    let mut hopf = 0;
    for inst in corpus() {
        let w = &inst.structure;
        let b = base_algebra(w).map_err(|e| e.to_string())?;
        if !is_regular_hopf(w, &b) {
            continue;
        }
        hopf += 1;
        let big = w.dim() > 6;
        let mods: Vec<_> = standard_modules(&inst)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|(n, _)| !big || n == "A" || n == "R")
            .collect();
        let comods: Vec<_> = standard_comodules(&inst)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|(n, _)| !big || n == "A" || n == "R")
            .collect();
        for (vn, v) in &mods {
            for (mn, m) in &comods {
                let at = format!("{} {vn}/{mn}", inst.name);
                let inv = phi_hat_inverse(w, &b, v, m).map_err(|e| format!("{at}: {e}"))?;
                let f = &inv.forward.map.mat;
                let g = &inv.inverse.mat;
                ensure(g.mul(f) == Mat::identity(f.cols()), || format!("{at}: φ̂⁻¹φ̂ ≠ id"))?;
                ensure(f.mul(g) == Mat::identity(f.rows()), || format!("{at}: φ̂φ̂⁻¹ ≠ id"))?;
                ensure(inv.report.passed(), || format!("{at}:\n{}", inv.report))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} module/comodule pairs over {hopf} Hopf instances: φ̂ invertible, λ(M⊗S)ϱ identity holds"))
}

fn searched_yd(name: &str) -> Result<(Instance, BaseAlgebra, Vec<YdModule>), String> {
    let inst = corpus().into_iter().find(|i| i.name == name).unwrap();
    let w = &inst.structure;
    let b = base_algebra(w).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for (mname, v) in standard_modules(&inst).map_err(|e| e.to_string())? {
        if v.dim() * w.dim() > 16 || mname == "A" && w.dim() > 2 {
            continue;
        }
        out.extend(find_yd_structures(w, &b, &v, 64, 12).map_err(|e| e.to_string())?.structures);
    }
    Ok((inst, b, out))
}

fn criterion_6() -> Outcome {
    let mut pairs = 0;
    for name in ["kZ2", "kP2"] {
        let (inst, b, found) = searched_yd(name)?;
        let w = &inst.structure;
        ensure(!found.is_empty(), || format!("{name}: search found nothing"))?;
        for (i, x) in found.iter().enumerate() {
            let units = check_unit_laws(w, &b, x).map_err(|e| e.to_string())?;
            ensure(units.passed(), || format!("{name} #{i}: unit laws\n{units}"))?;
            for (j, y) in found.iter().enumerate() {
                let (t, _) = yd_tensor(w, &b, x, y).map_err(|e| format!("{name} #{i}⊗#{j}: {e}"))?;
                let chk = check_yd(w, &b, &t.module, &t.comodule, &[], &[]);
                ensure(chk.yd.is_some(), || format!("{name} #{i}⊗#{j} fails:\n{}", chk.report))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} tensor products re-pass the suite; unit isomorphisms commute with both structures"))
}

fn criterion_7(cases: &[Case]) -> Outcome {
    let mut count = 0;
    for c in cases.iter().filter(|c| c.expect_yd) {
        let w = &c.inst.structure;
        let b = base_algebra(w).map_err(|e| e.to_string())?;
        if !is_regular_hopf(w, &b) {
            continue;
        }
        let x = check_yd(w, &b, &c.module, &c.comodule, &[], &[]).yd.ok_or_else(|| format!("{}: not YD", c.label))?;
        let d = yd_dual(w, &b, &x).map_err(|e| format!("{}: {e}", c.label))?;
        for name in [
            "ev module map",
            "ev comodule map",
            "coev module map",
            "coev comodule map",
            "triangle on X",
            "triangle on X*",
        ] {
            ensure(d.report.verdict(name) == Some(true), || format!("{}: {name}\n{}", c.label, d.report))?;
        }
        let chk = check_yd(w, &b, &d.dual.module, &d.dual.comodule, &[], &[]);
        ensure(chk.yd.is_some(), || format!("{}: dual fails\n{}", c.label, chk.report))?;
        let k = kappa(&b, &x, &d).map_err(|e| e.to_string())?;
        ensure(k.bijective(), || format!("{}: κ rank {} of {}", c.label, k.rank, k.carrier_dim))?;
        count += 1;
    }
    ensure(count > 0, || "no Hopf-flagged positives".into())?;
    Ok(format!("{count} duals: triangles exact, ev/coev morphisms, κ bijective"))
}

fn criterion_8() -> Outcome {
    for inst in corpus() {
        let w = &inst.structure;
        let ma = multiplier_algebra(&w.algebra).map_err(|e| e.to_string())?;
        let rep = check_multiplier_algebra(&w.algebra, &ma);
        ensure(rep.verdict("embedding bijective") == Some(true), || format!("{}:\n{rep}", inst.name))?;
        ensure(ma.dim() == w.dim(), || format!("{}: dim M(A) = {}", inst.name, ma.dim()))?;
        let ext = extend_comultiplication(w, &ma).map_err(|e| e.to_string())?;
        ensure(ext.apply(&ma.unit_coords) == w.e, || format!("{}: Δ̄(1) ≠ E", inst.name))?;
        ensure(ext.solution_dim == ma.dim(), || {
            format!("{}: solution space {} vs dim M(A) {}", inst.name, ext.solution_dim, ma.dim())
        })?;
        ensure(ext.report.passed(), || format!("{}:\n{}", inst.name, ext.report))?;
        // the corpus algebras are unital, so the identity multiplier is the unit
        let u = w.unit().map_err(|e| e.to_string())?;
        ensure(ma.unit == Multiplier::of_element(&w.algebra, u), || format!("{}: unit multiplier", inst.name))?;
    }
    Ok("M(A) ≅ A on the corpus; Δ̄(1) = E with a unique extension".into())
}

fn main() {
    // libtest flags such as --nocapture are accepted and ignored
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let start = Instant::now();
    let cases = battery();
    let cases_ref = cases.as_ref();
    let run: Vec<(usize, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(criterion_2)),
        (3, Box::new(criterion_3)),
        (4, Box::new(|| criterion_4(cases_ref.map_err(Clone::clone)?))),
        (5, Box::new(criterion_5)),
        (6, Box::new(criterion_6)),
        (7, Box::new(|| criterion_7(cases_ref.map_err(Clone::clone)?))),
        (8, Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (k, f) in run {
        let t = Instant::now();
        match f() {
            Ok(msg) => println!("PASS criterion {k}: {msg} [{:.1}s]", t.elapsed().as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {k}: {msg}");
            }
        }
    }
    println!("acceptance: {} of 8 criteria pass in {:.1}s", 8 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
