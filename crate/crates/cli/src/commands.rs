use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use weakyd::exact::LinMap;
use weakyd::examples::{character_module, corpus, corpus_instance, graded_comodule, sign_characters, Instance, Kind};
use weakyd::rep::{base_comodule, base_module, regular_comodule, regular_module};
use weakyd::report::Report;
use weakyd::wmb::{structure_suite, BaseAlgebra};
use weakyd::yd::{check_yd, yd_dual, yd_tensor, YdModule};

use crate::format::{
    field_name, groupoid_block, normalize, object_block, sparse_entries, structure_file, to_text, Coef, Entry2, Entry4,
    InputError, InstanceFile, Loaded,
};

/// What a command produced: text for stdout, text for stderr, and whether
/// every identity held.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub passed: bool,
}

impl Outcome {
    fn new(stdout: String, passed: bool) -> Outcome {
        Outcome { stdout, stderr: String::new(), passed }
    }
}

#[derive(Serialize)]
struct JsonCheck<'a> {
    name: &'a str,
    anchor: &'a str,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    at: Option<&'a [String]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lhs: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rhs: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

pub fn report_json(r: &Report) -> String {
    let checks: Vec<JsonCheck> = r
        .checks
        .iter()
        .map(|c| JsonCheck {
            name: &c.name,
            anchor: &c.anchor,
            passed: c.passed,
            at: c.witness.as_ref().map(|w| w.at.as_slice()),
            lhs: c.witness.as_ref().map(|w| w.lhs.as_str()),
            rhs: c.witness.as_ref().map(|w| w.rhs.as_str()),
            note: c.note.as_deref(),
        })
        .collect();
    let mut m = BTreeMap::new();
    m.insert("title", serde_json::to_value(&r.title).unwrap());
    m.insert("passed", serde_json::Value::Bool(r.passed()));
    m.insert("checks", serde_json::to_value(checks).unwrap());
    to_text(&m)
}

fn render(r: &Report, json: bool) -> String {
    if json {
        report_json(r)
    } else {
        format!("{r}\nverdict: {}\n", if r.passed() { "PASS" } else { "FAIL" })
    }
}

pub fn check(loaded: &Loaded, json: bool) -> Outcome {
    let (rep, _) = structure_suite(&loaded.structure);
    let ok = rep.passed();
    let mut out = Outcome::new(render(&rep, json), ok);
    if let Some(g) = &loaded.groupoid {
        out.stderr =
            format!("expanded from a groupoid: {} objects, {} morphisms\n", g.objects.len(), g.morphisms.len());
    }
    out
}

/// Serialized base algebra; re-readable with [`BaseAlgebraFile`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseAlgebraFile {
    pub field: String,
    pub dim: usize,
    /// Basis of `R` as elements of `A`.
    pub basis: Vec<Vec<(usize, Coef)>>,
    /// `δ(r_i)` has coefficient `c` at `r_j⊗r_k`: `[i, 0, j, k, c]`.
    pub delta: Vec<Entry4>,
    pub counit: Vec<Coef>,
    /// Maps between `R` and `L` in the bases of `R` and `L`, `[i, j, c]`:
    /// the image of basis vector `i` has coefficient `c` at `j`.
    pub sigma: Vec<Entry2>,
    pub sigma_bar: Vec<Entry2>,
    pub tau: Vec<Entry2>,
    pub tau_bar: Vec<Entry2>,
    pub nakayama: Vec<Entry2>,
    /// Basis of `L` as elements of `A`.
    pub l_basis: Vec<Vec<(usize, Coef)>>,
    /// `F ∈ A⊗A`: `[i, j, c]` is the coefficient of `e_i⊗e_j`.
    pub separator: Vec<Entry2>,
    /// `μ∘δ = id` on `R`, recomputed from the serialized data.
    pub mu_delta_identity: bool,
    pub checks: BTreeMap<String, bool>,
}

fn map_entries(m: &LinMap) -> Vec<Entry2> {
    let mut out = Vec::new();
    for i in 0..m.mat.cols() {
        for (j, x) in m.mat.col_sparse(i) {
            out.push((i, j, Coef(x.to_string())));
        }
    }
    out
}

pub fn base_algebra_file(loaded: &Loaded, b: &BaseAlgebra, rep: &Report) -> BaseAlgebraFile {
    let n = loaded.structure.dim();
    let m = b.dim();
    let mut delta = Vec::new();
    for i in 0..m {
        for (k, x) in b.delta.mat.col_sparse(i) {
            delta.push((i, 0, k / m, k % m, Coef(x.to_string())));
        }
    }
    let separator = b.separator.iter().map(|(k, x)| (k / n, k % n, Coef(x.to_string()))).collect();
    let checks = rep
        .checks
        .iter()
        .filter(|c| c.name.starts_with("base/"))
        .map(|c| (c.name.trim_start_matches("base/").to_string(), c.passed))
        .collect();
    let basis: Vec<_> = b.r.basis.clone();
    let mut mu_delta_identity = true;
    for i in 0..m {
        let mut acc = weakyd::exact::SVec::new();
        for (k, x) in b.delta.mat.col_sparse(i) {
            let prod = loaded.structure.mul(&basis[k / m], &basis[k % m]);
            acc = weakyd::exact::axpy(&acc, &x, &prod);
        }
        mu_delta_identity &= acc == basis[i];
    }
    BaseAlgebraFile {
        field: field_name(loaded.field),
        mu_delta_identity,
        dim: m,
        basis: b.r.basis.iter().map(sparse_entries).collect(),
        delta,
        counit: b.counit.iter().map(|x| Coef(x.to_string())).collect(),
        sigma: map_entries(&b.l_to_r),
        sigma_bar: map_entries(&b.l_to_r_bar),
        tau: map_entries(&b.r_to_l),
        tau_bar: map_entries(&b.r_to_l_bar),
        nakayama: map_entries(&b.nakayama),
        l_basis: b.l.basis.iter().map(sparse_entries).collect(),
        separator,
        checks,
    }
}

pub fn base_algebra(loaded: &Loaded) -> Outcome {
    let (rep, b) = structure_suite(&loaded.structure);
    match b {
        Some(b) if rep.passed() => Outcome::new(to_text(&base_algebra_file(loaded, &b, &rep)), true),
        _ => Outcome { stdout: String::new(), stderr: render(&rep, false), passed: false },
    }
}

fn require_base(loaded: &Loaded) -> Result<BaseAlgebra, Outcome> {
    let (rep, b) = structure_suite(&loaded.structure);
    match b {
        Some(b) if rep.passed() => Ok(b),
        _ => Err(Outcome {
            stdout: String::new(),
            stderr: format!("the structure does not pass its identity suite\n{}", render(&rep, false)),
            passed: false,
        }),
    }
}

fn object<'a>(loaded: &'a Loaded, name: &str) -> Result<&'a crate::format::LoadedObject, InputError> {
    loaded.objects.iter().find(|o| o.name == name).ok_or_else(|| InputError(format!("no object named {name:?}")))
}

/// One line per condition, then the full battery.
pub fn check_yd_cmd(loaded: &Loaded, only: Option<&str>, json: bool) -> Result<Outcome, InputError> {
    let b = match require_base(loaded) {
        Ok(b) => b,
        Err(o) => return Ok(o),
    };
    let targets: Vec<_> = match only {
        Some(n) => vec![object(loaded, n)?],
        None => loaded.objects.iter().collect(),
    };
    if targets.is_empty() {
        return Err(InputError("no objects to check".into()));
    }
    let w = &loaded.structure;
    let mut text = String::new();
    let mut all = true;
    for o in targets {
        let (Some(m), Some(c)) = (&o.module, &o.comodule) else {
            return Err(InputError(format!("object {:?} needs both an action and a coaction", o.name)));
        };
        let extras_m: Vec<_> =
            loaded.objects.iter().filter_map(|x| x.module.clone()).filter(|x| x.space != m.space).collect();
        let extras_c: Vec<_> =
            loaded.objects.iter().filter_map(|x| x.comodule.clone()).filter(|x| x.space != c.space).collect();
        let chk = check_yd(w, &b, m, c, &extras_m, &extras_c);
        let v = chk.verdicts;
        let agree = chk.report.verdict("(a) ⇔ (c) ⇔ (e)").unwrap_or(true)
            && chk.report.verdict("(1.a) ⇔ (1.b)").unwrap_or(true)
            && chk.report.verdict("(2.a) ⇔ (2.b)").unwrap_or(true);
        all &= chk.yd.is_some();
        if json {
            text.push_str(&report_json(&chk.report));
            continue;
        }
        let yn = |b: bool| if b { "true" } else { "false" };
        text.push_str(&format!("object {}\n", o.name));
        if chk.report.checks.iter().any(|c| c.name.starts_with("module/") || c.name.starts_with("comodule/"))
            && chk
                .report
                .checks
                .iter()
                .filter(|c| c.name.starts_with("module/") || c.name.starts_with("comodule/"))
                .any(|c| !c.passed)
        {
            text.push_str("  rejected: the module or comodule axioms fail\n");
        } else {
            text.push_str(&format!("  (1.a) right actions agree   {}\n", yn(v.right_actions_agree)));
            text.push_str(&format!("  (1.b) right normalization   {}\n", yn(v.normalized_right)));
            text.push_str(&format!("  (2.a) left actions agree    {}\n", yn(v.left_actions_agree)));
            text.push_str(&format!("  (2.b) left normalization    {}\n", yn(v.normalized_left)));
            text.push_str(&format!("  (a) φ̂ comodule map          {}\n", yn(v.cond_a)));
            text.push_str(&format!("  (c) φ̂ module map            {}\n", yn(v.cond_c)));
            text.push_str(&format!("  (e) Yetter-Drinfeld         {}\n", yn(v.cond_e)));
            if !agree {
                text.push_str("  DEFECT: verdicts that must agree differ\n");
            }
        }
        text.push_str(&format!("  Yetter-Drinfeld module: {}\n", yn(chk.yd.is_some())));
        text.push_str(&indent(&chk.report.to_string()));
    }
    Ok(Outcome::new(text, all))
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("    {l}\n")).collect()
}

fn yd_object(loaded: &Loaded, b: &BaseAlgebra, name: &str) -> Result<Result<YdModule, Outcome>, InputError> {
    let o = object(loaded, name)?;
    let (Some(m), Some(c)) = (&o.module, &o.comodule) else {
        return Err(InputError(format!("object {name:?} needs both an action and a coaction")));
    };
    let chk = check_yd(&loaded.structure, b, m, c, &[], &[]);
    Ok(chk.yd.ok_or_else(|| Outcome {
        stdout: String::new(),
        stderr: format!("object {name:?} is not a Yetter-Drinfeld module\n{}", chk.report),
        passed: false,
    }))
}

fn with_object(file: &InstanceFile, loaded: &Loaded, name: &str, y: &YdModule) -> Result<String, InputError> {
    let mut out = normalize(file)?;
    out.field = field_name(loaded.field);
    out.objects.retain(|o| o.name != name);
    out.objects.push(object_block(name, loaded.structure.dim(), Some(&y.module), Some(&y.comodule)));
    Ok(to_text(&out))
}

pub fn tensor_cmd(
    file: &InstanceFile,
    loaded: &Loaded,
    x: &str,
    y: &str,
    out_name: Option<&str>,
) -> Result<Outcome, InputError> {
    let b = match require_base(loaded) {
        Ok(b) => b,
        Err(o) => return Ok(o),
    };
    let xm = match yd_object(loaded, &b, x)? {
        Ok(v) => v,
        Err(o) => return Ok(o),
    };
    let ym = match yd_object(loaded, &b, y)? {
        Ok(v) => v,
        Err(o) => return Ok(o),
    };
    match yd_tensor(&loaded.structure, &b, &xm, &ym) {
        Ok((t, _)) => {
            let name = out_name.map(str::to_string).unwrap_or_else(|| format!("{x}⊗{y}"));
            let mut o = Outcome::new(with_object(file, loaded, &name, &t)?, true);
            o.stderr = format!("{name}: dimension {}, Yetter-Drinfeld suite passed\n", t.dim());
            Ok(o)
        }
        Err(e) => Ok(Outcome { stdout: String::new(), stderr: format!("tensor product failed: {e}\n"), passed: false }),
    }
}

pub fn dual_cmd(file: &InstanceFile, loaded: &Loaded, x: &str, out_name: Option<&str>) -> Result<Outcome, InputError> {
    if loaded.structure.antipode.is_none() {
        return Err(InputError(
            "dual needs a regular weak multiplier Hopf algebra: the instance has no antipode".into(),
        ));
    }
    let b = match require_base(loaded) {
        Ok(b) => b,
        Err(o) => return Ok(o),
    };
    if !weakyd::wmb::is_regular_hopf(&loaded.structure, &b) {
        return Err(InputError("dual needs a regular weak multiplier Hopf algebra: the antipode checks fail".into()));
    }
    let xm = match yd_object(loaded, &b, x)? {
        Ok(v) => v,
        Err(o) => return Ok(o),
    };
    match yd_dual(&loaded.structure, &b, &xm) {
        Ok(d) => {
            let name = out_name.map(str::to_string).unwrap_or_else(|| format!("{x}*"));
            let mut o = Outcome::new(with_object(file, loaded, &name, &d.dual)?, true);
            let tri: Vec<String> = d
                .report
                .checks
                .iter()
                .filter(|c| c.name.starts_with("triangle") || c.name.starts_with("ev") || c.name.starts_with("coev"))
                .map(|c| format!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name))
                .collect();
            o.stderr = format!("{name}: dimension {}\n{}\n", d.dual.dim(), tri.join("\n"));
            Ok(o)
        }
        Err(e) => Ok(Outcome { stdout: String::new(), stderr: format!("dual failed: {e}\n"), passed: false }),
    }
}

/// A corpus instance as a file, with its standard Yetter-Drinfeld objects.
pub fn example_file(inst: &Instance, as_groupoid: bool) -> InstanceFile {
    let w = &inst.structure;
    let n = w.dim();
    let mut file = if as_groupoid {
        let alg = match inst.kind {
            Kind::GroupoidAlgebra => "groupoid",
            Kind::FunctionAlgebra => "function",
        };
        InstanceFile {
            field: "Q".into(),
            name: None,
            groupoid: Some(groupoid_block(&inst.groupoid, alg)),
            basis: vec![],
            mult: vec![],
            t1: vec![],
            t2: vec![],
            t3: vec![],
            t4: vec![],
            e_left: vec![],
            e_right: vec![],
            counit: vec![],
            antipode: None,
            objects: vec![],
        }
    } else {
        structure_file(w, "Q")
    };
    file.name = Some(inst.name.clone());
    file.objects.push(object_block("A", n, Some(&regular_module(w)), Some(&regular_comodule(w))));
    if let Ok(b) = weakyd::wmb::base_algebra(w) {
        if let (Ok(m), Ok(c)) = (base_module(w, &b), base_comodule(w, &b)) {
            file.objects.push(object_block("R", n, Some(&m), Some(&c)));
        }
    }
    if inst.kind == Kind::GroupoidAlgebra && inst.groupoid.objects.len() == 1 {
        for (k, chi) in sign_characters(&inst.groupoid).iter().enumerate() {
            for h in 0..n {
                let name = format!("chi{k}.{}", inst.groupoid.morphisms[h].name);
                let m = character_module(w, "x", chi);
                let c = graded_comodule(w, "x", h);
                file.objects.push(object_block(&name, n, Some(&m), Some(&c)));
            }
        }
    }
    file
}

pub fn examples_cmd(name: Option<&str>, as_groupoid: bool) -> Result<Outcome, InputError> {
    match name {
        None => {
            let lines: Vec<String> =
                corpus().iter().map(|i| format!("{}\t{}\t{}", i.name, i.structure.dim(), kind_name(i.kind))).collect();
            Ok(Outcome::new(format!("{}\n", lines.join("\n")), true))
        }
        Some(n) => {
            let inst = corpus_instance(n).ok_or_else(|| InputError(format!("no built-in example {n:?}")))?;
            Ok(Outcome::new(to_text(&example_file(&inst, as_groupoid)), true))
        }
    }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::GroupoidAlgebra => "groupoid algebra",
        Kind::FunctionAlgebra => "function algebra",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{load, read_instance};

    fn loaded(name: &str) -> (InstanceFile, Loaded) {
        let file = example_file(&corpus_instance(name).unwrap(), false);
        let text = to_text(&file);
        let file = read_instance(&text).unwrap();
        let l = load(&file, None).unwrap();
        (file, l)
    }

    #[test]
    fn base_algebra_file_reads_back() {
        for name in ["kP2", "k^P2", "kS3"] {
            let (_, l) = loaded(name);
            let out = base_algebra(&l);
            assert!(out.passed, "{name}");
            let parsed: BaseAlgebraFile = serde_json::from_str(&out.stdout).unwrap();
            assert!(parsed.mu_delta_identity);
            assert_eq!(to_text(&parsed), out.stdout, "{name}");
        }
    }

    #[test]
    fn examples_carry_their_objects() {
        let (_, l) = loaded("kZ3");
        let names: Vec<_> = l.objects.iter().map(|o| o.name.as_str()).collect();
        assert_eq!(names, ["A", "R", "chi0.1", "chi0.g", "chi0.g2"]);
        let (_, l) = loaded("k^P2");
        assert_eq!(l.objects.len(), 2);
    }
}
