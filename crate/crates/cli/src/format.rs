//! The JSON instance format.
//!
//! Structure constants are sparse coefficient lists. Every coefficient is an
//! exact literal string (`"3"`, `"-1/2"`); indices refer to basis positions.
//!
//! * `mult`: `[i, j, k, c]`, `e_i e_j` has coefficient `c` at `e_k`.
//! * `T1` … `T4`, `E_left`, `E_right`: `[i, j, k, l, c]`: the image of
//!   `e_i⊗e_j` has coefficient `c` at `e_k⊗e_l`.
//! * `counit`: one literal per basis element.
//! * `antipode`: `[i, j, c]`, `S(e_i)` has coefficient `c` at `e_j`.
//! * `objects[].action`: `[v, a, w, c]`, `x_v·e_a` has coefficient `c` at `x_w`.
//! * `objects[].lambda`, `objects[].rho`: `[m, a, n, b, c]`: the image of
//!   `x_m⊗e_a` has coefficient `c` at `x_n⊗e_b`.
//!
//! A `groupoid` block may replace the structure constants.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use weakyd::algebra::Algebra;
use weakyd::exact::{tensor_space, Field, LinMap, Mat, SVec, Scalar, Space};
use weakyd::examples::{function_algebra, groupoid_algebra, FiniteGroupoid, Morphism};
use weakyd::rep::{AComodule, AModule};
use weakyd::wmb::WmbStructure;

/// An exact literal, validated for syntax while the JSON is read so that
/// errors carry a line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coef(pub String);

impl Serialize for Coef {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Coef {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Coef, D::Error> {
        let s = String::deserialize(d)?;
        Field::Rational.parse(&s).map_err(|_| {
            de::Error::custom(format!("malformed coefficient {s:?}: expected an integer or a fraction p/q"))
        })?;
        Ok(Coef(s))
    }
}

pub type Entry2 = (usize, usize, Coef);
pub type Entry3 = (usize, usize, usize, Coef);
pub type Entry4 = (usize, usize, usize, usize, Coef);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismBlock {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidBlock {
    /// `"groupoid"` for the groupoid algebra, `"function"` for its dual.
    pub algebra: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismBlock>,
    /// `[g, h, k]` by name: `g∘h = k`.
    pub compose: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectBlock {
    pub name: String,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Entry3>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<Entry4>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<Entry4>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    /// `"Q"` or `"F<p>"`.
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groupoid: Option<GroupoidBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mult: Vec<Entry3>,
    #[serde(default, rename = "T1", skip_serializing_if = "Vec::is_empty")]
    pub t1: Vec<Entry4>,
    #[serde(default, rename = "T2", skip_serializing_if = "Vec::is_empty")]
    pub t2: Vec<Entry4>,
    #[serde(default, rename = "T3", skip_serializing_if = "Vec::is_empty")]
    pub t3: Vec<Entry4>,
    #[serde(default, rename = "T4", skip_serializing_if = "Vec::is_empty")]
    pub t4: Vec<Entry4>,
    #[serde(default, rename = "E_left", skip_serializing_if = "Vec::is_empty")]
    pub e_left: Vec<Entry4>,
    #[serde(default, rename = "E_right", skip_serializing_if = "Vec::is_empty")]
    pub e_right: Vec<Entry4>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub counit: Vec<Coef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Entry2>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<ObjectBlock>,
}

/// Input errors; all map to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(msg.into()))
}

pub fn parse_field(s: &str) -> Result<Field, InputError> {
    let t = s.trim();
    if t == "Q" {
        return Ok(Field::Rational);
    }
    match t.strip_prefix('F').and_then(|p| p.parse::<u32>().ok()) {
        Some(p) => Field::prime(p).map_err(|e| InputError(format!("field {t:?}: {e}"))),
        None => err(format!("field {t:?}: expected \"Q\" or \"F<p>\" with p prime")),
    }
}

pub fn field_name(f: Field) -> String {
    match f {
        Field::Rational => "Q".into(),
        Field::Prime(p) => format!("F{p}"),
    }
}

pub fn read_instance(text: &str) -> Result<InstanceFile, InputError> {
    serde_json::from_str(text).map_err(|e| InputError(format!("parse error: {e}")))
}

// ---------- normalized output ----------

/// Pretty JSON with every array of plain values on one line.
pub fn to_text<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("serializable");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    out
}

fn flat(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).unwrap());
                out.push_str(": ");
                write_value(x, depth + 1, out);
                if i + 1 < m.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(a) if a.iter().all(flat) => {
            let items: Vec<String> = a.iter().map(|x| serde_json::to_string(x).unwrap()).collect();
            out.push('[');
            out.push_str(&items.join(", "));
            out.push(']');
        }
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(x, depth + 1, out);
                if i + 1 < a.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        _ => out.push_str(&serde_json::to_string(v).unwrap()),
    }
}

/// Canonical literals, zero entries dropped, entries sorted.
pub fn normalize(file: &InstanceFile) -> Result<InstanceFile, InputError> {
    let f = parse_field(&file.field)?;
    let mut out = file.clone();
    out.field = field_name(f);
    let canon = |c: &Coef, what: &str| -> Result<Scalar, InputError> {
        f.parse(&c.0).map_err(|e| InputError(format!("{what}: {e}")))
    };
    fn norm<K: Ord + Clone>(
        entries: &[(K, Coef)],
        what: &str,
        canon: &dyn Fn(&Coef, &str) -> Result<Scalar, InputError>,
    ) -> Result<Vec<(K, Coef)>, InputError> {
        let mut m: BTreeMap<K, Scalar> = BTreeMap::new();
        for (k, c) in entries {
            let v = canon(c, what)?;
            if m.insert(k.clone(), v).is_some() {
                return err(format!("{what}: duplicate entry"));
            }
        }
        Ok(m.into_iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k, Coef(v.to_string()))).collect())
    }
    let e3 = |v: &[Entry3], what: &str| -> Result<Vec<Entry3>, InputError> {
        let kv: Vec<((usize, usize, usize), Coef)> = v.iter().map(|(a, b, c, x)| ((*a, *b, *c), x.clone())).collect();
        Ok(norm(&kv, what, &canon)?.into_iter().map(|((a, b, c), x)| (a, b, c, x)).collect())
    };
    let e4 = |v: &[Entry4], what: &str| -> Result<Vec<Entry4>, InputError> {
        let kv: Vec<((usize, usize, usize, usize), Coef)> =
            v.iter().map(|(a, b, c, d, x)| ((*a, *b, *c, *d), x.clone())).collect();
        Ok(norm(&kv, what, &canon)?.into_iter().map(|((a, b, c, d), x)| (a, b, c, d, x)).collect())
    };
    out.mult = e3(&file.mult, "mult")?;
    out.t1 = e4(&file.t1, "T1")?;
    out.t2 = e4(&file.t2, "T2")?;
    out.t3 = e4(&file.t3, "T3")?;
    out.t4 = e4(&file.t4, "T4")?;
    out.e_left = e4(&file.e_left, "E_left")?;
    out.e_right = e4(&file.e_right, "E_right")?;
    out.counit =
        file.counit.iter().map(|c| canon(c, "counit").map(|v| Coef(v.to_string()))).collect::<Result<_, _>>()?;
    if let Some(s) = &file.antipode {
        let kv: Vec<((usize, usize), Coef)> = s.iter().map(|(a, b, x)| ((*a, *b), x.clone())).collect();
        out.antipode = Some(norm(&kv, "antipode", &canon)?.into_iter().map(|((a, b), x)| (a, b, x)).collect());
    }
    for (o, src) in out.objects.iter_mut().zip(&file.objects) {
        let what = |k: &str| format!("object {:?} {k}", src.name);
        if let Some(a) = &src.action {
            o.action = Some(e3(a, &what("action"))?);
        }
        if let Some(l) = &src.lambda {
            o.lambda = Some(e4(l, &what("lambda"))?);
        }
        if let Some(r) = &src.rho {
            o.rho = Some(e4(r, &what("rho"))?);
        }
    }
    Ok(out)
}

// ---------- conversion to structures ----------

/// A loaded instance: the structure and the named objects.
pub struct Loaded {
    pub field: Field,
    pub structure: WmbStructure,
    pub groupoid: Option<FiniteGroupoid>,
    pub objects: Vec<LoadedObject>,
}

pub struct LoadedObject {
    pub name: String,
    pub module: Option<AModule>,
    pub comodule: Option<AComodule>,
}

fn space(labels: &[String], what: &str) -> Result<Space, InputError> {
    Space::new(labels.to_vec()).map_err(|e| InputError(format!("{what} basis: {e}")))
}

fn scalar(f: Field, c: &Coef, what: &str) -> Result<Scalar, InputError> {
    f.parse(&c.0).map_err(|e| InputError(format!("{what}: {e}")))
}

fn check_range(what: &str, k: usize, idx: &[usize], dims: &[usize]) -> Result<(), InputError> {
    for (p, (&i, &d)) in idx.iter().zip(dims).enumerate() {
        if i >= d {
            return err(format!("{what} entry {k}: index {i} in position {} out of range (dimension {d})", p + 1));
        }
    }
    Ok(())
}

/// `[i, j, …, c]` entries into a matrix with column `i·m + j` and row
/// `k·q + l`.
fn mat4(f: Field, v: &[Entry4], what: &str, dims: [usize; 4]) -> Result<Mat, InputError> {
    let mut m = Mat::zeros(dims[2] * dims[3], dims[0] * dims[1]);
    for (k, (a, b, c, d, x)) in v.iter().enumerate() {
        check_range(what, k, &[*a, *b, *c, *d], &dims)?;
        m.set(c * dims[3] + d, a * dims[1] + b, scalar(f, x, what)?);
    }
    Ok(m)
}

fn mat3(f: Field, v: &[Entry3], what: &str, dims: [usize; 3]) -> Result<Mat, InputError> {
    let mut m = Mat::zeros(dims[2], dims[0] * dims[1]);
    for (k, (a, b, c, x)) in v.iter().enumerate() {
        check_range(what, k, &[*a, *b, *c], &dims)?;
        m.set(*c, a * dims[1] + b, scalar(f, x, what)?);
    }
    Ok(m)
}

fn groupoid_from_block(g: &GroupoidBlock) -> Result<FiniteGroupoid, InputError> {
    let obj = |s: &str| {
        g.objects.iter().position(|o| o == s).ok_or_else(|| InputError(format!("groupoid: unknown object {s:?}")))
    };
    let morphisms: Vec<Morphism> = g
        .morphisms
        .iter()
        .map(|m| Ok(Morphism { name: m.name.clone(), source: obj(&m.source)?, target: obj(&m.target)? }))
        .collect::<Result<_, InputError>>()?;
    let mor = |s: &str| {
        morphisms
            .iter()
            .position(|m| m.name == s)
            .ok_or_else(|| InputError(format!("groupoid: unknown morphism {s:?}")))
    };
    let n = morphisms.len();
    let mut compose = vec![vec![None; n]; n];
    for (a, b, c) in &g.compose {
        let (i, j, k) = (mor(a)?, mor(b)?, mor(c)?);
        if compose[i][j].replace(k).is_some() {
            return err(format!("groupoid: {a}∘{b} given twice"));
        }
    }
    FiniteGroupoid::new(g.objects.clone(), morphisms, compose).map_err(|e| InputError(format!("groupoid: {e}")))
}

pub fn groupoid_block(g: &FiniteGroupoid, algebra: &str) -> GroupoidBlock {
    let mut compose = Vec::new();
    for (i, row) in g.compose.iter().enumerate() {
        for (j, k) in row.iter().enumerate() {
            if let Some(k) = k {
                compose.push((g.morphisms[i].name.clone(), g.morphisms[j].name.clone(), g.morphisms[*k].name.clone()));
            }
        }
    }
    GroupoidBlock {
        algebra: algebra.into(),
        objects: g.objects.clone(),
        morphisms: g
            .morphisms
            .iter()
            .map(|m| MorphismBlock {
                name: m.name.clone(),
                source: g.objects[m.source].clone(),
                target: g.objects[m.target].clone(),
            })
            .collect(),
        compose,
    }
}

/// Reads the structure, expanding a groupoid block first. `field` overrides
/// the file's descriptor.
pub fn load(file: &InstanceFile, field: Option<Field>) -> Result<Loaded, InputError> {
    let f = match field {
        Some(f) => f,
        None => parse_field(&file.field)?,
    };
    let (file, groupoid) = match &file.groupoid {
        Some(g) => {
            if !file.basis.is_empty() || !file.mult.is_empty() || !file.t1.is_empty() || !file.counit.is_empty() {
                return err("a groupoid block excludes explicit structure constants");
            }
            let gr = groupoid_from_block(g)?;
            let w = match g.algebra.as_str() {
                "groupoid" => groupoid_algebra(&gr),
                "function" => function_algebra(&gr),
                other => return err(format!("groupoid: algebra must be \"groupoid\" or \"function\", not {other:?}")),
            }
            .map_err(|e| InputError(format!("groupoid: {e}")))?;
            let mut expanded = structure_file(&w, &file.field);
            expanded.name = file.name.clone();
            expanded.objects = file.objects.clone();
            (expanded, Some(gr))
        }
        None => (file.clone(), None),
    };
    let n = file.basis.len();
    if n == 0 {
        return err("basis is empty");
    }
    let a = space(&file.basis, "algebra")?;
    let aa = tensor_space(&a, &a);
    let mult = mat3(f, &file.mult, "mult", [n, n, n])?;
    let alg = Algebra::new(a.clone(), &LinMap::new(aa.clone(), a.clone(), mult).unwrap())
        .map_err(|e| InputError(format!("mult: {e}")))?;
    let lin = |v: &[Entry4], what: &str| -> Result<LinMap, InputError> {
        Ok(LinMap::new(aa.clone(), aa.clone(), mat4(f, v, what, [n, n, n, n])?).unwrap())
    };
    let (t1, t2, t3, t4) = (lin(&file.t1, "T1")?, lin(&file.t2, "T2")?, lin(&file.t3, "T3")?, lin(&file.t4, "T4")?);
    let (el, er) = (lin(&file.e_left, "E_left")?, lin(&file.e_right, "E_right")?);
    if file.counit.len() != n {
        return err(format!("counit has {} entries, expected {n}", file.counit.len()));
    }
    let counit = file.counit.iter().map(|c| scalar(f, c, "counit")).collect::<Result<Vec<_>, _>>()?;
    let antipode = match &file.antipode {
        Some(s) => {
            let mut m = Mat::zeros(n, n);
            for (k, (i, j, x)) in s.iter().enumerate() {
                check_range("antipode", k, &[*i, *j], &[n, n])?;
                m.set(*j, *i, scalar(f, x, "antipode")?);
            }
            Some(LinMap::new(a.clone(), a.clone(), m).unwrap())
        }
        None => None,
    };
    let structure = WmbStructure::new(alg, t1, t2, t3, t4, el, er, counit, antipode)
        .map_err(|e| InputError(format!("structure: {e}")))?;
    let mut objects = Vec::new();
    let mut names = std::collections::HashSet::new();
    for o in &file.objects {
        if !names.insert(o.name.clone()) {
            return err(format!("object {:?} defined twice", o.name));
        }
        let what = |k: &str| format!("object {:?} {k}", o.name);
        let sp = space(&o.basis, &what("basis"))?;
        let d = sp.dim();
        let module = match &o.action {
            Some(act) => {
                let m = mat3(f, act, &what("action"), [d, n, d])?;
                Some(
                    AModule::new(sp.clone(), &structure.algebra, m)
                        .map_err(|e| InputError(format!("{}: {e}", what("action"))))?,
                )
            }
            None => None,
        };
        let comodule = match (&o.lambda, &o.rho) {
            (Some(l), Some(r)) => {
                let lm = mat4(f, l, &what("lambda"), [d, n, d, n])?;
                let rm = mat4(f, r, &what("rho"), [d, n, d, n])?;
                Some(
                    AComodule::new(sp.clone(), &structure.algebra, lm, rm)
                        .map_err(|e| InputError(format!("{}: {e}", what("coaction"))))?,
                )
            }
            (None, None) => None,
            _ => return err(format!("object {:?}: lambda and rho must be given together", o.name)),
        };
        objects.push(LoadedObject { name: o.name.clone(), module, comodule });
    }
    Ok(Loaded { field: f, structure, groupoid, objects })
}

// ---------- conversion from structures ----------

fn coef(s: &Scalar) -> Coef {
    Coef(s.to_string())
}

fn entries4(m: &Mat, dims: [usize; 4]) -> Vec<Entry4> {
    let mut out = Vec::new();
    for col in 0..m.cols() {
        for (row, x) in m.col_sparse(col) {
            out.push((col / dims[1], col % dims[1], row / dims[3], row % dims[3], coef(&x)));
        }
    }
    out.sort_by_key(|e| (e.0, e.1, e.2, e.3));
    out
}

fn entries3(m: &Mat, dims: [usize; 3]) -> Vec<Entry3> {
    let mut out = Vec::new();
    for col in 0..m.cols() {
        for (row, x) in m.col_sparse(col) {
            out.push((col / dims[1], col % dims[1], row, coef(&x)));
        }
    }
    out.sort_by_key(|e| (e.0, e.1, e.2));
    out
}

/// The structure constants of `w` as a file without objects.
pub fn structure_file(w: &WmbStructure, field: &str) -> InstanceFile {
    let n = w.dim();
    let d4 = [n, n, n, n];
    InstanceFile {
        field: field.to_string(),
        name: None,
        groupoid: None,
        basis: w.space().labels().to_vec(),
        mult: entries3(&w.algebra.mult_map().mat, [n, n, n]),
        t1: entries4(&w.t1.mat, d4),
        t2: entries4(&w.t2.mat, d4),
        t3: entries4(&w.t3.mat, d4),
        t4: entries4(&w.t4.mat, d4),
        e_left: entries4(&w.e.left.mat, d4),
        e_right: entries4(&w.e.right.mat, d4),
        counit: w.counit.iter().map(coef).collect(),
        antipode: w.antipode.as_ref().map(|s| {
            let mut out: Vec<Entry2> = Vec::new();
            for i in 0..n {
                for (j, x) in s.mat.col_sparse(i) {
                    out.push((i, j, coef(&x)));
                }
            }
            out
        }),
        objects: Vec::new(),
    }
}

pub fn object_block(name: &str, n: usize, module: Option<&AModule>, comodule: Option<&AComodule>) -> ObjectBlock {
    let sp = module.map(|m| m.space.clone()).or_else(|| comodule.map(|c| c.space.clone())).expect("an object");
    let d = sp.dim();
    ObjectBlock {
        name: name.to_string(),
        basis: sp.labels().to_vec(),
        action: module.map(|m| entries3(&m.action.mat, [d, n, d])),
        lambda: comodule.map(|c| entries4(&c.lambda.mat, [d, n, d, n])),
        rho: comodule.map(|c| entries4(&c.rho.mat, [d, n, d, n])),
    }
}

/// Sparse vector as `[index, literal]` pairs.
pub fn sparse_entries(v: &SVec) -> Vec<(usize, Coef)> {
    v.iter().map(|(i, x)| (*i, coef(x))).collect()
}
