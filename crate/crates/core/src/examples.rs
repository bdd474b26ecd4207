//! Finite groupoids, their algebras and function algebras, and the sample
//! modules and comodules used throughout the tests.

use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::exact::{LinMap, Mat, SVec, Scalar, Space};
use crate::rep::{base_comodule, base_module, regular_comodule, regular_module, AComodule, AModule, RepError};
use crate::wmb::{base_algebra, WmbError, WmbStructure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("composition table: {0}")]
    Table(String),
    #[error(transparent)]
    Wmb(#[from] WmbError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite groupoid. `compose[g][h]` is `g∘h`, defined when the source of
/// `g` is the target of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub identities: Vec<usize>,
    pub inverses: Vec<usize>,
}

impl FiniteGroupoid {
    /// Validates a composition table and derives identities and inverses.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<FiniteGroupoid, GroupoidError> {
        let n = morphisms.len();
        let table = |m: String| GroupoidError::Table(m);
        for names in [objects.clone(), morphisms.iter().map(|m| m.name.clone()).collect()] {
            let mut seen = std::collections::HashSet::new();
            if let Some(d) = names.iter().find(|x| !seen.insert(*x)) {
                return Err(GroupoidError::Duplicate(d.clone()));
            }
        }
        for m in &morphisms {
            if m.source >= objects.len() || m.target >= objects.len() {
                return Err(GroupoidError::UnknownObject(m.name.clone()));
            }
        }
        if compose.len() != n || compose.iter().any(|r| r.len() != n) {
            return Err(table(format!("must be {n}x{n}")));
        }
        for g in 0..n {
            for h in 0..n {
                let ok = morphisms[g].source == morphisms[h].target;
                match compose[g][h] {
                    None if ok => return Err(table(format!("{}∘{} missing", morphisms[g].name, morphisms[h].name))),
                    Some(_) if !ok => {
                        return Err(table(format!("{}∘{} is not composable", morphisms[g].name, morphisms[h].name)))
                    }
                    Some(k) if k >= n => return Err(table(format!("index {k} out of range"))),
                    Some(k)
                        if morphisms[k].source != morphisms[h].source || morphisms[k].target != morphisms[g].target =>
                    {
                        return Err(table(format!("{}∘{} has wrong ends", morphisms[g].name, morphisms[h].name)))
                    }
                    _ => {}
                }
            }
        }
        for f in 0..n {
            for g in 0..n {
                for h in 0..n {
                    if let (Some(gh), Some(fg)) = (compose[g][h], compose[f][g]) {
                        if compose[f][gh] != compose[fg][h] {
                            return Err(table("not associative".into()));
                        }
                    }
                }
            }
        }
        let mut identities = Vec::with_capacity(objects.len());
        for x in 0..objects.len() {
            let id = (0..n).find(|&e| {
                morphisms[e].source == x
                    && morphisms[e].target == x
                    && (0..n).all(|g| {
                        (morphisms[g].source != x || compose[g][e] == Some(g))
                            && (morphisms[g].target != x || compose[e][g] == Some(g))
                    })
            });
            identities.push(id.ok_or_else(|| table(format!("no identity at {}", objects[x])))?);
        }
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            let (s, t) = (morphisms[g].source, morphisms[g].target);
            let inv = (0..n).find(|&h| compose[g][h] == Some(identities[t]) && compose[h][g] == Some(identities[s]));
            inverses.push(inv.ok_or_else(|| table(format!("{} has no inverse", morphisms[g].name)))?);
        }
        Ok(FiniteGroupoid { objects, morphisms, compose, identities, inverses })
    }

    /// A one-object groupoid from a group multiplication table.
    pub fn group(names: Vec<String>, mult: impl Fn(usize, usize) -> usize) -> Result<FiniteGroupoid, GroupoidError> {
        let n = names.len();
        let morphisms = names.into_iter().map(|name| Morphism { name, source: 0, target: 0 }).collect();
        let compose = (0..n).map(|g| (0..n).map(|h| Some(mult(g, h))).collect()).collect();
        FiniteGroupoid::new(vec!["*".into()], morphisms, compose)
    }

    /// The cyclic group of order `n`.
    pub fn cyclic(n: usize) -> FiniteGroupoid {
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        FiniteGroupoid::group(names, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// The symmetric group on three letters, elements in cycle notation.
    pub fn symmetric3() -> FiniteGroupoid {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let names = perms.iter().map(|p| cycle_name(p)).collect();
        let idx: HashMap<[usize; 3], usize> = perms.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        // (g∘h)(x) = g(h(x))
        FiniteGroupoid::group(names, |g, h| {
            let (pg, ph) = (perms[g], perms[h]);
            idx[&[pg[ph[0]], pg[ph[1]], pg[ph[2]]]]
        })
        .expect("symmetric group")
    }

    /// The pair groupoid on `n` objects: one morphism `e_ij: j → i` for each
    /// ordered pair.
    pub fn pair(n: usize) -> FiniteGroupoid {
        let objects = (1..=n).map(|i| i.to_string()).collect();
        let mut morphisms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                morphisms.push(Morphism { name: format!("e{}{}", i + 1, j + 1), source: j, target: i });
            }
        }
        let compose =
            (0..n * n).map(|g| (0..n * n).map(|h| (g % n == h / n).then_some((g / n) * n + h % n)).collect()).collect();
        FiniteGroupoid::new(objects, morphisms, compose).expect("pair groupoid")
    }

    /// Disjoint union; names get the prefixes `a.` and `b.`.
    pub fn disjoint_union(a: &FiniteGroupoid, b: &FiniteGroupoid) -> FiniteGroupoid {
        let (na, oa) = (a.morphisms.len(), a.objects.len());
        let n = na + b.morphisms.len();
        let objects =
            a.objects.iter().map(|o| format!("a.{o}")).chain(b.objects.iter().map(|o| format!("b.{o}"))).collect();
        let morphisms = a
            .morphisms
            .iter()
            .map(|m| Morphism { name: format!("a.{}", m.name), ..m.clone() })
            .chain(b.morphisms.iter().map(|m| Morphism {
                name: format!("b.{}", m.name),
                source: m.source + oa,
                target: m.target + oa,
            }))
            .collect();
        let compose = (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| match (g < na, h < na) {
                        (true, true) => a.compose[g][h],
                        (false, false) => b.compose[g - na][h - na].map(|k| k + na),
                        _ => None,
                    })
                    .collect()
            })
            .collect();
        FiniteGroupoid::new(objects, morphisms, compose).expect("disjoint union")
    }

    pub fn size(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_identity(&self, g: usize) -> bool {
        self.identities.contains(&g)
    }

    fn names(&self) -> Vec<String> {
        self.morphisms.iter().map(|m| m.name.clone()).collect()
    }
}

fn cycle_name(p: &[usize; 3]) -> String {
    let mut seen = [false; 3];
    let mut out = String::new();
    for s in 0..3 {
        if seen[s] || p[s] == s {
            continue;
        }
        out.push('(');
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn one(i: usize) -> SVec {
    vec![(i, Scalar::one())]
}

fn permutation_map(space: &Space, image: impl Fn(usize) -> usize) -> LinMap {
    let n = space.dim();
    let cols: Vec<SVec> = (0..n).map(|i| one(image(i))).collect();
    LinMap::new(space.clone(), space.clone(), Mat::from_sparse_cols(n, &cols)).unwrap()
}

/// The groupoid algebra: product is composition (zero when not composable),
/// `Δ(g) = g⊗g`, `ε(g) = 1`, `S(g) = g⁻¹`.
pub fn groupoid_algebra(g: &FiniteGroupoid) -> Result<WmbStructure, GroupoidError> {
    let n = g.size();
    let space = Space::new(g.names()).map_err(|_| GroupoidError::Duplicate("morphism".into()))?;
    let table = (0..n).map(|a| (0..n).map(|b| g.compose[a][b].map_or(vec![], one)).collect()).collect();
    let alg = Algebra::from_table(space.clone(), table);
    let delta: Vec<SVec> = (0..n).map(|a| one(a * n + a)).collect();
    let counit = vec![Scalar::one(); n];
    let s = permutation_map(&space, |i| g.inverses[i]);
    Ok(WmbStructure::from_coproduct(alg, &delta, counit, Some(s))?)
}

/// The algebra of functions on the groupoid: pointwise product,
/// `Δ(δ_g) = Σ_{h∘k=g} δ_h⊗δ_k`, `ε(δ_g) = [g is an identity]`,
/// `S(δ_g) = δ_{g⁻¹}`.
pub fn function_algebra(g: &FiniteGroupoid) -> Result<WmbStructure, GroupoidError> {
    let n = g.size();
    let labels = g.names().into_iter().map(|s| format!("δ{s}")).collect();
    let space = Space::new(labels).map_err(|_| GroupoidError::Duplicate("morphism".into()))?;
    let table = (0..n).map(|a| (0..n).map(|b| if a == b { one(a) } else { vec![] }).collect()).collect();
    let alg = Algebra::from_table(space.clone(), table);
    let mut delta = vec![Vec::new(); n];
    for h in 0..n {
        for k in 0..n {
            if let Some(x) = g.compose[h][k] {
                delta[x].push((h * n + k, Scalar::one()));
            }
        }
    }
    let counit = (0..n).map(|x| if g.is_identity(x) { Scalar::one() } else { Scalar::zero() }).collect();
    let s = permutation_map(&space, |i| g.inverses[i]);
    Ok(WmbStructure::from_coproduct(alg, &delta, counit, Some(s))?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    GroupoidAlgebra,
    FunctionAlgebra,
}

/// A named corpus entry.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub groupoid: FiniteGroupoid,
    pub kind: Kind,
    pub structure: WmbStructure,
}

/// kℤ₂, kℤ₃, kS₃, kP₂, kP₃, k^{P₂}, k(ℤ₂⊔ℤ₂), k(P₂⊔ℤ₂).
pub fn corpus() -> Vec<Instance> {
    let z2 = FiniteGroupoid::cyclic(2);
    let p2 = FiniteGroupoid::pair(2);
    let mut out = Vec::new();
    let mut add = |name: &str, g: FiniteGroupoid, dual: bool| {
        let structure = if dual { function_algebra(&g) } else { groupoid_algebra(&g) }.expect("corpus instance");
        let kind = if dual { Kind::FunctionAlgebra } else { Kind::GroupoidAlgebra };
        out.push(Instance { name: name.into(), groupoid: g, kind, structure });
    };
    add("kZ2", z2.clone(), false);
    add("kZ3", FiniteGroupoid::cyclic(3), false);
    add("kS3", FiniteGroupoid::symmetric3(), false);
    add("kP2", p2.clone(), false);
    add("kP3", FiniteGroupoid::pair(3), false);
    add("k^P2", p2.clone(), true);
    add("k(Z2+Z2)", FiniteGroupoid::disjoint_union(&z2, &z2), false);
    add("k(P2+Z2)", FiniteGroupoid::disjoint_union(&p2, &z2), false);
    out
}

pub fn corpus_instance(name: &str) -> Option<Instance> {
    corpus().into_iter().find(|i| i.name == name)
}

fn module_from_cols(w: &WmbStructure, labels: Vec<String>, cols: Vec<SVec>) -> AModule {
    let space = Space::new(labels).expect("distinct labels");
    let d = space.dim();
    AModule::new(space, &w.algebra, Mat::from_sparse_cols(d, &cols)).expect("module shape")
}

/// The right ideal spanned by the morphisms with target `x`, acted on by
/// composition: `g·h = g∘h`.
pub fn right_ideal_module(w: &WmbStructure, g: &FiniteGroupoid, x: usize) -> AModule {
    let basis: Vec<usize> = (0..g.size()).filter(|&k| g.morphisms[k].target == x).collect();
    let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let cols = basis
        .iter()
        .flat_map(|&k| (0..g.size()).map(move |h| (k, h)))
        .map(|(k, h)| g.compose[k][h].map_or(vec![], |c| one(pos[&c])))
        .collect();
    let labels = basis.iter().map(|&k| format!("v.{}", g.morphisms[k].name)).collect();
    module_from_cols(w, labels, cols)
}

/// A one-dimensional module `v·a = χ(a)v`.
pub fn character_module(w: &WmbStructure, name: &str, chi: &[Scalar]) -> AModule {
    let cols = chi.iter().map(|c| if c.is_zero() { vec![] } else { vec![(0, c.clone())] }).collect();
    module_from_cols(w, vec![name.to_string()], cols)
}

/// All characters of a group with values `±1`.
pub fn sign_characters(g: &FiniteGroupoid) -> Vec<Vec<Scalar>> {
    let n = g.size();
    if g.objects.len() != 1 || n > 16 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let val = |k: usize| if mask >> k & 1 == 1 { -1i64 } else { 1 };
        let hom = (0..n).all(|a| (0..n).all(|b| g.compose[a][b].is_some_and(|c| val(c) == val(a) * val(b))));
        if hom {
            out.push((0..n).map(|k| Scalar::from(val(k))).collect());
        }
    }
    out
}

/// A one-dimensional comodule graded by the morphism `h`:
/// `λ(m⊗a) = m⊗ha`, `ϱ(m⊗a) = m⊗ah`.
pub fn graded_comodule(w: &WmbStructure, name: &str, h: usize) -> AComodule {
    let n = w.dim();
    let lam: Vec<SVec> = (0..n).map(|a| w.mul(&one(h), &one(a))).collect();
    let rho: Vec<SVec> = (0..n).map(|a| w.mul(&one(a), &one(h))).collect();
    let space = Space::new(vec![name.to_string()]).unwrap();
    AComodule::new(space, &w.algebra, Mat::from_sparse_cols(n, &lam), Mat::from_sparse_cols(n, &rho))
        .expect("comodule shape")
}

/// Standard modules of a corpus instance: the regular module, `R`, the right
/// ideals (groupoid algebras), the `±1` characters (groups) and the point
/// modules `v·δ_h = [h = g]v` (function algebras).
pub fn standard_modules(inst: &Instance) -> Result<Vec<(String, AModule)>, RepError> {
    let w = &inst.structure;
    let g = &inst.groupoid;
    let b = base_algebra(w)?;
    let mut out = vec![("A".to_string(), regular_module(w)), ("R".to_string(), base_module(w, &b)?)];
    match inst.kind {
        Kind::GroupoidAlgebra => {
            for x in 0..g.objects.len() {
                out.push((format!("ideal {}", g.objects[x]), right_ideal_module(w, g, x)));
            }
            for (k, chi) in sign_characters(g).into_iter().enumerate() {
                out.push((format!("char{k}"), character_module(w, &format!("χ{k}"), &chi)));
            }
        }
        Kind::FunctionAlgebra => {
            for h in 0..g.size() {
                let chi: Vec<Scalar> =
                    (0..g.size()).map(|k| if k == h { Scalar::one() } else { Scalar::zero() }).collect();
                let name = format!("at {}", g.morphisms[h].name);
                out.push((name.clone(), character_module(w, &name, &chi)));
            }
        }
    }
    Ok(out)
}

/// Standard comodules: the regular comodule `(A, T₁, T₃)`, `R`, and for
/// groupoid algebras the one-dimensional comodules graded by a morphism.
pub fn standard_comodules(inst: &Instance) -> Result<Vec<(String, AComodule)>, RepError> {
    let w = &inst.structure;
    let b = base_algebra(w)?;
    let mut out = vec![("A".to_string(), regular_comodule(w)), ("R".to_string(), base_comodule(w, &b)?)];
    if inst.kind == Kind::GroupoidAlgebra {
        for h in 0..inst.groupoid.size() {
            let name = format!("graded {}", inst.groupoid.morphisms[h].name);
            out.push((name.clone(), graded_comodule(w, &name, h)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groupoid_tables() {
        let p = FiniteGroupoid::pair(2);
        assert_eq!(p.identities, vec![0, 3]);
        // e12∘e21 = e11
        assert_eq!(p.compose[1][2], Some(0));
        assert_eq!(p.compose[1][1], None);
        let s = FiniteGroupoid::symmetric3();
        assert_eq!(s.size(), 6);
        assert_eq!(s.identities, vec![0]);
        let names: Vec<_> = s.morphisms.iter().map(|m| m.name.as_str()).collect();
        assert_eq!(names, ["()", "(12)", "(23)", "(13)", "(123)", "(132)"]);
        // (12)∘(23) = (123): 1→1→2, 2→3→3, 3→2→1
        assert_eq!(s.morphisms[s.compose[1][2].unwrap()].name, "(123)");
        let u = FiniteGroupoid::disjoint_union(&p, &FiniteGroupoid::cyclic(2));
        assert_eq!(u.size(), 6);
        assert_eq!(u.identities.len(), 3);
    }

    #[test]
    fn invalid_groupoid_rejected() {
        let ms = vec![Morphism { name: "f".into(), source: 0, target: 1 }];
        assert!(FiniteGroupoid::new(vec!["x".into(), "y".into()], ms, vec![vec![None]]).is_err());
        let r = FiniteGroupoid::group(vec!["1".into(), "g".into()], |_, _| 0);
        assert!(r.is_err());
    }
}
