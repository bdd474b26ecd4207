//! Modules and comodules, the actions they induce on the base algebra, the
//! tensor product over the base algebra, and the monoidal products.

use thiserror::Error;

use crate::algebra::Algebra;
use crate::exact::{
    apply_block, contract_second, descend_pairs, kron_vec, tensor_space, Echelon, ExactError, LegMap, LinMap, Mat,
    SVec, Scalar, Space,
};
use crate::report::{compare, Check, Report};
use crate::wmb::{BaseAlgebra, WmbError, WmbStructure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Wmb(#[from] WmbError),
    #[error("{0} is not well defined: {1}")]
    NotWellDefined(&'static str, String),
    #[error("not firm: {0}")]
    NotFirm(String),
    #[error("{0}")]
    Shape(String),
    #[error("structural failure: {0}")]
    Structural(String),
}

fn ill(what: &'static str) -> impl Fn(ExactError) -> RepError {
    move |e| RepError::NotWellDefined(what, e.to_string())
}

fn unit(i: usize) -> SVec {
    vec![(i, Scalar::one())]
}

fn axpy_into(acc: &mut SVec, x: &Scalar, v: &SVec) {
    *acc = crate::exact::axpy(acc, x, v);
}

/// A right `A`-module given by its action `V⊗A → V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AModule {
    pub space: Space,
    pub action: LinMap,
}

impl AModule {
    pub fn new(space: Space, algebra: &Algebra, action: Mat) -> Result<AModule, RepError> {
        let src = tensor_space(&space, algebra.space());
        if action.rows() != space.dim() || action.cols() != src.dim() {
            return Err(RepError::Shape(format!("action must be {}x{}", space.dim(), src.dim())));
        }
        Ok(AModule { action: LinMap::new(src, space.clone(), action)?, space })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn alg_dim(&self) -> usize {
        self.action.source.factors().get(1).copied().unwrap_or(0)
    }

    /// `v·a`.
    pub fn act(&self, v: &SVec, a: &SVec) -> SVec {
        self.action.mat.apply_sparse(&kron_vec(v, a, self.alg_dim()))
    }

    /// `e_i·e_a`.
    pub fn act_basis(&self, i: usize, a: usize) -> SVec {
        self.action.mat.col_sparse(i * self.alg_dim() + a)
    }

    /// `v ↦ v·a` as a matrix.
    pub fn op(&self, a: &SVec) -> Mat {
        let cols: Vec<SVec> = (0..self.dim()).map(|i| self.act(&unit(i), a)).collect();
        Mat::from_sparse_cols(self.dim(), &cols)
    }
}

/// A right `A`-comodule given by the pair `λ, ϱ: M⊗A → M⊗A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AComodule {
    pub space: Space,
    pub lambda: LinMap,
    pub rho: LinMap,
}

impl AComodule {
    pub fn new(space: Space, algebra: &Algebra, lambda: Mat, rho: Mat) -> Result<AComodule, RepError> {
        let ma = tensor_space(&space, algebra.space());
        let d = ma.dim();
        for (name, m) in [("lambda", &lambda), ("rho", &rho)] {
            if m.rows() != d || m.cols() != d {
                return Err(RepError::Shape(format!("{name} must be {d}x{d}")));
            }
        }
        Ok(AComodule {
            lambda: LinMap::new(ma.clone(), ma.clone(), lambda)?,
            rho: LinMap::new(ma.clone(), ma, rho)?,
            space,
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `λ(x)` for `x ∈ M⊗A`.
    pub fn lam(&self, x: &SVec) -> SVec {
        self.lambda.mat.apply_sparse(x)
    }

    /// `ϱ(x)` for `x ∈ M⊗A`.
    pub fn rho(&self, x: &SVec) -> SVec {
        self.rho.mat.apply_sparse(x)
    }
}

pub fn check_amodule(alg: &Algebra, v: &AModule) -> Report {
    let mut r = Report::new("module");
    let n = alg.dim();
    let dv = v.dim();
    let sp = &v.space;
    let lab = |i: usize, a: usize| vec![sp.label(i).to_string(), alg.space().label(a).to_string()];
    r.push(compare(
        "module associativity",
        "v·(ab)=(v·a)·b",
        sp,
        (0..dv).flat_map(|i| (0..n).flat_map(move |a| (0..n).map(move |b| (i, a, b)))).map(|(i, a, b)| {
            let l = v.act(&unit(i), alg.basis_product(a, b));
            let rr = v.act(&v.act_basis(i, a), &unit(b));
            let mut at = lab(i, a);
            at.push(alg.space().label(b).to_string());
            (at, l, rr)
        }),
    ));
    let rank = v.action.rank();
    r.push(
        Check::verdict("idempotent module", "·: V⊗A → V is surjective", rank == dv)
            .with_note(format!("rank {rank} of {dv}")),
    );
    let cols: Vec<SVec> = (0..dv)
        .map(|i| {
            let mut c = Vec::new();
            for a in 0..n {
                c.extend(v.act_basis(i, a).into_iter().map(|(j, x)| (a * dv + j, x)));
            }
            c
        })
        .collect();
    let nd = Mat::from_sparse_cols(n * dv, &cols).rank();
    r.push(
        Check::verdict("non-degenerate module", "v ↦ v·(−) is injective", nd == dv)
            .with_note(format!("rank {nd} of {dv}")),
    );
    r
}

/// `(1⊗a)x` for `x ∈ M⊗A`.
fn left_mul_second(alg: &Algebra, x: &SVec, a: &SVec) -> SVec {
    apply_block(x, alg.dim(), 1, &alg.left_op(a))
}

/// `x(1⊗a)` for `x ∈ M⊗A`.
fn right_mul_second(alg: &Algebra, x: &SVec, a: &SVec) -> SVec {
    apply_block(x, alg.dim(), 1, &alg.right_op(a))
}

/// `(c⊗A)c^{13}(M⊗t)` and `(M⊗t)(c⊗A)` on `m⊗a⊗b`.
fn pentagon(c: &LinMap, t: &Mat, dm: usize, n: usize, x: &SVec) -> (SVec, SVec) {
    let lm = LegMap::new(c);
    let y = apply_block(x, n * n, 1, t);
    let y = lm.apply(&y, &[dm, n, n], &[0, 2]);
    let l = apply_block(&y, dm * n, n, &c.mat);
    let z = apply_block(x, dm * n, n, &c.mat);
    let r = apply_block(&z, n * n, 1, t);
    (l, r)
}

/// `(c⊗A)c^{13}` on `m⊗a⊗b`, after an optional `M⊗t`.
fn twice(c: &LinMap, t: Option<&Mat>, dm: usize, n: usize, x: &SVec) -> SVec {
    let y = match t {
        Some(t) => apply_block(x, n * n, 1, t),
        None => x.clone(),
    };
    let y = LegMap::new(c).apply(&y, &[dm, n, n], &[0, 2]);
    apply_block(&y, dm * n, n, &c.mat)
}

fn triple_labels(sp: &Space, alg: &Space, i: usize, a: usize, b: usize) -> Vec<String> {
    vec![sp.label(i).to_string(), alg.label(a).to_string(), alg.label(b).to_string()]
}

pub fn check_acomodule(w: &WmbStructure, m: &AComodule) -> Report {
    let mut r = Report::new("comodule");
    let alg = &w.algebra;
    let n = alg.dim();
    let dm = m.dim();
    let sp = &m.space;
    let ma = tensor_space(sp, alg.space());
    let maa = tensor_space(&ma, alg.space());
    let triples = || (0..dm).flat_map(move |i| (0..n).flat_map(move |a| (0..n).map(move |b| (i, a, b))));
    r.push(compare(
        "comodule compatibility",
        "(1⊗a)λ(m⊗b)=ϱ(m⊗a)(1⊗b)",
        &ma,
        triples().map(|(i, a, b)| {
            let l = left_mul_second(alg, &m.lam(&unit(i * n + b)), &unit(a));
            let rr = right_mul_second(alg, &m.rho(&unit(i * n + a)), &unit(b));
            (triple_labels(sp, alg.space(), i, a, b), l, rr)
        }),
    ));
    let x3 = |i: usize, a: usize, b: usize| unit((i * n + a) * n + b);
    r.push(compare(
        "comodule coassociativity",
        "(λ⊗A)λ^{13}(M⊗T₁)=(M⊗T₁)(λ⊗A)",
        &maa,
        triples().map(|(i, a, b)| {
            let (l, rr) = pentagon(&m.lambda, &w.t1.mat, dm, n, &x3(i, a, b));
            (triple_labels(sp, alg.space(), i, a, b), l, rr)
        }),
    ));
    r.push(compare(
        "comodule normalization",
        "(λ⊗A)λ^{13}(M⊗E₁)=(λ⊗A)λ^{13}",
        &maa,
        triples().map(|(i, a, b)| {
            let x = x3(i, a, b);
            let l = twice(&m.lambda, Some(&w.e.left.mat), dm, n, &x);
            let rr = twice(&m.lambda, None, dm, n, &x);
            (triple_labels(sp, alg.space(), i, a, b), l, rr)
        }),
    ));
    r.push(compare(
        "opposite coassociativity",
        "(M,ϱ,λ) is a right comodule over the opposite",
        &maa,
        triples().map(|(i, a, b)| {
            let (l, rr) = pentagon(&m.rho, &w.t3.mat, dm, n, &x3(i, a, b));
            (triple_labels(sp, alg.space(), i, a, b), l, rr)
        }),
    ));
    r.push(compare(
        "opposite normalization",
        "(M,ϱ,λ) is a right comodule over the opposite",
        &maa,
        triples().map(|(i, a, b)| {
            let x = x3(i, a, b);
            let l = twice(&m.rho, Some(&w.e.right.mat), dm, n, &x);
            let rr = twice(&m.rho, None, dm, n, &x);
            (triple_labels(sp, alg.space(), i, a, b), l, rr)
        }),
    ));
    let mut slices = Echelon::new(dm);
    for c in m.lambda.mat.cols_sparse() {
        for k in 0..n {
            let om: Vec<Scalar> = (0..n).map(|j| if j == k { Scalar::one() } else { Scalar::zero() }).collect();
            slices.insert(&contract_second(&c, n, &om));
        }
    }
    r.push(
        Check::verdict("full comodule", "(M⊗ω)λ(m⊗a)", slices.rank() == dm)
            .with_note(format!("slices span dim {} of {dm}", slices.rank())),
    );
    r
}

/// A bimodule over the base algebra, actions in coordinates of `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirmBimodule {
    pub space: Space,
    /// `R⊗V → V`.
    pub left: LinMap,
    /// `V⊗R → V`.
    pub right: LinMap,
}

impl FirmBimodule {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn r_dim(&self) -> usize {
        self.right.source.factors().get(1).copied().unwrap_or(0)
    }

    /// `r ▷ v`.
    pub fn lact(&self, r: &SVec, v: &SVec) -> SVec {
        self.left.mat.apply_sparse(&kron_vec(r, v, self.dim()))
    }

    /// `v ◁ r`.
    pub fn ract(&self, v: &SVec, r: &SVec) -> SVec {
        self.right.mat.apply_sparse(&kron_vec(v, r, self.r_dim()))
    }

    fn from_cols(b: &BaseAlgebra, space: &Space, left: Vec<SVec>, right: Vec<SVec>) -> Result<FirmBimodule, RepError> {
        let d = space.dim();
        Ok(FirmBimodule {
            left: LinMap::new(tensor_space(b.space(), space), space.clone(), Mat::from_sparse_cols(d, &left))?,
            right: LinMap::new(tensor_space(space, b.space()), space.clone(), Mat::from_sparse_cols(d, &right))?,
            space: space.clone(),
        })
    }
}

/// Bimodule laws and firmness on both sides.
pub fn check_firm(b: &BaseAlgebra, x: &FirmBimodule) -> Report {
    let mut rep = Report::new("firm bimodule");
    let m = b.dim();
    let d = x.dim();
    let sp = &x.space;
    let rl = |k: usize| b.space().label(k).to_string();
    let triples = || (0..m).flat_map(move |r| (0..m).flat_map(move |s| (0..d).map(move |v| (r, s, v))));
    rep.push(compare(
        "left action associative",
        "(rs)▷v=r▷(s▷v)",
        sp,
        triples().map(|(r, s, v)| {
            let l = x.lact(&b.mul(&unit(r), &unit(s)), &unit(v));
            let rr = x.lact(&unit(r), &x.lact(&unit(s), &unit(v)));
            (vec![rl(r), rl(s), sp.label(v).to_string()], l, rr)
        }),
    ));
    rep.push(compare(
        "right action associative",
        "v◁(rs)=(v◁r)◁s",
        sp,
        triples().map(|(r, s, v)| {
            let l = x.ract(&unit(v), &b.mul(&unit(r), &unit(s)));
            let rr = x.ract(&x.ract(&unit(v), &unit(r)), &unit(s));
            (vec![sp.label(v).to_string(), rl(r), rl(s)], l, rr)
        }),
    ));
    rep.push(compare(
        "actions commute",
        "(r▷v)◁s=r▷(v◁s)",
        sp,
        triples().map(|(r, s, v)| {
            let l = x.ract(&x.lact(&unit(r), &unit(v)), &unit(s));
            let rr = x.lact(&unit(r), &x.ract(&unit(v), &unit(s)));
            (vec![rl(r), sp.label(v).to_string(), rl(s)], l, rr)
        }),
    ));
    // V⊗_R R → V: surjective, and the quotient has dimension dim V
    let mut rel = Echelon::new(d * m);
    for v in 0..d {
        for r in 0..m {
            for s in 0..m {
                let l = kron_vec(&x.ract(&unit(v), &unit(r)), &unit(s), m);
                let rr = kron_vec(&unit(v), &b.mul(&unit(r), &unit(s)), m);
                rel.insert(&crate::exact::axpy(&l, &Scalar::from(-1), &rr));
            }
        }
    }
    let qr = d * m - rel.rank();
    let sr = x.right.rank();
    rep.push(
        Check::verdict("right firm", "V⊗_R R → V bijective", qr == d && sr == d)
            .with_note(format!("quotient dim {qr}, action rank {sr}, dim {d}")),
    );
    let mut rel = Echelon::new(m * d);
    for r in 0..m {
        for s in 0..m {
            for v in 0..d {
                let l = kron_vec(&b.mul(&unit(r), &unit(s)), &unit(v), d);
                let rr = kron_vec(&unit(r), &x.lact(&unit(s), &unit(v)), d);
                rel.insert(&crate::exact::axpy(&l, &Scalar::from(-1), &rr));
            }
        }
    }
    let ql = m * d - rel.rank();
    let sl = x.left.rank();
    rep.push(
        Check::verdict("left firm", "R⊗_R V → V bijective", ql == d && sl == d)
            .with_note(format!("quotient dim {ql}, action rank {sl}, dim {d}")),
    );
    rep
}

fn require_firm(b: &BaseAlgebra, x: &FirmBimodule) -> Result<(), RepError> {
    let rep = check_firm(b, x);
    let failed = rep.failures().next().map(|c| c.name.clone());
    match failed {
        None => Ok(()),
        Some(name) => Err(RepError::NotFirm(format!("{name} fails"))),
    }
}

/// Splits the images of basis vectors `v_j`, laid out as `k·d + t` for the
/// `k`-th element of `R`, into action columns.
fn split_blocks(imgs: &[SVec], d: usize, m: usize, left: bool) -> Vec<SVec> {
    let mut cols = vec![Vec::new(); d * m];
    for (j, img) in imgs.iter().enumerate() {
        for (idx, x) in img {
            let (k, t) = (idx / d, idx % d);
            let c = if left { k * d + j } else { j * m + k };
            cols[c].push((t, x.clone()));
        }
    }
    cols
}

/// `(v·a)◁r = v·(ar)` and `r▷(v·a) = v·(aτ(r))`.
pub fn induced_r_actions_module(w: &WmbStructure, b: &BaseAlgebra, v: &AModule) -> Result<FirmBimodule, RepError> {
    let n = w.dim();
    let d = v.dim();
    let m = b.dim();
    let rs: Vec<SVec> = b.r.basis.clone();
    let ts: Vec<SVec> = (0..m).map(|k| b.l.element(&b.r_to_l.mat.col_sparse(k))).collect();
    let build = |mults: &[SVec], what: &'static str| -> Result<Vec<SVec>, RepError> {
        descend_pairs(
            d,
            d * m,
            (0..d).flat_map(|i| (0..n).map(move |a| (i, a))).map(|(i, a)| {
                let mut val = Vec::new();
                for (k, r) in mults.iter().enumerate() {
                    let y = v.act(&unit(i), &w.mul(&unit(a), r));
                    val.extend(y.into_iter().map(|(t, x)| (k * d + t, x)));
                }
                val.sort_by_key(|e| e.0);
                (v.act_basis(i, a), val)
            }),
        )
        .map_err(ill(what))
    };
    let right = split_blocks(&build(&rs, "right action (v·a)◁r")?, d, m, false);
    let left = split_blocks(&build(&ts, "left action r▷(v·a)")?, d, m, true);
    let x = FirmBimodule::from_cols(b, &v.space, left, right)?;
    require_firm(b, &x)?;
    Ok(x)
}

/// `m◂Π̄^R(a) = (M⊗ε)λ(m⊗a)` and `Π^R(a)▸m = (M⊗ε)ϱ(m⊗a)`.
pub fn induced_r_actions_comodule(w: &WmbStructure, b: &BaseAlgebra, c: &AComodule) -> Result<FirmBimodule, RepError> {
    let n = w.dim();
    let d = c.dim();
    let m = b.dim();
    let pairs = || (0..d).flat_map(|i| (0..n).map(move |a| (i, a)));
    let right = descend_pairs(
        d * m,
        d,
        pairs().map(|(i, a)| {
            let p = kron_vec(&unit(i), &b.pi_right_bar_coords.mat.col_sparse(a), m);
            (p, contract_second(&c.lam(&unit(i * n + a)), n, &w.counit))
        }),
    )
    .map_err(ill("right action m◂Π̄^R(a)"))?;
    let left = descend_pairs(
        m * d,
        d,
        pairs().map(|(i, a)| {
            let p = kron_vec(&b.pi_right_coords.mat.col_sparse(a), &unit(i), d);
            (p, contract_second(&c.rho(&unit(i * n + a)), n, &w.counit))
        }),
    )
    .map_err(ill("left action Π^R(a)▸m"))?;
    let x = FirmBimodule::from_cols(b, &c.space, left, right)?;
    require_firm(b, &x)?;
    Ok(x)
}

/// `V⊗_R W` as a quotient of `V⊗W`, with projection `π` and section `ι`.
#[derive(Clone, Debug)]
pub struct RTensor {
    pub carrier: Space,
    pub pi: LinMap,
    pub iota: LinMap,
}

impl RTensor {
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// `ι∘π` on `V⊗W`.
    pub fn idempotent(&self) -> Mat {
        self.iota.mat.mul(&self.pi.mat)
    }

    pub fn project(&self, x: &SVec) -> SVec {
        self.pi.mat.apply_sparse(x)
    }

    pub fn lift(&self, x: &SVec) -> SVec {
        self.iota.mat.apply_sparse(x)
    }
}

pub fn firm_tensor(b: &BaseAlgebra, v: &FirmBimodule, w: &FirmBimodule) -> Result<RTensor, RepError> {
    require_firm(b, v)?;
    require_firm(b, w)?;
    let (dv, dw, m) = (v.dim(), w.dim(), b.dim());
    let vw = tensor_space(&v.space, &w.space);
    let mut rel = Echelon::new(dv * dw);
    for i in 0..dv {
        for k in 0..m {
            let vr = v.ract(&unit(i), &unit(k));
            for j in 0..dw {
                let l = kron_vec(&vr, &unit(j), dw);
                let r = kron_vec(&unit(i), &w.lact(&unit(k), &unit(j)), dw);
                rel.insert(&crate::exact::axpy(&l, &Scalar::from(-1), &r));
            }
        }
    }
    let rest: Vec<usize> = (0..dv * dw).filter(|c| !rel.is_pivot(*c)).collect();
    let carrier = vw.flat().select(&rest);
    let pi = crate::exact::quotient_projection(&rel, &vw, &carrier, &rest);
    let c = carrier.dim();
    let deltas: Vec<SVec> = (0..m).map(|k| b.coproduct(&unit(k))).collect();
    let iota_cols = descend_pairs(
        c,
        dv * dw,
        (0..dv).flat_map(|i| (0..m).flat_map(move |k| (0..dw).map(move |j| (i, k, j)))).map(|(i, k, j)| {
            let p = pi.mat.apply_sparse(&kron_vec(&v.ract(&unit(i), &unit(k)), &unit(j), dw));
            let mut val = Vec::new();
            for (t, x) in &deltas[k] {
                let (r1, r2) = (t / m, t % m);
                let y = kron_vec(&v.ract(&unit(i), &unit(r1)), &w.lact(&unit(r2), &unit(j)), dw);
                axpy_into(&mut val, x, &y);
            }
            (p, val)
        }),
    )
    .map_err(ill("section ι"))?;
    let iota = LinMap::new(carrier.clone(), vw.clone(), Mat::from_sparse_cols(dv * dw, &iota_cols))?;
    if pi.mat.mul(&iota.mat) != Mat::identity(c) {
        return Err(RepError::Structural("π∘ι ≠ id".into()));
    }
    Ok(RTensor { carrier, pi, iota })
}

/// The bimodule structure on `V⊗_R W`: `r▷x = π(r▷ι(x))`, `x◁r = π(ι(x)◁r)`.
pub fn tensor_bimodule(
    b: &BaseAlgebra,
    v: &FirmBimodule,
    w: &FirmBimodule,
    t: &RTensor,
) -> Result<FirmBimodule, RepError> {
    let (dv, dw, m, c) = (v.dim(), w.dim(), b.dim(), t.dim());
    let mut left = Vec::with_capacity(m * c);
    for k in 0..m {
        for x in 0..c {
            let y = apply_block(&kron_vec(&unit(k), &t.lift(&unit(x)), dv * dw), m * dv, dw, &v.left.mat);
            left.push(t.project(&y));
        }
    }
    let mut right = Vec::with_capacity(c * m);
    for x in 0..c {
        for k in 0..m {
            let y = apply_block(&kron_vec(&t.lift(&unit(x)), &unit(k), m), dw * m, 1, &w.right.mat);
            right.push(t.project(&y));
        }
    }
    FirmBimodule::from_cols(b, &t.carrier, left, right)
}

/// Compares `(ι_{V,W}⊗Z)ι_{V⊗_R W,Z}π(π⊗Z)` with
/// `(V⊗ι_{W,Z})ι_{V,W⊗_R Z}π(V⊗π)` on `V⊗W⊗Z`.
pub fn check_triple(b: &BaseAlgebra, v: &FirmBimodule, w: &FirmBimodule, z: &FirmBimodule) -> Result<Check, RepError> {
    let (dv, dw, dz) = (v.dim(), w.dim(), z.dim());
    let t_vw = firm_tensor(b, v, w)?;
    let vw = tensor_bimodule(b, v, w, &t_vw)?;
    let t_vw_z = firm_tensor(b, &vw, z)?;
    let t_wz = firm_tensor(b, w, z)?;
    let wz = tensor_bimodule(b, w, z, &t_wz)?;
    let t_v_wz = firm_tensor(b, v, &wz)?;
    let space = tensor_space(&tensor_space(&v.space, &w.space), &z.space);
    let cvw = t_vw.dim();
    let cwz = t_wz.dim();
    Ok(compare(
        "triple tensor",
        "(ι_{V,W}⊗Z)ι_{V⊗_R W,Z}=(V⊗ι_{W,Z})ι_{V,W⊗_R Z}",
        &space,
        (0..dv * dw * dz).map(|x| {
            let e = unit(x);
            let l = apply_block(&e, dv * dw, dz, &t_vw.pi.mat);
            let l = t_vw_z.lift(&t_vw_z.project(&l));
            let l = apply_block(&l, cvw, dz, &t_vw.iota.mat);
            let r = apply_block(&e, dw * dz, 1, &t_wz.pi.mat);
            let r = t_v_wz.lift(&t_v_wz.project(&r));
            let r = apply_block(&r, cwz, 1, &t_wz.iota.mat);
            (vec![space.label(x).to_string()], l, r)
        }),
    ))
}

/// `E₂^{V,W}: v·a⊗w·b ↦ (v·(−)⊗w·(−))[(a⊗b)E]`.
pub fn e2_map(w: &WmbStructure, v: &AModule, u: &AModule) -> Result<LinMap, RepError> {
    let n = w.dim();
    let (dv, du) = (v.dim(), u.dim());
    let cols = descend_pairs(
        dv * du,
        dv * du,
        (0..dv)
            .flat_map(|i| (0..n).flat_map(move |a| (0..du).flat_map(move |j| (0..n).map(move |c| (i, a, j, c)))))
            .map(|(i, a, j, c)| {
                let p = kron_vec(&v.act_basis(i, a), &u.act_basis(j, c), du);
                let mut val = Vec::new();
                for (k, x) in w.e.right.mat.col_sparse(a * n + c) {
                    let y = kron_vec(&v.act_basis(i, k / n), &u.act_basis(j, k % n), du);
                    axpy_into(&mut val, &x, &y);
                }
                (p, val)
            }),
    )
    .map_err(ill("E₂^{V,W}"))?;
    let s = tensor_space(&v.space, &u.space);
    Ok(LinMap::new(s.clone(), s, Mat::from_sparse_cols(dv * du, &cols))?)
}

/// The diagonal action `(v⊗u)·c = v·c₁⊗u·c₂` on `V⊗U`, as `(V⊗U)⊗A → V⊗U`.
/// For a non-degenerate module over a unital algebra `v = v·1`, so this is
/// the presentation formula `(v·(−)⊗u·(−))[(a⊗b)Δ(c)]` at `a = b = 1`.
pub fn diag_action(w: &WmbStructure, v: &AModule, u: &AModule) -> Result<LinMap, RepError> {
    let n = w.dim();
    let (dv, du) = (v.dim(), u.dim());
    let deltas: Vec<SVec> = (0..n).map(|c| w.delta(&unit(c))).collect::<Result<_, _>>()?;
    let mut cols = Vec::with_capacity(dv * du * n);
    for i in 0..dv {
        for j in 0..du {
            for c in 0..n {
                let mut val = Vec::new();
                for (k, x) in &deltas[c] {
                    let y = kron_vec(&v.act_basis(i, k / n), &u.act_basis(j, k % n), du);
                    axpy_into(&mut val, x, &y);
                }
                cols.push(val);
            }
        }
    }
    let s = tensor_space(&v.space, &u.space);
    Ok(LinMap::new(tensor_space(&s, w.space()), s, Mat::from_sparse_cols(dv * du, &cols))?)
}

/// The action of `A` on `V⊗_R U`: `x·c = π(ι(x)·c)`.
pub fn module_tensor(w: &WmbStructure, v: &AModule, u: &AModule, t: &RTensor) -> Result<AModule, RepError> {
    let n = w.dim();
    let c = t.dim();
    let d = diag_action(w, v, u)?;
    let dd = v.dim() * u.dim();
    // π(y·a) depends on π(y) only
    for y in 0..dd {
        let back = t.lift(&t.project(&unit(y)));
        for a in 0..n {
            let l = t.project(&d.mat.apply_sparse(&kron_vec(&back, &unit(a), n)));
            let r = t.project(&d.mat.col_sparse(y * n + a));
            if l != r {
                return Err(RepError::NotWellDefined("diagonal action on the carrier", format!("at {y}, {a}")));
            }
        }
    }
    let mut cols = Vec::with_capacity(c * n);
    for x in 0..c {
        let lx = t.lift(&unit(x));
        for a in 0..n {
            cols.push(t.project(&d.mat.apply_sparse(&kron_vec(&lx, &unit(a), n))));
        }
    }
    let out = AModule::new(t.carrier.clone(), &w.algebra, Mat::from_sparse_cols(c, &cols))?;
    let rep = check_amodule(&w.algebra, &out);
    if let Some(f) = rep.failures().next() {
        return Err(RepError::Structural(format!("tensor module: {} fails", f.name)));
    }
    Ok(out)
}

/// `ϱ = (π⊗A)(M⊗ϱ_N)ϱ_M^{13}(ι⊗A)` and `λ = (π⊗A)λ_M^{13}(M⊗λ_N)(ι⊗A)`.
pub fn comodule_tensor(w: &WmbStructure, m: &AComodule, k: &AComodule, t: &RTensor) -> Result<AComodule, RepError> {
    let n = w.dim();
    let (dm, dk, c) = (m.dim(), k.dim(), t.dim());
    let lm = LegMap::new(&m.lambda);
    let rm = LegMap::new(&m.rho);
    let mut lam = Vec::with_capacity(c * n);
    let mut rho = Vec::with_capacity(c * n);
    for x in 0..c {
        for a in 0..n {
            let y = apply_block(&unit(x * n + a), c, n, &t.iota.mat);
            let r1 = rm.apply(&y, &[dm, dk, n], &[0, 2]);
            let r2 = apply_block(&r1, dk * n, 1, &k.rho.mat);
            rho.push(apply_block(&r2, dm * dk, n, &t.pi.mat));
            let l1 = apply_block(&y, dk * n, 1, &k.lambda.mat);
            let l2 = lm.apply(&l1, &[dm, dk, n], &[0, 2]);
            lam.push(apply_block(&l2, dm * dk, n, &t.pi.mat));
        }
    }
    let out = AComodule::new(
        t.carrier.clone(),
        &w.algebra,
        Mat::from_sparse_cols(c * n, &lam),
        Mat::from_sparse_cols(c * n, &rho),
    )?;
    let rep = check_acomodule(w, &out);
    if let Some(f) = rep.failures().next() {
        return Err(RepError::Structural(format!("tensor comodule: {} fails", f.name)));
    }
    Ok(out)
}

/// `x ∈ A⊗A` with first leg in `R`, rewritten in `R⊗A` coordinates.
pub(crate) fn first_leg_in_r(b: &BaseAlgebra, x: &SVec, n: usize) -> Result<SVec, RepError> {
    let mut out = Vec::new();
    for j in 0..n {
        let slice: SVec = x.iter().filter(|(k, _)| k % n == j).map(|(k, c)| (k / n, c.clone())).collect();
        if slice.is_empty() {
            continue;
        }
        let cr = b.r.coords(&slice).ok_or_else(|| RepError::Structural("first leg outside R".into()))?;
        out.extend(cr.into_iter().map(|(r, c)| (r * n + j, c)));
    }
    out.sort_by_key(|e| e.0);
    Ok(out)
}

/// `x ∈ A⊗A` with second leg in `R`, rewritten in `A⊗R` coordinates.
pub(crate) fn second_leg_in_r(b: &BaseAlgebra, x: &SVec, n: usize) -> Result<SVec, RepError> {
    let m = b.dim();
    let mut out = Vec::new();
    for i in 0..n {
        let slice: SVec = x.iter().filter(|(k, _)| k / n == i).map(|(k, c)| (k % n, c.clone())).collect();
        if slice.is_empty() {
            continue;
        }
        let cr = b.r.coords(&slice).ok_or_else(|| RepError::Structural("second leg outside R".into()))?;
        out.extend(cr.into_iter().map(|(r, c)| (i * m + r, c)));
    }
    out.sort_by_key(|e| e.0);
    Ok(out)
}

/// The closed-form idempotents on `M⊗V` and `V⊗M`:
/// `m⊗v·a ↦ (m◂(−)⊗v·(−))((1⊗a)E)` and `v·a⊗m ↦ (v·(−)⊗(−)▸m)((a⊗1)F)`.
pub fn iota_pi_mixed(
    w: &WmbStructure,
    b: &BaseAlgebra,
    m: &AComodule,
    v: &AModule,
) -> Result<(LinMap, LinMap), RepError> {
    let n = w.dim();
    let r = b.dim();
    let (dm, dv) = (m.dim(), v.dim());
    let mb = induced_r_actions_comodule(w, b, m)?;
    let e = w.e_element()?;
    let u = w.unit()?.clone();
    let one_a_e: Vec<SVec> =
        (0..n).map(|a| first_leg_in_r(b, &w.mul2(&w.kron(&u, &unit(a)), &e), n)).collect::<Result<_, _>>()?;
    let a_one_f: Vec<SVec> = (0..n)
        .map(|a| second_leg_in_r(b, &w.mul2(&w.kron(&unit(a), &u), &b.separator), n))
        .collect::<Result<_, _>>()?;
    let first = descend_pairs(
        dm * dv,
        dm * dv,
        (0..dm).flat_map(|i| (0..dv).flat_map(move |j| (0..n).map(move |a| (i, j, a)))).map(|(i, j, a)| {
            let p = kron_vec(&unit(i), &v.act_basis(j, a), dv);
            let mut val = Vec::new();
            for (k, x) in &one_a_e[a] {
                let y = kron_vec(&mb.ract(&unit(i), &unit(k / n)), &v.act_basis(j, k % n), dv);
                axpy_into(&mut val, x, &y);
            }
            (p, val)
        }),
    )
    .map_err(ill("idempotent on M⊗V"))?;
    let second = descend_pairs(
        dv * dm,
        dv * dm,
        (0..dv).flat_map(|j| (0..n).flat_map(move |a| (0..dm).map(move |i| (j, a, i)))).map(|(j, a, i)| {
            let p = kron_vec(&v.act_basis(j, a), &unit(i), dm);
            let mut val = Vec::new();
            for (k, x) in &a_one_f[a] {
                let y = kron_vec(&v.act_basis(j, k / r), &mb.lact(&unit(k % r), &unit(i)), dm);
                axpy_into(&mut val, x, &y);
            }
            (p, val)
        }),
    )
    .map_err(ill("idempotent on V⊗M"))?;
    let mv = tensor_space(&m.space, &v.space);
    let vm = tensor_space(&v.space, &m.space);
    Ok((
        LinMap::new(mv.clone(), mv, Mat::from_sparse_cols(dm * dv, &first))?,
        LinMap::new(vm.clone(), vm, Mat::from_sparse_cols(dv * dm, &second))?,
    ))
}

/// The regular module `(A, μ)`.
pub fn regular_module(w: &WmbStructure) -> AModule {
    AModule { space: w.space().clone(), action: w.algebra.mult_map() }
}

/// The regular comodule `(A, T₁, T₃)`.
pub fn regular_comodule(w: &WmbStructure) -> AComodule {
    AComodule { space: w.space().clone(), lambda: w.t1.clone(), rho: w.t3.clone() }
}

/// `R` with `r·a = Π^R(ra)`.
pub fn base_module(w: &WmbStructure, b: &BaseAlgebra) -> Result<AModule, RepError> {
    let n = w.dim();
    let m = b.dim();
    let mut cols = Vec::with_capacity(m * n);
    for k in 0..m {
        for a in 0..n {
            let ra = w.mul(&b.r.basis[k], &unit(a));
            cols.push(b.pi_right_coords.mat.apply_sparse(&ra));
        }
    }
    AModule::new(b.space().clone(), &w.algebra, Mat::from_sparse_cols(m, &cols))
}

/// `R` with `λ: r⊗a ↦ E(1⊗ra)` and `ϱ: r⊗a ↦ (1⊗ar)E`.
pub fn base_comodule(w: &WmbStructure, b: &BaseAlgebra) -> Result<AComodule, RepError> {
    let n = w.dim();
    let m = b.dim();
    let e = w.e_element()?;
    let u = w.unit()?.clone();
    let mut lam = Vec::with_capacity(m * n);
    let mut rho = Vec::with_capacity(m * n);
    for k in 0..m {
        let r = &b.r.basis[k];
        for a in 0..n {
            let ra = w.mul(r, &unit(a));
            lam.push(first_leg_in_r(b, &w.mul2(&e, &w.kron(&u, &ra)), n)?);
            let ar = w.mul(&unit(a), r);
            rho.push(first_leg_in_r(b, &w.mul2(&w.kron(&u, &ar), &e), n)?);
        }
    }
    AComodule::new(
        b.space().clone(),
        &w.algebra,
        Mat::from_sparse_cols(m * n, &lam),
        Mat::from_sparse_cols(m * n, &rho),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{
        corpus, corpus_instance, right_ideal_module, standard_comodules, standard_modules, Instance,
    };
    use crate::wmb::base_algebra;

    fn kp2() -> Instance {
        corpus_instance("kP2").unwrap()
    }

    #[test]
    fn module_checks() {
        let inst = kp2();
        let w = &inst.structure;
        assert!(check_amodule(&w.algebra, &regular_module(w)).passed());
        let col = right_ideal_module(w, &inst.groupoid, 0);
        assert_eq!(col.dim(), 2);
        assert!(check_amodule(&w.algebra, &col).passed());
        let zero = AModule::new(Space::numbered("z", 1), &w.algebra, Mat::zeros(1, 4)).unwrap();
        let r = check_amodule(&w.algebra, &zero);
        assert_eq!(r.verdict("idempotent module"), Some(false));
    }

    #[test]
    fn comodule_checks() {
        for inst in corpus() {
            for (name, c) in standard_comodules(&inst).unwrap() {
                let r = check_acomodule(&inst.structure, &c);
                assert!(r.passed(), "{} {name}\n{r}", inst.name);
            }
        }
        let w = &kp2().structure;
        let z = Mat::zeros(4, 4);
        let zero = AComodule::new(Space::numbered("z", 1), &w.algebra, z.clone(), z).unwrap();
        assert_eq!(check_acomodule(w, &zero).verdict("full comodule"), Some(false));
    }

    #[test]
    fn standard_modules_pass() {
        for inst in corpus() {
            for (name, v) in standard_modules(&inst).unwrap() {
                let r = check_amodule(&inst.structure.algebra, &v);
                assert!(r.passed(), "{} {name}\n{r}", inst.name);
            }
        }
    }

    #[test]
    fn induced_actions_on_pair_groupoid() {
        let inst = kp2();
        let w = &inst.structure;
        let b = base_algebra(w).unwrap();
        // R basis is e11, e22 in that order
        assert_eq!(b.r.basis, vec![unit(0), unit(3)]);
        let col = right_ideal_module(w, &inst.groupoid, 0);
        let x = induced_r_actions_module(w, &b, &col).unwrap();
        // v.e11 ◁ e11 = v.e11, v.e12 ◁ e11 = 0
        assert_eq!(x.ract(&unit(0), &unit(0)), unit(0));
        assert_eq!(x.ract(&unit(1), &unit(0)), vec![]);
        assert_eq!(x.ract(&unit(1), &unit(1)), unit(1));
        // τ = id on R, so r ▷ v = v·r as well
        assert_eq!(x.lact(&unit(1), &unit(1)), unit(1));
        let c = induced_r_actions_comodule(w, &b, &regular_comodule(w)).unwrap();
        // e_ij ◂ e_jj = e_ij and e_ii ▸ e_ij = e_ij
        for i in 0..2 {
            for j in 0..2 {
                let eij = unit(2 * i + j);
                assert_eq!(c.ract(&eij, &unit(j)), eij);
                assert_eq!(c.lact(&unit(i), &eij), eij);
                assert_eq!(c.ract(&eij, &unit(1 - j)), vec![]);
            }
        }
        assert_eq!(c.ract(&vec![], &unit(0)), vec![]);
    }

    #[test]
    fn hopf_case_actions_are_scalar() {
        let inst = corpus_instance("kZ2").unwrap();
        let w = &inst.structure;
        let b = base_algebra(w).unwrap();
        let x = induced_r_actions_module(w, &b, &regular_module(w)).unwrap();
        assert_eq!(x.right.mat, Mat::identity(2));
        assert_eq!(x.left.mat, Mat::identity(2));
        let c = induced_r_actions_comodule(w, &b, &regular_comodule(w)).unwrap();
        assert_eq!(c.right.mat, Mat::identity(2));
    }

    #[test]
    fn firm_tensor_dimensions() {
        let inst = kp2();
        let w = &inst.structure;
        let b = base_algebra(w).unwrap();
        let a = induced_r_actions_module(w, &b, &regular_module(w)).unwrap();
        let r = induced_r_actions_module(w, &b, &base_module(w, &b).unwrap()).unwrap();
        let col = induced_r_actions_module(w, &b, &right_ideal_module(w, &inst.groupoid, 0)).unwrap();
        assert_eq!(firm_tensor(&b, &r, &r).unwrap().dim(), 2);
        assert_eq!(firm_tensor(&b, &a, &a).unwrap().dim(), 8);
        assert_eq!(firm_tensor(&b, &col, &r).unwrap().dim(), 2);
        assert!(check_triple(&b, &a, &col, &r).unwrap().passed);
        assert!(check_triple(&b, &a, &a, &a).unwrap().passed);
    }

    #[test]
    fn e2_map_matches_split_idempotent() {
        let inst = corpus_instance("kZ2").unwrap();
        let w = &inst.structure;
        let a = regular_module(w);
        assert_eq!(e2_map(w, &a, &a).unwrap().mat, Mat::identity(4));
        for inst in [kp2(), corpus_instance("k^P2").unwrap()] {
            let w = &inst.structure;
            let b = base_algebra(w).unwrap();
            let a = regular_module(w);
            let e2 = e2_map(w, &a, &a).unwrap();
            assert!(e2.is_idempotent());
            let x = induced_r_actions_module(w, &b, &a).unwrap();
            let t = firm_tensor(&b, &x, &x).unwrap();
            assert_eq!(e2.mat, t.idempotent(), "{}", inst.name);
        }
    }

    #[test]
    fn tensor_products_of_modules_and_comodules() {
        for inst in corpus().into_iter().filter(|i| i.structure.dim() <= 6) {
            let w = &inst.structure;
            let b = base_algebra(w).unwrap();
            let a = regular_module(w);
            let ax = induced_r_actions_module(w, &b, &a).unwrap();
            let rm = base_module(w, &b).unwrap();
            let rx = induced_r_actions_module(w, &b, &rm).unwrap();
            let t = firm_tensor(&b, &ax, &rx).unwrap();
            assert_eq!(t.dim(), a.dim(), "{}", inst.name);
            module_tensor(w, &a, &rm, &t).unwrap();
            let t = firm_tensor(&b, &ax, &ax).unwrap();
            module_tensor(w, &a, &a, &t).unwrap();
            let c = regular_comodule(w);
            let cx = induced_r_actions_comodule(w, &b, &c).unwrap();
            let t = firm_tensor(&b, &cx, &cx).unwrap();
            comodule_tensor(w, &c, &c, &t).unwrap();
            let rc = base_comodule(w, &b).unwrap();
            let rcx = induced_r_actions_comodule(w, &b, &rc).unwrap();
            let t = firm_tensor(&b, &cx, &rcx).unwrap();
            assert_eq!(t.dim(), c.dim());
            comodule_tensor(w, &c, &rc, &t).unwrap();
        }
    }

    #[test]
    fn mixed_idempotents_agree() {
        for inst in corpus().into_iter().filter(|i| i.structure.dim() <= 6) {
            let w = &inst.structure;
            let b = base_algebra(w).unwrap();
            let c = regular_comodule(w);
            let v = regular_module(w);
            let (mv, vm) = iota_pi_mixed(w, &b, &c, &v).unwrap();
            let cx = induced_r_actions_comodule(w, &b, &c).unwrap();
            let vx = induced_r_actions_module(w, &b, &v).unwrap();
            assert_eq!(mv.mat, firm_tensor(&b, &cx, &vx).unwrap().idempotent(), "{}", inst.name);
            assert_eq!(vm.mat, firm_tensor(&b, &vx, &cx).unwrap().idempotent(), "{}", inst.name);
        }
        let z2 = corpus_instance("kZ2").unwrap();
        let b = base_algebra(&z2.structure).unwrap();
        let (mv, vm) =
            iota_pi_mixed(&z2.structure, &b, &regular_comodule(&z2.structure), &regular_module(&z2.structure)).unwrap();
        assert_eq!(mv.mat, Mat::identity(4));
        assert_eq!(vm.mat, Mat::identity(4));
    }
}
