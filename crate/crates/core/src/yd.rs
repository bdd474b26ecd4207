//! The canonical maps between tensor products of modules and comodules, the
//! Yetter–Drinfeld checker, tensor products and duals of Yetter–Drinfeld
//! modules.

use crate::exact::{
    apply_block, contract_second, descend_pairs, kron_vec, sparse_kernel, tensor_space, Echelon, LegMap, LinMap, Mat,
    SVec, Scalar, Space,
};
use crate::rep::{
    base_comodule, base_module, check_acomodule, check_amodule, comodule_tensor, diag_action, e2_map, firm_tensor,
    first_leg_in_r, induced_r_actions_comodule, induced_r_actions_module, module_tensor, regular_comodule,
    regular_module, tensor_bimodule, AComodule, AModule, FirmBimodule, RTensor, RepError,
};
use crate::report::{compare, Check, Report};
use crate::wmb::{check_antipode, BaseAlgebra, WmbStructure};

fn unit(i: usize) -> SVec {
    vec![(i, Scalar::one())]
}

fn axpy_into(acc: &mut SVec, x: &Scalar, v: &SVec) {
    *acc = crate::exact::axpy(acc, x, v);
}

fn ill(what: &'static str) -> impl Fn(crate::exact::ExactError) -> RepError {
    move |e| RepError::NotWellDefined(what, e.to_string())
}

/// A module and a comodule on one carrier whose Yetter–Drinfeld conditions
/// have been verified, with the common induced actions.
#[derive(Clone, Debug)]
pub struct YdModule {
    pub module: AModule,
    pub comodule: AComodule,
    pub actions: FirmBimodule,
}

impl YdModule {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn space(&self) -> &Space {
        &self.module.space
    }
}

/// `φ_{V,M}: v·a⊗m ↦ (M⊗v·(−))ϱ(m⊗a)`.
pub fn phi(w: &WmbStructure, v: &AModule, m: &AComodule) -> Result<LinMap, RepError> {
    let n = w.dim();
    let (dv, dm) = (v.dim(), m.dim());
    let cols = descend_pairs(
        dv * dm,
        dm * dv,
        (0..dv).flat_map(|j| (0..n).flat_map(move |a| (0..dm).map(move |i| (j, a, i)))).map(|(j, a, i)| {
            let p = kron_vec(&v.act_basis(j, a), &unit(i), dm);
            let mut val = Vec::new();
            for (k, x) in m.rho(&unit(i * n + a)) {
                axpy_into(&mut val, &x, &kron_vec(&unit(k / n), &v.act_basis(j, k % n), dv));
            }
            (p, val)
        }),
    )
    .map_err(ill("φ"))?;
    Ok(LinMap::new(
        tensor_space(&v.space, &m.space),
        tensor_space(&m.space, &v.space),
        Mat::from_sparse_cols(dm * dv, &cols),
    )?)
}

/// `φ̂_{V,M}` with the two tensor products it runs between.
#[derive(Clone, Debug)]
pub struct PhiHat {
    pub map: LinMap,
    pub phi: LinMap,
    /// `V⊗_R M`.
    pub source: RTensor,
    /// `M⊗_R V`.
    pub target: RTensor,
}

/// `φ̂_{V,M}` defined by `φ̂π_{V,M} = π_{M,V}φ`, using the module-induced
/// actions on `V` and the comodule-induced actions on `M`.
pub fn phi_hat(w: &WmbStructure, b: &BaseAlgebra, v: &AModule, m: &AComodule) -> Result<PhiHat, RepError> {
    let vx = induced_r_actions_module(w, b, v)?;
    let mx = induced_r_actions_comodule(w, b, m)?;
    phi_hat_with(w, v, m, &vx, &mx, b)
}

fn phi_hat_with(
    w: &WmbStructure,
    v: &AModule,
    m: &AComodule,
    vx: &FirmBimodule,
    mx: &FirmBimodule,
    b: &BaseAlgebra,
) -> Result<PhiHat, RepError> {
    let f = phi(w, v, m)?;
    let source = firm_tensor(b, vx, mx)?;
    let target = firm_tensor(b, mx, vx)?;
    let d = v.dim() * m.dim();
    let cols = descend_pairs(
        source.dim(),
        target.dim(),
        (0..d).map(|y| (source.project(&unit(y)), target.project(&f.mat.col_sparse(y)))),
    )
    .map_err(ill("φ̂"))?;
    let map = LinMap::new(source.carrier.clone(), target.carrier.clone(), Mat::from_sparse_cols(target.dim(), &cols))?;
    Ok(PhiHat { map, phi: f, source, target })
}

/// The properties of `φ` and `φ̂` that do not involve a third object.
pub fn check_phi(w: &WmbStructure, b: &BaseAlgebra, v: &AModule, m: &AComodule) -> Result<Report, RepError> {
    let mut rep = Report::new("canonical maps");
    let ph = phi_hat(w, b, v, m)?;
    let f = &ph.phi.mat;
    let mv = tensor_space(&m.space, &v.space);
    rep.push(Check::verdict(
        "φ lands in the split image",
        "ι_{M,V}π_{M,V}φ_{V,M}=φ_{V,M}",
        ph.target.idempotent().mul(f) == *f,
    ));
    rep.push(Check::verdict(
        "φ factors through π",
        "φ_{V,M}ι_{V,M}π_{V,M}=φ_{V,M}",
        f.mul(&ph.source.idempotent()) == *f,
    ));
    let l = ph.target.iota.mat.mul(&ph.map.mat);
    let r = f.mul(&ph.source.iota.mat);
    rep.push(compare(
        "φ̂ lifts to φ",
        "ι_{M,V}φ̂_{V,M}=φ_{V,M}ι_{V,M}",
        &mv,
        (0..ph.source.dim()).map(|x| (vec![ph.source.carrier.label(x).to_string()], l.col_sparse(x), r.col_sparse(x))),
    ));
    // (ε⊗V)φ_{V,A}(v⊗a) = v·a when M is the regular comodule
    let n = w.dim();
    if m.lambda == w.t1 && m.rho == w.t3 {
        let dv = v.dim();
        rep.push(compare(
            "counit on φ",
            "(ε⊗V)φ_{V,A}(v⊗a)=v·a",
            &v.space,
            (0..dv).flat_map(|j| (0..n).map(move |a| (j, a))).map(|(j, a)| {
                let y = f.apply_sparse(&kron_vec(&unit(j), &unit(a), n));
                let l = crate::exact::contract_first(&y, dv, &w.counit);
                (vec![v.space.label(j).to_string(), w.space().label(a).to_string()], l, v.act_basis(j, a))
            }),
        ));
    }
    Ok(rep)
}

/// `(M⊗_R φ̂_{V,N})(φ̂_{V,M}⊗_R N) = φ̂_{V,M⊗_R N}`, compared on `V⊗M⊗N`.
pub fn check_phi_hat_tensor(
    w: &WmbStructure,
    b: &BaseAlgebra,
    v: &AModule,
    m: &AComodule,
    k: &AComodule,
) -> Result<Check, RepError> {
    let (dv, dm, dk) = (v.dim(), m.dim(), k.dim());
    let vx = induced_r_actions_module(w, b, v)?;
    let mx = induced_r_actions_comodule(w, b, m)?;
    let kx = induced_r_actions_comodule(w, b, k)?;
    let t_mk = firm_tensor(b, &mx, &kx)?;
    let mk = comodule_tensor(w, m, k, &t_mk)?;
    let mkx = tensor_bimodule(b, &mx, &kx, &t_mk)?;
    let big = phi_hat_with(w, v, &mk, &vx, &mkx, b)?;
    let f_vm = phi(w, v, m)?;
    let f_vk = phi(w, v, k)?;
    let p_mid = triple_idempotent(b, &mx, &vx, &kx)?;
    let p_out = triple_idempotent(b, &mx, &kx, &vx)?;
    let space = tensor_space(&tensor_space(&v.space, &m.space), &k.space);
    Ok(compare(
        "φ̂ on a tensor product",
        "(M⊗_R φ̂_{V,N})(φ̂_{V,M}⊗_R N)=φ̂_{V,M⊗_R N}",
        &space,
        (0..dv * dm * dk).map(|x| {
            // V⊗M⊗N → V⊗(M⊗_R N) → V⊗_R(M⊗_R N)
            let p = apply_block(&unit(x), dm * dk, 1, &t_mk.pi.mat);
            let p = big.source.project(&p);
            let y = big.target.lift(&big.map.mat.apply_sparse(&p));
            let rhs = apply_block(&y, t_mk.dim(), dv, &t_mk.iota.mat);
            // the same element of V⊗M⊗N, pushed through both φ's with the
            // balancing idempotents in between
            let z = apply_block(&big.source.lift(&p), t_mk.dim(), 1, &t_mk.iota.mat);
            let z = apply_block(&z, dv * dm, dk, &f_vm.mat);
            let z = p_mid.apply_sparse(&z);
            let z = apply_block(&z, dv * dk, 1, &f_vk.mat);
            let lhs = p_out.apply_sparse(&z);
            (vec![space.label(x).to_string()], lhs, rhs)
        }),
    ))
}

/// The idempotent on `X⊗Y⊗Z` splitting through `(X⊗_R Y)⊗_R Z`.
fn triple_idempotent(b: &BaseAlgebra, x: &FirmBimodule, y: &FirmBimodule, z: &FirmBimodule) -> Result<Mat, RepError> {
    let (dx, dy, dz) = (x.dim(), y.dim(), z.dim());
    let t_xy = firm_tensor(b, x, y)?;
    let xy = tensor_bimodule(b, x, y, &t_xy)?;
    let t = firm_tensor(b, &xy, z)?;
    let cols: Vec<SVec> = (0..dx * dy * dz)
        .map(|k| {
            let u = apply_block(&unit(k), dx * dy, dz, &t_xy.pi.mat);
            let u = t.lift(&t.project(&u));
            apply_block(&u, t_xy.dim(), dz, &t_xy.iota.mat)
        })
        .collect();
    Ok(Mat::from_sparse_cols(dx * dy * dz, &cols))
}

/// `(M⊗g)φ_{V,M} = φ_{V',M}(g⊗M)` for a module map `g: V → V'`.
pub fn check_phi_natural_in_module(
    w: &WmbStructure,
    g: &Mat,
    v: &AModule,
    v2: &AModule,
    m: &AComodule,
) -> Result<bool, RepError> {
    let f1 = phi(w, v, m)?;
    let f2 = phi(w, v2, m)?;
    let dm = m.dim();
    Ok((0..v.dim() * dm).all(|x| {
        let l = apply_block(&f1.mat.col_sparse(x), v.dim(), 1, g);
        let r = f2.mat.apply_sparse(&apply_block(&unit(x), v.dim(), dm, g));
        l == r
    }))
}

/// `φ_{V,M'}(V⊗f) = (f⊗V)φ_{V,M}` for a comodule map `f: M → M'`.
pub fn check_phi_natural_in_comodule(
    w: &WmbStructure,
    f: &Mat,
    v: &AModule,
    m: &AComodule,
    m2: &AComodule,
) -> Result<bool, RepError> {
    let f1 = phi(w, v, m)?;
    let f2 = phi(w, v, m2)?;
    let (dv, dm) = (v.dim(), m.dim());
    Ok((0..dv * dm).all(|x| {
        let l = f2.mat.apply_sparse(&apply_block(&unit(x), dm, 1, f));
        let r = apply_block(&f1.mat.col_sparse(x), dm, dv, f);
        l == r
    }))
}

/// Whether `f: M → M'` commutes with both coactions.
pub fn is_comodule_map(w: &WmbStructure, f: &Mat, m: &AComodule, m2: &AComodule) -> bool {
    let n = w.dim();
    (0..m.dim() * n).all(|x| {
        let fx = apply_block(&unit(x), m.dim(), n, f);
        apply_block(&m.lam(&unit(x)), m.dim(), n, f) == m2.lam(&fx)
            && apply_block(&m.rho(&unit(x)), m.dim(), n, f) == m2.rho(&fx)
    })
}

/// Whether `g: V → V'` commutes with the actions.
pub fn is_module_map(w: &WmbStructure, g: &Mat, v: &AModule, v2: &AModule) -> bool {
    let n = w.dim();
    (0..v.dim()).all(|i| (0..n).all(|a| g.apply_sparse(&v.act_basis(i, a)) == v2.act(&g.col_sparse(i), &unit(a))))
}

/// `φ̂⁻¹(m⊗_R v·a) = π(v·S⁻¹(y)⊗x)` where `λ(m⊗S(a)) = Σ x⊗y`.
#[derive(Clone, Debug)]
pub struct PhiHatInverse {
    pub forward: PhiHat,
    pub inverse: LinMap,
    pub report: Report,
}

pub fn phi_hat_inverse(
    w: &WmbStructure,
    b: &BaseAlgebra,
    v: &AModule,
    m: &AComodule,
) -> Result<PhiHatInverse, RepError> {
    let s = w.antipode.as_ref().ok_or(RepError::Structural("no antipode".into()))?;
    if !check_antipode(w, b).passed() {
        return Err(RepError::Structural("not a regular weak multiplier Hopf algebra".into()));
    }
    let s_inv = s.inverse().ok_or(RepError::Structural("antipode is not bijective".into()))?;
    let fwd = phi_hat(w, b, v, m)?;
    let n = w.dim();
    let (dv, dm) = (v.dim(), m.dim());
    let cols = descend_pairs(
        fwd.target.dim(),
        fwd.source.dim(),
        (0..dm).flat_map(|i| (0..dv).flat_map(move |j| (0..n).map(move |a| (i, j, a)))).map(|(i, j, a)| {
            let p = fwd.target.project(&kron_vec(&unit(i), &v.act_basis(j, a), dv));
            let lam = m.lam(&kron_vec(&unit(i), &s.mat.col_sparse(a), n));
            let mut val = Vec::new();
            for (k, c) in lam {
                let (x, y) = (k / n, k % n);
                let vy = v.act(&unit(j), &s_inv.mat.col_sparse(y));
                axpy_into(&mut val, &c, &fwd.source.project(&kron_vec(&vy, &unit(x), dm)));
            }
            (p, val)
        }),
    )
    .map_err(ill("φ̂⁻¹"))?;
    let inverse = LinMap::new(
        fwd.target.carrier.clone(),
        fwd.source.carrier.clone(),
        Mat::from_sparse_cols(fwd.source.dim(), &cols),
    )?;
    let mut report = Report::new("inverse of φ̂");
    let c1 = inverse.mat.mul(&fwd.map.mat) == Mat::identity(fwd.source.dim());
    let c2 = fwd.map.mat.mul(&inverse.mat) == Mat::identity(fwd.target.dim());
    report.push(Check::verdict("φ̂⁻¹φ̂ = id", "v·S⁻¹(S(a)^λ)⊗_R m^λ", c1));
    report.push(Check::verdict("φ̂φ̂⁻¹ = id", "v·S⁻¹(S(a)^λ)⊗_R m^λ", c2));
    report.push(check_lambda_s_rho(w, b, m, &s.mat)?);
    if !(c1 && c2) {
        return Err(RepError::Structural("φ̂⁻¹ is not a two-sided inverse".into()));
    }
    Ok(PhiHatInverse { forward: fwd, inverse, report })
}

/// `λ(M⊗S)ϱ = E₁^{M,A}(M⊗S)` with `E₁^{M,A}(m⊗a) = ((−)▸m⊗A)[E(1⊗a)]`.
pub fn check_lambda_s_rho(w: &WmbStructure, b: &BaseAlgebra, m: &AComodule, s: &Mat) -> Result<Check, RepError> {
    let n = w.dim();
    let dm = m.dim();
    let mx = induced_r_actions_comodule(w, b, m)?;
    let e = w.e_element()?;
    let u = w.unit()?.clone();
    let ea: Vec<SVec> =
        (0..n).map(|a| first_leg_in_r(b, &w.mul2(&e, &w.kron(&u, &unit(a))), n)).collect::<Result<_, _>>()?;
    let e1 = |x: &SVec| -> SVec {
        let mut out = Vec::new();
        for (k, c) in x {
            let (i, a) = (k / n, k % n);
            for (t, d) in &ea[a] {
                let y = kron_vec(&mx.lact(&unit(t / n), &unit(i)), &unit(t % n), n);
                axpy_into(&mut out, &c.mul(d), &y);
            }
        }
        out
    };
    let ma = tensor_space(&m.space, w.space());
    Ok(compare(
        "λ(M⊗S)ϱ = E₁^{M,A}(M⊗S)",
        "λ(M⊗S)ϱ=E₁^{M,A}(M⊗S)",
        &ma,
        (0..dm * n).map(|x| {
            let l = m.lam(&apply_block(&m.rho(&unit(x)), n, 1, s));
            let rr = e1(&apply_block(&unit(x), n, 1, s));
            (vec![ma.label(x).to_string()], l, rr)
        }),
    ))
}

/// Verdicts of the Yetter–Drinfeld battery.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct YdVerdicts {
    pub right_actions_agree: bool,
    pub left_actions_agree: bool,
    pub normalized_right: bool,
    pub normalized_left: bool,
    pub cond_a: bool,
    pub cond_c: bool,
    pub cond_e: bool,
}

impl YdVerdicts {
    pub fn normalized(&self) -> bool {
        self.normalized_right && self.normalized_left
    }

    pub fn is_yd(&self) -> bool {
        self.normalized() && self.cond_e
    }

    /// `(a)`, `(c)`, `(e)` all equal.
    pub fn conditions_agree(&self) -> bool {
        self.cond_a == self.cond_c && self.cond_c == self.cond_e
    }
}

#[derive(Clone, Debug)]
pub struct YdCheck {
    pub report: Report,
    pub verdicts: YdVerdicts,
    pub yd: Option<YdModule>,
}

/// `(x⊗a)·Δ^op(b) = Σ x·b₂⊗ab₁` on `X⊗A`, as a map `(X⊗A)⊗A → X⊗A`.
fn yd_sides(w: &WmbStructure, x: &AModule, c: &AComodule, i: usize, a: usize, bb: usize) -> (SVec, SVec) {
    let n = w.dim();
    let d = w.delta(&unit(bb)).unwrap_or_default();
    let mut lhs_in = Vec::new();
    for (k, co) in &d {
        let (b1, b2) = (k / n, k % n);
        let y = kron_vec(&x.act_basis(i, b2), &w.mul(&unit(a), &unit(b1)), n);
        axpy_into(&mut lhs_in, co, &y);
    }
    let lhs = c.rho(&lhs_in);
    let mut rhs = Vec::new();
    for (k, co) in c.rho(&unit(i * n + a)) {
        let (y, cc) = (k / n, k % n);
        for (t, d2) in &d {
            let (b1, b2) = (t / n, t % n);
            let z = kron_vec(&x.act(&unit(y), &unit(b1)), &w.mul(&unit(cc), &unit(b2)), n);
            axpy_into(&mut rhs, &co.mul(d2), &z);
        }
    }
    (lhs, rhs)
}

fn flip_map(p: usize, q: usize) -> Mat {
    let cols: Vec<SVec> = (0..p * q).map(|k| unit((k % q) * p + k / q)).collect();
    Mat::from_sparse_cols(p * q, &cols)
}

/// The Yetter–Drinfeld battery on a module and a comodule sharing a
/// carrier. Conditions (c) and (a) are tested on the regular objects and on
/// the supplied extra ones. The three conditions are required to agree when
/// both normalizations hold.
pub fn check_yd(
    w: &WmbStructure,
    b: &BaseAlgebra,
    x: &AModule,
    c: &AComodule,
    extra_modules: &[AModule],
    extra_comodules: &[AComodule],
) -> YdCheck {
    let mut rep = Report::new("Yetter-Drinfeld");
    let mut v = YdVerdicts::default();
    let n = w.dim();
    let dx = x.dim();
    if x.space.labels() != c.space.labels() {
        rep.push(Check::fail("one carrier", "X carries a module and a comodule", None).with_note("different spaces"));
        return YdCheck { report: rep, verdicts: v, yd: None };
    }
    let mr = check_amodule(&w.algebra, x);
    let cr = check_acomodule(w, c);
    let ok = mr.passed() && cr.passed();
    rep.absorb("module", mr);
    rep.absorb("comodule", cr);
    if !ok {
        return YdCheck { report: rep, verdicts: v, yd: None };
    }
    let mx = match induced_r_actions_module(w, b, x) {
        Ok(a) => a,
        Err(e) => {
            rep.push(Check::fail("module-induced actions", "(v·a)◁r:=v·(ar)", None).with_note(e.to_string()));
            return YdCheck { report: rep, verdicts: v, yd: None };
        }
    };
    let cx = match induced_r_actions_comodule(w, b, c) {
        Ok(a) => a,
        Err(e) => {
            rep.push(Check::fail("comodule-induced actions", "m◂Π̄^R(a):=(M⊗ε)λ(m⊗a)", None).with_note(e.to_string()));
            return YdCheck { report: rep, verdicts: v, yd: None };
        }
    };
    v.right_actions_agree = mx.right == cx.right;
    v.left_actions_agree = mx.left == cx.left;
    rep.push(Check::verdict("(1.a) right actions agree", "x·aΠ̄^R(b)=(X⊗ε)λ(x·a⊗b)", v.right_actions_agree));
    rep.push(Check::verdict("(2.a) left actions agree", "x·aΠ̄^L(b)=(X⊗ε)ϱ(x·a⊗b)", v.left_actions_agree));
    let a = regular_module(w);
    let xa = tensor_space(&x.space, w.space());
    match (e2_map(w, x, &a), e2_map(w, &a, x)) {
        (Ok(e_xa), Ok(e_ax)) => {
            let rho = &c.rho.mat;
            v.normalized_right = e_xa.mat.mul(rho) == *rho;
            // (E₂^{A,X})^{21} on X⊗A: flip to A⊗X, apply, flip back
            let e21 = flip_map(n, dx).mul(&e_ax.mat).mul(&flip_map(dx, n));
            v.normalized_left = rho.mul(&e21) == *rho;
        }
        (r1, r2) => {
            let msg = r1.err().or(r2.err()).map(|e| e.to_string()).unwrap_or_default();
            rep.push(Check::fail("E₂ maps", "(v·(−)⊗w·(−))[(a⊗b)E]", None).with_note(msg));
        }
    }
    rep.push(Check::verdict("(1.b) right normalization", "E₂^{X,A}ϱ=ϱ", v.normalized_right));
    rep.push(Check::verdict("(2.b) left normalization", "ϱ(E₂^{A,X})^{21}=ϱ", v.normalized_left));
    rep.push(Check::verdict(
        "(1.a) ⇔ (1.b)",
        "the following assertions are equivalent",
        v.right_actions_agree == v.normalized_right,
    ));
    rep.push(Check::verdict(
        "(2.a) ⇔ (2.b)",
        "the following assertions are equivalent",
        v.left_actions_agree == v.normalized_left,
    ));
    // (e)
    let e_check = compare(
        "(e) Yetter-Drinfeld condition",
        "ϱ[(x⊗a)Δ^op(b)]=ϱ(x⊗a)Δ(b)",
        &xa,
        (0..dx).flat_map(|i| (0..n).flat_map(move |a| (0..n).map(move |bb| (i, a, bb)))).map(|(i, a2, bb)| {
            let (l, r) = yd_sides(w, x, c, i, a2, bb);
            (vec![x.space.label(i).to_string(), w.space().label(a2).to_string(), w.space().label(bb).to_string()], l, r)
        }),
    );
    v.cond_e = e_check.passed;
    rep.push(e_check);
    if v.cond_e {
        let all = v.right_actions_agree == v.left_actions_agree
            && v.left_actions_agree == v.normalized_right
            && v.normalized_right == v.normalized_left;
        rep.push(Check::verdict("(1) ⇔ (2) under (e)", "the assertions in part (1) and part (2) are equivalent", all));
    }
    // (c): φ_{V,X} is a module map for the diagonal actions
    let mut mods = vec![a.clone()];
    mods.extend(extra_modules.iter().cloned());
    let mut c_ok = true;
    let mut c_note = String::new();
    for (k, m) in mods.iter().enumerate() {
        match module_map_verdict(w, m, x, c) {
            Ok(true) => {}
            Ok(false) => {
                c_ok = false;
                c_note = format!("fails for module #{k}");
                break;
            }
            Err(e) => {
                c_ok = false;
                c_note = format!("module #{k}: {e}");
                break;
            }
        }
    }
    v.cond_c = c_ok;
    let mut cc =
        Check::verdict("(c) φ_{V,X} is a module map", "φ̂_{V,X}:V⊗_R X→X⊗_R V is a morphism of A-modules", c_ok);
    if !c_note.is_empty() {
        cc = cc.with_note(c_note);
    }
    rep.push(cc);
    // (a): φ_{X,M} is a comodule map for the tensor coactions
    let mut comods = vec![regular_comodule(w)];
    comods.extend(extra_comodules.iter().cloned());
    let mut a_ok = true;
    let mut a_note = String::new();
    for (k, m) in comods.iter().enumerate() {
        match comodule_map_verdict(w, x, c, m) {
            Ok(true) => {}
            Ok(false) => {
                a_ok = false;
                a_note = format!("fails for comodule #{k}");
                break;
            }
            Err(e) => {
                a_ok = false;
                a_note = format!("comodule #{k}: {e}");
                break;
            }
        }
    }
    v.cond_a = a_ok;
    let mut ca =
        Check::verdict("(a) φ_{X,M} is a comodule map", "φ̂_{X,M}:X⊗_R M→M⊗_R X is a morphism of A-comodules", a_ok);
    if !a_note.is_empty() {
        ca = ca.with_note(a_note);
    }
    rep.push(ca);
    let values = format!("(a) {}, (c) {}, (e) {}", v.cond_a, v.cond_c, v.cond_e);
    if v.normalized() {
        rep.push(
            Check::verdict("(a) ⇔ (c) ⇔ (e)", "the following assertions are equivalent", v.conditions_agree())
                .with_note(values),
        );
    } else if v.conditions_agree() {
        rep.push(Check::pass("(a) ⇔ (c) ⇔ (e)", "the following assertions are equivalent").with_note(values));
    } else {
        rep.push(
            Check::pass("(a) ⇔ (c) ⇔ (e)", "the following assertions are equivalent")
                .with_note(format!("{values}; normalizations fail, so agreement is not implied")),
        );
    }
    let yd = if v.is_yd() && v.right_actions_agree && v.left_actions_agree {
        Some(YdModule { module: x.clone(), comodule: c.clone(), actions: mx })
    } else {
        None
    };
    rep.push(Check::verdict("Yetter-Drinfeld module", "a right-right Yetter-Drinfeld module", yd.is_some()));
    YdCheck { report: rep, verdicts: v, yd }
}

/// `φ_{V,X}((v⊗x)·c) = φ_{V,X}(v⊗x)·c` with diagonal actions on `V⊗X` and
/// `X⊗V`.
fn module_map_verdict(w: &WmbStructure, v: &AModule, x: &AModule, c: &AComodule) -> Result<bool, RepError> {
    let n = w.dim();
    let f = phi(w, v, c)?;
    let dvx = diag_action(w, v, x)?;
    let dxv = diag_action(w, x, v)?;
    let d = v.dim() * x.dim();
    Ok((0..d).all(|y| {
        (0..n).all(|a| {
            let l = f.mat.apply_sparse(&dvx.mat.col_sparse(y * n + a));
            let r = dxv.mat.apply_sparse(&kron_vec(&f.mat.col_sparse(y), &unit(a), n));
            l == r
        })
    }))
}

/// `(M⊗ϱ)ϱ_M^{13}(φ_{X,M}⊗A) = (φ_{X,M}⊗A)(X⊗ϱ_M)ϱ^{13}` on `X⊗M⊗A`.
fn comodule_map_verdict(w: &WmbStructure, x: &AModule, c: &AComodule, m: &AComodule) -> Result<bool, RepError> {
    let n = w.dim();
    let (dx, dm) = (x.dim(), m.dim());
    let f = phi(w, x, m)?;
    let rm = LegMap::new(&m.rho);
    let rc = LegMap::new(&c.rho);
    Ok((0..dx * dm * n).all(|k| {
        let e = unit(k);
        let y = apply_block(&e, dx * dm, n, &f.mat);
        let y = rm.apply(&y, &[dm, dx, n], &[0, 2]);
        let l = apply_block(&y, dx * n, 1, &c.rho.mat);
        let z = rc.apply(&e, &[dx, dm, n], &[0, 2]);
        let z = apply_block(&z, dm * n, 1, &m.rho.mat);
        let r = apply_block(&z, dx * dm, n, &f.mat);
        l == r
    }))
}

/// Also tests condition (c) on the firm tensor products `V⊗_R X`, for a
/// Yetter–Drinfeld module whose two pairs of induced actions coincide.
pub fn check_phi_hat_module_map(
    w: &WmbStructure,
    b: &BaseAlgebra,
    y: &YdModule,
    v: &AModule,
) -> Result<bool, RepError> {
    let n = w.dim();
    let vx = induced_r_actions_module(w, b, v)?;
    let ph = phi_hat_with(w, v, &y.comodule, &vx, &y.actions, b)?;
    let s = module_tensor(w, v, &y.module, &ph.source)?;
    let t = module_tensor(w, &y.module, v, &ph.target)?;
    Ok((0..ph.source.dim()).all(|z| {
        (0..n).all(|a| {
            let l = ph.map.mat.apply_sparse(&s.act_basis(z, a));
            let r = t.act(&ph.map.mat.col_sparse(z), &unit(a));
            l == r
        })
    }))
}

/// The unit object `R`.
pub fn unit_yd(w: &WmbStructure, b: &BaseAlgebra) -> Result<YdModule, RepError> {
    let m = base_module(w, b)?;
    let c = base_comodule(w, b)?;
    let chk = check_yd(w, b, &m, &c, &[], &[]);
    chk.yd.ok_or_else(|| RepError::Structural(format!("R is not Yetter-Drinfeld:\n{}", chk.report)))
}

/// `X⊗_R Y` with the tensor action and coaction, re-checked.
pub fn yd_tensor(
    w: &WmbStructure,
    b: &BaseAlgebra,
    x: &YdModule,
    y: &YdModule,
) -> Result<(YdModule, RTensor), RepError> {
    let t = firm_tensor(b, &x.actions, &y.actions)?;
    let module = module_tensor(w, &x.module, &y.module, &t)?;
    let comodule = comodule_tensor(w, &x.comodule, &y.comodule, &t)?;
    let chk = check_yd(w, b, &module, &comodule, &[], &[]);
    let out = chk
        .yd
        .ok_or_else(|| RepError::Structural(format!("tensor product is not Yetter-Drinfeld:\n{}", chk.report)))?;
    // the structure maps restrict to the tensor actions exactly
    let tb = tensor_bimodule(b, &x.actions, &y.actions, &t)?;
    if tb != out.actions {
        return Err(RepError::Structural("induced actions differ from the tensor actions".into()));
    }
    Ok((out, t))
}

/// A linear isomorphism `X⊗_R R → X` (`x◁r`) and `R⊗_R X → X` (`r▷x`),
/// checked against the actions and coactions.
pub fn check_unit_laws(w: &WmbStructure, b: &BaseAlgebra, x: &YdModule) -> Result<Report, RepError> {
    let r = unit_yd(w, b)?;
    let mut rep = Report::new("unit laws");
    let (xr, txr) = yd_tensor(w, b, x, &r)?;
    let (rx, trx) = yd_tensor(w, b, &r, x)?;
    let dx = x.dim();
    // x⊗r ↦ x◁r, then carrier → X
    let right: Vec<SVec> =
        (0..txr.dim()).map(|z| apply_block(&txr.lift(&unit(z)), dx * b.dim(), 1, &x.actions.right.mat)).collect();
    let left: Vec<SVec> = (0..trx.dim()).map(|z| x.actions.left.mat.apply_sparse(&trx.lift(&unit(z)))).collect();
    for (name, cols, t) in [("X⊗_R R ≅ X", right, &xr), ("R⊗_R X ≅ X", left, &rx)] {
        let g = Mat::from_sparse_cols(dx, &cols);
        let iso = g.rows() == g.cols() && g.rank() == dx;
        let mm = is_module_map(w, &g, &t.module, &x.module);
        let cm = is_comodule_map(w, &g, &t.comodule, &x.comodule);
        rep.push(
            Check::verdict(name, "commutative diagram of strict monoidal forgetful functors", iso && mm && cm)
                .with_note(format!("bijective {iso}, module map {mm}, comodule map {cm}")),
        );
    }
    Ok(rep)
}

/// The dual of a Yetter–Drinfeld module with its evaluation and
/// coevaluation.
#[derive(Clone, Debug)]
pub struct YdDual {
    pub dual: YdModule,
    /// `X*⊗_R X → R`.
    pub ev: LinMap,
    /// `R → X⊗_R X*`.
    pub coev: LinMap,
    pub ev_tensor: RTensor,
    pub coev_tensor: RTensor,
    pub report: Report,
}

/// The dual action `(φ·a)(x) = φ(x·S⁻¹(a))` and the coaction
/// `ϱ*(φ⊗S(d)) = φ((−)^λ)⊗S(d^λ)`, `λ*(φ⊗b) = ϱ*(φ⊗1)(1⊗b)`.
pub fn dual_structure(w: &WmbStructure, x: &YdModule) -> Result<(AModule, AComodule), RepError> {
    let s = w.antipode.as_ref().ok_or(RepError::Structural("no antipode".into()))?;
    let s_inv = s.inverse().ok_or(RepError::Structural("antipode is not bijective".into()))?;
    let n = w.dim();
    let d = x.dim();
    let labels: Vec<String> = x.space().labels().iter().map(|l| format!("ξ.{l}")).collect();
    let space = Space::new(labels).expect("distinct labels");
    // column (j, a): Σ_i [x_i·S⁻¹(a)]_j ξ^i
    let mut act = Vec::with_capacity(d * n);
    for j in 0..d {
        for a in 0..n {
            let sa = s_inv.mat.col_sparse(a);
            let col: SVec = (0..d)
                .filter_map(|i| {
                    let y = x.module.act(&unit(i), &sa);
                    y.iter().find(|(k, _)| *k == j).map(|(_, c)| (i, c.clone()))
                })
                .collect();
            act.push(col);
        }
    }
    let module = AModule::new(space.clone(), &w.algebra, Mat::from_sparse_cols(d, &act))?;
    // ϱ*(ξ^j ⊗ S(e_d)) = Σ_i Σ_{k,l} [λ(x_i⊗e_d)]_{kl} δ_{jk} ξ^i ⊗ S(e_l)
    let rho_s: Vec<Vec<SVec>> = (0..d)
        .map(|j| {
            (0..n)
                .map(|dd| {
                    let mut out = Vec::new();
                    for i in 0..d {
                        for (kl, c) in x.comodule.lam(&unit(i * n + dd)) {
                            let (k, l) = (kl / n, kl % n);
                            if k == j {
                                let y = kron_vec(&unit(i), &s.mat.col_sparse(l), n);
                                axpy_into(&mut out, &c, &y);
                            }
                        }
                    }
                    out
                })
                .collect()
        })
        .collect();
    // ϱ*(ξ^j⊗a) with a = S(S⁻¹(a))
    let mut rho = Vec::with_capacity(d * n);
    for j in 0..d {
        for a in 0..n {
            let mut out = Vec::new();
            for (dd, c) in s_inv.mat.col_sparse(a) {
                axpy_into(&mut out, &c, &rho_s[j][dd]);
            }
            rho.push(out);
        }
    }
    let rho = Mat::from_sparse_cols(d * n, &rho);
    let u = w.unit()?.clone();
    let mut lam = Vec::with_capacity(d * n);
    for j in 0..d {
        let r1 = rho.apply_sparse(&kron_vec(&unit(j), &u, n));
        for a in 0..n {
            lam.push(apply_block(&r1, n, 1, &w.algebra.right_op(&unit(a))));
        }
    }
    let comodule = AComodule::new(space, &w.algebra, Mat::from_sparse_cols(d * n, &lam), rho)?;
    Ok((module, comodule))
}

/// Inverse of the action `X⊗_R R → X` as a map into the carrier.
fn right_unit_inverse(b: &BaseAlgebra, x: &FirmBimodule, t: &RTensor) -> Result<Mat, RepError> {
    let (d, m) = (x.dim(), b.dim());
    let cols = descend_pairs(
        d,
        t.dim(),
        (0..d)
            .flat_map(|i| (0..m).map(move |k| (i, k)))
            .map(|(i, k)| (x.ract(&unit(i), &unit(k)), t.project(&kron_vec(&unit(i), &unit(k), m)))),
    )
    .map_err(ill("right unit constraint"))?;
    Ok(Mat::from_sparse_cols(t.dim(), &cols))
}

fn left_unit_inverse(b: &BaseAlgebra, x: &FirmBimodule, t: &RTensor) -> Result<Mat, RepError> {
    let (d, m) = (x.dim(), b.dim());
    let cols = descend_pairs(
        d,
        t.dim(),
        (0..m)
            .flat_map(|k| (0..d).map(move |i| (k, i)))
            .map(|(k, i)| (x.lact(&unit(k), &unit(i)), t.project(&kron_vec(&unit(k), &unit(i), d)))),
    )
    .map_err(ill("left unit constraint"))?;
    Ok(Mat::from_sparse_cols(t.dim(), &cols))
}

/// `f⊗_R g = π(f⊗g)ι` between carriers.
fn tensor_maps(f: &Mat, g: &Mat, src: &RTensor, tgt: &RTensor) -> Mat {
    let cols: Vec<SVec> = (0..src.dim())
        .map(|z| {
            let y = src.lift(&unit(z));
            let y = crate::exact::map_pair(&y, f.cols(), g.cols(), Some(f), Some(g));
            tgt.project(&y)
        })
        .collect();
    Mat::from_sparse_cols(tgt.dim(), &cols)
}

/// `(U⊗_R V)⊗_R W → U⊗_R(V⊗_R W)`.
fn associator(uv: &RTensor, uv_w: &RTensor, vw: &RTensor, u_vw: &RTensor, dv: usize, dw: usize) -> Mat {
    let cols: Vec<SVec> = (0..uv_w.dim())
        .map(|z| {
            let y = uv_w.lift(&unit(z));
            let y = apply_block(&y, uv.dim(), dw, &uv.iota.mat);
            let y = apply_block(&y, dv * dw, 1, &vw.pi.mat);
            u_vw.project(&y)
        })
        .collect();
    Mat::from_sparse_cols(u_vw.dim(), &cols)
}

pub fn yd_dual(w: &WmbStructure, b: &BaseAlgebra, x: &YdModule) -> Result<YdDual, RepError> {
    if !check_antipode(w, b).passed() {
        return Err(RepError::Structural("not a regular weak multiplier Hopf algebra".into()));
    }
    let (module, comodule) = dual_structure(w, x)?;
    let chk = check_yd(w, b, &module, &comodule, &[], &[]);
    let dual = chk.yd.ok_or_else(|| RepError::Structural(format!("dual is not Yetter-Drinfeld:\n{}", chk.report)))?;
    let r = unit_yd(w, b)?;
    let d = x.dim();
    let m = b.dim();
    let xs = &dual.actions;
    let xa = &x.actions;
    // ev(φ⊗_R x◂r) = φ(x◂r₁)r₂
    let ev_t = firm_tensor(b, xs, xa)?;
    let deltas: Vec<SVec> = (0..m).map(|k| b.coproduct(&unit(k))).collect();
    let ev_cols = descend_pairs(
        ev_t.dim(),
        m,
        (0..d).flat_map(|j| (0..d).flat_map(move |i| (0..m).map(move |k| (j, i, k)))).map(|(j, i, k)| {
            let p = ev_t.project(&kron_vec(&unit(j), &xa.ract(&unit(i), &unit(k)), d));
            let mut val = Vec::new();
            for (t, c) in &deltas[k] {
                let y = xa.ract(&unit(i), &unit(t / m));
                if let Some((_, phi)) = y.iter().find(|(q, _)| *q == j) {
                    axpy_into(&mut val, &c.mul(phi), &unit(t % m));
                }
            }
            (p, val)
        }),
    )
    .map_err(ill("ev"))?;
    let ev = LinMap::new(ev_t.carrier.clone(), b.space().clone(), Mat::from_sparse_cols(m, &ev_cols))?;
    // coev(r) = Σ_i π(r▸x_i⊗ξ^i)
    let coev_t = firm_tensor(b, xa, xs)?;
    let coev_cols: Vec<SVec> = (0..m)
        .map(|k| {
            let mut v = Vec::new();
            for i in 0..d {
                axpy_into(&mut v, &Scalar::one(), &kron_vec(&xa.lact(&unit(k), &unit(i)), &unit(i), d));
            }
            coev_t.project(&v)
        })
        .collect();
    let coev = LinMap::new(b.space().clone(), coev_t.carrier.clone(), Mat::from_sparse_cols(coev_t.dim(), &coev_cols))?;
    let mut report = chk.report;
    report.title = "dual".into();
    // morphism checks
    let ev_mod = module_tensor(w, &dual.module, &x.module, &ev_t)?;
    let ev_com = comodule_tensor(w, &dual.comodule, &x.comodule, &ev_t)?;
    let co_mod = module_tensor(w, &x.module, &dual.module, &coev_t)?;
    let co_com = comodule_tensor(w, &x.comodule, &dual.comodule, &coev_t)?;
    report.push(Check::verdict(
        "ev module map",
        "morphisms of A-modules too",
        is_module_map(w, &ev.mat, &ev_mod, &r.module),
    ));
    report.push(Check::verdict("ev comodule map", "ev", is_comodule_map(w, &ev.mat, &ev_com, &r.comodule)));
    report.push(Check::verdict(
        "coev module map",
        "morphisms of A-modules too",
        is_module_map(w, &coev.mat, &r.module, &co_mod),
    ));
    report.push(Check::verdict("coev comodule map", "coev", is_comodule_map(w, &coev.mat, &r.comodule, &co_com)));
    // triangles
    let id_x = Mat::identity(d);
    let t_rx = firm_tensor(b, &r.actions, xa)?;
    let xxs = tensor_bimodule(b, xa, xs, &coev_t)?;
    let t_xxs_x = firm_tensor(b, &xxs, xa)?;
    let xsx = tensor_bimodule(b, xs, xa, &ev_t)?;
    let t_x_xsx = firm_tensor(b, xa, &xsx)?;
    let t_xr = firm_tensor(b, xa, &r.actions)?;
    let step1 = left_unit_inverse(b, xa, &t_rx)?;
    let step2 = tensor_maps(&coev.mat, &id_x, &t_rx, &t_xxs_x);
    let step3 = associator(&coev_t, &t_xxs_x, &ev_t, &t_x_xsx, d, d);
    let step4 = tensor_maps(&id_x, &ev.mat, &t_x_xsx, &t_xr);
    let step5: Vec<SVec> =
        (0..t_xr.dim()).map(|z| apply_block(&t_xr.lift(&unit(z)), d * m, 1, &xa.right.mat)).collect();
    let step5 = Mat::from_sparse_cols(d, &step5);
    let tri1 = step5.mul(&step4).mul(&step3).mul(&step2).mul(&step1);
    report.push(Check::verdict("triangle on X", "obey the triangular identities of duality", tri1 == id_x));
    let t_xsr = firm_tensor(b, xs, &r.actions)?;
    let t_xs_xxs = firm_tensor(b, xs, &xxs)?;
    let t_xsx_xs = firm_tensor(b, &xsx, xs)?;
    let t_rxs = firm_tensor(b, &r.actions, xs)?;
    let s1 = right_unit_inverse(b, xs, &t_xsr)?;
    let s2 = tensor_maps(&id_x, &coev.mat, &t_xsr, &t_xs_xxs);
    // X*⊗_R(X⊗_R X*) → (X*⊗_R X)⊗_R X*
    let s3: Vec<SVec> = (0..t_xs_xxs.dim())
        .map(|z| {
            let y = t_xs_xxs.lift(&unit(z));
            let y = apply_block(&y, coev_t.dim(), 1, &coev_t.iota.mat);
            let y = apply_block(&y, d * d, d, &ev_t.pi.mat);
            t_xsx_xs.project(&y)
        })
        .collect();
    let s3 = Mat::from_sparse_cols(t_xsx_xs.dim(), &s3);
    let s4 = tensor_maps(&ev.mat, &id_x, &t_xsx_xs, &t_rxs);
    let s5: Vec<SVec> = (0..t_rxs.dim()).map(|z| xs.left.mat.apply_sparse(&t_rxs.lift(&unit(z)))).collect();
    let s5 = Mat::from_sparse_cols(d, &s5);
    let tri2 = s5.mul(&s4).mul(&s3).mul(&s2).mul(&s1);
    report.push(Check::verdict("triangle on X*", "obey the triangular identities of duality", tri2 == id_x));
    if !report.passed() {
        return Err(RepError::Structural(format!("duality fails:\n{report}")));
    }
    Ok(YdDual { dual, ev, coev, ev_tensor: ev_t, coev_tensor: coev_t, report })
}

/// `κ: X⊗_R X* → End(X)`, `x⊗_R φ ↦ [y◂r ↦ φ(y◂r₁)x◂r₂]`, with the
/// dimension of the right `R`-linear endomorphisms.
#[derive(Clone, Debug)]
pub struct Kappa {
    pub map: LinMap,
    pub rank: usize,
    pub carrier_dim: usize,
    pub hom_dim: usize,
    pub lands_in_hom: bool,
}

impl Kappa {
    pub fn bijective(&self) -> bool {
        self.lands_in_hom && self.rank == self.carrier_dim && self.rank == self.hom_dim
    }
}

pub fn kappa(b: &BaseAlgebra, x: &YdModule, dual: &YdDual) -> Result<Kappa, RepError> {
    let d = x.dim();
    let m = b.dim();
    let xa = &x.actions;
    let t = &dual.coev_tensor;
    let deltas: Vec<SVec> = (0..m).map(|k| b.coproduct(&unit(k))).collect();
    // for every pair (x_j, ξ^l): the endomorphism as a d×d block, stacked
    let cols = descend_pairs(
        d,
        d * d * d,
        (0..d).flat_map(|i| (0..m).map(move |k| (i, k))).map(|(i, k)| {
            let p = xa.ract(&unit(i), &unit(k));
            let mut val = Vec::new();
            for (tt, c) in &deltas[k] {
                let y = xa.ract(&unit(i), &unit(tt / m));
                for (l, phi) in &y {
                    for j in 0..d {
                        let img = xa.ract(&unit(j), &unit(tt % m));
                        let shifted: SVec = img.into_iter().map(|(q, v)| ((j * d + l) * d + q, v)).collect();
                        axpy_into(&mut val, &c.mul(phi), &shifted);
                    }
                }
            }
            (p, val)
        }),
    )
    .map_err(ill("κ"))?;
    // cols[i] holds f_{j,l}(y_i) at ((j·d + l)·d + q); regroup as End(X) = X⊗X* columns
    let mut pair_cols = vec![Vec::new(); d * d];
    for (i, col) in cols.iter().enumerate() {
        for (idx, v) in col {
            let (jl, q) = (idx / d, idx % d);
            pair_cols[jl].push((q * d + i, v.clone()));
        }
    }
    for c in &mut pair_cols {
        c.sort_by_key(|e| e.0);
    }
    let cols: Vec<SVec> = (0..t.dim())
        .map(|z| {
            let mut acc = Vec::new();
            for (jl, c) in t.lift(&unit(z)) {
                axpy_into(&mut acc, &c, &pair_cols[jl]);
            }
            acc
        })
        .collect();
    let end = Space::numbered("f", d * d);
    let map = LinMap::new(t.carrier.clone(), end, Mat::from_sparse_cols(d * d, &cols))?;
    // right R-linear endomorphisms: f(y◁r) = f(y)◁r, f stored at q·d + i
    let mut rows = Vec::new();
    for i in 0..d {
        for k in 0..m {
            let yr = xa.ract(&unit(i), &unit(k));
            for q in 0..d {
                // Σ_s (y_i◁r)_s f[q][s] − Σ_p f[p][i] (x_p◁r)_q
                let mut row: SVec = yr.iter().map(|(s, c)| (q * d + s, c.clone())).collect();
                for p in 0..d {
                    if let Some((_, c)) = xa.ract(&unit(p), &unit(k)).iter().find(|(qq, _)| *qq == q) {
                        row.push((p * d + i, c.neg()));
                    }
                }
                let row = {
                    row.sort_by_key(|e| e.0);
                    let mut merged: SVec = Vec::new();
                    for (k2, v) in row {
                        match merged.last_mut() {
                            Some((kk, vv)) if *kk == k2 => *vv = vv.add(&v),
                            _ => merged.push((k2, v)),
                        }
                    }
                    merged.retain(|(_, v)| !v.is_zero());
                    merged
                };
                rows.push(row);
            }
        }
    }
    let ker = sparse_kernel(d * d, rows.clone());
    let hom_dim = ker.basis.len();
    let lands_in_hom = map.mat.cols_sparse().iter().all(|f| {
        rows.iter().all(|r| {
            let mut s = Scalar::zero();
            for (k, v) in r {
                if let Ok(pos) = f.binary_search_by_key(k, |e| e.0) {
                    s = s.add(&v.mul(&f[pos].1));
                }
            }
            s.is_zero()
        })
    });
    let rank = map.rank();
    Ok(Kappa { map, rank, carrier_dim: t.dim(), hom_dim, lands_in_hom })
}

/// Output of the brute-force search.
#[derive(Clone, Debug, Default)]
pub struct YdSearch {
    pub structures: Vec<YdModule>,
    /// Candidates satisfying every comodule axiom except fullness.
    pub non_full: usize,
    /// Full comodules with both normalizations that violate condition (e).
    pub negatives: Vec<AComodule>,
    pub kernel_dim: usize,
}

/// Searches coactions `δ: X → X⊗A` (with `λ(x⊗a) = δ(x)(1⊗a)`,
/// `ϱ(x⊗a) = (1⊗a)δ(x)`) making `V` Yetter–Drinfeld. The counit law, the
/// normalizations and condition (e) are linear in `δ`; the candidates are the
/// particular solution plus `0/1` combinations of at most `max_free` kernel
/// vectors, filtered by the comodule axioms.
pub fn find_yd_structures(
    w: &WmbStructure,
    b: &BaseAlgebra,
    v: &AModule,
    bound: usize,
    max_free: usize,
) -> Result<YdSearch, RepError> {
    let n = w.dim();
    let d = v.dim();
    if d * n > bound {
        return Err(RepError::Shape(format!("dim V·dim A = {} exceeds the bound {bound}", d * n)));
    }
    if !check_amodule(&w.algebra, v).passed() {
        return Ok(YdSearch::default());
    }
    let nv = d * d * n;
    // unknown δ: index (x·d + y)·n + a is the coefficient of y⊗e_a in δ(x)
    let var = |x: usize, y: usize, a: usize| (x * d + y) * n + a;
    // linear forms in δ, as a list of (form, value) rows: each form is a map
    // from variables to the vector it produces
    let mut rows: Vec<SVec> = Vec::new();
    // counit: Σ_a ε(a) δ_{x,y,a} = [x = y]
    for x in 0..d {
        for y in 0..d {
            let mut r: SVec =
                (0..n).filter(|&a| !w.counit[a].is_zero()).map(|a| (var(x, y, a), w.counit[a].clone())).collect();
            if x == y {
                r.push((nv, Scalar::from(-1)));
            }
            rows.push(r);
        }
    }
    // a generic linear map of δ: for each variable its image vector
    let push_eq = |rows: &mut Vec<SVec>, images: &dyn Fn(usize, usize, usize) -> SVec, width: usize| {
        let mut acc: Vec<SVec> = vec![Vec::new(); width];
        for x in 0..d {
            for y in 0..d {
                for a in 0..n {
                    for (k, c) in images(x, y, a) {
                        acc[k].push((var(x, y, a), c));
                    }
                }
            }
        }
        for mut r in acc {
            r.sort_by_key(|e| e.0);
            let mut merged: SVec = Vec::new();
            for (k, c) in r {
                match merged.last_mut() {
                    Some((kk, cc)) if *kk == k => *cc = cc.add(&c),
                    _ => merged.push((k, c)),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            if !merged.is_empty() {
                rows.push(merged);
            }
        }
    };
    let a_mod = regular_module(w);
    let e_xa = e2_map(w, v, &a_mod)?;
    let e_ax = e2_map(w, &a_mod, v)?;
    let to_ax = flip_map(d, n);
    let to_xa = flip_map(n, d);
    let e21 = to_xa.mul(&e_ax.mat).mul(&to_ax);
    // ϱ(x⊗c) for the elementary δ = y⊗e_a at x: (1⊗c)(y⊗e_a)
    let rho_elem = |y: usize, a: usize, c: &SVec| -> SVec { kron_vec(&unit(y), &w.mul(c, &unit(a)), n) };
    // (1.b): E₂^{X,A}ϱ(x⊗c) − ϱ(x⊗c) = 0 for all x, c; unknowns δ(x)
    for c in 0..n {
        let img = |x: usize, y: usize, a: usize| -> SVec {
            let r = rho_elem(y, a, &unit(c));
            let l = e_xa.mat.apply_sparse(&r);
            let diff = crate::exact::axpy(&l, &Scalar::from(-1), &r);
            diff.into_iter().map(|(k, v)| (x * d * n + k, v)).collect()
        };
        push_eq(&mut rows, &img, d * d * n);
    }
    // (2.b): ϱ(E₂^{A,X})^{21} − ϱ = 0, on inputs z ∈ X⊗A
    for z in 0..d * n {
        let src = e21.col_sparse(z);
        let img = |x: usize, y: usize, a: usize| -> SVec {
            let mut l = Vec::new();
            for (k, c) in &src {
                if k / n == x {
                    axpy_into(&mut l, c, &rho_elem(y, a, &unit(k % n)));
                }
            }
            if z / n == x {
                l = crate::exact::axpy(&l, &Scalar::from(-1), &rho_elem(y, a, &unit(z % n)));
            }
            l
        };
        push_eq(&mut rows, &img, d * n);
    }
    let normalization_rows = rows.len();
    // (e): ϱ[(x⊗a)Δ^op(b)] − ϱ(x⊗a)Δ(b) = 0 on inputs (x0, a0, b0)
    let deltas: Vec<SVec> = (0..n).map(|c| w.delta(&unit(c))).collect::<Result<_, _>>()?;
    for x0 in 0..d {
        for a0 in 0..n {
            for b0 in 0..n {
                let img = |x: usize, y: usize, a: usize| -> SVec {
                    let mut out = Vec::new();
                    for (k, co) in &deltas[b0] {
                        let (b1, b2) = (k / n, k % n);
                        // left: ϱ(x0·b2 ⊗ a0 b1), contributions of δ(x)
                        let xs = v.act_basis(x0, b2);
                        if let Some((_, cx)) = xs.iter().find(|(q, _)| *q == x) {
                            let r = rho_elem(y, a, &w.mul(&unit(a0), &unit(b1)));
                            axpy_into(&mut out, &co.mul(cx), &r);
                        }
                        // right: (y⊗c)(b1⊗b2) from ϱ(x0⊗a0)
                        if x == x0 {
                            let r = rho_elem(y, a, &unit(a0));
                            let mut t = Vec::new();
                            for (k2, c2) in &r {
                                let (yy, cc) = (k2 / n, k2 % n);
                                let z = kron_vec(&v.act(&unit(yy), &unit(b1)), &w.mul(&unit(cc), &unit(b2)), n);
                                axpy_into(&mut t, c2, &z);
                            }
                            out = crate::exact::axpy(&out, &co.neg(), &t);
                        }
                    }
                    out
                };
                push_eq(&mut rows, &img, d * n);
            }
        }
    }
    let mut out = YdSearch::default();
    let with_e = candidates(nv, &rows, max_free);
    out.kernel_dim = with_e.1;
    for sol in with_e.0 {
        let c = coaction_from_delta(w, &v.space, &sol)?;
        match comodule_status(w, &c) {
            Some(true) => {
                if let Some(y) = check_yd(w, b, v, &c, &[], &[]).yd {
                    out.structures.push(y);
                }
            }
            Some(false) => out.non_full += 1,
            None => {}
        }
    }
    // the same search without (e) supplies the negatives
    for sol in candidates(nv, &rows[..normalization_rows], max_free).0 {
        let c = coaction_from_delta(w, &v.space, &sol)?;
        if comodule_status(w, &c) == Some(true) {
            let chk = check_yd(w, b, v, &c, &[], &[]);
            if chk.verdicts.normalized() && !chk.verdicts.cond_e {
                out.negatives.push(c);
            }
        }
    }
    Ok(out)
}

/// `Some(full)` when every other comodule axiom holds.
fn comodule_status(w: &WmbStructure, c: &AComodule) -> Option<bool> {
    let rep = check_acomodule(w, c);
    rep.checks
        .iter()
        .filter(|c| c.name != "full comodule")
        .all(|c| c.passed)
        .then(|| rep.verdict("full comodule") == Some(true))
}

/// Particular solution plus `0/1` combinations of the first `max_free`
/// kernel vectors of an affine system whose constant column is `nv`.
fn candidates(nv: usize, rows: &[SVec], max_free: usize) -> (Vec<SVec>, usize) {
    let mut ech = Echelon::new(nv + 1);
    for r in rows {
        ech.insert(r);
    }
    if ech.is_pivot(nv) {
        return (Vec::new(), 0);
    }
    let ker = crate::exact::kernel_from_echelon(&ech);
    let pos = ker.free.iter().position(|&f| f == nv).expect("constant column is free");
    let part: SVec = ker.basis[pos].iter().filter(|(k, _)| *k < nv).cloned().collect();
    let homog: Vec<SVec> = ker
        .basis
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != pos)
        .map(|(_, v)| v.iter().filter(|(k, _)| *k < nv).cloned().collect())
        .collect();
    let k = homog.len().min(max_free);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let mut sol = part.clone();
        for (i, h) in homog.iter().take(k).enumerate() {
            if mask >> i & 1 == 1 {
                sol = crate::exact::axpy(&sol, &Scalar::one(), h);
            }
        }
        if seen.insert(format!("{sol:?}")) {
            out.push(sol);
        }
    }
    (out, homog.len())
}

/// The comodule of a coaction `δ` given by its coefficient vector.
pub fn coaction_from_delta(w: &WmbStructure, space: &Space, delta: &SVec) -> Result<AComodule, RepError> {
    let n = w.dim();
    let d = space.dim();
    let mut dx: Vec<SVec> = vec![Vec::new(); d];
    for (k, c) in delta {
        let (x, rest) = (k / (d * n), k % (d * n));
        dx[x].push((rest, c.clone()));
    }
    let mut lam = Vec::with_capacity(d * n);
    let mut rho = Vec::with_capacity(d * n);
    for x in 0..d {
        for a in 0..n {
            lam.push(apply_block(&dx[x], n, 1, &w.algebra.right_op(&unit(a))));
            rho.push(apply_block(&dx[x], n, 1, &w.algebra.left_op(&unit(a))));
        }
    }
    AComodule::new(space.clone(), &w.algebra, Mat::from_sparse_cols(d * n, &lam), Mat::from_sparse_cols(d * n, &rho))
}

/// `(X⊗ε)` applied to the coaction: the identity for a counital coaction.
pub fn counit_defect(w: &WmbStructure, c: &AComodule) -> bool {
    let n = w.dim();
    let u = match w.unit() {
        Ok(u) => u.clone(),
        Err(_) => return false,
    };
    (0..c.dim()).all(|x| contract_second(&c.lam(&kron_vec(&unit(x), &u, n)), n, &w.counit) == unit(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{
        character_module, corpus, corpus_instance, graded_comodule, right_ideal_module, sign_characters,
        standard_comodules, standard_modules, Instance,
    };
    use crate::wmb::base_algebra;

    fn inst(name: &str) -> Instance {
        corpus_instance(name).unwrap()
    }

    #[test]
    fn unit_object_is_yd() {
        for i in corpus() {
            let w = &i.structure;
            let b = base_algebra(w).unwrap();
            let r = unit_yd(w, &b);
            assert!(r.is_ok(), "{}: {:?}", i.name, r.err());
        }
        for i in corpus().into_iter().filter(|i| i.structure.dim() <= 6) {
            let w = &i.structure;
            let b = base_algebra(w).unwrap();
            let mods: Vec<AModule> = standard_modules(&i).unwrap().into_iter().map(|p| p.1).collect();
            let comods: Vec<AComodule> = standard_comodules(&i).unwrap().into_iter().map(|p| p.1).collect();
            let chk = check_yd(w, &b, &base_module(w, &b).unwrap(), &base_comodule(w, &b).unwrap(), &mods, &comods);
            assert!(chk.report.passed(), "{}\n{}", i.name, chk.report);
            let y = chk.yd.unwrap();
            for v in &mods {
                assert!(check_phi_hat_module_map(w, &b, &y, v).unwrap(), "{}", i.name);
            }
        }
    }

    #[test]
    fn regular_pair_on_kp2_is_not_yd() {
        let i = inst("kP2");
        let w = &i.structure;
        let b = base_algebra(w).unwrap();
        let chk = check_yd(w, &b, &regular_module(w), &regular_comodule(w), &[], &[]);
        let v = chk.verdicts;
        assert!(v.right_actions_agree && v.normalized_right, "{}", chk.report);
        assert!(!v.left_actions_agree && !v.normalized_left, "{}", chk.report);
        assert!(!v.cond_e && !v.cond_a && !v.cond_c, "{}", chk.report);
        assert!(v.conditions_agree());
        assert!(chk.yd.is_none());
        assert_eq!(chk.report.verdict("(a) ⇔ (c) ⇔ (e)"), Some(true));
    }

    #[test]
    fn phi_on_regular_module_is_the_coaction() {
        for name in ["kP2", "k^P2", "kZ2"] {
            let i = inst(name);
            let w = &i.structure;
            let n = w.dim();
            let b = base_algebra(w).unwrap();
            for m in [regular_comodule(w), base_comodule(w, &b).unwrap()] {
                let f = phi(w, &regular_module(w), &m).unwrap();
                let dm = m.dim();
                for a in 0..n {
                    for k in 0..dm {
                        let got = f.mat.col_sparse(a * dm + k);
                        assert_eq!(got, m.rho(&unit(k * n + a)), "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn phi_properties_on_the_corpus() {
        for i in corpus().into_iter().filter(|i| i.structure.dim() <= 6) {
            let w = &i.structure;
            let b = base_algebra(w).unwrap();
            for (vn, v) in standard_modules(&i).unwrap() {
                for (mn, m) in standard_comodules(&i).unwrap() {
                    let r = check_phi(w, &b, &v, &m).unwrap();
                    assert!(r.passed(), "{} {vn} {mn}\n{r}", i.name);
                }
            }
        }
    }

    #[test]
    fn phi_hat_on_a_tensor_product() {
        let i = inst("kP2");
        let w = &i.structure;
        let b = base_algebra(w).unwrap();
        let col = right_ideal_module(w, &i.groupoid, 0);
        let m = regular_comodule(w);
        let r = base_comodule(w, &b).unwrap();
        for v in [regular_module(w), col] {
            for (x, y) in [(&m, &r), (&r, &m), (&m, &m)] {
                let c = check_phi_hat_tensor(w, &b, &v, x, y).unwrap();
                assert!(c.passed, "{c:?}");
            }
        }
    }

    #[test]
    fn phi_is_natural() {
        let i = inst("kP2");
        let w = &i.structure;
        let b = base_algebra(w).unwrap();
        // inclusion of the right ideal spanned by morphisms into object 0
        let col = right_ideal_module(w, &i.groupoid, 0);
        let a = regular_module(w);
        let incl: Vec<SVec> = col
            .space
            .labels()
            .iter()
            .map(|l| unit(w.space().labels().iter().position(|x| format!("v.{x}") == *l).unwrap()))
            .collect();
        let g = Mat::from_sparse_cols(w.dim(), &incl);
        assert!(is_module_map(w, &g, &col, &a));
        let m = regular_comodule(w);
        assert!(check_phi_natural_in_module(w, &g, &col, &a, &m).unwrap());
        // R ⊂ A is a comodule map
        let r = base_comodule(w, &b).unwrap();
        let f = b.inclusion.mat.clone();
        assert!(is_comodule_map(w, &f, &r, &m));
        assert!(check_phi_natural_in_comodule(w, &f, &a, &r, &m).unwrap());
    }

    #[test]
    fn phi_hat_inverse_on_kp2() {
        let i = inst("kP2");
        let w = &i.structure;
        let b = base_algebra(w).unwrap();
        let col = right_ideal_module(w, &i.groupoid, 1);
        for v in [regular_module(w), col, base_module(w, &b).unwrap()] {
            for m in [regular_comodule(w), base_comodule(w, &b).unwrap()] {
                let inv = phi_hat_inverse(w, &b, &v, &m).unwrap();
                assert!(inv.report.passed(), "{}", inv.report);
            }
        }
    }

    #[test]
    fn inverse_needs_an_antipode() {
        let i = inst("kP2");
        let mut w = i.structure.clone();
        w.antipode = None;
        let b = base_algebra(&w).unwrap();
        assert!(phi_hat_inverse(&w, &b, &regular_module(&w), &regular_comodule(&w)).is_err());
    }

    #[test]
    fn search_recovers_the_base_comodule() {
        let i = inst("kP2");
        let w = &i.structure;
        let b = base_algebra(w).unwrap();
        let rm = base_module(w, &b).unwrap();
        let rc = base_comodule(w, &b).unwrap();
        let found = find_yd_structures(w, &b, &rm, 64, 12).unwrap();
        assert!(found.structures.iter().any(|y| y.comodule.rho == rc.rho && y.comodule.lambda == rc.lambda));
    }

    #[test]
    fn search_on_one_dimensional_modules() {
        // kZ2: both gradings of each character are Yetter-Drinfeld
        let i = inst("kZ2");
        let w = &i.structure;
        let b = base_algebra(w).unwrap();
        for chi in sign_characters(&i.groupoid) {
            let v = character_module(w, "x", &chi);
            let found = find_yd_structures(w, &b, &v, 64, 12).unwrap();
            assert_eq!(found.structures.len(), 2);
        }
        // kS3: only the central grading survives, a transposition grading is negative
        let i = inst("kS3");
        let w = &i.structure;
        let b = base_algebra(w).unwrap();
        let chi = &sign_characters(&i.groupoid)[1];
        let v = character_module(w, "x", chi);
        let found = find_yd_structures(w, &b, &v, 64, 12).unwrap();
        assert_eq!(found.structures.len(), 1);
        assert!(found.structures[0].comodule.rho == graded_comodule(w, "x", 0).rho);
        assert!(!found.negatives.is_empty());
        let t = graded_comodule(w, "x", 1);
        let chk = check_yd(w, &b, &v, &t, &[], &[]);
        assert!(chk.verdicts.normalized() && !chk.verdicts.cond_e && chk.verdicts.conditions_agree(), "{}", chk.report);
    }

    #[test]
    fn search_rejects_degenerate_input() {
        let i = inst("kZ2");
        let w = &i.structure;
        let b = base_algebra(w).unwrap();
        let zero = AModule::new(Space::numbered("z", 1), &w.algebra, Mat::zeros(1, 2)).unwrap();
        assert!(find_yd_structures(w, &b, &zero, 64, 12).unwrap().structures.is_empty());
        let big = regular_module(&inst("kS3").structure);
        let w3 = &inst("kS3").structure;
        let b3 = base_algebra(w3).unwrap();
        assert!(find_yd_structures(w3, &b3, &big, 30, 12).is_err());
    }

    #[test]
    fn tensor_products_and_unit_laws() {
        for name in ["kP2", "k^P2", "kZ2", "k(Z2+Z2)"] {
            let i = inst(name);
            let w = &i.structure;
            let b = base_algebra(w).unwrap();
            let r = unit_yd(w, &b).unwrap();
            let (rr, _) = yd_tensor(w, &b, &r, &r).unwrap();
            assert_eq!(rr.dim(), r.dim(), "{name}");
            let rep = check_unit_laws(w, &b, &r).unwrap();
            assert!(rep.passed(), "{name}\n{rep}");
        }
    }

    #[test]
    fn duals_obey_the_triangle_identities() {
        for name in ["kP2", "k^P2", "kZ2", "kZ3"] {
            let i = inst(name);
            let w = &i.structure;
            let b = base_algebra(w).unwrap();
            let r = unit_yd(w, &b).unwrap();
            let d = yd_dual(w, &b, &r).unwrap();
            assert!(d.report.passed(), "{name}\n{}", d.report);
            let k = kappa(&b, &r, &d).unwrap();
            assert!(k.bijective(), "{name}: {k:?}");
        }
        // a graded character over kZ3
        let i = inst("kZ3");
        let w = &i.structure;
        let b = base_algebra(w).unwrap();
        let triv = vec![Scalar::one(); 3];
        let v = character_module(w, "x", &triv);
        let c = graded_comodule(w, "x", 1);
        let y = check_yd(w, &b, &v, &c, &[], &[]).yd.unwrap();
        let d = yd_dual(w, &b, &y).unwrap();
        // the dual is graded by the inverse
        assert_eq!(d.dual.comodule.rho, graded_comodule(w, "ξ.x", 2).rho);
        let (t, _) = yd_tensor(w, &b, &y, &d.dual).unwrap();
        assert_eq!(t.dim(), 1);
    }
}
