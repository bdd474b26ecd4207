//! Weak multiplier bialgebras: the structure maps, the identity checker,
//! the projections onto the base algebras, the base algebra itself and the
//! antipode identities.

use thiserror::Error;

use crate::algebra::{
    check_idempotent_algebra, check_nondegenerate, extend_multiplicative_map, Algebra, AlgebraError, Extension,
    Multiplier, MultiplierAlgebra,
};
use crate::exact::{
    contract_first, contract_second, descend_pairs, flip_vec, kron_vec, map_pair, tensor_space, ExactError, LinMap,
    Mat, SVec, Scalar, Space, Subspace,
};
use crate::report::{compare, Check, Report};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WmbError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("the algebra has no unit")]
    NonUnital,
    #[error("comultiplication is not {0} full")]
    NotFull(&'static str),
    #[error("no antipode supplied")]
    MissingAntipode,
    #[error("antipode is not bijective")]
    NotRegularHopf,
    #[error("structural failure: {0}")]
    Structural(String),
    #[error("{0}")]
    Shape(String),
}

fn structural(what: &str) -> impl Fn(ExactError) -> WmbError + '_ {
    move |e| WmbError::Structural(format!("{what}: {e}"))
}

/// The structure maps of a weak multiplier bialgebra.
#[derive(Clone, Debug)]
pub struct WmbStructure {
    pub algebra: Algebra,
    pub t1: LinMap,
    pub t2: LinMap,
    pub t3: LinMap,
    pub t4: LinMap,
    /// `E` as the operator pair `(E₁, E₂)`.
    pub e: Multiplier,
    pub counit: Vec<Scalar>,
    pub antipode: Option<LinMap>,
    pair: Algebra,
    unit: Option<SVec>,
}

impl WmbStructure {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        algebra: Algebra,
        t1: LinMap,
        t2: LinMap,
        t3: LinMap,
        t4: LinMap,
        e_left: LinMap,
        e_right: LinMap,
        counit: Vec<Scalar>,
        antipode: Option<LinMap>,
    ) -> Result<WmbStructure, WmbError> {
        let n = algebra.dim();
        for (name, m) in
            [("t1", &t1), ("t2", &t2), ("t3", &t3), ("t4", &t4), ("e_left", &e_left), ("e_right", &e_right)]
        {
            if m.mat.rows() != n * n || m.mat.cols() != n * n {
                return Err(WmbError::Shape(format!("{name} must be {0}x{0}", n * n)));
            }
        }
        if counit.len() != n {
            return Err(WmbError::Shape(format!("counit must have {n} entries")));
        }
        if let Some(s) = &antipode {
            if s.mat.rows() != n || s.mat.cols() != n {
                return Err(WmbError::Shape(format!("antipode must be {n}x{n}")));
            }
        }
        let aa = tensor_space(algebra.space(), algebra.space());
        let fix = |m: LinMap| m.retype(&aa, &aa);
        let pair = algebra.tensor(&algebra);
        let unit = algebra.unit();
        Ok(WmbStructure {
            t1: fix(t1),
            t2: fix(t2),
            t3: fix(t3),
            t4: fix(t4),
            e: Multiplier { left: fix(e_left), right: fix(e_right) },
            counit,
            antipode: antipode.map(|s| s.retype(algebra.space(), algebra.space())),
            algebra,
            pair,
            unit,
        })
    }

    /// All structure maps from a unital algebra and the coproducts of its
    /// basis elements: `T₁(a⊗b) = Δ(a)(1⊗b)`, `T₂(a⊗b) = (a⊗1)Δ(b)`,
    /// `T₃(a⊗b) = (1⊗b)Δ(a)`, `T₄(a⊗b) = Δ(b)(a⊗1)`, `E = Δ(1)`.
    pub fn from_coproduct(
        algebra: Algebra,
        delta: &[SVec],
        counit: Vec<Scalar>,
        antipode: Option<LinMap>,
    ) -> Result<WmbStructure, WmbError> {
        let n = algebra.dim();
        let u = algebra.unit().ok_or(WmbError::NonUnital)?;
        let pair = algebra.tensor(&algebra);
        let aa = pair.space().clone();
        let d = |a: &SVec| -> SVec {
            let mut acc = Vec::new();
            for (i, x) in a {
                acc = crate::exact::axpy(&acc, x, &delta[*i]);
            }
            acc
        };
        let one = |i: usize| vec![(i, Scalar::one())];
        let build = |f: &dyn Fn(usize, usize) -> SVec| -> LinMap {
            let cols: Vec<SVec> = (0..n * n).map(|c| f(c / n, c % n)).collect();
            LinMap::new(aa.clone(), aa.clone(), Mat::from_sparse_cols(n * n, &cols)).unwrap()
        };
        let t1 = build(&|a, b| pair.mul(&delta[a], &kron_vec(&u, &one(b), n)));
        let t2 = build(&|a, b| pair.mul(&kron_vec(&one(a), &u, n), &delta[b]));
        let t3 = build(&|a, b| pair.mul(&kron_vec(&u, &one(b), n), &delta[a]));
        let t4 = build(&|a, b| pair.mul(&delta[b], &kron_vec(&one(a), &u, n)));
        let e = d(&u);
        let el = build(&|a, b| pair.mul(&e, &kron_vec(&one(a), &one(b), n)));
        let er = build(&|a, b| pair.mul(&kron_vec(&one(a), &one(b), n), &e));
        WmbStructure::new(algebra, t1, t2, t3, t4, el, er, counit, antipode)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn space(&self) -> &Space {
        self.algebra.space()
    }

    pub fn pair_space(&self) -> &Space {
        self.pair.space()
    }

    /// `A⊗A` with the componentwise product.
    pub fn pair_algebra(&self) -> &Algebra {
        &self.pair
    }

    pub fn unit(&self) -> Result<&SVec, WmbError> {
        self.unit.as_ref().ok_or(WmbError::NonUnital)
    }

    pub fn basis(&self, i: usize) -> SVec {
        vec![(i, Scalar::one())]
    }

    pub fn mul(&self, a: &SVec, b: &SVec) -> SVec {
        self.algebra.mul(a, b)
    }

    pub fn mul2(&self, x: &SVec, y: &SVec) -> SVec {
        self.pair.mul(x, y)
    }

    pub fn kron(&self, a: &SVec, b: &SVec) -> SVec {
        kron_vec(a, b, self.dim())
    }

    /// `1⊗a`.
    pub fn one_tensor(&self, a: &SVec) -> Result<SVec, WmbError> {
        Ok(self.kron(self.unit()?, a))
    }

    /// `a⊗1`.
    pub fn tensor_one(&self, a: &SVec) -> Result<SVec, WmbError> {
        Ok(self.kron(a, self.unit()?))
    }

    pub fn apply2(m: &LinMap, v: &SVec) -> SVec {
        m.mat.apply_sparse(v)
    }

    /// `ε(a)`.
    pub fn eps(&self, a: &SVec) -> Scalar {
        a.iter().fold(Scalar::zero(), |acc, (i, x)| acc.add(&x.mul(&self.counit[*i])))
    }

    /// `(A⊗ε)v`.
    pub fn eps_right(&self, v: &SVec) -> SVec {
        contract_second(v, self.dim(), &self.counit)
    }

    /// `(ε⊗A)v`.
    pub fn eps_left(&self, v: &SVec) -> SVec {
        contract_first(v, self.dim(), &self.counit)
    }

    /// `Δ(a) = T₁(a⊗1)` as an element of `A⊗A`.
    pub fn delta(&self, a: &SVec) -> Result<SVec, WmbError> {
        Ok(self.t1.mat.apply_sparse(&self.tensor_one(a)?))
    }

    /// `Δ^op(a) = Δ(a)^{21}`.
    pub fn delta_op(&self, a: &SVec) -> Result<SVec, WmbError> {
        Ok(flip_vec(&self.delta(a)?, self.dim(), self.dim()))
    }

    /// `E = E₁(1⊗1)`.
    pub fn e_element(&self) -> Result<SVec, WmbError> {
        let u = self.unit()?;
        Ok(self.e.left.mat.apply_sparse(&self.kron(u, u)))
    }

    /// `Δ(a)` as the operator pair read off `T₁` and `T₂`.
    pub fn delta_multiplier(&self, a: &SVec) -> Result<Multiplier, WmbError> {
        let n = self.dim();
        let u = self.unit()?;
        let aa = self.pair_space();
        let mut left = Vec::with_capacity(n * n);
        let mut right = Vec::with_capacity(n * n);
        for b in 0..n {
            for c in 0..n {
                // Δ(a)(b⊗c) = T₁(a⊗c)(b⊗1)
                let t = self.t1.mat.apply_sparse(&self.kron(a, &self.basis(c)));
                left.push(self.mul2(&t, &self.kron(&self.basis(b), u)));
                // (b⊗c)Δ(a) = (1⊗c)T₂(b⊗a)
                let t = self.t2.mat.apply_sparse(&self.kron(&self.basis(b), a));
                right.push(self.mul2(&self.kron(u, &self.basis(c)), &t));
            }
        }
        Ok(Multiplier {
            left: LinMap::new(aa.clone(), aa.clone(), Mat::from_sparse_cols(n * n, &left))?,
            right: LinMap::new(aa.clone(), aa.clone(), Mat::from_sparse_cols(n * n, &right))?,
        })
    }

    /// Labels for a tuple of basis indices.
    fn at(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|i| self.space().label(*i).to_string()).collect()
    }
}

/// `Δ^op(a)` as a multiplier on `A⊗A`.
pub fn delta_op(w: &WmbStructure, a: &SVec) -> Result<Multiplier, WmbError> {
    Ok(Multiplier::of_element(w.pair_algebra(), &w.delta_op(a)?))
}

fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn all_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
}

fn span_check(name: &str, anchor: &str, space: &Space, x: &[SVec], y: &[SVec]) -> Check {
    let sx = Subspace::span(space, x.iter());
    let sy = Subspace::span(space, y.iter());
    Check::verdict(name, anchor, sx.same_as(&sy)).with_note(format!("dimensions {} and {}", sx.dim(), sy.dim()))
}

/// Verifies the identity suite of a weak multiplier bialgebra on all basis
/// tuples. Stops at the algebra level when the algebra itself is broken.
pub fn check_wmb(w: &WmbStructure) -> Report {
    let mut r = Report::new("weak multiplier bialgebra");
    let n = w.dim();
    let alg = &w.algebra;
    r.push(alg.check_associative());
    r.absorb("", check_idempotent_algebra(alg));
    r.absorb("", check_nondegenerate(alg));
    let u = match w.unit() {
        Ok(u) => u.clone(),
        Err(_) => {
            r.push(
                Check::fail("unit", "M(A) ≅ A", None).with_note("no unit; the remaining identities are not evaluated"),
            );
            return r;
        }
    };
    r.push(Check::pass("unit", "M(A) ≅ A"));
    if !r.passed() {
        return r;
    }
    let aa = w.pair_space().clone();
    let b = |i| w.basis(i);
    let delta: Vec<SVec> = (0..n).map(|a| w.delta(&b(a)).unwrap()).collect();
    r.push(compare(
        "comultiplication from T1",
        "Δ(a)(b⊗c)=T₁(a⊗c)(b⊗1)",
        &aa,
        all_triples(n).map(|(a, x, c)| {
            let l = w.mul2(&w.t1.mat.apply_sparse(&w.kron(&b(a), &b(c))), &w.kron(&b(x), &u));
            let rr = w.mul2(&delta[a], &w.kron(&b(x), &b(c)));
            (w.at(&[a, x, c]), l, rr)
        }),
    ));
    r.push(compare(
        "comultiplication from T2",
        "(b⊗c)Δ(a)=(1⊗c)T₂(b⊗a)",
        &aa,
        all_triples(n).map(|(a, x, c)| {
            let l = w.mul2(&w.kron(&u, &b(c)), &w.t2.mat.apply_sparse(&w.kron(&b(x), &b(a))));
            let rr = w.mul2(&w.kron(&b(x), &b(c)), &delta[a]);
            (w.at(&[a, x, c]), l, rr)
        }),
    ));
    r.push(compare(
        "comultiplication multiplicative",
        "a multiplicative map from A to the multiplier algebra",
        &aa,
        all_pairs(n).map(|(a, c)| {
            let ab = w.mul(&b(a), &b(c));
            let l = w.delta(&ab).unwrap();
            let rr = w.mul2(&delta[a], &delta[c]);
            (w.at(&[a, c]), l, rr)
        }),
    ));
    let e = w.e_element().unwrap();
    r.push(compare(
        "E multiplier",
        "E(a⊗b)=E₁(a⊗b) and (a⊗b)E=E₂(a⊗b)",
        &aa,
        (0..n * n).flat_map(|x| [(x, true), (x, false)]).map(|(x, left)| {
            let v = vec![(x, Scalar::one())];
            let (l, rr) = if left {
                (w.e.left.mat.col_sparse(x), w.mul2(&e, &v))
            } else {
                (w.e.right.mat.col_sparse(x), w.mul2(&v, &e))
            };
            (vec![aa.label(x).to_string(), if left { "E₁" } else { "E₂" }.to_string()], l, rr)
        }),
    ));
    let e1sq = w.e.left.mat.mul(&w.e.left.mat);
    let e2sq = w.e.right.mat.mul(&w.e.right.mat);
    r.push(compare(
        "E idempotent",
        "determine an idempotent element",
        &aa,
        (0..n * n).flat_map(|x| {
            [
                (vec![aa.label(x).to_string(), "E₁".into()], e1sq.col_sparse(x), w.e.left.mat.col_sparse(x)),
                (vec![aa.label(x).to_string(), "E₂".into()], e2sq.col_sparse(x), w.e.right.mat.col_sparse(x)),
            ]
        }),
    ));
    r.push(compare(
        "Δ(1) = E",
        "extends to a multiplicative map with Δ̄(1)=E",
        &aa,
        std::iter::once((vec!["1".to_string()], w.delta(&u).unwrap(), e.clone())),
    ));
    r.push(compare(
        "T3 regularity",
        "T₃(a⊗b)=(1⊗b)Δ(a)",
        &aa,
        all_pairs(n).map(|(a, c)| {
            let l = w.t3.mat.apply_sparse(&w.kron(&b(a), &b(c)));
            let rr = w.mul2(&w.kron(&u, &b(c)), &delta[a]);
            (w.at(&[a, c]), l, rr)
        }),
    ));
    r.push(compare(
        "T4 regularity",
        "T₄(a⊗b)=Δ(b)(a⊗1)",
        &aa,
        all_pairs(n).map(|(a, c)| {
            let l = w.t4.mat.apply_sparse(&w.kron(&b(a), &b(c)));
            let rr = w.mul2(&delta[c], &w.kron(&b(a), &u));
            (w.at(&[a, c]), l, rr)
        }),
    ));
    let basis2: Vec<SVec> = (0..n * n).map(|x| vec![(x, Scalar::one())]).collect();
    let xe: Vec<SVec> = basis2.iter().map(|x| w.mul2(x, &e)).collect();
    let ex: Vec<SVec> = basis2.iter().map(|x| w.mul2(&e, x)).collect();
    let xd: Vec<SVec> =
        basis2.iter().flat_map(|x| delta.iter().map(move |d| (x, d))).map(|(x, d)| w.mul2(x, d)).collect();
    let dx: Vec<SVec> =
        basis2.iter().flat_map(|x| delta.iter().map(move |d| (x, d))).map(|(x, d)| w.mul2(d, x)).collect();
    r.push(span_check("span (A⊗A)E", "(b⊗a)E=∑ᵢ(pⁱ⊗qⁱ)Δ(rⁱ)", &aa, &xe, &xd));
    r.push(span_check("span E(A⊗A)", "E(A⊗A) = Δ(A)(A⊗A)", &aa, &ex, &dx));
    r.push(compare("E Δ = Δ", "EΔ = Δ", &aa, (0..n).map(|a| (w.at(&[a]), w.mul2(&e, &delta[a]), delta[a].clone()))));
    r.push(compare(
        "Δ E = Δ",
        "holds by E₂Δ=Δ",
        &aa,
        (0..n).map(|a| (w.at(&[a]), w.mul2(&delta[a], &e), delta[a].clone())),
    ));
    let sp = w.space().clone();
    r.push(compare(
        "counit on T1",
        "(ε⊗A)T₁(a⊗b)=ab",
        &sp,
        all_pairs(n).map(|(a, c)| {
            (w.at(&[a, c]), w.eps_left(&w.t1.mat.apply_sparse(&w.kron(&b(a), &b(c)))), w.mul(&b(a), &b(c)))
        }),
    ));
    r.push(compare(
        "counit on T2",
        "(A⊗ε)T₂(a⊗b)=ab",
        &sp,
        all_pairs(n).map(|(a, c)| {
            (w.at(&[a, c]), w.eps_right(&w.t2.mat.apply_sparse(&w.kron(&b(a), &b(c)))), w.mul(&b(a), &b(c)))
        }),
    ));
    r.push(compare(
        "counit on T3",
        "(ε⊗V)φ_{V,A}(v⊗a)=v·a",
        &sp,
        all_pairs(n).map(|(a, c)| {
            (w.at(&[a, c]), w.eps_left(&w.t3.mat.apply_sparse(&w.kron(&b(a), &b(c)))), w.mul(&b(c), &b(a)))
        }),
    ));
    r
}

/// The four counit contractions of `E`, as linear maps `A → A`.
#[derive(Clone, Debug)]
pub struct PiMaps {
    /// `a ↦ (A⊗ε)[(1⊗a)E]`
    pub right: LinMap,
    /// `a ↦ (A⊗ε)[E(1⊗a)]`
    pub right_bar: LinMap,
    /// `a ↦ (ε⊗A)[E(a⊗1)]`
    pub left: LinMap,
    /// `a ↦ (ε⊗A)[(a⊗1)E]`
    pub left_bar: LinMap,
}

impl PiMaps {
    pub fn new(w: &WmbStructure) -> Result<PiMaps, WmbError> {
        let n = w.dim();
        let e = w.e_element()?;
        let mut cols: [Vec<SVec>; 4] = Default::default();
        for a in 0..n {
            let b = w.basis(a);
            let ob = w.one_tensor(&b)?;
            let bo = w.tensor_one(&b)?;
            cols[0].push(w.eps_right(&w.mul2(&ob, &e)));
            cols[1].push(w.eps_right(&w.mul2(&e, &ob)));
            cols[2].push(w.eps_left(&w.mul2(&e, &bo)));
            cols[3].push(w.eps_left(&w.mul2(&bo, &e)));
        }
        let s = w.space();
        let mk = |c: &[SVec]| LinMap::new(s.clone(), s.clone(), Mat::from_sparse_cols(n, c)).unwrap();
        Ok(PiMaps { right: mk(&cols[0]), right_bar: mk(&cols[1]), left: mk(&cols[2]), left_bar: mk(&cols[3]) })
    }
}

/// `(Π̄^R(a), Π̄^L(a), Π^R(a), Π^L(a))` as multipliers.
pub fn pi_maps(w: &WmbStructure, a: &SVec) -> Result<[Multiplier; 4], WmbError> {
    let p = PiMaps::new(w)?;
    let f = |m: &LinMap| Multiplier::of_element(&w.algebra, &m.mat.apply_sparse(a));
    Ok([f(&p.right_bar), f(&p.left_bar), f(&p.right), f(&p.left)])
}

fn range(space: &Space, m: &LinMap) -> Subspace {
    let cols = m.mat.cols_sparse();
    Subspace::span(space, cols.iter())
}

/// Right and left fullness, each by slices and by the range criterion.
pub fn check_fullness(w: &WmbStructure) -> Report {
    let mut r = Report::new("fullness");
    let n = w.dim();
    let sp = w.space();
    let slices = |t: &LinMap, right: bool| -> usize {
        let mut vs = Vec::new();
        for c in 0..n * n {
            let col = t.mat.col_sparse(c);
            for k in 0..n {
                let om: Vec<Scalar> = (0..n).map(|j| if j == k { Scalar::one() } else { Scalar::zero() }).collect();
                let v = if right { contract_second(&col, n, &om) } else { contract_first(&col, n, &om) };
                if !v.is_empty() {
                    vs.push(v);
                }
            }
        }
        Subspace::span(sp, vs.iter()).dim()
    };
    let pi = match PiMaps::new(w) {
        Ok(p) => p,
        Err(e) => {
            r.push(Check::fail("right full", "(A⊗ω)T₁(a⊗b)", None).with_note(e.to_string()));
            r.push(Check::fail("left full", "(ω⊗A)T₂(a⊗b)", None).with_note(e.to_string()));
            return r;
        }
    };
    let rs = slices(&w.t1, true);
    let rr = range(sp, &pi.right).same_as(&range(sp, &pi.right_bar));
    let rdim = range(sp, &pi.right).dim();
    r.push(Check::verdict("right full", "(A⊗ω)T₁(a⊗b)", rs == n).with_note(format!("slices span dim {rs}")));
    r.push(
        Check::verdict("right ranges coincide", "ranges of the maps Π̄^R and Π^R coincide", rr)
            .with_note(format!("dim R = {rdim}")),
    );
    r.push(Check::verdict("right criteria agree", "right full ⇔ ranges coincide", (rs == n) == rr));
    let ls = slices(&w.t2, false);
    let lr = range(sp, &pi.left).same_as(&range(sp, &pi.left_bar));
    let ldim = range(sp, &pi.left).dim();
    r.push(Check::verdict("left full", "(ω⊗A)T₂(a⊗b)", ls == n).with_note(format!("slices span dim {ls}")));
    r.push(
        Check::verdict("left ranges coincide", "ranges of the maps Π̄^L and Π^L coincide", lr)
            .with_note(format!("dim L = {ldim}")),
    );
    r.push(Check::verdict("left criteria agree", "left full ⇔ ranges coincide", (ls == n) == lr));
    r
}

/// The base algebra `R` (range of `Π^R`) with its coalgebra structure, the
/// left base algebra `L`, the maps between them and the separator `F`.
#[derive(Clone, Debug)]
pub struct BaseAlgebra {
    pub r: Subspace,
    pub l: Subspace,
    pub pi: PiMaps,
    /// `R → A`.
    pub inclusion: LinMap,
    /// `L → A`.
    pub l_inclusion: LinMap,
    pub product: LinMap,
    pub delta: LinMap,
    pub counit: Vec<Scalar>,
    /// `τ: R → L`, `Π^R(a) ↦ Π̄^L(a)`.
    pub r_to_l: LinMap,
    /// `τ̄: R → L`, `Π̄^R(a) ↦ Π^L(a)`.
    pub r_to_l_bar: LinMap,
    /// `σ: L → R`, `Π̄^L(a) ↦ Π^R(a)`.
    pub l_to_r: LinMap,
    /// `σ̄: L → R`, `Π^L(a) ↦ Π̄^R(a)`.
    pub l_to_r_bar: LinMap,
    pub nakayama: LinMap,
    /// `F = (A⊗σ)E` in `A⊗A`.
    pub separator: SVec,
    /// `(A⊗σ̄)E`, the flipped separator.
    pub separator_flip: SVec,
    /// `a ↦ Π^R(a)` in `R` coordinates.
    pub pi_right_coords: LinMap,
    /// `a ↦ Π̄^R(a)` in `R` coordinates.
    pub pi_right_bar_coords: LinMap,
}

fn coords_map(sub: &Subspace, source: &Space, f: &LinMap, what: &str) -> Result<LinMap, WmbError> {
    let cols: Vec<SVec> = f
        .mat
        .cols_sparse()
        .iter()
        .map(|c| sub.coords(c).ok_or_else(|| WmbError::Structural(format!("{what} leaves its range"))))
        .collect::<Result<_, _>>()?;
    Ok(LinMap::new(source.clone(), sub.space.clone(), Mat::from_sparse_cols(sub.dim(), &cols))?)
}

/// Second leg of `v ∈ A⊗A` mapped through `g`, which sends `sub` to the
/// space of `inc`.
fn second_leg_through(
    w: &WmbStructure,
    v: &SVec,
    sub: &Subspace,
    g: &LinMap,
    inc: &LinMap,
    what: &str,
) -> Result<SVec, WmbError> {
    let n = w.dim();
    // decompose v = Σ_i e_i ⊗ v_i
    let mut out = Vec::new();
    for i in 0..n {
        let vi: SVec = v.iter().filter(|(k, _)| k / n == i).map(|(k, x)| (k % n, x.clone())).collect();
        if vi.is_empty() {
            continue;
        }
        let c = sub.coords(&vi).ok_or_else(|| WmbError::Structural(format!("{what}: second leg outside")))?;
        let img = inc.mat.apply_sparse(&g.mat.apply_sparse(&c));
        out.extend(img.into_iter().map(|(j, x)| (i * n + j, x)));
    }
    out.sort_by_key(|e| e.0);
    Ok(out)
}

/// Builds the base algebra. Requires left and right fullness.
pub fn base_algebra(w: &WmbStructure) -> Result<BaseAlgebra, WmbError> {
    let fr = check_fullness(w);
    if fr.verdict("right full") != Some(true) || fr.verdict("right ranges coincide") != Some(true) {
        return Err(WmbError::NotFull("right"));
    }
    if fr.verdict("left full") != Some(true) || fr.verdict("left ranges coincide") != Some(true) {
        return Err(WmbError::NotFull("left"));
    }
    let n = w.dim();
    let sp = w.space().clone();
    let pi = PiMaps::new(w)?;
    let r = range(&sp, &pi.right);
    let l = range(&sp, &pi.left);
    let m = r.dim();
    let inclusion = r.inclusion(&sp);
    let l_inclusion = l.inclusion(&sp);
    let rr = tensor_space(&r.space, &r.space);
    let mut prod = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let p = w.mul(&r.basis[i], &r.basis[j]);
            prod.push(r.coords(&p).ok_or_else(|| WmbError::Structural("R is not a subalgebra".into()))?);
        }
    }
    let product = LinMap::new(rr.clone(), r.space.clone(), Mat::from_sparse_cols(m, &prod))?;
    let pr = coords_map(&r, &sp, &pi.right, "Π^R")?;
    let prb = coords_map(&r, &sp, &pi.right_bar, "Π̄^R")?;
    let pl = coords_map(&l, &sp, &pi.left, "Π^L")?;
    let plb = coords_map(&l, &sp, &pi.left_bar, "Π̄^L")?;
    // δ(Π^R(ab)) = (Π^R⊗Π^R)T₂(a⊗b)
    let pairs = all_pairs(n).map(|(a, b)| {
        let ab = w.mul(&w.basis(a), &w.basis(b));
        let p = pr.mat.apply_sparse(&ab);
        let t = w.t2.mat.apply_sparse(&w.kron(&w.basis(a), &w.basis(b)));
        let v = map_pair(&t, n, n, Some(&pr.mat), Some(&pr.mat));
        (p, v)
    });
    let dcols = descend_pairs(m, m * m, pairs).map_err(structural("δ is not well defined"))?;
    let delta = LinMap::new(r.space.clone(), rr.clone(), Mat::from_sparse_cols(m * m, &dcols))?;
    // ε_R(Π^R(a)) = ε(a)
    let ecols = descend_pairs(
        m,
        1,
        (0..n).map(|a| {
            let c = &w.counit[a];
            (pr.mat.col_sparse(a), if c.is_zero() { vec![] } else { vec![(0, c.clone())] })
        }),
    )
    .map_err(structural("ε_R is not well defined"))?;
    let counit: Vec<Scalar> = (0..m).map(|i| ecols[i].first().map_or(Scalar::zero(), |e| e.1.clone())).collect();
    let desc = |from: &LinMap, to: &LinMap, what: &str| -> Result<LinMap, WmbError> {
        let cols = descend_pairs(
            from.mat.rows(),
            to.mat.rows(),
            (0..n).map(|a| (from.mat.col_sparse(a), to.mat.col_sparse(a))),
        )
        .map_err(structural(what))?;
        Ok(LinMap::raw(&from.target, &to.target, Mat::from_sparse_cols(to.mat.rows(), &cols)))
    };
    let r_to_l = desc(&pr, &plb, "τ")?;
    let r_to_l_bar = desc(&prb, &pl, "τ̄")?;
    let l_to_r = desc(&plb, &pr, "σ")?;
    let l_to_r_bar = desc(&pl, &prb, "σ̄")?;
    let sbar_inv = l_to_r_bar.inverse().ok_or_else(|| WmbError::Structural("σ̄ is not invertible".into()))?;
    let nakayama = l_to_r.compose(&sbar_inv);
    let e = w.e_element()?;
    let separator = second_leg_through(w, &e, &l, &l_to_r, &inclusion, "F")?;
    let separator_flip = second_leg_through(w, &e, &l, &l_to_r_bar, &inclusion, "F^{21}")?;
    Ok(BaseAlgebra {
        r,
        l,
        pi,
        inclusion,
        l_inclusion,
        product,
        delta,
        counit,
        r_to_l,
        r_to_l_bar,
        l_to_r,
        l_to_r_bar,
        nakayama,
        separator,
        separator_flip,
        pi_right_coords: pr,
        pi_right_bar_coords: prb,
    })
}

impl BaseAlgebra {
    pub fn dim(&self) -> usize {
        self.r.dim()
    }

    pub fn space(&self) -> &Space {
        &self.r.space
    }

    pub fn mul(&self, x: &SVec, y: &SVec) -> SVec {
        let m = self.dim();
        self.product.mat.apply_sparse(&kron_vec(x, y, m))
    }

    /// `δ(x)` in `R⊗R`.
    pub fn coproduct(&self, x: &SVec) -> SVec {
        self.delta.mat.apply_sparse(x)
    }

    pub fn eps(&self, x: &SVec) -> Scalar {
        x.iter().fold(Scalar::zero(), |acc, (i, c)| acc.add(&c.mul(&self.counit[*i])))
    }

    pub fn element(&self, x: &SVec) -> SVec {
        self.r.element(x)
    }

    pub fn basis(&self, i: usize) -> SVec {
        vec![(i, Scalar::one())]
    }

    /// `R⊗R → A⊗A`.
    pub fn embed_pair(&self, v: &SVec) -> SVec {
        map_pair(v, self.dim(), self.dim(), Some(&self.inclusion.mat), Some(&self.inclusion.mat))
    }

    /// The unit of `R`, when `R` has one.
    pub fn unit(&self) -> Option<SVec> {
        let m = self.dim();
        let a = Algebra::from_table(
            self.r.space.clone(),
            (0..m).map(|i| (0..m).map(|j| self.mul(&self.basis(i), &self.basis(j))).collect()).collect(),
        );
        a.unit()
    }

    /// `F` as a multiplier, its operators taken from the defining formulas
    /// `F(a⊗b) = ((A⊗σ)[E(a⊗1)])(1⊗b)` and `(a⊗b)F = (1⊗b)((A⊗σ)[(a⊗1)E])`.
    pub fn separator_multiplier(&self, w: &WmbStructure) -> Result<Multiplier, WmbError> {
        let n = w.dim();
        let e = w.e_element()?;
        let u = w.unit()?.clone();
        let mut left = Vec::with_capacity(n * n);
        let mut right = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let ea = w.mul2(&e, &w.kron(&w.basis(a), &u));
                let s = second_leg_through(w, &ea, &self.l, &self.l_to_r, &self.inclusion, "F")?;
                left.push(w.mul2(&s, &w.kron(&u, &w.basis(b))));
                let ae = w.mul2(&w.kron(&w.basis(a), &u), &e);
                let s = second_leg_through(w, &ae, &self.l, &self.l_to_r, &self.inclusion, "F")?;
                right.push(w.mul2(&w.kron(&u, &w.basis(b)), &s));
            }
        }
        let aa = w.pair_space();
        Ok(Multiplier {
            left: LinMap::new(aa.clone(), aa.clone(), Mat::from_sparse_cols(n * n, &left))?,
            right: LinMap::new(aa.clone(), aa.clone(), Mat::from_sparse_cols(n * n, &right))?,
        })
    }

    /// Re-verifies every structural property of `R`.
    pub fn check(&self, w: &WmbStructure) -> Report {
        let mut rep = Report::new("base algebra");
        let m = self.dim();
        let n = w.dim();
        let rs = self.r.space.clone();
        let rr = tensor_space(&rs, &rs);
        let b = |i| self.basis(i);
        rep.push(Check::pass("R subalgebra", "R is a (non-unital) subalgebra").with_note(format!("dim R = {m}")));
        rep.push(compare(
            "multiplication split by δ",
            "μδ(r)=r₁r₂=r",
            &rs,
            (0..m).map(|i| {
                let d = self.coproduct(&b(i));
                (vec![rs.label(i).to_string()], self.product.mat.apply_sparse(&d), b(i))
            }),
        ));
        let rrr = tensor_space(&rr, &rs);
        rep.push(compare(
            "δ coassociative",
            "R is a coalgebra",
            &rrr,
            (0..m).map(|i| {
                let d = self.coproduct(&b(i));
                let l = map_pair(&d, m, m, Some(&self.delta.mat), None);
                let r = map_pair(&d, m, m, None, Some(&self.delta.mat));
                (vec![rs.label(i).to_string()], l, r)
            }),
        ));
        rep.push(compare(
            "ε_R counit",
            "R is a coalgebra",
            &rs,
            (0..m).flat_map(|i| {
                let d = self.coproduct(&b(i));
                [
                    (vec![rs.label(i).to_string(), "left".into()], contract_first(&d, m, &self.counit), b(i)),
                    (vec![rs.label(i).to_string(), "right".into()], contract_second(&d, m, &self.counit), b(i)),
                ]
            }),
        ));
        rep.push(compare(
            "δ bimodule map",
            "morphism of left and right R-modules",
            &rr,
            all_pairs(m).flat_map(|(i, j)| {
                let d = self.coproduct(&self.mul(&b(i), &b(j)));
                let ds = self.coproduct(&b(j));
                let dr = self.coproduct(&b(i));
                let lm = Mat::from_sparse_cols(m, &(0..m).map(|k| self.mul(&b(i), &b(k))).collect::<Vec<_>>());
                let rmul = Mat::from_sparse_cols(m, &(0..m).map(|k| self.mul(&b(k), &b(j))).collect::<Vec<_>>());
                let at = vec![rs.label(i).to_string(), rs.label(j).to_string()];
                [
                    (at.clone(), d.clone(), map_pair(&ds, m, m, Some(&lm), None)),
                    (at, d, map_pair(&dr, m, m, None, Some(&rmul))),
                ]
            }),
        ));
        let unit = self.unit();
        rep.push(
            Check::verdict("local units", "has (idempotent) local units", unit.is_some())
                .with_note("a single idempotent unit serves as local unit"),
        );
        let ls = self.l.space.clone();
        let id_l = LinMap::identity(&ls);
        let id_r = LinMap::identity(&rs);
        rep.push(Check::verdict(
            "τ = σ⁻¹",
            "τ=σ⁻¹",
            self.r_to_l.compose(&self.l_to_r).mat == id_l.mat && self.l_to_r.compose(&self.r_to_l).mat == id_r.mat,
        ));
        rep.push(Check::verdict(
            "τ̄ = σ̄⁻¹",
            "τ̄=σ̄⁻¹",
            self.r_to_l_bar.compose(&self.l_to_r_bar).mat == id_l.mat
                && self.l_to_r_bar.compose(&self.r_to_l_bar).mat == id_r.mat,
        ));
        // anti-multiplicativity, checked inside A
        let anti = |f: &LinMap, src: &Subspace, dst: &Subspace| -> bool {
            let d = src.dim();
            all_pairs(d).all(|(i, j)| {
                let xy = w.mul(&src.basis[i], &src.basis[j]);
                let Some(c) = src.coords(&xy) else { return false };
                let lhs = dst.element(&f.mat.apply_sparse(&c));
                let fx = dst.element(&f.mat.col_sparse(i));
                let fy = dst.element(&f.mat.col_sparse(j));
                lhs == w.mul(&fy, &fx)
            })
        };
        rep.push(Check::verdict(
            "σ, σ̄, τ, τ̄ anti-multiplicative",
            "anti-multiplicative linear maps",
            anti(&self.l_to_r, &self.l, &self.r)
                && anti(&self.l_to_r_bar, &self.l, &self.r)
                && anti(&self.r_to_l, &self.r, &self.l)
                && anti(&self.r_to_l_bar, &self.r, &self.l),
        ));
        rep.push(compare(
            "Nakayama",
            "ε(rs)=ε(ϑ(s)r)",
            &Space::numbered("k", 1),
            all_pairs(m).map(|(i, j)| {
                let l = self.eps(&self.mul(&b(i), &b(j)));
                let r = self.eps(&self.mul(&self.nakayama.mat.col_sparse(j), &b(i)));
                let s = |x: Scalar| if x.is_zero() { vec![] } else { vec![(0, x)] };
                (vec![rs.label(i).to_string(), rs.label(j).to_string()], s(l), s(r))
            }),
        ));
        let aa = w.pair_space().clone();
        let u = w.unit().cloned().unwrap_or_default();
        rep.push(compare(
            "δ from F",
            "δ(r)=(r⊗1)F",
            &aa,
            (0..m).flat_map(|i| {
                let d = self.embed_pair(&self.coproduct(&b(i)));
                let r = self.r.basis[i].clone();
                let at = vec![rs.label(i).to_string()];
                [
                    (at.clone(), d.clone(), w.mul2(&w.kron(&r, &u), &self.separator)),
                    (at, d, w.mul2(&self.separator, &w.kron(&u, &r))),
                ]
            }),
        ));
        match self.separator_multiplier(w) {
            Ok(f) => {
                let fe = Multiplier::of_element(w.pair_algebra(), &self.separator);
                rep.push(Check::verdict("F multiplier", "define a multiplier F on A⊗A", f == fe));
            }
            Err(e) => {
                rep.push(Check::fail("F multiplier", "define a multiplier F on A⊗A", None).with_note(e.to_string()))
            }
        }
        rep.push(compare(
            "F^{21} cross-check",
            "F^{21}(a⊗b):=((A⊗σ̄)[E(a⊗1)])(1⊗b)",
            &aa,
            std::iter::once((vec![], flip_vec(&self.separator, n, n), self.separator_flip.clone())),
        ));
        let e = w.e_element().unwrap_or_default();
        let legs_in = |v: &SVec, first: bool, sub: &Subspace| -> bool {
            (0..n).all(|i| {
                let part: SVec = if first {
                    v.iter().filter(|(k, _)| k % n == i).map(|(k, x)| (k / n, x.clone())).collect()
                } else {
                    v.iter().filter(|(k, _)| k / n == i).map(|(k, x)| (k % n, x.clone())).collect()
                };
                sub.contains(&part)
            })
        };
        rep.push(Check::verdict(
            "E(1⊗a) ∈ R⊗A",
            "E(1⊗a)∈R⊗A",
            (0..n).all(|a| legs_in(&w.mul2(&e, &w.kron(&u, &w.basis(a))), true, &self.r)),
        ));
        rep.push(Check::verdict(
            "(1⊗a)E ∈ R⊗A",
            "(1⊗a)E∈R⊗A",
            (0..n).all(|a| legs_in(&w.mul2(&w.kron(&u, &w.basis(a)), &e), true, &self.r)),
        ));
        rep.push(Check::verdict(
            "(a⊗1)F ∈ A⊗R",
            "(a⊗1)F∈A⊗R",
            (0..n).all(|a| legs_in(&w.mul2(&w.kron(&w.basis(a), &u), &self.separator), false, &self.r)),
        ));
        rep
    }
}

/// `(R⊗Π^R)[E(1⊗a)]`, `(Π̄^R⊗R)[(a⊗1)F]`, `(Π̄^R⊗R)[(a⊗1)E^{21}]` and
/// `(R⊗Π^R)[F(1⊗a)]` for a given `F`.
pub fn separator_expressions_with(w: &WmbStructure, b: &BaseAlgebra, f: &SVec, a: &SVec) -> Result<[SVec; 4], WmbError> {
    let n = w.dim();
    let e = w.e_element()?;
    let e21 = flip_vec(&e, n, n);
    let pr = &b.pi.right.mat;
    let prb = &b.pi.right_bar.mat;
    let oa = w.one_tensor(a)?;
    let ao = w.tensor_one(a)?;
    Ok([
        map_pair(&w.mul2(&e, &oa), n, n, None, Some(pr)),
        map_pair(&w.mul2(&ao, f), n, n, Some(prb), None),
        map_pair(&w.mul2(&ao, &e21), n, n, Some(prb), None),
        map_pair(&w.mul2(f, &oa), n, n, None, Some(pr)),
    ])
}

pub fn separator_expressions(w: &WmbStructure, b: &BaseAlgebra, a: &SVec) -> Result<[SVec; 4], WmbError> {
    separator_expressions_with(w, b, &b.separator, a)
}

/// Compares the four expressions on every basis element.
pub fn check_separator_expressions(w: &WmbStructure, b: &BaseAlgebra) -> Report {
    check_separator_expressions_with(w, b, &b.separator)
}

pub fn check_separator_expressions_with(w: &WmbStructure, b: &BaseAlgebra, f: &SVec) -> Report {
    let mut rep = Report::new("expressions in R⊗R");
    let n = w.dim();
    let aa = w.pair_space().clone();
    let ex: Vec<[SVec; 4]> = match (0..n).map(|a| separator_expressions_with(w, b, f, &w.basis(a))).collect() {
        Ok(v) => v,
        Err(e) => {
            rep.push(Check::fail("expressions", "the following expressions are equal", None).with_note(e.to_string()));
            return rep;
        }
    };
    for (k, name) in [(1, "(a) = (b)"), (2, "(a) = (c)"), (3, "(a) = (d)")] {
        rep.push(compare(
            name,
            "the following expressions are equal",
            &aa,
            (0..n).map(|a| (w.at(&[a]), ex[a][0].clone(), ex[a][k].clone())),
        ));
    }
    let in_rr = ex.iter().all(|x| {
        (0..n).all(|i| {
            let first: SVec = x[0].iter().filter(|(k, _)| k % n == i).map(|(k, c)| (k / n, c.clone())).collect();
            let second: SVec = x[0].iter().filter(|(k, _)| k / n == i).map(|(k, c)| (k % n, c.clone())).collect();
            b.r.contains(&first) && b.r.contains(&second)
        })
    });
    rep.push(Check::verdict("values in R⊗R", "each an element of R⊗R", in_rr));
    rep
}

/// The antipode identities, anti-(co)multiplicativity, non-degeneracy, the
/// restrictions to `R` and `L`, and bijectivity.
pub fn check_antipode(w: &WmbStructure, b: &BaseAlgebra) -> Report {
    let mut rep = Report::new("antipode");
    let Some(s) = &w.antipode else {
        rep.push(Check::fail("antipode present", "μ(S⊗A)T₁=μ(Π^R⊗A)", None).with_note("no antipode supplied"));
        return rep;
    };
    let n = w.dim();
    let sp = w.space().clone();
    let bs = |i| w.basis(i);
    let smat = &s.mat;
    let mu = w.algebra.mult_map();
    // μ(f⊗g) on an element of A⊗A
    let mu_fg = |v: &SVec, f: Option<&Mat>, g: Option<&Mat>| -> SVec { mu.mat.apply_sparse(&map_pair(v, n, n, f, g)) };
    let pr = &b.pi.right.mat;
    let pl = &b.pi.left.mat;
    rep.push(compare(
        "S against T1",
        "μ(S⊗A)T₁=μ(Π^R⊗A)",
        &sp,
        all_pairs(n).map(|(x, y)| {
            let ab = w.kron(&bs(x), &bs(y));
            (w.at(&[x, y]), mu_fg(&w.t1.mat.apply_sparse(&ab), Some(smat), None), mu_fg(&ab, Some(pr), None))
        }),
    ));
    rep.push(compare(
        "S against T2",
        "μ(A⊗S)T₂=μ(A⊗Π^L)",
        &sp,
        all_pairs(n).map(|(x, y)| {
            let ab = w.kron(&bs(x), &bs(y));
            (w.at(&[x, y]), mu_fg(&w.t2.mat.apply_sparse(&ab), None, Some(smat)), mu_fg(&ab, None, Some(pl)))
        }),
    ));
    rep.push(compare(
        "S against E1",
        "μ(S⊗A)E₁=μ(S⊗A)",
        &sp,
        all_pairs(n).map(|(x, y)| {
            let ab = w.kron(&bs(x), &bs(y));
            (w.at(&[x, y]), mu_fg(&w.e.left.mat.apply_sparse(&ab), Some(smat), None), mu_fg(&ab, Some(smat), None))
        }),
    ));
    rep.push(compare(
        "S against E2",
        "μ(A⊗S)E₂=μ(A⊗S)",
        &sp,
        all_pairs(n).map(|(x, y)| {
            let ab = w.kron(&bs(x), &bs(y));
            (w.at(&[x, y]), mu_fg(&w.e.right.mat.apply_sparse(&ab), None, Some(smat)), mu_fg(&ab, None, Some(smat)))
        }),
    ));
    rep.push(compare(
        "S anti-multiplicative",
        "S(ab)=S(b)S(a)",
        &sp,
        all_pairs(n).map(|(x, y)| {
            let l = smat.apply_sparse(&w.mul(&bs(x), &bs(y)));
            let r = w.mul(&smat.col_sparse(y), &smat.col_sparse(x));
            (w.at(&[x, y]), l, r)
        }),
    ));
    let as_b: Vec<SVec> = all_pairs(n).map(|(x, y)| w.mul(&bs(x), &smat.col_sparse(y))).collect();
    let sb_a: Vec<SVec> = all_pairs(n).map(|(x, y)| w.mul(&smat.col_sparse(y), &bs(x))).collect();
    let d1 = Subspace::span(&sp, as_b.iter()).dim();
    let d2 = Subspace::span(&sp, sb_a.iter()).dim();
    rep.push(
        Check::verdict("S non-degenerate", "linear combination of elements of the form aS(b)", d1 == n && d2 == n)
            .with_note(format!("spans of dimension {d1} and {d2}")),
    );
    let aa = w.pair_space().clone();
    rep.push(compare(
        "S anti-comultiplicative",
        "Δ̄S = (S⊗S)‾Δ^op",
        &aa,
        (0..n).map(|x| {
            let l = w.delta(&smat.col_sparse(x)).unwrap_or_default();
            let r = map_pair(&w.delta_op(&bs(x)).unwrap_or_default(), n, n, Some(smat), Some(smat));
            (w.at(&[x]), l, r)
        }),
    ));
    let restr = |src: &Subspace, f: &LinMap, dst_inc: &LinMap| -> bool {
        (0..src.dim()).all(|i| smat.apply_sparse(&src.basis[i]) == dst_inc.mat.apply_sparse(&f.mat.col_sparse(i)))
    };
    let sbar_inv = b.l_to_r_bar.inverse();
    rep.push(Check::verdict(
        "S on R",
        "the restriction of S̄ to R is equal to σ̄⁻¹",
        sbar_inv.is_some_and(|inv| restr(&b.r, &inv, &b.l_inclusion)),
    ));
    rep.push(Check::verdict("S on L", "the restriction of S̄ to L is equal to σ", restr(&b.l, &b.l_to_r, &b.inclusion)));
    rep.push(Check::verdict("S bijective", "S factorizes through a vector space isomorphism", s.is_bijective()));
    rep
}

/// Whether the structure is a regular weak multiplier Hopf algebra: full on
/// both sides, antipode identities all hold, antipode bijective.
pub fn is_regular_hopf(w: &WmbStructure, b: &BaseAlgebra) -> bool {
    w.antipode.is_some() && check_antipode(w, b).passed()
}

/// Extends `a ↦ Δ(a)` to `M(A) → M(A⊗A)` with `1 ↦ E`.
pub fn extend_comultiplication(w: &WmbStructure, ma: &MultiplierAlgebra) -> Result<Extension, WmbError> {
    let n = w.dim();
    let phi: Vec<Multiplier> = (0..n).map(|a| w.delta_multiplier(&w.basis(a))).collect::<Result<_, _>>()?;
    let ext = extend_multiplicative_map(&w.algebra, ma, &phi, w.pair_algebra(), &w.e)?;
    Ok(ext)
}

/// The identity suite on the structure, then fullness, the base algebra,
/// the four expressions in `F` and (when present) the antipode. Later stages are skipped
/// once an earlier stage fails or cannot be built.
pub fn structure_suite(w: &WmbStructure) -> (Report, Option<BaseAlgebra>) {
    let mut rep = Report::new("structure");
    let core = check_wmb(w);
    let ok = core.passed();
    rep.absorb("", core);
    if !ok {
        return (rep, None);
    }
    let full = check_fullness(w);
    let ok = full.passed();
    rep.absorb("fullness", full);
    if !ok {
        return (rep, None);
    }
    let b = match base_algebra(w) {
        Ok(b) => b,
        Err(e) => {
            rep.push(Check::fail("base algebra", "R is a coseparable coalgebra", None).with_note(e.to_string()));
            return (rep, None);
        }
    };
    rep.absorb("base", b.check(w));
    rep.absorb("F", check_separator_expressions(w, &b));
    if w.antipode.is_some() {
        rep.absorb("antipode", check_antipode(w, &b));
    }
    (rep, Some(b))
}

/// A structure tensor addressed entry by entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    Mult,
    T1,
    T2,
    T3,
    T4,
    ELeft,
    ERight,
    Counit,
    Antipode,
}

impl Component {
    pub const ALL: [Component; 9] = [
        Component::Mult,
        Component::T1,
        Component::T2,
        Component::T3,
        Component::T4,
        Component::ELeft,
        Component::ERight,
        Component::Counit,
        Component::Antipode,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Component::Mult => "mult",
            Component::T1 => "T1",
            Component::T2 => "T2",
            Component::T3 => "T3",
            Component::T4 => "T4",
            Component::ELeft => "E-left",
            Component::ERight => "E-right",
            Component::Counit => "counit",
            Component::Antipode => "antipode",
        }
    }
}

impl WmbStructure {
    /// `(rows, cols)` of a component; `None` for an absent antipode.
    pub fn component_shape(&self, c: Component) -> Option<(usize, usize)> {
        let n = self.dim();
        match c {
            Component::Mult => Some((n, n * n)),
            Component::Counit => Some((1, n)),
            Component::Antipode => self.antipode.as_ref().map(|_| (n, n)),
            _ => Some((n * n, n * n)),
        }
    }

    pub fn entry(&self, c: Component, row: usize, col: usize) -> Scalar {
        match c {
            Component::Mult => self.algebra.mult_map().mat.get(row, col).clone(),
            Component::T1 => self.t1.mat.get(row, col).clone(),
            Component::T2 => self.t2.mat.get(row, col).clone(),
            Component::T3 => self.t3.mat.get(row, col).clone(),
            Component::T4 => self.t4.mat.get(row, col).clone(),
            Component::ELeft => self.e.left.mat.get(row, col).clone(),
            Component::ERight => self.e.right.mat.get(row, col).clone(),
            Component::Counit => self.counit[col].clone(),
            Component::Antipode => {
                self.antipode.as_ref().map(|s| s.mat.get(row, col).clone()).unwrap_or_else(Scalar::zero)
            }
        }
    }

    /// A copy with one entry replaced.
    pub fn with_entry(&self, c: Component, row: usize, col: usize, value: Scalar) -> Result<WmbStructure, WmbError> {
        let mut mult = self.algebra.mult_map();
        let (mut t1, mut t2, mut t3, mut t4) = (self.t1.clone(), self.t2.clone(), self.t3.clone(), self.t4.clone());
        let (mut el, mut er) = (self.e.left.clone(), self.e.right.clone());
        let mut counit = self.counit.clone();
        let mut antipode = self.antipode.clone();
        match c {
            Component::Mult => mult.mat.set(row, col, value),
            Component::T1 => t1.mat.set(row, col, value),
            Component::T2 => t2.mat.set(row, col, value),
            Component::T3 => t3.mat.set(row, col, value),
            Component::T4 => t4.mat.set(row, col, value),
            Component::ELeft => el.mat.set(row, col, value),
            Component::ERight => er.mat.set(row, col, value),
            Component::Counit => counit[col] = value,
            Component::Antipode => match antipode.as_mut() {
                Some(s) => s.mat.set(row, col, value),
                None => return Err(WmbError::MissingAntipode),
            },
        }
        let alg = Algebra::new(self.space().clone(), &mult)?;
        WmbStructure::new(alg, t1, t2, t3, t4, el, er, counit, antipode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::multiplier_algebra;
    use crate::examples::{corpus, function_algebra, groupoid_algebra, FiniteGroupoid};

    fn kp2() -> (FiniteGroupoid, WmbStructure) {
        let g = FiniteGroupoid::pair(2);
        let w = groupoid_algebra(&g).unwrap();
        (g, w)
    }

    fn e(i: usize) -> SVec {
        vec![(i, Scalar::one())]
    }

    fn identity_sum(g: &FiniteGroupoid) -> SVec {
        let n = g.size();
        let mut v: SVec = g.identities.iter().map(|&x| (x * n + x, Scalar::one())).collect();
        v.sort_by_key(|p| p.0);
        v
    }

    #[test]
    fn corpus_passes_identity_suite() {
        for inst in corpus() {
            let r = check_wmb(&inst.structure);
            assert!(r.passed(), "{}\n{r}", inst.name);
            let f = check_fullness(&inst.structure);
            assert!(f.passed(), "{}\n{f}", inst.name);
        }
    }

    #[test]
    fn replacing_e_by_one_is_detected() {
        let (_, w) = kp2();
        let mut bad = w.clone();
        bad.e = Multiplier::identity(w.pair_space());
        let r = check_wmb(&bad);
        assert!(!r.passed());
        let c = r.get("Δ(1) = E").unwrap();
        assert!(!c.passed && c.witness.is_some());
        assert_eq!(r.verdict("span (A⊗A)E"), Some(false));
    }

    #[test]
    fn pi_maps_on_pair_groupoid() {
        let (g, w) = kp2();
        for a in 0..4 {
            let m = &g.morphisms[a];
            let [rb, lb, r, l] = pi_maps(&w, &e(a)).unwrap();
            let id = |x: usize| Multiplier::of_element(&w.algebra, &e(g.identities[x]));
            assert_eq!(rb, id(m.target));
            assert_eq!(r, id(m.source));
            assert_eq!(l, id(m.target));
            assert_eq!(lb, id(m.source));
        }
        let zero = pi_maps(&w, &vec![]).unwrap();
        assert!(zero.iter().all(Multiplier::is_zero));
    }

    #[test]
    fn base_algebra_of_pair_groupoid() {
        let (g, w) = kp2();
        let b = base_algebra(&w).unwrap();
        assert_eq!(b.dim(), 2);
        for i in 0..2 {
            let r = b.element(&b.basis(i));
            assert!(g.identities.iter().any(|&x| r == e(x)));
            assert_eq!(b.coproduct(&b.basis(i)), vec![(i * 2 + i, Scalar::one())]);
        }
        assert_eq!(b.nakayama.mat, Mat::identity(2));
        assert_eq!(b.l_to_r.mat, Mat::identity(2));
        // F = Σ_x id_x ⊗ id_x, so F(e_ij⊗e_kl) = δ_ik e_ij⊗e_kl
        assert_eq!(b.separator, identity_sum(&g));
        let rep = b.check(&w);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn group_algebra_base_is_trivial() {
        for g in [FiniteGroupoid::cyclic(2), FiniteGroupoid::cyclic(3), FiniteGroupoid::symmetric3()] {
            let w = groupoid_algebra(&g).unwrap();
            let b = base_algebra(&w).unwrap();
            assert_eq!(b.dim(), 1);
            assert_eq!(b.coproduct(&b.basis(0)), e(0));
            assert_eq!(b.separator, e(0));
            assert_eq!(w.e_element().unwrap(), e(0));
        }
    }

    #[test]
    fn base_algebra_checks_on_corpus() {
        for inst in corpus() {
            let b = base_algebra(&inst.structure).unwrap();
            let rep = b.check(&inst.structure);
            assert!(rep.passed(), "{}\n{rep}", inst.name);
            assert!(check_separator_expressions(&inst.structure, &b).passed(), "{}", inst.name);
            let s = check_antipode(&inst.structure, &b);
            assert!(s.passed(), "{}\n{s}", inst.name);
            assert!(is_regular_hopf(&inst.structure, &b));
        }
    }

    #[test]
    fn separator_expressions_on_pair_groupoid() {
        let (g, w) = kp2();
        let b = base_algebra(&w).unwrap();
        for a in 0..4 {
            let m = &g.morphisms[a];
            let want = vec![(g.identities[m.target] * 4 + g.identities[m.source], Scalar::one())];
            for x in separator_expressions(&w, &b, &e(a)).unwrap() {
                assert_eq!(x, want);
            }
        }
    }

    #[test]
    fn trivial_idempotent_on_pair_groupoid_is_caught() {
        let (_, w) = kp2();
        let id = LinMap::identity(w.pair_space());
        let mut bad = w.clone();
        bad.e = Multiplier::new(id.clone(), id).unwrap();
        let r = check_wmb(&bad);
        assert!(!r.passed());
        let c = r.get("Δ(1) = E").unwrap();
        assert!(!c.passed);
        assert!(c.witness.is_some());
        // E₂Δ = Δ holds trivially once E = 1⊗1
        assert_eq!(bad.mul2(&bad.e_element().unwrap(), &bad.delta(&e(1)).unwrap()), bad.delta(&e(1)).unwrap());
    }

    #[test]
    fn separator_expressions_negative_control() {
        // F differs from E on the function algebra of P2
        let w = function_algebra(&FiniteGroupoid::pair(2)).unwrap();
        let b = base_algebra(&w).unwrap();
        let e = w.e_element().unwrap();
        assert_ne!(b.separator, e);
        assert!(!check_separator_expressions_with(&w, &b, &e).passed());
    }

    #[test]
    fn identity_antipode_fails_at_off_diagonal() {
        let (_, w) = kp2();
        let b = base_algebra(&w).unwrap();
        let mut bad = w.clone();
        bad.antipode = Some(LinMap::identity(w.space()));
        let r = check_antipode(&bad, &b);
        let c = r.get("S against T1").unwrap();
        assert!(!c.passed);
        let at = &c.witness.as_ref().unwrap().at;
        assert!(at.iter().any(|l| l == "e12" || l == "e21"), "{at:?}");
    }

    #[test]
    fn delta_op_cocommutative_and_not() {
        let (_, w) = kp2();
        for a in 0..4 {
            assert_eq!(delta_op(&w, &e(a)).unwrap(), w.delta_multiplier(&e(a)).unwrap());
        }
        assert!(delta_op(&w, &vec![]).unwrap().is_zero());
        let f = function_algebra(&FiniteGroupoid::pair(2)).unwrap();
        let differs = (0..4).any(|a| f.delta_op(&e(a)).unwrap() != f.delta(&e(a)).unwrap());
        assert!(differs);
    }

    #[test]
    fn comultiplication_extends_uniquely() {
        for inst in corpus().into_iter().filter(|i| i.structure.dim() <= 6) {
            let w = &inst.structure;
            let ma = multiplier_algebra(&w.algebra).unwrap();
            let ext = extend_comultiplication(w, &ma).unwrap();
            assert_eq!(ext.apply(&ma.unit_coords), w.e, "{}", inst.name);
            assert!(ext.report.passed(), "{}\n{}", inst.name, ext.report);
            assert_eq!(ext.solution_dim, ma.dim());
        }
    }

    #[test]
    fn non_unital_input_is_reported() {
        let alg = Algebra::from_table(Space::numbered("x", 1), vec![vec![vec![]]]);
        let one = Mat::identity(1);
        let m = LinMap::identity(&tensor_space(alg.space(), alg.space()));
        let w =
            WmbStructure::new(alg, m.clone(), m.clone(), m.clone(), m.clone(), m.clone(), m, vec![Scalar::one()], None)
                .unwrap();
        assert!(!check_wmb(&w).passed());
        assert_eq!(w.delta(&e(0)), Err(WmbError::NonUnital));
        let _ = one;
    }
}
