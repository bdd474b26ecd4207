//! Possibly non-unital associative algebras by structure constants, their
//! multiplier algebras, and extension of multiplicative maps.

use thiserror::Error;

use crate::exact::{
    self, axpy, dense, sparse, sparse_kernel, tensor_space, ExactError, LinMap, Mat, SVec, Scalar, Space,
};
use crate::report::{compare, Check, Report};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("algebra is not idempotent")]
    NotIdempotent,
    #[error("algebra is degenerate")]
    Degenerate,
    #[error("algebra has no unit; the embedding into its multiplier algebra is not onto")]
    NonUnital,
    #[error("span hypothesis fails: {0}")]
    SpanHypothesis(String),
    #[error("no multiplicative extension: {0}")]
    NoExtension(String),
    #[error("{0}")]
    Shape(String),
}

/// An associative algebra given by the products of its basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    space: Space,
    table: Vec<Vec<SVec>>,
}

impl Algebra {
    /// From a multiplication map `A⊗A → A`.
    pub fn new(space: Space, mult: &LinMap) -> Result<Algebra, AlgebraError> {
        let n = space.dim();
        if mult.mat.rows() != n || mult.mat.cols() != n * n {
            return Err(AlgebraError::Shape(format!(
                "multiplication must be {n}x{} but is {}x{}",
                n * n,
                mult.mat.rows(),
                mult.mat.cols()
            )));
        }
        let cols = mult.mat.cols_sparse();
        let table = (0..n).map(|i| (0..n).map(|j| cols[i * n + j].clone()).collect()).collect();
        Ok(Algebra { space, table })
    }

    pub fn from_table(space: Space, table: Vec<Vec<SVec>>) -> Algebra {
        assert_eq!(table.len(), space.dim());
        Algebra { space, table }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &SVec {
        &self.table[i][j]
    }

    pub fn mult_map(&self) -> LinMap {
        let n = self.dim();
        let cols: Vec<SVec> = (0..n * n).map(|c| self.table[c / n][c % n].clone()).collect();
        LinMap::new(tensor_space(&self.space, &self.space), self.space.clone(), Mat::from_sparse_cols(n, &cols))
            .unwrap()
    }

    pub fn mul(&self, a: &SVec, b: &SVec) -> SVec {
        let mut acc = Vec::new();
        for (i, x) in a {
            for (j, y) in b {
                let t = &self.table[*i][*j];
                if !t.is_empty() {
                    acc = axpy(&acc, &x.mul(y), t);
                }
            }
        }
        acc
    }

    pub fn mul_dense(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        dense(&self.mul(&sparse(a), &sparse(b)), self.dim())
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_op(&self, a: &SVec) -> Mat {
        let n = self.dim();
        let cols: Vec<SVec> = (0..n).map(|j| self.mul(a, &vec![(j, Scalar::one())])).collect();
        Mat::from_sparse_cols(n, &cols)
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_op(&self, a: &SVec) -> Mat {
        let n = self.dim();
        let cols: Vec<SVec> = (0..n).map(|j| self.mul(&vec![(j, Scalar::one())], a)).collect();
        Mat::from_sparse_cols(n, &cols)
    }

    pub fn basis(&self, i: usize) -> SVec {
        vec![(i, Scalar::one())]
    }

    pub fn opposite(&self) -> Algebra {
        let n = self.dim();
        let table = (0..n).map(|i| (0..n).map(|j| self.table[j][i].clone()).collect()).collect();
        Algebra { space: self.space.clone(), table }
    }

    /// Componentwise product on `A⊗B`.
    pub fn tensor(&self, other: &Algebra) -> Algebra {
        let (n, m) = (self.dim(), other.dim());
        let space = tensor_space(&self.space, &other.space);
        let mut table = vec![vec![Vec::new(); n * m]; n * m];
        for i in 0..n * m {
            for j in 0..n * m {
                let l = &self.table[i / m][j / m];
                let r = &other.table[i % m][j % m];
                let mut v = Vec::with_capacity(l.len() * r.len());
                for (p, x) in l {
                    for (q, y) in r {
                        v.push((p * m + q, x.mul(y)));
                    }
                }
                table[i][j] = v;
            }
        }
        Algebra { space, table }
    }

    pub fn check_associative(&self) -> Check {
        let n = self.dim();
        let sp = self.space.clone();
        let cases = (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))));
        let lab = |i: usize| self.space.label(i).to_string();
        compare(
            "associativity",
            "mult∘(mult⊗id) = mult∘(id⊗mult)",
            &sp,
            cases.map(|(a, b, c)| {
                let l = self.mul(&self.table[a][b], &self.basis(c));
                let r = self.mul(&self.basis(a), &self.table[b][c]);
                (vec![lab(a), lab(b), lab(c)], l, r)
            }),
        )
    }

    /// The unit, when one exists.
    pub fn unit(&self) -> Option<SVec> {
        let n = self.dim();
        // u e_j = e_j and e_j u = e_j, unknowns u_i
        let mut a = Mat::zeros(2 * n * n, n);
        let mut b = Mat::zeros(2 * n * n, 1);
        for j in 0..n {
            for k in 0..n {
                let row = j * n + k;
                for i in 0..n {
                    if let Some(x) = coeff(&self.table[i][j], k) {
                        a.set(row, i, x.clone());
                    }
                    if let Some(x) = coeff(&self.table[j][i], k) {
                        a.set(n * n + row, i, x.clone());
                    }
                }
                if j == k {
                    b.set(row, 0, Scalar::one());
                    b.set(n * n + row, 0, Scalar::one());
                }
            }
        }
        let y = a.solve_right(&b).ok()?;
        Some(sparse(&y.col(0)))
    }
}

pub(crate) fn coeff(v: &SVec, k: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&k, |e| e.0).ok().map(|i| &v[i].1)
}

/// Passes iff the multiplication is onto.
pub fn check_idempotent_algebra(a: &Algebra) -> Report {
    let mut r = Report::new("idempotent algebra");
    let rank = a.mult_map().rank();
    let c = Check::verdict("idempotent", "μ: A⊗A → A is surjective", rank == a.dim())
        .with_note(format!("rank of μ is {rank} of {}", a.dim()));
    r.push(c);
    r
}

/// Passes iff `a ↦ a(−)` and `a ↦ (−)a` are injective.
pub fn check_nondegenerate(a: &Algebra) -> Report {
    let mut r = Report::new("non-degenerate algebra");
    let n = a.dim();
    let left = op_rank(a, |x| a.left_op(x));
    let right = op_rank(a, |x| a.right_op(x));
    r.push(
        Check::verdict("left non-degenerate", "a ↦ μ(a⊗−) is injective", left == n)
            .with_note(format!("rank {left} of {n}")),
    );
    r.push(
        Check::verdict("right non-degenerate", "a ↦ μ(−⊗a) is injective", right == n)
            .with_note(format!("rank {right} of {n}")),
    );
    r
}

fn op_rank(a: &Algebra, op: impl Fn(&SVec) -> Mat) -> usize {
    let n = a.dim();
    let cols: Vec<SVec> = (0..n).map(|i| sparse(op(&a.basis(i)).entries())).collect();
    Mat::from_sparse_cols(n * n, &cols).rank()
}

/// A multiplier: the operators `b ↦ w b` and `b ↦ b w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplier {
    pub left: LinMap,
    pub right: LinMap,
}

impl Multiplier {
    pub fn new(left: LinMap, right: LinMap) -> Result<Multiplier, AlgebraError> {
        if left.source != left.target || right.source != right.target || left.source != right.source {
            return Err(AlgebraError::Shape("multiplier operators must act on one space".into()));
        }
        Ok(Multiplier { left, right })
    }

    pub fn identity(space: &Space) -> Multiplier {
        Multiplier { left: LinMap::identity(space), right: LinMap::identity(space) }
    }

    pub fn zero(space: &Space) -> Multiplier {
        Multiplier { left: LinMap::zero(space, space), right: LinMap::zero(space, space) }
    }

    /// The multiplier of an element.
    pub fn of_element(alg: &Algebra, a: &SVec) -> Multiplier {
        let s = alg.space();
        Multiplier {
            left: LinMap::new(s.clone(), s.clone(), alg.left_op(a)).unwrap(),
            right: LinMap::new(s.clone(), s.clone(), alg.right_op(a)).unwrap(),
        }
    }

    pub fn space(&self) -> &Space {
        &self.left.source
    }

    /// `(w a, a w)`.
    pub fn apply(&self, a: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        (self.left.apply(a), self.right.apply(a))
    }

    /// `w · v`: composition on the left, opposite composition on the right.
    pub fn multiply(&self, v: &Multiplier) -> Result<Multiplier, AlgebraError> {
        if self.space().dim() != v.space().dim() {
            return Err(AlgebraError::Shape("multipliers on different algebras".into()));
        }
        Ok(Multiplier { left: self.left.compose(&v.left), right: v.right.compose(&self.right) })
    }

    pub fn add(&self, v: &Multiplier) -> Multiplier {
        Multiplier {
            left: LinMap::raw(self.space(), self.space(), self.left.mat.add(&v.left.mat)),
            right: LinMap::raw(self.space(), self.space(), self.right.mat.add(&v.right.mat)),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Multiplier {
        Multiplier {
            left: LinMap::raw(self.space(), self.space(), self.left.mat.scale(s)),
            right: LinMap::raw(self.space(), self.space(), self.right.mat.scale(s)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.left.mat.is_zero() && self.right.mat.is_zero()
    }

    /// `w ⊗ v` on a tensor product algebra.
    pub fn tensor(&self, v: &Multiplier) -> Multiplier {
        Multiplier { left: self.left.tensor(&v.left), right: self.right.tensor(&v.right) }
    }

    /// Leg-numbered multiplier, `w^{ij}(−) = [w(−)]^{ij}`.
    pub fn legs(&self, pattern: &str, fill: &[Space]) -> Result<Multiplier, AlgebraError> {
        Ok(Multiplier {
            left: exact::leg_permute(&self.left, pattern, fill)?,
            right: exact::leg_permute(&self.right, pattern, fill)?,
        })
    }

    /// `(a w) b = a (w b)` on all basis pairs.
    pub fn check_compatible(&self, alg: &Algebra) -> Check {
        let n = alg.dim();
        let sp = alg.space().clone();
        let lcols = self.left.mat.cols_sparse();
        let rcols = self.right.mat.cols_sparse();
        compare(
            "multiplier compatibility",
            "a(w b) = (a w) b",
            &sp,
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| {
                let l = alg.mul(&alg.basis(a), &lcols[b]);
                let r = alg.mul(&rcols[a], &alg.basis(b));
                (vec![sp.label(a).to_string(), sp.label(b).to_string()], l, r)
            }),
        )
    }
}

/// `(w a, a w)` for a multiplier and an element.
pub fn apply_multiplier(w: &Multiplier, a: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    w.apply(a)
}

pub fn multiply_multiplier(w: &Multiplier, v: &Multiplier) -> Result<Multiplier, AlgebraError> {
    w.multiply(v)
}

pub fn tensor_algebra(a: &Algebra, b: &Algebra) -> Algebra {
    a.tensor(b)
}

/// `M(A)` realized on the solution space of the compatibility equations.
#[derive(Clone, Debug)]
pub struct MultiplierAlgebra {
    pub carrier: Space,
    /// Basis of the carrier as operator pairs.
    pub basis: Vec<Multiplier>,
    /// Unknown positions read off as coordinates.
    free: Vec<usize>,
    pub unit: Multiplier,
    pub unit_coords: Vec<Scalar>,
    pub embedding: LinMap,
    pub product: LinMap,
}

impl MultiplierAlgebra {
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// Carrier coordinates of a multiplier; errors if it is not in the carrier.
    pub fn coords(&self, w: &Multiplier) -> Result<Vec<Scalar>, AlgebraError> {
        let n = w.space().dim();
        let flat = flatten_pair(w, n);
        let c: Vec<Scalar> = self.free.iter().map(|f| flat[*f].clone()).collect();
        if self.element(&c) != *w {
            return Err(AlgebraError::Shape("operator pair is not a multiplier".into()));
        }
        Ok(c)
    }

    pub fn element(&self, c: &[Scalar]) -> Multiplier {
        let s = self.unit.space().clone();
        let mut acc = Multiplier::zero(&s);
        for (x, b) in c.iter().zip(&self.basis) {
            if !x.is_zero() {
                acc = acc.add(&b.scale(x));
            }
        }
        acc
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let p = self.element(x).multiply(&self.element(y)).unwrap();
        self.coords(&p).expect("carrier closed under products")
    }
}

fn flatten_pair(w: &Multiplier, n: usize) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(2 * n * n);
    v.extend(w.left.mat.entries().iter().cloned());
    v.extend(w.right.mat.entries().iter().cloned());
    v
}

/// Solves `a (L b) = (R a) b` for operator pairs `(L, R)`.
pub fn multiplier_algebra(a: &Algebra) -> Result<MultiplierAlgebra, AlgebraError> {
    if !check_idempotent_algebra(a).passed() {
        return Err(AlgebraError::NotIdempotent);
    }
    if !check_nondegenerate(a).passed() {
        return Err(AlgebraError::Degenerate);
    }
    let n = a.dim();
    let nn = n * n;
    // L[r][c] at r*n+c, R[r][c] at nn + r*n+c
    let mut rows = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            let mut acc: std::collections::BTreeMap<usize, std::collections::BTreeMap<usize, Scalar>> =
                Default::default();
            for j in 0..n {
                for (k, c) in &a.table[x][j] {
                    let e = acc.entry(*k).or_default().entry(j * n + y).or_insert_with(Scalar::zero);
                    *e = e.add(c);
                }
                for (k, c) in &a.table[j][y] {
                    let e = acc.entry(*k).or_default().entry(nn + j * n + x).or_insert_with(Scalar::zero);
                    *e = e.sub(c);
                }
            }
            for (_, r) in acc {
                let r: SVec = r.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !r.is_empty() {
                    rows.push(r);
                }
            }
        }
    }
    let k = sparse_kernel(2 * nn, rows);
    let s = a.space();
    let basis: Vec<Multiplier> = k
        .basis
        .iter()
        .map(|v| {
            let d = dense(v, 2 * nn);
            let l = Mat::from_fn(n, n, |r, c| d[r * n + c].clone());
            let rr = Mat::from_fn(n, n, |r, c| d[nn + r * n + c].clone());
            Multiplier { left: LinMap::raw(s, s, l), right: LinMap::raw(s, s, rr) }
        })
        .collect();
    let m = basis.len();
    let carrier = Space::numbered("m", m);
    let mut ma = MultiplierAlgebra {
        carrier: carrier.clone(),
        basis,
        free: k.free,
        unit: Multiplier::identity(s),
        unit_coords: Vec::new(),
        embedding: LinMap::zero(s, &carrier),
        product: LinMap::zero(&tensor_space(&carrier, &carrier), &carrier),
    };
    ma.unit_coords = ma.coords(&Multiplier::identity(s))?;
    let emb: Vec<Vec<Scalar>> =
        (0..n).map(|i| ma.coords(&Multiplier::of_element(a, &a.basis(i)))).collect::<Result<_, _>>()?;
    ma.embedding = LinMap::raw(s, &carrier, Mat::from_cols(m, &emb));
    let mut prod = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            prod.push(ma.multiply(&exact::unit_vec(m, i), &exact::unit_vec(m, j)));
        }
    }
    ma.product = LinMap::raw(&tensor_space(&carrier, &carrier), &carrier, Mat::from_cols(m, &prod));
    Ok(ma)
}

/// Checks on a computed `M(A)`: every basis pair compatible, unit present,
/// `A` a dense ideal, embedding injective.
pub fn check_multiplier_algebra(a: &Algebra, ma: &MultiplierAlgebra) -> Report {
    let mut r = Report::new("multiplier algebra");
    let all_ok = ma.basis.iter().all(|w| w.check_compatible(a).passed);
    r.push(Check::verdict("carrier compatible", "a(w b) = (a w) b", all_ok));
    let n = a.dim();
    let rights: Vec<SVec> = ma.basis.iter().map(|w| sparse(w.right.mat.entries())).collect();
    let lefts: Vec<SVec> = ma.basis.iter().map(|w| sparse(w.left.mat.entries())).collect();
    let dense_r = Mat::from_sparse_cols(n * n, &rights).rank() == ma.dim();
    let dense_l = Mat::from_sparse_cols(n * n, &lefts).rank() == ma.dim();
    r.push(Check::verdict("dense ideal", "a·w = 0 for all a ⇒ w = 0", dense_r && dense_l));
    r.push(Check::verdict("embedding injective", "A → M(A) injective", ma.embedding.is_injective()));
    r.push(
        Check::verdict("embedding bijective", "M(A) ≅ A", ma.embedding.is_bijective())
            .with_note(format!("dim A = {n}, dim M(A) = {}", ma.dim())),
    );
    r
}

/// The extension of a multiplicative map `A → M(B)`.
#[derive(Clone, Debug)]
pub struct Extension {
    /// Images of the carrier basis of `M(A)`.
    pub images: Vec<Multiplier>,
    /// Dimension of the homogeneous solutions of the defining system.
    pub homogeneous_dim: usize,
    /// Dimension of the solution space of the joint system in `(w, φ̄(w))`.
    pub solution_dim: usize,
    pub report: Report,
}

impl Extension {
    pub fn apply(&self, coords: &[Scalar]) -> Multiplier {
        let s = self.images[0].space().clone();
        let mut acc = Multiplier::zero(&s);
        for (x, b) in coords.iter().zip(&self.images) {
            if !x.is_zero() {
                acc = acc.add(&b.scale(x));
            }
        }
        acc
    }
}

/// Extends `phi: A → M(B)` (given on the basis of `A`) to `M(A) → M(B)`
/// sending `1` to the idempotent `e`, when `⟨φ(a)b⟩ = ⟨eb⟩` and
/// `⟨bφ(a)⟩ = ⟨be⟩`.
pub fn extend_multiplicative_map(
    a: &Algebra,
    ma: &MultiplierAlgebra,
    phi: &[Multiplier],
    b: &Algebra,
    e: &Multiplier,
) -> Result<Extension, AlgebraError> {
    let n = a.dim();
    let nb = b.dim();
    if phi.len() != n || e.space().dim() != nb {
        return Err(AlgebraError::Shape("map and idempotent shapes".into()));
    }
    let lin = |v: &[Scalar], side: bool| -> Mat {
        let mut acc = Mat::zeros(nb, nb);
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                let m = if side { &phi[k].left.mat } else { &phi[k].right.mat };
                acc = acc.add(&m.scale(x));
            }
        }
        acc
    };
    let hstack_all = |ms: Vec<Mat>| -> Mat {
        let mut it = ms.into_iter();
        let first = it.next().unwrap_or_else(|| Mat::zeros(nb, 0));
        it.fold(first, |acc, m| acc.hstack(&m))
    };
    let left_span = hstack_all(phi.iter().map(|p| p.left.mat.clone()).collect());
    let right_span = hstack_all(phi.iter().map(|p| p.right.mat.clone()).collect());
    let same_span = |x: &Mat, y: &Mat| {
        let r = x.hstack(y).rank();
        r == x.rank() && r == y.rank()
    };
    if !same_span(&left_span, &e.left.mat) {
        return Err(AlgebraError::SpanHypothesis("⟨φ(a)b⟩ ≠ ⟨eb⟩".into()));
    }
    if !same_span(&right_span, &e.right.mat) {
        return Err(AlgebraError::SpanHypothesis("⟨bφ(a)⟩ ≠ ⟨be⟩".into()));
    }
    let id = Mat::identity(nb);
    let pl = left_span.hstack(&id.sub(&e.left.mat));
    let pr = right_span.hstack(&id.sub(&e.right.mat));
    let bs = b.space();
    let pres = |p: &Mat| LinMap::new(Space::numbered("g", p.cols()), bs.clone(), p.clone()).unwrap();
    let (pl_map, pr_map) = (pres(&pl), pres(&pr));
    let homogeneous_dim = nb * (nb - pl.rank()) + nb * (nb - pr.rank());
    let zeros = Mat::zeros(nb, nb);
    let mut images = Vec::with_capacity(ma.dim());
    for w in &ma.basis {
        // φ̄(w) φ(a) = φ(w a),  φ(a) φ̄(w) = φ(a w)
        let tl: Vec<Mat> = (0..n).map(|i| lin(&w.left.mat.col(i), true)).collect();
        let tr: Vec<Mat> = (0..n).map(|i| lin(&w.right.mat.col(i), false)).collect();
        let tl = hstack_all(tl).hstack(&zeros);
        let tr = hstack_all(tr).hstack(&zeros);
        let xl = LinMap::descend(&pl_map, &pres(&tl).retype(&pl_map.source, bs))
            .map_err(|e| AlgebraError::NoExtension(e.to_string()))?;
        let xr = LinMap::descend(&pr_map, &pres(&tr).retype(&pr_map.source, bs))
            .map_err(|e| AlgebraError::NoExtension(e.to_string()))?;
        images.push(Multiplier { left: xl.retype(bs, bs), right: xr.retype(bs, bs) });
    }
    let mut ext = Extension {
        images,
        homogeneous_dim,
        solution_dim: ma.dim() + homogeneous_dim,
        report: Report::new("multiplicative extension"),
    };
    let mut rep = Report::new("multiplicative extension");
    rep.push(Check::verdict("unit to idempotent", "φ̄(1) = e", ext.apply(&ma.unit_coords) == *e));
    let restricts = (0..n).all(|i| ext.apply(&ma.embedding.mat.col(i)) == phi[i]);
    rep.push(Check::verdict("restricts to φ", "φ̄ ∘ (A → M(A)) = φ", restricts));
    let m = ma.dim();
    let mut mult_ok = true;
    'outer: for i in 0..m {
        for j in 0..m {
            let p = ma.multiply(&exact::unit_vec(m, i), &exact::unit_vec(m, j));
            let lhs = ext.apply(&p);
            let rhs = ext.images[i].multiply(&ext.images[j])?;
            if lhs != rhs {
                mult_ok = false;
                break 'outer;
            }
        }
    }
    rep.push(Check::verdict("multiplicative", "φ̄(wv) = φ̄(w)φ̄(v)", mult_ok));
    rep.push(
        Check::verdict("unique", "solution space has no homogeneous part", homogeneous_dim == 0)
            .with_note(format!("solution space dimension {}", ext.solution_dim)),
    );
    ext.report = rep;
    Ok(ext)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: i64) -> Scalar {
        Scalar::from(x)
    }

    /// Group algebra of Z/k.
    fn cyclic(k: usize) -> Algebra {
        let sp = Space::numbered("g", k);
        let table = (0..k).map(|i| (0..k).map(|j| vec![((i + j) % k, s(1))]).collect()).collect();
        Algebra::from_table(sp, table)
    }

    /// 2x2 matrix units e_ij at index 2i+j.
    fn matrices() -> Algebra {
        let sp = Space::new(vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()]).unwrap();
        let mut table = vec![vec![Vec::new(); 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    table[2 * i + j][2 * j + k] = vec![(2 * i + k, s(1))];
                }
            }
        }
        Algebra::from_table(sp, table)
    }

    fn square_zero() -> Algebra {
        Algebra::from_table(Space::numbered("x", 1), vec![vec![Vec::new()]])
    }

    #[test]
    fn idempotency_and_nondegeneracy() {
        assert!(check_idempotent_algebra(&cyclic(2)).passed());
        assert!(!check_idempotent_algebra(&square_zero()).passed());
        assert!(check_idempotent_algebra(&matrices()).passed());
        assert!(check_nondegenerate(&cyclic(2)).passed());
        assert!(!check_nondegenerate(&square_zero()).passed());
        assert!(check_nondegenerate(&matrices()).passed());
        assert!(matrices().check_associative().passed);
    }

    #[test]
    fn multiplier_algebra_of_unital_algebras() {
        let a = cyclic(2);
        let ma = multiplier_algebra(&a).unwrap();
        assert_eq!(ma.dim(), 2);
        assert!(ma.embedding.is_bijective());
        let m = matrices();
        let mm = multiplier_algebra(&m).unwrap();
        assert_eq!(mm.dim(), 4);
        assert!(check_multiplier_algebra(&m, &mm).passed());
        let z = Algebra::from_table(Space::numbered("x", 0), vec![]);
        assert_eq!(multiplier_algebra(&z).unwrap().dim(), 0);
        assert_eq!(multiplier_algebra(&square_zero()).unwrap_err(), AlgebraError::NotIdempotent);
    }

    #[test]
    fn multiplier_products() {
        let m = matrices();
        let e11 = Multiplier::of_element(&m, &m.basis(0));
        let e12 = Multiplier::of_element(&m, &m.basis(1));
        assert_eq!(e11.multiply(&e12).unwrap(), e12);
        let one = Multiplier::identity(m.space());
        assert_eq!(one.multiply(&e12).unwrap(), e12);
        assert!(e12.multiply(&Multiplier::zero(m.space())).unwrap().is_zero());
        assert!(e12.check_compatible(&m).passed);
    }

    #[test]
    fn identity_extension() {
        let m = matrices();
        let mm = multiplier_algebra(&m).unwrap();
        let phi: Vec<Multiplier> = (0..4).map(|i| Multiplier::of_element(&m, &m.basis(i))).collect();
        let ext = extend_multiplicative_map(&m, &mm, &phi, &m, &Multiplier::identity(m.space())).unwrap();
        assert!(ext.report.passed(), "{}", ext.report);
        assert_eq!(ext.homogeneous_dim, 0);
        for (i, w) in mm.basis.iter().enumerate() {
            assert_eq!(&ext.images[i], w);
        }
    }

    #[test]
    fn zero_map_with_zero_idempotent() {
        let m = matrices();
        let mm = multiplier_algebra(&m).unwrap();
        let z = Multiplier::zero(m.space());
        let phi = vec![z.clone(); 4];
        let ext = extend_multiplicative_map(&m, &mm, &phi, &m, &z).unwrap();
        assert!(ext.images.iter().all(Multiplier::is_zero));
        let err = extend_multiplicative_map(&m, &mm, &phi, &m, &Multiplier::identity(m.space()));
        assert!(matches!(err, Err(AlgebraError::SpanHypothesis(_))));
    }

    #[test]
    fn tensor_of_group_algebras() {
        let t = tensor_algebra(&cyclic(2), &cyclic(2));
        assert_eq!(t.dim(), 4);
        assert!(check_idempotent_algebra(&t).passed());
        assert!(check_nondegenerate(&t).passed());
        let one = Multiplier::identity(cyclic(2).space());
        assert_eq!(one.tensor(&one), Multiplier::identity(t.space()));
    }
}
