//! Exact linear algebra over ℚ and prime fields.

mod echelon;
mod scalar;
mod tensor;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use echelon::{axpy, Echelon};
pub use scalar::{Field, Scalar};
pub use tensor::{
    apply_block, contract_first, contract_second, flip, flip_vec, kron, kron_vec, leg_permute, map_pair, permute_legs,
    tensor_power, tensor_space, LegMap,
};

/// Sparse vector: `(index, value)` pairs, sorted, no explicit zeros.
pub type SVec = Vec<(usize, Scalar)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("malformed scalar literal `{0}`")]
    BadLiteral(String),
    #[error("{0} is not a prime below 2^31")]
    BadModulus(u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("map is not idempotent")]
    NotIdempotent,
    #[error("linear system is inconsistent: {0}")]
    Inconsistent(String),
    #[error("presentation does not span the source: {0}")]
    NotSpanning(String),
    #[error("leg pattern `{0}` does not fit the factorization")]
    BadPattern(String),
}

/// A finite-dimensional space with labeled basis. Tensor products remember
/// their factors (`parts`); a plain space is its own single part.
#[derive(Clone, PartialEq, Eq)]
pub struct Space {
    labels: Arc<Vec<String>>,
    parts: Arc<Vec<Arc<Vec<String>>>>,
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Space(dim {}, factors {:?})", self.dim(), self.factors())
    }
}

impl Space {
    pub fn new(labels: Vec<String>) -> Result<Space, ExactError> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(ExactError::Shape(format!("duplicate basis label `{l}`")));
            }
        }
        let labels = Arc::new(labels);
        Ok(Space { parts: Arc::new(vec![labels.clone()]), labels })
    }

    /// Space with labels `{prefix}0 .. {prefix}{dim-1}`.
    pub fn numbered(prefix: &str, dim: usize) -> Space {
        Space::new((0..dim).map(|i| format!("{prefix}{i}")).collect()).unwrap()
    }

    pub(crate) fn from_parts(parts: Vec<Arc<Vec<String>>>) -> Space {
        if parts.len() == 1 {
            return Space { labels: parts[0].clone(), parts: Arc::new(parts) };
        }
        let dims: Vec<usize> = parts.iter().map(|p| p.len()).collect();
        let total: usize = dims.iter().product();
        let mut labels = Vec::with_capacity(total);
        for flat in 0..total {
            let idx = tensor::unflatten(flat, &dims);
            let names: Vec<&str> = idx.iter().zip(&parts).map(|(i, p)| p[*i].as_str()).collect();
            labels.push(format!("({})", names.join(",")));
        }
        Space { labels: Arc::new(labels), parts: Arc::new(parts) }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Dimensions of the tensor factors.
    pub fn factors(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.len()).collect()
    }

    /// The `k`-th tensor factor as a plain space.
    pub fn part(&self, k: usize) -> Space {
        Space { labels: self.parts[k].clone(), parts: Arc::new(vec![self.parts[k].clone()]) }
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub(crate) fn parts(&self) -> &[Arc<Vec<String>>] {
        &self.parts
    }

    /// Forgets the tensor factorization.
    pub fn flat(&self) -> Space {
        Space { labels: self.labels.clone(), parts: Arc::new(vec![self.labels.clone()]) }
    }

    /// The span of the basis vectors at `idx`, keeping their labels.
    pub fn select(&self, idx: &[usize]) -> Space {
        let labels = Arc::new(idx.iter().map(|&i| self.labels[i].clone()).collect::<Vec<_>>());
        Space { parts: Arc::new(vec![labels.clone()]), labels }
    }
}

/// Dense row-major matrix of scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Matrix whose columns are the given dense vectors of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<Scalar>]) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_sparse_cols(rows: usize, cols: &[SVec]) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_sparse(&self, i: usize) -> SVec {
        sparse(self.row(i))
    }

    pub fn col_sparse(&self, j: usize) -> SVec {
        (0..self.rows).filter(|&i| !self.get(i, j).is_zero()).map(|i| (i, self.get(i, j).clone())).collect()
    }

    pub fn cols_sparse(&self) -> Vec<SVec> {
        let mut out = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for (j, x) in self.row(i).iter().enumerate() {
                if !x.is_zero() {
                    out[j].push((i, x.clone()));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Mat::zeros(self.rows, o.cols);
        let ocols = o.cols_nonzero_rows();
        for i in 0..self.rows {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in &ocols[k] {
                    let e = &mut out.data[i * o.cols + j];
                    *e = e.add(&a.mul(b));
                }
            }
        }
        out
    }

    fn cols_nonzero_rows(&self) -> Vec<SVec> {
        (0..self.rows).map(|k| self.row_sparse(k)).collect()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn apply_sparse(&self, v: &SVec) -> SVec {
        let mut acc = vec![Scalar::zero(); self.rows];
        for (j, x) in v {
            for (i, slot) in acc.iter_mut().enumerate() {
                let a = self.get(i, *j);
                if !a.is_zero() {
                    *slot = slot.add(&a.mul(x));
                }
            }
        }
        sparse(&acc)
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }

    /// Stacks `self` over `o`.
    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows);
        Mat::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        })
    }

    /// Rows selected by index.
    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn row_echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(&self.row_sparse(i));
        }
        e
    }

    pub fn col_echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.rows);
        for c in self.cols_sparse() {
            e.insert(&c);
        }
        e
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols { self.col_echelon().rank() } else { self.row_echelon().rank() }
            .min(self.rows.min(self.cols))
    }

    /// Columns spanning the null space, one per free column in ascending order.
    pub fn kernel_basis(&self) -> Mat {
        let e = self.row_echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.is_pivot(*c)).collect();
        let mut k = Mat::zeros(self.cols, free.len());
        for (t, &f) in free.iter().enumerate() {
            k.set(f, t, Scalar::one());
            for (p, row) in e.rows() {
                if let Ok(ix) = row.binary_search_by_key(&f, |x| x.0) {
                    k.set(p, t, row[ix].1.neg());
                }
            }
        }
        k
    }

    /// Solves `self · Y = B`, with free variables set to zero.
    pub fn solve_right(&self, b: &Mat) -> Result<Mat, ExactError> {
        assert_eq!(self.rows, b.rows, "solve shape");
        let w = self.cols + b.cols;
        let mut e = Echelon::new(w);
        for i in 0..self.rows {
            let mut r = self.row_sparse(i);
            r.extend(b.row_sparse(i).into_iter().map(|(j, x)| (j + self.cols, x)));
            e.insert(&r);
        }
        let mut y = Mat::zeros(self.cols, b.cols);
        for (p, row) in e.rows() {
            if p >= self.cols {
                return Err(ExactError::Inconsistent(format!(
                    "right-hand side column {} is outside the span",
                    p - self.cols
                )));
            }
            for (j, x) in row {
                if *j >= self.cols {
                    y.set(p, j - self.cols, x.clone());
                }
            }
        }
        Ok(y)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols || self.rank() != self.rows {
            return None;
        }
        self.solve_right(&Mat::identity(self.rows)).ok()
    }

    pub fn kron(&self, o: &Mat) -> Mat {
        tensor::kron(self, o)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }
}

pub fn sparse(v: &[Scalar]) -> SVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense(v: &SVec, n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn vec_scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x.mul(s)).collect()
}

/// A linear map between labeled spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    pub source: Space,
    pub target: Space,
    pub mat: Mat,
}

impl LinMap {
    pub fn new(source: Space, target: Space, mat: Mat) -> Result<LinMap, ExactError> {
        if mat.rows() != target.dim() || mat.cols() != source.dim() {
            return Err(ExactError::Shape(format!(
                "{}x{} matrix for a map from dim {} to dim {}",
                mat.rows(),
                mat.cols(),
                source.dim(),
                target.dim()
            )));
        }
        Ok(LinMap { source, target, mat })
    }

    pub(crate) fn raw(source: &Space, target: &Space, mat: Mat) -> LinMap {
        LinMap::new(source.clone(), target.clone(), mat).expect("internal map shape")
    }

    pub fn identity(s: &Space) -> LinMap {
        LinMap::raw(s, s, Mat::identity(s.dim()))
    }

    pub fn zero(source: &Space, target: &Space) -> LinMap {
        LinMap::raw(source, target, Mat::zeros(target.dim(), source.dim()))
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &LinMap) -> LinMap {
        assert_eq!(g.target.dim(), self.source.dim(), "composition shape");
        LinMap::raw(&g.source, &self.target, self.mat.mul(&g.mat))
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.mat.apply(v)
    }

    pub fn tensor(&self, g: &LinMap) -> LinMap {
        LinMap::raw(
            &tensor_space(&self.source, &g.source),
            &tensor_space(&self.target, &g.target),
            self.mat.kron(&g.mat),
        )
    }

    pub fn is_idempotent(&self) -> bool {
        self.source.dim() == self.target.dim() && self.mat.mul(&self.mat) == self.mat
    }

    pub fn rank(&self) -> usize {
        self.mat.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<LinMap> {
        Some(LinMap::raw(&self.target, &self.source, self.mat.inverse()?))
    }

    /// Same matrix between relabeled spaces of equal dimensions.
    pub fn retype(&self, source: &Space, target: &Space) -> LinMap {
        LinMap::raw(source, target, self.mat.clone())
    }

    /// The unique `X` with `X ∘ presentation = value`, where `presentation`
    /// is required to be surjective. Fails when `value` does not vanish on the
    /// kernel of `presentation`.
    pub fn descend(presentation: &LinMap, value: &LinMap) -> Result<LinMap, ExactError> {
        assert_eq!(presentation.source.dim(), value.source.dim(), "descend shape");
        let pt = presentation.mat.transpose();
        let e = pt.row_echelon();
        if e.rank() != presentation.target.dim() {
            return Err(ExactError::NotSpanning(format!("rank {} < dim {}", e.rank(), presentation.target.dim())));
        }
        let y = pt.solve_right(&value.mat.transpose())?;
        Ok(LinMap::raw(&presentation.target, &value.target, y.transpose()))
    }
}

/// Kernel of `f` with its inclusion into the source.
pub fn kernel(f: &LinMap) -> (Space, LinMap) {
    let k = f.mat.kernel_basis();
    let s = Space::numbered("k", k.cols());
    let inc = LinMap::raw(&s, &f.source, k);
    (s, inc)
}

/// Image and cokernel of `f`.
#[derive(Clone, Debug)]
pub struct ImageQuotient {
    pub image: Space,
    pub inclusion: LinMap,
    pub cokernel: Space,
    pub projection: LinMap,
}

pub fn image_and_quotient(f: &LinMap) -> ImageQuotient {
    let e = f.mat.col_echelon();
    let n = f.target.dim();
    let pivots = e.pivots();
    let image = Space::numbered("im", pivots.len());
    let cols: Vec<SVec> = e.rows().map(|(_, r)| r.clone()).collect();
    let inclusion = LinMap::raw(&image, &f.target, Mat::from_sparse_cols(n, &cols));
    let rest: Vec<usize> = (0..n).filter(|c| !e.is_pivot(*c)).collect();
    let cokernel = f.target.select(&rest);
    let projection = quotient_projection(&e, &f.target, &cokernel, &rest);
    ImageQuotient { image, inclusion, cokernel, projection }
}

/// Projection of `target` onto the complement coordinates `rest` of the row
/// space held in `e` (the coordinates of the reduced vector at `rest`).
pub(crate) fn quotient_projection(e: &Echelon, target: &Space, q: &Space, rest: &[usize]) -> LinMap {
    let n = target.dim();
    let pos: std::collections::HashMap<usize, usize> = rest.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut m = Mat::zeros(rest.len(), n);
    for c in 0..n {
        if let Some(&i) = pos.get(&c) {
            m.set(i, c, Scalar::one());
        } else if let Some(row) = e.row(c) {
            for (j, x) in row {
                if let Some(&i) = pos.get(j) {
                    m.set(i, c, x.neg());
                }
            }
        }
    }
    LinMap::raw(target, q, m)
}

/// Factorization of an idempotent `e = i ∘ p` with `p ∘ i = id`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub image: Space,
    pub p: LinMap,
    pub i: LinMap,
}

pub fn split_idempotent(e: &LinMap) -> Result<Splitting, ExactError> {
    if !e.is_idempotent() {
        return Err(ExactError::NotIdempotent);
    }
    let ech = e.mat.col_echelon();
    let pivots = ech.pivots();
    let image = e.source.select(&pivots);
    let cols: Vec<SVec> = ech.rows().map(|(_, r)| r.clone()).collect();
    let i = LinMap::raw(&image, &e.target, Mat::from_sparse_cols(e.target.dim(), &cols));
    let p = LinMap::raw(&e.source, &image, e.mat.select_rows(&pivots));
    debug_assert_eq!(i.compose(&p).mat, e.mat);
    debug_assert_eq!(p.compose(&i).mat, Mat::identity(pivots.len()));
    Ok(Splitting { image, p, i })
}

/// Null space of a sparse row system, one basis vector per free column.
#[derive(Clone, Debug)]
pub struct SparseKernel {
    pub free: Vec<usize>,
    pub basis: Vec<SVec>,
}

pub fn sparse_kernel(width: usize, rows: impl IntoIterator<Item = SVec>) -> SparseKernel {
    let mut e = Echelon::new(width);
    for r in rows {
        e.insert(&r);
    }
    kernel_from_echelon(&e)
}

pub fn kernel_from_echelon(e: &Echelon) -> SparseKernel {
    let width = e.width();
    let free: Vec<usize> = (0..width).filter(|c| !e.is_pivot(*c)).collect();
    let mut basis: Vec<SVec> = free.iter().map(|f| vec![(*f, Scalar::one())]).collect();
    let pos: std::collections::HashMap<usize, usize> = free.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    for (p, row) in e.rows() {
        for (j, x) in row {
            if let Some(&t) = pos.get(j) {
                basis[t].push((p, x.neg()));
            }
        }
    }
    for b in &mut basis {
        b.sort_by_key(|e| e.0);
    }
    SparseKernel { free, basis }
}

/// Solves `X p = v` for every presentation pair `(p, v)`, with `p` in a space
/// of dimension `dim`. Returns the images of the basis vectors under `X`.
/// Fails when the `p` do not span, or when some relation among the `p` is not
/// respected by the `v`.
pub fn descend_pairs(
    dim: usize,
    out_dim: usize,
    pairs: impl IntoIterator<Item = (SVec, SVec)>,
) -> Result<Vec<SVec>, ExactError> {
    let mut e = Echelon::new(dim + out_dim);
    for (p, v) in pairs {
        let mut row = p;
        row.extend(v.into_iter().map(|(j, x)| (dim + j, x)));
        if let Some(piv) = e.insert(&row) {
            if piv >= dim {
                return Err(ExactError::Inconsistent(format!(
                    "presentation relation maps to a nonzero value at coordinate {}",
                    piv - dim
                )));
            }
        }
    }
    let rank = e.pivots().iter().filter(|p| **p < dim).count();
    if rank < dim {
        return Err(ExactError::NotSpanning(format!("rank {rank} < dim {dim}")));
    }
    Ok((0..dim)
        .map(|i| {
            e.row(i).expect("pivot").iter().filter(|(j, _)| *j >= dim).map(|(j, x)| (j - dim, x.clone())).collect()
        })
        .collect())
}

/// A subspace of a coordinate space, with its RREF basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub space: Space,
    pub basis: Vec<SVec>,
    ambient: usize,
    ech: Echelon,
}

impl Subspace {
    /// Span of `vecs` inside `ambient`; basis vectors with a single unit
    /// entry inherit the ambient label.
    pub fn span<'a>(ambient: &Space, vecs: impl IntoIterator<Item = &'a SVec>) -> Subspace {
        let mut ech = Echelon::new(ambient.dim());
        ech.extend(vecs);
        let basis: Vec<SVec> = ech.rows().map(|(_, r)| r.clone()).collect();
        let labels = basis
            .iter()
            .map(|b| {
                if b.len() == 1 && b[0].1.is_one() {
                    ambient.label(b[0].0).to_string()
                } else {
                    format!("[{}]", crate::report::show_vec(ambient, b))
                }
            })
            .collect();
        Subspace { space: Space::new(labels).expect("distinct rows"), basis, ambient: ambient.dim(), ech }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.ech.contains(v)
    }

    /// Coordinates in the RREF basis, `None` outside the subspace.
    pub fn coords(&self, v: &SVec) -> Option<SVec> {
        if !self.ech.contains(v) {
            return None;
        }
        let piv = self.ech.pivots();
        Some(
            piv.iter()
                .enumerate()
                .filter_map(|(k, p)| v.binary_search_by_key(p, |e| e.0).ok().map(|i| (k, v[i].1.clone())))
                .collect(),
        )
    }

    pub fn element(&self, c: &SVec) -> SVec {
        let mut acc = Vec::new();
        for (k, x) in c {
            acc = axpy(&acc, x, &self.basis[*k]);
        }
        acc
    }

    pub fn inclusion(&self, ambient: &Space) -> LinMap {
        LinMap::raw(&self.space, ambient, Mat::from_sparse_cols(self.ambient, &self.basis))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.basis.iter().all(|b| other.contains(b))
    }
}

/// Coordinates of `v` in the RREF basis of a subspace whose echelon is `e`;
/// `None` when `v` is outside the subspace.
pub fn coords_in(e: &Echelon, v: &[Scalar]) -> Option<Vec<Scalar>> {
    let s = sparse(v);
    if !e.contains(&s) {
        return None;
    }
    Some(e.pivots().iter().map(|p| v[*p].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, v: &[i64]) -> Mat {
        Mat::from_fn(rows, cols, |i, j| Scalar::from(v[i * cols + j]))
    }

    #[test]
    fn descend_pairs_detects_inconsistency() {
        let one = Scalar::one();
        // p: e0, e1, e0+e1 ; v: 1, 2, 3 is consistent, 1, 2, 4 is not
        let ps = vec![vec![(0, one.clone())], vec![(1, one.clone())], vec![(0, one.clone()), (1, one.clone())]];
        let ok: Vec<(SVec, SVec)> = ps.iter().cloned().zip([1, 2, 3].map(|x| vec![(0, Scalar::from(x))])).collect();
        let x = descend_pairs(2, 1, ok).unwrap();
        assert_eq!(x[1], vec![(0, Scalar::from(2))]);
        let bad: Vec<(SVec, SVec)> = ps.iter().cloned().zip([1, 2, 4].map(|x| vec![(0, Scalar::from(x))])).collect();
        assert!(matches!(descend_pairs(2, 1, bad), Err(ExactError::Inconsistent(_))));
        let short = vec![(vec![(0, one.clone())], vec![])];
        assert!(matches!(descend_pairs(2, 1, short), Err(ExactError::NotSpanning(_))));
    }

    #[test]
    fn subspace_coordinates() {
        let s = Space::numbered("e", 3);
        let v: SVec = vec![(0, Scalar::one()), (2, Scalar::one())];
        let w: SVec = vec![(1, Scalar::from(2))];
        let sub = Subspace::span(&s, [&v, &w]);
        assert_eq!(sub.dim(), 2);
        assert_eq!(sub.space.label(1), "e1");
        let u = axpy(&v, &Scalar::from(3), &w);
        let c = sub.coords(&u).unwrap();
        assert_eq!(sub.element(&c), u);
        assert!(sub.coords(&vec![(2, Scalar::one())]).is_none());
    }

    #[test]
    fn kernel_of_zero_identity_and_rank_one() {
        let z = LinMap::zero(&Space::numbered("e", 3), &Space::numbered("e", 3));
        assert_eq!(kernel(&z).0.dim(), 3);
        assert_eq!(kernel(&LinMap::identity(&Space::numbered("e", 3))).0.dim(), 0);
        let s = Space::numbered("e", 2);
        let f = LinMap::new(s.clone(), s.clone(), m(2, 2, &[1, 2, 2, 4])).unwrap();
        let (k, inc) = kernel(&f);
        assert_eq!(k.dim(), 1);
        assert!(f.compose(&inc).mat.is_zero());
        assert_eq!(inc.mat.col(0), vec![Scalar::from(-2), Scalar::one()]);
    }

    #[test]
    fn image_and_cokernel_dimensions() {
        let s4 = Space::numbered("e", 4);
        let s3 = Space::numbered("f", 3);
        let f = LinMap::new(s4, s3, m(3, 4, &[1, 0, 1, 0, 0, 1, 1, 0, 1, 1, 2, 0])).unwrap();
        let iq = image_and_quotient(&f);
        assert_eq!(iq.image.dim(), 2);
        assert_eq!(iq.cokernel.dim(), 1);
        assert!(iq.projection.compose(&f).mat.is_zero());
        let id = LinMap::identity(&Space::numbered("e", 3));
        let iq = image_and_quotient(&id);
        assert_eq!((iq.image.dim(), iq.cokernel.dim()), (3, 0));
    }

    #[test]
    fn split_projection() {
        let s = Space::numbered("e", 2);
        let e = LinMap::new(s.clone(), s.clone(), m(2, 2, &[1, 0, 0, 0])).unwrap();
        let sp = split_idempotent(&e).unwrap();
        assert_eq!(sp.image.dim(), 1);
        assert_eq!(sp.image.label(0), "e0");
        let bad = LinMap::new(s.clone(), s, m(2, 2, &[2, 0, 0, 0])).unwrap();
        assert_eq!(split_idempotent(&bad).unwrap_err(), ExactError::NotIdempotent);
    }

    #[test]
    fn descend_detects_inconsistency() {
        let g = Space::numbered("g", 2);
        let s = Space::numbered("s", 1);
        let p = LinMap::new(g.clone(), s.clone(), m(1, 2, &[1, 1])).unwrap();
        let good = LinMap::new(g.clone(), s.clone(), m(1, 2, &[3, 3])).unwrap();
        assert_eq!(LinMap::descend(&p, &good).unwrap().mat, m(1, 1, &[3]));
        let bad = LinMap::new(g, s, m(1, 2, &[1, 2])).unwrap();
        assert!(matches!(LinMap::descend(&p, &bad), Err(ExactError::Inconsistent(_))));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(3, 3, &[2, 1, 0, 0, 1, 0, 1, 0, 1]);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai), Mat::identity(3));
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }
}
