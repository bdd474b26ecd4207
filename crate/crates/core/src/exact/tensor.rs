use std::collections::HashMap;
use std::sync::Arc;

use super::{ExactError, LinMap, Mat, SVec, Scalar, Space};

/// `P ⊗ Q`, labels `(p,q)` in row-major order of `P`.
pub fn tensor_space(p: &Space, q: &Space) -> Space {
    let mut parts: Vec<Arc<Vec<String>>> = p.parts().to_vec();
    parts.extend(q.parts().iter().cloned());
    Space::from_parts(parts)
}

/// Tensor power of a space.
pub fn tensor_power(p: &Space, k: usize) -> Space {
    Space::from_parts(vec![Arc::new(p.labels().to_vec()); k])
}

pub(crate) fn unflatten(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        idx[k] = flat % dims[k];
        flat /= dims[k];
    }
    idx
}

pub(crate) fn flatten(idx: &[usize], dims: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (i, d)| acc * d + i)
}

/// Kronecker product.
pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = Mat::zeros(ar * br, ac * bc);
    let bnz: Vec<(usize, usize, &Scalar)> = (0..br)
        .flat_map(|i| (0..bc).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, b.get(i, j)))
        .filter(|t| !t.2.is_zero())
        .collect();
    for i in 0..ar {
        for j in 0..ac {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for (k, l, y) in &bnz {
                out.set(i * br + k, j * bc + l, x.mul(y));
            }
        }
    }
    out
}

/// A linear map between tensor products, kept as sparse columns, ready to be
/// applied on chosen legs of a longer tensor.
#[derive(Clone, Debug)]
pub struct LegMap {
    src: Vec<usize>,
    tgt: Vec<usize>,
    cols: Vec<SVec>,
}

impl LegMap {
    pub fn new(f: &LinMap) -> LegMap {
        LegMap { src: f.source.factors(), tgt: f.target.factors(), cols: f.mat.cols_sparse() }
    }

    pub fn from_mat(m: &Mat, src: Vec<usize>, tgt: Vec<usize>) -> LegMap {
        assert_eq!(m.cols(), src.iter().product::<usize>());
        assert_eq!(m.rows(), tgt.iter().product::<usize>());
        LegMap { src, tgt, cols: m.cols_sparse() }
    }

    pub fn from_cols(cols: Vec<SVec>, src: Vec<usize>, tgt: Vec<usize>) -> LegMap {
        assert_eq!(cols.len(), src.iter().product::<usize>());
        LegMap { src, tgt, cols }
    }

    pub fn legs(&self) -> usize {
        self.src.len()
    }

    pub fn out_dims(&self, dims: &[usize], legs: &[usize]) -> Vec<usize> {
        let mut out = dims.to_vec();
        for (k, &l) in legs.iter().enumerate() {
            assert_eq!(dims[l], self.src[k], "leg {l} has dim {} not {}", dims[l], self.src[k]);
            out[l] = self.tgt[k];
        }
        out
    }

    /// Applies the map with its k-th source factor on leg `legs[k]` of `v`,
    /// the identity elsewhere.
    pub fn apply(&self, v: &SVec, dims: &[usize], legs: &[usize]) -> SVec {
        assert_eq!(legs.len(), self.src.len(), "leg count");
        let out = self.out_dims(dims, legs);
        let mut acc: HashMap<usize, Scalar> = HashMap::new();
        let sub: Vec<usize> = legs.iter().map(|&l| out[l]).collect();
        for (flat, x) in v {
            let mut idx = unflatten(*flat, dims);
            let s = flatten(&legs.iter().map(|&l| idx[l]).collect::<Vec<_>>(), &self.src);
            for (t, y) in &self.cols[s] {
                let tidx = unflatten(*t, &sub);
                for (k, &l) in legs.iter().enumerate() {
                    idx[l] = tidx[k];
                }
                let e = acc.entry(flatten(&idx, &out)).or_insert_with(Scalar::zero);
                *e = e.add(&x.mul(y));
            }
        }
        let mut r: SVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        r.sort_by_key(|e| e.0);
        r
    }
}

/// Permutes the legs of a sparse tensor: leg `k` of the input becomes leg
/// `perm[k]` of the output.
pub fn permute_legs(v: &SVec, dims: &[usize], perm: &[usize]) -> SVec {
    let mut out_dims = vec![0; dims.len()];
    for (k, &p) in perm.iter().enumerate() {
        out_dims[p] = dims[k];
    }
    let mut r: SVec = v
        .iter()
        .map(|(flat, x)| {
            let idx = unflatten(*flat, dims);
            let mut o = vec![0; dims.len()];
            for (k, &p) in perm.iter().enumerate() {
                o[p] = idx[k];
            }
            (flatten(&o, &out_dims), x.clone())
        })
        .collect();
    r.sort_by_key(|e| e.0);
    r
}

/// Leg-numbered version of `f`. The pattern lists, for each tensor factor of
/// `f`, its position (1-based) in the result; positions not named are filled
/// by the spaces in `fill`, in order, carried by identities. So `21` on
/// `f: P⊗Q → P'⊗Q'` gives `Q⊗P → Q'⊗P'`, and `13` with `fill = [R]` gives
/// `P⊗R⊗Q → P'⊗R⊗Q'`.
pub fn leg_permute(f: &LinMap, pattern: &str, fill: &[Space]) -> Result<LinMap, ExactError> {
    let bad = || ExactError::BadPattern(pattern.to_string());
    let pos: Vec<usize> = pattern
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize).filter(|d| *d >= 1).ok_or_else(bad))
        .collect::<Result<_, _>>()?;
    let m = f.source.num_parts();
    if pos.len() != m || f.target.num_parts() != m {
        return Err(bad());
    }
    let n = m + fill.len();
    let mut seen = vec![false; n];
    for &p in &pos {
        if p > n || seen[p - 1] {
            return Err(bad());
        }
        seen[p - 1] = true;
    }
    let legs: Vec<usize> = pos.iter().map(|p| p - 1).collect();
    let mut src_parts = vec![None; n];
    let mut tgt_parts = vec![None; n];
    for (k, &l) in legs.iter().enumerate() {
        src_parts[l] = Some(f.source.parts()[k].clone());
        tgt_parts[l] = Some(f.target.parts()[k].clone());
    }
    let mut fills = fill.iter();
    for l in 0..n {
        if src_parts[l].is_none() {
            let s = fills.next().ok_or_else(bad)?;
            let lab = Arc::new(s.labels().to_vec());
            src_parts[l] = Some(lab.clone());
            tgt_parts[l] = Some(lab);
        }
    }
    let source = Space::from_parts(src_parts.into_iter().map(Option::unwrap).collect());
    let target = Space::from_parts(tgt_parts.into_iter().map(Option::unwrap).collect());
    let lm = LegMap::new(f);
    let dims = source.factors();
    let cols: Vec<SVec> = (0..source.dim()).map(|j| lm.apply(&vec![(j, Scalar::one())], &dims, &legs)).collect();
    LinMap::new(source, target.clone(), Mat::from_sparse_cols(target.dim(), &cols))
}

/// The flip `P⊗Q → Q⊗P`.
pub fn flip(p: &Space, q: &Space) -> LinMap {
    let s = tensor_space(p, q);
    let t = tensor_space(q, p);
    let mut m = Mat::zeros(t.dim(), s.dim());
    for i in 0..p.dim() {
        for j in 0..q.dim() {
            m.set(j * p.dim() + i, i * q.dim() + j, Scalar::one());
        }
    }
    LinMap::raw(&s, &t, m)
}

/// `x ⊗ y` for sparse vectors, `dim_y` the dimension of the second factor.
pub fn kron_vec(x: &SVec, y: &SVec, dim_y: usize) -> SVec {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for (i, a) in x {
        for (j, b) in y {
            out.push((i * dim_y + j, a.mul(b)));
        }
    }
    out
}

/// Swaps the legs of `v ∈ P⊗Q`.
pub fn flip_vec(v: &SVec, p: usize, q: usize) -> SVec {
    permute_legs(v, &[p, q], &[1, 0])
}

/// `(f⊗g)v` for `v ∈ P⊗Q`; `None` stands for the identity.
pub fn map_pair(v: &SVec, p: usize, q: usize, f: Option<&Mat>, g: Option<&Mat>) -> SVec {
    let _ = p;
    let q2 = g.map_or(q, Mat::rows);
    let mut acc: HashMap<usize, Scalar> = HashMap::new();
    for (k, x) in v {
        let (i, j) = (k / q, k % q);
        let left = match f {
            Some(m) => m.col_sparse(i),
            None => vec![(i, Scalar::one())],
        };
        let right = match g {
            Some(m) => m.col_sparse(j),
            None => vec![(j, Scalar::one())],
        };
        for (a, y) in &left {
            for (b, z) in &right {
                let e = acc.entry(a * q2 + b).or_insert_with(Scalar::zero);
                *e = e.add(&x.mul(&y.mul(z)));
            }
        }
    }
    let mut r: SVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    r.sort_by_key(|e| e.0);
    r
}

/// `(P⊗f⊗Q)v` where the middle block of `v` has dimension `mid` and the
/// trailing block dimension `post`.
pub fn apply_block(v: &SVec, mid: usize, post: usize, f: &Mat) -> SVec {
    assert_eq!(f.cols(), mid, "block dimension");
    let rows = f.rows();
    let mut acc: HashMap<usize, Scalar> = HashMap::new();
    for (k, x) in v {
        let (p, rest) = (k / (mid * post), k % (mid * post));
        let (i, q) = (rest / post, rest % post);
        for (j, y) in f.col_sparse(i) {
            let e = acc.entry((p * rows + j) * post + q).or_insert_with(Scalar::zero);
            *e = e.add(&x.mul(&y));
        }
    }
    let mut r: SVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    r.sort_by_key(|e| e.0);
    r
}

/// `(P⊗ω)v` for `v ∈ P⊗Q` and a functional `ω` on `Q`.
pub fn contract_second(v: &SVec, q: usize, w: &[Scalar]) -> SVec {
    let mut acc: std::collections::BTreeMap<usize, Scalar> = Default::default();
    for (k, x) in v {
        let c = &w[k % q];
        if !c.is_zero() {
            let e = acc.entry(k / q).or_insert_with(Scalar::zero);
            *e = e.add(&x.mul(c));
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// `(ω⊗Q)v` for `v ∈ P⊗Q` and a functional `ω` on `P`.
pub fn contract_first(v: &SVec, q: usize, w: &[Scalar]) -> SVec {
    let mut acc: std::collections::BTreeMap<usize, Scalar> = Default::default();
    for (k, x) in v {
        let c = &w[k / q];
        if !c.is_zero() {
            let e = acc.entry(k % q).or_insert_with(Scalar::zero);
            *e = e.add(&x.mul(c));
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}
