use std::collections::BTreeMap;

use super::{SVec, Scalar};

/// Reduced row echelon form of a growing set of sparse rows.
///
/// Rows are stored normalized (pivot entry 1) and fully reduced against each
/// other, so the result is the unique RREF of the span regardless of the
/// insertion order. Pivots are leading entries, i.e. ascending columns.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    width: usize,
    rows: BTreeMap<usize, SVec>,
}

impl Echelon {
    pub fn new(width: usize) -> Echelon {
        Echelon { width, rows: BTreeMap::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    pub fn row(&self, pivot: usize) -> Option<&SVec> {
        self.rows.get(&pivot)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SVec)> {
        self.rows.iter().map(|(p, r)| (*p, r))
    }

    /// Reduces `v` against the stored rows; the result has zeros at pivots.
    pub fn reduce(&self, v: &SVec) -> SVec {
        let hits: Vec<(usize, Scalar)> =
            v.iter().filter(|(c, _)| self.rows.contains_key(c)).map(|(c, x)| (*c, x.clone())).collect();
        if hits.is_empty() {
            return v.clone();
        }
        let mut acc: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        for (c, x) in hits {
            for (j, y) in &self.rows[&c] {
                let e = acc.entry(*j).or_insert_with(Scalar::zero);
                *e = e.sub(&x.mul(y));
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts a row; returns the new pivot if the row was independent.
    pub fn insert(&mut self, v: &SVec) -> Option<usize> {
        let r = self.reduce(v);
        let (p, lead) = r.first().cloned()?;
        let li = lead.inv().expect("nonzero lead");
        let r: SVec = r.into_iter().map(|(j, x)| (j, x.mul(&li))).collect();
        for row in self.rows.values_mut() {
            if let Ok(k) = row.binary_search_by_key(&p, |e| e.0) {
                let f = row[k].1.clone();
                *row = axpy(row, &f.neg(), &r);
            }
        }
        self.rows.insert(p, r);
        Some(p)
    }

    pub fn extend<'a>(&mut self, vs: impl IntoIterator<Item = &'a SVec>) {
        for v in vs {
            self.insert(v);
        }
    }
}

/// `x + a·y` for sorted sparse vectors.
pub fn axpy(x: &SVec, a: &Scalar, y: &SVec) -> SVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            let v = a.mul(&y[j].1);
            if !v.is_zero() {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = x[i].1.add(&a.mul(&y[j].1));
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[(usize, i64)]) -> SVec {
        v.iter().map(|(i, x)| (*i, Scalar::from(*x))).collect()
    }

    #[test]
    fn rref_is_order_independent() {
        let rows = [sv(&[(0, 1), (1, 2)]), sv(&[(1, 1), (2, 1)]), sv(&[(0, 1), (1, 3), (2, 1)])];
        let mut a = Echelon::new(3);
        a.extend(rows.iter());
        let mut b = Echelon::new(3);
        b.extend(rows.iter().rev());
        assert_eq!(a.rank(), 2);
        assert_eq!(a.pivots(), b.pivots());
        for p in a.pivots() {
            assert_eq!(a.row(p), b.row(p));
        }
        assert_eq!(a.row(0).unwrap(), &sv(&[(0, 1), (2, -2)]));
    }

    #[test]
    fn reduce_clears_pivots() {
        let mut e = Echelon::new(3);
        e.insert(&sv(&[(1, 2), (2, 4)]));
        assert_eq!(e.reduce(&sv(&[(1, 1), (2, 1)])), sv(&[(2, -1)]));
        assert!(e.contains(&sv(&[(1, -1), (2, -2)])));
    }
}
