use super::field::Field;

/// A sparse matrix over a field, stored row-major with sorted column
/// indices. Rows index the target basis, columns the source basis, acting
/// on column vectors. No zero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(u32, F)>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::zero(n, n);
        for i in 0..n {
            m.data[i].push((i as u32, F::one()));
        }
        m
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F)>,
    ) -> Self {
        let mut m = SparseMatrix::zero(rows, cols);
        for (r, c, v) in triplets {
            m.add_entry(r, c, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_entries(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        debug_assert!(r < self.rows && c < self.cols);
        match self.data[r].binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        assert!(r < self.rows && c < self.cols);
        match self.data[r].binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(k) => {
                if v.is_zero() {
                    self.data[r].remove(k);
                } else {
                    self.data[r][k].1 = v;
                }
            }
            Err(k) => {
                if !v.is_zero() {
                    self.data[r].insert(k, (c as u32, v));
                }
            }
        }
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: F) {
        if v.is_zero() {
            return;
        }
        assert!(r < self.rows && c < self.cols, "entry out of range");
        match self.data[r].binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(k) => {
                let s = self.data[r][k].1.add(&v);
                if s.is_zero() {
                    self.data[r].remove(k);
                } else {
                    self.data[r][k].1 = s;
                }
            }
            Err(k) => self.data[r].insert(k, (c as u32, v)),
        }
    }

    pub fn row(&self, r: usize) -> &[(u32, F)] {
        &self.data[r]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c as usize, v)))
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = SparseMatrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            if self.data[r].is_empty() {
                continue;
            }
            let mut acc: std::collections::BTreeMap<u32, F> = std::collections::BTreeMap::new();
            for (k, a) in &self.data[r] {
                for (c, b) in &rhs.data[*k as usize] {
                    let t = a.mul(b);
                    if t.is_zero() {
                        continue;
                    }
                    let e = acc.entry(*c).or_insert_with(F::zero);
                    *e = e.add(&t);
                }
            }
            out.data[r] = acc
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
        out
    }

    /// Apply to a sparse column vector given as (index, coeff) pairs.
    pub fn apply(&self, v: &[(u32, F)]) -> Vec<(u32, F)> {
        let mut acc: std::collections::BTreeMap<u32, F> = std::collections::BTreeMap::new();
        for r in 0..self.rows {
            let mut s = F::zero();
            let mut any = false;
            for (c, a) in &self.data[r] {
                if let Ok(k) = v.binary_search_by_key(c, |e| e.0) {
                    s = s.add(&a.mul(&v[k].1));
                    any = true;
                }
            }
            if any && !s.is_zero() {
                acc.insert(r as u32, s);
            }
        }
        acc.into_iter().collect()
    }

    pub fn add(&self, rhs: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (r, c, v) in rhs.entries() {
            out.add_entry(r, c, v.clone());
        }
        out
    }

    pub fn neg(&self) -> SparseMatrix<F> {
        let mut out = self.clone();
        for row in &mut out.data {
            for e in row.iter_mut() {
                e.1 = e.1.neg();
            }
        }
        out
    }

    pub fn scale(&self, s: &F) -> SparseMatrix<F> {
        if s.is_zero() {
            return SparseMatrix::zero(self.rows, self.cols);
        }
        let mut out = self.clone();
        for row in &mut out.data {
            for e in row.iter_mut() {
                e.1 = e.1.mul(s);
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix<F> {
        let mut out = SparseMatrix::zero(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            out.data[c].push((r as u32, v.clone()));
        }
        out
    }

    /// Rank by plain Gaussian elimination. Quadratic bookkeeping; intended
    /// for tests and small matrices.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<(u32, F)>> = self.data.clone();
        let mut rank = 0;
        for col in 0..self.cols as u32 {
            // Find a row with leading entry in this column.
            let mut pivot = None;
            for (idx, row) in rows.iter().enumerate().skip(rank) {
                if row.first().map(|e| e.0) == Some(col) {
                    pivot = Some(idx);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            rows.swap(rank, p);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let prow = head[rank].clone();
            let pval = prow[0].1.clone();
            for row in tail.iter_mut() {
                if row.first().map(|e| e.0) == Some(col) {
                    let factor = row[0].1.mul(&pval.inv()).neg();
                    *row = add_scaled(row, &prow, &factor);
                }
            }
            rank += 1;
        }
        // Rows may gain new leading columns after elimination; loop until
        // echelon. Simpler: repeat passes while progress is possible.
        if rows.iter().skip(rank).any(|r| !r.is_empty()) {
            let rest: Vec<_> = rows
                .iter()
                .skip(rank)
                .filter(|r| !r.is_empty())
                .cloned()
                .collect();
            if !rest.is_empty() {
                let sub = SparseMatrix {
                    rows: rest.len(),
                    cols: self.cols,
                    data: rest,
                };
                return rank + sub.rank();
            }
        }
        rank
    }
}

fn add_scaled<F: Field>(a: &[(u32, F)], b: &[(u32, F)], factor: &F) -> Vec<(u32, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = b[j].1.mul(factor);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add(&b[j].1.mul(factor));
            if !v.is_zero() {
                out.push((a[i].0, v));
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
    use crate::algebra::field::{Rat, F2};

    #[test]
    fn product_and_rank() {
        let a: SparseMatrix<Rat> = SparseMatrix::from_triplets(
            2,
            3,
            [
                (0, 0, Rat::from_int(1)),
                (0, 2, Rat::from_int(2)),
                (1, 1, Rat::from_int(-1)),
            ],
        );
        let b: SparseMatrix<Rat> = SparseMatrix::from_triplets(
            3,
            2,
            [
                (0, 0, Rat::from_int(3)),
                (1, 0, Rat::from_int(1)),
                (2, 1, Rat::from_int(5)),
            ],
        );
        let p = a.mul(&b);
        assert_eq!(p.get(0, 0), Rat::from_int(3));
        assert_eq!(p.get(0, 1), Rat::from_int(10));
        assert_eq!(p.get(1, 0), Rat::from_int(-1));
        assert_eq!(p.rank(), 2);
    }

    #[test]
    fn rank_over_f2() {
        // Three rows: r0 + r1 = r2, so rank 2.
        let m: SparseMatrix<F2> = SparseMatrix::from_triplets(
            3,
            3,
            [
                (0, 0, F2(1)),
                (0, 1, F2(1)),
                (1, 1, F2(1)),
                (1, 2, F2(1)),
                (2, 0, F2(1)),
                (2, 2, F2(1)),
            ],
        );
        assert_eq!(m.rank(), 2);
    }
}
