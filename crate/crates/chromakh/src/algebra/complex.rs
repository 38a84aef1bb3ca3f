use std::collections::BTreeMap;

use crate::{Error, Result};

use super::field::Field;
use super::sparse::SparseMatrix;

/// (cohomological degree i, q-degree j).
pub type Bidegree = (i32, i32);

/// A bigraded based chain complex over a field. Terms are free modules
/// with a fixed basis; differentials preserve the q-degree and raise the
/// cohomological degree by one. `d ∘ d = 0` is checked on construction.
#[derive(Debug, Clone)]
pub struct ChainComplex<F: Field> {
    terms: BTreeMap<Bidegree, usize>,
    // keyed by source bidegree (i, j); block maps term (i,j) -> (i+1,j)
    diffs: BTreeMap<Bidegree, SparseMatrix<F>>,
}

impl<F: Field> ChainComplex<F> {
    pub fn new(
        terms: BTreeMap<Bidegree, usize>,
        diffs: BTreeMap<Bidegree, SparseMatrix<F>>,
    ) -> Result<Self> {
        let c = ChainComplex { terms, diffs };
        c.validate()?;
        c.verify_d2()?;
        Ok(c)
    }

    /// Construct without the d² check (used by the elimination engine,
    /// which preserves the property by construction).
    pub(crate) fn new_unchecked(
        terms: BTreeMap<Bidegree, usize>,
        diffs: BTreeMap<Bidegree, SparseMatrix<F>>,
    ) -> Self {
        let mut c = ChainComplex { terms, diffs };
        c.prune();
        c
    }

    /// A complex with zero differential.
    pub fn with_zero_differential(terms: BTreeMap<Bidegree, usize>) -> Self {
        let mut c = ChainComplex {
            terms,
            diffs: BTreeMap::new(),
        };
        c.prune();
        c
    }

    fn prune(&mut self) {
        self.terms.retain(|_, d| *d > 0);
        self.diffs.retain(|_, m| !m.is_zero());
    }

    fn validate(&self) -> Result<()> {
        for (&(i, j), m) in &self.diffs {
            let src = self.dim((i, j));
            let tgt = self.dim((i + 1, j));
            if m.cols() != src || m.rows() != tgt {
                return Err(Error::Internal(format!(
                    "differential at ({i},{j}) has shape {}x{}, terms are {tgt}x{src}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(())
    }

    pub fn verify_d2(&self) -> Result<()> {
        for (&(i, j), m) in &self.diffs {
            if let Some(next) = self.diffs.get(&(i + 1, j)) {
                if !next.mul(m).is_zero() {
                    return Err(Error::Internal(format!("d∘d != 0 at ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self, deg: Bidegree) -> usize {
        self.terms.get(&deg).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.terms.values().sum()
    }

    pub fn terms(&self) -> &BTreeMap<Bidegree, usize> {
        &self.terms
    }

    /// Differential block with source (i, j); zero matrix if absent.
    pub fn diff(&self, deg: Bidegree) -> SparseMatrix<F> {
        self.diffs
            .get(&deg)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(self.dim((deg.0 + 1, deg.1)), self.dim(deg)))
    }

    pub fn diffs(&self) -> &BTreeMap<Bidegree, SparseMatrix<F>> {
        &self.diffs
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diffs.is_empty()
    }

    /// q-degrees with at least one nonzero term.
    pub fn q_degrees(&self) -> Vec<i32> {
        let mut qs: Vec<i32> = self.terms.keys().map(|&(_, j)| j).collect();
        qs.sort_unstable();
        qs.dedup();
        qs
    }

    /// Shift: `shifted(a, b)` places the old (i, j) term at (i + a, j + b).
    pub fn shifted(&self, a: i32, b: i32) -> Self {
        ChainComplex {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), &d)| ((i + a, j + b), d))
                .collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(&(i, j), m)| ((i + a, j + b), m.clone()))
                .collect(),
        }
    }

    /// Direct sum, with `self` occupying the first basis positions.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        let mut degs: Vec<Bidegree> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        degs.sort_unstable();
        degs.dedup();
        for &d in &degs {
            terms.insert(d, self.dim(d) + other.dim(d));
        }
        let mut diffs = BTreeMap::new();
        for &(i, j) in &degs {
            let a = self.diff((i, j));
            let b = other.diff((i, j));
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let rows = self.dim((i + 1, j)) + other.dim((i + 1, j));
            let cols = self.dim((i, j)) + other.dim((i, j));
            let (ro, co) = (self.dim((i + 1, j)), self.dim((i, j)));
            let mut m = SparseMatrix::zero(rows, cols);
            for (r, c, v) in a.entries() {
                m.set(r, c, v.clone());
            }
            for (r, c, v) in b.entries() {
                m.set(r + ro, c + co, v.clone());
            }
            diffs.insert((i, j), m);
        }
        ChainComplex::new_unchecked(terms, diffs)
    }
}

/// A bigraded map of complexes with the strict convention d∘f = f∘d (no
/// Koszul signs on maps). Blocks are keyed by the source bidegree; a block
/// maps term (i, j) of the source to term (i+Δi, j+Δj) of the target.
#[derive(Debug, Clone)]
pub struct ChainMap<F: Field> {
    pub bidegree: Bidegree,
    pub blocks: BTreeMap<Bidegree, SparseMatrix<F>>,
}

impl<F: Field> ChainMap<F> {
    pub fn new(bidegree: Bidegree) -> Self {
        ChainMap {
            bidegree,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(c: &ChainComplex<F>) -> Self {
        let mut m = ChainMap::new((0, 0));
        for (&deg, &dim) in c.terms() {
            m.blocks.insert(deg, SparseMatrix::identity(dim));
        }
        m
    }

    pub fn zero((di, dj): Bidegree) -> Self {
        ChainMap::new((di, dj))
    }

    pub fn block(&self, deg: Bidegree, src: &ChainComplex<F>, tgt: &ChainComplex<F>) -> SparseMatrix<F> {
        self.blocks.get(&deg).cloned().unwrap_or_else(|| {
            SparseMatrix::zero(
                tgt.dim((deg.0 + self.bidegree.0, deg.1 + self.bidegree.1)),
                src.dim(deg),
            )
        })
    }

    pub fn set_block(&mut self, deg: Bidegree, m: SparseMatrix<F>) {
        if m.is_zero() {
            self.blocks.remove(&deg);
        } else {
            self.blocks.insert(deg, m);
        }
    }

    /// Composition `self ∘ g` (apply g, then self).
    pub fn compose(&self, g: &ChainMap<F>) -> ChainMap<F> {
        let mut out = ChainMap::new((
            self.bidegree.0 + g.bidegree.0,
            self.bidegree.1 + g.bidegree.1,
        ));
        for (&deg, gb) in &g.blocks {
            let mid = (deg.0 + g.bidegree.0, deg.1 + g.bidegree.1);
            if let Some(fb) = self.blocks.get(&mid) {
                let m = fb.mul(gb);
                if !m.is_zero() {
                    out.blocks.insert(deg, m);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ChainMap<F>) -> ChainMap<F> {
        assert_eq!(self.bidegree, other.bidegree, "bidegree mismatch in sum");
        let mut out = self.clone();
        for (&deg, b) in &other.blocks {
            match out.blocks.get_mut(&deg) {
                Some(a) => {
                    let s = a.add(b);
                    if s.is_zero() {
                        out.blocks.remove(&deg);
                    } else {
                        *a = s;
                    }
                }
                None => {
                    out.blocks.insert(deg, b.clone());
                }
            }
        }
        out
    }

    pub fn neg(&self) -> ChainMap<F> {
        let mut out = self.clone();
        for b in out.blocks.values_mut() {
            *b = b.neg();
        }
        out
    }

    pub fn scale(&self, s: &F) -> ChainMap<F> {
        let mut out = ChainMap::new(self.bidegree);
        if s.is_zero() {
            return out;
        }
        for (&deg, b) in &self.blocks {
            out.blocks.insert(deg, b.scale(s));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.is_zero())
    }

    /// Check the chain-map identity d_tgt ∘ f = f ∘ d_src on every degree.
    pub fn verify_chain_map(&self, src: &ChainComplex<F>, tgt: &ChainComplex<F>) -> Result<()> {
        let (di, dj) = self.bidegree;
        let mut degs: Vec<Bidegree> = src.terms().keys().copied().collect();
        degs.extend(self.blocks.keys().copied());
        degs.sort_unstable();
        degs.dedup();
        for &(i, j) in &degs {
            let f_here = self.block((i, j), src, tgt);
            let f_next = self.block((i + 1, j), src, tgt);
            let d_src = src.diff((i, j));
            let d_tgt = tgt.diff((i + di, j + dj));
            let lhs = d_tgt.mul(&f_here);
            let rhs = f_next.mul(&d_src);
            if lhs != rhs {
                return Err(Error::Internal(format!(
                    "chain-map identity fails at ({i},{j})"
                )));
            }
        }
        Ok(())
    }

    /// Total rank of the map (sum over blocks).
    pub fn rank(&self) -> usize {
        self.blocks.values().map(|b| b.rank()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rat;

    fn two_term() -> ChainComplex<Rat> {
        // k --(1)--> k in degrees (0,0) -> (1,0)
        let mut terms = BTreeMap::new();
        terms.insert((0, 0), 1);
        terms.insert((1, 0), 1);
        let mut diffs = BTreeMap::new();
        diffs.insert((0, 0), SparseMatrix::from_triplets(1, 1, [(0, 0, Rat::from_int(1))]));
        ChainComplex::new(terms, diffs).unwrap()
    }

    #[test]
    fn d2_rejects_bad_complex() {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0), 1);
        terms.insert((1, 0), 1);
        terms.insert((2, 0), 1);
        let mut diffs = BTreeMap::new();
        diffs.insert((0, 0), SparseMatrix::from_triplets(1, 1, [(0, 0, Rat::from_int(1))]));
        diffs.insert((1, 0), SparseMatrix::from_triplets(1, 1, [(0, 0, Rat::from_int(1))]));
        assert!(ChainComplex::new(terms, diffs).is_err());
    }

    #[test]
    fn identity_is_chain_map() {
        let c = two_term();
        let id = ChainMap::identity(&c);
        id.verify_chain_map(&c, &c).unwrap();
        assert_eq!(id.compose(&id).blocks, id.blocks);
    }
}
