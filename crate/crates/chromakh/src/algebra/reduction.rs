use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::{Error, Result};

use super::complex::{Bidegree, ChainComplex, ChainMap};
use super::field::Field;
use super::sparse::SparseMatrix;

/// Strong-deformation-retract data from a complex onto its homology:
/// a projection `p`, an inclusion `i` with `p∘i = id`, and a homotopy `h`
/// with `dh + hd = id − i∘p`. The homology complex has zero differential.
#[derive(Debug, Clone)]
pub struct Reduction<F: Field> {
    pub homology: ChainComplex<F>,
    pub p: ChainMap<F>,
    pub i: ChainMap<F>,
    /// Omitted only above the homotopy size cap; see `gauss_eliminate_opts`.
    pub h: Option<ChainMap<F>>,
    pub(crate) orig_terms: BTreeMap<Bidegree, usize>,
}

impl<F: Field> Reduction<F> {
    /// The identity reduction of a complex with zero differential.
    pub fn identity(c: &ChainComplex<F>) -> Self {
        Reduction {
            homology: c.clone(),
            p: ChainMap::identity(c),
            i: ChainMap::identity(c),
            h: Some(ChainMap::new((-1, 0))),
            orig_terms: c.terms().clone(),
        }
    }

    /// Check p∘i = id, that p and i are chain maps, and (when the homotopy
    /// was kept) dh + hd = id − i∘p.
    pub fn verify(&self, original: &ChainComplex<F>) -> Result<()> {
        self.p.verify_chain_map(original, &self.homology)?;
        self.i.verify_chain_map(&self.homology, original)?;
        let pi = self.p.compose(&self.i);
        let id_h = ChainMap::identity(&self.homology);
        if pi.add(&id_h.neg()).is_zero() == false {
            return Err(Error::Internal("p∘i != id".into()));
        }
        if let Some(h) = &self.h {
            // dh + hd = id − i∘p, blockwise.
            let ip = self.i.compose(&self.p);
            let id = ChainMap::identity(original);
            for (&(i, j), &dim) in original.terms() {
                let d_here = original.diff((i, j));
                let d_prev = original.diff((i - 1, j));
                let h_here = h.block((i, j), original, original);
                let h_next = h.block((i + 1, j), original, original);
                let lhs = h_next.mul(&d_here).add(&d_prev.mul(&h_here));
                let rhs = id
                    .block((i, j), original, original)
                    .add(&ip.block((i, j), original, original).neg());
                if lhs != rhs {
                    return Err(Error::Internal(format!(
                        "dh + hd != id - i∘p at ({i},{j}), dim {dim}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Induced map on homology: `p_tgt ∘ f ∘ i_src`. The rank of the result
/// does not depend on the elimination order.
pub fn transport_map<F: Field>(
    f: &ChainMap<F>,
    r_src: &Reduction<F>,
    r_tgt: &Reduction<F>,
) -> Result<ChainMap<F>> {
    for (&deg, b) in &f.blocks {
        let src_dim = r_src.orig_terms.get(&deg).copied().unwrap_or(0);
        let tgt_deg = (deg.0 + f.bidegree.0, deg.1 + f.bidegree.1);
        let tgt_dim = r_tgt.orig_terms.get(&tgt_deg).copied().unwrap_or(0);
        if b.cols() != src_dim || b.rows() != tgt_dim {
            return Err(Error::DegreeMismatch(format!(
                "map block at {deg:?} has shape {}x{}, expected {}x{}",
                b.rows(),
                b.cols(),
                tgt_dim,
                src_dim
            )));
        }
    }
    Ok(r_tgt.p.compose(f).compose(&r_src.i))
}

// Sparse vector helpers over original basis indices.
type SVec<F> = HashMap<u32, F>;

fn svec_axpy<F: Field>(dst: &mut SVec<F>, coef: &F, src: &SVec<F>) {
    for (k, v) in src {
        let t = coef.mul(v);
        if t.is_zero() {
            continue;
        }
        match dst.get_mut(k) {
            Some(e) => {
                let s = e.add(&t);
                if s.is_zero() {
                    dst.remove(k);
                } else {
                    *e = s;
                }
            }
            None => {
                dst.insert(*k, t);
            }
        }
    }
}

/// Elimination workspace for one differential block. Entries are keyed
/// (row, col) = (target index, source index) with original indices.
struct Block<F: Field> {
    entries: BTreeMap<(u32, u32), F>,
    by_col: HashMap<u32, BTreeSet<u32>>,
}

impl<F: Field> Block<F> {
    fn from_matrix(m: &SparseMatrix<F>) -> Self {
        let mut entries = BTreeMap::new();
        let mut by_col: HashMap<u32, BTreeSet<u32>> = HashMap::new();
        for (r, c, v) in m.entries() {
            entries.insert((r as u32, c as u32), v.clone());
            by_col.entry(c as u32).or_default().insert(r as u32);
        }
        Block { entries, by_col }
    }

    fn insert(&mut self, r: u32, c: u32, v: F) {
        if v.is_zero() {
            self.remove(r, c);
        } else {
            if self.entries.insert((r, c), v).is_none() {
                self.by_col.entry(c).or_default().insert(r);
            }
        }
    }

    fn add_to(&mut self, r: u32, c: u32, v: F) {
        if v.is_zero() {
            return;
        }
        let cur = self.entries.get(&(r, c)).cloned().unwrap_or_else(F::zero);
        self.insert(r, c, cur.add(&v));
    }

    fn remove(&mut self, r: u32, c: u32) {
        if self.entries.remove(&(r, c)).is_some() {
            if let Some(s) = self.by_col.get_mut(&c) {
                s.remove(&r);
                if s.is_empty() {
                    self.by_col.remove(&c);
                }
            }
        }
    }

    fn row_entries(&self, r: u32) -> Vec<(u32, F)> {
        self.entries
            .range((r, 0)..=(r, u32::MAX))
            .map(|(&(_, c), v)| (c, v.clone()))
            .collect()
    }

    fn col_entries(&self, c: u32) -> Vec<(u32, F)> {
        match self.by_col.get(&c) {
            Some(rows) => rows
                .iter()
                .map(|&r| (r, self.entries[&(r, c)].clone()))
                .collect(),
            None => Vec::new(),
        }
    }

    fn remove_row(&mut self, r: u32) {
        for (c, _) in self.row_entries(r) {
            self.remove(r, c);
        }
    }

    fn remove_col(&mut self, c: u32) {
        for (r, _) in self.col_entries(c) {
            self.remove(r, c);
        }
    }

    fn first(&self) -> Option<(u32, u32)> {
        self.entries.keys().next().copied()
    }
}

/// One q-degree slice of an elimination in progress. Degrees are the
/// cohomological degrees i present at this q; `dims` are original term
/// dimensions. P-rows and I-columns are stored lazily: an absent entry is
/// still the elementary basis vector.
pub(crate) struct SliceElim<F: Field> {
    q: i32,
    dims: BTreeMap<i32, usize>,
    blocks: BTreeMap<i32, Block<F>>,
    alive: BTreeMap<i32, Vec<bool>>,
    p_rows: BTreeMap<i32, HashMap<u32, SVec<F>>>,
    i_cols: BTreeMap<i32, HashMap<u32, SVec<F>>>,
    // h block keyed by source degree i: maps term (i, q) -> (i-1, q)
    h_blocks: Option<BTreeMap<i32, HashMap<(u32, u32), F>>>,
}

impl<F: Field> SliceElim<F> {
    pub(crate) fn new(
        q: i32,
        dims: BTreeMap<i32, usize>,
        diff_blocks: BTreeMap<i32, SparseMatrix<F>>,
        build_h: bool,
    ) -> Self {
        let blocks = diff_blocks
            .iter()
            .map(|(&i, m)| (i, Block::from_matrix(m)))
            .collect();
        let alive = dims.iter().map(|(&i, &d)| (i, vec![true; d])).collect();
        let p_rows = dims.keys().map(|&i| (i, HashMap::new())).collect();
        let i_cols = dims.keys().map(|&i| (i, HashMap::new())).collect();
        SliceElim {
            q,
            dims,
            blocks,
            alive,
            p_rows,
            i_cols,
            h_blocks: if build_h { Some(BTreeMap::new()) } else { None },
        }
    }

    fn p_row(&self, i: i32, r: u32) -> SVec<F> {
        match self.p_rows[&i].get(&r) {
            Some(v) => v.clone(),
            None => {
                let mut v = HashMap::new();
                v.insert(r, F::one());
                v
            }
        }
    }

    fn i_col(&self, i: i32, c: u32) -> SVec<F> {
        match self.i_cols[&i].get(&c) {
            Some(v) => v.clone(),
            None => {
                let mut v = HashMap::new();
                v.insert(c, F::one());
                v
            }
        }
    }

    /// Run the elimination to completion. Blocks are processed in
    /// ascending degree; within a block the pivot is the lexicographically
    /// smallest (row, col) entry. Together with the ascending (i, q) block
    /// order of the caller this realizes the smallest-(i, j, row, col)
    /// pivot rule.
    pub(crate) fn run(&mut self) {
        let degrees: Vec<i32> = self.blocks.keys().copied().collect();
        for i in degrees {
            loop {
                let Some((c_row, b_col)) = self.blocks.get(&i).and_then(|b| b.first()) else {
                    break;
                };
                self.cancel(i, c_row, b_col);
            }
        }
    }

    /// Cancel the invertible entry d[c, b] in the block with source degree
    /// i (so b lives in degree i, c in degree i+1).
    fn cancel(&mut self, i: i32, c: u32, b: u32) {
        let phi = self.blocks[&i].entries[&(c, b)].clone();
        let phi_inv = phi.inv();
        let delta: Vec<(u32, F)> = self.blocks[&i]
            .row_entries(c)
            .into_iter()
            .filter(|(s, _)| *s != b)
            .collect();
        let gamma: Vec<(u32, F)> = self.blocks[&i]
            .col_entries(b)
            .into_iter()
            .filter(|(t, _)| *t != c)
            .collect();

        // Homotopy: h += φ^{-1} · i_col(b) ⊗ p_row(c), a block from degree
        // i+1 to degree i. Uses the maps from before this step's update.
        if self.h_blocks.is_some() {
            let ib = self.i_col(i, b);
            let pc = self.p_row(i + 1, c);
            let hb = self
                .h_blocks
                .as_mut()
                .unwrap()
                .entry(i + 1)
                .or_default();
            for (y, vy) in &ib {
                let f1 = phi_inv.mul(vy);
                if f1.is_zero() {
                    continue;
                }
                for (x, vx) in &pc {
                    let t = f1.mul(vx);
                    if t.is_zero() {
                        continue;
                    }
                    let e = hb.entry((*y, *x)).or_insert_with(F::zero);
                    *e = e.add(&t);
                    if e.is_zero() {
                        hb.remove(&(*y, *x));
                    }
                }
            }
        }

        // Projection rows: row(t) += (-φ^{-1} M[t,b]) · row(c), then drop
        // rows b and c.
        let pc = self.p_row(i + 1, c);
        for (t, mtb) in &gamma {
            let coef = phi_inv.mul(mtb).neg();
            let rows = self.p_rows.get_mut(&(i + 1)).unwrap();
            let mut row = match rows.remove(t) {
                Some(v) => v,
                None => {
                    let mut v = HashMap::new();
                    v.insert(*t, F::one());
                    v
                }
            };
            svec_axpy(&mut row, &coef, &pc);
            rows.insert(*t, row);
        }
        self.p_rows.get_mut(&i).unwrap().remove(&b);
        self.p_rows.get_mut(&(i + 1)).unwrap().remove(&c);

        // Inclusion columns: col(s) += (-φ^{-1} M[c,s]) · col(b), then drop
        // columns b and c.
        let ib = self.i_col(i, b);
        for (s, mcs) in &delta {
            let coef = phi_inv.mul(mcs).neg();
            let cols = self.i_cols.get_mut(&i).unwrap();
            let mut col = match cols.remove(s) {
                Some(v) => v,
                None => {
                    let mut v = HashMap::new();
                    v.insert(*s, F::one());
                    v
                }
            };
            svec_axpy(&mut col, &coef, &ib);
            cols.insert(*s, col);
        }
        self.i_cols.get_mut(&i).unwrap().remove(&b);
        self.i_cols.get_mut(&(i + 1)).unwrap().remove(&c);

        // Schur corrections within the block: M[t,s] -= M[t,b] φ^{-1} M[c,s].
        {
            let block = self.blocks.get_mut(&i).unwrap();
            for (t, mtb) in &gamma {
                let f1 = mtb.mul(&phi_inv);
                for (s, mcs) in &delta {
                    block.add_to(*t, *s, f1.mul(mcs).neg());
                }
            }
            block.remove_row(c);
            block.remove_col(b);
        }
        // b's row in the previous block, c's column in the next block.
        if let Some(prev) = self.blocks.get_mut(&(i - 1)) {
            prev.remove_row(b);
        }
        if let Some(next) = self.blocks.get_mut(&(i + 1)) {
            next.remove_col(c);
        }

        self.alive.get_mut(&i).unwrap()[b as usize] = false;
        self.alive.get_mut(&(i + 1)).unwrap()[c as usize] = false;
    }

    /// Surviving original indices per degree, in ascending order.
    pub(crate) fn survivors(&self) -> BTreeMap<i32, Vec<u32>> {
        self.alive
            .iter()
            .map(|(&i, flags)| {
                (
                    i,
                    flags
                        .iter()
                        .enumerate()
                        .filter(|(_, a)| **a)
                        .map(|(k, _)| k as u32)
                        .collect(),
                )
            })
            .collect()
    }

    /// Assemble (homology terms, p blocks, i blocks, h blocks) for this
    /// slice, keyed by full bidegree.
    pub(crate) fn finish(
        self,
    ) -> (
        BTreeMap<Bidegree, usize>,
        BTreeMap<Bidegree, SparseMatrix<F>>,
        BTreeMap<Bidegree, SparseMatrix<F>>,
        Option<BTreeMap<Bidegree, SparseMatrix<F>>>,
    ) {
        for (i, b) in &self.blocks {
            assert!(
                b.entries.is_empty(),
                "block {} not fully eliminated at q={}",
                i,
                self.q
            );
        }
        let survivors = self.survivors();
        let mut terms = BTreeMap::new();
        let mut p_out = BTreeMap::new();
        let mut i_out = BTreeMap::new();
        let mut h_out = self.h_blocks.as_ref().map(|_| BTreeMap::new());

        for (&i, surv) in &survivors {
            let deg = (i, self.q);
            let orig_dim = self.dims[&i];
            if !surv.is_empty() {
                terms.insert(deg, surv.len());
            }
            let mut p = SparseMatrix::zero(surv.len(), orig_dim);
            for (new_r, &orig) in surv.iter().enumerate() {
                for (x, v) in self.p_row(i, orig) {
                    p.set(new_r, x as usize, v);
                }
            }
            if !p.is_zero() {
                p_out.insert(deg, p);
            }
            let mut inc = SparseMatrix::zero(orig_dim, surv.len());
            for (new_c, &orig) in surv.iter().enumerate() {
                for (y, v) in self.i_col(i, orig) {
                    inc.set(y as usize, new_c, v);
                }
            }
            if !inc.is_zero() {
                i_out.insert(deg, inc);
            }
        }
        if let (Some(hb), Some(out)) = (self.h_blocks, h_out.as_mut()) {
            for (i, entries) in hb {
                let rows = self.dims.get(&(i - 1)).copied().unwrap_or(0);
                let cols = self.dims[&i];
                let mut m = SparseMatrix::zero(rows, cols);
                for ((y, x), v) in entries {
                    m.set(y as usize, x as usize, v);
                }
                if !m.is_zero() {
                    out.insert((i, self.q), m);
                }
            }
        }
        (terms, p_out, i_out, h_out)
    }
}

/// Gaussian elimination of a based complex over a field down to zero
/// differential, with reduction data. Pivots are cancelled in ascending
/// lexicographic (i, j, row, col) order, which makes the result
/// deterministic given the canonical basis order.
pub fn gauss_eliminate<F: Field>(c: &ChainComplex<F>) -> (ChainComplex<F>, Reduction<F>) {
    gauss_eliminate_opts(c, true)
}

/// As `gauss_eliminate`, optionally skipping the homotopy accumulation
/// (large complexes where only transports are needed).
pub fn gauss_eliminate_opts<F: Field>(
    c: &ChainComplex<F>,
    build_h: bool,
) -> (ChainComplex<F>, Reduction<F>) {
    let mut terms = BTreeMap::new();
    let mut p = ChainMap::new((0, 0));
    let mut i_map = ChainMap::new((0, 0));
    let mut h = ChainMap::new((-1, 0));

    for q in c.q_degrees() {
        let dims: BTreeMap<i32, usize> = c
            .terms()
            .iter()
            .filter(|(&(_, j), _)| j == q)
            .map(|(&(i, _), &d)| (i, d))
            .collect();
        let blocks: BTreeMap<i32, SparseMatrix<F>> = c
            .diffs()
            .iter()
            .filter(|(&(_, j), _)| j == q)
            .map(|(&(i, _), m)| (i, m.clone()))
            .collect();
        let mut slice = SliceElim::new(q, dims, blocks, build_h);
        slice.run();
        let (t, pb, ib, hb) = slice.finish();
        terms.extend(t);
        for (deg, m) in pb {
            p.set_block(deg, m);
        }
        for (deg, m) in ib {
            i_map.set_block(deg, m);
        }
        if let Some(hb) = hb {
            for (deg, m) in hb {
                h.set_block(deg, m);
            }
        }
    }

    let homology = ChainComplex::with_zero_differential(terms);
    let reduction = Reduction {
        homology: homology.clone(),
        p,
        i: i_map,
        h: build_h.then_some(h),
        orig_terms: c.terms().clone(),
    };
    (homology, reduction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Rat, F2};

    fn complex_from<F: Field>(
        terms: &[(Bidegree, usize)],
        diffs: &[(Bidegree, usize, usize, Vec<(usize, usize, i64)>)],
    ) -> ChainComplex<F> {
        let t: BTreeMap<Bidegree, usize> = terms.iter().copied().collect();
        let mut d = BTreeMap::new();
        for (deg, rows, cols, entries) in diffs {
            let m = SparseMatrix::from_triplets(
                *rows,
                *cols,
                entries.iter().map(|&(r, c, v)| (r, c, F::from_int(v))),
            );
            d.insert(*deg, m);
        }
        ChainComplex::new(t, d).unwrap()
    }

    #[test]
    fn zero_differential_is_fixed_point() {
        let c: ChainComplex<Rat> =
            complex_from(&[((0, 0), 2), ((1, 2), 1)], &[]);
        let (h, r) = gauss_eliminate(&c);
        assert_eq!(h.terms(), c.terms());
        r.verify(&c).unwrap();
        // Identity reduction: p and i are identities.
        let id = ChainMap::identity(&c);
        assert_eq!(r.p.compose(&r.i).blocks, id.blocks);
    }

    #[test]
    fn two_term_acyclic() {
        let c: ChainComplex<Rat> = complex_from(
            &[((0, 0), 1), ((1, 0), 1)],
            &[((0, 0), 1, 1, vec![(0, 0, 1)])],
        );
        let (h, r) = gauss_eliminate(&c);
        assert_eq!(h.total_dim(), 0);
        r.verify(&c).unwrap();
    }

    #[test]
    fn homology_matches_rank_nullity_on_random_complexes() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for trial in 0..40 {
            // Random two-step complex A --d0--> B --d1--> C with d1 d0 = 0,
            // built as d1 = e * f and d0 with image in ker(d1) by taking
            // d0 = g * k where f * g = 0 is arranged via a shared middle.
            // Simpler: random d0, then d1 built on coker-ish rows times
            // a left annihilator is fiddly; instead take d1 random and
            // d0 = random map into ker(d1) via column combinations of a
            // kernel basis is what gauss gives us. For an independent
            // check we construct d0 first and d1 on its cokernel pattern:
            // d1 * d0 = 0 with d1 = r * p where p kills im(d0) columns is
            // easiest with block shapes.
            let a = 2 + (trial % 3);
            let b = 3 + (trial % 4);
            let czz = 2 + (trial % 2);
            // d0: B x A with entries in {-1,0,1}
            let d0: SparseMatrix<F2> = SparseMatrix::from_triplets(
                b,
                a,
                (0..b).flat_map(|r| (0..a).map(move |c| (r, c))).filter_map(|(r, c)| {
                    if rng.random_bool(0.5) {
                        Some((r, c, F2(1)))
                    } else {
                        None
                    }
                }),
            );
            // d1 candidate, then force d1 d0 = 0 by elimination: build d1
            // random and replace it with d1' = d1 * (I - d0 (d0^T d0)^{-1} ...)
            // Over F2 just search: keep resampling until d1 * d0 = 0.
            let mut d1 = None;
            for _ in 0..400 {
                let cand: SparseMatrix<F2> = SparseMatrix::from_triplets(
                    czz,
                    b,
                    (0..czz)
                        .flat_map(|r| (0..b).map(move |c| (r, c)))
                        .filter_map(|(r, c)| {
                            if rng.random_bool(0.35) {
                                Some((r, c, F2(1)))
                            } else {
                                None
                            }
                        }),
                );
                if cand.mul(&d0).is_zero() {
                    d1 = Some(cand);
                    break;
                }
            }
            let d1 = d1.unwrap_or_else(|| SparseMatrix::zero(czz, b));
            let mut terms = BTreeMap::new();
            terms.insert((0, 0), a);
            terms.insert((1, 0), b);
            terms.insert((2, 0), czz);
            let mut diffs = BTreeMap::new();
            diffs.insert((0, 0), d0.clone());
            diffs.insert((1, 0), d1.clone());
            let c = ChainComplex::<F2>::new(terms, diffs).unwrap();
            let (h, r) = gauss_eliminate(&c);
            r.verify(&c).unwrap();
            // Naive rank-nullity oracle.
            let r0 = d0.rank();
            let r1 = d1.rank();
            assert_eq!(h.dim((0, 0)), a - r0, "H0 trial {trial}");
            assert_eq!(h.dim((1, 0)), b - r0 - r1, "H1 trial {trial}");
            assert_eq!(h.dim((2, 0)), czz - r1, "H2 trial {trial}");
        }
    }

    #[test]
    fn transport_of_identity_and_zero() {
        let c: ChainComplex<Rat> = complex_from(
            &[((0, 0), 2), ((1, 0), 1)],
            &[((0, 0), 1, 2, vec![(0, 0, 1), (0, 1, 1)])],
        );
        let (_, r) = gauss_eliminate(&c);
        let id = ChainMap::identity(&c);
        let t = transport_map(&id, &r, &r).unwrap();
        let idh = ChainMap::identity(&r.homology);
        assert!(t.add(&idh.neg()).is_zero());
        let z = ChainMap::zero((0, 0));
        let tz = transport_map(&z, &r, &r).unwrap();
        assert!(tz.is_zero());
    }

    #[test]
    fn transported_equivalence_is_isomorphism() {
        // C: k -> k^2 (x -> (x,x)); D: zero complex k^2 in degree 1 summand;
        // the projection C -> H(C) transported against identity reductions
        // must be full rank. Simpler check: transport of a homotopy
        // equivalence: take C acyclic-plus-survivor and the identity map.
        let c: ChainComplex<Rat> = complex_from(
            &[((0, 0), 2), ((1, 0), 1)],
            &[((0, 0), 1, 2, vec![(0, 0, 1)])],
        );
        let (h, r) = gauss_eliminate(&c);
        assert_eq!(h.dim((0, 0)), 1);
        let id = ChainMap::identity(&c);
        let t = transport_map(&id, &r, &r).unwrap();
        assert_eq!(t.rank(), h.total_dim());
    }
}
