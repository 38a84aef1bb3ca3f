use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::Zero;

use super::complex::{Bidegree, ChainComplex};
use super::field::{Field, FieldTag};
use super::laurent::LaurentPoly;

/// Bigraded rank function (cohomological degree, q-degree) -> rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub field: FieldTag,
    ranks: BTreeMap<Bidegree, usize>,
}

impl BettiTable {
    pub fn new(field: FieldTag) -> Self {
        BettiTable {
            field,
            ranks: BTreeMap::new(),
        }
    }

    pub fn from_complex<F: Field>(c: &ChainComplex<F>) -> Self {
        assert!(
            c.has_zero_differential(),
            "Betti tables are read off complexes with zero differential"
        );
        BettiTable {
            field: F::TAG,
            ranks: c.terms().iter().map(|(&d, &n)| (d, n)).collect(),
        }
    }

    pub fn set(&mut self, deg: Bidegree, rank: usize) {
        if rank == 0 {
            self.ranks.remove(&deg);
        } else {
            self.ranks.insert(deg, rank);
        }
    }

    pub fn rank(&self, deg: Bidegree) -> usize {
        self.ranks.get(&deg).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.ranks.iter().map(|(&d, &n)| (d, n))
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// The table with every (i, j) moved to (i + di, j + dj).
    pub fn shifted(&self, di: i32, dj: i32) -> Self {
        BettiTable {
            field: self.field,
            ranks: self
                .ranks
                .iter()
                .map(|(&(i, j), &n)| ((i + di, j + dj), n))
                .collect(),
        }
    }

    /// Rank-wise domination: every rank of `self` is at least the
    /// corresponding rank of `other`.
    pub fn dominates(&self, other: &BettiTable) -> bool {
        other.iter().all(|(d, n)| self.rank(d) >= n)
    }

    /// JSON per the external interface: field, sorted rank triples, Euler
    /// characteristic in canonical text form.
    pub fn to_json(&self) -> serde_json::Value {
        let betti: Vec<serde_json::Value> = self
            .iter()
            .map(|((i, j), rank)| serde_json::json!({"i": i, "j": j, "rank": rank}))
            .collect();
        serde_json::json!({
            "field": self.field.to_string(),
            "betti": betti,
            "euler": euler_characteristic(self).to_string(),
        })
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.field)?;
        for ((i, j), n) in self.iter() {
            write!(f, " ({i},{j}):{n}")?;
        }
        Ok(())
    }
}

/// The graded Euler characteristic Σ (−1)^i q^j rank(i, j).
pub fn euler_characteristic(b: &BettiTable) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for ((i, j), n) in b.iter() {
        let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
        p.add_term(j as i64, BigInt::from(sign * n as i64));
    }
    p
}

/// A two-variable polynomial in (t, q): map (t-exponent, q-exponent) to an
/// integer coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poincare {
    coeffs: BTreeMap<(i32, i32), BigInt>,
}

impl Poincare {
    pub fn coeff(&self, t: i32, q: i32) -> BigInt {
        self.coeffs.get(&(t, q)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), &BigInt)> {
        self.coeffs.iter().map(|(&k, v)| (k, v))
    }
}

impl fmt::Display for Poincare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(ti, qi), c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if ti != 0 {
                parts.push(if ti == 1 { "t".into() } else { format!("t^{ti}") });
            }
            if qi != 0 {
                parts.push(if qi == 1 { "q".into() } else { format!("q^{qi}") });
            }
            let body = parts.join("*");
            if body.is_empty() {
                write!(f, "{c}")?;
            } else if c == &BigInt::from(1) {
                write!(f, "{body}")?;
            } else if c == &BigInt::from(-1) {
                write!(f, "-{body}")?;
            } else {
                write!(f, "{c}*{body}")?;
            }
        }
        Ok(())
    }
}

/// Σ t^i q^j rank(i, j).
pub fn poincare(b: &BettiTable) -> Poincare {
    let mut coeffs = BTreeMap::new();
    for ((i, j), n) in b.iter() {
        coeffs.insert((i, j), BigInt::from(n));
    }
    Poincare { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::quantum_integer;

    #[test]
    fn euler_examples() {
        let empty = BettiTable::new(FieldTag::Q);
        assert!(euler_characteristic(&empty).is_zero());

        let mut t = BettiTable::new(FieldTag::Q);
        t.set((0, -2), 1);
        t.set((0, 0), 1);
        t.set((0, 2), 1);
        assert_eq!(euler_characteristic(&t), quantum_integer(3));

        let mut s = BettiTable::new(FieldTag::Q);
        s.set((1, 0), 1);
        assert_eq!(
            euler_characteristic(&s),
            LaurentPoly::from_terms([(0, -1)])
        );
    }

    #[test]
    fn poincare_examples() {
        let mut t = BettiTable::new(FieldTag::Q);
        t.set((0, 1), 1);
        t.set((0, -1), 1);
        assert_eq!(poincare(&t).to_string(), "q^-1 + q");

        let mut s = BettiTable::new(FieldTag::Q);
        s.set((0, 0), 1);
        s.set((1, 2), 1);
        assert_eq!(poincare(&s).to_string(), "1 + t*q^2");
    }

    #[test]
    fn json_shape() {
        let mut t = BettiTable::new(FieldTag::F2);
        t.set((0, 1), 2);
        let v = t.to_json();
        assert_eq!(v["field"], "F2");
        assert_eq!(v["betti"][0]["rank"], 2);
        assert_eq!(v["euler"], "2*q");
    }
}
