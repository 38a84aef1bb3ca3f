use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// A Laurent polynomial in `q` with arbitrary-precision integer
/// coefficients. No zero coefficients are stored, so equality of maps is
/// equality of polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    // exponent -> coefficient, nonzero only
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        LaurentPoly::monomial(1, 1)
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let c: BigInt = coeff.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in descending exponent order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().rev().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Multiply by `q^k`.
    pub fn shifted(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitute `q -> q^{-1}`.
    pub fn mirrored(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division in the Laurent ring: returns `p` with `self = p * d`,
    /// or `NonDivisible`. Monomials are units, so the check reduces to
    /// ordinary polynomial division after stripping `q`-power factors.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        if d.is_zero() {
            return Err(Error::NonDivisible("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let shift = self.min_exp().unwrap() - d.min_exp().unwrap();
        let mut rem = self.shifted(-self.min_exp().unwrap());
        let d0 = d.shifted(-d.min_exp().unwrap());
        let d_top = d0.max_exp().unwrap();
        let d_lead = d0.coeff(d_top);
        let mut quo = LaurentPoly::zero();
        while let Some(r_top) = rem.max_exp() {
            if r_top < d_top {
                break;
            }
            let r_lead = rem.coeff(r_top);
            let (q, r) = num::Integer::div_rem(&r_lead, &d_lead);
            if r.is_zero() && !q.is_zero() {
                let t = LaurentPoly::monomial(r_top - d_top, q);
                rem = &rem - &(&t * &d0);
                quo = &quo + &t;
            } else {
                return Err(Error::NonDivisible(format!(
                    "{} is not divisible by {}",
                    self, d
                )));
            }
        }
        if !rem.is_zero() {
            return Err(Error::NonDivisible(format!(
                "{} is not divisible by {}",
                self, d
            )));
        }
        Ok(quo.shifted(shift))
    }

    /// Evaluate at q = 1 (used for dimension counts).
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// JSON form `{"poly": [[e, c], ...]}` with descending exponents.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "poly": self })
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (e, c) in self.terms_desc() {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical text form: terms joined by " + ", exponents descending,
    /// e.g. `q^2 + 1 + q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms_desc() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let one = BigInt::one();
            let minus_one = -BigInt::one();
            if e == 0 {
                write!(f, "{}", c)?;
            } else {
                let var = if e == 1 {
                    "q".to_string()
                } else {
                    format!("q^{}", e)
                };
                if *c == one {
                    write!(f, "{}", var)?;
                } else if *c == minus_one {
                    write!(f, "-{}", var)?;
                } else {
                    write!(f, "{}*{}", c, var)?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, -c.clone());
        }
    }
}

/// The quantum integer `[n] = (q^n - q^{-n}) / (q - q^{-1})`, so `[0] = 0`,
/// `[1] = 1`, `[2] = q + q^{-1}`.
pub fn quantum_integer(n: u32) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    if n == 0 {
        return p;
    }
    let n = n as i64;
    let mut e = n - 1;
    while e >= -(n - 1) {
        p.add_term(e, BigInt::one());
        e -= 2;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn quantum_integers() {
        assert_eq!(quantum_integer(0), LaurentPoly::zero());
        assert_eq!(quantum_integer(1), LaurentPoly::one());
        assert_eq!(
            quantum_integer(2),
            LaurentPoly::from_terms([(1, 1), (-1, 1)])
        );
        assert_eq!(
            quantum_integer(3),
            LaurentPoly::from_terms([(2, 1), (0, 1), (-2, 1)])
        );
        assert_eq!(
            quantum_integer(5),
            LaurentPoly::from_terms([(4, 1), (2, 1), (0, 1), (-2, 1), (-4, 1)])
        );
    }

    #[test]
    fn quantum_integer_defining_identity() {
        // [n] * (q - q^{-1}) = q^n - q^{-n}
        let q_minus = LaurentPoly::from_terms([(1, 1), (-1, -1)]);
        for n in 1..=12u32 {
            let lhs = &quantum_integer(n) * &q_minus;
            let rhs = LaurentPoly::from_terms([(n as i64, 1), (-(n as i64), -1)]);
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn division_examples() {
        let three = quantum_integer(3);
        assert_eq!(three.div_exact(&LaurentPoly::one()).unwrap(), three);

        let prod = &quantum_integer(3) * &quantum_integer(2);
        assert_eq!(prod.div_exact(&quantum_integer(3)).unwrap(), quantum_integer(2));

        let p = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
        let d = LaurentPoly::monomial(2, 1);
        // q + q^-1 is divisible by q^2 only with a Laurent quotient q^-1 + q^-3;
        // monomial divisors always divide exactly.
        assert_eq!(
            p.div_exact(&d).unwrap(),
            LaurentPoly::from_terms([(-1, 1), (-3, 1)])
        );

        // [3] is not divisible by [2].
        assert!(quantum_integer(3).div_exact(&quantum_integer(2)).is_err());
        // 2-coefficient obstruction: q^2 + 1 not divisible by 2q + 2.
        let bad = LaurentPoly::from_terms([(2, 1), (0, 1)]);
        let den = LaurentPoly::from_terms([(1, 2), (0, 2)]);
        assert!(bad.div_exact(&den).is_err());
    }

    #[test]
    fn display_canonical() {
        assert_eq!(quantum_integer(3).to_string(), "q^2 + 1 + q^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(
            LaurentPoly::from_terms([(9, -1), (5, 1), (3, 1), (1, 1)]).to_string(),
            "-q^9 + q^5 + q^3 + q"
        );
        assert_eq!(LaurentPoly::from_terms([(0, 2), (3, 2)]).to_string(), "2*q^3 + 2");
    }

    #[test]
    fn json_form() {
        let p = quantum_integer(3);
        let v = p.to_json();
        assert_eq!(
            v,
            serde_json::json!({"poly": [[2, "1"], [0, "1"], [-2, "1"]]})
        );
    }

    proptest! {
        #[test]
        fn mul_then_divide_roundtrip(a in prop::collection::vec((-6i64..6, -4i64..4), 0..6),
                                     b in prop::collection::vec((-6i64..6, -4i64..4), 1..6)) {
            let pa = LaurentPoly::from_terms(a);
            let pb = LaurentPoly::from_terms(b);
            prop_assume!(!pb.is_zero());
            let prod = &pa * &pb;
            let q = prod.div_exact(&pb).unwrap();
            prop_assert_eq!(q, pa);
        }

        #[test]
        fn ring_laws(a in prop::collection::vec((-5i64..5, -3i64..3), 0..5),
                     b in prop::collection::vec((-5i64..5, -3i64..3), 0..5),
                     c in prop::collection::vec((-5i64..5, -3i64..3), 0..5)) {
            let pa = LaurentPoly::from_terms(a);
            let pb = LaurentPoly::from_terms(b);
            let pc = LaurentPoly::from_terms(c);
            prop_assert_eq!(&(&pa + &pb) * &pc, &(&pa * &pc) + &(&pb * &pc));
            prop_assert_eq!(&pa * &pb, &pb * &pa);
        }
    }
}
