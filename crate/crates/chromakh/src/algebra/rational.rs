use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::{Error, Result};

use super::laurent::LaurentPoly;

/// A rational function in `q`: a fraction of Laurent polynomials reduced to
/// lowest terms. The denominator is normalized to an ordinary polynomial
/// with nonzero constant term and positive leading coefficient; the unit
/// `q^k` factor lives in the numerator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

// Dense ordinary-polynomial helpers for gcd computation. Coefficient index
// i holds the coefficient of q^i.
fn to_dense(p: &LaurentPoly) -> (i64, Vec<BigInt>) {
    let min = p.min_exp().unwrap();
    let max = p.max_exp().unwrap();
    let mut v = vec![BigInt::zero(); (max - min + 1) as usize];
    for (e, c) in p.terms_desc() {
        v[(e - min) as usize] = c.clone();
    }
    (min, v)
}

fn from_dense(shift: i64, v: &[BigInt]) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (i, c) in v.iter().enumerate() {
        p.add_term(shift + i as i64, c.clone());
    }
    p
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    g
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = content(&v);
    if g.is_zero() || g.is_one() {
        return v;
    }
    for c in &mut v {
        *c /= &g;
    }
    v
}

// Pseudo-remainder of a by b (b nonzero, deg a >= deg b not required).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_b = b[db].clone();
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let lead_r = r[dr].clone();
        for c in &mut r {
            *c *= &lead_b;
        }
        for k in 0..=db {
            r[dr - db + k] -= &lead_r * &b[k];
        }
        trim(&mut r);
    }
    r
}

// Primitive gcd of two ordinary polynomials over Z.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() {
        return primitive(b);
    }
    if b.is_empty() {
        return primitive(a);
    }
    a = primitive(a);
    b = primitive(b);
    while !b.is_empty() {
        let r = primitive(pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    a
}

impl RationalFn {
    pub fn zero() -> Self {
        RationalFn {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFn {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFn {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NonDivisible("rational function with zero denominator".into()));
        }
        let mut r = RationalFn { num, den };
        r.reduce();
        Ok(r)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    /// The underlying Laurent polynomial, if the denominator is 1.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        if self.den == LaurentPoly::one() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        let (sn, dn) = to_dense(&self.num);
        let (sd, dd) = to_dense(&self.den);
        let g = poly_gcd(&dn, &dd);
        let (mut n, mut d) = (dn, dd);
        if g.len() > 1 || !g.is_empty() && !(g.len() == 1 && g[0].is_one()) {
            n = exact_poly_div(&n, &g);
            d = exact_poly_div(&d, &g);
        }
        // Integer content.
        let cn = content(&n);
        let cd = content(&d);
        let c = cn.gcd(&cd);
        if !c.is_one() {
            for x in &mut n {
                *x /= &c;
            }
            for x in &mut d {
                *x /= &c;
            }
        }
        // Canonical sign: positive leading coefficient in the denominator.
        if d.last().unwrap().is_negative() {
            for x in &mut n {
                *x = -x.clone();
            }
            for x in &mut d {
                *x = -x.clone();
            }
        }
        // Denominator gets constant term at q^0; the q-power moves to num.
        self.num = from_dense(sn - sd, &n);
        self.den = from_dense(0, &d);
    }
}

// Exact division of dense polys (panics if not exact; callers divide by a
// computed gcd).
fn exact_poly_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let pa = from_dense(0, a);
    let pb = from_dense(0, b);
    let q = pa.div_exact(&pb).expect("gcd division is exact");
    if q.is_zero() {
        return vec![];
    }
    let (s, v) = to_dense(&q);
    assert!(s >= 0);
    let mut out = vec![BigInt::zero(); s as usize];
    out.extend(v);
    out
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalFn::new(num, den).expect("nonzero denominators")
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Div for &RationalFn {
    type Output = RationalFn;
    fn div(self, rhs: &RationalFn) -> RationalFn {
        assert!(!rhs.is_zero(), "division of rational functions by zero");
        RationalFn::new(&self.num * &rhs.den, &self.den * &rhs.num).expect("nonzero denominator")
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_laurent() {
            write!(f, "{}", p)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::quantum_integer;

    #[test]
    fn reduction_to_lowest_terms() {
        // [2][3] / [2] = [3]
        let r = RationalFn::new(&quantum_integer(2) * &quantum_integer(3), quantum_integer(2))
            .unwrap();
        assert_eq!(r.as_laurent().unwrap(), &quantum_integer(3));
    }

    #[test]
    fn wenzl_style_arithmetic() {
        // [1]/[2] + [2]/[3] arithmetic stays exact and reduced.
        let a = RationalFn::new(quantum_integer(1), quantum_integer(2)).unwrap();
        let b = RationalFn::new(quantum_integer(2), quantum_integer(3)).unwrap();
        let s = &a + &b;
        // [1][3] + [2][2] over [2][3]
        let num = &(&quantum_integer(1) * &quantum_integer(3)) + &(&quantum_integer(2) * &quantum_integer(2));
        let expect = RationalFn::new(num, &quantum_integer(2) * &quantum_integer(3)).unwrap();
        assert_eq!(s, expect);
        // [n]/[n] = 1
        let u = RationalFn::new(quantum_integer(4), quantum_integer(4)).unwrap();
        assert_eq!(u, RationalFn::one());
    }

    #[test]
    fn canonical_sign_and_unit() {
        let r = RationalFn::new(
            LaurentPoly::from_terms([(3, -2)]),
            LaurentPoly::from_terms([(1, -1)]),
        )
        .unwrap();
        // -2q^3 / -q = 2q^2
        assert_eq!(r.as_laurent().unwrap(), &LaurentPoly::from_terms([(2, 2)]));
    }
}
