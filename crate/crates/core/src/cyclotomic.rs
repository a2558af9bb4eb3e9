//! Exact arithmetic in the cyclotomic field Q(ζ_m), power basis modulo Φ_m.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::fmt_rational;

/// Φ_m as integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1);
    // x^m - 1
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = BigInt::from(-1);
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            p = exact_div(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd].clone();
        q[i] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            r[i + j] -= &c * dj;
        }
    }
    assert!(r.iter().all(|x| x.is_zero()), "non-exact polynomial division");
    q
}

/// Number field context shared by all scalars of the same order.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    pub order: u32,
    modulus: Vec<BigInt>,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Arc<Self> {
        Arc::new(CyclotomicField { order, modulus: cyclotomic_polynomial(order) })
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

/// An element of Q(ζ_m).
#[derive(Clone)]
pub struct CyclotomicScalar {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl CyclotomicScalar {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        CyclotomicScalar { field: field.clone(), coeffs: vec![BigRational::zero(); field.degree()] }
    }

    pub fn rational(field: &Arc<CyclotomicField>, x: BigRational) -> Self {
        let mut s = Self::zero(field);
        s.coeffs[0] = x;
        s
    }

    pub fn integer(field: &Arc<CyclotomicField>, n: i64) -> Self {
        Self::rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    /// ζ_m^k for any integer k.
    pub fn root_of_unity(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let e = k.rem_euclid(field.order as i64) as usize;
        let mut raw = vec![BigRational::zero(); e.max(field.degree()) + 1];
        raw[e] = BigRational::one();
        Self::from_raw(field, raw)
    }

    fn from_raw(field: &Arc<CyclotomicField>, mut raw: Vec<BigRational>) -> Self {
        let d = field.degree();
        // reduce modulo the monic modulus
        while raw.len() > d {
            let top = raw.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = raw.len() - d;
            for (j, mj) in field.modulus.iter().take(d).enumerate() {
                raw[shift + j] -= &top * BigRational::from_integer(mj.clone());
            }
        }
        raw.resize(d, BigRational::zero());
        CyclotomicScalar { field: field.clone(), coeffs: raw }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn from_coefficients(field: &Arc<CyclotomicField>, coeffs: Vec<BigRational>) -> Self {
        Self::from_raw(field, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, if the scalar lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.field.order, o.field.order, "mixing cyclotomic fields of different order");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicScalar { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        CyclotomicScalar { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        CyclotomicScalar { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        CyclotomicScalar { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let d = self.field.degree();
        let mut raw = vec![BigRational::zero(); 2 * d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Self::from_raw(&self.field, raw)
    }

    /// Complex conjugation, ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let mut acc = Self::zero(&self.field);
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                acc = acc.add(&Self::root_of_unity(&self.field, -(i as i64)).scale(a));
            }
        }
        acc
    }

    /// Galois automorphism ζ ↦ ζ^k, k coprime to the order.
    pub fn galois(&self, k: i64) -> Self {
        assert!(k.gcd(&(self.field.order as i64)) == 1);
        let mut acc = Self::zero(&self.field);
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                acc = acc.add(&Self::root_of_unity(&self.field, k * i as i64).scale(a));
            }
        }
        acc
    }
}

impl PartialEq for CyclotomicScalar {
    fn eq(&self, o: &Self) -> bool {
        self.field.order == o.field.order && self.coeffs == o.coeffs
    }
}
impl Eq for CyclotomicScalar {}

impl fmt::Debug for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", fmt_rational(&r));
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", fmt_rational(c))?,
                _ => write!(f, "({})z{}^{}", fmt_rational(c), self.field.order, i)?,
            }
        }
        Ok(())
    }
}

/// Serialized form: order plus coefficient strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CyclotomicRepr {
    pub order: u32,
    pub coefficients: Vec<String>,
}

impl From<&CyclotomicScalar> for CyclotomicRepr {
    fn from(s: &CyclotomicScalar) -> Self {
        CyclotomicRepr { order: s.order(), coefficients: s.coeffs.iter().map(fmt_rational).collect() }
    }
}
