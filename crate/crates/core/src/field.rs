//! Exact coefficient fields: the rationals, prime fields and small
//! prime-power extensions `F_p[x]/(f)`.
//!
//! Every [`Scalar`] carries enough information to identify its field, so
//! mixing elements of different fields is detected instead of silently
//! producing garbage. Canonical forms are unique: reduced fractions,
//! residues in `[0, p)`, and coefficient vectors of length `k` reduced
//! modulo a fixed monic irreducible polynomial.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// `F_p[x]/(f)` with `f` monic irreducible of degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    p: u32,
    degree: u32,
    /// Coefficients of `f`, lowest degree first, length `degree + 1`, last entry 1.
    modulus: Vec<u32>,
}

impl ExtensionField {
    /// Builds `F_{p^k}` using the lexicographically least monic irreducible
    /// polynomial of degree `k` (coefficients compared from the constant term
    /// upwards as a base-`p` integer).
    pub fn new(p: u32, degree: u32) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if degree < 2 {
            return Err(FieldError::InvalidDescriptor(format!(
                "extension degree must be at least 2, got {degree}"
            )));
        }
        let count = (p as u64).checked_pow(degree).filter(|&c| c <= 1 << 24).ok_or_else(|| {
            FieldError::InvalidDescriptor(format!("F_{p}^{degree} is too large"))
        })?;
        for code in 0..count {
            let mut modulus = digits(code, p, degree as usize);
            modulus.push(1);
            if poly_is_irreducible(&modulus, p) {
                return Ok(ExtensionField { p, degree, modulus });
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over F_p")
    }

    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        let degree = modulus.len().saturating_sub(1) as u32;
        if degree < 2 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::InvalidDescriptor(
                "reduction polynomial must be monic of degree >= 2 with coefficients in [0, p)".into(),
            ));
        }
        if !poly_is_irreducible(&modulus, p) {
            return Err(FieldError::Reducible);
        }
        Ok(ExtensionField { p, degree, modulus })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.degree)
    }

    fn reduce_product(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let k = self.degree as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (j, &m) in self.modulus[..k].iter().enumerate() {
                let idx = top - k + j;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        prod.truncate(k);
        prod.into_iter().map(|c| c as u32).collect()
    }
}

/// Which field a computation runs over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    Prime(u32),
    PrimePower(Arc<ExtensionField>),
}

impl FieldDescriptor {
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        if is_prime(p as u64) {
            Ok(FieldDescriptor::Prime(p))
        } else {
            Err(FieldError::NotPrime(p as u64))
        }
    }

    /// The finite field with `q` elements (prime or prime power).
    pub fn finite(q: u64) -> Result<Self, FieldError> {
        let (p, k) = prime_power_decomposition(q).ok_or(FieldError::NotPrimePower(q))?;
        if p > u32::MAX as u64 {
            return Err(FieldError::InvalidDescriptor(format!("characteristic {p} is too large")));
        }
        if k == 1 {
            Ok(FieldDescriptor::Prime(p as u32))
        } else {
            Ok(FieldDescriptor::PrimePower(Arc::new(ExtensionField::new(p as u32, k)?)))
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, FieldDescriptor::Rationals)
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::Prime(p) => Some(*p as u64),
            FieldDescriptor::PrimePower(ext) => Some(ext.order()),
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::Prime(p) => *p,
            FieldDescriptor::PrimePower(ext) => ext.p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    /// Image of an integer under the canonical ring map `Z -> K`.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::from_integer(n.into())),
            FieldDescriptor::Prime(p) => Scalar::Residue { p: *p, value: reduce_i64(n, *p) },
            FieldDescriptor::PrimePower(ext) => {
                let mut coeffs = vec![0; ext.degree as usize];
                coeffs[0] = reduce_i64(n, ext.p);
                Scalar::Extension { field: ext.clone(), coeffs }
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            _ => {
                let p = BigInt::from(self.characteristic());
                let r = n.mod_floor(&p);
                let r: i64 = r.try_into().expect("residue fits in i64");
                self.from_i64(r)
            }
        }
    }

    /// Rational `num/den`; for finite fields the denominator must be a unit.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, FieldError> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// Element with canonical index `index` (see [`Scalar::index`]).
    pub fn element(&self, index: u64) -> Result<Scalar, FieldError> {
        match self {
            FieldDescriptor::Rationals => Err(FieldError::InfiniteField),
            FieldDescriptor::Prime(p) => {
                if index >= *p as u64 {
                    return Err(FieldError::InvalidDescriptor(format!("index {index} out of range")));
                }
                Ok(Scalar::Residue { p: *p, value: index as u32 })
            }
            FieldDescriptor::PrimePower(ext) => {
                if index >= ext.order() {
                    return Err(FieldError::InvalidDescriptor(format!("index {index} out of range")));
                }
                Ok(Scalar::Extension {
                    field: ext.clone(),
                    coeffs: digits(index, ext.p, ext.degree as usize),
                })
            }
        }
    }

    /// All elements in canonical index order.
    pub fn elements(&self) -> Result<Vec<Scalar>, FieldError> {
        let q = self.order().ok_or(FieldError::InfiniteField)?;
        (0..q).map(|i| self.element(i)).collect()
    }

    /// The `q - 1` nonzero elements, in canonical index order.
    pub fn units(&self) -> Result<Vec<Scalar>, FieldError> {
        let q = self.order().ok_or(FieldError::InfiniteField)?;
        (1..q).map(|i| self.element(i)).collect()
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match (self, x) {
            (FieldDescriptor::Rationals, Scalar::Rational(_)) => true,
            (FieldDescriptor::Prime(p), Scalar::Residue { p: q, .. }) => p == q,
            (FieldDescriptor::PrimePower(e), Scalar::Extension { field, .. }) => e == field,
            _ => false,
        }
    }

    /// Parses a scalar literal: integers and fractions `a/b` for every field,
    /// plus `[c0,c1,...]` coefficient vectors for extension fields.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, FieldError> {
        let s = s.trim();
        if let (FieldDescriptor::PrimePower(ext), Some(inner)) =
            (self, s.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
        {
            let mut coeffs = vec![0u32; ext.degree as usize];
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() > coeffs.len() {
                return Err(FieldError::InvalidScalar(s.to_string()));
            }
            for (slot, part) in coeffs.iter_mut().zip(parts) {
                let v: i64 = part.parse().map_err(|_| FieldError::InvalidScalar(s.to_string()))?;
                *slot = reduce_i64(v, ext.p);
            }
            return Ok(Scalar::Extension { field: ext.clone(), coeffs });
        }
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| FieldError::InvalidScalar(s.to_string()))?;
        let den: BigInt = den.parse().map_err(|_| FieldError::InvalidScalar(s.to_string()))?;
        self.from_bigint(&num).checked_div(&self.from_bigint(&den))
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Prime(p) => write!(f, "F{p}"),
            FieldDescriptor::PrimePower(ext) => {
                write!(f, "F{}=F{}^{}", ext.order(), ext.p, ext.degree)
            }
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = FieldError;

    /// Accepts `Q`, `F<p>`, `F<q>` for a prime power `q`, and `F<q>=F<p>^<k>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        let bad = || FieldError::InvalidDescriptor(s.to_string());
        let (lhs, rhs) = match s.split_once('=') {
            Some((l, r)) => (l, Some(r)),
            None => (s, None),
        };
        let q: u64 = lhs.strip_prefix('F').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if let Some(rhs) = rhs {
            let (base, exp) = rhs.split_once('^').ok_or_else(bad)?;
            let p: u64 = base.strip_prefix('F').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let k: u32 = exp.parse().map_err(|_| bad())?;
            if !is_prime(p) {
                return Err(FieldError::NotPrime(p));
            }
            if p.checked_pow(k) != Some(q) {
                return Err(bad());
            }
        }
        FieldDescriptor::finite(q)
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { p: u32, value: u32 },
    Extension { field: Arc<ExtensionField>, coeffs: Vec<u32> },
}

impl Scalar {
    pub fn field(&self) -> FieldDescriptor {
        match self {
            Scalar::Rational(_) => FieldDescriptor::Rationals,
            Scalar::Residue { p, .. } => FieldDescriptor::Prime(*p),
            Scalar::Extension { field, .. } => FieldDescriptor::PrimePower(field.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
            Scalar::Extension { coeffs, .. } => coeffs.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
            Scalar::Extension { coeffs, .. } => {
                coeffs[0] == 1 && coeffs[1..].iter().all(|&c| c == 0)
            }
        }
    }

    /// Canonical index of a finite-field element: the residue, or the
    /// base-`p` integer formed by the coefficient vector.
    pub fn index(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(*value as u64),
            Scalar::Extension { field, coeffs } => Some(
                coeffs.iter().rev().fold(0u64, |acc, &c| acc * field.p as u64 + c as u64),
            ),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        let ok = match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => true,
            (Scalar::Residue { p, .. }, Scalar::Residue { p: q, .. }) => p == q,
            (Scalar::Extension { field: a, .. }, Scalar::Extension { field: b, .. }) => a == b,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(FieldError::MixedFields(self.field().to_string(), other.field().to_string()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { p, value: a }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                p: *p,
                value: ((*a as u64 + *b as u64) % *p as u64) as u32,
            },
            (Scalar::Extension { field, coeffs: a }, Scalar::Extension { coeffs: b, .. }) => {
                Scalar::Extension {
                    field: field.clone(),
                    coeffs: a.iter().zip(b).map(|(&x, &y)| (x + y) % field.p).collect(),
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { p, value } => Scalar::Residue { p: *p, value: (*p - *value) % *p },
            Scalar::Extension { field, coeffs } => Scalar::Extension {
                field: field.clone(),
                coeffs: coeffs.iter().map(|&c| (field.p - c) % field.p).collect(),
            },
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { p, value: a }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                p: *p,
                value: ((*a as u64 * *b as u64) % *p as u64) as u32,
            },
            (Scalar::Extension { field, coeffs: a }, Scalar::Extension { coeffs: b, .. }) => {
                Scalar::Extension { field: field.clone(), coeffs: field.reduce_product(a, b) }
            }
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Residue { p, value } => {
                Scalar::Residue { p: *p, value: mod_pow(*value as u64, *p as u64 - 2, *p as u64) as u32 }
            }
            Scalar::Extension { field, .. } => self.pow_u64(field.order() - 2),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    fn pow_u64(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, e: i64) -> Result<Scalar, FieldError> {
        if e >= 0 {
            Ok(self.pow_u64(e as u64))
        } else {
            Ok(self.inv()?.pow_u64(e.unsigned_abs()))
        }
    }

    /// The rational value, if this is an element of `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
            Scalar::Extension { coeffs, .. } => {
                let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

// Operator sugar for code that already guarantees a common field (matrices
// are built over a single descriptor). Mixed operands panic.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar operands from different fields")
            }
        }
        impl std::ops::$trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

/// Deterministic primality test by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// `q = p^k` with `p` prime, if it is one.
pub fn prime_power_decomposition(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn reduce_i64(n: i64, p: u32) -> u32 {
    n.rem_euclid(p as i64) as u32
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn digits(mut n: u64, base: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((n % base as u64) as u32);
        n /= base as u64;
    }
    out
}

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

/// Remainder of `a` divided by monic `b` over F_p.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (j, &c) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + (p - lead) * c as u64) % p;
            }
        }
        r.pop();
    }
    poly_trim(r.into_iter().map(|c| c as u32).collect())
}

fn poly_is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..(p as u64).pow(d as u32) {
            let mut g = digits(code, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(s: &str) -> FieldDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn inverse_of_two_mod_five() {
        let k = f("F5");
        let q = k.one().checked_div(&k.from_i64(2)).unwrap();
        assert_eq!(q, k.from_i64(3));
    }

    #[test]
    fn rational_sum() {
        let k = FieldDescriptor::Rationals;
        let a = k.from_ratio(1, 3).unwrap();
        let b = k.from_ratio(1, 6).unwrap();
        assert_eq!(a + b, k.from_ratio(1, 2).unwrap());
    }

    #[test]
    fn one_plus_one_in_f2() {
        let k = f("F2");
        assert!((k.one() + k.one()).is_zero());
    }

    #[test]
    fn division_by_zero_and_mixed_fields() {
        let k = f("F7");
        assert_eq!(k.one().checked_div(&k.zero()), Err(FieldError::DivisionByZero));
        let q = FieldDescriptor::Rationals;
        assert!(matches!(k.one().checked_add(&q.one()), Err(FieldError::MixedFields(..))));
        assert!(matches!(
            f("F3").one().checked_mul(&f("F5").one()),
            Err(FieldError::MixedFields(..))
        ));
    }

    #[test]
    fn units_listing() {
        assert_eq!(f("F2").units().unwrap(), vec![f("F2").one()]);
        let f3 = f("F3");
        assert_eq!(f3.units().unwrap(), vec![f3.from_i64(1), f3.from_i64(2)]);
        assert_eq!(f("F5").units().unwrap().len(), 4);
        assert_eq!(f("F4=F2^2").units().unwrap().len(), 3);
        assert_eq!(FieldDescriptor::Rationals.units(), Err(FieldError::InfiniteField));
    }

    #[test]
    fn descriptor_parsing() {
        assert_eq!(f("Q"), FieldDescriptor::Rationals);
        assert_eq!(f("F3"), FieldDescriptor::Prime(3));
        let f4 = f("F4=F2^2");
        assert_eq!(f4.order(), Some(4));
        assert_eq!(f4, f("F4"));
        assert_eq!(f4.to_string(), "F4=F2^2");
        assert!("F6".parse::<FieldDescriptor>().is_err());
        assert!("F4=F2^3".parse::<FieldDescriptor>().is_err());
        assert!("G5".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn lexicographically_least_modulus() {
        // x^2 + x + 1 is the only irreducible quadratic over F_2.
        let e = ExtensionField::new(2, 2).unwrap();
        assert_eq!(e.modulus(), &[1, 1, 1]);
        // x^2 + 1 is irreducible over F_3 and is the least candidate.
        assert_eq!(ExtensionField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(ExtensionField::with_modulus(2, vec![1, 0, 1]), Err(FieldError::Reducible));
    }

    #[test]
    fn f4_multiplicative_group_is_cyclic_of_order_three() {
        let k = f("F4");
        for u in k.units().unwrap() {
            assert!(u.pow(3).unwrap().is_one());
        }
        let x = k.element(2).unwrap();
        assert!(!x.pow(1).unwrap().is_one());
        assert_eq!(x.clone() * x.clone(), x.clone() + k.one());
    }

    #[test]
    fn scalar_literals() {
        let q = FieldDescriptor::Rationals;
        assert_eq!(q.parse_scalar("-3/6").unwrap(), q.from_ratio(-1, 2).unwrap());
        let k = f("F7");
        assert_eq!(k.parse_scalar("1/2").unwrap(), k.from_i64(4));
        assert_eq!(k.parse_scalar("-1").unwrap(), k.from_i64(6));
        let f4 = f("F4");
        assert_eq!(f4.parse_scalar("[0,1]").unwrap(), f4.element(2).unwrap());
        assert!(k.parse_scalar("x").is_err());
    }

    fn field_strategy() -> impl Strategy<Value = FieldDescriptor> {
        prop_oneof![
            Just(FieldDescriptor::Rationals),
            Just(FieldDescriptor::Prime(2)),
            Just(FieldDescriptor::Prime(5)),
            Just(FieldDescriptor::Prime(7)),
            Just(f("F4")),
            Just(f("F9")),
            Just(f("F8")),
        ]
    }

    fn element(k: &FieldDescriptor, n: i64, d: i64, idx: u64) -> Scalar {
        match k.order() {
            None => k.from_ratio(n, if d == 0 { 1 } else { d }).unwrap(),
            Some(q) => k.element(idx % q).unwrap(),
        }
    }

    proptest! {
        #[test]
        fn field_axioms(k in field_strategy(),
                        (n1, d1, i1) in (-20i64..20, -9i64..9, 0u64..100),
                        (n2, d2, i2) in (-20i64..20, -9i64..9, 0u64..100),
                        (n3, d3, i3) in (-20i64..20, -9i64..9, 0u64..100)) {
            let a = element(&k, n1, d1, i1);
            let b = element(&k, n2, d2, i2);
            let c = element(&k, n3, d3, i3);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn canonical_form_is_unique(k in field_strategy(), x in -50i64..50, y in -50i64..50) {
            // (x + y) - y built two ways must compare equal bit-for-bit.
            let a = k.from_i64(x);
            let via_tree = &(&a + &k.from_i64(y)) - &k.from_i64(y);
            prop_assert_eq!(via_tree, k.from_i64(x));
        }
    }
}
