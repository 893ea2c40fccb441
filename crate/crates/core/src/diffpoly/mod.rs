//! Exact differential Laurent polynomials over the rationals.
//!
//! A [`DiffPoly`] is a finite sum of rational multiples of [`Monomial`]s in
//! [`Sym`]bols: base coordinates, parameters, jet coordinates `u_sigma` of a
//! dependent variable and jets `f_sigma` of formal functions. The map from
//! monomial to coefficient never stores a zero, so structural equality is
//! equality of polynomials and `is_zero` decides identical vanishing.
//!
//! Differentiation lives in [`DiffPoly::derivation`]: every derivation used by
//! the crate (partial and total derivatives, vector fields, prolongations) is
//! determined by its value on each symbol and is extended by Leibniz.

mod monomial;
mod sym;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use monomial::Monomial;
pub use sym::{MultiIndex, Name, Sym};

/// Exact coefficient field.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffPolyError {
    #[error("no value assigned to symbol {0}")]
    Unassigned(String),
    #[error("division by zero: {0} is zero but appears with a negative exponent")]
    DivisionByZero(String),
    #[error("{0} is not a unit of the Laurent ring")]
    NotInvertible(String),
}

/// Assignment of rational values to symbols, used by [`DiffPoly::eval`].
pub type Point = BTreeMap<Sym, Rational>;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, Rational>,
}

fn add_term(acc: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl DiffPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(s: Sym) -> Self {
        Self::term(Rational::one(), Monomial::var(s))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in it {
            add_term(&mut terms, m, c);
        }
        DiffPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if the polynomial has no symbols.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn as_single_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Inverse of a unit of the Laurent ring (a single term without jets).
    pub fn inverse(&self) -> Result<DiffPoly, DiffPolyError> {
        let (m, c) = self
            .as_single_term()
            .ok_or_else(|| DiffPolyError::NotInvertible(self.to_string()))?;
        let inv = m
            .inverse()
            .ok_or_else(|| DiffPolyError::NotInvertible(self.to_string()))?;
        Ok(DiffPoly::term(c.recip(), inv))
    }

    pub fn scale(&self, c: &Rational) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Integer power. Negative exponents require a unit.
    pub fn pow(&self, n: i32) -> Result<DiffPoly, DiffPolyError> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        let mut acc = DiffPoly::one();
        let mut base = self.clone();
        let mut n = n as u32;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn symbols(&self) -> BTreeSet<Sym> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(s, _)| s.clone()))
            .collect()
    }

    /// Symbols that occur with a negative exponent somewhere.
    pub fn inverted_symbols(&self) -> BTreeSet<Sym> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().filter(|(_, e)| *e < 0).map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn any_symbol(&self, pred: impl Fn(&Sym) -> bool) -> bool {
        self.terms
            .keys()
            .any(|m| m.factors().iter().any(|(s, _)| pred(s)))
    }

    /// Extends a symbol-wise rule to the unique derivation agreeing with it:
    /// `D(s1^e1 ... sn^en) = sum_k e_k s_k^(e_k - 1) D(s_k) * (rest)`.
    pub fn derivation<F>(&self, mut on_symbol: F) -> DiffPoly
    where
        F: FnMut(&Sym) -> DiffPoly,
    {
        let mut cache: HashMap<&Sym, DiffPoly> = HashMap::new();
        let mut acc = BTreeMap::new();
        for (m, c) in &self.terms {
            for (pos, (s, e)) in m.factors().iter().enumerate() {
                let ds = cache.entry(s).or_insert_with(|| on_symbol(s));
                if ds.is_zero() {
                    continue;
                }
                let base = m.lower(pos);
                let coef = c * Rational::from_integer(BigInt::from(*e));
                for (m2, c2) in &ds.terms {
                    add_term(&mut acc, base.mul(m2), &coef * c2);
                }
            }
        }
        DiffPoly { terms: acc }
    }

    /// Partial derivative with respect to a single symbol, all other symbols
    /// held independent.
    pub fn partial(&self, sym: &Sym) -> DiffPoly {
        self.derivation(|s| if s == sym { DiffPoly::one() } else { DiffPoly::zero() })
    }

    pub fn eval(&self, at: &Point) -> Result<Rational, DiffPolyError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (s, e) in m.factors() {
                let x = at
                    .get(s)
                    .ok_or_else(|| DiffPolyError::Unassigned(s.to_string()))?;
                if *e < 0 && x.is_zero() {
                    return Err(DiffPolyError::DivisionByZero(s.to_string()));
                }
                v *= x.pow(*e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Groups terms by the part of each monomial built from symbols matching
    /// `pred`: `self = sum key * value` with no matching symbol in any value.
    pub fn collect(&self, pred: impl Fn(&Sym) -> bool) -> BTreeMap<Monomial, DiffPoly> {
        let mut out: BTreeMap<Monomial, DiffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (key, rest) = m.split(&pred);
            add_term(&mut out.entry(key).or_default().terms, rest, c.clone());
        }
        out
    }

    /// Replaces symbols by polynomials. A replaced symbol carrying a negative
    /// exponent must map to a unit.
    pub fn substitute(&self, map: &BTreeMap<Sym, DiffPoly>) -> Result<DiffPoly, DiffPolyError> {
        let mut acc = DiffPoly::zero();
        let mut powers: HashMap<(Sym, i32), DiffPoly> = HashMap::new();
        for (m, c) in &self.terms {
            let mut keep = Vec::new();
            let mut value = DiffPoly::constant(c.clone());
            for (s, e) in m.factors() {
                match map.get(s) {
                    None => keep.push((s.clone(), *e)),
                    Some(v) => {
                        let p = match powers.get(&(s.clone(), *e)) {
                            Some(p) => p.clone(),
                            None => {
                                let p = v.pow(*e)?;
                                powers.insert((s.clone(), *e), p.clone());
                                p
                            }
                        };
                        value = &value * &p;
                    }
                }
            }
            let rest = Monomial::from_factors(keep).expect("factors of a valid monomial");
            acc += value.mul_monomial(&rest);
        }
        Ok(acc)
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffPoly({self})")
    }
}

impl From<Sym> for DiffPoly {
    fn from(s: Sym) -> Self {
        DiffPoly::var(s)
    }
}

impl From<Rational> for DiffPoly {
    fn from(c: Rational) -> Self {
        DiffPoly::constant(c)
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            add_term(&mut self.terms, m.clone(), c.clone());
        }
    }
}

impl AddAssign<DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: DiffPoly) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
            return;
        }
        for (m, c) in rhs.terms {
            add_term(&mut self.terms, m, c);
        }
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            add_term(&mut self.terms, m.clone(), -c);
        }
    }
}

impl SubAssign<DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: DiffPoly) {
        for (m, c) in rhs.terms {
            add_term(&mut self.terms, m, -c);
        }
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(mut self) -> DiffPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Add<&DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut acc = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                add_term(&mut acc, m1.mul(m2), c1 * c2);
            }
        }
        DiffPoly { terms: acc }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $method(self, rhs: DiffPoly) -> DiffPoly { (&self).$method(&rhs) }
        }
        impl $tr<&DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $method(self, rhs: &DiffPoly) -> DiffPoly { (&self).$method(rhs) }
        }
        impl $tr<DiffPoly> for &DiffPoly {
            type Output = DiffPoly;
            fn $method(self, rhs: DiffPoly) -> DiffPoly { self.$method(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for DiffPoly {
    fn sum<I: Iterator<Item = DiffPoly>>(iter: I) -> Self {
        let mut acc = DiffPoly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}
