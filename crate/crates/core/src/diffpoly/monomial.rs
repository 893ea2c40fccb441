use std::cmp::Ordering;
use std::fmt;

use super::sym::Sym;

/// Product of symbol powers, stored sorted by symbol with no zero exponents.
///
/// Negative exponents are only ever present on `Coord` and `Param` symbols;
/// the constructors that could introduce them check this.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(Sym, i32)>,
    degree: i64,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(sym: Sym) -> Self {
        Self::pow_of(sym, 1)
    }

    pub fn pow_of(sym: Sym, exp: i32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        debug_assert!(exp > 0 || !sym.is_jet());
        Monomial {
            factors: vec![(sym, exp)],
            degree: exp as i64,
        }
    }

    /// Builds a monomial from arbitrary factors, merging repeats.
    /// Returns `None` if a jet symbol would end up with a negative exponent.
    pub fn from_factors<I: IntoIterator<Item = (Sym, i32)>>(factors: I) -> Option<Self> {
        let mut v: Vec<(Sym, i32)> = factors.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Sym, i32)> = Vec::with_capacity(v.len());
        for (s, e) in v {
            match out.last_mut() {
                Some((last, le)) if *last == s => *le += e,
                _ => out.push((s, e)),
            }
        }
        out.retain(|(_, e)| *e != 0);
        if out.iter().any(|(s, e)| *e < 0 && s.is_jet()) {
            return None;
        }
        let degree = out.iter().map(|(_, e)| *e as i64).sum();
        Some(Monomial {
            factors: out,
            degree,
        })
    }

    pub fn factors(&self) -> &[(Sym, i32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Sum of exponents (may be negative for Laurent monomials).
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn exponent(&self, sym: &Sym) -> i32 {
        self.factors
            .binary_search_by(|(s, _)| s.cmp(sym))
            .map(|k| self.factors[k].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial {
            factors: out,
            degree: self.degree + other.degree,
        }
    }

    /// Lowers the exponent of `sym` by one. The caller guarantees `sym` is present.
    pub(crate) fn lower(&self, pos: usize) -> Monomial {
        let mut factors = self.factors.clone();
        factors[pos].1 -= 1;
        if factors[pos].1 == 0 {
            factors.remove(pos);
        }
        Monomial {
            factors,
            degree: self.degree - 1,
        }
    }

    /// Multiplicative inverse, defined only when no jet symbol is present.
    pub fn inverse(&self) -> Option<Monomial> {
        if self.factors.iter().any(|(s, _)| s.is_jet()) {
            return None;
        }
        Some(Monomial {
            factors: self.factors.iter().map(|(s, e)| (s.clone(), -e)).collect(),
            degree: -self.degree,
        })
    }

    pub fn pow(&self, n: i32) -> Option<Monomial> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        if n == 0 {
            return Some(Monomial::one());
        }
        Some(Monomial {
            factors: self.factors.iter().map(|(s, e)| (s.clone(), e * n)).collect(),
            degree: self.degree * n as i64,
        })
    }

    /// Splits into (factors matching `pred`, the rest).
    pub fn split(&self, pred: impl Fn(&Sym) -> bool) -> (Monomial, Monomial) {
        let (hit, miss): (Vec<_>, Vec<_>) = self.factors.iter().cloned().partition(|(s, _)| pred(s));
        let mk = |f: Vec<(Sym, i32)>| {
            let degree = f.iter().map(|(_, e)| *e as i64).sum();
            Monomial { factors: f, degree }
        };
        (mk(hit), mk(miss))
    }
}

/// Graded lexicographic: total degree first, then exponent vectors compared
/// lexicographically along the symbol order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let (a, b) = (&self.factors, &other.factors);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some((_, ea)), None) => return ea.cmp(&0),
                    (None, Some((_, eb))) => return 0.cmp(eb),
                    (Some((sa, ea)), Some((sb, eb))) => match sa.cmp(sb) {
                        Ordering::Equal => {
                            if ea != eb {
                                return ea.cmp(eb);
                            }
                            i += 1;
                            j += 1;
                        }
                        Ordering::Less => return ea.cmp(&0),
                        Ordering::Greater => return 0.cmp(eb),
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (s, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Sym {
        Sym::coord("t")
    }
    fn z() -> Sym {
        Sym::coord("z")
    }

    #[test]
    fn laurent_cancellation_gives_unit() {
        let x = Sym::coord("x");
        let m = Monomial::var(x.clone()).mul(&Monomial::pow_of(x, -1));
        assert!(m.is_one());
        assert_eq!(m.degree(), 0);
    }

    #[test]
    fn jets_cannot_be_inverted() {
        let m = Monomial::var(Sym::ujet("u", &[1, 0]));
        assert!(m.inverse().is_none());
        assert!(Monomial::from_factors([(Sym::fjet("A", &[0, 0]), -1)]).is_none());
    }

    #[test]
    fn grlex_compares_degree_then_lex() {
        let t2 = Monomial::pow_of(t(), 2);
        let tz = Monomial::var(t()).mul(&Monomial::var(z()));
        let z1 = Monomial::var(z());
        assert!(z1 < tz);
        assert!(tz < t2);
        assert_eq!(t2.cmp(&t2.clone()), Ordering::Equal);
    }
}
