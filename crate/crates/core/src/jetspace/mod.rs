//! Charts, total derivatives, point vector fields and their prolongations.

mod chart;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::diffpoly::{DiffPoly, MultiIndex, Sym};

pub use chart::{chart, chart_names, multi_indexes, Chart, ChartBuilder, FunctionDecl};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("unknown coordinate {0}")]
    UnknownCoordinate(String),
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("unknown chart {0}")]
    UnknownChart(String),
    #[error("{symbol} takes {expected} indexes, got {got}")]
    Arity {
        symbol: String,
        expected: usize,
        got: usize,
    },
    #[error("bad chart declaration: {0}")]
    Declaration(String),
    #[error("prolongation needs exactly one dependent variable, chart has {0}")]
    NotSingleDependent(usize),
    #[error("not a point field: coefficient of {0} involves derivatives of the dependent variable")]
    NotPointField(String),
    #[error("{0} is not a direction of a point field")]
    BadDirection(String),
    #[error("jet {symbol} has order {order}, field is prolonged only to order {max}")]
    OrderOverflow {
        symbol: String,
        order: usize,
        max: usize,
    },
    #[error("fields live on different charts ({0} vs {1})")]
    ChartMismatch(String, String),
}

/// A vector field on J^0: coefficients on the base coordinate directions and
/// the dependent-variable directions (keys are `Coord` and zero-order `UJet`
/// symbols). Missing keys mean a zero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    chart: Arc<Chart>,
    coeffs: BTreeMap<Sym, DiffPoly>,
}

impl VectorField {
    pub fn zero(chart: Arc<Chart>) -> Self {
        VectorField {
            chart,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    /// Sets the coefficient on a direction, validating the direction.
    pub fn set(&mut self, dir: Sym, coeff: DiffPoly) -> Result<(), JetError> {
        match &dir {
            Sym::Coord(_) => self.chart.check_sym(&dir)?,
            Sym::UJet(_, idx) if idx.iter().all(|&i| i == 0) => self.chart.check_sym(&dir)?,
            _ => return Err(JetError::BadDirection(dir.to_string())),
        }
        if coeff.is_zero() {
            self.coeffs.remove(&dir);
        } else {
            self.coeffs.insert(dir, coeff);
        }
        Ok(())
    }

    /// Builder form of [`set`](Self::set) by coordinate or dependent name;
    /// panics on an unknown name.
    pub fn with(mut self, name: &str, coeff: DiffPoly) -> Self {
        let dir = self.chart.resolve(name).expect("direction on this chart");
        self.set(dir, coeff).expect("valid direction");
        self
    }

    pub fn coefficient(&self, dir: &Sym) -> DiffPoly {
        self.coeffs.get(dir).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &BTreeMap<Sym, DiffPoly> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients depend only on coordinates, 0-jets, formal functions and
    /// parameters.
    pub fn is_point_field(&self) -> bool {
        self.coeffs
            .values()
            .all(|c| !c.any_symbol(|s| matches!(s, Sym::UJet(..)) && s.order() > 0))
    }

    pub fn scale(&self, c: &crate::diffpoly::Rational) -> VectorField {
        self.map(|p| p.scale(c))
    }

    pub fn map(&self, f: impl Fn(&DiffPoly) -> DiffPoly) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), f(v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField, JetError> {
        self.same_chart(other)?;
        let mut coeffs = self.coeffs.clone();
        for (k, v) in &other.coeffs {
            let e = coeffs.entry(k.clone()).or_default();
            *e += v;
            if e.is_zero() {
                coeffs.remove(k);
            }
        }
        Ok(VectorField {
            chart: self.chart.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField, JetError> {
        self.add(&other.scale(&crate::diffpoly::int(-1)))
    }

    fn same_chart(&self, other: &VectorField) -> Result<(), JetError> {
        if self.chart.name() != other.chart.name() {
            return Err(JetError::ChartMismatch(
                self.chart.name().to_string(),
                other.chart.name().to_string(),
            ));
        }
        Ok(())
    }

    /// Value of the field as a derivation on one symbol.
    fn on_symbol(&self, s: &Sym) -> Result<DiffPoly, JetError> {
        match s {
            Sym::Coord(_) => Ok(self.coefficient(s)),
            Sym::Param(_) => Ok(DiffPoly::zero()),
            Sym::UJet(..) if s.order() == 0 => Ok(self.coefficient(s)),
            Sym::UJet(..) => Err(JetError::OrderOverflow {
                symbol: s.to_string(),
                order: s.order(),
                max: 0,
            }),
            Sym::FJet(..) => Ok(self.on_formal_jet(s)),
        }
    }

    /// `X(f_sigma) = sum_k xi^{dep_k} f_{sigma + 1_k}`: formal functions
    /// depend on base coordinates only.
    fn on_formal_jet(&self, s: &Sym) -> DiffPoly {
        let Sym::FJet(name, idx) = s else {
            unreachable!()
        };
        let Some(decl) = self.chart.function(name) else {
            return DiffPoly::zero();
        };
        let mut out = DiffPoly::zero();
        for (slot, &k) in decl.deps.iter().enumerate() {
            let xi = self.coefficient(&Sym::Coord(self.chart.coords()[k].clone()));
            if xi.is_zero() {
                continue;
            }
            let mut next = idx.clone();
            next[slot] += 1;
            out += &xi * &DiffPoly::var(Sym::FJet(name.clone(), next));
        }
        out
    }

    /// Applies the field as a derivation to a function on J^0.
    pub fn act(&self, p: &DiffPoly) -> Result<DiffPoly, JetError> {
        let mut err = None;
        let out = p.derivation(|s| match self.on_symbol(s) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                DiffPoly::zero()
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, (dir, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*d/d{dir}")?;
        }
        Ok(())
    }
}

/// `[X, Y]^s = X(Y^s) - Y(X^s)` on every direction `s`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, JetError> {
    x.same_chart(y)?;
    let mut out = VectorField::zero(x.chart.clone());
    let dirs: std::collections::BTreeSet<&Sym> = x.coeffs.keys().chain(y.coeffs.keys()).collect();
    for dir in dirs {
        let c = &x.act(&y.coefficient(dir))? - &y.act(&x.coefficient(dir))?;
        if !c.is_zero() {
            out.coeffs.insert(dir.clone(), c);
        }
    }
    Ok(out)
}

/// A point field lifted to the jet space of order `order`.
#[derive(Clone, Debug)]
pub struct ProlongedField {
    base: VectorField,
    order: usize,
    /// phi^sigma for every multi-index with |sigma| <= order, sigma = 0 included.
    jets: BTreeMap<MultiIndex, DiffPoly>,
}

impl ProlongedField {
    pub fn base(&self) -> &VectorField {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn jet_coefficient(&self, sigma: &[u8]) -> Option<&DiffPoly> {
        self.jets.get(&MultiIndex::from_slice(sigma))
    }

    pub fn jet_coefficients(&self) -> &BTreeMap<MultiIndex, DiffPoly> {
        &self.jets
    }

    /// Every direction and coefficient: coordinates, then all jet directions.
    pub fn directions(&self) -> Vec<(Sym, DiffPoly)> {
        let chart = self.base.chart();
        let dep = chart.sole_dependent().expect("prolonged on a single-dependent chart");
        let mut out: Vec<(Sym, DiffPoly)> = chart
            .coords()
            .iter()
            .map(|c| {
                let s = Sym::Coord(c.clone());
                let v = self.base.coefficient(&s);
                (s, v)
            })
            .collect();
        for (idx, v) in &self.jets {
            out.push((Sym::UJet(dep.clone(), idx.clone()), v.clone()));
        }
        out
    }

    fn on_symbol(&self, s: &Sym) -> Result<DiffPoly, JetError> {
        match s {
            Sym::UJet(_, idx) => {
                if s.order() > self.order {
                    return Err(JetError::OrderOverflow {
                        symbol: s.to_string(),
                        order: s.order(),
                        max: self.order,
                    });
                }
                Ok(self.jets.get(idx).cloned().unwrap_or_default())
            }
            _ => self.base.on_symbol(s),
        }
    }

    /// The prolonged field as a derivation on jet-space functions.
    pub fn apply(&self, p: &DiffPoly) -> Result<DiffPoly, JetError> {
        let mut err = None;
        let out = p.derivation(|s| match self.on_symbol(s) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                DiffPoly::zero()
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// Commutator of two prolonged fields on all directions up to the common
    /// order (coordinates first, then jets).
    pub fn bracket(&self, other: &ProlongedField) -> Result<Vec<(Sym, DiffPoly)>, JetError> {
        self.base.same_chart(&other.base)?;
        let mine: BTreeMap<Sym, DiffPoly> = self.directions().into_iter().collect();
        let theirs: BTreeMap<Sym, DiffPoly> = other.directions().into_iter().collect();
        let order = self.order.min(other.order);
        let mut out = Vec::new();
        for (dir, a) in &mine {
            if dir.order() > order {
                continue;
            }
            let b = theirs.get(dir).cloned().unwrap_or_default();
            out.push((dir.clone(), &self.apply(&b)? - &other.apply(a)?));
        }
        Ok(out)
    }
}

/// Prolongs a point field by the recursion
/// `phi^{sigma+1_i} = D_i(phi^sigma) - sum_j D_i(xi^j) u_{sigma+1_j}`.
pub fn prolong(x: &VectorField, order: usize) -> Result<ProlongedField, JetError> {
    let chart = x.chart().clone();
    let dep = chart.sole_dependent()?.clone();
    for (dir, c) in x.coefficients() {
        if c.any_symbol(|s| matches!(s, Sym::UJet(..)) && s.order() > 0) {
            return Err(JetError::NotPointField(dir.to_string()));
        }
    }
    let n = chart.dim();
    let xi: Vec<DiffPoly> = chart
        .coords()
        .iter()
        .map(|c| x.coefficient(&Sym::Coord(c.clone())))
        .collect();
    // D_i(xi^j), computed once
    let dxi: Vec<Vec<DiffPoly>> = (0..n)
        .map(|i| xi.iter().map(|c| chart.total_derivative_at(c, i)).collect())
        .collect();
    let zero: MultiIndex = std::iter::repeat_n(0, n).collect();
    let mut jets = BTreeMap::new();
    jets.insert(zero.clone(), x.coefficient(&Sym::UJet(dep.clone(), zero)));
    for k in 1..=order {
        for sigma in chart.multi_indexes(k) {
            let i = sigma.iter().position(|&s| s > 0).expect("order >= 1");
            let mut parent = sigma.clone();
            parent[i] -= 1;
            let mut phi = chart.total_derivative_at(&jets[&parent], i);
            for (j, d) in dxi[i].iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                let mut up = parent.clone();
                up[j] += 1;
                phi -= d * &DiffPoly::var(Sym::UJet(dep.clone(), up));
            }
            jets.insert(sigma, phi);
        }
    }
    Ok(ProlongedField {
        base: x.clone(),
        order,
        jets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::int;

    fn tm() -> Arc<Chart> {
        chart("TM").unwrap()
    }

    #[test]
    fn pdiff_examples() {
        let c = tm();
        let p = &(&c.x("t") * &c.x("t")) * &c.x("z");
        assert_eq!(c.pdiff(&p, "t").unwrap(), (&c.x("t") * &c.x("z")).scale(&int(2)));

        let a10 = DiffPoly::var(c.fjet("A", &[1, 0]).unwrap());
        let a20 = DiffPoly::var(c.fjet("A", &[2, 0]).unwrap());
        assert_eq!(c.pdiff(&(&c.x("x") * &a10), "t").unwrap(), &c.x("x") * &a20);

        let ux = DiffPoly::var(c.ujet("u", &[0, 0, 1, 0]).unwrap());
        assert!(c.pdiff(&ux, "x").unwrap().is_zero());
        assert!(matches!(c.pdiff(&ux, "w"), Err(JetError::UnknownCoordinate(_))));
    }

    #[test]
    fn total_derivative_examples() {
        let c = tm();
        assert_eq!(c.total_derivative(&c.u(""), "t").unwrap(), c.u("t"));
        let p = &c.x("t") * &c.u("y");
        assert_eq!(c.total_derivative(&p, "x").unwrap(), &c.x("t") * &c.u("xy"));
        let a01 = DiffPoly::var(c.fjet("A", &[0, 1]).unwrap());
        assert!(c.total_derivative(&a01, "x").unwrap().is_zero());
        assert_eq!(
            c.total_derivative(&a01, "t").unwrap(),
            DiffPoly::var(c.fjet("A", &[1, 1]).unwrap())
        );
    }

    #[test]
    fn prolong_vertical_translation_is_flat() {
        let c = tm();
        let du = VectorField::zero(c.clone()).with("u", DiffPoly::one());
        let pr = prolong(&du, 2).unwrap();
        for (idx, phi) in pr.jet_coefficients() {
            let ord: u8 = idx.iter().sum();
            if ord > 0 {
                assert!(phi.is_zero());
            }
        }
    }

    #[test]
    fn prolong_scaling_first_order() {
        let c = tm();
        let f = VectorField::zero(c.clone()).with("u", c.u(""));
        let pr = prolong(&f, 1).unwrap();
        assert_eq!(pr.jet_coefficient(&[1, 0, 0, 0]).unwrap(), &c.u("t"));
    }

    #[test]
    fn translation_fixes_jet_coordinates() {
        let c = tm();
        let dt = VectorField::zero(c.clone()).with("t", DiffPoly::one());
        let pr = prolong(&dt, 1).unwrap();
        assert!(pr.apply(&c.u("t")).unwrap().is_zero());
    }

    #[test]
    fn apply_rejects_jets_above_order() {
        let c = tm();
        let dt = VectorField::zero(c.clone()).with("t", DiffPoly::one());
        let pr = prolong(&dt, 1).unwrap();
        assert!(matches!(pr.apply(&c.u("tt")), Err(JetError::OrderOverflow { .. })));
    }

    #[test]
    fn prolong_rejects_contact_coefficients() {
        let c = tm();
        let f = VectorField::zero(c.clone()).with("t", c.u("x"));
        assert!(matches!(prolong(&f, 1), Err(JetError::NotPointField(_))));
        let two = Chart::builder("two", &["t"]).dependent("u").dependent("v").build().unwrap();
        let g = VectorField::zero(Arc::new(two)).with("t", DiffPoly::one());
        assert!(matches!(prolong(&g, 1), Err(JetError::NotSingleDependent(2))));
    }

    #[test]
    fn bracket_examples() {
        let c = tm();
        let dt = VectorField::zero(c.clone()).with("t", DiffPoly::one());
        let tdt = VectorField::zero(c.clone()).with("t", c.x("t"));
        assert_eq!(lie_bracket(&dt, &tdt).unwrap(), dt);

        let a = VectorField::zero(c.clone()).with("u", c.f("A"));
        let b = VectorField::zero(c.clone()).with("u", c.f("B"));
        assert!(lie_bracket(&a, &b).unwrap().is_zero());

        let m = chart("M").unwrap();
        let other = VectorField::zero(m).with("t", DiffPoly::one());
        assert!(matches!(lie_bracket(&dt, &other), Err(JetError::ChartMismatch(..))));
    }

    #[test]
    fn bad_directions_and_arity() {
        let c = tm();
        let mut f = VectorField::zero(c.clone());
        assert!(f.set(c.u_sym("t"), DiffPoly::one()).is_err());
        assert!(matches!(c.fjet("A", &[1]), Err(JetError::Arity { expected: 2, got: 1, .. })));
        assert!(Chart::builder("bad", &["t"]).function("A", &["s"]).build().is_err());
        assert!(Chart::builder("dup", &["t", "t"]).build().is_err());
    }

    #[test]
    fn multi_index_counts() {
        assert_eq!(multi_indexes(4, 2).len(), 10);
        assert_eq!(multi_indexes(4, 3).len(), 20);
        assert_eq!(multi_indexes(2, 0).len(), 1);
    }
}
