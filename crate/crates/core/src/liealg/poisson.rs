use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::diffpoly::{DiffPoly, Sym};
use crate::jetspace::{Chart, VectorField};

use super::LieError;

/// Constant symplectic structures `sum dq ^ dp` on the built-in charts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PoissonStructure {
    /// dt ^ dz on M.
    OmegaM,
    /// dx ^ dz + dt ^ dy on TM.
    OmegaTM,
    /// dt ^ dy on (t, y) plus dx ^ dz on (x, z).
    ProductPbI,
    /// dx1 ^ dp1 + dx2 ^ dp2 + dx3 ^ dp3.
    SixD,
}

impl PoissonStructure {
    /// Canonical pairs `(q, p)` of the form `sum dq ^ dp`.
    pub fn pairs(&self) -> &'static [(&'static str, &'static str)] {
        match self {
            PoissonStructure::OmegaM => &[("t", "z")],
            PoissonStructure::OmegaTM => &[("x", "z"), ("t", "y")],
            PoissonStructure::ProductPbI => &[("t", "y"), ("x", "z")],
            PoissonStructure::SixD => &[("x1", "p1"), ("x2", "p2"), ("x3", "p3")],
        }
    }

    fn check(&self, chart: &Chart, exprs: &[&DiffPoly]) -> Result<(), LieError> {
        for (q, p) in self.pairs() {
            chart.coord_index(q)?;
            chart.coord_index(p)?;
        }
        for e in exprs {
            for s in e.symbols() {
                chart.check_sym(&s).map_err(|_| LieError::OutsideChart {
                    symbol: s.to_string(),
                    chart: chart.name().to_string(),
                })?;
            }
        }
        Ok(())
    }
}

/// `{A, B} = X_A(B)` where `i_{X_A} omega = dA`; on M this is
/// `A_z B_t - A_t B_z`.
pub fn poisson(a: &DiffPoly, b: &DiffPoly, s: PoissonStructure, chart: &Chart) -> Result<DiffPoly, LieError> {
    s.check(chart, &[a, b])?;
    let mut out = DiffPoly::zero();
    for (q, p) in s.pairs() {
        let (aq, ap) = (chart.pdiff(a, q)?, chart.pdiff(a, p)?);
        let (bq, bp) = (chart.pdiff(b, q)?, chart.pdiff(b, p)?);
        out += &ap * &bq;
        out -= &aq * &bp;
    }
    Ok(out)
}

/// The Hamiltonian field `X_H = sum H_p d/dq - H_q d/dp`.
pub fn ham_field(h: &DiffPoly, s: PoissonStructure, chart: &Arc<Chart>) -> Result<VectorField, LieError> {
    s.check(chart, &[h])?;
    let mut x = VectorField::zero(chart.clone());
    for (q, p) in s.pairs() {
        let hq = chart.pdiff(h, q)?;
        let hp = chart.pdiff(h, p)?;
        x.set(chart.coord(q)?, hp)?;
        x.set(chart.coord(p)?, -hq)?;
    }
    Ok(x)
}

/// k-fold application of `x d/dt + y d/dz`.
pub fn nabla(a: &DiffPoly, k: usize, chart: &Chart) -> Result<DiffPoly, LieError> {
    let (t, z) = (chart.coord_index("t")?, chart.coord_index("z")?);
    let x = DiffPoly::var(chart.coord("x")?);
    let y = DiffPoly::var(chart.coord("y")?);
    let mut out = a.clone();
    for _ in 0..k {
        out = &(&x * &chart.pdiff_at(&out, t)) + &(&y * &chart.pdiff_at(&out, z));
    }
    Ok(out)
}

/// Contraction `X(F)` of a field with `dF`, for building coboundaries.
pub fn contract(x: &VectorField, f: &DiffPoly) -> Result<DiffPoly, LieError> {
    Ok(x.act(f)?)
}

pub(crate) fn is_formal_of(s: &Sym, func: &str) -> bool {
    matches!(s, Sym::FJet(n, _) if &**n == func)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::int;
    use crate::jetspace::chart;

    #[test]
    fn bracket_examples_on_m() {
        let m = chart("M").unwrap();
        let (t, z) = (m.x("t"), m.x("z"));
        let a = m.f("A");
        assert!(poisson(&a, &DiffPoly::one(), PoissonStructure::OmegaM, &m).unwrap().is_zero());
        assert_eq!(poisson(&t, &z, PoissonStructure::OmegaM, &m).unwrap(), DiffPoly::int(-1));
        let lhs = poisson(&(&t * &t), &(&t * &z), PoissonStructure::OmegaM, &m).unwrap();
        assert_eq!(lhs, (&t * &t).scale(&int(-2)));
    }

    #[test]
    fn hamiltonian_fields() {
        let m = chart("M").unwrap();
        let a = m.f("A");
        let x = ham_field(&a, PoissonStructure::OmegaM, &m).unwrap();
        assert_eq!(x.coefficient(&m.coord("t").unwrap()), DiffPoly::var(m.fjet("A", &[0, 1]).unwrap()));
        assert_eq!(x.coefficient(&m.coord("z").unwrap()), -DiffPoly::var(m.fjet("A", &[1, 0]).unwrap()));

        let tm = chart("TM").unwrap();
        let f = ham_field(&tm.x("x"), PoissonStructure::OmegaTM, &tm).unwrap();
        let expect = VectorField::zero(tm.clone()).with("z", DiffPoly::int(-1));
        assert_eq!(f, expect);
    }

    #[test]
    fn nabla_powers() {
        let tm = chart("TM").unwrap();
        let a = tm.f("A");
        let j = |i, k| DiffPoly::var(tm.fjet("A", &[i, k]).unwrap());
        let (x, y) = (tm.x("x"), tm.x("y"));
        assert_eq!(nabla(&a, 1, &tm).unwrap(), &(&x * &j(1, 0)) + &(&y * &j(0, 1)));
        let x3 = x.pow(3).unwrap();
        let y3 = y.pow(3).unwrap();
        let expect = &(&x3 * &j(3, 0))
            + &(&(&(&x * &x) * &y).scale(&int(3)) * &j(2, 1))
            + (&(&(&x * &y) * &y).scale(&int(3)) * &j(1, 2))
            + (&y3 * &j(0, 3));
        assert_eq!(nabla(&a, 3, &tm).unwrap(), expect);
        assert!(nabla(&DiffPoly::one(), 2, &tm).unwrap().is_zero());
    }

    #[test]
    fn outside_chart_is_rejected() {
        let m = chart("M").unwrap();
        let stray = DiffPoly::var(Sym::coord("x"));
        assert!(matches!(
            poisson(&stray, &m.x("t"), PoissonStructure::OmegaM, &m),
            Err(LieError::OutsideChart { .. })
        ));
        assert!(ham_field(&m.x("t"), PoissonStructure::OmegaTM, &m).is_err());
    }
}
