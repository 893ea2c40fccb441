use std::collections::BTreeMap;

use crate::diffpoly::{DiffPoly, MultiIndex, Sym};
use crate::jetspace::Chart;
use crate::sample::Sampler;

use super::check::{CheckOutcome, Identity};
use super::family::GeneratorFamily;
use super::poisson::{is_formal_of, poisson, PoissonStructure};
use super::LieError;

/// `Psi(A) = sum lambda_sigma A_sigma`, written against the formal function
/// `func` and applicable to any expression in the same coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearOperatorSpec {
    func: String,
    terms: Vec<(MultiIndex, DiffPoly)>,
}

impl LinearOperatorSpec {
    pub fn new(chart: &Chart, func: &str, terms: Vec<(MultiIndex, DiffPoly)>) -> Result<Self, LieError> {
        let decl = chart
            .function(func)
            .ok_or_else(|| LieError::UnknownGenerator(func.to_string()))?;
        for (sigma, coeff) in &terms {
            if sigma.len() != decl.deps.len() {
                return Err(crate::jetspace::JetError::Arity {
                    symbol: func.to_string(),
                    expected: decl.deps.len(),
                    got: sigma.len(),
                }
                .into());
            }
            for s in coeff.symbols() {
                if is_formal_of(&s, func) {
                    return Err(LieError::OperandJet(s.to_string()));
                }
                chart.check_sym(&s)?;
            }
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LinearOperatorSpec {
            func: func.to_string(),
            terms,
        })
    }

    /// Reads the operator off an expression linear in the jets of `func`.
    pub fn from_expr(chart: &Chart, func: &str, expr: &DiffPoly) -> Result<Self, LieError> {
        let mut terms = Vec::new();
        for (key, coeff) in expr.collect(|s| is_formal_of(s, func)) {
            match key.factors() {
                [(Sym::FJet(_, idx), 1)] => terms.push((idx.clone(), coeff)),
                _ => return Err(LieError::NotLinear(func.to_string())),
            }
        }
        Self::new(chart, func, terms)
    }

    pub fn func(&self) -> &str {
        &self.func
    }

    pub fn terms(&self) -> &[(MultiIndex, DiffPoly)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn apply(&self, chart: &Chart, p: &DiffPoly) -> Result<DiffPoly, LieError> {
        let mut out = DiffPoly::zero();
        for (sigma, coeff) in &self.terms {
            out += coeff * &chart.pdiff_multi(p, &self.func, sigma)?;
        }
        Ok(out)
    }
}

/// A cochain on a graded algebra; absent grades are zero.
#[derive(Clone, Debug, Default)]
pub struct GradedOperator {
    components: BTreeMap<usize, LinearOperatorSpec>,
}

impl GradedOperator {
    pub fn single(op: LinearOperatorSpec) -> Self {
        Self::default().with(0, op)
    }

    pub fn with(mut self, grade: usize, op: LinearOperatorSpec) -> Self {
        self.components.insert(grade, op);
        self
    }

    pub fn component(&self, grade: usize) -> Option<&LinearOperatorSpec> {
        self.components.get(&grade)
    }

    pub fn apply(&self, chart: &Chart, grade: usize, p: &DiffPoly) -> Result<DiffPoly, LieError> {
        match self.components.get(&grade) {
            Some(op) => op.apply(chart, p),
            None => Ok(DiffPoly::zero()),
        }
    }
}

/// Expands `X_i(A)(Psi_j(B)) - X_j(B)(Psi_i(A)) = Psi_{i+j}({A, B})` for
/// every pair of grades of `species`, with `A`, `B` formal. Grades past the
/// family cutoff make the right side vanish.
pub fn cocycle_identity(
    psi: &GradedOperator,
    family: &GeneratorFamily,
    species: &str,
    bracket: PoissonStructure,
    operands: (&str, &str),
) -> Result<Identity, LieError> {
    let chart = family.chart();
    let (fa, fb) = operands;
    let a = formal(chart, fa)?;
    let b = formal(chart, fb)?;
    for op in psi.components.values() {
        let want = &chart.function(op.func()).map(|d| &d.deps);
        for f in [fa, fb] {
            if chart.function(f).map(|d| &d.deps) != *want {
                return Err(LieError::OperandJet(format!("{f} has different dependencies than {}", op.func())));
            }
        }
    }
    let grades: Vec<usize> = family
        .grades(species)
        .ok_or_else(|| LieError::UnknownGenerator(format!("{}::{species}", family.name())))?
        .iter()
        .copied()
        .collect();
    let ab = poisson(&a, &b, bracket, chart)?;
    let mut id = Identity::default();
    for &i in &grades {
        for &j in &grades {
            let xa = family.field(species, i, &a)?;
            let xb = family.field(species, j, &b)?;
            let lhs = xa.act(&psi.apply(chart, j, &b)?)? - xb.act(&psi.apply(chart, i, &a)?)?;
            let k = i + j;
            let rhs = if family.cutoff().is_some_and(|c| k > c) {
                DiffPoly::zero()
            } else {
                psi.apply(chart, k, &ab)?
            };
            id.push(format!("({i},{j})"), lhs, rhs);
        }
    }
    Ok(id)
}

pub fn check_cocycle(
    psi: &GradedOperator,
    family: &GeneratorFamily,
    species: &str,
    bracket: PoissonStructure,
    operands: (&str, &str),
    sampler: &mut Sampler,
    points: usize,
) -> Result<CheckOutcome, LieError> {
    let id = cocycle_identity(psi, family, species, bracket, operands)?;
    Ok(id.verify(sampler, points))
}

fn formal(chart: &Chart, func: &str) -> Result<DiffPoly, LieError> {
    let decl = chart
        .function(func)
        .ok_or_else(|| LieError::UnknownGenerator(func.to_string()))?;
    Ok(DiffPoly::var(chart.fjet(func, &vec![0; decl.deps.len()])?))
}
