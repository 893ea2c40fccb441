use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::diffpoly::{DiffPoly, Rational};
use crate::jetspace::{lie_bracket, Chart, VectorField};
use crate::sample::Sampler;

use super::check::{CheckOutcome, Identity};
use super::LieError;

pub type Constructor = Arc<dyn Fn(usize, &DiffPoly) -> Result<VectorField, LieError> + Send + Sync>;

/// One graded series of generators `X_i(A)`, linear in the Hamiltonian `A`.
#[derive(Clone)]
pub struct Species {
    grades: BTreeSet<usize>,
    build: Constructor,
}

/// Graded generator families with a truncation cutoff and optional fixed
/// (non-parametric) generators.
#[derive(Clone)]
pub struct GeneratorFamily {
    name: String,
    chart: Arc<Chart>,
    cutoff: Option<usize>,
    species: BTreeMap<String, Species>,
    fixed: BTreeMap<String, VectorField>,
}

/// A reference to a generator of a family.
#[derive(Clone, Debug)]
pub enum Gen {
    Graded {
        species: String,
        grade: usize,
        arg: DiffPoly,
    },
    Fixed(String),
}

impl Gen {
    pub fn graded(species: &str, grade: usize, arg: DiffPoly) -> Self {
        Gen::Graded {
            species: species.to_string(),
            grade,
            arg,
        }
    }

    pub fn fixed(name: &str) -> Self {
        Gen::Fixed(name.to_string())
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Graded { species, grade, .. } => write!(f, "{species}{grade}"),
            Gen::Fixed(n) => f.write_str(n),
        }
    }
}

/// `[left, right] = sum c_k expected_k`; an empty sum is the zero field.
#[derive(Clone, Debug)]
pub struct BracketCase {
    pub label: String,
    pub left: Gen,
    pub right: Gen,
    pub expected: Vec<(Rational, Gen)>,
}

impl BracketCase {
    pub fn new(left: Gen, right: Gen, expected: Vec<(Rational, Gen)>) -> Self {
        BracketCase {
            label: format!("[{left}, {right}]"),
            left,
            right,
            expected,
        }
    }
}

impl GeneratorFamily {
    pub fn new(name: &str, chart: Arc<Chart>, cutoff: Option<usize>) -> Self {
        GeneratorFamily {
            name: name.to_string(),
            chart,
            cutoff,
            species: BTreeMap::new(),
            fixed: BTreeMap::new(),
        }
    }

    pub fn with_species<F>(mut self, name: &str, grades: impl IntoIterator<Item = usize>, build: F) -> Self
    where
        F: Fn(usize, &DiffPoly) -> Result<VectorField, LieError> + Send + Sync + 'static,
    {
        self.species.insert(
            name.to_string(),
            Species {
                grades: grades.into_iter().collect(),
                build: Arc::new(build),
            },
        );
        self
    }

    pub fn with_fixed(mut self, name: &str, field: VectorField) -> Self {
        self.fixed.insert(name.to_string(), field);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn cutoff(&self) -> Option<usize> {
        self.cutoff
    }

    pub fn grades(&self, species: &str) -> Option<&BTreeSet<usize>> {
        self.species.get(species).map(|s| &s.grades)
    }

    pub fn fixed_names(&self) -> impl Iterator<Item = &str> {
        self.fixed.keys().map(String::as_str)
    }

    /// `X_grade(arg)`; gradings above the cutoff are the zero field.
    pub fn field(&self, species: &str, grade: usize, arg: &DiffPoly) -> Result<VectorField, LieError> {
        let sp = self
            .species
            .get(species)
            .ok_or_else(|| LieError::UnknownGenerator(format!("{}::{species}", self.name)))?;
        if self.cutoff.is_some_and(|k| grade > k) {
            return Ok(VectorField::zero(self.chart.clone()));
        }
        if !sp.grades.contains(&grade) {
            return Err(LieError::GradeOutsideFamily {
                family: self.name.clone(),
                grade,
            });
        }
        (sp.build)(grade, arg)
    }

    pub fn realize(&self, g: &Gen) -> Result<VectorField, LieError> {
        match g {
            Gen::Graded { species, grade, arg } => self.field(species, *grade, arg),
            Gen::Fixed(n) => self
                .fixed
                .get(n)
                .cloned()
                .ok_or_else(|| LieError::UnknownGenerator(format!("{}::{n}", self.name))),
        }
    }

    fn combination(&self, terms: &[(Rational, Gen)]) -> Result<VectorField, LieError> {
        let mut out = VectorField::zero(self.chart.clone());
        for (c, g) in terms {
            out = out.add(&self.realize(g)?.scale(c))?;
        }
        Ok(out)
    }

    fn check_ref(&self, g: &Gen) -> Result<(), LieError> {
        match g {
            Gen::Graded { species, grade, .. } => {
                let sp = self
                    .species
                    .get(species)
                    .ok_or_else(|| LieError::UnknownGenerator(format!("{}::{species}", self.name)))?;
                if !sp.grades.contains(grade) {
                    return Err(LieError::GradeOutsideFamily {
                        family: self.name.clone(),
                        grade: *grade,
                    });
                }
                Ok(())
            }
            Gen::Fixed(n) if self.fixed.contains_key(n) => Ok(()),
            Gen::Fixed(n) => Err(LieError::UnknownGenerator(format!("{}::{n}", self.name))),
        }
    }

    /// The identity `[left, right] = expected` as field components.
    pub fn bracket_identity(&self, case: &BracketCase) -> Result<Identity, LieError> {
        self.check_ref(&case.left)?;
        self.check_ref(&case.right)?;
        let lhs = lie_bracket(&self.realize(&case.left)?, &self.realize(&case.right)?)?;
        let rhs = self.combination(&case.expected)?;
        Ok(Identity::fields(&lhs, &rhs))
    }
}

/// Checks every bracket relation of a table. Pairs run concurrently; the
/// result keeps the order of `cases`.
pub fn check_bracket_table(
    family: &GeneratorFamily,
    cases: &[BracketCase],
    seed: u64,
    points: usize,
) -> Result<Vec<(String, CheckOutcome)>, LieError> {
    cases
        .par_iter()
        .map(|case| {
            let id = family.bracket_identity(case)?;
            let mut sampler = Sampler::derived(seed, &format!("{}{}", family.name, case.label));
            Ok((case.label.clone(), id.verify(&mut sampler, points)))
        })
        .collect()
}

/// Table rows `[X_i(A), X_j(B)] = X_{i+j}({A, B})` for all grades of a species.
pub fn graded_homomorphism_cases(
    family: &GeneratorFamily,
    species: &str,
    a: &DiffPoly,
    b: &DiffPoly,
    ab: &DiffPoly,
) -> Vec<BracketCase> {
    let grades: Vec<usize> = family
        .grades(species)
        .map(|g| g.iter().copied().collect())
        .unwrap_or_default();
    let mut out = Vec::new();
    for &i in &grades {
        for &j in &grades {
            let k = i + j;
            let expected = if grades.contains(&k) {
                vec![(crate::diffpoly::int(1), Gen::graded(species, k, ab.clone()))]
            } else {
                vec![]
            };
            out.push(BracketCase::new(
                Gen::graded(species, i, a.clone()),
                Gen::graded(species, j, b.clone()),
                expected,
            ));
        }
    }
    out
}
