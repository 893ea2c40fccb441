use std::collections::BTreeSet;

use crate::diffpoly::{DiffPoly, Point, Sym};
use crate::jetspace::VectorField;
use crate::sample::Sampler;

/// Longest residual text kept in a witness.
const RESIDUAL_TEXT_LIMIT: usize = 4000;

/// One scalar equation `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct Component {
    pub label: String,
    pub lhs: DiffPoly,
    pub rhs: DiffPoly,
}

/// A conjunction of scalar equations checked exactly and at random points.
#[derive(Clone, Debug, Default)]
pub struct Identity {
    pub components: Vec<Component>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub point: Point,
    pub residual: String,
}

/// Result of verifying an [`Identity`].
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub passed: bool,
    /// Nonzero `lhs - rhs` per failing component.
    pub residual: Vec<(String, DiffPoly)>,
    pub witness: Option<Witness>,
    /// Number of random points at which both sides were compared.
    pub points_checked: usize,
}

impl Identity {
    pub fn scalar(lhs: DiffPoly, rhs: DiffPoly) -> Self {
        Identity {
            components: vec![Component {
                label: "value".into(),
                lhs,
                rhs,
            }],
        }
    }

    pub fn push(&mut self, label: impl Into<String>, lhs: DiffPoly, rhs: DiffPoly) {
        self.components.push(Component {
            label: label.into(),
            lhs,
            rhs,
        });
    }

    /// Coefficient-wise equality of two vector fields.
    pub fn fields(lhs: &VectorField, rhs: &VectorField) -> Self {
        Self::fields_labeled("", lhs, rhs)
    }

    pub fn fields_labeled(prefix: &str, lhs: &VectorField, rhs: &VectorField) -> Self {
        let dirs: BTreeSet<&Sym> = lhs
            .coefficients()
            .keys()
            .chain(rhs.coefficients().keys())
            .collect();
        let mut id = Identity::default();
        for d in dirs {
            id.push(
                format!("{prefix}d/d{d}"),
                lhs.coefficient(d),
                rhs.coefficient(d),
            );
        }
        id
    }

    pub fn extend(&mut self, other: Identity) {
        self.components.extend(other.components);
    }

    /// Decides the identity exactly, then cross-evaluates both sides at
    /// `points` random rational points.
    pub fn verify(&self, sampler: &mut Sampler, points: usize) -> CheckOutcome {
        let residual: Vec<(String, DiffPoly)> = self
            .components
            .iter()
            .map(|c| (c.label.clone(), &c.lhs - &c.rhs))
            .filter(|(_, r)| !r.is_zero())
            .collect();
        let mut syms = BTreeSet::new();
        let mut nonzero = BTreeSet::new();
        for c in &self.components {
            for p in [&c.lhs, &c.rhs] {
                syms.extend(p.symbols());
                nonzero.extend(p.inverted_symbols());
            }
        }
        let mut witness = None;
        let mut first_point = None;
        let mut checked = 0;
        for _ in 0..points {
            let pt = sampler.point(&syms, &nonzero);
            checked += 1;
            let bad = self.components.iter().find(|c| {
                // both sides are assigned and nonzero where inverted, so eval cannot fail
                c.lhs.eval(&pt).ok() != c.rhs.eval(&pt).ok()
            });
            if let Some(c) = bad {
                witness = Some(Witness {
                    point: pt,
                    residual: format!("{}: {}", c.label, truncate(&(&c.lhs - &c.rhs).to_string())),
                });
                break;
            }
            first_point.get_or_insert(pt);
        }
        if witness.is_none() && !residual.is_empty() {
            let (label, r) = &residual[0];
            witness = Some(Witness {
                point: first_point.unwrap_or_default(),
                residual: format!("{label}: {}", truncate(&r.to_string())),
            });
        }
        CheckOutcome {
            passed: residual.is_empty() && witness.is_none(),
            residual,
            witness,
            points_checked: checked,
        }
    }
}

fn truncate(s: &str) -> String {
    if s.len() <= RESIDUAL_TEXT_LIMIT {
        return s.to_string();
    }
    let mut cut = RESIDUAL_TEXT_LIMIT;
    while !s.is_char_boundary(cut) {
        cut -= 1;
    }
    format!("{} ... ({} chars total)", &s[..cut], s.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::int;

    #[test]
    fn true_identity_passes_at_all_points() {
        let t = DiffPoly::var(Sym::coord("t"));
        let lhs = &(&t + &DiffPoly::one()) * &(&t - &DiffPoly::one());
        let rhs = &(&t * &t) - &DiffPoly::one();
        let out = Identity::scalar(lhs, rhs).verify(&mut Sampler::new(3), 20);
        assert!(out.passed);
        assert_eq!(out.points_checked, 20);
        assert!(out.witness.is_none());
    }

    #[test]
    fn false_identity_reports_witness() {
        let t = DiffPoly::var(Sym::coord("t"));
        let out = Identity::scalar(&t * &t, t.scale(&int(2))).verify(&mut Sampler::new(3), 20);
        assert!(!out.passed);
        let w = out.witness.unwrap();
        assert!(w.residual.contains("t^2 - 2*t"));
        assert!(w.point.contains_key(&Sym::coord("t")));
    }
}
