#![allow(dead_code)]

use std::collections::BTreeMap;

use heavenly_core::diffpoly::{rat, Point};
use heavenly_core::{Chart, DiffPoly, Monomial, Rational, Sym, VectorField};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=5, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

/// Sums of up to `terms` monomials in `gens`; exponents in `lo..=2`, with
/// negative exponents dropped on jet symbols.
pub fn poly(gens: Vec<Sym>, terms: usize, lo: i32) -> impl Strategy<Value = DiffPoly> {
    let n = gens.len();
    prop::collection::vec((rational(), prop::collection::vec(lo..=2i32, n)), 0..=terms).prop_map(move |ts| {
        DiffPoly::from_terms(ts.into_iter().map(|(c, exps)| {
            let m = Monomial::from_factors(
                gens.iter().cloned().zip(exps).map(|(s, e)| if s.is_jet() { (s, e.max(0)) } else { (s, e) }),
            )
            .expect("jets kept nonnegative");
            (m, c)
        }))
    })
}

/// Polynomials of total degree at most `deg`: each term multiplies up to
/// `deg` generators chosen with repetition.
pub fn poly_deg(gens: Vec<Sym>, terms: usize, deg: usize) -> impl Strategy<Value = DiffPoly> {
    let n = gens.len();
    prop::collection::vec((nonzero_rational(), prop::collection::vec(0..n, 0..=deg)), 1..=terms).prop_map(move |ts| {
        DiffPoly::from_terms(ts.into_iter().map(|(c, picks)| {
            let m = Monomial::from_factors(picks.into_iter().map(|i| (gens[i].clone(), 1))).expect("positive");
            (m, c)
        }))
    })
}

pub fn point(syms: Vec<Sym>) -> impl Strategy<Value = Point> {
    prop::collection::vec(nonzero_rational(), syms.len())
        .prop_map(move |vals| syms.iter().cloned().zip(vals).collect::<BTreeMap<_, _>>())
}

/// Point fields of polynomial degree at most 2 in the coordinates and `u`.
pub fn point_field(chart: std::sync::Arc<Chart>) -> impl Strategy<Value = VectorField> {
    let mut gens: Vec<Sym> = chart.coords().iter().map(|c| Sym::Coord(c.clone())).collect();
    gens.push(chart.u_sym(""));
    let dirs = gens.clone();
    prop::collection::vec(poly_deg(gens, 3, 2), dirs.len()).prop_map(move |cs| {
        let mut x = VectorField::zero(chart.clone());
        for (d, c) in dirs.iter().zip(cs) {
            x.set(d.clone(), c).unwrap();
        }
        x
    })
}

pub fn fjets(chart: &Chart, func: &str, max_order: u8) -> Vec<Sym> {
    let mut out = Vec::new();
    for i in 0..=max_order {
        for k in 0..=max_order - i {
            out.push(chart.fjet(func, &[i, k]).unwrap());
        }
    }
    out
}
