use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_traits::Zero;

use crate::diffpoly::{DiffPoly, Point, Rational, Sym};
use crate::liealg::{solve_exact, LieError};
use crate::sample::Sampler;

use super::catalog::{e, i3, tm, E_COORDS};
use super::PlebanskiError;

/// A derivation `sum_a C^a D_a` over `(D_t, D_x, D_y, D_z)`.
pub type Derivation = [DiffPoly; 4];

/// Placeholder symbols standing for `E_1..E_4` in [`frame_template`].
pub fn e_placeholder(i: usize) -> Sym {
    Sym::param(&format!("E{i}"))
}

/// The invariant frame with `E_i` left symbolic.
pub fn frame_template() -> [Derivation; 4] {
    let c = tm();
    let [e1, e2, e3, e4] = [1, 2, 3, 4].map(|i| DiffPoly::var(e_placeholder(i)));
    let (uxx, uxy, uyy) = (c.u("xx"), c.u("xy"), c.u("yy"));
    let i3 = i3();
    let p = &uyy * &e2 - &uxy * &e3 - e4.clone();
    let q = &uxy * &e2 - &uxx * &e3 - e1.clone();
    let z = DiffPoly::zero;
    [
        [z(), e3.clone(), -e2.clone(), z()],
        [e3.clone(), e4.clone(), -e1.clone(), -e2.clone()],
        [z(), p.clone(), -q.clone(), z()],
        [
            p,
            -(&uyy * &e1 + &i3 * &e3 - &uxy * &e4),
            &uxy * &e1 + &i3 * &e2 - &uxx * &e4,
            -q,
        ],
    ]
}

/// `D_1..D_4` with `E_i = D_{t,x,y,z}(I_1)` substituted.
pub fn frame() -> &'static [Derivation; 4] {
    static FRAME: OnceLock<[Derivation; 4]> = OnceLock::new();
    FRAME.get_or_init(|| {
        let subs: BTreeMap<Sym, DiffPoly> = (1..=4).map(|i| (e_placeholder(i), e(i))).collect();
        frame_template().map(|row| row.map(|p| p.substitute(&subs).expect("polynomial substitution")))
    })
}

pub fn apply_derivation(d: &Derivation, p: &DiffPoly) -> DiffPoly {
    let c = tm();
    let mut out = DiffPoly::zero();
    for (coeff, name) in d.iter().zip(E_COORDS) {
        if !coeff.is_zero() {
            out += coeff * &c.total_derivative(p, name).expect("chart coordinate");
        }
    }
    out
}

/// `[D_i, D_j]` as a derivation over `(D_t, D_x, D_y, D_z)`.
pub fn commutator(a: &Derivation, b: &Derivation) -> Derivation {
    std::array::from_fn(|k| apply_derivation(a, &b[k]) - apply_derivation(b, &a[k]))
}

/// Commutators of all ordered pairs `i != j` (0-based), computed once.
pub fn commutators() -> &'static BTreeMap<(usize, usize), Derivation> {
    static TABLE: OnceLock<BTreeMap<(usize, usize), Derivation>> = OnceLock::new();
    TABLE.get_or_init(|| {
        use rayon::prelude::*;
        let f = frame();
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
        pairs
            .into_par_iter()
            .map(|(i, j)| ((i, j), commutator(&f[i], &f[j])))
            .collect()
    })
}

/// Every symbol a structure-function evaluation needs.
pub fn frame_symbols() -> BTreeSet<Sym> {
    let mut out = BTreeSet::new();
    for row in frame().iter().chain(commutators().values()) {
        for p in row {
            out.extend(p.symbols());
        }
    }
    out
}

/// Structure functions `c_ij^k` (1-based keys) with
/// `[D_i, D_j] = sum_k c_ij^k D_k` at a point, for all ordered pairs.
pub fn structure_functions_at(pt: &Point) -> Result<BTreeMap<(usize, usize, usize), Rational>, PlebanskiError> {
    let f = frame();
    let fm: Vec<Vec<Rational>> = f
        .iter()
        .map(|row| row.iter().map(|p| p.eval(pt)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()
        .map_err(LieError::from)?;
    // columns of the system are the frame vectors
    let m: Vec<Vec<Rational>> = (0..4).map(|a| (0..4).map(|k| fm[k][a].clone()).collect()).collect();
    let mut out = BTreeMap::new();
    for (&(i, j), com) in commutators() {
        let b: Vec<Rational> = com.iter().map(|p| p.eval(pt)).collect::<Result<_, _>>().map_err(LieError::from)?;
        let c = match solve_exact(&m, &b) {
            Ok(c) => c,
            Err(LieError::Singular) | Err(LieError::Inconsistent) => return Err(PlebanskiError::Resample),
            Err(e) => return Err(e.into()),
        };
        for (k, v) in c.into_iter().enumerate() {
            out.insert((i + 1, j + 1, k + 1), v);
        }
    }
    Ok(out)
}

/// `sum_k c_ij^k D_k - [D_i, D_j]` evaluated at `pt`, per ordered pair.
pub fn reassembly_residual(
    pt: &Point,
    c: &BTreeMap<(usize, usize, usize), Rational>,
) -> Result<Vec<Rational>, PlebanskiError> {
    let f = frame();
    let mut out = Vec::new();
    for (&(i, j), com) in commutators() {
        for a in 0..4 {
            let mut acc = -com[a].eval(pt).map_err(LieError::from)?;
            for k in 0..4 {
                acc += &c[&(i + 1, j + 1, k + 1)] * &f[k][a].eval(pt).map_err(LieError::from)?;
            }
            out.push(acc);
        }
    }
    Ok(out)
}

/// Samples points until the frame is regular; returns the point and the
/// structure functions there.
pub fn sample_regular(
    sampler: &mut Sampler,
    attempts: usize,
) -> Result<(Point, BTreeMap<(usize, usize, usize), Rational>), PlebanskiError> {
    let syms = frame_symbols();
    for _ in 0..attempts {
        let pt = sampler.point(&syms, &BTreeSet::new());
        match structure_functions_at(&pt) {
            Ok(c) => return Ok((pt, c)),
            Err(PlebanskiError::Resample) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(PlebanskiError::Resample)
}

/// A point of `{I_1 = 0}` where every third-order jet vanishes, so all `E_i`
/// vanish as well.
pub fn singular_point(sampler: &mut Sampler) -> Point {
    let c = tm();
    let mut syms = frame_symbols();
    syms.extend(super::catalog::i1().symbols());
    let mut pt = sampler.point(&syms, &BTreeSet::new());
    for (s, v) in pt.iter_mut() {
        if s.is_jet() && s.order() >= 3 {
            *v = Rational::zero();
        }
    }
    let rest = i1_without_uty().eval(&pt).expect("assigned");
    pt.insert(c.u_sym("ty"), -rest);
    pt
}

fn i1_without_uty() -> DiffPoly {
    let c = tm();
    super::catalog::i1() - c.u("ty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plebanski::catalog::{i1, j1};

    #[test]
    fn first_frame_vector_kills_i1() {
        assert!(apply_derivation(&frame()[0], &i1()).is_zero());
        assert!(apply_derivation(&frame()[1], &DiffPoly::one()).is_zero());
    }

    #[test]
    fn third_frame_vector_gives_minus_j1() {
        assert_eq!(apply_derivation(&frame()[2], &i1()), -j1());
    }

    #[test]
    fn template_vanishes_without_e() {
        let zero: BTreeMap<Sym, DiffPoly> = (1..=4).map(|i| (e_placeholder(i), DiffPoly::zero())).collect();
        for row in frame_template() {
            for p in row {
                assert!(p.substitute(&zero).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn singular_point_is_flagged() {
        let mut s = Sampler::new(2);
        let pt = singular_point(&mut s);
        assert_eq!(i1().eval(&pt).unwrap(), Rational::zero());
        assert!(matches!(structure_functions_at(&pt), Err(PlebanskiError::Resample)));
    }
}
