//! Generator families realized as vector fields.

use std::sync::Arc;

use crate::diffpoly::{int, rat, DiffPoly};
use crate::jetspace::{Chart, VectorField};
use crate::liealg::{ham_field, nabla, GeneratorFamily, LieError, PoissonStructure};

use super::catalog::{pbi, sixd, tm};

/// `t A_t + z A_z - 2 A`.
pub fn zeta1(chart: &Chart, a: &DiffPoly) -> Result<DiffPoly, LieError> {
    Ok(chart.x("t") * chart.pdiff(a, "t")? + chart.x("z") * chart.pdiff(a, "z")? - a.scale(&int(2)))
}

pub fn v0(a: &DiffPoly) -> Result<VectorField, LieError> {
    let c = tm();
    ham_field(&nabla(a, 1, &c)?, PoissonStructure::OmegaTM, &c)
}

pub fn v1(a: &DiffPoly) -> Result<VectorField, LieError> {
    ham_field(a, PoissonStructure::OmegaTM, &tm())
}

fn vertical(chart: &Arc<Chart>, phi: DiffPoly) -> VectorField {
    VectorField::zero(chart.clone()).with("u", phi)
}

fn plus_vertical(x: VectorField, phi: DiffPoly) -> Result<VectorField, LieError> {
    let v = vertical(x.chart(), phi);
    Ok(x.add(&v)?)
}

/// The graded action `V_0 + V_1` on `TM`; grades from 2 on act trivially.
pub fn v_family(name: &str, grades: std::ops::RangeInclusive<usize>, cutoff: Option<usize>) -> GeneratorFamily {
    let c = tm();
    let zero = c.clone();
    GeneratorFamily::new(name, c, cutoff).with_species("V", grades, move |i, a| match i {
        0 => v0(a),
        1 => v1(a),
        _ => Ok(VectorField::zero(zero.clone())),
    })
}

/// Constants of the extension `V^`, as expressions in the chart parameters.
#[derive(Clone, Debug)]
pub struct ExtensionParams {
    pub c: [DiffPoly; 4],
}

impl ExtensionParams {
    pub fn symbolic() -> Self {
        let c = tm();
        ExtensionParams {
            c: [c.p("c1"), c.p("c2"), c.p("c3"), c.p("c4")],
        }
    }

    pub fn numeric(c: [i64; 4]) -> Self {
        ExtensionParams {
            c: c.map(DiffPoly::int),
        }
    }
}

/// `V^_i(A)`; zero from grade 4 on.
pub fn vhat(k: &ExtensionParams, i: usize, a: &DiffPoly) -> Result<VectorField, LieError> {
    let c = tm();
    let [c1, c2, c3, c4] = &k.c;
    let n = |j| nabla(a, j, &c);
    match i {
        0 => plus_vertical(v0(a)?, (c1 * &n(3)?).scale(&rat(1, 6)) + c3 * &zeta1(&c, a)?),
        1 => plus_vertical(v1(a)?, (c1 * &n(2)?).scale(&rat(1, 2)) + c2 * &n(1)? + c4 * a),
        2 => Ok(vertical(&c, c1 * &n(1)? + (c2 * a).scale(&int(2)))),
        3 => Ok(vertical(&c, c1 * a)),
        _ => Ok(VectorField::zero(c)),
    }
}

pub fn vhat_family(name: &str, k: ExtensionParams) -> GeneratorFamily {
    GeneratorFamily::new(name, tm(), None).with_species("V", 0..=4, move |i, a| vhat(&k, i, a))
}

/// Generators of `g1`: the unit extension `V^(1,0,0,0)` after `u -> -u`.
/// `W_0`, `W_1` agree with the displayed forms; `W_2 = -nabla A d/du` and
/// `W_3 = -A d/du` are the displayed forms with `A -> -A`.
pub fn w(i: usize, a: &DiffPoly) -> Result<VectorField, LieError> {
    match i {
        2 | 3 => w_displayed(i, &-a.clone()),
        _ => w_displayed(i, a),
    }
}

/// `W_0 = V_0 - (1/6) nabla^3 A d/du`, `W_1 = V_1 - (1/2) nabla^2 A d/du`,
/// `W_2 = nabla A d/du`, `W_3 = A d/du`, verbatim.
pub fn w_displayed(i: usize, a: &DiffPoly) -> Result<VectorField, LieError> {
    let c = tm();
    match i {
        0 => plus_vertical(v0(a)?, nabla(a, 3, &c)?.scale(&rat(-1, 6))),
        1 => plus_vertical(v1(a)?, nabla(a, 2, &c)?.scale(&rat(-1, 2))),
        2 => Ok(vertical(&c, nabla(a, 1, &c)?)),
        3 => Ok(vertical(&c, a.clone())),
        _ => Ok(VectorField::zero(c)),
    }
}

pub fn w0_prime() -> VectorField {
    let c = tm();
    VectorField::zero(c.clone())
        .with("t", c.x("t"))
        .with("x", c.x("x"))
        .with("y", c.x("y"))
        .with("z", c.x("z"))
        .with("u", c.u("").scale(&int(2)))
}

pub fn w0_second() -> VectorField {
    let c = tm();
    VectorField::zero(c.clone())
        .with("x", -c.x("x"))
        .with("y", -c.x("y"))
        .with("u", c.u("").scale(&int(-3)))
}

pub fn w1_prime() -> VectorField {
    let c = tm();
    VectorField::zero(c.clone()).with("x", c.x("t")).with("y", c.x("z"))
}

/// `g1 = a_0 + a_1 + a_2 + a_3` with the three extra generators.
pub fn g1_family() -> GeneratorFamily {
    GeneratorFamily::new("g1", tm(), Some(3))
        .with_species("W", 0..=3, w)
        .with_fixed("W0'", w0_prime())
        .with_fixed("W0''", w0_second())
        .with_fixed("W1'", w1_prime())
}

/// `h(0,1,0,0)`.
pub fn g2(i: usize, a: &DiffPoly) -> Result<VectorField, LieError> {
    vhat(&ExtensionParams::numeric([0, 1, 0, 0]), i, a)
}

pub fn g2_family() -> GeneratorFamily {
    GeneratorFamily::new("g2", tm(), Some(2)).with_species("W", 0..=2, g2)
}

/// `h(0,0,c3,c4)` with symbolic `c3`, `c4`.
pub fn g3(i: usize, a: &DiffPoly) -> Result<VectorField, LieError> {
    let c = tm();
    let k = ExtensionParams {
        c: [DiffPoly::zero(), DiffPoly::zero(), c.p("c3"), c.p("c4")],
    };
    vhat(&k, i, a)
}

pub fn g3_family() -> GeneratorFamily {
    GeneratorFamily::new("g3", tm(), Some(1)).with_species("W", 0..=1, g3)
}

/// Coefficient of `V^_3(A_1)` in the grade-1 part of the first
/// normalization, as printed: `(c1 c4 - 2 c2^2) / (3 c1)`.
pub fn phi1_grade1_coefficient(k: &ExtensionParams) -> Result<DiffPoly, LieError> {
    let [c1, c2, _, c4] = &k.c;
    Ok((c1 * c4 - (c2 * c2).scale(&int(2))) * c1.inverse()?.scale(&rat(1, 3)))
}

/// The coefficient that makes the grade-1 image exactly `W_1`:
/// `(c1 c4 - 2 c2^2) / c1^2`.
pub fn phi1_grade1_exact_coefficient(k: &ExtensionParams) -> Result<DiffPoly, LieError> {
    let [c1, c2, _, c4] = &k.c;
    Ok((c1 * c4 - (c2 * c2).scale(&int(2))) * c1.pow(-2)?)
}

/// Recombination of `V^(c)` for `c1 != 0`; `grade1` is the coefficient of
/// `V^_3(A_1)`.
pub fn phi1(k: &ExtensionParams, grade1: &DiffPoly, i: usize, a: &DiffPoly) -> Result<VectorField, LieError> {
    let c = tm();
    let [c1, c2, c3, _] = &k.c;
    let inv = c1.inverse()?;
    let h = |j, arg: &DiffPoly| vhat(k, j, arg);
    match i {
        0 => Ok(h(0, a)?.sub(&h(3, &zeta1(&c, a)?)?.map(|p| &(c3 * &inv) * p))?),
        1 => {
            let x = h(1, a)?.sub(&h(3, a)?.map(|p| grade1 * p))?;
            Ok(x.sub(&h(2, a)?.map(|p| &(c2 * &inv) * p))?)
        }
        2 => Ok(h(2, a)?.sub(&h(3, a)?.map(|p| &(c2 * &inv).scale(&int(2)) * p))?),
        _ => h(i, a),
    }
}

/// Recombination of `V^(0, c2, c3, c4)` for `c2 != 0`.
pub fn phi2(k: &ExtensionParams, i: usize, a: &DiffPoly) -> Result<VectorField, LieError> {
    let c = tm();
    let [_, c2, c3, c4] = &k.c;
    let inv = c2.inverse()?.scale(&rat(1, 2));
    let h = |j, arg: &DiffPoly| vhat(k, j, arg);
    match i {
        0 => Ok(h(0, a)?.sub(&h(2, &zeta1(&c, a)?)?.map(|p| &(c3 * &inv) * p))?),
        1 => Ok(h(1, a)?.sub(&h(2, a)?.map(|p| &(c4 * &inv) * p))?),
        _ => h(i, a),
    }
}

/// Rescales the fiber coordinate, `u = kappa u~`, for fields whose
/// coefficients do not involve `u`.
pub fn rescale_fiber(x: &VectorField, kappa: &DiffPoly) -> Result<VectorField, LieError> {
    let c = x.chart().clone();
    let u = c.resolve("u")?;
    let mut out = x.clone();
    out.set(u.clone(), &x.coefficient(&u) * &kappa.inverse()?)?;
    Ok(out)
}

pub fn phi1_family(name: &str, k: ExtensionParams, grade1: DiffPoly) -> GeneratorFamily {
    GeneratorFamily::new(name, tm(), None).with_species("R", 0..=4, move |i, a| phi1(&k, &grade1, i, a))
}

pub fn phi2_family(name: &str, k: ExtensionParams) -> GeneratorFamily {
    GeneratorFamily::new(name, tm(), None).with_species("R", 0..=4, move |i, a| phi2(&k, i, a))
}

/// Plebański I: Hamiltonian copies on `(t, y)` and `(x, z)` in grade 0 and
/// vertical fields in grade 1.
pub fn pbi_generator(i: usize, a: &DiffPoly) -> Result<VectorField, LieError> {
    let c = pbi();
    match i {
        0 => ham_field(a, PoissonStructure::ProductPbI, &c),
        1 => Ok(vertical(&c, a.clone())),
        _ => Ok(VectorField::zero(c)),
    }
}

pub fn pbi_family() -> GeneratorFamily {
    let c = pbi();
    let diag = |w: [i64; 4]| {
        ["t", "x", "y", "z"]
            .iter()
            .zip(w)
            .fold(VectorField::zero(c.clone()), |f, (n, k)| f.with(n, c.x(n).scale(&int(k))))
    };
    GeneratorFamily::new("PbI", c.clone(), Some(1))
        .with_species("a", 0..=1, pbi_generator)
        .with_species("b", 0..=1, pbi_generator)
        .with_fixed("Y0'", diag([1, 0, -1, 0]))
        .with_fixed("Y0''", diag([0, 1, 0, -1]))
        .with_fixed("Y0~", diag([1, -1, 1, -1]))
}

/// `y A_y + s t A_t` with `s = +-1`.
pub fn mu_alpha(a: &DiffPoly, s: i64) -> Result<DiffPoly, LieError> {
    let c = pbi();
    Ok(c.x("y") * c.pdiff(a, "y")? + (c.x("t") * c.pdiff(a, "t")?).scale(&int(s)))
}

/// `z B_z + s x B_x` with `s = +-1`.
pub fn mu_beta(b: &DiffPoly, s: i64) -> Result<DiffPoly, LieError> {
    let c = pbi();
    Ok(c.x("z") * c.pdiff(b, "z")? + (c.x("x") * c.pdiff(b, "x")?).scale(&int(s)))
}

/// Six-dimensional analogue: per copy `(x_i, p_i)`, Hamiltonian fields in
/// grade 0 and vertical fields in grade 1.
pub fn sixd_generator(i: usize, a: &DiffPoly) -> Result<VectorField, LieError> {
    let c = sixd();
    match i {
        0 => ham_field(a, PoissonStructure::SixD, &c),
        1 => Ok(vertical(&c, a.clone())),
        _ => Ok(VectorField::zero(c)),
    }
}
