//! Named differential polynomials: the second-order invariants, the frame
//! ingredients on 3-jets, and the Plebański I and six-dimensional left-hand
//! sides.

use std::sync::Arc;

use crate::diffpoly::{int, DiffPoly};
use crate::jetspace::{chart, Chart};
use crate::liealg::{determinant, pfaffian, LieError};

pub fn tm() -> Arc<Chart> {
    chart("TM").expect("built-in chart")
}

/// `u_ty - u_xz + u_xx u_yy - u_xy^2`.
pub fn i1() -> DiffPoly {
    let c = tm();
    c.u("ty") - c.u("xz") + i3()
}

/// `(u_y - x)^2 u_xx - 2 (u_x + y)(u_y - x) u_xy + (u_x + y)^2 u_yy`.
pub fn i2() -> DiffPoly {
    let c = tm();
    let p = c.u("y") - c.x("x");
    let q = c.u("x") + c.x("y");
    &(&p * &p) * &c.u("xx") - (&(&q * &p) * &c.u("xy")).scale(&int(2)) + &(&q * &q) * &c.u("yy")
}

/// `u_xx u_yy - u_xy^2`.
pub fn i3() -> DiffPoly {
    let c = tm();
    c.u("xx") * c.u("yy") - c.u("xy") * c.u("xy")
}

/// `u_y^2 u_xx - 2 u_x u_y u_xy + u_x^2 u_yy`.
pub fn i4() -> DiffPoly {
    let c = tm();
    let (ux, uy) = (c.u("x"), c.u("y"));
    &(&uy * &uy) * &c.u("xx") - (&(&ux * &uy) * &c.u("xy")).scale(&int(2)) + &(&ux * &ux) * &c.u("yy")
}

/// Total derivatives of `I1` listed as `(D_t, D_x, D_y, D_z)`.
pub const E_COORDS: [&str; 4] = ["t", "x", "y", "z"];

pub fn e(i: usize) -> DiffPoly {
    let c = tm();
    c.total_derivative(&i1(), E_COORDS[i - 1]).expect("chart coordinate")
}

/// `J1 = E2 E4 - E1 E3 - u_xx E3^2 + 2 u_xy E2 E3 - u_yy E2^2`, built over
/// arbitrary `E`.
pub fn j1_of(e: &[DiffPoly; 4]) -> DiffPoly {
    let c = tm();
    let [e1, e2, e3, e4] = e;
    e2 * e4 - e1 * e3 - &c.u("xx") * &(e3 * e3) + (&(&c.u("xy") * e2) * e3).scale(&int(2))
        - &c.u("yy") * &(e2 * e2)
}

pub fn j1() -> DiffPoly {
    j1_of(&[e(1), e(2), e(3), e(4)])
}

pub fn pbi() -> Arc<Chart> {
    chart("PbI").expect("built-in chart")
}

/// `u_tx u_yz - u_tz u_xy` on `(t, x, y, z)`.
pub fn pbi_lhs() -> DiffPoly {
    let c = pbi();
    c.u("tx") * c.u("yz") - c.u("tz") * c.u("xy")
}

pub fn sixd() -> Arc<Chart> {
    chart("SixD").expect("built-in chart")
}

/// The 6x6 antisymmetric matrix with off-diagonal Hessian blocks
/// `H_ij = [[u_{x_i x_j}, u_{x_i p_j}], [u_{p_i x_j}, u_{p_i p_j}]]`.
pub fn sixd_matrix() -> Vec<Vec<DiffPoly>> {
    let c = sixd();
    let names = |i: usize| [format!("x{i}"), format!("p{i}")];
    let mut m = vec![vec![DiffPoly::zero(); 6]; 6];
    for i in 1..=3 {
        for j in i + 1..=3 {
            for (a, ra) in names(i).iter().enumerate() {
                for (b, rb) in names(j).iter().enumerate() {
                    let h = c.u(&format!("{ra} {rb}"));
                    let (r, s) = (2 * (i - 1) + a, 2 * (j - 1) + b);
                    m[s][r] = -h.clone();
                    m[r][s] = h;
                }
            }
        }
    }
    m
}

pub fn pf6d() -> Result<DiffPoly, LieError> {
    pfaffian(&sixd_matrix())
}

pub fn det6d() -> Result<DiffPoly, LieError> {
    determinant(&sixd_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::Sym;

    #[test]
    fn first_invariant_terms() {
        let c = tm();
        let expect = c.u("ty") - c.u("xz") + c.u("xx") * c.u("yy") - c.u("xy").pow(2).unwrap();
        assert_eq!(i1(), expect);
        assert_eq!(i1().len(), 4);
    }

    #[test]
    fn e_is_ordered_t_x_y_z() {
        let c = tm();
        assert_eq!(e(1), c.total_derivative(&i1(), "t").unwrap());
        assert_eq!(e(4), c.total_derivative(&i1(), "z").unwrap());
        assert!(e(2).symbols().contains(&c.u_sym("txy")));
    }

    #[test]
    fn sixd_matrix_shape() {
        let m = sixd_matrix();
        assert!(m[0][1].is_zero() && m[2][3].is_zero());
        let c = sixd();
        assert_eq!(m[0][3], c.u("x1 p2"));
        assert_eq!(m[3][0], -c.u("x1 p2"));
        assert_eq!(m[1][4], c.u("p1 x3"));
        let pf = pf6d().unwrap();
        assert!(pf.terms().all(|(mono, _)| mono
            .factors()
            .iter()
            .all(|(s, _)| matches!(s, Sym::UJet(..)) && s.order() == 2)));
    }
}
