//! Invariants entered by hand, independently of the catalog's builders.

use heavenly_core::plebanski::catalog::{i1, i2, i3, i4, pbi_lhs, pf6d, sixd};
use heavenly_core::{chart, parse_poly, Sym};

fn tm(text: &str) -> heavenly_core::DiffPoly {
    parse_poly(text, &chart("TM").unwrap()).unwrap()
}

// chart order (t, z, x, y)
const UX: &str = "u[0,0,1,0]";
const UY: &str = "u[0,0,0,1]";

#[test]
fn first_invariant() {
    assert_eq!(i1(), tm("u[1,0,0,1] - u[0,1,1,0] + u[0,0,2,0]*u[0,0,0,2] - u[0,0,1,1]^2"));
}

#[test]
fn second_invariant() {
    let text = format!(
        "({UY} - x)^2*u[0,0,2,0] - 2*({UX} + y)*({UY} - x)*u[0,0,1,1] + ({UX} + y)^2*u[0,0,0,2]"
    );
    assert_eq!(i2(), tm(&text));
}

#[test]
fn third_invariant() {
    assert_eq!(i3(), tm("u[0,0,2,0]*u[0,0,0,2] - u[0,0,1,1]^2"));
}

#[test]
fn fourth_invariant() {
    let text = format!("{UY}^2*u[0,0,2,0] - 2*{UX}*{UY}*u[0,0,1,1] + {UX}^2*u[0,0,0,2]");
    assert_eq!(i4(), tm(&text));
}

#[test]
fn product_left_side() {
    // chart order (t, x, y, z)
    let c = chart("PbI").unwrap();
    assert_eq!(pbi_lhs(), parse_poly("u[1,1,0,0]*u[0,0,1,1] - u[1,0,0,1]*u[0,1,1,0]", &c).unwrap());
}

#[test]
fn sixd_pfaffian_is_cubic_in_second_jets() {
    let pf = pf6d().unwrap();
    assert!(!pf.is_zero());
    assert_eq!(sixd().name(), "SixD");
    for (m, _) in pf.terms() {
        let second: i32 = m
            .factors()
            .iter()
            .filter(|(s, _)| matches!(s, Sym::UJet(..)) && s.order() == 2)
            .map(|(_, e)| *e)
            .sum();
        assert_eq!(second, 3, "{m:?}");
        assert_eq!(m.degree(), 3);
    }
}
