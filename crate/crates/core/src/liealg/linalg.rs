use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::diffpoly::{DiffPoly, Rational};

use super::LieError;

fn check_square<T>(m: &[Vec<T>]) -> Result<usize, LieError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(LieError::NotSquare);
    }
    Ok(n)
}

/// Pfaffian by expansion along the first row.
pub fn pfaffian(m: &[Vec<DiffPoly>]) -> Result<DiffPoly, LieError> {
    let n = check_square(m)?;
    if n % 2 == 1 {
        return Err(LieError::OddDimension(n));
    }
    for i in 0..n {
        for j in i..n {
            if m[i][j] != -m[j][i].clone() {
                return Err(LieError::NotAntisymmetric(i, j));
            }
        }
    }
    let idx: Vec<usize> = (0..n).collect();
    Ok(pf_rec(m, &idx))
}

fn pf_rec(m: &[Vec<DiffPoly>], idx: &[usize]) -> DiffPoly {
    if idx.is_empty() {
        return DiffPoly::one();
    }
    let first = idx[0];
    let mut out = DiffPoly::zero();
    for k in 1..idx.len() {
        let a = &m[first][idx[k]];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&c| c != idx[k]).collect();
        let term = a * &pf_rec(m, &rest);
        if k % 2 == 1 {
            out += term;
        } else {
            out -= term;
        }
    }
    out
}

/// Determinant by Laplace expansion along rows, memoized on the set of
/// remaining columns.
pub fn determinant(m: &[Vec<DiffPoly>]) -> Result<DiffPoly, LieError> {
    let n = check_square(m)?;
    if n > 16 {
        return Err(LieError::NotSquare);
    }
    let mut memo: HashMap<u32, DiffPoly> = HashMap::new();
    Ok(det_rec(m, 0, (1u32 << n) - 1, &mut memo))
}

fn det_rec(m: &[Vec<DiffPoly>], row: usize, cols: u32, memo: &mut HashMap<u32, DiffPoly>) -> DiffPoly {
    if cols == 0 {
        return DiffPoly::one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut out = DiffPoly::zero();
    let mut sign_pos = true;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let a = &m[row][c];
        if !a.is_zero() {
            let term = a * &det_rec(m, row + 1, cols & !(1 << c), memo);
            if sign_pos {
                out += term;
            } else {
                out -= term;
            }
        }
        sign_pos = !sign_pos;
    }
    memo.insert(cols, out.clone());
    out
}

/// Determinant of a rational matrix by Gaussian elimination.
pub fn det_rational(m: &[Vec<Rational>]) -> Result<Rational, LieError> {
    let n = check_square(m)?;
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    Ok(det)
}

/// Solves `m x = b` exactly. A rank-deficient but consistent system is
/// `Singular`; a system with no solution is `Inconsistent`.
pub fn solve_exact(m: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>, LieError> {
    let n = check_square(m)?;
    if b.len() != n {
        return Err(LieError::NotSquare);
    }
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        let inv = a[row][col].recip();
        for c in col..=n {
            a[row][c] *= &inv;
        }
        for r in 0..n {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..=n {
                let v = &f * &a[row][c];
                a[r][c] -= v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[n].is_zero()) {
        return Err(LieError::Inconsistent);
    }
    if pivots.len() < n {
        return Err(LieError::Singular);
    }
    Ok(a.into_iter().map(|r| r[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::{int, Sym};
    use crate::sample::Sampler;

    fn sym(n: &str) -> DiffPoly {
        DiffPoly::var(Sym::param(n))
    }

    fn generic_antisymmetric(n: usize) -> Vec<Vec<DiffPoly>> {
        let mut m = vec![vec![DiffPoly::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                m[i][j] = sym(&format!("a{}{}", i + 1, j + 1));
                m[j][i] = -m[i][j].clone();
            }
        }
        m
    }

    #[test]
    fn small_pfaffians() {
        let m2 = generic_antisymmetric(2);
        assert_eq!(pfaffian(&m2).unwrap(), sym("a12"));
        let m4 = generic_antisymmetric(4);
        let expect = sym("a12") * sym("a34") - sym("a13") * sym("a24") + sym("a14") * sym("a23");
        assert_eq!(pfaffian(&m4).unwrap(), expect);
    }

    #[test]
    fn symbolic_pfaffian_squares_to_determinant() {
        let m = generic_antisymmetric(4);
        let pf = pfaffian(&m).unwrap();
        assert_eq!(&pf * &pf, determinant(&m).unwrap());
    }

    #[test]
    fn pfaffian_errors() {
        let odd = generic_antisymmetric(3);
        assert!(matches!(pfaffian(&odd), Err(LieError::OddDimension(3))));
        let mut bad = generic_antisymmetric(2);
        bad[1][0] = sym("a12");
        assert!(matches!(pfaffian(&bad), Err(LieError::NotAntisymmetric(0, 1))));
        let mut diag = generic_antisymmetric(2);
        diag[0][0] = DiffPoly::one();
        assert!(pfaffian(&diag).is_err());
    }

    #[test]
    fn rational_determinant_matches_symbolic() {
        let mut s = Sampler::new(5);
        let m: Vec<Vec<Rational>> = (0..4).map(|_| (0..4).map(|_| s.rational(false)).collect()).collect();
        let mp: Vec<Vec<DiffPoly>> = m
            .iter()
            .map(|r| r.iter().map(|v| DiffPoly::constant(v.clone())).collect())
            .collect();
        let sym = determinant(&mp).unwrap().as_constant().unwrap();
        assert_eq!(sym, det_rational(&m).unwrap());
    }

    #[test]
    fn solving() {
        let id = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert_eq!(solve_exact(&id, &[int(3), int(-2)]).unwrap(), vec![int(3), int(-2)]);
        let sing = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(matches!(solve_exact(&sing, &[int(1), int(2)]), Err(LieError::Singular)));
        assert!(matches!(solve_exact(&sing, &[int(1), int(3)]), Err(LieError::Inconsistent)));
    }

    #[test]
    fn random_systems_resubstitute() {
        let mut s = Sampler::new(11);
        let mut solved = 0;
        while solved < 20 {
            let m: Vec<Vec<Rational>> = (0..4).map(|_| (0..4).map(|_| s.rational(false)).collect()).collect();
            let b: Vec<Rational> = (0..4).map(|_| s.rational(false)).collect();
            if det_rational(&m).unwrap().is_zero() {
                continue;
            }
            let x = solve_exact(&m, &b).unwrap();
            for (row, bi) in m.iter().zip(&b) {
                let lhs: Rational = row.iter().zip(&x).map(|(a, xi)| a * xi).sum();
                assert_eq!(&lhs, bi);
            }
            solved += 1;
        }
    }
}
