//! Exact linear algebra: a dense rational solver for small square systems and
//! a fraction-free eliminator for the overdetermined WDVV systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::rational::Rational;

/// Solves `m x = rhs` for square nonsingular `m`; `None` if singular.
pub fn solve_square(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = Rational::one() / &m[col][col];
        for x in &mut m[col][col..] {
            *x = &*x * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        let pivot_row = m[col].clone();
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for (x, p) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * p;
            }
            let d = &f * &rhs[col];
            rhs[r] -= d;
        }
    }
    Some(rhs)
}

/// Sparse linear equation `sum c_k x_k = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

impl Equation {
    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|(_, c)| c.is_zero()) && self.rhs.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemReport {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    RankDeficient { rank: usize, free: Vec<usize> },
    Inconsistent,
}

/// Fraction-free Gauss-Jordan elimination on integer-scaled rows.
/// Pivots are taken column by column, lowest unknown index first, from the
/// first remaining row with a nonzero entry.
pub fn solve_system(unknowns: usize, equations: &[Equation]) -> Result<(Vec<Rational>, SystemReport), SolveError> {
    let mut rows: Vec<Vec<BigInt>> =
        equations.iter().filter(|e| !e.is_trivial()).map(|e| integer_row(unknowns, e)).collect();
    let mut rank = 0;
    let mut pivots = Vec::new();
    let mut free = Vec::new();
    for col in 0..unknowns {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            free.push(col);
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let a = row[col].clone();
            let g = a.gcd(&pivot[col]);
            let (fp, fa) = (&pivot[col] / &g, &a / &g);
            for k in 0..=unknowns {
                if pivot[k].is_zero() && row[k].is_zero() {
                    continue;
                }
                row[k] = &fp * &row[k] - &fa * &pivot[k];
            }
            reduce_content(row);
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|row| !row[unknowns].is_zero()) {
        return Err(SolveError::Inconsistent);
    }
    if !free.is_empty() {
        return Err(SolveError::RankDeficient { rank, free });
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = Rational::new(rows[r][unknowns].clone(), rows[r][col].clone());
    }
    Ok((x, SystemReport { unknowns, equations: equations.len(), rank }))
}

fn integer_row(unknowns: usize, e: &Equation) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for (_, c) in &e.coeffs {
        den = den.lcm(c.denom());
    }
    den = den.lcm(e.rhs.denom());
    let mut row = vec![BigInt::zero(); unknowns + 1];
    for (k, c) in &e.coeffs {
        row[*k] += c.numer() * (&den / c.denom());
    }
    row[unknowns] = e.rhs.numer() * (&den / e.rhs.denom());
    reduce_content(&mut row);
    row
}

fn reduce_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v = &*v / &g;
    }
    debug_assert!(!g.is_negative());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn eq(coeffs: &[(usize, i64)], rhs: Rational) -> Equation {
        Equation { coeffs: coeffs.iter().map(|&(k, c)| (k, int(c))).collect(), rhs }
    }

    #[test]
    fn dense_solve() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let x = solve_square(m, vec![int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        assert!(solve_square(vec![vec![int(1), int(2)], vec![int(2), int(4)]], vec![int(0), int(1)]).is_none());
    }

    #[test]
    fn overdetermined_consistent() {
        let eqs = vec![eq(&[(0, 1), (1, 1)], int(3)), eq(&[(0, 1), (1, -1)], int(1)), eq(&[(0, 2)], int(4))];
        let (x, report) = solve_system(2, &eqs).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        assert_eq!(report.rank, 2);
    }

    #[test]
    fn detects_inconsistency_and_deficiency() {
        let eqs = vec![eq(&[(0, 1)], int(1)), eq(&[(0, 2)], int(3))];
        assert_eq!(solve_system(1, &eqs), Err(SolveError::Inconsistent));
        let eqs = vec![eq(&[(0, 1), (2, 1)], int(1))];
        assert_eq!(solve_system(3, &eqs), Err(SolveError::RankDeficient { rank: 1, free: vec![1, 2] }));
    }

    #[test]
    fn rational_coefficients() {
        let eqs =
            vec![Equation { coeffs: vec![(0, rat(1, 3)), (1, rat(1, 2))], rhs: rat(1, 6) }, eq(&[(1, 1)], int(0))];
        let (x, _) = solve_system(2, &eqs).unwrap();
        assert_eq!(x, vec![rat(1, 2), int(0)]);
    }
}
