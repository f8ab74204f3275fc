//! Length-by-length linear solvers for Z2xZ2 and A4.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::identity::{generate_identity, linearize, TableSource};
use super::seed::{length3_table, SeedData};
use crate::error::{Error, Result};
use crate::group::{group_table, GroupName};
use crate::linalg::{solve_system, Equation, SolveError};
use crate::rational::{binomial, Rational};
use crate::series::exponents_of_degree;
use crate::table::HurwitzTable;

#[derive(Clone, Debug, Serialize)]
pub struct LengthReport {
    pub length: u32,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    /// Determinant of the alternating system fixing the `b = 0` entries (A4 only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinant: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolverReport {
    pub group: GroupName,
    pub order: u32,
    pub lengths: Vec<LengthReport>,
}

#[derive(Clone, Debug)]
pub struct Solved {
    pub table: HurwitzTable,
    pub report: SolverReport,
}

const Z2Z2_QUADRUPLES: [[usize; 4]; 2] = [[1, 1, 2, 2], [1, 1, 2, 3]];
const A4_QUADRUPLES: [[usize; 4]; 4] = [[1, 3, 1, 3], [2, 3, 2, 3], [1, 3, 2, 3], [1, 1, 2, 2]];

fn check_order(order: u32) -> Result<()> {
    if order < 3 {
        return Err(Error::DegreeOutOfRange { degree: order, order: 3 });
    }
    Ok(())
}

fn equation(terms: &[(usize, Rational)], rhs: Rational) -> Equation {
    Equation { coeffs: terms.to_vec(), rhs }
}

/// Solves all monodromy-allowed entries of length `n`; forbidden entries
/// are recorded as zero.
fn solve_length(
    table: &mut HurwitzTable,
    n: u32,
    quadruples: &[[usize; 4]],
    extra: impl Fn(&BTreeMap<Vec<u32>, usize>) -> Result<Vec<Equation>>,
) -> Result<LengthReport> {
    let g = group_table(table.group);
    let k = g.num_classes() - 1;
    let all = exponents_of_degree(k, n);
    let (allowed, forbidden): (Vec<_>, Vec<_>) = all.into_iter().partition(|e| !g.monodromy_vanishes(e));
    let index: BTreeMap<Vec<u32>, usize> = allowed.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let lookup = |e: &[u32]| index.get(e).copied();
    let bases = exponents_of_degree(k, n - 3);
    let jobs: Vec<(&Vec<u32>, &[usize; 4])> =
        bases.iter().flat_map(|b| quadruples.iter().map(move |q| (b, q))).collect();
    let source = TableSource::new(table);
    let mut equations: Vec<Equation> = jobs
        .par_iter()
        .map(|(b, q)| linearize(&generate_identity(table.group, b, **q), &source, &lookup))
        .collect::<Result<_>>()?;
    equations.extend(extra(&index)?);
    let (values, report) = solve_system(allowed.len(), &equations).map_err(|e| match e {
        SolveError::Inconsistent => Error::Inconsistent { length: n },
        SolveError::RankDeficient { rank, .. } => Error::RankDeficient { length: n, rank, unknowns: allowed.len() },
    })?;
    for (e, v) in allowed.into_iter().zip(values) {
        table.insert(e, v);
    }
    for e in forbidden {
        table.insert(e, Rational::zero());
    }
    Ok(LengthReport {
        length: n,
        unknowns: report.unknowns,
        equations: report.equations,
        rank: report.rank,
        determinant: None,
    })
}

/// Equations `x(e) = x(p(e))` for each permutation `p` of the slots.
fn symmetry(index: &BTreeMap<Vec<u32>, usize>, perms: &[&[usize]]) -> Vec<Equation> {
    let mut out = Vec::new();
    for (e, &i) in index {
        for p in perms {
            let image: Vec<u32> = p.iter().map(|&s| e[s]).collect();
            if let Some(&j) = index.get(&image) {
                if i < j {
                    out.push(equation(&[(i, Rational::one()), (j, -Rational::one())], Rational::zero()));
                }
            }
        }
    }
    out
}

fn pin(index: &BTreeMap<Vec<u32>, usize>, e: Vec<u32>, value: &Rational) -> Result<Vec<Equation>> {
    match index.get(&e) {
        Some(&i) => Ok(vec![equation(&[(i, Rational::one())], value.clone())]),
        None if value.is_zero() => Ok(Vec::new()),
        None => Err(Error::MonodromyViolation { exponents: e, value: value.to_string() }),
    }
}

pub fn solve_z2z2(seed: &SeedData, order: u32) -> Result<Solved> {
    check_order(order)?;
    let mut table = length3_table(GroupName::Z2xZ2);
    table.order = order;
    let mut lengths = Vec::new();
    for n in 4..=order {
        let fp = seed.fp.get(&n).ok_or(Error::MissingSeed("fp"))?.clone();
        let report = solve_length(&mut table, n, &Z2Z2_QUADRUPLES, |index| {
            let mut eqs = symmetry(index, &[&[1, 0, 2], &[0, 2, 1]]);
            eqs.extend(pin(index, vec![n, 0, 0], &fp)?);
            Ok(eqs)
        });
        lengths.push(report?);
    }
    Ok(Solved { table, report: SolverReport { group: GroupName::Z2xZ2, order, lengths } })
}

/// Residue `k` in `{0,1,2}` of `sigma_2` exponents in the allowed `b = 0`
/// entries `<sigma_1^(n-k-3j) sigma_2^(k+3j)>` of length `n`.
pub fn a4_residue(n: u32) -> u32 {
    (2 * n) % 3
}

/// `sum_j (-1)^j binom(n, n-k-3j)`, the determinant that makes the `b = 0`
/// entries of length `n` solvable from `<sigma^n>` of S4.
pub fn a4_determinant(n: u32) -> BigInt {
    let k = a4_residue(n);
    let mut acc = BigInt::zero();
    let mut j = 0;
    while k + 3 * j <= n - k {
        let term = binomial(n, n - k - 3 * j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        j += 1;
    }
    acc
}

pub fn solve_a4(seed: &SeedData, order: u32) -> Result<Solved> {
    check_order(order)?;
    let zeta = seed.a4_zeta.as_ref().ok_or(Error::MissingSeed("a4_zeta"))?;
    let sigma = seed.s4_sigma.as_ref().ok_or(Error::MissingSeed("s4_sigma"))?;
    let mut table = length3_table(GroupName::A4);
    table.order = order;
    let length3 = table.get(&[0, 0, 3]).cloned();
    if zeta.get(&3).is_some_and(|v| Some(v) != length3.as_ref()) {
        return Err(Error::SeedMismatch("<zeta^3> of A4".into()));
    }
    let mut lengths = Vec::new();
    for n in 4..=order {
        let det = (n % 2 == 0).then(|| a4_determinant(n));
        if det.as_ref().is_some_and(Zero::is_zero) {
            return Err(Error::DeterminantZero(n));
        }
        let z = zeta.get(&n).ok_or(Error::MissingSeed("a4_zeta"))?.clone();
        let s = sigma.get(&n).ok_or(Error::MissingSeed("s4_sigma"))?.clone();
        let report = solve_length(&mut table, n, &A4_QUADRUPLES, |index| {
            let mut eqs = symmetry(index, &[&[1, 0, 2]]);
            eqs.extend(pin(index, vec![0, 0, n], &z)?);
            if n % 2 == 1 {
                return Ok(eqs);
            }
            // <x, x, 0> restriction: sum_a binom(n, a) <s1^a s2^(n-a)> = 2 <sigma^n>_{S4}
            let coeffs: Vec<(usize, Rational)> = (0..=n)
                .filter_map(|a| index.get(&vec![a, n - a, 0]).map(|&i| (i, Rational::from_integer(binomial(n, a)))))
                .collect();
            eqs.push(equation(&coeffs, &s * Rational::from_integer(2.into())));
            Ok(eqs)
        });
        let mut report = report?;
        report.determinant = det.map(|d| d.to_string());
        lengths.push(report);
    }
    Ok(Solved { table, report: SolverReport { group: GroupName::A4, order, lengths } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn determinants() {
        assert_eq!(a4_determinant(4), BigInt::from(6));
        assert_eq!(a4_determinant(6), BigInt::from(-18));
        assert_eq!(a4_determinant(8), BigInt::from(-54));
        for n in (4..=40).step_by(2) {
            assert!(!a4_determinant(n).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn z2z2_low_order() {
        let seed = SeedData::base(6).unwrap();
        let s = solve_z2z2(&seed, 6).unwrap();
        assert_eq!(s.table.get(&[4, 0, 0]).unwrap(), &Rational::new((-1).into(), 4.into()));
        assert_eq!(s.table.get(&[2, 1, 0]).unwrap(), &int(0));
    }
}
