//! S4 recursion on the `(sigma, zeta)` section and the auxiliary families
//! with transpositions and four-cycles.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::identity::{evaluate_identity, generate_identity, linearize, TableSource};
use super::seed::{length3_table, SeedData};
use crate::error::{Error, Result};
use crate::group::GroupName;
use crate::rational::{factorial, rat, Rational};
use crate::table::HurwitzTable;

// class indices: 1 tau, 2 sigma, 3 rho, 4 zeta
const SIGMA: usize = 2;
const ZETA: usize = 4;

fn t_key(a: u32, b: u32) -> Vec<u32> {
    vec![0, a, 0, b]
}

fn fact(k: u32) -> Rational {
    Rational::from_integer(factorial(k))
}

/// Square root in the rationals, if there is one.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(Rational::new(root(r.numer())?, root(r.denom())?))
}

/// Guards on the order-zero branch of `3 y^2 - 8 y c - 1 = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct BranchGuard {
    #[serde(serialize_with = "ser_vec")]
    pub roots: Vec<Rational>,
    #[serde(with = "crate::rational::serde_str")]
    pub chosen: Rational,
    /// Coefficient of the new unknown at every higher order.
    #[serde(with = "crate::rational::serde_str")]
    pub leading_coefficient: Rational,
}

fn ser_vec<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

#[derive(Clone, Debug)]
pub struct S4Solution {
    /// Families `<sigma^a zeta^b>`, `<tau^2 sigma^a>`, `<tau^2 sigma^a zeta>`,
    /// and, after [`recover_cd`], `<tau sigma^a rho>` and `<tau sigma^a rho zeta>`.
    pub table: HurwitzTable,
    pub guard: BranchGuard,
    pub steps: Vec<S4Step>,
}

/// Entries fixed at one power of `sigma`: `<sigma^n>` and `<sigma^n zeta^m>`, `m >= 1`.
#[derive(Clone, Debug, Serialize)]
pub struct S4Step {
    pub sigma_exponent: u32,
    pub solved: usize,
}

/// Truncated product of ordinary coefficient lists.
fn mul(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    (0..len).map(|k| (0..=k).filter(|&i| i < a.len() && k - i < b.len()).map(|i| &a[i] * &b[k - i]).sum()).collect()
}

fn lin(terms: &[(Rational, &[Rational])], constant: Rational, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|k| {
            let mut acc: Rational =
                terms.iter().map(|(c, s)| c * s.get(k).cloned().unwrap_or_else(Rational::zero)).sum();
            if k == 0 {
                acc += &constant;
            }
            acc
        })
        .collect()
}

/// The three square expressions `8C^2`, `4CD`, `4D^2` as series in `u`.
struct Squares {
    c2: Vec<Rational>,
    cd: Vec<Rational>,
    d2: Vec<Rational>,
}

/// `Y_b(u) = sum_k <sigma^(k+3-b) zeta^b> u^k / k!` for `b = 0..=3`,
/// with `B` the `<tau^2 sigma^(k+1)>` series.
fn squares(y: &[Vec<Rational>; 4], b: &[Rational], len: usize) -> Squares {
    let one = Rational::one;
    let yb: Vec<Vec<Rational>> = y.iter().map(|s| mul(s, b, len)).collect();
    let bb = mul(b, b, len);
    let c2 = lin(&[(rat(6, 1), &yb[2]), (rat(4, 1), &y[3])], one(), len);
    let cd = lin(&[(rat(3, 1), &yb[1]), (rat(2, 1), &y[2]), (-one(), b)], Rational::zero(), len);
    let d2 = lin(&[(rat(3, 1), &yb[0]), (rat(2, 1), &y[1]), (rat(-4, 1), &bb)], rat(2, 1), len);
    Squares { c2, cd, d2 }
}

fn y_series(table: &HurwitzTable, b: u32, len: usize) -> Result<Vec<Rational>> {
    (0..len as u32)
        .map(|k| {
            let key = t_key(k + 3 - b, b);
            table.get(&key).map(|v| v / fact(k)).ok_or(Error::MissingEntry(key))
        })
        .collect()
}

fn b_coefficients(table: &HurwitzTable, len: usize) -> Result<Vec<Rational>> {
    (0..len as u32)
        .map(|k| {
            let key = vec![2, k + 1, 0, 0];
            table.get(&key).map(|v| v / fact(k)).ok_or(Error::MissingEntry(key))
        })
        .collect()
}

/// Coefficient of `u^k` in `8C^2 * 4D^2 - 2 (4CD)^2`.
fn square_relation(y: &[Vec<Rational>; 4], b: &[Rational], k: usize) -> Rational {
    let len = k + 1;
    let sq = squares(y, b, len);
    let lhs = mul(&sq.c2, &sq.d2, len);
    let rhs = mul(&sq.cd, &sq.cd, len);
    &lhs[k] - rat(2, 1) * &rhs[k]
}

fn insert_checked(table: &mut HurwitzTable, key: Vec<u32>, value: Rational, what: &str) -> Result<()> {
    match table.get(&key) {
        Some(existing) if *existing != value => {
            Err(Error::SeedMismatch(format!("{what} {key:?}: length-three value {existing}, recursion gives {value}")))
        }
        _ => {
            table.insert(key, value);
            Ok(())
        }
    }
}

/// Entries of the S4 families through length `order`.
pub fn solve_s4(seed: &SeedData, order: u32) -> Result<S4Solution> {
    if order < 3 {
        return Err(Error::DegreeOutOfRange { degree: order, order: 3 });
    }
    let x0 = seed.s4_zeta.as_ref().ok_or(Error::MissingSeed("s4_zeta"))?;
    if seed.b_series.len() < (order - 2) as usize {
        return Err(Error::MissingSeed("b_series"));
    }
    let mut table = length3_table(GroupName::S4);
    table.order = order;
    let top = order - 3;

    // <zeta^n> and <sigma zeta^n>
    for n in 3..=order {
        let v = x0.get(&n).ok_or(Error::MissingSeed("s4_zeta"))?.clone();
        insert_checked(&mut table, t_key(0, n), v, "<zeta^n>")?;
        insert_checked(&mut table, t_key(1, n - 1), Rational::zero(), "<sigma zeta^n>")?;
    }

    // <sigma^2 zeta^(k+1)> from 3 y^2 - 8 y c - 1 = 0, y and c the third derivatives in zeta
    let c: Vec<Rational> = (0..=top).map(|k| &x0[&(k + 3)] / fact(k)).collect();
    let disc = rat(64, 1) * &c[0] * &c[0] + rat(12, 1);
    let sq = rational_sqrt(&disc).ok_or_else(|| Error::NoBranch(format!("discriminant {disc} is not a square")))?;
    let roots = vec![(rat(8, 1) * &c[0] + &sq) / rat(6, 1), (rat(8, 1) * &c[0] - &sq) / rat(6, 1)];
    let expected = table.get(&t_key(2, 1)).cloned().expect("length three");
    let matching: Vec<&Rational> = roots.iter().filter(|r| **r == expected).collect();
    let chosen = match matching.len() {
        0 => {
            return Err(Error::NoBranch(format!(
                "roots {} and {} miss <sigma^2 zeta> = {expected}",
                roots[0], roots[1]
            )))
        }
        1 => matching[0].clone(),
        _ => return Err(Error::BranchAmbiguity(format!("double root {expected}"))),
    };
    let lead = rat(6, 1) * &chosen - rat(8, 1) * &c[0];
    if lead.is_zero() {
        return Err(Error::LeadingCoefficientZero("<sigma^2 zeta^n>".into()));
    }
    let mut y = vec![chosen.clone()];
    for k in 1..=top as usize {
        let mut rest = Rational::zero();
        for i in 1..k {
            rest += rat(3, 1) * &y[i] * &y[k - i];
        }
        for i in 0..k {
            rest -= rat(8, 1) * &y[i] * &c[k - i];
        }
        y.push(-rest / &lead);
    }
    for (k, v) in y.iter().enumerate() {
        let k = k as u32;
        insert_checked(&mut table, t_key(2, k + 1), v * fact(k), "<sigma^2 zeta^n>")?;
    }
    let guard = BranchGuard { roots, chosen, leading_coefficient: lead };

    // <tau^2 sigma^(k+1)> = k! b_k and <tau^2 sigma^a zeta>
    for k in 0..=top {
        insert_checked(&mut table, vec![2, k + 1, 0, 0], &seed.b_series[k as usize] * fact(k), "<tau^2 sigma^n>")?;
        let v = if k == 0 { rat(1, 4) } else { Rational::zero() };
        insert_checked(&mut table, vec![2, k, 0, 1], v, "<tau^2 sigma^a zeta>")?;
    }

    let mut steps = Vec::new();
    let b = b_coefficients(&table, top as usize + 1)?;
    for a in 1..=top + 1 {
        // <sigma^(a+2)> from the u^(a-1) coefficient of 8C^2 4D^2 = 2 (4CD)^2
        let len = a as usize;
        let mut ys: [Vec<Rational>; 4] = Default::default();
        for (bi, slot) in ys.iter_mut().enumerate().skip(1) {
            *slot = y_series(&table, bi as u32, len)?;
        }
        let mut y0 = y_series(&table, 0, len - 1)?;
        y0.push(Rational::zero());
        ys[0] = y0;
        let r0 = square_relation(&ys, &b, len - 1);
        ys[0][len - 1] = Rational::one();
        let r1 = square_relation(&ys, &b, len - 1);
        let slope = &r1 - &r0;
        if slope.is_zero() {
            return Err(Error::LeadingCoefficientZero(format!("<sigma^{}>", a + 2)));
        }
        let value = -r0 / slope * fact(a - 1);
        insert_checked(&mut table, t_key(a + 2, 0), value, "<sigma^n>")?;

        // <sigma^(a+2) zeta^(m+1)> from (sigma zeta | sigma zeta) = (sigma sigma | zeta zeta) at base sigma^a zeta^m
        let mut solved = 1;
        for m in (0..).take_while(|m| a + m + 3 <= order) {
            let key = t_key(a + 2, m + 1);
            let id = generate_identity(GroupName::S4, &[0, a, 0, m], [SIGMA, ZETA, SIGMA, ZETA]);
            let eq = {
                let source = TableSource::new(&table);
                linearize(&id, &source, &|e: &[u32]| (e == key.as_slice()).then_some(0))?
            };
            let coeff = eq.coeffs.iter().find(|(i, _)| *i == 0).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero);
            if coeff.is_zero() {
                return Err(Error::LeadingCoefficientZero(format!("<sigma^{} zeta^{}>", a + 2, m + 1)));
            }
            insert_checked(&mut table, key, eq.rhs / coeff, "<sigma^a zeta^b>")?;
            solved += 1;
        }
        steps.push(S4Step { sigma_exponent: a + 2, solved });
    }
    Ok(S4Solution { table, guard, steps })
}

/// Output of [`recover_cd`].
#[derive(Clone, Debug, Serialize)]
pub struct CdReport {
    #[serde(with = "crate::rational::serde_str")]
    pub c0_squared: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub d0_squared: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub c0: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub d0: Rational,
    /// `8C^2 * 4D^2 = 2 (4CD)^2` through the truncation order.
    pub squares_consistent: bool,
    #[serde(serialize_with = "ser_vec")]
    pub c_series: Vec<Rational>,
    #[serde(serialize_with = "ser_vec")]
    pub d_series: Vec<Rational>,
}

/// Recovers `C(u) = sum <tau sigma^k rho zeta> u^k/k!` and
/// `D(u) = sum <tau sigma^(k+1) rho> u^k/k!` from their squares and product,
/// fixing signs by the length-three values. Adds both families to the table.
pub fn recover_cd(solution: &mut S4Solution) -> Result<CdReport> {
    let order = solution.table.order;
    let len = (order - 2) as usize;
    let table = &mut solution.table;
    let mut ys: [Vec<Rational>; 4] = Default::default();
    for (bi, slot) in ys.iter_mut().enumerate() {
        *slot = y_series(table, bi as u32, len)?;
    }
    let b = b_coefficients(table, len)?;
    let sq = squares(&ys, &b, len);
    let product = mul(&sq.c2, &sq.d2, len);
    let cross = mul(&sq.cd, &sq.cd, len);
    let squares_consistent = product.iter().zip(&cross).all(|(p, c)| *p == rat(2, 1) * c);
    if !squares_consistent {
        return Err(Error::InconsistentSquares("8C^2 4D^2 differs from 2 (4CD)^2".into()));
    }
    let c_sq: Vec<Rational> = sq.c2.iter().map(|v| v / rat(8, 1)).collect();
    let d_sq: Vec<Rational> = sq.d2.iter().map(|v| v / rat(4, 1)).collect();
    let cd: Vec<Rational> = sq.cd.iter().map(|v| v / rat(4, 1)).collect();
    let c_ref = table.get(&[1, 0, 1, 1]).cloned().expect("length three");
    let d_ref = table.get(&[1, 1, 1, 0]).cloned().expect("length three");
    if c_ref.is_zero() || &c_ref * &c_ref != c_sq[0] {
        return Err(Error::InconsistentSquares(format!("C(0)^2 = {} but <tau rho zeta> = {c_ref}", c_sq[0])));
    }
    if &d_ref * &d_ref != d_sq[0] {
        return Err(Error::InconsistentSquares(format!("D(0)^2 = {} but <tau sigma rho> = {d_ref}", d_sq[0])));
    }
    // C = sqrt(C^2) with C(0) = <tau rho zeta>
    let mut c = vec![c_ref.clone()];
    for k in 1..len {
        let mut rest = c_sq[k].clone();
        for i in 1..k {
            rest -= &c[i] * &c[k - i];
        }
        c.push(rest / (rat(2, 1) * &c[0]));
    }
    // D = CD / C
    let mut d: Vec<Rational> = Vec::new();
    for k in 0..len {
        let mut rest = cd[k].clone();
        for i in 0..k {
            rest -= &d[i] * &c[k - i];
        }
        d.push(rest / &c[0]);
    }
    if d[0] != d_ref {
        return Err(Error::InconsistentSquares(format!("D(0) = {} but <tau sigma rho> = {d_ref}", d[0])));
    }
    if mul(&d, &d, len) != d_sq {
        return Err(Error::InconsistentSquares("D^2 differs from its square relation".into()));
    }
    for k in 0..len as u32 {
        let f = fact(k);
        insert_checked(table, vec![1, k, 1, 1], &c[k as usize] * &f, "<tau sigma^a rho zeta>")?;
        insert_checked(table, vec![1, k + 1, 1, 0], &d[k as usize] * &f, "<tau sigma^a rho>")?;
    }
    Ok(CdReport {
        c0_squared: c_sq[0].clone(),
        d0_squared: d_sq[0].clone(),
        c0: c_ref,
        d0: d_ref,
        squares_consistent,
        c_series: c,
        d_series: d,
    })
}

/// Quadruples `(tau tau | zeta zeta)`, `(tau tau | sigma zeta)`, `(tau tau | sigma sigma)`.
pub const AUXILIARY_QUADRUPLES: [[usize; 4]; 3] = [[1, 1, 4, 4], [1, 1, 2, 4], [1, 1, 2, 2]];

/// Residuals of the transposition identities at bases `sigma^a`, `a <= order - 3`.
pub fn auxiliary_residuals(table: &HurwitzTable) -> Result<Vec<(usize, u32, Rational)>> {
    let source = TableSource::new(table);
    let mut out = Vec::new();
    for (qi, q) in AUXILIARY_QUADRUPLES.iter().enumerate() {
        for a in 0..=table.order - 3 {
            let id = generate_identity(GroupName::S4, &[0, a, 0, 0], *q);
            out.push((qi, a, evaluate_identity(&id, &source)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
        assert_eq!(rational_sqrt(&int(0)), Some(int(0)));
    }

    #[test]
    fn branch_at_order_zero() {
        let seed = SeedData::from_recursion(5).unwrap();
        let sol = solve_s4(&seed, 5).unwrap();
        assert!(sol.guard.roots.contains(&int(1)));
        assert!(sol.guard.roots.contains(&rat(-1, 3)));
        assert_eq!(sol.guard.chosen, int(1));
        assert_eq!(sol.guard.leading_coefficient, int(4));
        assert_eq!(sol.table.get(&[0, 3, 0, 0]).unwrap(), &rat(4, 3));
    }
}
