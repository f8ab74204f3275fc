//! Symmetry of the four-index expression built from third derivatives.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{group_table, GroupName};
use crate::rational::{int, Rational};
use crate::series::MultiSeries;

type Series = MultiSeries<Rational>;

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryReport {
    pub group: GroupName,
    pub classes: Vec<&'static str>,
    /// Degree through which both sides are compared.
    pub checked_through: u32,
    pub holds: bool,
    /// Index quadruples `(i, j, n, m)` (positions in `classes`) where
    /// `E(i,j,n,m)` and `E(i,n,j,m)` differ.
    pub failures: Vec<[usize; 4]>,
}

/// Checks `E(i,j,n,m) = E(i,n,j,m)` where
/// `E(i,j,n,m) = g_ij g_nm |G| + sum_k F_ijk z_k F_(k' n m)`,
/// `g_ij = <1 c_i c_j>`, `k'` the class of inverses. Variable `v` of `f`
/// carries class `classes[v]`; inverse classes must be among them.
pub fn corollary_symmetry_check(f: &Series, group: GroupName, classes: &[usize]) -> Result<CorollaryReport> {
    let g = group_table(group);
    let n = classes.len();
    if f.variables().len() != n {
        return Err(Error::Malformed(format!("{} variables for {} classes", f.variables().len(), n)));
    }
    let position = |class: usize| classes.iter().position(|&c| c == class);
    let bar: Vec<usize> = classes
        .iter()
        .map(|&c| {
            position(g.inverse_involution[c]).ok_or_else(|| Error::Malformed(format!("inverse of class {c} missing")))
        })
        .collect::<Result<_>>()?;
    let checked_through = f.order().saturating_sub(3);
    let mut third: BTreeMap<[usize; 3], Series> = BTreeMap::new();
    for i in 0..n {
        let di = f.derivative(i);
        for j in i..n {
            let dij = di.derivative(j);
            for k in j..n {
                third.insert([i, j, k], dij.derivative(k));
            }
        }
    }
    let f3 = |i: usize, j: usize, k: usize| {
        let mut key = [i, j, k];
        key.sort();
        &third[&key]
    };
    let metric = |i: usize, j: usize| g.three_point(0, classes[i], classes[j]);
    let order = Rational::from_integer(g.order().into());
    let expr = |i: usize, j: usize, p: usize, m: usize| -> Result<Series> {
        let constant = metric(i, j) * metric(p, m) * &order;
        let mut acc = Series::constant(f.variables(), checked_through, constant);
        for k in 0..n {
            let z = int(g.z[classes[k]] as i64);
            let prod = f3(i, j, k).product(f3(bar[k], p, m))?.truncate(checked_through);
            acc = acc.add(&prod.scale(&z))?;
        }
        Ok(acc)
    };
    let mut failures = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                for m in 0..n {
                    if expr(i, j, p, m)?.sub(&expr(i, p, j, m)?)?.terms().values().any(|c| !c.is_zero()) {
                        failures.push([i, j, p, m]);
                    }
                }
            }
        }
    }
    Ok(CorollaryReport {
        group,
        classes: classes.iter().map(|&c| g.classes[c].token).collect(),
        checked_through,
        holds: failures.is_empty(),
        failures,
    })
}

/// `3 T_uuv^2 + 8 T_uvv^2 - 3 T_uuu T_uvv - 8 T_uuv T_vvv + constant` on the
/// S4 section with `u = sigma`, `v = zeta`, through degree `order - 3`.
pub fn s4_pde_residual(t: &Series, constant: Rational) -> Result<Series> {
    let top = t.order().saturating_sub(3);
    let d = |a: usize, b: usize| {
        let mut s = t.clone();
        for _ in 0..a {
            s = s.derivative(0);
        }
        for _ in 0..b {
            s = s.derivative(1);
        }
        s
    };
    let (uuu, uuv, uvv, vvv) = (d(3, 0), d(2, 1), d(1, 2), d(0, 3));
    let p = |a: &Series, b: &Series| a.product(b).map(|s| s.truncate(top));
    let sum = p(&uuv, &uuv)?
        .scale(&int(3))
        .add(&p(&uvv, &uvv)?.scale(&int(8)))?
        .sub(&p(&uuu, &uvv)?.scale(&int(3)))?
        .sub(&p(&uuv, &vvv)?.scale(&int(8)))?;
    sum.add(&Series::constant(t.variables(), top, constant))
}

/// Generating series of the entries of `table` restricted to the given
/// nontrivial classes; variables are the class tokens.
pub fn series_from_table(table: &crate::table::HurwitzTable, classes: &[usize]) -> Series {
    let g = group_table(table.group);
    let tokens: Vec<&str> = classes.iter().map(|&c| g.classes[c].token).collect();
    let mut s = Series::zero(&tokens, table.order);
    for (e, v) in &table.entries {
        let outside = e.iter().enumerate().any(|(slot, &k)| k > 0 && !classes.contains(&(slot + 1)));
        if outside || v.is_zero() {
            continue;
        }
        let exps: Vec<u32> = classes.iter().map(|&c| e[c - 1]).collect();
        let scale = exps.iter().fold(Rational::from_integer(1.into()), |acc, &k| {
            acc * Rational::from_integer(crate::rational::factorial(k))
        });
        s.set(exps, v / scale);
    }
    s
}
