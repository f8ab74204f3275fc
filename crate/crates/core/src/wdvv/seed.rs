//! Initial data for the recursions.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::group::{group_table, GroupName};
use crate::hkernel::{fp_tangent_series, tan_taylor};
use crate::rational::{multinomial, rat, Rational};
use crate::series::exponents_of_degree;
use crate::table::HurwitzTable;

/// Everything the solvers take as given, beyond the identities themselves.
#[derive(Clone, Debug, Serialize)]
pub struct SeedData {
    pub order: u32,
    /// `<zeta_1^n>` for Z2xZ2, from the tangent expansion.
    #[serde(serialize_with = "ser_map")]
    pub fp: BTreeMap<u32, Rational>,
    /// Ordinary coefficients `b_0..=b_{order-3}` of `tan(pi/3 - u/(2 sqrt3)) / sqrt3`.
    #[serde(serialize_with = "ser_vec")]
    pub b_series: Vec<Rational>,
    /// `<zeta^n>` for S4, from the Z2xZ2 table.
    #[serde(serialize_with = "ser_opt_map")]
    pub s4_zeta: Option<BTreeMap<u32, Rational>>,
    /// `<zeta^n>` for A4, from the Z2xZ2 table.
    #[serde(serialize_with = "ser_opt_map")]
    pub a4_zeta: Option<BTreeMap<u32, Rational>>,
    /// `<sigma^n>` for S4, from the S4 solver.
    #[serde(serialize_with = "ser_opt_map")]
    pub s4_sigma: Option<BTreeMap<u32, Rational>>,
}

fn ser_map<S: serde::Serializer>(m: &BTreeMap<u32, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(k, v)| (k.to_string(), v.to_string())))
}

fn ser_opt_map<S: serde::Serializer>(
    m: &Option<BTreeMap<u32, Rational>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match m {
        Some(m) => ser_map(m, s),
        None => s.serialize_none(),
    }
}

fn ser_vec<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

/// Ordinary Taylor coefficients of `tan(pi/3 - u/(2 sqrt3)) / sqrt3` through `u^k`.
pub fn b_series(k: u32) -> Result<Vec<Rational>> {
    let third = CycNumber::sqrt3().scale(&rat(1, 3));
    let slope = CycNumber::sqrt3().scale(&rat(-1, 6));
    tan_taylor(&rat(1, 3), &slope, k)?.iter().map(|c| (c * &third).as_rational()).collect()
}

/// `sum over n1+n2+n3 = n of multinomial * <zeta_1^n1 zeta_2^n2 zeta_3^n3>`
fn z2z2_diagonal(table: &HurwitzTable, n: u32) -> Result<Rational> {
    let mut acc = Rational::zero();
    for e in exponents_of_degree(3, n) {
        let v = table.get(&e).ok_or_else(|| Error::MissingEntry(e.clone()))?;
        acc += BigRational::from_integer(multinomial(&e)) * v;
    }
    Ok(acc)
}

impl SeedData {
    /// Seeds available without solving anything.
    pub fn base(order: u32) -> Result<Self> {
        Ok(SeedData {
            order,
            fp: fp_tangent_series(order),
            b_series: b_series(order.saturating_sub(3))?,
            s4_zeta: None,
            a4_zeta: None,
            s4_sigma: None,
        })
    }

    /// Adds the `<zeta^n>` seeds for S4 and A4 read from a Z2xZ2 table.
    pub fn with_z2z2_table(mut self, table: &HurwitzTable) -> Result<Self> {
        if table.group != GroupName::Z2xZ2 {
            return Err(Error::UnsupportedGroup(table.group.to_string()));
        }
        let mut s4 = BTreeMap::new();
        let mut a4 = BTreeMap::new();
        for n in 3..=self.order.min(table.order) {
            let d = z2z2_diagonal(table, n)?;
            s4.insert(n, &d * rat(1, 6));
            a4.insert(n, d * rat(1, 3));
        }
        self.s4_zeta = Some(s4);
        self.a4_zeta = Some(a4);
        Ok(self)
    }

    /// Adds `<sigma^n>` read from an S4 table.
    pub fn with_s4_table(mut self, table: &HurwitzTable) -> Result<Self> {
        if table.group != GroupName::S4 {
            return Err(Error::UnsupportedGroup(table.group.to_string()));
        }
        let sigma = (3..=self.order.min(table.order))
            .map(|n| {
                let e = vec![0, n, 0, 0];
                table.get(&e).cloned().map(|v| (n, v)).ok_or(Error::MissingEntry(e))
            })
            .collect::<Result<_>>()?;
        self.s4_sigma = Some(sigma);
        Ok(self)
    }

    /// Runs the chain Z2xZ2, then S4, collecting every seed.
    pub fn from_recursion(order: u32) -> Result<Self> {
        let seed = SeedData::base(order)?;
        let z = super::solve_z2z2(&seed, order)?;
        let seed = seed.with_z2z2_table(&z.table)?;
        let s4 = super::solve_s4(&seed, order)?;
        seed.with_s4_table(&s4.table)
    }
}

/// Length-three integrals of `g`, keyed by exponents over nontrivial classes.
pub fn length3_table(g: GroupName) -> HurwitzTable {
    let data = group_table(g);
    let mut t = HurwitzTable::new(g, 3);
    for e in exponents_of_degree(data.num_classes() - 1, 3) {
        let mut counts = vec![0];
        counts.extend_from_slice(&e);
        t.insert(e, super::identity::three_point_counts(data, &counts));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn b_coefficients() {
        let b = b_series(6).unwrap();
        let expected = [rat(1, 1), rat(-2, 3), rat(1, 3), rat(-5, 27), rat(11, 108), rat(-91, 1620), rat(301, 9720)];
        assert_eq!(b, expected.to_vec());
    }

    #[test]
    fn fp_low_orders() {
        let s = SeedData::base(8).unwrap();
        assert_eq!(s.fp[&3], int(0));
        assert_eq!(s.fp[&4], rat(-1, 4));
        assert_eq!(s.fp[&5], int(0));
    }

    #[test]
    fn length3_values() {
        let t = length3_table(GroupName::S4);
        assert_eq!(t.get(&[0, 2, 0, 1]).unwrap(), &int(1));
        assert_eq!(t.get(&[0, 0, 0, 3]).unwrap(), &rat(1, 4));
        assert_eq!(t.get(&[1, 0, 1, 1]).unwrap(), &rat(1, 2));
        assert_eq!(t.get(&[2, 1, 0, 0]).unwrap(), &int(1));
        assert_eq!(t.len(), 20);
    }
}
