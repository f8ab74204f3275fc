//! Truncated multivariate power series.
//!
//! Coefficients are stored already divided by the exponent factorials, so the
//! product is a plain truncated Cauchy product.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

pub type Exponents = Vec<u32>;

/// Coefficient ring for [`MultiSeries`].
pub trait Coeff: Clone + PartialEq + Zero + One + std::fmt::Debug + Send + Sync {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn to_rational(&self) -> Result<Rational>;
}

impl Coeff for Rational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn to_rational(&self) -> Result<Rational> {
        Ok(self.clone())
    }
}

impl Coeff for CycNumber {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        CycNumber::scale(self, r)
    }
    fn to_rational(&self) -> Result<Rational> {
        self.as_rational()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiSeries<C: Coeff> {
    variables: Vec<String>,
    order: u32,
    terms: BTreeMap<Exponents, C>,
}

pub fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// All exponent vectors in `vars` variables with total degree exactly `d`,
/// in lexicographic order.
pub fn exponents_of_degree(vars: usize, d: u32) -> Vec<Exponents> {
    fn rec(vars: usize, d: u32, prefix: &mut Exponents, out: &mut Vec<Exponents>) {
        if vars == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=d {
            prefix.push(k);
            rec(vars - 1, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars > 0 {
        rec(vars, d, &mut Vec::new(), &mut out);
    } else if d == 0 {
        out.push(Vec::new());
    }
    out
}

impl<C: Coeff> MultiSeries<C> {
    pub fn zero<S: AsRef<str>>(variables: &[S], order: u32) -> Self {
        MultiSeries {
            variables: variables.iter().map(|s| s.as_ref().to_string()).collect(),
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(variables: &[S], order: u32, c: C) -> Self {
        let mut s = Self::zero(variables, order);
        let zero_exp = vec![0; s.variables.len()];
        s.set(zero_exp, c);
        s
    }

    pub fn variable<S: AsRef<str>>(variables: &[S], order: u32, index: usize) -> Self {
        let mut s = Self::zero(variables, order);
        let mut e = vec![0; s.variables.len()];
        e[index] = 1;
        s.set(e, C::one());
        s
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, C> {
        &self.terms
    }

    /// Stored coefficient; zero when absent.
    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    /// Sets a coefficient, dropping it if zero or beyond the truncation order.
    pub fn set(&mut self, e: Exponents, c: C) {
        assert_eq!(e.len(), self.variables.len(), "exponent arity");
        if c.is_zero() || degree(&e) > self.order {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, c);
        }
    }

    pub fn add_term(&mut self, e: Exponents, c: &C) {
        if degree(&e) > self.order || c.is_zero() {
            return;
        }
        let v = self.coeff(&e).add_ref(c);
        self.set(e, v);
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.variables != other.variables {
            return Err(Error::VariableMismatch { left: self.variables.clone(), right: other.variables.clone() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.truncate(self.order.min(other.order));
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = self.map(|c| c.scale(r));
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn scale_by(&self, k: &C) -> Self {
        let mut out = self.map(|c| c.mul_ref(k));
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultiSeries<D> {
        MultiSeries {
            variables: self.variables.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect(),
        }
    }

    pub fn truncate(&self, order: u32) -> Self {
        MultiSeries {
            variables: self.variables.clone(),
            order,
            terms: self.terms.iter().filter(|(e, _)| degree(e) <= order).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Truncated Cauchy product; exact through the smaller of the two orders.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = Self::zero(&self.variables, order);
        for (ea, ca) in &self.terms {
            let da = degree(ea);
            if da > order {
                continue;
            }
            for (eb, cb) in &other.terms {
                if da + degree(eb) > order {
                    continue;
                }
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &ca.mul_ref(cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::constant(&self.variables, self.order, C::one());
        for _ in 0..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Substitutes each old variable by a linear form in `new_variables`.
    /// `map[i][j]` is the coefficient of new variable `j` in the image of old variable `i`.
    pub fn linear_substitute<S: AsRef<str>>(&self, map: &[Vec<C>], new_variables: &[S]) -> Result<Self> {
        let new_vars: Vec<String> = new_variables.iter().map(|s| s.as_ref().to_string()).collect();
        if map.len() != self.variables.len() || map.iter().any(|row| row.len() != new_vars.len()) {
            return Err(Error::VariableMismatch { left: self.variables.clone(), right: new_vars });
        }
        let images: Vec<MultiSeries<C>> = map
            .iter()
            .map(|row| {
                let mut s = MultiSeries::zero(&new_vars, self.order);
                for (j, c) in row.iter().enumerate() {
                    let mut e = vec![0; new_vars.len()];
                    e[j] = 1;
                    s.add_term(e, c);
                }
                s
            })
            .collect();
        // powers[i][k] = images[i]^k
        let mut powers: Vec<Vec<MultiSeries<C>>> = Vec::new();
        for img in &images {
            let mut p = vec![MultiSeries::constant(&new_vars, self.order, C::one())];
            for k in 1..=self.order {
                let next = p[(k - 1) as usize].product(img)?;
                p.push(next);
            }
            powers.push(p);
        }
        let mut out = MultiSeries::zero(&new_vars, self.order);
        for (e, c) in &self.terms {
            let mut term = MultiSeries::constant(&new_vars, self.order, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.product(&powers[i][k as usize])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Partial derivative; the result is exact through one degree less.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.variables, self.order.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.add_term(d, &c.scale(&Rational::from_integer(e[var].into())));
        }
        out
    }

    /// Coefficient times the exponent factorials, as a rational.
    pub fn integral_coefficient(&self, e: &[u32]) -> Result<Rational> {
        if degree(e) > self.order {
            return Err(Error::DegreeOutOfRange { degree: degree(e), order: self.order });
        }
        let r = self.coeff(e).to_rational()?;
        Ok(e.iter().fold(r, |acc, &k| acc * Rational::from_integer(factorial(k))))
    }

    /// Compares all coefficients up to `order` (inclusive).
    pub fn agrees_with(&self, other: &Self, order: u32) -> bool {
        self.variables == other.variables
            && self
                .terms
                .keys()
                .chain(other.terms.keys())
                .filter(|e| degree(e) <= order)
                .all(|e| self.coeff(e) == other.coeff(e))
    }

    /// Exponent vectors up to `order` where the two series differ.
    pub fn differences(&self, other: &Self, order: u32) -> Vec<Exponents> {
        let mut keys: Vec<&Exponents> =
            self.terms.keys().chain(other.terms.keys()).filter(|e| degree(e) <= order).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().filter(|e| self.coeff(e) != other.coeff(e)).cloned().collect()
    }
}

impl MultiSeries<CycNumber> {
    pub fn to_rational_series(&self) -> Result<MultiSeries<Rational>> {
        let mut out = MultiSeries::zero(&self.variables, self.order);
        for (e, c) in &self.terms {
            out.set(e.clone(), c.as_rational()?);
        }
        Ok(out)
    }
}

impl MultiSeries<Rational> {
    pub fn to_cyc_series(&self) -> MultiSeries<CycNumber> {
        self.map(|c| CycNumber::from_rational(c.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    type RS = MultiSeries<Rational>;

    fn poly(vars: &[&str], order: u32, terms: &[(&[u32], Rational)]) -> RS {
        let mut s = RS::zero(vars, order);
        for (e, c) in terms {
            s.add_term(e.to_vec(), c);
        }
        s
    }

    #[test]
    fn product_examples() {
        let a = poly(&["x"], 2, &[(&[0], int(1)), (&[1], int(1))]);
        let b = poly(&["x"], 2, &[(&[0], int(1)), (&[1], int(-1))]);
        assert_eq!(a.product(&b).unwrap(), poly(&["x"], 2, &[(&[0], int(1)), (&[2], int(-1))]));

        let xy = poly(&["x", "y"], 3, &[(&[1, 1], int(1))]);
        assert!(xy.product(&xy).unwrap().terms().is_empty());

        let x = poly(&["x"], 3, &[(&[1], int(1))]);
        let half_x2 = poly(&["x"], 3, &[(&[2], rat(1, 2))]);
        assert_eq!(x.product(&half_x2).unwrap(), poly(&["x"], 3, &[(&[3], rat(1, 2))]));
    }

    #[test]
    fn mismatched_variables() {
        let a = RS::zero(&["x"], 2);
        let b = RS::zero(&["y"], 2);
        assert!(matches!(a.product(&b), Err(Error::VariableMismatch { .. })));
    }

    #[test]
    fn substitution_examples() {
        let s = poly(&["x1", "x2", "x3"], 3, &[(&[1, 1, 1], int(1))]);
        let one = int(1);
        let map = vec![vec![one.clone()], vec![one.clone()], vec![one.clone()]];
        assert_eq!(s.linear_substitute(&map, &["u"]).unwrap(), poly(&["u"], 3, &[(&[3], int(1))]));

        let s = poly(&["x1", "x2"], 3, &[(&[2, 0], int(1)), (&[1, 1], int(1))]);
        let map = vec![vec![one.clone()], vec![int(0)]];
        assert_eq!(s.linear_substitute(&map, &["u"]).unwrap(), poly(&["u"], 3, &[(&[2], int(1))]));

        let mut c = MultiSeries::<CycNumber>::zero(&["x1"], 3);
        c.set(vec![3], CycNumber::one());
        let sub = c.linear_substitute(&[vec![CycNumber::omega()]], &["u"]).unwrap();
        assert_eq!(sub.coeff(&[3]), CycNumber::one());
    }

    #[test]
    fn integral_coefficients_restore_factorials() {
        let s = poly(&["x", "y"], 4, &[(&[2, 1], rat(1, 8))]);
        assert_eq!(s.integral_coefficient(&[2, 1]).unwrap(), rat(1, 4));
        assert!(matches!(s.integral_coefficient(&[3, 2]), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn derivative_lowers_order() {
        let s = poly(&["x", "y"], 4, &[(&[3, 1], int(2))]);
        let d = s.derivative(0);
        assert_eq!(d.order(), 3);
        assert_eq!(d.coeff(&[2, 1]), int(6));
    }

    #[test]
    fn enumerates_exponents() {
        assert_eq!(exponents_of_degree(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(exponents_of_degree(3, 3).len(), 10);
    }
}
