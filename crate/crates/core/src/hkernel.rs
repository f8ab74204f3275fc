//! Taylor data of the series `h` with `h'''(u) = tan(-u/2) / 2`, expanded at
//! rational multiples of pi.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::rational::{factorial, int, pow, rat, Rational};
use crate::series::MultiSeries;

/// Expansion point `theta * pi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Phase(#[serde(with = "crate::rational::serde_str")] pub Rational);

impl Phase {
    pub fn new(theta: Rational) -> Self {
        Phase(theta)
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Phase(rat(n, d))
    }

    pub fn theta(&self) -> &Rational {
        &self.0
    }

    /// Representative of `theta` in `[0, 2)`.
    pub fn reduced(&self) -> Phase {
        let two = int(2);
        let q = (&self.0 / &two).floor();
        Phase(&self.0 - q * two)
    }
}

/// `weight * h(theta * pi + linear_form(x))`.
#[derive(Clone, Debug, PartialEq)]
pub struct HTerm {
    pub phase: Phase,
    pub linear_form: Vec<CycNumber>,
    pub weight: Rational,
}

impl HTerm {
    pub fn new(weight: Rational, phase: Phase, linear_form: Vec<CycNumber>) -> Self {
        HTerm { phase, linear_form, weight }
    }
}

/// Coefficients of `P_n` with `d^n/du^n tan u = P_n(tan u)`, lowest degree first.
pub fn tan_derivative_polynomial(n: u32) -> Vec<Rational> {
    let mut p = vec![Rational::zero(), Rational::one()];
    for _ in 0..n {
        // P' * (1 + t^2)
        let dp: Vec<Rational> = p.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect();
        let mut next = vec![Rational::zero(); dp.len() + 2];
        for (k, c) in dp.iter().enumerate() {
            next[k] += c;
            next[k + 2] += c;
        }
        p = next;
    }
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn eval_poly(p: &[Rational], t: &CycNumber) -> CycNumber {
    p.iter().rev().fold(CycNumber::zero(), |acc, c| &acc * t + CycNumber::from_rational(c.clone()))
}

/// Exact `tan(angle * pi)`.
pub fn tan_at(angle: &Rational) -> Result<CycNumber> {
    let twelve = angle * int(12);
    if !twelve.is_integer() {
        return Err(Error::UnsupportedAngle(angle.to_string()));
    }
    let k: i64 = twelve.to_integer().try_into().map_err(|_| Error::UnsupportedAngle(angle.to_string()))?;
    let z = CycNumber::zeta_pow(k);
    let zi = CycNumber::zeta_pow(-k);
    let den = CycNumber::i() * (&z + &zi);
    if den.is_zero() {
        return Err(Error::PoleError(angle.to_string()));
    }
    (&z - &zi).div(&den)
}

/// `h^(n)(theta * pi)` for `3 <= n <= max_n`, indexed from `n = 3`.
pub fn h_derivatives(phase: &Phase, max_n: u32) -> Result<Vec<CycNumber>> {
    if max_n < 3 {
        return Ok(Vec::new());
    }
    let t = tan_at(&(-phase.reduced().theta() / int(2)))?;
    let mut out = Vec::new();
    let mut p = tan_derivative_polynomial(0);
    for n in 3..=max_n {
        if n > 3 {
            p = next_tan_polynomial(&p);
        }
        let scale = rat(1, 2) * pow(&rat(-1, 2), n - 3);
        out.push(eval_poly(&p, &t).scale(&scale));
    }
    Ok(out)
}

fn next_tan_polynomial(p: &[Rational]) -> Vec<Rational> {
    let mut next = vec![Rational::zero(); p.len() + 1];
    for (k, c) in p.iter().enumerate().skip(1) {
        let d = c * int(k as i64);
        next[k - 1] += &d;
        next[k + 1] += d;
    }
    next
}

pub fn h_derivative_at(n: u32, phase: &Phase) -> Result<CycNumber> {
    assert!(n >= 3, "h is only defined in degrees >= 3");
    Ok(h_derivatives(phase, n)?.pop().expect("n >= 3"))
}

/// `sum_{n=3}^{N} h^(n)(theta pi) l(x)^n / n!`, times the weight.
pub fn expand_h_term<S: AsRef<str>>(term: &HTerm, variables: &[S], order: u32) -> Result<MultiSeries<CycNumber>> {
    let mut out = MultiSeries::zero(variables, order);
    if term.linear_form.len() != variables.len() {
        return Err(Error::VariableMismatch {
            left: variables.iter().map(|s| s.as_ref().to_string()).collect(),
            right: vec![format!("{} coefficients", term.linear_form.len())],
        });
    }
    if term.linear_form.iter().all(Zero::is_zero) || term.weight.is_zero() {
        return Ok(out);
    }
    let derivs = h_derivatives(&term.phase, order)?;
    let mut ell = MultiSeries::zero(variables, order);
    for (j, c) in term.linear_form.iter().enumerate() {
        let mut e = vec![0; variables.len()];
        e[j] = 1;
        ell.set(e, c.clone());
    }
    // l^n / n!, built incrementally
    let mut power = ell.clone();
    for n in 2..=order {
        power = power.product(&ell)?.scale(&rat(1, n as i64));
        if n >= 3 {
            let coeff = derivs[(n - 3) as usize].scale(&term.weight);
            out = out.add(&power.scale_by(&coeff))?;
        }
    }
    Ok(out)
}

pub fn expand_h_sum<S: AsRef<str>>(terms: &[HTerm], variables: &[S], order: u32) -> Result<MultiSeries<CycNumber>> {
    let mut out = MultiSeries::zero(variables, order);
    for t in terms {
        out = out.add(&expand_h_term(t, variables, order)?)?;
    }
    Ok(out)
}

/// Maclaurin coefficients `a_0..=a_k` of `tan u` from `t' = 1 + t^2`.
pub fn tangent_maclaurin(k: u32) -> Vec<Rational> {
    let mut a = vec![Rational::zero(); k as usize + 1];
    for m in 0..k as usize {
        let mut rhs = if m == 0 { Rational::one() } else { Rational::zero() };
        for i in 0..=m {
            rhs += &a[i] * &a[m - i];
        }
        a[m + 1] = rhs / int(m as i64 + 1);
    }
    a
}

/// Ordinary Taylor coefficients of `tan(angle * pi + s u)` through `u^k`.
pub fn tan_taylor(angle: &Rational, s: &CycNumber, k: u32) -> Result<Vec<CycNumber>> {
    let t = tan_at(angle)?;
    let mut p = tan_derivative_polynomial(0);
    let mut out = Vec::new();
    for m in 0..=k {
        if m > 0 {
            p = next_tan_polynomial(&p);
        }
        let c = eval_poly(&p, &t) * s.pow(m);
        out.push(c.scale(&Rational::new(1.into(), factorial(m))));
    }
    Ok(out)
}

/// Integrals `<zeta_1^n>` of Z2xZ2 read off `tan(-u/2) / 2`.
pub fn fp_tangent_series(order: u32) -> BTreeMap<u32, Rational> {
    let a = tangent_maclaurin(order.saturating_sub(3));
    (0..=order)
        .map(|n| {
            let v = if n <= 3 || n % 2 == 1 {
                Rational::zero()
            } else {
                let k = n - 3;
                Rational::from_integer(factorial(k)) * rat(1, 2) * &a[k as usize] * pow(&rat(-1, 2), k)
            };
            (n, v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tan_polynomials() {
        assert_eq!(tan_derivative_polynomial(0), vec![int(0), int(1)]);
        assert_eq!(tan_derivative_polynomial(1), vec![int(1), int(0), int(1)]);
        assert_eq!(tan_derivative_polynomial(2), vec![int(0), int(2), int(0), int(2)]);
    }

    #[test]
    fn tan_values() {
        assert_eq!(tan_at(&rat(1, 4)).unwrap(), CycNumber::one());
        assert_eq!(tan_at(&rat(1, 6)).unwrap(), CycNumber::sqrt3().scale(&rat(1, 3)));
        assert_eq!(tan_at(&rat(1, 3)).unwrap(), CycNumber::sqrt3());
        assert_eq!(tan_at(&rat(0, 1)).unwrap(), CycNumber::zero());
        assert!(matches!(tan_at(&rat(1, 2)), Err(Error::PoleError(_))));
        assert!(matches!(tan_at(&rat(1, 5)), Err(Error::UnsupportedAngle(_))));
    }

    #[test]
    fn h_derivative_examples() {
        assert_eq!(h_derivative_at(3, &Phase::from_ratio(0, 1)).unwrap(), CycNumber::zero());
        assert_eq!(h_derivative_at(3, &Phase::from_ratio(-1, 2)).unwrap(), CycNumber::from_rational(rat(1, 2)));
        assert_eq!(h_derivative_at(4, &Phase::from_ratio(-1, 2)).unwrap(), CycNumber::from_rational(rat(-1, 2)));
        assert!(matches!(h_derivative_at(3, &Phase::from_ratio(1, 1)), Err(Error::PoleError(_))));
    }

    #[test]
    fn expansion_examples() {
        let zero = HTerm::new(int(1), Phase::from_ratio(1, 1), vec![CycNumber::zero(); 2]);
        assert!(expand_h_term(&zero, &["x", "y"], 6).unwrap().terms().is_empty());

        let t = HTerm::new(rat(1, 2), Phase::from_ratio(0, 1), vec![CycNumber::one()]);
        let s = expand_h_term(&t, &["x1"], 4).unwrap();
        assert_eq!(s.coeff(&[4]), CycNumber::from_rational(rat(-1, 192)));
        assert_eq!(s.coeff(&[3]), CycNumber::zero());

        let half = CycNumber::from_rational(rat(1, 2));
        let t = HTerm::new(int(1), Phase::from_ratio(-1, 2), vec![half.clone(), half.clone(), half]);
        let s = expand_h_term(&t, &["x1", "x2", "x3"], 3).unwrap();
        assert_eq!(s.coeff(&[1, 1, 1]), CycNumber::from_rational(rat(1, 16)));
    }

    #[test]
    fn tangent_coefficients() {
        let a = tangent_maclaurin(7);
        assert_eq!(a, vec![int(0), int(1), int(0), rat(1, 3), int(0), rat(2, 15), int(0), rat(17, 315)]);
    }

    #[test]
    fn fp_values() {
        let fp = fp_tangent_series(10);
        assert_eq!(fp[&3], int(0));
        assert_eq!(fp[&4], rat(-1, 4));
        assert_eq!(fp[&5], int(0));
        assert_eq!(fp[&6], rat(-1, 8));
        assert_eq!(fp[&8], rat(-1, 4));
    }

    #[test]
    fn reduces_phase_mod_two() {
        assert_eq!(Phase::from_ratio(7, 3).reduced(), Phase::from_ratio(1, 3));
        assert_eq!(Phase::from_ratio(-1, 2).reduced(), Phase::from_ratio(3, 2));
        assert_eq!(Phase::from_ratio(2, 1).reduced(), Phase::from_ratio(0, 1));
    }
}
