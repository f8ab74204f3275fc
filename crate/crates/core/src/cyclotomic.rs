//! Arithmetic in the cyclotomic field Q(zeta_24).
//!
//! Elements are stored in the power basis `1, z, ..., z^7` modulo
//! `z^8 - z^4 + 1`, so equality is coefficientwise.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{format_rational, int, parse_rational, Rational};

pub const DEGREE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycNumber {
    coeffs: [Rational; DEGREE],
}

impl CycNumber {
    pub fn from_coeffs(coeffs: [Rational; DEGREE]) -> Self {
        CycNumber { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational; DEGREE] {
        &self.coeffs
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut c = Self::zero();
        c.coeffs[0] = r;
        c
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// `zeta_24^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(24) as usize;
        let (k, sign) = if k >= 12 { (k - 12, -1) } else { (k, 1) };
        let mut c = Self::zero();
        if k < DEGREE {
            c.coeffs[k] = int(sign);
        } else {
            // z^k = z^(k-4) - z^(k-8) for 8 <= k < 12
            c.coeffs[k - 4] = int(sign);
            c.coeffs[k - 8] = int(-sign);
        }
        c
    }

    pub fn i() -> Self {
        Self::zeta_pow(6)
    }

    /// Primitive cube root of unity `e^(2 pi i / 3)`.
    pub fn omega() -> Self {
        Self::zeta_pow(8)
    }

    pub fn sqrt2() -> Self {
        Self::zeta_pow(3) + Self::zeta_pow(21)
    }

    pub fn sqrt3() -> Self {
        Self::zeta_pow(2) + Self::zeta_pow(22)
    }

    pub fn is_zero_value(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CycNumber { coeffs: std::array::from_fn(|k| &self.coeffs[k] * r) }
    }

    pub fn as_rational(&self) -> Result<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    /// Complex conjugation, `z -> z^-1`.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out += Self::zeta_pow(-(k as i64)).scale(c);
            }
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero_value() {
            return Err(Error::DivisionByZero);
        }
        // Column j of the multiplication matrix is self * z^j.
        let columns: Vec<CycNumber> = (0..DEGREE).map(|j| self * &Self::zeta_pow(j as i64)).collect();
        let matrix: Vec<Vec<Rational>> =
            (0..DEGREE).map(|row| columns.iter().map(|col| col.coeffs[row].clone()).collect()).collect();
        let mut rhs = vec![Rational::zero(); DEGREE];
        rhs[0] = Rational::one();
        let x = linalg::solve_square(matrix, rhs).ok_or(Error::DivisionByZero)?;
        Ok(CycNumber { coeffs: std::array::from_fn(|k| x[k].clone()) })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }
}

impl Zero for CycNumber {
    fn zero() -> Self {
        CycNumber { coeffs: std::array::from_fn(|_| Rational::zero()) }
    }
    fn is_zero(&self) -> bool {
        self.is_zero_value()
    }
}

impl One for CycNumber {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<Rational> for CycNumber {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        CycNumber { coeffs: std::array::from_fn(|k| &self.coeffs[k] + &rhs.coeffs[k]) }
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        CycNumber { coeffs: std::array::from_fn(|k| &self.coeffs[k] - &rhs.coeffs[k]) }
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        let mut wide: [Rational; 2 * DEGREE - 1] = std::array::from_fn(|_| Rational::zero());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        for k in (DEGREE..2 * DEGREE - 1).rev() {
            if wide[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut wide[k]);
            wide[k - 4] += &c;
            wide[k - 8] -= c;
        }
        CycNumber { coeffs: std::array::from_fn(|k| std::mem::take(&mut wide[k])) }
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber { coeffs: std::array::from_fn(|k| -&self.coeffs[k]) }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: CycNumber) -> CycNumber { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: &CycNumber) -> CycNumber { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl AddAssign<CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: CycNumber) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
    }
}

impl AddAssign<&CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: &CycNumber) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format_rational(c),
                _ => format!("({})z^{}", format_rational(c), k),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(DEGREE))?;
        for c in &self.coeffs {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        if raw.len() != DEGREE {
            return Err(serde::de::Error::invalid_length(raw.len(), &"8 coefficients"));
        }
        let mut out = CycNumber::zero();
        for (slot, s) in out.coeffs.iter_mut().zip(&raw) {
            *slot = parse_rational(s).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn difference_of_squares() {
        let one = CycNumber::one();
        let i = CycNumber::i();
        assert_eq!((&one + &i) * (&one - &i), CycNumber::from_int(2));
    }

    #[test]
    fn embedded_constants() {
        assert_eq!(CycNumber::sqrt3().pow(2), CycNumber::from_int(3));
        assert_eq!(CycNumber::sqrt2().pow(2), CycNumber::from_int(2));
        assert_eq!(CycNumber::i().pow(2), CycNumber::from_int(-1));
        assert_eq!(CycNumber::omega().pow(3), CycNumber::one());
        assert_ne!(CycNumber::omega(), CycNumber::one());
        assert_eq!(CycNumber::zeta_pow(12) * CycNumber::zeta_pow(12), CycNumber::one());
        assert_eq!(CycNumber::zeta_pow(24), CycNumber::one());
        assert_eq!(CycNumber::zeta_pow(5) * CycNumber::zeta_pow(7), CycNumber::zeta_pow(12));
    }

    #[test]
    fn inverses() {
        assert_eq!(CycNumber::from_int(2).inv().unwrap(), CycNumber::from_rational(rat(1, 2)));
        assert_eq!(CycNumber::sqrt3().inv().unwrap(), CycNumber::sqrt3().scale(&rat(1, 3)));
        assert_eq!(CycNumber::omega().inv().unwrap(), CycNumber::omega().pow(2));
        assert_eq!(CycNumber::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_projection() {
        assert_eq!(CycNumber::from_rational(rat(5, 2)).as_rational().unwrap(), rat(5, 2));
        assert!(matches!(CycNumber::sqrt3().as_rational(), Err(Error::NotRational(_))));
        let zero = CycNumber::sqrt3() * CycNumber::sqrt3() - CycNumber::from_int(3);
        assert_eq!(zero.as_rational().unwrap(), rat(0, 1));
    }

    #[test]
    fn conjugation() {
        assert_eq!(CycNumber::i().conj(), -CycNumber::i());
        assert_eq!(CycNumber::omega().conj(), CycNumber::omega().pow(2));
        assert!(CycNumber::sqrt2().is_real());
        assert!(CycNumber::sqrt3().is_real());
    }

    #[test]
    fn serde_round_trip() {
        let x = CycNumber::sqrt3().scale(&rat(-2, 7)) + CycNumber::from_int(1);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"["1","0","-4/7","0","0","0","2/7","0"]"#);
        let back: CycNumber = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }
}
