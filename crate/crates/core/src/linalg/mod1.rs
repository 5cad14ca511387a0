use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Fractional part: the representative of `q` in `[0, 1)`.
pub fn frac(q: &BigRational) -> BigRational {
    q - q.floor()
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Vector of rationals modulo 1, every coordinate kept in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVecMod1(Vec<BigRational>);

impl RatVecMod1 {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RatVecMod1(coords.iter().map(frac).collect())
    }

    pub fn zero(len: usize) -> Self {
        RatVecMod1(vec![BigRational::zero(); len])
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &RatVecMod1) -> RatVecMod1 {
        assert_eq!(self.len(), other.len());
        RatVecMod1::new(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> RatVecMod1 {
        RatVecMod1::new(self.0.iter().map(|a| -a).collect())
    }

    pub fn sub(&self, other: &RatVecMod1) -> RatVecMod1 {
        self.add(&other.neg())
    }

    /// Pairing `Σ θ_i v_i mod 1` with an integer vector.
    pub fn dot(&self, v: &[BigInt]) -> BigRational {
        assert_eq!(self.len(), v.len());
        frac(
            &self
                .0
                .iter()
                .zip(v)
                .map(|(t, x)| t * BigRational::from_integer(x.clone()))
                .sum(),
        )
    }

    /// Least common denominator of the coordinates (1 for the zero vector).
    pub fn denominator(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }
}

/// Exact `M θ mod 1`.
pub fn act_mod1(m: &IntMatrix, theta: &RatVecMod1) -> Result<RatVecMod1> {
    if !m.is_square() || m.cols() != theta.len() {
        return Err(Error::DimensionMismatch(format!(
            "cannot act by {}x{} matrix on vector of length {}",
            m.rows(),
            m.cols(),
            theta.len()
        )));
    }
    Ok(RatVecMod1::new(
        (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .zip(theta.coords())
                    .map(|(a, t)| t * BigRational::from_integer(a.clone()))
                    .sum()
            })
            .collect(),
    ))
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| format!("bad numerator `{n}`"))?;
    let d = BigInt::from_str(d).map_err(|_| format!("bad denominator `{d}`"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Display for RatVecMod1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for RatVecMod1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for RatVecMod1 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(RatVecMod1::zero(0));
        }
        s.split(',')
            .map(parse_rational)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(RatVecMod1::new)
            .map_err(Error::InvalidCharacter)
    }
}
