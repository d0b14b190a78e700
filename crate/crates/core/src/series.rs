//! Truncated univariate power series in `z` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::exact::rational_to_natural;

/// `c_0 + c_1 z + ... + c_{N-1} z^{N-1} + O(z^N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Series {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "series order must be positive");
        Series { coeffs: vec![BigRational::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c z^power`; the zero series when `power >= order`.
    pub fn monomial(c: BigRational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power < order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Coefficients beyond `order` are dropped; missing ones are zero.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        assert!(order >= 1, "series order must be positive");
        coeffs.resize(order, BigRational::zero());
        Series { coeffs }
    }

    pub fn from_integers(coeffs: &[i64], order: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect(), order)
    }

    /// Truncation order `N`: coefficients `0..N` are known.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> Result<&BigRational> {
        self.coeffs.get(i).ok_or_else(|| {
            Error::InvalidInput(format!("coefficient {i} requested from a series of order {}", self.order()))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series::from_coeffs(self.coeffs[..order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        Series { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Series {
        let n = self.order();
        let mut out = Series::zero(n);
        for i in k..n {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Series> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return invalid("cannot invert a series with zero constant term");
        }
        let n = self.order();
        let inv0 = c0.recip();
        let mut out = vec![BigRational::zero(); n];
        out[0] = inv0.clone();
        for i in 1..n {
            let mut acc = BigRational::zero();
            for j in 1..=i {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[i - j];
                }
            }
            out[i] = -acc * &inv0;
        }
        Ok(Series { coeffs: out })
    }

    pub fn div(&self, rhs: &Series) -> Result<Series> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients as nonnegative integers, or an invariant error naming the first bad one.
    pub fn natural_coeffs(&self) -> Result<Vec<BigUint>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| rational_to_natural(c, &format!("coefficient {i}")))
            .collect()
    }

    /// Coefficients as integers (any sign), or an invariant error.
    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::Invariant(format!("coefficient {i} is {c}, not an integer")))
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Series> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("series JSON: {e}")))
    }
}

/// `prod_{i=0}^{j-1} (1 - a z^{shift + i})`.
pub fn qpoch(a: &BigRational, shift: usize, j: usize, order: usize) -> Series {
    let mut acc = Series::one(order);
    for i in 0..j {
        let factor = &Series::one(order) - &Series::monomial(a.clone(), shift + i, order);
        acc = &acc * &factor;
    }
    acc
}

/// `(z; z)_j`.
pub fn euler_qpoch(j: usize, order: usize) -> Series {
    qpoch(&BigRational::one(), 1, j, order)
}

fn binary_op(a: &Series, b: &Series, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Series {
    let n = a.order().min(b.order());
    Series { coeffs: (0..n).map(|i| f(&a.coeffs[i], &b.coeffs[i])).collect() }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        binary_op(self, rhs, |x, y| x + y)
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        binary_op(self, rhs, |x, y| x - y)
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Series {
            type Output = Series;

            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order())
    }
}

/// Always `p/q`, even for integers.
pub(crate) fn rational_string(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("cannot parse rational {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(rational_string))
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        if raw.is_empty() {
            return Err(serde::de::Error::custom("a series needs at least one coefficient"));
        }
        let coeffs = raw
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Series { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const N: usize = 8;

    fn ints(c: &[i64]) -> Series {
        Series::from_integers(c, N)
    }

    fn geometric() -> Series {
        ints(&[1; N])
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&ints(&[1, 1]) * &ints(&[1, -1]), ints(&[1, 0, -1]));
        let s = ints(&[3, -2, 5]);
        assert_eq!(&s + &Series::zero(N), s);
        assert_eq!(&geometric() * &ints(&[1, -1]), Series::one(N));
        assert_eq!(s.scale(&rat(2)), ints(&[6, -4, 10]));
        assert_eq!(ints(&[1, 2]).shift(3), ints(&[0, 0, 0, 1, 2]));
        assert_eq!((&ints(&[1, 2, 3]) + &Series::one(3)).order(), 3);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(ints(&[1, -1]).inverse().unwrap(), geometric());
        let alternating: Vec<i64> = (0..N).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
        // 1 + (k-1) z^m with k = 2, m = 1
        assert_eq!(ints(&[1, 1]).inverse().unwrap(), ints(&alternating));
        assert_eq!(
            Series::constant(rat(2), N).inverse().unwrap(),
            Series::constant(BigRational::new(1.into(), 2.into()), N)
        );
        assert!(ints(&[0, 1]).inverse().is_err());
    }

    #[test]
    fn qpoch_examples() {
        assert_eq!(euler_qpoch(0, N), Series::one(N));
        assert_eq!(euler_qpoch(2, N), ints(&[1, -1, -1, 1]));
        // ((1-k) z; z)_1 with k = 2
        assert_eq!(qpoch(&rat(-1), 1, 1, N), ints(&[1, 1]));
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(ints(&[1, -1]).coefficient(1).unwrap(), &rat(-1));
        let s = ints(&[4, 1, 7]);
        assert_eq!(
            s.inverse().unwrap().coefficient(0).unwrap(),
            &BigRational::new(1.into(), 4.into())
        );
        assert_eq!(geometric().coefficient(5).unwrap(), &rat(1));
        assert!(geometric().coefficient(N).is_err());
    }

    #[test]
    fn json_uses_fraction_strings() {
        let s = Series::from_coeffs(vec![rat(1), BigRational::new((-3).into(), 4.into())], 3);
        assert_eq!(s.to_json(), r#"["1/1","-3/4","0/1"]"#);
        assert_eq!(Series::from_json(&s.to_json()).unwrap(), s);
        assert_eq!(Series::from_json(r#"["2","1/2"]"#).unwrap().coeffs()[0], rat(2));
        assert!(Series::from_json(r#"["1/0"]"#).is_err());
        assert!(Series::from_json("[]").is_err());
    }

    #[test]
    fn integrality_checks() {
        assert!(ints(&[1, 2]).natural_coeffs().is_ok());
        assert!(ints(&[1, -2]).natural_coeffs().is_err());
        assert!(ints(&[1, -2]).integer_coeffs().is_ok());
        let half = Series::constant(BigRational::new(1.into(), 2.into()), 2);
        assert!(half.integer_coeffs().is_err());
    }

    fn small_series() -> impl Strategy<Value = Series> {
        prop::collection::vec((-5i64..=5, 1i64..=3), N)
            .prop_map(|v| Series::from_coeffs(v.into_iter().map(|(p, q)| BigRational::new(p.into(), q.into())).collect(), N))
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

        #[test]
        fn ring_axioms(a in small_series(), b in small_series(), c in small_series()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn inverse_is_two_sided(mut a in small_series(), c0 in 1i64..=4) {
            a = &a.shift(1) + &Series::constant(rat(c0), N);
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, Series::one(N));
            prop_assert_eq!(&inv * &a, Series::one(N));
        }

        #[test]
        fn qpoch_step(a in -3i64..=3, shift in 0usize..3, j in 0usize..5) {
            let a = rat(a);
            let next = qpoch(&a, shift, j + 1, N);
            let factor = &Series::one(N) - &Series::monomial(a.clone(), shift + j, N);
            prop_assert_eq!(next, &qpoch(&a, shift, j, N) * &factor);
        }
    }
}
