//! Exact combinatorial arithmetic and the closed-form tower counts.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, invariant, Result};
use crate::tower::WidthList;

/// `C(top, k)`, zero outside `0 <= k <= top`.
pub fn binomial(top: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > top {
        return BigUint::zero();
    }
    let k = (k as u64).min(top - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= top - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `n! / (parts[0]! ... parts[m-1]!)`.
pub fn multinomial(n: u64, parts: &[u32]) -> Result<BigUint> {
    let total: u64 = parts.iter().map(|&p| u64::from(p)).sum();
    if total != n {
        return invalid(format!("multinomial parts sum to {total}, expected {n}"));
    }
    // Product of binomials avoids the large intermediate factorials.
    let mut acc = BigUint::one();
    let mut used = 0u64;
    for &p in parts {
        used += u64::from(p);
        acc *= binomial(used, i64::from(p));
    }
    Ok(acc)
}

/// Block multiplicities `(n_1, ..., n_m)` for a width list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSpec {
    pub widths: WidthList,
    pub nvec: Vec<u32>,
}

impl CountSpec {
    pub fn new(widths: WidthList, nvec: Vec<u32>) -> Result<Self> {
        if nvec.len() != widths.len() {
            return invalid(format!(
                "multiplicity vector has {} entries but there are {} widths",
                nvec.len(),
                widths.len()
            ));
        }
        Ok(CountSpec { widths, nvec })
    }

    /// Total number of blocks.
    pub fn n(&self) -> u64 {
        self.nvec.iter().map(|&c| u64::from(c)).sum()
    }

    /// Total width `sum s_i n_i`.
    pub fn total_width(&self) -> u64 {
        self.widths
            .iter()
            .zip(&self.nvec)
            .map(|(s, &c)| u64::from(s) * u64::from(c))
            .sum()
    }

    fn require_blocks(&self) -> Result<u64> {
        match self.n() {
            0 => invalid("at least one block is required"),
            n => Ok(n),
        }
    }
}

/// Towers with the given multiplicities and exactly `b` blocks in the convex bottom row.
pub fn count_wb(spec: &CountSpec, b: u64) -> Result<BigUint> {
    let n = spec.require_blocks()?;
    if b == 0 || b > n {
        return invalid(format!("bottom-row size b={b} must lie in 1..={n}"));
    }
    let total_width = spec.total_width();
    Ok(multinomial(n, &spec.nvec)? * binomial(total_width - 1, (n - b) as i64))
}

/// Total tower count as the sum of [`count_wb`] over all bottom-row sizes.
pub fn count_total_by_sum(spec: &CountSpec) -> Result<BigUint> {
    let n = spec.require_blocks()?;
    (1..=n).map(|b| count_wb(spec, b)).sum()
}

/// Total tower count through the terminating `2F1(1, 1-n; 1 + sum (s_i-1) n_i; -1)` form.
pub fn count_total_hypergeometric(spec: &CountSpec) -> Result<BigUint> {
    let n = spec.require_blocks()?;
    let total_width = spec.total_width();
    let prefactor = multinomial(n, &spec.nvec)? * binomial(total_width - 1, (n - 1) as i64);
    let c = BigRational::from_integer(BigInt::from(1 + total_width - n));
    let f = hyp2f1_terminating(
        &BigRational::one(),
        1 - n as i64,
        &c,
        &BigRational::from_integer(BigInt::from(-1)),
    )?;
    let value = f * BigRational::from_integer(BigInt::from(prefactor));
    rational_to_natural(&value, "hypergeometric tower total")
}

/// Total tower count; both routes are evaluated and must agree.
pub fn count_total(spec: &CountSpec) -> Result<BigUint> {
    let by_sum = count_total_by_sum(spec)?;
    let by_hyp = count_total_hypergeometric(spec)?;
    if by_sum != by_hyp {
        return invariant(format!(
            "sum form {by_sum} and hypergeometric form {by_hyp} disagree for {:?}",
            spec.nvec
        ));
    }
    Ok(by_sum)
}

/// Rising factorial `(x)_j = x (x+1) ... (x+j-1)`.
pub fn rising(x: &BigRational, j: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = x.clone();
    for _ in 0..j {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

/// `2F1(a, b; c; z)` for a non-positive integer `b`, summed exactly over its
/// `|b| + 1` terms starting at `j = 0`.
pub fn hyp2f1_terminating(
    a: &BigRational,
    b: i64,
    c: &BigRational,
    z: &BigRational,
) -> Result<BigRational> {
    if b > 0 {
        return invalid(format!("2F1 terminates only for b <= 0, got b={b}"));
    }
    let terms = b.unsigned_abs();
    // (c)_j vanishes for some j <= |b| exactly when c is an integer in (b, 0].
    if c.is_integer() && !c.is_positive() && c.to_integer() > BigInt::from(b) {
        return invalid(format!("2F1 has a pole: c={c} hits zero before the series ends"));
    }
    let b = BigRational::from_integer(BigInt::from(b));
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for j in 0..=terms {
        sum += &term;
        if j == terms {
            break;
        }
        let jj = BigRational::from_integer(BigInt::from(j));
        term = term * (a + &jj) * (&b + &jj) / (c + &jj) * z / (&jj + BigRational::one());
    }
    Ok(sum)
}

/// Towers in the class U: one bottom block and nothing left of it.
pub fn count_u(spec: &CountSpec) -> Result<BigUint> {
    let n = spec.require_blocks()?;
    let numer = multinomial(n, &spec.nvec)? * binomial(spec.total_width(), (n - 1) as i64);
    let (q, r) = numer.div_rem(&BigUint::from(n));
    if !r.is_zero() {
        return invariant(format!("count of U is not an integer for {:?}", spec.nvec));
    }
    Ok(q)
}

/// Step multiset of a generalized Dyck path: `t_i` up-steps of size `l_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u32, u32)>", into = "Vec<(u32, u32)>")]
pub struct HnSpec {
    pairs: Vec<(u32, u32)>,
}

impl HnSpec {
    /// Pairs `(t_i, l_i)` of positive integers with distinct `l_i`.
    pub fn new(pairs: Vec<(u32, u32)>) -> Result<Self> {
        if pairs.is_empty() {
            return invalid("a path spec needs at least one (t, l) pair");
        }
        if pairs.iter().any(|&(t, l)| t == 0 || l == 0) {
            return invalid("path spec entries must be positive");
        }
        for (i, (_, l)) in pairs.iter().enumerate() {
            if pairs[..i].iter().any(|(_, m)| m == l) {
                return invalid(format!("up-step {l} appears in two pairs"));
            }
        }
        Ok(HnSpec { pairs })
    }

    /// Pairs `(n_i, s_i - 1)` for the widths actually used.
    pub fn from_counts(spec: &CountSpec) -> Result<Self> {
        let mut pairs = Vec::new();
        for (s, &t) in spec.widths.iter().zip(&spec.nvec) {
            if t == 0 {
                continue;
            }
            if s < 2 {
                return invalid("width-1 blocks have no Dyck path encoding");
            }
            pairs.push((t, s - 1));
        }
        Self::new(pairs)
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// Number of down-steps, `sum t_i l_i`.
    pub fn down_steps(&self) -> u64 {
        self.pairs.iter().map(|&(t, l)| u64::from(t) * u64::from(l)).sum()
    }

    /// Number of up-steps, `sum t_i`.
    pub fn up_steps(&self) -> u64 {
        self.pairs.iter().map(|&(t, _)| u64::from(t)).sum()
    }

    pub fn path_len(&self) -> u64 {
        self.down_steps() + self.up_steps()
    }

    pub fn multiplicity(&self, up: u32) -> Option<u32> {
        self.pairs.iter().find(|&&(_, l)| l == up).map(|&(t, _)| t)
    }
}

impl TryFrom<Vec<(u32, u32)>> for HnSpec {
    type Error = crate::Error;

    fn try_from(pairs: Vec<(u32, u32)>) -> Result<Self> {
        HnSpec::new(pairs)
    }
}

impl From<HnSpec> for Vec<(u32, u32)> {
    fn from(spec: HnSpec) -> Self {
        spec.pairs
    }
}

/// Number of generalized Dyck paths with the given steps:
/// `1/(1+D) * (D + T)! / (D! t_1! ... t_m!)` with `D` down-steps and `T` up-steps.
pub fn count_dyck(spec: &HnSpec) -> Result<BigUint> {
    let down = spec.down_steps();
    let mut parts = vec![down as u32];
    parts.extend(spec.pairs.iter().map(|&(t, _)| t));
    let words = multinomial(spec.path_len(), &parts)?;
    let (q, r) = words.div_rem(&BigUint::from(down + 1));
    if !r.is_zero() {
        return invariant("Dyck path count is not an integer");
    }
    Ok(q)
}

pub(crate) fn rational_to_natural(value: &BigRational, what: &str) -> Result<BigUint> {
    if !value.is_integer() || value.is_negative() {
        return invariant(format!("{what} is {value}, not a nonnegative integer"));
    }
    Ok(value.to_integer().to_biguint().expect("checked nonnegative"))
}

#[cfg(test)]
pub(crate) fn to_u64(value: &BigUint) -> u64 {
    num_traits::ToPrimitive::to_u64(value).expect("value fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(widths: &[u32], nvec: &[u32]) -> CountSpec {
        CountSpec::new(WidthList::new(widths.to_vec()).unwrap(), nvec.to_vec()).unwrap()
    }

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    fn factorial_binomial(top: u64, k: u64) -> BigUint {
        factorial(top) / (factorial(k) * factorial(top - k))
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(3, 1), BigUint::from(3u32));
        assert_eq!(binomial(5, -1), BigUint::zero());
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(7, 3), BigUint::from(35u32));
        for top in 0..30 {
            for k in 0..=top {
                assert_eq!(binomial(top, k as i64), factorial_binomial(top, k));
            }
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(2, &[1, 1]).unwrap(), BigUint::from(2u32));
        assert_eq!(multinomial(7, &[7]).unwrap(), BigUint::one());
        assert_eq!(multinomial(4, &[2, 2]).unwrap(), BigUint::from(6u32));
        assert_eq!(
            multinomial(9, &[2, 3, 4]).unwrap(),
            factorial(9) / (factorial(2) * factorial(3) * factorial(4))
        );
        assert!(multinomial(3, &[1, 1]).is_err());
    }

    #[test]
    fn wb_examples() {
        assert_eq!(count_wb(&spec(&[2], &[2]), 1).unwrap(), BigUint::from(3u32));
        assert_eq!(count_wb(&spec(&[2], &[2]), 2).unwrap(), BigUint::one());
        assert_eq!(count_wb(&spec(&[1, 2], &[1, 1]), 1).unwrap(), BigUint::from(4u32));
        assert!(count_wb(&spec(&[2], &[2]), 0).is_err());
        assert!(count_wb(&spec(&[2], &[2]), 3).is_err());
        assert!(count_wb(&spec(&[2], &[0]), 1).is_err());
    }

    #[test]
    fn domino_totals_are_powers_of_four() {
        for n in 1..=8u32 {
            let expected = BigUint::from(4u32).pow(n - 1);
            assert_eq!(count_total(&spec(&[2], &[n])).unwrap(), expected);
        }
    }

    #[test]
    fn both_total_routes_agree() {
        for widths in [&[3u32][..], &[1, 2], &[2, 3], &[1, 4, 5]] {
            let m = widths.len();
            for n in 1..=7u32 {
                let mut nvec = vec![0; m];
                nvec[0] = n;
                let s = spec(widths, &nvec);
                assert_eq!(
                    count_total_by_sum(&s).unwrap(),
                    count_total_hypergeometric(&s).unwrap()
                );
            }
        }
        assert_eq!(count_total(&spec(&[3], &[2])).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn hypergeometric_examples() {
        let one = BigRational::one();
        let minus_one = q(-1, 1);
        assert_eq!(hyp2f1_terminating(&one, 0, &q(7, 2), &minus_one).unwrap(), one);
        for c in [q(3, 1), q(5, 2), q(-7, 3)] {
            let expected = &one + &one / &c;
            assert_eq!(hyp2f1_terminating(&one, -1, &c, &minus_one).unwrap(), expected);
        }
        let f = hyp2f1_terminating(&one, -1, &q(3, 1), &minus_one).unwrap();
        assert_eq!(f, q(4, 3));
        assert_eq!(BigRational::from_integer(3.into()) * f, q(4, 1));
        assert!(hyp2f1_terminating(&one, -3, &q(-1, 1), &minus_one).is_err());
        assert!(hyp2f1_terminating(&one, -3, &q(0, 1), &minus_one).is_err());
        assert!(hyp2f1_terminating(&one, -3, &q(-3, 1), &minus_one).is_ok());
        assert!(hyp2f1_terminating(&one, 2, &one, &minus_one).is_err());
    }

    #[test]
    fn u_examples() {
        assert_eq!(count_u(&spec(&[2], &[2])).unwrap(), BigUint::from(2u32));
        assert_eq!(count_u(&spec(&[2], &[1])).unwrap(), BigUint::one());
        assert_eq!(count_u(&spec(&[2], &[3])).unwrap(), BigUint::from(5u32));
    }

    // Exhaustive count of words with nonnegative prefix sums ending at zero.
    fn brute_dyck(spec: &HnSpec) -> u64 {
        fn go(remaining: &mut Vec<(u32, u32)>, zeros: u64, height: i64) -> u64 {
            if remaining.iter().all(|&(t, _)| t == 0) && zeros == 0 {
                return u64::from(height == 0);
            }
            let mut total = 0;
            if zeros > 0 && height > 0 {
                total += go(remaining, zeros - 1, height - 1);
            }
            for i in 0..remaining.len() {
                if remaining[i].0 > 0 {
                    remaining[i].0 -= 1;
                    total += go(remaining, zeros, height + i64::from(remaining[i].1));
                    remaining[i].0 += 1;
                }
            }
            total
        }
        go(&mut spec.pairs.clone(), spec.down_steps(), 0)
    }

    #[test]
    fn dyck_examples() {
        let two = HnSpec::new(vec![(2, 1)]).unwrap();
        assert_eq!(count_dyck(&two).unwrap(), BigUint::from(2u32));
        for l in 1..6 {
            assert_eq!(count_dyck(&HnSpec::new(vec![(1, l)]).unwrap()).unwrap(), BigUint::one());
        }
        let s = spec(&[2, 3], &[1, 1]);
        assert_eq!(
            count_dyck(&HnSpec::from_counts(&s).unwrap()).unwrap(),
            count_u(&s).unwrap()
        );
        for pairs in [vec![(3, 1)], vec![(2, 2)], vec![(2, 1), (1, 2)], vec![(1, 1), (2, 3)], vec![(2, 1), (2, 2)]] {
            let h = HnSpec::new(pairs).unwrap();
            assert_eq!(to_u64(&count_dyck(&h).unwrap()), brute_dyck(&h));
        }
    }

    #[test]
    fn hn_spec_validation() {
        assert!(HnSpec::new(vec![]).is_err());
        assert!(HnSpec::new(vec![(1, 0)]).is_err());
        assert!(HnSpec::new(vec![(1, 2), (3, 2)]).is_err());
        assert!(HnSpec::from_counts(&spec(&[1, 2], &[1, 1])).is_err());
        let h = HnSpec::from_counts(&spec(&[1, 2], &[0, 3])).unwrap();
        assert_eq!(h.pairs(), &[(3, 1)]);
        assert_eq!(h.path_len(), 6);
    }
}
