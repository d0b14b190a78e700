//! Row-convex `k`-omino towers: the counting recurrence on a platform, its
//! q-series solutions `A_l`, `B_l`, and the closed forms `F_l` and `G`.
//!
//! `f_l(n)` counts row-convex towers of `n` blocks of width `k` standing on a
//! platform `l*k` columns wide, and `g(n)` counts free-standing ones.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, invariant, Result};
use crate::series::{euler_qpoch, qpoch, rat, Series};

/// Memoized evaluation of
/// `f_l(n) = sum_{i=1}^{l+1} ((l+2-i)k - 1) f_i(n-i)`, `f_l(0) = 1`.
#[derive(Debug, Clone)]
pub struct RowConvexDp {
    k: u64,
    memo: HashMap<(u64, u64), BigUint>,
}

impl RowConvexDp {
    pub fn new(k: u64) -> Self {
        RowConvexDp { k, memo: HashMap::new() }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn f(&mut self, ell: u64, n: u64) -> BigUint {
        if n == 0 {
            return BigUint::one();
        }
        if let Some(v) = self.memo.get(&(ell, n)) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for i in 1..=(ell + 1).min(n) {
            let positions = (ell + 2 - i) * self.k - 1;
            total += self.f(i, n - i) * positions;
        }
        self.memo.insert((ell, n), total.clone());
        total
    }

    /// `g(n) = sum_{l=1}^{n} f_l(n - l)`.
    pub fn g(&mut self, n: u64) -> BigUint {
        (1..=n).map(|ell| self.f(ell, n - ell)).sum()
    }
}

pub fn f_dp(ell: u64, n: u64, k: u64) -> BigUint {
    RowConvexDp::new(k).f(ell, n)
}

pub fn g_dp(n: u64, k: u64) -> BigUint {
    RowConvexDp::new(k).g(n)
}

fn check_k(k: u64) -> Result<()> {
    if k < 2 {
        return invalid(format!("block width k must be at least 2, got {k}"));
    }
    Ok(())
}

/// `h_j = z^{j(j+1)} ((1-k) z; z)_j`.
pub fn h_series(j: usize, k: u64, order: usize) -> Series {
    let a = rat(1 - k as i64);
    qpoch(&a, 1, j, order).shift(j * (j + 1))
}

// h_j / (z;z)_j^2 for every j whose leading power j(j+1) is below the order.
fn base_terms(k: u64, order: usize) -> Vec<Series> {
    let mut out = Vec::new();
    let mut j = 0;
    while j * (j + 1) < order {
        let denom = euler_qpoch(j, order);
        let denom = (&denom * &denom).inverse().expect("(z;z)_j has constant term 1");
        out.push(&h_series(j, k, order) * &denom);
        j += 1;
    }
    out
}

// Partial sums ell + sum_{m=1}^{j} (1 + 2/(1-z^m) - 1/(1+(k-1)z^m)), without the ell.
fn inner_sums(k: u64, count: usize, order: usize) -> Vec<Series> {
    let mut out = Vec::with_capacity(count);
    let mut acc = Series::zero(order);
    out.push(acc.clone());
    let one = Series::one(order);
    for m in 1..count {
        let geo = (&one - &Series::monomial(BigRational::one(), m, order))
            .inverse()
            .expect("constant term 1");
        let alt = (&one + &Series::monomial(rat(k as i64 - 1), m, order))
            .inverse()
            .expect("constant term 1");
        acc = &(&(&acc + &one) + &geo.scale(&rat(2))) - &alt;
        out.push(acc.clone());
    }
    out
}

fn a_from_terms(terms: &[Series], ell: usize, order: usize) -> Series {
    let mut sum = Series::zero(order);
    for (j, t) in terms.iter().enumerate() {
        if j * (j + 1) + ell * j >= order {
            break;
        }
        sum = &sum + &t.shift(ell * j);
    }
    sum
}

fn b_from_terms(terms: &[Series], inner: &[Series], ell: usize, order: usize) -> Series {
    let mut sum = Series::zero(order);
    let ell_const = Series::constant(rat(ell as i64), order);
    for (j, t) in terms.iter().enumerate() {
        if j * (j + 1) + ell * j >= order {
            break;
        }
        let weight = &ell_const + &inner[j];
        sum = &sum + &(&t.shift(ell * j) * &weight);
    }
    sum
}

/// `A_l = sum_j z^{lj} h_j / (z;z)_j^2`.
pub fn a_series(ell: u32, k: u64, order: usize) -> Series {
    a_from_terms(&base_terms(k, order), ell as usize, order)
}

/// `B_l = sum_j z^{lj} h_j / (z;z)_j^2 (l + sum_{m=1}^j (1 + 2/(1-z^m) - 1/(1+(k-1)z^m)))`.
pub fn b_series(ell: u32, k: u64, order: usize) -> Series {
    let terms = base_terms(k, order);
    let inner = inner_sums(k, terms.len(), order);
    b_from_terms(&terms, &inner, ell as usize, order)
}

/// Per-index residual series of an identity check; all zero means the identity holds.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub entries: Vec<(u32, Series)>,
}

impl ResidualReport {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|(_, s)| s.is_zero())
    }

    /// Indices whose residual is nonzero, with the residual's valuation.
    pub fn failures(&self) -> Vec<(u32, usize)> {
        self.entries
            .iter()
            .filter_map(|(i, s)| s.valuation().map(|v| (*i, v)))
            .collect()
    }
}

/// Residuals of `X_{l+2} - 2X_{l+1} + X_l = z^{l+2} X_{l+2} + (k-1) z^{l+3} X_{l+3}`
/// for each `l` in `ells`.
pub fn check_solution(
    family: impl Fn(u32) -> Series,
    k: u64,
    ells: impl IntoIterator<Item = u32>,
) -> ResidualReport {
    let entries = ells
        .into_iter()
        .map(|ell| {
            let (x0, x1, x2, x3) = (family(ell), family(ell + 1), family(ell + 2), family(ell + 3));
            let lhs = &(&x2 - &x1.scale(&rat(2))) + &x0;
            let rhs = &x2.shift(ell as usize + 2) + &x3.shift(ell as usize + 3).scale(&rat(k as i64 - 1));
            (ell, &lhs - &rhs)
        })
        .collect();
    ResidualReport { entries }
}

/// Residuals of the two boundary identities
/// `F_1 = 1 + (2k-1) z F_1 + (k-1) z^2 F_2` and
/// `F_2 = 1 + (3k-1) z F_1 + (2k-1) z^2 F_2 + (k-1) z^3 F_3`.
pub fn check_boundary(family: impl Fn(u32) -> Series, k: u64) -> ResidualReport {
    let (f1, f2, f3) = (family(1), family(2), family(3));
    let one = Series::one(f1.order().min(f2.order()).min(f3.order()));
    let k = k as i64;
    let r1 = &(&(&f1 - &one) - &f1.shift(1).scale(&rat(2 * k - 1))) - &f2.shift(2).scale(&rat(k - 1));
    let r2 = &(&(&(&f2 - &one) - &f1.shift(1).scale(&rat(3 * k - 1))) - &f2.shift(2).scale(&rat(2 * k - 1)))
        - &f3.shift(3).scale(&rat(k - 1));
    ResidualReport { entries: vec![(1, r1), (2, r2)] }
}

/// The closed form for `F_l` with the `l`-independent pieces computed once.
#[derive(Debug, Clone)]
pub struct RowConvexGf {
    k: u64,
    order: usize,
    terms: Vec<Series>,
    inner: Vec<Series>,
    a: [Series; 3],
    b: [Series; 3],
    denominator_inverse: Series,
}

impl RowConvexGf {
    pub fn new(k: u64, order: usize) -> Result<Self> {
        check_k(k)?;
        if order == 0 {
            return invalid("truncation order must be positive");
        }
        let terms = base_terms(k, order);
        let inner = inner_sums(k, terms.len(), order);
        let a = [1, 2, 3].map(|l| a_from_terms(&terms, l, order));
        let b = [1, 2, 3].map(|l| b_from_terms(&terms, &inner, l, order));
        let t = |s: usize, u: usize| &(&a[s - 1] * &b[u - 1]) - &(&a[u - 1] * &b[s - 1]);
        let ki = k as i64;
        let poly = |c: &[i64]| Series::from_integers(c, order);
        // (1 - (2k-1)(1+z)z + k^2 z^3) T12 + (k-1)((2k-1)z - 1) z^3 T13 + (k-1)^2 z^5 T23
        let c12 = poly(&[1, 1 - 2 * ki, 1 - 2 * ki, ki * ki]);
        let c13 = poly(&[0, 0, 0, 1 - ki, (ki - 1) * (2 * ki - 1)]);
        let c23 = poly(&[0, 0, 0, 0, 0, (ki - 1) * (ki - 1)]);
        let denominator = &(&(&c12 * &t(1, 2)) + &(&c13 * &t(1, 3))) + &(&c23 * &t(2, 3));
        if denominator.coeffs()[0].is_zero() {
            return invariant("closed-form denominator has zero constant term");
        }
        let denominator_inverse = denominator.inverse()?;
        Ok(RowConvexGf { k, order, terms, inner, a, b, denominator_inverse })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn a(&self, ell: u32) -> Series {
        a_from_terms(&self.terms, ell as usize, self.order)
    }

    pub fn b(&self, ell: u32) -> Series {
        b_from_terms(&self.terms, &self.inner, ell as usize, self.order)
    }

    /// `F_l = ((1+kz) T_{1,l} + (kz^2-1) T_{2,l} + (k-1) z^3 T_{3,l}) / denominator`,
    /// with `T_{s,t} = A_s B_t - A_t B_s`. Coefficients are checked to be integers.
    pub fn f(&self, ell: u32) -> Result<Series> {
        if ell == 0 {
            return invalid("platform width must be at least 1");
        }
        let (a_l, b_l) = (self.a(ell), self.b(ell));
        let t = |s: usize| &(&self.a[s - 1] * &b_l) - &(&a_l * &self.b[s - 1]);
        let ki = self.k as i64;
        let poly = |c: &[i64]| Series::from_integers(c, self.order);
        let numerator = &(&(&poly(&[1, ki]) * &t(1)) + &(&poly(&[-1, 0, ki]) * &t(2)))
            + &(&poly(&[0, 0, 0, ki - 1]) * &t(3));
        let f = &numerator * &self.denominator_inverse;
        f.integer_coeffs()?;
        Ok(f)
    }

    /// `G = sum_{l >= 1} z^l F_l`, truncated.
    pub fn g(&self) -> Result<Series> {
        let mut g = Series::zero(self.order);
        for ell in 1..self.order as u32 {
            g = &g + &self.f(ell)?.shift(ell as usize);
        }
        g.natural_coeffs()?;
        Ok(g)
    }
}

pub fn f_series(ell: u32, k: u64, order: usize) -> Result<Series> {
    RowConvexGf::new(k, order)?.f(ell)
}

pub fn g_series(k: u64, order: usize) -> Result<Series> {
    RowConvexGf::new(k, order)?.g()
}

/// Compares every coefficient of the closed form `F_l` with the recurrence.
pub fn verify_f_against_dp(gf: &RowConvexGf, dp: &mut RowConvexDp, ell: u32) -> Result<()> {
    let f = gf.f(ell)?;
    for (n, c) in f.natural_coeffs()?.into_iter().enumerate() {
        let expected = dp.f(u64::from(ell), n as u64);
        if c != expected {
            return invariant(format!(
                "[z^{n}] F_{ell} is {c} but the recurrence gives {expected} (k = {})",
                gf.k
            ));
        }
    }
    Ok(())
}
