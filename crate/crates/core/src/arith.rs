//! Exact integer and rational arithmetic plus the classical sequences
//! (Bernoulli numbers, factorials, binomials) everything else is built on.
//!
//! `Rational` is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator (zero is `0/1`).

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};

pub type Rational = num_rational::BigRational;

/// Builds `num/den` from machine integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `"num/den"`, always including the denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Least common multiple of the denominators of `values` (1 when empty).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u32, k: u32) -> Result<BigInt> {
    if k > n {
        return domain(format!("binomial({n}, {k}) requires k <= n"));
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // exact at every step: acc = C(n, i+1) afterwards
        acc = acc * (n - i) / (i + 1);
    }
    Ok(acc)
}

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// The Bernoulli number `B_n` with the convention `B_1 = -1/2`.
///
/// Values come from the recurrence `sum_{j=0}^{n} C(n+1, j) B_j = 0` and are
/// memoised process-wide.
pub fn bernoulli(n: u32) -> Rational {
    let n = n as usize;
    let mut cache = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        cache.push(Rational::one());
    }
    while cache.len() <= n {
        let m = cache.len() as u32;
        let mut sum = Rational::zero();
        let mut c = BigInt::one(); // C(m+1, j), starting at j = 0
        for (j, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                sum += b * Rational::from_integer(c.clone());
            }
            c = c * (m + 1 - j as u32) / (j as u32 + 1);
        }
        let next = -sum / Rational::from_integer(BigInt::from(m + 1));
        cache.push(next);
    }
    cache[n].clone()
}

/// `B_n` rounded to double precision.
pub fn bernoulli_f64(n: u32) -> f64 {
    to_f64(&bernoulli(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Divisor power sum `sigma_nu(n) = sum_{d | n} d^nu`.
pub fn divisor_sigma(nu: u32, n: u64) -> BigInt {
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += num_traits::pow(BigInt::from(d), nu as usize);
            let e = n / d;
            if e != d {
                total += num_traits::pow(BigInt::from(e), nu as usize);
            }
        }
        d += 1;
    }
    total
}
