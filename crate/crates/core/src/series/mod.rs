//! Truncated formal power series with exact rational coefficients.
//!
//! [`QSeries`] is a univariate series trusted through a truncation order
//! `N` (the terms `x^0 … x^N`). It is used both for `q`-expansions of
//! modular objects and for `z`-expansions of characteristic series.
//! Binary operations return a series truncated at the smaller of the two
//! operands' orders; nothing is ever silently extended.

mod bivariate;
mod modular;
mod theta;

pub use bivariate::ZSeries;
pub(crate) use modular::odd_power_theta;
pub use modular::{eisenstein_e, eisenstein_g, eta_cubed, euler_product};
pub use theta::{theta_product, triple_product_sum, ThetaSeries};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, int, parse_rational, Rational};
use crate::error::{domain, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    /// Dense coefficients; `coeffs.len() == order + 1`.
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c·x^n`, or zero when `n` exceeds the order.
    pub fn monomial(c: Rational, n: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    /// Series from explicit coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Self { coeffs }
    }

    /// Builds `Σ_{n ≤ order} f(n) x^n`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: Rational) {
        if n <= self.order() {
            self.coeffs[n] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops every term above `order` (never extends).
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^shift`; terms pushed beyond the order are dropped.
    pub fn shift(&self, shift: usize) -> Self {
        let mut s = Self::zero(self.order());
        for (n, c) in self.coeffs.iter().enumerate() {
            if n + shift <= self.order() {
                s.coeffs[n + shift] = c.clone();
            }
        }
        s
    }

    /// Formal derivative; the result is trusted one order lower.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_fn(self.order() - 1, |n| {
            &self.coeffs[n + 1] * int(n as i64 + 1)
        })
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return domain("cannot invert a series with zero constant term");
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[n - k];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// Exact quotient `self / rhs`; `rhs` must have a nonzero constant term.
    pub fn div(&self, rhs: &QSeries) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `exp(f)` for `f` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return domain("exp requires a series with zero constant term");
        }
        // g' = f' g  =>  n g_n = Σ_{k=1}^{n} k f_k g_{n-k}
        let mut g: Vec<Rational> = vec![Rational::one()];
        for n in 1..=self.order() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &g[n - k] * int(k as i64);
                }
            }
            g.push(acc / int(n as i64));
        }
        Ok(Self { coeffs: g })
    }

    /// `log(g)` for `g` with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return domain("log requires a series with constant term 1");
        }
        // f' = g'/g  =>  n f_n = n g_n - Σ_{k=1}^{n-1} k f_k g_{n-k}
        let mut f: Vec<Rational> = vec![Rational::zero()];
        for n in 1..=self.order() {
            let mut acc = &self.coeffs[n] * int(n as i64);
            for k in 1..n {
                if !f[k].is_zero() && !self.coeffs[n - k].is_zero() {
                    acc -= &f[k] * &self.coeffs[n - k] * int(k as i64);
                }
            }
            f.push(acc / int(n as i64));
        }
        Ok(Self { coeffs: f })
    }

    /// Coefficient-wise difference as `(n, self_n, other_n)` wherever they
    /// disagree, up to the common order.
    pub fn diff(&self, other: &QSeries) -> Vec<(usize, Rational, Rational)> {
        let n = self.order().min(other.order());
        (0..=n)
            .filter(|&i| self.coeffs[i] != other.coeffs[i])
            .map(|i| (i, self.coeffs[i].clone(), other.coeffs[i].clone()))
            .collect()
    }

    pub fn to_json(&self) -> QSeriesJson {
        QSeriesJson {
            truncation: self.order(),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(n, c)| (n, format_rational(c)))
                .collect(),
        }
    }

    pub fn from_json(json: &QSeriesJson) -> Result<Self> {
        let mut s = Self::zero(json.truncation);
        for (n, c) in &json.coeffs {
            if *n > json.truncation {
                return domain(format!(
                    "exponent {n} exceeds truncation {}",
                    json.truncation
                ));
            }
            s.coeffs[*n] = parse_rational(c)?;
        }
        Ok(s)
    }

    /// Plain-text rendering such as `1 - 24q - 72q^2`, without an error term.
    pub fn to_text(&self, var: &str) -> String {
        let mut out = String::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match n {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{n}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else if a.is_integer() {
                out.push_str(&format!("{a}{mono}"));
            } else {
                out.push_str(&format!("{a} {mono}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Wire form `{ "truncation": N, "coeffs": [[n, "num/den"], …] }`, exponents
/// ascending, zero coefficients omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeriesJson {
    pub truncation: usize,
    pub coeffs: Vec<(usize, String)>,
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(q^{})", self.to_text("q"), self.order() + 1)
    }
}

impl Add for &QSeries {
    type Output = QSeries;

    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        QSeries::from_fn(n, |i| &self.coeffs[i] + &rhs.coeffs[i])
    }
}

impl Sub for &QSeries {
    type Output = QSeries;

    fn sub(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        QSeries::from_fn(n, |i| &self.coeffs[i] - &rhs.coeffs[i])
    }
}

impl Neg for &QSeries {
    type Output = QSeries;

    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;

    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: out }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);
