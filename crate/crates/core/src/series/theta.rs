//! Bivariate Laurent series in `v` (with `v^2 = u = e^{2πiz}`) and `q`.
//!
//! Half-integer powers of `u` are stored as odd powers of `v`; `q` carries
//! integer exponents only, since every identity checked here is first
//! cleared of its `q^{1/8}` and `q^{1/24}` prefactors.

use std::collections::BTreeMap;
use std::ops::{Mul, Sub};

use num_traits::Zero;

use super::QSeries;
use crate::arith::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSeries {
    /// `(q_exponent, v_exponent) → coefficient`, zeros not stored.
    terms: BTreeMap<(i64, i64), Rational>,
    /// Terms with `q`-exponent `≤ q_order` are trusted.
    q_order: i64,
}

impl ThetaSeries {
    pub fn zero(q_order: i64) -> Self {
        Self {
            terms: BTreeMap::new(),
            q_order,
        }
    }

    pub fn one(q_order: i64) -> Self {
        let mut s = Self::zero(q_order);
        s.add_term(0, 0, int(1));
        s
    }

    pub fn q_order(&self) -> i64 {
        self.q_order
    }

    /// Coefficient of `v^v_exp q^q_exp`.
    pub fn coeff(&self, v_exp: i64, q_exp: i64) -> Rational {
        self.terms
            .get(&(q_exp, v_exp))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Iterates `((v_exp, q_exp), coefficient)` ordered by `q` then `v`.
    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), &Rational)> {
        self.terms.iter().map(|(&(q, v), c)| ((v, q), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·v^v_exp q^q_exp`; terms beyond the truncation are dropped.
    pub fn add_term(&mut self, v_exp: i64, q_exp: i64, c: Rational) {
        if q_exp > self.q_order || c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry((q_exp, v_exp))
            .or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(q_exp, v_exp));
        }
    }

    /// The `q^q_exp` slice as a map `v_exp → coefficient`.
    pub fn q_slice(&self, q_exp: i64) -> BTreeMap<i64, Rational> {
        self.terms
            .range((q_exp, i64::MIN)..=(q_exp, i64::MAX))
            .map(|(&(_, v), c)| (v, c.clone()))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.q_order);
        for (&(q, v), a) in &self.terms {
            out.add_term(v, q, a * c);
        }
        out
    }

    /// Multiplies by a series in `q` alone.
    pub fn mul_qseries(&self, f: &QSeries) -> Self {
        let order = self.q_order.min(f.order() as i64);
        let mut out = Self::zero(order);
        for (&(q, v), a) in &self.terms {
            for (n, b) in f.coeffs().iter().enumerate() {
                let e = q + n as i64;
                if e > order {
                    break;
                }
                if !b.is_zero() {
                    out.add_term(v, e, a * b);
                }
            }
        }
        out
    }

    /// Substitutes `v ↦ v^{-1}` (that is, `z ↦ -z`).
    pub fn invert_v(&self) -> Self {
        let mut out = Self::zero(self.q_order);
        for (&(q, v), a) in &self.terms {
            out.add_term(-v, q, a.clone());
        }
        out
    }

    /// Substitutes `v ↦ -v`.
    pub fn negate_v(&self) -> Self {
        let mut out = Self::zero(self.q_order);
        for (&(q, v), a) in &self.terms {
            out.add_term(v, q, if v % 2 == 0 { a.clone() } else { -a });
        }
        out
    }
}

impl Mul for &ThetaSeries {
    type Output = ThetaSeries;

    fn mul(self, rhs: &ThetaSeries) -> ThetaSeries {
        let order = self.q_order.min(rhs.q_order);
        let mut out = ThetaSeries::zero(order);
        for (&(qa, va), a) in &self.terms {
            for (&(qb, vb), b) in &rhs.terms {
                if qa + qb > order {
                    break;
                }
                out.add_term(va + vb, qa + qb, a * b);
            }
        }
        out
    }
}

impl Sub for &ThetaSeries {
    type Output = ThetaSeries;

    fn sub(self, rhs: &ThetaSeries) -> ThetaSeries {
        let order = self.q_order.min(rhs.q_order);
        let mut out = ThetaSeries::zero(order);
        for (&(q, v), a) in &self.terms {
            out.add_term(v, q, a.clone());
        }
        for (&(q, v), b) in &rhs.terms {
            out.add_term(v, q, -b);
        }
        out
    }
}

/// `Θ` without its `q`-independent normalisation:
/// `(v - v^{-1}) ∏_{n≥1} (1 - v^2 q^n)(1 - v^{-2} q^n) / (1 - q^n)^2`
/// through `q^order`.
pub fn theta_product(order: usize) -> ThetaSeries {
    let q_order = order as i64;
    let mut acc = ThetaSeries::zero(q_order);
    acc.add_term(1, 0, int(1));
    acc.add_term(-1, 0, int(-1));
    for n in 1..=q_order {
        let mut factor = ThetaSeries::zero(q_order);
        // (1 - v^2 q^n)(1 - v^-2 q^n) = 1 - (v^2 + v^-2) q^n + q^{2n}
        factor.add_term(0, 0, int(1));
        factor.add_term(2, n, int(-1));
        factor.add_term(-2, n, int(-1));
        factor.add_term(0, 2 * n, int(1));
        acc = &acc * &factor;
    }
    // 1/∏(1-q^n)^2
    let euler = super::euler_product(order);
    let inv = euler.inverse().expect("Euler product has constant term 1");
    acc.mul_qseries(&(&inv * &inv))
}

/// The sum side of the Jacobi triple product after clearing `u^{1/2}q^{1/8}`
/// and `η^3`: `Σ_{n∈Z} (-1)^n v^{2n+1} q^{n(n+1)/2}` through `q^order`.
pub fn triple_product_sum(order: usize) -> ThetaSeries {
    let q_order = order as i64;
    let mut s = ThetaSeries::zero(q_order);
    let mut n: i64 = 0;
    // n and -n-1 share the exponent n(n+1)/2
    while n * (n + 1) / 2 <= q_order {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        s.add_term(2 * n + 1, n * (n + 1) / 2, int(sign));
        let m = -n - 1;
        s.add_term(2 * m + 1, n * (n + 1) / 2, int(-sign));
        n += 1;
    }
    s
}
