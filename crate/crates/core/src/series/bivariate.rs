//! Power series in `w = (2πiz)^2` whose coefficients are `q`-series.

use std::ops::Mul;

use num_traits::Zero;

use super::QSeries;
use crate::arith::{int, Rational};
use crate::error::{domain, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    /// `coeffs[k]` is the coefficient of `w^k`; all share one `q`-order.
    coeffs: Vec<QSeries>,
}

impl ZSeries {
    pub fn zero(w_order: usize, q_order: usize) -> Self {
        Self {
            coeffs: vec![QSeries::zero(q_order); w_order + 1],
        }
    }

    pub fn one(w_order: usize, q_order: usize) -> Self {
        let mut s = Self::zero(w_order, q_order);
        s.coeffs[0] = QSeries::one(q_order);
        s
    }

    /// Builds the series from `w`-coefficients, truncating all of them to
    /// the smallest `q`-order present.
    pub fn from_coeffs(coeffs: Vec<QSeries>) -> Self {
        assert!(!coeffs.is_empty());
        let q = coeffs.iter().map(QSeries::order).min().unwrap_or(0);
        Self {
            coeffs: coeffs.into_iter().map(|c| c.truncate(q)).collect(),
        }
    }

    /// A series whose `w^k` coefficient is the constant `f(k)`.
    pub fn from_rational_fn(
        w_order: usize,
        q_order: usize,
        mut f: impl FnMut(usize) -> Rational,
    ) -> Self {
        Self {
            coeffs: (0..=w_order)
                .map(|k| QSeries::constant(f(k), q_order))
                .collect(),
        }
    }

    pub fn w_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn q_order(&self) -> usize {
        self.coeffs[0].order()
    }

    pub fn coeff(&self, k: usize) -> &QSeries {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[QSeries] {
        &self.coeffs
    }

    pub fn scale_w_coeffs(&self, f: impl Fn(usize) -> Rational) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&f(k)))
                .collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == QSeries::one(self.q_order())
            && self.coeffs[1..].iter().all(QSeries::is_zero)
    }

    /// `exp(f)` for `f` whose `w^0` coefficient vanishes identically.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return domain("exp requires a series with zero w^0 coefficient");
        }
        let q = self.q_order();
        let mut g = vec![QSeries::one(q)];
        for n in 1..=self.w_order() {
            let mut acc = QSeries::zero(q);
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[k] * &g[n - k]).scale(&int(k as i64));
            }
            g.push(acc.scale(&int(n as i64).recip()));
        }
        Ok(Self { coeffs: g })
    }

    /// Inverse; the `w^0` coefficient must be an invertible `q`-series.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].inverse()?;
        let q = self.q_order();
        let mut h = vec![inv0.clone()];
        for n in 1..=self.w_order() {
            let mut acc = QSeries::zero(q);
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = &acc + &(&self.coeffs[k] * &h[n - k]);
                }
            }
            h.push(-&(&acc * &inv0));
        }
        Ok(Self { coeffs: h })
    }

    /// Multiplies by a series in `w` with `q`-independent coefficients and
    /// a sparse `q`-multiplier: `self · (1 + a(q)·Σ_{m≥1} c_m w^m)`.
    pub(crate) fn mul_one_plus(&self, a: &QSeries, c: &[Rational]) -> Self {
        let q = self.q_order().min(a.order());
        let scaled: Vec<QSeries> = self.coeffs.iter().map(|p| p * a).collect();
        let mut out: Vec<QSeries> = self.coeffs.iter().map(|p| p.truncate(q)).collect();
        for n in 1..=self.w_order() {
            for m in 1..=n {
                let cm = match c.get(m) {
                    Some(cm) if !cm.is_zero() => cm,
                    _ => continue,
                };
                out[n] = &out[n] + &scaled[n - m].scale(cm);
            }
        }
        Self { coeffs: out }
    }
}

impl Mul for &ZSeries {
    type Output = ZSeries;

    fn mul(self, rhs: &ZSeries) -> ZSeries {
        let w = self.w_order().min(rhs.w_order());
        let q = self.q_order().min(rhs.q_order());
        let mut out = ZSeries::zero(w, q);
        for i in 0..=w {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(w - i) {
                if !rhs.coeffs[j].is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn exp_of_constant_series_matches_univariate() {
        // exp(w) with trivial q-dependence
        let f = ZSeries::from_rational_fn(5, 3, |k| if k == 1 { int(1) } else { int(0) });
        let e = f.exp().unwrap();
        let mut fact = int(1);
        for k in 0..=5 {
            if k > 0 {
                fact *= int(k as i64);
            }
            assert_eq!(e.coeff(k), &QSeries::constant(fact.recip(), 3));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let mut cs = vec![];
        for k in 0..4 {
            cs.push(QSeries::from_fn(5, |n| {
                rat((k + n) as i64 + 1, 2 + n as i64)
            }));
        }
        cs[0].set_coeff(0, int(1));
        let s = ZSeries::from_coeffs(cs);
        let inv = s.inverse().unwrap();
        assert!((&s * &inv).is_one());
    }

    #[test]
    fn exp_requires_zero_constant() {
        assert!(ZSeries::one(3, 3).exp().is_err());
    }
}
