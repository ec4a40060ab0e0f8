//! Exact `q`-expansions of Eisenstein series and of `η^3`.

use num_traits::Zero;

use super::QSeries;
use crate::arith::{bernoulli, divisor_sigma, int, Rational};

/// `G_{2k} = -B_{2k}/(2k) + 2 Σ_{n≥1} σ_{2k-1}(n) q^n` through `q^order`.
///
/// Panics if `k == 0`.
pub fn eisenstein_g(k: u32, order: usize) -> QSeries {
    assert!(k >= 1, "G_{{2k}} needs k >= 1");
    let constant = -bernoulli(2 * k) / int(2 * k as i64);
    QSeries::from_fn(order, |n| {
        if n == 0 {
            constant.clone()
        } else {
            Rational::from_integer(divisor_sigma(2 * k - 1, n as u64) * 2)
        }
    })
}

/// `E_{2j} = -(2j/B_{2j})·G_{2j} = 1 - (4j/B_{2j}) Σ σ_{2j-1}(n) q^n`,
/// normalised to constant term 1.
pub fn eisenstein_e(j: u32, order: usize) -> QSeries {
    let factor = -int(2 * j as i64) / bernoulli(2 * j);
    eisenstein_g(j, order).scale(&factor)
}

/// `Σ_{n≥0} (-1)^n (2n+1) q^{n(n+1)/2}`, which is `η(τ)^3` with the
/// `q^{1/8}` prefactor cleared.
pub fn eta_cubed(order: usize) -> QSeries {
    odd_power_theta(1, order)
}

/// `Σ_{n≥0} (-1)^n (2n+1)^e q^{n(n+1)/2}`.
pub(crate) fn odd_power_theta(e: u32, order: usize) -> QSeries {
    let mut s = QSeries::zero(order);
    let mut n = 0usize;
    while n * (n + 1) / 2 <= order {
        let base = int(2 * n as i64 + 1);
        let mut c = num_traits::pow(base, e as usize);
        if n % 2 == 1 {
            c = -c;
        }
        s.set_coeff(n * (n + 1) / 2, c);
        n += 1;
    }
    s
}

/// `∏_{n≥1} (1 - q^n)` through `q^order`.
pub fn euler_product(order: usize) -> QSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    coeffs[0] = int(1);
    for n in 1..=order {
        // multiply in place by (1 - q^n), high exponents first
        for e in (n..=order).rev() {
            let lower = coeffs[e - n].clone();
            if !lower.is_zero() {
                coeffs[e] -= lower;
            }
        }
    }
    QSeries::from_coeffs(coeffs)
}
