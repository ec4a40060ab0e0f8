//! Double-precision evaluation of `η`, `θ`, `Θ`, `Θ̃`, `σ`, `G_{2k}` and
//! `G_2^*`, and lattice sums over `{(mτ+n)^{-2}|mτ+n|^{-s}}`.
//!
//! Conventions: `u = e^{2πiz}`, `q = e^{2πiτ}`,
//! `θ(z;τ) = Σ_n u^n q^{n²/2}`,
//! `Θ(z;τ) = (u^{1/2} − u^{−1/2})∏_{n≥1}(1−uq^n)(1−u^{-1}q^n)/(1−q^n)^2`,
//! `Θ̃(z;τ) = exp(πz²/(2 Im τ))·Θ(z;τ)`.

pub mod lattice;
pub mod verify;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::arith::bernoulli_f64;
use crate::error::{domain, Result};

pub use lattice::{
    coprime_disc_sum, disc_radius, full_disc_sum, hecke_g2_sum, raw_hecke_product, sigma_product,
    sigma_product_many, zeta_factorized_sum, LatticeSample, Window,
};
pub use verify::{
    run_numeric_suite, to_csv, verify_g2_limit, verify_raw_products, verify_tier_a, CsvRow,
    NumericConfig, NumericSuite,
};

pub type C64 = Complex64;

const I: C64 = C64::new(0.0, 1.0);
const TAIL_EPS: f64 = 1e-17;

pub(crate) fn check_tau(tau: C64) -> Result<()> {
    if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
        return domain(format!("tau must lie in the upper half-plane, got {tau}"));
    }
    Ok(())
}

fn check_finite(x: C64, what: &str) -> Result<C64> {
    if x.re.is_finite() && x.im.is_finite() {
        Ok(x)
    } else {
        domain(format!("{what} is not finite"))
    }
}

/// `q = e^{2πiτ}`.
pub fn nome(tau: C64) -> C64 {
    (2.0 * PI * I * tau).exp()
}

/// Smallest `N` with `|q|^N/(1−|q|) < eps`, the truncation used for
/// `q`-products and theta sums.
pub fn terms_for_tail(tau: C64, eps: f64) -> usize {
    let aq = (-2.0 * PI * tau.im).exp();
    let mut n = 1;
    while aq.powi(n as i32) / (1.0 - aq) >= eps && n < 100_000 {
        n += 1;
    }
    n
}

fn default_terms(tau: C64) -> usize {
    terms_for_tail(tau, TAIL_EPS) + 2
}

/// `η(τ) = q^{1/24}∏_{n≥1}(1−q^n)`, product through `n = terms`.
pub fn eval_eta(tau: C64, terms: Option<usize>) -> Result<C64> {
    check_tau(tau)?;
    let n = terms.unwrap_or_else(|| default_terms(tau));
    let q = nome(tau);
    let mut prod = C64::new(1.0, 0.0);
    let mut qn = C64::new(1.0, 0.0);
    for _ in 1..=n {
        qn *= q;
        prod *= 1.0 - qn;
    }
    check_finite((2.0 * PI * I * tau / 24.0).exp() * prod, "eta")
}

/// `θ(z;τ) = Σ_{|n|≤terms} u^n q^{n²/2}`.
pub fn eval_theta(z: C64, tau: C64, terms: Option<usize>) -> Result<C64> {
    check_tau(tau)?;
    let n =
        terms.unwrap_or_else(|| default_terms(tau) + (z.im.abs() / tau.im).ceil() as usize) as i64;
    let mut acc = C64::new(0.0, 0.0);
    for k in -n..=n {
        let k = k as f64;
        acc += (2.0 * PI * I * k * z + PI * I * k * k * tau).exp();
    }
    check_finite(acc, "theta")
}

/// `Θ(z;τ)` from its product expansion.
pub fn eval_theta_product(z: C64, tau: C64, terms: Option<usize>) -> Result<C64> {
    check_tau(tau)?;
    let n = terms.unwrap_or_else(|| default_terms(tau));
    let q = nome(tau);
    let u = (2.0 * PI * I * z).exp();
    let (uh, uhi) = ((PI * I * z).exp(), (-PI * I * z).exp());
    let mut prod = uh - uhi;
    let mut qn = C64::new(1.0, 0.0);
    for _ in 1..=n {
        qn *= q;
        let d = 1.0 - qn;
        prod *= (1.0 - u * qn) * (1.0 - qn / u) / (d * d);
    }
    check_finite(prod, "Theta")
}

/// `Θ(z;τ)` as `η^{-3} u^{1/2} q^{1/8} θ(z + τ/2 + 1/2; τ)`.
pub fn eval_theta_via_theta(z: C64, tau: C64, terms: Option<usize>) -> Result<C64> {
    let eta = eval_eta(tau, terms)?;
    let th = eval_theta(z + tau / 2.0 + 0.5, tau, terms)?;
    let prefactor = (PI * I * z).exp() * (PI * I * tau / 4.0).exp();
    check_finite(prefactor * th / (eta * eta * eta), "Theta")
}

/// `Θ̃(z;τ) = exp(πz²/(2 Im τ))·η^{-3} u^{1/2} q^{1/8} θ(z + τ/2 + 1/2; τ)`.
pub fn eval_theta_tilde(z: C64, tau: C64, terms: Option<usize>) -> Result<C64> {
    let th = eval_theta_via_theta(z, tau, terms)?;
    check_finite((PI * z * z / (2.0 * tau.im)).exp() * th, "Theta tilde")
}

/// `G_{2k}(τ) = −B_{2k}/2k + 2Σ_{d≥1} d^{2k−1} q^d/(1−q^d)`.
pub fn eval_eisenstein_g(k: u32, tau: C64) -> Result<C64> {
    check_tau(tau)?;
    if k == 0 {
        return domain("G_2k needs k >= 1");
    }
    let e = (2 * k - 1) as f64;
    let constant = -bernoulli_f64(2 * k) / (2 * k) as f64;
    let log_aq = -2.0 * PI * tau.im;
    let peak = e / -log_aq;
    let mut acc = C64::new(0.0, 0.0);
    let mut d = 1usize;
    loop {
        let df = d as f64;
        let qd = (2.0 * PI * I * tau * df).exp();
        let term = 2.0 * df.powf(e) * qd / (1.0 - qd);
        acc += term;
        let scale = acc.norm().max(constant.abs()).max(f64::MIN_POSITIVE);
        if df > peak && term.norm() < 1e-18 * scale {
            break;
        }
        d += 1;
        if d > 1_000_000 {
            return domain("Eisenstein series did not converge");
        }
    }
    check_finite(acc + constant, "G_2k")
}

pub fn eval_g2(tau: C64) -> Result<C64> {
    eval_eisenstein_g(1, tau)
}

/// `G_2^*(τ) = G_2(τ) + 1/(4π Im τ)`.
pub fn eval_g2_star(tau: C64) -> Result<C64> {
    Ok(eval_g2(tau)? + 1.0 / (4.0 * PI * tau.im))
}

/// `σ(z;τ) = (1/2πi)·exp(G_2(τ)(2πiz)²/2)·Θ(z;τ)`.
pub fn eval_sigma_q(z: C64, tau: C64) -> Result<C64> {
    let y = 2.0 * PI * I * z;
    let g2 = eval_g2(tau)?;
    let theta = eval_theta_product(z, tau, None)?;
    check_finite((g2 * y * y / 2.0).exp() * theta / (2.0 * PI * I), "sigma")
}

/// `exp(Σ_{k=2}^{k_max} G_{2k}(τ)(2πiz)^{2k}/(2k)!)`.
pub fn eval_witten_series(z: C64, tau: C64, k_max: u32) -> Result<C64> {
    let y2 = (2.0 * PI * I * z) * (2.0 * PI * I * z);
    let mut acc = C64::new(0.0, 0.0);
    let mut power = y2;
    let mut fact = 2.0;
    for k in 2..=k_max {
        power *= y2;
        fact *= ((2 * k - 1) * (2 * k)) as f64;
        acc += eval_eisenstein_g(k, tau)? * power / fact;
    }
    check_finite(acc.exp(), "Witten series")
}

/// Riemann `ζ(x)` for real `x > 1` by Euler–Maclaurin summation.
pub fn zeta(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return domain(format!("zeta is only evaluated for x > 1, got {x}"));
    }
    const N: usize = 20;
    let n = N as f64;
    let mut acc: f64 = (1..N).map(|k| (k as f64).powf(-x)).sum();
    acc += n.powf(1.0 - x) / (x - 1.0) + 0.5 * n.powf(-x);
    // Σ_j B_{2j}/(2j)! · x(x+1)…(x+2j−2) · N^{−x−2j+1}
    let mut rising = x;
    let mut fact = 2.0;
    for j in 1..=8u32 {
        let term = bernoulli_f64(2 * j) / fact * rising * n.powf(-x - (2 * j) as f64 + 1.0);
        acc += term;
        let (a, b) = ((2 * j + 1) as f64, (2 * j + 2) as f64);
        rising *= (x + a - 2.0) * (x + a - 1.0);
        fact *= a * b;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(eval_eta(c(0.0, -1.0), None).is_err());
        assert!(eval_theta(c(0.1, 0.0), c(0.0, 0.0), None).is_err());
        assert!(eval_g2_star(c(0.3, -0.1)).is_err());
    }

    #[test]
    fn theta_at_zero_by_direct_summation() {
        let tau = c(0.0, 2.0);
        let direct: f64 = (-20i32..=20)
            .map(|n| (-2.0 * PI * (n * n) as f64).exp())
            .sum();
        let th = eval_theta(c(0.0, 0.0), tau, None).unwrap();
        assert!(th.im.abs() < 1e-15);
        assert!(th.re > 1.0);
        assert!((th.re - direct).abs() < 1e-15);
    }

    #[test]
    fn theta_product_matches_theta_route() {
        let (z, tau) = (c(0.1, 0.05), c(0.0, 2.0));
        let a = eval_theta_product(z, tau, None).unwrap();
        let b = eval_theta_via_theta(z, tau, None).unwrap();
        assert!((a - b).norm() < 1e-12);
        for tau in [c(0.0, 1.0), c(0.5, 1.0), c(-0.3, 0.8)] {
            let a = eval_theta_product(z, tau, None).unwrap();
            let b = eval_theta_via_theta(z, tau, None).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm().max(1.0));
        }
    }

    #[test]
    fn theta_is_odd() {
        for (z, tau) in [(c(0.13, 0.02), c(0.0, 1.0)), (c(0.2, 0.0), c(0.5, 1.0))] {
            let a = eval_theta_product(z, tau, None).unwrap();
            let b = eval_theta_product(-z, tau, None).unwrap();
            assert!((a + b).norm() < 1e-12);
        }
    }

    #[test]
    fn theta_tilde_prefactor() {
        let (z, tau) = (c(0.2, 0.0), c(0.5, 1.0));
        let ratio =
            eval_theta_tilde(z, tau, None).unwrap() / eval_theta_product(z, tau, None).unwrap();
        let expected = (PI * z * z / (2.0 * tau.im)).exp();
        assert!((ratio - expected).norm() < 1e-12);
    }

    #[test]
    fn eisenstein_values() {
        // E_4(i) = 3Γ(1/4)^8/(2π)^6
        let gamma_quarter = 3.625_609_908_221_908_f64;
        let e4_i = 3.0 * gamma_quarter.powi(8) / (2.0 * PI).powi(6);
        let g4 = eval_eisenstein_g(2, c(0.0, 1.0)).unwrap();
        assert!((g4 * 120.0 - e4_i).norm() < 1e-10);
        // G_2 → −1/12 as Im τ → ∞
        let g2 = eval_g2(c(0.3, 12.0)).unwrap();
        assert!((g2 + 1.0 / 12.0).norm() < 1e-12);
    }

    #[test]
    fn g2_star_at_fixed_point() {
        // G_2*(−1/τ) = τ² G_2*(τ); at τ = i both sides are G_2*(i), which is 0
        let tau = c(0.0, 1.0);
        let lhs = eval_g2_star(-1.0 / tau).unwrap();
        let rhs = tau * tau * eval_g2_star(tau).unwrap();
        assert!((lhs - rhs).norm() < 1e-10);
        assert!(lhs.norm() < 1e-12);
        assert!((eval_g2_star(c(0.0, 40.0)).unwrap() + 1.0 / 12.0).norm() < 1e-2);
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta(4.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((zeta(3.0).unwrap() - 1.202_056_903_159_594_3).abs() < 1e-14);
        // ζ(2.1) by slow direct summation plus an integral tail
        let n = 200_000;
        let direct: f64 = (1..n).map(|k| (k as f64).powf(-2.1)).sum::<f64>()
            + (n as f64).powf(-1.1) / 1.1
            + 0.5 * (n as f64).powf(-2.1);
        assert!((zeta(2.1).unwrap() - direct).abs() < 1e-10);
        assert!(zeta(1.0).is_err());
    }

    #[test]
    fn sigma_q_route_is_odd_and_normalised() {
        let tau = c(0.0, 2.0);
        let z = c(1e-6, 0.0);
        assert!((eval_sigma_q(z, tau).unwrap() / z - 1.0).norm() < 1e-9);
        let z = c(0.17, 0.03);
        let (a, b) = (
            eval_sigma_q(z, tau).unwrap(),
            eval_sigma_q(-z, tau).unwrap(),
        );
        assert!((a + b).norm() < 1e-14);
    }

    #[test]
    fn witten_series_is_z_over_sigma() {
        for tau in [c(0.0, 1.0), c(0.0, 2.0), c(0.5, 1.0)] {
            for z in [0.05, 0.1, 0.2] {
                let z = c(z, 0.0);
                let lhs = eval_witten_series(z, tau, 24).unwrap();
                let rhs = z / eval_sigma_q(z, tau).unwrap();
                assert!(((lhs - rhs) / rhs).norm() < 1e-8, "{z} {tau}");
            }
        }
    }

    #[test]
    fn tail_terms() {
        let n = terms_for_tail(c(0.0, 1.0), 1e-15);
        let aq = (-2.0 * PI).exp();
        assert!(aq.powi(n as i32) / (1.0 - aq) < 1e-15);
        assert!(aq.powi(n as i32 - 1) / (1.0 - aq) >= 1e-15);
    }
}
