//! Lattice sums and products over `Λ_τ = Zτ + Z`.
//!
//! Rows of fixed `m` are summed in parallel and then added in row order, so
//! results do not depend on the number of threads.

use std::f64::consts::PI;

use num_integer::Integer;
use rayon::prelude::*;

use super::{check_tau, zeta, C64};
use crate::arith::bernoulli_f64;
use crate::error::{domain, Result};
use crate::genera::Genus;

/// One point of the regularised lattice: `τ`, the Hecke exponent `s` and
/// the cutoff `M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeSample {
    tau: C64,
    s: f64,
    cutoff: usize,
}

impl LatticeSample {
    pub fn new(tau: C64, s: f64, cutoff: usize) -> Result<Self> {
        check_tau(tau)?;
        if !(s > 0.0) || !s.is_finite() {
            return domain(format!("s must be a positive real, got {s}"));
        }
        if cutoff == 0 {
            return domain("lattice cutoff must be at least 1");
        }
        Ok(Self { tau, s, cutoff })
    }

    pub fn tau(&self) -> C64 {
        self.tau
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Radius of the disc `|mτ+n| ≤ R` used in place of the box
    /// `|m|, |n| ≤ M`.
    pub fn radius(&self) -> f64 {
        disc_radius(self.tau, self.cutoff)
    }
}

/// `R = M·Im τ / max(1, |τ|)`.
pub fn disc_radius(tau: C64, cutoff: usize) -> f64 {
    cutoff as f64 * tau.im / tau.norm().max(1.0)
}

/// How lattice points near the edge of the disc are weighted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Window {
    /// Weight 1 inside the disc, 0 outside.
    Sharp,
    /// Weight 1 for `|w| ≤ R/2`, falling smoothly (C^∞) to 0 at `|w| = R`.
    Smooth,
}

impl Window {
    fn weight(self, t: f64) -> f64 {
        match self {
            Window::Sharp => {
                if t <= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Window::Smooth => {
                if t <= 0.5 {
                    1.0
                } else if t >= 1.0 {
                    0.0
                } else {
                    let g = |x: f64| if x > 0.0 { (-1.0 / x).exp() } else { 0.0 };
                    let u = 2.0 * (t - 0.5);
                    let (a, b) = (g(1.0 - u), g(u));
                    a / (a + b)
                }
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Half {
    /// All nonzero points.
    Full,
    /// One of each `±w`: `m > 0`, or `m = 0` and `n > 0`.
    Half,
}

/// Sums `f(m, n, w)` over nonzero `w = mτ+n` with `|w| ≤ radius`.
fn disc_sum(
    tau: C64,
    radius: f64,
    half: Half,
    coprime: bool,
    f: impl Fn(i64, i64, C64) -> C64 + Sync,
) -> C64 {
    let m_max = (radius / tau.im).floor() as i64;
    let m_min = match half {
        Half::Full => -m_max,
        Half::Half => 0,
    };
    let rows: Vec<C64> = (m_min..=m_max)
        .into_par_iter()
        .map(|m| {
            let y = m as f64 * tau.im;
            let h2 = radius * radius - y * y;
            if h2 < 0.0 {
                return C64::new(0.0, 0.0);
            }
            let h = h2.sqrt();
            let centre = -(m as f64) * tau.re;
            let mut n_lo = (centre - h).ceil() as i64;
            let n_hi = (centre + h).floor() as i64;
            if half == Half::Half && m == 0 {
                n_lo = n_lo.max(1);
            }
            let mut acc = C64::new(0.0, 0.0);
            for n in n_lo..=n_hi {
                if m == 0 && n == 0 {
                    continue;
                }
                if coprime && m.gcd(&n) != 1 {
                    continue;
                }
                let w = tau * m as f64 + n as f64;
                if w.norm() <= radius {
                    acc += f(m, n, w);
                }
            }
            acc
        })
        .collect();
    rows.into_iter().fold(C64::new(0.0, 0.0), |a, b| a + b)
}

/// `log((1−x)e^x)`, accurate for small `|x|`.
fn log_weierstrass_factor(x: C64) -> C64 {
    if x.norm() < 0.1 {
        let mut acc = C64::new(0.0, 0.0);
        let mut p = x;
        for j in 2..=40 {
            p *= x;
            let term = p / j as f64;
            acc -= term;
            if term.norm() < 1e-18 * acc.norm() {
                break;
            }
        }
        acc
    } else {
        (1.0 - x).ln() + x
    }
}

fn on_lattice(z: C64, tau: C64) -> bool {
    let m = z.im / tau.im;
    let n = z.re - m * tau.re;
    let near = |x: f64| (x - x.round()).abs() < 1e-12;
    near(m) && near(n)
}

/// `σ(z;τ) = z∏_w (1 − z²/w²)exp(z²/w²)` over the half-lattice
/// `|m|, |n| ≤ M`, for several `z` in one pass.
pub fn sigma_product_many(zs: &[C64], tau: C64, cutoff: usize) -> Result<Vec<C64>> {
    check_tau(tau)?;
    if cutoff == 0 {
        return domain("lattice cutoff must be at least 1");
    }
    for &z in zs {
        if z != C64::new(0.0, 0.0) && on_lattice(z, tau) {
            return domain(format!("sigma has a zero at the lattice point {z}"));
        }
    }
    let m_max = cutoff as i64;
    let z2: Vec<C64> = zs.iter().map(|z| z * z).collect();
    let rows: Vec<Vec<C64>> = (0..=m_max)
        .into_par_iter()
        .map(|m| {
            let n_lo = if m == 0 { 1 } else { -m_max };
            let mut acc = vec![C64::new(0.0, 0.0); zs.len()];
            for n in n_lo..=m_max {
                let w = tau * m as f64 + n as f64;
                let inv_w2 = 1.0 / (w * w);
                for (a, z2) in acc.iter_mut().zip(&z2) {
                    *a += log_weierstrass_factor(z2 * inv_w2);
                }
            }
            acc
        })
        .collect();
    let mut total = vec![C64::new(0.0, 0.0); zs.len()];
    for row in rows {
        for (t, r) in total.iter_mut().zip(row) {
            *t += r;
        }
    }
    Ok(zs.iter().zip(total).map(|(z, t)| z * t.exp()).collect())
}

pub fn sigma_product(z: C64, tau: C64, cutoff: usize) -> Result<C64> {
    Ok(sigma_product_many(&[z], tau, cutoff)?[0])
}

/// `Σ χ(|w|/R) w^{-2}|w|^{-s}` over coprime `(m, n)` (the whole lattice).
pub fn coprime_disc_sum(sample: &LatticeSample, window: Window) -> C64 {
    coprime_sum_at(sample.tau, sample.s, sample.radius(), window)
}

fn coprime_sum_at(tau: C64, s: f64, radius: f64, window: Window) -> C64 {
    disc_sum(tau, radius, Half::Full, true, |_, _, w| {
        let r = w.norm();
        window.weight(r / radius) / (w * w) * r.powf(-s)
    })
}

/// `Σ χ(|w|/R) w^{-2}|w|^{-s}` over all nonzero lattice points.
pub fn full_disc_sum(sample: &LatticeSample, window: Window) -> C64 {
    let radius = sample.radius();
    let s = sample.s;
    disc_sum(sample.tau, radius, Half::Full, false, |_, _, w| {
        let r = w.norm();
        window.weight(r / radius) / (w * w) * r.powf(-s)
    })
}

/// `Σ_{k≥1} k^{−2−s}·Σ_{coprime} χ(k|w|/R) w^{-2}|w|^{-s}`: the full
/// lattice sum regrouped by `k = gcd(m, n)`.
pub fn zeta_factorized_sum(sample: &LatticeSample, window: Window) -> C64 {
    let radius = sample.radius();
    let min_norm = shortest_vector(sample.tau);
    let mut acc = C64::new(0.0, 0.0);
    let mut k = 1usize;
    while radius / k as f64 >= min_norm {
        let kf = k as f64;
        acc += coprime_sum_at(sample.tau, sample.s, radius / kf, window) * kf.powf(-2.0 - sample.s);
        k += 1;
    }
    acc
}

/// `ζ(2+s)·Σ_{coprime} χ(|w|/R) w^{-2}|w|^{-s}`, the Hecke-regularised
/// weight-2 sum approximating `(2πi)^2 G_2^*(τ)`.
pub fn hecke_g2_sum(sample: &LatticeSample, window: Window) -> Result<C64> {
    Ok(coprime_disc_sum(sample, window) * zeta(2.0 + sample.s)?)
}

fn shortest_vector(tau: C64) -> f64 {
    let mut best = f64::INFINITY;
    for m in -3i64..=3 {
        for n in -3i64..=3 {
            if m != 0 || n != 0 {
                best = best.min((tau * m as f64 + n as f64).norm());
            }
        }
    }
    best.min(tau.im)
}

/// Power-series coefficients of `log Q(a)` and their radius of convergence.
struct LogSeries {
    coeffs: Vec<f64>,
    radius: f64,
    genus: Genus,
}

impl LogSeries {
    fn new(genus: Genus) -> Self {
        const TERMS: u32 = 40;
        let mut coeffs = vec![0.0];
        let mut fact = 1.0f64;
        for k in 1..=TERMS {
            fact *= ((2 * k - 1) * (2 * k)) as f64;
            let b = bernoulli_f64(2 * k) / ((2 * k) as f64 * fact);
            coeffs.push(match genus {
                // log Q_Â(a) = −Σ B_{2k} a^k/(2k(2k)!)
                Genus::AHat => -b,
                // log Q_L(a) = Σ 4^k(4^k−2) B_{2k} a^k/(2k(2k)!)
                Genus::L => {
                    let p = 4f64.powi(k as i32);
                    p * (p - 2.0) * b
                }
            });
        }
        let radius = match genus {
            Genus::AHat => 4.0 * PI * PI,
            Genus::L => PI * PI / 4.0,
        };
        Self {
            coeffs,
            radius,
            genus,
        }
    }

    fn eval(&self, a: C64) -> C64 {
        if a.norm() < 0.25 * self.radius {
            let mut acc = C64::new(0.0, 0.0);
            let mut p = C64::new(1.0, 0.0);
            for c in &self.coeffs[1..] {
                p *= a;
                let term = p * *c;
                acc += term;
                if term.norm() < 1e-18 * acc.norm().max(1e-300) {
                    break;
                }
            }
            acc
        } else {
            let r = a.sqrt();
            match self.genus {
                Genus::AHat => -((r / 2.0).sinh() / (r / 2.0)).ln(),
                Genus::L => (r * r.cosh() / r.sinh()).ln(),
            }
        }
    }
}

/// `∏_{x∈X} Q(x t)` over `X = {w^{-2}|w|^{-s} : w = mτ+n, gcd(m,n) = 1}`
/// (one of each `±w`, `|w| ≤ R`), with `t = (2πiz)^2` for Â and
/// `t = (πiz)^2` for L.
pub fn raw_hecke_product(genus: Genus, z: C64, sample: &LatticeSample) -> C64 {
    let series = LogSeries::new(genus);
    let i = C64::new(0.0, 1.0);
    let y = match genus {
        Genus::AHat => 2.0 * PI * i * z,
        Genus::L => PI * i * z,
    };
    let t = y * y;
    let s = sample.s;
    let total = disc_sum(sample.tau, sample.radius(), Half::Half, true, |_, _, w| {
        let x = 1.0 / (w * w) * w.norm().powf(-s);
        series.eval(x * t)
    });
    total.exp()
}
