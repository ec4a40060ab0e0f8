//! Numerical verification of the theta-function identities.
//!
//! Tier A checks absolutely convergent forms to a tight tolerance. Tier B
//! checks the raw Hecke-regularised products and the `G_2^*` limit along a
//! decreasing grid of `s`: the residual against the theta side must not
//! increase, and a linear extrapolation to `s = 0` must land within a loose
//! empirical tolerance.

use std::f64::consts::PI;

use serde_json::{json, Value};

use super::lattice::{hecke_g2_sum, LatticeSample, Window};
use super::{
    eval_g2_star, eval_sigma_q, eval_theta_product, eval_theta_tilde, eval_theta_via_theta,
    eval_witten_series, full_disc_sum, raw_hecke_product, sigma_product_many, zeta_factorized_sum,
    C64,
};
use crate::error::{domain, Result};
use crate::genera::Genus;
use crate::report::{Report, Tier};

const I: C64 = C64::new(0.0, 1.0);
const MONOTONE_SLACK: f64 = 1e-12;
const THETA_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct NumericConfig {
    /// Real sample points `z`.
    pub zs: Vec<f64>,
    pub taus: Vec<C64>,
    /// Box cutoff `M` for the sigma product (tier A).
    pub sigma_cutoff: usize,
    /// Cutoff `M` for the Hecke-regularised sums (tier B); the disc radius
    /// is `M·Im τ/max(1, |τ|)`.
    pub lattice_cutoff: usize,
    /// Strictly decreasing positive values of `s`.
    pub s_grid: Vec<f64>,
    pub tol: f64,
    /// Bound on the change of tier-A quantities when the cutoff doubles.
    pub tol_stability: f64,
    /// Bound for the regrouping of the full lattice sum by `gcd`.
    pub tol_factorization: f64,
    /// Bound on the change of the `G_2^*` sum when the cutoff doubles.
    pub tol_cutoff_change: f64,
    /// Empirical bound for the `s → 0` extrapolation.
    pub tol_extrapolated: f64,
    /// Number of Eisenstein terms in the Witten series.
    pub witten_terms: u32,
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self {
            zs: vec![0.05, 0.1, 0.2],
            taus: vec![C64::new(0.0, 1.0), C64::new(0.0, 2.0), C64::new(0.5, 1.0)],
            sigma_cutoff: 400,
            lattice_cutoff: 300,
            s_grid: vec![1.0, 0.5, 0.25, 0.1],
            tol: 1e-6,
            tol_stability: 1e-8,
            tol_factorization: 1e-8,
            tol_cutoff_change: 1e-6,
            tol_extrapolated: 1e-2,
            witten_terms: 20,
        }
    }
}

impl NumericConfig {
    pub fn validate(&self) -> Result<()> {
        if self.s_grid.is_empty() || self.s_grid.iter().any(|s| !(*s > 0.0) || !s.is_finite()) {
            return domain("the s-grid must be non-empty and positive");
        }
        if self.s_grid.windows(2).any(|w| w[1] >= w[0]) {
            return domain("the s-grid must be strictly decreasing");
        }
        if self.taus.iter().any(|t| !(t.im > 0.0)) {
            return domain("every tau must have positive imaginary part");
        }
        if self.sigma_cutoff == 0 || self.lattice_cutoff == 0 {
            return domain("cutoffs must be positive");
        }
        let tols = [
            self.tol,
            self.tol_stability,
            self.tol_factorization,
            self.tol_cutoff_change,
            self.tol_extrapolated,
        ];
        if tols.iter().any(|t| !(*t > 0.0)) {
            return domain("tolerances must be positive");
        }
        Ok(())
    }
}

/// One row of the convergence table.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvRow {
    pub claim: String,
    pub s: f64,
    pub cutoff: usize,
    pub lhs: C64,
    pub rhs: C64,
    pub residual: f64,
}

impl CsvRow {
    pub const HEADER: &'static str = "claim,s,M,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual";

    pub fn to_line(&self) -> String {
        format!(
            "{},{:e},{},{:e},{:e},{:e},{:e},{:e}",
            self.claim,
            self.s,
            self.cutoff,
            self.lhs.re,
            self.lhs.im,
            self.rhs.re,
            self.rhs.im,
            self.residual
        )
    }
}

pub fn to_csv(rows: &[CsvRow]) -> String {
    let mut out = String::from(CsvRow::HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_line());
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, Default)]
pub struct NumericSuite {
    pub reports: Vec<Report>,
    pub csv: Vec<CsvRow>,
}

fn cjson(x: C64) -> Value {
    json!([x.re, x.im])
}

fn tau_label(tau: C64) -> String {
    match (tau.re, tau.im) {
        (re, im) if re == 0.0 && im == 1.0 => "i".to_string(),
        (re, im) if re == 0.0 => format!("{im}i"),
        (re, im) if im == 1.0 => format!("{re}+i"),
        (re, im) => format!("{re}+{im}i"),
    }
}

struct Point {
    lhs: C64,
    rhs: C64,
    relative: bool,
}

impl Point {
    fn residual(&self) -> f64 {
        let d = (self.lhs - self.rhs).norm();
        if self.relative {
            d / self.rhs.norm()
        } else {
            d
        }
    }
}

fn record(report: &mut Report, z: f64, tau: C64, p: &Point, tol: f64) {
    let r = p.residual();
    let entry = json!({
        "z": z,
        "tau": cjson(tau),
        "lhs": cjson(p.lhs),
        "rhs": cjson(p.rhs),
        "residual": r,
    });
    if r < tol && r.is_finite() {
        report.note(entry);
    } else {
        report.fail(entry);
    }
}

/// Tier A: the absolutely convergent forms of the theta identities.
pub fn verify_tier_a(cfg: &NumericConfig) -> Result<Vec<Report>> {
    cfg.validate()?;
    let m = cfg.sigma_cutoff as i64;
    let new = |claim: &str, tol: f64| Report::new(claim, 0, m, Tier::A).with_tolerance(tol);
    let mut theta = new(
        "Theta product equals eta^-3 u^(1/2) q^(1/8) theta(z + tau/2 + 1/2)",
        THETA_TOL,
    );
    let mut odd = new("Theta(-z) equals -Theta(z)", THETA_TOL);
    let mut sigma = new(
        "sigma lattice product equals (1/2 pi i) exp(G2 (2 pi i z)^2/2) Theta (relative)",
        cfg.tol,
    );
    let mut ahat = new(
        "exp((2 pi i z)^2 G2*/2) z/sigma(z) equals 2 pi i z / Theta~(z)",
        cfg.tol,
    );
    let mut l = new(
        "(exp((2 pi i z)^2 G2*/2) z/sigma(z))^2 / (exp((4 pi i z)^2 G2*/2) 2z/sigma(2z)) equals pi i z Theta~(2z)/Theta~(z)^2",
        cfg.tol,
    );
    let mut witten = new(
        "2 pi i z / Theta~(z) equals exp((2 pi i z)^2 G2*/2) Q_W(z)",
        cfg.tol,
    );
    let mut witten_sigma = new("Q_W(z) equals z/sigma(z) (relative)", cfg.tol_stability);
    let mut stability = new(
        "doubling the sigma cutoff changes sigma by less than the bound (relative)",
        cfg.tol_stability,
    );

    for &tau in &cfg.taus {
        let g2s = eval_g2_star(tau)?;
        let mut zs: Vec<C64> = cfg.zs.iter().map(|&z| C64::new(z, 0.0)).collect();
        zs.extend(cfg.zs.iter().map(|&z| C64::new(2.0 * z, 0.0)));
        let sig = sigma_product_many(&zs, tau, cfg.sigma_cutoff)?;
        let sig2 = sigma_product_many(&zs, tau, 2 * cfg.sigma_cutoff)?;
        let nz = cfg.zs.len();
        for (idx, &zr) in cfg.zs.iter().enumerate() {
            let z = C64::new(zr, 0.0);
            let y = 2.0 * PI * I * z;
            let prod = eval_theta_product(z, tau, None)?;
            let via = eval_theta_via_theta(z, tau, None)?;
            record(
                &mut theta,
                zr,
                tau,
                &Point {
                    lhs: prod,
                    rhs: via,
                    relative: false,
                },
                THETA_TOL,
            );
            let minus = eval_theta_product(-z, tau, None)?;
            record(
                &mut odd,
                zr,
                tau,
                &Point {
                    lhs: minus,
                    rhs: -prod,
                    relative: false,
                },
                THETA_TOL,
            );

            let s_q = eval_sigma_q(z, tau)?;
            record(
                &mut sigma,
                zr,
                tau,
                &Point {
                    lhs: sig[idx],
                    rhs: s_q,
                    relative: true,
                },
                cfg.tol,
            );
            for (a, b) in [(sig[idx], sig2[idx]), (sig[nz + idx], sig2[nz + idx])] {
                record(
                    &mut stability,
                    zr,
                    tau,
                    &Point {
                        lhs: a,
                        rhs: b,
                        relative: true,
                    },
                    cfg.tol_stability,
                );
            }

            let completion = |y: C64| (y * y * g2s / 2.0).exp();
            let ahat_lhs = completion(y) * z / sig[idx];
            let tt = eval_theta_tilde(z, tau, None)?;
            let ahat_rhs = y / tt;
            record(
                &mut ahat,
                zr,
                tau,
                &Point {
                    lhs: ahat_lhs,
                    rhs: ahat_rhs,
                    relative: false,
                },
                cfg.tol,
            );

            let ahat_2z = completion(2.0 * y) * (2.0 * z) / sig[nz + idx];
            let l_lhs = ahat_lhs * ahat_lhs / ahat_2z;
            let l_rhs = PI * I * z * eval_theta_tilde(2.0 * z, tau, None)? / (tt * tt);
            record(
                &mut l,
                zr,
                tau,
                &Point {
                    lhs: l_lhs,
                    rhs: l_rhs,
                    relative: false,
                },
                cfg.tol,
            );

            let q_w = eval_witten_series(z, tau, cfg.witten_terms)?;
            record(
                &mut witten,
                zr,
                tau,
                &Point {
                    lhs: ahat_rhs,
                    rhs: completion(y) * q_w,
                    relative: false,
                },
                cfg.tol,
            );
            record(
                &mut witten_sigma,
                zr,
                tau,
                &Point {
                    lhs: q_w,
                    rhs: z / s_q,
                    relative: true,
                },
                cfg.tol_stability,
            );
        }
    }
    Ok(vec![
        theta,
        odd,
        sigma,
        stability,
        ahat,
        l,
        witten,
        witten_sigma,
    ])
}

/// Line through the last two grid points, evaluated at `s = 0`.
fn extrapolate(grid: &[f64], values: &[C64]) -> Option<C64> {
    let n = values.len();
    if n < 2 {
        return None;
    }
    let (sa, sb) = (grid[n - 2], grid[n - 1]);
    let (va, vb) = (values[n - 2], values[n - 1]);
    Some(vb - (va - vb) * (sb / (sa - sb)))
}

/// Marks `report` failed unless `residuals` never increase along the grid
/// and the extrapolated value is within `tol` of `target`.
fn check_convergence(
    report: &mut Report,
    label: Value,
    grid: &[f64],
    values: &[C64],
    target: C64,
    tol: f64,
) {
    let residuals: Vec<f64> = values.iter().map(|v| (v - target).norm()).collect();
    let monotone = residuals.windows(2).all(|w| w[1] <= w[0] + MONOTONE_SLACK);
    let extrapolated = extrapolate(grid, values);
    let extrapolated_residual = extrapolated.map(|v| (v - target).norm());
    let close = extrapolated_residual.is_none_or(|r| r < tol);
    let entry = json!({
        "at": label,
        "s": grid,
        "residuals": residuals,
        "monotone": monotone,
        "target": cjson(target),
        "extrapolated": extrapolated.map(cjson),
        "extrapolated_residual": extrapolated_residual,
    });
    if monotone && close {
        report.note(entry);
    } else {
        report.fail(entry);
    }
}

/// Tier B: `ζ(2+s)·Σ_{coprime}(mτ+n)^{-2}|mτ+n|^{-s} → (2πi)^2 G_2^*(τ)`,
/// together with the exact regrouping of the full lattice sum by
/// `k = gcd(m, n)` and cutoff stability.
pub fn verify_g2_limit(cfg: &NumericConfig, csv: &mut Vec<CsvRow>) -> Result<Vec<Report>> {
    cfg.validate()?;
    let m = cfg.lattice_cutoff;
    let mut limit = Report::new(
        "zeta(2+s) times the coprime Hecke sum tends to (2 pi i)^2 G2* as s decreases",
        0,
        m as i64,
        Tier::B,
    )
    .with_tolerance(cfg.tol_extrapolated);
    let mut factor = Report::new(
        "the full lattice sum equals sum_k k^(-2-s) times the coprime sum at radius R/k",
        0,
        m as i64,
        Tier::A,
    )
    .with_tolerance(cfg.tol_factorization);
    let mut cutoff = Report::new(
        "doubling the cutoff changes zeta(2+s) times the coprime Hecke sum by less than the bound",
        0,
        m as i64,
        Tier::B,
    )
    .with_tolerance(cfg.tol_cutoff_change);

    for &tau in &cfg.taus {
        let target = eval_g2_star(tau)? * (2.0 * PI * I) * (2.0 * PI * I);
        let mut values = Vec::new();
        for &s in &cfg.s_grid {
            let sample = LatticeSample::new(tau, s, m)?;
            let v = hecke_g2_sum(&sample, Window::Smooth)?;
            csv.push(CsvRow {
                claim: format!("g2-limit tau={}", tau_label(tau)),
                s,
                cutoff: m,
                lhs: v,
                rhs: target,
                residual: (v - target).norm(),
            });
            values.push(v);

            let direct = full_disc_sum(&sample, Window::Smooth);
            let regrouped = zeta_factorized_sum(&sample, Window::Smooth);
            let d = (direct - regrouped).norm();
            let entry = json!({"tau": cjson(tau), "s": s, "direct": cjson(direct), "regrouped": cjson(regrouped), "residual": d});
            if d < cfg.tol_factorization {
                factor.note(entry);
            } else {
                factor.fail(entry);
            }
        }
        check_convergence(
            &mut limit,
            json!({"tau": cjson(tau)}),
            &cfg.s_grid,
            &values,
            target,
            cfg.tol_extrapolated,
        );

        let s = cfg.s_grid[0];
        let a = hecke_g2_sum(&LatticeSample::new(tau, s, m)?, Window::Smooth)?;
        let b = hecke_g2_sum(&LatticeSample::new(tau, s, 2 * m)?, Window::Smooth)?;
        let d = (a - b).norm();
        let entry = json!({"tau": cjson(tau), "s": s, "M": m, "value": cjson(a), "doubled": cjson(b), "change": d});
        if d < cfg.tol_cutoff_change {
            cutoff.note(entry);
        } else {
            cutoff.fail(entry);
        }
    }
    Ok(vec![factor, limit, cutoff])
}

/// Tier B: the raw products `∏_{x∈X_τ(s)} Q(xt)` for Â and L against
/// their theta-function limits.
pub fn verify_raw_products(cfg: &NumericConfig, csv: &mut Vec<CsvRow>) -> Result<Vec<Report>> {
    cfg.validate()?;
    let m = cfg.lattice_cutoff;
    let mut reports = Vec::new();
    for genus in [Genus::AHat, Genus::L] {
        let claim = match genus {
            Genus::AHat => "raw A-hat product over X_tau(s) at t = (2 pi i z)^2 tends to 2 pi i z / Theta~(z)",
            Genus::L => "raw L product over X_tau(s) at t = (pi i z)^2 tends to pi i z Theta~(2z)/Theta~(z)^2",
        };
        let mut report =
            Report::new(claim, 0, m as i64, Tier::B).with_tolerance(cfg.tol_extrapolated);
        for &tau in &cfg.taus {
            for &zr in &cfg.zs {
                let z = C64::new(zr, 0.0);
                let tt = eval_theta_tilde(z, tau, None)?;
                let target = match genus {
                    Genus::AHat => 2.0 * PI * I * z / tt,
                    Genus::L => PI * I * z * eval_theta_tilde(2.0 * z, tau, None)? / (tt * tt),
                };
                let mut values = Vec::new();
                for &s in &cfg.s_grid {
                    let v = raw_hecke_product(genus, z, &LatticeSample::new(tau, s, m)?);
                    csv.push(CsvRow {
                        claim: format!("{}-raw z={zr} tau={}", genus_tag(genus), tau_label(tau)),
                        s,
                        cutoff: m,
                        lhs: v,
                        rhs: target,
                        residual: (v - target).norm(),
                    });
                    values.push(v);
                }
                check_convergence(
                    &mut report,
                    json!({"z": zr, "tau": cjson(tau)}),
                    &cfg.s_grid,
                    &values,
                    target,
                    cfg.tol_extrapolated,
                );
            }
        }
        reports.push(report);
    }
    Ok(reports)
}

fn genus_tag(genus: Genus) -> &'static str {
    match genus {
        Genus::AHat => "ahat",
        Genus::L => "l",
    }
}

/// All numeric checks, tier A first.
pub fn run_numeric_suite(cfg: &NumericConfig) -> Result<NumericSuite> {
    let mut suite = NumericSuite {
        reports: verify_tier_a(cfg)?,
        csv: Vec::new(),
    };
    suite.reports.extend(verify_g2_limit(cfg, &mut suite.csv)?);
    suite
        .reports
        .extend(verify_raw_products(cfg, &mut suite.csv)?);
    Ok(suite)
}
