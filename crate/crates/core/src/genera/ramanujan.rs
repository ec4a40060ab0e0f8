//! Ramanujan's `U_{2k}` series and their partition Eisenstein traces.
//!
//! `U_{2k} = Σ(−1)^n (2n+1)^{2k+1} q^{n(n+1)/2} / Σ(−1)^n (2n+1) q^{n(n+1)/2}`
//! equals `4^k (2k+1)!·Σ_{λ⊢k} φ_U(λ) E_λ`, and the E-basis form of the
//! Â-genus trace is `(−1)^k Σ_λ |φ_U(λ)| E_λ`. The two traces differ by
//! the sign `(−1)^{ℓ(λ)}` that the formal basis change introduces, so as
//! `q`-series `U_{2k} = 4^k (2k+1)!·Â_k(τ)`.

use num_traits::{Signed, Zero};
use serde_json::json;

use super::{trace, EisensteinBasis, QuasiPoly};
use crate::arith::{factorial, format_rational, int, signum, Rational};
use crate::error::Result;
use crate::partitions::{enumerate_partitions, Partition, PhiWeight};
use crate::report::{Report, Tier};
use crate::series::{eta_cubed, odd_power_theta, QSeries};

/// `U_{2k}` through `q^order`, by exact division by `η^3` (with the
/// `q^{1/8}` cleared).
pub fn ramanujan_u(k: u32, order: usize) -> QSeries {
    let numerator = odd_power_theta(2 * k + 1, order);
    let inv = eta_cubed(order)
        .inverse()
        .expect("eta cubed has constant term 1");
    &numerator * &inv
}

/// `4^k (2k+1)!`, the factor relating `U_{2k}` to the `φ_U` trace.
pub fn ramanujan_scale(k: u32) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(4).pow(k) * factorial(2 * k + 1))
}

/// `U_{2k}` as an E-basis polynomial: `4^k (2k+1)!·Tr_k^{(E)}(φ_U)`.
pub fn ramanujan_u_quasi(k: u32) -> QuasiPoly {
    trace(&PhiWeight::U, k, EisensteinBasis::E).scale(&ramanujan_scale(k))
}

/// Partitions at which the E-basis Â-genus trace and the `φ_U` trace have
/// opposite signs.
pub fn sign_flip_partitions(k: u32) -> Vec<Partition> {
    let ahat = trace(&PhiWeight::AHat, k, EisensteinBasis::G).convert();
    let u = trace(&PhiWeight::U, k, EisensteinBasis::E);
    enumerate_partitions(k)
        .into_iter()
        .filter(|l| signum(&ahat.coeff(l)) * signum(&u.coeff(l)) < 0)
        .collect()
}

fn series_diff(report: &mut Report, lhs: &QSeries, rhs: &QSeries, what: &str) {
    for (n, a, b) in lhs.diff(rhs) {
        report.fail(json!({
            "check": what,
            "q_exponent": n,
            "lhs": format_rational(&a),
            "rhs": format_rational(&b),
        }));
    }
}

/// Checks the `U_{2k}` identity through `q^order` together with the sign
/// structure of the E-basis Â-genus trace.
///
/// Returns two reports: the `q`-series equality for `U_{2k}`, and the
/// Â-trace checks (series equality with `(−1)^k Tr(|φ_U|)`, the common sign
/// `(−1)^k`, and the sign-flip set `{λ : ℓ(λ) odd}`).
pub fn verify_ramanujan_twist(k: u32, order: usize) -> Result<Vec<Report>> {
    let mut u_report = Report::new(
        "U_2k equals 4^k (2k+1)! times the E-basis trace of phi_U",
        k as i64,
        order as i64,
        Tier::Exact,
    );
    let lhs = ramanujan_u(k, order);
    let rhs = ramanujan_u_quasi(k).to_qseries(order);
    series_diff(&mut u_report, &lhs, &rhs, "U_2k");

    let mut sign_report = Report::new(
        "E-basis A-hat trace equals (-1)^k times the trace of |phi_U|",
        k as i64,
        order as i64,
        Tier::Exact,
    );
    let ahat = trace(&PhiWeight::AHat, k, EisensteinBasis::G).convert();
    let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    let abs_u = trace(&PhiWeight::AbsU, k, EisensteinBasis::E).scale(&sign);
    series_diff(
        &mut sign_report,
        &ahat.to_qseries(order),
        &abs_u.to_qseries(order),
        "A-hat",
    );

    let expected_sign = if k.is_multiple_of(2) { 1 } else { -1 };
    for (lambda, c) in ahat.terms() {
        if signum(c) != expected_sign {
            sign_report.fail(json!({
                "check": "common sign",
                "partition": lambda.to_string(),
                "coefficient": format_rational(c),
            }));
        }
    }
    if ahat.terms().len() != enumerate_partitions(k).len() {
        sign_report.fail(json!({"check": "common sign", "missing_terms": true}));
    }

    let flips = sign_flip_partitions(k);
    let expected: Vec<Partition> = enumerate_partitions(k)
        .into_iter()
        .filter(|l| l.length() % 2 == 1)
        .collect();
    let names = |ls: &[Partition]| ls.iter().map(|l| l.to_string()).collect::<Vec<_>>();
    if flips != expected {
        sign_report.fail(json!({
            "check": "sign flips against the phi_U trace",
            "found": names(&flips),
            "expected": names(&expected),
        }));
    } else {
        sign_report.note(json!({"sign_flips": names(&flips)}));
    }
    Ok(vec![u_report, sign_report])
}

/// Absolute value of every coefficient, used to compare against `|φ_U|`.
pub fn abs_coefficients(f: &QuasiPoly) -> QuasiPoly {
    let mut out = QuasiPoly::zero(f.basis(), f.k());
    for (l, c) in f.terms() {
        if !c.is_zero() {
            out.add_term(l.clone(), c.abs());
        }
    }
    out
}
