//! The Witten characteristic series in the grading `w = (2πiz)^2`.
//!
//! `Q_W = exp(Σ_{k≥2} G_{2k} w^k/(2k)!)` is computed directly, and
//! independently as the inverse of
//! `σ(z)/z = exp(G_2 w/2)·(sinh(y/2)/(y/2))·∏_{n≥1}(1 − 2(cosh y − 1) q^n/(1−q^n)^2)`
//! with `y = 2πiz`, which is the product expansion of the Weierstrass
//! sigma function.

use num_traits::{One, Zero};
use serde_json::json;

use super::{trace, EisensteinBasis, QuasiPoly};
use crate::arith::{factorial, format_rational, int, Rational};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::report::{Report, Tier};
use crate::series::{eisenstein_g, QSeries, ZSeries};

fn inv_factorial(n: u32) -> Rational {
    Rational::from_integer(factorial(n)).recip()
}

/// `Σ_{k≥2} G_{2k} w^k/(2k)!`, the logarithm of `Q_W`.
pub fn witten_log_series(w_order: usize, q_order: usize) -> ZSeries {
    let coeffs = (0..=w_order)
        .map(|k| {
            if k < 2 {
                QSeries::zero(q_order)
            } else {
                eisenstein_g(k as u32, q_order).scale(&inv_factorial(2 * k as u32))
            }
        })
        .collect();
    ZSeries::from_coeffs(coeffs)
}

/// `Q_W = exp(Σ_{k≥2} G_{2k} w^k/(2k)!)`.
pub fn witten_series(w_order: usize, q_order: usize) -> ZSeries {
    witten_log_series(w_order, q_order)
        .exp()
        .expect("the log series has no w^0 term")
}

/// `σ(z)/z` from the theta product.
pub fn sigma_over_z(w_order: usize, q_order: usize) -> ZSeries {
    // exp(G_2 w/2)
    let mut g2_term = ZSeries::zero(w_order, q_order).coeffs().to_vec();
    if w_order >= 1 {
        g2_term[1] = eisenstein_g(1, q_order).scale(&Rational::new(1.into(), 2.into()));
    }
    let exp_g2 = ZSeries::from_coeffs(g2_term).exp().expect("no w^0 term");
    // sinh(y/2)/(y/2) = Σ w^m/(4^m (2m+1)!)
    let sinh = ZSeries::from_rational_fn(w_order, q_order, |m| {
        inv_factorial(2 * m as u32 + 1)
            / Rational::from_integer(num_bigint::BigInt::from(4).pow(m as u32))
    });
    let mut acc = &exp_g2 * &sinh;
    // −2(cosh y − 1) = −2 Σ_{m≥1} w^m/(2m)!
    let c: Vec<Rational> = (0..=w_order)
        .map(|m| {
            if m == 0 {
                Rational::zero()
            } else {
                -inv_factorial(2 * m as u32) * int(2)
            }
        })
        .collect();
    for n in 1..=q_order {
        // q^n/(1−q^n)^2 = Σ_r r q^{nr}
        let a = QSeries::from_fn(q_order, |e| {
            if e > 0 && e % n == 0 {
                int((e / n) as i64)
            } else {
                Rational::zero()
            }
        });
        acc = acc.mul_one_plus(&a, &c);
    }
    acc
}

/// `φ_W(λ)`: zero when `λ` has a part of size 1, otherwise
/// `∏_j (1/m_j!)(1/(2j)!)^{m_j}`.
pub fn witten_weight(lambda: &Partition) -> Rational {
    if lambda.multiplicity(1) > 0 {
        return Rational::zero();
    }
    lambda.iter().fold(Rational::one(), |acc, (j, m)| {
        acc * inv_factorial(m) * num_traits::pow(inv_factorial(2 * j), m as usize)
    })
}

/// The coefficient of `(2πiz)^{2k}` in `Q_W` as a polynomial in
/// `G_4, G_6, …` (or `E_4, E_6, …`).
pub fn witten_trace(k: u32, basis: EisensteinBasis) -> QuasiPoly {
    trace(&witten_weight, k, EisensteinBasis::G).in_basis(basis)
}

/// The coefficient of `(2πiz)^{2k}` in `Q_W` through `q^order`, checked
/// against the coefficient of `z/σ(z)`.
pub fn witten_coefficient(k: u32, order: usize) -> Result<QSeries> {
    let k = k as usize;
    let direct = witten_series(k, order).coeff(k).clone();
    let via_sigma = sigma_over_z(k, order).inverse()?.coeff(k).clone();
    if direct != via_sigma {
        return Err(Error::Consistency(format!(
            "Witten coefficient k={k}: exponential series and z/sigma disagree"
        )));
    }
    Ok(direct)
}

/// Checks `exp(Σ_{k≥2} G_{2k} w^k/(2k)!)·σ(z)/z = 1` through `w^w_order`
/// and `q^q_order`, and that each `w^k` coefficient matches the Witten
/// partition trace.
pub fn verify_witten_identity(w_order: usize, q_order: usize) -> Report {
    let mut report = Report::new(
        "exp(sum_{k>=2} G_2k (2 pi i z)^2k/(2k)!) times sigma(z)/z equals 1",
        w_order as i64,
        q_order as i64,
        Tier::Exact,
    );
    let q_w = witten_series(w_order, q_order);
    let product = &q_w * &sigma_over_z(w_order, q_order);
    for (k, c) in product.coeffs().iter().enumerate() {
        let expected = if k == 0 {
            QSeries::one(q_order)
        } else {
            QSeries::zero(q_order)
        };
        for (n, a, b) in c.diff(&expected) {
            report.fail(json!({
                "check": "product",
                "w_exponent": k,
                "q_exponent": n,
                "lhs": format_rational(&a),
                "rhs": format_rational(&b),
            }));
        }
    }
    for (k, c) in q_w.coeffs().iter().enumerate() {
        let from_trace = witten_trace(k as u32, EisensteinBasis::G).to_qseries(q_order);
        for (n, a, b) in c.diff(&from_trace) {
            report.fail(json!({
                "check": "partition trace",
                "w_exponent": k,
                "q_exponent": n,
                "lhs": format_rational(&a),
                "rhs": format_rational(&b),
            }));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn low_coefficients() {
        assert_eq!(witten_coefficient(0, 10).unwrap(), QSeries::one(10));
        assert_eq!(witten_coefficient(1, 10).unwrap(), QSeries::zero(10));
        assert_eq!(
            witten_coefficient(2, 10).unwrap(),
            eisenstein_g(2, 10).scale(&rat(1, 24))
        );
        // w^4: G_8/8! + G_4^2/(2·4!^2)
        let g4 = eisenstein_g(2, 8);
        let expected =
            &eisenstein_g(4, 8).scale(&rat(1, 40320)) + &(&g4 * &g4).scale(&rat(1, 1152));
        assert_eq!(witten_coefficient(4, 8).unwrap(), expected);
    }

    #[test]
    fn trace_form() {
        let w3 = witten_trace(3, EisensteinBasis::G);
        assert_eq!(w3.to_text(), "1/720 G6");
        assert!(witten_trace(5, EisensteinBasis::G).is_holomorphic());
        assert_eq!(
            witten_trace(1, EisensteinBasis::E),
            QuasiPoly::zero(EisensteinBasis::E, 1)
        );
    }

    #[test]
    fn sigma_leading_terms() {
        // the q^0 part of σ/z is exp(−w/24)·sinh(y/2)/(y/2); its w coefficient is 0
        let s = sigma_over_z(3, 4);
        assert_eq!(s.coeff(0), &QSeries::one(4));
        assert_eq!(s.coeff(1).coeff(0), Rational::zero());
    }

    #[test]
    fn identity_small() {
        let r = verify_witten_identity(6, 12);
        assert!(r.passed(), "{r:?}");
    }
}
