//! Weighted-homogeneous symmetric polynomials in the power-sum basis
//! `s_j = Σ_i x_i^j` or the Pontryagin (elementary) basis `p_j`, the
//! Newton–Girard change of basis, and genus coefficients from a
//! characteristic power series.
//!
//! The formal variables `x_i` are never materialised. A characteristic
//! series `Q` with `log Q(z) = Σ c_j z^j` yields
//! `∏_i Q(x_i t) = exp(Σ_j c_j s_j t^j)`, and the `t^k` coefficient of the
//! right-hand side is read off partition by partition through Pólya's
//! exponential formula.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, format_rational, int, Rational};
use crate::error::{domain, Result};
use crate::partitions::{enumerate_partitions, multiplicative_weight, Partition, Terms};
use crate::render::{self, Style};
use crate::series::QSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// Monomials `s_λ = s_1^{m_1} s_2^{m_2} ⋯`.
    PowerSum,
    /// Monomials `p_λ = p_1^{m_1} p_2^{m_2} ⋯`.
    Pontryagin,
}

impl Basis {
    fn symbol(self) -> &'static str {
        match self {
            Basis::PowerSum => "s",
            Basis::Pontryagin => "p",
        }
    }
}

/// A polynomial all of whose monomials have weight `Σ j·m_j = weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    basis: Basis,
    weight: u32,
    terms: Terms,
}

impl SymPoly {
    pub fn zero(basis: Basis, weight: u32) -> Self {
        Self {
            basis,
            weight,
            terms: Terms::new(),
        }
    }

    pub fn one(basis: Basis) -> Self {
        Self::monomial(basis, Partition::empty(), Rational::one())
    }

    pub fn monomial(basis: Basis, lambda: Partition, c: Rational) -> Self {
        let mut p = Self::zero(basis, lambda.weight());
        p.add_term(lambda, c);
        p
    }

    /// The generator `s_j` or `p_j`.
    pub fn generator(basis: Basis, j: u32) -> Self {
        Self::monomial(basis, Partition::single(j), Rational::one())
    }

    /// Builds a polynomial from `(parts, coefficient)` pairs.
    ///
    /// Panics if the parts of some monomial do not sum to `weight`.
    pub fn from_parts(basis: Basis, weight: u32, terms: &[(&[u32], Rational)]) -> Self {
        let mut p = Self::zero(basis, weight);
        for (parts, c) in terms {
            p.add_term(Partition::from_parts(parts), c.clone());
        }
        p
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c` to the coefficient of `λ`. Panics if `|λ| ≠ weight`.
    pub fn add_term(&mut self, lambda: Partition, c: Rational) {
        assert_eq!(
            lambda.weight(),
            self.weight,
            "monomial {lambda} does not have weight {}",
            self.weight
        );
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(lambda.clone())
            .or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.basis, self.weight);
        for (l, a) in &self.terms {
            out.add_term(l.clone(), a * c);
        }
        out
    }

    pub fn add(&self, other: &SymPoly) -> Self {
        assert_eq!(self.basis, other.basis);
        assert_eq!(self.weight, other.weight);
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    /// Product; monomials multiply by adding multiplicities.
    pub fn mul(&self, other: &SymPoly) -> Self {
        assert_eq!(self.basis, other.basis);
        let mut out = Self::zero(self.basis, self.weight + other.weight);
        for (la, a) in &self.terms {
            for (lb, b) in &other.terms {
                out.add_term(la.union(lb), a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.basis), |acc, _| acc.mul(self))
    }

    /// Rewrites the polynomial in the other basis.
    pub fn convert(&self, target: Basis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let mut out = Self::zero(target, self.weight);
        for (lambda, c) in &self.terms {
            let image = lambda.iter().fold(SymPoly::one(target), |acc, (j, m)| {
                acc.mul(&generator_image(self.basis, j).pow(m))
            });
            for (l, a) in image.terms {
                out.add_term(l, a * c);
            }
        }
        out
    }

    fn display_terms(&self, style: Style) -> Vec<(String, Rational)> {
        let sym = self.basis.symbol();
        self.terms
            .iter()
            .map(|(l, c)| (render::monomial(l, sym, |j| j, style), c.clone()))
            .collect()
    }

    /// e.g. `(7p2 - p1^2)/45`
    pub fn to_text(&self) -> String {
        render::polynomial(&self.display_terms(Style::Text), Style::Text)
    }

    /// e.g. `\frac{1}{45}(7p_2-p_1^2)`
    pub fn to_latex(&self) -> String {
        render::polynomial(&self.display_terms(Style::Latex), Style::Latex)
    }

    pub fn to_json(&self) -> SymPolyJson {
        SymPolyJson {
            weight: self.weight,
            basis: self.basis.symbol().to_string(),
            terms: self
                .terms
                .iter()
                .map(|(l, c)| {
                    (
                        l.multiplicities_padded(self.weight as usize),
                        format_rational(c),
                    )
                })
                .collect(),
        }
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `{ "weight": k, "basis": "p", "terms": [[[m_1, …, m_k], "num/den"], …] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymPolyJson {
    pub weight: u32,
    pub basis: String,
    pub terms: Vec<(Vec<u32>, String)>,
}

type GeneratorCache = Mutex<HashMap<(Basis, u32), SymPoly>>;

static GENERATORS: std::sync::OnceLock<GeneratorCache> = std::sync::OnceLock::new();

/// The image of the generator `s_j` (resp. `p_j`) in the other basis.
fn generator_image(from: Basis, j: u32) -> SymPoly {
    let cache = GENERATORS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(&(from, j))
    {
        return p.clone();
    }
    let image = match from {
        Basis::PowerSum => power_sum_in_pontryagin(j),
        Basis::Pontryagin => pontryagin_in_power_sum(j),
    };
    cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert((from, j), image.clone());
    image
}

/// Newton–Girard: `s_n = Σ_{i=1}^{n-1} (-1)^{i-1} p_i s_{n-i} + (-1)^{n-1} n p_n`.
fn power_sum_in_pontryagin(n: u32) -> SymPoly {
    let b = Basis::Pontryagin;
    let sign = |i: u32| if i % 2 == 1 { int(1) } else { int(-1) };
    let mut s = SymPoly::generator(b, n).scale(&(sign(n) * int(n as i64)));
    for i in 1..n {
        let term = SymPoly::generator(b, i).mul(&generator_image(Basis::PowerSum, n - i));
        s = s.add(&term.scale(&sign(i)));
    }
    s
}

/// Newton: `n p_n = Σ_{i=1}^{n} (-1)^{i-1} p_{n-i} s_i`.
fn pontryagin_in_power_sum(n: u32) -> SymPoly {
    let b = Basis::PowerSum;
    let mut acc = SymPoly::zero(b, n);
    for i in 1..=n {
        let lower = if i == n {
            SymPoly::one(b)
        } else {
            generator_image(Basis::Pontryagin, n - i)
        };
        let term = lower.mul(&SymPoly::generator(b, i));
        acc = acc.add(&term.scale(&if i % 2 == 1 { int(1) } else { int(-1) }));
    }
    acc.scale(&int(n as i64).recip())
}

/// Rewrites a power-sum polynomial in the Pontryagin basis.
pub fn newton_girard_s_to_p(f: &SymPoly) -> SymPoly {
    f.convert(Basis::Pontryagin)
}

/// Rewrites a Pontryagin polynomial in the power-sum basis.
pub fn newton_girard_p_to_s(f: &SymPoly) -> SymPoly {
    f.convert(Basis::PowerSum)
}

/// A characteristic power series `Q(z)` with `Q(0) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CharSeries {
    /// `(√z/2) / sinh(√z/2)`
    AHat,
    /// `√z / tanh(√z)`
    L,
    /// `exp(Σ_{k≥2} G_{2k} w^k/(2k)!)` in `w = (2πiz)^2`; its log-coefficients
    /// are `q`-series, see [`crate::genera::witten`].
    Witten,
}

impl CharSeries {
    /// The Taylor expansion of `Q(z)` through `z^order`, built from the
    /// sinh/cosh series rather than from Bernoulli numbers.
    pub fn taylor(self, order: usize) -> Result<QSeries> {
        // sinh(√z)/√z = Σ z^n/(2n+1)!, cosh(√z) = Σ z^n/(2n)!
        let sinh_over = |scale: i64| {
            QSeries::from_fn(order, |n| {
                let d = factorial(2 * n as u32 + 1)
                    * num_traits::pow(num_bigint::BigInt::from(scale), n);
                Rational::new(1.into(), d)
            })
        };
        match self {
            // (√z/2)/sinh(√z/2) = 1 / Σ (z/4)^n/(2n+1)!
            CharSeries::AHat => sinh_over(4).inverse(),
            CharSeries::L => {
                let cosh =
                    QSeries::from_fn(order, |n| Rational::new(1.into(), factorial(2 * n as u32)));
                cosh.div(&sinh_over(1))
            }
            CharSeries::Witten => {
                domain("the Witten series has q-series coefficients; use genera::witten")
            }
        }
    }

    /// `c_1, …, c_order` with `log Q(z) = Σ c_j z^j`; index 0 holds `c_0 = 0`.
    pub fn log_coefficients(self, order: usize) -> Result<Vec<Rational>> {
        Ok(self.taylor(order)?.log()?.coeffs().to_vec())
    }
}

/// The `t^k` coefficient `b̃_k` of `∏_i Q(x_i t)` in the power-sum basis:
/// `Σ_{λ⊢k} s_λ ∏_j (1/m_j!) c_j^{m_j}`.
pub fn genus_coefficient(q: CharSeries, k: u32) -> Result<SymPoly> {
    let c = q.log_coefficients(k as usize)?;
    Ok(genus_from_log_coefficients(&c, k))
}

/// As [`genus_coefficient`], for explicit log-coefficients `c[j]` (`c[0]`
/// is ignored). `c` must have length at least `k + 1`.
pub fn genus_from_log_coefficients(c: &[Rational], k: u32) -> SymPoly {
    let mut out = SymPoly::zero(Basis::PowerSum, k);
    for lambda in enumerate_partitions(k) {
        let coeff = multiplicative_weight(&lambda, |j| c[j as usize].clone());
        out.add_term(lambda, coeff);
    }
    out
}
