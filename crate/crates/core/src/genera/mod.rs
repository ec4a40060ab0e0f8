//! Quasimodular representations of the genera.
//!
//! A [`QuasiPoly`] is a weight-`2k` polynomial in Eisenstein series indexed
//! by partitions of `k`: `Σ_λ c_λ G_λ` with `G_λ = G_2^{m_1} G_4^{m_2} ⋯`
//! (or the same with `E_{2j}` in place of `G_{2j}`). The partition
//! Eisenstein trace `Tr_k(φ) = Σ_{λ⊢k} φ(λ) G_λ` turns a weight function
//! into such a polynomial, and substituting `G_{2j} ↦ (B_{2j}/2j) s_j`
//! turns it into a symmetric polynomial.

pub mod ramanujan;
pub mod witten;

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arith::{bernoulli, format_rational, int, Rational};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition, PartitionWeight, PhiWeight, Terms};
use crate::render::{self, Style};
use crate::report::{Report, Tier};
use crate::series::{
    eisenstein_e, eisenstein_g, euler_product, theta_product, triple_product_sum, QSeries,
};
use crate::symfun::{genus_coefficient, Basis, CharSeries, SymPoly};

pub use ramanujan::{
    abs_coefficients, ramanujan_scale, ramanujan_u, ramanujan_u_quasi, sign_flip_partitions,
    verify_ramanujan_twist,
};
pub use witten::{verify_witten_identity, witten_coefficient, witten_trace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EisensteinBasis {
    G,
    E,
}

impl EisensteinBasis {
    fn symbol(self) -> &'static str {
        match self {
            EisensteinBasis::G => "G",
            EisensteinBasis::E => "E",
        }
    }

    pub fn other(self) -> Self {
        match self {
            EisensteinBasis::G => EisensteinBasis::E,
            EisensteinBasis::E => EisensteinBasis::G,
        }
    }
}

/// `Σ_{λ⊢k} c_λ G_λ` (or `E_λ`), a form of pure weight `2k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPoly {
    basis: EisensteinBasis,
    k: u32,
    terms: Terms,
}

impl QuasiPoly {
    pub fn zero(basis: EisensteinBasis, k: u32) -> Self {
        Self {
            basis,
            k,
            terms: Terms::new(),
        }
    }

    pub fn one(basis: EisensteinBasis) -> Self {
        let mut p = Self::zero(basis, 0);
        p.add_term(Partition::empty(), Rational::one());
        p
    }

    pub fn from_parts(basis: EisensteinBasis, k: u32, terms: &[(&[u32], Rational)]) -> Self {
        let mut p = Self::zero(basis, k);
        for (parts, c) in terms {
            p.add_term(Partition::from_parts(parts), c.clone());
        }
        p
    }

    pub fn basis(&self) -> EisensteinBasis {
        self.basis
    }

    /// The partition size `k`; the modular weight is `2k`.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn weight(&self) -> u32 {
        2 * self.k
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

    /// Panics if `|λ| ≠ k`.
    pub fn add_term(&mut self, lambda: Partition, c: Rational) {
        assert_eq!(
            lambda.weight(),
            self.k,
            "monomial {lambda} has the wrong weight"
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
        let mut out = Self::zero(self.basis, self.k);
        for (l, a) in &self.terms {
            out.add_term(l.clone(), a * c);
        }
        out
    }

    /// True when no monomial contains `G_2` (resp. `E_2`).
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|l| l.multiplicity(1) == 0)
    }

    /// Rewrites the polynomial in the other Eisenstein basis using the
    /// formal substitution `G_{2j} = (B_{2j}/2j)·E_{2j}`.
    ///
    /// Since `E_{2j}` has constant term 1 while `(2j/B_{2j})·G_{2j}` has
    /// constant term -1, the `q`-expansion is preserved only after the
    /// twist `E_λ ↦ (-1)^{ℓ(λ)} E_λ`; see [`QuasiPoly::twisted`].
    pub fn convert(&self) -> Self {
        let target = self.basis.other();
        let mut out = Self::zero(target, self.k);
        for (lambda, c) in &self.terms {
            let ratio = lambda.iter().fold(Rational::one(), |acc, (j, m)| {
                let g_over_e = bernoulli(2 * j) / int(2 * j as i64);
                let f = match self.basis {
                    EisensteinBasis::G => g_over_e,
                    EisensteinBasis::E => g_over_e.recip(),
                };
                acc * num_traits::pow(f, m as usize)
            });
            out.add_term(lambda.clone(), c * ratio);
        }
        out
    }

    /// Multiplies the coefficient of each monomial `X_λ` by `(-1)^{ℓ(λ)}`.
    pub fn twisted(&self) -> Self {
        let mut out = Self::zero(self.basis, self.k);
        for (lambda, c) in &self.terms {
            let c = if lambda.length() % 2 == 1 {
                -c.clone()
            } else {
                c.clone()
            };
            out.add_term(lambda.clone(), c);
        }
        out
    }

    pub fn in_basis(&self, basis: EisensteinBasis) -> Self {
        if basis == self.basis {
            self.clone()
        } else {
            self.convert()
        }
    }

    /// The `q`-expansion through `q^order`, multiplied out exactly.
    pub fn to_qseries(&self, order: usize) -> QSeries {
        let mut generators: HashMap<u32, QSeries> = HashMap::new();
        let mut powers: HashMap<(u32, u32), QSeries> = HashMap::new();
        let mut total = QSeries::zero(order);
        for (lambda, c) in &self.terms {
            let mut prod = QSeries::constant(c.clone(), order);
            for (j, m) in lambda.iter() {
                let power = powers.entry((j, m)).or_insert_with(|| {
                    let g = generators.entry(j).or_insert_with(|| match self.basis {
                        EisensteinBasis::G => eisenstein_g(j, order),
                        EisensteinBasis::E => eisenstein_e(j, order),
                    });
                    g.pow(m)
                });
                prod = &prod * power;
            }
            total = &total + &prod;
        }
        total
    }

    /// The symmetric polynomial obtained from `G_{2j} ↦ (B_{2j}/2j) s_j`
    /// (equivalently `E_{2j} ↦ s_j`), in the power-sum basis.
    pub fn to_sympoly(&self) -> SymPoly {
        let g = self.in_basis(EisensteinBasis::G);
        let mut out = SymPoly::zero(Basis::PowerSum, self.k);
        for (lambda, c) in &g.terms {
            let factor = lambda.iter().fold(Rational::one(), |acc, (j, m)| {
                acc * num_traits::pow(bernoulli(2 * j) / int(2 * j as i64), m as usize)
            });
            out.add_term(lambda.clone(), c * factor);
        }
        out
    }

    fn display_terms(&self, style: Style) -> Vec<(String, Rational)> {
        let sym = self.basis.symbol();
        self.terms
            .iter()
            .map(|(l, c)| (render::monomial(l, sym, |j| 2 * j, style), c.clone()))
            .collect()
    }

    /// e.g. `(-G6 + 15G2G4 - 15G2^3)/720`
    pub fn to_text(&self) -> String {
        render::polynomial(&self.display_terms(Style::Text), Style::Text)
    }

    /// e.g. `\frac{1}{720}(-G_6+15G_2G_4-15G_2^3)`
    pub fn to_latex(&self) -> String {
        render::polynomial(&self.display_terms(Style::Latex), Style::Latex)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "weight": self.weight(),
            "basis": self.basis.symbol(),
            "terms": self.terms.iter()
                .map(|(l, c)| json!([l.multiplicities_padded(self.k as usize), format_rational(c)]))
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for QuasiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `Tr_k(φ) = Σ_{λ⊢k} φ(λ) G_λ` (or `E_λ`), with `Tr_0 = 1`.
///
/// No change of basis happens here: `φ` is read directly as the coefficient
/// of `G_λ` or of `E_λ`, as requested.
pub fn trace(phi: &dyn PartitionWeight, k: u32, basis: EisensteinBasis) -> QuasiPoly {
    if k == 0 {
        return QuasiPoly::one(basis);
    }
    let mut out = QuasiPoly::zero(basis, k);
    for lambda in enumerate_partitions(k) {
        let c = phi.eval(&lambda);
        out.add_term(lambda, c);
    }
    out
}

/// Which genus `ahat_genus`/`l_genus` compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Genus {
    AHat,
    L,
}

impl Genus {
    pub fn char_series(self) -> CharSeries {
        match self {
            Genus::AHat => CharSeries::AHat,
            Genus::L => CharSeries::L,
        }
    }

    pub fn phi(self) -> PhiWeight {
        match self {
            Genus::AHat => PhiWeight::AHat,
            Genus::L => PhiWeight::L,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Genus::AHat => "A-hat",
            Genus::L => "L",
        }
    }
}

/// The genus coefficient in the Pontryagin basis, computed from the
/// characteristic series and from the partition Eisenstein trace; the two
/// must agree exactly.
pub fn genus_polynomial(genus: Genus, k: u32) -> Result<SymPoly> {
    let (from_series, from_trace) = genus_both_routes(genus, k)?;
    if from_series != from_trace {
        return Err(Error::Consistency(format!(
            "{} genus k={k}: characteristic series gives {from_series}, trace gives {from_trace}",
            genus.name()
        )));
    }
    Ok(from_series)
}

/// Both routes, unchecked: `(series route, trace route)`, Pontryagin basis.
pub fn genus_both_routes(genus: Genus, k: u32) -> Result<(SymPoly, SymPoly)> {
    let from_series = genus_coefficient(genus.char_series(), k)?.convert(Basis::Pontryagin);
    let from_trace = trace(&genus.phi(), k, EisensteinBasis::G)
        .to_sympoly()
        .convert(Basis::Pontryagin);
    Ok((from_series, from_trace))
}

pub fn ahat_genus(k: u32) -> Result<SymPoly> {
    genus_polynomial(Genus::AHat, k)
}

pub fn l_genus(k: u32) -> Result<SymPoly> {
    genus_polynomial(Genus::L, k)
}

/// Checks the trace route against the characteristic-series route for one
/// genus and `k`.
pub fn verify_trace_route(genus: Genus, k: u32) -> Result<Report> {
    let mut report = Report::new(
        format!(
            "{} genus equals the partition Eisenstein trace after G_2j -> B_2j s_j/2j",
            genus.name()
        ),
        k as i64,
        0,
        Tier::Exact,
    );
    let (a, b) = genus_both_routes(genus, k)?;
    for lambda in enumerate_partitions(k) {
        let (x, y) = (a.coeff(&lambda), b.coeff(&lambda));
        if x != y {
            report.fail(json!({
                "partition": lambda.to_string(),
                "series_route": format_rational(&x),
                "trace_route": format_rational(&y),
            }));
        }
    }
    Ok(report)
}

/// Checks `(v − v^{-1})∏(1−v²q^n)(1−v^{-2}q^n)/(1−q^n)^2 · ∏(1−q^n)^3 =
/// Σ_n (−1)^n v^{2n+1} q^{n(n+1)/2}` coefficient by coefficient through
/// `q^order`.
pub fn verify_triple_product(order: usize) -> Report {
    let mut report = Report::new(
        "Theta product times prod (1-q^n)^3 equals sum (-1)^n v^(2n+1) q^(n(n+1)/2)",
        0,
        order as i64,
        Tier::Exact,
    );
    let lhs = theta_product(order).mul_qseries(&euler_product(order).pow(3));
    let rhs = triple_product_sum(order);
    let diff = &lhs - &rhs;
    for ((v, q), c) in diff.iter() {
        report.fail(json!({
            "q_exponent": q,
            "v_exponent": v,
            "lhs": format_rational(&lhs.coeff(v, q)),
            "rhs": format_rational(&rhs.coeff(v, q)),
            "difference": format_rational(c),
        }));
    }
    report
}

/// Expresses a `q`-series of weight `weight` as a polynomial in `E_4`,
/// `E_6`. Returns the coefficients of `E_4^a E_6^b` (with `4a + 6b =
/// weight`), or `None` if no such combination matches through `q^order`.
pub fn holomorphic_decomposition(
    f: &QSeries,
    weight: u32,
    order: usize,
) -> Option<Vec<((u32, u32), Rational)>> {
    if weight % 2 == 1 {
        return None;
    }
    let monomials: Vec<(u32, u32)> = (0..=weight / 6)
        .filter(|b| (weight - 6 * b).is_multiple_of(4))
        .map(|b| ((weight - 6 * b) / 4, b))
        .collect();
    let f = f.truncate(order);
    if monomials.is_empty() {
        return if f.is_zero() { Some(vec![]) } else { None };
    }
    let order = f.order();
    let e4 = eisenstein_e(2, order);
    let e6 = eisenstein_e(3, order);
    let basis: Vec<QSeries> = monomials
        .iter()
        .map(|&(a, b)| &e4.pow(a) * &e6.pow(b))
        .collect();
    let coeffs = solve_in_span(&basis, &f)?;
    Some(monomials.into_iter().zip(coeffs).collect())
}

/// Solves `Σ x_i basis_i = target` coefficient-wise by exact Gaussian
/// elimination, returning `None` if the system is inconsistent.
fn solve_in_span(basis: &[QSeries], target: &QSeries) -> Option<Vec<Rational>> {
    let n = basis.len();
    let rows = target.order() + 1;
    // augmented matrix, one row per q-exponent
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b.coeff(r)).collect();
            row.push(target.coeff(r));
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][col].recip();
        for x in m[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let sub = &factor * &m[pivot_row][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, c) in pivots {
        x[c] = m[r][n].clone();
    }
    Some(x)
}
