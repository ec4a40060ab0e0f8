//! Text and LaTeX rendering of partition-indexed polynomials with the
//! common denominator pulled out, e.g. `(7p2 - p1^2)/45` or
//! `\frac{1}{45}(7p_2-p_1^2)`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::{common_denominator, Rational};
use crate::partitions::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Style {
    Text,
    Latex,
}

/// Renders `∏ sym_{f(j)}^{m_j}` with ascending indices; `index` maps a part
/// size to the printed subscript (`j` for `p_j`, `2j` for `G_{2j}`).
pub(crate) fn monomial(
    lambda: &Partition,
    sym: &str,
    index: impl Fn(u32) -> u32,
    style: Style,
) -> String {
    let mut out = String::new();
    for (j, m) in lambda.iter() {
        let i = index(j);
        match style {
            Style::Text => out.push_str(&format!("{sym}{i}")),
            Style::Latex if i >= 10 => out.push_str(&format!("{sym}_{{{i}}}")),
            Style::Latex => out.push_str(&format!("{sym}_{i}")),
        }
        if m > 1 {
            match style {
                Style::Latex if m >= 10 => out.push_str(&format!("^{{{m}}}")),
                _ => out.push_str(&format!("^{m}")),
            }
        }
    }
    out
}

fn fraction(r: &Rational, style: Style) -> String {
    match style {
        Style::Text => r.to_string(),
        Style::Latex if r.is_integer() => r.to_string(),
        Style::Latex => {
            let sign = if r.is_negative() { "-" } else { "" };
            format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
        }
    }
}

fn signed_body(terms: &[(String, BigInt)], style: Style) -> String {
    let mut out = String::new();
    for (i, (mono, n)) in terms.iter().enumerate() {
        let neg = n.is_negative();
        let a = n.abs();
        match (i, style) {
            (0, _) => {
                if neg {
                    out.push('-');
                }
            }
            (_, Style::Text) => out.push_str(if neg { " - " } else { " + " }),
            (_, Style::Latex) => out.push(if neg { '-' } else { '+' }),
        }
        if mono.is_empty() || !a.is_one() {
            out.push_str(&a.to_string());
        }
        out.push_str(mono);
    }
    out
}

/// Renders `Σ c·mono`; `terms` are in display order, zero coefficients are
/// expected to be absent.
pub(crate) fn polynomial(terms: &[(String, Rational)], style: Style) -> String {
    match terms {
        [] => "0".to_string(),
        [(mono, c)] if mono.is_empty() => fraction(c, style),
        [(mono, c)] => {
            let a = c.abs();
            let sign = if c.is_negative() { "-" } else { "" };
            if a.is_one() {
                format!("{sign}{mono}")
            } else if a.is_integer() {
                format!("{sign}{a}{mono}")
            } else {
                match style {
                    Style::Text => format!("{sign}{a} {mono}"),
                    Style::Latex => format!("{}{mono}", fraction(c, style)),
                }
            }
        }
        _ => {
            let d = common_denominator(terms.iter().map(|(_, c)| c));
            let scaled: Vec<(String, BigInt)> = terms
                .iter()
                .map(|(m, c)| {
                    let n = c * Rational::from_integer(d.clone());
                    (m.clone(), n.to_integer())
                })
                .collect();
            let body = signed_body(&scaled, style);
            if d.is_one() {
                body
            } else {
                match style {
                    Style::Text => format!("({body})/{d}"),
                    Style::Latex => format!("\\frac{{1}}{{{d}}}({body})"),
                }
            }
        }
    }
}
