//! Integer partitions in multiplicity form, the weight functions attached to
//! them, and Pólya's cycle index polynomials for the symmetric groups.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{bernoulli, factorial, int, Rational};

/// A partition `λ = (1^{m_1}, 2^{m_2}, …, k^{m_k})`, stored by multiplicities.
///
/// `multiplicities[j - 1]` is the number of parts equal to `j`. Trailing
/// zeros are never stored, so equal partitions compare equal.
///
/// The ordering is reverse-lexicographic on the nonincreasing part lists,
/// e.g. `(3) < (2,1) < (1,1,1)`; maps keyed by partitions therefore iterate
/// in the same order as [`enumerate_partitions`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    multiplicities: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_multiplicities(mut multiplicities: Vec<u32>) -> Self {
        while multiplicities.last() == Some(&0) {
            multiplicities.pop();
        }
        Self { multiplicities }
    }

    /// Builds a partition from its parts in any order. Zero parts are ignored.
    pub fn from_parts(parts: &[u32]) -> Self {
        let max = parts.iter().copied().max().unwrap_or(0) as usize;
        let mut multiplicities = vec![0; max];
        for &p in parts.iter().filter(|&&p| p > 0) {
            multiplicities[p as usize - 1] += 1;
        }
        Self::from_multiplicities(multiplicities)
    }

    /// The single-part partition `(k)`.
    pub fn single(k: u32) -> Self {
        Self::from_parts(&[k])
    }

    /// `m_j`, zero for `j` outside the stored range.
    pub fn multiplicity(&self, j: u32) -> u32 {
        if j == 0 {
            return 0;
        }
        self.multiplicities
            .get(j as usize - 1)
            .copied()
            .unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// Multiplicities padded with zeros to length `len`.
    pub fn multiplicities_padded(&self, len: usize) -> Vec<u32> {
        let mut m = self.multiplicities.clone();
        if m.len() < len {
            m.resize(len, 0);
        }
        m
    }

    /// Iterates `(j, m_j)` over the part sizes that occur.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| (i as u32 + 1, m))
    }

    /// Parts in nonincreasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut parts = Vec::with_capacity(self.length() as usize);
        for (j, m) in self.iter().collect::<Vec<_>>().into_iter().rev() {
            parts.extend(std::iter::repeat_n(j, m as usize));
        }
        parts
    }

    /// `Σ j·m_j`.
    pub fn weight(&self) -> u32 {
        self.iter().map(|(j, m)| j * m).sum()
    }

    /// `ℓ(λ) = Σ m_j`.
    pub fn length(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// The partition whose multiplicities are the sums of both operands';
    /// corresponds to multiplying the attached monomials.
    pub fn union(&self, other: &Partition) -> Partition {
        let n = self.multiplicities.len().max(other.multiplicities.len());
        let m = (0..n)
            .map(|i| {
                self.multiplicities.get(i).copied().unwrap_or(0)
                    + other.multiplicities.get(i).copied().unwrap_or(0)
            })
            .collect();
        Partition::from_multiplicities(m)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        // larger part lists first
        other.parts().cmp(&self.parts())
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.multiplicities_padded(self.weight() as usize)
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Partition::from_multiplicities(Vec::<u32>::deserialize(d)?))
    }
}

/// Coefficient maps over partitions, iterated in reverse-lexicographic order.
pub type Terms = BTreeMap<Partition, Rational>;

/// All partitions of `k`, each exactly once, in reverse-lexicographic order
/// of their part lists: `(k), (k-1,1), …, (1,…,1)`.
pub fn enumerate_partitions(k: u32) -> Vec<Partition> {
    fn go(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_parts(prefix));
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// `z_λ = 1^{m_1}···k^{m_k}·m_1!···m_k!`, the centraliser order of a
/// permutation of cycle type `λ`.
pub fn z_lambda(lambda: &Partition) -> BigInt {
    lambda.iter().fold(BigInt::one(), |acc, (j, m)| {
        acc * num_traits::pow(BigInt::from(j), m as usize) * factorial(m)
    })
}

/// The cycle index `Z(S_k) = Σ_{λ⊢k} (1/z_λ) x_λ`, as a map from the
/// exponent pattern `λ` of `x_1^{m_1}···x_k^{m_k}` to its coefficient.
pub fn cycle_index(k: u32) -> Terms {
    enumerate_partitions(k)
        .into_iter()
        .map(|lambda| {
            let c = Rational::new(BigInt::one(), z_lambda(&lambda));
            (lambda, c)
        })
        .collect()
}

/// The `t^n` coefficients of `exp(Σ_{k≥1} x_k t^k/k)` for `n ≤ order`,
/// expanded through `n·E_n = Σ_{k=1}^n x_k E_{n−k}` without reference to
/// cycle types. Each coefficient should equal [`cycle_index`]`(n)`.
pub fn exp_power_sum_series(order: u32) -> Vec<Terms> {
    let mut out: Vec<Terms> = vec![Terms::from([(Partition::empty(), Rational::one())])];
    for n in 1..=order {
        let mut next = Terms::new();
        for k in 1..=n {
            let x_k = Partition::single(k);
            for (lambda, c) in &out[(n - k) as usize] {
                *next
                    .entry(lambda.union(&x_k))
                    .or_insert_with(Rational::zero) += c;
            }
        }
        let inv_n = Rational::from_integer(BigInt::from(n)).recip();
        for c in next.values_mut() {
            *c *= &inv_n;
        }
        next.retain(|_, c| !c.is_zero());
        out.push(next);
    }
    out
}

/// A function on partitions that can be traced against Eisenstein monomials.
///
/// Implemented by [`PhiWeight`] and by any `Fn(&Partition) -> Rational`.
pub trait PartitionWeight {
    fn eval(&self, lambda: &Partition) -> Rational;
}

impl<F: Fn(&Partition) -> Rational> PartitionWeight for F {
    fn eval(&self, lambda: &Partition) -> Rational {
        self(lambda)
    }
}

/// The named weights `φ` whose traces give the genera and Ramanujan's series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhiWeight {
    /// `∏ (1/m_j!)(−1/(2j)!)^{m_j}`
    AHat,
    /// `∏ (1/m_j!)(4^j(4^j−2)/(2j)!)^{m_j}`
    L,
    /// `∏ (1/m_j!)(B_{2j}/((2j)(2j)!))^{m_j}`
    U,
    /// `U` with `|B_{2j}|` in place of `B_{2j}`
    AbsU,
}

impl PhiWeight {
    /// The per-part factor `f(j)` in `φ(λ) = ∏_j f(j)^{m_j} / m_j!`.
    pub fn part_factor(self, j: u32) -> Rational {
        let two_j = 2 * j;
        let fact = Rational::from_integer(factorial(two_j));
        match self {
            PhiWeight::AHat => -fact.recip(),
            PhiWeight::L => {
                let four_j = num_traits::pow(BigInt::from(4), j as usize);
                Rational::from_integer(&four_j * (&four_j - 2)) / fact
            }
            PhiWeight::U => bernoulli(two_j) / (int(two_j as i64) * fact),
            PhiWeight::AbsU => bernoulli(two_j).abs() / (int(two_j as i64) * fact),
        }
    }
}

impl PartitionWeight for PhiWeight {
    fn eval(&self, lambda: &Partition) -> Rational {
        multiplicative_weight(lambda, |j| self.part_factor(j))
    }
}

/// `∏_j (1/m_j!) f(j)^{m_j}` for an arbitrary part factor `f`.
pub fn multiplicative_weight(lambda: &Partition, f: impl Fn(u32) -> Rational) -> Rational {
    lambda.iter().fold(Rational::one(), |acc, (j, m)| {
        let factor = f(j);
        if factor.is_zero() {
            return Rational::zero();
        }
        acc * num_traits::pow(factor, m as usize) / Rational::from_integer(factorial(m))
    })
}

/// Convenience wrapper for `w.eval(lambda)`.
pub fn phi_eval(w: PhiWeight, lambda: &Partition) -> Rational {
    w.eval(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts)
    }

    /// Brute force: all nonincreasing sequences of positive integers summing
    /// to `k`, found by filtering every composition.
    fn brute_force_partitions(k: u32) -> Vec<Vec<u32>> {
        fn compositions(k: u32) -> Vec<Vec<u32>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 1..=k {
                for mut rest in compositions(k - first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        compositions(k)
            .into_iter()
            .filter(|c| c.windows(2).all(|w| w[0] >= w[1]))
            .collect()
    }

    #[test]
    fn cycle_index_generating_function() {
        let series = exp_power_sum_series(8);
        for (n, terms) in series.iter().enumerate() {
            assert_eq!(terms, &cycle_index(n as u32), "t^{n}");
        }
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(
            enumerate_partitions(3),
            vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]
        );
        let four: Vec<_> = enumerate_partitions(4).iter().map(|l| l.parts()).collect();
        assert_eq!(
            four,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for k in 0..=12 {
            let mut brute = brute_force_partitions(k);
            brute.sort_by(|a, b| b.cmp(a));
            let ours: Vec<_> = enumerate_partitions(k).iter().map(|l| l.parts()).collect();
            assert_eq!(ours, brute, "k = {k}");
        }
        assert_eq!(brute_force_partitions(10).len(), 42);
        assert_eq!(enumerate_partitions(10).len(), 42);
    }

    #[test]
    fn ordering_agrees_with_enumeration() {
        let parts = enumerate_partitions(7);
        let mut sorted = parts.clone();
        sorted.sort();
        assert_eq!(parts, sorted);
    }

    #[test]
    fn statistics() {
        let l = p(&[3, 1, 1]);
        assert_eq!(l.weight(), 5);
        assert_eq!(l.length(), 3);
        assert_eq!(l.multiplicity(1), 2);
        assert_eq!(l.multiplicity(2), 0);
        assert_eq!(l.multiplicity(9), 0);
        assert_eq!(l.multiplicities(), &[2, 0, 1]);
        assert_eq!(l.to_string(), "(3,1,1)");
        assert_eq!(Partition::empty().weight(), 0);
        assert_eq!(p(&[2]).union(&p(&[2, 1])), p(&[2, 2, 1]));
    }

    #[test]
    fn z_lambda_values() {
        assert_eq!(z_lambda(&p(&[1, 1, 1])), BigInt::from(6));
        assert_eq!(z_lambda(&Partition::empty()), BigInt::from(1));
        assert_eq!(z_lambda(&p(&[2, 1])), BigInt::from(2));
        assert_eq!(z_lambda(&p(&[2, 2])), BigInt::from(8));
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for k in 0..=12 {
            let total: BigInt = enumerate_partitions(k)
                .iter()
                .map(|l| factorial(k) / z_lambda(l))
                .sum();
            assert_eq!(total, factorial(k), "k = {k}");
        }
    }

    #[test]
    fn cycle_index_examples() {
        let z0 = cycle_index(0);
        assert_eq!(z0.len(), 1);
        assert_eq!(z0[&Partition::empty()], rat(1, 1));

        let z1 = cycle_index(1);
        assert_eq!(z1.len(), 1);
        assert_eq!(z1[&p(&[1])], rat(1, 1));

        let z2 = cycle_index(2);
        assert_eq!(z2[&p(&[1, 1])], rat(1, 2));
        assert_eq!(z2[&p(&[2])], rat(1, 2));

        // (x_1^3 + 3 x_1 x_2 + 2 x_3) / 6
        let z3 = cycle_index(3);
        assert_eq!(z3[&p(&[1, 1, 1])], rat(1, 6));
        assert_eq!(z3[&p(&[2, 1])], rat(3, 6));
        assert_eq!(z3[&p(&[3])], rat(2, 6));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_eval(PhiWeight::AHat, &p(&[3])), rat(-1, 720));
        assert_eq!(phi_eval(PhiWeight::AHat, &p(&[2, 1])), rat(1, 48));
        assert_eq!(phi_eval(PhiWeight::U, &p(&[1])), rat(1, 24));
        // 4(4-2)/2! = 4
        assert_eq!(phi_eval(PhiWeight::L, &p(&[1])), rat(4, 1));
        // 4^2(4^2-2)/4! = 224/24, squared over 2!
        assert_eq!(
            phi_eval(PhiWeight::L, &p(&[2, 2])),
            rat(28, 3) * rat(28, 3) / rat(2, 1)
        );
    }

    #[test]
    fn ahat_weight_sign_law() {
        for k in 1..=12 {
            for l in enumerate_partitions(k) {
                let unsigned =
                    multiplicative_weight(&l, |j| Rational::from_integer(factorial(2 * j)).recip());
                let sign = if l.length() % 2 == 0 { 1 } else { -1 };
                assert_eq!(phi_eval(PhiWeight::AHat, &l), unsigned * int(sign));
            }
        }
    }

    #[test]
    fn abs_u_is_absolute_value_of_u() {
        for k in 1..=12 {
            for l in enumerate_partitions(k) {
                assert_eq!(
                    phi_eval(PhiWeight::AbsU, &l),
                    phi_eval(PhiWeight::U, &l).abs()
                );
            }
        }
    }

    #[test]
    fn closures_are_weights() {
        let parts_count = |l: &Partition| int(l.length() as i64);
        assert_eq!(parts_count.eval(&p(&[2, 1, 1])), int(3));
    }

    #[test]
    fn serde_uses_padded_multiplicities() {
        let json = serde_json::to_string(&p(&[2, 1])).unwrap();
        assert_eq!(json, "[1,1,0]");
        let back: Partition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p(&[2, 1]));
    }
}
