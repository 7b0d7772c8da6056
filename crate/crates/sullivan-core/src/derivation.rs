//! Derivations of a free graded-commutative algebra.
//!
//! A derivation is determined by its values on generators and extends to all
//! of ΛV by linearity and the graded Leibniz rule
//! θ(uv) = θ(u)v + (−1)^{|θ||u|} u θ(v).

use std::collections::BTreeMap;

use crate::algebra::{rat, Algebra, Monomial, Polynomial};

/// A derivation of ΛV of a fixed cohomological degree (+1 for differentials,
/// −1 for the suspension derivation of the acyclic closure).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    degree: i64,
    values: BTreeMap<usize, Polynomial>,
}

impl Derivation {
    pub fn zero(degree: i64) -> Self {
        Derivation {
            degree,
            values: BTreeMap::new(),
        }
    }

    pub fn new(degree: i64, values: impl IntoIterator<Item = (usize, Polynomial)>) -> Self {
        let values = values
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .collect();
        Derivation { degree, values }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn value_on(&self, id: usize) -> Polynomial {
        self.values.get(&id).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn values(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.values.iter().map(|(&id, p)| (id, p))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Graded Leibniz application to a monomial, with the Koszul sign
    /// (−1)^{|θ|·|prefix|} on each factor.
    pub fn apply_monomial(&self, alg: &Algebra, m: &Monomial) -> Polynomial {
        let mut result = Polynomial::zero();
        let factors = m.exponents();
        let mut prefix_degree: usize = 0;
        for (k, &(id, exp)) in factors.iter().enumerate() {
            let g = alg.generator(id);
            if let Some(theta_g) = self.values.get(&id) {
                if !theta_g.is_zero() {
                    // θ(g^e) = e·g^{e-1}·θ(g); for odd g, e = 1. g even implies
                    // no sign crossing θ(g) over remaining powers of g.
                    let mut piece = theta_g.scale(&rat(exp as i64));
                    if exp > 1 {
                        let tail = Polynomial::monomial(Monomial::power(id, exp - 1), rat(1));
                        piece = alg.multiply(&tail, &piece);
                    }
                    // prefix * piece * suffix
                    let prefix = Monomial::from_pairs(factors[..k].iter().copied());
                    let suffix = Monomial::from_pairs(factors[k + 1..].iter().copied());
                    let mut term = alg.multiply(&Polynomial::monomial(prefix, rat(1)), &piece);
                    term = alg.multiply(&term, &Polynomial::monomial(suffix, rat(1)));
                    if (self.degree * prefix_degree as i64) % 2 != 0 {
                        term = term.neg();
                    }
                    result = result.add(&term);
                }
            }
            prefix_degree += g.degree * exp as usize;
        }
        result
    }

    /// Linear extension to polynomials.
    pub fn apply(&self, alg: &Algebra, p: &Polynomial) -> Polynomial {
        let mut result = Polynomial::zero();
        for (m, c) in p.terms() {
            let image = self.apply_monomial(alg, m);
            if !image.is_zero() {
                result = result.add(&image.scale(c));
            }
        }
        result
    }

    /// The word-length-`i` homogeneous part: g ↦ length-i component of θ(g).
    pub fn homogeneous_part(&self, i: usize) -> Derivation {
        Derivation::new(
            self.degree,
            self.values
                .iter()
                .map(|(&id, p)| (id, p.length_component(i))),
        )
    }

    /// Smallest word length occurring in any generator value, `None` when zero.
    pub fn min_word_length(&self) -> Option<usize> {
        self.values
            .values()
            .flat_map(|p| p.word_lengths())
            .min()
    }

    /// Largest word length occurring in any generator value.
    pub fn max_word_length(&self) -> Option<usize> {
        self.values
            .values()
            .flat_map(|p| p.word_lengths())
            .max()
    }

    /// Whether all generator values are length-homogeneous of one shared length.
    pub fn is_length_homogeneous(&self) -> bool {
        match (self.min_word_length(), self.max_word_length()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }
}
