//! Free graded-commutative polynomial arithmetic over ℚ.
//!
//! A free graded-commutative algebra ΛV = Exterior(V^odd) ⊗ Symmetric(V^even)
//! is described by its ordered list of generators. Monomials are kept in a
//! single canonical form (exponents sorted by generator id) and all Koszul
//! signs are produced at normalization time.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar; always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from numerator and denominator.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A single generator of V, identified by its position in the generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: usize,
    pub name: String,
    pub degree: usize,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// The generator context for ΛV. Generator ids are consecutive and equal to
/// their index in `gens`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    gens: Vec<Generator>,
}

impl Algebra {
    /// Builds the context from `(name, degree)` pairs, assigning ids in order.
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, usize)>) -> Self {
        let gens = gens
            .into_iter()
            .enumerate()
            .map(|(id, (name, degree))| Generator {
                id,
                name: name.into(),
                degree,
            })
            .collect();
        Algebra { gens }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, id: usize) -> &Generator {
        &self.gens[id]
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generator_by_name(&self, name: &str) -> Option<&Generator> {
        self.gens.iter().find(|g| g.name == name)
    }

    pub fn dim_odd(&self) -> usize {
        self.gens.iter().filter(|g| g.is_odd()).count()
    }

    pub fn dim_even(&self) -> usize {
        self.gens.len() - self.dim_odd()
    }

    pub fn max_degree(&self) -> usize {
        self.gens.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    /// All monomials of total degree exactly `n`, in ascending canonical
    /// (lexicographic on exponent vectors) order. Complete and duplicate-free.
    pub fn degree_basis(&self, n: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current: Vec<(usize, u32)> = Vec::new();
        self.enumerate_basis(0, n, &mut current, &mut out);
        out.sort();
        out
    }

    fn enumerate_basis(
        &self,
        id: usize,
        remaining: usize,
        current: &mut Vec<(usize, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            // trailing generators all get exponent 0
            out.push(Monomial {
                exps: current.clone(),
            });
            return;
        }
        if id == self.gens.len() {
            return;
        }
        let g = &self.gens[id];
        let max_exp = if g.is_odd() {
            1
        } else {
            (remaining / g.degree) as u32
        };
        for e in 0..=max_exp {
            let used = e as usize * g.degree;
            if used > remaining {
                break;
            }
            if e > 0 {
                current.push((id, e));
            }
            self.enumerate_basis(id + 1, remaining - used, current, out);
            if e > 0 {
                current.pop();
            }
        }
    }

    /// Monomials of degree `n` with word length at least `min_len`.
    pub fn filtered_basis(&self, n: usize, min_len: usize) -> Vec<Monomial> {
        self.degree_basis(n)
            .into_iter()
            .filter(|m| m.word_length() >= min_len)
            .collect()
    }

    pub fn degree_of(&self, m: &Monomial) -> usize {
        m.exps
            .iter()
            .map(|&(id, e)| self.gens[id].degree * e as usize)
            .sum()
    }

    /// Graded-commutative product of two canonical monomials.
    ///
    /// Returns `None` when an odd generator occurs in both factors (its square
    /// vanishes); otherwise the Koszul sign together with the merged monomial.
    pub fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(i8, Monomial)> {
        // The sign counts transpositions of odd letters needed to interleave
        // the word of `b` into the word of `a`: for each odd generator g in b,
        // one transposition per odd generator of a with larger id.
        let odd_a: Vec<usize> = a
            .exps
            .iter()
            .filter(|&&(id, _)| self.gens[id].is_odd())
            .map(|&(id, _)| id)
            .collect();
        let mut transpositions = 0usize;
        for &(id, _) in &b.exps {
            if self.gens[id].is_odd() {
                if odd_a.binary_search(&id).is_ok() {
                    return None;
                }
                transpositions += odd_a.iter().filter(|&&aid| aid > id).count();
            }
        }
        let mut exps: Vec<(usize, u32)> = Vec::with_capacity(a.exps.len() + b.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < a.exps.len() || j < b.exps.len() {
            match (a.exps.get(i), b.exps.get(j)) {
                (Some(&(ia, ea)), Some(&(ib, eb))) => match ia.cmp(&ib) {
                    Ordering::Less => {
                        exps.push((ia, ea));
                        i += 1;
                    }
                    Ordering::Greater => {
                        exps.push((ib, eb));
                        j += 1;
                    }
                    Ordering::Equal => {
                        exps.push((ia, ea + eb));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&(ia, ea)), None) => {
                    exps.push((ia, ea));
                    i += 1;
                }
                (None, Some(&(ib, eb))) => {
                    exps.push((ib, eb));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let sign = if transpositions % 2 == 0 { 1 } else { -1 };
        Some((sign, Monomial { exps }))
    }

    /// Bilinear extension of [`Algebra::multiply_monomials`].
    pub fn multiply(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &p.terms {
            for (mb, cb) in &q.terms {
                if let Some((sign, m)) = self.multiply_monomials(ma, mb) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    let entry = terms.entry(m).or_insert_with(Rational::zero);
                    *entry += c;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial { terms }
    }

    /// Renders a monomial with generator names, e.g. `x^2*y`.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return String::from("1");
        }
        let mut parts = Vec::new();
        for &(id, e) in &m.exps {
            if e == 1 {
                parts.push(self.gens[id].name.clone());
            } else {
                parts.push(format!("{}^{}", self.gens[id].name, e));
            }
        }
        parts.join("*")
    }

    /// Renders a polynomial deterministically, terms in canonical monomial order.
    pub fn format_polynomial(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in p.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let coeff_is_one = abs.is_one();
            if !coeff_is_one || m.is_unit() {
                out.push_str(&format_rational(&abs));
                if !m.is_unit() {
                    out.push('*');
                }
            }
            if !m.is_unit() {
                out.push_str(&self.format_monomial(m));
            }
        }
        out
    }
}

/// Renders a rational as `n` or `n/d`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A canonical monomial: sparse exponent list sorted by generator id.
/// Odd generators carry exponent exactly 1; the empty list is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn generator(id: usize) -> Self {
        Monomial {
            exps: vec![(id, 1)],
        }
    }

    pub fn power(id: usize, e: u32) -> Self {
        if e == 0 {
            Monomial::unit()
        } else {
            Monomial {
                exps: vec![(id, e)],
            }
        }
    }

    /// Builds from unsorted (id, exponent) pairs; merges repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut map: BTreeMap<usize, u32> = BTreeMap::new();
        for (id, e) in pairs {
            if e > 0 {
                *map.entry(id).or_insert(0) += e;
            }
        }
        Monomial {
            exps: map.into_iter().collect(),
        }
    }

    pub fn exponents(&self) -> &[(usize, u32)] {
        &self.exps
    }

    pub fn exponent_of(&self, id: usize) -> u32 {
        self.exps
            .binary_search_by_key(&id, |&(i, _)| i)
            .map(|k| self.exps[k].1)
            .unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn word_length(&self) -> usize {
        self.exps.iter().map(|&(_, e)| e as usize).sum()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Lexicographic order on dense exponent vectors (missing ids read as 0).
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(ia, ea)), Some(&(ib, eb))) => match ia.cmp(&ib) {
                    // smaller id present only on one side: that side has a
                    // larger exponent at the first differing position
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        for (k, &(id, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "g{}", id)?;
            } else {
                write!(f, "g{}^{}", id, e)?;
            }
        }
        Ok(())
    }
}

/// ℚ-linear combination of canonical monomials; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Polynomial::monomial(Monomial::unit(), rat(1))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn generator(id: usize) -> Self {
        Polynomial::monomial(Monomial::generator(id), rat(1))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), -v)).collect(),
        }
    }

    /// Uniform total degree of all terms, when the polynomial is nonzero and
    /// degree-homogeneous; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self, alg: &Algebra) -> Option<usize> {
        let mut it = self.terms.keys();
        let first = alg.degree_of(it.next()?);
        for m in it {
            if alg.degree_of(m) != first {
                return None;
            }
        }
        Some(first)
    }

    /// Uniform word length, when nonzero and length-homogeneous.
    pub fn homogeneous_length(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let first = it.next()?.word_length();
        for m in it {
            if m.word_length() != first {
                return None;
            }
        }
        Some(first)
    }

    /// The component of word length exactly `len`.
    pub fn length_component(&self, len: usize) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.word_length() == len)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Truncation to word length at most `cap`.
    pub fn length_truncate(&self, cap: usize) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.word_length() <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Set of word lengths occurring among the terms.
    pub fn word_lengths(&self) -> Vec<usize> {
        let mut ls: Vec<usize> = self.terms.keys().map(|m| m.word_length()).collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    }
}
