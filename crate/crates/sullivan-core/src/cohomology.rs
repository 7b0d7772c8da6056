//! Exact bounded-degree cochain computations for (ΛV, d): cohomology tables,
//! word-length bigrading, ellipticity verdicts, and the Poincaré pairing.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{Algebra, Monomial, Polynomial, Rational};
use crate::derivation::Derivation;
use crate::linalg::{Matrix, SubspaceBasis, Subquotient};
use crate::model::SullivanModel;

/// Converts a polynomial to coordinates over an ordered monomial basis.
/// Panics when a term lies outside the basis.
pub fn poly_to_vector(p: &Polynomial, basis: &[Monomial]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); basis.len()];
    for (m, c) in p.terms() {
        let idx = basis
            .binary_search(m)
            .expect("monomial not in the ambient basis");
        v[idx] = c.clone();
    }
    v
}

pub fn vector_to_poly(v: &[Rational], basis: &[Monomial]) -> Polynomial {
    Polynomial::from_terms(
        v.iter()
            .zip(basis.iter())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| (m.clone(), c.clone())),
    )
}

/// A cochain complex view of (ΛV, θ): the full complex, or the quotient
/// ΛV/Λ^{>cap}V when `length_cap` is set (the differential is then followed
/// by truncation to word length ≤ cap).
pub struct Complex<'a> {
    pub algebra: &'a Algebra,
    pub differential: &'a Derivation,
    pub length_cap: Option<usize>,
}

impl<'a> Complex<'a> {
    pub fn new(algebra: &'a Algebra, differential: &'a Derivation) -> Self {
        Complex {
            algebra,
            differential,
            length_cap: None,
        }
    }

    pub fn quotient(algebra: &'a Algebra, differential: &'a Derivation, cap: usize) -> Self {
        Complex {
            algebra,
            differential,
            length_cap: Some(cap),
        }
    }

    pub fn basis(&self, n: usize) -> Vec<Monomial> {
        let all = self.algebra.degree_basis(n);
        match self.length_cap {
            None => all,
            Some(cap) => all
                .into_iter()
                .filter(|m| m.word_length() <= cap)
                .collect(),
        }
    }

    /// Image of one basis monomial under the (possibly truncated) differential.
    fn image_of(&self, m: &Monomial) -> Polynomial {
        let p = Polynomial::monomial(m.clone(), Rational::one());
        let image = self.differential.apply(self.algebra, &p);
        match self.length_cap {
            None => image,
            Some(cap) => image.length_truncate(cap),
        }
    }

    /// Exact matrix of d: (ΛV)^n → (ΛV)^{n+1}; columns indexed by `basis(n)`,
    /// rows by `basis(n+1)`.
    pub fn matrix(&self, n: usize) -> Matrix {
        let source = self.basis(n);
        let target = self.basis(n + 1);
        let columns = source
            .iter()
            .map(|m| poly_to_vector(&self.image_of(m), &target))
            .collect();
        Matrix::from_columns(target.len(), columns)
    }

    pub fn cocycles(&self, n: usize) -> SubspaceBasis {
        self.matrix(n).kernel()
    }

    pub fn coboundaries(&self, n: usize) -> SubspaceBasis {
        if n == 0 {
            SubspaceBasis::empty(self.basis(0).len())
        } else {
            self.matrix(n - 1).image()
        }
    }

    pub fn cohomology(&self, n: usize) -> Subquotient {
        Subquotient::new(self.cocycles(n), self.coboundaries(n))
    }

    pub fn dim_h(&self, n: usize) -> usize {
        let dim_kernel = self.cocycles(n).dim();
        let rank_in = self.coboundaries(n).dim();
        dim_kernel - rank_in
    }

    /// Canonical cohomology representatives in degree n, as polynomials.
    pub fn representatives(&self, n: usize) -> Vec<Polynomial> {
        let basis = self.basis(n);
        self.cohomology(n)
            .representatives()
            .basis_vectors()
            .iter()
            .map(|v| vector_to_poly(v, &basis))
            .collect()
    }
}

/// Per-degree cohomology data computed once up to a bound.
#[derive(Clone, Debug)]
pub struct CohomologyTable {
    pub bound: usize,
    pub dims: Vec<usize>,
    pub representatives: Vec<Vec<Polynomial>>,
}

impl CohomologyTable {
    pub fn compute(complex: &Complex<'_>, bound: usize) -> Self {
        let mut dims = Vec::with_capacity(bound + 1);
        let mut representatives = Vec::with_capacity(bound + 1);
        // reuse each matrix for both its kernel and the next degree's image
        let mut prev_image: Option<SubspaceBasis> = None;
        for n in 0..=bound {
            let basis = complex.basis(n);
            let m = complex.matrix(n);
            let kernel = m.kernel();
            let image_in = prev_image.take().unwrap_or_else(|| {
                SubspaceBasis::empty(basis.len())
            });
            let q = Subquotient::new(kernel, image_in);
            dims.push(q.dim());
            representatives.push(
                q.representatives()
                    .basis_vectors()
                    .iter()
                    .map(|v| vector_to_poly(v, &basis))
                    .collect(),
            );
            prev_image = Some(m.image());
        }
        CohomologyTable {
            bound,
            dims,
            representatives,
        }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Word-length split of H^n for a length-homogeneous differential: map
/// p ↦ dim H^n_p, with zero entries omitted.
///
/// d_k maps length-p words to length-(p + k − 1) words, so the complex splits
/// per word length; the zero differential counts monomials per length.
pub fn bigraded_dims(
    algebra: &Algebra,
    differential: &Derivation,
    n: usize,
) -> Result<BTreeMap<usize, usize>, String> {
    if !differential.is_length_homogeneous() {
        return Err("differential is not word-length homogeneous".into());
    }
    let shift = differential.min_word_length().map(|k| k - 1).unwrap_or(1);
    let mut out = BTreeMap::new();
    let by_length = |deg: usize, len: usize| -> Vec<Monomial> {
        algebra
            .degree_basis(deg)
            .into_iter()
            .filter(|m| m.word_length() == len)
            .collect()
    };
    let restricted_matrix = |src: &[Monomial], tgt: &[Monomial]| -> Matrix {
        let columns = src
            .iter()
            .map(|m| {
                let image =
                    differential.apply(algebra, &Polynomial::monomial(m.clone(), Rational::one()));
                poly_to_vector(&image, tgt)
            })
            .collect();
        Matrix::from_columns(tgt.len(), columns)
    };
    for p in 0..=(n / 2) {
        let here = by_length(n, p);
        if here.is_empty() {
            continue;
        }
        let out_basis = by_length(n + 1, p + shift);
        let dim_kernel = restricted_matrix(&here, &out_basis).kernel().dim();
        let rank_in = if n == 0 || p < shift {
            0
        } else {
            let in_basis = by_length(n - 1, p - shift);
            if in_basis.is_empty() {
                0
            } else {
                restricted_matrix(&in_basis, &here).rank()
            }
        };
        let dim = dim_kernel - rank_in;
        if dim > 0 {
            out.insert(p, dim);
        }
    }
    Ok(out)
}

/// Outcome of the window-certified ellipticity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EllipticityStatus {
    Elliptic,
    NotElliptic,
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct EllipticityVerdict {
    pub status: EllipticityStatus,
    /// Formal dimension by the closed formula (meaningful when Elliptic).
    pub n_formula: i64,
    /// Top degree actually computed.
    pub window: usize,
    /// For NotElliptic: a degree and class violating ellipticity.
    pub witness: Option<(usize, Polynomial)>,
    pub reason: String,
}

impl EllipticityVerdict {
    pub fn is_elliptic(&self) -> bool {
        self.status == EllipticityStatus::Elliptic
    }
}

/// Semi-decides ellipticity: computes H through a window
/// W = max(window_factor·N, N + max generator degree) and checks
/// dim H^N = 1, vanishing on (N, W], and a nondegenerate Poincaré pairing.
pub fn ellipticity_verdict(model: &SullivanModel, window_factor: usize) -> EllipticityVerdict {
    let inv = model.invariants();
    let n_formula = inv.n_formula;
    if n_formula < 0 {
        return EllipticityVerdict {
            status: EllipticityStatus::NotElliptic,
            n_formula,
            window: 0,
            witness: Some((0, Polynomial::one())),
            reason: format!("formal-dimension formula gives N = {n_formula} < 0"),
        };
    }
    let n = n_formula as usize;
    let window = (window_factor * n).max(n + model.algebra().max_degree());
    let complex = Complex::new(model.algebra(), model.differential());
    let table = CohomologyTable::compute(&complex, window);
    for i in n + 1..=window {
        if table.dim(i) > 0 {
            let witness = table.representatives[i][0].clone();
            return EllipticityVerdict {
                status: EllipticityStatus::NotElliptic,
                n_formula,
                window,
                witness: Some((i, witness)),
                reason: format!("H^{i} is nonzero above the formal dimension {n}"),
            };
        }
    }
    if table.dim(n) != 1 {
        let witness = table.representatives[n]
            .first()
            .cloned()
            .unwrap_or_else(Polynomial::zero);
        return EllipticityVerdict {
            status: EllipticityStatus::NotElliptic,
            n_formula,
            window,
            witness: Some((n, witness)),
            reason: format!("dim H^{n} = {} instead of 1", table.dim(n)),
        };
    }
    match pairing_nondegenerate(model, &table, n) {
        Ok(()) => EllipticityVerdict {
            status: EllipticityStatus::Elliptic,
            n_formula,
            window,
            witness: None,
            reason: format!("H vanishes on ({n}, {window}], dim H^{n} = 1, pairing nondegenerate"),
        },
        Err((i, witness)) => EllipticityVerdict {
            status: EllipticityStatus::NotElliptic,
            n_formula,
            window,
            witness: Some((i, witness)),
            reason: format!("Poincaré pairing degenerate against H^{i}"),
        },
    }
}

/// Checks that every pairing matrix H^i × H^{N−i} → H^N ≅ ℚ is square and
/// invertible. On failure returns a degree and witness class.
fn pairing_nondegenerate(
    model: &SullivanModel,
    table: &CohomologyTable,
    n: usize,
) -> Result<(), (usize, Polynomial)> {
    let complex = Complex::new(model.algebra(), model.differential());
    let top = complex.cohomology(n);
    for i in 0..=n / 2 {
        let j = n - i;
        let reps_i = &table.representatives[i];
        let reps_j = &table.representatives[j];
        if reps_i.len() != reps_j.len() {
            let witness = reps_i
                .first()
                .or(reps_j.first())
                .cloned()
                .unwrap_or_else(Polynomial::zero);
            return Err((i, witness));
        }
        if reps_i.is_empty() {
            continue;
        }
        let m = pairing_matrix(model, &top, reps_i, reps_j, n);
        if m.rank() != reps_i.len() {
            return Err((i, reps_i[0].clone()));
        }
    }
    Ok(())
}

/// The matrix of the cup product pairing with respect to representative bases,
/// entries = coordinate of [a_r · b_c] in the one-dimensional H^N.
pub fn pairing_matrix(
    model: &SullivanModel,
    top: &Subquotient,
    reps_a: &[Polynomial],
    reps_b: &[Polynomial],
    n: usize,
) -> Matrix {
    let basis_n = model.algebra().degree_basis(n);
    let mut m = Matrix::zero(reps_a.len(), reps_b.len());
    for (c, b) in reps_b.iter().enumerate() {
        for (r, a) in reps_a.iter().enumerate() {
            let prod = model.algebra().multiply(a, b);
            let coords = top
                .class_coordinates(&poly_to_vector(&prod, &basis_n))
                .expect("product of cocycles is a cocycle");
            let value = coords.first().cloned().unwrap_or_else(Rational::zero);
            m.set(r, c, value);
        }
    }
    m
}

/// Failure of Poincaré duality; falsifies an elliptic verdict.
#[derive(Clone, Debug)]
pub struct DualityViolation {
    pub class: Polynomial,
    pub degree: usize,
}

/// For elliptic models: a class b in H^{N−i} with [a]·[b] = fundamental class.
pub fn pairing_dual(
    model: &SullivanModel,
    n: usize,
    a: &Polynomial,
    degree_a: usize,
) -> Result<Polynomial, DualityViolation> {
    let complex = Complex::new(model.algebra(), model.differential());
    let top = complex.cohomology(n);
    let reps_b = complex.representatives(n - degree_a);
    let reps_a = [a.clone()];
    let m = pairing_matrix(model, &top, &reps_a, &reps_b, n);
    // fundamental class has coordinate vector (1) in its own representative basis
    match m.solve(&[Rational::one()]) {
        Some(coeffs) => {
            let mut b = Polynomial::zero();
            for (c, rep) in coeffs.iter().zip(reps_b.iter()) {
                if !c.is_zero() {
                    b = b.add(&rep.scale(c));
                }
            }
            Ok(b)
        }
        None => Err(DualityViolation {
            class: a.clone(),
            degree: degree_a,
        }),
    }
}

/// Canonical representative of the fundamental class of an elliptic model.
pub fn fundamental_class(model: &SullivanModel, n: usize) -> Option<Polynomial> {
    let complex = Complex::new(model.algebra(), model.differential());
    let reps = complex.representatives(n);
    if reps.len() == 1 {
        Some(reps[0].clone())
    } else {
        None
    }
}
