//! Validated Sullivan minimal models and their closed-form invariants.

use std::collections::BTreeSet;

use crate::algebra::{rat, Algebra, Monomial, Polynomial};
use crate::derivation::Derivation;
use crate::linalg::Matrix;

/// A Sullivan minimal algebra (ΛV, d): ordered generators plus a degree +1
/// differential given on generators. Construct with [`SullivanModel::new`] and
/// check [`SullivanModel::validate`] before relying on model-level invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SullivanModel {
    algebra: Algebra,
    differential: Derivation,
}

/// Validation failure categories, each carrying the offending generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationIssue {
    /// Generator degree below 2 (simple connectivity).
    DegreeTooSmall { generator: String, degree: usize },
    /// Generator degrees not nondecreasing along the id order.
    OrderViolation { generator: String },
    /// d(g) not degree-homogeneous of degree |g| + 1.
    DegreeMismatch {
        generator: String,
        value: String,
        expected_degree: usize,
    },
    /// d(g) contains a word of length < 2.
    MinimalityViolation { generator: String, value: String },
    /// d(g) involves g itself or a later generator.
    TriangularityViolation { generator: String, value: String },
    /// d(d(g)) ≠ 0.
    NotSquareZero { generator: String, witness: String },
}

impl ValidationIssue {
    pub fn generator(&self) -> &str {
        match self {
            ValidationIssue::DegreeTooSmall { generator, .. }
            | ValidationIssue::OrderViolation { generator }
            | ValidationIssue::DegreeMismatch { generator, .. }
            | ValidationIssue::MinimalityViolation { generator, .. }
            | ValidationIssue::TriangularityViolation { generator, .. }
            | ValidationIssue::NotSquareZero { generator, .. } => generator,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ValidationIssue::DegreeTooSmall { generator, degree } => {
                format!("generator {generator} has degree {degree} < 2")
            }
            ValidationIssue::OrderViolation { generator } => {
                format!("generator {generator} breaks the nondecreasing-degree order")
            }
            ValidationIssue::DegreeMismatch {
                generator,
                value,
                expected_degree,
            } => format!(
                "d({generator}) = {value} is not homogeneous of degree {expected_degree}"
            ),
            ValidationIssue::MinimalityViolation { generator, value } => {
                format!("d({generator}) = {value} has a word of length < 2")
            }
            ValidationIssue::TriangularityViolation { generator, value } => {
                format!("d({generator}) = {value} uses {generator} or a later generator")
            }
            ValidationIssue::NotSquareZero { generator, witness } => {
                format!("d(d({generator})) = {witness} is nonzero")
            }
        }
    }
}

/// Pass/fail per invariant, with witnesses on failure. Never aborts on bad input.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Closed-form invariants read off a validated model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelInvariants {
    /// Smallest word length with d_k ≠ 0; `None` when d = 0.
    pub k: Option<usize>,
    pub dim_v_odd: usize,
    pub dim_v_even: usize,
    /// Formal dimension by the closed formula
    /// N = dim V^even − Σ_i (−1)^{|x_i|} |x_i|.
    pub n_formula: i64,
    /// e = dim V^odd + (k−2)·dim V^even; for d = 0 defined only on purely odd V.
    pub e_formula: Option<usize>,
    /// Homotopy Euler characteristic dim V^even − dim V^odd.
    pub chi_pi: i64,
}

impl SullivanModel {
    pub fn new(algebra: Algebra, differential: Derivation) -> Self {
        SullivanModel {
            algebra,
            differential,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn differential(&self) -> &Derivation {
        &self.differential
    }

    /// Checks every model invariant; d² = 0 is decided exactly on generators
    /// (d² is a derivation, hence zero iff it kills every generator).
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let gens = self.algebra.generators();
        for g in gens {
            if g.degree < 2 {
                issues.push(ValidationIssue::DegreeTooSmall {
                    generator: g.name.clone(),
                    degree: g.degree,
                });
            }
        }
        for pair in gens.windows(2) {
            if pair[1].degree < pair[0].degree {
                issues.push(ValidationIssue::OrderViolation {
                    generator: pair[1].name.clone(),
                });
            }
        }
        for g in gens {
            let dg = self.differential.value_on(g.id);
            if dg.is_zero() {
                continue;
            }
            let shown = self.algebra.format_polynomial(&dg);
            match dg.homogeneous_degree(&self.algebra) {
                Some(deg) if deg == g.degree + 1 => {}
                _ => issues.push(ValidationIssue::DegreeMismatch {
                    generator: g.name.clone(),
                    value: shown.clone(),
                    expected_degree: g.degree + 1,
                }),
            }
            if dg.word_lengths().first().is_some_and(|&l| l < 2) {
                issues.push(ValidationIssue::MinimalityViolation {
                    generator: g.name.clone(),
                    value: shown.clone(),
                });
            }
            let uses_later = dg
                .terms()
                .any(|(m, _)| m.exponents().iter().any(|&(id, _)| id >= g.id));
            if uses_later {
                issues.push(ValidationIssue::TriangularityViolation {
                    generator: g.name.clone(),
                    value: shown.clone(),
                });
            }
        }
        for g in gens {
            let dg = self.differential.value_on(g.id);
            let ddg = self.differential.apply(&self.algebra, &dg);
            if !ddg.is_zero() {
                issues.push(ValidationIssue::NotSquareZero {
                    generator: g.name.clone(),
                    witness: self.algebra.format_polynomial(&ddg),
                });
            }
        }
        ValidationReport { issues }
    }

    /// The word-length-i homogeneous part d_i of the differential.
    pub fn homogeneous_part(&self, i: usize) -> Derivation {
        self.differential.homogeneous_part(i)
    }

    /// Smallest word length k with d_k ≠ 0; `None` when d = 0.
    pub fn first_length(&self) -> Option<usize> {
        self.differential.min_word_length()
    }

    /// The homogeneous model (ΛV, d_k); for d = 0 this is (ΛV, 0), which is
    /// its own homogeneous model.
    pub fn homogeneous_model(&self) -> SullivanModel {
        let dk = match self.first_length() {
            Some(k) => self.homogeneous_part(k),
            None => Derivation::zero(1),
        };
        SullivanModel::new(self.algebra.clone(), dk)
    }

    pub fn is_length_homogeneous(&self) -> bool {
        self.differential.is_length_homogeneous()
    }

    pub fn invariants(&self) -> ModelInvariants {
        let dim_v_odd = self.algebra.dim_odd();
        let dim_v_even = self.algebra.dim_even();
        let alternating: i64 = self
            .algebra
            .generators()
            .iter()
            .map(|g| {
                let signed = g.degree as i64;
                if g.is_odd() {
                    -signed
                } else {
                    signed
                }
            })
            .sum();
        let n_formula = dim_v_even as i64 - alternating;
        let k = self.first_length();
        let e_formula = match k {
            Some(k) => Some(dim_v_odd + (k - 2) * dim_v_even),
            None if dim_v_even == 0 => Some(dim_v_odd),
            None => None,
        };
        ModelInvariants {
            k,
            dim_v_odd,
            dim_v_even,
            n_formula,
            e_formula,
            chi_pi: dim_v_even as i64 - dim_v_odd as i64,
        }
    }

    /// The acyclic closure (ΛV ⊗ ΛsV, D) with |sv| = |v| − 1 and D|V = d.
    ///
    /// D(sv) = v − w where Dw = dv is solved exactly in the partial closure
    /// over earlier generators; the partial closure is acyclic by induction,
    /// so the solve always succeeds and D² = 0 holds by construction.
    pub fn acyclic_closure(&self) -> AcyclicClosure {
        let base_len = self.algebra.len();
        let mut gens: Vec<(String, usize)> = self
            .algebra
            .generators()
            .iter()
            .map(|g| (g.name.clone(), g.degree))
            .collect();
        for g in self.algebra.generators() {
            gens.push((format!("s{}", g.name), g.degree - 1));
        }
        let closure_alg = Algebra::new(gens);
        let suspension = Derivation::new(
            -1,
            (0..base_len).map(|id| {
                (
                    id,
                    Polynomial::monomial(Monomial::generator(base_len + id), rat(1)),
                )
            }),
        );
        let mut values: Vec<(usize, Polynomial)> = Vec::new();
        for id in 0..base_len {
            let dv = self.differential.value_on(id);
            if !dv.is_zero() {
                values.push((id, dv.clone()));
            }
        }
        for id in 0..base_len {
            let dv = self.differential.value_on(id);
            let mut dsv = Polynomial::generator(id);
            if !dv.is_zero() {
                let partial = Derivation::new(1, values.iter().cloned());
                let deg = self.algebra.generator(id).degree;
                // monomials of Λ(V_{<id} ⊕ sV_{<id}): dv lives in ΛV_{<id}
                // and the closure over earlier generators is already acyclic
                let admits = |m: &Monomial| {
                    m.exponents()
                        .iter()
                        .all(|&(g, _)| g < id || (base_len..base_len + id).contains(&g))
                };
                let domain: Vec<Monomial> = closure_alg
                    .degree_basis(deg)
                    .into_iter()
                    .filter(|m| admits(m))
                    .collect();
                let target = closure_alg.degree_basis(deg + 1);
                let columns = domain
                    .iter()
                    .map(|m| {
                        let image = partial
                            .apply(&closure_alg, &Polynomial::monomial(m.clone(), rat(1)));
                        crate::cohomology::poly_to_vector(&image, &target)
                    })
                    .collect();
                let matrix = Matrix::from_columns(target.len(), columns);
                let b = crate::cohomology::poly_to_vector(&dv, &target);
                let w = matrix
                    .solve(&b)
                    .expect("dv is a coboundary in the partial acyclic closure");
                dsv = dsv.sub(&crate::cohomology::vector_to_poly(&w, &domain));
            }
            values.push((base_len + id, dsv));
        }
        let differential = Derivation::new(1, values);
        // D² = 0 must hold on every generator of the closure
        for id in 0..closure_alg.len() {
            let dd = differential.apply(&closure_alg, &differential.value_on(id));
            assert!(
                dd.is_zero(),
                "closure differential does not square to zero on generator {id}"
            );
        }
        AcyclicClosure {
            algebra: closure_alg,
            base_len,
            differential,
            suspension,
        }
    }
}

/// The acyclic closure Λ(V ⊕ sV) with its differential D and the suspension S.
#[derive(Clone, Debug)]
pub struct AcyclicClosure {
    algebra: Algebra,
    base_len: usize,
    differential: Derivation,
    suspension: Derivation,
}

impl AcyclicClosure {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn differential(&self) -> &Derivation {
        &self.differential
    }

    pub fn suspension(&self) -> &Derivation {
        &self.suspension
    }

    /// Id of the suspended generator sv for the base generator id.
    pub fn suspended_id(&self, base_id: usize) -> usize {
        self.base_len + base_id
    }

    pub fn base_len(&self) -> usize {
        self.base_len
    }
}

/// Deterministic pseudo-random minimal models, used by the structural
/// property suites. The differential of each generator is drawn from the
/// exact kernel of d on the admissible monomial span, so d² = 0, minimality
/// and triangularity hold by construction.
pub mod sampling {
    use super::*;
    use crate::linalg::Matrix;

    /// SplitMix64; deterministic across platforms.
    pub struct Rng(u64);

    impl Rng {
        pub fn new(seed: u64) -> Self {
            Rng(seed)
        }

        pub fn next_u64(&mut self) -> u64 {
            self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = self.0;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        }

        pub fn below(&mut self, n: usize) -> usize {
            (self.next_u64() % n as u64) as usize
        }
    }

    /// A random valid minimal model with up to `max_gens` generators of
    /// degree in `2..=max_degree`.
    pub fn random_minimal_model(seed: u64, max_gens: usize, max_degree: usize) -> SullivanModel {
        let mut rng = Rng::new(seed);
        let count = 1 + rng.below(max_gens);
        let mut degrees: Vec<usize> = (0..count).map(|_| 2 + rng.below(max_degree - 1)).collect();
        degrees.sort_unstable();
        let names: Vec<String> = degrees
            .iter()
            .enumerate()
            .map(|(i, _)| format!("v{i}"))
            .collect();
        let algebra = Algebra::new(names.into_iter().zip(degrees.iter().copied()));
        let mut values: Vec<(usize, Polynomial)> = Vec::new();
        for id in 0..algebra.len() {
            let g = algebra.generator(id).clone();
            let partial = Derivation::new(1, values.clone());
            // admissible monomials: degree |g|+1, length >= 2, earlier generators only
            let candidates: Vec<Monomial> = algebra
                .filtered_basis(g.degree + 1, 2)
                .into_iter()
                .filter(|m| m.exponents().iter().all(|&(i, _)| i < id))
                .collect();
            if candidates.is_empty() || rng.below(3) == 0 {
                continue;
            }
            // kernel of the partial differential on the candidate span
            let target = algebra.degree_basis(g.degree + 2);
            let columns = candidates
                .iter()
                .map(|m| {
                    let image = partial.apply(&algebra, &Polynomial::monomial(m.clone(), rat(1)));
                    poly_to_vec(&image, &target)
                })
                .collect();
            let kernel = Matrix::from_columns(target.len(), columns).kernel();
            if kernel.dim() == 0 {
                continue;
            }
            let mut dg = Polynomial::zero();
            for kv in kernel.basis_vectors() {
                let c = rng.below(5) as i64 - 2; // coefficients in -2..=2
                if c == 0 {
                    continue;
                }
                for (coord, m) in kv.iter().zip(candidates.iter()) {
                    dg.add_term(m.clone(), coord * rat(c));
                }
            }
            if !dg.is_zero() {
                values.push((id, dg));
            }
        }
        SullivanModel::new(algebra, Derivation::new(1, values))
    }

    fn poly_to_vec(p: &Polynomial, basis: &[Monomial]) -> Vec<crate::algebra::Rational> {
        use num_traits::Zero;
        let mut v = vec![crate::algebra::Rational::zero(); basis.len()];
        for (m, c) in p.terms() {
            let idx = basis
                .binary_search(m)
                .expect("monomial outside the expected basis");
            v[idx] = c.clone();
        }
        v
    }

    /// Set of word lengths occurring in the model's differential.
    pub fn differential_lengths(model: &SullivanModel) -> BTreeSet<usize> {
        model
            .differential()
            .values()
            .flat_map(|(_, p)| p.word_lengths())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn s2() -> SullivanModel {
        let alg = Algebra::new([("x", 2), ("y", 3)]);
        let d = Derivation::new(1, [(1, Polynomial::monomial(Monomial::power(0, 2), rat(1)))]);
        SullivanModel::new(alg, d)
    }

    pub fn cp2() -> SullivanModel {
        let alg = Algebra::new([("x", 2), ("y", 5)]);
        let d = Derivation::new(1, [(1, Polynomial::monomial(Monomial::power(0, 3), rat(1)))]);
        SullivanModel::new(alg, d)
    }

    #[test]
    fn s2_is_valid() {
        assert!(s2().validate().is_valid());
    }

    #[test]
    fn minimality_violation_is_reported() {
        let alg = Algebra::new([("x", 2), ("y", 3)]);
        let d = Derivation::new(1, [(1, Polynomial::generator(0))]);
        let report = SullivanModel::new(alg, d).validate();
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::MinimalityViolation { generator, .. } if generator == "y")));
    }

    #[test]
    fn degree_check_on_odd_product() {
        // dz = xy with |x|=3, |y|=4, |z|=6: degree 7 = |z|+1, valid
        let alg = Algebra::new([("x", 3), ("y", 4), ("z", 6)]);
        let d = Derivation::new(
            1,
            [(
                2,
                Polynomial::monomial(Monomial::from_pairs([(0, 1), (1, 1)]), rat(1)),
            )],
        );
        assert!(SullivanModel::new(alg, d).validate().is_valid());
    }

    #[test]
    fn square_zero_failure_is_reported() {
        // dy = x^2, dz = y with |z|=2: d(dz) = x^2 != 0, plus other issues
        let alg = Algebra::new([("x", 2), ("y", 3), ("z", 2)]);
        let d = Derivation::new(
            1,
            [
                (1, Polynomial::monomial(Monomial::power(0, 2), rat(1))),
                (2, Polynomial::generator(1)),
            ],
        );
        let report = SullivanModel::new(alg, d).validate();
        assert!(!report.is_valid());
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::NotSquareZero { .. })));
    }

    #[test]
    fn invariants_of_small_models() {
        let inv = s2().invariants();
        assert_eq!(inv.k, Some(2));
        assert_eq!(inv.n_formula, 2);
        assert_eq!(inv.e_formula, Some(1));

        let inv = cp2().invariants();
        assert_eq!(inv.k, Some(3));
        assert_eq!(inv.n_formula, 4);
        assert_eq!(inv.e_formula, Some(2));

        // Λ(x2, y2, z5, w5), dz = x^3, dw = y^3
        let alg = Algebra::new([("x", 2), ("y", 2), ("z", 5), ("w", 5)]);
        let d = Derivation::new(
            1,
            [
                (2, Polynomial::monomial(Monomial::power(0, 3), rat(1))),
                (3, Polynomial::monomial(Monomial::power(1, 3), rat(1))),
            ],
        );
        let inv = SullivanModel::new(alg, d).invariants();
        assert_eq!(inv.k, Some(3));
        assert_eq!(inv.n_formula, 8);
        assert_eq!(inv.e_formula, Some(4));
    }

    #[test]
    fn zero_differential_conventions() {
        let alg = Algebra::new([("x", 3)]);
        let model = SullivanModel::new(alg, Derivation::zero(1));
        let inv = model.invariants();
        assert_eq!(inv.k, None);
        assert_eq!(inv.e_formula, Some(1));
        assert_eq!(inv.n_formula, 3);

        let alg = Algebra::new([("x", 2)]);
        let model = SullivanModel::new(alg, Derivation::zero(1));
        assert_eq!(model.invariants().e_formula, None);
    }

    #[test]
    fn homogeneous_parts_sum_to_d() {
        // dc = x*a*b + x^4 over Λ(x2, a3, b3, c7): k = 3
        let alg = Algebra::new([("x", 2), ("a", 3), ("b", 3), ("c", 7)]);
        let dc = Polynomial::from_terms([
            (Monomial::from_pairs([(0, 1), (1, 1), (2, 1)]), rat(1)),
            (Monomial::power(0, 4), rat(1)),
        ]);
        let model = SullivanModel::new(alg, Derivation::new(1, [(3, dc.clone())]));
        assert!(model.validate().is_valid());
        assert_eq!(model.first_length(), Some(3));
        let recombined = model
            .homogeneous_part(3)
            .value_on(3)
            .add(&model.homogeneous_part(4).value_on(3));
        assert_eq!(recombined, dc);
        assert!(model.homogeneous_part(2).is_zero());
    }

    #[test]
    fn acyclic_closure_of_s2() {
        let model = s2();
        let closure = model.acyclic_closure();
        let alg = closure.algebra();
        assert_eq!(alg.generator(closure.suspended_id(0)).degree, 1);
        assert_eq!(alg.generator(closure.suspended_id(1)).degree, 2);
        // D(sx) = x, D(sy) = y - x sx  (D(x sx) = x^2 = dy)
        let dsx = closure.differential().value_on(closure.suspended_id(0));
        assert_eq!(dsx, Polynomial::generator(0));
        let dsy = closure.differential().value_on(closure.suspended_id(1));
        let expected = Polynomial::generator(1).sub(&Polynomial::monomial(
            Monomial::from_pairs([(0, 1), (closure.suspended_id(0), 1)]),
            rat(1),
        ));
        assert_eq!(dsy, expected);
    }

    #[test]
    fn closure_of_free_odd_kills_the_generator() {
        let alg = Algebra::new([("x", 3)]);
        let model = SullivanModel::new(alg, Derivation::zero(1));
        let closure = model.acyclic_closure();
        assert_eq!(closure.algebra().generator(1).degree, 2);
        // D(sx) = x: the Koszul contraction
        assert_eq!(
            closure.differential().value_on(1),
            Polynomial::generator(0)
        );
    }

    #[test]
    fn random_models_are_valid() {
        for seed in 0..50 {
            let model = sampling::random_minimal_model(seed, 4, 8);
            let report = model.validate();
            assert!(report.is_valid(), "seed {seed}: {:?}", report.issues);
        }
    }
}
