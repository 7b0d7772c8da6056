//! The word-length-filtration spectral sequence of (ΛV, d).
//!
//! The filtration is F^p(ΛV) = Λ^{≥p}V. Z and B spaces follow the filtered
//! complex formulas
//!
//! Z_r^{p,q} = { x ∈ [F^p]^{p+q} | dx ∈ [F^{p+r}]^{p+q+1} },
//! E_r^{p,q} = Z_r^{p,q} / (Z_{r−1}^{p+1,q−1} + d Z_{r−1}^{p−r+1,q+r−2}),
//!
//! with the B-index convention fixed so that E_k identifies with the bigraded
//! cohomology of (ΛV, d_k) — the engine's primary oracle. Since every
//! generator has degree ≥ 2, word lengths in total degree n are at most n/2,
//! which gives the stabilization bound r_stab(n) = ⌊(n+2)/2⌋ + 1.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::algebra::{Monomial, Polynomial, Rational};
use crate::cohomology::{poly_to_vector, vector_to_poly, Complex};
use crate::linalg::{Matrix, SubspaceBasis, Subquotient, Vector};
use crate::model::SullivanModel;

/// Page index from which all entries of total degree n are stable.
pub fn r_stab(n: usize) -> usize {
    (n + 2) / 2 + 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectralError {
    /// The page differential failed to map denominator into denominator;
    /// indicates an engine bug, never expected to fire.
    WellDefinednessViolation { r: usize, p: i64, q: i64 },
    /// Isomorphism (7)/(8) dimension identity failed; engine bug.
    IsoViolation { r: usize, p: i64, q: i64 },
    NotACocycle,
    ZeroClass,
    /// Input class is not degree-homogeneous.
    NotHomogeneous,
}

/// One page entry E_r^{p,q} with its canonical subquotient data.
#[derive(Clone, Debug)]
pub struct PageEntry {
    pub r: usize,
    pub p: i64,
    pub q: i64,
    pub quotient: Rc<Subquotient>,
}

impl PageEntry {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

/// A page differential δ_r: E_r^{p,q} → E_r^{p+r,q−r+1} expressed in the
/// canonical representative bases of source and target.
#[derive(Clone, Debug)]
pub struct PageMap {
    pub source: PageEntry,
    pub target: PageEntry,
    pub matrix: Matrix,
}

impl PageMap {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn kernel_dim(&self) -> usize {
        self.source.dim() - self.rank()
    }
}

/// Caching engine for one model.
pub struct SpectralEngine<'a> {
    model: &'a SullivanModel,
    bases: RefCell<BTreeMap<usize, Rc<Vec<Monomial>>>>,
    z_cache: RefCell<BTreeMap<(usize, i64, i64), Rc<SubspaceBasis>>>,
    entry_cache: RefCell<BTreeMap<(usize, i64, i64), PageEntry>>,
}

impl<'a> SpectralEngine<'a> {
    pub fn new(model: &'a SullivanModel) -> Self {
        SpectralEngine {
            model,
            bases: RefCell::new(BTreeMap::new()),
            z_cache: RefCell::new(BTreeMap::new()),
            entry_cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn model(&self) -> &SullivanModel {
        self.model
    }

    /// Full monomial basis of (ΛV)^n, cached.
    pub fn basis(&self, n: usize) -> Rc<Vec<Monomial>> {
        if let Some(b) = self.bases.borrow().get(&n) {
            return Rc::clone(b);
        }
        let b = Rc::new(self.model.algebra().degree_basis(n));
        self.bases.borrow_mut().insert(n, Rc::clone(&b));
        b
    }

    fn d_vector(&self, v: &[Rational], n: usize) -> Vector {
        let src = self.basis(n);
        let tgt = self.basis(n + 1);
        let poly = vector_to_poly(v, &src);
        let image = self
            .model
            .differential()
            .apply(self.model.algebra(), &poly);
        poly_to_vector(&image, &tgt)
    }

    /// Z_r^{p,q} as a subspace of the full (ΛV)^{p+q} coordinate space.
    /// Negative p reads F^p = F^0; negative total degree is the zero space.
    pub fn z_space(&self, r: usize, p: i64, q: i64) -> Rc<SubspaceBasis> {
        let n = p + q;
        if n < 0 {
            return Rc::new(SubspaceBasis::empty(0));
        }
        let key = (r, p, q);
        if let Some(z) = self.z_cache.borrow().get(&key) {
            return Rc::clone(z);
        }
        let n = n as usize;
        let ambient = self.basis(n);
        let target = self.basis(n + 1);
        let p_eff = p.max(0) as usize;
        // columns: F^p basis monomials; rows: target monomials of length < p + r
        let filtered: Vec<usize> = ambient
            .iter()
            .enumerate()
            .filter(|(_, m)| m.word_length() >= p_eff)
            .map(|(i, _)| i)
            .collect();
        let threshold = p + r as i64;
        let low_rows: Vec<usize> = target
            .iter()
            .enumerate()
            .filter(|(_, m)| (m.word_length() as i64) < threshold)
            .map(|(i, _)| i)
            .collect();
        let columns: Vec<Vector> = filtered
            .iter()
            .map(|&i| {
                let m = &ambient[i];
                let image = self.model.differential().apply(
                    self.model.algebra(),
                    &Polynomial::monomial(m.clone(), Rational::one()),
                );
                let full = poly_to_vector(&image, &target);
                low_rows.iter().map(|&rw| full[rw].clone()).collect()
            })
            .collect();
        let kernel = Matrix::from_columns(low_rows.len(), columns).kernel();
        // embed kernel coordinates (over the filtered basis) into the ambient
        let vectors = kernel
            .basis_vectors()
            .iter()
            .map(|kv| {
                let mut v = vec![Rational::zero(); ambient.len()];
                for (c, &i) in kv.iter().zip(filtered.iter()) {
                    v[i] = c.clone();
                }
                v
            })
            .collect();
        let z = Rc::new(SubspaceBasis::from_vectors(ambient.len(), vectors));
        self.z_cache.borrow_mut().insert(key, Rc::clone(&z));
        z
    }

    /// d(Z_{r−1}^{p−r+1, q+r−2}) — the coboundary part of the E_r^{p,q}
    /// denominator — as a subspace of (ΛV)^{p+q}.
    pub fn b_space(&self, r: usize, p: i64, q: i64) -> SubspaceBasis {
        let n = p + q;
        if n < 0 {
            return SubspaceBasis::empty(0);
        }
        let ambient_dim = self.basis(n as usize).len();
        if n == 0 {
            return SubspaceBasis::empty(ambient_dim);
        }
        let r_prev = r - 1;
        let z = self.z_space(r_prev, p - r as i64 + 1, q + r as i64 - 2);
        let p_eff = p.max(0) as usize;
        let vectors: Vec<Vector> = z
            .basis_vectors()
            .iter()
            .map(|v| self.d_vector(v, (n - 1) as usize))
            .collect();
        let image = SubspaceBasis::from_vectors(ambient_dim, vectors);
        // the formula makes F^p containment automatic; assert it
        let basis = self.basis(n as usize);
        debug_assert!(image.basis_vectors().iter().all(|v| {
            v.iter()
                .zip(basis.iter())
                .all(|(c, m)| c.is_zero() || m.word_length() >= p_eff)
        }));
        image
    }

    /// E_r^{p,q} = Z_r^{p,q} / (Z_{r−1}^{p+1,q−1} + d Z_{r−1}^{p−r+1,q+r−2}).
    pub fn page_entry(&self, r: usize, p: i64, q: i64) -> PageEntry {
        assert!(r >= 1, "pages are indexed from r = 1");
        let key = (r, p, q);
        if let Some(e) = self.entry_cache.borrow().get(&key) {
            return e.clone();
        }
        let num = (*self.z_space(r, p, q)).clone();
        let den = if p + q < 0 {
            SubspaceBasis::empty(0)
        } else {
            (*self.z_space(r - 1, p + 1, q - 1))
                .clone()
                .sum(&self.b_space(r, p, q))
        };
        assert!(
            den.is_subspace_of(&num),
            "page denominator escapes the numerator at r={r}, p={p}, q={q}"
        );
        let entry = PageEntry {
            r,
            p,
            q,
            quotient: Rc::new(Subquotient::new(num, den)),
        };
        self.entry_cache.borrow_mut().insert(key, entry.clone());
        entry
    }

    /// Representative polynomials for E_r^{p,q}.
    pub fn representatives(&self, entry: &PageEntry) -> Vec<Polynomial> {
        let n = entry.p + entry.q;
        if n < 0 {
            return Vec::new();
        }
        let basis = self.basis(n as usize);
        entry
            .quotient
            .representatives()
            .basis_vectors()
            .iter()
            .map(|v| vector_to_poly(v, &basis))
            .collect()
    }

    /// δ_r: E_r^{p,q} → E_r^{p+r,q−r+1}, δ_r[v] = [dv].
    pub fn page_differential(&self, r: usize, p: i64, q: i64) -> Result<PageMap, SpectralError> {
        let source = self.page_entry(r, p, q);
        let target = self.page_entry(r, p + r as i64, q - r as i64 + 1);
        let n = p + q;
        if n < 0 {
            return Ok(PageMap {
                matrix: Matrix::zero(target.dim(), source.dim()),
                source,
                target,
            });
        }
        let n = n as usize;
        // well-definedness: d maps the source denominator into the target denominator
        for v in source.quotient.denominator().basis_vectors() {
            let dv = self.d_vector(v, n);
            if !target.quotient.is_zero_class(&dv) {
                return Err(SpectralError::WellDefinednessViolation { r, p, q });
            }
        }
        let mut columns = Vec::with_capacity(source.dim());
        for v in source.quotient.representatives().basis_vectors() {
            let dv = self.d_vector(v, n);
            let coords = target
                .quotient
                .class_coordinates(&dv)
                .ok_or(SpectralError::WellDefinednessViolation { r, p, q })?;
            columns.push(coords);
        }
        Ok(PageMap {
            matrix: Matrix::from_columns(target.dim(), columns),
            source,
            target,
        })
    }

    /// The stable entry E_∞^{p,q}.
    pub fn e_infinity(&self, p: i64, q: i64) -> PageEntry {
        let n = (p + q).max(0) as usize;
        self.page_entry(r_stab(n), p, q)
    }

    /// dim E_∞^{p, n−p} for all columns p of total degree n.
    pub fn e_infinity_dims(&self, n: usize) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for p in 0..=(n / 2) {
            let dim = self.e_infinity(p as i64, n as i64 - p as i64).dim();
            if dim > 0 {
                out.insert(p, dim);
            }
        }
        out
    }

    /// Set of columns p with E_∞^{p,q} ≠ 0 for some total degree ≤ bound.
    pub fn e_infinity_column_support(&self, bound: usize) -> BTreeSet<usize> {
        let mut support = BTreeSet::new();
        for n in 0..=bound {
            for p in self.e_infinity_dims(n).keys() {
                support.insert(*p);
            }
        }
        support
    }

    /// dims of the homology of (E_r, δ_r) at (p,q); equals dim E_{r+1}^{p,q}.
    pub fn page_homology_dim(&self, r: usize, p: i64, q: i64) -> Result<usize, SpectralError> {
        let outgoing = self.page_differential(r, p, q)?;
        let incoming = self.page_differential(r, p - r as i64, q + r as i64 - 1)?;
        Ok(outgoing.kernel_dim() - incoming.rank())
    }

    /// Dimension identities for the isomorphisms identifying ker δ_r and
    /// im δ_r with explicit Z-space subquotients.
    pub fn subquotient_iso_check(
        &self,
        r: usize,
        p: i64,
        q: i64,
    ) -> Result<IsoCheckReport, SpectralError> {
        let ri = r as i64;
        let outgoing = self.page_differential(r, p, q)?;
        let incoming = self.page_differential(r, p - ri, q + ri - 1)?;
        let den = (*self.z_space(r - 1, p + 1, q - 1))
            .clone()
            .sum(&self.b_space(r, p, q));
        // (7): ker δ_r ≅ (Z_{r+1}^{p,q} + Z_{r−1}^{p+1,q−1}) / den
        let num7 = (*self.z_space(r + 1, p, q))
            .clone()
            .sum(&self.z_space(r - 1, p + 1, q - 1));
        let iso7_dim = num7.dim() - den.dim();
        // (8): im δ_r ≅ (d Z_r^{p−r,q+r−1} + Z_{r−1}^{p+1,q−1}) / den
        let dz = {
            let z = self.z_space(r, p - ri, q + ri - 1);
            let n = p + q;
            if n <= 0 {
                SubspaceBasis::empty(self.basis(n.max(0) as usize).len())
            } else {
                let vectors = z
                    .basis_vectors()
                    .iter()
                    .map(|v| self.d_vector(v, (n - 1) as usize))
                    .collect();
                SubspaceBasis::from_vectors(self.basis(n as usize).len(), vectors)
            }
        };
        let num8 = dz.sum(&self.z_space(r - 1, p + 1, q - 1));
        let iso8_dim = num8.dim() - den.dim();
        let report = IsoCheckReport {
            r,
            p,
            q,
            ker_dim: outgoing.kernel_dim(),
            iso7_dim,
            im_dim: incoming.rank(),
            iso8_dim,
        };
        if report.ker_dim != report.iso7_dim || report.im_dim != report.iso8_dim {
            return Err(SpectralError::IsoViolation { r, p, q });
        }
        Ok(report)
    }
}

/// Dimension comparison for the Z-space subquotient isomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCheckReport {
    pub r: usize,
    pub p: i64,
    pub q: i64,
    pub ker_dim: usize,
    pub iso7_dim: usize,
    pub im_dim: usize,
    pub iso8_dim: usize,
}

impl IsoCheckReport {
    pub fn holds(&self) -> bool {
        self.ker_dim == self.iso7_dim && self.im_dim == self.iso8_dim
    }
}

/// Result of a Toomer computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToomerResult {
    /// Largest E_∞ column observed.
    pub value: usize,
    /// Degrees scanned.
    pub bound: usize,
    /// True when the model is elliptic and the scan over degrees ≤ N is
    /// exhaustive; otherwise the value is only a lower bound.
    pub certified: bool,
}

/// Toomer invariant via the E_∞ column support. For an elliptic model pass
/// `elliptic_n = Some(N)`; otherwise the supplied bound caps the scan and the
/// result is a lower bound.
pub fn toomer(model: &SullivanModel, elliptic_n: Option<usize>, bound: usize) -> ToomerResult {
    let engine = SpectralEngine::new(model);
    let (scan, certified) = match elliptic_n {
        Some(n) => (n, true),
        None => (bound, false),
    };
    let support = engine.e_infinity_column_support(scan);
    ToomerResult {
        value: support.into_iter().max().unwrap_or(0),
        bound: scan,
        certified,
    }
}

/// Smallest n with p_n^*([x]) ≠ 0, with the two characterizations computed
/// independently and asserted equal:
/// the quotient-complex route (image of [x] in H(ΛV/Λ^{≥n+1}V) nonzero) and
/// the representative route (max p with x ∈ Λ^{≥p}-span + coboundaries).
pub fn e0_of_class(model: &SullivanModel, x: &Polynomial) -> Result<usize, SpectralError> {
    if x.is_zero() {
        return Err(SpectralError::ZeroClass);
    }
    let alg = model.algebra();
    let n = x
        .homogeneous_degree(alg)
        .ok_or(SpectralError::NotHomogeneous)?;
    let d = model.differential();
    if !d.apply(alg, x).is_zero() {
        return Err(SpectralError::NotACocycle);
    }
    let full = Complex::new(alg, d);
    let basis = full.basis(n);
    let xv = poly_to_vector(x, &basis);
    let coboundaries = full.coboundaries(n);
    if coboundaries.contains(&xv) {
        return Err(SpectralError::ZeroClass);
    }
    // representative route
    let max_len = n / 2;
    let mut rep_route = 0usize;
    for p in (0..=max_len).rev() {
        let fp: Vec<Vector> = basis
            .iter()
            .enumerate()
            .filter(|(_, m)| m.word_length() >= p)
            .map(|(i, _)| {
                let mut v = vec![Rational::zero(); basis.len()];
                v[i] = Rational::one();
                v
            })
            .collect();
        let space = SubspaceBasis::from_vectors(basis.len(), fp).sum(&coboundaries);
        if space.contains(&xv) {
            rep_route = p;
            break;
        }
    }
    // quotient-complex route
    let mut quot_route = None;
    for cap in 0..=max_len {
        let quotient = Complex::quotient(alg, d, cap);
        let qbasis = quotient.basis(n);
        let truncated = poly_to_vector(&x.length_truncate(cap), &qbasis);
        if !quotient.coboundaries(n).contains(&truncated) {
            quot_route = Some(cap);
            break;
        }
    }
    let quot_route = quot_route.expect("class survives in the untruncated quotient");
    assert_eq!(
        rep_route, quot_route,
        "e0 characterizations disagree on a class of degree {n}"
    );
    Ok(rep_route)
}

/// The e₀ spectrum {e₀(x) | 0 ≠ x ∈ H^{≤bound}} computed directly from the
/// induced filtration on cohomology: p is attained in degree n exactly when
/// dim F_p H^n > dim F_{p+1} H^n, with F_p H^n the image of the
/// F^p-supported cocycles. Independent of the spectral sequence.
pub fn e0_spectrum_direct(model: &SullivanModel, bound: usize) -> BTreeSet<usize> {
    let alg = model.algebra();
    let full = Complex::new(alg, model.differential());
    let mut spectrum = BTreeSet::new();
    for n in 0..=bound {
        let basis = full.basis(n);
        let cocycles = full.cocycles(n);
        let coboundaries = full.coboundaries(n);
        let h_dim = cocycles.dim() - coboundaries.dim();
        if h_dim == 0 {
            continue;
        }
        let mut prev = h_dim;
        for p in 1..=(n / 2 + 1) {
            let fp: Vec<Vector> = basis
                .iter()
                .enumerate()
                .filter(|(_, m)| m.word_length() >= p)
                .map(|(i, _)| {
                    let mut v = vec![Rational::zero(); basis.len()];
                    v[i] = Rational::one();
                    v
                })
                .collect();
            let fp_span = SubspaceBasis::from_vectors(basis.len(), fp);
            // cocycles inside F^p, as (F^p + im d) ∩ ker d counted via dims:
            // dim F_p H^n = dim(ker ∩ F^p + im) − dim im
            let filtered_cocycles = intersect(&cocycles, &fp_span);
            let dim_fp_h = filtered_cocycles.sum(&coboundaries).dim() - coboundaries.dim();
            if prev > dim_fp_h {
                spectrum.insert(p - 1);
            }
            prev = dim_fp_h;
            // lengths are bounded by n/2, so prev always reaches 0
            if dim_fp_h == 0 {
                break;
            }
        }
    }
    spectrum
}

/// Exact intersection of two subspaces via the kernel of the stacked system.
fn intersect(a: &SubspaceBasis, b: &SubspaceBasis) -> SubspaceBasis {
    let ambient = a.ambient_dim();
    debug_assert_eq!(ambient, b.ambient_dim());
    // solve x ∈ a, x ∈ b: parametrize x = A^T u, require reduce_b(x) = 0
    let vectors: Vec<Vector> = a
        .basis_vectors()
        .iter()
        .map(|v| b.reduce(v))
        .collect();
    let m = Matrix::from_columns(ambient, vectors);
    let kernel = m.kernel();
    let spanning = kernel
        .basis_vectors()
        .iter()
        .map(|u| {
            let mut x = vec![Rational::zero(); ambient];
            for (c, row) in u.iter().zip(a.basis_vectors()) {
                if !c.is_zero() {
                    for (xi, ri) in x.iter_mut().zip(row.iter()) {
                        *xi += c * ri;
                    }
                }
            }
            x
        })
        .collect();
    SubspaceBasis::from_vectors(ambient, spanning)
}

/// Missing columns in [0, max(spectrum)] — the e₀-gaps.
pub fn gap_report(spectrum: &BTreeSet<usize>) -> Vec<usize> {
    match spectrum.iter().max() {
        None => Vec::new(),
        Some(&max) => (0..=max).filter(|p| !spectrum.contains(p)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Algebra};
    use crate::cohomology::bigraded_dims;
    use crate::derivation::Derivation;

    fn s2() -> SullivanModel {
        let alg = Algebra::new([("x", 2), ("y", 3)]);
        let d = Derivation::new(1, [(1, Polynomial::monomial(Monomial::power(0, 2), rat(1)))]);
        SullivanModel::new(alg, d)
    }

    fn cp2() -> SullivanModel {
        let alg = Algebra::new([("x", 2), ("y", 5)]);
        let d = Derivation::new(1, [(1, Polynomial::monomial(Monomial::power(0, 3), rat(1)))]);
        SullivanModel::new(alg, d)
    }

    fn s3xs5() -> SullivanModel {
        let alg = Algebra::new([("x", 3), ("y", 5)]);
        SullivanModel::new(alg, Derivation::zero(1))
    }

    #[test]
    fn z_spaces_of_cp2() {
        let model = cp2();
        let engine = SpectralEngine::new(&model);
        // degree-2 span {x}: dx = 0 lands in every filtration level
        assert_eq!(engine.z_space(3, 1, 1).dim(), 1);
        // degree-5 F^1 span {y}: dy = x^3 ∈ F^3 = F^{1+2}
        assert_eq!(engine.z_space(2, 1, 4).dim(), 1);
        // but dy ∉ F^4, so y drops out of Z_3^{1,4}
        assert_eq!(engine.z_space(3, 1, 4).dim(), 0);
    }

    #[test]
    fn b_space_of_cp2_catches_x_cubed() {
        let model = cp2();
        let engine = SpectralEngine::new(&model);
        // x^3 = d(y) with y ∈ Z_2^{1,4}
        let b = engine.b_space(3, 3, 3);
        assert_eq!(b.dim(), 1);
        let basis = engine.basis(6);
        let x3 = poly_to_vector(
            &Polynomial::monomial(Monomial::power(0, 3), rat(1)),
            &basis,
        );
        assert!(b.contains(&x3));
    }

    #[test]
    fn zero_differential_pages_are_monomial_spans() {
        let model = s3xs5();
        let engine = SpectralEngine::new(&model);
        for n in 0..=8usize {
            for p in 0..=n / 2 {
                let expected = model
                    .algebra()
                    .degree_basis(n)
                    .iter()
                    .filter(|m| m.word_length() == p)
                    .count();
                for r in 1..=4 {
                    assert_eq!(
                        engine.page_entry(r, p as i64, (n - p) as i64).dim(),
                        expected,
                        "r={r} p={p} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn cp2_page_entries_at_k() {
        let model = cp2();
        let engine = SpectralEngine::new(&model);
        assert_eq!(engine.page_entry(3, 1, 1).dim(), 1);
        assert_eq!(engine.page_entry(3, 2, 2).dim(), 1);
        assert_eq!(engine.page_entry(3, 1, 4).dim(), 0);
    }

    #[test]
    fn first_page_identification_with_bigraded_cohomology() {
        // dims of E_k^{p,q} equal the bigraded cohomology of (ΛV, d_k)
        for model in [s2(), cp2()] {
            let k = model.first_length().unwrap();
            let homog = model.homogeneous_model();
            let engine = SpectralEngine::new(&model);
            let bound = model.invariants().n_formula as usize + 2;
            for n in 0..=bound {
                let split =
                    bigraded_dims(homog.algebra(), homog.differential(), n).unwrap();
                for p in 0..=n / 2 {
                    let expected = split.get(&p).copied().unwrap_or(0);
                    let got = engine.page_entry(k, p as i64, (n - p) as i64).dim();
                    assert_eq!(got, expected, "n={n} p={p}");
                }
            }
        }
    }

    #[test]
    fn cp2_page_differential_kills_y() {
        let model = cp2();
        let engine = SpectralEngine::new(&model);
        // δ_2 (induced by the length-3 part of d) maps [y] to [x^3] with rank 1;
        // both classes are gone from page 3 onwards
        let map = engine.page_differential(2, 1, 4).unwrap();
        assert_eq!(map.source.dim(), 1);
        assert_eq!(map.rank(), 1);
        assert_eq!(engine.page_entry(3, 1, 4).dim(), 0);
        assert_eq!(engine.page_entry(3, 3, 3).dim(), 0);
    }

    #[test]
    fn early_pages_agree_below_k() {
        // pages 1..k-1 coincide and δ_r = 0 for r < k-1 (δ_{k-1} is induced
        // by d_k and is the first possibly-nonzero differential)
        let model = cp2(); // k = 3
        let engine = SpectralEngine::new(&model);
        for n in 0..=6usize {
            for p in 0..=n / 2 {
                let d1 = engine.page_entry(1, p as i64, (n - p) as i64).dim();
                let d2 = engine.page_entry(2, p as i64, (n - p) as i64).dim();
                assert_eq!(d1, d2, "n={n} p={p}");
                let delta1 = engine.page_differential(1, p as i64, (n - p) as i64).unwrap();
                assert_eq!(delta1.rank(), 0, "δ_1 must vanish for k = 3");
            }
        }
    }

    #[test]
    fn page_homology_gives_next_page() {
        for model in [s2(), cp2(), s3xs5()] {
            let engine = SpectralEngine::new(&model);
            for n in 0..=6usize {
                for p in 0..=n / 2 {
                    for r in 1..=r_stab(n) {
                        let h = engine
                            .page_homology_dim(r, p as i64, (n - p) as i64)
                            .unwrap();
                        let next = engine.page_entry(r + 1, p as i64, (n - p) as i64).dim();
                        assert_eq!(h, next, "r={r} p={p} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn einfty_support_of_corpus_models() {
        let model = cp2();
        let engine = SpectralEngine::new(&model);
        let mut nonzero = Vec::new();
        for n in 0..=4usize {
            for (p, dim) in engine.e_infinity_dims(n) {
                if dim > 0 {
                    nonzero.push((p, n - p));
                }
            }
        }
        assert_eq!(nonzero, vec![(0, 0), (1, 1), (2, 2)]);

        let model = s2();
        let engine = SpectralEngine::new(&model);
        let mut nonzero = Vec::new();
        for n in 0..=2usize {
            for (p, dim) in engine.e_infinity_dims(n) {
                if dim > 0 {
                    nonzero.push((p, n - p));
                }
            }
        }
        assert_eq!(nonzero, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn convergence_to_total_cohomology() {
        for model in [s2(), cp2(), s3xs5()] {
            let engine = SpectralEngine::new(&model);
            let complex = Complex::new(model.algebra(), model.differential());
            let bound = model.invariants().n_formula.max(0) as usize;
            for n in 0..=bound {
                let total: usize = engine.e_infinity_dims(n).values().sum();
                assert_eq!(total, complex.dim_h(n), "degree {n}");
            }
        }
    }

    #[test]
    fn stabilization_spot_check() {
        let model = cp2();
        let engine = SpectralEngine::new(&model);
        for n in 0..=6usize {
            let r0 = r_stab(n);
            for p in 0..=n / 2 {
                let a = engine.page_entry(r0, p as i64, (n - p) as i64).dim();
                let b = engine.page_entry(r0 + 1, p as i64, (n - p) as i64).dim();
                let c = engine.page_entry(r0 + 2, p as i64, (n - p) as i64).dim();
                assert_eq!(a, b);
                assert_eq!(b, c);
            }
        }
    }

    #[test]
    fn toomer_values() {
        assert_eq!(toomer(&s2(), Some(2), 0).value, 1);
        assert_eq!(toomer(&cp2(), Some(4), 0).value, 2);
        let e6 = {
            let alg = Algebra::new([("x", 2), ("y", 2), ("z", 5), ("w", 5)]);
            let d = Derivation::new(
                1,
                [
                    (2, Polynomial::monomial(Monomial::power(0, 3), rat(1))),
                    (3, Polynomial::monomial(Monomial::power(1, 3), rat(1))),
                ],
            );
            SullivanModel::new(alg, d)
        };
        assert_eq!(toomer(&e6, Some(8), 0).value, 4);
    }

    #[test]
    fn e0_of_classes() {
        let model = cp2();
        assert_eq!(e0_of_class(&model, &Polynomial::one()).unwrap(), 0);
        assert_eq!(e0_of_class(&model, &Polynomial::generator(0)).unwrap(), 1);
        let x2 = Polynomial::monomial(Monomial::power(0, 2), rat(1));
        assert_eq!(e0_of_class(&model, &x2).unwrap(), 2);

        let model = s2();
        assert_eq!(e0_of_class(&model, &Polynomial::generator(0)).unwrap(), 1);
        let x2 = Polynomial::monomial(Monomial::power(0, 2), rat(1));
        assert_eq!(e0_of_class(&model, &x2), Err(SpectralError::ZeroClass));
        assert_eq!(
            e0_of_class(&model, &Polynomial::generator(1)),
            Err(SpectralError::NotACocycle)
        );
    }

    #[test]
    fn e0_spectrum_matches_einfty_support() {
        for model in [s2(), cp2(), s3xs5()] {
            let bound = model.invariants().n_formula.max(0) as usize;
            let engine = SpectralEngine::new(&model);
            let support = engine.e_infinity_column_support(bound);
            let direct = e0_spectrum_direct(&model, bound);
            assert_eq!(support, direct);
            assert!(gap_report(&support).is_empty());
        }
    }

    #[test]
    fn iso_checks_on_cp2_and_s2() {
        for (model, r) in [(cp2(), 3usize), (s2(), 2usize)] {
            let n_max = model.invariants().n_formula as usize + 2;
            let engine = SpectralEngine::new(&model);
            for n in 0..=n_max {
                for p in 0..=n / 2 {
                    let report = engine
                        .subquotient_iso_check(r, p as i64, (n - p) as i64)
                        .unwrap();
                    assert!(report.holds());
                }
            }
        }
    }
}
