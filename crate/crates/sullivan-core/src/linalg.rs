//! Exact rational linear algebra: echelon forms, kernels, images, subquotients.
//!
//! Every subspace is kept in reduced row echelon form, which is the unique
//! canonical representation of its span; subspace equality is row comparison
//! and quotient representatives come out deterministic.

use num_traits::{One, Zero};

use crate::algebra::Rational;

pub type Vector = Vec<Rational>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// Dense column-major matrix for a linear map ℚ^cols → ℚ^rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    columns: Vec<Vector>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            columns: vec![zero_vector(rows); cols],
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<Vector>) -> Self {
        debug_assert!(columns.iter().all(|c| c.len() == rows));
        Matrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.columns[j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.columns[j][i] = v;
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.columns[j][i]
    }

    pub fn apply(&self, x: &[Rational]) -> Vector {
        debug_assert_eq!(x.len(), self.cols);
        let mut out = zero_vector(self.rows);
        for (j, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, a) in self.columns[j].iter().enumerate() {
                if !a.is_zero() {
                    out[i] += a * c;
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        SubspaceBasis::from_vectors(self.rows, self.columns.clone()).dim()
    }

    /// Canonical basis of the kernel, as a subspace of ℚ^cols.
    pub fn kernel(&self) -> SubspaceBasis {
        // RREF of the matrix with rows indexed by target coordinates
        let mut rows: Vec<Vector> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.columns[j][i].clone()).collect())
            .collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0usize;
        for col in 0..self.cols {
            // find a pivot row at or below `rank`
            let mut pivot_row = None;
            for (r, row) in rows.iter().enumerate().skip(rank) {
                if !row[col].is_zero() {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            rows.swap(rank, pr);
            let inv = {
                let p = rows[rank][col].clone();
                Rational::one() / p
            };
            for c in rows[rank].iter_mut() {
                if !c.is_zero() {
                    *c *= &inv;
                }
            }
            let pivot_row_data = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (a, b) in row.iter_mut().zip(pivot_row_data.iter()) {
                        *a -= &f * b;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        // kernel vectors: one per free column
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.binary_search(&free).is_ok() {
                continue;
            }
            let mut v = zero_vector(self.cols);
            v[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][free].clone();
            }
            basis.push(v);
        }
        SubspaceBasis::from_vectors(self.cols, basis)
    }

    /// Canonical basis of the column space, as a subspace of ℚ^rows.
    pub fn image(&self) -> SubspaceBasis {
        SubspaceBasis::from_vectors(self.rows, self.columns.clone())
    }

    /// One solution of `A x = b`, if any.
    pub fn solve(&self, b: &[Rational]) -> Option<Vector> {
        debug_assert_eq!(b.len(), self.rows);
        // eliminate on the augmented system, tracking pivot columns
        let mut rows: Vec<(Vector, Rational)> = (0..self.rows)
            .map(|i| {
                (
                    (0..self.cols)
                        .map(|j| self.columns[j][i].clone())
                        .collect::<Vector>(),
                    b[i].clone(),
                )
            })
            .collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let mut pivot_row = None;
            for (r, row) in rows.iter().enumerate().skip(rank) {
                if !row.0[col].is_zero() {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            rows.swap(rank, pr);
            let inv = Rational::one() / rows[rank].0[col].clone();
            for c in rows[rank].0.iter_mut() {
                *c *= &inv;
            }
            rows[rank].1 *= &inv;
            let (prow, pb) = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && !row.0[col].is_zero() {
                    let f = row.0[col].clone();
                    for (a, c) in row.0.iter_mut().zip(prow.iter()) {
                        *a -= &f * c;
                    }
                    row.1 -= &f * &pb;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        // inconsistent when a zero row has nonzero rhs
        for (row, rhs) in rows.iter().skip(rank) {
            debug_assert!(is_zero_vector(row));
            if !rhs.is_zero() {
                return None;
            }
        }
        let mut x = zero_vector(self.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = rows[r].1.clone();
        }
        Some(x)
    }
}

/// A subspace of ℚ^ambient in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn empty(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = zero_vector(ambient);
                v[i] = Rational::one();
                v
            })
            .collect();
        SubspaceBasis {
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    /// Canonicalizes a spanning set into RREF.
    pub fn from_vectors(ambient: usize, vectors: Vec<Vector>) -> Self {
        let mut basis = SubspaceBasis::empty(ambient);
        for v in vectors {
            basis.insert(v);
        }
        basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis_vectors(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Inserts a vector, keeping RREF; returns true when the dimension grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let mut v = self.reduce(&v);
        let Some(lead) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = Rational::one() / v[lead].clone();
        for c in v.iter_mut() {
            if !c.is_zero() {
                *c *= &inv;
            }
        }
        // back-eliminate the new pivot from existing rows
        for row in self.rows.iter_mut() {
            if !row[lead].is_zero() {
                let f = row[lead].clone();
                for (a, b) in row.iter_mut().zip(v.iter()) {
                    *a -= &f * b;
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, v);
        true
    }

    /// Reduces `v` modulo the subspace (eliminates all pivot coordinates).
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if !out[p].is_zero() {
                let f = out[p].clone();
                for (a, b) in out.iter_mut().zip(row.iter()) {
                    *a -= &f * b;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        debug_assert_eq!(self.ambient, other.ambient);
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r.clone());
        }
        out
    }

    /// Coordinates of `v` in this basis, when `v` lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        let mut rest = v.to_vec();
        let mut coords = zero_vector(self.dim());
        for (k, (row, &p)) in self.rows.iter().zip(self.pivots.iter()).enumerate() {
            if !rest[p].is_zero() {
                let f = rest[p].clone();
                for (a, b) in rest.iter_mut().zip(row.iter()) {
                    *a -= &f * b;
                }
                coords[k] = f;
            }
        }
        if is_zero_vector(&rest) {
            Some(coords)
        } else {
            None
        }
    }
}

/// A subquotient numerator/denominator pair with canonical representatives.
#[derive(Clone, Debug)]
pub struct Subquotient {
    num: SubspaceBasis,
    den: SubspaceBasis,
    reps: SubspaceBasis,
}

impl Subquotient {
    /// Requires `den ⊆ num`; callers assert this is a structural fact.
    pub fn new(num: SubspaceBasis, den: SubspaceBasis) -> Self {
        debug_assert!(den.is_subspace_of(&num), "denominator not inside numerator");
        let ambient = num.ambient_dim();
        let reduced: Vec<Vector> = num
            .basis_vectors()
            .iter()
            .map(|v| den.reduce(v))
            .filter(|v| !is_zero_vector(v))
            .collect();
        let reps = SubspaceBasis::from_vectors(ambient, reduced);
        Subquotient { num, den, reps }
    }

    pub fn dim(&self) -> usize {
        self.num.dim() - self.den.dim()
    }

    pub fn numerator(&self) -> &SubspaceBasis {
        &self.num
    }

    pub fn denominator(&self) -> &SubspaceBasis {
        &self.den
    }

    /// Canonical representatives, one vector per quotient basis class.
    pub fn representatives(&self) -> &SubspaceBasis {
        &self.reps
    }

    /// Coordinates of the class of `v` in the representative basis.
    /// `None` when `v` is not in the numerator.
    pub fn class_coordinates(&self, v: &[Rational]) -> Option<Vector> {
        if !self.num.contains(v) {
            return None;
        }
        let reduced = self.den.reduce(v);
        self.reps.coordinates(&reduced)
    }

    pub fn contains_in_numerator(&self, v: &[Rational]) -> bool {
        self.num.contains(v)
    }

    /// Whether the class of `v` is zero in the quotient.
    pub fn is_zero_class(&self, v: &[Rational]) -> bool {
        self.den.contains(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rref_is_canonical() {
        let a = SubspaceBasis::from_vectors(3, vec![v(&[1, 2, 3]), v(&[2, 4, 7])]);
        let b = SubspaceBasis::from_vectors(3, vec![v(&[3, 6, 10]), v(&[1, 2, 4])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn kernel_and_rank_split_the_domain() {
        // map (x,y,z) -> (x+z, y+z)
        let m = Matrix::from_columns(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&v(&[1, 1, -1])));
        assert_eq!(m.rank() + k.dim(), 3);
    }

    #[test]
    fn solve_finds_a_preimage() {
        let m = Matrix::from_columns(2, vec![v(&[1, 0]), v(&[1, 1])]);
        let x = m.solve(&v(&[3, 2])).unwrap();
        assert_eq!(m.apply(&x), v(&[3, 2]));
        assert!(m.solve(&v(&[0, 0])).is_some());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = Matrix::from_columns(2, vec![v(&[1, 2])]);
        assert!(m.solve(&v(&[1, 0])).is_none());
    }

    #[test]
    fn subquotient_dimensions_and_classes() {
        let num = SubspaceBasis::from_vectors(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let den = SubspaceBasis::from_vectors(3, vec![v(&[1, 1, 0])]);
        let q = Subquotient::new(num, den);
        assert_eq!(q.dim(), 1);
        assert!(q.is_zero_class(&v(&[2, 2, 0])));
        let c = q.class_coordinates(&v(&[1, 0, 0])).unwrap();
        assert_eq!(c.len(), 1);
        assert!(!c[0].is_zero());
        assert!(q.class_coordinates(&v(&[0, 0, 1])).is_none());
    }
}
