//! Subspaces represented by basis matrices, and the lattice operations the
//! factorization needs: kernel, direct sum, intersection, complement of a
//! subspace within another, and the double complement.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rank, rcef_full, EchelonBasis};
use crate::matrix::Matrix;

/// A subspace of `F^ambient_dim`, stored as a matrix whose columns are a basis.
/// Zero-column bases represent the trivial subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis<F: Field> {
    basis: Matrix<F>,
}

impl<F: Field> SubspaceBasis<F> {
    /// Wraps `basis`, rejecting linearly dependent columns.
    pub fn new(basis: Matrix<F>) -> Result<Self> {
        if rank(&basis) != basis.cols() {
            return Err(Error::Precondition("basis columns are linearly dependent".into()));
        }
        Ok(SubspaceBasis { basis })
    }

    pub fn trivial(field: F, ambient_dim: usize) -> Self {
        SubspaceBasis {
            basis: Matrix::zeros(field, ambient_dim, 0),
        }
    }

    pub fn whole(field: F, ambient_dim: usize) -> Self {
        SubspaceBasis {
            basis: Matrix::identity(field, ambient_dim),
        }
    }

    /// The column space of `m`, keeping the first independent columns in order.
    pub fn span(m: &Matrix<F>) -> Self {
        let mut ech = EchelonBasis::new(m.field().clone(), m.rows());
        let keep: Vec<usize> = (0..m.cols()).filter(|&j| ech.insert(m.column(j))).collect();
        SubspaceBasis {
            basis: m.select_columns(&keep),
        }
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn into_matrix(self) -> Matrix<F> {
        self.basis
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains_vector(&self, v: &[F::Elem]) -> bool {
        EchelonBasis::from_columns(&self.basis).contains(v)
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains(&self, other: &Self) -> bool {
        let ech = EchelonBasis::from_columns(&self.basis);
        other.basis.columns().all(|c| ech.contains(&c))
    }

    pub fn same_span(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.contains(other)
    }

    /// The image `m(self)`.
    pub fn image(&self, m: &Matrix<F>) -> Result<Self> {
        Ok(Self::span(&m.mul(&self.basis)?))
    }

    /// `self + other`, not necessarily direct.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        check_ambient("sum", self, other)?;
        Ok(Self::span(&Matrix::hcat(&[&self.basis, &other.basis])?))
    }
}

fn check_ambient<F: Field>(op: &'static str, a: &SubspaceBasis<F>, b: &SubspaceBasis<F>) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            op,
            left: a.basis.shape(),
            right: b.basis.shape(),
        });
    }
    Ok(())
}

/// Basis of `ker m`, read off the reduced column echelon form of `(m ; I)`.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> SubspaceBasis<F> {
    let (rows, cols) = m.shape();
    let stacked = Matrix::vcat(&[m, &Matrix::identity(m.field().clone(), cols)]).expect("same cols");
    let (ech, pivots) = rcef_full(&stacked);
    let keep: Vec<usize> = (0..pivots.len()).filter(|&j| pivots[j] >= rows).collect();
    SubspaceBasis {
        basis: ech.block(rows, 0, cols, ech.cols()).select_columns(&keep),
    }
}

/// `a ⊕ b` as the concatenated basis `(A B)`; fails unless the sum is direct.
pub fn direct_sum<F: Field>(a: &SubspaceBasis<F>, b: &SubspaceBasis<F>) -> Result<SubspaceBasis<F>> {
    check_ambient("direct_sum", a, b)?;
    let cat = Matrix::hcat(&[&a.basis, &b.basis])?;
    if rank(&cat) != a.dim() + b.dim() {
        return Err(Error::NotDirect);
    }
    Ok(SubspaceBasis { basis: cat })
}

/// `a ∩ b` by the Zassenhaus construction: in the reduced column echelon
/// form of `((A B) ; (A 0))`, the columns whose upper half vanishes carry a
/// basis of the intersection in their lower half.
pub fn intersect<F: Field>(a: &SubspaceBasis<F>, b: &SubspaceBasis<F>) -> Result<SubspaceBasis<F>> {
    check_ambient("intersect", a, b)?;
    let d = a.ambient_dim();
    let field = a.field().clone();
    let top = Matrix::hcat(&[&a.basis, &b.basis])?;
    let bottom = Matrix::hcat(&[&a.basis, &Matrix::zeros(field, d, b.dim())])?;
    let (ech, pivots) = rcef_full(&Matrix::vcat(&[&top, &bottom])?);
    let keep: Vec<usize> = (0..pivots.len()).filter(|&j| pivots[j] >= d).collect();
    Ok(SubspaceBasis {
        basis: ech.block(d, 0, d, ech.cols()).select_columns(&keep),
    })
}

/// A complement `C` of `sub` inside `ambient`, so that `C ⊕ sub = ambient`.
///
/// Greedy over the columns of `ambient` from left to right: a column is
/// kept when it is independent of `sub` and the columns kept so far. An
/// echelon form of `(sub | C)` is maintained incrementally, giving cubic
/// total cost.
pub fn complement_within<F: Field>(ambient: &SubspaceBasis<F>, sub: &SubspaceBasis<F>) -> Result<SubspaceBasis<F>> {
    check_ambient("complement_within", ambient, sub)?;
    if !ambient.contains(sub) {
        return Err(Error::NotSubspaceOf);
    }
    let mut ech = EchelonBasis::from_columns(&sub.basis);
    let keep: Vec<usize> = (0..ambient.dim())
        .filter(|&j| ech.insert(ambient.basis.column(j)))
        .collect();
    Ok(SubspaceBasis {
        basis: ambient.basis.select_columns(&keep),
    })
}

/// A subspace `S ≤ c` with `S ⊕ a = c` and `S ∩ b = {0}`.
///
/// With `P` a complement of `a ∩ b` in `a` and `Q` one in `b`, the pairwise
/// sums of the first `dim Q` columns of `P` with the columns of `Q` avoid
/// both `a` and `b`; a complement of `a + b` in `c` fills up the rest.
pub fn double_complement<F: Field>(
    a: &SubspaceBasis<F>,
    b: &SubspaceBasis<F>,
    c: &SubspaceBasis<F>,
) -> Result<SubspaceBasis<F>> {
    check_ambient("double_complement", a, c)?;
    check_ambient("double_complement", b, c)?;
    if !c.contains(a) || !c.contains(b) {
        return Err(Error::NotSubspaceOf);
    }
    if a.dim() < b.dim() {
        return Err(Error::Precondition(format!(
            "double complement needs dim a >= dim b, got {} < {}",
            a.dim(),
            b.dim()
        )));
    }
    let common = intersect(a, b)?;
    let p = complement_within(a, &common)?;
    let q = complement_within(b, &common)?;
    let p_trunc = p.basis.leading_columns(q.dim());
    let rest = complement_within(c, &a.sum(b)?)?;
    let w = p_trunc.add(&q.basis)?;
    SubspaceBasis::new(Matrix::hcat(&[&rest.basis, &w])?)
}
