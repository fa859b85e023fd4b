//! Clifford algebras of diagonal symmetric forms.

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{congruence_diagonal, Matrix};
use crate::scalar::{Field, FieldTag, PointField};

/// A diagonal form `⟨a₁, …, aₙ⟩` with nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalForm<F> {
    entries: Vec<F>,
}

impl<F: Field> DiagonalForm<F> {
    pub fn new(entries: Vec<F>) -> Result<Self> {
        if let Some(index) = entries.iter().position(|x| x.is_zero()) {
            return Err(Error::ZeroEntry { index });
        }
        Ok(DiagonalForm { entries })
    }

    pub fn empty() -> Self {
        DiagonalForm { entries: Vec::new() }
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Orthogonal sum `self ⊥ other`.
    pub fn concat(&self, other: &Self) -> Self {
        DiagonalForm { entries: self.entries.iter().chain(&other.entries).cloned().collect() }
    }

    /// `⟨1⟩^p ⊥ ⟨-1⟩^q`.
    pub fn standard(p: usize, q: usize) -> Self {
        let mut entries = vec![F::one(); p];
        entries.extend(std::iter::repeat_n(-F::one(), q));
        DiagonalForm { entries }
    }

    /// Diagonalizes a nondegenerate symmetric Gram matrix by congruence.
    pub fn from_gram(gram: &Matrix<F>) -> Result<Self> {
        let diag = congruence_diagonal(gram)?;
        if diag.iter().any(|d| d.is_zero()) {
            return Err(Error::Validation("symmetric form is degenerate".into()));
        }
        Ok(DiagonalForm { entries: diag })
    }
}

impl<F: PointField> DiagonalForm<F> {
    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| F::from_i64(x)).collect())
    }

    /// Parses comma-separated exact scalars such as `"1,1,-1"` or `"2/3, -5"`.
    /// The empty string is the zero-dimensional form.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Ok(Self::empty());
        }
        let entries = text.split(',').map(F::parse_scalar).collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn field(&self) -> FieldTag {
        F::TAG
    }

    /// Number of positive entries minus number of negative entries.
    pub fn signature(&self) -> Result<i64> {
        self.entries.iter().try_fold(0i64, |acc, x| match x.real_sign() {
            Some(std::cmp::Ordering::Greater) => Ok(acc + 1),
            Some(std::cmp::Ordering::Less) => Ok(acc - 1),
            _ => Err(Error::NotReal),
        })
    }
}

/// `#positive - #negative` entries; real point only.
pub fn signature_of_form<F: PointField>(f: &DiagonalForm<F>) -> Result<i64> {
    f.signature()
}

/// `⟨1, -1⟩` repeated `n` times.
pub fn hyperbolic<F: Field>(n: usize) -> DiagonalForm<F> {
    let entries = (0..n).flat_map(|_| [F::one(), -F::one()]).collect();
    DiagonalForm { entries }
}

/// Sign of `e_S e_T` from reordering: one transposition for every pair
/// `i ∈ S`, `j ∈ T` with `i > j`.
fn reorder_is_odd(s: usize, t: usize) -> bool {
    let mut swaps = 0u32;
    let mut rest = s;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (t & ((1usize << i) - 1)).count_ones();
    }
    swaps % 2 == 1
}

/// Clifford algebra of `⟨a₁, …, aₙ⟩`: generators `eᵢ` with `eᵢ² = aᵢ` and
/// `eᵢeⱼ = -eⱼeᵢ`. The basis vector `e_S` for `S ⊆ {1..n}` sits at index
/// `Σ_{i∈S} 2^{i-1}` and has degree `|S| mod 2`.
pub fn clifford<F: Field>(form: &DiagonalForm<F>) -> Result<GradedAlgebra<F>> {
    let n = form.entries.len();
    if n >= usize::BITS as usize / 2 {
        return Err(Error::DimensionMismatch(format!("form of rank {n} is too large")));
    }
    if let Some(index) = form.entries.iter().position(|x| x.is_zero()) {
        return Err(Error::ZeroEntry { index });
    }
    let dim = 1usize << n;
    let parity = (0..dim).map(|m| (m.count_ones() % 2) as u8).collect();
    let mut unit = vec![F::zero(); dim];
    unit[0] = F::one();
    let mut products = Vec::with_capacity(dim * dim);
    for s in 0..dim {
        for t in 0..dim {
            let mut coeff = if reorder_is_odd(s, t) { -F::one() } else { F::one() };
            let mut common = s & t;
            while common != 0 {
                let i = common.trailing_zeros() as usize;
                common &= common - 1;
                coeff = coeff * form.entries[i].clone();
            }
            products.push(vec![(s ^ t, coeff)]);
        }
    }
    GradedAlgebra::from_sparse(parity, unit, products)
}

/// The quaternion algebra `(a, b)` concentrated in degree 0, basis
/// `1, i, j, ij` with `i² = a`, `j² = b`, `ij = -ji`.
pub fn quaternion_algebra<F: Field>(a: F, b: F) -> GradedAlgebra<F> {
    let c = clifford(&DiagonalForm { entries: vec![a, b] }).expect("nonzero entries");
    let products = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| c.product(i, j).clone()).collect();
    GradedAlgebra::from_sparse(vec![0; 4], c.unit().to_vec(), products).expect("shape preserved")
}
