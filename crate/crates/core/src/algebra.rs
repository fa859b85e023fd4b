//! Finite-dimensional ℤ/2-graded unital associative algebras given by
//! structure constants on a homogeneous basis.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{signature, Matrix, RowReducer, SparseRow};
use crate::scalar::{koszul_sign, Field, FieldTag, PointField, Rational};

/// `e_i e_j = sum_k c[i][j][k] e_k`, stored sparsely per pair `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra<F> {
    dim: usize,
    parity: Vec<u8>,
    unit: Vec<F>,
    products: Vec<SparseRow<F>>,
}

fn accumulate<F: Field>(acc: &mut BTreeMap<usize, F>, k: usize, v: F) {
    if v.is_zero() {
        return;
    }
    match acc.get_mut(&k) {
        Some(slot) => {
            let sum = slot.clone() + v;
            if sum.is_zero() {
                acc.remove(&k);
            } else {
                *slot = sum;
            }
        }
        None => {
            acc.insert(k, v);
        }
    }
}

fn to_sparse<F: Field>(v: &[F]) -> SparseRow<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn to_dense<F: Field>(v: &[(usize, F)], dim: usize) -> Vec<F> {
    let mut out = vec![F::zero(); dim];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Sign rule used when multiplying pure tensors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorSign {
    /// `(a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa'⊗bb'`: the graded tensor product.
    Koszul,
    /// No sign: the ordinary tensor product of the underlying algebras,
    /// with the grading carried along.
    Plain,
}

impl<F: Field> GradedAlgebra<F> {
    /// Assembles an algebra from sparse products indexed by `i * dim + j`.
    /// Only shapes are checked here; see [`GradedAlgebra::validate`].
    pub fn from_sparse(parity: Vec<u8>, unit: Vec<F>, products: Vec<SparseRow<F>>) -> Result<Self> {
        let dim = parity.len();
        if unit.len() != dim {
            return Err(Error::DimensionMismatch(format!("unit has length {}, dim is {dim}", unit.len())));
        }
        if products.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} basis products, got {}",
                dim * dim,
                products.len()
            )));
        }
        let mut clean = Vec::with_capacity(products.len());
        for row in products {
            let mut acc = BTreeMap::new();
            for (k, v) in row {
                if k >= dim {
                    return Err(Error::DimensionMismatch(format!("basis index {k} out of range for dim {dim}")));
                }
                accumulate(&mut acc, k, v);
            }
            clean.push(acc.into_iter().collect());
        }
        Ok(GradedAlgebra { dim, parity, unit, products: clean })
    }

    /// Assembles an algebra from a dense `dim × dim × dim` tensor.
    pub fn from_dense(parity: Vec<u8>, unit: Vec<F>, structure: Vec<Vec<Vec<F>>>) -> Result<Self> {
        let dim = parity.len();
        if structure.len() != dim || structure.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::DimensionMismatch(format!("structure tensor is not {dim}x{dim}x{dim}")));
        }
        let products = structure.into_iter().flatten().map(|v| to_sparse(&v)).collect();
        Self::from_sparse(parity, unit, products)
    }

    /// The ground field in degree 0.
    pub fn ground() -> Self {
        GradedAlgebra { dim: 1, parity: vec![0], unit: vec![F::one()], products: vec![vec![(0, F::one())]] }
    }

    /// `F ⊕ F z` with `z² = square` and `z` of the given degree.
    pub fn quadratic(parity: u8, square: F) -> Self {
        let zz = if square.is_zero() { vec![] } else { vec![(0, square)] };
        GradedAlgebra {
            dim: 2,
            parity: vec![0, parity & 1],
            unit: vec![F::one(), F::zero()],
            products: vec![vec![(0, F::one())], vec![(1, F::one())], vec![(1, F::one())], zz],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    /// Basis product `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &SparseRow<F> {
        &self.products[i * self.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> F {
        let row = self.product(i, j);
        row.binary_search_by_key(&k, |(c, _)| *c).map_or_else(|_| F::zero(), |at| row[at].1.clone())
    }

    /// Dimensions of the degree 0 and degree 1 parts.
    pub fn graded_dims(&self) -> (usize, usize) {
        let odd = self.parity.iter().filter(|&&p| p == 1).count();
        (self.dim - odd, odd)
    }

    /// Product of two sparse coordinate vectors.
    pub fn mul_sparse(&self, x: &[(usize, F)], y: &[(usize, F)]) -> SparseRow<F> {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a.clone() * b.clone();
                for (k, c) in self.product(*i, *j) {
                    accumulate(&mut acc, *k, ab.clone() * c.clone());
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Product of two dense coordinate vectors.
    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        to_dense(&self.mul_sparse(&to_sparse(x), &to_sparse(y)), self.dim)
    }

    /// Degree of a nonzero homogeneous vector, `None` if it mixes degrees
    /// or is zero.
    pub fn degree_of(&self, v: &[F]) -> Option<u8> {
        let mut degree = None;
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            match degree {
                None => degree = Some(self.parity[i]),
                Some(d) if d != self.parity[i] => return None,
                _ => {}
            }
        }
        degree
    }

    /// Checks that the unit is an even two-sided identity, that products
    /// respect the grading, and associativity on every basis triple.
    /// Reports the first failure with its indices.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Validation(msg));
        if self.dim == 0 {
            return fail("algebra has dimension 0".into());
        }
        if let Some(i) = self.parity.iter().position(|&p| p > 1) {
            return fail(format!("parity of e_{i} is {}, expected 0 or 1", self.parity[i]));
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, _) in self.product(i, j) {
                    if self.parity[*k] != self.parity[i] ^ self.parity[j] {
                        return fail(format!("c[{i}][{j}][{k}] is nonzero across degrees"));
                    }
                }
            }
        }
        let unit = to_sparse(&self.unit);
        if unit.iter().any(|(i, _)| self.parity[*i] != 0) {
            return fail("unit has a component of degree 1".into());
        }
        for j in 0..self.dim {
            let ej = vec![(j, F::one())];
            if self.mul_sparse(&unit, &ej) != ej {
                return fail(format!("1 * e_{j} != e_{j}"));
            }
            if self.mul_sparse(&ej, &unit) != ej {
                return fail(format!("e_{j} * 1 != e_{j}"));
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.product(i, j);
                for k in 0..self.dim {
                    let left = self.mul_sparse(ij, &[(k, F::one())]);
                    let right = self.mul_sparse(&[(i, F::one())], self.product(j, k));
                    if left != right {
                        return fail(format!("(e_{i} e_{j}) e_{k} != e_{i} (e_{j} e_{k})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Graded tensor product. Basis `e_i ⊗ f_j` sits at index `i * dim(b) + j`.
    pub fn graded_tensor(&self, b: &Self) -> Self {
        self.tensor_with(b, TensorSign::Koszul)
    }

    /// Tensor product under an explicit sign rule.
    pub fn tensor_with(&self, b: &Self, rule: TensorSign) -> Self {
        let (da, db) = (self.dim, b.dim);
        let dim = da * db;
        let parity: Vec<u8> = (0..dim).map(|n| self.parity[n / db] ^ b.parity[n % db]).collect();
        let mut unit = vec![F::zero(); dim];
        for (i, x) in self.unit.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.unit.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                unit[i * db + j] = x.clone() * y.clone();
            }
        }
        let mut products = Vec::with_capacity(dim * dim);
        for n in 0..dim {
            let (i, j) = (n / db, n % db);
            for m in 0..dim {
                let (i2, j2) = (m / db, m % db);
                let sign: F = match rule {
                    TensorSign::Koszul => koszul_sign(b.parity[j], self.parity[i2]),
                    TensorSign::Plain => F::one(),
                };
                let mut row = Vec::new();
                for (k, x) in self.product(i, i2) {
                    for (l, y) in b.product(j, j2) {
                        row.push((k * db + l, sign.clone() * x.clone() * y.clone()));
                    }
                }
                row.sort_by_key(|(c, _)| *c);
                products.push(row);
            }
        }
        GradedAlgebra { dim, parity, unit, products }
    }

    /// Opposite algebra: `e_i * e_j = (-1)^{|i||j|} e_j e_i`.
    pub fn opposite(&self) -> Self {
        let d = self.dim;
        let products = (0..d * d)
            .map(|n| {
                let (i, j) = (n / d, n % d);
                let sign: F = koszul_sign(self.parity[i], self.parity[j]);
                self.product(j, i).iter().map(|(k, v)| (*k, sign.clone() * v.clone())).collect()
            })
            .collect();
        GradedAlgebra { dim: d, parity: self.parity.clone(), unit: self.unit.clone(), products }
    }

    /// Full matrix algebra on a graded space of dimensions `(d0, d1)`.
    /// The matrix unit `E_rs` sits at index `r * n + s` and is odd exactly
    /// when `r` and `s` lie in different blocks.
    pub fn end_graded(d0: usize, d1: usize) -> Result<Self> {
        let n = d0 + d1;
        if n == 0 {
            return Err(Error::DimensionMismatch("end_graded needs d0 + d1 >= 1".into()));
        }
        let dim = n * n;
        let parity = (0..dim).map(|e| u8::from((e / n < d0) != (e % n < d0))).collect();
        let mut unit = vec![F::zero(); dim];
        for r in 0..n {
            unit[r * n + r] = F::one();
        }
        let mut products = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                let (r, s, t, u) = (a / n, a % n, b / n, b % n);
                products.push(if s == t { vec![(r * n + u, F::one())] } else { Vec::new() });
            }
        }
        Ok(GradedAlgebra { dim, parity, unit, products })
    }

    /// Checkerboard twist `M₁,₁ ⊗̂ A`.
    pub fn m11(&self) -> Self {
        Self::end_graded(1, 1).expect("nonempty").graded_tensor(self)
    }

    /// The degree-0 subalgebra, on the even basis vectors in their original
    /// order.
    pub fn even_subalgebra(&self) -> Self {
        let keep: Vec<usize> = (0..self.dim).filter(|&i| self.parity[i] == 0).collect();
        let mut new_index = vec![usize::MAX; self.dim];
        for (n, &i) in keep.iter().enumerate() {
            new_index[i] = n;
        }
        let products = keep
            .iter()
            .flat_map(|&i| keep.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.product(i, j).iter().map(|(k, v)| (new_index[*k], v.clone())).collect())
            .collect();
        GradedAlgebra {
            dim: keep.len(),
            parity: vec![0; keep.len()],
            unit: keep.iter().map(|&i| self.unit[i].clone()).collect(),
            products,
        }
    }

    /// Relabels the basis: old vector `e_i` becomes new vector `e_{map[i]}`.
    pub fn relabel(&self, map: &[usize]) -> Result<Self> {
        let d = self.dim;
        let mut seen = vec![false; d];
        if map.len() != d || map.iter().any(|&m| m >= d || std::mem::replace(&mut seen[m], true)) {
            return Err(Error::DimensionMismatch("relabeling is not a permutation of the basis".into()));
        }
        let mut parity = vec![0; d];
        let mut unit = vec![F::zero(); d];
        let mut products = vec![Vec::new(); d * d];
        for i in 0..d {
            parity[map[i]] = self.parity[i];
            unit[map[i]] = self.unit[i].clone();
            for j in 0..d {
                let mut row: SparseRow<F> =
                    self.product(i, j).iter().map(|(k, v)| (map[*k], v.clone())).collect();
                row.sort_by_key(|(c, _)| *c);
                products[map[i] * d + map[j]] = row;
            }
        }
        Ok(GradedAlgebra { dim: d, parity, unit, products })
    }

    /// The symmetric form `(x, y) ↦ Tr(L_{xy})` on the underlying ungraded
    /// algebra, as a Gram matrix on the basis.
    pub fn trace_form(&self) -> Matrix<F> {
        let d = self.dim;
        let traces: Vec<F> = (0..d)
            .map(|m| (0..d).fold(F::zero(), |acc, k| acc + self.structure_constant(m, k, k)))
            .collect();
        let mut gram = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let v = self
                    .product(i, j)
                    .iter()
                    .fold(F::zero(), |acc, (m, c)| acc + c.clone() * traces[*m].clone());
                gram.set(i, j, v);
            }
        }
        gram
    }

    /// Whether `φ: A ⊗̂ A^op → End(A)`, `φ(a⊗b)(c) = (-1)^{|b||c|} a c b`,
    /// is bijective. Builds the `dim² × dim²` matrix of `φ` and checks
    /// its rank.
    pub fn is_azumaya(&self) -> bool {
        let d = self.dim;
        let mut reducer = RowReducer::new(d * d);
        for i in 0..d {
            for j in 0..d {
                // Image of e_i ⊗ e_j, flattened as (k, l) ↦ coefficient of e_l in φ(e_k).
                let mut column = Vec::new();
                for k in 0..d {
                    let sign: F = koszul_sign(self.parity[j], self.parity[k]);
                    let ck = self.mul_sparse(self.product(i, k), &[(j, F::one())]);
                    column.extend(ck.into_iter().map(|(l, v)| (k * d + l, sign.clone() * v)));
                }
                if !reducer.insert(column) {
                    return false;
                }
            }
        }
        reducer.rank() == d * d
    }

    /// Graded centralizer of a homogeneous subspace: every homogeneous `c`
    /// with `c s = (-1)^{|c||s|} s c` for all `s` in the subspace.
    ///
    /// The result is checked to be closed under multiplication.
    pub fn graded_centralizer(&self, s: &Subspace<F>) -> Result<Subspace<F>> {
        if s.ambient_dim != self.dim {
            return Err(Error::DimensionMismatch("subspace lives in a different algebra".into()));
        }
        let mut vectors = Vec::new();
        for degree in 0..2u8 {
            let unknowns: Vec<usize> = (0..self.dim).filter(|&i| self.parity[i] == degree).collect();
            if unknowns.is_empty() {
                continue;
            }
            let mut reducer = RowReducer::new(unknowns.len());
            for (sv, &sdeg) in s.vectors.iter().zip(&s.parities) {
                let sv = to_sparse(sv);
                let sign: F = koszul_sign(degree, sdeg);
                // Equation per output coordinate k, over the unknown coefficients.
                let mut equations: BTreeMap<usize, BTreeMap<usize, F>> = BTreeMap::new();
                for (u, &i) in unknowns.iter().enumerate() {
                    let ei = [(i, F::one())];
                    for (k, v) in self.mul_sparse(&ei, &sv) {
                        accumulate(equations.entry(k).or_default(), u, v);
                    }
                    for (k, v) in self.mul_sparse(&sv, &ei) {
                        accumulate(equations.entry(k).or_default(), u, -(sign.clone() * v));
                    }
                }
                for row in equations.into_values() {
                    if !row.is_empty() {
                        reducer.insert(row.into_iter().collect());
                    }
                }
            }
            for local in reducer.nullspace() {
                let mut v = vec![F::zero(); self.dim];
                for (u, x) in local.into_iter().enumerate() {
                    v[unknowns[u]] = x;
                }
                vectors.push(v);
            }
        }
        let result = Subspace::new(self, vectors)?;
        if !result.is_closed_in(self) {
            return Err(Error::Internal("graded centralizer is not closed under multiplication".into()));
        }
        Ok(result)
    }
}

impl<F: PointField> GradedAlgebra<F> {
    pub fn field(&self) -> FieldTag {
        F::TAG
    }

    /// The graded quadratic algebra `Ẑ(A) = F ⊕ F z` of an Azumaya algebra.
    ///
    /// When `A` has a nonzero odd part this is the graded centralizer of
    /// `A₀` in `A`; otherwise it is the graded centralizer of the even part
    /// of `M₁,₁ ⊗̂ A`. The generator is normalized so that `z²` is a scalar,
    /// and rescaled to `z² = ±1` whenever `|z²|` is a square (over the
    /// complex point: whenever `z²` has a square root, giving `z² = 1`).
    pub fn hat_center(&self) -> Result<HatCenter<F>> {
        let (_, odd) = self.graded_dims();
        let twisted;
        let host = if odd > 0 {
            self
        } else {
            twisted = self.m11();
            &twisted
        };
        let even = Subspace::degree_part(host, 0);
        let centralizer = host.graded_centralizer(&even)?;
        if centralizer.vectors.len() != 2 {
            return Err(Error::NotAzumaya(format!(
                "graded centralizer has dimension {}, expected 2",
                centralizer.vectors.len()
            )));
        }
        let unit = to_sparse(host.unit());
        // Pick the basis vector independent of 1.
        let mut span = RowReducer::new(host.dim);
        span.insert(unit.clone());
        let (w, parity) = centralizer
            .vectors
            .iter()
            .zip(&centralizer.parities)
            .find(|(v, _)| span.clone().insert(to_sparse(v)))
            .map(|(v, p)| (to_sparse(v), *p))
            .ok_or_else(|| Error::Internal("centralizer does not contain a non-scalar element".into()))?;
        // w² = α + β w.
        let ww = host.mul_sparse(&w, &w);
        let (alpha, beta) = express_in_span(&ww, &unit, &w)
            .ok_or_else(|| Error::NotAzumaya("graded centralizer is not closed under squaring".into()))?;
        if parity == 1 && !beta.is_zero() {
            return Err(Error::Internal("odd generator squares outside the scalars".into()));
        }
        let two = F::one() + F::one();
        let shift = beta.clone() / two.clone();
        // z = w - β/2 satisfies z² = α + β²/4.
        let mut z: SparseRow<F> = w;
        if !shift.is_zero() {
            let scaled_unit: SparseRow<F> = unit.iter().map(|(k, v)| (*k, shift.clone() * v.clone())).collect();
            z = crate::linalg::sub_rows(&z, &scaled_unit);
        }
        let mut square = alpha + shift.clone() * shift;
        if square.is_zero() {
            return Err(Error::NotAzumaya("graded center generator is nilpotent".into()));
        }
        if let Some(root) = normalizing_root(&square) {
            let inv = F::one() / root.clone();
            z = z.into_iter().map(|(k, v)| (k, v * inv.clone())).collect();
            square = square / (root.clone() * root);
        }
        Ok(HatCenter {
            algebra: GradedAlgebra::quadratic(parity, square.clone()),
            generator: to_dense(&z, host.dim),
            parity,
            square,
            twisted: odd == 0,
        })
    }
}

/// A root `r` with `x / r² = ±1`, when one exists in the field.
fn normalizing_root<F: PointField>(x: &F) -> Option<F> {
    if let Some(r) = x.exact_sqrt() {
        return Some(r);
    }
    if F::TAG == FieldTag::RealPoint {
        return (-x.clone()).exact_sqrt();
    }
    None
}

/// Solves `v = α·u + β·w` for sparse `v, u, w` with `u, w` independent.
fn express_in_span<F: Field>(v: &[(usize, F)], u: &[(usize, F)], w: &[(usize, F)]) -> Option<(F, F)> {
    let dim = [v, u, w].iter().flat_map(|r| r.last().map(|(c, _)| c + 1)).max().unwrap_or(0);
    let (du, dw, dv) = (to_dense(u, dim), to_dense(w, dim), to_dense(v, dim));
    let rows: Vec<Vec<F>> = (0..dim).map(|k| vec![du[k].clone(), dw[k].clone()]).collect();
    let m = Matrix::from_rows(rows).ok()?;
    let x = crate::linalg::solve(&m, &dv).ok()??;
    Some((x[0].clone(), x[1].clone()))
}

impl GradedAlgebra<Rational> {
    /// Signature of the trace form of the underlying ungraded algebra.
    pub fn trace_signature(&self) -> Result<i64> {
        Ok(signature(&self.trace_form())?.signature())
    }
}

/// Signature of the trace form for any point field; errors at the complex
/// point, where the form carries no sign information.
pub fn trace_signature<F: PointField>(a: &GradedAlgebra<F>) -> Result<i64> {
    if F::TAG != FieldTag::RealPoint {
        return Err(Error::NotReal);
    }
    let form = a.trace_form();
    let n = form.rows();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(form.get(i, j).to_rational().ok_or(Error::NotReal)?);
        }
    }
    Ok(signature(&Matrix::new(n, n, data)?)?.signature())
}

/// The quadratic algebra `Ẑ(A)` together with where its generator lives.
#[derive(Clone, Debug, PartialEq)]
pub struct HatCenter<F> {
    /// `F ⊕ F z` with basis `(1, z)`.
    pub algebra: GradedAlgebra<F>,
    /// Coordinates of `z` in `A`, or in `M₁,₁ ⊗̂ A` when `twisted`.
    pub generator: Vec<F>,
    pub parity: u8,
    /// `z²` after normalization.
    pub square: F,
    pub twisted: bool,
}

/// A subspace spanned by independent homogeneous vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F> {
    ambient_dim: usize,
    vectors: Vec<Vec<F>>,
    parities: Vec<u8>,
}

impl<F: Field> Subspace<F> {
    /// Checks homogeneity and independence of `vectors` inside `a`.
    pub fn new(a: &GradedAlgebra<F>, vectors: Vec<Vec<F>>) -> Result<Self> {
        let mut parities = Vec::with_capacity(vectors.len());
        let mut span = RowReducer::new(a.dim());
        for (n, v) in vectors.iter().enumerate() {
            if v.len() != a.dim() {
                return Err(Error::DimensionMismatch(format!("vector {n} has length {}", v.len())));
            }
            let degree = a
                .degree_of(v)
                .ok_or_else(|| Error::Validation(format!("vector {n} is zero or not homogeneous")))?;
            if !span.insert(to_sparse(v)) {
                return Err(Error::Validation(format!("vector {n} is linearly dependent on the previous ones")));
            }
            parities.push(degree);
        }
        Ok(Subspace { ambient_dim: a.dim(), vectors, parities })
    }

    /// Span of the basis vectors of the given degree.
    pub fn degree_part(a: &GradedAlgebra<F>, degree: u8) -> Self {
        let idx: Vec<usize> = (0..a.dim()).filter(|&i| a.parity()[i] == degree).collect();
        let vectors = idx.iter().map(|&i| to_dense(&[(i, F::one())], a.dim())).collect();
        Subspace { ambient_dim: a.dim(), vectors, parities: vec![degree; idx.len()] }
    }

    pub fn whole(a: &GradedAlgebra<F>) -> Self {
        let vectors = (0..a.dim()).map(|i| to_dense(&[(i, F::one())], a.dim())).collect();
        Subspace { ambient_dim: a.dim(), vectors, parities: a.parity().to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<F>] {
        &self.vectors
    }

    pub fn parities(&self) -> &[u8] {
        &self.parities
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut span = RowReducer::new(self.ambient_dim);
        for u in &self.vectors {
            span.insert(to_sparse(u));
        }
        span.reduce(to_sparse(v)).is_empty()
    }

    fn is_closed_in(&self, a: &GradedAlgebra<F>) -> bool {
        let mut span = RowReducer::new(self.ambient_dim);
        for u in &self.vectors {
            span.insert(to_sparse(u));
        }
        let sparse: Vec<_> = self.vectors.iter().map(|v| to_sparse(v)).collect();
        sparse
            .iter()
            .all(|x| sparse.iter().all(|y| span.reduce(a.mul_sparse(x, y)).is_empty()))
    }
}
