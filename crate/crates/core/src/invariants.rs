//! Brauer-Wall invariants of graded Azumaya algebras at a point.
//!
//! A class is read off three computable witnesses: the parity of the graded
//! center generator, its class in Q₂ (ℤ/4 at a real point), and the class of
//! the underlying ungraded algebra in Br(ℝ) = ℤ/2. The map from witnesses to
//! ℤ/8 is not hard-coded; it is derived from Clifford algebras `Cl(p, q)`
//! with `k = (p - q) mod 8` (see [`CalibrationTable`]).

use std::cmp::Ordering;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::{trace_signature, GradedAlgebra};
use crate::clifford::{clifford, DiagonalForm};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};
use crate::scalar::{FieldTag, PointField, Rational};

/// An element of Q₂ at a point: ℤ/4 at a real point, ℤ/2 at a complex one.
///
/// At a real point `0 ↔ (even, z² = 1)`, `1 ↔ (odd, z² = 1)`,
/// `2 ↔ (even, z² = -1)`, `3 ↔ (odd, z² = -1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Q2Class {
    pub field: FieldTag,
    pub value: u8,
}

impl Q2Class {
    pub fn modulus(field: FieldTag) -> u8 {
        match field {
            FieldTag::RealPoint => 4,
            FieldTag::ComplexPoint => 2,
        }
    }

    pub fn new(field: FieldTag, value: u8) -> Self {
        Q2Class { field, value: value % Self::modulus(field) }
    }

    pub fn parity(&self) -> u8 {
        self.value & 1
    }
}

/// The three witnesses of a Brauer-Wall class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub parity: u8,
    pub q2: u8,
    pub ungraded: u8,
}

/// A class in BW of the point: ℤ/8 at a real point, ℤ/2 at a complex one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BwClass {
    pub field: FieldTag,
    pub value: u8,
    pub witnesses: Triple,
}

impl BwClass {
    pub fn modulus(field: FieldTag) -> u8 {
        match field {
            FieldTag::RealPoint => 8,
            FieldTag::ComplexPoint => 2,
        }
    }
}

/// Witt class of a form at a point: the signature at a real point, the rank
/// mod 2 at a complex point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WittClass {
    pub field: FieldTag,
    pub value: i64,
}

pub fn witt_class<F: PointField>(form: &DiagonalForm<F>) -> Result<WittClass> {
    let value = match F::TAG {
        FieldTag::RealPoint => form.signature()?,
        FieldTag::ComplexPoint => (form.len() % 2) as i64,
    };
    Ok(WittClass { field: F::TAG, value })
}

/// Class of a 2-dimensional graded algebra `F ⊕ F z` with `z` homogeneous
/// and `z²` a nonzero scalar (after completing the square when `z` is even).
pub fn q2_class<F: PointField>(q: &GradedAlgebra<F>) -> Result<Q2Class> {
    let shape = |msg: &str| Error::Validation(format!("not a quadratic algebra: {msg}"));
    if q.dim() != 2 {
        return Err(shape(&format!("dimension {}", q.dim())));
    }
    let unit = q.unit().to_vec();
    // e_w is independent of 1 exactly when the other coordinate of 1 is nonzero.
    let w = if !unit[0].is_zero() { 1 } else if !unit[1].is_zero() { 0 } else { return Err(shape("unit is zero")) };
    let parity = q.parity()[w];
    if q.parity().iter().zip(&unit).any(|(p, u)| *p == 1 && !u.is_zero()) {
        return Err(shape("unit is not even"));
    }
    let mut ew = vec![F::zero(); 2];
    ew[w] = F::one();
    let ww = q.mul(&ew, &ew);
    let basis = Matrix::from_rows(vec![vec![unit[0].clone(), ew[0].clone()], vec![unit[1].clone(), ew[1].clone()]])?;
    let coeffs = solve(&basis, &ww)?.ok_or_else(|| shape("square is outside the algebra"))?;
    let (alpha, beta) = (coeffs[0].clone(), coeffs[1].clone());
    if parity == 1 && !beta.is_zero() {
        return Err(shape("odd generator squares to a non-scalar"));
    }
    let half = beta / (F::one() + F::one());
    let square = alpha + half.clone() * half;
    q2_class_of_square(parity, &square)
}

/// Class of `F ⊕ F z` with `z` of the given degree and scalar `z²`.
pub fn q2_class_of_square<F: PointField>(parity: u8, square: &F) -> Result<Q2Class> {
    if square.is_zero() {
        return Err(Error::Validation("quadratic generator squares to zero".into()));
    }
    let value = match F::TAG {
        FieldTag::ComplexPoint => parity,
        FieldTag::RealPoint => match square.real_sign() {
            Some(Ordering::Greater) => parity,
            Some(Ordering::Less) => parity + 2,
            _ => return Err(Error::NotReal),
        },
    };
    Ok(Q2Class::new(F::TAG, value))
}

pub fn q2_add(x: Q2Class, y: Q2Class) -> Result<Q2Class> {
    if x.field != y.field {
        return Err(Error::FieldMismatch(format!("cannot add Q2 classes over {} and {}", x.field, y.field)));
    }
    Ok(Q2Class::new(x.field, x.value + y.value))
}

/// Degree of the generator of `Ẑ(A)`.
pub fn parity<F: PointField>(a: &GradedAlgebra<F>) -> Result<u8> {
    Ok(a.hat_center()?.parity)
}

/// Class of the underlying ungraded algebra (of `A₀` when `A` is odd) in
/// Br(ℝ): 0 for a matrix algebra, 1 for the quaternion class. Read off the
/// sign of the trace form signature. Always 0 at the complex point.
pub fn ungraded_class<F: PointField>(a: &GradedAlgebra<F>) -> Result<u8> {
    let z = a.hat_center()?;
    ungraded_class_with_parity(a, z.parity)
}

fn ungraded_class_with_parity<F: PointField>(a: &GradedAlgebra<F>, parity: u8) -> Result<u8> {
    if F::TAG == FieldTag::ComplexPoint {
        return Ok(0);
    }
    let sig = if parity == 1 { trace_signature(&a.even_subalgebra())? } else { trace_signature(a)? };
    match sig.cmp(&0) {
        Ordering::Greater => Ok(0),
        Ordering::Less => Ok(1),
        Ordering::Equal => Err(Error::NotAzumaya("trace form has signature 0".into())),
    }
}

/// The witnesses `(parity, q2, ungraded)` of an Azumaya algebra.
pub fn invariant_triple<F: PointField>(a: &GradedAlgebra<F>) -> Result<Triple> {
    let z = a.hat_center()?;
    let q2 = q2_class_of_square(z.parity, &z.square)?;
    let ungraded = ungraded_class_with_parity(a, z.parity)?;
    Ok(Triple { parity: z.parity, q2: q2.value, ungraded })
}

/// Witness triples of the eight classes of BW(ℝ), indexed by `k ∈ ℤ/8`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalibrationTable {
    pub triples: [Triple; 8],
}

impl CalibrationTable {
    /// Computes the triples of `Cl(p, q) = C(⟨1⟩^p ⊥ ⟨-1⟩^q)` for all
    /// `p + q ≤ max_total` and assigns each to `(p - q) mod 8`. Fails if two
    /// algebras with the same `k` disagree, if two values of `k` share a
    /// triple, or if some `k` is not reached.
    pub fn derive(max_total: usize) -> Result<Self> {
        let mut slots: [Option<(Triple, (usize, usize))>; 8] = [None; 8];
        for total in 0..=max_total {
            for p in 0..=total {
                let q = total - p;
                let triple = invariant_triple(&clifford(&DiagonalForm::<Rational>::standard(p, q))?)?;
                let k = (p as i64 - q as i64).rem_euclid(8) as usize;
                match slots[k] {
                    None => slots[k] = Some((triple, (p, q))),
                    Some((seen, (p0, q0))) if seen != triple => {
                        return Err(Error::CalibrationConflict(format!(
                            "Cl({p},{q}) has {triple:?} but Cl({p0},{q0}) has {seen:?}, both at k = {k}"
                        )));
                    }
                    _ => {}
                }
            }
        }
        let mut triples = [Triple { parity: 0, q2: 0, ungraded: 0 }; 8];
        for (k, slot) in slots.iter().enumerate() {
            let (t, _) = slot.ok_or_else(|| {
                Error::CalibrationConflict(format!("no Clifford algebra with p + q <= {max_total} reaches k = {k}"))
            })?;
            if let Some(j) = triples[..k].iter().position(|u| *u == t) {
                return Err(Error::CalibrationConflict(format!("k = {j} and k = {k} share the triple {t:?}")));
            }
            triples[k] = t;
        }
        Ok(CalibrationTable { triples })
    }

    pub fn lookup(&self, triple: &Triple) -> Option<u8> {
        self.triples.iter().position(|t| t == triple).map(|k| k as u8)
    }
}

/// The table derived from all `Cl(p, q)` with `p + q ≤ 6`, computed once.
pub fn calibration() -> Result<&'static CalibrationTable> {
    static TABLE: OnceLock<Result<CalibrationTable>> = OnceLock::new();
    TABLE.get_or_init(|| CalibrationTable::derive(6)).as_ref().map_err(Clone::clone)
}

/// Brauer-Wall class of an Azumaya algebra, normalized so that `C⟨1⟩ ↦ 1`.
pub fn bw_class<F: PointField>(a: &GradedAlgebra<F>) -> Result<BwClass> {
    let witnesses = invariant_triple(a)?;
    let value = match F::TAG {
        FieldTag::ComplexPoint => witnesses.parity,
        FieldTag::RealPoint => calibration()?.lookup(&witnesses).ok_or_else(|| {
            Error::NotAzumaya(format!("witnesses {witnesses:?} match no Brauer-Wall class"))
        })?,
    };
    Ok(BwClass { field: F::TAG, value, witnesses })
}

/// Class of `C(f)`: the image of the Witt class of `f` in BW.
pub fn witt_to_bw<F: PointField>(form: &DiagonalForm<F>) -> Result<BwClass> {
    bw_class(&clifford(form)?)
}
