use gbr_core::algebra::GradedAlgebra;
use gbr_core::clifford::clifford;
use gbr_core::groups::{AbGroup, Exponent};
use gbr_core::invariants::{q2_add, q2_class, witt_to_bw};
use gbr_core::space::{compute_gbr, golden_table, SpaceDescriptor, GOLDEN_TABLES};
use gbr_core::{Rational, RealAlgebra, RealForm};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = i64> {
    prop_oneof![Just(1), Just(-1), Just(2), Just(-2), Just(3), Just(-5)]
}

fn form(max: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(entry(), 0..=max)
}

fn cl(entries: &[i64]) -> RealAlgebra {
    clifford(&RealForm::from_ints(entries).unwrap()).unwrap()
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

fn split_pair() -> RealAlgebra {
    GradedAlgebra::from_sparse(vec![0, 0], vec![one(), one()], vec![vec![(0, one())], vec![], vec![], vec![(1, one())]])
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tensor_is_associative(f in form(2), g in form(2), h in form(2)) {
        let (a, b, c) = (cl(&f), cl(&g), cl(&h));
        prop_assert_eq!(a.graded_tensor(&b).graded_tensor(&c), a.graded_tensor(&b.graded_tensor(&c)));
    }

    #[test]
    fn opposite_commutes_with_tensor(f in form(3), g in form(3)) {
        let (a, b) = (cl(&f), cl(&g));
        prop_assert_eq!(a.graded_tensor(&b).opposite(), a.opposite().graded_tensor(&b.opposite()));
    }

    #[test]
    fn azumaya_of_tensor(f in form(2), g in form(2), split_left in any::<bool>()) {
        let (a, b) = (cl(&f), cl(&g));
        prop_assert!(a.graded_tensor(&b).is_azumaya());
        let s = split_pair();
        let t = if split_left { s.graded_tensor(&a) } else { a.graded_tensor(&s) };
        prop_assert!(!t.is_azumaya());
    }

    #[test]
    fn hat_center_is_additive(f in form(3), g in form(3)) {
        let (a, b) = (cl(&f), cl(&g));
        let q = |x: &RealAlgebra| q2_class(&x.hat_center().unwrap().algebra).unwrap();
        prop_assert_eq!(q(&a.graded_tensor(&b)), q2_add(q(&a), q(&b)).unwrap());
    }

    #[test]
    fn hat_center_generator_squares_to_a_scalar(f in form(4)) {
        let a = cl(&f);
        let z = a.hat_center().unwrap();
        prop_assert_eq!(z.algebra.dim(), 2);
        prop_assert!(z.square != Rational::from_integer(0.into()));
        let host = if z.twisted { a.m11() } else { a.clone() };
        let expected: Vec<Rational> = host.unit().iter().map(|u| u * &z.square).collect();
        prop_assert_eq!(host.mul(&z.generator, &z.generator), expected);
    }
}

#[test]
fn eighth_power_of_line_is_trivial_and_square() {
    let a = cl(&[1; 8]);
    let side = (a.dim() as f64).sqrt() as usize;
    assert_eq!(side * side, a.dim());
    assert_eq!(witt_to_bw(&RealForm::from_ints(&[1; 8]).unwrap()).unwrap().value, 0);
}

#[test]
fn golden_gbr_has_exponent_dividing_8() {
    for name in GOLDEN_TABLES {
        for row in golden_table(name).unwrap() {
            if let Some(g) = row.report.gbr.as_ref().and_then(|g| g.resolved()) {
                assert!(g.exponent().divides(8), "{}: {g}", row.name);
                assert_eq!(g.free_rank(), 0);
            }
            assert!(row.report.q2.exponent().divides(4));
        }
    }
}

/// Odd torsion in H3 of the free factor shows up in GBR, so the exponent
/// bound only holds for 2-groups.
#[test]
fn odd_torsion_survives_in_gbr() {
    let d = SpaceDescriptor::FreeProduct { h0: 1, h1: 0, h3tors: vec![3] };
    let g = compute_gbr(&d).unwrap();
    let g = g.resolved().unwrap();
    assert_eq!(g, &AbGroup::new(&[2, 3], 0, 0).unwrap());
    assert_eq!(g.exponent(), Exponent::Finite(6));
}
