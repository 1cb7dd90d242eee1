use defcalc::algebra::presentations::{monogenic_deformation, presented_pmn_deformation};
use defcalc::algebra::{pmn, tensor, truncated_poly, verify_algebra};
use defcalc::bounds::{betti_cp, betti_pmn, cusp_feasibility, cusp_solution_valid, theorem1_bound};
use defcalc::deformation::{
    cocycle_from_triple, def_space, flatness_check, sum_deformations, triple_from_cocycle, DeformationSpace,
};
use defcalc::linalg::{self, Echelon};
use defcalc::quantum::{extension_solve, pmn_line_psi, verify_extension};
use defcalc::structure::{classify_monogenic, classify_pmn};
use defcalc::{Field, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn q() -> Field {
    Field::Rational
}

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=6).prop_map(|(a, b)| q().parse(&format!("{a}/{b}")).unwrap())
}

fn coords(space: &DeformationSpace, values: &[Scalar]) -> Vec<Scalar> {
    (0..space.dimension()).map(|i| values[i % values.len()].clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scalar_field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn prime_field_inverse(p in prop::sample::select(vec![2u32, 3, 5, 7, 11, 13]), x in 1i64..1000) {
        let f = Field::prime(p).unwrap();
        let v = f.from_i64(x);
        if !v.is_zero() {
            prop_assert!((&v * &v.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn kernel_vectors_are_killed(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..5)) {
        let f = q();
        let rows: Vec<Vec<Scalar>> = rows.into_iter().map(|r| r.into_iter().map(|x| f.from_i64(x)).collect()).collect();
        let kernel = linalg::kernel(f, 5, &rows);
        prop_assert_eq!(kernel.len() + linalg::rank(f, 5, &rows), 5);
        for v in &kernel {
            for r in &rows {
                let mut s = f.zero();
                for (a, b) in r.iter().zip(v) {
                    s += &(a * b);
                }
                prop_assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn echelon_solution_satisfies_system(rows in prop::collection::vec((prop::collection::vec(-3i64..=3, 4), -5i64..=5), 1..6)) {
        let f = q();
        let mut e = Echelon::new(f, 4);
        let mut consistent = true;
        for (id, (r, rhs)) in rows.iter().enumerate() {
            let row = linalg::to_sparse(&r.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>());
            if let linalg::Insertion::Inconsistent(_) = e.insert(row, f.from_i64(*rhs), id) {
                consistent = false;
                break;
            }
        }
        if consistent {
            let x = e.solve();
            for (r, rhs) in &rows {
                let mut s = f.zero();
                for (a, b) in r.iter().zip(&x) {
                    s += &(&f.from_i64(*a) * b);
                }
                prop_assert_eq!(s, f.from_i64(*rhs));
            }
        }
    }

    #[test]
    fn monogenic_round_trip(n in 1u32..=3, half in 1i32..=4, alpha in small_rational()) {
        let d = 2 * half;
        prop_assume!(d <= 2 * n as i32 + 2);
        let t = monogenic_deformation(n, d, &alpha).unwrap();
        prop_assert!(verify_algebra(t.big()).passed());
        prop_assert!(flatness_check(t.big(), t.t_index()).flat);
        let expected = if d == 2 { q().zero() } else { alpha };
        prop_assert_eq!(classify_monogenic(&t).unwrap(), expected);
    }

    #[test]
    fn sum_is_additive(n in 1u32..=3, a in small_rational(), b in small_rational()) {
        let d = 4;
        let s = sum_deformations(&monogenic_deformation(n, d, &a).unwrap(), &monogenic_deformation(n, d, &b).unwrap()).unwrap();
        prop_assert_eq!(classify_monogenic(&s).unwrap(), &a + &b);
    }

    #[test]
    fn cocycle_triple_round_trip(values in prop::collection::vec(small_rational(), 1..5), d in prop::sample::select(vec![2, 4])) {
        let r = pmn(1, 1, q()).unwrap();
        let space = def_space(&r, d);
        let psi = space.cocycle_from_coordinates(&coords(&space, &values));
        let t = triple_from_cocycle(&r, &psi).unwrap();
        prop_assert!(t.check().passed());
        prop_assert!(space.same_class(&cocycle_from_triple(&t), &psi).unwrap());
    }

    #[test]
    fn classification_is_linear_in_the_class(x in prop::collection::vec(small_rational(), 3), y in prop::collection::vec(small_rational(), 3), c in small_rational()) {
        let r = pmn(2, 1, q()).unwrap();
        let space = def_space(&r, 4);
        let class = |v: &[Scalar]| classify_pmn(&triple_from_cocycle(&r, &space.cocycle_from_coordinates(v)).unwrap()).unwrap().flat();
        let combo: Vec<Scalar> = x.iter().zip(&y).map(|(a, b)| a + &(&c * b)).collect();
        let expected = linalg::add(&class(&x), &linalg::scaled(&class(&y), &c));
        prop_assert_eq!(class(&combo), expected);
    }

    #[test]
    fn presented_deformations_are_flat(a in prop::collection::vec(small_rational(), 0..3), b in prop::collection::vec(small_rational(), 0..2)) {
        let t = presented_pmn_deformation(2, 1, 4, q(), &a, &b).unwrap();
        prop_assert!(verify_algebra(t.big()).passed());
        prop_assert!(flatness_check(t.big(), t.t_index()).flat);
    }

    #[test]
    fn betti_numbers_sum_to_dimension(m in 1u32..=4, n in 1u32..=4) {
        let total: usize = (0..=2 * (m + n) as i64).map(|j| betti_pmn(m, n, j)).sum();
        prop_assert_eq!(total, ((m + 1) * (n + 1)) as usize);
        let cp: usize = (0..=2 * m as i64).map(|j| betti_cp(m, j)).sum();
        prop_assert_eq!(cp, m as usize + 1);
    }

    #[test]
    fn theorem1_positivity(m in 1u32..=5, n in 1u32..=5, k in (0u32..7).prop_map(|i| 2 * i + 1)) {
        let b = theorem1_bound(m, n, k).unwrap();
        prop_assert_eq!(b.bound > 0, k <= (2 * m - 1).max(2 * n - 1));
    }

    #[test]
    fn cusp_solutions_are_valid(p in 2i64..40, q in 1i64..12) {
        let lambda = BigRational::new(BigInt::from(p), BigInt::from(q));
        prop_assume!(lambda > BigRational::from_integer(BigInt::from(1)));
        let c = cusp_feasibility(&lambda).unwrap();
        prop_assert!(c.solutions.iter().all(|&(k, l)| cusp_solution_valid(&lambda, k, l)));
        prop_assert_eq!(c.feasible, !c.solutions.is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn solver_witnesses_pass_the_checker(a in prop::collection::vec(small_rational(), 0..2), b in prop::collection::vec(small_rational(), 0..2), factor in 1u8..=2) {
        let qs = pmn_line_psi(1, 1, factor, q()).unwrap();
        let t = presented_pmn_deformation(1, 1, 2, q(), &a, &b).unwrap();
        if let Some(w) = extension_solve(&t, &qs).unwrap().witness() {
            prop_assert!(verify_extension(&t, &qs, &w.psi_tilde).unwrap().passed());
        }
    }
}

#[test]
fn tensor_of_truncated_polys_is_pmn() {
    let f = q();
    let t = tensor(&defcalc::algebra::truncated_poly_in("u", 2, f).unwrap(), &defcalc::algebra::truncated_poly_in("v", 1, f).unwrap()).unwrap();
    assert_eq!(t, pmn(2, 1, f).unwrap());
    assert!(verify_algebra(&truncated_poly(3, f).unwrap()).passed());
}
