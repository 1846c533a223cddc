use cbmw::admissibility::{
    apply_morphism, check_ground_ring, check_u_admissible, check_weak_admissible,
    check_wy_admissible, condition1_window_terms, delta_negative, gamma_at, gamma_closed_form,
    generate_instance, Checker, GroundRingInstance, Morphism, RhoChoice,
};
use cbmw::exact::Rational;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=9, any::<bool>()).prop_map(|(n, d, neg)| {
        let x = Rational::new(n, d).unwrap();
        if neg {
            -x
        } else {
            x
        }
    })
}

/// Parameters outside the excluded configurations.
fn params(r: usize) -> impl Strategy<Value = (Vec<Rational>, Rational, bool)> {
    (
        proptest::collection::vec(small_rational(), r),
        small_rational(),
        any::<bool>(),
    )
        .prop_filter("generic", |(u, q, _)| {
            cbmw::admissibility::check_generic_configuration(u, q).is_ok()
        })
}

fn instance(r: usize, u: &[Rational], q: &Rational, second_root: bool) -> GroundRingInstance {
    let choice = RhoChoice::legal(r)[usize::from(second_root)];
    let n = 2 * r + 8;
    generate_instance(r, u, q, choice, n, r + 6).unwrap()
}

fn ground_ring_relation_holds(inst: &GroundRingInstance) -> bool {
    let rho = inst.rho();
    let lhs = &rho.recip().unwrap() - rho;
    let rhs = &(-inst.q_minus_q_inv()) * &(&inst.deltas()[0] - &Rational::one());
    lhs == rhs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_instances_are_admissible((u, q, second) in params(2)) {
        let inst = instance(2, &u, &q, second);
        prop_assert!(ground_ring_relation_holds(&inst));
        let report = Checker::new(2, inst.max_a()).unwrap().check(&inst).unwrap();
        prop_assert!(report.all_passed(), "{:?}", report);
        for v in [&report.ground_ring, &report.weak, &report.wilcox_yu, &report.u_admissible] {
            prop_assert!(v.failures.is_empty());
        }
    }

    #[test]
    fn single_perturbations_are_rejected((u, q, second) in params(3), a in 1usize..=14, bump in 1i64..=3) {
        let inst = instance(3, &u, &q, second);
        let bumped = inst.with_delta(a, &inst.deltas()[a] + &Rational::from(bump)).unwrap();
        let n = inst.max_a();
        let wy = check_wy_admissible(&bumped, n).unwrap();
        let ground = check_ground_ring(&bumped).unwrap();
        let ua = check_u_admissible(&bumped, n).unwrap();
        prop_assert!(!wy.passed() || !ground.passed());
        prop_assert!(!ua.passed());
        let failure = ua.first_failure().unwrap();
        prop_assert_eq!(failure.index, a as i64);
        prop_assert!(failure.lhs != failure.rhs);
    }

    #[test]
    fn morphisms_preserve_verdicts((u, q, second) in params(1), bump in any::<bool>()) {
        let mut inst = instance(1, &u, &q, second);
        if bump {
            inst = inst.with_delta(2, &inst.deltas()[2] + &Rational::one()).unwrap();
        }
        let checker = Checker::new(1, inst.max_a()).unwrap();
        let base = checker.check(&inst).unwrap().flags();
        for m in Morphism::ALL {
            let image = apply_morphism(&inst, m).unwrap();
            prop_assert_eq!(image.deltas(), inst.deltas());
            prop_assert_eq!(image.u(), inst.u());
            prop_assert_eq!(ground_ring_relation_holds(&image), ground_ring_relation_holds(&inst));
            prop_assert_eq!(checker.check(&image).unwrap().flags(), base);
        }
    }

    #[test]
    fn deltas_follow_the_gamma_closed_form((u, q, second) in params(2)) {
        let inst = instance(2, &u, &q, second);
        let gammas = gamma_closed_form(2).unwrap();
        let g = gamma_at(&gammas, &inst.point()).unwrap();
        for a in 0..=inst.max_a() {
            let expected: Rational = (0..2).map(|j| &g[j] * &u[j].pow(a as i32).unwrap()).sum();
            prop_assert_eq!(&inst.deltas()[a], &expected, "a = {}", a);
        }
    }
}

#[test]
fn reference_instance_and_negative_recursion() {
    let inst = generate_instance(1, &[2.into()], &3.into(), RhoChoice::MinusA0, 4, 2).unwrap();
    assert_eq!(inst.rho(), &Rational::from(2));
    let r = |s: &str| s.parse::<Rational>().unwrap();
    assert_eq!(inst.deltas()[..3], [r("25/16"), r("25/8"), r("25/4")]);
    assert_eq!(inst.delta(-1), Some(&r("25/32")));
    assert_eq!(inst.delta(-2), Some(&r("25/64")));
    assert_eq!(
        delta_negative(&inst, 2).unwrap(),
        vec![r("25/32"), r("25/64")]
    );
    assert!(check_weak_admissible(&inst, 4, 2).unwrap().passed());
}

#[test]
fn u_failure_carries_a_witness() {
    let inst = generate_instance(1, &[2.into()], &3.into(), RhoChoice::MinusA0, 6, 2).unwrap();
    let bad = inst.with_delta(1, Rational::from(5)).unwrap();
    let v = check_u_admissible(&bad, 6).unwrap();
    let f = v.first_failure().unwrap();
    assert_eq!(f.index, 1);
    assert_eq!(f.condition.name(), "u-admissible");
}

#[test]
fn window_terms_for_small_ranks() {
    for r in 2..=6 {
        for l in 1..r {
            for (sign, k) in condition1_window_terms(r, l) {
                assert!(sign == 1 || sign == -1);
                assert!((0..=r as i64).contains(&k), "r = {r}, l = {l}, k = {k}");
            }
        }
    }
    assert!(condition1_window_terms(2, 1).is_empty());
}
