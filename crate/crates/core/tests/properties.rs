use std::sync::OnceLock;

use primlattice::counting::{
    count_primitive_moebius, enumerate, enumerate_with, EnumerationOptions,
};
use primlattice::epstein::PotterContext;
use primlattice::{Complex64, QuadraticForm};
use proptest::prelude::*;

fn forms() -> impl Strategy<Value = QuadraticForm> {
    (0.3f64..3.0, 0.3f64..3.0, -0.95f64..0.95)
        .prop_map(|(a, c, t)| QuadraticForm::new(a, t * 2.0 * (a * c).sqrt(), c).unwrap())
}

fn ulps(x: f64, y: f64) -> f64 {
    (x - y).abs() / (f64::EPSILON * x.abs().max(y.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kappa_and_lambda1_are_homogeneous(q in forms(), k in -4i32..5) {
        let t = 2f64.powi(k);
        let s = q.scaled(t).unwrap();
        prop_assert!(ulps(s.kappa(), t * q.kappa()) <= 4.0);
        prop_assert!(ulps(s.lambda1(), t * q.lambda1()) <= 4.0);
    }

    #[test]
    fn kappa_is_the_minimum_on_the_unit_circle(q in forms(), pts in prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 200)) {
        let k = q.kappa();
        for (u, v) in pts {
            let r2 = u * u + v * v;
            prop_assert!(k * r2 <= q.eval_real(u, v) * (1.0 + 1e-12) + 1e-300);
        }
    }

    #[test]
    fn kappa_symmetries(q in forms()) {
        let (a, b, c) = q.coefficients();
        let swapped = QuadraticForm::new(c, b, a).unwrap();
        let mirrored = QuadraticForm::new(a, -b, c).unwrap();
        prop_assert!(ulps(swapped.kappa(), q.kappa()) <= 8.0);
        prop_assert!(ulps(mirrored.kappa(), q.kappa()) <= 8.0);
        prop_assert!(q.kappa() <= q.lambda1() && q.lambda1() <= a.min(c));
    }

    #[test]
    fn counts_jump_by_multiplicity(q in forms(), cap in 1.0f64..400.0) {
        let list = enumerate(&q, cap).unwrap();
        let mut prev_all = 1;
        let mut prev_prim = 0;
        for e in list.entries() {
            let all = list.count_all(e.value).unwrap();
            let prim = list.count_primitive(e.value).unwrap();
            prop_assert_eq!(all - prev_all, e.total);
            prop_assert_eq!(prim - prev_prim, e.primitive);
            prop_assert!(e.total % 2 == 0 && e.primitive <= e.total);
            prev_all = all;
            prev_prim = prim;
        }
        prop_assert_eq!(list.count_all(cap).unwrap(), prev_all);
    }

    #[test]
    fn counts_are_scale_invariant(q in forms(), x in 0.0f64..300.0, k in -3i32..4) {
        let t = 2f64.powi(k);
        let s = q.scaled(t).unwrap();
        let r = primlattice::count(&q, x).unwrap();
        let rs = primlattice::count(&s, t * x).unwrap();
        prop_assert_eq!((r.all, r.primitive), (rs.all, rs.primitive));
    }

    #[test]
    fn lattice_error_within_boundary_envelope(q in forms(), x in 1.0f64..2000.0) {
        // unit cells meeting the ellipse boundary, whose length is at most
        // 2π·sqrt(x/κ), bound |A(x) - area|
        let r = primlattice::count(&q, x).unwrap();
        let envelope = 4.0 * (2.0 * std::f64::consts::PI * (2.0 * x / q.kappa()).sqrt() + 4.0);
        prop_assert!(r.p.abs() <= envelope, "P = {} envelope {}", r.p, envelope);
    }

    #[test]
    fn moebius_and_gcd_counts_agree(q in forms(), x in 0.0f64..3000.0) {
        let list = enumerate(&q, x).unwrap();
        prop_assert_eq!(list.count_primitive(x).unwrap(), count_primitive_moebius(&q, x).unwrap());
    }

    #[test]
    fn enumeration_ignores_worker_count(q in forms(), cap in 1.0f64..3000.0, workers in 1usize..9) {
        let one = enumerate_with(&q, cap, &EnumerationOptions::with_workers(1)).unwrap();
        let many = enumerate_with(&q, cap, &EnumerationOptions::with_workers(workers)).unwrap();
        prop_assert_eq!(one.entries(), many.entries());
    }
}

fn q0_contexts() -> &'static [PotterContext; 2] {
    static CTX: OnceLock<[PotterContext; 2]> = OnceLock::new();
    CTX.get_or_init(|| {
        let q = QuadraticForm::q0();
        [
            PotterContext::new(&q, 250.0).unwrap(),
            PotterContext::new(&q, 1000.0).unwrap(),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn enclosures_on_the_certified_line_intersect(t in -15.0f64..15.0) {
        let s = Complex64::new(0.75, t);
        let [small, large] = q0_contexts();
        let a = small.evaluate(s).unwrap();
        let b = large.evaluate(s).unwrap();
        prop_assert!(a.certified && b.certified);
        prop_assert!(a.intersects(&b), "t = {}: {:?} vs {:?}", t, a, b);
        prop_assert!(b.f2_bound < a.f2_bound);
    }

    #[test]
    fn enclosures_are_conjugate_symmetric(t in 0.0f64..15.0) {
        let [_, ctx] = q0_contexts();
        let up = ctx.evaluate(Complex64::new(0.75, t)).unwrap();
        let down = ctx.evaluate(Complex64::new(0.75, -t)).unwrap();
        prop_assert!((up.f1 - down.f1.conj()).norm() <= 1e-12 * up.f1.norm().max(1.0));
        prop_assert_eq!(up.f2_bound, down.f2_bound);
    }
}
