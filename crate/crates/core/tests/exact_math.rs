use kss_core::rational::solve_linear;
use kss_core::{hyperplane_through_points, vertex_from_facets, Hyperplane, QMat, QVec, Rat};
use num_traits::Zero;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=7).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
}

fn qvec(n: usize) -> impl Strategy<Value = QVec> {
    prop::collection::vec(small_rat(), n).prop_map(QVec::new)
}

fn qmat(n: usize) -> impl Strategy<Value = QMat> {
    prop::collection::vec(qvec(n), n).prop_map(|rows| QMat::from_rows(rows).unwrap())
}

proptest! {
    #[test]
    fn solve_round_trip((a, b) in (1usize..=4).prop_flat_map(|n| (qmat(n), qvec(n)))) {
        prop_assume!(!a.det().unwrap().is_zero());
        let x = solve_linear(&a, &b).unwrap().expect("invertible system is solvable");
        prop_assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn hyperplane_contains_its_points(points in prop::collection::vec(qvec(3), 3)) {
        if let Ok(h) = hyperplane_through_points(&points) {
            for p in &points {
                prop_assert!(h.contains(p));
            }
        } else {
            prop_assert!(kss_core::rational::affine_dimension(&points) < 2);
        }
    }

    #[test]
    fn canonical_form_is_stable(normal in qvec(3), offset in small_rat(), factor in small_rat()) {
        prop_assume!(!normal.is_zero() && !factor.is_zero());
        let h = Hyperplane::new(normal.clone(), offset.clone()).unwrap();
        let again = Hyperplane::new(h.normal().clone(), h.offset().clone()).unwrap();
        prop_assert_eq!(&again, &h);
        let scaled = Hyperplane::new(normal.scale(&factor), &offset * &factor).unwrap();
        prop_assert_eq!(&scaled, &h);
    }

    #[test]
    fn vertex_round_trip(w in qvec(2), normals in prop::collection::vec(qvec(2), 2)) {
        let rows = QMat::from_rows(normals.clone()).unwrap();
        prop_assume!(!rows.det().unwrap().is_zero());
        let facets: Vec<Hyperplane> = normals
            .iter()
            .map(|n| Hyperplane::new(n.clone(), n.dot(&w)).unwrap())
            .collect();
        let v = vertex_from_facets(&facets).unwrap();
        for f in &facets {
            prop_assert!(f.contains(&v));
        }
        prop_assert_eq!(v, w);
    }
}
