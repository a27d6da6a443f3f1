use kss_core::polytope::Side;
use kss_core::{separates, Halfspace, Hyperplane, Polytope, QVec, Rat};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
}

fn qvec(n: usize) -> impl Strategy<Value = QVec> {
    prop::collection::vec(small_rat(), n).prop_map(QVec::new)
}

/// A box around the origin cut by random halfspaces that keep the origin.
fn polytope() -> impl Strategy<Value = Polytope> {
    (2usize..=3).prop_flat_map(|n| {
        prop::collection::vec((qvec(n), 0i64..=3), 0..5).prop_map(move |cuts| {
            let mut hs = Vec::new();
            for j in 0..n {
                hs.push(Halfspace::ge(QVec::unit(n, j), Rat::from_integer((-2).into())).unwrap());
                hs.push(Halfspace::le(QVec::unit(n, j), Rat::from_integer(2.into())).unwrap());
            }
            for (normal, slack) in cuts {
                if !normal.is_zero() {
                    hs.push(Halfspace::ge(normal, Rat::from_integer((-slack).into())).unwrap());
                }
            }
            Polytope::from_halfspaces(n, hs).unwrap()
        })
    })
}

fn weights(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..6, n)
}

fn combine(vertices: &[QVec], w: &[u32]) -> QVec {
    let total: u32 = w.iter().sum::<u32>().max(1);
    let n = vertices[0].len();
    let mut acc = QVec::zeros(n);
    for (v, &wi) in vertices.iter().zip(w.iter().cycle()) {
        acc = acc.add(&v.scale(&Rat::from_integer(wi.into())));
    }
    if w.iter().all(|&x| x == 0) {
        return vertices[0].clone();
    }
    acc.scale(&Rat::new(1.into(), total.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn vertices_satisfy_every_halfspace(p in polytope()) {
        for v in p.vertices() {
            prop_assert!(p.halfspaces().iter().all(|h| h.contains(v)));
            let tight: Vec<QVec> = p
                .halfspaces()
                .iter()
                .filter(|h| h.boundary().contains(v))
                .map(|h| h.boundary().normal().clone())
                .collect();
            let rank = kss_core::QMat::from_rows(tight).unwrap().rank();
            prop_assert_eq!(rank, p.ambient());
        }
    }

    #[test]
    fn lp_agrees_with_vertices(p in polytope(), form in qvec(3)) {
        let form = QVec::new(form[..p.ambient()].to_vec());
        let (min, argmin) = p.minimize_linear(&form).unwrap();
        let by_vertices = p.vertices().iter().map(|v| v.dot(&form)).min().unwrap();
        prop_assert_eq!(&min, &by_vertices);
        prop_assert_eq!(argmin.dot(&form), min);
        let (max, _) = p.maximize_linear(&form).unwrap();
        prop_assert_eq!(max, p.vertices().iter().map(|v| v.dot(&form)).max().unwrap());
    }

    #[test]
    fn midpoints_stay_inside(p in polytope(), w1 in weights(12), w2 in weights(12)) {
        let a = combine(p.vertices(), &w1);
        let b = combine(p.vertices(), &w2);
        prop_assert!(p.contains(&a) && p.contains(&b));
        let half = Rat::new(1.into(), 2.into());
        prop_assert!(p.contains(&a.lerp(&b, &half)));
    }

    #[test]
    fn moment_identity(p in polytope(), form in qvec(3), c in small_rat()) {
        prop_assume!(p.is_full_dimensional());
        let form = QVec::new(form[..p.ambient()].to_vec());
        let lhs = p.integrate_linear(&form, &c).unwrap();
        let rhs = p.volume() * (form.dot(&p.barycenter().unwrap()) + c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn volume_ignores_the_root(p in polytope()) {
        prop_assume!(p.is_full_dimensional());
        let reference = p.volume_from(0).unwrap();
        for root in 1..p.vertices().len() {
            prop_assert_eq!(p.volume_from(root).unwrap(), reference.clone());
        }
    }

    #[test]
    fn one_sided_hyperplanes_do_not_separate(p in polytope(), normal in qvec(3)) {
        let normal = QVec::new(normal[..p.ambient()].to_vec());
        prop_assume!(!normal.is_zero());
        let (min, _) = p.minimize_linear(&normal).unwrap();
        let (max, _) = p.maximize_linear(&normal).unwrap();
        let below = Hyperplane::new(normal.clone(), min.clone()).unwrap();
        let above = Hyperplane::new(normal.clone(), max.clone()).unwrap();
        prop_assert!(!separates(&below, &p));
        prop_assert!(!separates(&above, &p));
        if min != max {
            let mid = Hyperplane::new(normal, (min + max) / Rat::from_integer(2.into())).unwrap();
            prop_assert!(separates(&mid, &p));
        }
    }
}

#[test]
fn brute_force_vertices_match() {
    let square_and_cuts = vec![
        Halfspace::ge(QVec::from_ints(&[1, 0]), Rat::zero()).unwrap(),
        Halfspace::ge(QVec::from_ints(&[0, 1]), Rat::zero()).unwrap(),
        Halfspace::le(QVec::from_ints(&[1, 0]), Rat::one()).unwrap(),
        Halfspace::le(QVec::from_ints(&[0, 1]), Rat::one()).unwrap(),
        Halfspace::le(QVec::from_ints(&[1, 1]), Rat::new(3.into(), 2.into())).unwrap(),
        Halfspace::ge(QVec::from_ints(&[1, -1]), Rat::from_integer((-1).into())).unwrap(),
    ];
    let p = Polytope::from_halfspaces(2, square_and_cuts.clone()).unwrap();
    let mut brute = Vec::new();
    for i in 0..square_and_cuts.len() {
        for j in i + 1..square_and_cuts.len() {
            let pair = [square_and_cuts[i].boundary().clone(), square_and_cuts[j].boundary().clone()];
            if let Ok(v) = kss_core::vertex_from_facets(&pair) {
                if square_and_cuts.iter().all(|h| h.contains(&v)) && !brute.contains(&v) {
                    brute.push(v);
                }
            }
        }
    }
    brute.sort();
    assert_eq!(p.vertices(), brute.as_slice());
}

#[test]
fn separation_examples() {
    let square = Polytope::from_halfspaces(
        2,
        vec![
            Halfspace::from_boundary(Hyperplane::new(QVec::from_ints(&[1, 0]), Rat::zero()).unwrap(), Side::Ge),
            Halfspace::from_boundary(Hyperplane::new(QVec::from_ints(&[0, 1]), Rat::zero()).unwrap(), Side::Ge),
            Halfspace::le(QVec::from_ints(&[1, 0]), Rat::one()).unwrap(),
            Halfspace::le(QVec::from_ints(&[0, 1]), Rat::one()).unwrap(),
        ],
    )
    .unwrap();
    let h = |n: &[i64], c: Rat| Hyperplane::new(QVec::from_ints(n), c).unwrap();
    assert!(separates(&h(&[1, 0], Rat::new(1.into(), 2.into())), &square));
    assert!(!separates(&h(&[1, 0], Rat::from_integer(2.into())), &square));
    assert!(separates(&h(&[1, 1], Rat::one()), &square));
}
