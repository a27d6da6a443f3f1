mod common;

use common::{all_models, load};
use kss_core::chambers::{chamber_complex, family_k};
use kss_core::domains::beta_direct;
use kss_core::polytope::Polytope;
use kss_core::sampling;
use kss_core::{QVec, Rat};
use num_traits::One;

#[test]
fn beta_decomposition_identity() {
    for model in all_models() {
        let mut rng = sampling::rng(3);
        for _ in 0..20 {
            let x = sampling::simplex_point(model.k(), &mut rng, 30);
            for (v, form) in model.valuations().iter().zip(model.beta_forms()) {
                assert_eq!(form.eval(&x), beta_direct(v, &x), "{} {}", model.name(), v.label);
            }
        }
    }
}

#[test]
fn domain_inclusion_chain() {
    for model in all_models() {
        let domain = model.kss_domain().unwrap().domain;
        let lc = model.lc_polytope().unwrap();
        let simplex = Polytope::simplex(model.k());
        assert!(domain.vertices().iter().all(|v| lc.contains(v)), "{}", model.name());
        assert!(lc.vertices().iter().all(|v| simplex.contains(v)), "{}", model.name());
    }
}

#[test]
fn in_e_iff_mu_below_one() {
    for model in all_models() {
        let r = model.kss_domain().unwrap();
        let below = r.mu.as_ref().is_some_and(|m| *m < Rat::one());
        assert_eq!(r.in_e, below, "{}", model.name());
        if r.in_e {
            let witness = r
                .domain
                .vertices()
                .iter()
                .find(|v| v.sum() < Rat::one())
                .expect("a vertex with total below one");
            assert!(model.delta_at(witness).unwrap().status.is_semistable());
        }
    }
}

#[test]
fn interpolation_through_delta() {
    for model in all_models() {
        let domain = model.kss_domain().unwrap().domain;
        if domain.is_empty() {
            continue;
        }
        let mut rng = sampling::rng(9);
        for _ in 0..100 {
            let a = sampling::closed_combination(domain.vertices(), &mut rng, 10);
            let b = sampling::closed_combination(domain.vertices(), &mut rng, 10);
            let t = Rat::new(1.into(), 3.into());
            let c = a.lerp(&b, &t);
            assert!(domain.contains(&c));
            assert!(model.delta_at(&c).unwrap().status.is_semistable(), "{} at {c}", model.name());
        }
    }
}

#[test]
fn delta_tilde_caps_at_one() {
    for model in all_models() {
        let mut rng = sampling::rng(21);
        for _ in 0..30 {
            let x = sampling::simplex_point(model.k(), &mut rng, 20);
            let r = model.delta_at(&x).unwrap();
            if let (Some(d), Some(dt)) = (&r.delta, &r.delta_tilde) {
                assert_eq!(*dt, d.clone().min(Rat::one()));
                assert_eq!(r.status == kss_core::domains::Status::Kss, dt.is_one());
            }
        }
    }
}

#[test]
fn facets_come_from_recorded_constraints() {
    for model in all_models() {
        for (_, sources) in model.kss_domain().unwrap().facet_provenance {
            assert!(!sources.is_empty(), "{}", model.name());
        }
    }
}

#[test]
fn chamber_volumes_partition_the_simplex() {
    let families: [&[&str]; 5] = [
        &["model-a.json"],
        &["model-b.json", "model-c.json", "model-d.json", "model-t.json"],
        &["model-e.json"],
        &["model-a.json", "model-e.json"],
        &["model-c.json"],
    ];
    for names in families {
        let family: Vec<_> = names.iter().map(|n| load(n)).collect();
        let k = family_k(&family).unwrap();
        let complex = chamber_complex(&family).unwrap();
        assert_eq!(complex.total_volume(), Polytope::simplex(k).volume(), "{names:?}");
        for (i, a) in complex.chambers.iter().enumerate() {
            assert!(complex.chambers[i + 1..].iter().all(|b| {
                complex.walls.walls().iter().any(|w| {
                    let side = |p: &Polytope| p.vertices().iter().map(|v| w.eval(v)).collect::<Vec<_>>();
                    let (sa, sb) = (side(&a.closure), side(&b.closure));
                    let zero = Rat::from_integer(0.into());
                    (sa.iter().all(|x| *x >= zero) && sb.iter().all(|x| *x <= zero))
                        || (sa.iter().all(|x| *x <= zero) && sb.iter().all(|x| *x >= zero))
                })
            }));
        }
        for e in &complex.edges {
            let (a, b) = (&complex.chambers[e.a], &complex.chambers[e.b]);
            let differing = a.sign_vector.bytes().zip(b.sign_vector.bytes()).filter(|(x, y)| x != y).count();
            assert_eq!(differing, 1);
        }
        let samples: Vec<QVec> = complex.chambers.iter().map(|c| c.sample.clone()).collect();
        for (c, s) in complex.chambers.iter().zip(&samples) {
            assert!(complex.walls_through(s).is_empty());
            assert!(c.closure.contains(s));
        }
    }
}
