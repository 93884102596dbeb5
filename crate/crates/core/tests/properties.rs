use num_traits::{One, Zero};
use proptest::prelude::*;

use yb_core::chains::check_involution;
use yb_core::lax::{check_zero_curvature, moebius_p1};
use yb_core::quadgraph::{evolve_quad, table_e};
use yb_core::verify::check_unitarity;
use yb_core::{
    gamma_pair_from_slope, sample_rational, Delta, EdgeParam, FieldPoint, MapId, PathState, QuadData,
    QuadSystem, Rational, YbMap, YbPoint,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=30).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn delta() -> impl Strategy<Value = Delta> {
    prop_oneof![Just(Delta::Zero), Just(Delta::One)]
}

fn scalar_system() -> impl Strategy<Value = QuadSystem> {
    prop_oneof![
        Just(QuadSystem::E1),
        Just(QuadSystem::E2),
        Just(QuadSystem::E3),
        rational().prop_map(|epsilon| QuadSystem::E4 { epsilon }),
        delta().prop_map(|delta| QuadSystem::E5 { delta }),
    ]
}

fn param_for(system: &QuadSystem, slope: Rational) -> EdgeParam {
    match system {
        QuadSystem::E5 { delta } => gamma_pair_from_slope(&slope, *delta).unwrap().into(),
        _ => EdgeParam::plain(slope),
    }
}

fn two_field(v: Vec<Rational>) -> YbPoint {
    YbPoint::from(v)
}

#[test]
fn field_axioms_on_sampled_triples() {
    for i in 0..1000u64 {
        let a: Rational = sample_rational(5, 3 * i, 10);
        let b: Rational = sample_rational(5, 3 * i + 1, 10);
        let c: Rational = sample_rational(5, 3 * i + 2, 10);
        assert_eq!((&a + &b) + &c, &a + (&b + &c));
        assert_eq!((&a * &b) * &c, &a * (&b * &c));
        assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        assert!((&a + (-a.clone())).is_zero());
        if !a.is_zero() {
            assert!((&a * a.recip()).is_one());
        }
    }
}

proptest! {
    #[test]
    fn sampler_stays_in_bounds(seed in any::<u64>(), index in any::<u64>(), bound in 1u64..50) {
        let x: Rational = sample_rational(seed, index, bound);
        let b = i64::try_from(bound).unwrap();
        prop_assert!(x.numer().magnitude() <= &b.unsigned_abs().into());
        prop_assert!(x.denom() <= &b.into());
    }

    #[test]
    fn slope_pairs_satisfy_constraint(s in nonzero(), d in delta()) {
        let g = gamma_pair_from_slope(&s, d).unwrap();
        let lhs = g.gamma() * g.gamma() - g.beta() * g.beta();
        prop_assert_eq!(lhs, d.value::<Rational>());
    }

    #[test]
    fn equal_parameters_fix_the_square(
        system in scalar_system(),
        u in nonzero(), v in nonzero(), u1 in nonzero(), v2 in nonzero(),
        slope in nonzero(),
    ) {
        let b = param_for(&system, slope);
        let data = QuadData {
            f: FieldPoint::scalar(u.clone(), v.clone()),
            f1: FieldPoint::scalar(u1, Rational::one()),
            f2: FieldPoint::scalar(Rational::one(), v2),
            beta1: b.clone(),
            beta2: b,
        };
        if let Ok(f12) = evolve_quad(&system, &data) {
            prop_assert_eq!(f12, data.f);
        }
    }

    #[test]
    fn one_component_vector_system_is_e1(
        u in rational(), v in rational(), u1 in rational(), v2 in rational(),
        b1 in rational(), b2 in rational(),
    ) {
        let data = QuadData {
            f: FieldPoint::scalar(u, v),
            f1: FieldPoint::scalar(u1, Rational::zero()),
            f2: FieldPoint::scalar(Rational::zero(), v2),
            beta1: EdgeParam::plain(b1),
            beta2: EdgeParam::plain(b2),
        };
        let e1 = evolve_quad(&QuadSystem::E1, &data);
        let vnls = evolve_quad(&QuadSystem::Vnls { n: 1 }, &data);
        prop_assert_eq!(e1.is_ok(), vnls.is_ok());
        if let (Ok(a), Ok(b)) = (e1, vnls) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn table_function_degenerates_at_equal_parameters(
        system in scalar_system(), x in rational(), y in rational(), z in rational(), slope in nonzero(),
    ) {
        let b = param_for(&system, slope);
        if let Ok(e) = table_e(&system, &x, &y, &z, &b, &b) {
            prop_assert_eq!(e, x);
        }
    }

    #[test]
    fn flips_are_involutions(
        system in scalar_system(),
        values in proptest::collection::vec(nonzero(), 10),
        slopes in proptest::collection::vec(nonzero(), 4),
        k in 1usize..4,
    ) {
        let vertices = values.chunks(2).map(|c| FieldPoint::scalar(c[0].clone(), c[1].clone())).collect();
        let params = slopes.into_iter().map(|s| param_for(&system, s)).collect();
        let path = PathState::open(system, vertices, params).unwrap();
        if let Ok(ok) = check_involution(&path, k) {
            prop_assert!(ok);
        }
    }

    #[test]
    fn two_field_maps_are_unitary(
        which in 0usize..7,
        x in proptest::collection::vec(nonzero(), 2),
        y in proptest::collection::vec(nonzero(), 2),
        b1 in nonzero(), b2 in nonzero(),
    ) {
        let id = [
            MapId::E1Shaded,
            MapId::E1Blank,
            MapId::E2,
            MapId::E3,
            MapId::E4Generic { epsilon: Rational::new(7.into(), 3.into()) },
            MapId::E4Eps0Scaling,
            MapId::E4Eps0Joint,
        ][which].clone();
        let map = YbMap::new(id);
        let (b1, b2) = (EdgeParam::plain(b1), EdgeParam::plain(b2));
        if let Ok(ok) = check_unitarity(&map, &two_field(x), &two_field(y), &b1, &b2) {
            prop_assert!(ok);
        }
    }

    #[test]
    fn e1_images_have_zero_curvature(
        x in proptest::collection::vec(rational(), 2),
        y in proptest::collection::vec(rational(), 2),
        b1 in rational(), b2 in rational(),
    ) {
        let map = YbMap::new(MapId::E1Shaded);
        let (x, y) = (two_field(x), two_field(y));
        let img = map.apply(&x, &y, &EdgeParam::plain(b1.clone()), &EdgeParam::plain(b2.clone()));
        if let Ok(img) = img {
            prop_assert!(check_zero_curvature(&x, &y, &img.p, &img.q, &b1, &b2).unwrap());
            let p1 = moebius_p1(&x.0[0], &y.0[0], &y.0[1], &b1, &b2).unwrap();
            prop_assert_eq!(p1, img.p.0[0].clone());
        }
    }
}
