use iacpoly::geometry::{
    relative_volume, triangulate, triangulate_with_priority, vertex_enumeration,
    vertex_enumeration_by_subsets, Polytope, Simplex,
};
use iacpoly::integration::{
    integrate_monomial_simplex, integrate_monomial_simplex_expanded, integrate_over_simplices,
};
use iacpoly::numerics::{int, rat, Monomial, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_polytope(rng: &mut ChaCha8Rng) -> Polytope {
    loop {
        let dim = rng.gen_range(3..=5);
        let rows = (0..rng.gen_range(1..=3))
            .map(|_| (0..dim).map(|_| rng.gen_range(-3i64..=3)).collect())
            .collect();
        let p = Polytope::new(dim, rows).unwrap();
        if vertex_enumeration(&p).is_full_dimensional() {
            return p;
        }
    }
}

#[test]
fn triangulations_give_the_same_volume_and_integrals() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..20 {
        let p = random_polytope(&mut rng);
        let v = vertex_enumeration(&p);
        let mut expected = vertex_enumeration_by_subsets(&p);
        expected.sort();
        let mut found = v.vertices();
        found.sort();
        assert_eq!(found, expected, "case {case}");

        let monomial = Monomial::new((0..p.dim()).map(|_| rng.gen_range(0..=2)).collect(), int(1));
        let base = triangulate(&v).unwrap();
        let base_volume: Rational = base.iter().map(Simplex::relative_volume).sum();
        let base_integral = integrate_over_simplices(&base, &monomial).unwrap();
        assert_eq!(base_volume, relative_volume(&p));
        for _ in 0..3 {
            let mut priority: Vec<usize> = (0..v.len()).collect();
            priority.shuffle(&mut rng);
            let other = triangulate_with_priority(&v, &priority).unwrap();
            let volume: Rational = other.iter().map(Simplex::relative_volume).sum();
            assert_eq!(volume, base_volume, "case {case}");
            assert_eq!(
                integrate_over_simplices(&other, &monomial).unwrap(),
                base_integral,
                "case {case}"
            );
        }
    }
}

fn simplex(points: &[&[i64]]) -> Simplex {
    let points: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| p.iter().map(|&x| int(x)).collect())
        .collect();
    Simplex::from_points(&points).unwrap()
}

#[test]
fn dirichlet_spot_checks() {
    let s = simplex(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    assert_eq!(
        integrate_monomial_simplex(&s, &Monomial::new(vec![1, 1, 0], int(1))).unwrap(),
        rat(1, 24)
    );
    assert_eq!(
        integrate_monomial_simplex(&s, &Monomial::new(vec![2, 0, 0], int(1))).unwrap(),
        rat(1, 12)
    );
    assert_eq!(
        integrate_monomial_simplex(&s, &Monomial::new(vec![0, 0, 0], int(1))).unwrap(),
        rat(1, 2)
    );
}

fn arb_simplex() -> impl Strategy<Value = Simplex> {
    (2usize..=4).prop_flat_map(|d| {
        prop::collection::vec(prop::collection::vec(0i64..=4, d), d).prop_filter_map(
            "degenerate",
            |rows| {
                let rays = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(Into::into).collect())
                    .collect();
                Simplex::from_rays(rays).ok()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fast_integration_matches_expansion(s in arb_simplex(), exps in prop::collection::vec(0u32..=3, 4), c in 1i64..=5) {
        let m = Monomial::new(exps[..s.dim()].to_vec(), int(c));
        let fast = integrate_monomial_simplex(&s, &m).unwrap();
        prop_assert_eq!(&fast, &integrate_monomial_simplex_expanded(&s, &m).unwrap());
        prop_assert!(!fast.is_negative());
        let unit = Monomial::new(m.exponents.clone(), int(1));
        prop_assert_eq!(fast, integrate_monomial_simplex(&s, &unit).unwrap() * int(c));
    }

    #[test]
    fn splitting_a_simplex_adds_up(a in 1i64..=5, b in 1i64..=5) {
        let ray = |x: i64, y: i64| vec![x.into(), y.into()];
        let whole = Simplex::from_rays(vec![ray(1, 0), ray(0, 1)]).unwrap();
        let left = Simplex::from_rays(vec![ray(1, 0), ray(a, b)]).unwrap();
        let right = Simplex::from_rays(vec![ray(a, b), ray(0, 1)]).unwrap();
        let m = Monomial::new(vec![2, 1], int(1));
        let parts = integrate_monomial_simplex(&left, &m).unwrap() + integrate_monomial_simplex(&right, &m).unwrap();
        prop_assert_eq!(integrate_monomial_simplex(&whole, &m).unwrap(), parts);
        prop_assert!(!whole.relative_volume().is_zero());
    }
}
