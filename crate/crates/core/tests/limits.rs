use iacpoly::counting::probability;
use iacpoly::geometry::{relative_volume, Polytope};
use iacpoly::integration::{
    leading_term_integral, limiting_probability, limiting_probability_by_volume,
};
use iacpoly::numerics::{parse_rational, Rational};
use iacpoly::recipe::{Preset, ProbabilityRecipe};
use iacpoly::reduction::runoff_reduced_system;
use num_traits::Signed;

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn limit(preset: Preset, m: usize) -> Rational {
    limiting_probability(&ProbabilityRecipe::preset(preset, m).unwrap()).unwrap()
}

#[test]
fn three_candidate_limits() {
    let cw = ProbabilityRecipe::preset(Preset::CondorcetWinner, 3).unwrap();
    let p = limiting_probability(&cw).unwrap();
    assert_eq!(p, q("5/16"));
    assert_eq!(cw.outputs_for(&p)[2].1, q("1/16"));

    let eff = ProbabilityRecipe::preset(Preset::CondorcetEfficiencyViolation, 3).unwrap();
    let p = limiting_probability(&eff).unwrap();
    assert_eq!(p, q("16/135"));
    assert_eq!(eff.outputs_for(&p)[1].1, q("119/135"));

    assert_eq!(limit(Preset::CondorcetEfficiency, 3), q("16/135"));
    assert_eq!(limit(Preset::RunoffReversal, 3), q("71/576"));
}

#[test]
fn four_candidate_condorcet_and_runoff_limits() {
    let cw = ProbabilityRecipe::preset(Preset::CondorcetWinner, 4).unwrap();
    let p = limiting_probability(&cw).unwrap();
    assert_eq!(cw.outputs_for(&p)[1].1, q("1717/2048"));
    assert_eq!(
        limit(Preset::RunoffReversal, 4),
        q("2988379676768359/12173449145352192")
    );
}

#[test]
fn unreduced_volumes_and_reduced_integrals_agree() {
    let cw = ProbabilityRecipe::preset(Preset::CondorcetWinner, 3).unwrap();
    assert_eq!(limiting_probability_by_volume(&cw).unwrap(), q("5/16"));
    let num = relative_volume(&Polytope::from_system(&cw.numerator));
    let den = relative_volume(&Polytope::from_system(&cw.denominator));
    assert_eq!(num, q("1/384"));
    assert_eq!(den, q("1/120"));
    // the unreduced volume is the leading coefficient of the count
    assert_eq!(leading_term_integral(&cw.reduced_numerator()).unwrap(), num);
    assert_eq!(
        leading_term_integral(&cw.reduced_denominator()).unwrap(),
        den
    );

    for preset in [Preset::CondorcetEfficiencyViolation, Preset::RunoffReversal] {
        let r = ProbabilityRecipe::preset(preset, 3).unwrap();
        assert_eq!(
            limiting_probability_by_volume(&r).unwrap(),
            limiting_probability(&r).unwrap(),
            "{preset}"
        );
    }
}

#[test]
fn finite_probabilities_approach_the_limit() {
    for preset in [
        Preset::CondorcetWinner,
        Preset::CondorcetEfficiencyViolation,
        Preset::RunoffReversal,
    ] {
        let r = ProbabilityRecipe::preset(preset, 3).unwrap();
        let lim = limiting_probability(&r).unwrap();
        let err = |n: u64| (probability(&r, n).unwrap() - &lim).abs();
        let (e60, e120) = (err(60), err(120));
        assert!(e120 < e60, "{preset}: {e60} then {e120}");
        let c = &e60 * Rational::from_integer(60.into());
        assert!(
            e120 * Rational::from_integer(120.into()) <= c * Rational::from_integer(2.into()),
            "{preset}"
        );
    }
}

#[test]
fn five_candidate_runoff_system_has_weight_degree_112() {
    let r = ProbabilityRecipe::preset(Preset::RunoffReversal, 5)
        .unwrap()
        .reduced_numerator();
    assert_eq!(r.dim(), 8);
    assert_eq!(r.weight.degree(), 112);
    let direct = runoff_reduced_system(5).unwrap();
    assert_eq!(direct.weight.degree(), 112);
    assert_eq!(direct.weight.sizes(), &[24, 24, 12, 12, 12, 12, 12, 12]);
}
