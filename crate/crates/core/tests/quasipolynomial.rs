use iacpoly::counting::{
    count_points, fit_smallest_period, interpolate_quasipolynomial, weighted_count, TRIAL_PERIODS,
};
use iacpoly::numerics::{int, parse_rational, QuasiPolynomial, Rational};
use iacpoly::recipe::{Preset, ProbabilityRecipe};

const REFERENCE: &str = "   1/384 * n^5
 + ( 1/64 * { 1/2 * n } + 1/32 ) * n^4
 + ( 17/96 * { 1/2 * n } + 13/96 ) * n^3
 + ( 23/32 * { 1/2 * n } + 1/4 ) * n^2
 + ( 233/192 * { 1/2 * n } + 1/6 ) * n
 + ( 45/64 * { 1/2 * n } + 0 )";

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

/// The reference fractional-part form as per-degree `[constant, coefficient of {n/2}]` pairs.
fn reference_block() -> QuasiPolynomial {
    let coeffs = vec![
        vec![q("0"), q("45/64")],
        vec![q("1/6"), q("233/192")],
        vec![q("1/4"), q("23/32")],
        vec![q("13/96"), q("17/96")],
        vec![q("1/32"), q("1/64")],
        vec![q("1/384"), q("0")],
    ];
    QuasiPolynomial::from_fractional_coefficients(2, &coeffs)
}

fn sampler(preset: Preset) -> impl Fn(u64) -> Rational + Sync {
    let reduced = ProbabilityRecipe::preset(preset, 3)
        .unwrap()
        .reduced_numerator();
    move |n| Rational::from_integer(weighted_count(&reduced, n).into())
}

#[test]
fn condorcet_winner_quasipolynomial_matches_reference_block() {
    let fitted = fit_smallest_period(5, &TRIAL_PERIODS, sampler(Preset::CondorcetWinner)).unwrap();
    assert_eq!(fitted.period(), 2);
    assert_eq!(fitted, reference_block());
    assert_eq!(fitted.fractional_part_form(), REFERENCE);
    assert_eq!(fitted.for_residue(0).leading_coefficient(), q("1/384"));
    assert_eq!(fitted.for_residue(1).coeff(0), q("45/128"));
    assert_eq!(fitted.eval(0), int(0));
    assert_eq!(fitted.eval(1), int(2));
    assert_eq!(fitted.eval(2), int(3));
}

#[test]
fn reference_block_predicts_fresh_counts() {
    let block = reference_block();
    let cw = ProbabilityRecipe::preset(Preset::CondorcetWinner, 3)
        .unwrap()
        .numerator;
    for n in [21, 22, 33, 40, 41, 57, 64, 71, 80, 99] {
        assert_eq!(
            block.eval(n),
            Rational::from_integer(count_points(&cw, n).into()),
            "n = {n}"
        );
    }
}

#[test]
fn leading_coefficients_agree_across_residues() {
    for (preset, period) in [
        (Preset::CondorcetEfficiencyViolation, 6),
        (Preset::RunoffReversal, 12),
    ] {
        let fitted = interpolate_quasipolynomial(5, period, sampler(preset)).unwrap();
        let lead = fitted.leading_coefficients();
        assert!(lead.windows(2).all(|w| w[0] == w[1]), "{preset}: {lead:?}");
    }
}

#[test]
fn runoff_quasipolynomial_needs_period_twelve() {
    let fitted = fit_smallest_period(5, &TRIAL_PERIODS, sampler(Preset::RunoffReversal)).unwrap();
    assert_eq!(fitted.period(), 12);
    assert_eq!(
        &fitted.leading_coefficients()[0] * int(6 * 120),
        q("71/576")
    );
    let sample = sampler(Preset::RunoffReversal);
    for n in [100, 101, 111, 130] {
        assert_eq!(fitted.eval(n), sample(n), "n = {n}");
    }
}

#[test]
fn too_small_a_period_is_rejected() {
    assert!(interpolate_quasipolynomial(5, 1, sampler(Preset::CondorcetWinner)).is_err());
}
