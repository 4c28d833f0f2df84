//! Cross-module convention checks that don't belong to a single unit.

use sadic::bigfloat::BigFloat;
use sadic::directive::DirectiveSequence;
use sadic::dynamics::SplitMix64;
use sadic::mcf::{CellLabel, MCFAlgorithm};
use sadic::rauzy::{cloud, CloudOptions};
use sadic::simplex::SimplexPoint;
use sadic::substitution::{cs_tau, d_bonacci};

#[test]
fn jp_float_mode_branch_matches_rational() {
    // the float-mode digit floor re-verifies a·x₁ ≤ x₂ < (a+1)·x₁ with
    // exact products; both modes must agree on the same underlying point
    let jp = MCFAlgorithm::jacobi_perron();
    let mut rng = SplitMix64::new(77);
    let mut done = 0;
    while done < 200 {
        let v = rng.next_simplex(3);
        let exact = SimplexPoint::from_rationals_normalized(
            v.iter()
                .map(|&c| {
                    num_rational::BigRational::new(
                        num_bigint::BigInt::from((c * (1u64 << 50) as f64) as i64 + 1),
                        num_bigint::BigInt::from(1u64 << 50),
                    )
                })
                .collect(),
        )
        .unwrap();
        let float_pt = SimplexPoint::from_bigfloats_normalized(
            exact
                .rational_coords()
                .unwrap()
                .iter()
                .map(|q| BigFloat::from_rational(q, 256))
                .collect(),
        )
        .unwrap();
        match (jp.branch(&exact), jp.branch(&float_pt)) {
            (Ok(a), Ok(b)) => {
                assert_eq!(a, b);
                done += 1;
            }
            (Err(_), Err(_)) => {}
            (a, b) => panic!("modes disagree: {a:?} vs {b:?}"),
        }
    }
}

#[test]
fn float_mode_expansion_of_periodic_point() {
    // the Perron eigenvector of M_tau expands with period [1,2] in float mode
    let seq = DirectiveSequence::periodic(vec![
        sadic::substitution::gamma1(),
        sadic::substitution::gamma2(),
    ])
    .unwrap();
    let eig =
        sadic::rauzy::right_eigenvector(&seq, sadic::rauzy::EigenvectorMode::Periodic, 1e-40, 256)
            .unwrap();
    let cs = MCFAlgorithm::cassaigne_selmer();
    let rec = cs.expand(&eig.point, 4);
    assert_eq!(
        rec.cells,
        vec![
            CellLabel::Cs(1),
            CellLabel::Cs(2),
            CellLabel::Cs(1),
            CellLabel::Cs(2)
        ]
    );
}

#[test]
fn convergence_errors_at_level_zero() {
    // e_i^(0) = ‖e_i − x‖₂ since the empty product is the identity
    let cs = MCFAlgorithm::cassaigne_selmer();
    let x = SimplexPoint::parse("2/5,1/4,7/20", 192).unwrap();
    let rec = cs.expand(&x, 0);
    assert!(rec.cells.is_empty());
    let errs = rec.convergence_errors();
    let xf = x.to_f64_vec();
    for i in 0..3 {
        let mut want = 0.0;
        for (k, &xk) in xf.iter().enumerate() {
            let d = if k == i { 1.0 - xk } else { -xk };
            want += d * d;
        }
        assert!((errs.strong[0][i] - want.sqrt()).abs() < 1e-12);
    }
}

#[test]
fn mixed_regime_sequence_renders() {
    // an explicit prefix of one substitution followed by a different
    // periodic tail still produces a well-formed tagged cloud
    let seq = DirectiveSequence::explicit(vec![cs_tau(); 8], vec![d_bonacci(3)]).unwrap();
    let c = cloud(&seq, 16, 1, &CloudOptions::default()).unwrap();
    assert!(c.points.len() > 500);
    let fr = c.letter_fractions();
    assert!(fr.iter().all(|&f| f > 0.0));
    let raster = sadic::rauzy::raster_tiling_check(&c, 2, 64).unwrap();
    assert!(raster.coverage_fraction > 0.5);
}
