use super::*;
use crate::coeff::{rat, CycNum, Coefficient};
use crate::factor::factor_in_ambient;
use crate::lattice::{IntMatrix, TorsionPoint};
use crate::laurent::{AmbientSpec, ExpVec, LaurentPoly};
use crate::parse::{parse_poly, print_poly};
use num_bigint::BigInt;
use std::sync::Arc;

fn xxz() -> Arc<AmbientSpec> {
    AmbientSpec::new(&["x1", "x2", "z"]).with_fiber("z")
}

fn tz() -> Arc<AmbientSpec> {
    AmbientSpec::new(&["t", "z"]).with_fiber("z").with_line("t")
}

fn p(text: &str, ambient: &Arc<AmbientSpec>) -> LaurentPoly {
    parse_poly(text, ambient).unwrap()
}

fn bigvec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn delta_set_examples() {
    // single-term leading coefficient: empty set
    let f = p("z^2 - x1*x2^2", &xxz());
    assert!(delta_set(&f).unwrap().vectors.is_empty());

    let f = p("(x1 + x2)*z - 1", &xxz());
    assert_eq!(delta_set(&f).unwrap().vectors, vec![bigvec(&[1, -1])]);

    let f = p("(x1 + x2 + x1*x2)*z - 1", &xxz());
    assert_eq!(
        delta_set(&f).unwrap().vectors,
        vec![bigvec(&[0, 1]), bigvec(&[1, -1]), bigvec(&[1, 0])]
    );
}

#[test]
fn delta_set_predicts_degree_preservation() {
    let f = p("(x1 + x2)*z - 1", &xxz());
    let ds = delta_set(&f).unwrap();
    // <(1,-1),(1,1)> = 0: top coefficient collapses at a = (1,1)
    assert!(!ds.degree_preserved_at(&bigvec(&[1, 1])));
    assert!(ds.degree_preserved_at(&bigvec(&[2, 1])));
    let image = f.specialize_line(&bigvec(&[2, 1])).unwrap();
    assert_eq!(
        image.degree_in("z").unwrap().1,
        f.degree_in("z").unwrap().1
    );
}

#[test]
fn specialize_and_factor_splits_even_directions() {
    let f = p("z^2 - x1*x2^2", &xxz());
    let fac = specialize_and_factor(&f, &bigvec(&[2, 1])).unwrap();
    assert_eq!(fac.display(), "(z - t^2) * (z + t^2)");

    let fac = specialize_and_factor(&f, &bigvec(&[1, 1])).unwrap();
    assert!(fac.is_irreducible());
    assert_eq!(print_poly(&fac.factors()[0].0), "z^2 - t^3");
}

#[test]
fn specialize_and_factor_without_fiber() {
    let g = p("x1 + x2 - 2", &AmbientSpec::new(&["x1", "x2"]));
    let fac = specialize_and_factor(&g, &bigvec(&[1, 1])).unwrap();
    assert_eq!(fac.display(), "2 * (t - 1)");
}

#[test]
fn specialize_and_factor_zero_collapse() {
    let f = p("x1 - x2", &AmbientSpec::new(&["x1", "x2"]));
    let err = specialize_and_factor(&f, &bigvec(&[1, 1])).unwrap_err();
    match err {
        ToricError::ZeroSpecialization { collisions } => {
            assert_eq!(collisions.len(), 1);
        }
        other => panic!("expected zero-specialization error, got {other}"),
    }
}

#[test]
fn gcd_reduction_examples() {
    let f = p("z^2 - t", &tz());
    assert_eq!(
        gcd_reduction_check(&f, 4).unwrap(),
        GcdReductionOutcome::Witness(2)
    );
    assert_eq!(
        gcd_reduction_check(&f, 3).unwrap(),
        GcdReductionOutcome::SpecializationIrreducible
    );
    let g = p("z - t", &tz());
    for m in 1..=6 {
        assert_eq!(
            gcd_reduction_check(&g, m).unwrap(),
            GcdReductionOutcome::SpecializationIrreducible
        );
    }
    // reducible input violates the precondition
    let bad = p("z^2 - t^2", &tz());
    assert!(matches!(
        gcd_reduction_check(&bad, 2),
        Err(ToricError::Precondition(_))
    ));
}

#[test]
fn gcd_reduction_witness_divides() {
    // z^3 - 8 t^3 splits already at e = 1? No: precondition needs an
    // irreducible input, so use z^2 - 2t with m = 2: (z^2 - 2t^2) splits? No
    // (sqrt 2). Use z^2 - 4t: at m = 2, z^2 - 4t^2 = (z-2t)(z+2t).
    let f = p("z^2 - 4*t", &tz());
    assert_eq!(
        gcd_reduction_check(&f, 2).unwrap(),
        GcdReductionOutcome::Witness(2)
    );
    assert_eq!(
        gcd_reduction_check(&f, 6).unwrap(),
        GcdReductionOutcome::Witness(2)
    );
}

#[test]
fn factor_multivariate_handles_three_live_variables() {
    let f = p("z^2 - x1*x2^2", &xxz());
    let fac = factor_multivariate(&f).unwrap();
    assert!(fac.is_irreducible());

    let g = p("z^2 - x1^2*x2^2", &xxz());
    let fac = factor_multivariate(&g).unwrap();
    assert_eq!(fac.display(), "(z - x1*x2) * (z + x1*x2)");
    assert_eq!(fac.product(), g);

    let h = p("x1 + z*x2 - z - 1", &xxz());
    let fac = factor_multivariate(&h).unwrap();
    assert!(fac.is_irreducible());
}

#[test]
fn factor_multivariate_reconstructs_products() {
    let amb = xxz();
    let f = p("(z - x1*x2) * (z + x1*x2) * (x1 + x2 - 2)", &amb);
    let fac = factor_multivariate(&f).unwrap();
    assert_eq!(fac.factors().len(), 3);
    assert_eq!(fac.product(), f);
}

#[test]
fn kernel_action_swaps_the_split_factors() {
    let f = p("z^2 - x1*x2^2", &xxz());
    let l = IntMatrix::diagonal(&[2, 1]);
    let orbits = kernel_action_orbits(&f, &l, None).unwrap();
    assert_eq!(orbits.factors.len(), 2);
    assert_eq!(orbits.kernel.len(), 2);
    assert_eq!(orbits.orbits, vec![vec![0, 1]]);
    // the stabilizer of the first factor is trivial
    assert_eq!(orbits.stabilizer.len(), 1);
    assert!(orbits.stabilizer[0].is_identity());
}

#[test]
fn kernel_action_trivial_on_irreducible_pullback() {
    let f = p("z - t", &tz());
    let l = IntMatrix::from_rows(&[vec![2]]);
    let orbits = kernel_action_orbits(&f, &l, None).unwrap();
    assert_eq!(orbits.factors.len(), 1);
    assert_eq!(orbits.orbits, vec![vec![0]]);
    // full kernel stabilizes the single factor
    assert_eq!(orbits.stabilizer.len(), orbits.kernel.len());
}

#[test]
fn kernel_action_with_supplied_cyclotomic_factors() {
    // z^3 - t pulled back along t -> t^3 splits over Q(zeta_3) into
    // z - zeta^j t; the order-3 kernel acts transitively.
    let amb = tz();
    let f = p("z^3 - t", &amb);
    let l = IntMatrix::from_rows(&[vec![3]]);
    let factors: Vec<LaurentPoly> = (0..3)
        .map(|j| {
            LaurentPoly::from_terms(
                &amb,
                vec![
                    (ExpVec::from_ints(&[0, 1]), Coefficient::one()),
                    (
                        ExpVec::from_ints(&[1, 0]),
                        Coefficient::Cyc(CycNum::root_of_unity(3, j)).neg(),
                    ),
                ],
            )
        })
        .collect();
    let orbits = kernel_action_orbits(&f, &l, Some(factors)).unwrap();
    assert_eq!(orbits.orbits, vec![vec![0, 1, 2]]);
    assert_eq!(orbits.stabilizer.len(), 1);

    // the orbit product is fixed by every kernel element
    let mut prod = LaurentPoly::one(&amb);
    for g in &orbits.factors {
        prod = prod.mul(g);
    }
    for zeta in &orbits.kernel {
        assert_eq!(twist_by(&prod, zeta).unwrap(), prod);
    }
}

#[test]
fn kernel_action_rejects_wrong_supplied_list() {
    let f = p("z^3 - t", &tz());
    let l = IntMatrix::from_rows(&[vec![3]]);
    let wrong = vec![p("z - t", &tz())];
    assert!(matches!(
        kernel_action_orbits(&f, &l, Some(wrong)),
        Err(ToricError::Precondition(_))
    ));
}

#[test]
fn bertini_alternative_examples() {
    let f = p("z^2 - x1*x2^2", &xxz());
    let phi = vec![IntMatrix::diagonal(&[2, 1])];

    let out = bertini_alternative(&f, &bigvec(&[2, 3]), &[], &phi).unwrap();
    assert_eq!(
        out,
        BertiniOutcome::PullbackReducible {
            witness: IntMatrix::diagonal(&[2, 1])
        }
    );

    let out = bertini_alternative(&f, &bigvec(&[1, 1]), &[], &phi).unwrap();
    assert_eq!(out, BertiniOutcome::Irreducible);

    let sigma = vec![bigvec(&[1, -1])];
    let out = bertini_alternative(&f, &bigvec(&[2, 2]), &sigma, &phi).unwrap();
    assert_eq!(
        out,
        BertiniOutcome::SigmaHit {
            witness: bigvec(&[1, -1])
        }
    );

    // reducible input violates the precondition
    let g = p("z^2 - x1^2*x2^2", &xxz());
    assert!(matches!(
        bertini_alternative(&g, &bigvec(&[1, 1]), &[], &[]),
        Err(ToricError::Precondition(_))
    ));
}

#[test]
fn bertini_alternatives_cover_a_box_after_calibration() {
    // with sigma from the degree-drop set and phi from the observed
    // reducible pullback, every direction in a small box lands in exactly
    // one alternative
    let f = p("z^2 - x1*x2^2", &xxz());
    let phi = vec![IntMatrix::diagonal(&[2, 1])];
    for a1 in -4i64..=4 {
        for a2 in -4i64..=4 {
            if (a1, a2) == (0, 0) {
                continue;
            }
            let a = bigvec(&[a1, a2]);
            let out = bertini_alternative(&f, &a, &[], &phi).unwrap();
            if a1 % 2 == 0 {
                assert_eq!(
                    out,
                    BertiniOutcome::PullbackReducible {
                        witness: IntMatrix::diagonal(&[2, 1])
                    },
                    "a = ({a1},{a2})"
                );
            } else {
                assert_eq!(out, BertiniOutcome::Irreducible, "a = ({a1},{a2})");
            }
        }
    }
}

#[test]
fn candidate_enumeration_is_canonical() {
    let cs = hnf_candidates(2, 2);
    assert_eq!(
        cs,
        vec![
            IntMatrix::identity(2),
            IntMatrix::diagonal(&[1, 2]),
            IntMatrix::from_rows(&[vec![1, 0], vec![1, 2]]),
            IntMatrix::diagonal(&[2, 1]),
        ]
    );
    // sum of divisor counts up to the bound
    assert_eq!(hnf_candidates(2, 6).len(), 1 + 3 + 4 + 7 + 6 + 12);
    // all candidates have distinct column images
    let cs = hnf_candidates(2, 4);
    for (i, a) in cs.iter().enumerate() {
        for b in cs.iter().skip(i + 1) {
            assert_ne!(
                crate::lattice::Lattice::column_image(a),
                crate::lattice::Lattice::column_image(b)
            );
        }
    }
}

#[test]
fn omega_certificate_even_direction() {
    let f = p("z^2 - x1*x2^2", &xxz());
    let out = omega_certificate(&f, &bigvec(&[2, 3]), 2);
    let cert = out.certificate().expect("certificate found");
    assert_eq!(cert.matrix, IntMatrix::diagonal(&[2, 1]));
    assert_eq!(cert.b, bigvec(&[1, 3]));
    assert_eq!(cert.pairs.len(), 2);
    for pair in &cert.pairs {
        assert_eq!(pair.status, ImageStatus::Irreducible);
    }
    let images: Vec<String> = cert.pairs.iter().map(|p| print_poly(&p.image)).collect();
    assert_eq!(images, vec!["z - t^4", "z + t^4"]);
}

#[test]
fn omega_certificate_odd_direction_uses_identity() {
    let f = p("z^2 - x1*x2^2", &xxz());
    let out = omega_certificate(&f, &bigvec(&[1, 1]), 2);
    let cert = out.certificate().expect("certificate found");
    assert_eq!(cert.matrix, IntMatrix::identity(2));
    assert_eq!(cert.b, bigvec(&[1, 1]));
    assert_eq!(cert.pairs.len(), 1);
    assert_eq!(cert.pairs[0].status, ImageStatus::Irreducible);
}

#[test]
fn omega_certificate_zero_specialization_is_a_failure_value() {
    let f = p("x1 - x2", &AmbientSpec::new(&["x1", "x2"]));
    let out = omega_certificate(&f, &bigvec(&[1, 1]), 2);
    match out {
        CertificateOutcome::Failed(failure) => {
            assert!(failure.reason.contains("zero"), "{}", failure.reason);
        }
        CertificateOutcome::Found(_) => panic!("expected a failure report"),
    }
}

#[test]
fn schinzel_check_function_field_mode() {
    let amb = AmbientSpec::new(&["x1", "x2", "z"]).with_field("z");
    let f = p("x1 + z*x2 - z - 1", &amb);
    let report = schinzel_ff_check(&f, &bigvec(&[1, 1])).unwrap();
    assert_eq!(report.status, ResidualStatus::UnitResidual);
    assert_eq!(print_poly(&report.stripped), "t - 1");

    // different exponents: residual genuinely bivariate and irreducible
    let report = schinzel_ff_check(&f, &bigvec(&[2, 1])).unwrap();
    assert_eq!(report.status, ResidualStatus::IrreducibleResidual);
}

#[test]
fn schinzel_check_cyclotomic_mode() {
    let amb = AmbientSpec::new(&["x1", "x2"]);
    let f = p("x1 + x2 - 2", &amb);
    let report = schinzel_ff_check(&f, &bigvec(&[1, 1])).unwrap();
    assert_eq!(report.status, ResidualStatus::UnitResidual);
    assert_eq!(print_poly(&report.stripped), "t - 1");
}

#[test]
fn schinzel_check_irreducible_residual() {
    let amb = AmbientSpec::new(&["x1", "z"]).with_field("z");
    let f = p("z*x1 - 2", &amb);
    let report = schinzel_ff_check(&f, &bigvec(&[3])).unwrap();
    assert_eq!(report.status, ResidualStatus::IrreducibleResidual);
    assert_eq!(print_poly(&report.residual), "t^3*z - 2");
}

#[test]
fn schinzel_check_rejects_constant_input() {
    let amb = AmbientSpec::new(&["x1", "x2", "z"]).with_field("z");
    let f = p("x1 - x2", &amb);
    assert!(matches!(
        schinzel_ff_check(&f, &bigvec(&[1, 2])),
        Err(ToricError::Precondition(_))
    ));
}

#[test]
fn twist_preserves_the_pullback() {
    // the pullback is invariant under every kernel element
    let f = p("z^2 - x1*x2^2", &xxz());
    let l = IntMatrix::diagonal(&[2, 2]);
    let g = f.monomial_pullback(&l).unwrap();
    for zeta in crate::lattice::kernel_elements(&l).unwrap() {
        assert_eq!(twist_by(&g, &zeta).unwrap(), g);
    }
}

#[test]
fn twist_rejects_dimension_mismatch() {
    let f = p("z^2 - x1*x2^2", &xxz());
    let zeta = TorsionPoint::new(vec![rat(1, 2)]);
    assert!(matches!(
        twist_by(&f, &zeta),
        Err(ToricError::Precondition(_))
    ));
}
