use super::*;
use crate::coeff::rat_int;
use crate::parse::{parse_poly, print_poly};
use proptest::prelude::*;

fn xxz() -> Arc<AmbientSpec> {
    AmbientSpec::new(&["x1", "x2", "z"]).with_fiber("z")
}

fn p(text: &str) -> LaurentPoly {
    parse_poly(text, &xxz()).unwrap()
}

fn bigvec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn mul_identity_and_zero() {
    let f = p("x1 + x2 - 2");
    assert_eq!(f.mul(&LaurentPoly::one(&xxz())), f);
    assert!(f.mul(&LaurentPoly::zero(&xxz())).is_zero());
}

#[test]
fn mul_difference_of_squares() {
    let left = p("z - x1*x2");
    let right = p("z + x1*x2");
    assert_eq!(left.mul(&right), p("z^2 - x1^2*x2^2"));
}

#[test]
fn mul_ambient_mismatch_errors() {
    let f = p("x1 + x2 - 2");
    let other = LaurentPoly::one(&AmbientSpec::new(&["y"]));
    assert!(matches!(
        f.try_mul(&other),
        Err(LaurentError::AmbientMismatch(_, _))
    ));
}

#[test]
fn pullback_general_matrix_shape() {
    // F(x^M) = x1^m11*x2^m12 + x1^m21*x2^m22 - 2
    let f = p("x1 + x2 - 2");
    let m = IntMatrix::from_rows(&[vec![3, -1], vec![2, 5]]);
    let image = f.monomial_pullback(&m).unwrap();
    let expected = LaurentPoly::from_terms(
        &xxz(),
        vec![
            (ExpVec::from_ints(&[3, -1, 0]), Coefficient::one()),
            (ExpVec::from_ints(&[2, 5, 0]), Coefficient::one()),
            (ExpVec::from_ints(&[0, 0, 0]), Coefficient::from_int(-2)),
        ],
    );
    assert_eq!(image, expected);
}

#[test]
fn pullback_squares_first_coordinate() {
    let f = p("z^2 - x1*x2^2");
    let a = IntMatrix::diagonal(&[2, 1]);
    assert_eq!(f.monomial_pullback(&a).unwrap(), p("z^2 - x1^2*x2^2"));
    let id = IntMatrix::identity(2);
    assert_eq!(f.monomial_pullback(&id).unwrap(), f);
}

#[test]
fn pullback_dimension_mismatch() {
    let f = p("z^2 - x1*x2^2");
    assert!(matches!(
        f.monomial_pullback(&IntMatrix::identity(3)),
        Err(LaurentError::DimensionMismatch(_))
    ));
}

#[test]
fn specialize_line_examples() {
    let f = p("z^2 - x1*x2^2");
    let image = f.specialize_line(&bigvec(&[2, 1])).unwrap();
    assert_eq!(print_poly(&image), "z^2 - t^4");

    let g = p("x1 + x2 - 2");
    let image = g.specialize_line(&bigvec(&[1, 1])).unwrap();
    assert_eq!(print_poly(&image), "2*t - 2");

    let h = p("x1 + z*x2 - z - 1");
    let image = h.specialize_line(&bigvec(&[1, 1])).unwrap();
    // t + z*t - z - 1, canonically ordered with the fiber power leading
    assert_eq!(print_poly(&image), "t*z - z + t - 1");
}

#[test]
fn is_unit_depends_on_the_mode() {
    let tz = AmbientSpec::new(&["t", "z"]).with_fiber("z").with_line("t");
    let qt_z = tz.with_field("t"); // Q(t)[z^±1]
    let qz_t = tz.with_field("z"); // Q(z)[t^±1]

    let f = parse_poly("3*t^5", &tz).unwrap();
    assert!(f.is_unit(&qt_z));

    let tm1 = parse_poly("t - 1", &tz).unwrap();
    assert!(tm1.is_unit(&qt_z));
    assert!(!tm1.is_unit(&qz_t));

    let g = parse_poly("1 + z", &tz).unwrap();
    assert!(g.is_unit(&qz_t));
    assert!(!g.is_unit(&qt_z));

    let h = parse_poly("z - t", &tz).unwrap();
    assert!(!h.is_unit(&qt_z));
    assert!(!h.is_unit(&qz_t));
}

#[test]
fn degree_ranges() {
    let f = p("z^2 - x1*x2^2");
    assert_eq!(
        f.degree_in("z").unwrap(),
        (BigInt::from(0), BigInt::from(2))
    );
    let tz = AmbientSpec::new(&["t"]);
    let g = parse_poly("t^-1 + t^3", &tz).unwrap();
    assert_eq!(
        g.degree_in("t").unwrap(),
        (BigInt::from(-1), BigInt::from(3))
    );
    let h = p("x1 + x2 - 2");
    assert_eq!(h.degree_in("z").unwrap(), (BigInt::zero(), BigInt::zero()));
    assert!(matches!(
        LaurentPoly::zero(&xxz()).degree_in("z"),
        Err(LaurentError::ZeroPolynomial)
    ));
}

#[test]
fn leading_fiber_coefficient() {
    assert_eq!(
        p("z^2 - x1*x2^2").leading_coeff_in_fiber().unwrap(),
        LaurentPoly::one(&xxz())
    );
    assert_eq!(
        p("x1*z^3 + z").leading_coeff_in_fiber().unwrap(),
        p("x1")
    );
    assert_eq!(
        p("(x1 + x2)*z - 1").leading_coeff_in_fiber().unwrap(),
        p("x1 + x2")
    );
    // constant fiber exponent means no genuine fiber dependence
    assert!(p("x1 + x2 - 2").leading_coeff_in_fiber().is_err());
}

#[test]
fn exponent_normalization() {
    let tz = AmbientSpec::new(&["t", "z"]);
    let f = parse_poly("t^-2*z + t^3", &tz).unwrap();
    let (shift, normalized) = f.normalize_exponents();
    assert_eq!(shift, ExpVec::from_ints(&[-2, 0]));
    assert_eq!(normalized, parse_poly("z + t^5", &tz).unwrap());
    assert_eq!(normalized.mul_monomial(&shift), f);
}

fn arb_poly(ambient: Arc<AmbientSpec>) -> impl Strategy<Value = LaurentPoly> {
    let dim = ambient.dim();
    prop::collection::vec(
        (
            prop::collection::vec(-3i64..=3, dim),
            -5i64..=5,
        ),
        0..5,
    )
    .prop_map(move |terms| {
        LaurentPoly::from_terms(
            &ambient,
            terms.into_iter().map(|(exp, c)| {
                (
                    ExpVec::from_ints(&exp),
                    Coefficient::Rat(rat_int(c)),
                )
            }),
        )
    })
}

fn arb_square_matrix() -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-3i64..=3, 4).prop_map(|v| {
        IntMatrix::from_rows(&[vec![v[0], v[1]], vec![v[2], v[3]]])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pullback_is_a_ring_homomorphism(
        f in arb_poly(xxz()),
        g in arb_poly(xxz()),
        m in arb_square_matrix(),
    ) {
        let pb = |p: &LaurentPoly| p.monomial_pullback(&m).unwrap();
        prop_assert_eq!(pb(&f.mul(&g)), pb(&f).mul(&pb(&g)));
        prop_assert_eq!(pb(&f.add(&g)), pb(&f).add(&pb(&g)));
    }

    #[test]
    fn pullback_composes_functorially(
        f in arb_poly(xxz()),
        a in arb_square_matrix(),
        b in arb_square_matrix(),
    ) {
        let lhs = f.monomial_pullback(&a).unwrap().monomial_pullback(&b).unwrap();
        let rhs = f.monomial_pullback(&a.mul(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialization_commutes_with_pullback(
        f in arb_poly(xxz()),
        m in arb_square_matrix(),
        b in prop::collection::vec(-3i64..=3, 2),
    ) {
        let bv = bigvec(&b);
        let mb = m.mul_vec(&bv);
        let lhs = f.specialize_line(&mb).unwrap();
        let rhs = f.monomial_pullback(&m).unwrap().specialize_line(&bv).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn arithmetic_results_stay_normalized(f in arb_poly(xxz()), g in arb_poly(xxz())) {
        // no zero coefficients survive any operation
        for (_, c) in f.mul(&g).terms() {
            prop_assert!(!c.is_zero());
        }
        for (_, c) in f.add(&g).terms() {
            prop_assert!(!c.is_zero());
        }
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn divexact_inverts_multiplication(f in arb_poly(xxz()), g in arb_poly(xxz())) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let prod = f.mul(&g);
        let q = prod.divexact(&g).expect("constructed divisor divides");
        prop_assert_eq!(q, f);
    }
}
