use super::*;
use crate::parse::parse_poly;

fn tz_plain() -> Arc<AmbientSpec> {
    AmbientSpec::new(&["t", "z"]).with_fiber("z").with_line("t")
}

fn qt_z() -> Arc<AmbientSpec> {
    tz_plain().with_field("t")
}

fn qz_t() -> Arc<AmbientSpec> {
    tz_plain().with_field("z")
}

fn p(text: &str, ambient: &Arc<AmbientSpec>) -> LaurentPoly {
    parse_poly(text, ambient).unwrap()
}

#[test]
fn difference_of_squares_in_qt() {
    let f = p("z^2 - t^2", &qt_z());
    let fac = factor_in_ambient(&f).unwrap();
    assert_eq!(fac.display(), "(z - t) * (z + t)");
    assert!(fac.unit().is_one());
    assert_eq!(fac.product(), f);
}

#[test]
fn z2_minus_t_is_irreducible() {
    // any split would need z ± t^(1/2); the engine confirms via lifting
    let f = p("z^2 - t", &qt_z());
    let fac = factor_in_ambient(&f).unwrap();
    assert!(fac.is_irreducible());
    // re-factoring each factor returns itself
    for (g, _) in fac.factors() {
        let again = factor_in_ambient(g).unwrap();
        assert!(again.is_irreducible());
        assert_eq!(&again.factors()[0].0, g);
    }
}

#[test]
fn mode_decides_what_is_a_unit() {
    // t + z*t - z - 1 = (t - 1)(z + 1)
    let plain = p("t + z*t - z - 1", &tz_plain());
    let fac = factor_in_ambient(&plain).unwrap();
    assert_eq!(fac.factors().len(), 2, "both factors are genuine here");

    let in_qt = plain.with_ambient(&qt_z());
    let fac = factor_in_ambient(&in_qt).unwrap();
    assert_eq!(fac.factors().len(), 1);
    assert_eq!(crate::parse::print_poly(&fac.factors()[0].0), "z + 1");

    let in_qz = plain.with_ambient(&qz_t());
    let fac = factor_in_ambient(&in_qz).unwrap();
    assert_eq!(fac.factors().len(), 1);
    assert_eq!(crate::parse::print_poly(&fac.factors()[0].0), "t - 1");
    assert_eq!(crate::parse::print_poly(fac.unit()), "z + 1");
}

#[test]
fn laurent_units_are_restored() {
    let f = p("z^2 - t^-3", &qt_z());
    let fac = factor_in_ambient(&f).unwrap();
    assert_eq!(fac.product(), f);
    assert!(fac.is_irreducible());

    let g = p("z^3 - z*t^2", &qt_z());
    // z(z - t)(z + t); the monomial z is a unit in Q(t)[z^±1]
    let fac = factor_in_ambient(&g).unwrap();
    assert_eq!(fac.factors().len(), 2);
    assert_eq!(fac.product(), g);
}

#[test]
fn multiplicities_are_tracked() {
    let f = p("(z - t)^2 * (z + t)", &qt_z());
    let fac = factor_in_ambient(&f).unwrap();
    let mults: Vec<u32> = fac.factors().iter().map(|(_, m)| *m).collect();
    assert_eq!(mults, vec![2, 1]);
    assert_eq!(fac.product(), f);
}

#[test]
fn zero_input_is_rejected() {
    assert_eq!(
        factor_in_ambient(&LaurentPoly::zero(&qt_z())),
        Err(FactorError::ZeroInput)
    );
}

#[test]
fn cyclotomic_part_examples() {
    let t = AmbientSpec::new(&["t"]).with_line("t");
    // 2t - 2: unit 2, cyclotomic t - 1, residual 1
    let f = p("2*t - 2", &t);
    let cp = cyclotomic_part(&f).unwrap();
    assert_eq!(crate::parse::print_poly(&cp.unit), "2");
    assert_eq!(crate::parse::print_poly(&cp.cyclotomic), "t - 1");
    assert!(cp.residual.is_one());

    // (t^3 - 1)(t - 2) = t^4 - 2t^3 - t + 2
    let f = p("t^4 - 2*t^3 - t + 2", &t);
    let cp = cyclotomic_part(&f).unwrap();
    assert_eq!(cp.cyclotomic, p("t^3 - 1", &t));
    assert_eq!(crate::parse::print_poly(&cp.residual), "t - 2");
    assert_eq!(cp.unit.mul(&cp.cyclotomic).mul(&cp.residual), f);

    let f = p("t - 2", &t);
    let cp = cyclotomic_part(&f).unwrap();
    assert!(cp.cyclotomic.is_one());
    assert_eq!(crate::parse::print_poly(&cp.residual), "t - 2");
}

#[test]
fn cyclotomic_residual_shares_no_root_of_unity() {
    let t = AmbientSpec::new(&["t"]).with_line("t");
    let f = p("(t^4 - 1) * (t^2 - 3) * (t + 5)", &t);
    let cp = cyclotomic_part(&f).unwrap();
    // residual must be coprime to t^m - 1 for all m up to the bound
    let idx = 0usize;
    let residual_q = to_qpoly(&cp.residual, &t, idx).unwrap();
    let d = residual_q.degree().unwrap() as u32;
    for m in 1..=(2 * d * d).max(8) {
        let mut coeffs = vec![crate::coeff::Rational::zero(); m as usize + 1];
        coeffs[0] = -crate::coeff::Rational::one();
        coeffs[m as usize] = crate::coeff::Rational::one();
        let tm1 = QPoly::new(coeffs);
        assert!(
            residual_q.gcd(&tm1).is_one(),
            "residual shares a factor with t^{m} - 1"
        );
    }
}

#[test]
fn constant_part_examples() {
    let tz = tz_plain();
    // (1 + z)(t - 1): the z-only factor is the unit, t - 1 is constant
    let f = p("(1 + z) * (t - 1)", &tz);
    let cp = constant_part(&f, "z").unwrap();
    assert_eq!(crate::parse::print_poly(&cp.constant), "t - 1");
    assert!(cp.residual.is_one());
    assert_eq!(crate::parse::print_poly(&cp.unit), "z + 1");

    let f = p("z*t - 1", &tz);
    let cp = constant_part(&f, "z").unwrap();
    assert!(cp.constant.is_one());
    assert_eq!(crate::parse::print_poly(&cp.residual), "t*z - 1");

    let f = p("t^2 - 1", &tz);
    let cp = constant_part(&f, "z").unwrap();
    assert_eq!(cp.constant, p("t^2 - 1", &tz).with_ambient(cp.constant.ambient()));
    assert!(cp.residual.is_one());
    assert!(cp.unit.is_one());
}

#[test]
fn constant_part_residual_is_saturated() {
    let tz = tz_plain();
    let f = p("(t - 1) * (t*z + z + 1) * (2*z - 1)", &tz);
    let cp = constant_part(&f, "z").unwrap();
    // re-running on the residual yields a trivial constant part
    let again = constant_part(&cp.residual, "z").unwrap();
    assert!(again.constant.is_one());
    assert_eq!(
        cp.unit.mul(&cp.constant).mul(&cp.residual),
        f.with_ambient(cp.unit.ambient())
    );
}

#[test]
fn canonical_factor_form_is_primitive_positive() {
    let tz = tz_plain();
    let f = p("-2/3*z + 2/3*t", &tz);
    let (canon, scale) = canonicalize_factor(&f);
    assert_eq!(crate::parse::print_poly(&canon), "z - t");
    assert_eq!(canon.mul_rational(&scale), f);
}
