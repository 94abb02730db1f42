use super::*;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    rat(n, d)
}

#[test]
fn ratfun_normalize_cancels_gcd() {
    // (t^2 - 1) / (t - 1) = t + 1
    let num = QPoly::from_ints(&[-1, 0, 1]);
    let den = QPoly::from_ints(&[-1, 1]);
    let f = ratfun_normalize(num, den).unwrap();
    assert_eq!(f.num(), &QPoly::from_ints(&[1, 1]));
    assert!(f.den().is_one());
}

#[test]
fn ratfun_normalize_zero() {
    let f = ratfun_normalize(QPoly::zero(), QPoly::from_ints(&[2, 0, 0, 1])).unwrap();
    assert!(f.num().is_zero());
    assert!(f.den().is_one());
}

#[test]
fn ratfun_normalize_monic_denominator() {
    // 2t / 2 = t / 1
    let f = ratfun_normalize(QPoly::from_ints(&[0, 2]), QPoly::from_ints(&[2])).unwrap();
    assert_eq!(f.num(), &QPoly::from_ints(&[0, 1]));
    assert!(f.den().is_one());
}

#[test]
fn ratfun_normalize_zero_denominator_errors() {
    assert_eq!(
        ratfun_normalize(QPoly::one(), QPoly::zero()),
        Err(CoeffError::DivisionByZero)
    );
}

#[test]
fn cyc_mul_order_four() {
    // Phi_4 = w^2 + 1, so w * w = -1
    let w = CycNum::root_of_unity(4, 1);
    let p = w.mul(&w).unwrap();
    assert_eq!(p.to_rational(), Some(q(-1, 1)));
}

#[test]
fn cyc_mul_order_three() {
    // (1 + w)(-w) = -w - w^2 = 1 mod w^2 + w + 1
    let a = CycNum::new(3, vec![q(1, 1), q(1, 1)]);
    let b = CycNum::root_of_unity(3, 1).neg();
    assert!(a.mul(&b).unwrap().is_one());
}

#[test]
fn cyc_mul_degenerate_order() {
    let a = CycNum::from_rational(1, q(5, 1));
    let b = CycNum::from_rational(1, q(7, 1));
    assert_eq!(a.mul(&b).unwrap().to_rational(), Some(q(35, 1)));
}

#[test]
fn cyc_mul_order_mismatch_errors() {
    let a = CycNum::one(3);
    let b = CycNum::one(4);
    assert_eq!(a.mul(&b), Err(CoeffError::OrderMismatch(3, 4)));
}

#[test]
fn cyc_inverse_examples() {
    // order 3: (1 + w)^-1 = -w, checked by multiplying back
    let a = CycNum::new(3, vec![q(1, 1), q(1, 1)]);
    let inv = a.inverse().unwrap();
    assert_eq!(inv, CycNum::root_of_unity(3, 1).neg());
    assert!(a.mul(&inv).unwrap().is_one());
    // order 4: w^-1 = -w
    let w = CycNum::root_of_unity(4, 1);
    assert_eq!(w.inverse().unwrap(), w.neg());
    // order 1: plain rational inverse
    let two = CycNum::from_rational(1, q(2, 1));
    assert_eq!(two.inverse().unwrap().to_rational(), Some(q(1, 2)));
}

#[test]
fn cyc_inverse_of_zero_errors() {
    assert_eq!(CycNum::zero(6).inverse(), Err(CoeffError::ZeroInverse));
}

#[test]
fn cyclotomic_polynomials_small_orders() {
    assert_eq!(*cyclotomic_poly(1), QPoly::from_ints(&[-1, 1]));
    assert_eq!(*cyclotomic_poly(2), QPoly::from_ints(&[1, 1]));
    assert_eq!(*cyclotomic_poly(3), QPoly::from_ints(&[1, 1, 1]));
    assert_eq!(*cyclotomic_poly(4), QPoly::from_ints(&[1, 0, 1]));
    assert_eq!(*cyclotomic_poly(6), QPoly::from_ints(&[1, -1, 1]));
    assert_eq!(*cyclotomic_poly(12), QPoly::from_ints(&[1, 0, -1, 0, 1]));
}

#[test]
fn euler_phi_small_values() {
    let expected = [1u32, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
    for (n, phi) in (1..=12).zip(expected) {
        assert_eq!(euler_phi(n), phi, "phi({n})");
    }
}

#[test]
fn coefficient_mixing_rules() {
    let r = Coefficient::Rat(q(2, 1));
    let f = Coefficient::Fun(RatFun::new(QPoly::var(), QPoly::one()).unwrap());
    let c = Coefficient::Cyc(CycNum::root_of_unity(3, 1));
    assert!(r.try_mul(&f).is_ok());
    assert!(r.try_mul(&c).is_ok());
    assert!(matches!(
        f.try_mul(&c),
        Err(CoeffError::IncompatibleScalars(_, _))
    ));
    // different orders embed into the lcm
    let c4 = Coefficient::Cyc(CycNum::root_of_unity(4, 1));
    let prod = c.try_mul(&c4).unwrap();
    match prod {
        Coefficient::Cyc(x) => assert_eq!(x.order(), 12),
        other => panic!("expected cyclotomic, got {other:?}"),
    }
}

#[test]
fn coefficient_normalizes_rational_cyclotomics() {
    // w^3 at order 3 is 1; coefficient arithmetic demotes it to a rational
    let w = Coefficient::Cyc(CycNum::root_of_unity(3, 1));
    let w2 = Coefficient::Cyc(CycNum::root_of_unity(3, 2));
    let prod = w.try_mul(&w2).unwrap();
    assert_eq!(prod, Coefficient::Rat(q(1, 1)));
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

fn arb_qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(arb_rational(), 0..4).prop_map(QPoly::new)
}

fn arb_ratfun() -> impl Strategy<Value = RatFun> {
    (arb_qpoly(), arb_qpoly())
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RatFun::new(n, d).unwrap())
}

fn arb_cyc() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    (1u32..=8, prop::collection::vec(arb_rational(), 12))
        .prop_map(|(order, cs)| {
            let mk = |s: &[Rational]| CycNum::new(order, s.to_vec());
            (mk(&cs[0..4]), mk(&cs[4..8]), mk(&cs[8..12]))
        })
}

proptest! {
    #[test]
    fn rational_field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        if !a.is_zero() {
            prop_assert!((&a * a.recip()).is_one());
        }
    }

    #[test]
    fn ratfun_field_axioms(a in arb_ratfun(), b in arb_ratfun(), c in arb_ratfun()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn ratfun_normalization_canonical(n1 in arb_qpoly(), d1 in arb_qpoly(), s in arb_qpoly()) {
        prop_assume!(!d1.is_zero() && !s.is_zero());
        // scaling numerator and denominator by a common factor is invisible
        let plain = RatFun::new(n1.clone(), d1.clone()).unwrap();
        let scaled = RatFun::new(n1.mul(&s), d1.mul(&s)).unwrap();
        prop_assert_eq!(&plain, &scaled);
        // re-normalizing is the identity
        let again = RatFun::new(plain.num().clone(), plain.den().clone()).unwrap();
        prop_assert_eq!(plain, again);
    }

    #[test]
    fn cyc_field_axioms((a, b, c) in arb_cyc()) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inverse().unwrap()).unwrap().is_one());
        }
    }

    #[test]
    fn cyc_order_one_is_rational_arithmetic(x in arb_rational(), y in arb_rational()) {
        let a = CycNum::from_rational(1, x.clone());
        let b = CycNum::from_rational(1, y.clone());
        prop_assert_eq!(a.mul(&b).unwrap().to_rational(), Some(&x * &y));
        prop_assert_eq!(a.add(&b).unwrap().to_rational(), Some(&x + &y));
    }

    #[test]
    fn cyc_matches_float_evaluation((a, b, _c) in arb_cyc()) {
        // exact product vs complex evaluation at exp(2*pi*i/N)
        let exact = a.mul(&b).unwrap().to_complex_f64();
        let (ar, ai) = a.to_complex_f64();
        let (br, bi) = b.to_complex_f64();
        let float = (ar * br - ai * bi, ar * bi + ai * br);
        prop_assert!((exact.0 - float.0).abs() < 1e-9, "re {} vs {}", exact.0, float.0);
        prop_assert!((exact.1 - float.1).abs() < 1e-9, "im {} vs {}", exact.1, float.1);
    }
}
