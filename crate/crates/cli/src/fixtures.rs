//! Registered verification fixtures: small end-to-end pipelines with frozen
//! expected structures.

use num_bigint::BigInt;

use lacunary::factor::cyclotomic_part;
use lacunary::lattice::IntMatrix;
use lacunary::laurent::AmbientSpec;
use lacunary::parse::{parse_poly, print_poly};
use lacunary::toric::{
    gcd_reduction_check, kernel_action_orbits, schinzel_ff_check, specialize_and_factor,
    GcdReductionOutcome, ResidualStatus,
};

pub fn fixture_ids() -> Vec<&'static str> {
    vec!["pullback-split", "cyc-strip", "ct-strip", "gcd-reduction"]
}

pub fn run_fixture(id: &str) -> Result<(), String> {
    match id {
        "pullback-split" => pullback_split(),
        "cyc-strip" => cyc_strip(),
        "ct-strip" => ct_strip(),
        "gcd-reduction" => gcd_reduction(),
        _ => Err(format!("unknown fixture {id}")),
    }
}

fn bigvec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// The pullback of `z^2 - x1*x2^2` by `diag(2,1)` splits into two factors
/// swapped by the kernel, and line specializations split exactly when the
/// first exponent is even.
fn pullback_split() -> Result<(), String> {
    let amb = AmbientSpec::new(&["x1", "x2", "z"]).with_fiber("z");
    let f = parse_poly("z^2 - x1*x2^2", &amb).map_err(|e| e.to_string())?;
    let orbits = kernel_action_orbits(&f, &IntMatrix::diagonal(&[2, 1]), None)
        .map_err(|e| e.to_string())?;
    let names: Vec<String> = orbits.factors.iter().map(|g| print_poly(g)).collect();
    if names != vec!["z - x1*x2", "z + x1*x2"] {
        return Err(format!("unexpected pullback factors {names:?}"));
    }
    if orbits.orbits != vec![vec![0, 1]] || orbits.stabilizer.len() != 1 {
        return Err("kernel action is not a single swap orbit".to_string());
    }
    let split = specialize_and_factor(&f, &bigvec(&[2, 1])).map_err(|e| e.to_string())?;
    if split.factors().len() != 2 {
        return Err(format!("expected 2 factors at (2,1), got {}", split.factors().len()));
    }
    let whole = specialize_and_factor(&f, &bigvec(&[1, 1])).map_err(|e| e.to_string())?;
    if !whole.is_irreducible() {
        return Err("expected an irreducible image at (1,1)".to_string());
    }
    Ok(())
}

/// Cyclotomic stripping of `(x1 + x2 - 2)` specializations: `t^gcd(a) - 1`
/// divides the cyclotomic part and the residual is cyclotomic-free.
fn cyc_strip() -> Result<(), String> {
    let amb = AmbientSpec::new(&["x1", "x2"]);
    let f = parse_poly("x1 + x2 - 2", &amb).map_err(|e| e.to_string())?;
    for a1 in 1i64..=4 {
        for a2 in 1i64..=4 {
            let image = f
                .specialize_line(&bigvec(&[a1, a2]))
                .map_err(|e| e.to_string())?;
            let cp = cyclotomic_part(&image).map_err(|e| e.to_string())?;
            let g = gcd_i64(a1, a2);
            let amb_t = image.ambient();
            let marker = parse_poly(&format!("t^{g} - 1"), amb_t).map_err(|e| e.to_string())?;
            if cp.cyclotomic.divexact(&marker).is_none() {
                return Err(format!(
                    "t^{g} - 1 does not divide the cyclotomic part at a = ({a1},{a2})"
                ));
            }
            let back = cp.unit.mul(&cp.cyclotomic).mul(&cp.residual);
            if back != image {
                return Err("cyclotomic split does not reconstruct".to_string());
            }
        }
    }
    // the (1,1) case collapses entirely into unit * (t - 1)
    let image = f.specialize_line(&bigvec(&[1, 1])).map_err(|e| e.to_string())?;
    let cp = cyclotomic_part(&image).map_err(|e| e.to_string())?;
    if print_poly(&cp.cyclotomic) != "t - 1" || !cp.residual.is_one() {
        return Err("expected cyclotomic part t - 1 with unit residual".to_string());
    }
    Ok(())
}

/// Constant-part stripping of `(x1 + z*x2 - z - 1)` specializations: the
/// residual is a unit on the diagonal and irreducible off it.
fn ct_strip() -> Result<(), String> {
    let amb = AmbientSpec::new(&["x1", "x2", "z"]).with_field("z");
    let f = parse_poly("x1 + z*x2 - z - 1", &amb).map_err(|e| e.to_string())?;
    let report = schinzel_ff_check(&f, &bigvec(&[1, 1])).map_err(|e| e.to_string())?;
    if report.status != ResidualStatus::UnitResidual {
        return Err("expected a unit residual at (1,1)".to_string());
    }
    if print_poly(&report.stripped) != "t - 1" {
        return Err(format!(
            "expected constant part t - 1, got {}",
            print_poly(&report.stripped)
        ));
    }
    let report = schinzel_ff_check(&f, &bigvec(&[2, 1])).map_err(|e| e.to_string())?;
    if report.status != ResidualStatus::IrreducibleResidual {
        return Err("expected an irreducible residual at (2,1)".to_string());
    }
    Ok(())
}

/// The divisor reduction for `z^2 - t`: reducible at `t^4` with witness
/// `e = 2`, irreducible at `t^3`.
fn gcd_reduction() -> Result<(), String> {
    let amb = AmbientSpec::new(&["t", "z"]).with_fiber("z").with_line("t");
    let f = parse_poly("z^2 - t", &amb).map_err(|e| e.to_string())?;
    match gcd_reduction_check(&f, 4).map_err(|e| e.to_string())? {
        GcdReductionOutcome::Witness(2) => {}
        other => return Err(format!("expected witness e = 2 at m = 4, got {other:?}")),
    }
    match gcd_reduction_check(&f, 3).map_err(|e| e.to_string())? {
        GcdReductionOutcome::SpecializationIrreducible => Ok(()),
        other => Err(format!("expected an irreducible image at m = 3, got {other:?}")),
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd_i64(b, a % b) }
}
