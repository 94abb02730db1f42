//! Command implementations, separated from argument parsing so the test
//! suite can drive them directly.

use std::io::Write;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use lacunary::laurent::{AmbientSpec, LaurentPoly};
use lacunary::parse::{parse_poly, print_poly, scan_variables};
use lacunary::toric::{delta_set, factor_multivariate, CertificateContext};

use crate::catalog::{engine_version, CatalogRecord, JsonInt};

/// Exit codes: 0 ok, 1 verification failure, 2 usage/parse, 3 internal
/// invariant breach.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorMode {
    /// `Q[v^±1]`, univariate.
    UniQ,
    /// `Q(t)[z^±1]`.
    BiQt,
    /// `Q(z)[others^±1]`.
    FfZ,
}

impl FactorMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "uni-q" => Some(FactorMode::UniQ),
            "bi-qt" => Some(FactorMode::BiQt),
            "ff-z" => Some(FactorMode::FfZ),
            _ => None,
        }
    }
}

/// Builds the ambient for an input expression: variables sorted with the
/// special names `t` and `z` last, `z` designated as the fiber, `t` as the
/// line parameter, and the field variable chosen by the mode.
pub fn ambient_for(text: &str, mode: Option<FactorMode>) -> Result<Arc<AmbientSpec>, String> {
    let mut names = scan_variables(text).map_err(|e| e.to_string())?;
    if names.is_empty() {
        names.push("t".to_string());
    }
    names.sort_by(|a, b| {
        let rank = |s: &str| match s {
            "z" => 2,
            "t" => 1,
            _ => 0,
        };
        rank(a).cmp(&rank(b)).then_with(|| a.cmp(b))
    });
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut ambient = AmbientSpec::new(&refs);
    if names.contains(&"z".to_string()) {
        ambient = ambient.with_fiber("z");
    }
    if names.contains(&"t".to_string()) {
        ambient = ambient.with_line("t");
    }
    match mode {
        Some(FactorMode::BiQt) => {
            if !names.contains(&"t".to_string()) {
                return Err("bi-qt mode requires the variable t".to_string());
            }
            ambient = ambient.with_field("t");
        }
        Some(FactorMode::FfZ) => {
            if !names.contains(&"z".to_string()) {
                return Err("ff-z mode requires the variable z".to_string());
            }
            ambient = ambient.with_field("z");
        }
        Some(FactorMode::UniQ) | None => {}
    }
    Ok(ambient)
}

#[derive(Serialize)]
struct FactorJson {
    input: String,
    mode: String,
    unit: String,
    factors: Vec<FactorEntryJson>,
}

#[derive(Serialize)]
struct FactorEntryJson {
    poly: String,
    multiplicity: u32,
}

/// `factor --mode ... [--json] FILE`
pub fn cmd_factor(input: &str, mode: FactorMode, json: bool, out: &mut dyn Write) -> i32 {
    let text = input.trim();
    let ambient = match ambient_for(text, Some(mode)) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let poly = match parse_poly(text, &ambient) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if poly.is_zero() {
        eprintln!("error: cannot factor zero");
        return EXIT_USAGE;
    }
    if mode == FactorMode::UniQ {
        let live = ambient
            .vars()
            .iter()
            .filter(|v| poly.degree_in(v).map(|(lo, hi)| lo != hi).unwrap_or(false))
            .count();
        if live > 1 {
            eprintln!("error: uni-q mode expects a univariate input");
            return EXIT_USAGE;
        }
    }
    let factorization = match factor_multivariate(&poly) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    // bug guard: the factorization must reconstruct its input exactly
    if factorization.product() != poly {
        eprintln!("internal error: factorization does not reconstruct the input");
        return EXIT_INTERNAL;
    }
    if json {
        let payload = FactorJson {
            input: text.to_string(),
            mode: format!("{mode:?}"),
            unit: print_poly(factorization.unit()),
            factors: factorization
                .factors()
                .iter()
                .map(|(p, m)| FactorEntryJson {
                    poly: print_poly(p),
                    multiplicity: *m,
                })
                .collect(),
        };
        writeln!(out, "{}", serde_json::to_string(&payload).expect("serializable")).ok();
    } else {
        writeln!(out, "{}", factorization.display()).ok();
    }
    EXIT_OK
}

/// Directions in the box `[lo, hi]^n`, zero skipped, in graded-lex order
/// (L1 norm, then lexicographic).
pub fn box_directions(lo: i64, hi: i64, n: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut counters = vec![lo; n];
    loop {
        if counters.iter().any(|&v| v != 0) {
            out.push(counters.clone());
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                out.sort_by_key(|v| {
                    (
                        v.iter().map(|x| x.unsigned_abs()).sum::<u64>(),
                        v.clone(),
                    )
                });
                return out
                    .into_iter()
                    .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                    .collect();
            }
            pos -= 1;
            counters[pos] += 1;
            if counters[pos] <= hi {
                break;
            }
            counters[pos] = lo;
            if pos == 0 {
                out.sort_by_key(|v| {
                    (
                        v.iter().map(|x| x.unsigned_abs()).sum::<u64>(),
                        v.clone(),
                    )
                });
                return out
                    .into_iter()
                    .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                    .collect();
            }
        }
    }
}

pub struct ScanOptions {
    pub det_bound: u64,
    pub jobs: usize,
    pub canonical: bool,
}

pub struct ScanSummary {
    pub records: usize,
    pub distinct_patterns: usize,
    pub distinct_matrices: usize,
    pub failures: usize,
}

/// Runs the certificate search over every nonzero direction in the box and
/// writes one JSON record per line, sorted canonically.
pub fn run_scan(
    f: &LaurentPoly,
    lo: i64,
    hi: i64,
    opts: &ScanOptions,
) -> Result<(Vec<CatalogRecord>, ScanSummary), String> {
    if lo > hi {
        return Err(format!("empty box {lo}..{hi}"));
    }
    let n = f.ambient().substituted().len();
    let directions = box_directions(lo, hi, n);
    let ctx = CertificateContext::new(f, opts.det_bound);
    let worker = |a: &Vec<BigInt>| -> CatalogRecord {
        let started = Instant::now();
        let outcome = ctx.certificate(a);
        let elapsed = if opts.canonical {
            0
        } else {
            started.elapsed().as_millis() as u64
        };
        CatalogRecord::new(a.clone(), &outcome, elapsed)
    };
    let records: Vec<CatalogRecord> = if opts.jobs <= 1 {
        directions.iter().map(worker).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(|| directions.par_iter().map(worker).collect())
    };
    // records arrive in box order already; keep the canonical sort explicit
    let mut records = records;
    records.sort_by_key(|r| {
        (
            r.a.iter()
                .map(num_traits::Signed::abs)
                .sum::<BigInt>(),
            r.a.clone(),
        )
    });
    let mut patterns: Vec<&str> = records.iter().map(|r| r.pattern_key.as_str()).collect();
    patterns.sort_unstable();
    patterns.dedup();
    let mut matrices: Vec<String> = records
        .iter()
        .filter_map(|r| r.matrix().map(|c| format!("{:?}", c.m)))
        .collect();
    matrices.sort_unstable();
    matrices.dedup();
    let failures = records.iter().filter(|r| r.matrix().is_none()).count();
    let summary = ScanSummary {
        records: records.len(),
        distinct_patterns: patterns.len(),
        distinct_matrices: matrices.len(),
        failures,
    };
    Ok((records, summary))
}

pub fn write_catalog(records: &[CatalogRecord], path: &Path) -> Result<(), String> {
    let mut buf = Vec::new();
    for r in records {
        serde_json::to_writer(&mut buf, r).map_err(|e| e.to_string())?;
        buf.push(b'\n');
    }
    std::fs::write(path, buf).map_err(|e| e.to_string())
}

/// `scan --poly FILE --box LO..HI --det-bound N --out PATH [--jobs N]`
#[allow(clippy::too_many_arguments)]
pub fn cmd_scan(
    input: &str,
    lo: i64,
    hi: i64,
    det_bound: u64,
    out_path: &Path,
    jobs: usize,
    canonical: bool,
    out: &mut dyn Write,
) -> i32 {
    let text = input.trim();
    let ambient = match ambient_for(text, None) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let poly = match parse_poly(text, &ambient) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let opts = ScanOptions {
        det_bound,
        jobs,
        canonical,
    };
    match run_scan(&poly, lo, hi, &opts) {
        Ok((records, summary)) => {
            if records.is_empty() {
                eprintln!("warning: the box contains no nonzero direction; empty catalog");
            }
            if let Err(e) = write_catalog(&records, out_path) {
                eprintln!("error: cannot write {}: {e}", out_path.display());
                return EXIT_USAGE;
            }
            writeln!(
                out,
                "{} records, {} distinct patternKeys, {} distinct certificate matrices, {} failures",
                summary.records,
                summary.distinct_patterns,
                summary.distinct_matrices,
                summary.failures
            )
            .ok();
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Serialize)]
struct CalibrationJson {
    sigma: Vec<Vec<JsonInt>>,
    phi: Vec<Vec<Vec<JsonInt>>>,
}

/// `calibrate --poly FILE --box LO..HI [--det-bound N]`: emits candidate
/// degenerate directions from the degree-drop set and candidate matrices from
/// the reducible pullbacks observed in certificates over the box.
pub fn cmd_calibrate(
    input: &str,
    lo: i64,
    hi: i64,
    det_bound: u64,
    out: &mut dyn Write,
) -> i32 {
    let text = input.trim();
    let ambient = match ambient_for(text, None) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let poly = match parse_poly(text, &ambient) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let sigma: Vec<Vec<BigInt>> = match delta_set(&poly) {
        Ok(ds) => ds.vectors,
        Err(_) => Vec::new(),
    };
    let opts = ScanOptions {
        det_bound,
        jobs: 1,
        canonical: true,
    };
    let (records, _) = match run_scan(&poly, lo, hi, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut phi: Vec<Vec<Vec<JsonInt>>> = Vec::new();
    let mut seen = Vec::new();
    for r in &records {
        if let Some(cert) = r.matrix() {
            // a certificate with more than one pair comes from a pullback
            // that genuinely factored
            if cert.factor_pairs.len() > 1 {
                let key = format!("{:?}", cert.m);
                if !seen.contains(&key) {
                    seen.push(key);
                    phi.push(cert.m.clone());
                }
            }
        }
    }
    let payload = CalibrationJson {
        sigma: sigma
            .iter()
            .map(|v| v.iter().cloned().map(JsonInt).collect())
            .collect(),
        phi,
    };
    writeln!(out, "{}", serde_json::to_string(&payload).expect("serializable")).ok();
    EXIT_OK
}

/// `verify ID`
pub fn cmd_verify(id: &str, out: &mut dyn Write) -> i32 {
    let known = crate::fixtures::fixture_ids();
    if !known.contains(&id) {
        eprintln!(
            "error: unknown fixture '{id}'; known fixtures: {}",
            known.join(", ")
        );
        return EXIT_USAGE;
    }
    match crate::fixtures::run_fixture(id) {
        Ok(()) => {
            writeln!(out, "{id}: pass").ok();
            EXIT_OK
        }
        Err(msg) => {
            writeln!(out, "{id}: FAIL — {msg}").ok();
            EXIT_VERIFY_FAILED
        }
    }
}

pub fn version_line() -> String {
    engine_version()
}
