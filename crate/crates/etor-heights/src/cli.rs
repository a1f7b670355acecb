//! Command-line interface.
//!
//! Five subcommands cover the library surface: `invariants`,
//! `supersingular` (direct scan or the class-polynomial pipeline),
//! `classpoly`, `bound` (all height-bound paths), and `verify` (numerical
//! stress suites for the inequalities the bounds rest on).  Every command
//! prints a single versioned JSON report to stdout; diagnostics go to
//! stderr.  Exit codes: 0 success, 1 domain/verification failure, 2
//! resource exhaustion, 64 usage error.
//!
//! The environment variable `ETOR_HEIGHTS_PRECISION` sets the default
//! working precision (in bits, minimum 192) for certified ball arithmetic
//! in the verification suites.

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::time::Instant;

use crate::arith::{ln_biguint, sieve_primes};
use crate::bounds::{
    aux_c1, aux_l1, aux_l2, cm_height_bound, conductor_height_bound, dobrowolski_floor,
    main_height_bound, mignotte_sum_bound, sample_algebraic, sample_low_height,
    small_degree_height_bound, sum_bound_explicit, ConductorMode,
};
use crate::classpoly::{
    class_number, count_real_roots, eval_j_quadratic_point, hilbert_class_polynomial,
};
use crate::curve::{
    b_e_threshold, compute_invariants, is_cm_j_invariant, surjectivity_threshold,
    trace_of_frobenius, WeierstrassModel,
};
use crate::report::RunReport;
use crate::ssearch::{
    find_supersingular_direct, ln_n_ell_bound, search_supersingular_prime, SearchConfig,
};
use crate::{Error, Result};

/// Default ball-arithmetic precision in bits, overridable through
/// `ETOR_HEIGHTS_PRECISION` (values below 192 are raised to 192).
pub fn default_precision() -> usize {
    std::env::var("ETOR_HEIGHTS_PRECISION")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .map(|p| p.max(192))
        .unwrap_or(512)
}

#[derive(Parser)]
#[command(
    name = "etor-heights",
    version,
    about = "Explicit height lower bounds on elliptic-curve torsion fields"
)]
pub struct Cli {
    /// Worker threads for parallel suites (0 = automatic).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchKind {
    /// Scan primes in order and point-count each one.
    Direct,
    /// Congruence + class-polynomial pipeline with a certificate.
    Elkies,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundMode {
    /// Conductor-only, fully unconditional.
    Explicit,
    /// Semistable curves (squarefree conductor).
    Semistable,
    /// Conditional on an explicit prime-in-progression hypothesis.
    Effective,
    /// Complex multiplication: the exact bound 3^-14.
    Cm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Certified sign/size inequalities for j at quadratic points.
    Lemma1,
    /// Size of the class-polynomial product against its explicit cap.
    FouvryMurty,
    /// Averaged |ln|beta - 1|| sum bound on random algebraic samples.
    MignotteSum,
    /// Calculus lemmas and the explicit sum-bound chain on grids.
    Aux,
    /// Class numbers against their explicit bound; degrees against counts.
    Classnum,
    /// |a_p| <= 2 sqrt(p) on random curves and primes.
    Hasse,
    /// theta(x) < 1.01624 x up to a limit, by exact sieve.
    Theta,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::FouvryMurty => "fouvry-murty",
            Suite::MignotteSum => "mignotte-sum",
            Suite::Aux => "aux",
            Suite::Classnum => "classnum",
            Suite::Hasse => "hasse",
            Suite::Theta => "theta",
        }
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Standard invariants of a Weierstrass model.
    Invariants {
        /// Model as "a1,a2,a3,a4,a6" (integers or fractions).
        #[arg(long)]
        curve: String,
        /// Conductor of the curve (trusted as given, echoed in the report).
        #[arg(long)]
        conductor: Option<u64>,
    },
    /// Find a supersingular prime.
    Supersingular {
        #[arg(long)]
        curve: String,
        /// Conductor (required for the elkies pipeline).
        #[arg(long)]
        conductor: Option<u64>,
        #[arg(long, value_enum, default_value = "direct")]
        search: SearchKind,
        /// Threshold the witness must exceed.
        #[arg(long, default_value_t = 11)]
        min_prime: u64,
        /// Override the auxiliary cutoff n (elkies only).
        #[arg(long)]
        force_n: Option<u64>,
        /// Effort cap: direct scan limit, or trial-division bound (elkies).
        #[arg(long, default_value_t = 1_000_000)]
        effort: u64,
    },
    /// Hilbert class polynomial of discriminant -d.
    Classpoly {
        #[arg(long)]
        d: u64,
    },
    /// Height lower bound for non-root-of-unity elements of the full
    /// torsion field.
    Bound {
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        conductor: Option<u64>,
        /// Use this supersingular, surjective prime directly.
        #[arg(long)]
        prime: Option<u64>,
        /// Find a suitable prime by direct scan first.
        #[arg(long, conflicts_with = "prime")]
        auto: bool,
        #[arg(long, value_enum, default_value = "explicit")]
        mode: BoundMode,
        /// 21 (sharp) or 31 (conservative).
        #[arg(long, default_value_t = 21)]
        constant_exponent: u32,
        /// Assert that the mod-p image is surjective for every prime not
        /// listed in --surjective-exceptions.
        #[arg(long)]
        assume_surjective: bool,
        /// Comma-separated primes whose mod-p image is not (known to be)
        /// surjective.
        #[arg(long)]
        surjective_exceptions: Option<String>,
        /// Constant for the effective progression hypothesis.
        #[arg(long, default_value_t = 1.0)]
        effective_c: f64,
    },
    /// Numerical verification suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Upper limit for prime/x ranges (suite-specific default).
        #[arg(long)]
        lmax: Option<u64>,
        /// Sample or grid count.
        #[arg(long, default_value_t = 500)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Discriminant limit for the classnum suite.
        #[arg(long)]
        dmax: Option<u64>,
    },
}

/// Entry point for the binary: parse, dispatch, map errors to exit codes.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return code;
        }
    };
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn parse_prime_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("bad prime list entry {t:?}")))
        })
        .collect()
}

fn dispatch(cmd: Command) -> Result<()> {
    let t0 = Instant::now();
    match cmd {
        Command::Invariants { curve, conductor } => {
            if let Some(n) = conductor {
                if n < 11 {
                    return Err(Error::InvalidInput(format!(
                        "no rational elliptic curve has conductor {n} < 11"
                    )));
                }
            }
            let model: WeierstrassModel = curve.parse()?;
            let inv = compute_invariants(&model)?;
            let outputs = json!({
                "invariants": inv,
                "conductor": conductor,
                "b_e_threshold": b_e_threshold(&inv.j),
                "cm": is_cm_j_invariant(&inv.j),
                "surjectivity_threshold": surjectivity_threshold(inv.h_j)?.to_string(),
            });
            RunReport::new(
                "invariants",
                json!({ "curve": curve, "conductor": conductor }),
                outputs,
                t0.elapsed().as_millis() as u64,
            )
            .emit()
        }
        Command::Supersingular {
            curve,
            conductor,
            search,
            min_prime,
            force_n,
            effort,
        } => {
            let model: WeierstrassModel = curve.parse()?;
            let inputs = json!({
                "curve": curve,
                "conductor": conductor,
                "search": match search { SearchKind::Direct => "direct", SearchKind::Elkies => "elkies" },
                "min_prime": min_prime,
                "force_n": force_n,
                "effort": effort,
            });
            let outputs = match search {
                SearchKind::Direct => {
                    let p = find_supersingular_direct(&model, min_prime.max(5), effort)?;
                    eprintln!("found supersingular p = {p} by direct scan");
                    json!({
                        "method": "direct",
                        "p": p,
                        "trace": 0,
                    })
                }
                SearchKind::Elkies => {
                    let conductor = conductor.ok_or_else(|| {
                        Error::InvalidInput(
                            "--conductor is required for the elkies pipeline".into(),
                        )
                    })?;
                    let config = SearchConfig {
                        min_prime,
                        force_n,
                        trial_bound: effort,
                        scan_limit: 100_000,
                    };
                    let cert = search_supersingular_prime(&model, conductor, &config)?;
                    eprintln!(
                        "ell = {}, witness p = {} (a_p = 0), revalidating...",
                        cert.ell, cert.witness.p
                    );
                    cert.revalidate()?;
                    json!({ "method": "elkies", "certificate": cert })
                }
            };
            RunReport::new("supersingular", inputs, outputs, t0.elapsed().as_millis() as u64)
                .emit()
        }
        Command::Classpoly { d } => {
            let poly = hilbert_class_polynomial(d)?;
            let h = class_number(d)?;
            let coeffs: Vec<String> = poly.coeffs.iter().map(|c| c.to_string()).collect();
            let outputs = json!({
                "d": d,
                "degree": poly.degree(),
                "class_number": h,
                "real_roots": count_real_roots(&poly.coeffs),
                "coefficients_low_to_high": coeffs,
            });
            RunReport::new("classpoly", json!({ "d": d }), outputs, t0.elapsed().as_millis() as u64)
                .emit()
        }
        Command::Bound {
            curve,
            conductor,
            prime,
            auto,
            mode,
            constant_exponent,
            assume_surjective,
            surjective_exceptions,
            effective_c,
        } => {
            let inputs = json!({
                "curve": curve,
                "conductor": conductor,
                "prime": prime,
                "auto": auto,
                "mode": match mode {
                    BoundMode::Explicit => "explicit",
                    BoundMode::Semistable => "semistable",
                    BoundMode::Effective => "effective",
                    BoundMode::Cm => "cm",
                },
                "constant_exponent": constant_exponent,
                "assume_surjective": assume_surjective,
                "surjective_exceptions": surjective_exceptions,
                "effective_c": effective_c,
            });
            let model: Option<WeierstrassModel> =
                curve.as_deref().map(|c| c.parse()).transpose()?;
            let inv = model.as_ref().map(compute_invariants).transpose()?;
            let exceptions: Vec<u64> = surjective_exceptions
                .as_deref()
                .map(parse_prime_list)
                .transpose()?
                .unwrap_or_default();
            let outputs = if mode == BoundMode::Cm {
                // The CM bound is a constant; it is returned regardless of
                // the other arguments.  Selecting it is the caller's
                // assertion that the curve has complex multiplication, so a
                // verifiably non-CM curve only draws a warning.
                if let Some(inv) = &inv {
                    if !is_cm_j_invariant(&inv.j) {
                        eprintln!(
                            "warning: j = {} is not a CM invariant over Q; \
                             the CM bound does not apply to this curve",
                            inv.j
                        );
                    }
                }
                json!({ "path": "cm", "bound": cm_height_bound() })
            } else if prime.is_some() || auto {
                // The surjective-prime theorem needs a justification for
                // surjectivity at the prime used.
                if !assume_surjective && exceptions.is_empty() {
                    return Err(Error::InvalidInput(
                        "pass --assume-surjective, or --surjective-exceptions \
                         with the primes where the mod-p image is not surjective"
                            .into(),
                    ));
                }
                if let Some(inv) = &inv {
                    if is_cm_j_invariant(&inv.j) {
                        return Err(Error::Domain(
                            "the curve has complex multiplication: no mod-p image \
                             is surjective; use --mode cm"
                                .into(),
                        ));
                    }
                }
                let (p, witness) = match prime {
                    Some(p) => {
                        if exceptions.contains(&p) {
                            return Err(Error::Domain(format!(
                                "p = {p} is listed as a surjectivity exception; \
                                 the bound does not apply at it"
                            )));
                        }
                        (p, None)
                    }
                    None => {
                        let model = model.as_ref().ok_or_else(|| {
                            Error::InvalidInput("--auto needs --curve".into())
                        })?;
                        let mut start = 5u64;
                        let p = loop {
                            let cand = find_supersingular_direct(model, start, 1_000_000)?;
                            if exceptions.contains(&cand) {
                                start = cand + 1;
                                continue;
                            }
                            break cand;
                        };
                        eprintln!("auto-selected supersingular p = {p}");
                        (p, Some(json!({ "p": p, "trace": 0 })))
                    }
                };
                let bound = main_height_bound(p, constant_exponent)?;
                let mut out = json!({
                    "path": "surjective-prime",
                    "p": p,
                    "constant_exponent": constant_exponent,
                    "bound": bound,
                    "small_degree_floor": small_degree_height_bound(p)?,
                });
                if let Some(w) = witness {
                    out["witness"] = w;
                }
                out
            } else {
                let conductor = conductor.ok_or_else(|| {
                    Error::InvalidInput(
                        "conductor-only modes need --conductor (or pass --prime/--auto)"
                            .into(),
                    )
                })?;
                let cmode = match mode {
                    BoundMode::Explicit => ConductorMode::Explicit,
                    BoundMode::Semistable => ConductorMode::Semistable,
                    BoundMode::Effective => ConductorMode::Effective,
                    BoundMode::Cm => unreachable!(),
                };
                let cb = conductor_height_bound(conductor, inv.as_ref(), cmode, effective_c)?;
                json!({ "path": "conductor", "result": cb })
            };
            RunReport::new("bound", inputs, outputs, t0.elapsed().as_millis() as u64).emit()
        }
        Command::Verify {
            suite,
            lmax,
            samples,
            seed,
            dmax,
        } => {
            let inputs = json!({
                "suite": suite.name(),
                "lmax": lmax,
                "samples": samples,
                "seed": seed,
                "dmax": dmax,
            });
            let (outputs, failures) = match suite {
                Suite::Lemma1 => verify_suite_lemma1(lmax.unwrap_or(1000))?,
                Suite::FouvryMurty => verify_suite_fouvry_murty(lmax.unwrap_or(100))?,
                Suite::MignotteSum => verify_suite_mignotte(samples, seed)?,
                Suite::Aux => verify_suite_aux(samples)?,
                Suite::Classnum => verify_suite_classnum(dmax.unwrap_or(2000))?,
                Suite::Hasse => verify_suite_hasse(samples, seed)?,
                Suite::Theta => verify_suite_theta(lmax.unwrap_or(1_000_000))?,
            };
            let report = RunReport::new(
                "verify",
                inputs,
                outputs,
                t0.elapsed().as_millis() as u64,
            )
            .with_seed(seed);
            report.emit()?;
            if failures > 0 {
                return Err(Error::VerificationFailed(format!(
                    "{failures} check(s) failed in suite {}",
                    suite.name()
                )));
            }
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Verification suites.
// ---------------------------------------------------------------------------

/// Certified inequalities for j at the two standard quadratic points:
/// `j(sqrt(-ell)) > e^{2 pi sqrt(ell)}` and
/// `j((1 + sqrt(-ell))/2) <= -0.82 e^{pi sqrt(ell)}`, for primes
/// `ell = 3 (mod 4)`, `7 <= ell <= lmax`.
pub fn verify_suite_lemma1(lmax: u64) -> Result<(Value, usize)> {
    let base_prec = default_precision();
    let ells: Vec<u64> = sieve_primes(lmax)
        .into_iter()
        .filter(|&p| p % 4 == 3 && p >= 7)
        .collect();
    let results: Vec<(u64, bool, bool)> = ells
        .par_iter()
        .map(|&ell| {
            let mut ok1 = false;
            let mut ok2 = false;
            // The target sizes grow like e^{2 pi sqrt(ell)}: raise precision
            // until both comparisons certify (or give up after 3 attempts).
            for attempt in 0..3 {
                let p = (base_prec << attempt)
                    .max(64 + 4 * (2.0 * std::f64::consts::PI * (ell as f64).sqrt() / std::f64::consts::LN_2) as usize);
                let mut cc = astro_float::Consts::new().expect("constants cache");
                let pi = crate::ball::RBall::pi(p, &mut cc);
                let sq = crate::ball::RBall::from_u64(ell, p).sqrt(p);
                // j(i sqrt(ell)): discriminant -4 ell, form (1, 0, ell).
                if !ok1 {
                    if let Ok(j1) = eval_j_quadratic_point(4 * ell, 1, 0, p) {
                        let rhs = pi.mul(&sq, p).mul_pow2(1).exp(p, &mut cc);
                        ok1 = j1.im.contains_zero() && j1.re.gt_certain(&rhs);
                    }
                }
                // j((1 + i sqrt(ell))/2): discriminant -ell, form (1, 1, *).
                if !ok2 {
                    if let Ok(j2) = eval_j_quadratic_point(ell, 1, 1, p) {
                        let e = pi.mul(&sq, p).exp(p, &mut cc);
                        let c = crate::ball::RBall::from_u64(41, p)
                            .div(&crate::ball::RBall::from_u64(50, p), p);
                        let rhs = c.mul(&e, p).neg();
                        ok2 = j2.im.contains_zero() && j2.re.lt_certain(&rhs);
                    }
                }
                if ok1 && ok2 {
                    break;
                }
            }
            (ell, ok1, ok2)
        })
        .collect();
    let failures: Vec<Value> = results
        .iter()
        .filter(|(_, a, b)| !a || !b)
        .map(|(ell, a, b)| json!({ "ell": ell, "growth": a, "negative": b }))
        .collect();
    let n_fail = failures.len();
    Ok((
        json!({
            "suite": "lemma1",
            "lmax": lmax,
            "precision_bits": base_prec,
            "checked": 2 * ells.len(),
            "primes_checked": ells.len(),
            "failures": failures,
        }),
        n_fail,
    ))
}

/// `|P_ell(j) P_4ell(j)| <= e^{3 C sqrt(ell) (ln ell)^2 + 4 h(-ell)}` with
/// `C = 10^10 ln(|j| + 745)`, checked exactly on the conductor-11 sample
/// curve, together with the sign pattern the descent relies on.
pub fn verify_suite_fouvry_murty(lmax: u64) -> Result<(Value, usize)> {
    let model: WeierstrassModel = "0,-1,1,0,0".parse().unwrap();
    let inv = compute_invariants(&model)?;
    let be = b_e_threshold(&inv.j).max(7.0);
    let ells: Vec<u64> = sieve_primes(lmax)
        .into_iter()
        .filter(|&p| p % 4 == 3 && (p as f64) > be)
        .collect();
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for &ell in &ells {
        let p_ell = hilbert_class_polynomial(ell)?;
        let p_4ell = hilbert_class_polynomial(4 * ell)?;
        let v1 = p_ell.evaluate_at_rational(&inv.j);
        let v2 = p_4ell.evaluate_at_rational(&inv.j);
        let prod = &v1 * &v2;
        let ln_val = ln_biguint(prod.numer().magnitude()) - ln_biguint(prod.denom().magnitude());
        let cap = ln_n_ell_bound(ell, &inv.j, p_ell.degree() as u64);
        let signs_ok = v1.is_positive() && v2.is_negative();
        let size_ok = ln_val <= cap;
        rows.push(json!({
            "ell": ell,
            "h_ell": p_ell.degree(),
            "ln_abs_product": ln_val,
            "ln_cap": cap,
        }));
        if !signs_ok || !size_ok {
            failures.push(json!({ "ell": ell, "signs": signs_ok, "size": size_ok }));
        }
    }
    let n_fail = failures.len();
    Ok((
        json!({
            "suite": "fouvry-murty",
            "curve": model.to_string(),
            "lmax": lmax,
            "checked": rows.len(),
            "instances": rows,
            "failures": failures,
        }),
        n_fail,
    ))
}

/// The averaged Mignotte bound on random certified samples, across an
/// epsilon grid, plus the explicit low-height closed form on degree-16
/// Eisenstein samples.
pub fn verify_suite_mignotte(samples: u64, seed: u64) -> Result<(Value, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eps_grid: Vec<f64> = (1..10).map(|k| k as f64 * 0.05).collect();
    let mut failures = Vec::new();
    let mut checked = 0u64;
    let mut max_util = 0.0f64;
    for _ in 0..samples {
        let s = sample_algebraic(&mut rng, 2, 8, 20);
        for &eps in &eps_grid {
            let rhs = mignotte_sum_bound(eps, s.degree() as u64, s.height.0)?;
            checked += 1;
            if s.sum_log_dist_one.1 > rhs {
                failures.push(json!({
                    "coeffs": s.coeffs,
                    "eps": eps,
                    "sum_upper": s.sum_log_dist_one.1,
                    "bound": rhs,
                }));
            } else if rhs > 0.0 {
                max_util = max_util.max(s.sum_log_dist_one.1.max(0.0) / rhs);
            }
        }
    }
    // Low-height closed form on degree-16 samples.
    let delta_grid = [0.05, 0.15, 0.25, 0.35, 0.45];
    let low_n = (samples / 10).max(5);
    for _ in 0..low_n {
        let s = sample_low_height(&mut rng, 16);
        for &delta in &delta_grid {
            let rhs = sum_bound_explicit(delta, 16, s.height.1)?;
            checked += 1;
            if s.sum_log_dist_one.1 > rhs {
                failures.push(json!({
                    "coeffs": s.coeffs,
                    "delta": delta,
                    "sum_upper": s.sum_log_dist_one.1,
                    "bound": rhs,
                }));
            }
        }
    }
    let n_fail = failures.len();
    Ok((
        json!({
            "suite": "mignotte-sum",
            "samples": samples,
            "low_height_samples": low_n,
            "checked": checked,
            "max_utilization": max_util,
            "failures": failures,
        }),
        n_fail,
    ))
}

/// Grid checks of the calculus lemmas and of the chain that turns the
/// averaged bound into its explicit closed form.
pub fn verify_suite_aux(samples: u64) -> Result<(Value, usize)> {
    let n = samples.max(10) as usize;
    let mut failures = Vec::new();
    let mut checked = 0u64;
    // L1: 0 < x <= 1/2.
    for i in 0..n {
        let x = 0.5 * (i as f64 + 1.0) / n as f64;
        let (lhs, rhs) = aux_l1(x)?;
        checked += 1;
        if lhs > rhs {
            failures.push(json!({ "lemma": "l1", "x": x, "lhs": lhs, "rhs": rhs }));
        }
    }
    // C1: gamma grid times x grid.
    for g in 1..10 {
        let gamma = g as f64 * 0.1;
        for i in 0..n / 5 {
            let x = 0.5 * (i as f64 + 1.0) / (n as f64 / 5.0);
            let (lhs, rhs) = aux_c1(x.min(0.5), gamma)?;
            checked += 1;
            if lhs > rhs {
                failures.push(json!({ "lemma": "c1", "x": x, "gamma": gamma }));
            }
        }
    }
    // L2: several degrees, eta grid, x log-spaced above the floor.
    for &d in &[16u64, 100, 10_000, 1_000_000, 100_000_000, 10_000_000_000] {
        let floor = dobrowolski_floor(d)?;
        for e in 1..10 {
            let eta = e as f64 * 0.1;
            let m = 25;
            for j in 0..m {
                let x = (floor * 1.0001) * (1.0 / (floor * 1.0001)).powf(j as f64 / (m - 1) as f64);
                let (lhs, rhs) = aux_l2(d, eta, x)?;
                checked += 1;
                if lhs > rhs {
                    failures.push(json!({ "lemma": "l2", "d": d, "eta": eta, "x": x }));
                }
            }
        }
    }
    // Chain: mignotte at eps = sqrt(h) is dominated by the closed form.
    for &d in &[16u64, 100, 10_000] {
        let floor = dobrowolski_floor(d)?;
        let lo = (floor * 1.01).max(1e-9);
        let hi = 0.2499f64;
        let m = 30;
        for j in 0..m {
            let h = lo * (hi / lo).powf(j as f64 / (m - 1) as f64);
            for &delta in &[0.05f64, 0.25, 0.45] {
                let lhs = mignotte_sum_bound(h.sqrt(), d, h)?;
                let rhs = sum_bound_explicit(delta, d, h)?;
                checked += 1;
                if lhs > rhs {
                    failures.push(json!({
                        "lemma": "chain", "d": d, "h": h, "delta": delta,
                        "mignotte": lhs, "explicit": rhs,
                    }));
                }
            }
        }
    }
    let n_fail = failures.len();
    Ok((
        json!({
            "suite": "aux",
            "checked": checked,
            "failures": failures,
        }),
        n_fail,
    ))
}

/// Class numbers (by form count) against the explicit bound for every
/// valid discriminant up to `dmax`; Hilbert degrees against class numbers
/// for every valid discriminant up to 150.
pub fn verify_suite_classnum(dmax: u64) -> Result<(Value, usize)> {
    let valid = |d: u64| d >= 3 && (d % 4 == 0 || d % 4 == 3);
    let mut failures = Vec::new();
    let mut checked = 0u64;
    for d in 3..=dmax {
        if !valid(d) {
            continue;
        }
        let h = class_number(d)?;
        checked += 1;
        if h as f64 > crate::ssearch::class_number_bound_sharp(d) {
            failures.push(json!({ "d": d, "h": h, "check": "bound" }));
        }
    }
    let degree_cap = dmax.min(150);
    let degree_results: Vec<Option<u64>> = (3..=degree_cap)
        .into_par_iter()
        .filter(|&d| valid(d))
        .map(|d| {
            let h = class_number(d).ok()?;
            let poly = hilbert_class_polynomial(d).ok()?;
            (poly.degree() as u64 != h).then_some(d)
        })
        .collect();
    let mut degree_checked = 0u64;
    for r in degree_results {
        degree_checked += 1;
        if let Some(d) = r {
            failures.push(json!({ "d": d, "check": "degree" }));
        }
    }
    let n_fail = failures.len();
    Ok((
        json!({
            "suite": "classnum",
            "dmax": dmax,
            "checked": checked + degree_checked,
            "bound_checked": checked,
            "degree_checked": degree_checked,
            "failures": failures,
        }),
        n_fail,
    ))
}

/// Random curves, random good primes: `|a_p| <= 2 sqrt(p)`.
pub fn verify_suite_hasse(samples: u64, seed: u64) -> Result<(Value, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = sieve_primes(1000);
    let odd_primes: Vec<u64> = primes.into_iter().filter(|&p| p > 2).collect();
    let mut failures = Vec::new();
    let mut checked = 0u64;
    while checked < samples {
        let model = WeierstrassModel::new_integral(
            rng.random_range(0..=1),
            rng.random_range(-1..=1),
            rng.random_range(0..=1),
            rng.random_range(-20..=20),
            rng.random_range(-20..=20),
        );
        if compute_invariants(&model).is_err() {
            continue; // singular
        }
        let p = odd_primes[rng.random_range(0..odd_primes.len())];
        match trace_of_frobenius(&model, p) {
            Ok(a) => {
                checked += 1;
                if (a * a) as f64 > 4.0 * p as f64 {
                    failures.push(json!({ "model": model.to_string(), "p": p, "a_p": a }));
                }
            }
            Err(Error::Domain(_)) => continue, // bad reduction
            Err(e) => return Err(e),
        }
    }
    let n_fail = failures.len();
    Ok((
        json!({
            "suite": "hasse",
            "checked": checked,
            "failures": failures,
        }),
        n_fail,
    ))
}

/// `theta(x) < 1.01624 x` for all `x <= lmax`, checked at every prime
/// (theta is constant between primes while the right side grows, so the
/// prime jumps are the only candidates for a violation), with a
/// compensated sum and an explicit rounding-error budget.
pub fn verify_suite_theta(lmax: u64) -> Result<(Value, usize)> {
    let primes = sieve_primes(lmax);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut err = 0.0f64;
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for &p in &primes {
        let lp = (p as f64).ln();
        // Kahan-compensated accumulation.
        let y = lp - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        err += lp * 3.0 * f64::EPSILON + 1e-300;
        let theta_hi = sum + err;
        let cap = 1.01624 * p as f64;
        if theta_hi >= cap {
            failures.push(json!({ "p": p, "theta_upper": theta_hi, "cap": cap }));
        }
        worst = worst.max(theta_hi / cap);
    }
    let n_fail = failures.len();
    Ok((
        json!({
            "suite": "theta",
            "xmax": lmax,
            "checked": primes.len(),
            "primes": primes.len(),
            "worst_ratio": worst,
            "failures": failures,
        }),
        n_fail,
    ))
}
