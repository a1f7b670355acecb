//! Supersingular prime search by class-polynomial descent.
//!
//! For a non-CM rational elliptic curve the pipeline makes the classical
//! existence argument for supersingular primes fully explicit:
//!
//! 1. build a congruence system forcing an auxiliary prime `ell = 7 (mod 8)`
//!    to be a quadratic residue target: every odd prime up to a cutoff `n`
//!    (and every odd prime of bad reduction) is made to split in
//!    `Q(sqrt(-ell))`;
//! 2. scan the arithmetic progression for the least such prime `ell`,
//!    alongside the explicit threshold beyond which a prime is guaranteed;
//! 3. form the integer `N_ell`, the numerator of
//!    `P_ell(j) * P_4ell(j)` where `P_D` is the Hilbert class polynomial of
//!    discriminant `-D`; sign analysis of `j` at quadratic points makes
//!    this provably nonzero, and its prime factors avoid every prime the
//!    congruences split;
//! 4. factor out small primes and certify a witness: a factor `p` that is
//!    inert at `ell` (or `ell` itself) has `a_p = 0`, verified directly by
//!    a point count.
//!
//! The result is a [`SupersingularCertificate`] that can be revalidated
//! from scratch, plus explicit upper bounds for where the witness lives
//! ([`prime_bound_unconditional`], [`prime_bound_conductor_only`],
//! [`prime_bound_effective`]).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::time::Instant;

use crate::arith::{
    chebyshev_theta, crt_combine, is_prime_u64, jacobi_u64, ln_biguint, radical_u64, sieve_primes,
};
use crate::bounds::{ss_chain, BoundValue};
use crate::classpoly::hilbert_class_polynomial;
use crate::curve::{
    b_e_threshold, compute_invariants, is_cm_j_invariant, trace_of_frobenius, CurveInvariants,
    WeierstrassModel,
};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Class number bounds.
// ---------------------------------------------------------------------------

/// `h(-d) <= (sqrt(d)/pi) (2 + ln d)` for `d >= 3`.
pub fn class_number_bound_sharp(d: u64) -> f64 {
    let df = d as f64;
    df.sqrt() / std::f64::consts::PI * (2.0 + df.ln())
}

/// The simpler envelope `h(-d) <= 3 sqrt(d) ln(d) / pi` (valid for `d >= 8`;
/// it dominates the sharp form once `ln d >= 1`).
pub fn class_number_bound_simple(d: u64) -> f64 {
    let df = d as f64;
    3.0 * df.sqrt() * df.ln() / std::f64::consts::PI
}

// ---------------------------------------------------------------------------
// Congruence assembly.
// ---------------------------------------------------------------------------

/// One congruence condition on the auxiliary prime, with the reason it is
/// imposed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CongruenceCondition {
    pub modulus: u64,
    pub residue: u64,
    pub reason: String,
}

/// The assembled system: `ell = residue (mod modulus)` combines all
/// conditions by the Chinese remainder theorem.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CongruenceSystem {
    pub conditions: Vec<CongruenceCondition>,
    pub modulus: u64,
    pub residue: u64,
}

fn smallest_forced_residue(p: u64) -> u64 {
    // We need (p/ell) = +1 for ell = 3 (mod 4).  By quadratic reciprocity:
    // p = 1 (mod 4):  (p/ell) = (ell/p), so pick the least quadratic
    //                 residue class mod p;
    // p = 3 (mod 4):  (p/ell) = -(ell/p), so pick the least non-residue.
    let want = if p % 4 == 1 { 1 } else { -1 };
    for r in 1..p {
        if jacobi_u64(r as i64, p).expect("odd prime modulus") == want {
            return r;
        }
    }
    unreachable!("every odd prime has residues of both characters");
}

/// Build the congruence system for conductor `conductor` and auxiliary
/// cutoff `n`: `ell = 7 (mod 8)` plus, for every odd prime `p <= n` or
/// `p | rad(6 conductor)`, the class forcing `(p/ell) = +1`.
pub fn assemble_congruence(conductor: u64, n: u64) -> Result<CongruenceSystem> {
    if conductor < 1 || conductor > u64::MAX / 8 {
        return Err(Error::InvalidInput(format!(
            "conductor must be in [1, 2^61), got {conductor}"
        )));
    }
    let mut conditions = vec![CongruenceCondition {
        modulus: 8,
        residue: 7,
        reason: "ell = 7 (mod 8): ell = 3 (mod 4) and 2 splits in Q(sqrt(-ell))".into(),
    }];
    let mut odd_primes: Vec<u64> = sieve_primes(n).into_iter().filter(|&p| p > 2).collect();
    for &(p, _) in crate::arith::factor_u64(6 * conductor).iter() {
        if p > 2 && !odd_primes.contains(&p) {
            odd_primes.push(p);
        }
    }
    odd_primes.sort_unstable();
    for p in odd_primes {
        let r = smallest_forced_residue(p);
        let role = if 6 * conductor % p == 0 {
            "divides 6N"
        } else {
            "below the cutoff"
        };
        conditions.push(CongruenceCondition {
            modulus: p,
            residue: r,
            reason: format!(
                "ell = {r} (mod {p}) forces ({p}/ell) = +1 ({p} {role})"
            ),
        });
    }
    let pairs: Vec<(BigInt, BigInt)> = conditions
        .iter()
        .map(|c| (BigInt::from(c.residue), BigInt::from(c.modulus)))
        .collect();
    let (x, m) = crt_combine(&pairs)?;
    let modulus = m.to_u64().ok_or_else(|| {
        Error::EffortExhausted(format!(
            "congruence modulus {m} exceeds 64 bits; the explicit bounds still \
             apply but scanning the progression is infeasible here"
        ))
    })?;
    let residue = x.to_u64().expect("residue below a u64 modulus");
    Ok(CongruenceSystem { conditions, modulus, residue })
}

// ---------------------------------------------------------------------------
// Primes in arithmetic progressions.
// ---------------------------------------------------------------------------

/// The explicit threshold `x_0(q)` past which the progression
/// `a (mod q)` (with `gcd(a, q) = 1`) is guaranteed to contain a prime
/// `p <= x_0(q)`.  For large `q` only `ln x_0` is representable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApThreshold {
    pub q: u64,
    /// `x_0(q)` when it fits an f64.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<f64>,
    /// `ln x_0(q)`, always present.
    pub ln_value: f64,
    pub regime: String,
}

/// Piecewise explicit `x_0(q)`: `7.94e9` for `3 <= q <= 600`,
/// `4.81e12 / q` for `601 <= q <= 10^5`, and
/// `exp(0.036 sqrt(q) (ln q)^3)` beyond.
pub fn bennett_x0(q: u64) -> Result<ApThreshold> {
    if q < 3 {
        return Err(Error::InvalidInput(format!("need modulus q >= 3, got {q}")));
    }
    let qf = q as f64;
    let (value, ln_value, regime) = if q <= 600 {
        (Some(7.94e9), 7.94e9f64.ln(), "small modulus".to_string())
    } else if q <= 100_000 {
        let v = 4.81e12 / qf;
        (Some(v), v.ln(), "medium modulus".to_string())
    } else {
        let lv = 0.036 * qf.sqrt() * qf.ln().powi(3);
        (if lv < 700.0 { Some(lv.exp()) } else { None }, lv, "large modulus".to_string())
    };
    Ok(ApThreshold { q, value, ln_value, regime })
}

/// Least prime `ell = a (mod q)` with `ell > floor`, scanning at most
/// `scan_limit` progression steps.
pub fn find_prime_in_ap(a: u64, q: u64, floor: f64, scan_limit: u64) -> Result<u64> {
    if q == 0 || a >= q {
        return Err(Error::InvalidInput(format!("need 0 <= a < q, got a={a}, q={q}")));
    }
    for k in 0..scan_limit {
        let ell = match (k as u128)
            .checked_mul(q as u128)
            .and_then(|v| v.checked_add(a as u128))
        {
            Some(v) if v <= u64::MAX as u128 => v as u64,
            _ => {
                return Err(Error::EffortExhausted(
                    "progression exceeded 64-bit range".into(),
                ))
            }
        };
        if (ell as f64) > floor && is_prime_u64(ell) {
            return Ok(ell);
        }
    }
    Err(Error::EffortExhausted(format!(
        "no prime = {a} (mod {q}) above {floor} within {scan_limit} steps"
    )))
}

// ---------------------------------------------------------------------------
// Explicit bounds on the least supersingular prime.
// ---------------------------------------------------------------------------

/// Unconditional bound on the least supersingular prime `p` with the
/// searched congruence behavior, at auxiliary cutoff `n_aux`:
/// `ln p <= 2.5e9 * e^{0.018 sqrt(8N e^theta) T^3} * N e^theta * T^6 * h_j`
/// with `T = ln(8N) + theta(n_aux)`.  Returned with prime-bound semantics.
pub fn prime_bound_unconditional(conductor: u64, n_aux: f64, h_j: f64) -> BoundValue {
    let chain = ss_chain(conductor, n_aux, 2.5e9, h_j.max(std::f64::consts::LN_2));
    match chain.ln_p_direct() {
        Some(ln_b) => BoundValue::from_ln_ln_prime(ln_b),
        None => BoundValue::from_ln_ln_ln_prime(chain.ln_ln_p()),
    }
}

/// Conductor-only variant: `h_j` is replaced by its conductor bound, the
/// cutoff becomes `n = max(min_prime, (6N ln N)^2)`, the leading constant
/// grows to `2.5e10`, and the trailing factor is `N ln N`.  Returns the
/// cutoff actually used together with the bound.
pub fn prime_bound_conductor_only(conductor: u64, min_prime: u64) -> (f64, BoundValue) {
    let nf = conductor as f64;
    let n_aux = (min_prime as f64).max((6.0 * nf * nf.ln()).powi(2));
    let chain = ss_chain(conductor, n_aux, 2.5e10, nf * nf.ln());
    let bv = match chain.ln_p_direct() {
        Some(ln_b) => BoundValue::from_ln_ln_prime(ln_b),
        None => BoundValue::from_ln_ln_ln_prime(chain.ln_ln_p()),
    };
    (n_aux, bv)
}

/// Conditional variant, assuming the progression of modulus `q` contains a
/// prime by `c * q^(5/2) (ln q)^2`: then
/// `ln p <= c * q^(5/2) (ln q)^2 * max(ln 2, h_j)`.
pub fn prime_bound_effective(c: f64, q: u64, h_j: f64) -> Result<BoundValue> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidInput(format!("need c > 0, got {c}")));
    }
    if q < 3 {
        return Err(Error::InvalidInput(format!("need q >= 3, got {q}")));
    }
    let qf = q as f64;
    let hj = h_j.max(std::f64::consts::LN_2);
    let ln_b = c.ln() + 2.5 * qf.ln() + 2.0 * qf.ln().ln() + hj.ln();
    Ok(BoundValue::from_ln_ln_prime(ln_b))
}

// ---------------------------------------------------------------------------
// Direct scan.
// ---------------------------------------------------------------------------

/// First supersingular prime `p >= max(5, start)` of the curve, by direct
/// point counts, skipping primes of bad reduction.  `limit` caps the scan.
pub fn find_supersingular_direct(
    model: &WeierstrassModel,
    start: u64,
    limit: u64,
) -> Result<u64> {
    let inv = compute_invariants(model)?;
    if is_cm_j_invariant(&inv.j) {
        return Err(Error::Domain(
            "the curve has complex multiplication: half of all primes are \
             supersingular and the dedicated CM height bound applies"
                .into(),
        ));
    }
    let mut p = start.max(5);
    if p % 2 == 0 {
        p += 1;
    }
    while p <= limit {
        if is_prime_u64(p) {
            match crate::curve::is_supersingular(model, p) {
                Ok(true) => return Ok(p),
                Ok(false) => {}
                Err(Error::Domain(_)) => {} // bad reduction: skip
                Err(e) => return Err(e),
            }
        }
        p += 2;
    }
    Err(Error::EffortExhausted(format!(
        "no supersingular prime in [{}, {limit}]",
        start.max(5)
    )))
}

// ---------------------------------------------------------------------------
// The full pipeline.
// ---------------------------------------------------------------------------

/// Knobs for [`search_supersingular_prime`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Lower threshold `M`: the witness must exceed it (callers set it to
    /// the last prime where mod-p surjectivity is unknown or false).
    pub min_prime: u64,
    /// Override the auxiliary cutoff `n` (otherwise
    /// `max(11, min_prime, ceil(B_E))`).
    pub force_n: Option<u64>,
    /// Trial-division bound for factoring `N_ell`.
    pub trial_bound: u64,
    /// Maximum progression steps when scanning for `ell`.
    pub scan_limit: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            min_prime: 11,
            force_n: None,
            trial_bound: 1_000_000,
            scan_limit: 100_000,
        }
    }
}

/// Witness data inside a certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessInfo {
    pub p: u64,
    /// Multiplicity of `p` in `N_ell`.
    pub multiplicity: u32,
    /// `a_p`, verified to be 0 by a point count.
    pub trace: i64,
    /// Jacobi symbol `(p/ell)`; `-1` unless `p = ell`.
    pub jacobi_vs_ell: i32,
}

/// Wall-clock phase timings, in milliseconds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchTimings {
    pub scan_ms: u64,
    pub class_polynomials_ms: u64,
    pub evaluation_ms: u64,
    pub extraction_ms: u64,
    pub total_ms: u64,
}

/// Everything needed to re-check the search result independently.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupersingularCertificate {
    pub model: String,
    pub conductor: u64,
    pub j_invariant: String,
    /// Auxiliary-prime cutoff used.
    pub n_aux: u64,
    pub system: CongruenceSystem,
    pub ap_threshold: ApThreshold,
    pub ell: u64,
    /// Class numbers `h(-ell)` and `h(-4 ell)` (the degrees of the two
    /// class polynomials).
    pub h_ell: u64,
    pub h_4ell: u64,
    /// Natural log and decimal digit count of `N_ell`.
    pub ln_n_ell: f64,
    pub n_ell_digits: u64,
    /// Explicit upper bound for `ln |N_ell|` that the value was checked
    /// against.
    pub ln_n_ell_bound: f64,
    pub small_factors: Vec<(u64, u32)>,
    pub cofactor_bits: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cofactor_probable_prime: Option<bool>,
    pub witness: WitnessInfo,
    /// Unconditional bound on where a witness was guaranteed.
    pub prime_log_bound: BoundValue,
    pub config: SearchConfig,
    pub timings: SearchTimings,
}

fn ln_abs_plus(x: &BigRational, c: f64) -> f64 {
    // ln(|x| + c), robust for |x| far outside f64 range.
    if x.is_zero() {
        return c.ln();
    }
    let ln_x = ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude());
    let m = ln_x.max(c.ln());
    m + ((ln_x - m).exp() + (c.ln() - m).exp()).ln()
}

/// Explicit upper bound for `ln |N_ell|`:
/// `3 C sqrt(ell) (ln ell)^2 + 4 h(-ell)` with `C = 10^10 ln(|j| + 745)`.
pub fn ln_n_ell_bound(ell: u64, j: &BigRational, h_ell: u64) -> f64 {
    let c = 1e10 * ln_abs_plus(j, 745.0);
    let ef = ell as f64;
    3.0 * c * ef.sqrt() * ef.ln().powi(2) + 4.0 * h_ell as f64
}

struct Extraction {
    small_factors: Vec<(u64, u32)>,
    witness: Option<WitnessInfo>,
    cofactor_bits: u64,
    cofactor_probable_prime: Option<bool>,
}

fn extract_witness(
    n_ell: &BigUint,
    ell: u64,
    model: &WeierstrassModel,
    config: &SearchConfig,
) -> Result<Extraction> {
    let mut rest = n_ell.clone();
    let mut small_factors: Vec<(u64, u32)> = Vec::new();
    for p in sieve_primes(config.trial_bound) {
        if (&rest % p).is_zero() {
            let mut mult = 0u32;
            while (&rest % p).is_zero() {
                rest /= p;
                mult += 1;
            }
            small_factors.push((p, mult));
        }
        if rest.bits() < 2 {
            break;
        }
    }
    let mut witness = None;
    for &(p, mult) in &small_factors {
        if p < 5 || p <= config.min_prime {
            continue;
        }
        let jac = if p == ell {
            0
        } else {
            jacobi_u64(p as i64, ell)?
        };
        match trace_of_frobenius(model, p) {
            Ok(0) => {
                witness = Some(WitnessInfo {
                    p,
                    multiplicity: mult,
                    trace: 0,
                    jacobi_vs_ell: jac,
                });
                break;
            }
            Ok(_) => {}                   // split factor: not supersingular
            Err(Error::Domain(_)) => {}   // bad reduction: not a witness
            Err(e) => return Err(e),
        }
    }
    let cofactor_bits = if rest.bits() < 2 { 0 } else { rest.bits() };
    let cofactor_probable_prime = if cofactor_bits > 0 && cofactor_bits <= 4096 {
        Some(crate::arith::is_probable_prime(&rest))
    } else {
        None
    };
    Ok(Extraction { small_factors, witness, cofactor_bits, cofactor_probable_prime })
}

/// Run the full search.  `conductor` is trusted input (it determines the
/// bad primes forced to split and all the explicit bounds).
pub fn search_supersingular_prime(
    model: &WeierstrassModel,
    conductor: u64,
    config: &SearchConfig,
) -> Result<SupersingularCertificate> {
    let t_total = Instant::now();
    let inv: CurveInvariants = compute_invariants(model)?;
    if is_cm_j_invariant(&inv.j) {
        return Err(Error::Domain(
            "the curve has complex multiplication: supersingular primes have \
             density 1/2 and the dedicated CM height bound applies"
                .into(),
        ));
    }
    let be = b_e_threshold(&inv.j);
    let n_aux = config
        .force_n
        .unwrap_or_else(|| (be.ceil() as u64).max(11).max(config.min_prime));

    let t_scan = Instant::now();
    let system = assemble_congruence(conductor, n_aux)?;
    // q <= 8 rad(6N) e^{theta(n)}: check in logs with exact theta.
    if let Some(theta) = chebyshev_theta(n_aux) {
        let lim = (8.0 * radical_u64(6 * conductor) as f64).ln() + theta.nats + theta.abs_error;
        assert!(
            (system.modulus as f64).ln() <= lim + 1e-9,
            "congruence modulus escaped its theoretical cap"
        );
    }
    let ap_threshold = bennett_x0(system.modulus)?;
    let floor = be.max(7.0).max(n_aux as f64);
    let ell = find_prime_in_ap(system.residue, system.modulus, floor, config.scan_limit)?;
    let scan_ms = t_scan.elapsed().as_millis() as u64;

    let t_poly = Instant::now();
    let p_ell = hilbert_class_polynomial(ell)?;
    let p_4ell = hilbert_class_polynomial(4 * ell)?;
    let h_ell = p_ell.degree() as u64;
    let h_4ell = p_4ell.degree() as u64;
    for (d, h) in [(ell, h_ell), (4 * ell, h_4ell)] {
        if h as f64 > class_number_bound_sharp(d) {
            return Err(Error::VerificationFailed(format!(
                "class number {h} at discriminant -{d} violates its explicit bound"
            )));
        }
    }
    let class_polynomials_ms = t_poly.elapsed().as_millis() as u64;

    let t_eval = Instant::now();
    let v_ell = p_ell.evaluate_at_rational(&inv.j);
    let v_4ell = p_4ell.evaluate_at_rational(&inv.j);
    if !v_ell.is_positive() || !v_4ell.is_negative() {
        return Err(Error::VerificationFailed(format!(
            "sign pattern of the class polynomials at j failed: \
             P_ell(j) {} 0, P_4ell(j) {} 0",
            if v_ell.is_positive() { ">" } else { "<=" },
            if v_4ell.is_negative() { "<" } else { ">=" },
        )));
    }
    let product = v_ell * v_4ell;
    let n_ell: BigUint = product.numer().magnitude().clone();
    if n_ell.is_zero() {
        return Err(Error::VerificationFailed("N_ell vanished".into()));
    }
    let ln_n_ell = ln_biguint(&n_ell);
    let bound = ln_n_ell_bound(ell, &inv.j, h_ell);
    if ln_n_ell > bound {
        return Err(Error::VerificationFailed(format!(
            "ln N_ell = {ln_n_ell:.3} exceeds its explicit bound {bound:.3}"
        )));
    }
    let n_ell_digits = n_ell.to_string().len() as u64;
    let evaluation_ms = t_eval.elapsed().as_millis() as u64;

    let t_extract = Instant::now();
    let ext = extract_witness(&n_ell, ell, model, config)?;
    let extraction_ms = t_extract.elapsed().as_millis() as u64;
    let witness = ext.witness.ok_or_else(|| {
        Error::ExtractionIncomplete(format!(
            "no supersingular witness among prime factors below {}; \
             cofactor has {} bits{} - raise the trial bound",
            config.trial_bound,
            ext.cofactor_bits,
            match ext.cofactor_probable_prime {
                Some(true) => " (probably prime, too large to point-count)",
                Some(false) => " (composite)",
                None => "",
            }
        ))
    })?;

    let prime_log_bound = prime_bound_unconditional(conductor, n_aux as f64, inv.h_j);
    Ok(SupersingularCertificate {
        model: model.to_string(),
        conductor,
        j_invariant: inv.j.to_string(),
        n_aux,
        system,
        ap_threshold,
        ell,
        h_ell,
        h_4ell,
        ln_n_ell,
        n_ell_digits,
        ln_n_ell_bound: bound,
        small_factors: ext.small_factors,
        cofactor_bits: ext.cofactor_bits,
        cofactor_probable_prime: ext.cofactor_probable_prime,
        witness,
        prime_log_bound,
        config: config.clone(),
        timings: SearchTimings {
            scan_ms,
            class_polynomials_ms,
            evaluation_ms,
            extraction_ms,
            total_ms: t_total.elapsed().as_millis() as u64,
        },
    })
}

impl SupersingularCertificate {
    /// Re-check every cheap claim of the certificate from scratch:
    /// congruences, primality, quadratic characters, class-number bounds,
    /// and the witness's vanishing trace (by a fresh point count).  The
    /// class polynomials themselves are not recomputed.
    pub fn revalidate(&self) -> Result<()> {
        let model: WeierstrassModel = self.model.parse()?;
        let inv = compute_invariants(&model)?;
        if inv.j.to_string() != self.j_invariant {
            return Err(Error::VerificationFailed("j-invariant mismatch".into()));
        }
        if !is_prime_u64(self.ell) {
            return Err(Error::VerificationFailed(format!("{} is not prime", self.ell)));
        }
        let be = b_e_threshold(&inv.j);
        if (self.ell as f64) <= be.max(7.0) {
            return Err(Error::VerificationFailed(format!(
                "ell = {} does not clear the sign threshold {be:.3}",
                self.ell
            )));
        }
        for c in &self.system.conditions {
            if self.ell % c.modulus != c.residue {
                return Err(Error::VerificationFailed(format!(
                    "ell = {} violates ell = {} (mod {})",
                    self.ell, c.residue, c.modulus
                )));
            }
        }
        if self.ell % self.system.modulus != self.system.residue {
            return Err(Error::VerificationFailed("combined congruence violated".into()));
        }
        // Every forced odd prime must indeed have (p/ell) = +1.
        for c in &self.system.conditions {
            if c.modulus % 2 == 1 && jacobi_u64(c.modulus as i64, self.ell)? != 1 {
                return Err(Error::VerificationFailed(format!(
                    "({}/{}) != +1 despite the congruence",
                    c.modulus, self.ell
                )));
            }
        }
        for (d, h) in [(self.ell, self.h_ell), (4 * self.ell, self.h_4ell)] {
            if h as f64 > class_number_bound_sharp(d) {
                return Err(Error::VerificationFailed(format!(
                    "stored class number {h} at -{d} violates its bound"
                )));
            }
        }
        if self.ln_n_ell > self.ln_n_ell_bound {
            return Err(Error::VerificationFailed("stored ln N_ell exceeds its bound".into()));
        }
        let w = &self.witness;
        if !is_prime_u64(w.p) || w.p < 5 {
            return Err(Error::VerificationFailed(format!(
                "witness {} is not a prime >= 5",
                w.p
            )));
        }
        if w.p <= self.config.min_prime {
            return Err(Error::VerificationFailed(format!(
                "witness {} does not exceed the requested threshold {}",
                w.p, self.config.min_prime
            )));
        }
        let jac = if w.p == self.ell { 0 } else { jacobi_u64(w.p as i64, self.ell)? };
        if jac != w.jacobi_vs_ell {
            return Err(Error::VerificationFailed("stored Jacobi symbol is wrong".into()));
        }
        if w.p != self.ell && jac != -1 {
            return Err(Error::VerificationFailed(format!(
                "witness {} is split at ell = {}: inconsistent with supersingularity",
                w.p, self.ell
            )));
        }
        let trace = trace_of_frobenius(&model, w.p)?;
        if trace != 0 || w.trace != 0 {
            return Err(Error::VerificationFailed(format!(
                "witness trace a_{} = {trace}, expected 0",
                w.p
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve_11a3() -> WeierstrassModel {
        "0,-1,1,0,0".parse().unwrap()
    }

    #[test]
    fn congruence_assembly_reference_instances() {
        // n = 3: odd primes {3} from the cutoff plus {3, 11} from 6N = 66.
        let sys = assemble_congruence(11, 3).unwrap();
        assert_eq!(sys.modulus, 264);
        assert_eq!(sys.residue, 167);
        assert_eq!(sys.conditions.len(), 3);
        // n = 11: odd primes {3, 5, 7, 11}.
        let sys = assemble_congruence(11, 11).unwrap();
        assert_eq!(sys.modulus, 9240);
        assert_eq!(sys.residue, 7031);
        assert_eq!(sys.conditions.len(), 5);
        for c in &sys.conditions {
            assert!(!c.reason.is_empty());
        }
        // the forced residues do what they claim for the known prime 43991
        for c in &sys.conditions {
            assert_eq!(43991 % c.modulus, c.residue);
            if c.modulus % 2 == 1 {
                assert_eq!(jacobi_u64(c.modulus as i64, 43991).unwrap(), 1);
            }
        }
    }

    #[test]
    fn bennett_thresholds() {
        let t = bennett_x0(264).unwrap();
        assert_eq!(t.value, Some(7.94e9));
        let t = bennett_x0(9240).unwrap();
        assert!((t.value.unwrap() - 520_562_770.5627706).abs() < 1e-4);
        let t = bennett_x0(200_000).unwrap();
        assert!(t.value.is_none());
        assert!((t.ln_value - 29278.26583652746).abs() < 1e-6);
        assert!(bennett_x0(2).is_err());
    }

    #[test]
    fn ap_scan_reference_instances() {
        assert_eq!(find_prime_in_ap(167, 264, 8.4, 100).unwrap(), 167);
        // 7031 = 79 * 89, then three more composites before 43991 at k = 4.
        assert_eq!(find_prime_in_ap(7031, 9240, 8.4, 100).unwrap(), 43991);
        assert!(find_prime_in_ap(7031, 9240, 1e18, 10).is_err());
    }

    #[test]
    fn direct_scan_finds_19_for_11a3() {
        let m = curve_11a3();
        assert_eq!(find_supersingular_direct(&m, 5, 1000).unwrap(), 19);
        // starting above 19 finds the next one instead
        let next = find_supersingular_direct(&m, 20, 2000).unwrap();
        assert!(next > 19);
        assert!(crate::curve::is_supersingular(&m, next).unwrap());
        // CM curve refused
        let cm: WeierstrassModel = "0,0,0,1,0".parse().unwrap();
        assert!(matches!(
            find_supersingular_direct(&cm, 5, 100),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn prime_bound_reference_values() {
        let b = prime_bound_unconditional(11, 11.0, std::f64::consts::LN_2);
        assert_eq!(b.level, 1);
        assert!((b.value - 14864.20632348413).abs() < 1e-5, "{}", b.value);
        let b = prime_bound_unconditional(11, 11.0, 4096f64.ln());
        assert!((b.value - 14866.69123013392).abs() < 1e-5, "{}", b.value);
        let (n_used, b) = prime_bound_conductor_only(11, 11);
        assert!((n_used - 25046.57197642901).abs() < 1e-6);
        assert_eq!(b.level, 2);
        assert!((b.value - 12455.96249781909).abs() < 1e-6, "{}", b.value);
        let b = prime_bound_effective(1.0, 9240, std::f64::consts::LN_2).unwrap();
        assert_eq!(b.level, 0);
        assert!((b.value - 474318803789.2393).abs() < 0.5, "{}", b.value);
        assert!(prime_bound_effective(0.0, 9240, 0.7).is_err());
    }

    #[test]
    fn class_number_bound_values() {
        assert!((class_number_bound_sharp(43991) - 847.3312487266005).abs() < 1e-8);
        assert!((class_number_bound_simple(43991) - 2141.419250204380).abs() < 1e-8);
        for d in [11u64, 167, 668, 43991, 175964] {
            assert!(class_number_bound_sharp(d) <= class_number_bound_simple(d));
        }
        // the actual class numbers respect the sharp bound
        for d in [167u64, 668] {
            let h = crate::classpoly::class_number(d).unwrap();
            assert_eq!(h, 11);
            assert!((h as f64) <= class_number_bound_sharp(d));
        }
    }

    #[test]
    fn small_elkies_instance_end_to_end() {
        let m = curve_11a3();
        let config = SearchConfig {
            force_n: Some(3),
            trial_bound: 1_000_000,
            ..SearchConfig::default()
        };
        let cert = search_supersingular_prime(&m, 11, &config).unwrap();
        assert_eq!(cert.ell, 167);
        assert_eq!(cert.h_ell, 11);
        assert_eq!(cert.h_4ell, 11);
        assert_eq!(cert.n_ell_digits, 183);
        assert_eq!(cert.witness.p, 569);
        assert_eq!(cert.witness.multiplicity, 2);
        assert_eq!(cert.witness.trace, 0);
        assert_eq!(cert.witness.jacobi_vs_ell, -1);
        assert!(cert
            .small_factors
            .iter()
            .any(|&(p, m)| p == 569 && m == 2));
        cert.revalidate().unwrap();
        // a corrupted certificate must fail revalidation
        let mut bad = cert.clone();
        bad.witness.p = 571;
        assert!(bad.revalidate().is_err());
        let mut bad = cert.clone();
        bad.ell = 167 + 264;
        assert!(bad.revalidate().is_err());
        // serializes to proper JSON
        let j = serde_json::to_value(&cert).unwrap();
        assert_eq!(j["ell"], 167);
        assert_eq!(j["witness"]["p"], 569);
    }

    #[test]
    fn cm_curve_refused_by_search() {
        let cm: WeierstrassModel = "0,0,0,1,0".parse().unwrap();
        let err = search_supersingular_prime(&cm, 64, &SearchConfig::default());
        assert!(matches!(err, Err(Error::Domain(_))));
    }
}
