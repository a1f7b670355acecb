//! Weierstrass models over the rationals: invariants, reduction data, and
//! traces of Frobenius.
//!
//! A curve is given by the long Weierstrass equation
//! `y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6` with rational
//! coefficients.  This module computes the standard invariants
//! (`b2, b4, b6, b8, c4, c6`, discriminant, `j`), the logarithmic height
//! of `j`, point counts modulo odd primes (by quadratic-character sums on
//! the completed square), supersingularity tests, and the explicit
//! curve-dependent thresholds used by the supersingular-prime search and
//! the height-bound formulas:
//!
//! * `b_e_threshold`: the `j`-dependent cutoff above which auxiliary primes
//!   are large enough for the class-polynomial sign argument, and
//! * `surjectivity_threshold`: the explicit cutoff above which the mod-`p`
//!   Galois representation of a non-CM curve is guaranteed surjective,
//! * `j_height_from_conductor`: the explicit conductor-only upper bound for
//!   the height of `j`, in both its full and simplified forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

use crate::arith::{is_prime_u64, jacobi_u64, ln_biguint};
use crate::{Error, Result};

/// A long Weierstrass model with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassModel {
    pub a1: BigRational,
    pub a2: BigRational,
    pub a3: BigRational,
    pub a4: BigRational,
    pub a6: BigRational,
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        BigInt::from_str(t.trim())
            .map_err(|_| Error::InvalidInput(format!("not an integer: {t:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

impl FromStr for WeierstrassModel {
    type Err = Error;

    /// Parse the comma-separated form `a1,a2,a3,a4,a6`; each coefficient is
    /// an integer or a fraction like `-4096/11`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 5 {
            return Err(Error::InvalidInput(format!(
                "expected five comma-separated coefficients a1,a2,a3,a4,a6, got {}",
                parts.len()
            )));
        }
        Ok(WeierstrassModel {
            a1: parse_rational(parts[0])?,
            a2: parse_rational(parts[1])?,
            a3: parse_rational(parts[2])?,
            a4: parse_rational(parts[3])?,
            a6: parse_rational(parts[4])?,
        })
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{}",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

impl WeierstrassModel {
    pub fn new_integral(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Self {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        WeierstrassModel {
            a1: r(a1),
            a2: r(a2),
            a3: r(a3),
            a4: r(a4),
            a6: r(a6),
        }
    }

    /// Rescale by `(x, y) -> (u^2 x, u^3 y)`: `a_i -> a_i * u^i`.
    fn rescale(&self, u: &BigRational) -> Self {
        let u2 = u * u;
        let u3 = &u2 * u;
        WeierstrassModel {
            a1: &self.a1 * u,
            a2: &self.a2 * &u2,
            a3: &self.a3 * &u3,
            a4: &self.a4 * &u2 * &u2,
            a6: &self.a6 * &u3 * &u3,
        }
    }
}

/// Exact invariants of a Weierstrass model, plus the height of `j`.
#[derive(Debug, Clone, Serialize)]
pub struct CurveInvariants {
    #[serde(serialize_with = "ser_rat")]
    pub b2: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub b4: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub b6: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub b8: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub c4: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub c6: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub discriminant: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub j: BigRational,
    /// `h(j) = log max(|num j|, |den j|)` with `j` in lowest terms.
    pub j_height: f64,
    /// `max(log 2, h(j))`, the quantity entering every bound formula.
    pub h_j: f64,
}

fn ser_rat<S: serde::Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Logarithmic (Weil) height of a rational number in lowest terms.
pub fn rational_height(x: &BigRational) -> f64 {
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    let m = if n >= d { n } else { d };
    if m.is_one() || m.is_zero() {
        0.0
    } else {
        ln_biguint(m)
    }
}

/// Compute the standard invariants; fails only for singular models
/// (discriminant zero).
pub fn compute_invariants(model: &WeierstrassModel) -> Result<CurveInvariants> {
    let (a1, a2, a3, a4, a6) = (&model.a1, &model.a2, &model.a3, &model.a4, &model.a6);
    let b2 = a1 * a1 + a2 * BigRational::from_integer(4.into());
    let b4 = a4 * BigRational::from_integer(2.into()) + a1 * a3;
    let b6 = a3 * a3 + a6 * BigRational::from_integer(4.into());
    let b8 = a1 * a1 * a6 + a2 * a6 * BigRational::from_integer(4.into()) - a1 * a3 * a4
        + a2 * (a3 * a3)
        - a4 * a4;
    let c4 = &b2 * &b2 - &b4 * BigRational::from_integer(24.into());
    let c6 = -(&b2 * &b2 * &b2) + &b2 * &b4 * BigRational::from_integer(36.into())
        - &b6 * BigRational::from_integer(216.into());
    let disc = -(&b2 * &b2 * &b8)
        - &b4 * &b4 * &b4 * BigRational::from_integer(8.into())
        - &b6 * &b6 * BigRational::from_integer(27.into())
        + &b2 * &b4 * &b6 * BigRational::from_integer(9.into());
    if disc.is_zero() {
        return Err(Error::Domain(
            "singular model: discriminant is zero".into(),
        ));
    }
    debug_assert_eq!(
        &disc * BigRational::from_integer(1728.into()),
        &c4 * &c4 * &c4 - &c6 * &c6
    );
    let j = &c4 * &c4 * &c4 / &disc;
    let j_height = rational_height(&j);
    Ok(CurveInvariants {
        b2,
        b4,
        b6,
        b8,
        c4,
        c6,
        discriminant: disc,
        j,
        j_height,
        h_j: j_height.max(std::f64::consts::LN_2),
    })
}

/// p-adic valuation of a rational (0 for zero input by convention here).
fn val_p(x: &BigRational, p: u64) -> i64 {
    if x.is_zero() {
        return i64::MAX / 2; // effectively +infinity for our comparisons
    }
    let pb = BigInt::from(p);
    let count = |mut n: BigInt| -> i64 {
        let mut v = 0;
        while (&n % &pb).is_zero() {
            n /= &pb;
            v += 1;
        }
        v
    };
    count(x.numer().clone()) - count(x.denom().clone())
}

/// A model with p-integral coefficients that is quasi-minimal at `p`:
/// scaled by powers of `p` so each `a_i` is `p`-integral, then reduced
/// while `val_p(c4) >= 4` and `val_p(disc) >= 12` (for `p >= 5` this is the
/// exact minimality criterion).
fn p_quasi_minimal(model: &WeierstrassModel, p: u64) -> WeierstrassModel {
    let coeffs = |m: &WeierstrassModel| [(1u32, m.a1.clone()), (2, m.a2.clone()), (3, m.a3.clone()), (4, m.a4.clone()), (6, m.a6.clone())];
    // Scale up: least m >= 0 with val_p(a_i) + i*m >= 0 for all i.
    let mut m_up: i64 = 0;
    for (i, a) in coeffs(model) {
        if !a.is_zero() {
            let v = val_p(&a, p);
            if v < 0 {
                m_up = m_up.max((-v + i as i64 - 1) / i as i64);
            }
        }
    }
    let scale = BigRational::from_integer(BigInt::from(p).pow(m_up as u32));
    let mut cur = model.rescale(&scale);
    // Scale down while the (c4, disc) valuations permit.
    loop {
        let inv = compute_invariants(&cur).expect("nonsingular by construction");
        if val_p(&inv.c4, p) >= 4 && val_p(&inv.discriminant, p) >= 12 {
            let down = cur.rescale(&BigRational::new(BigInt::one(), BigInt::from(p)));
            if [&down.a1, &down.a2, &down.a3, &down.a4, &down.a6]
                .iter()
                .all(|a| val_p(a, p) >= 0)
            {
                cur = down;
                continue;
            }
        }
        return cur;
    }
}

fn rational_mod_p(x: &BigRational, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let n = num_integer::Integer::mod_floor(x.numer(), &pb)
        .to_u64()
        .expect("residue fits");
    let d = num_integer::Integer::mod_floor(x.denom(), &pb)
        .to_u64()
        .expect("residue fits");
    assert!(d != 0, "denominator not invertible mod {p}");
    let dinv = crate::arith::powmod_u64(d, p - 2, p);
    crate::arith::mulmod_u64(n, dinv, p)
}

/// Trace of Frobenius `a_p = p + 1 - #E(F_p)` at an odd prime of good
/// reduction.
///
/// The model is first made `p`-integral and quasi-minimal; bad reduction
/// (discriminant divisible by `p` after minimalization) is an error.  The
/// count runs over the completed square `v^2 = 4x^3 + b2 x^2 + 2 b4 x + b6`
/// via Legendre-symbol sums, which is valid for every odd `p` including 3.
pub fn trace_of_frobenius(model: &WeierstrassModel, p: u64) -> Result<i64> {
    if p < 3 || !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!(
            "trace requires an odd prime, got {p}"
        )));
    }
    if p > (1u64 << 31) {
        return Err(Error::EffortExhausted(format!(
            "point count at p = {p} exceeds the supported range (2^31)"
        )));
    }
    let m = p_quasi_minimal(model, p);
    let inv = compute_invariants(&m)?;
    if val_p(&inv.discriminant, p) > 0 {
        return Err(Error::Domain(format!(
            "bad reduction at {p}: discriminant ≡ 0 (mod {p})"
        )));
    }
    let b2 = rational_mod_p(&inv.b2, p);
    let b4 = rational_mod_p(&inv.b4, p);
    let b6 = rational_mod_p(&inv.b6, p);
    let two_b4 = crate::arith::mulmod_u64(2, b4, p);
    let mut sum: i64 = 0;
    for x in 0..p {
        // g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 (mod p)
        let x2 = crate::arith::mulmod_u64(x, x, p);
        let x3 = crate::arith::mulmod_u64(x2, x, p);
        let mut g = crate::arith::mulmod_u64(4, x3, p);
        g = (g + crate::arith::mulmod_u64(b2, x2, p)) % p;
        g = (g + crate::arith::mulmod_u64(two_b4, x, p)) % p;
        g = (g + b6) % p;
        sum += jacobi_u64(g as i64, p).expect("odd prime modulus") as i64;
    }
    Ok(-sum)
}

/// Whether `E` is supersingular at `p >= 5` (equivalent to `a_p = 0` in
/// this range).  Primes 2 and 3 are refused: the trace criterion does not
/// characterize supersingularity there.
pub fn is_supersingular(model: &WeierstrassModel, p: u64) -> Result<bool> {
    if p < 5 {
        return Err(Error::InvalidInput(format!(
            "supersingularity test requires p >= 5, got {p}"
        )));
    }
    Ok(trace_of_frobenius(model, p)? == 0)
}

/// The `j`-dependent threshold above which auxiliary primes `l ≡ 3 (mod 4)`
/// certify sign conditions on class polynomials:
///
/// * `j > 0`: `(log j / 2 pi)^2`
/// * `j < 0`: `(log |j| / pi + 1)^2`
/// * `j = 0`: `0`
///
/// The result is rounded up a hair so callers comparing `l > B` stay on the
/// safe side.
pub fn b_e_threshold(j: &BigRational) -> f64 {
    if j.is_zero() {
        return 0.0;
    }
    let ln_abs = ln_biguint(j.numer().magnitude()) - ln_biguint(j.denom().magnitude());
    let base = if j.is_positive() {
        ln_abs / (2.0 * std::f64::consts::PI)
    } else {
        ln_abs / std::f64::consts::PI + 1.0
    };
    // A negative base (|j| < 1, j > 0 side) still squares to a valid bound.
    let v = base * base;
    v * (1.0 + 1e-12) + 1e-300
}

/// Explicit surjectivity threshold: for a non-CM curve, every prime
/// `p >= ceil(1e7 * max(985, h_j/12 + 3)^2)` has surjective mod-`p` Galois
/// representation.  Rounded up, so the guarantee direction is preserved.
pub fn surjectivity_threshold(h_j: f64) -> Result<u128> {
    if !h_j.is_finite() || h_j < 0.0 {
        return Err(Error::InvalidInput(format!(
            "h_j must be a nonnegative real, got {h_j}"
        )));
    }
    let base = (h_j / 12.0 + 3.0).max(985.0);
    if base <= 985.0 {
        return Ok(10_000_000u128 * 985 * 985);
    }
    let sq = base * base * (1.0 + 1e-12);
    let v = 1e7 * sq;
    if v >= 1e38 {
        return Err(Error::Domain(format!(
            "surjectivity threshold overflows at h_j = {h_j}"
        )));
    }
    Ok(v.ceil() as u128)
}

/// Conductor-only bound for the height of `j`, both as the full explicit
/// chain and in its simplified form.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct JHeightBound {
    /// Bound on the Faltings-style height term:
    /// `N/12 log N + N/32 logloglog N + N/18 + 2 pi + (1/2) log(163/pi)`.
    /// The triple log is evaluated as a real number even when negative.
    pub faltings_term: f64,
    /// `12 * faltings_term + 6 log max(1, faltings_term) + 75.84`.
    pub full: f64,
    /// `10 N log N`, the simplified cap (valid for `N >= 11`).
    pub simplified: f64,
}

/// Explicit `h(j) <= ...` bounds from the conductor alone (`N >= 11`).
pub fn j_height_from_conductor(conductor: u64) -> Result<JHeightBound> {
    if conductor < 11 {
        return Err(Error::InvalidInput(format!(
            "conductor-only height bound needs N >= 11, got {conductor}"
        )));
    }
    let n = conductor as f64;
    let faltings = n / 12.0 * n.ln() + n / 32.0 * n.ln().ln().ln() + n / 18.0
        + 2.0 * std::f64::consts::PI
        + 0.5 * (163.0 / std::f64::consts::PI).ln();
    let full = 12.0 * faltings + 6.0 * faltings.max(1.0).ln() + 75.84;
    let simplified = 10.0 * n * n.ln();
    Ok(JHeightBound {
        faltings_term: faltings,
        full,
        simplified,
    })
}

/// Rational CM `j`-invariants: the thirteen class-number-one values.  Used
/// to refuse the non-CM pipeline (and advise the CM bound instead).
pub fn is_cm_j_invariant(j: &BigRational) -> bool {
    if !j.is_integer() {
        return false;
    }
    const CM_J: [i64; 13] = [
        0,
        1728,
        -3375,
        8000,
        54000,
        287_496,
        -32768,
        16_581_375,
        -884_736,
        -12_288_000,
        -884_736_000,
        -147_197_952_000,
        -262_537_412_640_768_000,
    ];
    CM_J.iter().any(|&v| j.to_integer() == BigInt::from(v))
}
