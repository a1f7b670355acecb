//! Hilbert class polynomials with certified integer coefficients.
//!
//! For a positive integer `d` with `-d ≡ 0, 1 (mod 4)`, the Hilbert class
//! polynomial `P_d` is the monic integer polynomial whose roots are the
//! `j`-invariants of the complex-multiplication points
//! `tau = (-b + i sqrt(d)) / (2a)` attached to the reduced primitive binary
//! quadratic forms `(a, b, c)` of discriminant `-d`.  This module
//!
//! * enumerates reduced forms (so `degree P_d` = class number),
//! * evaluates `j(tau)` in ball arithmetic from its `q`-expansion with
//!   rigorous truncation-tail bounds,
//! * assembles the polynomial by a balanced product tree over real linear
//!   and conjugate-pair quadratic factors, and
//! * rounds each coefficient to an integer only when its enclosure pins
//!   down a unique integer (radius < 1/4 and midpoint within < 1/2 - radius
//!   of the integer), doubling the working precision otherwise.
//!
//! The `j`-function is evaluated as `j = E4^3 / (q prod (1 - q^n)^24)`
//! where `E4 = 1 + 240 sum sigma_3(n) q^n`: the eta-product form of the
//! discriminant avoids the catastrophic cancellation of `E4^3 - E6^2` and
//! its sparse pentagonal-number series costs only `O(sqrt(K))` terms.
//!
//! Real-root counts of the exact integer polynomials are computed by Sturm
//! sequences over the integers (even-power pseudo-remainders), since sign
//! facts about `P_l(j_E)` feed correctness claims downstream.

use astro_float::Consts;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ball::{pow2, CBall, RBall};
use crate::{Error, Result};

/// A reduced primitive binary quadratic form `(a, b, c)` of discriminant
/// `b^2 - 4ac = -d < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedForm {
    pub a: u64,
    pub b: i64,
    pub c: u64,
}

impl ReducedForm {
    /// Forms fixed by conjugation (`b = 0`, `b = a`, or `a = c`); their
    /// `j`-value is real.
    pub fn is_self_paired(&self) -> bool {
        self.b == 0 || self.b as u64 == self.a || self.a == self.c
    }
}

fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    crate::arith::gcd_u64(crate::arith::gcd_u64(a, b), c)
}

/// Validity check for `-d` as a discriminant: `d > 0` and `-d ≡ 0, 1 mod 4`.
fn check_discriminant(d: u64) -> Result<()> {
    if d == 0 || !(d % 4 == 0 || d % 4 == 3) {
        return Err(Error::InvalidInput(format!(
            "-{d} is not a discriminant: need d > 0 and -d ≡ 0 or 1 (mod 4)"
        )));
    }
    Ok(())
}

/// All reduced primitive forms of discriminant `-d`, in ascending `(b, a)`
/// enumeration order with the `(a, -b, c)` partner immediately after its
/// `(a, b, c)` mate.
pub fn reduced_forms(d: u64) -> Result<Vec<ReducedForm>> {
    check_discriminant(d)?;
    let mut out = Vec::new();
    let mut b = (d % 2) as u64; // b has the parity of d
    while 3 * b * b <= d {
        if (b * b + d) % 4 == 0 {
            let m = (b * b + d) / 4; // a * c
            let mut a = b.max(1);
            while a * a <= m {
                if m % a == 0 {
                    let c = m / a;
                    if gcd3(a, b, c) == 1 {
                        out.push(ReducedForm { a, b: b as i64, c });
                        if 0 < b && b < a && a < c {
                            out.push(ReducedForm { a, b: -(b as i64), c });
                        }
                    }
                }
                a += 1;
            }
        }
        b += 2;
    }
    Ok(out)
}

/// Class number of the order of discriminant `-d`.
pub fn class_number(d: u64) -> Result<u64> {
    Ok(reduced_forms(d)?.len() as u64)
}

/// Monic integer polynomial, coefficients lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPolynomial {
    pub d: u64,
    pub coeffs: Vec<BigInt>,
}

impl ClassPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Exact evaluation at a rational point, in lowest terms.
    ///
    /// Uses the homogeneous Horner scheme `sum c_k n^k t^(h-k) / t^h` so
    /// only one rational reduction happens at the end.
    pub fn evaluate_at_rational(&self, x: &BigRational) -> BigRational {
        let n = x.numer();
        let t = x.denom();
        let h = self.degree();
        let mut acc = self.coeffs[h].clone();
        let mut tp = BigInt::one();
        for k in (0..h).rev() {
            tp *= t;
            acc = acc * n + &self.coeffs[k] * &tp;
        }
        BigRational::new(acc, t.pow(h as u32))
    }
}

/// Number of `E4`-series terms needed so the rigorous tail bound sits below
/// `2^-(p+8)`, given `step = -log2 |q| >= 7.8` (guaranteed by reduction).
fn e4_terms_needed(step: f64, p: usize) -> usize {
    assert!(step > 7.0, "|q| too large: not a reduced form? step = {step}");
    let target = -((p + 8) as f64);
    let mut k = ((p + 16) as f64 / step).ceil().max(8.0) as usize;
    while e4_tail_log2(k, step) > target {
        k += 1 + k / 8;
    }
    k
}

/// `log2` of the tail bound `1.21 (K+1)^3 |q|^(K+1) / (1 - rho)` of the
/// `E4` series after `K` terms, where `rho <= ((K+1)/K)^3 |q| < 0.01`.
fn e4_tail_log2(k: usize, step: f64) -> f64 {
    // log2(240 * 1.21) < 8.2 absorbs the 240 coefficient; 0.1 covers
    // 1/(1 - rho).
    8.2 + 3.0 * ((k + 1) as f64).log2() - (k + 1) as f64 * step + 0.1
}

/// sigma_3 values `1..=n` by a divisor sieve.
fn sigma3_table(n: usize) -> Vec<u64> {
    let mut s = vec![0u64; n + 1];
    for d in 1..=n {
        let d3 = (d as u64).pow(3);
        let mut m = d;
        while m <= n {
            s[m] += d3;
            m += d;
        }
    }
    s
}

/// Evaluate `j` from a certified ball for `q = e^{2 pi i tau}`.
///
/// `step` must be a certified lower bound on `-log2 |q|`; `sigma3` must
/// cover the `E4` truncation order for that step.
fn eval_j_from_q(q: &CBall, step: f64, p: usize, sigma3: &[u64]) -> CBall {
    // E4 = 1 + 240 sum sigma3(n) q^n, truncated with a rigorous tail.
    let kmax = e4_terms_needed(step, p);
    assert!(sigma3.len() > kmax, "sigma3 table too short: len {} kmax {} step {} p {}", sigma3.len(), kmax, step, p);
    let prec_at = |exp_pow: f64| -> usize {
        let drop = (exp_pow * step) as isize - 64;
        if drop <= 0 {
            p
        } else {
            p.saturating_sub(drop as usize).max(192)
        }
    };
    let mut e4 = CBall::one(p);
    let mut pw = q.clone();
    for n in 1..=kmax {
        if n > 1 {
            pw = pw.mul(q, prec_at(n as f64));
        }
        let term = pw.mul_u64(240 * sigma3[n], prec_at(n as f64));
        e4 = e4.add(&term, p);
    }
    let e4 = e4.widen(&pow2(e4_tail_log2(kmax, step).ceil() as i32));

    // f = prod (1 - q^n) via the pentagonal-number series
    // sum_{k in Z} (-1)^k q^{k(3k-1)/2}, exponents strictly increasing.
    let eta_stop = (p + 16) as f64;
    let mut f = CBall::one(p);
    let mut cur: u64 = 0; // exponent currently held by `pw`
    let mut pw = CBall::one(p);
    let last_exp;
    let mut k = 1u64;
    'eta: loop {
        for g in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
            if g as f64 * step >= eta_stop {
                last_exp = g;
                break 'eta;
            }
            // advance pw from exponent `cur` to `g`
            let pg = prec_at(g as f64);
            let mut delta = g - cur;
            let mut qe = q.clone();
            while delta > 0 {
                if delta & 1 == 1 {
                    pw = pw.mul(&qe, pg);
                }
                delta >>= 1;
                if delta > 0 {
                    qe = qe.mul(&qe, pg);
                }
            }
            cur = g;
            f = if k % 2 == 1 { f.sub(&pw, p) } else { f.add(&pw, p) };
        }
        k += 1;
    }
    // Tail: remaining exponents are distinct integers >= last_exp, so the
    // remainder is at most |q|^last_exp / (1 - |q|).
    let f = f.widen(&pow2((-(last_exp as f64) * step + 0.1).ceil() as i32));

    let e4sq = e4.mul(&e4, p);
    let e4cubed = e4sq.mul(&e4, p);
    let f24 = f.powi(24, p);
    let den = q.mul(&f24, p);
    e4cubed.div(&den, p)
}

/// Certified evaluation of the modular `j`-function at the quadratic point
/// `tau = (-b + i sqrt(d)) / (2a)` (with `i sqrt(d)` the principal root).
///
/// This parametrization covers every CM point exactly: `tau = i` is
/// `(d, a, b) = (4, 1, 0)`, `tau = (1 + i sqrt(3))/2` is `(3, 1, -1)`, and
/// the form points of `hilbert_class_polynomial` are `(d, a, b)` verbatim.
/// Requires `Im tau = sqrt(d)/(2a) >= sqrt(3)/2`, i.e. `3 a^2 <= d`, so the
/// series converge fast (every reduced form satisfies this).
pub fn eval_j_quadratic_point(d: u64, a: u64, b: i64, precision: usize) -> Result<CBall> {
    if d == 0 || a == 0 || 3 * a * a > d {
        return Err(Error::InvalidInput(format!(
            "tau = (-({b}) + i sqrt({d}))/(2*{a}) is outside the certified region 3a^2 <= d"
        )));
    }
    if precision < 64 {
        return Err(Error::InvalidInput("precision must be at least 64 bits".into()));
    }
    let mut cc = Consts::new().expect("constants cache");
    let p = precision;
    let pi = RBall::pi(p, &mut cc);
    let sqrt_d = RBall::from_u64(d, p).sqrt(p);
    let pi_sqrt_d = pi.mul(&sqrt_d, p);
    let step = step_bits(d, a);
    let sigma3 = sigma3_table(e4_terms_needed(step, p) + 1);
    Ok(eval_j_point(a, b, p, &mut cc, &pi, &pi_sqrt_d, step, &sigma3))
}

/// Certified lower bound on `-log2 |q|` at the form point:
/// `|q| = e^{-pi sqrt(d) / a}`.
fn step_bits(d: u64, a: u64) -> f64 {
    (std::f64::consts::PI * (d as f64).sqrt() / a as f64) / std::f64::consts::LN_2
        * (1.0 - 1e-9)
}

#[allow(clippy::too_many_arguments)]
fn eval_j_point(
    a: u64,
    b: i64,
    p: usize,
    cc: &mut Consts,
    pi: &RBall,
    pi_sqrt_d: &RBall,
    step: f64,
    sigma3: &[u64],
) -> CBall {
    // q = e^{2 pi i tau} = e^{-pi sqrt(d)/a} (cos(pi b/a) - i sin(pi b/a))
    let rho = pi_sqrt_d.div_u64(a, p).neg().exp(p, cc);
    let ang = pi.mul_i64(-b, p).div_u64(a, p);
    let q = CBall::new(rho.mul(&ang.cos(p, cc), p), rho.mul(&ang.sin(p, cc), p));
    eval_j_from_q(&q, step, p, sigma3)
}

/// Compute the Hilbert class polynomial `P_d`, with every coefficient's
/// integer rounding certified by its enclosure.
pub fn hilbert_class_polynomial(d: u64) -> Result<ClassPolynomial> {
    let forms = reduced_forms(d)?;
    let h = forms.len();
    let sum_inv_a: f64 = forms.iter().map(|f| 1.0 / f.a as f64).sum();
    // Classical size heuristic: total coefficient bits ~ pi sqrt(d)/ln 2 *
    // sum(1/a), plus h for the binomial spread, plus guard bits.
    let est = (std::f64::consts::PI * (d as f64).sqrt() / std::f64::consts::LN_2
        * sum_inv_a)
        .ceil() as usize;
    let mut p = est + 2 * h + 256;
    let mut cc = Consts::new().expect("constants cache");
    for _attempt in 0..6 {
        if let Some(coeffs) = try_hilbert(d, &forms, p, &mut cc) {
            return Ok(ClassPolynomial { d, coeffs });
        }
        p *= 2;
    }
    Err(Error::PrecisionExhausted(format!(
        "class polynomial for -{d} did not certify at {p} bits"
    )))
}

fn try_hilbert(d: u64, forms: &[ReducedForm], p: usize, cc: &mut Consts) -> Option<Vec<BigInt>> {
    let pi = RBall::pi(p, cc);
    let sqrt_d = RBall::from_u64(d, p).sqrt(p);
    let pi_sqrt_d = pi.mul(&sqrt_d, p);
    // The truncation-order search is not monotone in the step, so take the
    // maximum over the forms that are actually evaluated.
    let kmax = forms
        .iter()
        .filter(|f| f.b >= 0)
        .map(|f| e4_terms_needed(step_bits(d, f.a), p))
        .max()
        .expect("nonempty form list");
    let sigma3 = sigma3_table(kmax + 1);

    let mut factors: Vec<Vec<RBall>> = Vec::new();
    for f in forms.iter().filter(|f| f.b >= 0) {
        let j = eval_j_point(f.a, f.b, p, cc, &pi, &pi_sqrt_d, step_bits(d, f.a), &sigma3);
        if f.is_self_paired() {
            // j is genuinely real; the imaginary enclosure must agree.
            debug_assert!(j.im.contains_zero());
            factors.push(vec![j.re.neg(), RBall::one(p)]);
        } else {
            // Conjugate pair: x^2 - 2 Re(j) x + |j|^2.
            let nsq = j.norm_sqr(p);
            let tr = j.re.mul_pow2(1);
            factors.push(vec![nsq, tr.neg(), RBall::one(p)]);
        }
    }
    let prod = product_tree(&factors, p);
    debug_assert_eq!(prod.len(), forms.len() + 1);

    let mut coeffs = Vec::with_capacity(prod.len());
    for ball in &prod[..prod.len() - 1] {
        coeffs.push(ball.to_integer_certified()?);
    }
    let lead = prod.last().unwrap().to_integer_certified()?;
    if !lead.is_one() {
        return None;
    }
    coeffs.push(lead);
    Some(coeffs)
}

fn product_tree(polys: &[Vec<RBall>], p: usize) -> Vec<RBall> {
    match polys.len() {
        0 => vec![RBall::one(p)],
        1 => polys[0].clone(),
        n => {
            let (lo, hi) = polys.split_at(n / 2);
            let a = product_tree(lo, p);
            let b = product_tree(hi, p);
            convolve(&a, &b, p)
        }
    }
}

fn convolve(a: &[RBall], b: &[RBall], p: usize) -> Vec<RBall> {
    let mut out = vec![RBall::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            let t = ai.mul(bj, p);
            out[i + j] = out[i + j].add(&t, p);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Exact real-root counting (Sturm sequences over the integers).
// ---------------------------------------------------------------------------

fn poly_degree(f: &[BigInt]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut f: Vec<BigInt>) -> Vec<BigInt> {
    while f.len() > 1 && f.last().map(|c| c.is_zero()).unwrap_or(false) {
        f.pop();
    }
    f
}

fn poly_derivative(f: &[BigInt]) -> Vec<BigInt> {
    if f.len() <= 1 {
        return vec![BigInt::zero()];
    }
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect()
}

/// Divide out the content; the sign of the leading coefficient is kept.
fn poly_primitive(f: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in f {
        g = num_integer::Integer::gcd(&g, c);
        if g.is_one() {
            return f.to_vec();
        }
    }
    if g.is_zero() {
        return vec![BigInt::zero()];
    }
    f.iter().map(|c| c / &g).collect()
}

/// Pseudo-remainder of `f` by `g` scaled by an *even* power of `lc(g)`, so
/// the multiplier is positive and real-root sign data is preserved.
fn prem_even(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let df = poly_degree(f).expect("nonzero dividend");
    let dg = poly_degree(g).expect("nonzero divisor");
    assert!(df >= dg && dg >= 1);
    let lc = g[dg].clone();
    let delta = df - dg + 1;
    let scale = lc.pow((delta + (delta & 1)) as u32); // even exponent >= delta
    let mut r: Vec<BigInt> = f.iter().map(|c| c * &scale).collect();
    // Exact long division of r by g (the scaling makes every step exact).
    for k in (dg..=df).rev() {
        if r[k].is_zero() {
            continue;
        }
        let q = &r[k] / &lc;
        debug_assert!((&q * &lc) == r[k], "pseudo-division not exact");
        for i in 0..=dg {
            let t = &q * &g[i];
            r[k - dg + i] -= t;
        }
    }
    r.truncate(dg.max(1));
    poly_trim(r)
}

/// Exact polynomial division, panicking if not exact (internal use).
fn poly_exact_div(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let df = poly_degree(f).expect("nonzero dividend");
    let dg = poly_degree(g).expect("nonzero divisor");
    assert!(df >= dg);
    let mut r = f.to_vec();
    let mut q = vec![BigInt::zero(); df - dg + 1];
    for k in (dg..=df).rev() {
        if r[k].is_zero() {
            continue;
        }
        let c = &r[k] / &g[dg];
        assert!((&c * &g[dg]) == r[k], "division not exact");
        q[k - dg] = c.clone();
        for i in 0..=dg {
            let t = &c * &g[i];
            r[k - dg + i] -= t;
        }
    }
    assert!(r.iter().all(|c| c.is_zero()), "division not exact");
    poly_trim(q)
}

/// Number of distinct real roots of the integer polynomial (coefficients
/// lowest degree first), by a Sturm chain at `-inf` and `+inf`.
pub fn count_real_roots(coeffs: &[BigInt]) -> usize {
    let Some(df) = poly_degree(coeffs) else { return 0 };
    if df == 0 {
        return 0;
    }
    let mut f = poly_primitive(&poly_trim(coeffs.to_vec()));
    // Deflate to the squarefree part: f / gcd(f, f').
    let fp = poly_derivative(&f);
    let g = poly_gcd(&f, &fp);
    if poly_degree(&g).unwrap_or(0) > 0 {
        f = poly_primitive(&poly_exact_div(&f, &g));
    }
    // Sturm chain: s0 = f, s1 = f', s_{i+1} = -prem_even(s_{i-1}, s_i).
    let mut chain = vec![f.clone(), poly_primitive(&poly_derivative(&f))];
    loop {
        let n = chain.len();
        let (prev, last) = (&chain[n - 2], &chain[n - 1]);
        if poly_degree(last).unwrap_or(0) == 0 {
            break;
        }
        let r = prem_even(prev, last);
        if poly_degree(&r).is_none() {
            break; // exact division; squarefree input makes this benign
        }
        let neg: Vec<BigInt> = poly_primitive(&r).iter().map(|c| -c).collect();
        chain.push(neg);
    }
    let sign_at = |s: &[BigInt], at_minus_inf: bool| -> i8 {
        let d = poly_degree(s).expect("nonzero chain element");
        let lc = &s[d];
        let mut sgn: i8 = if lc.is_positive() { 1 } else { -1 };
        if at_minus_inf && d % 2 == 1 {
            sgn = -sgn;
        }
        sgn
    };
    let changes = |at_minus_inf: bool| -> usize {
        let mut count = 0;
        let mut prev: Option<i8> = None;
        for s in &chain {
            if poly_degree(s).is_none() {
                continue;
            }
            let sg = sign_at(s, at_minus_inf);
            if let Some(p) = prev {
                if p != sg {
                    count += 1;
                }
            }
            prev = Some(sg);
        }
        count
    };
    changes(true) - changes(false)
}

/// Primitive gcd of integer polynomials (subresultant-style, content-free).
fn poly_gcd(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let mut a = poly_primitive(&poly_trim(f.to_vec()));
    let mut b = poly_primitive(&poly_trim(g.to_vec()));
    if poly_degree(&a).is_none() {
        return b;
    }
    if poly_degree(&b).is_none() {
        return a;
    }
    if poly_degree(&a) < poly_degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if poly_degree(&b).is_none() {
            return a;
        }
        if poly_degree(&b).unwrap() == 0 {
            return vec![BigInt::one()];
        }
        let r = prem_even(&a, &b);
        a = b;
        b = poly_primitive(&r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn forms_small_discriminants() {
        assert_eq!(reduced_forms(3).unwrap(), vec![ReducedForm { a: 1, b: 1, c: 1 }]);
        assert_eq!(reduced_forms(4).unwrap(), vec![ReducedForm { a: 1, b: 0, c: 1 }]);
        assert_eq!(
            reduced_forms(23).unwrap(),
            vec![
                ReducedForm { a: 1, b: 1, c: 6 },
                ReducedForm { a: 2, b: 1, c: 3 },
                ReducedForm { a: 2, b: -1, c: 3 },
            ]
        );
        assert!(reduced_forms(5).is_err()); // -5 ≡ 3 mod 4: invalid
        assert!(reduced_forms(0).is_err());
    }

    #[test]
    fn class_numbers() {
        for (d, h) in [
            (3u64, 1u64),
            (4, 1),
            (7, 1),
            (8, 1),
            (11, 1),
            (12, 1),
            (16, 1),
            (19, 1),
            (23, 3),
            (28, 1),
            (43, 1),
            (44, 3),
            (67, 1),
            (76, 3),
            (163, 1),
            (167, 11),
            (668, 11), // 4 * 167: same class number for l = 7 mod 8
        ] {
            assert_eq!(class_number(d).unwrap(), h, "h(-{d})");
        }
    }

    #[test]
    fn j_classical_values() {
        // j(i) = 1728
        let j = eval_j_quadratic_point(4, 1, 0, 320).unwrap();
        assert_eq!(j.re.to_integer_certified().unwrap(), bi(1728));
        assert!(j.im.contains_zero());
        // j(2i) = 287496 = 66^3: tau = 2i = i sqrt(16)/2
        let j = eval_j_quadratic_point(16, 1, 0, 320).unwrap();
        assert_eq!(j.re.to_integer_certified().unwrap(), bi(287_496));
        // j((1 + i sqrt(3))/2) = 0
        let j = eval_j_quadratic_point(3, 1, -1, 320).unwrap();
        assert_eq!(j.re.to_integer_certified().unwrap(), bi(0));
        assert!(j.im.contains_zero());
        // j((1 + i sqrt(7))/2) = -3375
        let j = eval_j_quadratic_point(7, 1, -1, 320).unwrap();
        assert_eq!(j.re.to_integer_certified().unwrap(), bi(-3375));
        // domain errors
        assert!(eval_j_quadratic_point(3, 2, 0, 320).is_err());
        assert!(eval_j_quadratic_point(4, 1, 0, 32).is_err());
    }

    #[test]
    fn j_consistent_across_precisions() {
        let j1 = eval_j_quadratic_point(23, 2, 1, 256).unwrap();
        let j2 = eval_j_quadratic_point(23, 2, 1, 512).unwrap();
        let dre = j1.re.sub(&j2.re, 512);
        let dim = j1.im.sub(&j2.im, 512);
        assert!(dre.contains_zero() && dim.contains_zero());
        assert!(!j1.im.contains_zero()); // genuinely complex point
    }

    #[test]
    fn hilbert_golden_polynomials() {
        assert_eq!(hilbert_class_polynomial(3).unwrap().coeffs, vec![bi(0), bi(1)]);
        assert_eq!(hilbert_class_polynomial(4).unwrap().coeffs, vec![bi(-1728), bi(1)]);
        assert_eq!(hilbert_class_polynomial(7).unwrap().coeffs, vec![bi(3375), bi(1)]);
        assert_eq!(
            hilbert_class_polynomial(28).unwrap().coeffs,
            vec![bi(-16_581_375), bi(1)]
        );
        // P_23 = x^3 + 3491750 x^2 - 5151296875 x + 12771880859375
        assert_eq!(
            hilbert_class_polynomial(23).unwrap().coeffs,
            vec![
                BigInt::from_u64(12_771_880_859_375).unwrap(),
                BigInt::from_i64(-5_151_296_875).unwrap(),
                bi(3_491_750),
                bi(1),
            ]
        );
    }

    #[test]
    fn hilbert_degree_matches_forms_sample() {
        for d in [39u64, 47, 56, 71, 84, 95, 103, 167] {
            let p = hilbert_class_polynomial(d).unwrap();
            assert_eq!(p.degree() as u64, class_number(d).unwrap(), "d = {d}");
        }
    }

    #[test]
    fn evaluate_rational_goldens() {
        let p7 = hilbert_class_polynomial(7).unwrap();
        let j = BigRational::from_integer(bi(1728));
        assert_eq!(p7.evaluate_at_rational(&j), BigRational::from_integer(bi(5103)));
        let p28 = hilbert_class_polynomial(28).unwrap();
        assert_eq!(
            p28.evaluate_at_rational(&j),
            BigRational::from_integer(bi(-16_579_647))
        );
        // At a non-integral rational: P_7(-4096/11) = (-4096 + 3375*11)/11
        let jm = BigRational::new(bi(-4096), bi(11));
        assert_eq!(
            p7.evaluate_at_rational(&jm),
            BigRational::new(bi(-4096 + 3375 * 11), bi(11))
        );
    }

    #[test]
    fn sturm_counts() {
        // x^2 - 2: two real roots
        assert_eq!(count_real_roots(&[bi(-2), bi(0), bi(1)]), 2);
        // x^2 + 1: none
        assert_eq!(count_real_roots(&[bi(1), bi(0), bi(1)]), 0);
        // x^3 - x: three
        assert_eq!(count_real_roots(&[bi(0), bi(-1), bi(0), bi(1)]), 3);
        // (x - 1)^2: one distinct
        assert_eq!(count_real_roots(&[bi(1), bi(-2), bi(1)]), 1);
        // constants and linear
        assert_eq!(count_real_roots(&[bi(5)]), 0);
        assert_eq!(count_real_roots(&[bi(-3), bi(2)]), 1);
        // P_23 has exactly one real root
        let p23 = hilbert_class_polynomial(23).unwrap();
        assert_eq!(count_real_roots(&p23.coeffs), 1);
        // P_167 (degree 11, prime 167 = 3 mod 4): exactly one real root
        let p167 = hilbert_class_polynomial(167).unwrap();
        assert_eq!(p167.degree(), 11);
        assert_eq!(count_real_roots(&p167.coeffs), 1);
    }

    #[test]
    fn degree_parity_and_pairing_for_ell_7_mod_8() {
        // For l = 7 mod 8 the discriminants -l and -4l have equal class
        // number; P_l has odd degree.
        for l in [7u64, 23, 31, 47, 71, 167] {
            let hl = class_number(l).unwrap();
            let h4l = class_number(4 * l).unwrap();
            assert_eq!(hl, h4l, "l = {l}");
            assert_eq!(hl % 2, 1, "odd degree for l = {l}");
        }
    }
}
