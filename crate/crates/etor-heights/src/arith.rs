//! Elementary and multiprecision number-theoretic utilities.
//!
//! Everything here is exact integer arithmetic except the Chebyshev
//! `theta` evaluations, which return a value *together with* an absolute
//! error bound so callers can keep their own estimates honest.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Primes up to and including `limit`, by a sieve of Eratosthenes.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// `(a * b) mod m` without overflow.
#[inline]
pub fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `(base ^ exp) mod m` without overflow.
pub fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Bases making the strong-probable-prime test deterministic below
/// 3.3 * 10^24, hence for every `u64`.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'bases: for &a in &MR_BASES {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Strong-probable-prime test to the same twelve bases.
///
/// Deterministic for inputs below 3.3 * 10^24; above that, a `true` answer
/// means "strong probable prime to twelve bases", which callers that need
/// certainty must treat as unproven.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Jacobi symbol `(a | n)` for odd positive `n`, by the binary algorithm.
pub fn jacobi(a: &BigInt, n: &BigInt) -> Result<i32> {
    if !n.is_positive() || n.is_even() {
        return Err(Error::Domain(format!(
            "jacobi symbol needs an odd positive lower argument, got {n}"
        )));
    }
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u8().unwrap();
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u8().unwrap() == 3 && (&n % 4u32).to_u8().unwrap() == 3 {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { t } else { 0 })
}

/// Jacobi symbol `(a | n)` for odd positive `n`, machine-word version.
pub fn jacobi_u64(a: i64, n: u64) -> Result<i32> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::Domain(format!(
            "jacobi symbol needs an odd positive lower argument, got {n}"
        )));
    }
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

/// Legendre symbol `(a | p)` for an odd prime `p`.
///
/// The primality of `p` is the caller's responsibility; it is checked in
/// debug builds.
pub fn legendre_u64(a: i64, p: u64) -> Result<i32> {
    debug_assert!(is_prime_u64(p), "legendre_u64 called with composite {p}");
    jacobi_u64(a, p)
}

/// Legendre symbol `(a | p)` for an odd prime `p`, multiprecision version.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i32> {
    debug_assert!(
        p.to_biguint().map(|q| is_probable_prime(&q)).unwrap_or(false),
        "legendre called with composite {p}"
    );
    jacobi(a, p)
}

/// Modular inverse of `a` modulo `m`, when `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Chinese remainder theorem for pairwise coprime moduli.
///
/// Takes `(residue, modulus)` pairs and returns `(x, M)` with
/// `M = prod(moduli)` and `x ≡ r_i (mod m_i)` for every pair,
/// normalized to `0 <= x < M`.
pub fn crt_combine(congruences: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, modulus) in congruences {
        if modulus.is_positive() && modulus.is_one() {
            continue;
        }
        if !modulus.is_positive() {
            return Err(Error::Domain(format!("modulus {modulus} must be positive")));
        }
        let inv = mod_inverse(&m, modulus).ok_or_else(|| {
            Error::Domain(format!(
                "moduli are not pairwise coprime: gcd({m}, {modulus}) > 1"
            ))
        })?;
        // x' = x + m * ((r - x) * m^{-1} mod modulus)
        let t = ((r - &x) * inv).mod_floor(modulus);
        x += &m * t;
        m *= modulus;
        x = x.mod_floor(&m);
    }
    Ok((x, m))
}

/// Factor a `u64` completely, by trial division plus Brent's cycle method.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.iter_mut().find(|(q, _)| *q == p)
    {
        Some((_, e)) => *e += 1,
        None => out.push((p, 1)),
    };
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n % p == 0 {
            n /= p;
            push(p, &mut out);
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            push(m, &mut out);
            continue;
        }
        let d = pollard_brent(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out
}

/// Brent's variant of Pollard's rho; returns a nontrivial divisor of
/// composite `n > 1`.
fn pollard_brent(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod_u64(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 24 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
        c += 1;
    }
}

/// Greatest common divisor on machine words.
pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Radical (largest squarefree divisor) of `n >= 1`.
pub fn radical_u64(n: u64) -> u64 {
    factor_u64(n).iter().map(|(p, _)| p).product()
}

/// Euler totient of `n >= 1`.
pub fn euler_phi_u64(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factor_u64(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// `prod(p <= n)` over primes, by a balanced product tree.
pub fn primorial(n: u64) -> BigUint {
    let primes = sieve_primes(n);
    if primes.is_empty() {
        return BigUint::one();
    }
    let mut layer: Vec<BigUint> = primes.iter().map(|&p| BigUint::from(p)).collect();
    while layer.len() > 1 {
        layer = layer
            .chunks(2)
            .map(|c| if c.len() == 2 { &c[0] * &c[1] } else { c[0].clone() })
            .collect();
    }
    layer.pop().unwrap()
}

/// Natural logarithm of a positive big integer, to roughly 2 ulps.
///
/// Uses the top 53 bits plus the bit length; relative error is a few parts
/// in 10^16, which the callers below fold into explicit error bounds.
pub fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let bits = x.bits();
    if bits <= 53 {
        return (x.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_u64().unwrap();
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// A `theta`-function value with an absolute error bound, in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaEval {
    pub nats: f64,
    pub abs_error: f64,
}

/// Largest argument for which [`chebyshev_theta`] uses an exact primorial.
pub const THETA_EXACT_CAP: u64 = 2_000_000;
/// Largest argument [`chebyshev_theta`] will evaluate by direct summation.
pub const THETA_SIEVE_CAP: u64 = 100_000_000;

/// Chebyshev `theta(n) = sum of ln p over primes p <= n`, with an absolute
/// error bound.  Returns `None` above [`THETA_SIEVE_CAP`]; at that scale use
/// [`theta_upper_nats`].
pub fn chebyshev_theta(n: u64) -> Option<ThetaEval> {
    if n <= THETA_EXACT_CAP {
        let prim = primorial(n);
        let nats = ln_biguint(&prim);
        Some(ThetaEval { nats, abs_error: 1e-14 * (nats.abs() + 1.0) })
    } else if n <= THETA_SIEVE_CAP {
        // Compensated summation: error <= ~3 eps * theta(n).
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for p in sieve_primes(n) {
            let term = (p as f64).ln() - comp;
            let t = sum + term;
            comp = (t - sum) - term;
            sum = t;
        }
        Some(ThetaEval { nats: sum, abs_error: 1e-15 * sum + 1e-12 })
    } else {
        None
    }
}

/// The classical explicit bound `theta(x) < 1.01624 x`, valid for all
/// `x > 0`.  This is the *sound* direction wherever a larger `theta` makes a
/// height lower bound smaller.
pub fn theta_upper_nats(x: f64) -> f64 {
    assert!(x > 0.0 && x.is_finite());
    1.01624 * x
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    #[test]
    fn sieve_small() {
        assert_eq!(sieve_primes(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(sieve_primes(1), Vec::<u64>::new());
        assert_eq!(sieve_primes(2), vec![2]);
        assert_eq!(sieve_primes(1_000_000).len(), 78_498);
    }

    #[test]
    fn primality_u64() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(43_991));
        assert!(is_prime_u64(53_231));
        assert!(is_prime_u64((1u64 << 61) - 1));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(7_031)); // 79 * 89
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(!is_prime_u64(u64::MAX));
    }

    #[test]
    fn primality_big() {
        let p = BigUint::parse_bytes(b"170141183460469231731687303715884105727", 10).unwrap();
        assert!(is_probable_prime(&p)); // 2^127 - 1
        let q = &p * BigUint::from(43_991u64);
        assert!(!is_probable_prime(&q));
        assert!(is_probable_prime(&BigUint::from(43_991u64)));
    }

    #[test]
    fn legendre_values() {
        // The residue pattern that drives the congruence assembly for the
        // curve of conductor 11 with five constraint primes.
        for p in [3i64, 5, 7, 11] {
            assert_eq!(legendre_u64(p, 43_991).unwrap(), 1, "({p}|43991)");
        }
        assert_eq!(legendre_u64(-1, 43_991).unwrap(), -1);
        assert_eq!(legendre_u64(2, 43_991).unwrap(), 1);
        assert_eq!(legendre_u64(2, 7).unwrap(), 1);
        assert_eq!(legendre_u64(3, 7).unwrap(), -1);
        assert_eq!(legendre_u64(0, 7).unwrap(), 0);
        assert_eq!(legendre_u64(-1, 167).unwrap(), -1); // 167 = 7 mod 8
        assert_eq!(legendre_u64(2, 167).unwrap(), 1);
    }

    #[test]
    fn jacobi_matches_legendre_and_big() {
        for a in -20i64..20 {
            for p in [3u64, 7, 11, 43991] {
                let big = jacobi(&BigInt::from(a), &BigInt::from(p)).unwrap();
                assert_eq!(big, jacobi_u64(a, p).unwrap());
            }
        }
        assert!(jacobi_u64(3, 4).is_err());
        assert!(jacobi(&BigInt::from(3), &BigInt::from(-7)).is_err());
    }

    #[test]
    fn crt_reference_instance() {
        // x = 7 (8), 2 (3), 1 (5), 3 (7), 2 (11)  ->  7031 mod 9240
        let sys: Vec<(BigInt, BigInt)> = [(7, 8), (2, 3), (1, 5), (3, 7), (2, 11)]
            .iter()
            .map(|&(r, m)| (BigInt::from(r), BigInt::from(m)))
            .collect();
        let (x, m) = crt_combine(&sys).unwrap();
        assert_eq!(x, BigInt::from(7031));
        assert_eq!(m, BigInt::from(9240));
        // and the small assembly with only 8, 3, 11: 167 mod 264
        let sys: Vec<(BigInt, BigInt)> = [(7, 8), (2, 3), (2, 11)]
            .iter()
            .map(|&(r, m)| (BigInt::from(r), BigInt::from(m)))
            .collect();
        let (x, m) = crt_combine(&sys).unwrap();
        assert_eq!(x, BigInt::from(167));
        assert_eq!(m, BigInt::from(264));
    }

    #[test]
    fn crt_rejects_common_factor() {
        let sys = vec![
            (BigInt::from(1), BigInt::from(4)),
            (BigInt::from(3), BigInt::from(6)),
        ];
        assert!(crt_combine(&sys).is_err());
    }

    #[test]
    fn factorization() {
        assert_eq!(factor_u64(9240), vec![(2, 3), (3, 1), (5, 1), (7, 1), (11, 1)]);
        assert_eq!(factor_u64(43_991u64 * 53_231), vec![(43_991, 1), (53_231, 1)]);
        assert_eq!(radical_u64(162), 6);
        assert_eq!(radical_u64(66), 66);
        assert_eq!(radical_u64(1), 1);
        assert_eq!(euler_phi_u64(9240), 1920);
        assert_eq!(euler_phi_u64(1), 1);
    }

    #[test]
    fn theta_small_values() {
        // theta(10) = ln 210, theta(11) = ln 2310
        let t10 = chebyshev_theta(10).unwrap();
        assert!((t10.nats - 5.347107530717468).abs() < 1e-12);
        let t11 = chebyshev_theta(11).unwrap();
        assert!((t11.nats - 7.745002803515839).abs() < 1e-12);
        assert!(t11.abs_error < 1e-12);
        let t2 = chebyshev_theta(2).unwrap();
        assert!((t2.nats - std::f64::consts::LN_2).abs() < 1e-14);
        assert_eq!(chebyshev_theta(1).unwrap().nats, 0.0);
    }

    #[test]
    fn theta_sieve_agrees_with_primorial() {
        // Straddle the representation switch and check consistency.
        let exact = chebyshev_theta(THETA_EXACT_CAP).unwrap();
        let mut sum = 0.0;
        for p in sieve_primes(THETA_EXACT_CAP) {
            sum += (p as f64).ln();
        }
        assert!((exact.nats - sum).abs() < 1e-6 * sum);
        assert!(chebyshev_theta(THETA_SIEVE_CAP + 1).is_none());
    }

    #[test]
    fn theta_upper_reference() {
        let up = theta_upper_nats(9.85e9);
        assert!((up - 10_009_964_000.0).abs() < 1e-3);
        // Sound: upper bound really is above the exact value where we can
        // check it.
        for n in [10u64, 100, 1000, 100_000] {
            let t = chebyshev_theta(n).unwrap();
            assert!(t.nats + t.abs_error < theta_upper_nats(n as f64));
        }
    }

    #[test]
    fn big_log() {
        let x = BigUint::one() << 200;
        assert!((ln_biguint(&x) - 200.0 * std::f64::consts::LN_2).abs() < 1e-10);
        let y = BigUint::from_f64(1e18).unwrap();
        assert!((ln_biguint(&y) - 1e18f64.ln()).abs() < 1e-12);
        let prim = primorial(28);
        assert_eq!(prim, BigUint::from(223_092_870u64));
        assert!((ln_biguint(&prim) - (223_092_870f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn powmod_and_mulmod_edge() {
        assert_eq!(powmod_u64(2, 64, u64::MAX), 1); // 2^64 = 1 + (2^64 - 1)
        assert_eq!(powmod_u64(5, 0, 7), 1);
        assert_eq!(powmod_u64(5, 1, 1), 0);
        assert_eq!(mulmod_u64(u64::MAX - 1, u64::MAX - 1, u64::MAX), 1);
    }
}
