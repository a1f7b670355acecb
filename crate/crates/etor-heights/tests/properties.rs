//! Property-based invariants: randomized algebraic identities that the
//! deterministic unit tests cannot cover exhaustively.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use etor_heights::arith::{crt_combine, factor_u64, is_prime_u64, jacobi_u64, sieve_primes};
use etor_heights::bounds::{BoundKind, BoundValue};
use etor_heights::curve::{compute_invariants, WeierstrassModel};

proptest! {
    /// The Jacobi symbol is completely multiplicative in the numerator.
    #[test]
    fn jacobi_multiplicative(a in 0i64..1_000_000, b in 0i64..1_000_000, k in 1u64..500_000) {
        let n = 2 * k + 1; // odd modulus >= 3
        let ja = jacobi_u64(a, n).unwrap();
        let jb = jacobi_u64(b, n).unwrap();
        let jab = jacobi_u64(a * b, n).unwrap();
        prop_assert_eq!(jab, ja * jb);
    }

    /// A CRT solution satisfies every congruence it was built from and is
    /// reduced modulo the combined modulus.
    #[test]
    fn crt_solution_replays(pick in proptest::collection::vec(0usize..9, 2..6), seed in 0u64..u64::MAX) {
        let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 8]; // 8 is coprime to the odd ones
        let mut used = Vec::new();
        let mut pairs = Vec::new();
        let mut s = seed;
        for idx in pick {
            let m = primes[idx];
            if used.contains(&m) {
                continue;
            }
            used.push(m);
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let r = s % m;
            pairs.push((BigInt::from(r), BigInt::from(m)));
        }
        prop_assume!(pairs.len() >= 2);
        let (x, big_m) = crt_combine(&pairs).unwrap();
        prop_assert!(x >= BigInt::zero() && x < big_m);
        for (r, m) in &pairs {
            prop_assert_eq!(&x % m, r.clone());
        }
    }

    /// Factorization reassembles to the input, with prime factors only.
    #[test]
    fn factorization_reassembles(n in 2u64..1_000_000_000_000) {
        let fac = factor_u64(n);
        let mut prod = 1u64;
        for &(p, e) in &fac {
            prop_assert!(is_prime_u64(p));
            for _ in 0..e {
                prod = prod.checked_mul(p).unwrap();
            }
        }
        prop_assert_eq!(prod, n);
        // Factors are sorted and distinct.
        for w in fac.windows(2) {
            prop_assert!(w[0].0 < w[1].0);
        }
    }

    /// Height-bound conversions only ever weaken the claim: pushing a
    /// level-1 height bound up to level 2 and back never yields a larger
    /// height than the original.
    #[test]
    fn height_conversions_weaken(neg_ln in 1.0f64..5_000.0) {
        let b1 = BoundValue::from_neg_ln_height(neg_ln);
        for lvl in 0u8..=2 {
            let Some(conv) = b1.to_level(lvl) else { continue };
            prop_assert_eq!(conv.kind, BoundKind::HeightLowerBound);
            // converted <= original as a height claim
            let ord = conv.compare(&b1).unwrap();
            prop_assert!(ord != std::cmp::Ordering::Greater, "{:?} at level {}", ord, lvl);
            // and a second round trip through the original level is stable
            if let Some(back) = conv.to_level(b1.level) {
                prop_assert!(back.compare(&b1).unwrap() != std::cmp::Ordering::Greater);
            }
        }
    }

    /// Prime-bound conversions weaken toward larger `B`.
    #[test]
    fn prime_conversions_weaken(ln_b in 2.0f64..5_000.0) {
        let b1 = BoundValue::from_ln_prime(ln_b);
        for lvl in 0u8..=2 {
            let Some(conv) = b1.to_level(lvl) else { continue };
            prop_assert_eq!(conv.kind, BoundKind::LogPrimeUpperBound);
            let ord = conv.compare(&b1).unwrap();
            prop_assert!(ord != std::cmp::Ordering::Less, "{:?} at level {}", ord, lvl);
        }
    }

    /// `compare` orders height bounds by the height they certify.
    #[test]
    fn height_compare_is_consistent(a in 0.5f64..2_000.0, b in 0.5f64..2_000.0) {
        let ba = BoundValue::from_neg_ln_height(a);
        let bb = BoundValue::from_neg_ln_height(b);
        let ord = ba.compare(&bb).unwrap();
        // larger -ln h means smaller h
        prop_assert_eq!(ord, b.partial_cmp(&a).unwrap());
    }

    /// The standard quantities of a Weierstrass model satisfy
    /// `1728 disc = c4^3 - c6^2` identically.
    #[test]
    fn weierstrass_identity(
        a1 in -3i64..=3, a2 in -3i64..=3, a3 in -3i64..=3,
        a4 in -50i64..=50, a6 in -50i64..=50,
    ) {
        let model = WeierstrassModel::new_integral(a1, a2, a3, a4, a6);
        let Ok(inv) = compute_invariants(&model) else {
            return Ok(()); // singular model
        };
        let lhs = num_rational::BigRational::from_integer(BigInt::from(1728)) * &inv.discriminant;
        let rhs = inv.c4.pow(3) - inv.c6.pow(2);
        prop_assert_eq!(lhs, rhs);
        prop_assert!(!inv.discriminant.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Sieve and primality test agree on ranges.
    #[test]
    fn sieve_matches_primality(hi in 100u64..20_000) {
        let sieved = sieve_primes(hi);
        let direct: Vec<u64> = (2..=hi).filter(|&n| is_prime_u64(n)).collect();
        prop_assert_eq!(sieved, direct);
    }

    /// The congruence system built for a conductor is internally
    /// consistent: the combined residue solves every stated condition and
    /// is coprime to the modulus.
    #[test]
    fn congruence_system_replays(conductor in 1u64..10_000, n in 2u64..40) {
        let sys = etor_heights::ssearch::assemble_congruence(conductor, n).unwrap();
        for c in &sys.conditions {
            prop_assert_eq!(sys.residue % c.modulus, c.residue);
        }
        prop_assert_eq!(num_integer::gcd(sys.residue, sys.modulus), 1);
        // A prime found in the progression satisfies the quadratic
        // conditions by construction; spot-check the Jacobi symbols.
        if let Ok(ell) = etor_heights::ssearch::find_prime_in_ap(
            sys.residue, sys.modulus, 2.0, 200_000,
        ) {
            for c in sys.conditions.iter().filter(|c| c.modulus % 2 == 1) {
                prop_assert_eq!(jacobi_u64(c.modulus as i64, ell).unwrap(), 1);
            }
        }
    }
}

/// Exact rational heights round down to their float image.
#[test]
fn exact_height_float_is_faithful() {
    use num_rational::BigRational;
    let exact = BigRational::new(BigInt::one(), BigInt::from(4_782_969u64));
    let b = BoundValue::from_height_exact(exact.clone());
    assert_eq!(b.exact.as_ref(), Some(&exact));
    let approx = 1.0 / 4_782_969.0f64;
    assert!(b.value <= approx && (approx - b.value) < 1e-20);
    assert!(b.value.is_sign_positive());
}
