//! Certified ball arithmetic over arbitrary-precision floats.
//!
//! A [`RBall`] is a midpoint-radius enclosure `[mid - rad, mid + rad]` of a
//! real number: the midpoint carries the working precision, the radius is a
//! low-precision float always rounded *up*.  Every operation returns a ball
//! guaranteed to contain the exact image of its inputs, accounting for both
//! the input radii and the rounding of the midpoint operation.  [`CBall`]
//! is the rectangular complex analogue.
//!
//! The error model is deliberately simple: midpoint operations are
//! correctly rounded at precision `p`, so each contributes at most one unit
//! in the last place, and we charge a full `2^(e-p+1)` per operation.
//! Transcendental functions use derivative (Lipschitz) bounds to transport
//! input radii, with an endpoint fallback when the input is too wide for
//! the derivative bound to be valid.

use astro_float::{BigFloat, Consts, Exponent, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as IntSign};
use num_traits::Zero;

/// Precision used for all radius arithmetic.
const RAD_P: usize = 64;
const UP: RoundingMode = RoundingMode::Up;
const DOWN: RoundingMode = RoundingMode::Down;
const NEAR: RoundingMode = RoundingMode::ToEven;

/// `2^k` as a low-precision float.
pub(crate) fn pow2(k: i32) -> BigFloat {
    // from_f64(1.0) is 0.5 * 2^1; shifting the exponent scales exactly.
    let mut x = BigFloat::from_f64(1.0, RAD_P);
    x.set_exponent(k.saturating_add(1));
    x
}

/// Upper bound for `|x|` at radius precision.
fn up64(x: &BigFloat) -> BigFloat {
    let mut y = x.clone().abs();
    y.set_precision(RAD_P, UP).expect("set_precision");
    y
}

/// Lower bound for `|x|` at radius precision.
fn down64(x: &BigFloat) -> BigFloat {
    let mut y = x.clone().abs();
    y.set_precision(RAD_P, DOWN).expect("set_precision");
    y
}

/// Bound on the rounding error of a correctly rounded operation that
/// produced `x` at precision `p`: one full ulp, `2^(e - p + 1)`.
fn ulp_bound(x: &BigFloat, p: usize) -> BigFloat {
    if x.is_zero() {
        // A correctly rounded zero is exact here: there is no exponent
        // floor, so nothing nonzero rounds to zero.
        return BigFloat::from_f64(0.0, RAD_P);
    }
    let e = x.exponent().expect("finite float");
    pow2(e - p as Exponent + 1)
}

/// Exact conversion of a big integer to a float (no rounding).
pub fn bigfloat_from_bigint(x: &BigInt) -> BigFloat {
    let (sign, mag) = x.clone().into_parts();
    if mag.is_zero() {
        return BigFloat::from_f64(0.0, RAD_P);
    }
    let bits = mag.bits() as usize;
    let p = bits.max(RAD_P).div_ceil(64) * 64;
    // Parsing a decimal integer at precision >= its bit length is exact.
    let s = mag.to_string();
    let mut f = BigFloat::parse(&s, astro_float::Radix::Dec, p, NEAR, &mut Consts::new().expect("consts"));
    if sign == IntSign::Minus {
        f = f.neg();
    }
    f
}

/// A certified enclosure of a real number.
#[derive(Debug, Clone)]
pub struct RBall {
    mid: BigFloat,
    rad: BigFloat,
}

impl RBall {
    pub fn from_parts(mid: BigFloat, rad: BigFloat) -> Self {
        debug_assert!(!rad.is_negative());
        RBall { mid, rad }
    }

    pub fn exact(mid: BigFloat) -> Self {
        RBall { mid, rad: BigFloat::from_f64(0.0, RAD_P) }
    }

    pub fn zero() -> Self {
        Self::exact(BigFloat::from_f64(0.0, RAD_P))
    }

    pub fn one(p: usize) -> Self {
        Self::exact(BigFloat::from_f64(1.0, p))
    }

    pub fn from_i64(v: i64, p: usize) -> Self {
        Self::exact(BigFloat::from_i64(v, p))
    }

    pub fn from_u64(v: u64, p: usize) -> Self {
        Self::exact(BigFloat::from_u64(v, p))
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Self::exact(bigfloat_from_bigint(v))
    }

    /// pi as a ball at precision `p`.
    pub fn pi(p: usize, cc: &mut Consts) -> Self {
        let mid = cc.pi(p, NEAR);
        let rad = ulp_bound(&mid, p);
        RBall { mid, rad }
    }

    pub fn mid(&self) -> &BigFloat {
        &self.mid
    }

    pub fn rad(&self) -> &BigFloat {
        &self.rad
    }

    /// Certified lower endpoint.
    pub fn lo(&self) -> BigFloat {
        let p = self.precision().max(RAD_P) + RAD_P;
        self.mid.sub(&self.rad, p, DOWN)
    }

    /// Certified upper endpoint.
    pub fn hi(&self) -> BigFloat {
        let p = self.precision().max(RAD_P) + RAD_P;
        self.mid.add(&self.rad, p, UP)
    }

    fn precision(&self) -> usize {
        self.mid.mantissa_max_bit_len().unwrap_or(RAD_P)
    }

    pub fn neg(&self) -> Self {
        RBall { mid: self.mid.clone().neg(), rad: self.rad.clone() }
    }

    pub fn abs(&self) -> Self {
        RBall { mid: self.mid.clone().abs(), rad: self.rad.clone() }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i32) -> Self {
        let scale = |x: &BigFloat| {
            if x.is_zero() {
                x.clone()
            } else {
                let mut y = x.clone();
                y.set_exponent(y.exponent().expect("finite") + k);
                y
            }
        };
        RBall { mid: scale(&self.mid), rad: scale(&self.rad) }
    }

    pub fn add(&self, rhs: &Self, p: usize) -> Self {
        let mid = self.mid.add(&rhs.mid, p, NEAR);
        let rad = self
            .rad
            .add(&rhs.rad, RAD_P, UP)
            .add(&ulp_bound(&mid, p), RAD_P, UP);
        RBall { mid, rad }
    }

    pub fn sub(&self, rhs: &Self, p: usize) -> Self {
        let mid = self.mid.sub(&rhs.mid, p, NEAR);
        let rad = self
            .rad
            .add(&rhs.rad, RAD_P, UP)
            .add(&ulp_bound(&mid, p), RAD_P, UP);
        RBall { mid, rad }
    }

    pub fn mul(&self, rhs: &Self, p: usize) -> Self {
        let mid = self.mid.mul(&rhs.mid, p, NEAR);
        // |a||db| + |b||da| + da db + ulp
        let a = up64(&self.mid);
        let b = up64(&rhs.mid);
        let rad = a
            .mul(&rhs.rad, RAD_P, UP)
            .add(&b.mul(&self.rad, RAD_P, UP), RAD_P, UP)
            .add(&self.rad.mul(&rhs.rad, RAD_P, UP), RAD_P, UP)
            .add(&ulp_bound(&mid, p), RAD_P, UP);
        RBall { mid, rad }
    }

    /// Multiplication by an exact machine integer.
    pub fn mul_i64(&self, k: i64, p: usize) -> Self {
        self.mul(&RBall::from_i64(k, RAD_P), p)
    }

    /// Division by an exact positive machine integer.
    pub fn div_u64(&self, k: u64, p: usize) -> Self {
        assert!(k > 0);
        let kf = BigFloat::from_u64(k, RAD_P);
        let mid = self.mid.div(&kf, p, NEAR);
        let rad = self
            .rad
            .div(&kf, RAD_P, UP)
            .add(&ulp_bound(&mid, p), RAD_P, UP);
        RBall { mid, rad }
    }

    /// Reciprocal; requires the ball to exclude zero.
    pub fn recip(&self, p: usize) -> Self {
        let lo_abs = down64(&self.mid).sub(&self.rad, RAD_P, DOWN);
        assert!(
            lo_abs.is_positive() && !lo_abs.is_zero(),
            "reciprocal of a ball containing zero"
        );
        let one = BigFloat::from_f64(1.0, p);
        let mid = one.div(&self.mid, p, NEAR);
        // |1/x - 1/m| <= r / (|m| (|m| - r))
        let denom = lo_abs.mul(&down64(&self.mid), RAD_P, DOWN);
        let rad = self
            .rad
            .div(&denom, RAD_P, UP)
            .add(&ulp_bound(&mid, p), RAD_P, UP);
        RBall { mid, rad }
    }

    pub fn div(&self, rhs: &Self, p: usize) -> Self {
        self.mul(&rhs.recip(p), p)
    }

    /// Square root; the ball must be certainly nonnegative at its midpoint
    /// (a slightly negative lower endpoint is clamped to zero).
    pub fn sqrt(&self, p: usize) -> Self {
        assert!(!self.mid.is_negative(), "sqrt of a negative midpoint");
        let mid = self.mid.sqrt(p, NEAR);
        let lo = self.lo();
        let rad = if lo.is_positive() && !lo.is_zero() {
            // |sqrt(x) - sqrt(m)| <= r / (2 sqrt(lo))
            let mut s = lo.sqrt(RAD_P, DOWN);
            s.set_exponent(s.exponent().expect("finite") + 1); // 2 sqrt(lo)
            self.rad.div(&s, RAD_P, UP)
        } else {
            // Range of sqrt over [0, hi] has width sqrt(hi).
            up64(&self.hi()).sqrt(RAD_P, UP)
        };
        let rad = rad.add(&ulp_bound(&mid, p), RAD_P, UP);
        RBall { mid, rad }
    }

    /// Exponential, via the derivative bound
    /// `|e^(m+d) - e^m| <= e^m (e^r - 1) <= 2 e^m r` for `r <= 1/2`,
    /// falling back to monotone endpoints for wide balls.
    pub fn exp(&self, p: usize, cc: &mut Consts) -> Self {
        let half = pow2(-1);
        if matches!(self.rad.partial_cmp(&half), Some(std::cmp::Ordering::Less)) {
            let mid = self.mid.exp(p, NEAR, cc);
            let rad = up64(&mid)
                .mul(&self.rad, RAD_P, UP)
                .mul(&pow2(1), RAD_P, UP)
                .add(&ulp_bound(&mid, p), RAD_P, UP);
            RBall { mid, rad }
        } else {
            let el = self.lo().exp(p, DOWN, cc);
            let eh = self.hi().exp(p, UP, cc);
            let mid = el.add(&eh, p, NEAR).mul(&half, p, NEAR);
            let rad = eh
                .sub(&el, RAD_P, UP)
                .add(&ulp_bound(&mid, p), RAD_P, UP)
                .add(&ulp_bound(&mid, p), RAD_P, UP);
            RBall { mid, rad }
        }
    }

    /// Natural logarithm; the ball must exclude zero and be positive.
    pub fn ln(&self, p: usize, cc: &mut Consts) -> Self {
        let lo = self.lo();
        assert!(lo.is_positive() && !lo.is_zero(), "ln of a ball reaching zero");
        let mid = self.mid.ln(p, NEAR, cc);
        // |ln' | <= 1/lo on the ball
        let rad = self
            .rad
            .div(&down64(&lo), RAD_P, UP)
            .add(&ulp_bound(&mid, p), RAD_P, UP);
        RBall { mid, rad }
    }

    /// Sine (Lipschitz constant 1).
    pub fn sin(&self, p: usize, cc: &mut Consts) -> Self {
        let mid = self.mid.sin(p, NEAR, cc);
        let rad = self.rad.add(&ulp_bound(&mid, p), RAD_P, UP);
        RBall { mid, rad }
    }

    /// Cosine (Lipschitz constant 1).
    pub fn cos(&self, p: usize, cc: &mut Consts) -> Self {
        let mid = self.mid.cos(p, NEAR, cc);
        let rad = self.rad.add(&ulp_bound(&mid, p), RAD_P, UP);
        RBall { mid, rad }
    }

    /// Is the whole ball strictly less than the whole of `rhs`?
    pub fn lt_certain(&self, rhs: &Self) -> bool {
        matches!(
            self.hi().partial_cmp(&rhs.lo()),
            Some(std::cmp::Ordering::Less)
        )
    }

    pub fn gt_certain(&self, rhs: &Self) -> bool {
        rhs.lt_certain(self)
    }

    pub fn contains_zero(&self) -> bool {
        !(self.lo().is_positive() && !self.lo().is_zero())
            && !(self.hi().is_negative() && !self.hi().is_zero())
    }

    /// Approximate midpoint as `f64` (diagnostics only, not certified).
    pub fn to_f64(&self) -> f64 {
        bf_to_f64(&self.mid)
    }

    /// Radius as `f64`, rounded up (diagnostics and budget checks).
    pub fn rad_f64(&self) -> f64 {
        let r = bf_to_f64(&self.rad);
        if r == 0.0 {
            0.0
        } else {
            r * (1.0 + 4.0 * f64::EPSILON)
        }
    }

    /// The unique integer the ball certifies, if any.
    ///
    /// Succeeds when the radius is below 1/4 and the midpoint is within
    /// strictly less than `1/2 - rad` of an integer, so the enclosure pins
    /// down exactly one integer.
    pub fn to_integer_certified(&self) -> Option<BigInt> {
        let quarter = pow2(-2);
        if !matches!(self.rad.partial_cmp(&quarter), Some(std::cmp::Ordering::Less)) {
            return None;
        }
        if self.mid.is_zero() {
            return Some(BigInt::zero());
        }
        let (words, n_bits, sign, e, _) = self.mid.as_raw_parts()?;
        let m = BigUint::from_slice_u64(words);
        let t = n_bits as i64 - e as i64; // fraction bit count
        let (k, dist_num, dist_den_log2) = if t <= 0 {
            (m << ((-t) as u64), BigUint::zero(), 0u64)
        } else {
            let t = t as u64;
            let q = &m >> t;
            let r = &m - (&q << t);
            let half = BigUint::from(1u8) << (t - 1);
            if r < half {
                (q, r, t)
            } else {
                let rr = (BigUint::from(1u8) << t) - &r;
                (q + 1u8, rr, t)
            }
        };
        // Certify dist + rad < 1/2, i.e. 2 * dist_num + ceil(2^(t+1) rad) < 2^t.
        let ok = if dist_den_log2 == 0 {
            // Midpoint is an exact integer; rad < 1/4 < 1/2 suffices.
            true
        } else {
            let t = dist_den_log2;
            let rad_term: BigUint = if self.rad.is_zero() {
                BigUint::zero()
            } else {
                let er = self.rad.exponent().expect("finite") as i64; // rad <= 2^er
                let sh = er + t as i64 + 1;
                if sh <= 0 {
                    BigUint::from(1u8)
                } else {
                    BigUint::from(1u8) << (sh as u64)
                }
            };
            (&dist_num << 1) + rad_term < (BigUint::from(1u8) << t)
        };
        if !ok {
            return None;
        }
        let k = BigInt::from(k);
        Some(if sign == Sign::Neg { -k } else { k })
    }
}

/// Helper to read BigUint from astro-float words (little-endian u64).
trait FromWords {
    fn from_slice_u64(words: &[u64]) -> BigUint;
}

impl FromWords for BigUint {
    fn from_slice_u64(words: &[u64]) -> BigUint {
        let mut digits = Vec::with_capacity(words.len() * 2);
        for w in words {
            digits.push(*w as u32);
            digits.push((w >> 32) as u32);
        }
        BigUint::new(digits)
    }
}

/// Approximate conversion to f64 (top mantissa word), for diagnostics.
pub fn bf_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    let Some((words, _n_bits, sign, e, _)) = x.as_raw_parts() else {
        return if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    };
    // x = sign * 0.mantissa * 2^e; the mantissa is normalized, so the last
    // word carries the leading bits: 0.mantissa ~ top / 2^64.
    let top = *words.last().unwrap_or(&0);
    let frac = top as f64 / 18_446_744_073_709_551_616.0;
    let mag = frac * 2f64.powf(e as f64);
    let v = if sign == Sign::Neg { -mag } else { mag };
    if v == 0.0 {
        // Underflowed f64; return a signed tiny value (sound as a bound
        // only for magnitudes, which is how diagnostics use it).
        if sign == Sign::Neg {
            -f64::MIN_POSITIVE
        } else {
            f64::MIN_POSITIVE
        }
    } else {
        v
    }
}

/// A certified rectangular enclosure of a complex number.
#[derive(Debug, Clone)]
pub struct CBall {
    pub re: RBall,
    pub im: RBall,
}

impl CBall {
    pub fn new(re: RBall, im: RBall) -> Self {
        CBall { re, im }
    }

    pub fn zero() -> Self {
        CBall { re: RBall::zero(), im: RBall::zero() }
    }

    pub fn one(p: usize) -> Self {
        CBall { re: RBall::one(p), im: RBall::zero() }
    }

    pub fn real(re: RBall) -> Self {
        CBall { re, im: RBall::zero() }
    }

    pub fn add(&self, rhs: &Self, p: usize) -> Self {
        CBall { re: self.re.add(&rhs.re, p), im: self.im.add(&rhs.im, p) }
    }

    pub fn sub(&self, rhs: &Self, p: usize) -> Self {
        CBall { re: self.re.sub(&rhs.re, p), im: self.im.sub(&rhs.im, p) }
    }

    /// Karatsuba-style complex product (three real multiplications).
    pub fn mul(&self, rhs: &Self, p: usize) -> Self {
        let t1 = self.re.mul(&rhs.re, p);
        let t2 = self.im.mul(&rhs.im, p);
        let sa = self.re.add(&self.im, p);
        let sb = rhs.re.add(&rhs.im, p);
        let t3 = sa.mul(&sb, p);
        let re = t1.sub(&t2, p);
        let im = t3.sub(&t1, p).sub(&t2, p);
        CBall { re, im }
    }

    pub fn mul_real(&self, rhs: &RBall, p: usize) -> Self {
        CBall { re: self.re.mul(rhs, p), im: self.im.mul(rhs, p) }
    }

    pub fn mul_u64(&self, k: u64, p: usize) -> Self {
        let kb = RBall::from_u64(k, RAD_P);
        self.mul_real(&kb, p)
    }

    pub fn neg(&self) -> Self {
        CBall { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> Self {
        CBall { re: self.re.clone(), im: self.im.neg() }
    }

    /// `re^2 + im^2` as a real ball.
    pub fn norm_sqr(&self, p: usize) -> RBall {
        let a = self.re.mul(&self.re, p);
        let b = self.im.mul(&self.im, p);
        a.add(&b, p)
    }

    /// Complex division via `z * conj(w) / |w|^2`.
    pub fn div(&self, rhs: &Self, p: usize) -> Self {
        let inv_nsq = rhs.norm_sqr(p).recip(p);
        let num = self.mul(&rhs.conj(), p);
        num.mul_real(&inv_nsq, p)
    }

    /// Integer power by binary powering.
    pub fn powi(&self, mut e: u32, p: usize) -> Self {
        let mut acc = CBall::one(p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, p);
            }
        }
        acc
    }

    /// Upper bound on the modulus, as an `f64` with upward slop.
    pub fn abs_upper_f64(&self) -> f64 {
        let n = self.norm_sqr(RAD_P * 2);
        let hi = bf_to_f64(&n.hi());
        (hi.max(0.0)).sqrt() * (1.0 + 1e-12)
    }

    /// Add `t` to the radius of both components (absorbing a truncation
    /// error of complex modulus at most `t`).
    pub fn widen(&self, t: &BigFloat) -> Self {
        debug_assert!(!t.is_negative());
        let re = RBall::from_parts(self.re.mid.clone(), self.re.rad.add(t, RAD_P, UP));
        let im = RBall::from_parts(self.im.mid.clone(), self.im.rad.add(t, RAD_P, UP));
        CBall { re, im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consts() -> Consts {
        Consts::new().expect("constants cache")
    }

    #[test]
    fn pow2_values() {
        assert_eq!(bf_to_f64(&pow2(0)), 1.0);
        assert_eq!(bf_to_f64(&pow2(3)), 8.0);
        assert_eq!(bf_to_f64(&pow2(-2)), 0.25);
    }

    #[test]
    fn exp_contains_e() {
        let mut cc = consts();
        let one = RBall::one(256);
        let e = one.exp(256, &mut cc);
        let ef = e.to_f64();
        assert!((ef - std::f64::consts::E).abs() < 1e-12, "got {ef}");
        assert!(e.rad_f64() < 1e-60);
    }

    #[test]
    fn pi_and_trig() {
        let mut cc = consts();
        let p = 256;
        let pi = RBall::pi(p, &mut cc);
        // sin(pi/6) = 1/2
        let x = pi.div_u64(6, p);
        let s = x.sin(p, &mut cc);
        let half = RBall::exact(BigFloat::from_f64(0.5, p));
        let diff = s.sub(&half, p);
        assert!(diff.contains_zero());
        assert!(diff.abs().hi() < pow2(-200));
        // cos(pi) = -1
        let c = pi.cos(p, &mut cc);
        let err = c.add(&RBall::one(p), p);
        assert!(err.contains_zero());
    }

    #[test]
    fn sqrt_square_roundtrip() {
        let p = 192;
        let two = RBall::from_u64(2, p);
        let r = two.sqrt(p);
        let sq = r.mul(&r, p);
        let diff = sq.sub(&two, p);
        assert!(diff.contains_zero());
        assert!(diff.abs().hi() < pow2(-180));
    }

    #[test]
    fn recip_and_div() {
        let p = 128;
        let x = RBall::from_i64(-7, p);
        let y = RBall::one(p).div(&x, p);
        let prod = y.mul(&x, p);
        let diff = prod.sub(&RBall::one(p), p);
        assert!(diff.contains_zero());
    }

    #[test]
    fn integer_certification() {
        let p = 128;
        let five = RBall::from_i64(5, p);
        assert_eq!(five.to_integer_certified().unwrap(), BigInt::from(5));
        let x = RBall::from_i64(-3, p).add(&RBall::exact(BigFloat::from_f64(1e-20, p)), p);
        assert_eq!(x.to_integer_certified().unwrap(), BigInt::from(-3));
        // A wide ball must refuse.
        let wide = RBall::from_parts(BigFloat::from_f64(5.0, p), BigFloat::from_f64(0.3, 64));
        assert!(wide.to_integer_certified().is_none());
        // A midpoint near a half-integer must refuse.
        let amb = RBall::exact(BigFloat::from_f64(2.5, p));
        assert!(amb.to_integer_certified().is_none());
        // Zero certifies to zero.
        assert_eq!(RBall::zero().to_integer_certified().unwrap(), BigInt::zero());
        // Large value round trip.
        let big = BigInt::from(3u64).pow(50);
        let ball = RBall::from_bigint(&big);
        assert_eq!(ball.to_integer_certified().unwrap(), big);
    }

    #[test]
    fn bigint_conversion_roundtrip() {
        let v = BigInt::parse_bytes(b"-123456789012345678901234567890123456789", 10).unwrap();
        let f = bigfloat_from_bigint(&v);
        let b = RBall::exact(f);
        assert_eq!(b.to_integer_certified().unwrap(), v);
    }

    #[test]
    fn complex_product_i_squared() {
        let p = 128;
        let i = CBall::new(RBall::zero(), RBall::one(p));
        let m = i.mul(&i, p);
        let plus1 = m.add(&CBall::one(p), p);
        assert!(plus1.re.contains_zero());
        assert!(plus1.im.contains_zero());
        // powi: i^4 = 1
        let id = i.powi(4, p);
        let diff = id.sub(&CBall::one(p), p);
        assert!(diff.re.contains_zero() && diff.im.contains_zero());
    }

    #[test]
    fn complex_division() {
        let p = 192;
        // (1 + 2i) / (3 - i) = (1/10)(1 + 7i)
        let z = CBall::new(RBall::from_i64(1, p), RBall::from_i64(2, p));
        let w = CBall::new(RBall::from_i64(3, p), RBall::from_i64(-1, p));
        let q = z.div(&w, p);
        let ten = RBall::from_u64(10, p);
        let re10 = q.re.mul(&ten, p).sub(&RBall::one(p), p);
        let im10 = q.im.mul(&ten, p).sub(&RBall::from_i64(7, p), p);
        assert!(re10.contains_zero() && im10.contains_zero());
        assert!(re10.abs().hi() < pow2(-150));
    }

    #[test]
    fn ordering_and_widen() {
        let p = 128;
        let a = RBall::from_i64(3, p);
        let b = RBall::from_i64(4, p);
        assert!(a.lt_certain(&b));
        assert!(!b.lt_certain(&a));
        let z = CBall::one(p).widen(&BigFloat::from_f64(0.5, 64));
        assert!(!z.re.lt_certain(&RBall::from_parts(
            BigFloat::from_f64(1.2, p),
            BigFloat::from_f64(0.0, 64)
        )));
    }

    #[test]
    fn exp_endpoint_fallback_sound() {
        let mut cc = consts();
        let p = 128;
        // Wide ball [0, 2]: exp range [1, e^2]
        let x = RBall::from_parts(BigFloat::from_f64(1.0, p), BigFloat::from_f64(1.0, 64));
        let e = x.exp(p, &mut cc);
        assert!(bf_to_f64(&e.lo()) <= 1.0 + 1e-12);
        assert!(bf_to_f64(&e.hi()) >= 7.389 - 1e-3);
    }

    #[test]
    fn ln_inverse_of_exp() {
        let mut cc = consts();
        let p = 192;
        let x = RBall::from_u64(10, p);
        let l = x.ln(p, &mut cc);
        let back = l.exp(p, &mut cc);
        let diff = back.sub(&x, p);
        assert!(diff.contains_zero());
    }
}
