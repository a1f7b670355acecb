//! Explicit lower bounds for the Weil height on the division-point field of a
//! rational elliptic curve.
//!
//! For an elliptic curve `E/Q`, adjoining the coordinates of all torsion
//! points yields an infinite extension `Q(E_tor)` of `Q`.  A classical theme
//! in diophantine geometry is that the absolute logarithmic Weil height of an
//! algebraic number in this field is either zero (the number is zero or a
//! root of unity) or bounded below by a positive constant depending only on
//! `E`.  The proofs are effective, and every constant along the way can be
//! made explicit; this crate carries that out end to end, in certified
//! arithmetic, for any elliptic curve given by a short Weierstrass model with
//! rational coefficients.
//!
//! The pipeline has three legs:
//!
//! 1. **A supersingular prime with surjective mod-`l` image.**  Starting
//!    from the curve's conductor, a congruence class `a (mod q)` is
//!    assembled from quadratic-reciprocity constraints so that any prime
//!    `l ≡ a (mod q)` forces an auxiliary prime of supersingular reduction.
//!    Locating such an auxiliary prime is a finite computation with Hilbert
//!    class polynomials: `P_l(j_E) · P_4l(j_E)` is a nonzero rational whose
//!    numerator is divisible only by primes of supersingular reduction and
//!    by primes `p` with `(p|l) = +1`, so factoring it exhibits an explicit
//!    supersingular prime.  See [`ssearch`].
//!
//! 2. **Class polynomials in certified arithmetic.**  Hilbert class
//!    polynomials are computed from the reduced binary quadratic forms of
//!    the relevant discriminant, evaluating the modular `j`-function by its
//!    `q`-expansion in ball arithmetic with rigorous tail bounds, so the
//!    integer coefficients are *provably* correct once the enclosing balls
//!    round uniquely.  See [`classpoly`] and [`ball`].
//!
//! 3. **The height bounds themselves.**  All explicit lower
//!    bounds — the general and conductor-only forms, the semistable
//!    specialization, the complex-multiplication case, the small-degree and
//!    `p`-adic auxiliary bounds, and the supporting archimedean lemmas — are
//!    evaluated exactly or in directed floating point, with every rounding
//!    chosen so the reported bound is *valid* (never optimistic).  Because
//!    honest values like `exp(-exp(5·10^9))` underflow every native format,
//!    results are carried as [`bounds::BoundValue`], a sign-aware iterated
//!    logarithm representation.  See [`bounds`].
//!
//! The crate ships a thin CLI (`etor-heights`) exposing each stage —
//! `invariants`, `supersingular`, `classpoly`, `bound`, `verify` — with JSON
//! output conforming to the schema in `schema/run_report.schema.json`, and a
//! set of runnable examples under `examples/`.

pub mod arith;
pub mod ball;
pub mod bounds;
pub mod classpoly;
pub mod cli;
pub mod curve;
pub mod report;
pub mod ssearch;

/// Crate-wide error type.
///
/// Variants are grouped by how the CLI maps them to process exit codes:
/// usage problems exit 64, mathematical failures (a verification that found
/// a counterexample, an input outside a theorem's hypotheses) exit 1, and
/// resource exhaustion (search effort, precision, incomplete factorization,
/// I/O) exits 2.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input is syntactically or semantically unusable (CLI usage class).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Input is outside the mathematical domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A verification suite found a genuine violation.
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    /// A bounded search ran out of its configured effort budget.
    #[error("effort exhausted: {0}")]
    EffortExhausted(String),
    /// Working precision reached its configured ceiling without certifying.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    /// A factorization step could not fully certify its output.
    #[error("extraction incomplete: {0}")]
    ExtractionIncomplete(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code the CLI uses for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) => 64,
            Error::Domain(_) | Error::VerificationFailed(_) => 1,
            Error::EffortExhausted(_)
            | Error::PrecisionExhausted(_)
            | Error::ExtractionIncomplete(_)
            | Error::Io(_)
            | Error::Json(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
