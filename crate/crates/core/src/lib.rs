//! Capability testing for finite p-groups of class at most two and odd prime
//! exponent, done entirely in linear algebra over F_p.
//!
//! A group in this class is determined (up to the data we need) by a subspace
//! `X` of `V = U ∧ U`, where `U = F_p^n` tracks a minimal generating set and
//! the basis vector `v_ji` of `V` stands for the commutator `[g_j, g_i]`. The
//! group is *capable* (isomorphic to `H/Z(H)` for some `H`) exactly when `X`
//! is closed under the closure operator `X ↦ X**` induced by the family of
//! maps `φ_u : V → W` into the free weight-3 layer `W`. This crate builds the
//! ambient spaces and maps, computes closures, evaluates the numerical
//! sufficient/necessary certificates, realizes the standard constructions
//! (coproducts, amalgamated products, extraspecial patterns), ships the
//! catalog of 5-generator orbit representatives, and drives a parallel
//! search for non-closed subspaces.
//!
//! Entry points:
//! * [`fpalg`] — exact dense linear algebra over F_p (RREF, spans, kernels).
//! * [`spaces`] — the spaces `U`, `V(n)`, `W(n)` and the maps `φ`, `ψ`, `Φ`.
//! * [`closure`] — star/closure/interior operators and capability reports.
//! * [`bounds`] — the combinatorial functions `r(d)`, `f(m)` and certificates.
//! * [`constructions`] — subspace builders and the `n = 5` catalog.
//! * [`search`] — Grassmannian enumeration, sampling, and parallel scans.
//! * [`io`] — expression grammar, subspace files, and reports.
//! * [`cli`] — the `cap` command-line tool.

pub mod bounds;
pub mod cli;
pub mod closure;
pub mod constructions;
pub mod fpalg;
pub mod io;
pub mod search;
pub mod spaces;

pub use fpalg::{FpMatrix, PrimeModulus, Subspace};
pub use spaces::SpaceContext;

/// Errors shared by every module in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is not an odd prime in [3, 2^16)")]
    ModulusOutOfRange(u64),
    #[error("generator count {0} out of range (need 2 <= n <= 12)")]
    GeneratorCountOutOfRange(usize),
    #[error("vector length {got} does not match ambient dimension {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("map is {rows}x{cols} but was applied across dimension {given}")]
    MapShapeMismatch { rows: usize, cols: usize, given: usize },
    #[error("matrix is singular mod p")]
    SingularMatrix,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("malformed header: {0}")]
    Header(String),
    #[error("catalog transcription error in entry {entry}: {msg}")]
    CatalogTranscription { entry: String, msg: String },
    #[error("no parameter value exists for rule {rule} at p={p}")]
    ParameterResolution { rule: String, p: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Binomial coefficient C(n, k) as u64; exact for everything this crate uses.
pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}
