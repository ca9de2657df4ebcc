//! The combinatorial bound functions r(d) and f(m) and the capability
//! certificates built from them.
//!
//! Write m = C(T,2) + s with 0 < s <= T (the triangular decomposition; the
//! boundary identity C(T,3) + C(T,2) = C(T+1,3) makes the value well defined
//! across the other normalization). Then
//!
//! ```text
//! r(d) = C(T-1, 2) + (s - 1)        the per-slot overlap cap
//! f(m) = C(T, 3) + C(s, 2)          the total overlap cap
//! ```
//!
//! f(m) is the maximum of dim(X^n ∩ ker Φ) over all m-dimensional X, and it
//! does not depend on n. r(d) also counts the nontriangular integers below d;
//! that description is kept in the tests as an independent oracle.
//!
//! The certificates: `f(m+1) < n` forces every m-dimensional X to be closed;
//! `n + k > f(m+1)` (with k the measured overlap of a specific X) forces that
//! X to be closed; and `n - dim Z > 2k + C(k,2)` (k the codimension of X)
//! forces X to be non-closed.

use crate::closure::z_subspace;
use crate::fpalg::Subspace;
use crate::spaces::SpaceContext;
use crate::{binomial, Error, Result};

/// m = C(T,2) + s with 0 < s <= T; unique under this normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangularDecomposition {
    pub m: u64,
    pub t: u64,
    pub s: u64,
}

impl TriangularDecomposition {
    /// Decompose 1 <= m <= 2^32 (the cap keeps every derived binomial well
    /// inside u64).
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 || m > (1 << 32) {
            return Err(Error::Precondition(format!(
                "triangular decomposition needs 1 <= m <= 2^32, got {m}"
            )));
        }
        // start just below the answer and walk up
        let mut t = ((((8 * m + 1) as f64).sqrt() - 1.0) / 2.0).floor() as u64;
        t = t.saturating_sub(2).max(1);
        while binomial(t + 1, 2) < m {
            t += 1;
        }
        let s = m - binomial(t, 2);
        debug_assert!(s >= 1 && s <= t);
        Ok(Self { m, t, s })
    }
}

/// r(d): the largest integer with r <= d and r <= C(d - r, 2).
/// Defined for d <= 2^32.
pub fn r_of_d(d: u64) -> u64 {
    if d == 0 {
        return 0;
    }
    let dec = TriangularDecomposition::new(d).expect("d in range");
    binomial(dec.t - 1, 2) + (dec.s - 1)
}

/// f(m): the largest possible dim(X^n ∩ ker Φ_n) over m-dimensional X.
/// Defined for m <= 2^32.
pub fn f_of_m(m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    let dec = TriangularDecomposition::new(m).expect("m in range");
    binomial(dec.t, 3) + binomial(dec.s, 2)
}

/// Lower and upper bounds for dim X* given dim X:
/// `n*dimX - f(dimX) <= dim X* <= min(n*dimX, dimW)`.
pub fn star_dim_bounds(ctx: &SpaceContext, dim_x: usize) -> (usize, usize) {
    let n = ctx.n() as u64;
    let m = dim_x as u64;
    let lower = (n * m).saturating_sub(f_of_m(m));
    let upper = (n * m).min(ctx.dim_w() as u64);
    (lower as usize, upper as usize)
}

/// Dimension-only sufficient condition: if `f(dimX + 1) < n`, every subspace
/// of that dimension is closed.
pub fn sufficient_closed(ctx: &SpaceContext, dim_x: usize) -> bool {
    sufficient_closed_n(ctx.n(), dim_x)
}

pub(crate) fn sufficient_closed_n(n: usize, dim_x: usize) -> bool {
    f_of_m(dim_x as u64 + 1) < n as u64
}

/// Sharper per-instance condition: with k = n*dimX - dimXstar (the measured
/// overlap), `n + k > f(dimX + 1)` forces X closed.
pub fn sufficient_closed_precise(ctx: &SpaceContext, dim_x: usize, dim_x_star: usize) -> bool {
    sufficient_closed_precise_n(ctx.n(), dim_x, dim_x_star)
}

pub(crate) fn sufficient_closed_precise_n(n: usize, dim_x: usize, dim_x_star: usize) -> bool {
    let k = (n * dim_x) as u64 - dim_x_star as u64;
    n as u64 + k > f_of_m(dim_x as u64 + 1)
}

/// Group-rank form of the sufficient condition: a group with abelianization
/// rank n and commutator rank m is capable when `f(C(n,2) - m + 1) < n`.
/// A commutator rank above C(n,2) is impossible and certifies nothing.
pub fn sufficient_capable_group(n: usize, rank_comm: usize) -> bool {
    let dim_v = binomial(n as u64, 2) as usize;
    if rank_comm > dim_v {
        return false;
    }
    sufficient_closed_n(n, dim_v - rank_comm)
}

/// Necessary-condition violation: with k = codim_V(X) and z = dim Z(X),
/// `n - z > 2k + C(k,2)` rules out closedness (the group is not capable).
pub fn necessary_violated(ctx: &SpaceContext, x: &Subspace) -> Result<bool> {
    let z = z_subspace(ctx, x)?.dim();
    let k = ctx.dim_v() - x.dim();
    Ok(necessary_violated_ranks(ctx.n(), k, z))
}

/// 2*(n - z) > 4k + k(k-1), the integer form of n - z > 2k + C(k,2).
pub(crate) fn necessary_violated_ranks(n: usize, codim: usize, dim_z: usize) -> bool {
    let k = codim as u64;
    let rank_g_mod_z = (n - dim_z) as u64;
    2 * rank_g_mod_z > 4 * k + k * k.saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure;
    use crate::fpalg::Subspace;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn triangular_decompositions() {
        let d = TriangularDecomposition::new(10).unwrap();
        assert_eq!((d.t, d.s), (4, 4));
        let d = TriangularDecomposition::new(7).unwrap();
        assert_eq!((d.t, d.s), (4, 1));
        let d = TriangularDecomposition::new(1).unwrap();
        assert_eq!((d.t, d.s), (1, 1));
        assert!(TriangularDecomposition::new(0).is_err());
    }

    #[test]
    fn r_small_values() {
        assert_eq!(r_of_d(0), 0);
        assert_eq!(r_of_d(1), 0);
        assert_eq!(r_of_d(3), 1);
    }

    /// Independent oracle straight from the definition: largest r with
    /// r <= d and r <= C(d-r, 2).
    fn r_by_maximality(d: u64) -> u64 {
        (0..=d)
            .filter(|&r| r <= binomial(d - r, 2))
            .max()
            .unwrap_or(0)
    }

    /// Second oracle: count of nontriangular integers strictly below d.
    fn r_by_nontriangular_count(d: u64) -> u64 {
        let triangular: Vec<u64> = (0..64).map(|t| t * (t + 1) / 2).collect();
        (1..d).filter(|x| !triangular.contains(x)).count() as u64
    }

    #[test]
    fn r_matches_both_oracles() {
        for d in 0..200 {
            assert_eq!(r_of_d(d), r_by_maximality(d), "maximality oracle at d={d}");
            if d >= 1 {
                assert_eq!(
                    r_of_d(d),
                    r_by_nontriangular_count(d),
                    "counting oracle at d={d}"
                );
            }
        }
    }

    #[test]
    fn r_recurrence_steps_exactly_at_nontriangular() {
        let is_triangular = |d: u64| (0..64).any(|t| t * (t + 1) / 2 == d);
        for d in 1..200 {
            let step = r_of_d(d + 1) - r_of_d(d);
            assert_eq!(step, u64::from(!is_triangular(d)));
        }
    }

    #[test]
    fn f_small_values() {
        assert_eq!(f_of_m(0), 0);
        assert_eq!(f_of_m(1), 0);
        assert_eq!(f_of_m(2), 0);
        assert_eq!(f_of_m(10), 10);
        assert_eq!(f_of_m(28), 56);
    }

    #[test]
    fn boundary_consistency_of_f() {
        // C(T,3) + C(T,2) = C(T+1,3): both normalizations of a triangular m agree
        for t in 1..=40u64 {
            assert_eq!(binomial(t, 3) + binomial(t, 2), binomial(t + 1, 3));
        }
    }

    #[test]
    fn star_dim_bounds_spot_checks() {
        let ctx = SpaceContext::new(4, 3).unwrap();
        assert_eq!(star_dim_bounds(&ctx, 5), (18, 20));
        assert_eq!(star_dim_bounds(&ctx, 0), (0, 0));
    }

    #[test]
    fn sufficient_closed_spot_checks() {
        let ctx5 = SpaceContext::new(5, 3).unwrap();
        assert!(sufficient_closed(&ctx5, 6));
        let ctx4 = SpaceContext::new(4, 3).unwrap();
        assert!(sufficient_closed(&ctx4, 4));
        assert!(!sufficient_closed(&ctx4, 5));
        let ctx6 = SpaceContext::new(6, 3).unwrap();
        assert!(sufficient_closed(&ctx6, 7));
        assert!(!sufficient_closed(&ctx6, 8));
    }

    #[test]
    fn sufficient_closed_precise_spot_checks() {
        let ctx4 = SpaceContext::new(4, 3).unwrap();
        // dim X <= 1 always certifies: k = 0 and n > f(2) = 0
        assert!(sufficient_closed_precise(&ctx4, 1, 4));
        assert!(sufficient_closed_precise(&ctx4, 5, 18));
        let ctx5 = SpaceContext::new(5, 3).unwrap();
        assert_eq!(f_of_m(8), 5);
        assert!(!sufficient_closed_precise(&ctx5, 7, 35));
    }

    #[test]
    fn sufficient_capable_group_spot_checks() {
        assert!(sufficient_capable_group(4, 2));
        assert!(sufficient_capable_group(5, 4));
        assert!(!sufficient_capable_group(4, 1));
        // every 3-generator case is certified
        for m in 0..=3 {
            assert!(sufficient_capable_group(3, m));
        }
    }

    #[test]
    fn necessary_violated_spot_checks() {
        let ctx4 = SpaceContext::new(4, 3).unwrap();
        let extraspecial = crate::constructions::extraspecial_subspace(&ctx4).unwrap();
        assert!(necessary_violated(&ctx4, &extraspecial).unwrap());

        let full = Subspace::full(ctx4.dim_v(), ctx4.modulus());
        assert!(!necessary_violated(&ctx4, &full).unwrap());

        let ctx2 = SpaceContext::new(2, 3).unwrap();
        let zero = Subspace::zero(ctx2.dim_v(), ctx2.modulus());
        assert!(!necessary_violated(&ctx2, &zero).unwrap());
    }

    #[test]
    fn certificates_are_sound_on_samples() {
        let ctx = SpaceContext::new(4, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..150 {
            let k = rng.random_range(0..=ctx.dim_v());
            let rows: Vec<Vec<u64>> = (0..k)
                .map(|_| (0..ctx.dim_v()).map(|_| rng.random_range(0..3)).collect())
                .collect();
            let x = Subspace::span(&rows, ctx.dim_v(), ctx.modulus()).unwrap();
            let closed = closure::is_closed(&ctx, &x).unwrap();
            if sufficient_closed(&ctx, x.dim()) {
                assert!(closed, "sufficient_closed must imply closed");
            }
            let star = closure::star_v(&ctx, &x).unwrap();
            if sufficient_closed_precise(&ctx, x.dim(), star.dim()) {
                assert!(closed, "precise bound must imply closed");
            }
            if necessary_violated(&ctx, &x).unwrap() {
                assert!(!closed, "necessary violation must imply non-closed");
            }
        }
    }
}
