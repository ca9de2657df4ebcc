//! The ambient spaces U, V(n), W(n) and the linear maps between them.
//!
//! `U = F_p^n` has basis `u_1, ..., u_n`. `V = U ∧ U` has the preferred basis
//! `v_ji = u_j ∧ u_i` for `1 <= i < j <= n`, ordered by (i asc, j asc), so
//! the 0-based column of `v_ji` is `(i-1)(2n-i)/2 + (j-i-1)`. `W` is the free
//! weight-3 layer with preferred basis `w_jik`, `1 <= i < j <= n`,
//! `i <= k <= n`, ordered by (i asc, j asc, k asc); its dimension is
//! `2*C(n+1, 3)`.
//!
//! The maps are given on basis vectors by
//!
//! ```text
//! φ_k(v_ji) = w_jik             if k >= i
//!           = w_jki - w_ikj     if k < i
//! ψ_i(u_j)  = v_ji  (i < j),  0  (i = j),  -v_ij  (i > j)
//! Φ(v_1, ..., v_n) = φ_1(v_1) + ... + φ_n(v_n)
//! ```
//!
//! and `ker Φ` has the explicit basis indexed by triples `a < b < c`, with
//! `v_cb` in slot a, `-v_ca` in slot b, and `v_ba` in slot c.
//!
//! A [`SpaceContext`] materializes all of this once; it is immutable
//! afterwards and freely shared across worker threads.

use crate::fpalg::{FpMatrix, PrimeModulus, Subspace};
use crate::{binomial, Error, Result};

/// Everything that depends only on (n, p): dimensions, basis index schemes,
/// and the cached matrices of the maps φ_k, ψ_i, and Φ.
#[derive(Clone, Debug)]
pub struct SpaceContext {
    n: usize,
    p: PrimeModulus,
    dim_v: usize,
    dim_w: usize,
    /// Column index -> (j, i) with 1 <= i < j <= n.
    pairs: Vec<(usize, usize)>,
    /// (j, i) -> column index; only i < j entries are meaningful.
    pair_lookup: Vec<usize>,
    /// Column index -> (j, i, k) with 1 <= i < j <= n, i <= k <= n.
    triples: Vec<(usize, usize, usize)>,
    /// (j, i, k) -> column index.
    triple_lookup: Vec<usize>,
    /// phi[k-1] : V -> W, a dimW x dimV matrix.
    phi: Vec<FpMatrix>,
    /// psi[i-1] : U -> V, a dimV x n matrix.
    psi: Vec<FpMatrix>,
    /// Φ : V^n -> W with slot-major column order phi[1] | ... | phi[n].
    big_phi: FpMatrix,
}

/// One element of ker Φ: an n-tuple of vectors of V whose φ-images sum to
/// zero. The span of the components of a nonzero element has dimension >= 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelElement {
    components: Vec<Vec<u64>>,
}

impl KernelElement {
    pub fn components(&self) -> &[Vec<u64>] {
        &self.components
    }

    /// Concatenate the n slots into a vector of V^n (slot-major).
    pub fn flatten(&self) -> Vec<u64> {
        self.components.concat()
    }
}

impl SpaceContext {
    pub fn new(n: usize, p: u64) -> Result<Self> {
        if !(2..=12).contains(&n) {
            return Err(Error::GeneratorCountOutOfRange(n));
        }
        let p = PrimeModulus::new(p)?;
        let dim_v = (n * (n - 1)) / 2;
        let dim_w = 2 * binomial(n as u64 + 1, 3) as usize;

        let mut pairs = Vec::with_capacity(dim_v);
        let mut pair_lookup = vec![usize::MAX; (n + 1) * (n + 1)];
        for i in 1..=n {
            for j in (i + 1)..=n {
                pair_lookup[j * (n + 1) + i] = pairs.len();
                pairs.push((j, i));
            }
        }

        let mut triples = Vec::with_capacity(dim_w);
        let mut triple_lookup = vec![usize::MAX; (n + 1) * (n + 1) * (n + 1)];
        for i in 1..=n {
            for j in (i + 1)..=n {
                for k in i..=n {
                    triple_lookup[(j * (n + 1) + i) * (n + 1) + k] = triples.len();
                    triples.push((j, i, k));
                }
            }
        }
        debug_assert_eq!(triples.len(), dim_w);

        let mut ctx = Self {
            n,
            p,
            dim_v,
            dim_w,
            pairs,
            pair_lookup,
            triples,
            triple_lookup,
            phi: Vec::new(),
            psi: Vec::new(),
            big_phi: FpMatrix::zero(0, 0, p),
        };

        for k in 1..=n {
            let mut m = FpMatrix::zero(dim_w, dim_v, p);
            for col in 0..dim_v {
                let (j, i) = ctx.pairs[col];
                m.set_column(col, &ctx.phi_k_column(k, j, i)?);
            }
            ctx.phi.push(m);
        }
        for i in 1..=n {
            let mut m = FpMatrix::zero(dim_v, n, p);
            for j in 1..=n {
                m.set_column(j - 1, &ctx.psi_i_column(i, j)?);
            }
            ctx.psi.push(m);
        }

        let mut big = FpMatrix::zero(dim_w, n * dim_v, p);
        for (slot, phi_k) in ctx.phi.iter().enumerate() {
            for col in 0..dim_v {
                for row in 0..dim_w {
                    let v = phi_k.at(row, col);
                    if v != 0 {
                        big.set(row, slot * dim_v + col, v);
                    }
                }
            }
        }
        ctx.big_phi = big;
        Ok(ctx)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p.get()
    }

    #[inline]
    pub fn dim_u(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    #[inline]
    pub fn dim_w(&self) -> usize {
        self.dim_w
    }

    /// Column index of `v_ji`; requires 1 <= i < j <= n.
    pub fn pair_index(&self, j: usize, i: usize) -> Result<usize> {
        if i < 1 || j <= i || j > self.n {
            return Err(Error::IndexOutOfRange(format!("pair (j,i)=({j},{i})")));
        }
        Ok(self.pair_lookup[j * (self.n + 1) + i])
    }

    /// Pair at a given V column.
    pub fn pair_at(&self, col: usize) -> (usize, usize) {
        self.pairs[col]
    }

    /// Column index of `w_jik`; requires 1 <= i < j <= n and i <= k <= n.
    pub fn triple_index(&self, j: usize, i: usize, k: usize) -> Result<usize> {
        if i < 1 || j <= i || j > self.n || k < i || k > self.n {
            return Err(Error::IndexOutOfRange(format!(
                "triple (j,i,k)=({j},{i},{k})"
            )));
        }
        Ok(self.triple_lookup[(j * (self.n + 1) + i) * (self.n + 1) + k])
    }

    pub fn triple_at(&self, col: usize) -> (usize, usize, usize) {
        self.triples[col]
    }

    /// The unit vector `v_ji` in V.
    pub fn v_unit(&self, j: usize, i: usize) -> Result<Vec<u64>> {
        let mut v = vec![0; self.dim_v];
        v[self.pair_index(j, i)?] = 1;
        Ok(v)
    }

    /// Coordinates of `u_j ∧ u_i` in the v basis, for any i != j (the pair is
    /// reoriented with a sign when j < i). Returns the zero vector for i = j.
    pub fn wedge_unit(&self, j: usize, i: usize) -> Result<Vec<u64>> {
        let mut v = vec![0; self.dim_v];
        if i == j {
            return Ok(v);
        }
        if j > i {
            v[self.pair_index(j, i)?] = 1;
        } else {
            v[self.pair_index(i, j)?] = self.p.neg(1);
        }
        Ok(v)
    }

    /// The image of `v_ji` under φ_k as a W vector.
    pub fn phi_k_column(&self, k: usize, j: usize, i: usize) -> Result<Vec<u64>> {
        if k < 1 || k > self.n {
            return Err(Error::IndexOutOfRange(format!("phi index k={k}")));
        }
        let mut w = vec![0u64; self.dim_w];
        if k >= i {
            w[self.triple_index(j, i, k)?] = 1;
        } else {
            w[self.triple_index(j, k, i)?] = 1;
            w[self.triple_index(i, k, j)?] = self.p.neg(1);
        }
        Ok(w)
    }

    /// The image of `u_j` under ψ_i as a V vector.
    pub fn psi_i_column(&self, i: usize, j: usize) -> Result<Vec<u64>> {
        if i < 1 || i > self.n || j < 1 || j > self.n {
            return Err(Error::IndexOutOfRange(format!("psi indices (i,j)=({i},{j})")));
        }
        self.wedge_unit(j, i)
    }

    /// φ_k as a matrix V -> W.
    pub fn phi(&self, k: usize) -> &FpMatrix {
        &self.phi[k - 1]
    }

    /// ψ_i as a matrix U -> V.
    pub fn psi(&self, i: usize) -> &FpMatrix {
        &self.psi[i - 1]
    }

    /// φ_u = Σ u_k φ_k for an arbitrary u in U.
    pub fn phi_u(&self, u: &[u64]) -> Result<FpMatrix> {
        if u.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: u.len(),
            });
        }
        let mut m = FpMatrix::zero(self.dim_w, self.dim_v, self.p);
        for (k, &coeff) in u.iter().enumerate() {
            if coeff % self.p.get() != 0 {
                m = m.add_scaled(&self.phi[k], coeff)?;
            }
        }
        Ok(m)
    }

    /// ψ_u = Σ u_i ψ_i; sends a to a ∧ u.
    pub fn psi_u(&self, u: &[u64]) -> Result<FpMatrix> {
        if u.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: u.len(),
            });
        }
        let mut m = FpMatrix::zero(self.dim_v, self.n, self.p);
        for (i, &coeff) in u.iter().enumerate() {
            if coeff % self.p.get() != 0 {
                m = m.add_scaled(&self.psi[i], coeff)?;
            }
        }
        Ok(m)
    }

    /// The subspace ψ_u(U) of V; has dimension n - 1 whenever u != 0.
    pub fn psi_image(&self, u: &[u64]) -> Result<Subspace> {
        let m = self.psi_u(u)?;
        crate::fpalg::apply(&m, &Subspace::full(self.n, self.p))
    }

    /// Φ as a dimW x (n * dimV) matrix, columns in slot-major order.
    pub fn big_phi(&self) -> &FpMatrix {
        &self.big_phi
    }

    /// The explicit basis of ker Φ: one element per triple a < b < c.
    pub fn kernel_basis(&self) -> Vec<KernelElement> {
        let mut out = Vec::with_capacity(binomial(self.n as u64, 3) as usize);
        for a in 1..=self.n {
            for b in (a + 1)..=self.n {
                for c in (b + 1)..=self.n {
                    let mut components = vec![vec![0u64; self.dim_v]; self.n];
                    let cb = self.pair_index(c, b).unwrap();
                    let ca = self.pair_index(c, a).unwrap();
                    let ba = self.pair_index(b, a).unwrap();
                    components[a - 1][cb] = 1;
                    components[b - 1][ca] = self.p.neg(1);
                    components[c - 1][ba] = 1;
                    out.push(KernelElement { components });
                }
            }
        }
        out
    }

    /// The coordinate of v at `v_ji`.
    pub fn proj_pair(&self, v: &[u64], j: usize, i: usize) -> Result<u64> {
        if v.len() != self.dim_v {
            return Err(Error::LengthMismatch {
                expected: self.dim_v,
                got: v.len(),
            });
        }
        Ok(v[self.pair_index(j, i)?])
    }

    /// Π_i: zero out every coordinate `v_ab` with i not in {a, b}.
    pub fn proj_pi(&self, v: &[u64], i: usize) -> Result<Vec<u64>> {
        if v.len() != self.dim_v {
            return Err(Error::LengthMismatch {
                expected: self.dim_v,
                got: v.len(),
            });
        }
        if i < 1 || i > self.n {
            return Err(Error::IndexOutOfRange(format!("projection index {i}")));
        }
        let mut out = vec![0u64; self.dim_v];
        for (col, &(a, b)) in self.pairs.iter().enumerate() {
            if a == i || b == i {
                out[col] = v[col];
            }
        }
        Ok(out)
    }

    /// Does Π_i kill every vector of X?
    pub fn pi_vanishes_on(&self, x: &Subspace, i: usize) -> Result<bool> {
        for row in x.basis_rows() {
            if self.proj_pi(row, i)?.iter().any(|&c| c != 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The action induced on V by an invertible g on U: `v_ji` maps to
    /// `g(u_j) ∧ g(u_i)`. Functorial in g.
    pub fn induced_gl_action(&self, g: &FpMatrix) -> Result<FpMatrix> {
        if g.rows() != self.n || g.cols() != self.n {
            return Err(Error::MapShapeMismatch {
                rows: g.rows(),
                cols: g.cols(),
                given: self.n,
            });
        }
        if g.rank() != self.n {
            return Err(Error::SingularMatrix);
        }
        let mut m = FpMatrix::zero(self.dim_v, self.dim_v, self.p);
        for (col, &(j, i)) in self.pairs.iter().enumerate() {
            for (row, &(a, b)) in self.pairs.iter().enumerate() {
                // coefficient of v_ab (a > b) in g(u_j) ∧ g(u_i)
                let c = self.p.sub(
                    self.p.mul(g.at(a - 1, j - 1), g.at(b - 1, i - 1)),
                    self.p.mul(g.at(b - 1, j - 1), g.at(a - 1, i - 1)),
                );
                if c != 0 {
                    m.set(row, col, c);
                }
            }
        }
        Ok(m)
    }

    /// Orthogonal complement of a subspace of V in the v-coordinates.
    pub fn orthogonal_complement(&self, x: &Subspace) -> Result<Subspace> {
        if x.ambient_dim() != self.dim_v {
            return Err(Error::AmbientMismatch(x.ambient_dim(), self.dim_v));
        }
        Ok(x.orthogonal_complement())
    }

    /// Span in V of the n components of a kernel element.
    pub fn component_span(&self, ke: &KernelElement) -> Result<Subspace> {
        Subspace::span(&ke.components, self.dim_v, self.p)
    }

    /// Independent check that Φ kills a flattened V^n vector.
    pub fn big_phi_kills(&self, flat: &[u64]) -> Result<bool> {
        let image = self.big_phi.mul_vec(flat)?;
        Ok(image.iter().all(|&c| c == 0))
    }

    /// Normalized projective representatives of U: one vector per line, with
    /// first nonzero coordinate 1, in lexicographic order.
    pub fn projective_points(&self) -> Vec<Vec<u64>> {
        let p = self.p.get();
        let n = self.n;
        let mut out = Vec::new();
        for lead in 0..n {
            let tail = n - lead - 1;
            let count = p.pow(tail as u32);
            for mut rest in 0..count {
                let mut u = vec![0u64; n];
                u[lead] = 1;
                for t in (0..tail).rev() {
                    u[lead + 1 + t] = rest % p;
                    rest /= p;
                }
                out.push(u);
            }
        }
        out
    }
}
