//! Builders that realize the standard group constructions as subspaces of V,
//! the small/mixed/large coordinate split, and the catalog of 5-generator
//! orbit representatives.
//!
//! Fixing a split index r partitions the preferred bases:
//!
//! ```text
//! V_s = <v_ji | i < j <= r>     W_s  = <w_jik | j <= r, k <= r>
//! V_m = <v_ji | i <= r < j>     W_ms = <w_jik | exactly one of j,k <= r>
//! V_l = <v_ji | r < i < j>      W_ml = <w_jik | i <= r < j,k>
//!                               W_l  = <w_jik | r < i>
//! ```
//!
//! With X_s <= V_s and X_l <= V_l: the coproduct X_s ⊕ X_l is always closed;
//! the direct sum X_s ⊕ V_m ⊕ X_l is closed iff both sides are closed in
//! their own contexts; identifying a nontrivial H <= V_s with φ(H) <= V_l
//! through the graph {h - φ(h)} gives the amalgamated direct product (never
//! closed) and the amalgamated coproduct (closed iff no nonzero h has both
//! h and φ(h) in the respective side closures).

use std::sync::OnceLock;

use crate::closure::{self, Verdict};
use crate::fpalg::{FpMatrix, Subspace};
use crate::io::expr::{is_blank, parse_expression};
use crate::spaces::SpaceContext;
use crate::{Error, Result};

/// The coordinate split of V and W at index r.
#[derive(Clone, Debug)]
pub struct SplitContext<'a> {
    ctx: &'a SpaceContext,
    r: usize,
    v_small: Vec<usize>,
    v_mixed: Vec<usize>,
    v_large: Vec<usize>,
    w_small: Vec<usize>,
    w_mixed_small: Vec<usize>,
    w_mixed_large: Vec<usize>,
    w_large: Vec<usize>,
}

/// Partition the coordinates of V and W at 1 <= r < n.
pub fn split(ctx: &SpaceContext, r: usize) -> Result<SplitContext<'_>> {
    if r < 1 || r >= ctx.n() {
        return Err(Error::Precondition(format!(
            "split index r={r} must satisfy 1 <= r < n={}",
            ctx.n()
        )));
    }
    let mut sc = SplitContext {
        ctx,
        r,
        v_small: Vec::new(),
        v_mixed: Vec::new(),
        v_large: Vec::new(),
        w_small: Vec::new(),
        w_mixed_small: Vec::new(),
        w_mixed_large: Vec::new(),
        w_large: Vec::new(),
    };
    for col in 0..ctx.dim_v() {
        let (j, i) = ctx.pair_at(col);
        if j <= r {
            sc.v_small.push(col);
        } else if i <= r {
            sc.v_mixed.push(col);
        } else {
            sc.v_large.push(col);
        }
    }
    for col in 0..ctx.dim_w() {
        let (j, i, k) = ctx.triple_at(col);
        if i > r {
            sc.w_large.push(col);
        } else if j <= r && k <= r {
            sc.w_small.push(col);
        } else if j > r && k > r {
            sc.w_mixed_large.push(col);
        } else {
            sc.w_mixed_small.push(col);
        }
    }
    Ok(sc)
}

impl<'a> SplitContext<'a> {
    pub fn ctx(&self) -> &'a SpaceContext {
        self.ctx
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn v_small(&self) -> &[usize] {
        &self.v_small
    }

    pub fn v_mixed(&self) -> &[usize] {
        &self.v_mixed
    }

    pub fn v_large(&self) -> &[usize] {
        &self.v_large
    }

    pub fn w_small(&self) -> &[usize] {
        &self.w_small
    }

    pub fn w_mixed_small(&self) -> &[usize] {
        &self.w_mixed_small
    }

    pub fn w_mixed_large(&self) -> &[usize] {
        &self.w_mixed_large
    }

    pub fn w_large(&self) -> &[usize] {
        &self.w_large
    }

    /// The coordinate subspace V_m of V.
    pub fn v_mixed_subspace(&self) -> Subspace {
        coordinate_subspace_by_cols(self.ctx, &self.v_mixed)
    }

    /// Coordinate subspace of W spanned by the given columns.
    pub fn w_coordinate_subspace(&self, cols: &[usize]) -> Subspace {
        let mut rows = Vec::with_capacity(cols.len());
        for &c in cols {
            let mut v = vec![0u64; self.ctx.dim_w()];
            v[c] = 1;
            rows.push(v);
        }
        Subspace::span(&rows, self.ctx.dim_w(), self.ctx.modulus()).expect("unit rows")
    }

    fn check_support(&self, x: &Subspace, cols: &[usize], side: &str) -> Result<()> {
        if x.ambient_dim() != self.ctx.dim_v() {
            return Err(Error::AmbientMismatch(x.ambient_dim(), self.ctx.dim_v()));
        }
        let mut allowed = vec![false; self.ctx.dim_v()];
        for &c in cols {
            allowed[c] = true;
        }
        for row in x.basis_rows() {
            for (c, &val) in row.iter().enumerate() {
                if val != 0 && !allowed[c] {
                    let (j, i) = self.ctx.pair_at(c);
                    return Err(Error::Precondition(format!(
                        "subspace is not supported on {side}: coordinate v({j},{i}) is set"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The closure of X_s <= V_s with respect to φ_1, ..., φ_r only.
    /// Computed in a rank-r context and re-embedded.
    pub fn small_closure(&self, xs: &Subspace) -> Result<Subspace> {
        self.check_support(xs, &self.v_small, "V_s")?;
        self.side_closure(xs, &self.v_small, self.r, 0)
    }

    /// The closure of X_l <= V_l with respect to φ_{r+1}, ..., φ_n only.
    pub fn large_closure(&self, xl: &Subspace) -> Result<Subspace> {
        self.check_support(xl, &self.v_large, "V_l")?;
        self.side_closure(xl, &self.v_large, self.ctx.n() - self.r, self.r)
    }

    fn side_closure(
        &self,
        x: &Subspace,
        cols: &[usize],
        side_n: usize,
        shift: usize,
    ) -> Result<Subspace> {
        if side_n < 2 {
            // one generator has no commutators; the only subspace is zero
            return Ok(Subspace::zero(self.ctx.dim_v(), self.ctx.modulus()));
        }
        let sub = SpaceContext::new(side_n, self.ctx.p())?;
        // map V(n) column -> V(side_n) column via index shift
        let mut to_sub = vec![usize::MAX; self.ctx.dim_v()];
        for &c in cols {
            let (j, i) = self.ctx.pair_at(c);
            to_sub[c] = sub.pair_index(j - shift, i - shift)?;
        }
        let rows: Vec<Vec<u64>> = x
            .basis_rows()
            .map(|row| {
                let mut v = vec![0u64; sub.dim_v()];
                for &c in cols {
                    if row[c] != 0 {
                        v[to_sub[c]] = row[c];
                    }
                }
                v
            })
            .collect();
        let sub_x = Subspace::span(&rows, sub.dim_v(), sub.modulus())?;
        let sub_cl = closure::closure(&sub, &sub_x)?;
        let back: Vec<Vec<u64>> = sub_cl
            .basis_rows()
            .map(|row| {
                let mut v = vec![0u64; self.ctx.dim_v()];
                for &c in cols {
                    v[c] = row[to_sub[c]];
                }
                v
            })
            .collect();
        Subspace::span(&back, self.ctx.dim_v(), self.ctx.modulus())
    }
}

fn coordinate_subspace_by_cols(ctx: &SpaceContext, cols: &[usize]) -> Subspace {
    let mut rows = Vec::with_capacity(cols.len());
    for &c in cols {
        let mut v = vec![0u64; ctx.dim_v()];
        v[c] = 1;
        rows.push(v);
    }
    Subspace::span(&rows, ctx.dim_v(), ctx.modulus()).expect("unit rows")
}

/// Span of the named basis vectors v_ji. Coordinate subspaces are always
/// closed.
pub fn coordinate_subspace(ctx: &SpaceContext, pairs: &[(usize, usize)]) -> Result<Subspace> {
    let cols: Vec<usize> = pairs
        .iter()
        .map(|&(j, i)| ctx.pair_index(j, i))
        .collect::<Result<_>>()?;
    Ok(coordinate_subspace_by_cols(ctx, &cols))
}

/// X_s ⊕ V_m ⊕ X_l: the subspace of the direct product of the two side
/// groups. Closed iff each side is closed in its own context.
pub fn direct_sum_subspace(sc: &SplitContext, xs: &Subspace, xl: &Subspace) -> Result<Subspace> {
    sc.check_support(xs, sc.v_small(), "V_s")?;
    sc.check_support(xl, sc.v_large(), "V_l")?;
    xs.sum(&sc.v_mixed_subspace())?.sum(xl)
}

/// Predicted closure of the direct sum: cl_s(X_s) ⊕ V_m ⊕ cl_l(X_l).
pub fn direct_sum_closure(sc: &SplitContext, xs: &Subspace, xl: &Subspace) -> Result<Subspace> {
    sc.small_closure(xs)?
        .sum(&sc.v_mixed_subspace())?
        .sum(&sc.large_closure(xl)?)
}

/// X_s ⊕ X_l (no mixed part): the subspace of the coproduct of the two side
/// groups. Always closed.
pub fn coproduct_subspace(sc: &SplitContext, xs: &Subspace, xl: &Subspace) -> Result<Subspace> {
    sc.check_support(xs, sc.v_small(), "V_s")?;
    sc.check_support(xl, sc.v_large(), "V_l")?;
    xs.sum(xl)
}

/// The amalgam data shared by the two amalgamated constructions: H <= V_s
/// meeting X_s trivially, and an embedding of H into V_l (given by the
/// images of H's RREF basis rows) whose image meets X_l trivially.
fn check_amalgam(
    sc: &SplitContext,
    xs: &Subspace,
    xl: &Subspace,
    h: &Subspace,
    phi_images: &[Vec<u64>],
) -> Result<Subspace> {
    let ctx = sc.ctx();
    let n = ctx.n();
    if sc.r() < 2 || sc.r() > n - 2 {
        return Err(Error::Precondition(format!(
            "amalgams need 2 <= r <= n-2, got r={} at n={n}",
            sc.r()
        )));
    }
    sc.check_support(xs, sc.v_small(), "V_s")?;
    sc.check_support(xl, sc.v_large(), "V_l")?;
    sc.check_support(h, sc.v_small(), "V_s")?;
    if !h.intersect(xs)?.is_zero() {
        return Err(Error::Precondition("H meets X_s nontrivially".into()));
    }
    if phi_images.len() != h.dim() {
        return Err(Error::Precondition(format!(
            "phi must map the {} basis vectors of H; got {} images",
            h.dim(),
            phi_images.len()
        )));
    }
    let image = Subspace::span(phi_images, ctx.dim_v(), ctx.modulus())?;
    sc.check_support(&image, sc.v_large(), "V_l")?;
    if image.dim() != h.dim() {
        return Err(Error::Precondition("phi is not injective on H".into()));
    }
    if !image.intersect(xl)?.is_zero() {
        return Err(Error::Precondition("phi(H) meets X_l nontrivially".into()));
    }
    Ok(image)
}

fn graph_subspace(
    ctx: &SpaceContext,
    h: &Subspace,
    phi_images: &[Vec<u64>],
) -> Result<Subspace> {
    let p = ctx.modulus();
    let rows: Vec<Vec<u64>> = h
        .basis_rows()
        .zip(phi_images)
        .map(|(hrow, img)| {
            hrow.iter()
                .zip(img)
                .map(|(&a, &b)| p.sub(a, b))
                .collect()
        })
        .collect();
    Subspace::span(&rows, ctx.dim_v(), p)
}

/// X = X_s ⊕ X_l ⊕ V_m ⊕ {h - φ(h) | h in H}: the subspace of the
/// amalgamated direct product. Requires H nontrivial; the result is never
/// closed.
pub fn amalgamated_direct_product(
    sc: &SplitContext,
    xs: &Subspace,
    xl: &Subspace,
    h: &Subspace,
    phi_images: &[Vec<u64>],
) -> Result<Subspace> {
    if h.is_zero() {
        return Err(Error::Precondition(
            "amalgamated direct product needs a nontrivial H".into(),
        ));
    }
    check_amalgam(sc, xs, xl, h, phi_images)?;
    let graph = graph_subspace(sc.ctx(), h, phi_images)?;
    xs.sum(xl)?.sum(&sc.v_mixed_subspace())?.sum(&graph)
}

/// Predicted closure of the amalgamated direct product:
/// cl_s(X_s ⊕ H) ⊕ V_m ⊕ cl_l(X_l ⊕ φ(H)).
pub fn amalgamated_direct_product_closure(
    sc: &SplitContext,
    xs: &Subspace,
    xl: &Subspace,
    h: &Subspace,
    phi_images: &[Vec<u64>],
) -> Result<Subspace> {
    let image = check_amalgam(sc, xs, xl, h, phi_images)?;
    let small = sc.small_closure(&xs.sum(h)?)?;
    let large = sc.large_closure(&xl.sum(&image)?)?;
    small.sum(&sc.v_mixed_subspace())?.sum(&large)
}

/// X = X_s ⊕ X_l ⊕ {h - φ(h) | h in H}: the subspace of the amalgamated
/// coproduct. H may be trivial (degenerating to the plain coproduct).
pub fn amalgamated_coproduct(
    sc: &SplitContext,
    xs: &Subspace,
    xl: &Subspace,
    h: &Subspace,
    phi_images: &[Vec<u64>],
) -> Result<Subspace> {
    check_amalgam(sc, xs, xl, h, phi_images)?;
    let graph = graph_subspace(sc.ctx(), h, phi_images)?;
    xs.sum(xl)?.sum(&graph)
}

/// Predicted closure of the amalgamated coproduct:
/// X ⊕ {h in H | h in cl_s(X_s) and φ(h) in cl_l(X_l)}.
pub fn amalgamated_coproduct_closure(
    sc: &SplitContext,
    xs: &Subspace,
    xl: &Subspace,
    h: &Subspace,
    phi_images: &[Vec<u64>],
) -> Result<Subspace> {
    check_amalgam(sc, xs, xl, h, phi_images)?;
    let ctx = sc.ctx();
    let x = amalgamated_coproduct(sc, xs, xl, h, phi_images)?;
    let m = h.dim();
    if m == 0 {
        return Ok(x);
    }
    // coefficient space of H: c maps to Σ c_t h_t and to Σ c_t φ(h_t)
    let p = ctx.modulus();
    let mut m_h = FpMatrix::zero(ctx.dim_v(), m, p);
    let mut m_phi = FpMatrix::zero(ctx.dim_v(), m, p);
    for (t, (hrow, img)) in h.basis_rows().zip(phi_images).enumerate() {
        m_h.set_column(t, hrow);
        m_phi.set_column(t, img);
    }
    let cls = sc.small_closure(xs)?;
    let cll = sc.large_closure(xl)?;
    let coeffs = crate::fpalg::preimage(&m_h, &cls)?
        .intersect(&crate::fpalg::preimage(&m_phi, &cll)?)?;
    let lifted: Vec<Vec<u64>> = coeffs
        .basis_rows()
        .map(|c| m_h.mul_vec(c))
        .collect::<Result<_>>()?;
    let extra = Subspace::span(&lifted, ctx.dim_v(), p)?;
    x.sum(&extra)
}

/// The codimension-1 subspace presenting the extraspecial group of order
/// p^(n+1) when n = 2m: generators are the differences identifying the
/// pattern commutators [g_2, g_1] = [g_4, g_3] = ... plus every
/// off-pattern basis vector. For n = 2 this is the zero subspace (order p^3).
pub fn extraspecial_subspace(ctx: &SpaceContext) -> Result<Subspace> {
    let n = ctx.n();
    if !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "extraspecial pattern needs an even generator count, got n={n}"
        )));
    }
    let m = n / 2;
    let mut rows = Vec::new();
    let base = ctx.pair_index(2, 1)?;
    for t in 2..=m {
        let mut v = vec![0u64; ctx.dim_v()];
        v[base] = 1;
        v[ctx.pair_index(2 * t, 2 * t - 1)?] = ctx.modulus().neg(1);
        rows.push(v);
    }
    for col in 0..ctx.dim_v() {
        let (j, i) = ctx.pair_at(col);
        let pattern = j % 2 == 0 && i == j - 1;
        if !pattern {
            let mut v = vec![0u64; ctx.dim_v()];
            v[col] = 1;
            rows.push(v);
        }
    }
    Subspace::span(&rows, ctx.dim_v(), ctx.modulus())
}

/// The coordinate subspace attaining the overlap bound f(m): all v_ji with
/// i < j <= T plus v_{T+1,1}, ..., v_{T+1,s}, where m = C(T,2) + s. Needs
/// T < n.
pub fn f_witness(ctx: &SpaceContext, m: usize) -> Result<Subspace> {
    if m == 0 {
        return Ok(Subspace::zero(ctx.dim_v(), ctx.modulus()));
    }
    if m > ctx.dim_v() {
        return Err(Error::Precondition(format!(
            "m={m} exceeds dim V = {}",
            ctx.dim_v()
        )));
    }
    let dec = crate::bounds::TriangularDecomposition::new(m as u64)?;
    let (t, s) = (dec.t as usize, dec.s as usize);
    if t >= ctx.n() {
        return Err(Error::Precondition(format!(
            "witness for m={m} needs T={t} < n={}",
            ctx.n()
        )));
    }
    let mut pairs = Vec::with_capacity(m);
    for i in 1..=t {
        for j in (i + 1)..=t {
            pairs.push((j, i));
        }
    }
    for i in 1..=s {
        pairs.push((t + 1, i));
    }
    coordinate_subspace(ctx, &pairs)
}

/// Append one central generator: extend the context from n to n+1 and add
/// every pair involving the new index to X. The group gains a direct C_p
/// factor, which does not change the capability verdict (except that a
/// nontrivial cyclic group becomes capable).
pub fn append_central_generator(
    ctx: &SpaceContext,
    x: &Subspace,
) -> Result<(SpaceContext, Subspace)> {
    let n = ctx.n();
    let bigger = SpaceContext::new(n + 1, ctx.p())?;
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(x.dim() + n);
    for row in x.basis_rows() {
        let mut v = vec![0u64; bigger.dim_v()];
        for (col, &val) in row.iter().enumerate() {
            let (j, i) = ctx.pair_at(col);
            v[bigger.pair_index(j, i)?] = val;
        }
        rows.push(v);
    }
    for i in 1..=n {
        let mut v = vec![0u64; bigger.dim_v()];
        v[bigger.pair_index(n + 1, i)?] = 1;
        rows.push(v);
    }
    let embedded = Subspace::span(&rows, bigger.dim_v(), bigger.modulus())?;
    Ok((bigger, embedded))
}

/// How the parameter r in a catalog entry is chosen for a given prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParameterRule {
    None,
    /// Smallest quadratic nonresidue mod p.
    LeastNonresidue,
    /// Smallest r >= 1 with x^3 + r x - 1 irreducible over F_p
    /// (for a cubic, no root means irreducible).
    LeastRWithCubicIrreducible,
}

impl ParameterRule {
    pub fn name(self) -> &'static str {
        match self {
            Self::None => "none",
            Self::LeastNonresidue => "least_nonresidue",
            Self::LeastRWithCubicIrreducible => "least_r_with_cubic_irreducible",
        }
    }

    fn parse(token: &str) -> Option<Self> {
        match token {
            "none" => Some(Self::None),
            "least_nonresidue" => Some(Self::LeastNonresidue),
            "least_r_with_cubic_irreducible" => Some(Self::LeastRWithCubicIrreducible),
            _ => None,
        }
    }
}

/// One orbit representative from the catalog.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub n: usize,
    pub dim: usize,
    pub generators: Vec<String>,
    pub parameter_rule: ParameterRule,
    pub expected_verdict: Verdict,
    pub expected_epicenter_dim: usize,
    pub source: String,
}

static CATALOG_N5: OnceLock<Vec<CatalogEntry>> = OnceLock::new();

/// The 28 orbit representatives of 8- and 7-dimensional subspaces of V(5):
/// all closed except n5-dim8-case5 and n5-dim7-case22.
pub fn catalog_n5() -> &'static [CatalogEntry] {
    CATALOG_N5.get_or_init(|| {
        parse_catalog(include_str!("../data/catalog_n5.txt"))
            .expect("bundled catalog data must parse")
    })
}

fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    let mut lines = text.lines().peekable();
    while let Some(line) = lines.next() {
        if is_blank(line) {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 6 {
            return Err(Error::Header(format!(
                "catalog stanza header needs 6 fields, got: {line}"
            )));
        }
        let name = fields[0].to_string();
        let n: usize = fields[1]
            .parse()
            .map_err(|_| Error::Header(format!("bad n in catalog header: {line}")))?;
        let dim: usize = fields[2]
            .parse()
            .map_err(|_| Error::Header(format!("bad dim in catalog header: {line}")))?;
        let expected_verdict = match fields[3] {
            "closed" => Verdict::Closed,
            "not_closed" => Verdict::NotClosed,
            other => {
                return Err(Error::Header(format!(
                    "bad expected verdict '{other}' in catalog header"
                )))
            }
        };
        let parameter_rule = ParameterRule::parse(fields[4]).ok_or_else(|| {
            Error::Header(format!("bad parameter rule '{}' in catalog header", fields[4]))
        })?;
        let source = fields[5].to_string();
        let mut generators = Vec::new();
        while let Some(next) = lines.peek() {
            if next.trim().is_empty() {
                lines.next();
                break;
            }
            if is_blank(next) {
                lines.next();
                continue;
            }
            generators.push(lines.next().unwrap().trim().to_string());
        }
        if generators.len() != dim {
            return Err(Error::CatalogTranscription {
                entry: name,
                msg: format!("{} generators listed for dim {}", generators.len(), dim),
            });
        }
        entries.push(CatalogEntry {
            name,
            n,
            dim,
            generators,
            parameter_rule,
            expected_verdict,
            expected_epicenter_dim: match expected_verdict {
                Verdict::Closed => 0,
                Verdict::NotClosed => 1,
            },
            source,
        });
    }
    Ok(entries)
}

/// Resolve a parameter rule at a prime. `None` rules resolve to no value.
pub fn resolve_parameter(rule: ParameterRule, p: u64) -> Result<Option<u64>> {
    match rule {
        ParameterRule::None => Ok(None),
        ParameterRule::LeastNonresidue => {
            let m = crate::fpalg::PrimeModulus::new(p)?;
            for q in 2..p {
                if m.pow(q, (p - 1) / 2) == p - 1 {
                    return Ok(Some(q));
                }
            }
            Err(Error::ParameterResolution {
                rule: rule.name().into(),
                p,
            })
        }
        ParameterRule::LeastRWithCubicIrreducible => {
            let m = crate::fpalg::PrimeModulus::new(p)?;
            'candidates: for r in 1..p {
                for x in 0..p {
                    // root of x^3 + r x - 1
                    if (m.pow(x, 3) + m.mul(r, x) + p - 1).is_multiple_of(p) {
                        continue 'candidates;
                    }
                }
                return Ok(Some(r));
            }
            Err(Error::ParameterResolution {
                rule: rule.name().into(),
                p,
            })
        }
    }
}

/// Build the subspace of a catalog entry at a prime: resolve the parameter,
/// substitute, parse, span, and verify the transcribed dimension.
pub fn instantiate_entry(entry: &CatalogEntry, p: u64) -> Result<(SpaceContext, Subspace)> {
    let ctx = SpaceContext::new(entry.n, p)?;
    let param = resolve_parameter(entry.parameter_rule, p)?;
    let mut rows = Vec::with_capacity(entry.generators.len());
    for g in &entry.generators {
        let text = match param {
            Some(val) => g.replace('r', &val.to_string()),
            None => g.clone(),
        };
        let expr = parse_expression(&text, entry.n).map_err(|e| Error::CatalogTranscription {
            entry: entry.name.clone(),
            msg: format!("generator '{g}': {e}"),
        })?;
        rows.push(expr.resolve(&ctx)?);
    }
    let x = Subspace::span(&rows, ctx.dim_v(), ctx.modulus())?;
    if x.dim() != entry.dim {
        return Err(Error::CatalogTranscription {
            entry: entry.name.clone(),
            msg: format!(
                "generators span dimension {} but the entry claims {}",
                x.dim(),
                entry.dim
            ),
        });
    }
    Ok((ctx, x))
}
