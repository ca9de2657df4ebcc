//! Enumeration and sampling of Gr(k, V) over F_p with closure checks.
//!
//! Exhaustive enumeration walks the Schubert cells of the Grassmannian: a
//! cell is a pivot pattern (the pivot columns of an RREF basis) and its
//! points are odometer assignments of the free entries, p^free of them, so
//! the total over all cells is the Gaussian binomial. Cells are independent
//! and similar-sized at fixed k; they are the unit of parallel work and of
//! checkpointing. Random mode draws sample i as a pure function of
//! (seed, i), so any subset can be re-examined and worker count never
//! changes the result set.

use std::collections::HashSet;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds;
use crate::closure::{star_v, star_w, z_subspace};
use crate::fpalg::{kernel, FpMatrix, Subspace};
use crate::spaces::SpaceContext;
use crate::{Error, Result};

/// The pivot columns of an RREF basis: k strictly increasing indices in
/// [0, dimV). Identifies one Schubert cell of Gr(k, V).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PivotPattern {
    pub cols: Vec<usize>,
}

impl PivotPattern {
    /// Number of free entries in the cell: row t may fill any column right
    /// of its pivot that is not itself a pivot.
    pub fn free_count(&self, dim: usize) -> usize {
        let k = self.cols.len();
        self.cols
            .iter()
            .enumerate()
            .map(|(t, &p)| (dim - p - 1) - (k - 1 - t))
            .sum()
    }

    /// Cell size p^free as u128 (can be astronomically large for n = 6).
    pub fn cell_size(&self, dim: usize, p: u64) -> u128 {
        (p as u128).pow(self.free_count(dim) as u32)
    }

    pub fn key(&self) -> String {
        let cols: Vec<String> = self.cols.iter().map(|c| c.to_string()).collect();
        format!("cell {}", cols.join(" "))
    }
}

/// All C(dim, k) pivot patterns in colexicographic order.
pub fn enumerate_cells(dim: usize, k: usize) -> Vec<PivotPattern> {
    assert!(k <= dim, "k={k} exceeds dim={dim}");
    let mut out = Vec::new();
    if k == 0 {
        out.push(PivotPattern { cols: vec![] });
        return out;
    }
    let mut state: Vec<usize> = (0..k).collect();
    loop {
        out.push(PivotPattern {
            cols: state.clone(),
        });
        let mut moved = false;
        for i in 0..k {
            let limit = if i + 1 < k { state[i + 1] } else { dim };
            if state[i] + 1 < limit {
                state[i] += 1;
                for (t, s) in state.iter_mut().enumerate().take(i) {
                    *s = t;
                }
                moved = true;
                break;
            }
        }
        if !moved {
            return out;
        }
    }
}

/// Iterator over every subspace of one cell, as canonical RREF bases.
pub struct CellSubspaces {
    pattern: PivotPattern,
    ambient: usize,
    p: u64,
    modulus: crate::fpalg::PrimeModulus,
    /// (row, col) slots for free entries, in row-major order.
    free_slots: Vec<(usize, usize)>,
    digits: Vec<u64>,
    done: bool,
}

impl CellSubspaces {
    pub fn new(pattern: PivotPattern, ambient: usize, modulus: crate::fpalg::PrimeModulus) -> Self {
        let pivot_set: HashSet<usize> = pattern.cols.iter().copied().collect();
        let mut free_slots = Vec::new();
        for (row, &pc) in pattern.cols.iter().enumerate() {
            for col in (pc + 1)..ambient {
                if !pivot_set.contains(&col) {
                    free_slots.push((row, col));
                }
            }
        }
        let digits = vec![0; free_slots.len()];
        Self {
            pattern,
            ambient,
            p: modulus.get(),
            modulus,
            free_slots,
            digits,
            done: false,
        }
    }

    fn materialize(&self) -> Subspace {
        let k = self.pattern.cols.len();
        let mut m = FpMatrix::zero(k, self.ambient, self.modulus);
        for (row, &pc) in self.pattern.cols.iter().enumerate() {
            m.set(row, pc, 1);
        }
        for (&(row, col), &d) in self.free_slots.iter().zip(&self.digits) {
            m.set(row, col, d);
        }
        Subspace::from_rref_unchecked(m)
    }
}

impl Iterator for CellSubspaces {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let out = self.materialize();
        // odometer increment
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.p {
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

/// Every k-dimensional subspace of V(n), each exactly once, canonical RREF.
pub fn enumerate_subspaces(ctx: &SpaceContext, k: usize) -> impl Iterator<Item = Subspace> {
    let ambient = ctx.dim_v();
    let modulus = ctx.modulus();
    enumerate_cells(ambient, k)
        .into_iter()
        .flat_map(move |pat| CellSubspaces::new(pat, ambient, modulus))
}

/// One uniform point of Gr(k, dimV): the row space of a uniform rank-k
/// matrix (the GL_k fiber over every subspace has the same size, so the row
/// space is uniform). Expected retries are far below 2 for p >= 3.
pub fn sample_subspace(ctx: &SpaceContext, k: usize, rng: &mut impl RngCore) -> Subspace {
    let dim = ctx.dim_v();
    let p = ctx.p();
    if k == 0 {
        return Subspace::zero(dim, ctx.modulus());
    }
    loop {
        let rows: Vec<Vec<u64>> = (0..k)
            .map(|_| (0..dim).map(|_| rng.random_range(0..p)).collect())
            .collect();
        let s = Subspace::span(&rows, dim, ctx.modulus()).expect("row lengths match");
        if s.dim() == k {
            return s;
        }
    }
}

/// The RNG for sample `index` of a seeded run: a pure function of
/// (seed, index) via the stream parameter.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    Exhaustive,
    Random(u64),
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub k: usize,
    pub mode: ScanMode,
    pub workers: usize,
    pub seed: u64,
    pub certified_only: bool,
    /// Hard cap on instances considered; exceeding it truncates the scan.
    pub max_instances: Option<u64>,
    pub checkpoint: Option<PathBuf>,
}

/// Where a record came from: an exhaustive cell or a sampler coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecordSource {
    Cell(Vec<usize>),
    Sample { seed: u64, index: u64 },
}

impl RecordSource {
    pub fn render(&self) -> String {
        match self {
            RecordSource::Cell(cols) => {
                let cols: Vec<String> = cols.iter().map(|c| c.to_string()).collect();
                format!("cell {}", cols.join(" "))
            }
            RecordSource::Sample { seed, index } => format!("sample seed={seed} index={index}"),
        }
    }
}

/// A discovered non-closed subspace with its closure data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchRecord {
    pub subspace: Subspace,
    pub dim_closure: usize,
    pub epicenter_dim: usize,
    pub source: RecordSource,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub checked: u64,
    pub certificate_skipped: u64,
    pub non_closed: u64,
    pub truncated: bool,
}

/// Closed test reusing a precomputed X*, intersecting the per-φ_k preimage
/// constraints incrementally. The running intersection contains X** and
/// hence X, so once its dimension drops to dim X the subspace is closed.
/// Returns the closure when X is not closed.
fn closed_or_closure(ctx: &SpaceContext, x: &Subspace, star: &Subspace) -> Result<Option<Subspace>> {
    if star.is_full() {
        return Ok(if x.is_full() {
            None
        } else {
            Some(Subspace::full(ctx.dim_v(), ctx.modulus()))
        });
    }
    let constraints = star.orthogonal_complement();
    let mut acc: Option<Subspace> = None;
    for k in 1..=ctx.n() {
        let block = constraints.basis().mul(ctx.phi(k))?;
        let piece = kernel(&block);
        let next = match acc {
            None => piece,
            Some(cur) => cur.intersect(&piece)?,
        };
        if next.dim() == x.dim() {
            return Ok(None);
        }
        acc = Some(next);
    }
    let cl = acc.expect("n >= 2 constraints");
    Ok(if cl == *x { None } else { Some(cl) })
}

enum Outcome {
    Closed,
    CertSkipped,
    NonClosed { dim_closure: usize },
}

fn check_instance(ctx: &SpaceContext, x: &Subspace, certified_only: bool) -> Result<Outcome> {
    let star = star_v(ctx, x)?;
    if certified_only && bounds::sufficient_closed_precise(ctx, x.dim(), star.dim()) {
        return Ok(Outcome::CertSkipped);
    }
    match closed_or_closure(ctx, x, &star)? {
        None => Ok(Outcome::Closed),
        Some(cl) => Ok(Outcome::NonClosed {
            dim_closure: cl.dim(),
        }),
    }
}

/// One unit of parallel work.
enum WorkItem {
    Cell(PivotPattern),
    Chunk { start: u64, end: u64 },
}

impl WorkItem {
    fn key(&self) -> String {
        match self {
            WorkItem::Cell(p) => p.key(),
            WorkItem::Chunk { start, end } => format!("chunk {start} {end}"),
        }
    }

    fn size(&self, dim: usize, p: u64) -> u128 {
        match self {
            WorkItem::Cell(pat) => pat.cell_size(dim, p),
            WorkItem::Chunk { start, end } => (end - start) as u128,
        }
    }
}

const CHUNK: u64 = 1024;

/// Scan Gr(k, V): check every instance (or `count` sampled ones), record
/// each non-closed subspace, and return records sorted by canonical basis.
/// The result is a pure function of (mode, seed); worker count only affects
/// wall time.
pub fn scan(ctx: &SpaceContext, cfg: &ScanConfig) -> Result<(Vec<SearchRecord>, ScanSummary)> {
    if cfg.k > ctx.dim_v() {
        return Err(Error::Precondition(format!(
            "dim {} exceeds dim V = {}",
            cfg.k,
            ctx.dim_v()
        )));
    }
    let workers = cfg.workers.max(1);

    // assemble work items, skipping ones already checkpointed as done
    let done: HashSet<String> = match &cfg.checkpoint {
        Some(path) if path.exists() => {
            let f = std::fs::File::open(path)?;
            BufReader::new(f)
                .lines()
                .map_while(|l| l.ok())
                .filter_map(|l| l.strip_suffix(" done").map(str::to_string))
                .collect()
        }
        _ => HashSet::new(),
    };

    let mut items: Vec<WorkItem> = match cfg.mode {
        ScanMode::Exhaustive => enumerate_cells(ctx.dim_v(), cfg.k)
            .into_iter()
            .map(WorkItem::Cell)
            .collect(),
        ScanMode::Random(count) => {
            let mut chunks = Vec::new();
            let mut start = 0;
            while start < count {
                let end = (start + CHUNK).min(count);
                chunks.push(WorkItem::Chunk { start, end });
                start = end;
            }
            chunks
        }
    };
    items.retain(|it| !done.contains(&it.key()));

    // apply the instance cap by dropping whole trailing items
    let mut truncated = false;
    if let Some(max) = cfg.max_instances {
        let mut budget = max as u128;
        let mut keep = 0;
        for it in &items {
            let sz = it.size(ctx.dim_v(), ctx.p());
            if sz > budget {
                truncated = true;
                break;
            }
            budget -= sz;
            keep += 1;
        }
        items.truncate(keep);
    }

    // dimension-only certificate: every subspace of this dimension is closed
    let dim_cert = cfg.certified_only && bounds::sufficient_closed(ctx, cfg.k);

    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(Vec<SearchRecord>, ScanSummary)>> = Mutex::new(Vec::new());
    let checkpoint_out: Option<Mutex<std::fs::File>> = match &cfg.checkpoint {
        Some(path) => Some(Mutex::new(
            std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)?,
        )),
        None => None,
    };
    let worker_error: Mutex<Option<Error>> = Mutex::new(None);

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                loop {
                    let idx = next.fetch_add(1, Ordering::Relaxed);
                    if idx >= items.len() {
                        return;
                    }
                    let item = &items[idx];
                    match run_item(ctx, cfg, item, dim_cert) {
                        Ok(res) => {
                            if let Some(out) = &checkpoint_out {
                                let mut f = out.lock().unwrap();
                                let _ = writeln!(f, "{} done", item.key());
                            }
                            results.lock().unwrap().push(res);
                        }
                        Err(e) => {
                            *worker_error.lock().unwrap() = Some(e);
                            return;
                        }
                    }
                }
            });
        }
    });

    if let Some(e) = worker_error.into_inner().unwrap() {
        return Err(e);
    }

    let mut records = Vec::new();
    let mut summary = ScanSummary {
        truncated,
        ..Default::default()
    };
    for (recs, s) in results.into_inner().unwrap() {
        records.extend(recs);
        summary.checked += s.checked;
        summary.certificate_skipped += s.certificate_skipped;
        summary.non_closed += s.non_closed;
    }
    records.sort_by(|a, b| {
        a.subspace
            .basis()
            .row_vecs()
            .cmp(&b.subspace.basis().row_vecs())
    });
    Ok((records, summary))
}

fn run_item(
    ctx: &SpaceContext,
    cfg: &ScanConfig,
    item: &WorkItem,
    dim_cert: bool,
) -> Result<(Vec<SearchRecord>, ScanSummary)> {
    let mut records = Vec::new();
    let mut summary = ScanSummary::default();
    let mut handle = |x: Subspace, source: RecordSource| -> Result<()> {
        summary.checked += 1;
        if dim_cert {
            summary.certificate_skipped += 1;
            return Ok(());
        }
        match check_instance(ctx, &x, cfg.certified_only)? {
            Outcome::Closed => {}
            Outcome::CertSkipped => summary.certificate_skipped += 1,
            Outcome::NonClosed { dim_closure } => {
                summary.non_closed += 1;
                records.push(SearchRecord {
                    epicenter_dim: dim_closure - x.dim(),
                    dim_closure,
                    subspace: x,
                    source,
                });
            }
        }
        Ok(())
    };

    match item {
        WorkItem::Cell(pattern) => {
            let source_cols = pattern.cols.clone();
            for x in CellSubspaces::new(pattern.clone(), ctx.dim_v(), ctx.modulus()) {
                handle(x, RecordSource::Cell(source_cols.clone()))?;
            }
        }
        WorkItem::Chunk { start, end } => {
            for index in *start..*end {
                let mut rng = sample_rng(cfg.seed, index);
                let x = sample_subspace(ctx, cfg.k, &mut rng);
                handle(
                    x,
                    RecordSource::Sample {
                        seed: cfg.seed,
                        index,
                    },
                )?;
            }
        }
    }
    Ok((records, summary))
}

/// GL-invariant data of X used to bucket search hits: dimensions of X, X*,
/// X**, Z, plus the histogram of dim(X ∩ ψ_u(U)) over projective u.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitFingerprint {
    pub dim_x: usize,
    pub dim_x_star: usize,
    pub dim_closure: usize,
    pub dim_z: usize,
    /// (intersection dimension, multiplicity), ascending.
    pub psi_histogram: Vec<(usize, usize)>,
}

pub fn orbit_fingerprint(ctx: &SpaceContext, x: &Subspace) -> Result<OrbitFingerprint> {
    let star = star_v(ctx, x)?;
    let cl = star_w(ctx, &star)?;
    let z = z_subspace(ctx, x)?;
    let mut counts = std::collections::BTreeMap::new();
    for u in ctx.projective_points() {
        let d = x.intersect(&ctx.psi_image(&u)?)?.dim();
        *counts.entry(d).or_insert(0usize) += 1;
    }
    Ok(OrbitFingerprint {
        dim_x: x.dim(),
        dim_x_star: star.dim(),
        dim_closure: cl.dim(),
        dim_z: z.dim(),
        psi_histogram: counts.into_iter().collect(),
    })
}

/// Gaussian binomial [dim choose k]_p as u128: the number of k-dimensional
/// subspaces of F_p^dim.
pub fn gaussian_binomial(dim: usize, k: usize, p: u64) -> u128 {
    if k > dim {
        return 0;
    }
    let p = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= p.pow((dim - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}
