//! C ABI over `hopcut`. Graphs and augmentation sets cross the boundary as
//! opaque handles; every fallible call returns an [`HcStatus`] and leaves a
//! message retrievable with [`hc_last_error_message`] on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use hopcut::graph::io::read_edge_list;
use hopcut::hopset::{cfr_build, CfrOptions, HopsetParams};
use hopcut::params::Preset;
use hopcut::pipeline::{reach_with, sssp, SsspOptions};
use hopcut::search::UNREACHED;
use hopcut::shortcut::{build_shortcut, BuildParams};
use hopcut::verify::{verify_hopset_with, verify_shortcut_with, VerifyConfig, VerifyReport, DEFAULT_ORACLE_CAP};
use hopcut::{AugmentSet, DiGraph, Eps, Error, Vertex, WDiGraph};

/// Distance reported for vertices the source cannot reach.
pub const HC_UNREACHED: u64 = 0xFFFF_FFFF_FFFF_FFFF;
const _: () = assert!(HC_UNREACHED == UNREACHED);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    Io = 3,
    Parse = 4,
    Cyclic = 5,
    OracleCap = 6,
    WeightBound = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HcPreset {
    Desk = 0,
    Paper = 1,
}

impl From<HcPreset> for Preset {
    fn from(p: HcPreset) -> Self {
        match p {
            HcPreset::Desk => Preset::Desk,
            HcPreset::Paper => Preset::Paper,
        }
    }
}

/// Oracle verdicts. Checks that do not apply to the augmentation kind
/// (distances for a shortcut set) are reported as `true`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct HcVerifyResult {
    pub ok: bool,
    pub edges_valid: bool,
    pub reach_preserved: bool,
    pub dist_preserved: bool,
    pub approx_holds: bool,
    pub beta_meas: u32,
    pub size_h: usize,
}

impl From<&VerifyReport> for HcVerifyResult {
    fn from(r: &VerifyReport) -> Self {
        HcVerifyResult {
            ok: r.ok(),
            edges_valid: r.edges_valid,
            reach_preserved: r.reach_preserved,
            dist_preserved: r.dist_preserved.unwrap_or(true),
            approx_holds: r.approx_holds.unwrap_or(true),
            beta_meas: r.beta_meas,
            size_h: r.size_h,
        }
    }
}

enum Inner {
    Plain(DiGraph),
    Weighted(WDiGraph),
}

/// A directed graph, weighted or not.
pub struct HcGraph {
    inner: Inner,
}

impl HcGraph {
    fn skeleton(&self) -> DiGraph {
        match &self.inner {
            Inner::Plain(g) => g.clone(),
            Inner::Weighted(g) => g.skeleton(),
        }
    }

    fn weighted(&self) -> WDiGraph {
        match &self.inner {
            Inner::Plain(g) => WDiGraph::unit(g),
            Inner::Weighted(g) => g.clone(),
        }
    }

    fn n(&self) -> usize {
        match &self.inner {
            Inner::Plain(g) => g.n(),
            Inner::Weighted(g) => g.n(),
        }
    }
}

/// A shortcut set or hopset: a list of added edges.
pub struct HcAugment {
    set: AugmentSet,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &Error) -> HcStatus {
    match e {
        Error::Io(_) => HcStatus::Io,
        Error::Parse { .. } => HcStatus::Parse,
        Error::Cyclic => HcStatus::Cyclic,
        Error::OracleCap { .. } => HcStatus::OracleCap,
        Error::WeightBound { .. } => HcStatus::WeightBound,
        _ => HcStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status code.
fn guarded(f: impl FnOnce() -> Result<(), (HcStatus, String)>) -> HcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            HcStatus::Panic
        }
    }
}

fn lib<T>(r: hopcut::Result<T>) -> Result<T, (HcStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (HcStatus, String) {
    (HcStatus::NullPointer, format!("{what} is null"))
}

fn bad(msg: impl Into<String>) -> (HcStatus, String) {
    (HcStatus::InvalidArgument, msg.into())
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (HcStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], (HcStatus, String)> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn slice_mut<'a, T>(p: *mut T, len: usize, what: &str) -> Result<&'a mut [T], (HcStatus, String)> {
    if len == 0 {
        Ok(&mut [])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts_mut(p, len))
    }
}

fn eps_of(num: u64, den: u64) -> Result<Eps, (HcStatus, String)> {
    lib(Eps::new(num, den))
}

/// Copies the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to fit) and returns the full message length in bytes, excluding
/// the terminator. Pass a null `buf` to query the length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn hc_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let k = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, k);
            *buf.add(k) = 0;
        }
        msg.len()
    })
}

/// Builds a graph from parallel arrays `src[i] → dst[i]`. With a null
/// `weights` the graph is unweighted. Parallel edges collapse (keeping the
/// lightest), self-loops are dropped.
///
/// # Safety
/// `src`, `dst` and (if non-null) `weights` must point to `m` elements; `out`
/// must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_from_edges(
    n: usize,
    src: *const u32,
    dst: *const u32,
    weights: *const u64,
    m: usize,
    out: *mut *mut HcGraph,
) -> HcStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let (s, d) = (slice(src, m, "src")?, slice(dst, m, "dst")?);
        let pairs = s.iter().zip(d).map(|(&u, &v)| (u as usize, v as usize));
        let inner = if weights.is_null() {
            Inner::Plain(lib(DiGraph::from_edges(n, pairs))?)
        } else {
            let w = slice(weights, m, "weights")?;
            let triples = pairs.zip(w).map(|((u, v), &w)| (u, v, w));
            Inner::Weighted(lib(WDiGraph::from_unsigned_edges(n, triples))?)
        };
        *out = Box::into_raw(Box::new(HcGraph { inner }));
        Ok(())
    })
}

/// Reads an edge-list file; weighted if its header carries the `weighted` flag.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_read(path: *const c_char, out: *mut *mut HcGraph) -> HcStatus {
    guarded(|| {
        if path.is_null() || out.is_null() {
            return Err(null("path or out"));
        }
        let p = CStr::from_ptr(path).to_str().map_err(|_| bad("path is not UTF-8"))?;
        let list = lib(read_edge_list(Path::new(p)))?;
        if list.augment {
            return Err(bad("file holds an augmentation set, not a graph"));
        }
        let inner = if list.weighted {
            Inner::Weighted(lib(list.to_wdigraph())?)
        } else {
            Inner::Plain(lib(list.to_digraph())?)
        };
        *out = Box::into_raw(Box::new(HcGraph { inner }));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_free(g: *mut HcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_vertex_count(g: *const HcGraph) -> usize {
    g.as_ref().map_or(0, HcGraph::n)
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_edge_count(g: *const HcGraph) -> usize {
    g.as_ref().map_or(0, |g| match &g.inner {
        Inner::Plain(g) => g.m(),
        Inner::Weighted(g) => g.m(),
    })
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_is_weighted(g: *const HcGraph) -> bool {
    g.as_ref().is_some_and(|g| matches!(g.inner, Inner::Weighted(_)))
}

/// Shortcut set for the graph's reachability (weights are ignored).
///
/// # Safety
/// `g` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_build_shortcut(
    g: *const HcGraph,
    preset: HcPreset,
    seed: u64,
    tc_prune: bool,
    out: *mut *mut HcAugment,
) -> HcStatus {
    guarded(|| {
        let g = deref(g, "graph")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let dg = g.skeleton();
        let p = BuildParams::new(preset.into(), dg.n(), dg.m(), seed);
        let built = lib(build_shortcut(&dg, &p, tc_prune))?;
        *out = Box::into_raw(Box::new(HcAugment { set: built.h }));
        Ok(())
    })
}

/// `(β, ε)`-hopset with `ε = eps_num / eps_den`. Unweighted graphs are
/// treated as unit-weight.
///
/// # Safety
/// `g` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_build_hopset(
    g: *const HcGraph,
    preset: HcPreset,
    eps_num: u64,
    eps_den: u64,
    seed: u64,
    trunc_prune: bool,
    out: *mut *mut HcAugment,
) -> HcStatus {
    guarded(|| {
        let g = deref(g, "graph")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let eps = eps_of(eps_num, eps_den)?;
        let wg = g.weighted();
        let p = HopsetParams::new(preset.into(), wg.n(), wg.m(), eps, seed);
        let built = lib(cfr_build(&wg, &p, &CfrOptions { trunc_prune, ..Default::default() }))?;
        *out = Box::into_raw(Box::new(HcAugment { set: built.h }));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_augment_free(h: *mut HcAugment) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_augment_len(h: *const HcAugment) -> usize {
    h.as_ref().map_or(0, |h| h.set.len())
}

/// Edge `i` in ascending `(u, v)` order. `w` receives the weight, or 1 for a
/// shortcut set; it may be null.
///
/// # Safety
/// `h` must be a live handle; `u` and `v` valid pointers; `w` null or valid.
#[no_mangle]
pub unsafe extern "C" fn hc_augment_edge(h: *const HcAugment, i: usize, u: *mut u32, v: *mut u32, w: *mut u64) -> HcStatus {
    guarded(|| {
        let h = deref(h, "augment")?;
        if u.is_null() || v.is_null() {
            return Err(null("u or v"));
        }
        let &(a, b) = h.set.edges().get(i).ok_or_else(|| bad(format!("edge index {i} out of range")))?;
        *u = a;
        *v = b;
        if !w.is_null() {
            *w = h.set.weight_of(a, b).unwrap_or(1);
        }
        Ok(())
    })
}

/// Marks `mask[t] = 1` for every vertex reachable from `s` in `g ∪ h` (`h`
/// may be null) and 0 otherwise. `count` receives the number reached and may
/// be null.
///
/// # Safety
/// `g` live; `h` null or live; `mask` points to `mask_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn hc_reach(
    g: *const HcGraph,
    h: *const HcAugment,
    s: u32,
    mask: *mut u8,
    mask_len: usize,
    count: *mut usize,
) -> HcStatus {
    guarded(|| {
        let g = deref(g, "graph")?;
        let dg = g.skeleton();
        if mask_len != dg.n() {
            return Err(bad(format!("mask has {mask_len} entries, graph has {}", dg.n())));
        }
        let mask = slice_mut(mask, mask_len, "mask")?;
        let empty = AugmentSet::empty(dg.n());
        let aug = h.as_ref().map_or(&empty, |h| &h.set);
        let r = lib(reach_with(&dg, s as Vertex, aug))?;
        mask.fill(0);
        for &t in &r.reachable {
            mask[t as usize] = 1;
        }
        if !count.is_null() {
            *count = r.reachable.len();
        }
        Ok(())
    })
}

/// Approximate distances from `s`, each within `(1 + ε)` of the truth;
/// [`HC_UNREACHED`] for unreachable vertices.
///
/// # Safety
/// `g` live; `dist` points to `dist_len` elements.
#[no_mangle]
pub unsafe extern "C" fn hc_sssp(
    g: *const HcGraph,
    s: u32,
    preset: HcPreset,
    eps_num: u64,
    eps_den: u64,
    seed: u64,
    dist: *mut u64,
    dist_len: usize,
) -> HcStatus {
    guarded(|| {
        let g = deref(g, "graph")?;
        let wg = g.weighted();
        if dist_len != wg.n() {
            return Err(bad(format!("dist has {dist_len} entries, graph has {}", wg.n())));
        }
        let dist = slice_mut(dist, dist_len, "dist")?;
        let eps = eps_of(eps_num, eps_den)?;
        let p = HopsetParams::new(preset.into(), wg.n(), wg.m(), eps, seed);
        let opts = SsspOptions { eps, hopbound: None, trunc_prune: true, oracle_cap: DEFAULT_ORACLE_CAP };
        let out = lib(sssp(&wg, s as Vertex, &p, &opts))?;
        dist.copy_from_slice(&out.dist);
        Ok(())
    })
}

/// Exact oracle check of a shortcut set. Refuses graphs over the default
/// oracle cap with [`HcStatus::OracleCap`].
///
/// # Safety
/// `g`, `h` live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hc_verify_shortcut(g: *const HcGraph, h: *const HcAugment, out: *mut HcVerifyResult) -> HcStatus {
    guarded(|| {
        let (g, h) = (deref(g, "graph")?, deref(h, "augment")?);
        if out.is_null() {
            return Err(null("out"));
        }
        let r = lib(verify_shortcut_with(&g.skeleton(), &h.set, &VerifyConfig::default()))?;
        *out = (&r).into();
        Ok(())
    })
}

/// Exact oracle check of a hopset at `ε = eps_num / eps_den`.
///
/// # Safety
/// `g`, `h` live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hc_verify_hopset(
    g: *const HcGraph,
    h: *const HcAugment,
    eps_num: u64,
    eps_den: u64,
    out: *mut HcVerifyResult,
) -> HcStatus {
    guarded(|| {
        let (g, h) = (deref(g, "graph")?, deref(h, "augment")?);
        if out.is_null() {
            return Err(null("out"));
        }
        let eps = eps_of(eps_num, eps_den)?;
        let r = lib(verify_hopset_with(&g.weighted(), &h.set, eps, &VerifyConfig::default()))?;
        *out = (&r).into();
        Ok(())
    })
}
