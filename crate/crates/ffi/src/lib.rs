//! C ABI over the `epicontrol` core.
//!
//! Every fallible function returns an [`EcStatus`] code; on failure the
//! message is available from [`ec_last_error`] on the same thread. Handles
//! are opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use epicontrol::config::ConfigFile;
use epicontrol::metrics::FinalValues;
use epicontrol::network::{edge_weight, generate_synthetic_population, ContactNetwork, Layer, PopulationConfig};
use epicontrol::sampler::{self, Retention, SampleSet, SamplingView};
use epicontrol::selection::{lives_saved, select_preempt_on_samples};
use epicontrol::workflow::run_experiment;
use epicontrol::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidConfig = 3,
    Parse = 4,
    Io = 5,
    BufferTooSmall = 6,
    Runtime = 7,
    Panic = 8,
}

/// Opaque contact network handle.
pub struct EcNetwork(ContactNetwork);

/// Opaque live-edge sample set handle.
pub struct EcSampleSet(SampleSet);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> EcStatus {
    match e {
        Error::InvalidConfig { .. } => EcStatus::InvalidConfig,
        Error::InvalidArgument(_) | Error::CombinationCap { .. } => EcStatus::InvalidArgument,
        Error::Parse { .. } => EcStatus::Parse,
        Error::Io { .. } => EcStatus::Io,
        Error::OutOfOrder { .. } => EcStatus::Runtime,
    }
}

struct Fail(EcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(EcStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> EcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            EcStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            EcStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(EcStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn ec_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// `min(1, beta * rel_trans * rel_sus * freq)`; rejects negative or NaN inputs.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_edge_weight(beta: f64, rel_trans: f64, rel_sus: f64, freq: f64, out: *mut f64) -> EcStatus {
    guard(|| {
        *out_arg(out, "out")? = edge_weight(beta, rel_trans, rel_sus, freq)?;
        Ok(())
    })
}

/// Generates a synthetic population of `n` agents with default parameters.
///
/// # Safety
/// `out` must be a valid pointer; the returned handle is owned by the caller.
#[no_mangle]
pub unsafe extern "C" fn ec_network_generate(n: usize, seed: u64, out: *mut *mut EcNetwork) -> EcStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let cfg = PopulationConfig { n, ..Default::default() };
        cfg.validate()?;
        *out = Box::into_raw(Box::new(EcNetwork(generate_synthetic_population(&cfg, seed)?)));
        Ok(())
    })
}

/// Generates a population from `population.*` keys in config text.
///
/// # Safety
/// `config_text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_network_generate_from_config(
    config_text: *const c_char,
    seed: u64,
    out: *mut *mut EcNetwork,
) -> EcStatus {
    guard(|| {
        let text = str_arg(config_text, "config_text")?;
        let out = out_arg(out, "out")?;
        let cfg = ConfigFile::parse(text, "<config>")?;
        let pop = &cfg.experiment.population;
        pop.validate()?;
        *out = Box::into_raw(Box::new(EcNetwork(generate_synthetic_population(pop, seed)?)));
        Ok(())
    })
}

/// Loads an edge-list file (ages from `<path>.ages` when present).
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_network_load(path: *const c_char, out: *mut *mut EcNetwork) -> EcStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let out = out_arg(out, "out")?;
        *out = Box::into_raw(Box::new(EcNetwork(ContactNetwork::load(Path::new(path))?)));
        Ok(())
    })
}

/// # Safety
/// `net` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ec_network_save(net: *const EcNetwork, path: *const c_char) -> EcStatus {
    guard(|| {
        let net = net.as_ref().ok_or_else(|| null("net"))?;
        net.0.save(Path::new(str_arg(path, "path")?))?;
        Ok(())
    })
}

/// Releases a network; null is ignored.
///
/// # Safety
/// `net` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ec_network_free(net: *mut EcNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Number of agents, or 0 for a null handle.
///
/// # Safety
/// `net` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ec_network_num_agents(net: *const EcNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.0.len())
}

/// Number of directed edges between agents that are not removed.
///
/// # Safety
/// `net` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ec_network_num_active_edges(net: *const EcNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.0.num_active_edges())
}

/// Directed edges in one layer (0 household, 1 school, 2 work, 3 community),
/// counting removed agents too.
///
/// # Safety
/// `net` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ec_network_layer_edges(net: *const EcNetwork, layer: u32) -> usize {
    let Some(net) = net.as_ref() else { return 0 };
    Layer::ALL
        .get(layer as usize)
        .map_or(0, |l| net.0.layer_stats()[l.index()].directed_edges)
}

/// # Safety
/// `net` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ec_network_removed_count(net: *const EcNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.0.removed_count())
}

/// Removes agents from the network; idempotent.
///
/// # Safety
/// `net` must be a live handle and `ids` must point to `len` ids.
#[no_mangle]
pub unsafe extern "C" fn ec_network_remove_nodes(net: *mut EcNetwork, ids: *const u32, len: usize) -> EcStatus {
    guard(|| {
        let net = net.as_mut().ok_or_else(|| null("net"))?;
        let ids = slice_arg(ids, len, "ids")?;
        net.0.remove_nodes(ids.iter().copied())?;
        Ok(())
    })
}

/// Dense in-degree histogram: `counts[d]` agents have in-degree `d`.
/// `*len` receives the required length; with a short buffer nothing is
/// written and `BufferTooSmall` is returned.
///
/// # Safety
/// `net` must be a live handle, `counts` must hold `cap` entries and `len`
/// must be valid.
#[no_mangle]
pub unsafe extern "C" fn ec_network_degree_histogram(
    net: *const EcNetwork,
    counts: *mut usize,
    cap: usize,
    len: *mut usize,
) -> EcStatus {
    guard(|| {
        let net = net.as_ref().ok_or_else(|| null("net"))?;
        let len = out_arg(len, "len")?;
        let hist = net.0.degree_distribution();
        let need = hist.keys().next_back().map_or(0, |&d| d as usize + 1);
        *len = need;
        if cap < need {
            return Err(Fail(EcStatus::BufferTooSmall, format!("histogram needs {need} entries")));
        }
        if need > 0 {
            let out = std::slice::from_raw_parts_mut(counts, need);
            out.fill(0);
            for (d, c) in hist {
                out[d as usize] = c;
            }
        }
        Ok(())
    })
}

/// Draws `n_samples` full live-edge samples. `infectious_mean_days <= 0`
/// keeps each edge with probability `w`; otherwise with the probability of
/// at least one transmission over a geometric infectious period.
///
/// # Safety
/// `net` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_samples_build(
    net: *const EcNetwork,
    n_samples: usize,
    seed: u64,
    infectious_mean_days: f64,
    out: *mut *mut EcSampleSet,
) -> EcStatus {
    guard(|| {
        let net = net.as_ref().ok_or_else(|| null("net"))?;
        let out = out_arg(out, "out")?;
        let retention = if infectious_mean_days > 0.0 {
            Retention::InfectiousPeriod {
                mean_days: infectious_mean_days,
            }
        } else {
            Retention::PerContact
        };
        let view = SamplingView::new(&net.0).with_retention(retention);
        let set = sampler::build_sample_set(view, n_samples, seed)?;
        *out = Box::into_raw(Box::new(EcSampleSet(set)));
        Ok(())
    })
}

/// # Safety
/// `set` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ec_samples_free(set: *mut EcSampleSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ec_samples_len(set: *const EcSampleSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// Mean number of agents reachable from `infected` with `deleted` removed.
///
/// # Safety
/// Arrays must hold the given number of ids; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ec_sigma_estimate(
    set: *const EcSampleSet,
    infected: *const u32,
    infected_len: usize,
    deleted: *const u32,
    deleted_len: usize,
    out: *mut f64,
) -> EcStatus {
    guard(|| {
        let set = set.as_ref().ok_or_else(|| null("set"))?;
        let b = slice_arg(infected, infected_len, "infected")?;
        let s = slice_arg(deleted, deleted_len, "deleted")?;
        *out_arg(out, "out")? = sampler::sigma_estimate(&set.0, b, s)?;
        Ok(())
    })
}

/// Mean lives saved by vaccinating `seeds` against `infected`.
///
/// # Safety
/// Arrays must hold the given number of ids; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ec_lives_saved(
    set: *const EcSampleSet,
    infected: *const u32,
    infected_len: usize,
    seeds: *const u32,
    seeds_len: usize,
    out: *mut f64,
) -> EcStatus {
    guard(|| {
        let set = set.as_ref().ok_or_else(|| null("set"))?;
        let b = slice_arg(infected, infected_len, "infected")?;
        let s = slice_arg(seeds, seeds_len, "seeds")?;
        *out_arg(out, "out")? = lives_saved(&set.0, b, s)?;
        Ok(())
    })
}

/// Greedy lives-saved selection of up to `k` candidates. Writes the chosen
/// ids in pick order to `out_seeds` (capacity `k`), their number to
/// `out_len` and the estimated lives saved to `out_objective`.
///
/// # Safety
/// Arrays must hold the given number of entries; out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ec_select_preempt(
    set: *const EcSampleSet,
    infected: *const u32,
    infected_len: usize,
    candidates: *const u32,
    candidates_len: usize,
    k: usize,
    out_seeds: *mut u32,
    out_len: *mut usize,
    out_objective: *mut f64,
) -> EcStatus {
    guard(|| {
        let set = set.as_ref().ok_or_else(|| null("set"))?;
        let b = slice_arg(infected, infected_len, "infected")?;
        let c = slice_arg(candidates, candidates_len, "candidates")?;
        let len = out_arg(out_len, "out_len")?;
        let obj = out_arg(out_objective, "out_objective")?;
        let chosen = select_preempt_on_samples(&set.0, b, c, k)?;
        if !chosen.seeds.is_empty() {
            if out_seeds.is_null() {
                return Err(null("out_seeds"));
            }
            std::slice::from_raw_parts_mut(out_seeds, chosen.seeds.len()).copy_from_slice(&chosen.seeds);
        }
        *len = chosen.seeds.len();
        *obj = chosen.objective.unwrap_or(0.0);
        Ok(())
    })
}

/// Runs the experiment described by config text and reports the replicate
/// means of final cumulative infections and deaths.
///
/// # Safety
/// `config_text` must be a NUL-terminated string; out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ec_run_experiment(
    config_text: *const c_char,
    out_mean_infections: *mut f64,
    out_mean_deaths: *mut f64,
) -> EcStatus {
    guard(|| {
        let text = str_arg(config_text, "config_text")?;
        let inf = out_arg(out_mean_infections, "out_mean_infections")?;
        let dead = out_arg(out_mean_deaths, "out_mean_deaths")?;
        let mut cfg = ConfigFile::parse(text, "<config>")?;
        cfg.finish()?;
        let res = run_experiment(&cfg.experiment)?;
        let f = FinalValues::from_series(&res.label, &res.series);
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len().max(1) as f64;
        *inf = mean(&f.infections);
        *dead = mean(&f.deaths);
        Ok(())
    })
}
