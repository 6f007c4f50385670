use std::ffi::{CStr, CString};
use std::ptr;

use epicontrol_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(ec_last_error()) }.to_string_lossy().into_owned()
}

fn generate(n: usize, seed: u64) -> *mut EcNetwork {
    let mut net = ptr::null_mut();
    assert_eq!(unsafe { ec_network_generate(n, seed, &mut net) }, EcStatus::Ok);
    assert!(!net.is_null());
    net
}

#[test]
fn edge_weight_and_errors() {
    let mut w = 0.0;
    assert_eq!(unsafe { ec_edge_weight(0.5, 1.0, 1.0, 1.0, &mut w) }, EcStatus::Ok);
    assert_eq!(w, 0.5);
    assert_eq!(unsafe { ec_edge_weight(0.9, 2.0, 1.0, 1.0, &mut w) }, EcStatus::Ok);
    assert_eq!(w, 1.0);
    assert_eq!(unsafe { ec_edge_weight(-0.1, 1.0, 1.0, 1.0, &mut w) }, EcStatus::InvalidArgument);
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { ec_edge_weight(0.1, 1.0, 1.0, 1.0, ptr::null_mut()) }, EcStatus::NullPointer);
}

#[test]
fn network_lifecycle() {
    let net = generate(300, 4);
    unsafe {
        assert_eq!(ec_network_num_agents(net), 300);
        let edges = ec_network_num_active_edges(net);
        let by_layer: usize = (0..4).map(|l| ec_network_layer_edges(net, l)).sum();
        assert_eq!(edges, by_layer);

        let mut len = 0;
        assert_eq!(ec_network_degree_histogram(net, ptr::null_mut(), 0, &mut len), EcStatus::BufferTooSmall);
        let mut counts = vec![0usize; len];
        assert_eq!(ec_network_degree_histogram(net, counts.as_mut_ptr(), len, &mut len), EcStatus::Ok);
        assert_eq!(counts.iter().sum::<usize>(), 300);

        let ids = [0u32, 1, 2];
        assert_eq!(ec_network_remove_nodes(net, ids.as_ptr(), 3), EcStatus::Ok);
        assert_eq!(ec_network_remove_nodes(net, ids.as_ptr(), 3), EcStatus::Ok);
        assert_eq!(ec_network_removed_count(net), 3);
        let bad = [300u32];
        assert_eq!(ec_network_remove_nodes(net, bad.as_ptr(), 1), EcStatus::InvalidArgument);
        ec_network_free(net);
        ec_network_free(ptr::null_mut());
    }
}

#[test]
fn invalid_population_is_rejected() {
    let mut net = ptr::null_mut();
    assert_eq!(unsafe { ec_network_generate(0, 1, &mut net) }, EcStatus::InvalidConfig);
    assert!(last_error().contains("population.n"));
    let cfg = CString::new("population.n = 50\npopulation.bogus = 1").unwrap();
    assert_eq!(unsafe { ec_network_generate_from_config(cfg.as_ptr(), 1, &mut net) }, EcStatus::InvalidConfig);
    assert!(last_error().contains("population.bogus"));
}

#[test]
fn save_and_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = CString::new(dir.path().join("net.txt").to_str().unwrap()).unwrap();
    let net = generate(120, 9);
    let mut back = ptr::null_mut();
    unsafe {
        assert_eq!(ec_network_save(net, path.as_ptr()), EcStatus::Ok);
        assert_eq!(ec_network_load(path.as_ptr(), &mut back), EcStatus::Ok);
        assert_eq!(ec_network_num_agents(back), 120);
        assert_eq!(ec_network_num_active_edges(back), ec_network_num_active_edges(net));
        let missing = CString::new(dir.path().join("nope.txt").to_str().unwrap()).unwrap();
        let mut none = ptr::null_mut();
        assert_eq!(ec_network_load(missing.as_ptr(), &mut none), EcStatus::Io);
        ec_network_free(net);
        ec_network_free(back);
    }
}

#[test]
fn sampling_and_selection() {
    let net = generate(400, 2);
    let mut set = ptr::null_mut();
    unsafe {
        assert_eq!(ec_samples_build(net, 0, 1, 7.0, &mut set), EcStatus::InvalidArgument);
        assert_eq!(ec_samples_build(net, 16, 1, 7.0, &mut set), EcStatus::Ok);
        assert_eq!(ec_samples_len(set), 16);

        let infected = [0u32, 50, 100];
        let mut sigma = 0.0;
        assert_eq!(ec_sigma_estimate(set, infected.as_ptr(), 3, ptr::null(), 0, &mut sigma), EcStatus::Ok);
        assert!(sigma >= 3.0);

        let candidates: Vec<u32> = (0..400).filter(|v| !infected.contains(v)).collect();
        let mut seeds = [0u32; 10];
        let (mut len, mut obj) = (0usize, 0.0);
        let st = ec_select_preempt(
            set,
            infected.as_ptr(),
            3,
            candidates.as_ptr(),
            candidates.len(),
            10,
            seeds.as_mut_ptr(),
            &mut len,
            &mut obj,
        );
        assert_eq!(st, EcStatus::Ok);
        assert_eq!(len, 10);
        let mut saved = 0.0;
        assert_eq!(ec_lives_saved(set, infected.as_ptr(), 3, seeds.as_ptr(), len, &mut saved), EcStatus::Ok);
        assert!((saved - obj).abs() < 1e-9);
        let mut empty = 0.0;
        assert_eq!(ec_lives_saved(set, infected.as_ptr(), 3, ptr::null(), 0, &mut empty), EcStatus::Ok);
        assert_eq!(empty, 0.0);
        ec_samples_free(set);
        ec_network_free(net);
    }
}

#[test]
fn experiment_from_config_text() {
    let text = CString::new(
        "population.n = 200\nexperiment.horizon = 40\nexperiment.replicates = 2\nexperiment.strategy = degree\nschedule = single:20\ndisease.initial_infections = 5\n",
    )
    .unwrap();
    let (mut inf, mut dead) = (0.0, 0.0);
    assert_eq!(unsafe { ec_run_experiment(text.as_ptr(), &mut inf, &mut dead) }, EcStatus::Ok);
    assert!((5.0..=200.0).contains(&inf));
    assert!(dead <= inf);
    let bad = CString::new("experiment.strategy = frobnicate").unwrap();
    assert_eq!(unsafe { ec_run_experiment(bad.as_ptr(), &mut inf, &mut dead) }, EcStatus::InvalidConfig);
    assert!(last_error().contains("strategy"));
}
