use epicontrol::network::{Agent, ContactEdge, ContactNetwork, Layer};
use epicontrol::rng;
use epicontrol::selection::{select_degree, select_random, SelectionContext};
use epicontrol::AgentId;

fn network(n: u32, pairs: &[(u32, u32)]) -> ContactNetwork {
    let agents = (0..n).map(|id| Agent { id, age: 40 }).collect();
    let edges = pairs
        .iter()
        .flat_map(|&(a, b)| {
            [(a, b), (b, a)].map(|(src, dst)| ContactEdge { src, dst, layer: Layer::Community, weight: 0.1 })
        })
        .collect();
    ContactNetwork::from_edges(agents, edges).unwrap()
}

#[test]
fn random_selection_is_uniform() {
    let net = network(1000, &[]);
    let ctx = SelectionContext::new(&net, vec![], (0..1000).collect(), 5).unwrap();
    let mut counts = vec![0u32; 1000];
    let mut rng = rng::stream(99, &[]);
    for _ in 0..10_000 {
        let s = select_random(&ctx, &mut rng).seeds;
        assert_eq!(s.len(), 5);
        for v in s {
            counts[v as usize] += 1;
        }
    }
    for (v, &c) in counts.iter().enumerate() {
        let f = c as f64 / 10_000.0;
        assert!((f - 0.005).abs() <= 0.003, "agent {v} chosen with frequency {f}");
    }
}

#[test]
fn degree_rounds_take_the_next_batch() {
    // Ten hubs with 12 private leaves each, then ten secondary hubs with 6.
    let mut pairs = Vec::new();
    let mut next = 20u32;
    for hub in 0..20u32 {
        let leaves = if hub < 10 { 12 } else { 6 };
        for _ in 0..leaves {
            pairs.push((hub, next));
            next += 1;
        }
    }
    let mut net = network(next, &pairs);
    let all: Vec<AgentId> = (0..next).collect();
    let ctx = SelectionContext::new(&net, vec![], all.clone(), 10).unwrap();
    let first = select_degree(&ctx).seeds;
    assert_eq!(first, (0..10).collect::<Vec<_>>());

    net.remove_nodes(first.iter().copied()).unwrap();
    let rest: Vec<AgentId> = all.into_iter().filter(|v| !first.contains(v)).collect();
    let ctx = SelectionContext::new(&net, vec![], rest, 10).unwrap();
    assert_eq!(select_degree(&ctx).seeds, (10..20).collect::<Vec<_>>());
}
