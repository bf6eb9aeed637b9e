//! Cross-checks of fixture-level values against independent re-computations:
//! a union-find pass over the raw edge list, a dense eigensolver, and a
//! second, separately written betweenness routine.

use std::collections::HashMap;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use netdisrupt::centrality::{self, Metric};
use netdisrupt::dataset;
use netdisrupt::disruption::{run_disruption, Strategy};
use netdisrupt::graph::{Graph, NodeId, WeightMode};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../data/{name}"))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[test]
fn meetings_lcc_matches_union_find_recomputation() {
    // The oracle works straight off the CSV text, not the Graph type.
    let text = std::fs::read_to_string(fixture("meetings.csv")).unwrap();
    let mut ids: HashMap<u32, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for line in text.lines().skip(1) {
        let mut fields = line.split(',');
        let a: u32 = fields.next().unwrap().parse().unwrap();
        let b: u32 = fields.next().unwrap().parse().unwrap();
        let next = ids.len();
        let ia = *ids.entry(a).or_insert(next);
        let next = ids.len();
        let ib = *ids.entry(b).or_insert(next);
        edges.push((ia, ib));
    }
    let mut uf = UnionFind::new(ids.len());
    for (a, b) in edges {
        uf.union(a, b);
    }
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for i in 0..ids.len() {
        *sizes.entry(uf.find(i)).or_insert(0) += 1;
    }
    let expected = *sizes.values().max().unwrap();

    let g = dataset::load_edge_list(&fixture("meetings.csv")).unwrap();
    assert_eq!(g.lcc_size(), expected);
}

#[test]
fn fixture_weight_histograms() {
    let m = dataset::load_edge_list(&fixture("meetings.csv")).unwrap();
    let hist = dataset::weight_distribution(&m);
    assert_eq!(hist.iter().map(|(_, c)| c).sum::<usize>(), 256);
    assert_eq!(hist.last().unwrap().0, 10.0);

    let p = dataset::load_edge_list(&fixture("phone_calls.csv")).unwrap();
    let hist = dataset::weight_distribution(&p);
    assert_eq!(hist.iter().map(|(_, c)| c).sum::<usize>(), 124);
    assert_eq!(hist.last().unwrap().0, 8.0);
}

#[test]
fn meetings_average_degree() {
    let g = dataset::load_edge_list(&fixture("meetings.csv")).unwrap();
    let mean = g
        .nodes()
        .map(|v| g.degree(v, WeightMode::Unweighted).unwrap())
        .sum::<f64>()
        / g.node_count() as f64;
    assert!((mean - 5.07).abs() <= 0.01, "{mean}");
}

#[test]
fn spectral_bound_matches_dense_eigensolver() {
    let mut rng = ChaCha8Rng::seed_from_u64(9001);
    for case in 0..50 {
        let n = rng.gen_range(2..=8u32);
        let mut g = Graph::new();
        for i in 0..n {
            g.add_node(NodeId(i)).unwrap();
        }
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.5) {
                    g.add_edge(NodeId(i), NodeId(j), rng.gen_range(1..=10) as f64)
                        .unwrap();
                }
            }
        }
        if g.edge_count() == 0 {
            continue;
        }
        for mode in [WeightMode::Unweighted, WeightMode::Weighted] {
            let nodes: Vec<NodeId> = g.nodes().collect();
            let mut m = nalgebra::DMatrix::<f64>::zeros(nodes.len(), nodes.len());
            for (i, j, w) in g.edges() {
                let (a, b) = (
                    nodes.iter().position(|&v| v == i).unwrap(),
                    nodes.iter().position(|&v| v == j).unwrap(),
                );
                let value = match mode {
                    WeightMode::Unweighted => 1.0,
                    WeightMode::Weighted => w,
                };
                m[(a, b)] = value;
                m[(b, a)] = value;
            }
            let expected = nalgebra::SymmetricEigen::new(m)
                .eigenvalues
                .iter()
                .copied()
                .fold(f64::MIN, f64::max);
            let got = centrality::spectral_bound(&g, mode);
            assert!(
                (got - expected).abs() <= 1e-4 * expected.abs().max(1.0),
                "case {case} {mode}: {got} vs {expected}"
            );
        }
    }
}

/// A second betweenness implementation, written independently of the
/// library's: index-vector based, plain Brandes with a FIFO queue and no
/// canonical ordering.
fn betweenness_second_opinion(g: &Graph) -> HashMap<NodeId, f64> {
    let nodes: Vec<NodeId> = g.nodes().collect();
    let index: HashMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adjacency: Vec<Vec<usize>> = nodes
        .iter()
        .map(|&v| g.neighbors(v).map(|(j, _)| index[&j]).collect())
        .collect();
    let n = nodes.len();
    let mut bc = vec![0.0f64; n];
    for s in 0..n {
        let mut stack = Vec::new();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut sigma = vec![0.0f64; n];
        let mut dist = vec![-1i64; n];
        sigma[s] = 1.0;
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &w in &adjacency[v] {
                if dist[w] < 0 {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        let mut delta = vec![0.0f64; n];
        while let Some(w) = stack.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                bc[w] += delta[w];
            }
        }
    }
    nodes
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, bc[i] / 2.0))
        .collect()
}

#[test]
fn meetings_top_betweenness_node_matches_second_opinion() {
    let g = dataset::load_edge_list(&fixture("meetings.csv")).unwrap();
    let scores = centrality::betweenness_centrality(&g, WeightMode::Unweighted);
    let ranked = centrality::rank_nodes(&scores);

    let other = betweenness_second_opinion(&g);
    let top = other
        .iter()
        .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(a.0)))
        .map(|(&v, _)| v)
        .unwrap();
    assert_eq!(ranked[0], top);
}

#[test]
fn meetings_weighted_comparison_katz_collapses_no_earlier() {
    let g = dataset::load_edge_list(&fixture("meetings.csv")).unwrap();
    let metrics = [
        Metric::Degree,
        Metric::Betweenness,
        Metric::katz_default(),
        Metric::collective_influence_default(),
    ];
    let runs: Vec<_> = metrics
        .iter()
        .map(|m| run_disruption(&g, m, WeightMode::Weighted, Strategy::Sequential).unwrap())
        .collect();
    let table = netdisrupt::disruption::compare_runs(&runs).unwrap();
    let katz_reach = table.first_collapse[2].unwrap();
    for (i, reach) in table.first_collapse.iter().enumerate() {
        assert!(
            katz_reach >= reach.unwrap(),
            "katz reached the collapse threshold earlier than {}",
            metrics[i]
        );
    }
}

#[test]
fn meetings_betweenness_export_reaches_threshold_by_iteration_five() {
    let g = dataset::load_edge_list(&fixture("meetings.csv")).unwrap();
    let run = run_disruption(
        &g,
        &Metric::Betweenness,
        WeightMode::Unweighted,
        Strategy::Sequential,
    )
    .unwrap();
    let csv = dataset::render_run_csv(&run);
    let row5 = csv
        .lines()
        .find(|l| l.starts_with("5,"))
        .expect("iteration 5 row");
    let rho: f64 = row5.rsplit(',').next().unwrap().parse().unwrap();
    assert!(rho <= 0.30, "iteration-5 row: {row5}");
}
