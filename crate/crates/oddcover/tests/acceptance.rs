//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! The extended computations (larger exact searches) are `#[ignore]`d by
//! default; run them with `cargo test -p oddcover --test acceptance --
//! --ignored`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use oddcover::construct::{
    bipartite_cover, complete_cover, forest_cover, k_triangles_cover, odd_cycle_cover, rank_cover,
};
use oddcover::gf2::symplectic_decompose;
use oddcover::search::{exact_b2, lower_bound, upper_bound};
use oddcover::{Biclique, Gf2Matrix, Graph, OddCover, SearchConfig, SearchStatus};

/// A cover must pass both verification routes: the direct XOR of biclique
/// adjacencies and the incidence-matrix product of its encoding.
fn assert_cover(cover: &OddCover, g: &Graph, context: &str) {
    let report = cover.verify(g).expect("matching ground sets");
    assert!(
        report.ok,
        "{context}: cover fails verification: {:?}",
        report.mismatches
    );
    let gram = cover.encode().incidence_matrix().symplectic_gram();
    assert_eq!(
        &gram,
        g.adjacency(),
        "{context}: incidence route disagrees with the adjacency matrix"
    );
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in (u + 1)..=n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn random_bipartite(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let a = rng.gen_range(1..n.max(2));
    let mut edges = Vec::new();
    for u in 1..=a {
        for v in (a + 1)..=n {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn random_forest(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 2..=n {
        if rng.gen_bool(0.85) {
            edges.push((rng.gen_range(1..v), v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Independent maximum-matching oracle for forests: classic two-state DP on
/// each rooted component.
fn forest_matching_dp(f: &Graph) -> usize {
    let n = f.n();
    let mut parent = vec![0usize; n + 1];
    let mut order = Vec::new();
    let mut seen = vec![false; n + 1];
    for root in 1..=n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for w in f.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for v in 1..=n {
        if parent[v] != 0 {
            children[parent[v]].push(v);
        }
    }
    // free[v]: best matching in v's subtree with v unmatched;
    // used[v]: best with v matched to one of its children.
    let mut free = vec![0usize; n + 1];
    let mut used = vec![0usize; n + 1];
    for &v in order.iter().rev() {
        let base: usize = children[v].iter().map(|&c| free[c].max(used[c])).sum();
        free[v] = base;
        used[v] = children[v]
            .iter()
            .map(|&c| 1 + free[c] + base - free[c].max(used[c]))
            .max()
            .unwrap_or(0);
    }
    (1..=n)
        .filter(|&v| parent[v] == 0)
        .map(|root| free[root].max(used[root]))
        .sum()
}

#[test]
fn criterion_1_rank_identities() {
    let start = Instant::now();
    for n in 1..=32usize {
        assert_eq!(Graph::complete(2 * n).rank2(), 2 * n, "r2(K_{})", 2 * n);
    }
    for n in 3..=64usize {
        let want = if n % 2 == 0 { n - 2 } else { n - 1 };
        assert_eq!(Graph::cycle(n).unwrap().rank2(), want, "r2(C_{n})");
    }
    for n in 1..=64usize {
        let want = if n % 2 == 1 { n - 1 } else { n };
        assert_eq!(Graph::path(n).rank2(), want, "r2(P_{n})");
    }
    // Adjacency ranks are always even.
    let mut rng = ChaCha8Rng::seed_from_u64(0xB2_0001);
    for _ in 0..100 {
        let n = rng.gen_range(1..=20);
        let g = random_graph(&mut rng, n, 0.5);
        assert_eq!(g.rank2() % 2, 0, "odd rank on {g:?}");
    }
    assert!(start.elapsed() < Duration::from_secs(1), "criterion 1 over budget");
    println!("criterion 1 (rank identities): PASS");
}

#[test]
fn criterion_2_construction_exactness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xB2_0002);

    for i in 0..200 {
        let n = rng.gen_range(2..=16);
        let g = random_bipartite(&mut rng, n);
        let result = bipartite_cover(&g).unwrap();
        assert_eq!(
            result.size(),
            g.rank2() / 2,
            "bipartite instance {i} missed the rank bound"
        );
        assert_cover(&result.cover, &g, "bipartite instance");
    }

    for i in 0..200 {
        let n = rng.gen_range(1..=30);
        let f = random_forest(&mut rng, n);
        let result = forest_cover(&f).unwrap();
        assert_eq!(
            result.size(),
            forest_matching_dp(&f),
            "forest instance {i} disagrees with the matching DP"
        );
        assert_cover(&result.cover, &f, "forest instance");
    }

    for n in (3..=63usize).step_by(2) {
        let result = odd_cycle_cover(n).unwrap();
        assert_eq!(result.size(), n.div_ceil(2), "odd cycle C_{n}");
        assert_cover(&result.cover, &Graph::cycle(n).unwrap(), "odd cycle");
    }

    for n in 1..=65usize {
        let result = complete_cover(n).unwrap();
        let half_up = n.div_ceil(2);
        match n % 8 {
            0 | 1 | 7 => assert_eq!(result.size(), half_up, "complete_cover({n})"),
            _ => assert!(
                result.size() <= half_up + 1,
                "complete_cover({n}) = {}",
                result.size()
            ),
        }
        assert_cover(&result.cover, &Graph::complete(n), "complete cover");
    }

    assert!(start.elapsed() < Duration::from_secs(5), "criterion 2 over budget");
    println!("criterion 2 (construction exactness): PASS");
}

#[test]
fn criterion_3_friedland_decomposition() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xB2_0003);
    for i in 0..200 {
        let n = rng.gen_range(1..=24);
        let mut m = Gf2Matrix::zeros(n, n);
        for a in 0..n {
            for b in (a + 1)..n {
                if rng.gen_bool(0.5) {
                    m.set(a, b, true);
                    m.set(b, a, true);
                }
            }
        }
        let rank = m.rank();
        let d = symplectic_decompose(&m).unwrap();
        assert_eq!(d.pairs().len(), rank / 2, "instance {i}: pair count");
        assert_eq!(d.reassemble(), m, "instance {i}: reassembly");

        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if m.get(a, b) {
                    edges.push((a + 1, b + 1));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        let cover = rank_cover(&g).unwrap();
        assert!(
            cover.size() <= g.rank2(),
            "instance {i}: rank cover too large"
        );
        assert_cover(&cover.cover, &g, "rank cover");
    }
    assert!(start.elapsed() < Duration::from_secs(10), "criterion 3 over budget");
    println!("criterion 3 (symplectic decomposition): PASS");
}

#[test]
fn criterion_4_exact_solver_known_values() {
    let cfg = SearchConfig::default();
    let check = |name: &str, g: Graph, expected: usize, budget: Duration| {
        let r = exact_b2(&g, &cfg);
        assert_eq!(r.status, SearchStatus::Exact, "{name}: not exact");
        assert_eq!(r.b2, Some(expected), "{name}");
        assert!(r.elapsed < budget, "{name}: {:?} over budget", r.elapsed);
        // The certificate: the certified lower bound equals the value, i.e.
        // the search at expected-1 was exhausted.
        assert_eq!(r.lb, expected, "{name}: missing exhaustion certificate");
        let witness = r.witness.expect("exact results carry a witness");
        assert_eq!(witness.cardinality(), expected, "{name}: witness size");
        assert_cover(&witness, &g, name);
    };
    let minute = Duration::from_secs(60);
    check("K2", Graph::complete(2), 1, minute);
    check("K3", Graph::complete(3), 2, minute);
    check("K5", Graph::complete(5), 3, minute);
    check("K7", Graph::complete(7), 4, minute);
    check("C5", Graph::cycle(5).unwrap(), 3, minute);
    check("C7", Graph::cycle(7).unwrap(), 4, minute);
    check("2K3", Graph::k_triangles(2), 3, Duration::from_secs(10));
    check("T1", Graph::graph_tk(1).unwrap(), 2, Duration::from_secs(1));

    // Cross-check b2(K5) = 3 against the known 3-biclique cover.
    let known_cover = OddCover::new(
        5,
        vec![
            Biclique::new([1, 5], [2, 3]).unwrap(),
            Biclique::new([1, 3], [2, 4]).unwrap(),
            Biclique::new([1, 4], [2, 5]).unwrap(),
        ],
    )
    .unwrap();
    assert_cover(&known_cover, &Graph::complete(5), "known K5 cover");
    assert_eq!(known_cover.cardinality(), 3);

    println!("criterion 4 (exact solver reproduces known values): PASS");
}

#[test]
#[ignore = "extended: a few minutes of exact search"]
fn criterion_5_extended_k10() {
    let cfg = SearchConfig {
        time_budget: Duration::from_secs(15 * 60),
        ..SearchConfig::default()
    };
    let r = exact_b2(&Graph::complete(10), &cfg);
    assert_eq!(r.status, SearchStatus::Exact);
    assert_eq!(r.b2, Some(6), "b2(K10)");
    assert!(r.elapsed < Duration::from_secs(15 * 60));
    assert_cover(&r.witness.unwrap(), &Graph::complete(10), "K10 witness");
    println!("criterion 5 (extended, K10): PASS");
}

#[test]
#[ignore = "extended"]
fn criterion_5_extended_t2() {
    let cfg = SearchConfig {
        time_budget: Duration::from_secs(30 * 60),
        ..SearchConfig::default()
    };
    let g = Graph::graph_tk(2).unwrap();
    let r = exact_b2(&g, &cfg);
    assert_eq!(r.status, SearchStatus::Exact);
    assert_eq!(r.b2, Some(4), "b2(T2)");
    assert!(r.elapsed < Duration::from_secs(30 * 60));
    assert_cover(&r.witness.unwrap(), &g, "T2 witness");
    println!("criterion 5 (extended, T2): PASS");
}

#[test]
#[ignore = "extended"]
fn criterion_5_extended_three_triangles() {
    // A value computed by this solver rather than taken from elsewhere;
    // recorded as search output.
    let g = Graph::k_triangles(3);
    let r = exact_b2(&g, &SearchConfig::default());
    assert_eq!(r.status, SearchStatus::Exact);
    assert_eq!(r.b2, Some(4), "b2(3K3) by search");
    assert_cover(&r.witness.unwrap(), &g, "3K3 witness");
    let constructed = k_triangles_cover(3).unwrap();
    assert_eq!(constructed.size(), 4);
    println!("criterion 5 (extended, 3K3): PASS");
}

#[test]
fn criterion_6_sandwich() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xB2_0006);
    let cfg = SearchConfig {
        node_budget: 3_000_000,
        time_budget: Duration::from_secs(5),
        ..SearchConfig::default()
    };
    let mut exact_done = 0usize;
    for i in 0..500 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        let lb = lower_bound(&g);
        let (ub, witness) = upper_bound(&g);
        assert!(lb <= ub, "instance {i}: lb {lb} > ub {ub}");
        assert_cover(&witness, &g, "upper bound witness");
        assert_eq!(witness.cardinality(), ub, "instance {i}: witness size");
        let r = exact_b2(&g, &cfg);
        if r.status == SearchStatus::Exact {
            exact_done += 1;
            let b2 = r.b2.unwrap();
            assert!(lb <= b2 && b2 <= ub, "instance {i}: {lb} <= {b2} <= {ub}");
        }
    }
    assert!(exact_done > 0, "no exact searches completed");
    assert!(start.elapsed() < Duration::from_secs(30), "criterion 6 over budget");
    println!("criterion 6 (sandwich on {exact_done}/500 exact instances): PASS");
}

#[test]
fn criterion_7_twin_invariance() {
    let start = Instant::now();
    let data = include_str!("data/small_graphs.g6");
    let cfg = SearchConfig {
        node_budget: 20_000_000,
        time_budget: Duration::from_secs(30),
        ..SearchConfig::default()
    };
    let mut checked = 0usize;
    let mut total = 0usize;
    for line in data.lines().filter(|l| !l.trim().is_empty()) {
        total += 1;
        let g = Graph::parse_graph6(line).unwrap_or_else(|e| panic!("parsing {line}: {e}"));
        assert!(g.n() <= 6);
        // The file was written by an independent encoder; byte-identical
        // re-encoding cross-validates the graph6 codec.
        assert_eq!(g.to_graph6(), line);
        let (reduced, _) = g.reduce_twins();
        let a = exact_b2(&g, &cfg);
        let b = exact_b2(&reduced, &cfg);
        if a.status == SearchStatus::Exact && b.status == SearchStatus::Exact {
            assert_eq!(a.b2, b.b2, "twin reduction changed b2 on {line}");
            checked += 1;
        }
    }
    assert_eq!(total, 208, "expected all isomorphism classes up to 6 vertices");
    assert_eq!(checked, 208, "some instances exceeded their budget");
    assert!(start.elapsed() < Duration::from_secs(300), "criterion 7 over budget");
    println!("criterion 7 (twin invariance on {checked} graphs): PASS");
}

#[test]
fn criterion_8_encoding_identity() {
    let start = Instant::now();
    // Construction output across families plus search witnesses; assert_cover
    // checks the incidence identity on every one of them.
    let mut covers: Vec<(OddCover, Graph, &'static str)> = Vec::new();
    for n in [4usize, 8, 10, 15, 17, 33] {
        covers.push((
            complete_cover(n).unwrap().cover,
            Graph::complete(n),
            "complete",
        ));
    }
    for n in [3usize, 9, 21] {
        covers.push((
            odd_cycle_cover(n).unwrap().cover,
            Graph::cycle(n).unwrap(),
            "odd cycle",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xB2_0008);
    for _ in 0..30 {
        let nb = rng.gen_range(2..=12);
        let g = random_bipartite(&mut rng, nb);
        covers.push((bipartite_cover(&g).unwrap().cover, g, "bipartite"));
        let nf = rng.gen_range(1..=20);
        let f = random_forest(&mut rng, nf);
        covers.push((forest_cover(&f).unwrap().cover, f, "forest"));
        let nh = rng.gen_range(1..=12);
        let h = random_graph(&mut rng, nh, 0.5);
        covers.push((rank_cover(&h).unwrap().cover, h, "rank"));
    }
    for g in [Graph::complete(5), Graph::k_triangles(2)] {
        let r = exact_b2(&g, &SearchConfig::default());
        covers.push((r.witness.unwrap(), g, "search witness"));
    }
    covers.push((
        k_triangles_cover(2).unwrap().cover,
        Graph::k_triangles(2),
        "two triangles",
    ));
    let count = covers.len();
    for (cover, g, context) in covers {
        assert_cover(&cover, &g, context);
        // Round trip through the words is lossless.
        assert_eq!(cover.encode().decode(), cover, "{context}: encode/decode");
    }
    assert!(start.elapsed() < Duration::from_secs(5), "criterion 8 over budget");
    println!("criterion 8 (encoding identity on {count} covers): PASS");
}

/// Restriction of a verified complete-graph cover stays verified; ties the
/// restrict surgery into the acceptance data set.
#[test]
fn restriction_of_k8_cover() {
    let k8 = complete_cover(8).unwrap();
    let keep: BTreeSet<usize> = (1..=7).collect();
    let restricted = k8.cover.restrict(&keep).unwrap();
    assert_cover(&restricted, &Graph::complete(7), "restricted K8 cover");
    assert_eq!(restricted.cardinality(), 4);
}
