//! Constructions realizing the known odd-cover upper bounds.
//!
//! Every construction verifies its output against the input graph before
//! returning; a verification failure is a bug, not an input error, and
//! panics. The returned [`ConstructionResult`] carries the family tag and
//! the size formula the construction claims.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde_json::json;

use crate::cover::{Biclique, CoverCode, OddCover, Symbol};
use crate::error::{Error, Result};
use crate::gf2::{solve_subset, symplectic_decompose, Gf2Matrix};
use crate::graph::{AdjacentTwinMatching, Graph, Side};
use crate::search::{exact_b2, SearchConfig, SearchStatus};

/// A constructed cover together with its family and claimed size formula.
#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub cover: OddCover,
    pub family: &'static str,
    pub formula: &'static str,
}

impl ConstructionResult {
    pub fn size(&self) -> usize {
        self.cover.cardinality()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "family": self.family,
            "formula": self.formula,
            "size": self.size(),
            "cover": self.cover,
        })
    }
}

/// Verifies and wraps a freshly built cover. Failure here means the
/// construction itself is broken.
fn checked(cover: OddCover, g: &Graph, family: &'static str, formula: &'static str) -> ConstructionResult {
    let report = cover
        .verify(g)
        .expect("construction output shares the input's ground set");
    assert!(
        report.ok,
        "{family} construction failed verification; first mismatches: {:?}",
        report.mismatches
    );
    ConstructionResult {
        cover,
        family,
        formula,
    }
}

/// Partitions the edges of a forest into `m(F) = τ(F)` stars, one per vertex
/// of a minimum vertex cover computed by tree DP.
pub fn forest_cover(f: &Graph) -> Result<ConstructionResult> {
    check_forest(f)?;
    let n = f.n();
    // Root each component at its least vertex and record BFS parents.
    let mut parent = vec![0usize; n + 1];
    let mut bfs_order = Vec::with_capacity(n);
    let mut seen = vec![false; n + 1];
    for root in 1..=n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            bfs_order.push(u);
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
    // Minimum vertex cover DP; ties resolve to "out of the cover".
    let mut cost_in = vec![0usize; n + 1];
    let mut cost_out = vec![0usize; n + 1];
    for &v in bfs_order.iter().rev() {
        cost_in[v] = 1 + children[v]
            .iter()
            .map(|&c| cost_in[c].min(cost_out[c]))
            .sum::<usize>();
        cost_out[v] = children[v].iter().map(|&c| cost_in[c]).sum();
    }
    let mut in_cover = vec![false; n + 1];
    for &v in &bfs_order {
        in_cover[v] = if parent[v] == 0 || in_cover[parent[v]] {
            cost_in[v] < cost_out[v]
        } else {
            true
        };
    }
    // Assign each edge to a covered endpoint; both covered goes to the
    // parent, the endpoint closer to the root.
    let mut stars: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for v in 1..=n {
        let p = parent[v];
        if p == 0 {
            continue;
        }
        let center = match (in_cover[p], in_cover[v]) {
            (true, _) => p,
            (false, true) => v,
            (false, false) => unreachable!("edge left uncovered by the vertex cover"),
        };
        let leaf = p + v - center;
        stars.entry(center).or_default().insert(leaf);
    }
    let tau = (1..=n).filter(|&v| in_cover[v]).count();
    let bicliques: Vec<Biclique> = stars
        .into_iter()
        .map(|(c, leaves)| Biclique {
            x: BTreeSet::from([c]),
            y: leaves,
        })
        .collect();
    assert_eq!(
        bicliques.len(),
        tau,
        "every vertex of a minimum cover owns at least one edge"
    );
    Ok(checked(
        OddCover { n, bicliques },
        f,
        "forest",
        "m(F)",
    ))
}

fn check_forest(f: &Graph) -> Result<()> {
    let mut seen = vec![false; f.n() + 1];
    for root in 1..=f.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some((u, from)) = stack.pop() {
            for w in f.neighbors(u) {
                if w == from {
                    continue;
                }
                if seen[w] {
                    return Err(Error::NotAForest(w));
                }
                seen[w] = true;
                stack.push((w, u));
            }
        }
    }
    Ok(())
}

/// Builds a minimum odd cover of a bipartite graph, of size exactly
/// `r2(G)/2`, in which every biclique has its `X` side in part A and its `Y`
/// side in part B.
///
/// Vertices are processed in ascending order. For each new vertex `v`, a
/// canonical subset `S` of already-processed same-side vertices with
/// `⊕_{u∈S} N(u) = N(v)` is sought. If none exists the rank grew by two and
/// the star `({v}, N(v) ∩ processed)` is appended; otherwise `v` is folded
/// into the existing bicliques through the parity extension, which can never
/// hit the odd-odd conflict because `S` stays on one side.
pub fn bipartite_cover(g: &Graph) -> Result<ConstructionResult> {
    let sides: Vec<Side> = match g.bipartition() {
        Some(s) => s.to_vec(),
        None => g.compute_bipartition()?,
    };
    let n = g.n();
    let mut cover = OddCover::empty(0);
    let mut processed: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for v in 1..=n {
        let si = (sides[v - 1] == Side::B) as usize;
        let mask_prior = |u: usize| {
            let mut row = g.neighborhood(u);
            for b in (v - 1)..n {
                row.clear(b);
            }
            row
        };
        let target = mask_prior(v);
        let subset = if processed[si].is_empty() {
            target.is_zero().then(BTreeSet::new)
        } else {
            let rows = Gf2Matrix::from_rows(processed[si].iter().map(|&u| mask_prior(u)).collect());
            solve_subset(&rows, &target)
        };
        match subset {
            Some(indices) => {
                let s: BTreeSet<usize> = indices.iter().map(|&i| processed[si][i]).collect();
                cover = cover.extend_by_parity(&s, v)?;
            }
            None => {
                let nbrs: BTreeSet<usize> = target.ones().map(|b| b + 1).collect();
                let biclique = if si == 0 {
                    Biclique {
                        x: BTreeSet::from([v]),
                        y: nbrs,
                    }
                } else {
                    Biclique {
                        x: nbrs,
                        y: BTreeSet::from([v]),
                    }
                };
                cover.n = v;
                cover.bicliques.push(biclique);
            }
        }
        processed[si].push(v);
    }
    let result = checked(cover, g, "bipartite", "r2/2");
    assert_eq!(
        result.size(),
        g.rank2() / 2,
        "bipartite construction must meet the rank bound"
    );
    Ok(result)
}

/// Covers the odd cycle `1-2-…-n-1` with `(n-1)/2` paths `K_{1,2}` centered
/// at the even vertices plus one `K_{1,1}` on the closing edge.
pub fn odd_cycle_cover(n: usize) -> Result<ConstructionResult> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "odd_cycle_cover needs odd n >= 3 (even cycles go through bipartite_cover), got {n}"
        )));
    }
    let g = Graph::cycle(n)?;
    let order: Vec<usize> = (1..=n).collect();
    Ok(checked(cycle_star_cover(n, &order), &g, "odd_cycle", "(n+1)/2"))
}

/// Same construction for an odd cycle with arbitrary labels: the cycle is
/// traced first and the stars laid out along it.
pub fn odd_cycle_cover_traced(g: &Graph) -> Result<ConstructionResult> {
    let order = trace_cycle(g).ok_or_else(|| {
        Error::InvalidArgument("input is not a single cycle (connected and 2-regular)".into())
    })?;
    if order.len() % 2 == 0 {
        return Err(Error::InvalidArgument(
            "even cycles go through bipartite_cover".into(),
        ));
    }
    Ok(checked(
        cycle_star_cover(g.n(), &order),
        g,
        "odd_cycle",
        "(n+1)/2",
    ))
}

fn cycle_star_cover(n: usize, order: &[usize]) -> OddCover {
    let len = order.len();
    let mut bicliques = Vec::with_capacity(len / 2 + 1);
    let mut c = 1;
    while c + 1 < len {
        bicliques.push(Biclique {
            x: BTreeSet::from([order[c]]),
            y: BTreeSet::from([order[c - 1], order[c + 1]]),
        });
        c += 2;
    }
    bicliques.push(Biclique {
        x: BTreeSet::from([order[len - 1]]),
        y: BTreeSet::from([order[0]]),
    });
    OddCover { n, bicliques }
}

/// Walks a connected 2-regular graph around its unique cycle.
pub(crate) fn trace_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 || !(1..=n).all(|v| g.degree(v) == 2) || !g.is_connected() {
        return None;
    }
    let mut order = vec![1usize];
    let mut prev = 0usize;
    loop {
        let cur = *order.last().unwrap();
        let next = g.neighbors(cur).find(|&w| w != prev)?;
        if next == 1 {
            break;
        }
        order.push(next);
        prev = cur;
    }
    (order.len() == n).then_some(order)
}

/// Covers a graph with a perfect adjacent-twin matching using at most
/// `n/2 + 1` bicliques, by the inductive word construction.
///
/// Words gain one coordinate per odd step and two per even step (existing
/// words are padded with `0`s, their partners with `1`s); partner words are
/// complements away from their own ε coordinate. When `n/2` is even the two
/// trailing coordinates carry no ε and are merged into a single coordinate
/// by XOR, which preserves every pair's opposition parity. Coordinates that
/// end up edgeless are dropped, so for `n = 2` the result is a single
/// biclique.
pub fn adjacent_twin_cover(g: &Graph, m: &AdjacentTwinMatching) -> Result<ConstructionResult> {
    validate_matching(g, m)?;
    let half = m.pairs.len();

    // Words over Option<bool>: None is ε, Some(b) the bit b.
    let complement = |w: &[Option<bool>]| -> Vec<Option<bool>> {
        w.iter().map(|s| s.map(|b| !b)).collect()
    };
    let indicator = |i: usize, j: usize| g.has_edge(m.pairs[i - 1].0, m.pairs[j - 1].0);

    let mut a_words: Vec<Vec<Option<bool>>>;
    let mut b_words: Vec<Vec<Option<bool>>>;
    if half == 1 {
        a_words = vec![vec![None, Some(false)]];
        b_words = vec![vec![None, Some(true)]];
    } else {
        let i12 = indicator(1, 2);
        a_words = vec![
            vec![None, Some(false), Some(false), Some(false)],
            vec![Some(false), None, Some(i12), Some(false)],
        ];
        b_words = a_words.iter().map(|w| complement(w)).collect();
        let mut cur = 2;
        while cur < half {
            let next = cur + 1;
            if next % 2 == 0 {
                // Even step: two fresh trailing coordinates first.
                for w in &mut a_words {
                    w.extend([Some(false), Some(false)]);
                }
                for w in &mut b_words {
                    w.extend([Some(true), Some(true)]);
                }
            }
            let len = a_words[0].len();
            let mut word = vec![Some(false); len];
            for i in 1..=cur {
                let s = (0..cur)
                    .filter(|&p| p != i - 1)
                    .fold(false, |acc, p| acc ^ a_words[i - 1][p].expect("bit"));
                word[i - 1] = Some(s ^ indicator(i, next));
            }
            word[next - 1] = None;
            let tail = (0..cur).fold(false, |acc, p| acc ^ word[p].expect("bit"));
            if next % 2 == 1 {
                word[next] = Some(tail);
            } else {
                word[next] = Some(tail);
                word[next + 1] = Some(false);
            }
            b_words.push(complement(&word));
            a_words.push(word);
            cur = next;
        }
    }

    if half % 2 == 0 && half >= 2 {
        // Merge the last two coordinates into their XOR. Opposition parity
        // over two ε-free coordinates depends only on the XOR of the bits.
        let len = a_words[0].len();
        for w in a_words.iter_mut().chain(b_words.iter_mut()) {
            let (Some(s), Some(t)) = (w[len - 2], w[len - 1]) else {
                return Err(Error::MergeFailed(
                    "a trailing coordinate carries ε".into(),
                ));
            };
            w.truncate(len - 2);
            w.push(Some(s ^ t));
        }
    }

    let k = a_words[0].len();
    let to_symbols = |w: &[Option<bool>]| -> Vec<Symbol> {
        w.iter()
            .map(|s| match s {
                None => Symbol::Eps,
                Some(false) => Symbol::Zero,
                Some(true) => Symbol::One,
            })
            .collect()
    };
    let mut words = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in m.pairs.iter().enumerate() {
        words[u - 1] = to_symbols(&a_words[i]);
        words[v - 1] = to_symbols(&b_words[i]);
    }
    let cover = CoverCode::new(k, words)?.decode().without_edgeless();
    Ok(checked(cover, g, "adjacent_twin", "n/2+1"))
}

fn validate_matching(g: &Graph, m: &AdjacentTwinMatching) -> Result<()> {
    let n = g.n();
    if n == 0 || n % 2 == 1 || m.pairs.len() != n / 2 {
        return Err(Error::InvalidMatching(format!(
            "expected {} disjoint pairs covering all {n} vertices",
            n / 2
        )));
    }
    let mut seen = vec![false; n + 1];
    for &(u, v) in &m.pairs {
        if u == 0 || v == 0 || u > n || v > n || u == v {
            return Err(Error::InvalidMatching(format!("bad pair ({u}, {v})")));
        }
        if seen[u] || seen[v] {
            return Err(Error::InvalidMatching(format!(
                "pair ({u}, {v}) reuses a matched vertex"
            )));
        }
        seen[u] = true;
        seen[v] = true;
        if !g.has_edge(u, v) {
            return Err(Error::InvalidMatching(format!("({u}, {v}) is not an edge")));
        }
        let mut nu = g.neighborhood(u);
        nu.set(u - 1);
        let mut nv = g.neighborhood(v);
        nv.set(v - 1);
        if nu != nv {
            return Err(Error::InvalidMatching(format!(
                "({u}, {v}) are not adjacent twins"
            )));
        }
    }
    Ok(())
}

/// An odd cover of `K_n` of size `⌈n/2⌉` when `n ≡ 0, 1, 7 (mod 8)` and at
/// most `⌈n/2⌉ + 1` otherwise.
///
/// Dispatch: multiples of 8 use the explicit word table; `8k-1` restricts
/// the `8k` cover; `8k+1` extends the `8k` cover by a star; other even
/// orders use the adjacent-twin construction; other odd orders extend the
/// preceding even cover by a star.
pub fn complete_cover(n: usize) -> Result<ConstructionResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("complete_cover needs n >= 1".into()));
    }
    let g = Graph::complete(n);
    match n % 8 {
        0 => {
            let words = complete_words(n / 2);
            let cover = CoverCode::new(n / 2, words)?.decode();
            Ok(checked(cover, &g, "complete", "ceil(n/2)"))
        }
        7 => {
            let bigger = complete_cover(n + 1)?;
            let keep: BTreeSet<usize> = (1..=n).collect();
            let cover = bigger.cover.restrict(&keep)?;
            Ok(checked(cover, &g, "complete", "ceil(n/2)"))
        }
        1 => {
            let cover = if n == 1 {
                OddCover {
                    n: 1,
                    bicliques: vec![Biclique {
                        x: BTreeSet::from([1]),
                        y: BTreeSet::new(),
                    }],
                }
            } else {
                extend_with_star(complete_cover(n - 1)?.cover, n)
            };
            Ok(checked(cover, &g, "complete", "ceil(n/2)"))
        }
        2 | 4 | 6 => {
            let matching = g
                .adjacent_twin_matching()
                .expect("complete graphs of even order always have one");
            let result = adjacent_twin_cover(&g, &matching)?;
            Ok(ConstructionResult {
                cover: result.cover,
                family: "complete",
                formula: "n/2+1",
            })
        }
        _ => {
            let cover = extend_with_star(complete_cover(n - 1)?.cover, n);
            Ok(checked(cover, &g, "complete", "(n+1)/2+1"))
        }
    }
}

/// Grows the ground set to `n` and appends the star `({n}, 1..n-1)`.
fn extend_with_star(cover: OddCover, n: usize) -> OddCover {
    debug_assert_eq!(cover.n + 1, n);
    let mut bicliques = cover.bicliques;
    bicliques.push(Biclique {
        x: BTreeSet::from([n]),
        y: (1..n).collect(),
    });
    OddCover { n, bicliques }
}

/// The word table behind the `K_{8k}` covers, `half = 4k` words plus their
/// complements.
fn complete_words(half: usize) -> Vec<Vec<Symbol>> {
    assert!(half >= 4 && half % 4 == 0);
    let a = |i: usize, j: usize| -> Symbol {
        if j == i {
            Symbol::Eps
        } else if j >= i + 2
            || (i % 4 <= 1 && j == i + 1)
            || ((i % 4 == 0 || i % 4 == 3) && j + 1 == i)
        {
            Symbol::Zero
        } else {
            Symbol::One
        }
    };
    let mut words = Vec::with_capacity(2 * half);
    for i in 1..=half {
        words.push((1..=half).map(|j| a(i, j)).collect::<Vec<_>>());
    }
    for i in 1..=half {
        words.push(
            (1..=half)
                .map(|j| match a(i, j) {
                    Symbol::Zero => Symbol::One,
                    Symbol::One => Symbol::Zero,
                    Symbol::Eps => Symbol::Eps,
                })
                .collect(),
        );
    }
    words
}

/// Turns the symplectic decomposition of `A(G)` into `r2/2` tricliques and
/// splits each into two bicliques, dropping edgeless halves; at most
/// `r2(G)` bicliques in total.
pub fn rank_cover(g: &Graph) -> Result<ConstructionResult> {
    let d = symplectic_decompose(g.adjacency())?;
    let mut bicliques = Vec::new();
    for (x, y) in d.pairs() {
        let mut tx = BTreeSet::new();
        let mut ty = BTreeSet::new();
        let mut tz = BTreeSet::new();
        for i in 0..g.n() {
            match (x.get(i), y.get(i)) {
                (true, false) => {
                    tx.insert(i + 1);
                }
                (false, true) => {
                    ty.insert(i + 1);
                }
                (true, true) => {
                    tz.insert(i + 1);
                }
                (false, false) => {}
            }
        }
        let (b1, b2) = crate::cover::Triclique {
            x: tx,
            y: ty,
            z: tz,
        }
        .split();
        for b in [b1, b2] {
            if !b.is_edgeless() {
                bicliques.push(b);
            }
        }
    }
    Ok(checked(
        OddCover {
            n: g.n(),
            bicliques,
        },
        g,
        "rank",
        "r2",
    ))
}

/// Stars centered on the complement of a greedy independent set (grown in
/// ascending degree order, so high-degree vertices fall out last). Each edge
/// is assigned to exactly one center; edges between two centers go to the
/// smaller one.
pub fn star_cover(g: &Graph) -> Result<ConstructionResult> {
    let n = g.n();
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut indep = vec![false; n + 1];
    for &v in &order {
        if g.neighbors(v).all(|w| !indep[w]) {
            indep[v] = true;
        }
    }
    let mut stars: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (u, v) in g.edges() {
        let center = match (indep[u], indep[v]) {
            (false, false) => u.min(v),
            (false, true) => u,
            (true, false) => v,
            (true, true) => unreachable!("edge inside an independent set"),
        };
        stars.entry(center).or_default().insert(u + v - center);
    }
    let bicliques: Vec<Biclique> = stars
        .into_iter()
        .map(|(c, leaves)| Biclique {
            x: BTreeSet::from([c]),
            y: leaves,
        })
        .collect();
    let independent = (1..=n).filter(|&v| indep[v]).count();
    let result = checked(
        OddCover { n, bicliques },
        g,
        "star",
        "n-alpha",
    );
    assert_eq!(result.size(), n - independent, "one star per center");
    Ok(result)
}

/// A cover of `k` disjoint triangles of size `k + 1`: the known 3-biclique
/// pattern for `k = 2`, exact search elsewhere. Supports `k <= 3`.
pub fn k_triangles_cover(k: usize) -> Result<ConstructionResult> {
    if k == 0 {
        return Err(Error::InvalidArgument("k_triangles_cover needs k >= 1".into()));
    }
    if k > 3 {
        return Err(Error::BudgetExceeded(format!(
            "k_triangles_cover supports k <= 3 by default, got {k}"
        )));
    }
    let g = Graph::k_triangles(k);
    if k == 2 {
        // The known minimum cover of two triangles, relabeled onto the
        // canonical triangles {1,2,3} and {4,5,6}.
        let cover = OddCover::new(
            6,
            vec![
                Biclique::new([3, 5], [2, 4])?,
                Biclique::new([1, 5], [2, 6])?,
                Biclique::new([3, 6], [1, 4])?,
            ],
        )?;
        return Ok(checked(cover, &g, "k_triangles", "k+1"));
    }
    let cfg = SearchConfig {
        max_k: k + 1,
        ..SearchConfig::default()
    };
    let result = exact_b2(&g, &cfg);
    match result.status {
        SearchStatus::Exact => {
            assert_eq!(
                result.b2,
                Some(k + 1),
                "exact search disagrees with the k+1 cover size for {k} triangles"
            );
            Ok(checked(
                result.witness.expect("exact results carry a witness"),
                &g,
                "k_triangles",
                "k+1",
            ))
        }
        _ => Err(Error::BudgetExceeded(format!(
            "exact search for {k} triangles did not finish"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forest_cover_examples() {
        let p4 = forest_cover(&Graph::path(4)).unwrap();
        assert_eq!(p4.size(), 2);

        let star = Graph::from_edges(6, &[(1, 2), (1, 3), (1, 4), (1, 5), (1, 6)]).unwrap();
        assert_eq!(forest_cover(&star).unwrap().size(), 1);

        assert!(matches!(
            forest_cover(&Graph::cycle(5).unwrap()),
            Err(Error::NotAForest(_))
        ));

        // Stars partition the edges and each has a singleton side.
        let f = Graph::from_edges(
            9,
            &[(1, 2), (2, 3), (3, 4), (2, 5), (6, 7), (7, 8), (1, 9)],
        )
        .unwrap();
        let result = forest_cover(&f).unwrap();
        let mut covered = BTreeSet::new();
        for b in &result.cover.bicliques {
            assert_eq!(b.x.len(), 1);
            for e in b.edges() {
                assert!(covered.insert(e), "edge {e:?} in two stars");
            }
        }
        assert_eq!(covered.len(), f.edge_count());
    }

    #[test]
    fn bipartite_cover_examples() {
        let c6 = bipartite_cover(&Graph::cycle(6).unwrap()).unwrap();
        assert_eq!(c6.size(), 2);

        let p7 = bipartite_cover(&Graph::path(7)).unwrap();
        assert_eq!(p7.size(), 3);

        let mut edges = Vec::new();
        for u in 1..=3 {
            for v in 4..=6 {
                edges.push((u, v));
            }
        }
        let k33 = Graph::from_edges(6, &edges).unwrap();
        assert_eq!(bipartite_cover(&k33).unwrap().size(), 1);

        assert!(bipartite_cover(&Graph::cycle(5).unwrap()).is_err());
    }

    #[test]
    fn bipartite_cover_respects_sides() {
        let g = Graph::from_edges(7, &[(1, 4), (1, 5), (2, 5), (3, 6), (2, 7), (3, 5)]).unwrap();
        let sides = g.compute_bipartition().unwrap();
        let result = bipartite_cover(&g).unwrap();
        for b in &result.cover.bicliques {
            for &u in &b.x {
                assert_eq!(sides[u - 1], sides[0]);
            }
            for (&u, &v) in b.x.iter().zip(b.y.iter()) {
                assert_ne!(sides[u - 1], sides[v - 1]);
            }
        }
    }

    #[test]
    fn odd_cycle_cover_examples() {
        assert_eq!(odd_cycle_cover(5).unwrap().size(), 3);
        assert_eq!(odd_cycle_cover(3).unwrap().size(), 2);
        assert_eq!(odd_cycle_cover(9).unwrap().size(), 5);
        assert!(odd_cycle_cover(6).is_err());

        // Non-canonical labels go through the traced variant.
        let relabeled = Graph::from_edges(5, &[(1, 3), (3, 5), (5, 2), (2, 4), (4, 1)]).unwrap();
        let traced = odd_cycle_cover_traced(&relabeled).unwrap();
        assert_eq!(traced.size(), 3);
    }

    #[test]
    fn adjacent_twin_cover_examples() {
        let k2 = Graph::complete(2);
        let m = k2.adjacent_twin_matching().unwrap();
        let r = adjacent_twin_cover(&k2, &m).unwrap();
        assert_eq!(r.size(), 1);

        let k4 = Graph::complete(4);
        let m = k4.adjacent_twin_matching().unwrap();
        assert_eq!(adjacent_twin_cover(&k4, &m).unwrap().size(), 3);

        let k6 = Graph::complete(6);
        let m = k6.adjacent_twin_matching().unwrap();
        assert_eq!(adjacent_twin_cover(&k6, &m).unwrap().size(), 4);

        // C4 has no adjacent twins: a forged matching is rejected.
        let c4 = Graph::cycle(4).unwrap();
        assert!(c4.adjacent_twin_matching().is_none());
        let forged = AdjacentTwinMatching {
            pairs: vec![(1, 2), (3, 4)],
        };
        assert!(matches!(
            adjacent_twin_cover(&c4, &forged),
            Err(Error::InvalidMatching(_))
        ));
    }

    #[test]
    fn adjacent_twin_cover_beyond_complete_graphs() {
        // Blow a base graph up by doubling each vertex into an adjacent-twin
        // pair; a perfect adjacent-twin matching then always exists. C5
        // exercises the odd final step, P4 the trailing-coordinate merge.
        for base in [Graph::cycle(5).unwrap(), Graph::path(4)] {
            let n = 2 * base.n();
            let mut edges = Vec::new();
            for (u, v) in base.edges() {
                for du in 0..2 {
                    for dv in 0..2 {
                        edges.push((2 * u - 1 + du, 2 * v - 1 + dv));
                    }
                }
            }
            for u in 1..=base.n() {
                edges.push((2 * u - 1, 2 * u));
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let m = g.adjacent_twin_matching().expect("doubled vertices pair up");
            let result = adjacent_twin_cover(&g, &m).unwrap();
            assert!(result.size() <= n / 2 + 1);
        }
    }

    #[test]
    fn complete_cover_k8_matches_word_table() {
        let words: Vec<String> = ["ε000", "1ε10", "10ε1", "110ε"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let result = complete_cover(8).unwrap();
        assert_eq!(result.size(), 4);
        let code = result.cover.encode();
        for (i, expected) in words.iter().enumerate() {
            assert_eq!(&code.word_string(i + 1), expected, "a^({})", i + 1);
        }
        // Complement words for vertices 5..8.
        assert_eq!(code.word_string(5), "ε111");
        assert_eq!(code.word_string(8), "001ε");
    }

    #[test]
    fn complete_cover_small_values() {
        for (n, size) in [(1, 1), (2, 1), (3, 2), (4, 3), (7, 4), (8, 4), (9, 5), (10, 6), (16, 8)]
        {
            let r = complete_cover(n).unwrap();
            assert_eq!(r.size(), size, "complete_cover({n})");
        }
    }

    #[test]
    fn complete_cover_sizes_up_to_65() {
        for n in 1..=65usize {
            let r = complete_cover(n).unwrap();
            let half_up = n.div_ceil(2);
            match n % 8 {
                0 | 1 | 7 => assert_eq!(r.size(), half_up, "n = {n}"),
                _ => assert!(r.size() <= half_up + 1, "n = {n}: {}", r.size()),
            }
        }
    }

    #[test]
    fn complete_word_table_properties() {
        // Structural properties of the K_{8k} word set, k <= 8: matched
        // partners are adjacent and agree on third vertices, as do words
        // four apart.
        let opposed_odd = |a: &[Symbol], b: &[Symbol]| {
            let count = a
                .iter()
                .zip(b)
                .filter(|(x, y)| {
                    matches!(
                        (x, y),
                        (Symbol::Zero, Symbol::One) | (Symbol::One, Symbol::Zero)
                    )
                })
                .count();
            count % 2 == 1
        };
        for k in 1..=8usize {
            let half = 4 * k;
            let words = complete_words(half);
            let (a, b) = words.split_at(half);
            for i in 0..half {
                assert!(opposed_odd(&a[i], &b[i]), "pair {i} must be adjacent");
            }
            for i in 0..half {
                for (v, w) in words.iter().enumerate() {
                    if v == i || v == half + i {
                        continue;
                    }
                    assert_eq!(
                        opposed_odd(&a[i], w),
                        opposed_odd(&b[i], w),
                        "a^{i} and b^{i} must agree on vertex {v}"
                    );
                }
            }
            for i in 0..half.saturating_sub(4) {
                for (v, w) in words.iter().enumerate() {
                    if v == i || v == i + 4 {
                        continue;
                    }
                    assert_eq!(
                        opposed_odd(&a[i], w),
                        opposed_odd(&a[i + 4], w),
                        "a^{i} and a^{} must agree on vertex {v}",
                        i + 4
                    );
                }
            }
        }
    }

    #[test]
    fn rank_cover_examples() {
        let k3 = rank_cover(&Graph::complete(3)).unwrap();
        assert_eq!(k3.size(), 2);

        let empty = rank_cover(&Graph::empty(5)).unwrap();
        assert_eq!(empty.size(), 0);

        let g = Graph::from_edges(
            12,
            &[
                (1, 2),
                (1, 5),
                (2, 7),
                (3, 8),
                (3, 4),
                (4, 9),
                (5, 6),
                (6, 10),
                (7, 11),
                (8, 12),
                (2, 3),
                (5, 9),
                (10, 12),
            ],
        )
        .unwrap();
        let r = rank_cover(&g).unwrap();
        assert!(r.size() <= g.rank2());
    }

    #[test]
    fn star_cover_examples() {
        assert_eq!(star_cover(&Graph::empty(4)).unwrap().size(), 0);
        assert_eq!(star_cover(&Graph::complete(6)).unwrap().size(), 5);
        assert_eq!(star_cover(&Graph::cycle(6).unwrap()).unwrap().size(), 3);
    }

    #[test]
    fn k_triangles_cover_small() {
        assert_eq!(k_triangles_cover(1).unwrap().size(), 2);
        assert_eq!(k_triangles_cover(2).unwrap().size(), 3);
        assert!(matches!(
            k_triangles_cover(4),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
