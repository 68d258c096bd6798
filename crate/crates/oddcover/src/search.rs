//! Exact computation of `b2` for small graphs.
//!
//! The solver reduces twins, then runs iterative deepening on the cover
//! size `k`: a DFS assigns each vertex a word over `{0,1,ε}^k` and prunes as
//! soon as some assigned pair's opposition parity disagrees with adjacency.
//! Interchangeable coordinates are canonicalized (fresh coordinates form a
//! contiguous block introduced with symbol `0`), so each equivalence class
//! of covers is visited once per 0/1 swap and coordinate permutation.
//!
//! An answer is exact only when the DFS at `k - 1` also ran to completion
//! without finding a cover; that exhaustion is the certificate that
//! `b2 > k - 1`.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde_json::json;

use crate::construct::{
    adjacent_twin_cover, bipartite_cover, complete_cover, forest_cover, odd_cycle_cover_traced,
    rank_cover, star_cover, trace_cycle, ConstructionResult,
};
use crate::cover::{CoverCode, OddCover, Symbol};
use crate::graph::Graph;

/// Budgets and strategy knobs for [`exact_b2`].
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Largest cover size tried before giving up with a lower bound.
    pub max_k: usize,
    /// Wall-clock budget over the whole call.
    pub time_budget: Duration,
    /// Budget on candidate words examined.
    pub node_budget: u64,
    /// Make the reported witness independent of the thread count.
    pub deterministic: bool,
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_k: 6,
            time_budget: Duration::from_secs(3600),
            node_budget: u64::MAX,
            deterministic: true,
            threads: 1,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchStatus {
    /// `b2` determined, witness attached, exhaustion certificate at `b2 - 1`.
    Exact,
    /// Every size up to `max_k` was exhausted; `lb` is the certified bound.
    LowerBoundOnly,
    /// The time or node budget ran out mid-search.
    BudgetExhausted,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::Exact => "exact",
            SearchStatus::LowerBoundOnly => "lower_bound_only",
            SearchStatus::BudgetExhausted => "budget_exhausted",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub b2: Option<usize>,
    pub witness: Option<OddCover>,
    /// Best certified lower bound on `b2`.
    pub lb: usize,
    /// Candidate words examined across all deepening levels.
    pub nodes: u64,
    pub elapsed: Duration,
}

impl SearchResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "status": self.status.as_str(),
            "b2": self.b2,
            "lb": self.lb,
            "nodes": self.nodes,
            "elapsed_ms": self.elapsed.as_millis() as u64,
            "witness": self.witness,
        })
    }
}

/// The best cheap lower bound on `b2(g)`: half the adjacency rank, improved
/// to `(n+1)/2` on odd complete graphs and to the order bound
/// `⌈log_3(4) k⌉` on graphs recognized as the generator output `T_k`.
pub fn lower_bound(g: &Graph) -> usize {
    let n = g.n();
    let mut lb = g.rank2().div_ceil(2);
    if n >= 3 && n % 2 == 1 && (1..=n).all(|v| g.degree(v) == n - 1) {
        lb = lb.max(n.div_ceil(2));
    }
    if let Some(k) = tk_parameter(n) {
        if k <= 6 {
            if let Ok(tk) = Graph::graph_tk(k) {
                if tk.adjacency() == g.adjacency() {
                    lb = lb.max(order_bound(k));
                }
            }
        }
    }
    lb
}

/// `k` with `4^k = n`, if any.
fn tk_parameter(n: usize) -> Option<usize> {
    let mut k = 0usize;
    let mut p = 1usize;
    while p < n {
        p = p.checked_mul(4)?;
        k += 1;
    }
    (p == n && k >= 1).then_some(k)
}

/// Least `l` with `3^l >= 4^k`, i.e. `⌈log_3(4) k⌉`.
fn order_bound(k: usize) -> usize {
    let target = 4u128.pow(k as u32);
    let mut l = 0usize;
    let mut p = 1u128;
    while p < target {
        p *= 3;
        l += 1;
    }
    l
}

/// The smallest verified cover over all constructions that apply to `g`.
pub fn upper_bound(g: &Graph) -> (usize, OddCover) {
    let mut candidates: Vec<ConstructionResult> = Vec::new();
    if g.is_forest() {
        candidates.push(forest_cover(g).expect("forest check passed"));
    }
    if g.is_bipartite() {
        candidates.push(bipartite_cover(g).expect("bipartite check passed"));
    }
    if g.n() % 2 == 1 && trace_cycle(g).is_some() {
        candidates.push(odd_cycle_cover_traced(g).expect("cycle traced"));
    }
    if g.n() >= 1 && (1..=g.n()).all(|v| g.degree(v) == g.n() - 1) {
        candidates.push(complete_cover(g.n()).expect("n >= 1"));
    }
    if let Some(m) = g.adjacent_twin_matching() {
        if g.n() >= 2 {
            candidates.push(adjacent_twin_cover(g, &m).expect("matching validated"));
        }
    }
    candidates.push(rank_cover(g).expect("adjacency is symmetric with zero diagonal"));
    candidates.push(star_cover(g).expect("always applicable"));
    let best = candidates
        .into_iter()
        .min_by_key(|r| r.size())
        .expect("rank and star constructions always apply");
    (best.size(), best.cover)
}

/// Largest cover size the word tables are built for; 3^k candidate words
/// per vertex stop being tractable well before this.
const MAX_FEASIBLE_K: usize = 12;

enum DfsOutcome {
    Found(Vec<(u64, u64)>),
    Exhausted,
    Aborted,
}

/// Per-branch slot: the outcome plus, for finds, the assigned word masks.
type BranchSlot = Mutex<Option<(BranchOutcome, Vec<(u64, u64)>)>>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum BranchOutcome {
    Found,
    Exhausted,
    Cancelled,
}

struct Shared {
    nodes: AtomicU64,
    node_budget: u64,
    deadline: Instant,
    blown: AtomicBool,
    /// Least branch index that found a solution; `usize::MAX` when none yet.
    best_branch: AtomicUsize,
    deterministic: bool,
}

impl Shared {
    /// True when the worker on `branch` should stop early.
    fn cancelled(&self, branch: usize) -> bool {
        let best = self.best_branch.load(Ordering::Relaxed);
        if self.deterministic {
            best < branch
        } else {
            best != usize::MAX
        }
    }
}

struct Dfs<'a> {
    k: usize,
    m: usize,
    adj: &'a [u64],
    lows: &'a [Vec<(u64, u64)>],
    zeros: Vec<u64>,
    ones: Vec<u64>,
    branch: usize,
    shared: &'a Shared,
    unflushed: u64,
}

enum Walk {
    Found,
    Done,
    Abort,
}

impl<'a> Dfs<'a> {
    fn flush_and_check(&mut self) -> bool {
        let total = self
            .shared
            .nodes
            .fetch_add(self.unflushed, Ordering::Relaxed)
            + self.unflushed;
        self.unflushed = 0;
        if total > self.shared.node_budget || Instant::now() > self.shared.deadline {
            self.shared.blown.store(true, Ordering::Relaxed);
            return false;
        }
        !(self.shared.blown.load(Ordering::Relaxed) || self.shared.cancelled(self.branch))
    }

    fn walk(&mut self, depth: usize, used: usize) -> Walk {
        if depth == self.m {
            return Walk::Found;
        }
        let adj_mask = self.adj[depth];
        let last = depth + 1 == self.m;
        for low_idx in 0..self.lows[used].len() {
            self.unflushed += 1;
            if self.unflushed >= 4096 && !self.flush_and_check() {
                return Walk::Abort;
            }
            let (lz, lo) = self.lows[used][low_idx];
            // Opposition parity against every assigned word; fresh
            // coordinates cannot contribute because earlier words are ε
            // there.
            let mut ok = true;
            for j in 0..depth {
                let parity =
                    ((lz & self.ones[j]).count_ones() ^ (lo & self.zeros[j]).count_ones()) & 1;
                if parity as u64 != (adj_mask >> j) & 1 {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            // Fresh coordinates enter as a contiguous zero block; the last
            // vertex must bring the used count up to k exactly.
            let t_range = if last {
                (self.k - used)..=(self.k - used)
            } else {
                0..=(self.k - used)
            };
            for t in t_range {
                let block = if t == 0 { 0 } else { ((1u64 << t) - 1) << used };
                self.zeros[depth] = lz | block;
                self.ones[depth] = lo;
                match self.walk(depth + 1, used + t) {
                    Walk::Found => return Walk::Found,
                    Walk::Abort => return Walk::Abort,
                    Walk::Done => {}
                }
            }
        }
        Walk::Done
    }
}

/// All `3^u` words over the low `u` coordinates, as (zero-mask, one-mask)
/// pairs, enumerated in a fixed canonical order.
fn low_words(k: usize) -> Vec<Vec<(u64, u64)>> {
    let mut lows = Vec::with_capacity(k + 1);
    for u in 0..=k {
        let count = 3usize.pow(u as u32);
        let mut words = Vec::with_capacity(count);
        for mut code in 0..count {
            let mut zeros = 0u64;
            let mut ones = 0u64;
            for bit in 0..u {
                match code % 3 {
                    0 => zeros |= 1 << bit,
                    1 => ones |= 1 << bit,
                    _ => {}
                }
                code /= 3;
            }
            words.push((zeros, ones));
        }
        lows.push(words);
    }
    lows
}

/// Runs the DFS at a fixed `k`, splitting the first vertex's block choice
/// across workers.
fn run_level(
    k: usize,
    m: usize,
    adj: &[u64],
    cfg: &SearchConfig,
    deadline: Instant,
    nodes: &AtomicU64,
) -> DfsOutcome {
    if m == 0 {
        return if k == 0 {
            DfsOutcome::Found(Vec::new())
        } else {
            DfsOutcome::Exhausted
        };
    }
    let lows = low_words(k);
    let shared = Shared {
        nodes: AtomicU64::new(nodes.load(Ordering::Relaxed)),
        node_budget: cfg.node_budget,
        deadline,
        blown: AtomicBool::new(false),
        best_branch: AtomicUsize::new(usize::MAX),
        deterministic: cfg.deterministic,
    };
    // Branches fix the first vertex's count of fresh coordinates.
    let branches: Vec<usize> = if m == 1 {
        vec![k]
    } else {
        (0..=k).collect()
    };
    let results: Vec<BranchSlot> = branches.iter().map(|_| Mutex::new(None)).collect();
    let next_branch = AtomicUsize::new(0);

    let worker = |_wid: usize| {
        loop {
            let b = next_branch.fetch_add(1, Ordering::Relaxed);
            if b >= branches.len() || shared.blown.load(Ordering::Relaxed) {
                return;
            }
            if shared.cancelled(b) {
                *results[b].lock().unwrap() = Some((BranchOutcome::Cancelled, Vec::new()));
                continue;
            }
            let t0 = branches[b];
            let mut dfs = Dfs {
                k,
                m,
                adj,
                lows: &lows,
                zeros: vec![0; m],
                ones: vec![0; m],
                branch: b,
                shared: &shared,
                unflushed: 1,
            };
            let block = if t0 == 0 { 0 } else { (1u64 << t0) - 1 };
            dfs.zeros[0] = block;
            dfs.ones[0] = 0;
            let outcome = match dfs.walk(1, t0) {
                Walk::Found => {
                    shared.best_branch.fetch_min(b, Ordering::Relaxed);
                    let words = dfs
                        .zeros
                        .iter()
                        .zip(&dfs.ones)
                        .map(|(&z, &o)| (z, o))
                        .collect();
                    Some((BranchOutcome::Found, words))
                }
                Walk::Done => Some((BranchOutcome::Exhausted, Vec::new())),
                Walk::Abort => {
                    if shared.blown.load(Ordering::Relaxed) {
                        None
                    } else {
                        Some((BranchOutcome::Cancelled, Vec::new()))
                    }
                }
            };
            shared.nodes.fetch_add(dfs.unflushed, Ordering::Relaxed);
            if let Some(outcome) = outcome {
                *results[b].lock().unwrap() = Some(outcome);
            }
        }
    };

    let threads = cfg.threads.max(1).min(branches.len());
    if threads <= 1 {
        worker(0);
    } else {
        std::thread::scope(|scope| {
            for wid in 0..threads {
                scope.spawn(move || worker(wid));
            }
        });
    }

    nodes.store(shared.nodes.load(Ordering::Relaxed), Ordering::Relaxed);
    if shared.blown.load(Ordering::Relaxed) {
        return DfsOutcome::Aborted;
    }
    // In deterministic mode only branches above the least finder get
    // cancelled, so the first Found in branch order is the canonical one.
    // In nondeterministic mode cancelled branches may precede it.
    let mut cancelled = false;
    for slot in &results {
        let guard = slot.lock().unwrap();
        match guard.as_ref() {
            Some((BranchOutcome::Found, words)) => return DfsOutcome::Found(words.clone()),
            Some((BranchOutcome::Exhausted, _)) => {}
            Some((BranchOutcome::Cancelled, _)) | None => cancelled = true,
        }
    }
    // Cancellation only happens after some branch records a solution.
    assert!(!cancelled, "cancelled branch without any recorded solution");
    DfsOutcome::Exhausted
}

/// Determines `b2(g)` exactly by iterative deepening, or reports the best
/// certified lower bound when a budget runs out.
pub fn exact_b2(g: &Graph, cfg: &SearchConfig) -> SearchResult {
    let start = Instant::now();
    let deadline = start + cfg.time_budget;
    let nodes = AtomicU64::new(0);

    let (reduced, mapping) = g.reduce_twins();
    let m = reduced.n();
    assert!(m <= 64, "exact search supports at most 64 reduced vertices");
    let initial_lb = lower_bound(g).max(lower_bound(&reduced));

    // Descending degree, ties by label: constrain early, fail fast.
    let mut order: Vec<usize> = (1..=m).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(reduced.degree(v)), v));
    let mut adj = vec![0u64; m];
    for i in 0..m {
        for j in 0..m {
            if i != j && reduced.has_edge(order[i], order[j]) {
                adj[i] |= 1 << j;
            }
        }
    }

    let finish = |status: SearchStatus,
                  b2: Option<usize>,
                  witness: Option<OddCover>,
                  lb: usize,
                  nodes: &AtomicU64| SearchResult {
        status,
        b2,
        witness,
        lb,
        nodes: nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    };

    // Highest level whose DFS ran to completion without a solution. A valid
    // assignment at size k pads to one at any larger size, so exhaustion at
    // k certifies b2 > k on its own; this tracks DFS evidence only, never
    // the initial analytic bounds.
    let mut exhausted_at: Option<usize> = None;
    let certified_lb =
        |exhausted_at: Option<usize>| exhausted_at.map_or(initial_lb, |k| initial_lb.max(k + 1));

    let mut found: Option<(usize, Vec<(u64, u64)>)> = None;
    let mut k = initial_lb;
    while k <= cfg.max_k.min(MAX_FEASIBLE_K) {
        match run_level(k, m, &adj, cfg, deadline, &nodes) {
            DfsOutcome::Found(words) => {
                found = Some((k, words));
                break;
            }
            DfsOutcome::Exhausted => {
                exhausted_at = Some(k);
                k += 1;
            }
            DfsOutcome::Aborted => {
                return finish(
                    SearchStatus::BudgetExhausted,
                    None,
                    None,
                    certified_lb(exhausted_at),
                    &nodes,
                );
            }
        }
    }

    let Some((mut best_k, mut words)) = found else {
        // Every size up to max_k exhausted (LowerBoundOnly), or the size cap
        // of the word tables was hit first (a structural budget).
        let status = if cfg.max_k <= MAX_FEASIBLE_K {
            SearchStatus::LowerBoundOnly
        } else {
            SearchStatus::BudgetExhausted
        };
        return finish(status, None, None, certified_lb(exhausted_at), &nodes);
    };

    // Certify the exhaustion at best_k - 1; the upward loop already provides
    // it unless the first size tried held a cover. The initial bounds are
    // sound, so the descent should stop immediately, but it is checked
    // rather than assumed.
    while best_k > 0 && exhausted_at != Some(best_k - 1) {
        match run_level(best_k - 1, m, &adj, cfg, deadline, &nodes) {
            DfsOutcome::Exhausted => {
                exhausted_at = Some(best_k - 1);
            }
            DfsOutcome::Found(better) => {
                best_k -= 1;
                words = better;
            }
            DfsOutcome::Aborted => {
                return finish(
                    SearchStatus::BudgetExhausted,
                    None,
                    Some(lift_witness(g, &reduced, &mapping, &order, best_k, &words)),
                    certified_lb(exhausted_at),
                    &nodes,
                );
            }
        }
    }

    assert!(best_k == 0 || exhausted_at == Some(best_k - 1));
    let witness = lift_witness(g, &reduced, &mapping, &order, best_k, &words);
    debug_assert!(witness.verify(g).map(|r| r.ok).unwrap_or(false));
    // The DFS-certified bound: exhaustion at best_k - 1 makes lb equal b2.
    let lb = exhausted_at.map_or(0, |k| k + 1);
    finish(SearchStatus::Exact, Some(best_k), Some(witness), lb, &nodes)
}

/// Turns the reduced-graph assignment back into a cover of the original
/// graph: twins inherit their representative's word.
fn lift_witness(
    g: &Graph,
    reduced: &Graph,
    mapping: &[usize],
    order: &[usize],
    k: usize,
    words: &[(u64, u64)],
) -> OddCover {
    let mut reduced_words = vec![Vec::new(); reduced.n()];
    for (pos, &(z, o)) in words.iter().enumerate() {
        let word: Vec<Symbol> = (0..k)
            .map(|j| {
                if z >> j & 1 == 1 {
                    Symbol::Zero
                } else if o >> j & 1 == 1 {
                    Symbol::One
                } else {
                    Symbol::Eps
                }
            })
            .collect();
        reduced_words[order[pos] - 1] = word;
    }
    let full: Vec<Vec<Symbol>> = (0..g.n())
        .map(|v| reduced_words[mapping[v] - 1].clone())
        .collect();
    CoverCode::new(k, full)
        .expect("uniform word length")
        .decode()
}
