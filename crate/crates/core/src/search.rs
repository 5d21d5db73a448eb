//! Exact search for I(m,w) admissible sets and the extremal count f(m,w).
//!
//! Both searches assign at most one vector per size-w support (two vectors
//! sharing a support pair-clash) and prune any partial assignment containing
//! a triple clash. Pruning is driven by a per-depth index of *dangerous*
//! support pairs: a support triple can only ever clash when no coordinate is
//! covered by exactly one of the three supports, so everything else is
//! skipped without looking at values.
//!
//! Determinism: with a fixed config, `status` (and the f_max value) do not
//! depend on the thread count. Node limits are split across the top-level
//! branches up front, so each branch's outcome is scheduling-independent;
//! when a node limit is combined with multiple threads, the best-bound is
//! kept branch-local for the same reason. Witness identity across thread
//! counts is not part of the contract. Time limits are wall-clock and
//! inherently irreproducible.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::clash::{is_admissible, triple_clash_masks};
use crate::family::VectorFamily;
use crate::supports::{enumerate_supports, SeedOrder};
use crate::vector::{Support, TernaryVector};

/// Which symmetry reductions the search may apply.
///
/// `star`: the value swap 1↔2 maps solutions to solutions, so the first
/// placed vector's first non-zero entry can be fixed to 1.
///
/// `coordinate_permutation`: permutations of the first support's coordinates
/// (fixing everything else) map solutions to solutions, so the vector on the
/// first support can be required to have non-decreasing entries. Full
/// isomorph rejection is deliberately out of scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryFlags {
    pub star: bool,
    pub coordinate_permutation: bool,
}

impl SymmetryFlags {
    pub fn all() -> Self {
        Self { star: true, coordinate_permutation: true }
    }

    pub fn none() -> Self {
        Self { star: false, coordinate_permutation: false }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    pub threads: usize,
    pub symmetry: SymmetryFlags,
    pub seed_order: SeedOrder,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            node_limit: None,
            time_limit: None,
            threads: 1,
            symmetry: SymmetryFlags::all(),
            seed_order: SeedOrder::Colex,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    /// A witness was found (and re-verified by the core checkers).
    Found,
    /// The whole space was covered: no witness exists.
    Exhausted,
    /// A node or time limit stopped the search; existence is unresolved.
    LimitReached,
}

#[derive(Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<VectorFamily>,
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug)]
pub struct FMaxOutcome {
    /// Size of the largest admissible weight-w family found.
    pub value: usize,
    pub witness: VectorFamily,
    /// True iff the search space was exhausted, so `value` is f(m,w) exactly.
    pub exact: bool,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Searches for an I(m,w) admissible set: one vector on every size-w
/// support, no triple clash. `Exhausted` means no such set exists.
pub fn exists_i(m: usize, w: usize, cfg: &SearchConfig) -> SearchOutcome {
    assert!(w >= 1 && w <= m, "exists_i requires 0 < w <= m");
    let supports = enumerate_supports(m, w, cfg.seed_order);
    let choices: Vec<Vec<TernaryVector>> =
        supports.iter().map(|s| all_vectors_on(m, s)).collect();
    solve_assignment(m, w, &supports, &choices, cfg, true)
}

/// Branch-and-bound maximization of the number of weight-w vectors in an
/// admissible family in {0,1,2}^m.
pub fn f_max(m: usize, w: usize, cfg: &SearchConfig) -> FMaxOutcome {
    assert!(w >= 1 && w <= m, "f_max requires 0 < w <= m");
    let supports = enumerate_supports(m, w, cfg.seed_order);
    let choices: Vec<Vec<TernaryVector>> =
        supports.iter().map(|s| all_vectors_on(m, s)).collect();
    solve_max(m, w, &supports, &choices, cfg)
}

/// All 2^|S| vectors with support exactly S, ordered by choice code: bit p of
/// the code decides whether the p-th support position holds a 2.
pub(crate) fn all_vectors_on(m: usize, support: &Support) -> Vec<TernaryVector> {
    let positions = support.members();
    let w = positions.len();
    assert!(w < 32, "cannot materialise 2^{w} candidate vectors");
    (0..1u32 << w)
        .map(|code| {
            let mut twos = 0u128;
            for (p, &coord) in positions.iter().enumerate() {
                if code >> p & 1 == 1 {
                    twos |= 1 << coord;
                }
            }
            TernaryVector::from_masks(m, support.bits(), twos)
        })
        .collect()
}

fn first_entry_is_one(v: &TernaryVector) -> bool {
    v.nonzero_entries().next() != Some(2)
}

fn entries_sorted(v: &TernaryVector) -> bool {
    let mut seen_two = false;
    for e in v.nonzero_entries() {
        if e == 2 {
            seen_two = true;
        } else if seen_two {
            return false;
        }
    }
    true
}

/// Lazily built per-depth index of dangerous support pairs: `get(k)` lists
/// all (i, j) with i < j < k such that no coordinate is covered by exactly
/// one of supports i, j, k. Only those pairs can participate in a triple
/// clash with a vector on support k.
struct DangerousPairs<'a> {
    supports: &'a [Support],
    built: Vec<Option<Vec<(u32, u32)>>>,
}

impl<'a> DangerousPairs<'a> {
    fn new(supports: &'a [Support]) -> Self {
        Self { supports, built: vec![None; supports.len()] }
    }

    fn get(&mut self, k: usize) -> &[(u32, u32)] {
        if self.built[k].is_none() {
            let sk = self.supports[k].bits();
            let mut pairs = Vec::new();
            for i in 0..k {
                let si = self.supports[i].bits();
                for j in i + 1..k {
                    let sj = self.supports[j].bits();
                    let exactly_one = (si ^ sj ^ sk) & !(si & sj & sk);
                    if exactly_one == 0 {
                        pairs.push((i as u32, j as u32));
                    }
                }
            }
            self.built[k] = Some(pairs);
        }
        self.built[k].as_ref().unwrap().as_slice()
    }
}

enum BranchResult {
    Found,
    Exhausted,
    Limited,
    /// Stopped because a peer already found a witness.
    Aborted,
}

struct Shared<'a> {
    found: AtomicBool,
    witness: Mutex<Option<VectorFamily>>,
    nodes: AtomicU64,
    next_branch: AtomicUsize,
    deadline: Option<Instant>,
    m: usize,
    w: usize,
    supports: &'a [Support],
    choices: &'a [Vec<TernaryVector>],
}

struct ExistsWorker<'a, 'b> {
    shared: &'b Shared<'a>,
    pairs: DangerousPairs<'a>,
    stack: Vec<TernaryVector>,
    nodes: u64,
    budget: u64,
}

impl<'a, 'b> ExistsWorker<'a, 'b> {
    fn out_of_time(&self) -> bool {
        // coarse check; exactness of the cut-off point is not a contract
        self.nodes.is_multiple_of(4096)
            && self.shared.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn dfs(&mut self, depth: usize) -> BranchResult {
        if depth == self.shared.supports.len() {
            return BranchResult::Found;
        }
        let pairs_len = self.pairs.get(depth).len();
        for cand in &self.shared.choices[depth] {
            if self.nodes >= self.budget {
                return BranchResult::Limited;
            }
            self.nodes += 1;
            if self.shared.found.load(Ordering::Relaxed) {
                return BranchResult::Aborted;
            }
            if self.out_of_time() {
                return BranchResult::Limited;
            }
            let clashes = (0..pairs_len).any(|idx| {
                let (i, j) = self.pairs.get(depth)[idx];
                triple_clash_masks(&self.stack[i as usize], &self.stack[j as usize], cand)
            });
            if clashes {
                continue;
            }
            self.stack.push(*cand);
            match self.dfs(depth + 1) {
                BranchResult::Exhausted => {
                    self.stack.pop();
                }
                // on Found the stack IS the witness: leave it intact
                BranchResult::Found => return BranchResult::Found,
                other => {
                    self.stack.pop();
                    return other;
                }
            }
        }
        BranchResult::Exhausted
    }
}

/// Backtracking over a fixed support order with one choice list per support;
/// every support must receive a vector. Shared by `exists_i` and the
/// monotype search.
pub(crate) fn solve_assignment(
    m: usize,
    w: usize,
    supports: &[Support],
    choices: &[Vec<TernaryVector>],
    cfg: &SearchConfig,
    apply_symmetry: bool,
) -> SearchOutcome {
    assert!(cfg.threads >= 1, "thread count must be positive");
    assert!(cfg.node_limit.is_none_or(|n| n > 0), "node limit must be positive");
    let start = Instant::now();

    let root: Vec<TernaryVector> = choices
        .first()
        .map(|cs| {
            cs.iter()
                .copied()
                .filter(|v| {
                    !(apply_symmetry && cfg.symmetry.star) || first_entry_is_one(v)
                })
                .filter(|v| {
                    !(apply_symmetry && cfg.symmetry.coordinate_permutation)
                        || entries_sorted(v)
                })
                .collect()
        })
        .unwrap_or_default();

    let shared = Shared {
        found: AtomicBool::new(false),
        witness: Mutex::new(None),
        nodes: AtomicU64::new(0),
        next_branch: AtomicUsize::new(0),
        deadline: cfg.time_limit.map(|d| start + d),
        m,
        w,
        supports,
        choices,
    };

    if supports.is_empty() {
        let witness = VectorFamily::new(m).expect("length validated by caller");
        return SearchOutcome {
            status: SearchStatus::Found,
            witness: Some(witness),
            nodes: 0,
            elapsed: start.elapsed(),
        };
    }

    let budgets = split_budget(cfg.node_limit, root.len());
    let any_limited = AtomicBool::new(false);

    let run_worker = |shared: &Shared| {
        let mut limited = false;
        loop {
            let b = shared.next_branch.fetch_add(1, Ordering::Relaxed);
            if b >= root.len() || shared.found.load(Ordering::Relaxed) {
                break;
            }
            let mut worker = ExistsWorker {
                shared,
                pairs: DangerousPairs::new(shared.supports),
                stack: vec![root[b]],
                nodes: 1, // the root placement itself
                budget: budgets[b],
            };
            let result = worker.dfs(1);
            shared.nodes.fetch_add(worker.nodes, Ordering::Relaxed);
            match result {
                BranchResult::Found => {
                    let family =
                        VectorFamily::from_vectors(shared.m, worker.stack.iter().copied())
                            .expect("search assigns distinct supports");
                    // witness soundness is asserted here, not left to tests
                    assert!(family.is_i_set(shared.m, shared.w), "search produced a non-I set");
                    assert!(is_admissible(&family), "search produced an inadmissible family");
                    let mut slot = shared.witness.lock().unwrap();
                    if slot.is_none() {
                        *slot = Some(family);
                    }
                    shared.found.store(true, Ordering::Relaxed);
                }
                BranchResult::Limited => limited = true,
                BranchResult::Exhausted | BranchResult::Aborted => {}
            }
        }
        limited
    };

    if cfg.threads == 1 {
        if run_worker(&shared) {
            any_limited.store(true, Ordering::Relaxed);
        }
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..cfg.threads)
                .map(|_| scope.spawn(|| run_worker(&shared)))
                .collect();
            for h in handles {
                if h.join().expect("search worker panicked") {
                    any_limited.store(true, Ordering::Relaxed);
                }
            }
        });
    }

    let witness = shared.witness.into_inner().unwrap();
    let status = if witness.is_some() {
        SearchStatus::Found
    } else if any_limited.load(Ordering::Relaxed) {
        SearchStatus::LimitReached
    } else {
        SearchStatus::Exhausted
    };
    SearchOutcome {
        status,
        witness,
        nodes: shared.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    }
}

fn split_budget(node_limit: Option<u64>, branches: usize) -> Vec<u64> {
    match node_limit {
        None => vec![u64::MAX; branches.max(1)],
        Some(total) => {
            let n = branches.max(1) as u64;
            let per = total / n;
            let rem = total % n;
            (0..n).map(|i| per + u64::from(i < rem)).collect()
        }
    }
}

struct MaxShared<'a> {
    /// Best placed-count seen so far; only consulted across threads when no
    /// node limit is set (see module docs on determinism).
    best: AtomicUsize,
    witness: Mutex<(usize, Option<VectorFamily>)>,
    nodes: AtomicU64,
    next_branch: AtomicUsize,
    deadline: Option<Instant>,
    share_bound: bool,
    m: usize,
    supports: &'a [Support],
    choices: &'a [Vec<TernaryVector>],
    symmetry: SymmetryFlags,
}

struct MaxWorker<'a, 'b> {
    shared: &'b MaxShared<'a>,
    pairs: DangerousPairs<'a>,
    assigned: Vec<Option<TernaryVector>>,
    placed: usize,
    local_best: usize,
    nodes: u64,
    budget: u64,
    limited: bool,
}

impl<'a, 'b> MaxWorker<'a, 'b> {
    fn best(&self) -> usize {
        if self.shared.share_bound {
            self.shared.best.load(Ordering::Relaxed).max(self.local_best)
        } else {
            self.local_best
        }
    }

    fn record(&mut self) {
        if self.placed <= self.local_best {
            return;
        }
        self.local_best = self.placed;
        if self.shared.share_bound {
            self.shared.best.fetch_max(self.placed, Ordering::Relaxed);
        }
        let mut slot = self.shared.witness.lock().unwrap();
        if self.placed > slot.0 {
            let family = VectorFamily::from_vectors(
                self.shared.m,
                self.assigned.iter().flatten().copied(),
            )
            .expect("assignment keeps supports distinct");
            *slot = (self.placed, Some(family));
        }
    }

    fn out_of_time(&self) -> bool {
        self.nodes.is_multiple_of(4096)
            && self.shared.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn dfs(&mut self, depth: usize) {
        if self.limited {
            return;
        }
        if depth == self.shared.supports.len() {
            return;
        }
        // remaining supports cannot lift us above the incumbent
        if self.placed + (self.shared.supports.len() - depth) <= self.best() {
            return;
        }
        let pairs_len = self.pairs.get(depth).len();
        for cand in &self.shared.choices[depth] {
            if self.nodes >= self.budget || self.out_of_time() {
                self.limited = true;
                return;
            }
            self.nodes += 1;
            // star symmetry: the first vector placed may be assumed to open
            // with a 1; coordinate permutations additionally sort the vector
            // on the very first support.
            if self.placed == 0 && self.shared.symmetry.star && !first_entry_is_one(cand) {
                continue;
            }
            if depth == 0 && self.shared.symmetry.coordinate_permutation && !entries_sorted(cand)
            {
                continue;
            }
            let clashes = (0..pairs_len).any(|idx| {
                let (i, j) = self.pairs.get(depth)[idx];
                match (self.assigned[i as usize], self.assigned[j as usize]) {
                    (Some(u), Some(v)) => triple_clash_masks(&u, &v, cand),
                    _ => false,
                }
            });
            if clashes {
                continue;
            }
            self.assigned[depth] = Some(*cand);
            self.placed += 1;
            self.record();
            self.dfs(depth + 1);
            self.placed -= 1;
            self.assigned[depth] = None;
            if self.limited {
                return;
            }
        }
        // the skip branch: leave this support unassigned
        self.dfs(depth + 1);
    }
}

fn solve_max(
    m: usize,
    w: usize,
    supports: &[Support],
    choices: &[Vec<TernaryVector>],
    cfg: &SearchConfig,
) -> FMaxOutcome {
    assert!(cfg.threads >= 1, "thread count must be positive");
    assert!(cfg.node_limit.is_none_or(|n| n > 0), "node limit must be positive");
    let start = Instant::now();

    // top-level branches: each depth-0 candidate, plus skipping support 0
    let branch_count = choices.first().map_or(0, |c| c.len()) + 1;
    let budgets = split_budget(cfg.node_limit, branch_count);

    let shared = MaxShared {
        best: AtomicUsize::new(0),
        witness: Mutex::new((0, None)),
        nodes: AtomicU64::new(0),
        next_branch: AtomicUsize::new(0),
        deadline: cfg.time_limit.map(|d| start + d),
        share_bound: cfg.node_limit.is_none(),
        m,
        supports,
        choices,
        symmetry: cfg.symmetry,
    };
    let any_limited = AtomicBool::new(false);

    let run_worker = |shared: &MaxShared| {
        let mut limited = false;
        loop {
            let b = shared.next_branch.fetch_add(1, Ordering::Relaxed);
            if b >= branch_count {
                break;
            }
            let mut worker = MaxWorker {
                shared,
                pairs: DangerousPairs::new(shared.supports),
                assigned: vec![None; shared.supports.len()],
                placed: 0,
                local_best: 0,
                nodes: 0,
                budget: budgets[b],
                limited: false,
            };
            if b < branch_count - 1 {
                let cand = shared.choices[0][b];
                worker.nodes = 1;
                let skip = (shared.symmetry.star && !first_entry_is_one(&cand))
                    || (shared.symmetry.coordinate_permutation && !entries_sorted(&cand));
                if !skip {
                    worker.assigned[0] = Some(cand);
                    worker.placed = 1;
                    worker.record();
                    worker.dfs(1);
                }
            } else {
                // branch that leaves support 0 unassigned
                worker.dfs(1);
            }
            shared.nodes.fetch_add(worker.nodes, Ordering::Relaxed);
            limited |= worker.limited;
        }
        limited
    };

    if cfg.threads == 1 {
        if run_worker(&shared) {
            any_limited.store(true, Ordering::Relaxed);
        }
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..cfg.threads)
                .map(|_| scope.spawn(|| run_worker(&shared)))
                .collect();
            for h in handles {
                if h.join().expect("search worker panicked") {
                    any_limited.store(true, Ordering::Relaxed);
                }
            }
        });
    }

    let (value, witness) = shared.witness.into_inner().unwrap();
    let witness = witness.unwrap_or_else(|| VectorFamily::new(m).expect("valid length"));
    // witness soundness is asserted here, not left to tests
    assert_eq!(witness.size(), value, "best witness out of sync with value");
    assert!(witness.iter().all(|v| v.weight() == w), "witness vector of wrong weight");
    assert!(is_admissible(&witness), "search produced an inadmissible family");
    FMaxOutcome {
        value,
        witness,
        exact: !any_limited.load(Ordering::Relaxed),
        nodes: shared.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    }
}
