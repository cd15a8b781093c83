//! Exact minimum-length search for a requirement matrix.
//!
//! Rows are assigned words one at a time. Two symmetries are always
//! factored out:
//!
//! * translation: the first row gets the all-zero word;
//! * coordinate permutation: coordinates on which all assigned words agree
//!   form a class, and a new word is described only by how many ones it puts
//!   in each class.
//!
//! With [`SearchOptions::interchangeable_rows`], rows that can be swapped
//! without changing the matrix are additionally ordered by their class counts.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use log::{debug, trace};
use rayon::prelude::*;

use crate::bitcore::{BitWord, Code, DistanceMatrix};
use crate::bounds::plotkin_irregular;
use crate::codegen::SearchBudget;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Order words of interchangeable rows. Off by default.
    pub interchangeable_rows: bool,
    /// Split the second row's choices across threads. The result equals the
    /// sequential one.
    pub parallel: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExhaustReason {
    MaxLength,
    MaxNodes,
    TimeLimit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// `length` is optimal and `code` satisfies the matrix.
    Proven { length: usize, code: Code, nodes: u64 },
    /// Every length below `lower_bound` was ruled out before the budget ran out.
    BudgetExhausted { lower_bound: usize, reason: ExhaustReason, nodes: u64 },
}

impl SearchOutcome {
    pub fn proven_length(&self) -> Option<usize> {
        match self {
            SearchOutcome::Proven { length, .. } => Some(*length),
            SearchOutcome::BudgetExhausted { .. } => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Proven { nodes, .. } | SearchOutcome::BudgetExhausted { nodes, .. } => *nodes,
        }
    }
}

/// Smallest `r` admitting a code that satisfies `d`, with default options.
pub fn exact_min_length(d: &DistanceMatrix, budget: &SearchBudget) -> Result<SearchOutcome> {
    exact_min_length_with(d, budget, &SearchOptions::default())
}

pub fn exact_min_length_with(d: &DistanceMatrix, budget: &SearchBudget, opts: &SearchOptions) -> Result<SearchOutcome> {
    budget.validate()?;
    let m = d.dim();
    if m > 64 {
        return Err(Error::TooLarge(format!("exact search over {m} rows (at most 64)")));
    }
    if m <= 1 {
        let code = Code::with_word_len(0, vec![BitWord::zeros(0); m])?;
        return Ok(SearchOutcome::Proven { length: 0, code, nodes: 0 });
    }
    let plan = Plan::new(d, opts.interchangeable_rows);
    let counter =
        Counter { nodes: AtomicU64::new(0), max_nodes: budget.max_nodes, deadline: Instant::now() + budget.time_limit };
    let start = (plotkin_irregular(d).integer_value.max(0) as usize).max(d.max_entry() as usize);
    for r in start..=budget.max_length {
        debug!("length={r} nodes={} start", counter.count());
        let result = if opts.parallel { plan.search_parallel(r, &counter) } else { plan.search(r, &counter) };
        match result {
            Step::Found(classes) => {
                let code = plan.materialize(r, &classes);
                debug!("length={r} nodes={} found", counter.count());
                return Ok(SearchOutcome::Proven { length: r, code, nodes: counter.count() });
            }
            Step::NotFound => debug!("length={r} nodes={} infeasible", counter.count()),
            Step::Aborted(reason) => {
                debug!("length={r} nodes={} aborted={reason:?}", counter.count());
                return Ok(SearchOutcome::BudgetExhausted { lower_bound: r, reason, nodes: counter.count() });
            }
        }
    }
    Ok(SearchOutcome::BudgetExhausted {
        lower_bound: budget.max_length.max(start) + 1,
        reason: ExhaustReason::MaxLength,
        nodes: counter.count(),
    })
}

struct Counter {
    nodes: AtomicU64,
    max_nodes: u64,
    deadline: Instant,
}

impl Counter {
    fn count(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    fn tick(&self) -> Option<ExhaustReason> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.max_nodes {
            return Some(ExhaustReason::MaxNodes);
        }
        if n.is_multiple_of(256) && Instant::now() >= self.deadline {
            return Some(ExhaustReason::TimeLimit);
        }
        None
    }
}

/// Coordinates on which every assigned word agrees. Bit `q` of `pattern` is
/// the value of the word at position `q` on these coordinates; `anchor`
/// identifies the enclosing class when the current row chain started.
#[derive(Clone, Debug)]
struct Class {
    size: usize,
    pattern: u64,
    anchor: usize,
}

enum Step {
    Found(Vec<Class>),
    NotFound,
    Aborted(ExhaustReason),
}

struct Plan {
    /// `order[p]` is the matrix row assigned at position `p`.
    order: Vec<usize>,
    /// `req[p][q]` for `q < p`.
    req: Vec<Vec<u32>>,
    /// Position `p` continues a chain of interchangeable rows started before it.
    chained: Vec<bool>,
}

impl Plan {
    fn new(d: &DistanceMatrix, interchangeable: bool) -> Self {
        let m = d.dim();
        let group = if interchangeable { interchangeable_groups(d) } else { (0..m).collect() };
        // Most constrained first: maximize the requirements towards placed rows.
        let mut order = Vec::with_capacity(m);
        let mut placed = vec![false; m];
        while order.len() < m {
            let next = (0..m)
                .filter(|&i| !placed[i])
                .max_by_key(|&i| {
                    let towards: u64 = order.iter().map(|&q| u64::from(d.get(i, q))).sum();
                    (towards, d.row_sum(i), std::cmp::Reverse(i))
                })
                .expect("an unplaced row remains");
            let members: Vec<usize> = (0..m).filter(|&i| !placed[i] && group[i] == group[next]).collect();
            for i in members {
                placed[i] = true;
                order.push(i);
            }
        }
        let req = (0..m).map(|p| (0..p).map(|q| d.get(order[p], order[q])).collect()).collect();
        let chained = (0..m).map(|p| p >= 2 && group[order[p]] == group[order[p - 1]]).collect();
        Plan { order, req, chained }
    }

    fn root(r: usize) -> Vec<Class> {
        if r == 0 {
            Vec::new()
        } else {
            vec![Class { size: r, pattern: 0, anchor: 0 }]
        }
    }

    fn search(&self, r: usize, counter: &Counter) -> Step {
        self.place(1, Self::root(r), &[], counter, None)
    }

    /// Runs each choice for the second row on its own thread. The lowest
    /// successful branch wins, which is what the sequential search returns.
    fn search_parallel(&self, r: usize, counter: &Counter) -> Step {
        if self.order.len() < 3 || r == 0 {
            return self.search(r, counter);
        }
        let found_at = AtomicUsize::new(usize::MAX);
        let results: Vec<Step> = (0..=r)
            .into_par_iter()
            .map(|a| {
                if a < self.req[1][0] as usize {
                    return Step::NotFound;
                }
                let classes = split(&Self::root(r), &[a], 1);
                let step = self.place(2, classes, &[a], counter, Some((&found_at, a)));
                if matches!(step, Step::Found(_)) {
                    found_at.fetch_min(a, Ordering::Relaxed);
                }
                step
            })
            .collect();
        let mut aborted = None;
        for step in results {
            match step {
                Step::Found(c) => return Step::Found(c),
                Step::Aborted(reason) => {
                    aborted.get_or_insert(reason);
                }
                Step::NotFound => {}
            }
        }
        aborted.map_or(Step::NotFound, Step::Aborted)
    }

    fn place(
        &self,
        p: usize,
        mut classes: Vec<Class>,
        prev_coarse: &[usize],
        counter: &Counter,
        branch: Option<(&AtomicUsize, usize)>,
    ) -> Step {
        if p == self.order.len() {
            return Step::Found(classes);
        }
        if let Some(reason) = counter.tick() {
            return Step::Aborted(reason);
        }
        if let Some((found_at, mine)) = branch {
            if found_at.load(Ordering::Relaxed) < mine {
                return Step::NotFound;
            }
        }
        let chained = self.chained[p];
        if !chained {
            for (i, c) in classes.iter_mut().enumerate() {
                c.anchor = i;
            }
        }
        let anchors = if chained { prev_coarse.len() } else { classes.len() };
        let mut ctx = Enumeration {
            plan: self,
            p,
            classes: &classes,
            counts: vec![0; classes.len()],
            dist: vec![0; p],
            prev_coarse: chained.then_some(prev_coarse),
            anchors,
            counter,
            branch,
        };
        let remaining = classes.iter().map(|c| c.size).sum();
        let step = ctx.assign(0, remaining);
        if matches!(step, Step::NotFound) && p <= 2 {
            trace!("depth={p} nodes={} backtrack=exhausted", counter.count());
        }
        step
    }

    fn materialize(&self, r: usize, classes: &[Class]) -> Code {
        let m = self.order.len();
        let mut words = vec![BitWord::zeros(r); m];
        for p in 0..m {
            let bits = classes.iter().flat_map(|c| std::iter::repeat_n((c.pattern >> p) & 1 == 1, c.size));
            words[self.order[p]] = BitWord::from_bits(bits);
        }
        Code::with_word_len(r, words).expect("all words have length r")
    }
}

struct Enumeration<'a> {
    plan: &'a Plan,
    p: usize,
    classes: &'a [Class],
    counts: Vec<usize>,
    dist: Vec<usize>,
    prev_coarse: Option<&'a [usize]>,
    anchors: usize,
    counter: &'a Counter,
    branch: Option<(&'a AtomicUsize, usize)>,
}

impl Enumeration<'_> {
    /// Chooses the number of ones in classes `c..`, with `remaining`
    /// coordinates left in those classes.
    fn assign(&mut self, c: usize, remaining: usize) -> Step {
        let req = &self.plan.req[self.p];
        if c == self.classes.len() {
            let coarse = self.coarse();
            if let Some(prev) = self.prev_coarse {
                if coarse.as_slice() > prev {
                    return Step::NotFound;
                }
            }
            let children = split(self.classes, &self.counts, self.p);
            return self.plan.place(self.p + 1, children, &coarse, self.counter, self.branch);
        }
        let class = &self.classes[c];
        let rest = remaining - class.size;
        for a in 0..=class.size {
            let mut feasible = true;
            for (q, d) in self.dist.iter_mut().enumerate() {
                *d += if (class.pattern >> q) & 1 == 1 { class.size - a } else { a };
                feasible &= *d + rest >= req[q] as usize;
            }
            if feasible {
                self.counts[c] = a;
                match self.assign(c + 1, rest) {
                    Step::NotFound => {}
                    done => {
                        self.undo(class, a);
                        return done;
                    }
                }
            }
            self.undo(class, a);
        }
        Step::NotFound
    }

    fn undo(&mut self, class: &Class, a: usize) {
        for (q, d) in self.dist.iter_mut().enumerate() {
            *d -= if (class.pattern >> q) & 1 == 1 { class.size - a } else { a };
        }
    }

    /// Ones per anchor class. At a chain start every class is its own anchor.
    fn coarse(&self) -> Vec<usize> {
        let mut coarse = vec![0; self.anchors];
        for (class, &a) in self.classes.iter().zip(&self.counts) {
            coarse[class.anchor] += a;
        }
        coarse
    }
}

/// Splits each class into the coordinates where the word at position `p` is
/// one (first) and zero.
fn split(classes: &[Class], counts: &[usize], p: usize) -> Vec<Class> {
    let mut out = Vec::with_capacity(classes.len() * 2);
    for (c, &a) in classes.iter().zip(counts) {
        if a > 0 {
            out.push(Class { size: a, pattern: c.pattern | 1 << p, anchor: c.anchor });
        }
        if c.size > a {
            out.push(Class { size: c.size - a, pattern: c.pattern, anchor: c.anchor });
        }
    }
    out
}

/// Group id per row; rows share a group when swapping them leaves the matrix unchanged.
fn interchangeable_groups(d: &DistanceMatrix) -> Vec<usize> {
    let m = d.dim();
    let mut group: Vec<usize> = (0..m).collect();
    for i in 0..m {
        if group[i] != i {
            continue;
        }
        for j in i + 1..m {
            if group[j] == j && (0..m).filter(|&x| x != i && x != j).all(|x| d.get(i, x) == d.get(j, x)) {
                group[j] = i;
            }
        }
    }
    group
}
