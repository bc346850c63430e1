//! Classical value assignments on a context hypergraph.
//!
//! Two families are enumerated exhaustively:
//!
//! * admissible two-valued `{0,1}` states, by backtracking over contexts;
//! * all `2^N` assignments `aᵢ ∈ {−1, +1}`, packed as a bitmask (bit `i` set
//!   means `aᵢ = −1`). A context product is then `(−1)^popcount(mask & ctx)`,
//!   and sweeps tally per-context products or sums into exact histograms.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::thread;

use thiserror::Error;

use crate::hypergraph::{ContextHypergraph, ObservableId};
use crate::linalg::Scalar;

/// Default sweep budget in bits (`2^24` assignments).
pub const DEFAULT_MAX_BITS: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("sweep over {bits} observables exceeds the budget of {max_bits} bits")]
    BudgetExceeded { bits: usize, max_bits: u32 },
    #[error("value {0} is outside [0, 1]")]
    ProbabilityDomain(String),
    #[error("scale {0} must be positive")]
    ScaleDomain(String),
}

/// `±1` assignment; bit `i` set means observable `i` takes the value −1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PmAssignment(pub u64);

impl PmAssignment {
    pub fn from_minus_ones(ids: impl IntoIterator<Item = ObservableId>) -> Self {
        PmAssignment(ids.into_iter().fold(0, |m, id| m | (1 << id.0)))
    }

    pub fn value(&self, id: ObservableId) -> i64 {
        if self.0 >> id.0 & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn minus_ones(&self) -> impl Iterator<Item = ObservableId> + '_ {
        (0..64).filter(|i| self.0 >> i & 1 == 1).map(ObservableId)
    }

    /// `Σᵢ aᵢ` over the first `n` observables.
    pub fn total(&self, n: usize) -> i64 {
        n as i64 - 2 * self.0.count_ones() as i64
    }
}

/// A noncontextual two-valued state: exactly one observable per context
/// takes the value 1, and each observable has a single value everywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TwoValuedState {
    /// The 1-valued member of each context, in context order.
    pub chosen: Vec<ObservableId>,
}

impl TwoValuedState {
    /// Distinct observables with value 1, ascending.
    pub fn ones(&self) -> Vec<ObservableId> {
        let mut ones = self.chosen.clone();
        ones.sort();
        ones.dedup();
        ones
    }
}

/// Exact count of each sum over a sweep, with the lowest bitmask reaching the
/// minimum and the maximum.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SumHistogram {
    counts: BTreeMap<i64, u64>,
    total: u64,
    min: Option<(i64, PmAssignment)>,
    max: Option<(i64, PmAssignment)>,
}

impl SumHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, sum: i64, assignment: PmAssignment) {
        *self.counts.entry(sum).or_insert(0) += 1;
        self.total += 1;
        self.note_extrema(sum, assignment);
    }

    fn note_extrema(&mut self, sum: i64, witness: PmAssignment) {
        match self.min {
            Some((v, w)) if v < sum || (v == sum && w <= witness) => {}
            _ => self.min = Some((sum, witness)),
        }
        match self.max {
            Some((v, w)) if v > sum || (v == sum && w <= witness) => {}
            _ => self.max = Some((sum, witness)),
        }
    }

    /// Associative, commutative merge of partial sweeps.
    pub fn merge(&mut self, other: &SumHistogram) {
        for (&sum, &count) in &other.counts {
            *self.counts.entry(sum).or_insert(0) += count;
        }
        self.total += other.total;
        for (sum, witness) in [other.min, other.max].into_iter().flatten() {
            self.note_extrema(sum, witness);
        }
    }

    pub fn count(&self, sum: i64) -> u64 {
        self.counts.get(&sum).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<i64, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn min(&self) -> Option<(i64, PmAssignment)> {
        self.min
    }

    pub fn max(&self) -> Option<(i64, PmAssignment)> {
        self.max
    }

    /// `sum,count` CSV, rows ascending by sum.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sum,count\n");
        for (sum, count) in &self.counts {
            writeln!(out, "{sum},{count}").unwrap();
        }
        out
    }
}

/// All two-valued states, in the order the backtracking search finds them.
///
/// Contexts are visited in order; an unresolved context branches over its
/// undecided members. Choosing an observable forces every co-member of every
/// context containing it to 0, and a context whose members are all 0 prunes
/// the branch.
pub fn enumerate_two_valued_states(h: &ContextHypergraph) -> Vec<TwoValuedState> {
    let n = h.num_observables();
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, c) in h.contexts().iter().enumerate() {
        for m in &c.members {
            containing[m.0].push(j);
        }
    }
    let mut search = StateSearch {
        h,
        containing,
        values: vec![None; n],
        trail: Vec::new(),
        chosen: Vec::with_capacity(h.contexts().len()),
        found: Vec::new(),
    };
    search.descend(0);
    search.found
}

struct StateSearch<'a> {
    h: &'a ContextHypergraph,
    containing: Vec<Vec<usize>>,
    values: Vec<Option<bool>>,
    trail: Vec<usize>,
    chosen: Vec<ObservableId>,
    found: Vec<TwoValuedState>,
}

impl StateSearch<'_> {
    fn descend(&mut self, j: usize) {
        let contexts = self.h.contexts();
        if j == contexts.len() {
            self.found.push(TwoValuedState { chosen: self.chosen.clone() });
            return;
        }
        let members = &contexts[j].members;
        if let Some(&one) = members.iter().find(|m| self.values[m.0] == Some(true)) {
            self.chosen.push(one);
            self.descend(j + 1);
            self.chosen.pop();
            return;
        }
        for &m in members {
            if self.values[m.0].is_some() {
                continue;
            }
            let mark = self.trail.len();
            if self.assign_one(m) {
                self.chosen.push(m);
                self.descend(j + 1);
                self.chosen.pop();
            }
            while self.trail.len() > mark {
                let i = self.trail.pop().unwrap();
                self.values[i] = None;
            }
        }
    }

    fn set(&mut self, i: usize, value: bool) -> bool {
        match self.values[i] {
            Some(v) => v == value,
            None => {
                self.values[i] = Some(value);
                self.trail.push(i);
                true
            }
        }
    }

    fn assign_one(&mut self, m: ObservableId) -> bool {
        if !self.set(m.0, true) {
            return false;
        }
        let contexts = self.h.contexts();
        for k in 0..self.containing[m.0].len() {
            let j = self.containing[m.0][k];
            for &other in &contexts[j].members {
                if other != m && !self.set(other.0, false) {
                    return false;
                }
            }
        }
        // every context still needs a member that can be 1
        contexts.iter().all(|c| c.members.iter().any(|x| self.values[x.0] != Some(false)))
    }
}

/// The `±1` image of a two-valued state: value 1 maps to −1, value 0 to +1.
pub fn pm_from_two_valued(state: &TwoValuedState) -> PmAssignment {
    PmAssignment::from_minus_ones(state.chosen.iter().copied())
}

/// `Σ_j ∏_{i∈C_j} aᵢ` from precomputed context masks.
#[inline]
pub fn product_sum_masks(a: PmAssignment, masks: &[u64]) -> i64 {
    masks.iter().map(|&m| 1 - 2 * ((a.0 & m).count_ones() & 1) as i64).sum()
}

pub fn product_sum(a: PmAssignment, h: &ContextHypergraph) -> i64 {
    product_sum_masks(a, &h.context_masks())
}

/// `Σ_j Σ_{i∈C_j} aᵢ` from precomputed context masks.
#[inline]
pub fn additive_sum_masks(a: PmAssignment, masks: &[u64]) -> i64 {
    masks.iter().map(|&m| m.count_ones() as i64 - 2 * (a.0 & m).count_ones() as i64).sum()
}

pub fn additive_sum(a: PmAssignment, h: &ContextHypergraph) -> i64 {
    additive_sum_masks(a, &h.context_masks())
}

/// Sweep configuration: bit budget and number of counter partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    pub max_bits: u32,
    pub jobs: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { max_bits: DEFAULT_MAX_BITS, jobs: 1 }
    }
}

fn check_budget(h: &ContextHypergraph, options: SweepOptions) -> Result<u32, EnumerationError> {
    let bits = h.num_observables();
    if bits > options.max_bits as usize || bits > 63 {
        return Err(EnumerationError::BudgetExceeded { bits, max_bits: options.max_bits });
    }
    Ok(bits as u32)
}

/// Tallies `eval` over every bitmask in `0..2^bits`, split into `jobs`
/// contiguous ranges. The result does not depend on `jobs`.
fn sweep<F>(bits: u32, jobs: usize, eval: F) -> SumHistogram
where
    F: Fn(u64) -> i64 + Sync,
{
    let end = 1u64 << bits;
    let jobs = (jobs.max(1) as u64).min(end);
    let chunk = end.div_ceil(jobs);
    let eval = &eval;
    let run = move |lo: u64, hi: u64| {
        let mut hist = SumHistogram::new();
        for mask in lo..hi {
            hist.record(eval(mask), PmAssignment(mask));
        }
        hist
    };
    if jobs == 1 {
        return run(0, end);
    }
    thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|k| {
                let lo = k * chunk;
                let hi = (lo + chunk).min(end);
                scope.spawn(move || run(lo, hi))
            })
            .collect();
        let mut total = SumHistogram::new();
        for handle in handles {
            total.merge(&handle.join().expect("sweep worker panicked"));
        }
        total
    })
}

/// Histogram of [`product_sum`] over all `2^N` assignments.
pub fn product_sum_histogram(h: &ContextHypergraph, options: SweepOptions) -> Result<SumHistogram, EnumerationError> {
    let bits = check_budget(h, options)?;
    let masks = h.context_masks();
    Ok(sweep(bits, options.jobs, |m| product_sum_masks(PmAssignment(m), &masks)))
}

/// Histogram of [`additive_sum`] over all `2^N` assignments.
///
/// The sweep also checks `additive_sum = Σᵢ degᵢ·aᵢ` on every assignment,
/// which for a bi-connected hypergraph is `2·Σᵢ aᵢ`.
pub fn additive_histogram(h: &ContextHypergraph, options: SweepOptions) -> Result<SumHistogram, EnumerationError> {
    let bits = check_budget(h, options)?;
    let masks = h.context_masks();
    let degrees: Vec<i64> = h.occurrence_degrees().iter().map(|&d| d as i64).collect();
    let degree_total: i64 = degrees.iter().sum();
    let regular = degrees.windows(2).all(|w| w[0] == w[1]).then(|| degrees.first().copied().unwrap_or(0));
    Ok(sweep(bits, options.jobs, |m| {
        let sum = additive_sum_masks(PmAssignment(m), &masks);
        let weighted = match regular {
            Some(k) => k * PmAssignment(m).total(degrees.len()),
            None => {
                let minus: i64 = degrees.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, d)| d).sum();
                degree_total - 2 * minus
            }
        };
        assert_eq!(sum, weighted, "additive sum disagrees with the degree-weighted total at {m:#x}");
        sum
    }))
}

/// The affine map `p ↦ a(2p − 1)` from a probability to a dichotomic
/// expectation in `[−a, a]`.
pub fn probability_to_expectation<T: Scalar + PartialOrd>(p: T, a: T) -> Result<T, EnumerationError> {
    if p < T::zero() || p > T::one() {
        return Err(EnumerationError::ProbabilityDomain(p.to_string()));
    }
    if a <= T::zero() {
        return Err(EnumerationError::ScaleDomain(a.to_string()));
    }
    Ok(a * (T::from_i64(2) * p - T::one()))
}
