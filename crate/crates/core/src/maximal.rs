//! Maximal intervals (prime implicants) of a truth table and the reduced
//! disjunctive normal form built from them.
//!
//! An interval is maximal for `f` when all of its vertices are 1 and every
//! neighbor interval contains at least one 0 vertex, so no coordinate can be
//! freed. Three independent enumerators are provided and cross-checked:
//!
//! * [`enumerate_bruteforce`] tests each of the `3^n` intervals with explicit
//!   vertex loops (the reference definition, capped at `n <= 12`);
//! * [`enumerate_fast`] runs a dynamic program over the ternary cube that
//!   computes the all-ones predicate for every interval in `O(3^n)` cell
//!   operations, then filters maximal ones;
//! * [`blake_consensus`] saturates the minterm form under consensus and
//!   absorption.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::cube::{count_intervals, Interval};
use crate::error::{RdnfError, Result};
use crate::truth_table::TruthTable;

/// Cap for the brute-force reference enumerator.
pub const N_MAX_BRUTE: usize = 12;

/// Per-dimension counts of maximal intervals: entry `k` is `r_k(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    n: usize,
    counts: Vec<u64>,
}

impl Spectrum {
    pub fn new(n: usize, counts: Vec<u64>) -> Self {
        assert_eq!(counts.len(), n + 1);
        Spectrum { n, counts }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of terms of the reduced d.n.f.
    pub fn complexity(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// The set of all maximal intervals of a function, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedDnf {
    n: usize,
    intervals: Vec<Interval>,
}

impl ReducedDnf {
    fn from_intervals(n: usize, mut intervals: Vec<Interval>) -> Self {
        intervals.sort_by_key(|iv| (iv.fixed_mask(), iv.values_mask()));
        intervals.dedup();
        ReducedDnf { n, intervals }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn spectrum(&self) -> Spectrum {
        let mut counts = vec![0u64; self.n + 1];
        for iv in &self.intervals {
            counts[iv.dimension()] += 1;
        }
        Spectrum::new(self.n, counts)
    }

    /// Ternary strings, lexicographically sorted ('-' < '0' < '1').
    pub fn ternary_lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self.intervals.iter().map(Interval::to_string).collect();
        lines.sort();
        lines
    }

    /// Formula text with the given variable names, terms sorted by
    /// (dimension, ternary string). The empty form renders as "0", the full
    /// cube as "1".
    pub fn render(&self, names: &[&str]) -> Result<String> {
        if names.len() != self.n {
            return Err(RdnfError::NameCount {
                expected: self.n,
                found: names.len(),
            });
        }
        if self.intervals.is_empty() {
            return Ok("0".to_string());
        }
        let mut keyed: Vec<(usize, String, &Interval)> = self
            .intervals
            .iter()
            .map(|iv| (iv.dimension(), iv.to_string(), iv))
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let terms: Vec<String> = keyed
            .iter()
            .map(|(_, _, iv)| {
                if iv.rank() == 0 {
                    return "1".to_string();
                }
                let mut lits = Vec::with_capacity(iv.rank());
                for j in 0..self.n {
                    if iv.fixed_mask() >> j & 1 == 1 {
                        if iv.values_mask() >> j & 1 == 1 {
                            lits.push(names[j].to_string());
                        } else {
                            lits.push(format!("\u{ac}{}", names[j]));
                        }
                    }
                }
                lits.join("\u{2227}")
            })
            .collect();
        Ok(terms.join(" \u{2228} "))
    }
}

#[inline]
fn check_same_dim(f: &TruthTable, iv: &Interval) -> Result<()> {
    if f.dimension() != iv.dimension_ambient() {
        return Err(RdnfError::DimensionMismatch {
            left: f.dimension(),
            right: iv.dimension_ambient(),
        });
    }
    Ok(())
}

/// Decides maximality of one interval directly from the definition: no 0
/// vertex inside, at least one 1 vertex inside, and every neighbor interval
/// contains a 0 vertex.
pub fn is_maximal(f: &TruthTable, iv: &Interval) -> Result<bool> {
    check_same_dim(f, iv)?;
    let fixed = iv.fixed_mask();
    let values = iv.values_mask();
    // alpha: no zero vertices; gamma: some one vertex. For fully defined
    // tables alpha implies gamma, but gamma stays a separate predicate.
    let alpha = f.all_ones_on_masks(fixed, values);
    let gamma = alpha;
    if !(alpha && gamma) {
        return Ok(false);
    }
    // beta: each neighbor has at least one zero vertex
    let mut m = fixed;
    while m != 0 {
        let bit = m & m.wrapping_neg();
        if f.all_ones_on_masks(fixed, values ^ bit) {
            return Ok(false);
        }
        m &= !bit;
    }
    Ok(true)
}

/// Reference enumerator: tests every one of the `3^n` intervals with explicit
/// vertex loops. Capped at `n <= 12`.
pub fn enumerate_bruteforce(f: &TruthTable) -> Result<ReducedDnf> {
    let n = f.dimension();
    if n > N_MAX_BRUTE {
        return Err(RdnfError::DimensionCap {
            n,
            max: N_MAX_BRUTE,
        });
    }
    let full = (1u32 << n) - 1;
    let mut found = Vec::new();
    for fixed in 0..=full {
        // all value assignments on the fixed positions, ascending
        let mut values = 0u32;
        loop {
            let iv = Interval::new(n, fixed, values)?;
            if is_maximal(f, &iv)? {
                found.push(iv);
            }
            values = ((values | !fixed).wrapping_add(1)) & fixed;
            if values == 0 {
                break;
            }
        }
    }
    Ok(ReducedDnf::from_intervals(n, found))
}

/// Dynamic program over the ternary cube, reusable across calls.
///
/// Cell `t` (mixed radix, digit `j` of weight `3^j`) holds 1 iff the interval
/// with digits 0/1 = fixed value and 2 = free coordinate is all-ones. A cell
/// with a free digit is the AND of its two children on that coordinate; cells
/// are filled grouped by their highest free digit so children are always
/// final before being read.
pub(crate) struct FastEnumerator {
    n: usize,
    pow3: Vec<usize>,
    table: Vec<u8>,
}

impl FastEnumerator {
    pub(crate) fn new(n: usize) -> Self {
        let mut pow3 = vec![1usize; n + 1];
        for j in 1..=n {
            pow3[j] = pow3[j - 1] * 3;
        }
        let table = vec![0u8; pow3[n]];
        FastEnumerator { n, pow3, table }
    }

    /// Base-3 spread of a bit mask: bit `i` becomes digit `i`.
    #[inline]
    fn spread3(&self, mut bits: usize) -> usize {
        let mut out = 0;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out += self.pow3[i];
            bits &= bits - 1;
        }
        out
    }

    fn fill(&mut self, f: &TruthTable) {
        let n = self.n;
        for v in 0..1usize << n {
            let t = self.spread3(v);
            self.table[t] = u8::from(f.get(v as u32));
        }
        for j in 0..n {
            let stride = self.pow3[j];
            for b in 0..1usize << (n - 1 - j) {
                let hi = self.spread3(b) * self.pow3[j + 1];
                let (src, dst) = self.table[hi..hi + 3 * stride].split_at_mut(2 * stride);
                for lo in 0..stride {
                    dst[lo] = src[lo] & src[stride + lo];
                }
            }
        }
    }

    /// Runs the DP and reports every maximal interval as
    /// `(dimension, fixed mask, values mask)`.
    pub(crate) fn run<S: FnMut(usize, u32, u32)>(&mut self, f: &TruthTable, mut sink: S) {
        assert_eq!(f.dimension(), self.n);
        self.fill(f);
        let n = self.n;
        let len = self.table.len();
        let visit = |table: &[u8], t: usize, sink: &mut S| {
            let mut tt = t;
            let (mut fixed, mut values) = (0u32, 0u32);
            let mut k = 0usize;
            for j in 0..n {
                let d = tt % 3;
                tt /= 3;
                match d {
                    0 => fixed |= 1 << j,
                    1 => {
                        fixed |= 1 << j;
                        values |= 1 << j;
                        // neighbor with this coordinate flipped to 0
                        if table[t - self.pow3[j]] != 0 {
                            return;
                        }
                        continue;
                    }
                    _ => {
                        k += 1;
                        continue;
                    }
                }
                if table[t + self.pow3[j]] != 0 {
                    return;
                }
            }
            sink(k, fixed, values);
        };
        // the table is sparse for random functions; skip zero bytes a word
        // at a time
        let chunks = len / 8;
        for c in 0..chunks {
            let base = c * 8;
            let word = u64::from_ne_bytes(self.table[base..base + 8].try_into().unwrap());
            if word == 0 {
                continue;
            }
            for o in 0..8 {
                if self.table[base + o] != 0 {
                    visit(&self.table, base + o, &mut sink);
                }
            }
        }
        for t in chunks * 8..len {
            if self.table[t] != 0 {
                visit(&self.table, t, &mut sink);
            }
        }
    }

    /// Adds this function's spectrum into `counts` (length `n + 1`).
    pub(crate) fn accumulate_spectrum(&mut self, f: &TruthTable, counts: &mut [u64]) {
        self.run(f, |k, _, _| counts[k] += 1);
    }
}

/// Bit-parallel enumerator: identical result set to [`enumerate_bruteforce`],
/// in `O(3^n)` table operations.
pub fn enumerate_fast(f: &TruthTable) -> Result<ReducedDnf> {
    let n = f.dimension();
    let mut dp = FastEnumerator::new(n);
    let mut found = Vec::new();
    dp.run(f, |_, fixed, values| {
        found.push(Interval::new(n, fixed, values).expect("masks from DP are valid"));
    });
    Ok(ReducedDnf::from_intervals(n, found))
}

/// Consensus of two terms: defined when they conflict in exactly one common
/// fixed coordinate; that coordinate is freed and the remaining literals
/// merge.
#[inline]
fn consensus(a: (u32, u32), b: (u32, u32)) -> Option<(u32, u32)> {
    let conflict = (a.1 ^ b.1) & a.0 & b.0;
    if conflict.count_ones() != 1 {
        return None;
    }
    let fixed = (a.0 | b.0) & !conflict;
    Some((fixed, (a.1 | b.1) & fixed))
}

/// `a` absorbs `b` when every literal of `a` appears in `b`.
#[inline]
fn absorbs(a: (u32, u32), b: (u32, u32)) -> bool {
    a.0 & !b.0 == 0 && b.1 & a.0 == a.1
}

/// Iterated consensus plus eager absorption, starting from the minterm form.
/// The fixed point is the set of all maximal intervals. Terms are processed
/// through a worklist ordered by ascending rank.
pub fn blake_consensus(f: &TruthTable) -> Result<ReducedDnf> {
    let n = f.dimension();
    let full = (1u32 << n) - 1;

    let key = |t: (u32, u32)| (u64::from(t.0) << 32) | u64::from(t.1);
    let mut alive: Vec<(u32, u32)> = Vec::new();
    let mut dead: Vec<bool> = Vec::new();
    let mut id: HashMap<u64, usize> = HashMap::new();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut queue: BinaryHeap<Reverse<(u32, u32, u32)>> = BinaryHeap::new();

    let add = |t: (u32, u32),
               alive: &mut Vec<(u32, u32)>,
               dead: &mut Vec<bool>,
               id: &mut HashMap<u64, usize>,
               queue: &mut BinaryHeap<Reverse<(u32, u32, u32)>>| {
        id.insert(key(t), alive.len());
        alive.push(t);
        dead.push(false);
        queue.push(Reverse((t.0.count_ones(), t.0, t.1)));
    };

    for v in 0..1u32 << n {
        if f.get(v) {
            let t = (full, v);
            seen.insert(key(t));
            add(t, &mut alive, &mut dead, &mut id, &mut queue);
        }
    }

    let mut dead_count = 0usize;
    while let Some(Reverse((_, fixed, values))) = queue.pop() {
        let t = (fixed, values);
        // absorbed while waiting: its consensus products are covered by the
        // absorber's, which is or was queued itself
        let Some(&ti) = id.get(&key(t)) else {
            continue;
        };
        if dead[ti] {
            continue;
        }
        // keep the scan lists short once absorption has killed most entries
        let ti = if dead_count * 2 > alive.len() {
            let mut kept = Vec::with_capacity(alive.len() - dead_count);
            id.clear();
            for (i, &s) in alive.iter().enumerate() {
                if !dead[i] {
                    id.insert(key(s), kept.len());
                    kept.push(s);
                }
            }
            alive = kept;
            dead = vec![false; alive.len()];
            dead_count = 0;
            id[&key(t)]
        } else {
            ti
        };
        let snapshot = alive.len();
        for si in 0..snapshot {
            if dead[ti] {
                break;
            }
            if dead[si] || si == ti {
                continue;
            }
            let Some(c) = consensus(t, alive[si]) else {
                continue;
            };
            if !seen.insert(key(c)) {
                continue;
            }
            let mut absorbed = false;
            let mut kills = Vec::new();
            for (i, &s) in alive.iter().enumerate() {
                if dead[i] {
                    continue;
                }
                if absorbs(s, c) {
                    absorbed = true;
                    break;
                }
                if absorbs(c, s) {
                    kills.push(i);
                }
            }
            if absorbed {
                continue;
            }
            dead_count += kills.len();
            for i in kills {
                dead[i] = true;
            }
            add(c, &mut alive, &mut dead, &mut id, &mut queue);
        }
    }

    let found = alive
        .iter()
        .zip(&dead)
        .filter(|(_, &d)| !d)
        .map(|(&(fx, vl), _)| Interval::new(n, fx, vl).expect("consensus masks are valid"))
        .collect();
    Ok(ReducedDnf::from_intervals(n, found))
}

/// Per-dimension counts of maximal intervals via the fast enumerator.
pub fn spectrum(f: &TruthTable) -> Result<Spectrum> {
    let n = f.dimension();
    let mut counts = vec![0u64; n + 1];
    FastEnumerator::new(n).accumulate_spectrum(f, &mut counts);
    Ok(Spectrum::new(n, counts))
}

/// Number of terms of the reduced d.n.f.
pub fn rdnf_complexity(f: &TruthTable) -> Result<u64> {
    Ok(spectrum(f)?.complexity())
}

/// Debug-grade sanity: spectrum entries can never exceed the number of
/// intervals of that dimension.
pub fn spectrum_within_bounds(s: &Spectrum) -> bool {
    (0..=s.dimension()).all(|k| {
        count_intervals(s.dimension(), k)
            .map(|c| u128::from(s.counts()[k]) <= c)
            .unwrap_or(false)
    })
}
