//! The stack-sorting map, fertility by exhaustive preimage search, and the
//! uniquely-sorted test.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::chc::build_chc;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default length cap for single-permutation preimage sweeps.
pub const DEFAULT_FERTILITY_LIMIT: usize = 12;
/// Default length cap for whole-S_n fertility histograms.
pub const DEFAULT_HISTOGRAM_LIMIT: usize = 11;

/// Applies the stack-sorting map: entries pass through a stack, and an
/// entry is popped whenever a larger one arrives. Equivalent to the
/// recursion s(LnR) = s(L)s(R)n.
pub fn stack_sort(pi: &Permutation) -> Permutation {
    let mut out = Vec::with_capacity(pi.len());
    let mut stack: Vec<u32> = Vec::with_capacity(pi.len());
    for &x in pi.entries() {
        while stack.last().is_some_and(|&t| t < x) {
            out.push(stack.pop().unwrap());
        }
        stack.push(x);
    }
    while let Some(t) = stack.pop() {
        out.push(t);
    }
    Permutation::new(out).expect("stack-sorting permutes the entries")
}

/// Runs the stack on `input` and compares the output against `target` as it
/// is produced, bailing out at the first mismatch.
fn stack_sorts_to(input: &[u32], target: &[u32], stack: &mut Vec<u32>) -> bool {
    stack.clear();
    let mut emitted = 0usize;
    for &x in input {
        while stack.last().is_some_and(|&t| t < x) {
            if stack.pop().unwrap() != target[emitted] {
                return false;
            }
            emitted += 1;
        }
        stack.push(x);
    }
    while let Some(t) = stack.pop() {
        if t != target[emitted] {
            return false;
        }
        emitted += 1;
    }
    true
}

/// Advances `a` to the next permutation in lexicographic order; returns
/// false when `a` was already the last one.
fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// The ordered-prefix work units for a parallel sweep of S_n: all length-2
/// prefixes (length ≤ 1 for small n), in lexicographic order.
fn sweep_prefixes(n: usize) -> Vec<Vec<u32>> {
    match n {
        0 => vec![vec![]],
        1 => vec![vec![1]],
        _ => {
            let mut out = Vec::with_capacity(n * (n - 1));
            for a in 1..=n as u32 {
                for b in 1..=n as u32 {
                    if a != b {
                        out.push(vec![a, b]);
                    }
                }
            }
            out
        }
    }
}

/// Visits every permutation of `{1..n}` starting with `prefix`, in
/// lexicographic order, reusing one buffer.
fn for_each_with_prefix<F: FnMut(&[u32])>(n: usize, prefix: &[u32], mut f: F) {
    let mut buf: Vec<u32> = prefix.to_vec();
    let mut rest: Vec<u32> = (1..=n as u32).filter(|v| !prefix.contains(v)).collect();
    buf.extend_from_slice(&rest);
    if rest.is_empty() {
        f(&buf);
        return;
    }
    loop {
        f(&buf);
        rest.copy_from_slice(&buf[prefix.len()..]);
        if !next_permutation(&mut rest) {
            return;
        }
        buf[prefix.len()..].copy_from_slice(&rest);
    }
}

fn check_limit(what: &'static str, limit: usize, requested: usize) -> Result<()> {
    if requested > limit {
        return Err(Error::ResourceLimit { what, limit, requested });
    }
    Ok(())
}

/// Number of preimages of `π` under the stack-sorting map, by a parallel
/// sweep of S_n.
pub fn fertility(pi: &Permutation) -> Result<u64> {
    fertility_limited(pi, DEFAULT_FERTILITY_LIMIT)
}

pub fn fertility_limited(pi: &Permutation, limit: usize) -> Result<u64> {
    let n = pi.len();
    check_limit("fertility sweep", limit, n)?;
    if n == 0 {
        return Ok(1);
    }
    let target = pi.entries().to_vec();
    let total = sweep_prefixes(n)
        .into_par_iter()
        .map(|prefix| {
            let mut stack = Vec::with_capacity(n);
            let mut count = 0u64;
            for_each_with_prefix(n, &prefix, |cand| {
                if stack_sorts_to(cand, &target, &mut stack) {
                    count += 1;
                }
            });
            count
        })
        .sum();
    Ok(total)
}

/// All preimages of `π`, in lexicographic order.
pub fn preimages(pi: &Permutation) -> Result<Vec<Permutation>> {
    preimages_limited(pi, DEFAULT_FERTILITY_LIMIT)
}

pub fn preimages_limited(pi: &Permutation, limit: usize) -> Result<Vec<Permutation>> {
    let n = pi.len();
    check_limit("preimage sweep", limit, n)?;
    if n == 0 {
        return Ok(vec![Permutation::empty()]);
    }
    let target = pi.entries().to_vec();
    // prefixes are visited in lexicographic order and each unit is itself
    // lexicographic, so concatenation preserves the global order
    let per_prefix: Vec<Vec<Permutation>> = sweep_prefixes(n)
        .into_par_iter()
        .map(|prefix| {
            let mut stack = Vec::with_capacity(n);
            let mut found = Vec::new();
            for_each_with_prefix(n, &prefix, |cand| {
                if stack_sorts_to(cand, &target, &mut stack) {
                    found.push(Permutation::new(cand.to_vec()).unwrap());
                }
            });
            found
        })
        .collect();
    Ok(per_prefix.into_iter().flatten().collect())
}

/// Packs a permutation of length ≤ 15 into a u64 key, 4 bits per entry.
fn pack(entries: &[u32]) -> u64 {
    debug_assert!(entries.len() <= 15);
    entries
        .iter()
        .fold(0u64, |acc, &v| (acc << 4) | (v as u64 - 1))
}

fn unpack(key: u64, n: usize) -> Permutation {
    let mut entries = vec![0u32; n];
    let mut k = key;
    for i in (0..n).rev() {
        entries[i] = (k & 0xf) as u32 + 1;
        k >>= 4;
    }
    Permutation::new(entries).expect("packed keys come from permutations")
}

/// Fertility of every permutation in S_n at once: apply the stack-sorting
/// map to all n! permutations and bucket by image.
pub struct FertilityHistogram {
    n: usize,
    counts: HashMap<u64, u64>,
}

impl FertilityHistogram {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Fertility of `π`; zero for permutations with no preimage.
    pub fn get(&self, pi: &Permutation) -> u64 {
        assert_eq!(pi.len(), self.n, "histogram is for S_{}", self.n);
        self.counts.get(&pack(pi.entries())).copied().unwrap_or(0)
    }

    /// Sum of all fertilities; always n!.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Number of distinct images, i.e. of sorted permutations in S_n.
    pub fn sorted_count(&self) -> usize {
        self.counts.len()
    }

    /// The permutations of fertility exactly 1, in lexicographic order.
    pub fn fixed_set(&self) -> Vec<Permutation> {
        let mut keys: Vec<u64> = self
            .counts
            .iter()
            .filter(|&(_, &c)| c == 1)
            .map(|(&k, _)| k)
            .collect();
        keys.sort_unstable();
        keys.into_iter().map(|k| unpack(k, self.n)).collect()
    }

    /// All (permutation, fertility) pairs in lexicographic order.
    pub fn entries(&self) -> Vec<(Permutation, u64)> {
        let mut keys: Vec<(u64, u64)> =
            self.counts.iter().map(|(&k, &c)| (k, c)).collect();
        keys.sort_unstable();
        keys.into_iter().map(|(k, c)| (unpack(k, self.n), c)).collect()
    }
}

pub fn fertility_histogram(n: usize) -> Result<FertilityHistogram> {
    fertility_histogram_limited(n, DEFAULT_HISTOGRAM_LIMIT)
}

pub fn fertility_histogram_limited(n: usize, limit: usize) -> Result<FertilityHistogram> {
    check_limit("fertility histogram", limit.min(15), n)?;
    if n == 0 {
        let mut counts = HashMap::new();
        counts.insert(0u64, 1u64);
        return Ok(FertilityHistogram { n, counts });
    }
    let maps: Vec<HashMap<u64, u64>> = sweep_prefixes(n)
        .into_par_iter()
        .map(|prefix| {
            let mut local: HashMap<u64, u64> = HashMap::new();
            let mut out = Vec::with_capacity(n);
            let mut stack: Vec<u32> = Vec::with_capacity(n);
            for_each_with_prefix(n, &prefix, |cand| {
                out.clear();
                stack.clear();
                for &x in cand {
                    while stack.last().is_some_and(|&t| t < x) {
                        out.push(stack.pop().unwrap());
                    }
                    stack.push(x);
                }
                while let Some(t) = stack.pop() {
                    out.push(t);
                }
                *local.entry(pack(&out)).or_insert(0) += 1;
            });
            local
        })
        .collect();
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for m in maps {
        for (k, c) in m {
            *counts.entry(k).or_insert(0) += c;
        }
    }
    Ok(FertilityHistogram { n, counts })
}

/// Tests unique sortedness structurally: odd length, exactly (n−1)/2
/// descents, and a canonical hook configuration exists.
pub fn is_uniquely_sorted(pi: &Permutation) -> bool {
    let n = pi.len();
    if n % 2 == 0 {
        return false;
    }
    pi.descents().len() == (n - 1) / 2 && build_chc(pi).is_some()
}
