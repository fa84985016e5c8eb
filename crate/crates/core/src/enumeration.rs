//! Exhaustive generation of uniquely sorted pattern-avoiding classes and
//! the cross-check harness comparing sweeps against closed forms,
//! generating functions, and bijection images.
//!
//! Membership uses the descent-count characterization (sorted with exactly
//! (n−1)/2 descents), never fertility, so the fertility sweep remains an
//! independent oracle.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::bijections::MapVia;
use crate::chc;
use crate::error::{Error, Result};
use crate::paths::{self, Family};
use crate::perm::{PatternSet, Permutation};
use crate::series;

/// Largest permutation length swept by default.
pub const DEFAULT_ENUM_LIMIT: usize = 11;

/// All uniquely sorted permutations of length `n` avoiding every pattern in
/// `patterns`, in lexicographic order. `n` must be odd and within the
/// default limit.
pub fn enumerate_class(n: usize, patterns: &PatternSet) -> Result<Vec<Permutation>> {
    enumerate_class_limited(n, patterns, DEFAULT_ENUM_LIMIT)
}

/// As [`enumerate_class`], with an explicit length limit.
pub fn enumerate_class_limited(
    n: usize,
    patterns: &PatternSet,
    limit: usize,
) -> Result<Vec<Permutation>> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::InvalidInput(format!(
            "uniquely sorted permutations have odd length, got {n}"
        )));
    }
    if n > limit {
        return Err(Error::ResourceLimit {
            what: "class enumeration",
            limit,
            requested: n,
        });
    }
    let pats: Vec<Vec<u32>> = patterns.iter().map(|p| p.entries().to_vec()).collect();
    let search = Search {
        n,
        budget: (n - 1) / 2,
        pats: &pats,
    };
    if n < 6 {
        let mut out = Vec::new();
        if let Some(seed) = search.seed(&[]) {
            search.complete(seed, &mut out);
        }
        return Ok(out);
    }
    // parallel sweep partitioned by the first two entries; seeds are
    // visited in lexicographic order so the merged result stays sorted
    let mut seeds = Vec::new();
    for a in 1..=n as u32 {
        for b in 1..=n as u32 {
            if a != b {
                seeds.push([a, b]);
            }
        }
    }
    let chunks: Vec<Vec<Permutation>> = seeds
        .par_iter()
        .map(|pair| {
            let mut out = Vec::new();
            if let Some(seed) = search.seed(pair) {
                search.complete(seed, &mut out);
            }
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Number of class members at `n = 2k + 1`.
pub fn count_class(k: usize, patterns: &PatternSet, limit: usize) -> Result<i128> {
    Ok(enumerate_class_limited(2 * k + 1, patterns, limit)?.len() as i128)
}

struct Search<'a> {
    n: usize,
    budget: usize,
    pats: &'a [Vec<u32>],
}

#[derive(Clone)]
struct Partial {
    prefix: Vec<u32>,
    used: u64,
    descents: usize,
    ascents: usize,
}

impl Search<'_> {
    /// Validates a seed prefix entry by entry; `None` when it is pruned.
    fn seed(&self, entries: &[u32]) -> Option<Partial> {
        let mut partial = Partial {
            prefix: Vec::with_capacity(self.n),
            used: 0,
            descents: 0,
            ascents: 0,
        };
        for &v in entries {
            partial = self.extend(&partial, v)?;
        }
        Some(partial)
    }

    /// Tries to append `v`, returning the grown state unless a prune fires.
    fn extend(&self, partial: &Partial, v: u32) -> Option<Partial> {
        if partial.used >> v & 1 == 1 {
            return None;
        }
        let pos = partial.prefix.len() + 1;
        // every uniquely sorted permutation ends in its maximum
        if v == self.n as u32 && pos < self.n {
            return None;
        }
        let mut next = partial.clone();
        if let Some(&prev) = partial.prefix.last() {
            if prev > v {
                next.descents += 1;
            } else {
                next.ascents += 1;
            }
            // exactly (n−1)/2 of each adjacency kind in the end
            if next.descents > self.budget || next.ascents > self.budget {
                return None;
            }
        }
        next.prefix.push(v);
        next.used |= 1 << v;
        if self
            .pats
            .iter()
            .any(|p| occurrence_ending_at_last(&next.prefix, p))
        {
            return None;
        }
        Some(next)
    }

    fn complete(&self, partial: Partial, out: &mut Vec<Permutation>) {
        if partial.prefix.len() == self.n {
            debug_assert_eq!(partial.descents, self.budget);
            let q = Permutation::new(partial.prefix).expect("prefix is a permutation");
            if chc::build_chc(&q).is_some() {
                out.push(q);
            }
            return;
        }
        for v in 1..=self.n as u32 {
            if let Some(next) = self.extend(&partial, v) {
                self.complete(next, out);
            }
        }
    }
}

/// True iff `prefix` contains an occurrence of `pat` that ends at the final
/// entry of `prefix`.
fn occurrence_ending_at_last(prefix: &[u32], pat: &[u32]) -> bool {
    let m = pat.len();
    if prefix.len() < m || m == 0 {
        return false;
    }
    let consistent = |chosen: &[usize], v: u32, j: usize| {
        chosen
            .iter()
            .enumerate()
            .all(|(t, &idx)| (v > prefix[idx]) == (pat[j] > pat[t]))
    };
    fn rec(
        prefix: &[u32],
        pat: &[u32],
        chosen: &mut Vec<usize>,
        start: usize,
        consistent: &dyn Fn(&[usize], u32, usize) -> bool,
    ) -> bool {
        let j = chosen.len();
        if j == pat.len() - 1 {
            return consistent(chosen, *prefix.last().unwrap(), j);
        }
        for i in start..prefix.len() - 1 {
            if consistent(chosen, prefix[i], j) {
                chosen.push(i);
                if rec(prefix, pat, chosen, i + 1, consistent) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    rec(prefix, pat, &mut Vec::with_capacity(m), 0, &consistent)
}

/// How a count row was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Enumerated,
    Formula,
    BijectionImage,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Enumerated => "enumerated",
            Provenance::Formula => "formula",
            Provenance::BijectionImage => "bijection-image",
        }
    }
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One row of a count table: the size of a class at a given `k`.
#[derive(Debug, Clone, Serialize)]
pub struct CountRow {
    pub k: usize,
    pub patterns: String,
    pub count: i128,
    pub provenance: Provenance,
}

/// Counts keyed by `(k, patterns)`, possibly under several provenances.
#[derive(Debug, Clone, Default, Serialize)]
pub struct CountTable {
    pub rows: Vec<CountRow>,
}

impl CountTable {
    /// The harness's core assertion: any key present under multiple
    /// provenances has a single value.
    pub fn check_agreement(&self) -> Result<()> {
        let mut seen: std::collections::BTreeMap<(usize, &str), i128> =
            std::collections::BTreeMap::new();
        for row in &self.rows {
            if let Some(&prev) = seen.get(&(row.k, row.patterns.as_str())) {
                if prev != row.count {
                    return Err(Error::Invariant(format!(
                        "count mismatch at k={} for {{{}}}: {} vs {} ({})",
                        row.k, row.patterns, prev, row.count, row.provenance
                    )));
                }
            } else {
                seen.insert((row.k, row.patterns.as_str()), row.count);
            }
        }
        Ok(())
    }
}

/// Which companion rows [`count_table_with`] adds beside the sweep.
#[derive(Debug, Clone, Copy)]
pub struct CountOptions {
    pub limit: usize,
    pub formula: bool,
    pub bijection: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            limit: DEFAULT_ENUM_LIMIT,
            formula: true,
            bijection: true,
        }
    }
}

/// Sweeps every pattern set for `k ≤ k_max` and, where a closed form or a
/// bijection applies, adds companion rows and enforces their agreement.
pub fn count_table(k_max: usize, sets: &[PatternSet]) -> Result<CountTable> {
    count_table_with(k_max, sets, CountOptions::default())
}

pub fn count_table_with(
    k_max: usize,
    sets: &[PatternSet],
    opts: CountOptions,
) -> Result<CountTable> {
    let mut table = CountTable::default();
    for set in sets {
        let label = set.to_string();
        let formula = formula_for(set);
        let map = map_for(set);
        for k in 0..=k_max {
            let members = enumerate_class_limited(2 * k + 1, set, opts.limit)?;
            table.rows.push(CountRow {
                k,
                patterns: label.clone(),
                count: members.len() as i128,
                provenance: Provenance::Enumerated,
            });
            if opts.formula {
                if let Some(f) = formula {
                    table.rows.push(CountRow {
                        k,
                        patterns: label.clone(),
                        count: f(k)?,
                        provenance: Provenance::Formula,
                    });
                }
            }
            if opts.bijection {
                if let Some(via) = map {
                    let images: BTreeSet<String> = members
                        .iter()
                        .map(|m| via.apply(m).map(|p| p.to_string()))
                        .collect::<Result<_>>()?;
                    table.rows.push(CountRow {
                        k,
                        patterns: label.clone(),
                        count: images.len() as i128,
                        provenance: Provenance::BijectionImage,
                    });
                }
            }
        }
    }
    table.check_agreement()?;
    Ok(table)
}

fn canonical_key(set: &PatternSet) -> BTreeSet<String> {
    set.iter().map(|p| p.to_string().replace(' ', "")).collect()
}

fn key_of(a: &str, b: &str) -> BTreeSet<String> {
    let mut s = BTreeSet::new();
    s.insert(a.replace(' ', ""));
    s.insert(b.replace(' ', ""));
    s
}

/// The closed form counting this class at `k`, when one is known.
pub fn formula_for(set: &PatternSet) -> Option<fn(usize) -> Result<i128>> {
    let key = canonical_key(set);
    let catalan_classes = [key_of("132", "231"), key_of("132", "312"), key_of("231", "312")];
    let central_classes = [key_of("132", "4312"), key_of("132", "3421")];
    let three_catalan_classes = [
        key_of("312", "2431"),
        key_of("312", "3421"),
        key_of("312", "1432"),
        key_of("231", "1423"),
        key_of("132", "3412"),
    ];
    if catalan_classes.contains(&key) {
        Some(|k| paths::catalan(k))
    } else if central_classes.contains(&key) {
        Some(|k| paths::central_binom_minus(k))
    } else if three_catalan_classes.contains(&key) {
        Some(|k| paths::three_catalan(k))
    } else if key == key_of("231", "1432") {
        Some(|k| paths::little_schroeder(k))
    } else if key == key_of("231", "4312") {
        Some(|k| Ok(series::b_series(k + 1)?.coeff(k)))
    } else {
        None
    }
}

/// The path bijection whose domain is this class, when one exists.
pub fn map_for(set: &PatternSet) -> Option<MapVia> {
    let key = canonical_key(set);
    MapVia::ALL
        .into_iter()
        .find(|via| key_of(via.shape().patterns()[0], via.shape().patterns()[1]) == key)
}

/// One assertion of the cross-check report.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub detail: String,
    pub pass: bool,
}

/// The machine-readable cross-check report: one row per theorem.
#[derive(Debug, Clone, Default, Serialize)]
pub struct CheckReport {
    pub rows: Vec<CheckRow>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    fn push(&mut self, name: &str, detail: String, pass: bool) {
        self.rows.push(CheckRow {
            name: name.to_string(),
            detail,
            pass,
        });
    }
}

fn set_of(a: &str, b: &str) -> PatternSet {
    PatternSet::parse(&format!("{a},{b}")).expect("hardcoded patterns parse")
}

/// Checks every theorem's count or bijection statement for `k ≤ k_max`:
/// sweeps vs closed forms (Lemmas 3.1–3.3, Thms 4.1, 5.3–5.7), the
/// inversion bijection (Thm 4.2), path generation (Thm 6.1), the
/// generating function (Thm 7.1), and image cardinalities for every map.
pub fn cross_check(k_max: usize, limit: usize) -> Result<CheckReport> {
    let mut report = CheckReport::default();

    // one row per map-backed theorem: sweep = closed form = image count
    for via in MapVia::ALL {
        let [a, b] = via.shape().patterns();
        let set = set_of(a, b);
        let formula = formula_for(&set).expect("every map-backed class has a formula");
        let mut pass = true;
        let mut detail = Vec::new();
        for k in 0..=k_max {
            let members = enumerate_class_limited(2 * k + 1, &set, limit)?;
            let expected = formula(k)?;
            let images: BTreeSet<String> = members
                .iter()
                .map(|m| via.apply(m).map(|p| p.to_string()))
                .collect::<Result<_>>()?;
            let ok = members.len() as i128 == expected && images.len() == members.len();
            pass &= ok;
            detail.push(format!("k={k}: swept {} expected {expected}", members.len()));
        }
        report.push(
            via.name(),
            format!("U({a},{b}) count and image cardinality; {}", detail.join("; ")),
            pass,
        );
    }

    // Thm 4.1: U(132,4312) = C(2k−1,k), which also equals the proof's sum
    {
        let set = set_of("132", "4312");
        let mut pass = true;
        for k in 0..=k_max {
            let swept = count_class(k, &set, limit)?;
            pass &= swept == paths::central_binom_minus(k)?;
            if k >= 1 {
                pass &= series::check_sum_identity(k)?;
            }
        }
        report.push(
            "thm4.1",
            format!("U(132,4312) = C(2k−1,k) with the sum identity, k ≤ {k_max}"),
            pass,
        );
    }

    // Thm 4.2: inversion maps U(132,3421) onto U(132,4312) exactly
    {
        let left = set_of("132", "3421");
        let right = set_of("132", "4312");
        let mut pass = true;
        for k in 0..=k_max {
            let swept = enumerate_class_limited(2 * k + 1, &left, limit)?;
            pass &= swept.len() as i128 == paths::central_binom_minus(k)?;
            let mut inverted: Vec<Permutation> = swept.iter().map(|p| p.inverse()).collect();
            inverted.sort_by(|a, b| a.entries().cmp(b.entries()));
            pass &= inverted == enumerate_class_limited(2 * k + 1, &right, limit)?;
        }
        report.push(
            "thm4.2",
            format!("inversion maps U(132,3421) onto U(132,4312), k ≤ {k_max}"),
            pass,
        );
    }

    // Thm 5.7: U(132,3412) is counted like the other §5 classes
    {
        let left = set_of("132", "3412");
        let right = set_of("231", "1423");
        let mut pass = true;
        for k in 0..=k_max {
            let swept = count_class(k, &left, limit)?;
            pass &= swept == paths::three_catalan(k)?;
            pass &= swept == count_class(k, &right, limit)?;
        }
        report.push(
            "thm5.7",
            format!("|U(132,3412)| = C(3k,k)/(2k+1) = |U(231,1423)|, k ≤ {k_max}"),
            pass,
        );
    }

    // Thm 6.1: U(231,1432) is counted by generated little Schröder paths
    {
        let set = set_of("231", "1432");
        let mut pass = true;
        for k in 0..=k_max {
            let swept = count_class(k, &set, limit)?;
            pass &= swept == paths::count_family(Family::LittleSchroeder, k)? as i128;
        }
        report.push(
            "thm6.1-paths",
            format!("|U(231,1432)| = generated little Schröder path count, k ≤ {k_max}"),
            pass,
        );
    }

    // Thm 7.1: U(231,4312) is counted by the C(xC(x)) coefficients
    {
        let set = set_of("231", "4312");
        let b = series::b_series(k_max + 1)?;
        let mut pass = true;
        for k in 0..=k_max {
            pass &= count_class(k, &set, limit)? == b.coeff(k);
        }
        report.push(
            "thm7.1",
            format!("|U(231,4312)| = [x^k] C(xC(x)), k ≤ {k_max}"),
            pass,
        );
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stacksort;

    fn ps(s: &str) -> PatternSet {
        PatternSet::parse(s).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let all3 = enumerate_class(3, &ps("")).unwrap();
        assert_eq!(all3, vec!["213".parse().unwrap()]);
        assert_eq!(enumerate_class(5, &ps("132,231")).unwrap().len(), 2);
        assert_eq!(
            enumerate_class(1, &ps("132,4312")).unwrap(),
            vec![Permutation::increasing(1)]
        );
        assert!(enumerate_class(4, &ps("")).is_err());
        assert!(matches!(
            enumerate_class(13, &ps("")),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn enumeration_matches_fertility_fixed_set() {
        for n in [1usize, 3, 5, 7] {
            let swept = enumerate_class(n, &ps("")).unwrap();
            let hist = stacksort::fertility_histogram(n).unwrap();
            assert_eq!(swept, hist.fixed_set(), "n={n}");
        }
    }

    #[test]
    fn members_are_sorted_lexicographically_and_valid() {
        let members = enumerate_class(7, &ps("312")).unwrap();
        for w in members.windows(2) {
            assert!(w[0].entries() < w[1].entries());
        }
        for m in &members {
            assert!(stacksort::is_uniquely_sorted(m));
            assert!(m.avoids(&"312".parse().unwrap()));
            assert!(chc::check_partition(m).unwrap());
            assert_eq!(m.at(m.len()), m.len() as u32);
        }
    }

    #[test]
    fn adding_patterns_never_increases_counts() {
        for n in [3usize, 5, 7] {
            let base = enumerate_class(n, &ps("231")).unwrap().len();
            let tighter = enumerate_class(n, &ps("231,1432")).unwrap().len();
            assert!(tighter <= base);
        }
    }

    #[test]
    fn occurrence_checks() {
        assert!(occurrence_ending_at_last(&[5, 1, 6, 2, 4, 3], &[1, 3, 2]));
        assert!(!occurrence_ending_at_last(&[1, 2, 3], &[2, 1]));
        assert!(occurrence_ending_at_last(&[3, 1, 4, 2], &[3, 1, 4, 2]));
        assert!(!occurrence_ending_at_last(&[2, 1], &[1, 2, 3]));
    }

    #[test]
    fn count_table_examples() {
        let table = count_table(3, &[ps("312,2431")]).unwrap();
        let swept: Vec<i128> = table
            .rows
            .iter()
            .filter(|r| r.provenance == Provenance::Enumerated)
            .map(|r| r.count)
            .collect();
        assert_eq!(swept, vec![1, 1, 3, 12]);

        let table = count_table(3, &[ps("132,4312")]).unwrap();
        let swept: Vec<i128> = table
            .rows
            .iter()
            .filter(|r| r.provenance == Provenance::Enumerated)
            .map(|r| r.count)
            .collect();
        assert_eq!(swept, vec![1, 1, 3, 10]);

        let table = count_table(3, &[ps("231,1432")]).unwrap();
        let swept: Vec<i128> = table
            .rows
            .iter()
            .filter(|r| r.provenance == Provenance::Enumerated)
            .map(|r| r.count)
            .collect();
        assert_eq!(swept, vec![1, 1, 3, 11]);
    }

    #[test]
    fn table_agreement_detects_mismatch() {
        let mut table = count_table(2, &[ps("132,231")]).unwrap();
        table.check_agreement().unwrap();
        table.rows.push(CountRow {
            k: 2,
            patterns: "132,231".into(),
            count: 999,
            provenance: Provenance::Formula,
        });
        assert!(table.check_agreement().is_err());
    }

    #[test]
    fn formula_and_map_lookup() {
        assert!(formula_for(&ps("132,231")).is_some());
        assert!(formula_for(&ps("4312,132")).is_some());
        assert!(formula_for(&ps("321")).is_none());
        assert_eq!(map_for(&ps("231,1432")), Some(MapVia::Thm61));
        assert_eq!(map_for(&ps("2431,312")), Some(MapVia::Thm53));
        assert_eq!(map_for(&ps("132,4312")), None);
    }

    #[test]
    fn cross_check_small() {
        let report = cross_check(3, DEFAULT_ENUM_LIMIT).unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.rows.len(), MapVia::ALL.len() + 5);
    }
}
