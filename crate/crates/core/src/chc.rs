//! Canonical hook configurations.
//!
//! Each descent of a permutation gets a hook: a segment running north from
//! the descent top, then east to its NE endpoint. The configuration is built
//! right to left, always picking the leftmost point strictly above and
//! strictly to the right of the descent top that does not lie weakly below
//! an already-placed hook. A permutation is sorted (has positive fertility)
//! exactly when this construction succeeds.

use crate::error::{Error, Result};
use crate::perm::{Permutation, Point};

/// A hook: a SW corner at a descent top and an NE endpoint up and to the
/// right of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hook {
    pub sw: Point,
    pub ne: Point,
}

impl std::fmt::Display for Hook {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.sw, self.ne)
    }
}

impl Hook {
    /// True iff `p` lies weakly below this hook: strictly right of the SW
    /// position, weakly left of the NE position, and no higher than the NE
    /// value.
    pub fn weakly_below(&self, p: Point) -> bool {
        self.sw.pos < p.pos && p.pos <= self.ne.pos && p.val <= self.ne.val
    }

    /// Strict variant: additionally requires `p` to sit strictly under the
    /// hook's top edge.
    pub fn strictly_below(&self, p: Point) -> bool {
        self.sw.pos < p.pos && p.pos <= self.ne.pos && p.val < self.ne.val
    }
}

/// The canonical hook configuration: one hook per descent, listed left to
/// right by descent position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chc {
    pub hooks: Vec<Hook>,
}

impl Chc {
    pub fn ne_points(&self) -> Vec<Point> {
        self.hooks.iter().map(|h| h.ne).collect()
    }

    pub fn sw_points(&self) -> Vec<Point> {
        self.hooks.iter().map(|h| h.sw).collect()
    }
}

/// Builds the canonical hook configuration of `π`, or `None` when some
/// descent top has no available NE endpoint (then `π` is unsorted).
pub fn build_chc(pi: &Permutation) -> Option<Chc> {
    let descents = pi.descents();
    let k = descents.len();
    let mut hooks: Vec<Hook> = Vec::with_capacity(k);
    // hooks are produced right to left, then reversed into descent order
    for &d in descents.iter().rev() {
        let sw = Point { pos: d, val: pi.at(d) };
        let mut ne: Option<Point> = None;
        for pos in d + 1..=pi.len() {
            let p = Point { pos, val: pi.at(pos) };
            if p.val > sw.val && !hooks.iter().any(|h| h.weakly_below(p)) {
                ne = Some(p);
                break;
            }
        }
        hooks.push(Hook { sw, ne: ne? });
    }
    hooks.reverse();
    Some(Chc { hooks })
}

/// Checks that the descent bottoms and the NE endpoints of the hooks
/// together partition all plot points except the first. Holds for every
/// uniquely sorted permutation.
pub fn check_partition(pi: &Permutation) -> Result<bool> {
    ensure_uniquely_sorted(pi)?;
    Ok(partition_gaps(pi).map_or(false, |g| g.is_empty()))
}

/// The witnesses behind a failed partition: every point at position ≥ 2
/// that is neither a descent bottom nor an NE endpoint, or is both. Empty
/// when the partition property holds; `None` when `π` has no CHC at all.
/// Usable on any sorted permutation, regardless of unique sortedness.
pub fn partition_gaps(pi: &Permutation) -> Option<Vec<Point>> {
    let chc = build_chc(pi)?;
    let n = pi.len();
    let db = pi.descent_bottoms();
    let ne = chc.ne_points();
    Some(
        (2..=n)
            .map(|pos| Point { pos, val: pi.at(pos) })
            .filter(|p| db.contains(p) == ne.contains(p))
            .collect(),
    )
}

/// True iff the hook ending at the final point `(n, n)` starts at position
/// 1. Defined for uniquely sorted permutations of length ≥ 3.
pub fn is_nice(pi: &Permutation) -> Result<bool> {
    ensure_uniquely_sorted(pi)?;
    let n = pi.len();
    let chc = build_chc(pi).expect("uniquely sorted permutations are sorted");
    Ok(chc
        .hooks
        .iter()
        .any(|h| h.ne.pos == n && h.sw.pos == 1))
}

fn ensure_uniquely_sorted(pi: &Permutation) -> Result<()> {
    if !crate::stacksort::is_uniquely_sorted(pi) {
        return Err(Error::Precondition(format!(
            "{pi} is not uniquely sorted"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn hooks_of(s: &str) -> Vec<(usize, u32, usize, u32)> {
        build_chc(&p(s))
            .unwrap()
            .hooks
            .iter()
            .map(|h| (h.sw.pos, h.sw.val, h.ne.pos, h.ne.val))
            .collect()
    }

    #[test]
    fn reference_hooks() {
        assert_eq!(
            hooks_of("2 7 3 5 9 4 8 1 6 10 11 12"),
            vec![(2, 7, 5, 9), (5, 9, 11, 11), (7, 8, 10, 10)]
        );
    }

    #[test]
    fn no_descents_means_empty_chc() {
        let chc = build_chc(&Permutation::increasing(4)).unwrap();
        assert!(chc.hooks.is_empty());
    }

    #[test]
    fn missing_ne_endpoint() {
        assert!(build_chc(&p("231")).is_none());
        assert!(build_chc(&p("321")).is_none());
    }

    #[test]
    fn small_hooks() {
        assert_eq!(hooks_of("213"), vec![(1, 2, 3, 3)]);
        assert_eq!(hooks_of("31425"), vec![(1, 3, 3, 4), (3, 4, 5, 5)]);
    }

    #[test]
    fn partition_examples() {
        assert!(check_partition(&p("31425")).unwrap());
        assert!(check_partition(&p("213")).unwrap());
        // not uniquely sorted, so check_partition refuses it...
        let sample = p("2 7 3 5 9 4 8 1 6 10 11 12");
        assert!(check_partition(&sample).is_err());
        // ...and the gap witnesses include the point (7,8)
        let gaps = partition_gaps(&sample).unwrap();
        assert!(gaps.contains(&Point { pos: 7, val: 8 }));
        assert_eq!(
            gaps,
            vec![
                Point { pos: 2, val: 7 },
                Point { pos: 4, val: 5 },
                Point { pos: 7, val: 8 },
                Point { pos: 9, val: 6 },
                Point { pos: 12, val: 12 },
            ]
        );
        assert!(partition_gaps(&p("31425")).unwrap().is_empty());
        assert!(partition_gaps(&p("231")).is_none());
    }

    #[test]
    fn nice_examples() {
        assert!(is_nice(&p("213")).unwrap());
        assert!(is_nice(&p("8 2 1 4 3 7 6 5 10 11 9 12 13")).unwrap());
        assert!(!is_nice(&p("3 2 4 1 9 8 7 10 11 6 5 12 13")).unwrap());
        assert!(is_nice(&p("123")).is_err());
    }

    #[test]
    fn ne_endpoints_are_ascent_tops_or_last() {
        use itertools::Itertools;
        for n in 1..=7 {
            for v in (1..=n as u32).permutations(n) {
                let q = Permutation::new(v).unwrap();
                if let Some(chc) = build_chc(&q) {
                    let tops = q.ascent_tops();
                    let sw_ok = q.descent_tops();
                    for h in &chc.hooks {
                        assert!(h.sw.pos < h.ne.pos && h.sw.val < h.ne.val);
                        assert!(tops.contains(&h.ne) || h.ne.pos == n, "{q}: {h}");
                        assert!(sw_ok.contains(&h.sw));
                    }
                    // NE endpoints are pairwise distinct
                    let ne = chc.ne_points();
                    let mut dedup = ne.clone();
                    dedup.sort_unstable();
                    dedup.dedup();
                    assert_eq!(dedup.len(), ne.len());
                }
            }
        }
    }
}
