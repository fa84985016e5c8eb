//! Bijections between uniquely sorted permutation classes and lattice-path
//! families, plus the modvee/modsvee and nice decompositions.
//!
//! Every forward map checks its precondition (uniquely sorted input of the
//! right shape). Every inverse is constructive — it factors the path into
//! its block alphabet — and re-applies the forward map to confirm the
//! round trip before returning.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::chc;
use crate::error::{Error, Result};
use crate::paths::{Family, LatticePath, Step};
use crate::perm::Permutation;
use crate::shapes::{self, ShapeClass, Unit};
use crate::stacksort;

/// The eight permutation-to-path bijections, keyed by the result that
/// introduces each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapVia {
    Lemma31,
    Lemma32,
    Lemma33,
    Thm53,
    Thm54,
    Thm55,
    Thm56,
    Thm61,
}

impl MapVia {
    pub const ALL: [MapVia; 8] = [
        MapVia::Lemma31,
        MapVia::Lemma32,
        MapVia::Lemma33,
        MapVia::Thm53,
        MapVia::Thm54,
        MapVia::Thm55,
        MapVia::Thm56,
        MapVia::Thm61,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapVia::Lemma31 => "lemma3.1",
            MapVia::Lemma32 => "lemma3.2",
            MapVia::Lemma33 => "lemma3.3",
            MapVia::Thm53 => "thm5.3",
            MapVia::Thm54 => "thm5.4",
            MapVia::Thm55 => "thm5.5",
            MapVia::Thm56 => "thm5.6",
            MapVia::Thm61 => "thm6.1",
        }
    }

    /// The shape class whose uniquely sorted members form the map's domain.
    pub fn shape(self) -> ShapeClass {
        match self {
            MapVia::Lemma31 => ShapeClass::Vee,
            MapVia::Lemma32 => ShapeClass::Svee,
            MapVia::Lemma33 => ShapeClass::Layered,
            MapVia::Thm53 => ShapeClass::StairSvee,
            MapVia::Thm54 => ShapeClass::StairLayered,
            MapVia::Thm55 => ShapeClass::SveeIncreasing,
            MapVia::Thm56 => ShapeClass::VeeLayered,
            MapVia::Thm61 => ShapeClass::VeeStep,
        }
    }

    /// The path family the map is a bijection onto.
    pub fn family(self) -> Family {
        match self {
            MapVia::Lemma31 | MapVia::Lemma32 | MapVia::Lemma33 => Family::Dyck,
            MapVia::Thm53 | MapVia::Thm54 | MapVia::Thm55 | MapVia::Thm56 => Family::SMotzkin,
            MapVia::Thm61 => Family::LittleSchroeder,
        }
    }

    pub fn apply(self, pi: &Permutation) -> Result<LatticePath> {
        match self {
            MapVia::Lemma31 | MapVia::Lemma32 | MapVia::Lemma33 => to_dyck(pi, self.shape()),
            MapVia::Thm53 | MapVia::Thm54 | MapVia::Thm55 | MapVia::Thm56 => {
                to_smotzkin(pi, self.shape())
            }
            MapVia::Thm61 => to_schroeder(pi),
        }
    }

    pub fn invert(self, path: &LatticePath) -> Result<Permutation> {
        match self {
            MapVia::Lemma31 | MapVia::Lemma32 | MapVia::Lemma33 => from_dyck(path, self.shape()),
            MapVia::Thm53 | MapVia::Thm54 | MapVia::Thm55 | MapVia::Thm56 => {
                from_smotzkin(path, self.shape())
            }
            MapVia::Thm61 => from_schroeder(path),
        }
    }
}

impl fmt::Display for MapVia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapVia {
    type Err = Error;

    fn from_str(s: &str) -> Result<MapVia> {
        let key = s.to_ascii_lowercase();
        MapVia::ALL
            .iter()
            .copied()
            .find(|v| v.name() == key)
            .ok_or_else(|| Error::InvalidInput(format!("unknown bijection {s:?}")))
    }
}

fn ensure_member(pi: &Permutation, shape: ShapeClass) -> Result<()> {
    if !stacksort::is_uniquely_sorted(pi) {
        return Err(Error::Precondition(format!("{pi} is not uniquely sorted")));
    }
    if !shape.matches(pi) {
        return Err(Error::Precondition(format!("{pi} is not {shape}")));
    }
    Ok(())
}

fn ensure_family(path: &LatticePath, family: Family) -> Result<()> {
    if path.family() != family {
        return Err(Error::InvalidInput(format!(
            "expected a {family} path, got {}",
            path.family()
        )));
    }
    Ok(())
}

/// Re-applies the forward map and demands it reproduce the original path.
fn verified<F>(pi: Permutation, path: &LatticePath, forward: F) -> Result<Permutation>
where
    F: Fn(&Permutation) -> Result<LatticePath>,
{
    let back = forward(&pi)
        .map_err(|e| Error::Invariant(format!("inverse of {path} produced {pi}: {e}")))?;
    if back != *path {
        return Err(Error::Invariant(format!(
            "round trip failed: {path} -> {pi} -> {back}"
        )));
    }
    Ok(pi)
}

/// The common word of the svee and layered maps: for each adjacency, a D at
/// an ascent and a U at a descent (ascent tops pair with D, descent bottoms
/// with U).
fn ascent_word(pi: &Permutation) -> Vec<Step> {
    (2..=pi.len())
        .map(|i| if pi.at(i) > pi.at(i - 1) { Step::D } else { Step::U })
        .collect()
}

/// Maps a uniquely sorted vee/svee/layered permutation of length 2k+1 to a
/// Dyck path of semilength k.
pub fn to_dyck(pi: &Permutation, shape: ShapeClass) -> Result<LatticePath> {
    let steps = match shape {
        ShapeClass::Vee => {
            ensure_member(pi, shape)?;
            let n = pi.len();
            let right: HashSet<u32> = pi.entries()[pi.position_of(1)..].iter().copied().collect();
            // step i records whether the value 2k+2-i sits right of the 1
            (1..n)
                .map(|i| {
                    if right.contains(&((n + 1 - i) as u32)) {
                        Step::U
                    } else {
                        Step::D
                    }
                })
                .collect()
        }
        ShapeClass::Svee | ShapeClass::Layered => {
            ensure_member(pi, shape)?;
            ascent_word(pi)
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "{other} is not a Dyck-path shape"
            )))
        }
    };
    LatticePath::new(steps, Family::Dyck)
}

/// Inverse of [`to_dyck`].
pub fn from_dyck(path: &LatticePath, shape: ShapeClass) -> Result<Permutation> {
    ensure_family(path, Family::Dyck)?;
    let k = path.size();
    let n = 2 * k + 1;
    let entries: Vec<u32> = match shape {
        ShapeClass::Vee => {
            let right: HashSet<u32> = path
                .steps()
                .iter()
                .enumerate()
                .filter(|(_, &s)| s == Step::U)
                .map(|(i, _)| (n - i) as u32)
                .collect();
            let mut left: Vec<u32> = (2..=n as u32).filter(|v| !right.contains(v)).collect();
            left.sort_unstable_by(|a, b| b.cmp(a));
            let mut right: Vec<u32> = right.into_iter().collect();
            right.sort_unstable();
            left.into_iter().chain([1]).chain(right).collect()
        }
        ShapeClass::Svee => {
            // U opens a new minimum, D a new maximum
            let ups = path.steps().iter().filter(|&&s| s == Step::U).count() as u32;
            let mut lo = ups + 1;
            let mut hi = lo;
            let mut out = vec![lo];
            for &s in path.steps() {
                if s == Step::U {
                    lo -= 1;
                    out.push(lo);
                } else {
                    hi += 1;
                    out.push(hi);
                }
            }
            out
        }
        ShapeClass::Layered => {
            // U extends the current layer, D starts a new one
            let mut sizes = vec![1usize];
            for &s in path.steps() {
                if s == Step::U {
                    *sizes.last_mut().unwrap() += 1;
                } else {
                    sizes.push(1);
                }
            }
            layered_entries(&sizes, 0)
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "{other} is not a Dyck-path shape"
            )))
        }
    };
    verified(Permutation::new(entries)?, path, |q| to_dyck(q, shape))
}

/// Entries of a direct sum of decreasing layers with the given sizes, all
/// shifted up by `offset`.
fn layered_entries(sizes: &[usize], offset: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut base = offset;
    for &s in sizes {
        for t in 0..s as u32 {
            out.push(base + s as u32 - t);
        }
        base += s as u32;
    }
    out
}

/// One ascent top of a stair permutation: how many descent bottoms precede
/// it, and whether it opens a new block.
#[derive(Debug, Clone, Copy)]
struct StairEvent {
    bottoms: usize,
    new_block: bool,
}

fn stair_events(entries: &[u32], blocks: &[std::ops::Range<usize>]) -> Vec<StairEvent> {
    let starts: HashSet<usize> = blocks.iter().map(|b| b.start).collect();
    let mut events = Vec::new();
    let mut bottoms = 0usize;
    for i in 0..entries.len().saturating_sub(1) {
        if entries[i] > entries[i + 1] {
            bottoms += 1;
        } else {
            events.push(StairEvent {
                bottoms,
                new_block: starts.contains(&(i + 1)),
            });
        }
    }
    events
}

/// Lays out the base path (EU)^k and inserts one D per event: after the
/// n-th U for a same-block ascent top with n preceding descent bottoms, and
/// after the (n+1)-th E for a new-block one. D's sharing an anchor keep the
/// left-to-right order of their ascent tops.
fn stair_assemble(events: &[StairEvent], k: usize) -> Vec<Step> {
    let mut steps = Vec::with_capacity(3 * k);
    for j in 1..=k {
        steps.push(Step::E);
        for _ in events.iter().filter(|e| e.new_block && e.bottoms + 1 == j) {
            steps.push(Step::D);
        }
        steps.push(Step::U);
        for _ in events.iter().filter(|e| !e.new_block && e.bottoms == j) {
            steps.push(Step::D);
        }
    }
    steps
}

/// Maps a uniquely sorted permutation of one of the four S-Motzkin shapes
/// to an S-Motzkin path of size k.
pub fn to_smotzkin(pi: &Permutation, shape: ShapeClass) -> Result<LatticePath> {
    ensure_member(pi, shape)?;
    let n = pi.len();
    let k = (n - 1) / 2;
    let steps = match shape {
        ShapeClass::StairSvee => {
            let blocks = shapes::stair_svee_blocks(pi).expect("shape already checked");
            stair_assemble(&stair_events(pi.entries(), &blocks), k)
        }
        ShapeClass::StairLayered if n == 1 => Vec::new(),
        ShapeClass::StairLayered => {
            let (blocks, ell) = shapes::stair_layered_blocks(pi).expect("shape already checked");
            let mut steps = stair_assemble(&stair_events(&pi.entries()[..n - ell], &blocks), k);
            steps.extend(std::iter::repeat(Step::D).take(ell));
            steps
        }
        ShapeClass::SveeIncreasing => {
            // left to right: EU per low point, D per lone high point,
            // ED^{s-1}U per block of size s >= 2
            let units = shapes::svee_increasing_units(pi).expect("shape already checked");
            let mut steps = Vec::new();
            for u in units {
                match u {
                    Unit::Low { .. } => steps.extend([Step::E, Step::U]),
                    Unit::High { len: 1, .. } => steps.push(Step::D),
                    Unit::High { len, .. } => {
                        steps.push(Step::E);
                        steps.extend(std::iter::repeat(Step::D).take(len - 1));
                        steps.push(Step::U);
                    }
                }
            }
            steps
        }
        ShapeClass::VeeLayered => {
            // top to bottom by value: D per point left of the 1,
            // ED^{s-1}U per layer of size s
            let units = shapes::vee_layered_units(pi).expect("shape already checked");
            let mut order: Vec<(u32, &Unit)> = units
                .iter()
                .map(|u| match u {
                    Unit::Low { pos } => (pi.at(*pos), u),
                    Unit::High { start, .. } => (pi.at(*start), u),
                })
                .collect();
            order.sort_unstable_by(|a, b| b.0.cmp(&a.0));
            let mut steps = Vec::new();
            for (_, u) in order {
                match u {
                    Unit::Low { .. } => steps.push(Step::D),
                    Unit::High { len, .. } => {
                        steps.push(Step::E);
                        steps.extend(std::iter::repeat(Step::D).take(len - 1));
                        steps.push(Step::U);
                    }
                }
            }
            steps
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "{other} is not an S-Motzkin shape"
            )))
        }
    };
    LatticePath::new(steps, Family::SMotzkin)
}

/// Per-anchor D counts of an S-Motzkin path: for each E, the number of D's
/// before and after that anchor's U.
fn stair_groups(steps: &[Step]) -> Result<Vec<(usize, usize)>> {
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut before_u = true;
    for &s in steps {
        match s {
            Step::E => {
                groups.push((0, 0));
                before_u = true;
            }
            Step::U => before_u = false,
            Step::D => {
                let g = groups
                    .last_mut()
                    .ok_or_else(|| Error::Invariant("D before first E".into()))?;
                if before_u {
                    g.0 += 1;
                } else {
                    g.1 += 1;
                }
            }
            Step::H => return Err(Error::Invariant("H in an S-Motzkin path".into())),
        }
    }
    Ok(groups)
}

/// One point of a reconstructed stair permutation at positions 2..=n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sym {
    /// An ascent top opening a new block.
    NewTop,
    /// An ascent top within the current block (a new block maximum).
    SameTop,
    /// A descent bottom (a new block minimum).
    Bottom,
}

/// Recovers the point word of positions 2..=2k+1 from the anchor groups:
/// the i-th ascent top is preceded by exactly `bottoms` descent bottoms,
/// with new-block tops ordered before same-block tops at equal counts.
fn stair_word(groups: &[(usize, usize)], k: usize) -> Vec<Sym> {
    let mut events: Vec<(usize, bool)> = Vec::new();
    for (idx, &(e_ds, u_ds)) in groups.iter().enumerate() {
        let j = idx + 1;
        events.extend(std::iter::repeat((j - 1, true)).take(e_ds));
        events.extend(std::iter::repeat((j, false)).take(u_ds));
    }
    events.sort_by_key(|&(bottoms, new)| (bottoms, !new));
    let mut word = Vec::new();
    let mut b = 0usize;
    for (bottoms, new) in events {
        while b < bottoms {
            word.push(Sym::Bottom);
            b += 1;
        }
        word.push(if new { Sym::NewTop } else { Sym::SameTop });
    }
    while b < k {
        word.push(Sym::Bottom);
        b += 1;
    }
    word
}

/// Splits the word into blocks; each returned vector holds the symbols
/// after the block's first point (the opening NewTop, or position 1 for the
/// first block).
fn split_blocks(word: &[Sym]) -> Vec<Vec<Sym>> {
    let mut blocks: Vec<Vec<Sym>> = vec![Vec::new()];
    for &s in word {
        if s == Sym::NewTop {
            blocks.push(Vec::new());
        } else {
            blocks.last_mut().unwrap().push(s);
        }
    }
    blocks
}

/// Relative entries of a svee block whose first point is followed by the
/// given word: Bottom opens a new minimum, SameTop a new maximum.
fn svee_block(rest: &[Sym]) -> Vec<u32> {
    let bottoms = rest.iter().filter(|&&s| s == Sym::Bottom).count() as u32;
    let mut lo = bottoms + 1;
    let mut hi = lo;
    let mut out = vec![lo];
    for &s in rest {
        if s == Sym::Bottom {
            lo -= 1;
            out.push(lo);
        } else {
            hi += 1;
            out.push(hi);
        }
    }
    out
}

/// Relative entries of a layered-with-appended-minimum block: the final
/// Bottom is the appended 1; before it, SameTop starts a new layer and
/// Bottom extends the current one.
fn layered_block(rest: &[Sym]) -> Result<Vec<u32>> {
    if rest.is_empty() {
        return Ok(vec![1]);
    }
    if *rest.last().unwrap() != Sym::Bottom {
        return Err(Error::Invariant("layered block does not end at its minimum".into()));
    }
    let mut sizes = vec![1usize];
    for &s in &rest[..rest.len() - 1] {
        if s == Sym::Bottom {
            *sizes.last_mut().unwrap() += 1;
        } else {
            sizes.push(1);
        }
    }
    let mut out = layered_entries(&sizes, 1);
    out.push(1);
    Ok(out)
}

fn assemble_offset_blocks(rels: Vec<Vec<u32>>) -> Vec<u32> {
    let mut out = Vec::new();
    let mut offset = 0u32;
    for rel in rels {
        let size = rel.len() as u32;
        out.extend(rel.into_iter().map(|v| v + offset));
        offset += size;
    }
    out
}

/// Inverse of [`to_smotzkin`].
pub fn from_smotzkin(path: &LatticePath, shape: ShapeClass) -> Result<Permutation> {
    ensure_family(path, Family::SMotzkin)?;
    let k = path.size();
    let entries: Vec<u32> = match shape {
        ShapeClass::StairSvee => {
            let word = stair_word(&stair_groups(path.steps())?, k);
            assemble_offset_blocks(split_blocks(&word).into_iter().map(|b| svee_block(&b)).collect())
        }
        ShapeClass::StairLayered => {
            if k == 0 {
                vec![1]
            } else {
                // the tail is exactly the run of D's after the last U
                let last_u = path
                    .steps()
                    .iter()
                    .rposition(|&s| s == Step::U)
                    .expect("an S-Motzkin path of positive size has a U");
                let ell = path.steps().len() - last_u - 1;
                let word = stair_word(&stair_groups(&path.steps()[..=last_u])?, k);
                let rels = split_blocks(&word)
                    .into_iter()
                    .map(|b| layered_block(&b))
                    .collect::<Result<Vec<_>>>()?;
                let mut entries = assemble_offset_blocks(rels);
                let body = entries.len() as u32;
                entries.extend((1..=ell as u32).map(|t| body + t));
                entries
            }
        }
        ShapeClass::SveeIncreasing => {
            // factor into D | ED^mU and grow a key list: EU pushes a new
            // global minimum, D a new maximum, ED^mU the run max+2..max+m+1
            // followed by max+1
            let mut keys: Vec<i64> = vec![0];
            let (mut lo, mut hi) = (0i64, 0i64);
            for factor in smotzkin_factors(path.steps())? {
                match factor {
                    SFactor::Lone => {
                        hi += 1;
                        keys.push(hi);
                    }
                    SFactor::Block(0) => {
                        lo -= 1;
                        keys.push(lo);
                    }
                    SFactor::Block(m) => {
                        let top = hi;
                        for t in 2..=(m as i64 + 1) {
                            keys.push(top + t);
                        }
                        keys.push(top + 1);
                        hi = top + m as i64 + 1;
                    }
                }
            }
            rank_keys(&keys)
        }
        ShapeClass::VeeLayered => {
            // factors read top to bottom; rebuild values bottom up
            let factors = smotzkin_factors(path.steps())?;
            let mut v = 1u32;
            let mut left = Vec::new();
            let mut right = Vec::new();
            for factor in factors.into_iter().rev() {
                match factor {
                    SFactor::Lone => {
                        v += 1;
                        left.push(v);
                    }
                    SFactor::Block(m) => {
                        let m = m as u32;
                        right.extend((1..=m + 1).rev().map(|t| v + t));
                        v += m + 1;
                    }
                }
            }
            left.reverse();
            left.into_iter().chain([1]).chain(right).collect()
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "{other} is not an S-Motzkin shape"
            )))
        }
    };
    verified(Permutation::new(entries)?, path, |q| to_smotzkin(q, shape))
}

/// A factor of an S-Motzkin path: a lone D, or E D^m U.
#[derive(Debug, Clone, Copy)]
enum SFactor {
    Lone,
    Block(usize),
}

fn smotzkin_factors(steps: &[Step]) -> Result<Vec<SFactor>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < steps.len() {
        match steps[i] {
            Step::D => {
                out.push(SFactor::Lone);
                i += 1;
            }
            Step::E => {
                let mut m = 0;
                i += 1;
                while i < steps.len() && steps[i] == Step::D {
                    m += 1;
                    i += 1;
                }
                if i >= steps.len() || steps[i] != Step::U {
                    return Err(Error::Invariant("E-group without a closing U".into()));
                }
                i += 1;
                out.push(SFactor::Block(m));
            }
            _ => return Err(Error::Invariant("unexpected step in S-Motzkin factorization".into())),
        }
    }
    Ok(out)
}

/// Replaces each key by its rank, yielding a permutation of 1..=len.
fn rank_keys(keys: &[i64]) -> Vec<u32> {
    let mut sorted: Vec<i64> = keys.to_vec();
    sorted.sort_unstable();
    keys.iter()
        .map(|k| (sorted.binary_search(k).expect("key present") + 1) as u32)
        .collect()
}

/// Maps a uniquely sorted vee-step permutation to a little Schröder path:
/// read bottom to top, points left of the 1 become U, size-1 layers D, and
/// size-2 layers H.
pub fn to_schroeder(pi: &Permutation) -> Result<LatticePath> {
    ensure_member(pi, ShapeClass::VeeStep)?;
    let units = shapes::vee_layered_units(pi).expect("shape already checked");
    let mut order: Vec<(u32, Step)> = units
        .iter()
        .map(|u| match u {
            Unit::Low { pos } => (pi.at(*pos), Step::U),
            Unit::High { start, len: 1 } => (pi.at(*start), Step::D),
            Unit::High { start, len: 2 } => (pi.at(*start), Step::H),
            Unit::High { .. } => unreachable!("vee-step layers have size <= 2"),
        })
        .collect();
    order.sort_unstable_by_key(|&(v, _)| v);
    LatticePath::new(order.into_iter().map(|(_, s)| s).collect(), Family::LittleSchroeder)
}

/// Inverse of [`to_schroeder`].
pub fn from_schroeder(path: &LatticePath) -> Result<Permutation> {
    ensure_family(path, Family::LittleSchroeder)?;
    let mut v = 1u32;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &s in path.steps() {
        match s {
            Step::U => {
                v += 1;
                left.push(v);
            }
            Step::D => {
                v += 1;
                right.push(v);
            }
            Step::H => {
                right.extend([v + 2, v + 1]);
                v += 2;
            }
            Step::E => return Err(Error::Invariant("E in a Schröder path".into())),
        }
    }
    left.reverse();
    let entries: Vec<u32> = left.into_iter().chain([1]).chain(right).collect();
    verified(Permutation::new(entries)?, path, to_schroeder)
}

fn pattern(s: &str) -> Permutation {
    s.parse().expect("static pattern literal")
}

fn in_class(pi: &Permutation, pats: [&str; 2]) -> bool {
    stacksort::is_uniquely_sorted(pi) && pats.iter().all(|p| pi.avoids(&pattern(p)))
}

/// The inversion bijection between the uniquely sorted {132, 3421}- and
/// {132, 4312}-avoiders.
pub fn modvee_modsvee(pi: &Permutation) -> Result<Permutation> {
    if !in_class(pi, ["132", "3421"]) && !in_class(pi, ["132", "4312"]) {
        return Err(Error::Precondition(format!(
            "{pi} is in neither uniquely sorted class Av(132,3421) nor Av(132,4312)"
        )));
    }
    Ok(pi.inverse())
}

/// Splits a uniquely sorted {132, 4312}-avoider at the hook attached to its
/// first point: the NE endpoint sits at position 2j+1, the first 2j+1
/// points normalize to a nice modsvee permutation, and the points from
/// position 2j+1 on normalize to a svee permutation (the two share the
/// boundary point).
pub fn modsvee_split(pi: &Permutation) -> Result<(usize, Permutation, Permutation)> {
    if !in_class(pi, ["132", "4312"]) {
        return Err(Error::Precondition(format!(
            "{pi} is not a uniquely sorted {{132, 4312}}-avoider"
        )));
    }
    let e = pi.entries();
    if pi.len() == 1 {
        let one = Permutation::increasing(1);
        return Ok((0, one.clone(), one));
    }
    let chc = chc::build_chc(pi).expect("uniquely sorted permutations are sorted");
    let hook = chc
        .hooks
        .iter()
        .find(|h| h.sw.pos == 1)
        .ok_or_else(|| Error::Invariant(format!("{pi} has no hook at position 1")))?;
    let pos = hook.ne.pos;
    if pos % 2 == 0 {
        return Err(Error::Invariant(format!(
            "hook from position 1 of {pi} ends at even position {pos}"
        )));
    }
    let prefix = Permutation::normalize(&e[..pos])?;
    let suffix = Permutation::normalize(&e[pos - 1..])?;
    Ok(((pos - 1) / 2, prefix, suffix))
}

fn ensure_nice_class(pi: &Permutation) -> Result<()> {
    if !stacksort::is_uniquely_sorted(pi) {
        return Err(Error::Precondition(format!("{pi} is not uniquely sorted")));
    }
    if !chc::is_nice(pi)? {
        return Err(Error::Precondition(format!("{pi} is not nice")));
    }
    Ok(())
}

/// Decomposes a nice uniquely sorted permutation of length 2k+1 — in
/// particular any nice member of the uniquely sorted {231, 4312}-avoiders —
/// into `(π'', τ')`: τ' is the normalization of the longest odd prefix of
/// the low block λ = π_2…π_{π_1} that is uniquely sorted and ends either at
/// the first entry of a layer of size at least two or at the end of λ; π''
/// is the normalization of π with that prefix and the final maximum
/// removed.
pub fn nice_decompose(pi: &Permutation) -> Result<(Permutation, Permutation)> {
    ensure_nice_class(pi)?;
    let n = pi.len();
    let e = pi.entries();
    let first = e[0] as usize;
    let lam = &e[1..first];
    if lam.iter().any(|&v| v as usize >= first) {
        return Err(Error::Precondition(format!(
            "the values below the first point of {pi} do not all precede the higher ones"
        )));
    }
    let lam_perm = Permutation::new(lam.to_vec())?;
    let lam_layers = shapes::layers(&lam_perm)
        .ok_or_else(|| Error::Precondition(format!("low block of {pi} is not layered")))?;
    let mut wide_starts = HashSet::new();
    let mut at = 0usize;
    for &s in &lam_layers {
        if s >= 2 {
            wide_starts.insert(at);
        }
        at += s;
    }
    let mut best = None;
    for m in 0..=(lam.len() - 1) / 2 {
        let t = 2 * m + 1;
        let tau = Permutation::normalize(&lam[..t])?;
        if !stacksort::is_uniquely_sorted(&tau) {
            continue;
        }
        if t == lam.len() || wide_starts.contains(&(t - 1)) {
            best = Some(m);
        }
    }
    let m = best.ok_or_else(|| Error::Precondition(format!("no admissible prefix in {pi}")))?;
    let t = 2 * m + 1;
    let tau = Permutation::normalize(&lam[..t])?;
    let mut rest = vec![e[0]];
    rest.extend_from_slice(&lam[t..]);
    rest.extend_from_slice(&e[first..n - 1]);
    Ok((Permutation::normalize(&rest)?, tau))
}

/// Inverse of [`nice_decompose`]: re-inserts τ' below the first entry of
/// π'', merging τ's final maximum into π'''s first low layer, and appends a
/// new global maximum.
pub fn nice_recompose(pi2: &Permutation, tau: &Permutation) -> Result<Permutation> {
    if !stacksort::is_uniquely_sorted(tau) || !shapes::is_layered(tau) {
        return Err(Error::Precondition(format!(
            "{tau} is not a uniquely sorted layered permutation"
        )));
    }
    if !stacksort::is_uniquely_sorted(pi2) {
        return Err(Error::Precondition(format!("{pi2} is not uniquely sorted")));
    }
    let m = (tau.len() - 1) / 2;
    let two_m = 2 * m as u32;
    let e = pi2.entries();
    let p1 = e[0];
    let sig: Vec<u32> = e[1..].iter().take_while(|&&v| v < p1).copied().collect();
    let h = if sig.is_empty() {
        0u32
    } else {
        let norm = Permutation::normalize(&sig)?;
        shapes::layers(&norm)
            .ok_or_else(|| Error::Precondition(format!("low prefix of {pi2} is not layered")))?[0]
            as u32
    };
    let mut out = vec![p1 + two_m + 1];
    for &v in tau.entries() {
        out.push(if v == two_m + 1 { two_m + h + 1 } else { v });
    }
    for &v in &e[1..] {
        out.push(if v >= p1 {
            v + two_m + 1
        } else if v <= h {
            v + two_m
        } else {
            v + two_m + 1
        });
    }
    out.push((pi2.len() + tau.len() + 1) as u32);
    let res = Permutation::new(out)?;
    let (back2, back_tau) = nice_decompose(&res)
        .map_err(|err| Error::Invariant(format!("recomposition of ({pi2}, {tau}) -> {res}: {err}")))?;
    if back2 != *pi2 || back_tau != *tau {
        return Err(Error::Invariant(format!(
            "round trip failed: ({pi2}, {tau}) -> {res} -> ({back2}, {back_tau})"
        )));
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths;
    use itertools::Itertools;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn path(s: &str, family: Family) -> LatticePath {
        LatticePath::parse(s, family).unwrap()
    }

    fn members(n: usize, shape: ShapeClass) -> Vec<Permutation> {
        (1..=n as u32)
            .permutations(n)
            .filter_map(|v| {
                let q = Permutation::new(v).unwrap();
                (stacksort::is_uniquely_sorted(&q) && shape.matches(&q)).then_some(q)
            })
            .collect()
    }

    #[test]
    fn golden_path_images() {
        let cases = [
            (MapVia::Lemma31, "10 6 5 3 2 1 4 7 8 9 11", "UDUUUDDUDD"),
            (MapVia::Thm53, "3 2 4 1 9 8 7 10 11 6 5 12 13", "EUDEUEDUEUDDEUEUDD"),
            (MapVia::Thm54, "3 2 4 1 8 7 6 9 11 10 5 12 13", "EUDEUEDUEUDDEUEUDD"),
            (MapVia::Thm55, "4 3 2 5 7 6 1 9 10 8 11", "EUEUDEDUEUEDDUD"),
            (MapVia::Thm56, "9 2 1 5 4 3 6 8 7 10 11", "EUEUDEDUEUEDDUD"),
            (MapVia::Thm61, "732154689", "UUHDUDD"),
        ];
        for (via, perm, golden) in cases {
            let pi = p(perm);
            let image = via.apply(&pi).unwrap();
            assert_eq!(image.to_string(), golden, "{via}");
            assert_eq!(via.invert(&image).unwrap(), pi, "{via} inverse");
        }
    }

    #[test]
    fn dyck_examples() {
        assert_eq!(to_dyck(&p("213"), ShapeClass::Svee).unwrap().to_string(), "UD");
        assert_eq!(to_dyck(&p("213"), ShapeClass::Layered).unwrap().to_string(), "UD");
        for shape in [ShapeClass::Vee, ShapeClass::Svee, ShapeClass::Layered] {
            let one = Permutation::increasing(1);
            assert_eq!(to_dyck(&one, shape).unwrap().steps().len(), 0);
        }
        assert!(to_dyck(&p("123"), ShapeClass::Vee).is_err()); // not uniquely sorted
        assert!(to_dyck(&p("213"), ShapeClass::StairSvee).is_err()); // wrong target family
    }

    #[test]
    fn schroeder_examples() {
        assert_eq!(to_schroeder(&p("213")).unwrap().to_string(), "UD");
        assert_eq!(to_schroeder(&Permutation::increasing(1)).unwrap().steps().len(), 0);
    }

    #[test]
    fn all_maps_bijective_small() {
        // round trip + validity + cardinality over every class member, k <= 3
        for via in MapVia::ALL {
            for k in 0..=3usize {
                let n = 2 * k + 1;
                let class = members(n, via.shape());
                let mut images = std::collections::HashSet::new();
                for pi in &class {
                    let image = via.apply(pi).unwrap();
                    assert_eq!(image.family(), via.family());
                    assert_eq!(image.size(), k, "{via} {pi}");
                    assert_eq!(via.invert(&image).unwrap(), *pi, "{via} {pi}");
                    images.insert(image.to_string());
                }
                let family_count = paths::generate_all(via.family(), k).unwrap().len();
                assert_eq!(images.len(), family_count, "{via} k={k}");
            }
        }
    }

    #[test]
    fn inverses_accept_every_family_path() {
        for via in MapVia::ALL {
            for k in 0..=3usize {
                for path in paths::generate_all(via.family(), k).unwrap() {
                    let pi = via.invert(&path).unwrap();
                    assert_eq!(via.apply(&pi).unwrap(), path, "{via} {path}");
                }
            }
        }
    }

    #[test]
    fn modvee_modsvee_examples() {
        assert_eq!(modvee_modsvee(&p("853241679")).unwrap(), p("643527819"));
        assert_eq!(modvee_modsvee(&p("643527819")).unwrap(), p("853241679"));
        assert_eq!(modvee_modsvee(&p("1")).unwrap(), p("1"));
        assert!(modvee_modsvee(&p("123")).is_err());
    }

    #[test]
    fn modvee_modsvee_maps_classes_onto_each_other() {
        for n in [1usize, 3, 5, 7] {
            let modvee: std::collections::HashSet<Permutation> = (1..=n as u32)
                .permutations(n)
                .filter_map(|v| {
                    let q = Permutation::new(v).unwrap();
                    in_class(&q, ["132", "3421"]).then_some(q)
                })
                .collect();
            let modsvee: std::collections::HashSet<Permutation> = (1..=n as u32)
                .permutations(n)
                .filter_map(|v| {
                    let q = Permutation::new(v).unwrap();
                    in_class(&q, ["132", "4312"]).then_some(q)
                })
                .collect();
            let image: std::collections::HashSet<Permutation> =
                modvee.iter().map(|q| modvee_modsvee(q).unwrap()).collect();
            assert_eq!(image, modsvee, "n={n}");
        }
    }

    #[test]
    fn modsvee_split_examples() {
        let (j, prefix, suffix) = modsvee_split(&p("643527819")).unwrap();
        assert_eq!((j, prefix, suffix), (3, p("5324167"), p("213")));
        let (j, prefix, suffix) = modsvee_split(&p("213")).unwrap();
        assert_eq!((j, prefix, suffix), (1, p("213"), p("1")));
        assert_eq!(modsvee_split(&p("1")).unwrap(), (0, p("1"), p("1")));
    }

    #[test]
    fn modsvee_split_structure() {
        for n in [1usize, 3, 5, 7] {
            for v in (1..=n as u32).permutations(n) {
                let q = Permutation::new(v).unwrap();
                if !in_class(&q, ["132", "4312"]) {
                    continue;
                }
                let (j, prefix, suffix) = modsvee_split(&q).unwrap();
                assert_eq!(prefix.len(), 2 * j + 1);
                assert_eq!(prefix.len() + suffix.len(), n + 1);
                assert!(stacksort::is_uniquely_sorted(&prefix), "{q}");
                assert!(shapes::is_modsvee(&prefix), "{q}");
                if prefix.len() >= 3 {
                    assert!(chc::is_nice(&prefix).unwrap(), "{q}");
                }
                assert!(shapes::is_svee(&suffix), "{q}");
            }
        }
    }

    #[test]
    fn nice_decompose_examples() {
        let sample = p("8 2 1 4 3 7 6 5 10 11 9 12 13");
        let (pi2, tau) = nice_decompose(&sample).unwrap();
        assert_eq!(tau, p("21435"));
        assert_eq!(pi2, p("3215647"));
        assert_eq!(nice_recompose(&pi2, &tau).unwrap(), sample);
        let (pi2, tau) = nice_decompose(&p("213")).unwrap();
        assert_eq!((pi2, tau), (p("1"), p("1")));
        assert_eq!(nice_recompose(&p("1"), &p("213")).unwrap(), p("42135"));
        assert!(nice_decompose(&p("3 2 4 1 9 8 7 10 11 6 5 12 13")).is_err()); // not nice
    }

    #[test]
    fn nice_round_trips() {
        // every nice class member decomposes and recomposes, k <= 3
        for k in 1..=3usize {
            let n = 2 * k + 1;
            for v in (1..=n as u32).permutations(n) {
                let q = Permutation::new(v).unwrap();
                if !in_class(&q, ["231", "4312"]) || !chc::is_nice(&q).unwrap() {
                    continue;
                }
                let (pi2, tau) = nice_decompose(&q).unwrap();
                assert_eq!(nice_recompose(&pi2, &tau).unwrap(), q, "{q}");
            }
        }
        // and every admissible pair recomposes into a nice class member
        for k in 1..=3usize {
            for m in 0..k {
                let j = k - m - 1;
                let taus = (1..=(2 * m + 1) as u32)
                    .permutations(2 * m + 1)
                    .filter_map(|v| {
                        let q = Permutation::new(v).unwrap();
                        (stacksort::is_uniquely_sorted(&q) && shapes::is_layered(&q)).then_some(q)
                    })
                    .collect::<Vec<_>>();
                let pi2s = (1..=(2 * j + 1) as u32)
                    .permutations(2 * j + 1)
                    .filter_map(|v| {
                        let q = Permutation::new(v).unwrap();
                        in_class(&q, ["231", "4312"]).then_some(q)
                    })
                    .collect::<Vec<_>>();
                for tau in &taus {
                    for pi2 in &pi2s {
                        let res = nice_recompose(pi2, tau).unwrap();
                        assert!(chc::is_nice(&res).unwrap(), "({pi2}, {tau})");
                    }
                }
            }
        }
    }

    #[test]
    fn via_parsing() {
        for via in MapVia::ALL {
            assert_eq!(via.name().parse::<MapVia>().unwrap(), via);
        }
        assert!("thm9.9".parse::<MapVia>().is_err());
    }

    #[test]
    fn invert_rejects_wrong_family() {
        let dyck = path("UD", Family::Dyck);
        assert!(MapVia::Thm53.invert(&dyck).is_err());
        let smotzkin = path("EUD", Family::SMotzkin);
        assert!(MapVia::Lemma31.invert(&smotzkin).is_err());
    }
}
