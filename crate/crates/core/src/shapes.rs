//! Structural shape classes of permutations: vee, svee, layered, their
//! "mod" variants, the stair shapes, and the mixed vee/svee block shapes.
//!
//! Each classifier is a direct structural test. For the three basic shapes
//! the structure is equivalent to avoiding a pair of length-3 patterns, and
//! the unit tests check that equivalence exhaustively.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// The ten shape classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShapeClass {
    Vee,
    Svee,
    Layered,
    ModVee,
    ModSvee,
    StairSvee,
    StairLayered,
    SveeIncreasing,
    VeeLayered,
    VeeStep,
}

impl ShapeClass {
    pub const ALL: [ShapeClass; 10] = [
        ShapeClass::Vee,
        ShapeClass::Svee,
        ShapeClass::Layered,
        ShapeClass::ModVee,
        ShapeClass::ModSvee,
        ShapeClass::StairSvee,
        ShapeClass::StairLayered,
        ShapeClass::SveeIncreasing,
        ShapeClass::VeeLayered,
        ShapeClass::VeeStep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShapeClass::Vee => "vee",
            ShapeClass::Svee => "svee",
            ShapeClass::Layered => "layered",
            ShapeClass::ModVee => "modvee",
            ShapeClass::ModSvee => "modsvee",
            ShapeClass::StairSvee => "stair-svee",
            ShapeClass::StairLayered => "stair-layered",
            ShapeClass::SveeIncreasing => "svee-increasing",
            ShapeClass::VeeLayered => "vee-layered",
            ShapeClass::VeeStep => "vee-step",
        }
    }

    /// The pair of patterns whose avoidance characterizes this shape (among
    /// uniquely sorted permutations for the mod/stair/unit variants).
    pub fn patterns(self) -> [&'static str; 2] {
        match self {
            ShapeClass::Vee => ["132", "231"],
            ShapeClass::Svee => ["132", "312"],
            ShapeClass::Layered => ["231", "312"],
            ShapeClass::ModVee => ["132", "3421"],
            ShapeClass::ModSvee => ["132", "4312"],
            ShapeClass::StairSvee => ["312", "2431"],
            ShapeClass::StairLayered => ["312", "3421"],
            ShapeClass::SveeIncreasing => ["312", "1432"],
            ShapeClass::VeeLayered => ["231", "1423"],
            ShapeClass::VeeStep => ["231", "1432"],
        }
    }

    pub fn matches(self, pi: &Permutation) -> bool {
        match self {
            ShapeClass::Vee => is_vee(pi),
            ShapeClass::Svee => is_svee(pi),
            ShapeClass::Layered => is_layered(pi),
            ShapeClass::ModVee => is_modvee(pi),
            ShapeClass::ModSvee => is_modsvee(pi),
            ShapeClass::StairSvee => is_stair_svee(pi),
            ShapeClass::StairLayered => is_stair_layered(pi),
            ShapeClass::SveeIncreasing => is_svee_increasing(pi),
            ShapeClass::VeeLayered => is_vee_layered(pi),
            ShapeClass::VeeStep => is_vee_step(pi),
        }
    }
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShapeClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<ShapeClass> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        ShapeClass::ALL
            .iter()
            .copied()
            .find(|c| c.name() == key)
            .ok_or_else(|| Error::InvalidInput(format!("unknown shape class {s:?}")))
    }
}

/// All shape classes that `π` belongs to.
pub fn classify(pi: &Permutation) -> Vec<ShapeClass> {
    ShapeClass::ALL
        .iter()
        .copied()
        .filter(|c| c.matches(pi))
        .collect()
}

/// Vee: decreasing, then the entry 1, then increasing.
pub fn is_vee(pi: &Permutation) -> bool {
    if pi.is_empty() {
        return true;
    }
    let p = pi.position_of(1);
    let e = pi.entries();
    e[..p - 1].windows(2).all(|w| w[0] > w[1]) && e[p - 1..].windows(2).all(|w| w[0] < w[1])
}

/// Svee: every entry is a running minimum or a running maximum.
pub fn is_svee(pi: &Permutation) -> bool {
    let e = pi.entries();
    if e.is_empty() {
        return true;
    }
    let (mut lo, mut hi) = (e[0], e[0]);
    for &v in &e[1..] {
        if v < lo {
            lo = v;
        } else if v > hi {
            hi = v;
        } else {
            return false;
        }
    }
    true
}

/// The layer sizes of a layered permutation (a direct sum of decreasing
/// permutations), or `None` when `π` is not layered.
pub fn layers(pi: &Permutation) -> Option<Vec<usize>> {
    let e = pi.entries();
    let mut sizes = Vec::new();
    let mut start = 0usize;
    while start < e.len() {
        // the layer starting here must descend exactly from e[start] down
        // to start+1 (1-based), i.e. have size e[start] - start
        let top = e[start] as usize;
        if top <= start {
            return None;
        }
        let size = top - start;
        if start + size > e.len() {
            return None;
        }
        for i in 0..size {
            if e[start + i] as usize != top - i {
                return None;
            }
        }
        sizes.push(size);
        start += size;
    }
    Some(sizes)
}

pub fn is_layered(pi: &Permutation) -> bool {
    layers(pi).is_some()
}

/// Modvee: a vee, or a vee plus one extra lowest point placed to the right
/// of the vee's vertical.
pub fn is_modvee(pi: &Permutation) -> bool {
    if is_vee(pi) {
        return true;
    }
    let n = pi.len();
    if n < 2 {
        return false;
    }
    let rest: Vec<u32> = pi.entries().iter().copied().filter(|&v| v != 1).collect();
    let reduced = Permutation::normalize(&rest).expect("distinct entries");
    is_vee(&reduced) && pi.position_of(1) > pi.position_of(2)
}

/// Modsvee: a svee, or a svee preceded by one special point above the
/// svee's horizontal.
pub fn is_modsvee(pi: &Permutation) -> bool {
    if is_svee(pi) {
        return true;
    }
    let n = pi.len();
    if n < 2 {
        return false;
    }
    let tail = Permutation::normalize(&pi.entries()[1..]).expect("distinct entries");
    is_svee(&tail) && pi.at(1) > pi.at(2)
}

/// Splits positions `1..=n` at every suffix minimum: each block ends at the
/// position holding the smallest remaining value. Returned as half-open
/// 0-based ranges.
pub fn min_split(pi: &Permutation) -> Vec<std::ops::Range<usize>> {
    let e = pi.entries();
    let mut out = Vec::new();
    let mut start = 0usize;
    while start < e.len() {
        let m = (start..e.len())
            .min_by_key(|&i| e[i])
            .expect("nonempty range");
        out.push(start..m + 1);
        start = m + 1;
    }
    out
}

/// A block is well-formed when its values are exactly the contiguous range
/// following the previous block.
fn block_values_contiguous(pi: &Permutation, blocks: &[std::ops::Range<usize>]) -> bool {
    let e = pi.entries();
    let mut offset = 0u32;
    for b in blocks {
        let len = b.len() as u32;
        if !e[b.clone()].iter().all(|&v| v > offset && v <= offset + len) {
            return false;
        }
        offset += len;
    }
    true
}

/// The block ranges of a stair-svee permutation: suffix-minimum splits,
/// with a trailing run of singletons absorbed into the preceding block
/// (blocks are maximal, and a trailing increasing run extends a svee
/// block). `None` when `π` is not stair-svee.
pub fn stair_svee_blocks(pi: &Permutation) -> Option<Vec<std::ops::Range<usize>>> {
    if pi.is_empty() {
        return Some(Vec::new());
    }
    let mut blocks = min_split(pi);
    // merge trailing singleton blocks into the last non-singleton block
    let mut last_wide = blocks.iter().rposition(|b| b.len() > 1);
    if last_wide.is_none() && blocks.len() > 1 {
        last_wide = Some(0);
    }
    if let Some(i) = last_wide {
        if i + 1 < blocks.len() {
            let end = blocks.last().unwrap().end;
            blocks.truncate(i + 1);
            blocks.last_mut().unwrap().end = end;
        }
    }
    if !block_values_contiguous(pi, &blocks) {
        return None;
    }
    let e = pi.entries();
    let last = blocks.len() - 1;
    for (i, b) in blocks.iter().enumerate() {
        let norm = Permutation::normalize(&e[b.clone()]).expect("distinct entries");
        if !is_svee(&norm) {
            return None;
        }
        // every block but the last ends at its minimum
        if i < last && norm.at(norm.len()) != 1 {
            return None;
        }
    }
    Some(blocks)
}

pub fn is_stair_svee(pi: &Permutation) -> bool {
    stair_svee_blocks(pi).is_some()
}

/// The block ranges of a stair-layered permutation after stripping the
/// tail of trailing fixed points; every block is a layered permutation with
/// a new minimum appended. Returns `(blocks, tail_length)`, or `None` when
/// `π` is not stair-layered.
pub fn stair_layered_blocks(pi: &Permutation) -> Option<(Vec<std::ops::Range<usize>>, usize)> {
    let n = pi.len();
    let ell = pi.tail_length();
    let body = Permutation::new(pi.entries()[..n - ell].to_vec()).expect("tail is fixed points");
    let blocks = min_split(&body);
    if !block_values_contiguous(&body, &blocks) {
        return None;
    }
    let e = body.entries();
    for b in &blocks {
        let norm = Permutation::normalize(&e[b.clone()]).expect("distinct entries");
        // each block ends at its minimum; the rest must be layered
        if norm.at(norm.len()) != 1 {
            return None;
        }
        let upper = Permutation::normalize(&norm.entries()[..norm.len() - 1])
            .expect("distinct entries");
        if !is_layered(&upper) {
            return None;
        }
    }
    Some((blocks, ell))
}

pub fn is_stair_layered(pi: &Permutation) -> bool {
    stair_layered_blocks(pi).is_some()
}

/// A structural unit of a svee-increasing or vee-layered permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unit {
    /// A single point on the low side (below the horizontal for
    /// svee-increasing, left of the vertical for vee-layered).
    Low { pos: usize },
    /// A block on the high side covering `positions` (an increasing run
    /// with its minimum appended for svee-increasing; a decreasing layer
    /// for vee-layered).
    High { start: usize, len: usize },
}

/// Decomposes a svee-increasing permutation into units, in position order:
/// low points, size-1 high points, and blocks shaped like an increasing run
/// followed by the block's minimum. `None` when `π` is not of this shape.
pub fn svee_increasing_units(pi: &Permutation) -> Option<Vec<Unit>> {
    let e = pi.entries();
    let mut units = Vec::new();
    let mut t = e.len();
    // peel from the right: the last entry is either the minimum of the
    // prefix, or tops an increasing run of all larger prefix entries
    while t > 1 {
        let x = e[t - 1];
        if e[..t - 1].iter().all(|&v| v > x) {
            units.push(Unit::Low { pos: t });
            t -= 1;
            continue;
        }
        let above = e[..t - 1].iter().filter(|&&v| v > x).count();
        let start = t - 1 - above;
        if e[..start].iter().any(|&v| v > x) {
            return None;
        }
        if !e[start..t - 1].windows(2).all(|w| w[0] < w[1]) {
            return None;
        }
        units.push(Unit::High {
            start: start + 1,
            len: above + 1,
        });
        t = start;
    }
    units.reverse();
    Some(units)
}

pub fn is_svee_increasing(pi: &Permutation) -> bool {
    svee_increasing_units(pi).is_some()
}

/// Decomposes a vee-layered permutation into units: points left of the
/// entry 1 (each a `Low`), and maximal decreasing layers right of it (each
/// a `High`). Left points must descend, layers must occupy contiguous,
/// increasing value ranges, and no left point may land inside a layer's
/// value range. `None` when `π` is not of this shape.
pub fn vee_layered_units(pi: &Permutation) -> Option<Vec<Unit>> {
    if pi.is_empty() {
        return Some(Vec::new());
    }
    let e = pi.entries();
    let p = pi.position_of(1);
    if !e[..p - 1].windows(2).all(|w| w[0] > w[1]) {
        return None;
    }
    let mut units: Vec<Unit> = (1..p).map(|pos| Unit::Low { pos }).collect();
    // split the right side into maximal decreasing runs
    let mut ranges: Vec<(usize, usize)> = Vec::new(); // (start index 0-based, len)
    let mut i = p; // 0-based index of first right entry
    while i < e.len() {
        let mut j = i + 1;
        while j < e.len() && e[j] < e[j - 1] {
            j += 1;
        }
        ranges.push((i, j - i));
        i = j;
    }
    // each layer must hold a contiguous, ascending value range...
    let mut floor = 1u32;
    for &(s, len) in &ranges {
        let top = e[s];
        let bottom = e[s + len - 1];
        if bottom <= floor || top != bottom + len as u32 - 1 {
            return None;
        }
        // ...with no left point inside it
        if e[..p - 1].iter().any(|&v| v >= bottom && v <= top) {
            return None;
        }
        floor = top;
        units.push(Unit::High { start: s + 1, len });
    }
    Some(units)
}

pub fn is_vee_layered(pi: &Permutation) -> bool {
    vee_layered_units(pi).is_some()
}

/// Vee-step: vee-layered with every layer of size at most 2.
pub fn is_vee_step(pi: &Permutation) -> bool {
    match vee_layered_units(pi) {
        Some(units) => units.iter().all(|u| match u {
            Unit::High { len, .. } => *len <= 2,
            Unit::Low { .. } => true,
        }),
        None => false,
    }
}
