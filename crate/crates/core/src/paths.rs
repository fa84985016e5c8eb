//! Lattice paths: Dyck, Motzkin, S-Motzkin, Schröder, and little Schröder
//! families, with validation, exhaustive generation, counting by generation,
//! and exact closed-form evaluators.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default size cap for exhaustive path generation.
pub const DEFAULT_GENERATION_LIMIT: usize = 10;

/// A lattice step. `U = (1,1)`, `D = (1,−1)`, `E = (1,0)`, `H = (2,0)`.
/// The declared order `U < D < E < H` fixes the lexicographic order used by
/// generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    U,
    D,
    E,
    H,
}

impl Step {
    pub fn rise(self) -> i64 {
        match self {
            Step::U => 1,
            Step::D => -1,
            Step::E | Step::H => 0,
        }
    }

    /// Width in x: 1 for U/D/E, 2 for H.
    pub fn width(self) -> usize {
        match self {
            Step::H => 2,
            _ => 1,
        }
    }

    pub fn from_char(c: char) -> Result<Step> {
        match c.to_ascii_uppercase() {
            'U' => Ok(Step::U),
            'D' => Ok(Step::D),
            'E' => Ok(Step::E),
            'H' => Ok(Step::H),
            _ => Err(Error::InvalidInput(format!("unknown step character {c:?}"))),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
            Step::E => 'E',
            Step::H => 'H',
        }
    }
}

/// A lattice-path family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Dyck,
    Motzkin,
    SMotzkin,
    Schroeder,
    LittleSchroeder,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Dyck => "dyck",
            Family::Motzkin => "motzkin",
            Family::SMotzkin => "smotzkin",
            Family::Schroeder => "schroeder",
            Family::LittleSchroeder => "little-schroeder",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "dyck" => Ok(Family::Dyck),
            "motzkin" => Ok(Family::Motzkin),
            "smotzkin" | "s-motzkin" => Ok(Family::SMotzkin),
            "schroeder" | "schroder" => Ok(Family::Schroeder),
            "little-schroeder" | "littleschroeder" | "little-schroder" => {
                Ok(Family::LittleSchroeder)
            }
            _ => Err(Error::InvalidInput(format!("unknown path family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated lattice path of a particular family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    steps: Vec<Step>,
    family: Family,
}

impl LatticePath {
    /// Wraps a step sequence after checking the family's invariants.
    pub fn new(steps: Vec<Step>, family: Family) -> Result<LatticePath> {
        if !validate(&steps, family) {
            let text: String = steps.iter().map(|s| s.to_char()).collect();
            return Err(Error::InvalidInput(format!(
                "{text:?} is not a valid {family} path"
            )));
        }
        Ok(LatticePath { steps, family })
    }

    /// Parses a step string (case-insensitive) and validates it.
    pub fn parse(text: &str, family: Family) -> Result<LatticePath> {
        let steps = parse_steps(text)?;
        LatticePath::new(steps, family)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The family's size parameter: semilength (number of U's, plus H's for
    /// Schröder families), the E-count for S-Motzkin, plain length for
    /// Motzkin.
    pub fn size(&self) -> usize {
        let count = |s: Step| self.steps.iter().filter(|&&x| x == s).count();
        match self.family {
            Family::Dyck => count(Step::U),
            Family::Motzkin => self.steps.len(),
            Family::SMotzkin => count(Step::E),
            Family::Schroeder | Family::LittleSchroeder => count(Step::U) + count(Step::H),
        }
    }

    /// Heights after each step, starting from 0.
    pub fn heights(&self) -> Vec<i64> {
        self.steps
            .iter()
            .scan(0i64, |h, s| {
                *h += s.rise();
                Some(*h)
            })
            .collect()
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

pub fn parse_steps(text: &str) -> Result<Vec<Step>> {
    text.trim().chars().map(Step::from_char).collect()
}

/// True iff `steps` satisfies every invariant of `family`.
pub fn validate(steps: &[Step], family: Family) -> bool {
    let allowed: &[Step] = match family {
        Family::Dyck => &[Step::U, Step::D],
        Family::Motzkin | Family::SMotzkin => &[Step::U, Step::D, Step::E],
        Family::Schroeder | Family::LittleSchroeder => &[Step::U, Step::D, Step::H],
    };
    if steps.iter().any(|s| !allowed.contains(s)) {
        return false;
    }
    // nonnegative prefix heights, zero at the end
    let mut h = 0i64;
    for s in steps {
        if *s == Step::H && family == Family::LittleSchroeder && h == 0 {
            return false;
        }
        h += s.rise();
        if h < 0 {
            return false;
        }
    }
    if h != 0 {
        return false;
    }
    if family == Family::SMotzkin {
        let count = |t: Step| steps.iter().filter(|&&x| x == t).count() as i64;
        if count(Step::U) != count(Step::E) || count(Step::D) != count(Step::E) {
            return false;
        }
        if !steps.is_empty() && steps[0] != Step::E {
            return false;
        }
        // exactly one up step between consecutive east steps
        let mut ups_since_e: Option<usize> = None;
        for s in steps {
            match s {
                Step::E => {
                    if let Some(u) = ups_since_e {
                        if u != 1 {
                            return false;
                        }
                    }
                    ups_since_e = Some(0);
                }
                Step::U => {
                    if let Some(u) = ups_since_e.as_mut() {
                        *u += 1;
                    }
                }
                _ => {}
            }
        }
    }
    true
}

/// Generates every path of the family at the given size, in lexicographic
/// step order (U < D < E < H).
pub fn generate_all(family: Family, size: usize) -> Result<Vec<LatticePath>> {
    generate_all_limited(family, size, DEFAULT_GENERATION_LIMIT)
}

pub fn generate_all_limited(
    family: Family,
    size: usize,
    limit: usize,
) -> Result<Vec<LatticePath>> {
    if size > limit {
        return Err(Error::ResourceLimit {
            what: "path generation",
            limit,
            requested: size,
        });
    }
    let mut out = Vec::new();
    let mut cur: Vec<Step> = Vec::new();
    extend(family, size, &mut cur, &mut out);
    Ok(out)
}

/// Backtracking generator. State is recovered from the current prefix; the
/// family-specific pruning below only rejects prefixes that cannot extend
/// to a valid path, so every leaf is valid.
fn extend(family: Family, size: usize, cur: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
    let count = |cur: &[Step], t: Step| cur.iter().filter(|&&x| x == t).count();
    let u = count(cur, Step::U);
    let d = count(cur, Step::D);
    let e = count(cur, Step::E);
    let hh = count(cur, Step::H);
    let height = (u as i64) - (d as i64);

    let done = match family {
        Family::Dyck => cur.len() == 2 * size,
        Family::Motzkin => cur.len() == size,
        Family::SMotzkin => cur.len() == 3 * size,
        Family::Schroeder | Family::LittleSchroeder => u + hh == size && d == u,
    };
    if done && height == 0 {
        out.push(LatticePath {
            steps: cur.clone(),
            family,
        });
        return;
    }

    for s in [Step::U, Step::D, Step::E, Step::H] {
        let ok = match family {
            Family::Dyck => match s {
                Step::U => u < size,
                Step::D => height > 0,
                _ => false,
            },
            Family::Motzkin => {
                let remaining = (size - cur.len()) as i64;
                match s {
                    Step::U => height + 1 <= remaining - 1,
                    Step::D => height > 0,
                    Step::E => height <= remaining - 1,
                    Step::H => false,
                }
            }
            Family::SMotzkin => match s {
                // one up step per east step, in alternation
                Step::U => u < size && u + 1 == e,
                Step::D => d < size && height > 0,
                Step::E => e < size && u == e,
                Step::H => false,
            },
            Family::Schroeder | Family::LittleSchroeder => match s {
                Step::U => u + hh < size,
                Step::D => height > 0,
                Step::H => {
                    u + hh < size && (family == Family::Schroeder || height > 0)
                }
                Step::E => false,
            },
        };
        if ok {
            cur.push(s);
            extend(family, size, cur, out);
            cur.pop();
        }
    }
}

/// Counts the family at the given size by exhaustive generation.
pub fn count_family(family: Family, size: usize) -> Result<u64> {
    Ok(generate_all(family, size)?.len() as u64)
}

fn checked_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b)
        .ok_or_else(|| Error::Arithmetic(format!("{a} * {b} overflows i128")))
}

/// Exact binomial coefficient C(n, k); zero when k > n, one when k = 0
/// (including C(−1, 0) = 1).
pub fn binomial(n: i64, k: i64) -> Result<i128> {
    if k < 0 || (n >= 0 && k > n) {
        return Ok(0);
    }
    if k == 0 {
        return Ok(1);
    }
    if n < 0 {
        return Err(Error::InvalidInput(format!(
            "binomial({n}, {k}) with negative n is out of scope"
        )));
    }
    let mut acc: i128 = 1;
    for i in 1..=k as i128 {
        acc = checked_mul(acc, n as i128 - k as i128 + i)?;
        if acc % i != 0 {
            return Err(Error::Invariant(format!(
                "binomial({n}, {k}): non-exact intermediate division"
            )));
        }
        acc /= i;
    }
    Ok(acc)
}

fn exact_div(num: i128, den: i128, what: &str) -> Result<i128> {
    if num % den != 0 {
        return Err(Error::Invariant(format!(
            "{what}: {num} is not divisible by {den}"
        )));
    }
    Ok(num / den)
}

/// The Catalan number C_k = C(2k, k) / (k + 1).
pub fn catalan(k: usize) -> Result<i128> {
    exact_div(binomial(2 * k as i64, k as i64)?, k as i128 + 1, "catalan")
}

/// C(3k, k) / (2k + 1), the count of S-Motzkin paths of size k.
pub fn three_catalan(k: usize) -> Result<i128> {
    exact_div(
        binomial(3 * k as i64, k as i64)?,
        2 * k as i128 + 1,
        "three_catalan",
    )
}

/// C(2k − 1, k), with the k = 0 value taken to be 1.
pub fn central_binom_minus(k: usize) -> Result<i128> {
    if k == 0 {
        return Ok(1);
    }
    binomial(2 * k as i64 - 1, k as i64)
}

/// The large Schröder number 𝒮_k = Σ_i C(k + i, 2i) · C_i.
pub fn schroeder(k: usize) -> Result<i128> {
    let mut total: i128 = 0;
    for i in 0..=k {
        let term = checked_mul(binomial((k + i) as i64, 2 * i as i64)?, catalan(i)?)?;
        total = total
            .checked_add(term)
            .ok_or_else(|| Error::Arithmetic("schroeder sum overflows i128".into()))?;
    }
    Ok(total)
}

/// The little Schröder number: 𝒮_k / 2 for k ≥ 1, and 1 at k = 0.
pub fn little_schroeder(k: usize) -> Result<i128> {
    if k == 0 {
        return Ok(1);
    }
    exact_div(schroeder(k)?, 2, "little_schroeder")
}
