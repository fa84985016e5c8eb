//! Plain-ASCII rendering of permutation plots (with optional hook
//! outlines) and lattice-path staircases. Output is deterministic and free
//! of color or TTY dependence.

use crate::chc::Chc;
use crate::paths::{LatticePath, Step};
use crate::perm::Permutation;

/// Renders the plot of `π` as an `n`-row grid, highest value on top, with
/// `o` marks for plot points. When a hook configuration is supplied, each
/// hook is outlined with `|`, `-`, and a `+` corner.
pub fn render_permutation(pi: &Permutation, chc: Option<&Chc>) -> String {
    let n = pi.len();
    if n == 0 {
        return String::new();
    }
    let mut grid = vec![vec!['.'; n]; n];
    // grid[r][c]: r = 0 is value n, c = 0 is position 1
    let cell = |pos: usize, val: u32| (n - val as usize, pos - 1);
    if let Some(chc) = chc {
        for hook in &chc.hooks {
            for val in hook.sw.val + 1..hook.ne.val {
                let (r, c) = cell(hook.sw.pos, val);
                grid[r][c] = '|';
            }
            for pos in hook.sw.pos + 1..hook.ne.pos {
                let (r, c) = cell(pos, hook.ne.val);
                grid[r][c] = '-';
            }
            let (r, c) = cell(hook.sw.pos, hook.ne.val);
            grid[r][c] = '+';
        }
    }
    for pos in 1..=n {
        let (r, c) = cell(pos, pi.at(pos));
        grid[r][c] = 'o';
    }
    let mut out = String::new();
    for row in grid {
        out.extend(row);
        out.push('\n');
    }
    out
}

/// Renders a lattice path as an ASCII staircase: `/` for U, `\` for D, and
/// `_` for flat steps, with H spanning two columns.
pub fn render_path(path: &LatticePath) -> String {
    let width: usize = path.steps().iter().map(|s| s.width()).sum();
    if width == 0 {
        return String::new();
    }
    // band r covers heights [r, r+1); compute how many bands are drawn on
    let mut cells: Vec<(usize, usize, char)> = Vec::new(); // (band, col, glyph)
    let mut h = 0i64;
    let mut col = 0usize;
    for &s in path.steps() {
        match s {
            Step::U => cells.push((h as usize, col, '/')),
            Step::D => cells.push((h as usize - 1, col, '\\')),
            Step::E => cells.push((h as usize, col, '_')),
            Step::H => {
                cells.push((h as usize, col, '_'));
                cells.push((h as usize, col + 1, '_'));
            }
        }
        h += s.rise();
        col += s.width();
    }
    let bands = cells.iter().map(|&(b, _, _)| b).max().unwrap_or(0) + 1;
    let mut grid = vec![vec![' '; width]; bands];
    for (band, col, glyph) in cells {
        grid[bands - 1 - band][col] = glyph;
    }
    let mut out = String::new();
    for row in grid {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
