//! Matrix paths with row jumps, their costs, and the `PP_edit` promise
//! property built on the minimum path cost.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::BitMatrix;

/// Cost constants shared by the path-cost property and the edit-distance
/// reduction: `C0 = Q`, `C1 = Q - rho`, `C_jump = 2T + S_G`, and the
/// threshold `T_r = ceil((3L/4) C0 + (L/4) C1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostConstants {
    pub q: i64,
    pub rho: i64,
    pub s_g: i64,
    pub t: i64,
    pub l: usize,
}

impl CostConstants {
    pub fn new(q: i64, rho: i64, s_g: i64, t: i64, l: usize) -> Result<Self> {
        let c = CostConstants { q, rho, s_g, t, l };
        let problems = c.violations();
        if problems.is_empty() {
            Ok(c)
        } else {
            Err(Error::Params(problems.join("; ")))
        }
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.l == 0 {
            out.push("L must be positive".to_string());
        }
        if self.rho < 1 || self.rho > self.q {
            out.push(format!("rho={} must lie in [1, Q={}]", self.rho, self.q));
        }
        // S_G (t-1) > Q t for all t >= 2 reduces to the t = 2 case
        if self.s_g <= 2 * self.q {
            out.push(format!("S_G={} must exceed 2Q={}", self.s_g, 2 * self.q));
        }
        if self.t <= self.s_g {
            out.push(format!("T={} must exceed S_G={}", self.t, self.s_g));
        }
        if self.c_jump() - 2 * self.c0() < 0 {
            out.push("C_jump - 2 C0 is negative".to_string());
        }
        out
    }

    pub fn c0(&self) -> i64 {
        self.q
    }

    pub fn c1(&self) -> i64 {
        self.q - self.rho
    }

    pub fn c_jump(&self) -> i64 {
        2 * self.t + self.s_g
    }

    /// Cost of a cell holding `bit`.
    #[inline]
    pub fn cell(&self, bit: bool) -> i64 {
        if bit {
            self.c1()
        } else {
            self.c0()
        }
    }

    /// `ceil((3 L C0 + L C1) / 4)`.
    pub fn threshold(&self) -> i64 {
        let num = 3 * self.l as i64 * self.c0() + self.l as i64 * self.c1();
        num.div_euclid(4) + i64::from(num.rem_euclid(4) != 0)
    }

    /// True when the threshold needed no rounding.
    pub fn threshold_is_exact(&self) -> bool {
        (3 * self.l as i64 * self.c0() + self.l as i64 * self.c1()) % 4 == 0
    }

    fn check_mu(&self, mu: i64) -> Result<()> {
        if (0..=self.q).contains(&mu) {
            Ok(())
        } else {
            Err(Error::MuRange { mu, q: self.q })
        }
    }

    fn check_shape(&self, m: &BitMatrix) -> Result<()> {
        if m.cols() != self.l || m.rows() == 0 {
            return Err(Error::Params(format!(
                "matrix is {}x{} but constants are for L={}",
                m.rows(),
                m.cols(),
                self.l
            )));
        }
        Ok(())
    }
}

/// A sequence of 1-based `(row, col)` positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathSpec {
    pub points: Vec<(usize, usize)>,
}

impl PathSpec {
    pub fn new(points: Vec<(usize, usize)>) -> Self {
        PathSpec { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Indices `p` such that a jump happens between points `p` and `p + 1`.
    pub fn jumps(&self) -> impl Iterator<Item = usize> + '_ {
        self.points
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0].0 != w[1].0)
            .map(|(p, _)| p)
    }

    pub fn has_jumps(&self) -> bool {
        self.jumps().next().is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathViolation {
    Empty,
    RowOutOfRange { p: usize, row: usize },
    ColOutOfRange { p: usize, col: usize },
    FirstColumn(usize),
    LastColumn(usize),
    /// Same-row step that does not advance exactly one column.
    RowStep { p: usize },
    /// Downward jump that changes column.
    DownJump { p: usize },
    /// Upward jump whose column does not advance by the rows climbed.
    UpJump { p: usize },
    /// A jump immediately after a jump.
    ConsecutiveJumps { p: usize },
}

impl fmt::Display for PathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathViolation::Empty => write!(f, "empty path"),
            PathViolation::RowOutOfRange { p, row } => write!(f, "point {p}: row {row} out of range"),
            PathViolation::ColOutOfRange { p, col } => write!(f, "point {p}: column {col} out of range"),
            PathViolation::FirstColumn(c) => write!(f, "path starts in column {c}, not 1"),
            PathViolation::LastColumn(c) => write!(f, "path ends in column {c}, not L"),
            PathViolation::RowStep { p } => write!(f, "point {p}: same-row step must advance one column"),
            PathViolation::DownJump { p } => write!(f, "point {p}: downward jump must keep the column"),
            PathViolation::UpJump { p } => {
                write!(f, "point {p}: upward jump must advance the column by the rows climbed (column regress)")
            }
            PathViolation::ConsecutiveJumps { p } => write!(f, "point {p}: consecutive jumps"),
        }
    }
}

pub fn validate_path(path: &PathSpec, k: usize, l: usize) -> Result<(), Vec<PathViolation>> {
    let pts = &path.points;
    if pts.is_empty() {
        return Err(vec![PathViolation::Empty]);
    }
    let mut out = Vec::new();
    for (p, &(i, j)) in pts.iter().enumerate() {
        if i < 1 || i > k {
            out.push(PathViolation::RowOutOfRange { p: p + 1, row: i });
        }
        if j < 1 || j > l {
            out.push(PathViolation::ColOutOfRange { p: p + 1, col: j });
        }
    }
    if pts[0].1 != 1 {
        out.push(PathViolation::FirstColumn(pts[0].1));
    }
    if pts[pts.len() - 1].1 != l {
        out.push(PathViolation::LastColumn(pts[pts.len() - 1].1));
    }
    for (p, w) in pts.windows(2).enumerate() {
        let ((i0, j0), (i1, j1)) = (w[0], w[1]);
        let p = p + 1;
        if i1 == i0 {
            if j1 != j0 + 1 {
                out.push(PathViolation::RowStep { p });
            }
        } else if i1 > i0 {
            if j1 != j0 {
                out.push(PathViolation::DownJump { p });
            }
        } else if j1 != j0 + (i0 - i1) {
            out.push(PathViolation::UpJump { p });
        }
    }
    for p in 1..pts.len().saturating_sub(1) {
        if pts[p].0 != pts[p - 1].0 && pts[p + 1].0 != pts[p].0 {
            out.push(PathViolation::ConsecutiveJumps { p: p + 1 });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Cell costs plus, per jump, `C_jump |di| + mu - C(from) - C(to)`.
pub fn path_cost(m: &BitMatrix, path: &PathSpec, mu: i64, c: &CostConstants) -> Result<i64> {
    c.check_shape(m)?;
    c.check_mu(mu)?;
    validate_path(path, m.rows(), m.cols()).map_err(|v| {
        Error::InvalidPath(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "))
    })?;
    let cell = |(i, j): (usize, usize)| c.cell(m.get(i, j));
    let mut cost: i64 = path.points.iter().map(|&pt| cell(pt)).sum();
    for p in path.jumps() {
        let (a, b) = (path.points[p], path.points[p + 1]);
        cost += c.c_jump() * a.0.abs_diff(b.0) as i64 + mu - cell(a) - cell(b);
    }
    Ok(cost)
}

/// Minimum path cost by dynamic programming over `(cell, arrived_by_jump)`.
///
/// Increments: a row step adds the target cell; a jump from `(i, j)` adds
/// `C_jump |di| + mu - C(i, j)` (the landing cell cancels). Jumps may only
/// leave states that were not themselves reached by a jump.
pub fn min_path_cost(m: &BitMatrix, mu: i64, c: &CostConstants) -> Result<i64> {
    c.check_shape(m)?;
    c.check_mu(mu)?;
    let (k, l) = (m.rows(), m.cols());
    const INF: i64 = i64::MAX / 4;
    // free[i][j]: may jump next; landed[i][j]: just arrived by a jump
    let mut free = vec![vec![INF; l + 1]; k + 1];
    let mut landed = vec![vec![INF; l + 1]; k + 1];
    let cell = |i: usize, j: usize| c.cell(m.get(i, j));
    for j in 1..=l {
        for i in 1..=k {
            free[i][j] = if j == 1 {
                cell(i, 1)
            } else {
                free[i][j - 1].min(landed[i][j - 1]) + cell(i, j)
            };
        }
        for i in 1..=k {
            let mut best = INF;
            // downward jumps within column j
            for src in 1..i {
                best = best.min(free[src][j] + c.c_jump() * (i - src) as i64 + mu - cell(src, j));
            }
            // upward jumps from (src, j - (src - i)) with src > i
            for src in i + 1..=k {
                let climb = src - i;
                if climb < j {
                    let from_col = j - climb;
                    best = best.min(free[src][from_col] + c.c_jump() * climb as i64 + mu - cell(src, from_col));
                }
            }
            landed[i][j] = best;
        }
    }
    Ok((1..=k).map(|i| free[i][l].min(landed[i][l])).min().unwrap_or(INF))
}

pub const BRUTE_CELL_CAP: usize = 24;

/// Enumerates every valid path and minimises [`path_cost`]. Only for
/// matrices with at most [`BRUTE_CELL_CAP`] cells.
pub fn min_path_cost_brute(m: &BitMatrix, mu: i64, c: &CostConstants) -> Result<i64> {
    c.check_shape(m)?;
    c.check_mu(mu)?;
    if m.rows() * m.cols() > BRUTE_CELL_CAP {
        return Err(Error::TooLarge(format!(
            "{}x{} matrix exceeds {BRUTE_CELL_CAP} cells",
            m.rows(),
            m.cols()
        )));
    }
    let mut best = i64::MAX;
    for_each_path(m.rows(), m.cols(), &mut |path| {
        let cost = path_cost(m, path, mu, c).expect("enumerated path is valid");
        best = best.min(cost);
    });
    Ok(best)
}

/// Calls `visit` on every valid path of a `k x l` matrix.
pub fn for_each_path(k: usize, l: usize, visit: &mut dyn FnMut(&PathSpec)) {
    fn extend(path: &mut PathSpec, jumped: bool, k: usize, l: usize, visit: &mut dyn FnMut(&PathSpec)) {
        let (i, j) = *path.points.last().unwrap();
        if j == l {
            visit(path);
        }
        if j < l {
            path.points.push((i, j + 1));
            extend(path, false, k, l, visit);
            path.points.pop();
        }
        if jumped {
            return;
        }
        for i2 in i + 1..=k {
            path.points.push((i2, j));
            extend(path, true, k, l, visit);
            path.points.pop();
        }
        for i2 in 1..i {
            let j2 = j + (i - i2);
            if j2 <= l {
                path.points.push((i2, j2));
                extend(path, true, k, l, visit);
                path.points.pop();
            }
        }
    }
    for i in 1..=k {
        let mut path = PathSpec::new(vec![(i, 1)]);
        extend(&mut path, false, k, l, visit);
    }
}

/// Draws a random valid path on a `k x l` matrix. After every non-jump
/// point a jump is attempted with probability `jump_prob`, split evenly
/// between downward and upward jumps when both fit.
pub fn random_path<R: Rng + ?Sized>(k: usize, l: usize, jump_prob: f64, rng: &mut R) -> PathSpec {
    let mut i = rng.gen_range(1..=k);
    let mut j = 1;
    let mut points = vec![(i, j)];
    let mut jumped = false;
    loop {
        if !jumped && rng.gen_bool(jump_prob) {
            let up_max = (i - 1).min(l - j);
            let down = i < k && (up_max == 0 || rng.gen_bool(0.5));
            if down {
                i = rng.gen_range(i + 1..=k);
            } else if up_max > 0 {
                let climb = rng.gen_range(1..=up_max);
                i -= climb;
                j += climb;
            }
            if points.last() != Some(&(i, j)) {
                points.push((i, j));
                jumped = true;
                continue;
            }
        }
        if j == l {
            break;
        }
        j += 1;
        points.push((i, j));
        jumped = false;
    }
    PathSpec::new(points)
}

pub fn p_edit(m: &BitMatrix, mu: i64, c: &CostConstants) -> Result<bool> {
    Ok(min_path_cost(m, mu, c)? < c.threshold())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Promise {
    One,
    Zero,
    Gap,
}

impl fmt::Display for Promise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Promise::One => "one",
            Promise::Zero => "zero",
            Promise::Gap => "gap",
        })
    }
}

pub fn pp_edit_promise(m: &BitMatrix, c: &CostConstants) -> Result<Promise> {
    if p_edit(m, c.q, c)? {
        Ok(Promise::One)
    } else if !p_edit(m, 0, c)? {
        Ok(Promise::Zero)
    } else {
        Ok(Promise::Gap)
    }
}
