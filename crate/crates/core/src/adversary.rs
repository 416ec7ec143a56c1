//! Balanced recursive symbols, the X/Y matrix families built from them, the
//! Hamming-distance-one relation between the families, and bounded-depth
//! Dyck checking of wrapped rows.
//!
//! A level-0 symbol is `k` bits; a level-`i` symbol is `k` level-`(i-1)`
//! symbols, so it has `k^{i+1}` bits. Kinds are told apart by the
//! imbalance `#1 - #0`, which is `+2`, `-2` or `0` at every level.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::BitMatrix;
use crate::pathcost::CostConstants;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolKind {
    Plus,
    Minus,
    Zero,
}

impl SymbolKind {
    pub fn imbalance(self) -> i64 {
        match self {
            SymbolKind::Plus => 2,
            SymbolKind::Minus => -2,
            SymbolKind::Zero => 0,
        }
    }
}

impl std::str::FromStr for SymbolKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(SymbolKind::Plus),
            "minus" | "-" => Ok(SymbolKind::Minus),
            "zero" | "0" => Ok(SymbolKind::Zero),
            other => Err(Error::Parse(format!("unknown symbol kind {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    X,
    Y,
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::Params(format!("k must be even and at least 2, got {k}")));
    }
    Ok(())
}

/// `k^{level+1}`, or an error when it does not fit comfortably in memory.
pub fn symbol_len(level: usize, k: usize) -> Result<usize> {
    let mut len: usize = k;
    for _ in 0..level {
        len = len
            .checked_mul(k)
            .filter(|&l| l <= 1 << 26)
            .ok_or_else(|| Error::TooLarge(format!("level {level} symbols with k={k}")))?;
    }
    Ok(len)
}

fn gen_into<R: Rng>(level: usize, kind: SymbolKind, k: usize, rng: &mut R, out: &mut Vec<bool>) {
    if level == 0 {
        let ones = match kind {
            SymbolKind::Plus => k / 2 + 1,
            SymbolKind::Minus => k / 2 - 1,
            SymbolKind::Zero => k / 2,
        };
        let mut bits: Vec<bool> = (0..k).map(|i| i < ones).collect();
        bits.shuffle(rng);
        out.extend(bits);
        return;
    }
    let extra = usize::from(kind != SymbolKind::Zero);
    let pairs = rng.gen_range(0..=(k - extra) / 2);
    let mut kinds = vec![SymbolKind::Zero; k];
    for slot in kinds.iter_mut().take(pairs) {
        *slot = SymbolKind::Plus;
    }
    for slot in kinds.iter_mut().skip(pairs).take(pairs) {
        *slot = SymbolKind::Minus;
    }
    if extra == 1 {
        kinds[2 * pairs] = kind;
    }
    kinds.shuffle(rng);
    for sub in kinds {
        gen_into(level - 1, sub, k, rng, out);
    }
}

pub fn gen_symbol_rng<R: Rng>(level: usize, kind: SymbolKind, k: usize, rng: &mut R) -> Result<Vec<bool>> {
    check_k(k)?;
    let mut out = Vec::with_capacity(symbol_len(level, k)?);
    gen_into(level, kind, k, rng, &mut out);
    Ok(out)
}

/// A random symbol of the given level and kind.
pub fn gen_symbol(level: usize, kind: SymbolKind, k: usize, seed: u64) -> Result<Vec<bool>> {
    gen_symbol_rng(level, kind, k, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn classify_unchecked(bits: &[bool], level: usize, k: usize) -> Option<SymbolKind> {
    if level == 0 {
        let ones = bits.iter().filter(|&&b| b).count() as i64;
        return match 2 * ones - bits.len() as i64 {
            2 => Some(SymbolKind::Plus),
            -2 => Some(SymbolKind::Minus),
            0 => Some(SymbolKind::Zero),
            _ => None,
        };
    }
    let sub = bits.len() / k;
    let mut score = 0i64;
    for chunk in bits.chunks(sub) {
        match classify_unchecked(chunk, level - 1, k)? {
            SymbolKind::Plus => score += 1,
            SymbolKind::Minus => score -= 1,
            SymbolKind::Zero => {}
        }
    }
    match score {
        1 => Some(SymbolKind::Plus),
        -1 => Some(SymbolKind::Minus),
        0 => Some(SymbolKind::Zero),
        _ => None,
    }
}

/// The kind of `bits` read as a level-`level` symbol, `None` if some
/// sub-block breaks the counting rules.
pub fn classify_block(bits: &[bool], level: usize, k: usize) -> Result<Option<SymbolKind>> {
    check_k(k)?;
    let len = symbol_len(level, k)?;
    if bits.len() != len {
        return Err(Error::Params(format!(
            "level-{level} symbol needs {len} bits, got {}",
            bits.len()
        )));
    }
    Ok(classify_unchecked(bits, level, k))
}

/// Side `N/2 = k^{t+2}` of the family matrices.
pub fn family_side(k: usize, t: usize) -> Result<usize> {
    check_k(k)?;
    let side = symbol_len(t + 1, k)?;
    if side > 1 << 12 {
        return Err(Error::TooLarge(format!("{side}x{side} matrices")));
    }
    Ok(side)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdvMatrix {
    pub k: usize,
    pub t: usize,
    pub family: Family,
    pub matrix: BitMatrix,
}

fn gen_matrix(k: usize, t: usize, seed: u64, family: Family) -> Result<AdvMatrix> {
    let side = family_side(k, t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let special = rng.gen_range(0..side);
    let rows = (0..side)
        .map(|r| {
            let kind = if family == Family::Y && r == special {
                SymbolKind::Plus
            } else {
                SymbolKind::Zero
            };
            gen_symbol_rng(t + 1, kind, k, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AdvMatrix {
        k,
        t,
        family,
        matrix: BitMatrix::from_rows(&rows)?,
    })
}

/// Every row is `k` level-`t` symbols with as many plus as minus.
pub fn gen_x_matrix(k: usize, t: usize, seed: u64) -> Result<AdvMatrix> {
    gen_matrix(k, t, seed, Family::X)
}

/// As X, except one row carries one extra plus symbol.
pub fn gen_y_matrix(k: usize, t: usize, seed: u64) -> Result<AdvMatrix> {
    gen_matrix(k, t, seed, Family::Y)
}

fn row_kinds(m: &BitMatrix, k: usize, t: usize) -> Option<Vec<Option<SymbolKind>>> {
    let side = family_side(k, t).ok()?;
    if m.rows() != side || m.cols() != side {
        return None;
    }
    Some((1..=side).map(|r| classify_unchecked(m.row(r), t + 1, k)).collect())
}

pub fn is_member_x(m: &BitMatrix, k: usize, t: usize) -> bool {
    row_kinds(m, k, t).is_some_and(|kinds| kinds.iter().all(|&c| c == Some(SymbolKind::Zero)))
}

pub fn is_member_y(m: &BitMatrix, k: usize, t: usize) -> bool {
    row_kinds(m, k, t).is_some_and(|kinds| {
        let plus = kinds.iter().filter(|&&c| c == Some(SymbolKind::Plus)).count();
        let zero = kinds.iter().filter(|&&c| c == Some(SymbolKind::Zero)).count();
        plus == 1 && zero + 1 == kinds.len()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub k: usize,
    pub t: usize,
    /// `N/2`.
    pub side: usize,
    pub exhaustive: bool,
    pub x_checked: u64,
    pub y_checked: u64,
    pub min_neighbors_per_x: u64,
    pub max_neighbors_per_x: u64,
    pub min_neighbors_per_y: u64,
    pub max_neighbors_per_y: u64,
    /// `(k/2)^{t+2} N/2`.
    pub bound_per_x: u64,
    /// `(k/2)^{t+2}`.
    pub bound_per_y: u64,
    /// Distinct flips of one matrix always give distinct neighbours.
    pub unique_per_flip: bool,
    pub ok: bool,
}

/// Counts, for one matrix, the single-bit flips that land in the target family.
fn neighbours(m: &BitMatrix, k: usize, t: usize, target: Family, unique: &mut bool) -> u64 {
    let mut flipped = m.clone();
    let mut seen = HashSet::new();
    let mut count = 0;
    for r in 1..=m.rows() {
        for c in 1..=m.cols() {
            let v = m.get(r, c);
            flipped.set(r, c, !v);
            let hit = match target {
                Family::X => is_member_x(&flipped, k, t),
                Family::Y => is_member_y(&flipped, k, t),
            };
            if hit {
                count += 1;
                *unique &= seen.insert(flipped.cells().to_vec());
            }
            flipped.set(r, c, v);
        }
    }
    count
}

/// All rows of `bits` bits (at most 20) that classify as `kind`.
fn all_rows(k: usize, t: usize, kind: SymbolKind) -> Option<Vec<Vec<bool>>> {
    let side = family_side(k, t).ok()?;
    (side <= 20).then(|| {
        (0u32..1 << side)
            .map(|v| (0..side).map(|i| (v >> (side - 1 - i)) & 1 == 1).collect::<Vec<bool>>())
            .filter(|r| classify_unchecked(r, t + 1, k) == Some(kind))
            .collect()
    })
}

fn for_each_product(rows: &[Vec<bool>], side: usize, visit: &mut dyn FnMut(&BitMatrix)) {
    let total = rows.len().pow(side as u32);
    for mut idx in 0..total {
        let mut chosen = Vec::with_capacity(side);
        for _ in 0..side {
            chosen.push(rows[idx % rows.len()].clone());
            idx /= rows.len();
        }
        visit(&BitMatrix::from_rows(&chosen).expect("rectangular"));
    }
}

/// Relation statistics. Exhaustive over both families when `|X|` and `|Y|`
/// are at most `budget`, otherwise `budget` seeded samples from each family.
pub fn relation_stats(k: usize, t: usize, budget: u64, seed: u64) -> Result<RelationReport> {
    let side = family_side(k, t)?;
    if budget == 0 {
        return Err(Error::Params("sample budget must be positive".into()));
    }
    if side * side > 1 << 16 {
        return Err(Error::TooLarge(format!("{side}x{side} matrices")));
    }
    let half_k = (k / 2) as u64;
    let bound_per_y = half_k.pow(t as u32 + 2);
    let mut report = RelationReport {
        k,
        t,
        side,
        exhaustive: false,
        x_checked: 0,
        y_checked: 0,
        min_neighbors_per_x: u64::MAX,
        max_neighbors_per_x: 0,
        min_neighbors_per_y: u64::MAX,
        max_neighbors_per_y: 0,
        bound_per_x: bound_per_y * side as u64,
        bound_per_y,
        unique_per_flip: true,
        ok: false,
    };
    let tally_x = |m: &BitMatrix, r: &mut RelationReport| {
        let c = neighbours(m, k, t, Family::Y, &mut r.unique_per_flip);
        r.x_checked += 1;
        r.min_neighbors_per_x = r.min_neighbors_per_x.min(c);
        r.max_neighbors_per_x = r.max_neighbors_per_x.max(c);
    };
    let tally_y = |m: &BitMatrix, r: &mut RelationReport| {
        let c = neighbours(m, k, t, Family::X, &mut r.unique_per_flip);
        r.y_checked += 1;
        r.min_neighbors_per_y = r.min_neighbors_per_y.min(c);
        r.max_neighbors_per_y = r.max_neighbors_per_y.max(c);
    };
    let exhaustive = match (all_rows(k, t, SymbolKind::Zero), all_rows(k, t, SymbolKind::Plus)) {
        (Some(zero), Some(plus)) => {
            let x_size = (zero.len() as u64).checked_pow(side as u32);
            let y_size = x_size.map(|x| x / zero.len() as u64 * plus.len() as u64 * side as u64);
            match (x_size, y_size) {
                (Some(xs), Some(ys)) if xs <= budget && ys <= budget => Some((zero, plus)),
                _ => None,
            }
        }
        _ => None,
    };
    if let Some((zero, plus)) = exhaustive {
        report.exhaustive = true;
        for_each_product(&zero, side, &mut |m| tally_x(m, &mut report));
        // Y: choose the special row, a plus row for it, zero rows elsewhere
        for special in 1..=side {
            for p in &plus {
                for_each_product(&zero, side - 1, &mut |rest| {
                    let mut rows: Vec<Vec<bool>> = (1..side).map(|r| rest.row(r).to_vec()).collect();
                    rows.insert(special - 1, p.clone());
                    tally_y(&BitMatrix::from_rows(&rows).expect("rectangular"), &mut report);
                });
            }
        }
    } else {
        for s in 0..budget {
            tally_x(&gen_x_matrix(k, t, seed.wrapping_add(2 * s))?.matrix, &mut report);
            tally_y(&gen_y_matrix(k, t, seed.wrapping_add(2 * s + 1))?.matrix, &mut report);
        }
    }
    report.ok = report.unique_per_flip
        && report.min_neighbors_per_x >= report.bound_per_x
        && report.min_neighbors_per_y >= report.bound_per_y;
    Ok(report)
}

/// `k` even, `k >= 2` and `C1 k (t+2) < C_jump`.
pub fn validate_params(k: usize, t: usize, c: &CostConstants) -> std::result::Result<(), Vec<String>> {
    let mut out = Vec::new();
    if !k.is_multiple_of(2) {
        out.push(format!("k={k} is odd"));
    }
    if k < 2 {
        out.push(format!("k={k} is below 2"));
    }
    let load = c.c1() * k as i64 * (t as i64 + 2);
    if load >= c.c_jump() {
        out.push(format!("C1*k*(t+2) = {load} is not below C_jump = {}", c.c_jump()));
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// [`validate_params`] plus `k^{t+2} = N/2` for `N = 2^{n/2}`.
pub fn validate_params_for_width(
    k: usize,
    t: usize,
    c: &CostConstants,
    n: usize,
) -> std::result::Result<(), Vec<String>> {
    let mut out = validate_params(k, t, c).err().unwrap_or_default();
    let half = (1u128 << (n / 2)) / 2;
    let side = (k as u128).checked_pow(t as u32 + 2);
    if side != Some(half) {
        out.push(format!("k^(t+2) = {} differs from N/2 = {half}", side.map_or("overflow".into(), |s| s.to_string())));
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Largest `|#0 - #1|` over the prefixes of `row`.
pub fn prefix_imbalance_profile(row: &[bool]) -> usize {
    let mut level = 0i64;
    let mut worst = 0;
    for &b in row {
        level += if b { -1 } else { 1 };
        worst = worst.max(level.unsigned_abs() as usize);
    }
    worst
}

/// `0 -> '('`, `1 -> ')'`, wrapped in `d` opening and `d` closing brackets.
pub fn dyck_wrap(row: &[bool], d: usize) -> String {
    let mut s = String::with_capacity(row.len() + 2 * d);
    s.extend(std::iter::repeat_n('(', d));
    s.extend(row.iter().map(|&b| if b { ')' } else { '(' }));
    s.extend(std::iter::repeat_n(')', d));
    s
}

/// Balanced, never below zero, and never deeper than `depth_bound`.
pub fn dyck_check(s: &str, depth_bound: usize) -> Result<bool> {
    let mut depth = 0usize;
    let mut ok = true;
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                ok &= depth <= depth_bound;
            }
            ')' => {
                if depth == 0 {
                    ok = false;
                } else {
                    depth -= 1;
                }
            }
            other => return Err(Error::InvalidSymbol(format!("{other:?} is not a bracket"))),
        }
    }
    Ok(ok && depth == 0)
}

/// Default reported bound on the prefix profile of family rows, `2k(t+2)`.
pub fn default_profile_bound(k: usize, t: usize) -> usize {
    2 * k * (t + 2)
}
