//! Gadget-level coarse alignments between the blocks of `x` and the gadget
//! blocks of `y`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::kernels::edit_distance_bitparallel;
use crate::error::{Error, Result};
use crate::reduction::ReductionInstance;

/// Terms `(p, q)`: `p` indexes blocks of `x` (1-based), `q` gadget blocks of `y`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoarseAlignment {
    pub terms: Vec<(Vec<usize>, Vec<usize>)>,
}

impl CoarseAlignment {
    pub fn new(terms: Vec<(Vec<usize>, Vec<usize>)>) -> Self {
        CoarseAlignment { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest and largest `x` block mentioned.
    pub fn u_range(&self) -> Option<(usize, usize)> {
        let all = self.terms.iter().flat_map(|(p, _)| p.iter().copied());
        let lo = all.clone().min()?;
        Some((lo, all.max()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoarseViolation {
    /// `n' > n''` or `n' = 0`.
    BadRange { lo: usize, hi: usize },
    /// Condition 1: the union of one side differs from its index range.
    Cover { side: Side, missing: Vec<usize>, extra: Vec<usize> },
    /// Condition 2.
    EmptyTerm { term: usize, side: Side },
    /// Condition 3.
    Overlap { side: Side, index: usize },
    /// Condition 4 (also raised for a decreasing sequence inside one term).
    Order { side: Side, term: usize },
    /// Condition 5.
    BothLong { term: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    P,
    Q,
}

impl CoarseViolation {
    pub fn condition(&self) -> u8 {
        match self {
            CoarseViolation::BadRange { .. } | CoarseViolation::Cover { .. } => 1,
            CoarseViolation::EmptyTerm { .. } => 2,
            CoarseViolation::Overlap { .. } => 3,
            CoarseViolation::Order { .. } => 4,
            CoarseViolation::BothLong { .. } => 5,
        }
    }
}

impl fmt::Display for CoarseViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoarseViolation::BadRange { lo, hi } => write!(f, "range [{lo}..{hi}] is empty"),
            CoarseViolation::Cover { side, missing, extra } => {
                write!(f, "{side:?} side: missing {missing:?}, outside range {extra:?}")
            }
            CoarseViolation::EmptyTerm { term, side } => write!(f, "term {term}: empty {side:?} sequence"),
            CoarseViolation::Overlap { side, index } => write!(f, "{side:?} index {index} used twice"),
            CoarseViolation::Order { side, term } => write!(f, "term {term}: {side:?} sequence out of order"),
            CoarseViolation::BothLong { term } => write!(f, "term {term}: both sequences longer than one"),
        }
    }
}

fn check_side(
    alignment: &CoarseAlignment,
    side: Side,
    lo: usize,
    hi: usize,
    out: &mut Vec<CoarseViolation>,
) {
    let pick = |t: &(Vec<usize>, Vec<usize>)| -> Vec<usize> {
        match side {
            Side::P => t.0.clone(),
            Side::Q => t.1.clone(),
        }
    };
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut prev_max: Option<usize> = None;
    for (k, term) in alignment.terms.iter().enumerate() {
        let s = pick(term);
        if s.is_empty() {
            out.push(CoarseViolation::EmptyTerm { term: k + 1, side });
            continue;
        }
        let increasing = s.windows(2).all(|w| w[0] < w[1]);
        let after_prev = prev_max.is_none_or(|m| s.iter().all(|&v| v > m));
        if !increasing || !after_prev {
            out.push(CoarseViolation::Order { side, term: k + 1 });
        }
        prev_max = prev_max.max(s.iter().copied().max());
        for v in s {
            *seen.entry(v).or_default() += 1;
        }
    }
    let mut overlaps: Vec<usize> = seen.iter().filter(|&(_, &c)| c > 1).map(|(&v, _)| v).collect();
    overlaps.sort_unstable();
    out.extend(overlaps.into_iter().map(|index| CoarseViolation::Overlap { side, index }));
    let missing: Vec<usize> = (lo..=hi).filter(|v| !seen.contains_key(v)).collect();
    let mut extra: Vec<usize> = seen.keys().copied().filter(|v| *v < lo || *v > hi).collect();
    extra.sort_unstable();
    if !missing.is_empty() || !extra.is_empty() {
        out.push(CoarseViolation::Cover { side, missing, extra });
    }
}

/// Checks the five defining conditions over `p`-range `[lo..hi]` and
/// `q`-range `[1..m]`. `lo == hi` is accepted (a single `x` block).
pub fn coarse_validate(
    alignment: &CoarseAlignment,
    lo: usize,
    hi: usize,
    m: usize,
) -> std::result::Result<(), Vec<CoarseViolation>> {
    let mut out = Vec::new();
    if lo == 0 || lo > hi {
        out.push(CoarseViolation::BadRange { lo, hi });
    }
    check_side(alignment, Side::P, lo, hi, &mut out);
    check_side(alignment, Side::Q, 1, m, &mut out);
    for (k, (p, q)) in alignment.terms.iter().enumerate() {
        if p.len() > 1 && q.len() > 1 {
            out.push(CoarseViolation::BothLong { term: k + 1 });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn term_cost(inst: &ReductionInstance, p: (usize, usize), q: (usize, usize)) -> usize {
    edit_distance_bitparallel(inst.x_blocks(p.0, p.1), inst.y_blocks(q.0, q.1))
}

/// `sum over terms of delta(u_p, v_q)` with `u_p` the concatenated `x` blocks
/// of `p` and `v_q` the concatenated gadget blocks of `y` in `q`.
pub fn coarse_edit_cost(inst: &ReductionInstance, alignment: &CoarseAlignment) -> Result<usize> {
    let (lo, hi) = alignment
        .u_range()
        .ok_or_else(|| Error::InvalidCoarse("no terms".into()))?;
    if hi > inst.x_block_count() {
        return Err(Error::InvalidCoarse(format!(
            "block {hi} beyond the {} blocks of x",
            inst.x_block_count()
        )));
    }
    coarse_validate(alignment, lo, hi, inst.l()).map_err(|v| {
        let text: Vec<String> = v.iter().map(ToString::to_string).collect();
        Error::InvalidCoarse(text.join("; "))
    })?;
    Ok(alignment
        .terms
        .iter()
        .map(|(p, q)| term_cost(inst, (p[0], p[p.len() - 1]), (q[0], q[q.len() - 1])))
        .sum())
}

/// Largest `L` for which [`coarse_min_brute`] runs.
pub const COARSE_BRUTE_MAX_L: usize = 3;

/// Exact minimum of [`coarse_edit_cost`] over every coarse alignment of every
/// `x` block range. Terms are contiguous block ranges, so the search runs over
/// compositions of the two ranges with per-range memoised term costs.
pub fn coarse_min_brute(inst: &ReductionInstance) -> Result<usize> {
    let l = inst.l();
    if l > COARSE_BRUTE_MAX_L {
        return Err(Error::TooLarge(format!("coarse enumeration needs L <= {COARSE_BRUTE_MAX_L}, got {l}")));
    }
    let blocks = inst.x_block_count();
    let mut memo: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    let mut cost = |p: (usize, usize), q: (usize, usize)| -> usize {
        *memo.entry((p.0, p.1, q.0, q.1)).or_insert_with(|| term_cost(inst, p, q))
    };
    let mut best = usize::MAX;
    for lo in 1..=blocks {
        // d[p][q]: blocks lo..p-1 of x and 1..q-1 of y already covered
        let width = blocks + 2;
        let mut d = vec![usize::MAX; width * (l + 2)];
        d[lo * (l + 2) + 1] = 0;
        for p in lo..=blocks {
            for q in 1..=l {
                let here = d[p * (l + 2) + q];
                if here == usize::MAX {
                    continue;
                }
                // one x block against 1..=rest y blocks
                for q_end in q..=l {
                    let c = here + cost((p, p), (q, q_end));
                    let slot = &mut d[(p + 1) * (l + 2) + q_end + 1];
                    *slot = (*slot).min(c);
                }
                // several x blocks against one y block
                for p_end in p + 1..=blocks {
                    let c = here + cost((p, p_end), (q, q));
                    let slot = &mut d[(p_end + 1) * (l + 2) + q + 1];
                    *slot = (*slot).min(c);
                }
            }
        }
        for hi in lo..=blocks {
            best = best.min(d[(hi + 1) * (l + 2) + l + 1]);
        }
    }
    Ok(best)
}

/// Calls `visit` with every coarse alignment of `[lo..hi]` against `[1..m]`,
/// listed term by term. Exponential; used as an independent check of the
/// search above.
pub fn for_each_coarse(lo: usize, hi: usize, m: usize, visit: &mut dyn FnMut(&CoarseAlignment)) {
    fn go(
        p: usize,
        q: usize,
        hi: usize,
        m: usize,
        acc: &mut Vec<(Vec<usize>, Vec<usize>)>,
        visit: &mut dyn FnMut(&CoarseAlignment),
    ) {
        if p > hi && q > m {
            visit(&CoarseAlignment::new(acc.clone()));
            return;
        }
        if p > hi || q > m {
            return;
        }
        for p_end in p..=hi {
            for q_end in q..=m {
                if p_end > p && q_end > q {
                    continue;
                }
                acc.push(((p..=p_end).collect(), (q..=q_end).collect()));
                go(p_end + 1, q_end + 1, hi, m, acc, visit);
                acc.pop();
            }
        }
    }
    go(lo, 1, hi, m, &mut Vec::new(), visit);
}
