//! Conversions between matrix paths and coarse alignments, and the good/bad
//! classification of coarse-alignment terms.

use serde::{Deserialize, Serialize};

use crate::editdist::CoarseAlignment;
use crate::error::{Error, Result};
use crate::pathcost::{validate_path, PathSpec};

/// Path point `(i, j)` sits over block `i + j - 1` of `x` and gadget block
/// `j` of `y`. A row step gives a one-to-one term; a downward jump merges the
/// skipped `x` blocks into one term; an upward jump merges `y` blocks.
pub fn path_to_coarse(path: &PathSpec, l: usize) -> Result<CoarseAlignment> {
    validate_path(path, 2 * l - 1, l).map_err(|v| {
        Error::InvalidPath(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
    })?;
    let pts = &path.points;
    let mut terms = Vec::with_capacity(pts.len());
    let mut p = 0;
    while p < pts.len() {
        let (i, j) = pts[p];
        match pts.get(p + 1) {
            Some(&(i2, j2)) if i2 != i => {
                if j2 == j {
                    terms.push(((i + j - 1..=i2 + j2 - 1).collect(), vec![j]));
                } else {
                    terms.push((vec![i2 + j2 - 1], (j..=j2).collect()));
                }
                p += 2;
            }
            _ => {
                terms.push((vec![i + j - 1], vec![j]));
                p += 1;
            }
        }
    }
    Ok(CoarseAlignment::new(terms))
}

/// Inverse direction: a multi-block `x` side becomes a downward jump, a
/// multi-block `y` side an upward jump. Refuses alignments with bad terms.
pub fn coarse_to_path(alignment: &CoarseAlignment, l: usize) -> Result<PathSpec> {
    let k = 2 * l - 1;
    let bad = classify_terms(alignment, k)
        .iter()
        .filter(|c| **c != TermClass::Good)
        .count();
    if bad > 0 {
        return Err(Error::BadTerms(bad));
    }
    let mut points = Vec::new();
    for (p, q) in &alignment.terms {
        if p.is_empty() || q.is_empty() {
            return Err(Error::InvalidCoarse("empty term".into()));
        }
        let (p_min, p_max) = (p[0], p[p.len() - 1]);
        let (q_min, q_max) = (q[0], q[q.len() - 1]);
        if p.len() != 1 || q.len() != 1 {
            if p.len() != 1 {
                points.push((p_min - q_min + 1, q_min));
                points.push((p_max - q_min + 1, q_min));
            } else {
                points.push((p_min - q_min + 1, q_min));
                points.push((p_min - q_max + 1, q_max));
            }
        } else {
            points.push((p_min - q_min + 1, q_min));
        }
    }
    Ok(PathSpec::new(points))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermClass {
    Good,
    /// Some `a - b < 0`, none `>= K`.
    BadCat1,
    /// Some `a - b >= K`, none negative.
    BadCat2,
    /// Both occur.
    BadCat3,
}

/// A term is bad when some `a` in `p` and `b` in `q` have `a - b` outside
/// `[0, K)`.
pub fn classify_terms(alignment: &CoarseAlignment, k: usize) -> Vec<TermClass> {
    alignment
        .terms
        .iter()
        .map(|(p, q)| {
            let diffs = p.iter().flat_map(|&a| q.iter().map(move |&b| a as i64 - b as i64));
            let negative = diffs.clone().any(|d| d < 0);
            let high = diffs.into_iter().any(|d| d >= k as i64);
            match (negative, high) {
                (false, false) => TermClass::Good,
                (true, false) => TermClass::BadCat1,
                (false, true) => TermClass::BadCat2,
                (true, true) => TermClass::BadCat3,
            }
        })
        .collect()
}
