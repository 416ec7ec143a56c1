//! Symbol-level alignments: a set of strictly increasing index pairs, priced
//! as `sum delta(a_i, b_j) + |a| + |b| - 2|A|`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 1-based index pairs `(i, j)`, strictly increasing in both coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Alignment {
    pub pairs: Vec<(usize, usize)>,
}

impl Alignment {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        Alignment { pairs }
    }

    pub fn identity(len: usize) -> Self {
        Alignment::new((1..=len).map(|i| (i, i)).collect())
    }

    pub fn validate(&self, n: usize, m: usize) -> Result<()> {
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            if i < 1 || i > n || j < 1 || j > m {
                return Err(Error::Params(format!("pair ({i},{j}) outside {n}x{m}")));
            }
            if k > 0 {
                let (pi, pj) = self.pairs[k - 1];
                if i <= pi || j <= pj {
                    return Err(Error::Params(format!("pair ({i},{j}) is not strictly after ({pi},{pj})")));
                }
            }
        }
        Ok(())
    }
}

pub fn align_cost(al: &Alignment, a: &[u8], b: &[u8]) -> Result<usize> {
    al.validate(a.len(), b.len())?;
    let mismatches = al.pairs.iter().filter(|&&(i, j)| a[i - 1] != b[j - 1]).count();
    Ok(mismatches + a.len() + b.len() - 2 * al.pairs.len())
}

/// Minimum alignment cost by exhaustive enumeration of every alignment of
/// an `n x m` pair. Exponential; meant for strings of length <= 8 or so.
pub fn min_align_cost_brute(a: &[u8], b: &[u8]) -> usize {
    let mismatch = |i: usize, j: usize| a[i] != b[j];
    min_over_alignments(a.len(), b.len(), &mismatch)
}

/// Enumerates alignments depth-first, accumulating the mismatch count of
/// each prefix; every node of the search tree is one alignment.
pub(crate) fn min_over_alignments(n: usize, m: usize, mismatch: &dyn Fn(usize, usize) -> bool) -> usize {
    fn go(
        i0: usize,
        j0: usize,
        size: usize,
        mis: usize,
        n: usize,
        m: usize,
        mismatch: &dyn Fn(usize, usize) -> bool,
        best: &mut usize,
    ) {
        *best = (*best).min(mis + n + m - 2 * size);
        for i in i0..n {
            for j in j0..m {
                go(i + 1, j + 1, size + 1, mis + usize::from(mismatch(i, j)), n, m, mismatch, best);
            }
        }
    }
    let mut best = n + m;
    go(0, 0, 0, 0, n, m, mismatch, &mut best);
    best
}

/// Number of alignments of an `n x m` pair, `sum_k C(n,k) C(m,k)`.
pub fn alignment_count(n: usize, m: usize) -> u64 {
    fn binom(n: usize, k: usize) -> u64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
    }
    (0..=n.min(m)).map(|k| binom(n, k) * binom(m, k)).sum()
}
