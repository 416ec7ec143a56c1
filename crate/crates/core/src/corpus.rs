//! Seeded corpora of promise-satisfying branching programs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bp::{matrix_encode, random_bp, Nbp};
use crate::error::{Error, Result};
use crate::pathcost::{pp_edit_promise, Promise};
use crate::reduction::GadgetParams;

const TT_BUDGET: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub depth: usize,
    pub width: usize,
    pub density: f64,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub index: usize,
    pub params: GenParams,
    pub bp: Nbp,
    pub promise: Promise,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusSummary {
    pub n: usize,
    pub base_seed: u64,
    pub requested: usize,
    pub drawn: usize,
    pub accepted: usize,
    pub rejected_gap: usize,
    pub one: usize,
    pub zero: usize,
}

/// Draws random programs until `count` lie inside the promise (classified
/// with the cost constants that `params` gives for this `n`).
pub fn promise_corpus(n: usize, count: usize, seed: u64, params: &GadgetParams) -> Result<(Vec<CorpusEntry>, CorpusSummary)> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Params(format!("corpus needs an even positive n, got {n}")));
    }
    let l = 1usize << (n / 2);
    let constants = params.constants(l)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::with_capacity(count);
    let mut summary = CorpusSummary {
        n,
        base_seed: seed,
        requested: count,
        drawn: 0,
        accepted: 0,
        rejected_gap: 0,
        one: 0,
        zero: 0,
    };
    let max_draws = 20 * count + 100;
    while entries.len() < count {
        if summary.drawn == max_draws {
            return Err(Error::Params(format!(
                "only {} of {count} programs inside the promise after {max_draws} draws",
                entries.len()
            )));
        }
        summary.drawn += 1;
        let gp = GenParams {
            depth: rng.gen_range(2..=5),
            width: rng.gen_range(1..=3),
            density: rng.gen_range(15..=80) as f64 / 100.0,
            seed: rng.gen(),
        };
        let bp = random_bp(n, gp.depth, gp.width, gp.density, gp.seed)?;
        let m = matrix_encode(&bp.truth_table(TT_BUDGET)?)?;
        match pp_edit_promise(m.matrix(), &constants)? {
            Promise::Gap => summary.rejected_gap += 1,
            p => {
                if p == Promise::One {
                    summary.one += 1;
                } else {
                    summary.zero += 1;
                }
                entries.push(CorpusEntry {
                    index: entries.len() + 1,
                    params: gp,
                    bp,
                    promise: p,
                });
            }
        }
    }
    summary.accepted = entries.len();
    Ok((entries, summary))
}
