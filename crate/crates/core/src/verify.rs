//! The `verify all` suite: every structural identity of the reduction,
//! re-checked against brute force on seeded inputs.

use std::collections::HashMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::adversary::{
    dyck_check, dyck_wrap, gen_x_matrix, gen_y_matrix, prefix_imbalance_profile, relation_stats, validate_params,
};
use crate::convert::{classify_terms, coarse_to_path, path_to_coarse, TermClass};
use crate::corpus::{promise_corpus, CorpusEntry};
use crate::editdist::{
    coarse_edit_cost, coarse_min_brute, coarse_validate, edit_distance, for_each_coarse, min_over_alignments,
};
use crate::error::{Error, Result};
use crate::matrix::BitMatrix;
use crate::ov::{count_orthogonal, parity_ov, random_cnf, sat_count_brute, vector_bit, williams_vectors, Side};
use crate::pathcost::{
    for_each_path, min_path_cost, min_path_cost_brute, path_cost, random_path, validate_path, CostConstants, Promise,
    BRUTE_CELL_CAP,
};
use crate::reduction::{build_instance, decide_via_editdist, equalize_pad, verify_gadget_contract, GadgetParams, ReductionInstance};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Variable count of the reduction corpus (the coarse-alignment checks
    /// always use an `n = 2` corpus).
    pub n: usize,
    /// Programs per corpus.
    pub seeds: usize,
    pub seed: u64,
    pub params: GadgetParams,
    /// Longest string in the exhaustive alignment sweep.
    pub align_max_len: usize,
    pub align_alphabet: u8,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n: 2,
            seeds: 50,
            seed: 0,
            params: GadgetParams::default(),
            align_max_len: 6,
            align_alphabet: 4,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub ok: bool,
    pub detail: Value,
    #[serde(skip)]
    pub elapsed_ms: f64,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, Value)>) -> CheckResult {
    let start = Instant::now();
    let (ok, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, json!({ "error": e.to_string(), "kind": e.kind() })),
    };
    CheckResult {
        name,
        ok,
        detail,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Exhaustive-alignment minimum against the DP on every pair of strings of
/// length `<= max_len`. The enumeration depends only on the pair's mismatch
/// pattern, so it is memoised on that pattern.
pub fn alignment_sweep(max_len: usize, alphabet: u8) -> Result<(u64, usize, u64)> {
    if max_len > 7 {
        return Err(Error::TooLarge(format!("alignment sweep up to length {max_len}")));
    }
    let mut strings: Vec<Vec<u8>> = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for c in 0..alphabet {
                let mut t: Vec<u8> = s.clone();
                t.push(c);
                next.push(t);
            }
        }
        strings.extend(next.iter().cloned());
        frontier = next;
    }
    let mut memo: HashMap<u64, usize> = HashMap::new();
    let (mut pairs, mut bad) = (0u64, 0u64);
    for a in &strings {
        for b in &strings {
            let mut mask = 0u64;
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    if x != y {
                        mask |= 1 << (i * b.len() + j);
                    }
                }
            }
            let key = mask | (a.len() as u64) << 49 | (b.len() as u64) << 53;
            let (n, m) = (a.len(), b.len());
            let best = *memo.entry(key).or_insert_with(|| {
                min_over_alignments(n, m, &|i, j| mask >> (i * m + j) & 1 == 1)
            });
            pairs += 1;
            bad += u64::from(best != edit_distance(a, b));
        }
    }
    Ok((pairs, memo.len(), bad))
}

fn corpus_instances(corpus: &[CorpusEntry], params: &GadgetParams) -> Result<Vec<ReductionInstance>> {
    corpus.iter().map(|e| build_instance(&e.bp, params)).collect()
}

fn random_matrix(rng: &mut ChaCha8Rng) -> BitMatrix {
    loop {
        let (k, l) = (rng.gen_range(1..=6), rng.gen_range(1..=4));
        if k * l <= BRUTE_CELL_CAP {
            let cells = (0..k * l).map(|_| rng.gen_bool(0.5)).collect();
            return BitMatrix::from_cells(k, l, cells).expect("sized");
        }
    }
}

pub fn run_all(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let params = opts.params;
    let (corpus2, summary2) = promise_corpus(2, opts.seeds, opts.seed, &params)?;
    let inst2 = corpus_instances(&corpus2, &params)?;
    let (corpus_n, summary_n, inst_n) = if opts.n == 2 {
        (corpus2.clone(), summary2.clone(), inst2.clone())
    } else {
        let (c, s) = promise_corpus(opts.n, opts.seeds, opts.seed, &params)?;
        let i = corpus_instances(&c, &params)?;
        (c, s, i)
    };
    let mut out = Vec::new();

    out.push(check("alignment_minimum", || {
        let (pairs, patterns, bad) = alignment_sweep(opts.align_max_len, opts.align_alphabet)?;
        Ok((bad == 0, json!({ "max_len": opts.align_max_len, "alphabet": opts.align_alphabet, "pairs": pairs, "patterns": patterns, "mismatches": bad })))
    }));

    out.push(check("padding", || {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xB1);
        let mut bad = 0;
        for _ in 0..200 {
            let la = rng.gen_range(1..=12);
            let lb = rng.gen_range(0..la);
            let a: Vec<u8> = (0..la).map(|_| rng.gen_range(0..2)).collect();
            let b: Vec<u8> = (0..lb).map(|_| rng.gen_range(0..2)).collect();
            let (an, bn) = equalize_pad(&a, &b)?;
            bad += usize::from(edit_distance(an.as_slice(), bn.as_slice()) != la - lb + edit_distance(&a, &b) || an.len() != bn.len());
        }
        Ok((bad == 0, json!({ "pairs": 200, "violations": bad })))
    }));

    out.push(check("gadget_contract", || {
        let mut pairs = 0;
        let mut bad = 0;
        for e in corpus2.iter().chain(if opts.n == 2 { [].iter() } else { corpus_n.iter() }) {
            let r = verify_gadget_contract(&e.bp, &params)?;
            pairs += r.pairs_checked;
            bad += r.violations.len();
        }
        Ok((bad == 0, json!({ "pairs": pairs, "violations": bad })))
    }));

    out.push(check("reduction_equivalence", || {
        let mut rows = Vec::new();
        let mut bad = 0;
        for (e, inst) in corpus_n.iter().zip(&inst_n) {
            let d = decide_via_editdist(inst)?;
            let agree = d.verdict == (e.promise == Promise::One);
            bad += usize::from(!agree);
            rows.push(json!({ "index": e.index, "promise": e.promise, "verdict": d.verdict, "distance": d.distance, "c_star": d.c_star }));
        }
        Ok((bad == 0, json!({ "n": opts.n, "corpus": summary_n, "disagreements": bad, "instances": rows })))
    }));

    out.push(check("coarse_decomposition", || {
        let mut bad = 0;
        for inst in &inst2 {
            let d = edit_distance(inst.x().as_slice(), inst.y().as_slice());
            bad += usize::from(d != 2 * inst.x().len() + coarse_min_brute(inst)?);
        }
        Ok((bad == 0, json!({ "instances": inst2.len(), "violations": bad })))
    }));

    out.push(check("cost_bridge", || {
        let (mut paths, mut premises, mut bad) = (0usize, 0usize, 0usize);
        for inst in &inst2 {
            let (l, c) = (inst.l(), *inst.constants());
            let m = inst.matrix().matrix();
            let mut err = None;
            for_each_path(2 * l - 1, l, &mut |p| {
                let mut run = || -> Result<()> {
                    let costs: Vec<i64> = (0..=c.q).map(|mu| path_cost(m, p, mu, &c)).collect::<Result<_>>()?;
                    let coarse = coarse_edit_cost(inst, &path_to_coarse(p, l)?)? as i64;
                    paths += 1;
                    if coarse < costs[0] || coarse > costs[c.q as usize] {
                        bad += 1;
                    }
                    if costs.iter().all(|&x| x < c.threshold()) {
                        premises += 1;
                        bad += usize::from(coarse >= c.threshold());
                    }
                    Ok(())
                };
                if let Err(e) = run() {
                    err.get_or_insert(e);
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        Ok((bad == 0, json!({ "paths": paths, "premise_holds": premises, "violations": bad })))
    }));

    out.push(check("completeness_bridge", || {
        let (mut premises, mut bad) = (0, 0);
        for inst in &inst2 {
            let c = inst.constants();
            if min_path_cost(inst.matrix().matrix(), 0, c)? >= c.threshold() {
                premises += 1;
                bad += usize::from((coarse_min_brute(inst)? as i64) < c.threshold());
            }
        }
        Ok((bad == 0, json!({ "instances": inst2.len(), "premise_holds": premises, "violations": bad })))
    }));

    out.push(check("path_to_coarse", || {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xB4);
        let (mut bad, mut jump_free) = (0, 0);
        for _ in 0..500 {
            let l = [1usize, 2, 4, 8][rng.gen_range(0..4)];
            let p = random_path(2 * l - 1, l, 0.35, &mut rng);
            let c = path_to_coarse(&p, l)?;
            let (lo, hi) = (p.points[0].0, p.points[p.len() - 1].0 + l - 1);
            let mut ok = coarse_validate(&c, lo, hi, l).is_ok() && c.len() <= p.len();
            if !p.has_jumps() {
                jump_free += 1;
                ok &= coarse_to_path(&c, l)? == p;
            }
            bad += usize::from(!ok);
        }
        Ok((bad == 0, json!({ "paths": 500, "jump_free": jump_free, "violations": bad })))
    }));

    out.push(check("coarse_to_path", || {
        let (mut good, mut bad) = (0usize, 0usize);
        for l in 1..=3usize {
            let k = 2 * l - 1;
            for lo in 1..=3 * l - 2 {
                for hi in lo..=3 * l - 2 {
                    for_each_coarse(lo, hi, l, &mut |c| {
                        if classify_terms(c, k).iter().all(|t| *t == TermClass::Good) {
                            good += 1;
                            let valid = coarse_to_path(c, l).is_ok_and(|p| validate_path(&p, k, l).is_ok());
                            bad += usize::from(!valid);
                        }
                    });
                }
            }
        }
        Ok((bad == 0, json!({ "good_alignments": good, "violations": bad })))
    }));

    out.push(check("path_cost_dp", || {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x43);
        let mut bad = 0;
        for _ in 0..200 {
            let m = random_matrix(&mut rng);
            let q = rng.gen_range(2..=6);
            let c = CostConstants::new(q, rng.gen_range(1..=q), 2 * q + 1, 2 * q + 2, m.cols())?;
            for mu in [0, q / 2, q] {
                bad += usize::from(min_path_cost(&m, mu, &c)? != min_path_cost_brute(&m, mu, &c)?);
            }
        }
        Ok((bad == 0, json!({ "matrices": 200, "violations": bad })))
    }));

    out.push(check("ov_count", || {
        let mut bad = 0;
        let mut coords = 0usize;
        for s in 0..100u64 {
            let seed = opts.seed.wrapping_mul(1000).wrapping_add(s);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 2 * rng.gen_range(1..=5);
            let f = random_cnf(n, rng.gen_range(1..=20), rng.gen_range(1..=n.min(3)), seed)?;
            let inst = williams_vectors(&f)?;
            let sat = sat_count_brute(&f)?;
            bad += usize::from(count_orthogonal(&inst) != sat || parity_ov(&inst) != (sat % 2 == 1));
            for (side, vecs) in [(Side::U, inst.u()), (Side::V, inst.v())] {
                for (a, v) in vecs.iter().enumerate() {
                    for (c, &bit) in v.iter().enumerate() {
                        coords += 1;
                        bad += usize::from(vector_bit(&f, side, a as u64, c)? != bit);
                    }
                }
            }
        }
        Ok((bad == 0, json!({ "formulas": 100, "coordinates": coords, "violations": bad })))
    }));

    out.push(check("adversary_relation", || {
        let exhaustive = relation_stats(2, 0, 1 << 20, opts.seed)?;
        let sampled = relation_stats(4, 0, 25, opts.seed)?;
        let mut rejected = 0;
        for inst in inst2.iter().chain(if opts.n == 2 { [].iter() } else { inst_n.iter() }) {
            rejected += usize::from(validate_params(2, 0, inst.constants()).is_err());
        }
        let ok = exhaustive.ok && sampled.ok && rejected == 0;
        Ok((ok, json!({ "k2_t0": exhaustive, "k4_t0": sampled, "params_rejected": rejected })))
    }));

    out.push(check("dyck", || {
        let mut bad = 0;
        let mut rows = 0;
        for (k, t) in [(2usize, 0usize), (2, 1), (4, 0)] {
            for s in 0..10 {
                let seed = opts.seed.wrapping_add(s);
                let x = gen_x_matrix(k, t, seed)?;
                for r in 1..=x.matrix.rows() {
                    let row = x.matrix.row(r);
                    let d = prefix_imbalance_profile(row);
                    rows += 1;
                    bad += usize::from(!dyck_check(&dyck_wrap(row, d), 2 * d)?);
                }
                let y = gen_y_matrix(k, t, seed)?;
                let rejected = (1..=y.matrix.rows())
                    .filter(|&r| {
                        let row = y.matrix.row(r);
                        let d = prefix_imbalance_profile(row);
                        !dyck_check(&dyck_wrap(row, d), usize::MAX).unwrap_or(false)
                    })
                    .count();
                bad += usize::from(rejected != 1);
            }
        }
        Ok((bad == 0, json!({ "rows": rows, "violations": bad })))
    }));

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep() {
        let (pairs, patterns, bad) = alignment_sweep(3, 3).unwrap();
        assert_eq!(pairs, 40 * 40);
        assert!(patterns < 1600);
        assert_eq!(bad, 0);
    }

    #[test]
    fn quick_suite() {
        let opts = VerifyOptions {
            seeds: 4,
            align_max_len: 3,
            ..VerifyOptions::default()
        };
        for c in run_all(&opts).unwrap() {
            assert!(c.ok, "{}: {}", c.name, c.detail);
        }
    }
}
