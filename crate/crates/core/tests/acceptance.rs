//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Oracles here are written independently of the
//! library wherever the library is the thing under test.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fgx::adversary::{
    dyck_check, dyck_wrap, gen_x_matrix, gen_y_matrix, is_member_x, is_member_y, prefix_imbalance_profile,
    relation_stats, validate_params,
};
use fgx::convert::{classify_terms, coarse_to_path, path_to_coarse, TermClass};
use fgx::corpus::{promise_corpus, CorpusEntry};
use fgx::editdist::{coarse_min_brute, coarse_validate, edit_distance, edit_distance_banded, for_each_coarse, Bounded};
use fgx::matrix::BitMatrix;
use fgx::ov::{count_orthogonal, parity_ov, random_cnf, sat_count_brute, vector_bit, williams_vectors, Cnf, Side};
use fgx::pathcost::{
    min_path_cost, min_path_cost_brute, random_path, validate_path, CostConstants, PathSpec, Promise, BRUTE_CELL_CAP,
};
use fgx::reduction::{build_instance, decide_via_editdist, equalize_pad, GadgetParams, ReductionInstance};

type Outcome = Result<String, String>;

/// Plain full-table Levenshtein.
fn wf(a: &[u8], b: &[u8]) -> usize {
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for j in 0..=b.len() {
        d[0][j] = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let s = d[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
            d[i][j] = s.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d[a.len()][b.len()]
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Corpora {
    params: GadgetParams,
    n2: Vec<(CorpusEntry, ReductionInstance)>,
    n4: Vec<(CorpusEntry, ReductionInstance)>,
    build_time: Duration,
}

fn corpora() -> Result<Corpora, String> {
    let start = Instant::now();
    let params = GadgetParams::default();
    let build = |n, count, seed| -> Result<Vec<(CorpusEntry, ReductionInstance)>, String> {
        let (entries, _) = promise_corpus(n, count, seed, &params).map_err(|e| e.to_string())?;
        entries
            .into_iter()
            .map(|e| {
                let inst = build_instance(&e.bp, &params).map_err(|e| e.to_string())?;
                Ok((e, inst))
            })
            .collect()
    };
    Ok(Corpora {
        params,
        n2: build(2, 50, 2024)?,
        n4: build(4, 25, 4048)?,
        build_time: start.elapsed(),
    })
}

fn c1_equivalence(c: &Corpora) -> Outcome {
    let start = Instant::now();
    let mut counts = [0usize; 2];
    for (set, (n, items)) in [(2, &c.n2), (4, &c.n4)].into_iter().enumerate() {
        for (e, inst) in items.iter() {
            ensure(e.promise != Promise::Gap, || format!("n={n} #{} is a gap instance", e.index))?;
            let d = decide_via_editdist(inst).map_err(|e| e.to_string())?;
            ensure(d.verdict == (e.promise == Promise::One), || {
                format!("n={n} #{}: verdict {} vs promise {}", e.index, d.verdict, e.promise)
            })?;
            counts[set] += 1;
        }
    }
    let total = start.elapsed() + c.build_time;
    ensure(counts[0] >= 50 && counts[1] >= 25, || format!("corpus sizes {counts:?}"))?;
    ensure(total < Duration::from_secs(120), || format!("took {total:?}"))?;
    let ones = c.n2.iter().chain(&c.n4).filter(|(e, _)| e.promise == Promise::One).count();
    Ok(format!("{} + {} instances agree ({ones} one), {:.1}s", counts[0], counts[1], total.as_secs_f64()))
}

fn c2_decomposition(c: &Corpora) -> Outcome {
    for (e, inst) in &c.n2 {
        let (x, y) = (inst.x().as_slice(), inst.y().as_slice());
        let lhs = wf(x, y) - 2 * x.len();
        let rhs = coarse_min_brute(inst).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("#{}: {lhs} vs coarse minimum {rhs}", e.index))?;
    }
    Ok(format!("{} instances", c.n2.len()))
}

fn c3_gadgets(c: &Corpora) -> Outcome {
    let mut pairs = 0;
    for (e, inst) in c.n2.iter().chain(&c.n4) {
        let k = inst.constants();
        let l = inst.l();
        for b in 1..=l {
            let co = inst.cogadget(b).as_slice();
            let got = wf(inst.dummy().as_slice(), co) as i64;
            ensure(got == k.q, || format!("#{} dummy vs {b}: {got}", e.index))?;
            for a in 1..=l {
                let want = k.q - k.rho * i64::from(e.bp.satisfies_halves(a, b));
                let got = wf(inst.gadget(a).as_slice(), co) as i64;
                ensure(got == want, || format!("#{} ({a},{b}): {got} vs {want}", e.index))?;
                pairs += 1;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs across {} instances", c.n2.len() + c.n4.len()))
}

fn c4_padding() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for i in 0..200 {
        let la = rng.gen_range(1..=12);
        let lb = rng.gen_range(0..la);
        let a: Vec<u8> = (0..la).map(|_| rng.gen_range(0..2)).collect();
        let b: Vec<u8> = (0..lb).map(|_| rng.gen_range(0..2)).collect();
        let (an, bn) = equalize_pad(&a, &b).map_err(|e| e.to_string())?;
        ensure(an.len() == bn.len(), || format!("pair {i}: lengths differ"))?;
        let got = wf(an.as_slice(), bn.as_slice());
        ensure(got == la - lb + wf(&a, &b), || format!("pair {i}: {got}"))?;
    }
    Ok("200 pairs".into())
}

/// Minimum over every set of matched pairs (i1<i2<.., j1<j2<..) of
/// unmatched + mismatched positions.
fn alignment_min(n: usize, m: usize, mism: u64) -> usize {
    fn go(n: usize, m: usize, mism: u64, i0: usize, j0: usize, matched: usize, bad: usize, best: &mut usize) {
        *best = (*best).min(n + m - 2 * matched + bad);
        for i in i0..n {
            for j in j0..m {
                go(n, m, mism, i + 1, j + 1, matched + 1, bad + (mism >> (i * m + j) & 1) as usize, best);
            }
        }
    }
    let mut best = usize::MAX;
    go(n, m, mism, 0, 0, 0, 0, &mut best);
    best
}

fn c5_alignments() -> Outcome {
    let mut strings: Vec<Vec<u8>> = vec![vec![]];
    let mut start = 0;
    for _ in 0..6 {
        let end = strings.len();
        for s in start..end {
            for c in 0..4u8 {
                let mut t = strings[s].clone();
                t.push(c);
                strings.push(t);
            }
        }
        start = end;
    }
    let mut memo: HashMap<(usize, usize, u64), usize> = HashMap::new();
    let mut pairs = 0u64;
    for a in &strings {
        for b in &strings {
            let mut mism = 0u64;
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    mism |= u64::from(x != y) << (i * b.len() + j);
                }
            }
            let best = *memo
                .entry((a.len(), b.len(), mism))
                .or_insert_with(|| alignment_min(a.len(), b.len(), mism));
            let dp = edit_distance(a, b);
            ensure(best == dp, || format!("{a:?} / {b:?}: {best} vs {dp}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, {} mismatch patterns", memo.len()))
}

fn c6_path_cost() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let mut checks = 0;
    for i in 0..200 {
        let (k, l) = loop {
            let (k, l) = (rng.gen_range(1..=8), rng.gen_range(1..=6));
            if k * l <= BRUTE_CELL_CAP {
                break (k, l);
            }
        };
        let cells = (0..k * l).map(|_| rng.gen_bool(0.5)).collect();
        let m = BitMatrix::from_cells(k, l, cells).map_err(|e| e.to_string())?;
        let q = rng.gen_range(2..=6);
        let reduction_like = CostConstants::new(q, rng.gen_range(1..=q), 2 * q + 1, 2 * q + 2, l).map_err(|e| e.to_string())?;
        // jumps cheaper than any row, so the DP's jump transitions win
        let jumpy = CostConstants { q, rho: q, s_g: 0, t: i % 2, l };
        for c in [reduction_like, jumpy] {
            for mu in [0, c.q / 2, c.q] {
                let dp = min_path_cost(&m, mu, &c).map_err(|e| e.to_string())?;
                let brute = min_path_cost_brute(&m, mu, &c).map_err(|e| e.to_string())?;
                ensure(dp == brute, || format!("matrix {i} mu={mu}: {dp} vs {brute}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("200 matrices, {checks} comparisons"))
}

fn c7_conversions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut jump_free = 0;
    for i in 0..500 {
        let l = [1usize, 2, 3, 4, 8][rng.gen_range(0..5)];
        let k = 2 * l - 1;
        let p = random_path(k, l, 0.3, &mut rng);
        ensure(validate_path(&p, k, l).is_ok(), || format!("path {i} invalid"))?;
        let c = path_to_coarse(&p, l).map_err(|e| format!("path {i}: {e}"))?;
        let (lo, hi) = (p.points[0].0, p.points[p.len() - 1].0 + l - 1);
        ensure(coarse_validate(&c, lo, hi, l).is_ok(), || format!("path {i}: coarse alignment invalid"))?;
        ensure(c.len() <= p.len(), || format!("path {i}: {} terms > {} points", c.len(), p.len()))?;
        if !p.has_jumps() {
            jump_free += 1;
            let back = coarse_to_path(&c, l).map_err(|e| e.to_string())?;
            ensure(back == p, || format!("path {i}: round trip changed the path"))?;
        }
    }
    let mut good = 0;
    let mut failure = None;
    for l in 1..=3usize {
        let k = 2 * l - 1;
        for lo in 1..=3 * l - 2 {
            for hi in lo..=3 * l - 2 {
                for_each_coarse(lo, hi, l, &mut |c| {
                    if classify_terms(c, k).iter().all(|t| *t == TermClass::Good) {
                        good += 1;
                        let ok = coarse_to_path(c, l).is_ok_and(|p: PathSpec| validate_path(&p, k, l).is_ok());
                        if !ok && failure.is_none() {
                            failure = Some(format!("{c:?}"));
                        }
                    }
                });
            }
        }
    }
    ensure(failure.is_none(), || format!("all-good alignment not mapped to a valid path: {}", failure.unwrap()))?;
    ensure(jump_free > 0, || "no jump-free paths drawn".into())?;
    Ok(format!("500 paths ({jump_free} jump-free), {good} all-good alignments"))
}

fn brute_sat(f: &Cnf) -> u64 {
    (0..1u64 << f.n())
        .filter(|&bits| {
            f.clauses().iter().all(|cl| {
                cl.iter().any(|&lit| {
                    let v = bits >> (f.n() - lit.unsigned_abs() as usize) & 1 == 1;
                    v == (lit > 0)
                })
            })
        })
        .count() as u64
}

fn c8_ov() -> Outcome {
    let mut coords = 0u64;
    let mut satisfiable = 0;
    for s in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(800 + s);
        let n = 2 * rng.gen_range(1..=5);
        let m = rng.gen_range(1..=20);
        let f = random_cnf(n, m, rng.gen_range(1..=3.min(n)), s).map_err(|e| e.to_string())?;
        let inst = williams_vectors(&f).map_err(|e| e.to_string())?;
        let count = count_orthogonal(&inst);
        let sat = sat_count_brute(&f).map_err(|e| e.to_string())?;
        let own = brute_sat(&f);
        ensure(count == sat && sat == own, || format!("cnf {s}: {count} / {sat} / {own}"))?;
        ensure(parity_ov(&inst) == (own % 2 == 1), || format!("cnf {s}: parity"))?;
        satisfiable += usize::from(own > 0);
        for (side, vecs) in [(Side::U, inst.u()), (Side::V, inst.v())] {
            for (a, v) in vecs.iter().enumerate() {
                for (cl, &bit) in v.iter().enumerate() {
                    let got = vector_bit(&f, side, a as u64, cl).map_err(|e| e.to_string())?;
                    ensure(got == bit, || format!("cnf {s}: {side:?}[{a}][{cl}]"))?;
                    coords += 1;
                }
            }
        }
    }
    Ok(format!("100 formulas ({satisfiable} satisfiable), {coords} coordinates"))
}

fn popcounts(m: &BitMatrix) -> Vec<usize> {
    (1..=m.rows()).map(|r| m.row(r).iter().filter(|&&b| b).count()).collect()
}

fn c9_adversary(c: &Corpora) -> Outcome {
    for k in [2usize, 4] {
        for seed in 0..20 {
            let x = gen_x_matrix(k, 0, seed).map_err(|e| e.to_string())?;
            let y = gen_y_matrix(k, 0, seed).map_err(|e| e.to_string())?;
            let side = x.matrix.rows();
            ensure(is_member_x(&x.matrix, k, 0) && is_member_y(&y.matrix, k, 0), || format!("k={k} seed {seed}: membership"))?;
            ensure(popcounts(&x.matrix).iter().all(|&p| p == side / 2), || format!("k={k}: X popcounts"))?;
            let py = popcounts(&y.matrix);
            ensure(
                py.iter().filter(|&&p| p == side / 2 + 1).count() == 1 && py.iter().filter(|&&p| p == side / 2).count() == side - 1,
                || format!("k={k}: Y popcounts {py:?}"),
            )?;
        }
    }
    let full = relation_stats(2, 0, u64::MAX, 9).map_err(|e| e.to_string())?;
    ensure(full.exhaustive && full.ok, || format!("k=2 t=0: {full:?}"))?;
    let sampled = relation_stats(4, 0, 30, 9).map_err(|e| e.to_string())?;
    ensure(!sampled.exhaustive && sampled.ok, || format!("k=4 t=0: {sampled:?}"))?;
    for (e, inst) in c.n2.iter().chain(&c.n4) {
        ensure(validate_params(2, 0, inst.constants()).is_ok(), || format!("constants of #{} rejected", e.index))?;
    }
    Ok(format!(
        "k=2 exhaustive ({} X, {} Y), k=4 sampled ({} X, {} Y)",
        full.x_checked, full.y_checked, sampled.x_checked, sampled.y_checked
    ))
}

/// Peels every "()" at once until nothing changes; balanced strings vanish
/// after exactly max-depth rounds.
fn peel_depth(s: &str) -> Option<usize> {
    let mut cur = s.to_string();
    let mut rounds = 0;
    while !cur.is_empty() {
        let next = cur.replace("()", "");
        if next.len() == cur.len() {
            return None;
        }
        cur = next;
        rounds += 1;
    }
    Some(rounds)
}

fn c10_dyck() -> Outcome {
    let mut strings = 0;
    for len in 0..=16usize {
        for bits in 0..1u32 << len {
            let s: String = (0..len).map(|i| if bits >> i & 1 == 1 { ')' } else { '(' }).collect();
            let depth = peel_depth(&s);
            for bound in 0..=9 {
                let got = dyck_check(&s, bound).map_err(|e| e.to_string())?;
                ensure(got == depth.is_some_and(|d| d <= bound), || format!("{s} bound {bound}: {got}"))?;
            }
            strings += 1;
        }
    }
    let mut rows = 0;
    for (k, t) in [(2usize, 0usize), (2, 1), (4, 0)] {
        for seed in 0..10 {
            let x = gen_x_matrix(k, t, seed).map_err(|e| e.to_string())?;
            let y = gen_y_matrix(k, t, seed).map_err(|e| e.to_string())?;
            for r in 1..=x.matrix.rows() {
                let row = x.matrix.row(r);
                let d = prefix_imbalance_profile(row);
                ensure(dyck_check(&dyck_wrap(row, d), 2 * d).map_err(|e| e.to_string())?, || format!("k={k} t={t} X row {r} rejected"))?;
                rows += 1;
            }
            for r in 1..=y.matrix.rows() {
                let row = y.matrix.row(r);
                if 2 * row.iter().filter(|&&b| b).count() != row.len() {
                    let d = prefix_imbalance_profile(row);
                    ensure(!dyck_check(&dyck_wrap(row, d), usize::MAX).map_err(|e| e.to_string())?, || format!("k={k} t={t} flipped row accepted"))?;
                    rows += 1;
                }
            }
        }
    }
    Ok(format!("{strings} strings x 10 bounds, {rows} wrapped rows"))
}

fn c11_performance(c: &Corpora) -> Outcome {
    let entry = &c.n4.iter().find(|(e, _)| e.promise == Promise::One).unwrap_or(&c.n4[0]).0;
    let start = Instant::now();
    let inst = build_instance(&entry.bp, &c.params).map_err(|e| e.to_string())?;
    let bound = (inst.c_star() - 1) as usize;
    let banded = edit_distance_banded(inst.x().as_slice(), inst.y().as_slice(), bound);
    let verdict = matches!(banded, Bounded::Within(_));
    let e2e = start.elapsed();
    ensure(verdict == (entry.promise == Promise::One), || "banded verdict disagrees with the promise".into())?;
    ensure(e2e < Duration::from_secs(120), || format!("end to end {e2e:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a: Vec<u8> = (0..4000).map(|_| rng.gen_range(0..4)).collect();
    let b: Vec<u8> = (0..5000).map(|_| rng.gen_range(0..4)).collect();
    let start = Instant::now();
    let d = std::hint::black_box(edit_distance(&a, &b));
    let secs = start.elapsed().as_secs_f64();
    let rate = (a.len() * b.len()) as f64 / secs;
    ensure(d > 0 && rate >= 1e7, || format!("{rate:.3e} cells/s"))?;
    Ok(format!(
        "n=4 |x|={} |y|={} in {:.2}s; DP {:.2e} cells/s",
        inst.x().len(),
        inst.y().len(),
        e2e.as_secs_f64(),
        rate
    ))
}

fn main() -> ExitCode {
    let corpora = match corpora() {
        Ok(c) => Some(c),
        Err(e) => {
            println!("corpus construction failed: {e}");
            None
        }
    };
    let corpora = corpora.as_ref();
    let with = |f: fn(&Corpora) -> Outcome| -> Box<dyn Fn() -> Outcome + '_> {
        Box::new(move || corpora.map_or_else(|| Err("no corpus".to_string()), f))
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("reduction equivalence", with(c1_equivalence)),
        ("coarse decomposition identity", with(c2_decomposition)),
        ("gadget contract", with(c3_gadgets)),
        ("padding", Box::new(c4_padding)),
        ("alignment minimum", Box::new(c5_alignments)),
        ("path-cost oracle", Box::new(c6_path_cost)),
        ("path/coarse conversions", Box::new(c7_conversions)),
        ("orthogonal vectors", Box::new(c8_ov)),
        ("adversary families", with(c9_adversary)),
        ("dyck", Box::new(c10_dyck)),
        ("performance", with(c11_performance)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
