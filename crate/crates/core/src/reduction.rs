//! The branching-program to edit-distance reduction.
//!
//! For `L = 2^{n/2}` half-assignments `a_1..a_L` and `b_1..b_L` (lexicographic)
//! the reduction emits
//!
//! ```text
//! x = (5^T r 6^T)^{L-1} (5^T G(a_1) 6^T) ... (5^T G(a_L) 6^T) (5^T r 6^T)^{L-1}
//! y = 7^{|x|} (5^T Gbar(b_1) 6^T) ... (5^T Gbar(b_L) 6^T) 7^{|x|}
//! ```
//!
//! and decides the promise property by comparing `delta(x, y)` against
//! `C* = 2|x| + T_r`.
//!
//! Gadgets are "probe" gadgets. `G(a)` lists the satisfaction bits of row `a`
//! between runs of the marker `2`; `Gbar(b)` carries a `1` in slot `b` and the
//! filler `3` (which never matches) in every other slot. With marker width
//! `w > L` this gives `delta(G(a), Gbar(b)) = L - S(a, b)`, so `Q = L` and
//! `rho = 1`. The contract is checked by full DP on every pair whenever an
//! instance is built.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bp::{matrix_encode, Nbp, StairMatrix, TruthTable};
use crate::editdist::{edit_distance, edit_distance_within};
use crate::error::{Error, Result};
use crate::pathcost::{pp_edit_promise, CostConstants, Promise};

pub const MARKER: u8 = 2;
pub const FILLER: u8 = 3;
pub const SEP_OPEN: u8 = 5;
pub const SEP_CLOSE: u8 = 6;
pub const PAD: u8 = 7;

const TT_BUDGET: usize = 1 << 24;

/// A string over `{0,1,2,3,5,6,7}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Sequence(Vec<u8>);

impl Sequence {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if let Some(&s) = symbols.iter().find(|&&s| s > 7 || s == 4) {
            return Err(Error::Parse(format!("symbol {s} outside the alphabet")));
        }
        Ok(Sequence(symbols))
    }

    pub fn from_ascii(text: &str) -> Result<Self> {
        let symbols = text
            .trim()
            .chars()
            .map(|c| match c {
                '0'..='3' | '5'..='7' => Ok(c as u8 - b'0'),
                other => Err(Error::Parse(format!("symbol {other:?} outside the alphabet"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Sequence(symbols))
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push_run(&mut self, symbol: u8, count: usize) {
        self.0.extend(std::iter::repeat_n(symbol, count));
    }

    fn extend(&mut self, other: &[u8]) {
        self.0.extend_from_slice(other);
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&c| (b'0' + c) as char).collect();
        f.write_str(&s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetParams {
    /// Marker run width `w`; `None` means `4L`.
    pub marker_width: Option<usize>,
    /// Separator length as a multiple of the gadget length, `T = sep_mult * S_G`.
    pub sep_mult: usize,
}

impl Default for GadgetParams {
    fn default() -> Self {
        GadgetParams {
            marker_width: None,
            sep_mult: 8,
        }
    }
}

impl GadgetParams {
    pub fn width_for(&self, l: usize) -> usize {
        self.marker_width.unwrap_or(4 * l)
    }

    /// Cost constants for an instance with `L` columns.
    pub fn constants(&self, l: usize) -> Result<CostConstants> {
        let w = self.width_for(l);
        if w <= l {
            return Err(Error::Params(format!("marker width {w} must exceed L={l}")));
        }
        if self.sep_mult < 2 {
            return Err(Error::Params(format!("sep_mult {} must be at least 2", self.sep_mult)));
        }
        let s_g = gadget_len(l, w) as i64;
        CostConstants::new(l as i64, 1, s_g, self.sep_mult as i64 * s_g, l)
    }
}

/// `S_G = (w + 1) L + w`.
pub fn gadget_len(l: usize, w: usize) -> usize {
    (w + 1) * l + w
}

fn probe_gadget(l: usize, w: usize, slot: impl Fn(usize) -> u8) -> Sequence {
    let mut g = Sequence(Vec::with_capacity(gadget_len(l, w)));
    for q in 1..=l {
        g.push_run(MARKER, w);
        g.0.push(slot(q));
    }
    g.push_run(MARKER, w);
    g
}

/// `G(a)` from the satisfaction row `sat_row[q] = S(a, b_q)`.
pub fn build_gadget(sat_row: &[bool], w: usize) -> Sequence {
    probe_gadget(sat_row.len(), w, |q| u8::from(sat_row[q - 1]))
}

/// `Gbar(b)` for 1-based `b_index`.
pub fn build_cogadget(b_index: usize, l: usize, w: usize) -> Result<Sequence> {
    if b_index < 1 || b_index > l {
        return Err(Error::IndexRange { index: b_index, max: l });
    }
    Ok(probe_gadget(l, w, |q| if q == b_index { 1 } else { FILLER }))
}

/// The dummy `r`: a gadget whose row satisfies nothing.
pub fn dummy_gadget(l: usize, w: usize) -> Sequence {
    build_gadget(&vec![false; l], w)
}

/// Length equalisation for binary strings with `|a| > |b|`:
/// `a' = 2^{|a|} a`, `b' = 0^{|a|-|b|} 2^{|a|} b`, so that
/// `delta(a', b') = |a| - |b| + delta(a, b)`.
pub fn equalize_pad(a: &[u8], b: &[u8]) -> Result<(Sequence, Sequence)> {
    if a.len() <= b.len() {
        return Err(Error::Params(format!(
            "padding needs |a| > |b|, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.iter().chain(b).any(|&s| s > 1) {
        return Err(Error::Params("padding inputs must be binary".into()));
    }
    let mut a_new = Sequence::default();
    a_new.push_run(MARKER, a.len());
    a_new.extend(a);
    let mut b_new = Sequence::default();
    b_new.push_run(0, a.len() - b.len());
    b_new.push_run(MARKER, a.len());
    b_new.extend(b);
    Ok((a_new, b_new))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractViolation {
    /// 1-based row index, or `None` for the dummy gadget.
    pub a: Option<usize>,
    pub b: usize,
    pub expected: usize,
    pub got: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractReport {
    pub l: usize,
    pub q: i64,
    pub rho: i64,
    pub pairs_checked: usize,
    pub violations: Vec<ContractViolation>,
}

impl ContractReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Gadgets {
    rows: Vec<Sequence>,
    co: Vec<Sequence>,
    dummy: Sequence,
}

fn sat_rows(tt: &TruthTable, l: usize) -> Vec<Vec<bool>> {
    tt.bits().chunks(l).map(<[bool]>::to_vec).collect()
}

fn make_gadgets(rows: &[Vec<bool>], l: usize, w: usize) -> Gadgets {
    Gadgets {
        rows: rows.iter().map(|r| build_gadget(r, w)).collect(),
        co: (1..=l).map(|b| build_cogadget(b, l, w).expect("index in range")).collect(),
        dummy: dummy_gadget(l, w),
    }
}

fn check_contract(g: &Gadgets, rows: &[Vec<bool>], c: &CostConstants) -> ContractReport {
    let l = g.co.len();
    let q = c.q as usize;
    let rho = c.rho as usize;
    let pairs: Vec<(Option<usize>, usize)> = (0..=l)
        .flat_map(|a| (1..=l).map(move |b| ((a > 0).then_some(a), b)))
        .collect();
    let violations: Vec<ContractViolation> = pairs
        .par_iter()
        .filter_map(|&(a, b)| {
            let (gadget, expected) = match a {
                Some(a) => (&g.rows[a - 1], q - rho * usize::from(rows[a - 1][b - 1])),
                None => (&g.dummy, q),
            };
            let got = edit_distance(gadget.as_slice(), g.co[b - 1].as_slice());
            (got != expected).then_some(ContractViolation { a, b, expected, got })
        })
        .collect();
    ContractReport {
        l,
        q: c.q,
        rho: c.rho,
        pairs_checked: pairs.len(),
        violations,
    }
}

fn half_count(bp: &Nbp) -> Result<usize> {
    if !bp.n().is_multiple_of(2) {
        return Err(Error::OddVars(bp.n()));
    }
    Ok(1usize << (bp.n() / 2))
}

/// Checks `delta(G(a), Gbar(b)) = Q - rho S(a, b)` and `delta(r, Gbar(b)) = Q`
/// on every pair by full Wagner-Fischer.
pub fn verify_gadget_contract(bp: &Nbp, params: &GadgetParams) -> Result<ContractReport> {
    let l = half_count(bp)?;
    let c = params.constants(l)?;
    let tt = bp.truth_table(TT_BUDGET)?;
    let rows = sat_rows(&tt, l);
    let g = make_gadgets(&rows, l, params.width_for(l));
    Ok(check_contract(&g, &rows, &c))
}

fn half_assignments(half: usize) -> Vec<Vec<bool>> {
    (0..1u64 << half)
        .map(|v| (1..=half).map(|k| (v >> (half - k)) & 1 == 1).collect())
        .collect()
}

#[derive(Clone, Debug)]
pub struct ReductionInstance {
    bp: Nbp,
    tt: TruthTable,
    matrix: StairMatrix,
    constants: CostConstants,
    marker_width: usize,
    a_seq: Vec<Vec<bool>>,
    b_seq: Vec<Vec<bool>>,
    gadgets: Vec<Sequence>,
    cogadgets: Vec<Sequence>,
    dummy: Sequence,
    x: Sequence,
    y: Sequence,
    c_star: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: String,
    pub n: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub w: usize,
    #[serde(rename = "Q")]
    pub q: i64,
    pub rho: i64,
    #[serde(rename = "S_G")]
    pub s_g: i64,
    #[serde(rename = "T")]
    pub t: i64,
    #[serde(rename = "C_jump")]
    pub c_jump: i64,
    #[serde(rename = "T_r")]
    pub t_r: i64,
    /// True when `T_r` was rounded up from a fractional value.
    pub t_r_rounded: bool,
    #[serde(rename = "C_star")]
    pub c_star: i64,
    pub len_x: usize,
    pub len_y: usize,
    pub blocks_x: usize,
}

pub const MANIFEST_SCHEMA: &str = "fgx.instance/1";

pub fn build_instance(bp: &Nbp, params: &GadgetParams) -> Result<ReductionInstance> {
    let l = half_count(bp)?;
    let constants = params.constants(l)?;
    let w = params.width_for(l);
    let tt = bp.truth_table(TT_BUDGET)?;
    let rows = sat_rows(&tt, l);
    let g = make_gadgets(&rows, l, w);
    let report = check_contract(&g, &rows, &constants);
    if !report.ok() {
        return Err(Error::Contract(report.violations.len()));
    }
    let t = constants.t as usize;
    let block = 2 * t + constants.s_g as usize;
    let mut x = Sequence(Vec::with_capacity((3 * l - 2) * block));
    let push_block = |s: &mut Sequence, g: &Sequence| {
        s.push_run(SEP_OPEN, t);
        s.extend(g.as_slice());
        s.push_run(SEP_CLOSE, t);
    };
    for _ in 1..l {
        push_block(&mut x, &g.dummy);
    }
    for ga in &g.rows {
        push_block(&mut x, ga);
    }
    for _ in 1..l {
        push_block(&mut x, &g.dummy);
    }
    let mut y = Sequence(Vec::with_capacity(2 * x.len() + l * block));
    y.push_run(PAD, x.len());
    for gb in &g.co {
        push_block(&mut y, gb);
    }
    y.push_run(PAD, x.len());
    let c_star = 2 * x.len() as i64 + constants.threshold();
    let half = bp.n() / 2;
    Ok(ReductionInstance {
        bp: bp.clone(),
        matrix: matrix_encode(&tt)?,
        tt,
        constants,
        marker_width: w,
        a_seq: half_assignments(half),
        b_seq: half_assignments(half),
        gadgets: g.rows,
        cogadgets: g.co,
        dummy: g.dummy,
        x,
        y,
        c_star,
    })
}

impl ReductionInstance {
    pub fn bp(&self) -> &Nbp {
        &self.bp
    }

    pub fn truth_table(&self) -> &TruthTable {
        &self.tt
    }

    pub fn matrix(&self) -> &StairMatrix {
        &self.matrix
    }

    pub fn constants(&self) -> &CostConstants {
        &self.constants
    }

    pub fn l(&self) -> usize {
        self.constants.l
    }

    pub fn marker_width(&self) -> usize {
        self.marker_width
    }

    pub fn a_seq(&self) -> &[Vec<bool>] {
        &self.a_seq
    }

    pub fn b_seq(&self) -> &[Vec<bool>] {
        &self.b_seq
    }

    /// `G(a_i)` for 1-based `i`.
    pub fn gadget(&self, i: usize) -> &Sequence {
        &self.gadgets[i - 1]
    }

    pub fn cogadget(&self, b: usize) -> &Sequence {
        &self.cogadgets[b - 1]
    }

    pub fn dummy(&self) -> &Sequence {
        &self.dummy
    }

    pub fn x(&self) -> &Sequence {
        &self.x
    }

    pub fn y(&self) -> &Sequence {
        &self.y
    }

    pub fn c_star(&self) -> i64 {
        self.c_star
    }

    /// Length `2T + S_G` of one separated block.
    pub fn block_len(&self) -> usize {
        self.constants.c_jump() as usize
    }

    pub fn x_block_count(&self) -> usize {
        3 * self.l() - 2
    }

    /// Blocks `lo..=hi` of `x` (1-based) as one contiguous slice.
    pub fn x_blocks(&self, lo: usize, hi: usize) -> &[u8] {
        let b = self.block_len();
        &self.x.as_slice()[(lo - 1) * b..hi * b]
    }

    /// Gadget blocks `lo..=hi` of `y` (1-based), without the 7-padding.
    pub fn y_blocks(&self, lo: usize, hi: usize) -> &[u8] {
        let b = self.block_len();
        let off = self.x.len();
        &self.y.as_slice()[off + (lo - 1) * b..off + hi * b]
    }

    /// The gadget in block `p` of `x`: `G(a_{p-L+1})` for `L <= p <= 2L-1`,
    /// the dummy otherwise.
    pub fn x_gadget_row(&self, p: usize) -> Option<usize> {
        let l = self.l();
        (p >= l && p < 2 * l).then(|| p + 1 - l)
    }

    pub fn manifest(&self) -> Manifest {
        let c = &self.constants;
        Manifest {
            schema: MANIFEST_SCHEMA.to_string(),
            n: self.bp.n(),
            l: c.l,
            w: self.marker_width,
            q: c.q,
            rho: c.rho,
            s_g: c.s_g,
            t: c.t,
            c_jump: c.c_jump(),
            t_r: c.threshold(),
            t_r_rounded: !c.threshold_is_exact(),
            c_star: self.c_star,
            len_x: self.x.len(),
            len_y: self.y.len(),
            blocks_x: self.x_block_count(),
        }
    }
}

/// Block `i` of `x`, `5^T g_i 6^T`, rebuilt from the program alone: only the
/// row of the truth table that the block needs is evaluated.
pub fn block_of_x(inst: &ReductionInstance, i: usize) -> Result<Sequence> {
    let l = inst.l();
    if i < 1 || i > 3 * l - 2 {
        return Err(Error::IndexRange { index: i, max: 3 * l - 2 });
    }
    let w = inst.marker_width;
    let gadget = match inst.x_gadget_row(i) {
        Some(a) => {
            let row: Vec<bool> = (1..=l).map(|b| inst.bp.satisfies_halves(a, b)).collect();
            build_gadget(&row, w)
        }
        None => dummy_gadget(l, w),
    };
    let t = inst.constants.t as usize;
    let mut out = Sequence(Vec::with_capacity(2 * t + gadget.len()));
    out.push_run(SEP_OPEN, t);
    out.extend(gadget.as_slice());
    out.push_run(SEP_CLOSE, t);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: bool,
    /// Exact `delta(x, y)` when it is below `C*`.
    pub distance: Option<usize>,
    pub c_star: i64,
    pub promise: Promise,
}

/// `1` iff `delta(x, y) < C*`. Refuses programs outside the promise.
pub fn decide_via_editdist(inst: &ReductionInstance) -> Result<Decision> {
    let promise = pp_edit_promise(inst.matrix.matrix(), &inst.constants)?;
    if promise == Promise::Gap {
        return Err(Error::PromiseViolated);
    }
    let bound = (inst.c_star - 1).max(0) as usize;
    let distance = edit_distance_within(inst.x.as_slice(), inst.y.as_slice(), bound).within();
    Ok(Decision {
        verdict: distance.is_some(),
        distance,
        c_star: inst.c_star,
        promise,
    })
}
