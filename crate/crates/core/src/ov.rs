//! CNF formulas, the split-and-list reduction to Orthogonal Vectors, and
//! OV counting and parity.
//!
//! Assignments to one half of the variables are indexed by their value in
//! `[0, 2^{n/2})`, the lowest-numbered variable of the half being the most
//! significant bit. Clause indices are 0-based.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{bits_to_string, parse_bits};

/// Largest `n` accepted by [`sat_count_brute`].
pub const SAT_BRUTE_MAX_VARS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cnf {
    n: usize,
    clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(n: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for (c, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::Parse(format!("clause {} is empty", c + 1)));
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > n {
                    return Err(Error::VarOutOfRange { var: lit as i64, n });
                }
            }
        }
        Ok(Cnf { n, clauses })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// `assignment` has one entry per variable, `x1` first.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&lit| assignment[lit.unsigned_abs() as usize - 1] == (lit > 0))
        })
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.n, self.m());
        for c in &self.clauses {
            for lit in c {
                let _ = write!(out, "{lit} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let f: Vec<&str> = line.split_whitespace().collect();
            if header.is_some() || f.len() != 4 || f[1] != "cnf" {
                return Err(Error::Parse(format!("line {}: bad header {line:?}", ln + 1)));
            }
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {}: bad count {s:?}", ln + 1)))
            };
            header = Some((num(f[2])?, num(f[3])?));
            continue;
        }
        if header.is_none() {
            return Err(Error::Parse(format!("line {}: clause before header", ln + 1)));
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad literal {tok:?}", ln + 1)))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    let (n, m) = header.ok_or_else(|| Error::Parse("missing 'p cnf' header".into()))?;
    if !current.is_empty() {
        return Err(Error::Parse("last clause is not terminated by 0".into()));
    }
    if clauses.len() != m {
        return Err(Error::Parse(format!("header declares {m} clauses, found {}", clauses.len())));
    }
    Cnf::new(n, clauses)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    U,
    V,
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u" | "U" => Ok(Side::U),
            "v" | "V" => Ok(Side::V),
            other => Err(Error::Parse(format!("side must be u or v, got {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvInstance {
    d: usize,
    u: Vec<Vec<bool>>,
    v: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct OvFile {
    d: usize,
    #[serde(rename = "U")]
    u: Vec<String>,
    #[serde(rename = "V")]
    v: Vec<String>,
}

impl OvInstance {
    pub fn new(d: usize, u: Vec<Vec<bool>>, v: Vec<Vec<bool>>) -> Result<Self> {
        if let Some(bad) = u.iter().chain(&v).find(|x| x.len() != d) {
            return Err(Error::Params(format!("vector of length {} in dimension {d}", bad.len())));
        }
        Ok(OvInstance { d, u, v })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn u(&self) -> &[Vec<bool>] {
        &self.u
    }

    pub fn v(&self) -> &[Vec<bool>] {
        &self.v
    }

    pub fn to_json(&self) -> String {
        let file = OvFile {
            d: self.d,
            u: self.u.iter().map(|x| bits_to_string(x)).collect(),
            v: self.v.iter().map(|x| bits_to_string(x)).collect(),
        };
        serde_json::to_string(&file).expect("serialisable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: OvFile = serde_json::from_str(text)?;
        let parse = |xs: &[String]| xs.iter().map(|s| parse_bits(s)).collect::<Result<Vec<_>>>();
        OvInstance::new(file.d, parse(&file.u)?, parse(&file.v)?)
    }
}

fn half_bounds(cnf: &Cnf, side: Side) -> Result<(usize, usize)> {
    if !cnf.n.is_multiple_of(2) {
        return Err(Error::OddVars(cnf.n));
    }
    let half = cnf.n / 2;
    Ok(match side {
        Side::U => (1, half),
        Side::V => (half + 1, cnf.n),
    })
}

fn clause_bit(clause: &[i32], first: usize, half: usize, assignment: u64) -> bool {
    let satisfied = clause.iter().any(|&lit| {
        let var = lit.unsigned_abs() as usize;
        if var < first || var >= first + half {
            return false;
        }
        let value = (assignment >> (half - 1 - (var - first))) & 1 == 1;
        value == (lit > 0)
    });
    !satisfied
}

/// Bit `clause` of the vector for half-assignment `assignment`, computed from
/// the clause alone: `0` iff the half-assignment satisfies the clause.
pub fn vector_bit(cnf: &Cnf, side: Side, assignment: u64, clause: usize) -> Result<bool> {
    let (first, last) = half_bounds(cnf, side)?;
    let half = last + 1 - first;
    if half < 64 && assignment >> half != 0 {
        return Err(Error::IndexRange {
            index: assignment as usize,
            max: (1usize << half) - 1,
        });
    }
    let c = cnf.clauses.get(clause).ok_or(Error::IndexRange {
        index: clause,
        max: cnf.m().saturating_sub(1),
    })?;
    Ok(clause_bit(c, first, half, assignment))
}

/// One vector per half-assignment on each side, one coordinate per clause.
pub fn williams_vectors(cnf: &Cnf) -> Result<OvInstance> {
    let half = cnf.n / 2;
    if half >= 32 {
        return Err(Error::TooLarge(format!("2^{half} vectors per side")));
    }
    let side = |s: Side| -> Result<Vec<Vec<bool>>> {
        let (first, _) = half_bounds(cnf, s)?;
        Ok((0..1u64 << half)
            .map(|a| cnf.clauses.iter().map(|c| clause_bit(c, first, half, a)).collect())
            .collect())
    };
    OvInstance::new(cnf.m(), side(Side::U)?, side(Side::V)?)
}

fn pack(x: &[bool]) -> Vec<u64> {
    let mut w = vec![0u64; x.len().div_ceil(64)];
    for (i, &b) in x.iter().enumerate() {
        if b {
            w[i / 64] |= 1 << (i % 64);
        }
    }
    w
}

/// Number of pairs `(u, v)` with `u . v = 0`.
pub fn count_orthogonal(inst: &OvInstance) -> u64 {
    let v: Vec<Vec<u64>> = inst.v.iter().map(|x| pack(x)).collect();
    inst.u
        .par_iter()
        .map(|u| {
            let u = pack(u);
            v.iter()
                .filter(|v| u.iter().zip(v.iter()).all(|(a, b)| a & b == 0))
                .count() as u64
        })
        .sum()
}

pub fn parity_ov(inst: &OvInstance) -> bool {
    count_orthogonal(inst) % 2 == 1
}

/// Satisfying assignments by enumeration.
pub fn sat_count_brute(cnf: &Cnf) -> Result<u64> {
    if cnf.n > SAT_BRUTE_MAX_VARS {
        return Err(Error::TooLarge(format!("{} variables", cnf.n)));
    }
    let n = cnf.n;
    let mut assignment = vec![false; n];
    let mut count = 0;
    for a in 0..1u64 << n {
        for (i, slot) in assignment.iter_mut().enumerate() {
            *slot = (a >> (n - 1 - i)) & 1 == 1;
        }
        count += u64::from(cnf.satisfied_by(&assignment));
    }
    Ok(count)
}

/// Random formula with `m` clauses of `width` distinct variables each.
pub fn random_cnf(n: usize, m: usize, width: usize, seed: u64) -> Result<Cnf> {
    if width == 0 || width > n {
        return Err(Error::Params(format!("clause width {width} with {n} variables")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..m)
        .map(|_| {
            rand::seq::index::sample(&mut rng, n, width)
                .into_iter()
                .map(|v| {
                    let lit = v as i32 + 1;
                    if rng.gen_bool(0.5) {
                        lit
                    } else {
                        -lit
                    }
                })
                .collect()
        })
        .collect();
    Cnf::new(n, clauses)
}
