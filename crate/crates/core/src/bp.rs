//! Layered non-deterministic branching programs, their truth tables and the
//! staircase matrix encoding of a truth table.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::BitMatrix;

pub const DEFAULT_SIZE_CAP: usize = 1_000_000;

/// Labelled edge `from -> to` with constraint `x_var = bit` (`var` is 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: u32,
    pub to: u32,
    pub var: usize,
    pub bit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct LayerEdge {
    from: usize,
    to: usize,
    var: usize,
    bit: bool,
}

/// A layered non-deterministic branching program.
///
/// Node ids are arbitrary distinct integers. Edges only join layer `l` to
/// layer `l + 1`. Construction validates every structural invariant, so a
/// value of this type is always evaluable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nbp {
    n: usize,
    layers: Vec<Vec<u32>>,
    edges: Vec<Edge>,
    start: u32,
    accept: u32,
    // derived: per source layer, edges in local node positions
    by_layer: Vec<Vec<LayerEdge>>,
    start_pos: usize,
    accept_pos: usize,
}

#[derive(Serialize, Deserialize)]
struct BpFile {
    n: usize,
    layers: Vec<Vec<u32>>,
    start: u32,
    accept: u32,
    edges: Vec<[i64; 4]>,
}

impl Nbp {
    pub fn new(
        n: usize,
        layers: Vec<Vec<u32>>,
        start: u32,
        accept: u32,
        edges: Vec<Edge>,
    ) -> Result<Self> {
        Self::with_cap(n, layers, start, accept, edges, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(
        n: usize,
        layers: Vec<Vec<u32>>,
        start: u32,
        accept: u32,
        edges: Vec<Edge>,
        cap: usize,
    ) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::Parse("program has no layers".into()));
        }
        if edges.len() > cap {
            return Err(Error::SizeCap { size: edges.len(), cap });
        }
        let mut pos: HashMap<u32, (usize, usize)> = HashMap::new();
        for (l, layer) in layers.iter().enumerate() {
            if layer.is_empty() {
                return Err(Error::Parse(format!("layer {} is empty", l + 1)));
            }
            for (p, &id) in layer.iter().enumerate() {
                if pos.insert(id, (l, p)).is_some() {
                    return Err(Error::Parse(format!("node {id} listed twice")));
                }
            }
        }
        let start_pos = match pos.get(&start) {
            Some(&(0, p)) => p,
            _ => return Err(Error::BadStart(start)),
        };
        let last = layers.len() - 1;
        let accept_pos = match pos.get(&accept) {
            Some(&(l, p)) if l == last => p,
            _ => return Err(Error::BadAccept(accept)),
        };
        let mut by_layer = vec![Vec::new(); last];
        for e in &edges {
            let &(lf, pf) = pos
                .get(&e.from)
                .ok_or_else(|| Error::Parse(format!("unknown node {}", e.from)))?;
            let &(lt, pt) = pos
                .get(&e.to)
                .ok_or_else(|| Error::Parse(format!("unknown node {}", e.to)))?;
            if lt != lf + 1 {
                return Err(Error::NonAdjacentLayers { from: e.from, to: e.to });
            }
            if e.var == 0 || e.var > n {
                return Err(Error::VarOutOfRange { var: e.var as i64, n });
            }
            by_layer[lf].push(LayerEdge {
                from: pf,
                to: pt,
                var: e.var,
                bit: e.bit,
            });
        }
        Ok(Nbp {
            n,
            layers,
            edges,
            start,
            accept,
            by_layer,
            start_pos,
            accept_pos,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_cap(text, DEFAULT_SIZE_CAP)
    }

    pub fn parse_with_cap(text: &str, cap: usize) -> Result<Self> {
        let file: BpFile = serde_json::from_str(text)?;
        let mut edges = Vec::with_capacity(file.edges.len());
        for [from, to, var, bit] in file.edges {
            let from = u32::try_from(from).map_err(|_| Error::Parse(format!("bad node id {from}")))?;
            let to = u32::try_from(to).map_err(|_| Error::Parse(format!("bad node id {to}")))?;
            if var < 1 || var as u64 > file.n as u64 {
                return Err(Error::VarOutOfRange { var, n: file.n });
            }
            let bit = match bit {
                0 => false,
                1 => true,
                b => return Err(Error::Parse(format!("edge bit {b} is not 0/1"))),
            };
            edges.push(Edge {
                from,
                to,
                var: var as usize,
                bit,
            });
        }
        Self::with_cap(file.n, file.layers, file.start, file.accept, edges, cap)
    }

    pub fn to_json(&self) -> String {
        let file = BpFile {
            n: self.n,
            layers: self.layers.clone(),
            start: self.start,
            accept: self.accept,
            edges: self
                .edges
                .iter()
                .map(|e| [e.from as i64, e.to as i64, e.var as i64, e.bit as i64])
                .collect(),
        };
        serde_json::to_string(&file).expect("program serialization")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> &[Vec<u32>] {
        &self.layers
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn accept(&self) -> u32 {
        self.accept
    }

    /// Number of layers `Z`.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Maximum layer size `W`.
    pub fn width(&self) -> usize {
        self.layers.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edge count.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn evaluate(&self, assignment: &[bool]) -> Result<bool> {
        if assignment.len() != self.n {
            return Err(Error::AssignmentLength {
                expected: self.n,
                got: assignment.len(),
            });
        }
        Ok(self.run(|var| assignment[var - 1]))
    }

    /// Evaluates on the assignment with lexicographic index `index`
    /// (`x_1` is the most significant bit).
    pub fn evaluate_index(&self, index: u64) -> bool {
        let n = self.n;
        self.run(|var| (index >> (n - var)) & 1 == 1)
    }

    fn run(&self, value: impl Fn(usize) -> bool) -> bool {
        let mut reach = vec![false; self.layers[0].len()];
        reach[self.start_pos] = true;
        for (l, edges) in self.by_layer.iter().enumerate() {
            let mut next = vec![false; self.layers[l + 1].len()];
            for e in edges {
                if reach[e.from] && value(e.var) == e.bit {
                    next[e.to] = true;
                }
            }
            reach = next;
        }
        reach[self.accept_pos]
    }

    pub fn truth_table(&self, budget: usize) -> Result<TruthTable> {
        if self.n >= usize::BITS as usize || (1usize << self.n) > budget {
            return Err(Error::Budget { n: self.n, budget });
        }
        let bits = (0..1u64 << self.n).map(|a| self.evaluate_index(a)).collect();
        Ok(TruthTable { n: self.n, bits })
    }

    /// `S(a, b)` for 1-based half-assignment indices in lexicographic order.
    pub fn satisfies_halves(&self, a: usize, b: usize) -> bool {
        let half = self.n / 2;
        let index = (((a - 1) as u64) << half) | (b - 1) as u64;
        self.evaluate_index(index)
    }
}

/// Seeded random program generator.
///
/// Layer sizes are drawn from `[1, width]`; every pair of nodes in adjacent
/// layers independently receives an edge with probability `edge_density`,
/// labelled by a uniform `(var, bit)`.
pub fn random_bp(n: usize, depth: usize, width: usize, edge_density: f64, seed: u64) -> Result<Nbp> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Params(format!("n must be even and positive, got {n}")));
    }
    if depth < 2 || width < 1 {
        return Err(Error::Params(format!(
            "need depth >= 2 and width >= 1, got depth={depth} width={width}"
        )));
    }
    if !(0.0..=1.0).contains(&edge_density) {
        return Err(Error::Params(format!("edge density {edge_density} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next_id = 0u32;
    let layers: Vec<Vec<u32>> = (0..depth)
        .map(|_| {
            let size = rng.gen_range(1..=width);
            (0..size)
                .map(|_| {
                    next_id += 1;
                    next_id
                })
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for l in 0..depth - 1 {
        for &from in &layers[l] {
            for &to in &layers[l + 1] {
                if rng.gen_bool(edge_density) {
                    edges.push(Edge {
                        from,
                        to,
                        var: rng.gen_range(1..=n),
                        bit: rng.gen_bool(0.5),
                    });
                }
            }
        }
    }
    let start = layers[0][rng.gen_range(0..layers[0].len())];
    let last = &layers[depth - 1];
    let accept = last[rng.gen_range(0..last.len())];
    Nbp::new(n, layers, start, accept, edges)
}

/// Truth table in lexicographic assignment order (`bits[0]` is `X_1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn new(n: usize, bits: Vec<bool>) -> Result<Self> {
        if n >= usize::BITS as usize || bits.len() != 1usize << n {
            return Err(Error::Parse(format!(
                "truth table of length {} for n={n}",
                bits.len()
            )));
        }
        Ok(TruthTable { n, bits })
    }

    pub fn from_ascii(text: &str) -> Result<Self> {
        let bits = crate::matrix::parse_bits(text)?;
        if !bits.len().is_power_of_two() {
            return Err(Error::Parse(format!("length {} is not a power of two", bits.len())));
        }
        Self::new(bits.len().trailing_zeros() as usize, bits)
    }

    pub fn to_ascii(&self) -> String {
        crate::matrix::bits_to_string(&self.bits)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

/// The `(2L-1) x L` staircase encoding of a truth table, `L = 2^{n/2}`.
///
/// Cell `(i, j)` is in band iff `d = i + j - L` lies in `[1, L]`; it then
/// holds `X_{L(d-1)+j}`, i.e. `S(a_d, b_j)`. All other cells are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StairMatrix {
    l: usize,
    matrix: BitMatrix,
}

impl StairMatrix {
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn k(&self) -> usize {
        2 * self.l - 1
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> BitMatrix {
        self.matrix
    }

    /// 1-based truth-table index stored at `(i, j)`, if the cell is in band.
    pub fn tt_index(l: usize, i: usize, j: usize) -> Option<usize> {
        let d = (i + j) as isize - l as isize;
        (d >= 1 && d as usize <= l).then(|| l * (d as usize - 1) + j)
    }

    pub fn in_band(l: usize, i: usize, j: usize) -> bool {
        Self::tt_index(l, i, j).is_some()
    }

    /// Wraps an arbitrary matrix, checking shape and that out-of-band cells are 0.
    pub fn from_matrix(matrix: BitMatrix) -> Result<Self> {
        let l = matrix.cols();
        if l == 0 || !l.is_power_of_two() || matrix.rows() != 2 * l - 1 {
            return Err(Error::Parse(format!(
                "{}x{} is not a staircase shape",
                matrix.rows(),
                matrix.cols()
            )));
        }
        for i in 1..=matrix.rows() {
            for j in 1..=l {
                if !Self::in_band(l, i, j) && matrix.get(i, j) {
                    return Err(Error::Parse(format!("out-of-band cell ({i},{j}) is set")));
                }
            }
        }
        Ok(StairMatrix { l, matrix })
    }

    pub fn decode(&self) -> TruthTable {
        let mut bits = vec![false; self.l * self.l];
        for i in 1..=self.k() {
            for j in 1..=self.l {
                if let Some(idx) = Self::tt_index(self.l, i, j) {
                    bits[idx - 1] = self.matrix.get(i, j);
                }
            }
        }
        let n = 2 * self.l.trailing_zeros() as usize;
        TruthTable { n, bits }
    }
}

pub fn matrix_encode(tt: &TruthTable) -> Result<StairMatrix> {
    if !tt.n.is_multiple_of(2) {
        return Err(Error::OddVars(tt.n));
    }
    let l = 1usize << (tt.n / 2);
    let mut matrix = BitMatrix::zeros(2 * l - 1, l);
    for i in 1..=2 * l - 1 {
        for j in 1..=l {
            if let Some(idx) = StairMatrix::tt_index(l, i, j) {
                matrix.set(i, j, tt.bits[idx - 1]);
            }
        }
    }
    Ok(StairMatrix { l, matrix })
}
