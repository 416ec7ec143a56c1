//! `fgx` command-line front end. Every command prints one JSON report;
//! generator commands also write their artifact to `--out`.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::adversary::{
    default_profile_bound, dyck_check, dyck_wrap, gen_x_matrix, gen_y_matrix, is_member_x, is_member_y,
    prefix_imbalance_profile, relation_stats, validate_params, validate_params_for_width,
};
use crate::bp::{matrix_encode, random_bp, Nbp, StairMatrix, TruthTable};
use crate::convert::{classify_terms, coarse_to_path, path_to_coarse};
use crate::corpus::promise_corpus;
use crate::editdist::{coarse_min_brute, edit_distance_banded, edit_distance_bitparallel, Bounded, CoarseAlignment};
use crate::error::{Error, Result};
use crate::matrix::{bits_to_string, parse_bits, BitMatrix};
use crate::ov::{count_orthogonal, parse_dimacs, sat_count_brute, vector_bit, williams_vectors, OvInstance, Side};
use crate::pathcost::{min_path_cost, pp_edit_promise, CostConstants, PathSpec};
use crate::reduction::{build_instance, decide_via_editdist, verify_gadget_contract, GadgetParams, Sequence};
use crate::report::{to_data, Report};
use crate::verify::{run_all, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "fgx", version, about = "Branching-program to edit-distance reduction lab")]
pub struct Cli {
    /// Seed for every generator.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Artifact destination (file or directory, per command).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GadgetArgs {
    /// Marker run width w (default 4L).
    #[arg(long)]
    pub marker_width: Option<usize>,
    /// Separator length as a multiple of the gadget length.
    #[arg(long, default_value_t = 8)]
    pub sep_mult: usize,
}

impl GadgetArgs {
    fn params(&self) -> GadgetParams {
        GadgetParams {
            marker_width: self.marker_width,
            sep_mult: self.sep_mult,
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ConstArgs {
    #[command(flatten)]
    pub gadget: GadgetArgs,
    #[arg(long)]
    pub q: Option<i64>,
    #[arg(long)]
    pub rho: Option<i64>,
    #[arg(long)]
    pub s_g: Option<i64>,
    #[arg(long)]
    pub t: Option<i64>,
}

impl ConstArgs {
    /// Reduction constants for `l`, with any explicit overrides applied.
    fn constants(&self, l: usize) -> Result<CostConstants> {
        let base = self.gadget.params().constants(l)?;
        CostConstants::new(
            self.q.unwrap_or(base.q),
            self.rho.unwrap_or(base.rho),
            self.s_g.unwrap_or(base.s_g),
            self.t.unwrap_or(base.t),
            l,
        )
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Branching programs.
    #[command(subcommand)]
    Bp(BpCmd),
    /// Staircase encoding of a program's truth table.
    Encode {
        #[arg(long, conflicts_with = "tt")]
        bp: Option<PathBuf>,
        #[arg(long)]
        tt: Option<PathBuf>,
    },
    /// Path-cost property.
    #[command(subcommand)]
    Ppedit(PpCmd),
    /// Edit-distance reduction.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Edit-distance kernels.
    #[command(subcommand)]
    Editdist(EditCmd),
    /// Path and coarse-alignment conversions.
    #[command(subcommand)]
    Convert(ConvertCmd),
    /// CNF to orthogonal vectors.
    #[command(subcommand)]
    Ov(OvCmd),
    /// Adversary families and Dyck checks.
    #[command(subcommand)]
    Adv(AdvCmd),
    /// Seeded program corpora.
    #[command(subcommand)]
    Corpus(CorpusCmd),
    /// Verification suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
pub enum BpCmd {
    Eval {
        #[arg(long)]
        bp: PathBuf,
        /// Assignment bits, x1 first.
        #[arg(long)]
        assignment: String,
    },
    Tt {
        #[arg(long)]
        bp: PathBuf,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        width: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
    Validate {
        #[arg(long)]
        bp: PathBuf,
        #[arg(long, default_value_t = crate::bp::DEFAULT_SIZE_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum PpCmd {
    Eval {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 0)]
        mu: i64,
        #[command(flatten)]
        consts: ConstArgs,
    },
    Promise {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        consts: ConstArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum ReduceCmd {
    Build {
        #[arg(long)]
        bp: PathBuf,
        #[command(flatten)]
        gadget: GadgetArgs,
    },
    Verify {
        #[arg(long)]
        bp: PathBuf,
        #[command(flatten)]
        gadget: GadgetArgs,
    },
    Decide {
        #[arg(long)]
        bp: PathBuf,
        #[command(flatten)]
        gadget: GadgetArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum EditCmd {
    Dist {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Report `distance < threshold` as the verdict.
        #[arg(long)]
        threshold: Option<usize>,
    },
    Banded {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        band: usize,
    },
    /// Whole-distance versus coarse-alignment minimum on one program.
    CoarseCheck {
        #[arg(long)]
        bp: PathBuf,
        #[command(flatten)]
        gadget: GadgetArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConvertCmd {
    P2c {
        #[arg(long)]
        path: PathBuf,
        #[arg(long)]
        l: usize,
    },
    C2p {
        #[arg(long)]
        coarse: PathBuf,
        #[arg(long)]
        l: usize,
    },
    Classify {
        #[arg(long)]
        coarse: PathBuf,
        #[arg(long)]
        l: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum OvCmd {
    Build {
        #[arg(long)]
        cnf: PathBuf,
    },
    Count {
        #[arg(long, conflicts_with = "ov")]
        cnf: Option<PathBuf>,
        #[arg(long)]
        ov: Option<PathBuf>,
    },
    Parity {
        #[arg(long, conflicts_with = "ov")]
        cnf: Option<PathBuf>,
        #[arg(long)]
        ov: Option<PathBuf>,
    },
    Bit {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long, value_enum)]
        side: SideArg,
        /// Half-assignment value in [0, 2^{n/2}).
        #[arg(long)]
        index: u64,
        /// 0-based clause index.
        #[arg(long)]
        clause: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SideArg {
    U,
    V,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FamilyArg {
    X,
    Y,
}

#[derive(Subcommand, Debug)]
pub enum AdvCmd {
    Gen {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long, value_enum)]
        family: FamilyArg,
    },
    Stats {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        /// Also check the parameter constraints against the reduction
        /// constants for this many variables.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        gadget: GadgetArgs,
    },
    Dyck {
        /// Bracket string file to check; omit to check generated family rows.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        depth_bound: Option<usize>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        t: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CorpusCmd {
    Make {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[command(flatten)]
        gadget: GadgetArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    All {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Programs per corpus.
        #[arg(long, default_value_t = 50)]
        seeds: usize,
        #[arg(long, default_value_t = 6)]
        align_max_len: usize,
        #[command(flatten)]
        gadget: GadgetArgs,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_bp(path: &Path) -> Result<Nbp> {
    Nbp::parse(&read(path)?)
}

fn load_sequence(path: &Path) -> Result<Vec<u8>> {
    let text = read(path)?;
    Ok(Sequence::from_ascii(&text)?.as_slice().to_vec())
}

fn load_ov(cnf: &Option<PathBuf>, ov: &Option<PathBuf>) -> Result<(OvInstance, Option<u64>)> {
    match (cnf, ov) {
        (Some(c), None) => {
            let f = parse_dimacs(&read(c)?)?;
            let sat = if f.n() <= crate::ov::SAT_BRUTE_MAX_VARS {
                Some(sat_count_brute(&f)?)
            } else {
                None
            };
            Ok((williams_vectors(&f)?, sat))
        }
        (None, Some(o)) => Ok((OvInstance::from_json(&read(o)?)?, None)),
        _ => Err(Error::Params("give exactly one of --cnf or --ov".into())),
    }
}

fn command_name(cmd: &Command) -> String {
    let (a, b) = match cmd {
        Command::Bp(c) => ("bp", format!("{c:?}")),
        Command::Encode { .. } => ("encode", String::new()),
        Command::Ppedit(c) => ("ppedit", format!("{c:?}")),
        Command::Reduce(c) => ("reduce", format!("{c:?}")),
        Command::Editdist(c) => ("editdist", format!("{c:?}")),
        Command::Convert(c) => ("convert", format!("{c:?}")),
        Command::Ov(c) => ("ov", format!("{c:?}")),
        Command::Adv(c) => ("adv", format!("{c:?}")),
        Command::Corpus(c) => ("corpus", format!("{c:?}")),
        Command::Verify(c) => ("verify", format!("{c:?}")),
    };
    let sub: String = b
        .chars()
        .take_while(|c| c.is_alphanumeric())
        .collect::<String>()
        .chars()
        .enumerate()
        .flat_map(|(i, c)| {
            let lower = c.to_ascii_lowercase();
            if c.is_uppercase() && i > 0 {
                vec!['-', lower]
            } else {
                vec![lower]
            }
        })
        .collect();
    if sub.is_empty() {
        a.to_string()
    } else {
        format!("{a} {sub}")
    }
}

/// Exit status: 0 success, 1 invariant violation, 2 error.
pub fn run(cli: &Cli) -> (i32, Report) {
    let name = command_name(&cli.command);
    match dispatch(cli, &name) {
        Ok(r) => (if r.ok { 0 } else { 1 }, r),
        Err(e) => (2, Report::failure(name, &e)),
    }
}

fn out_path(cli: &Cli) -> Result<&Path> {
    cli.out
        .as_deref()
        .ok_or_else(|| Error::Params("this command needs --out".into()))
}

fn dispatch(cli: &Cli, name: &str) -> Result<Report> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Bp(cmd) => bp_cmd(cli, name, cmd)?,
        Command::Encode { bp, tt } => {
            let tt = match (bp, tt) {
                (Some(b), None) => load_bp(b)?.truth_table(1 << 24)?,
                (None, Some(t)) => TruthTable::from_ascii(&read(t)?)?,
                _ => return Err(Error::Params("give exactly one of --bp or --tt".into())),
            };
            let m = matrix_encode(&tt)?;
            let grid = m.matrix().to_json();
            if let Some(out) = &cli.out {
                write(out, &grid)?;
            }
            Report::new(name, json!({ "L": m.l(), "K": m.k(), "matrix": serde_json::from_str::<Value>(&grid)? }))
        }
        Command::Ppedit(cmd) => pp_cmd(name, cmd)?,
        Command::Reduce(cmd) => reduce_cmd(cli, name, cmd)?,
        Command::Editdist(cmd) => edit_cmd(name, cmd)?,
        Command::Convert(cmd) => convert_cmd(name, cmd)?,
        Command::Ov(cmd) => ov_cmd(cli, name, cmd)?,
        Command::Adv(cmd) => adv_cmd(cli, name, cmd)?,
        Command::Corpus(CorpusCmd::Make { n, count, gadget }) => {
            let dir = out_path(cli)?;
            let (entries, summary) = promise_corpus(*n, *count, cli.seed, &gadget.params())?;
            fs::create_dir_all(dir)?;
            let mut listing = Vec::new();
            for e in &entries {
                let file = format!("bp_n{n}_{:03}.json", e.index);
                write(&dir.join(&file), &e.bp.to_json())?;
                listing.push(json!({ "file": file, "promise": e.promise, "params": e.params }));
            }
            let manifest = json!({ "summary": summary, "programs": listing });
            write(&dir.join("manifest.json"), &serde_json::to_string_pretty(&manifest)?)?;
            Report::new(name, json!({ "summary": summary, "dir": dir.display().to_string() }))
        }
        Command::Verify(VerifyCmd::All { n, seeds, align_max_len, gadget }) => {
            let opts = VerifyOptions {
                n: *n,
                seeds: *seeds,
                seed: cli.seed,
                params: gadget.params(),
                align_max_len: *align_max_len,
                ..VerifyOptions::default()
            };
            let checks = run_all(&opts)?;
            let mut r = Report::new(name, json!({ "checks": to_data(&checks) }));
            for c in &checks {
                r.timings_ms.insert(c.name.to_string(), c.elapsed_ms);
                if !c.ok {
                    r.violation(format!("{} failed", c.name));
                }
            }
            r
        }
    };
    report.time("total", start);
    Ok(report)
}

fn bp_cmd(cli: &Cli, name: &str, cmd: &BpCmd) -> Result<Report> {
    Ok(match cmd {
        BpCmd::Eval { bp, assignment } => {
            let bp = load_bp(bp)?;
            let a = parse_bits(assignment)?;
            Report::new(name, json!({ "n": bp.n(), "assignment": assignment, "value": bp.evaluate(&a)? }))
        }
        BpCmd::Tt { bp } => {
            let tt = load_bp(bp)?.truth_table(1 << 24)?;
            if let Some(out) = &cli.out {
                write(out, &tt.to_ascii())?;
            }
            Report::new(name, json!({ "n": tt.n(), "ones": tt.count_ones(), "tt": tt.to_ascii() }))
        }
        BpCmd::Random { n, depth, width, density } => {
            let bp = random_bp(*n, *depth, *width, *density, cli.seed)?;
            if let Some(out) = &cli.out {
                write(out, &bp.to_json())?;
            }
            Report::new(name, json!({ "seed": cli.seed, "program": serde_json::from_str::<Value>(&bp.to_json())? }))
        }
        BpCmd::Validate { bp, cap } => {
            let bp = Nbp::parse_with_cap(&read(bp)?, *cap)?;
            Report::new(
                name,
                json!({ "n": bp.n(), "depth": bp.depth(), "width": bp.width(), "size": bp.size() }),
            )
        }
    })
}

fn load_matrix(path: &Path) -> Result<BitMatrix> {
    BitMatrix::from_json(&read(path)?)
}

fn pp_cmd(name: &str, cmd: &PpCmd) -> Result<Report> {
    Ok(match cmd {
        PpCmd::Eval { matrix, mu, consts } => {
            let m = load_matrix(matrix)?;
            let c = consts.constants(m.cols())?;
            let cost = min_path_cost(&m, *mu, &c)?;
            Report::new(
                name,
                json!({ "constants": c, "mu": mu, "min_cost": cost, "threshold": c.threshold(), "p_edit": cost < c.threshold() }),
            )
        }
        PpCmd::Promise { matrix, consts } => {
            let m = load_matrix(matrix)?;
            let c = consts.constants(m.cols())?;
            Report::new(
                name,
                json!({
                    "constants": c,
                    "threshold": c.threshold(),
                    "min_cost_mu0": min_path_cost(&m, 0, &c)?,
                    "min_cost_muq": min_path_cost(&m, c.q, &c)?,
                    "promise": pp_edit_promise(&m, &c)?,
                }),
            )
        }
    })
}

fn reduce_cmd(cli: &Cli, name: &str, cmd: &ReduceCmd) -> Result<Report> {
    Ok(match cmd {
        ReduceCmd::Build { bp, gadget } => {
            let inst = build_instance(&load_bp(bp)?, &gadget.params())?;
            let manifest = inst.manifest();
            if let Some(dir) = &cli.out {
                fs::create_dir_all(dir)?;
                write(&dir.join("x.txt"), &inst.x().to_string())?;
                write(&dir.join("y.txt"), &inst.y().to_string())?;
                write(&dir.join("manifest.json"), &serde_json::to_string_pretty(&manifest)?)?;
            }
            Report::new(name, json!({ "manifest": manifest }))
        }
        ReduceCmd::Verify { bp, gadget } => {
            let r = verify_gadget_contract(&load_bp(bp)?, &gadget.params())?;
            let mut rep = Report::new(name, to_data(&r));
            for v in &r.violations {
                rep.violation(format!("pair {:?}/{}: distance {} expected {}", v.a, v.b, v.got, v.expected));
            }
            rep
        }
        ReduceCmd::Decide { bp, gadget } => {
            let start = Instant::now();
            let inst = build_instance(&load_bp(bp)?, &gadget.params())?;
            let built = start.elapsed().as_secs_f64() * 1e3;
            let d = decide_via_editdist(&inst)?;
            let mut r = Report::new(name, json!({ "decision": d, "manifest": inst.manifest() }));
            r.timings_ms.insert("build".into(), built);
            if d.verdict != (d.promise == crate::pathcost::Promise::One) {
                r.violation("edit-distance verdict disagrees with the path-cost promise");
            }
            r
        }
    })
}

fn edit_cmd(name: &str, cmd: &EditCmd) -> Result<Report> {
    Ok(match cmd {
        EditCmd::Dist { a, b, threshold } => {
            let (a, b) = (load_sequence(a)?, load_sequence(b)?);
            let d = edit_distance_bitparallel(&a, &b);
            Report::new(
                name,
                json!({ "distance": d, "threshold": threshold, "verdict": threshold.map(|t| d < t) }),
            )
        }
        EditCmd::Banded { a, b, band } => {
            let (a, b) = (load_sequence(a)?, load_sequence(b)?);
            let r = edit_distance_banded(&a, &b, *band);
            Report::new(
                name,
                json!({ "bound": band, "within": matches!(r, Bounded::Within(_)), "distance": r.within() }),
            )
        }
        EditCmd::CoarseCheck { bp, gadget } => {
            let inst = build_instance(&load_bp(bp)?, &gadget.params())?;
            let d = edit_distance_bitparallel(inst.x().as_slice(), inst.y().as_slice());
            let coarse = coarse_min_brute(&inst)?;
            let two_x = 2 * inst.x().len();
            let mut r = Report::new(
                name,
                json!({ "distance": d, "two_len_x": two_x, "coarse_min": coarse, "threshold": inst.constants().threshold() }),
            );
            if d != two_x + coarse {
                r.violation(format!("distance {d} != {two_x} + {coarse}"));
            }
            r
        }
    })
}

fn convert_cmd(name: &str, cmd: &ConvertCmd) -> Result<Report> {
    Ok(match cmd {
        ConvertCmd::P2c { path, l } => {
            let p: PathSpec = serde_json::from_str(&read(path)?)?;
            let c = path_to_coarse(&p, *l)?;
            Report::new(name, json!({ "coarse": c, "terms": c.len(), "points": p.len() }))
        }
        ConvertCmd::C2p { coarse, l } => {
            let c: CoarseAlignment = serde_json::from_str(&read(coarse)?)?;
            let p = coarse_to_path(&c, *l)?;
            Report::new(name, json!({ "path": p }))
        }
        ConvertCmd::Classify { coarse, l } => {
            let c: CoarseAlignment = serde_json::from_str(&read(coarse)?)?;
            let classes = classify_terms(&c, 2 * l - 1);
            Report::new(name, json!({ "K": 2 * l - 1, "classes": classes }))
        }
    })
}

fn ov_cmd(cli: &Cli, name: &str, cmd: &OvCmd) -> Result<Report> {
    Ok(match cmd {
        OvCmd::Build { cnf } => {
            let f = parse_dimacs(&read(cnf)?)?;
            let inst = williams_vectors(&f)?;
            if let Some(out) = &cli.out {
                write(out, &inst.to_json())?;
            }
            Report::new(name, json!({ "n": f.n(), "d": inst.d(), "vectors_per_side": inst.u().len() }))
        }
        OvCmd::Count { cnf, ov } | OvCmd::Parity { cnf, ov } => {
            let (inst, sat) = load_ov(cnf, ov)?;
            let count = count_orthogonal(&inst);
            let mut r = Report::new(
                name,
                json!({ "count": count, "parity": count % 2, "sat_count": sat }),
            );
            if sat.is_some_and(|s| s != count) {
                r.violation("orthogonal pair count differs from the satisfying assignment count");
            }
            r
        }
        OvCmd::Bit { cnf, side, index, clause } => {
            let f = parse_dimacs(&read(cnf)?)?;
            let side = match side {
                SideArg::U => Side::U,
                SideArg::V => Side::V,
            };
            let bit = vector_bit(&f, side, *index, *clause)?;
            Report::new(name, json!({ "side": side, "index": index, "clause": clause, "bit": u8::from(bit) }))
        }
    })
}

fn adv_cmd(cli: &Cli, name: &str, cmd: &AdvCmd) -> Result<Report> {
    Ok(match cmd {
        AdvCmd::Gen { k, t, family } => {
            let m = match family {
                FamilyArg::X => gen_x_matrix(*k, *t, cli.seed)?,
                FamilyArg::Y => gen_y_matrix(*k, *t, cli.seed)?,
            };
            let grid = m.matrix.to_json();
            if let Some(out) = &cli.out {
                write(out, &grid)?;
            }
            let rows: Vec<usize> = (1..=m.matrix.rows())
                .map(|r| m.matrix.row(r).iter().filter(|&&b| b).count())
                .collect();
            let mut r = Report::new(
                name,
                json!({ "k": k, "t": t, "side": m.matrix.rows(), "row_ones": rows, "matrix": serde_json::from_str::<Value>(&grid)? }),
            );
            let member = match family {
                FamilyArg::X => is_member_x(&m.matrix, *k, *t),
                FamilyArg::Y => is_member_y(&m.matrix, *k, *t),
            };
            if !member {
                r.violation("generated matrix fails its family membership check");
            }
            r
        }
        AdvCmd::Stats { k, t, budget, n, gadget } => {
            let stats = relation_stats(*k, *t, *budget, cli.seed)?;
            let mut data = json!({ "relation": stats });
            let mut r_ok = stats.ok;
            if let Some(n) = n {
                let c = gadget.params().constants(1usize << (n / 2))?;
                let core = validate_params(*k, *t, &c);
                let width = validate_params_for_width(*k, *t, &c, *n);
                r_ok &= core.is_ok();
                data["params"] = json!({
                    "constants": c,
                    "core": core.err().unwrap_or_default(),
                    "width": width.err().unwrap_or_default(),
                });
            }
            let mut r = Report::new(name, data);
            if !r_ok {
                r.violation("relation bounds or parameter constraints fail");
            }
            r
        }
        AdvCmd::Dyck { input, depth_bound, k, t } => match input {
            Some(path) => {
                let text = read(path)?;
                let s = text.trim();
                let bound = depth_bound.unwrap_or(usize::MAX);
                Report::new(name, json!({ "length": s.len(), "depth_bound": depth_bound, "accepted": dyck_check(s, bound)? }))
            }
            None => {
                let x = gen_x_matrix(*k, *t, cli.seed)?;
                let y = gen_y_matrix(*k, *t, cli.seed)?;
                let default_bound = default_profile_bound(*k, *t);
                let mut r = Report::new(name, Value::Null);
                let mut rows = Vec::new();
                for (fam, m) in [("X", &x.matrix), ("Y", &y.matrix)] {
                    for i in 1..=m.rows() {
                        let row = m.row(i);
                        let d = prefix_imbalance_profile(row);
                        let bound = depth_bound.unwrap_or(2 * d);
                        let accepted = dyck_check(&dyck_wrap(row, d), bound)?;
                        let balanced = 2 * row.iter().filter(|&&b| b).count() == row.len();
                        if fam == "X" && !accepted && depth_bound.is_none() {
                            r.violation(format!("X row {i} rejected"));
                        }
                        if !balanced && accepted {
                            r.violation(format!("{fam} row {i} is unbalanced but accepted"));
                        }
                        rows.push(json!({ "family": fam, "row": i, "bits": bits_to_string(row), "profile": d, "accepted": accepted }));
                    }
                }
                r.data = json!({ "k": k, "t": t, "profile_bound": default_bound, "rows": rows });
                r
            }
        },
    })
}

/// Entry point shared by the binary: parses `args`, runs, returns exit status
/// and the report text.
pub fn main_with_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => {
            let (code, report) = run(&cli);
            (code, report.to_json())
        }
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            (code, e.to_string())
        }
    }
}

/// Wraps a staircase matrix file for the decode direction (used by tests).
pub fn decode_matrix(m: BitMatrix) -> Result<TruthTable> {
    Ok(StairMatrix::from_matrix(m)?.decode())
}
