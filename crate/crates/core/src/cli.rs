//! Command-line frontend.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::coding::{self, vector_string};
use crate::construct::{
    build_d, build_d_cosets, build_d_dual, complement, default_subspace, PdsSet, Subspace, Tower, TowerParams,
    TowerShape,
};
use crate::error::{Error, ParamsError};
use crate::ff::DEFAULT_TABLE_CAP;
use crate::graph::CayleyGraph;
use crate::group::GroupIndex;
use crate::io::SetFile;
use crate::params::{self, ParamReport};
use crate::verify::{Caps, Status, Verifier, VerifyOptions};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// The towers certified by `grid` when none are given.
pub const DEFAULT_GRID: [(u32, u32, u32, u32); 5] = [(2, 1, 2, 1), (2, 1, 3, 1), (2, 1, 2, 2), (3, 1, 2, 1), (2, 2, 2, 1)];

#[derive(Parser, Debug)]
#[command(name = "denniston", version)]
#[command(about = "Construct and exactly certify generalized Denniston partial difference sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the main output here instead of stdout
    #[arg(short = 'o', long, global = true)]
    pub output: Option<PathBuf>,

    /// Run the exhaustive sweeps on several threads (results are identical)
    #[arg(long, global = true)]
    pub parallel: bool,

    /// Worker threads; implies --parallel when above 1
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct CapArgs {
    /// Largest field built with log tables
    #[arg(long, global = true, env = "DENNISTON_TABLE_CAP", default_value_t = DEFAULT_TABLE_CAP)]
    pub table_cap: u64,
    /// Largest group for the difference profile
    #[arg(long, global = true, env = "DENNISTON_PROFILE_CAP", default_value_t = 1 << 16)]
    pub profile_cap: u64,
    /// Largest v*p for the character spectrum
    #[arg(long, global = true, env = "DENNISTON_SPECTRUM_CAP", default_value_t = 1 << 24)]
    pub spectrum_cap: u64,
    /// Largest group for the common-neighbour pass
    #[arg(long, global = true, env = "DENNISTON_NEIGHBOR_CAP", default_value_t = 1 << 12)]
    pub neighbor_cap: u64,
    /// Largest q^{m(2l+1)} for weight and hyperplane enumeration
    #[arg(long, global = true, env = "DENNISTON_ENUM_CAP", default_value_t = 1 << 16)]
    pub enum_cap: u64,
    /// Largest vertex count for graph export
    #[arg(long, global = true, env = "DENNISTON_GRAPH_CAP", default_value_t = 1 << 16)]
    pub graph_cap: u64,
}

impl CapArgs {
    fn verify_caps(&self) -> Caps {
        Caps { profile: self.profile_cap, spectrum: self.spectrum_cap, neighbors: self.neighbor_cap }
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct TowerArgs {
    /// Characteristic
    #[arg(short = 'p')]
    pub p: Option<u32>,
    /// q = p^s
    #[arg(short = 's', default_value_t = 1)]
    pub s: u32,
    #[arg(short = 'm')]
    pub m: Option<u32>,
    #[arg(short = 'l')]
    pub l: Option<u32>,
    /// Dimension of R over GF(q), 0 <= r <= m
    #[arg(short = 'r')]
    pub r: Option<u32>,
}

impl TowerArgs {
    fn params(&self) -> Result<TowerParams, CliError> {
        let need = |x: Option<u32>, name: &str| x.ok_or_else(|| CliError::Usage(format!("missing -{name}")));
        let (p, m, l, r) = (need(self.p, "p")?, need(self.m, "m")?, need(self.l, "l")?, need(self.r, "r")?);
        Ok(TowerParams::new(p, self.s, m, l, r)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Primal,
    PrimalCosets,
    Dual,
}

/// Where a command's set comes from: a set file, or a fresh construction.
#[derive(Args, Debug, Clone)]
pub struct SetArgs {
    /// Read the set from a file written by `construct`
    #[arg(short = 'i', long, conflicts_with_all = ["p", "m", "l", "r"])]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub tower: TowerArgs,
    #[arg(long, value_enum, default_value_t = FamilyArg::Primal)]
    pub family: FamilyArg,
    /// `default`, `exp:k1,k2,...` (powers of the middle field's primitive element)
    /// or `rows:c,c,..;c,c,..` (GF(p) coordinate rows)
    #[arg(long, default_value = "default")]
    pub subspace: String,
    /// Take the complement G \ (D ∪ {0})
    #[arg(long)]
    pub complement: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form parameters of both families and their codes
    Params {
        #[command(flatten)]
        tower: TowerArgs,
        /// Ranges such as `p=2 s=1 m=2..3 l=1 r=all`
        #[arg(long, conflicts_with_all = ["p", "m", "l", "r"])]
        grid: Option<String>,
    },
    /// Build a set and write it as JSON
    Construct {
        #[command(flatten)]
        set: SetArgs,
        /// Also record the group indices of the elements
        #[arg(long)]
        indices: bool,
    },
    /// Run every oracle on a set
    Verify {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Delsarte dual of a set through the trace pairing
    Dual {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Generator matrix and weight enumerator of the associated code
    Code {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Projective point set and hyperplane profile
    Geometry {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Cayley graph as an edge list or in DIMACS format
    ExportGraph {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
        graph_format: GraphFormat,
    },
    /// Construct and verify both families at every r on a list of towers
    Grid {
        /// Towers as `p,s,m,l` separated by `;` (default: the five certification towers)
        #[arg(long)]
        towers: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Edgelist,
    Dimacs,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Cap(String),
    Failed(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Failed(_) | CliError::Io(_) => EXIT_FAIL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Cap(m) => write!(f, "cap exceeded: {m}"),
            CliError::Failed(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_cap() {
            return CliError::Cap(e.to_string());
        }
        match e {
            Error::InvalidParams(_) | Error::Format(_) | Error::NotASubspace(_) | Error::Params(ParamsError::InvalidRange(_)) => {
                CliError::Usage(e.to_string())
            }
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<ParamsError> for CliError {
    fn from(e: ParamsError) -> Self {
        Error::from(e).into()
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    parallel: bool,
}

impl Ctx<'_> {
    fn emit(&mut self, text: &str) -> Result<(), CliError> {
        match &self.cli.output {
            Some(path) => fs::write(path, text)?,
            None => self.out.write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn emit_json<T: Serialize>(&mut self, value: &T) -> Result<(), CliError> {
        let mut s = serde_json::to_string_pretty(value).expect("serializable");
        s.push('\n');
        self.emit(&s)
    }

    fn log(&mut self, line: &str) -> Result<(), CliError> {
        writeln!(self.err, "{line}")?;
        Ok(())
    }

    fn tower(&self, shape: TowerShape) -> Result<Tower, CliError> {
        Ok(Tower::with_cap(shape, self.cli.caps.table_cap)?)
    }

    fn verify_opts(&self) -> VerifyOptions {
        VerifyOptions { caps: self.cli.caps.verify_caps(), parallel: self.parallel }
    }

    /// Loads or builds the set described by `args`.
    fn load(&mut self, args: &SetArgs) -> Result<(Tower, PdsSet), CliError> {
        let (tower, d) = match &args.input {
            Some(path) => {
                let text = fs::read_to_string(path)?;
                let file = SetFile::parse(&text)?;
                let tower = self.tower(file.params.shape)?;
                let d = file.into_set(&tower)?;
                (tower, d)
            }
            None => {
                let tp = args.tower.params()?;
                let tower = self.tower(tp.shape)?;
                let rsub = parse_subspace(&tower, &args.subspace, tp.r)?;
                let d = match args.family {
                    FamilyArg::Primal => build_d(&tower, &rsub)?,
                    FamilyArg::PrimalCosets => build_d_cosets(&tower, &rsub)?,
                    FamilyArg::Dual => build_d_dual(&tower, &rsub)?,
                };
                (tower, d)
            }
        };
        let d = if args.complement { complement(&tower, &d)? } else { d };
        Ok((tower, d))
    }
}

/// Parses a subspace spec; see [`SetArgs::subspace`].
pub fn parse_subspace(tower: &Tower, spec: &str, r: u32) -> Result<Subspace, CliError> {
    let bad = |m: String| CliError::Usage(format!("subspace {spec:?}: {m}"));
    let rsub = if spec == "default" {
        default_subspace(tower, r)?
    } else if let Some(list) = spec.strip_prefix("exp:") {
        let exps = parse_list(list).map_err(bad)?;
        Subspace::from_gamma_exponents(tower, &exps)?
    } else if let Some(rows) = spec.strip_prefix("rows:") {
        let rows = rows.split(';').filter(|s| !s.is_empty()).map(parse_list).collect::<Result<Vec<_>, _>>().map_err(bad)?;
        Subspace::from_prime_coords(tower, &rows)?
    } else {
        return Err(bad("expected default, exp:... or rows:...".into()));
    };
    if rsub.dim != r {
        return Err(CliError::Usage(format!("subspace has dimension {} but r = {r}", rsub.dim)));
    }
    Ok(rsub)
}

fn parse_list(s: &str) -> Result<Vec<u32>, String> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(|x| x.trim().parse().map_err(|e| format!("{x:?}: {e}"))).collect()
}

/// Parses `key=value` ranges: a number, `a..b` (inclusive), `a,b,c`, or `all` (for r only).
pub fn parse_grid(spec: &str) -> Result<Vec<ParamReport>, CliError> {
    let mut ranges: [Option<Vec<u32>>; 4] = Default::default();
    let mut rs: Option<Vec<u32>> = None;
    for item in spec.split_whitespace() {
        let (key, val) = item.split_once('=').ok_or_else(|| CliError::Usage(format!("bad grid item {item:?}")))?;
        let values = if val == "all" {
            if key != "r" {
                return Err(CliError::Usage(format!("{key}=all is only allowed for r")));
            }
            None
        } else if let Some((a, b)) = val.split_once("..") {
            let a: u32 = a.parse().map_err(|_| CliError::Usage(format!("bad range {val:?}")))?;
            let b: u32 = b.parse().map_err(|_| CliError::Usage(format!("bad range {val:?}")))?;
            Some((a..=b).collect())
        } else {
            Some(parse_list(val).map_err(CliError::Usage)?)
        };
        let slot = match key {
            "p" => 0,
            "s" => 1,
            "m" => 2,
            "l" => 3,
            "r" => {
                rs = values;
                continue;
            }
            _ => return Err(CliError::Usage(format!("unknown grid key {key:?}"))),
        };
        ranges[slot] = Some(values.unwrap_or_default());
    }
    let get = |i: usize, name: &str, default: Option<u32>| -> Result<Vec<u32>, CliError> {
        match (&ranges[i], default) {
            (Some(v), _) => Ok(v.clone()),
            (None, Some(d)) => Ok(vec![d]),
            (None, None) => Err(CliError::Usage(format!("grid needs {name}="))),
        }
    };
    let (ps, ss, ms, ls) = (get(0, "p", None)?, get(1, "s", Some(1))?, get(2, "m", None)?, get(3, "l", None)?);
    Ok(params::grid(&ps, &ss, &ms, &ls, rs.as_deref())?)
}

fn parse_towers(spec: &str) -> Result<Vec<TowerShape>, CliError> {
    spec.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|t| {
            let v = parse_list(t).map_err(CliError::Usage)?;
            match v.as_slice() {
                &[p, s, m, l] => Ok(TowerShape::new(p, s, m, l)?),
                _ => Err(CliError::Usage(format!("tower {t:?} must be p,s,m,l"))),
            }
        })
        .collect()
}

fn param_text(r: &ParamReport) -> String {
    let mut s = String::new();
    let row = |s: &mut String, k: &str, v: String| s.push_str(&format!("{k:<22}{v}\n"));
    row(&mut s, "tower", format!("p={} s={} q={} m={} l={} r={}", r.p, r.s, r.q, r.m, r.l, r.r));
    row(&mut s, "degenerate", r.degenerate.to_string());
    row(&mut s, "primal", format!("{}", r.primal));
    row(&mut s, "dual", format!("{}", r.dual));
    row(&mut s, "complement", format!("{}", r.complement));
    row(&mut s, "delsarte dual", format!("{}", r.delsarte_dual));
    row(&mut s, "spectrum", format!("{{{}, {}}}", r.spectrum.0, r.spectrum.1));
    row(&mut s, "projective", format!("(n={}, h1={}, h2={})", r.projective.n, r.projective.h1, r.projective.h2));
    row(&mut s, "code", format!("[{}] weights ({}, {})", r.code.n, r.code.w1, r.code.w2));
    row(&mut s, "dual projective", format!("(n={}, h1={}, h2={})", r.dual_projective.n, r.dual_projective.h1, r.dual_projective.h2));
    row(&mut s, "dual code", format!("[{}] weights ({}, {})", r.dual_code.n, r.dual_code.w1, r.dual_code.w2));
    row(&mut s, "type", format!("{}", r.classification));
    row(&mut s, "dual type", format!("{}", r.dual_classification));
    s
}

fn grid_table(rows: &[ParamReport]) -> String {
    let mut s = format!("{:>3} {:>2} {:>2} {:>2} {:>2}  {:<28} {:<28} {}\n", "p", "s", "m", "l", "r", "primal", "dual", "type");
    for r in rows {
        s.push_str(&format!(
            "{:>3} {:>2} {:>2} {:>2} {:>2}  {:<28} {:<28} {}\n",
            r.p,
            r.s,
            r.m,
            r.l,
            r.r,
            r.primal.to_string(),
            r.dual.to_string(),
            r.classification
        ));
    }
    s
}

#[derive(Serialize)]
struct GridRow {
    params: TowerParams,
    set: String,
    expected: crate::params::SrgParams,
    passed: bool,
    skipped: Vec<String>,
    failed: Vec<String>,
}

/// Runs the command line `args` (including the program name), writing to `out` and `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let threads = cli.threads.unwrap_or(1);
    if threads == 0 {
        let _ = writeln!(err, "usage: --threads must be positive");
        return EXIT_USAGE;
    }
    let parallel = cli.parallel || threads > 1;
    if let Some(n) = cli.threads {
        // ignored when a global pool already exists (repeated in-process runs)
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut ctx = Ctx { cli: &cli, out, err, parallel };
    match dispatch(&mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(ctx: &mut Ctx) -> Result<i32, CliError> {
    let cli = ctx.cli;
    match &cli.command {
        Command::Params { tower, grid } => {
            if let Some(spec) = grid {
                let rows = parse_grid(spec)?;
                match cli.format {
                    Format::Json => ctx.emit_json(&rows)?,
                    Format::Text => ctx.emit(&grid_table(&rows))?,
                }
            } else {
                let tp = tower.params()?;
                let sh = tp.shape;
                let rep = params::param_report(sh.p, sh.s, sh.m, sh.l, tp.r)?;
                match cli.format {
                    Format::Json => ctx.emit_json(&rep)?,
                    Format::Text => ctx.emit(&param_text(&rep))?,
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Construct { set, indices } => {
            let (tower, d) = ctx.load(set)?;
            ctx.log(&format!(
                "constructed {} on {}: |D| = {}, claimed {}{}",
                d.provenance.label(),
                d.params,
                d.len(),
                d.claimed,
                if d.degenerate() { ", degenerate" } else { "" }
            ))?;
            ctx.log(&format!("R basis (exponents of the middle primitive): {:?}", d.subspace.basis_exponents()))?;
            let file = SetFile::from_set(&tower, &d, *indices);
            ctx.emit(&file.to_json())?;
            Ok(EXIT_PASS)
        }
        Command::Verify { set } => {
            let (tower, d) = ctx.load(set)?;
            let rep = Verifier::new(&tower, ctx.verify_opts())?.verify(&d)?;
            match cli.format {
                Format::Json => ctx.emit_json(&rep)?,
                Format::Text => ctx.emit(&format!("{rep}\n"))?,
            }
            Ok(if rep.passed() { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Dual { set } => {
            let (tower, d) = ctx.load(set)?;
            let v = Verifier::new(&tower, ctx.verify_opts())?;
            let plus = v.delsarte_dual(&d)?;
            ctx.log(&format!("Delsarte dual of {}: |D+| = {}, claimed {}", d.provenance.label(), plus.len(), plus.claimed))?;
            let direct = match &d.provenance {
                p if p.is_primal_construction() => Some(build_d_dual(&tower, &d.subspace)?),
                crate::construct::Provenance::Dual => Some(build_d(&tower, &d.subspace)?),
                _ => None,
            };
            let agrees = direct.as_ref().map(|x| x.same_elements(&plus));
            if let Some(a) = agrees {
                ctx.log(&format!("agrees with the direct construction: {a}"))?;
            }
            ctx.emit(&SetFile::from_set(&tower, &plus, false).to_json())?;
            Ok(if agrees == Some(false) { EXIT_FAIL } else { EXIT_PASS })
        }
        Command::Code { set } => {
            let (tower, d) = ctx.load(set)?;
            let (_, gm, rep) = coding::analyze(&tower, &d, cli.caps.enum_cap, ctx.parallel)?;
            match cli.format {
                Format::Json => ctx.emit_json(&json!({ "report": rep, "generator_matrix": gm.rows }))?,
                Format::Text => {
                    let mut s = gm.to_text();
                    if let Some(w) = &rep.weights {
                        for (weight, count) in &w.0 {
                            s.push_str(&format!("# weight {weight}: {count}\n"));
                        }
                    }
                    s.push_str(&check_lines(&rep.checks));
                    ctx.emit(&s)?;
                }
            }
            code_exit(&rep.checks)
        }
        Command::Geometry { set } => {
            let (tower, d) = ctx.load(set)?;
            let (ps, _, rep) = coding::analyze(&tower, &d, cli.caps.enum_cap, ctx.parallel)?;
            match cli.format {
                Format::Json => ctx.emit_json(&json!({
                    "q": ps.q,
                    "dimension": ps.dim,
                    "claimed": ps.claimed,
                    "points": ps.point_strings(),
                    "hyperplanes": rep.hyperplanes,
                    "checks": rep.checks,
                }))?,
                Format::Text => {
                    let mut s: String = ps.points.iter().map(|p| vector_string(ps.q, p) + "\n").collect();
                    if let Some(h) = &rep.hyperplanes {
                        for (size, count) in &h.0 {
                            s.push_str(&format!("# meets {size} points: {count} hyperplanes\n"));
                        }
                    }
                    s.push_str(&check_lines(&rep.checks));
                    ctx.emit(&s)?;
                }
            }
            code_exit(&rep.checks)
        }
        Command::ExportGraph { set, graph_format } => {
            let (tower, d) = ctx.load(set)?;
            let g = GroupIndex::new(&tower);
            let cg = CayleyGraph::new(&g, g.indices(&d.elements), cli.caps.graph_cap)?;
            let st = cg.structure();
            ctx.log(&format!(
                "{} vertices, {} edges, components {:?}",
                st.vertices,
                st.edges,
                summarize(&st.components)
            ))?;
            let mut buf = Vec::new();
            match graph_format {
                GraphFormat::Edgelist => cg.write_edgelist(&mut buf)?,
                GraphFormat::Dimacs => cg.write_dimacs(&mut buf)?,
            }
            match &cli.output {
                Some(path) => fs::write(path, buf)?,
                None => ctx.out.write_all(&buf)?,
            }
            Ok(EXIT_PASS)
        }
        Command::Grid { towers } => {
            let shapes = match towers {
                Some(t) => parse_towers(t)?,
                None => DEFAULT_GRID
                    .iter()
                    .map(|&(p, s, m, l)| TowerShape::new(p, s, m, l))
                    .collect::<Result<_, _>>()?,
            };
            let mut rows = Vec::new();
            for shape in shapes {
                let tower = ctx.tower(shape)?;
                let v = Verifier::new(&tower, ctx.verify_opts())?;
                for r in 0..=shape.m {
                    let rsub = default_subspace(&tower, r)?;
                    for d in [build_d(&tower, &rsub)?, build_d_dual(&tower, &rsub)?] {
                        let rep = v.verify(&d)?;
                        let names = |s: Status| rep.checks.iter().filter(|c| c.status == s).map(|c| c.name.clone()).collect();
                        rows.push(GridRow {
                            params: d.params,
                            set: d.provenance.label(),
                            expected: rep.expected,
                            passed: rep.passed(),
                            skipped: names(Status::Skipped),
                            failed: names(Status::Fail),
                        });
                    }
                }
            }
            match cli.format {
                Format::Json => ctx.emit_json(&rows)?,
                Format::Text => {
                    let mut s = String::new();
                    for row in &rows {
                        s.push_str(&format!(
                            "{} {:<8} {:<24} {}{}\n",
                            row.params,
                            row.set,
                            row.expected.to_string(),
                            if row.passed { "PASS" } else { "FAIL" },
                            if row.skipped.is_empty() { String::new() } else { format!(" (skipped: {})", row.skipped.join(", ")) }
                        ));
                    }
                    ctx.emit(&s)?;
                }
            }
            Ok(if rows.iter().all(|r| r.passed) { EXIT_PASS } else { EXIT_FAIL })
        }
    }
}

fn check_lines(checks: &[crate::verify::CheckResult]) -> String {
    checks.iter().map(|c| format!("# {} {} {}\n", c.status, c.name, c.summary)).collect()
}

fn code_exit(checks: &[crate::verify::CheckResult]) -> Result<i32, CliError> {
    if checks.iter().any(|c| c.status == Status::Fail) {
        return Ok(EXIT_FAIL);
    }
    if let Some(c) = checks.iter().find(|c| c.status == Status::Skipped) {
        return Err(CliError::Cap(c.summary.clone()));
    }
    Ok(EXIT_PASS)
}

/// Run-length summary `(size, count)` of a sorted list.
fn summarize(sizes: &[u64]) -> Vec<(u64, usize)> {
    let mut out: Vec<(u64, usize)> = Vec::new();
    for &s in sizes {
        match out.last_mut() {
            Some((x, c)) if *x == s => *c += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}
