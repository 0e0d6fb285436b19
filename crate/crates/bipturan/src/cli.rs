//! The `bipturan` command line.
//!
//! Exit codes: 0 success, 1 a lemma or bound was falsified or a certificate
//! was rejected, 2 bad usage or unmet hypotheses, 3 timeout.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use bipturan_core::lemmas::{
    check_degree_lemma, check_endpoint_lemma, check_removable_pair_lemma, check_removable_vertex_lemma,
};
use bipturan_core::pattern::{longest_path_from, PathFinder};
use bipturan_core::search::{Mode, TableSpec, Theorem, TuranQuery};
use bipturan_core::{
    broom_circulant, build_certificate, contains_pattern, path_extremal, verify_certificate, BipartiteGraph, Pattern,
    VertexRef,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::driver::{self, RunOptions};
use crate::error::Error;
use crate::format::{read_graph_file, write_document, write_graph};
use crate::report::{certificate_to_json, read_certificate_file, to_json, CheckReport, SearchReport};
use crate::table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TIMEOUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "bipturan", version, about = "Connected bipartite Turán numbers of paths and brooms")]
struct Cli {
    /// Directory for counterexample graphs [default: the system temp dir]
    #[arg(long, global = true, value_name = "DIR")]
    counterexample_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an extremal graph
    #[command(subcommand)]
    Construct(Construct),

    /// Test a graph for a forbidden pattern
    Check {
        /// `path:M` or `broom:P:D`
        #[arg(long)]
        forbid: Pattern,
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },

    /// Number of vertices on a longest path
    LongestPath {
        file: PathBuf,
        /// Only paths starting here, e.g. `A:0`
        #[arg(long, value_name = "PART:INDEX")]
        from: Option<VertexRef>,
    },

    /// Compute ex(a, b, pattern) over connected bipartite graphs
    Search {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        forbid: Pattern,
        #[arg(long, value_enum, default_value_t = ModeArg::Bnb)]
        mode: ModeArg,
        /// Also print the extremal graphs
        #[arg(long)]
        witnesses: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        run: RunArgs,
    },

    /// Build a removal certificate, or check one with --verify
    Certify {
        #[arg(long)]
        k: Option<usize>,
        /// Certificate to check against FILE
        #[arg(long, value_name = "CERTFILE")]
        verify: Option<PathBuf>,
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Run one of the lemmas on a graph
    LemmaCheck {
        #[arg(long, value_enum)]
        lemma: LemmaArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: Option<usize>,
        file: PathBuf,
    },

    /// Compare searched values with the path theorem over a grid
    Table {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long)]
        max_a: usize,
        #[arg(long)]
        max_b: usize,
        #[arg(long, value_name = "LO..HI", value_parser = parse_range)]
        k_range: (usize, usize),
        /// Write CSV here (`-` for standard output)
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    PathExtremal {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    BroomCirculant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct RunArgs {
    /// Worker threads (0 = one per core)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Seconds per query
    #[arg(long, default_value_t = driver::DEFAULT_TIMEOUT.as_secs())]
    timeout: u64,
}

impl RunArgs {
    fn options(self) -> RunOptions {
        RunOptions { threads: self.threads, timeout: Some(Duration::from_secs(self.timeout)), node_budget: None }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Oracle,
    Bnb,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LemmaArg {
    Endpoint,
    Degree,
    RemovableVertex,
    RemovablePair,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TheoremArg {
    Paths,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad number `{t}` in `{s}`"));
    Ok((num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?))
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    color: bool,
    counterexample_dir: PathBuf,
}

impl Ctx<'_> {
    fn paint(&self, code: &str, text: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    /// Saves `g` and names the file on stderr.
    fn counterexample(&mut self, g: &BipartiteGraph, what: &str) -> Result<i32, Error> {
        let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_nanos()).unwrap_or(0);
        let name = format!("counterexample-{}-{stamp}.bcg", std::process::id());
        let path = self.counterexample_dir.join(name);
        fs::write(&path, write_document(g, &[what])).map_err(|source| Error::Io { path: path.clone(), source })?;
        let _ = writeln!(self.err, "{what}; counterexample written to {}", path.display());
        Ok(EXIT_FALSIFIED)
    }

    fn emit(&mut self, output: Option<&Path>, text: &str) -> Result<(), Error> {
        match output {
            Some(p) => fs::write(p, text).map_err(|source| Error::Io { path: p.into(), source }),
            None => self.out.write_all(text.as_bytes()).map_err(|source| Error::Io { path: "<stdout>".into(), source }),
        }
    }
}

/// Runs the command line `args` (program name first) without colour.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, out, err, false)
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = if color { e.render().ansi().to_string() } else { e.render().to_string() };
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{text}");
            return EXIT_OK;
        }
    };
    let mut ctx = Ctx {
        out,
        err,
        color,
        counterexample_dir: cli.counterexample_dir.clone().unwrap_or_else(std::env::temp_dir),
    };
    match execute(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    use bipturan_core::Error as E;
    match e {
        Error::Core(E::Timeout { .. } | E::SearchTimeout { .. }) => EXIT_TIMEOUT,
        Error::Core(E::LemmaFalsified { .. } | E::BaseCaseViolated { .. }) => EXIT_FALSIFIED,
        _ => EXIT_USAGE,
    }
}

fn execute(command: Command, ctx: &mut Ctx<'_>) -> Result<i32, Error> {
    match command {
        Command::Construct(c) => {
            let (g, output) = match c {
                Construct::PathExtremal { a, b, k, output } => (path_extremal(a, b, k)?, output),
                Construct::BroomCirculant { n, d, output } => (broom_circulant(n, d)?, output),
            };
            ctx.emit(output.as_deref(), &write_graph(&g))?;
            Ok(EXIT_OK)
        }

        Command::Check { forbid, file, json } => {
            let g = read_graph_file(&file)?;
            let found = contains_pattern(&g, &forbid)?;
            let report = CheckReport::new(forbid, found.as_ref());
            let text = if json {
                to_json(&report)
            } else if report.free {
                format!("{}\n", ctx.paint("32", "free"))
            } else {
                format!(
                    "{}\nspine: {}\nleaves: {}\n",
                    ctx.paint("33", "contains"),
                    join(&report.spine),
                    join(&report.leaves)
                )
            };
            ctx.emit(None, &text)?;
            Ok(EXIT_OK)
        }

        Command::LongestPath { file, from } => {
            let g = read_graph_file(&file)?;
            let text = match from {
                Some(v) => format!("{}\n", longest_path_from(&g, v, None)?),
                None => {
                    let path = PathFinder::new(&g).longest_path(None)?;
                    format!("{}\n{}\n", path.len(), join(&path))
                }
            };
            ctx.emit(None, &text)?;
            Ok(EXIT_OK)
        }

        Command::Search { a, b, forbid, mode, witnesses, json, run } => {
            let mode = match mode {
                ModeArg::Oracle => Mode::Oracle,
                ModeArg::Bnb => Mode::BranchAndBound,
            };
            let q = TuranQuery::new(a, b, forbid, mode);
            let start = std::time::Instant::now();
            let r = match driver::solve(&q, &run.options()) {
                Ok(r) => r,
                Err(Error::Core(bipturan_core::Error::SearchTimeout { lower_bound, nodes })) => {
                    if json {
                        let rep = SearchReport::interrupted(&q, lower_bound, nodes, start.elapsed().as_millis() as u64);
                        ctx.emit(None, &to_json(&rep))?;
                    }
                    let bound = lower_bound.map_or("none".to_string(), |v| v.to_string());
                    let _ = writeln!(
                        ctx.err,
                        "search interrupted after {nodes} nodes; lower bound {bound} (not exact)"
                    );
                    return Ok(EXIT_TIMEOUT);
                }
                Err(e) => return Err(e),
            };
            let text = if json {
                to_json(&SearchReport::from_result(&r, witnesses))
            } else {
                let mut s = format!("{}\n", r.value.map_or("none".to_string(), |v| v.to_string()));
                if witnesses {
                    let n = r.witnesses.len();
                    for (i, w) in r.witnesses.iter().enumerate() {
                        s.push('\n');
                        s.push_str(&write_document(w, &[format!("witness {} of {n}", i + 1)]));
                    }
                }
                s
            };
            ctx.emit(None, &text)?;
            Ok(EXIT_OK)
        }

        Command::Certify { k, verify: Some(cert_path), file, output } => {
            let g = read_graph_file(&file)?;
            let cert = read_certificate_file(&cert_path)?;
            let k = k.unwrap_or(cert.k);
            match verify_certificate(&g, k, &cert) {
                Ok(()) => {
                    ctx.emit(output.as_deref(), &format!("ok: at most {} edges\n", cert.claimed_bound))?;
                    Ok(EXIT_OK)
                }
                Err(rej) => {
                    let _ = writeln!(ctx.err, "certificate rejected: {rej}; graph: {}", file.display());
                    Ok(EXIT_FALSIFIED)
                }
            }
        }

        Command::Certify { k, verify: None, file, output } => {
            let Some(k) = k else {
                let _ = writeln!(ctx.err, "error: certify needs --k, or --verify CERTFILE");
                return Ok(EXIT_USAGE);
            };
            let g = read_graph_file(&file)?;
            match build_certificate(&g, k) {
                Ok(cert) => {
                    ctx.emit(output.as_deref(), &certificate_to_json(&cert))?;
                    Ok(EXIT_OK)
                }
                Err(bipturan_core::Error::LemmaFalsified { lemma, k, graph }) => {
                    ctx.counterexample(&graph, &format!("{lemma} lemma falsified at k = {k}"))
                }
                Err(e @ bipturan_core::Error::BaseCaseViolated { .. }) => ctx.counterexample(&g, &e.to_string()),
                Err(e) => Err(e.into()),
            }
        }

        Command::LemmaCheck { lemma, k, d, file } => {
            let g = read_graph_file(&file)?;
            let report = match lemma {
                LemmaArg::Endpoint => check_endpoint_lemma(&g, k)?,
                LemmaArg::Degree => {
                    let Some(d) = d else {
                        let _ = writeln!(ctx.err, "error: the degree lemma needs --d");
                        return Ok(EXIT_USAGE);
                    };
                    check_degree_lemma(&g, k, d)?
                }
                LemmaArg::RemovableVertex => check_removable_vertex_lemma(&g, k)?,
                LemmaArg::RemovablePair => check_removable_pair_lemma(&g, k)?,
            };
            ctx.emit(None, &to_json(&report))?;
            if report.hypotheses_met && !report.conclusion_holds {
                return ctx.counterexample(&g, &format!("{} lemma falsified at k = {k}", report.lemma));
            }
            Ok(EXIT_OK)
        }

        Command::Table { theorem: TheoremArg::Paths, max_a, max_b, k_range: (k_lo, k_hi), csv, run } => {
            let spec = TableSpec { theorem: Theorem::Paths, max_a, max_b, k_lo, k_hi };
            let rows = driver::solve_table(&spec, &run.options())?;
            match csv.as_deref() {
                Some(p) if p == Path::new("-") => ctx.emit(None, &table::to_csv(&rows)?)?,
                Some(p) => {
                    ctx.emit(Some(p), &table::to_csv(&rows)?)?;
                    ctx.emit(None, &table::render(&rows, ctx.color))?;
                }
                None => ctx.emit(None, &table::render(&rows, ctx.color))?,
            }
            let bad: Vec<_> = rows.iter().filter(|r| !r.matches).collect();
            for r in &bad {
                let got = r.searched.map_or("none".to_string(), |v| v.to_string());
                let _ = writeln!(ctx.err, "mismatch: {}x{} {}: searched {got}, formula {}", r.a, r.b, r.pattern, r.formula);
            }
            Ok(if bad.is_empty() { EXIT_OK } else { EXIT_FALSIFIED })
        }
    }
}

fn join(vs: &[VertexRef]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("bipturan").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn counterexample_is_saved() {
        let dir = tempfile::tempdir().unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut ctx = Ctx { out: &mut out, err: &mut err, color: false, counterexample_dir: dir.path().into() };
        let g = BipartiteGraph::from_edges(2, 2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(ctx.counterexample(&g, "made up").unwrap(), EXIT_FALSIFIED);
        let saved: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
        assert_eq!(saved.len(), 1);
        assert_eq!(crate::format::read_graph_file(&saved[0]).unwrap(), g);
        assert!(String::from_utf8(err).unwrap().starts_with("made up; counterexample written to "));
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..4"), Ok((3, 4)));
        assert_eq!(parse_range("3..=5"), Ok((3, 5)));
        assert!(parse_range("3-4").is_err());
    }

    #[test]
    fn search_prints_value() {
        let (code, out, _) = run_str(&["search", "--a", "4", "--b", "4", "--forbid", "path:6"]);
        assert_eq!((code, out.as_str()), (0, "7\n"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["search", "--a", "4"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["search", "--a", "4", "--b", "4", "--forbid", "cycle:4"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["construct", "path-extremal", "--a", "2", "--b", "4", "--k", "3"]).0, EXIT_USAGE);
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("Usage"));
    }

    #[test]
    fn construct_to_stdout() {
        let (code, out, _) = run_str(&["construct", "path-extremal", "--a", "3", "--b", "4", "--k", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, write_graph(&path_extremal(3, 4, 3).unwrap()));
    }
}
