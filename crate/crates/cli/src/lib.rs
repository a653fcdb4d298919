//! Argument handling and dispatch for the `curvechain` binary.
//!
//! [`run`] never prints; it returns the exit code and the text that `main`
//! writes out, which keeps the binary a thin shell and makes it testable.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use curvechain::bounds::{
    max_chained_triple, max_clique_joined_to_path, max_cyclic_chain, max_cyclic_join_k1, max_linear_chain,
    max_y_quadruple, PathMode, TripleVariant,
};
use curvechain::decide::{
    braid_virtual_bound, decide_braid_virtual, decide_pure_braid, decide_raag_cycle, decide_raag_cycle_times_z,
    plan_route, raag_cycle_threshold, raag_cycle_z_threshold, consistency_audit, Answer,
};
use curvechain::engine::parse_ncs;
use curvechain::witness::{
    build_cyclic_join_k1_witness_with_budget, build_cyclic_witness_with_budget, verify_chained_triple,
    verify_cyclic_chain, verify_cyclic_join_k1, verify_linear_chain, verify_y_quadruple,
};
use curvechain::{Bound, BoundKind, Error, Surface};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_NO_CLAIM: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable capping search nodes for witness construction.
pub const BUDGET_VAR: &str = "CURVECHAIN_SEARCH_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "curvechain", version, about = "Braid and cyclic RAAG embeddings in mapping class groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
pub struct SurfaceArgs {
    /// Genus.
    #[arg(long)]
    pub g: u32,
    /// Punctures.
    #[arg(long)]
    pub p: u32,
    /// Boundary components.
    #[arg(long, default_value_t = 0)]
    pub b: u32,
}

impl SurfaceArgs {
    fn surface(self) -> Surface {
        Surface::new(self.g, self.p, self.b)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Embeddability verdict.
    Decide {
        #[arg(value_enum)]
        question: Question,
        /// Braid index, for `braid` and `pure-braid`.
        #[arg(long)]
        n: Option<u64>,
        /// Cycle length, for `raag-cycle` and `raag-cycle-z`.
        #[arg(long)]
        m: Option<u64>,
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        json: bool,
    },
    /// Maximal chain lengths.
    Bound {
        #[arg(value_enum)]
        what: BoundWhat,
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Variant for `pathjoin`.
        #[arg(long, value_enum, default_value_t = PathModeArg::K2)]
        mode: PathModeArg,
        #[arg(long)]
        json: bool,
    },
    /// Extension route realizing a braid embedding.
    Route {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        json: bool,
    },
    /// Build a certified witness system and write it as an `ncs` file.
    Witness {
        #[arg(value_enum)]
        what: WitnessWhat,
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Certify the system in an `ncs` file.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: VerifyKind,
        #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
        variant: VariantArg,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check the theorem tables over a grid.
    Audit {
        #[arg(long)]
        gmax: u32,
        #[arg(long)]
        pmax: u32,
        #[arg(long, default_value_t = 0)]
        bmax: u32,
        #[arg(long)]
        json: bool,
    },
    /// Print a threshold table.
    Table {
        #[arg(value_enum)]
        which: TableWhich,
        #[arg(long)]
        gmax: u32,
        #[arg(long)]
        pmax: u32,
        /// Largest boundary count, for `thm1.2`.
        #[arg(long, default_value_t = 4)]
        bmax: u32,
        #[arg(long, conflicts_with = "json")]
        tsv: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Question {
    Braid,
    PureBraid,
    RaagCycle,
    RaagCycleZ,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum BoundWhat {
    Cyclic,
    CyclicK1,
    Linear,
    Triple,
    TripleStar,
    TripleRec,
    Yquad,
    Pathjoin,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum PathModeArg {
    K2,
    #[value(name = "2gp1")]
    Path2gp1,
    #[value(name = "2gp")]
    Path2gp,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum WitnessWhat {
    Cyclic,
    CyclicK1,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum VerifyKind {
    Cyclic,
    CyclicK1,
    Linear,
    Triple,
    Yquad,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum VariantArg {
    Plain,
    Star,
    Recursive,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum TableWhich {
    #[value(name = "thm1.1", alias = "main_1")]
    Braid,
    #[value(name = "thm1.2", alias = "main_2")]
    BraidBoundary,
    #[value(name = "thm4.4", alias = "cyc_mcg")]
    Cycle,
    #[value(name = "thm4.5", alias = "cyc_plus_z_mcg")]
    CycleZ,
}

/// Exit code and standard output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn new(code: i32, stdout: impl Into<String>) -> Self {
        let mut stdout = stdout.into();
        if !stdout.ends_with('\n') {
            stdout.push('\n');
        }
        Outcome { code, stdout }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("records serialize")
}

fn answer_code(a: Answer) -> i32 {
    match a {
        Answer::Yes => EXIT_YES,
        Answer::No => EXIT_NO,
        Answer::NoClaim => EXIT_NO_CLAIM,
    }
}

fn bound_code(b: &Bound) -> i32 {
    match b.kind {
        BoundKind::OutOfPaperRange => EXIT_NO_CLAIM,
        _ => EXIT_YES,
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::BadParameter(_) => EXIT_USAGE,
        Error::NoRoute(_) => EXIT_NO,
        _ => EXIT_NO_CLAIM,
    }
}

fn usage(msg: impl Into<String>) -> Outcome {
    Outcome::new(EXIT_USAGE, format!("usage error: {}", msg.into()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(cli.command),
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_YES,
                _ => EXIT_USAGE,
            };
            Outcome::new(code, e.render().to_string())
        }
    }
}

fn budget() -> Result<Option<u64>, Outcome> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| usage(format!("{BUDGET_VAR} must be a node count, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

pub fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Decide { question, n, m, surface, json: js } => decide(question, n, m, surface.surface(), js),
        Command::Bound { what, surface, mode, json: js } => {
            let b = bound(what, surface.surface(), mode);
            let text = if js { json(&b) } else { b.to_string() };
            Outcome::new(bound_code(&b), text)
        }
        Command::Route { n, surface, json: js } => match plan_route(n, surface.surface()) {
            Ok(r) => Outcome::new(EXIT_YES, if js { json(&r) } else { r.to_text() }),
            Err(e) => Outcome::new(error_code(&e), e.to_string()),
        },
        Command::Witness { what, surface, m, out, json: js } => witness(what, surface.surface(), m, out, js),
        Command::Verify { file, kind, variant, json: js } => verify(file, kind, variant, js),
        Command::Audit { gmax, pmax, bmax, json: js } => {
            let r = consistency_audit(gmax, pmax, bmax);
            let code = if r.is_clean() { EXIT_YES } else { EXIT_NO };
            if js {
                return Outcome::new(code, json(&r));
            }
            let mut s = format!(
                "{} cells, {} routes checked, {} mismatches, {} whitelisted\n",
                r.cells,
                r.routes_checked,
                r.mismatches.len(),
                r.whitelisted.len()
            );
            for e in &r.mismatches {
                s.push_str(&format!("mismatch {} rule {}: {}\n", e.surface, e.rule, e.detail));
            }
            Outcome::new(code, s)
        }
        Command::Table { which, gmax, pmax, bmax, tsv, json: js } => {
            let rows = table(which, gmax, pmax, bmax);
            Outcome::new(EXIT_YES, render_table(&rows, tsv, js))
        }
    }
}

fn decide(q: Question, n: Option<u64>, m: Option<u64>, s: Surface, js: bool) -> Outcome {
    let verdict = match q {
        Question::Braid | Question::PureBraid => {
            let Some(n) = n else {
                return usage("`decide braid` and `decide pure-braid` need --n");
            };
            if m.is_some() {
                return usage("--m belongs to the raag questions; use --n");
            }
            Ok(match q {
                Question::Braid => decide_braid_virtual(n, s),
                _ => decide_pure_braid(n, s),
            })
        }
        Question::RaagCycle | Question::RaagCycleZ => {
            let Some(m) = m else {
                return usage("`decide raag-cycle` and `decide raag-cycle-z` need --m");
            };
            if n.is_some() {
                return usage("--n belongs to the braid questions; use --m");
            }
            match q {
                Question::RaagCycle => decide_raag_cycle(m, s),
                _ => decide_raag_cycle_times_z(m, s),
            }
        }
    };
    match verdict {
        Ok(v) => Outcome::new(answer_code(v.answer), if js { json(&v) } else { v.to_string() }),
        Err(e) => Outcome::new(error_code(&e), e.to_string()),
    }
}

pub fn bound(what: BoundWhat, s: Surface, mode: PathModeArg) -> Bound {
    match what {
        BoundWhat::Cyclic => max_cyclic_chain(s),
        BoundWhat::CyclicK1 => max_cyclic_join_k1(s),
        BoundWhat::Linear => max_linear_chain(s),
        BoundWhat::Triple => max_chained_triple(s, TripleVariant::Plain),
        BoundWhat::TripleStar => max_chained_triple(s, TripleVariant::Star),
        BoundWhat::TripleRec => max_chained_triple(s, TripleVariant::RecursiveEnd),
        BoundWhat::Yquad => max_y_quadruple(s),
        BoundWhat::Pathjoin => max_clique_joined_to_path(
            s,
            match mode {
                PathModeArg::K2 => PathMode::K2Fixed,
                PathModeArg::Path2gp1 => PathMode::Path2gp1,
                PathModeArg::Path2gp => PathMode::Path2gp,
            },
        ),
    }
}

fn witness(what: WitnessWhat, s: Surface, m: u64, out: PathBuf, js: bool) -> Outcome {
    let budget = match budget() {
        Ok(b) => b,
        Err(o) => return o,
    };
    let (built, limit) = match what {
        WitnessWhat::Cyclic => (build_cyclic_witness_with_budget(s, m, budget), max_cyclic_chain(s)),
        WitnessWhat::CyclicK1 => (build_cyclic_join_k1_witness_with_budget(s, m, budget), max_cyclic_join_k1(s)),
    };
    let w = match built {
        Ok(w) => w,
        Err(e) => {
            // beyond a stated bound is a refutation; anything else is no claim
            let code = match limit.value {
                Some(v) if m > v => EXIT_NO,
                _ => error_code(&e),
            };
            return Outcome::new(code, e.to_string());
        }
    };
    let cert = match w.certify() {
        Ok(c) => c,
        Err(e) => return Outcome::new(EXIT_NO_CLAIM, e.to_string()),
    };
    if let Err(e) = fs::write(&out, w.to_ncs()) {
        return usage(format!("cannot write {}: {e}", out.display()));
    }
    let text = if js { json(&cert) } else { format!("{} -> {}", cert.summary(), out.display()) };
    Outcome::new(if cert.certified() { EXIT_YES } else { EXIT_NO }, text)
}

fn verify(file: PathBuf, kind: VerifyKind, variant: VariantArg, js: bool) -> Outcome {
    let text = match fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => return usage(format!("cannot read {}: {e}", file.display())),
    };
    let parsed = match parse_ncs(&text) {
        Ok(f) => f,
        Err(e) => return Outcome::new(EXIT_NO_CLAIM, e.to_string()),
    };
    let variant = match variant {
        VariantArg::Plain => TripleVariant::Plain,
        VariantArg::Star => TripleVariant::Star,
        VariantArg::Recursive => TripleVariant::RecursiveEnd,
    };
    let cert = match kind {
        VerifyKind::Cyclic => verify_cyclic_chain(&parsed),
        VerifyKind::CyclicK1 => verify_cyclic_join_k1(&parsed),
        VerifyKind::Linear => verify_linear_chain(&parsed),
        VerifyKind::Triple => verify_chained_triple(&parsed, variant),
        VerifyKind::Yquad => verify_y_quadruple(&parsed),
    };
    match cert {
        Ok(c) => {
            let code = if c.certified() { EXIT_YES } else { EXIT_NO };
            Outcome::new(code, if js { json(&c) } else { format!("{}\n{}", c.summary(), c.to_text()) })
        }
        Err(e) => Outcome::new(EXIT_NO_CLAIM, e.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub surface: Surface,
    pub threshold: Option<u64>,
    pub citation: String,
}

/// Rows of a threshold table in `(g, p, b)` order.
pub fn table(which: TableWhich, gmax: u32, pmax: u32, bmax: u32) -> Vec<TableRow> {
    let mut rows = Vec::new();
    let bs: Vec<u32> = match which {
        TableWhich::BraidBoundary => (1..=bmax).collect(),
        _ => vec![0],
    };
    for g in 0..=gmax {
        for p in 0..=pmax {
            for &b in &bs {
                let s = Surface::new(g, p, b);
                let (threshold, citation) = match which {
                    TableWhich::Braid | TableWhich::BraidBoundary => {
                        let t = braid_virtual_bound(s);
                        let thm = if b == 0 { "Thm main_1" } else { "Thm main_2" };
                        (Some(t.value), format!("{thm} {}", t.row))
                    }
                    TableWhich::Cycle => match raag_cycle_threshold(s) {
                        Ok((t, row)) => (Some(t), format!("Thm cyc_mcg {row}")),
                        Err(e) => (None, e.to_string()),
                    },
                    TableWhich::CycleZ => match raag_cycle_z_threshold(s) {
                        Ok(Some((t, row))) => (Some(t), format!("Thm cyc_plus_z_mcg {row}")),
                        Ok(None) => (None, "Thm cyc_plus_z_mcg has no row for this surface".into()),
                        Err(e) => (None, e.to_string()),
                    },
                };
                rows.push(TableRow { surface: s, threshold, citation });
            }
        }
    }
    rows
}

fn render_table(rows: &[TableRow], tsv: bool, js: bool) -> String {
    if js {
        return json(&rows);
    }
    let cell = |t: Option<u64>| t.map_or("-".to_string(), |v| v.to_string());
    let mut s = String::new();
    if tsv {
        s.push_str("g\tp\tb\tthreshold\tcitation\n");
        for r in rows {
            let x = r.surface;
            s.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", x.genus, x.punctures, x.boundary, cell(r.threshold), r.citation));
        }
    } else {
        for r in rows {
            s.push_str(&format!("{:<10} {:>4}  {}\n", r.surface.to_string(), cell(r.threshold), r.citation));
        }
    }
    s
}
