//! Command-line front end.
//!
//! Exit codes: 0 when nothing was found, 1 for an obstruction or a conjecture
//! violation, 2 for usage and input errors.

pub mod checkpoint;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dold::{dold_image, r_zero, xt_basis};
use crate::gf2poly::{format_xt, BitVec};
use crate::obstruct::external::top_class_note;
use crate::obstruct::{
    conjecture_holds, cp_verdict, fmt_parts, is_conjecture_k, numbers_check_opts, quotient_dim_opts, rank2_reduction,
    rp_verdict, CharNumbers, Codim1Class, MapClass, Outcome, Verdict, VerdictSet, Witness,
};
use crate::parity2::{binom_parity, binom_parity_int, binom_val2, MAX_ARG};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Fold,
    Cusp,
    Morin,
    TameCorank1,
    Corank1,
}

impl From<ClassArg> for MapClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Fold => MapClass::Fold,
            ClassArg::Cusp => MapClass::Cusp,
            ClassArg::Morin => MapClass::Morin,
            ClassArg::TameCorank1 => MapClass::TameCorank1,
            ClassArg::Corank1 => MapClass::Corank1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "foldobs", version, about = "Mod-2 obstructions to fold, Morin and corank-1 maps")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Worker threads for sweeps.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    /// Line-delimited checkpoint file for sweeps.
    #[arg(long, global = true)]
    pub checkpoint: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quotient of im rho_k by the relation image in degree n.
    Dims(DimsArgs),
    /// Codimension -1 fold classification.
    Classify {
        #[arg(long)]
        n: usize,
    },
    /// Verdicts for RP^n into R^target.
    Rp(PairArgs),
    /// Verdicts for CP^n into a stably parallelizable Q^target.
    Cp(PairArgs),
    /// Test a characteristic-number functional against the relations.
    Numbers(NumbersArgs),
    /// Reduced basis of the relation image.
    DoldBasis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Conjecture grid for k = 2^a - 1.
    Sweep(SweepArgs),
    /// Binomial parity and 2-adic valuation.
    Binom {
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
    },
    /// Relations for manifolds with a 2-plane stable tangent bundle.
    Rank2 {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Leave the relation of p = 1 out.
    #[arg(long)]
    pub exclude_r0: bool,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub target: usize,
}

#[derive(Debug, Args)]
pub struct NumbersArgs {
    /// JSON document `{"n": .., "numbers": [{"partition": [..], "value": 0|1}]}`.
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long = "class", value_enum, default_value = "fold")]
    pub class: ClassArg,
    /// Largest j with w_1 .. w_j assumed zero.
    #[arg(long, default_value_t = 0)]
    pub hyp: usize,
    /// Leave the relation of p = 1 out.
    #[arg(long)]
    pub exclude_r0: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    #[arg(long)]
    pub n_max: usize,
    /// `auto` or a comma-separated list.
    #[arg(long, default_value = "auto")]
    pub k: String,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

/// Run with process stdio.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

/// `{2^a - 1 : a >= 2, 2^a - 1 < n_max, 2^a - 1 <= 1023}`.
pub fn auto_ks(n_max: usize) -> Vec<usize> {
    (2..=10).map(|a| (1usize << a) - 1).filter(|&k| k < n_max).collect()
}

fn parse_ks(list: &str, n_max: usize) -> Result<Vec<usize>, Usage> {
    if list == "auto" {
        return Ok(auto_ks(n_max));
    }
    let mut ks = Vec::new();
    for part in list.split(',') {
        let k: usize = part.trim().parse().map_err(|_| Usage(format!("bad k value {part:?}")))?;
        if !is_conjecture_k(k) {
            return Err(Usage(format!("k = {k} is not of the form 2^a - 1 with a >= 2")));
        }
        ks.push(k);
    }
    ks.sort_unstable();
    ks.dedup();
    Ok(ks)
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Usage> {
    if cli.jobs == 0 {
        return Err(Usage("--jobs must be at least 1".into()));
    }
    if cli.checkpoint.is_some() && !matches!(cli.command, Command::Sweep(_)) {
        return Err(Usage("--checkpoint only applies to sweep".into()));
    }
    let fmt = cli.format;
    match &cli.command {
        Command::Dims(a) => {
            let r = quotient_dim_opts(a.n, a.k, !a.exclude_r0)?;
            let view = DimsView::from(&r, !a.exclude_r0);
            emit(out, fmt, &view, &[view.csv_row()], DimsView::CSV_HEADER, || view.text())?;
            Ok(EXIT_OK)
        }
        Command::Classify { n } => {
            let r = quotient_dim_opts(*n, 1, true)?;
            let class = Codim1Class::from_shape(*n);
            let view = ClassifyView {
                n: *n,
                class,
                quotient_dim: r.quotient_dim,
                complement: r.complement_strings(),
                consistent: class.expected_dim() == r.quotient_dim,
                notes: top_class_note(*n).into_iter().collect(),
            };
            let row = vec![
                n.to_string(),
                format!("{class:?}"),
                r.quotient_dim.to_string(),
                view.complement.join(" "),
                view.consistent.to_string(),
            ];
            let text = || {
                let mut s = format!("n = {n}: {class:?}, quotient dim {}", r.quotient_dim);
                if !view.complement.is_empty() {
                    s += &format!(", complement {{{}}}", view.complement.join(", "));
                }
                if !view.consistent {
                    s += " (MISMATCH with the shape of n)";
                }
                for note in &view.notes {
                    s += &format!("\n  {note}");
                }
                s
            };
            emit(out, fmt, &view, &[row], &["n", "class", "quotient_dim", "complement", "consistent"], text)?;
            Ok(if view.consistent { EXIT_OK } else { EXIT_FOUND })
        }
        Command::Rp(a) => verdict_set(out, fmt, rp_verdict(a.n, a.target)?),
        Command::Cp(a) => verdict_set(out, fmt, cp_verdict(a.n, a.target)?),
        Command::Numbers(a) => {
            let text = std::fs::read_to_string(&a.file).map_err(|e| Usage(format!("{}: {e}", a.file.display())))?;
            let cn: CharNumbers = serde_json::from_str(&text).map_err(|e| Usage(format!("{}: {e}", a.file.display())))?;
            let v = numbers_check_opts(&cn, a.k, a.class.into(), a.hyp, !a.exclude_r0)?;
            let residual: Vec<String> = v.residual.iter().map(|r| format!("{}={}", r.monomial, r.value)).collect();
            let mut row = verdict_row(&format!("n={}", v.n), &format!("k={}", v.k), &v.verdict);
            row.push(residual.join(" "));
            let mut header = VERDICT_HEADER.to_vec();
            header.push("residual");
            let t = || {
                let mut s = verdict_line(&v.verdict);
                s += &format!("\nrelations rank {} of {}", v.relations_rank, v.basis_size);
                if !residual.is_empty() {
                    s += &format!("\nresidual: {}", residual.join(", "));
                }
                for note in &v.verdict.notes {
                    s += &format!("\nnote: {note}");
                }
                s
            };
            emit(out, fmt, &v, &[row], &header, t)?;
            Ok(if v.verdict.is_obstructed() { EXIT_FOUND } else { EXIT_OK })
        }
        Command::DoldBasis { n, k } => {
            let img = dold_image(*n, *k)?;
            let basis = xt_basis(*n, *k);
            let poly = |row: &BitVec| -> String {
                let t: Vec<String> = row.ones().map(|c| format_xt(basis[c].0, basis[c].1)).collect();
                if t.is_empty() {
                    "0".into()
                } else {
                    t.join(" + ")
                }
            };
            let r0 = if *k == 1 { Some(poly(&r_zero(*n)?)) } else { None };
            let view = BasisView {
                n: *n,
                k: *k,
                basis: basis.iter().map(|&(i, j)| format_xt(i, j)).collect(),
                rows: img.span.sorted_rows().iter().map(poly).collect(),
                rank: img.span.rank(),
                rank_without_r0: img.rank_excluding_r0(),
                r0,
            };
            let rows: Vec<Vec<String>> =
                view.rows.iter().enumerate().map(|(i, r)| vec![n.to_string(), k.to_string(), i.to_string(), r.clone()]).collect();
            let t = || {
                let mut s = format!("basis: {}\nrank {} (without R0: {})", view.basis.join(", "), view.rank, view.rank_without_r0);
                for r in &view.rows {
                    s += &format!("\n  {r}");
                }
                s
            };
            emit(out, fmt, &view, &rows, &["n", "k", "row", "polynomial"], t)?;
            Ok(EXIT_OK)
        }
        Command::Sweep(a) => {
            let ks = parse_ks(&a.k, a.n_max)?;
            let points = sweep::grid(a.n_min, a.n_max, &ks);
            let mut warn = |m: String| {
                let _ = writeln!(err, "warning: {m}");
            };
            let (recs, computed) = sweep::run_sweep(&points, cli.jobs, cli.checkpoint.as_deref(), &mut warn)
                .map_err(|e| Usage(e.to_string()))?;
            let rows: Vec<SweepRow> = recs
                .iter()
                .map(|r| SweepRow {
                    n: r.n,
                    k: r.k,
                    quotient_dim: r.quotient_dim,
                    complement: r.complement.iter().map(|&(i, j)| format_xt(i, j)).collect(),
                    satisfied: conjecture_holds(r.n, r.k, r.quotient_dim),
                })
                .collect();
            let violations = rows.iter().filter(|r| !r.satisfied).count();
            let _ = writeln!(err, "sweep: {} points, {} computed, {} from checkpoint", rows.len(), computed, rows.len() - computed);
            let view = SweepView { n_min: a.n_min.max(2), n_max: a.n_max, ks: ks.clone(), points: rows.len(), violations, records: rows };
            let csv_rows: Vec<Vec<String>> = view
                .records
                .iter()
                .map(|r| {
                    vec![r.n.to_string(), r.k.to_string(), r.quotient_dim.to_string(), r.complement.join(" "), r.satisfied.to_string()]
                })
                .collect();
            let t = || {
                let mut s = format!("{} points, {} violations", view.points, view.violations);
                for r in view.records.iter().filter(|r| r.quotient_dim > 0 || !r.satisfied) {
                    s += &format!(
                        "\n  n = {:4}, k = {:4}: dim {} {{{}}}{}",
                        r.n,
                        r.k,
                        r.quotient_dim,
                        r.complement.join(", "),
                        if r.satisfied { "" } else { "  VIOLATION" }
                    );
                }
                s
            };
            emit(out, fmt, &view, &csv_rows, &["n", "k", "quotient_dim", "complement", "satisfied"], t)?;
            Ok(if violations > 0 { EXIT_FOUND } else { EXIT_OK })
        }
        Command::Binom { b, a } => {
            let view = binom_view(*b, *a)?;
            let row = vec![
                b.to_string(),
                a.to_string(),
                view.parity.to_string(),
                view.val2.map(|v| v.to_string()).unwrap_or_default(),
            ];
            let t = || match view.val2 {
                Some(v) => format!("C({b}, {a}) is {} with 2-adic valuation {v}", if view.parity == 1 { "odd" } else { "even" }),
                None => format!("C({b}, {a}) is {}", if view.parity == 1 { "odd" } else { "even" }),
            };
            emit(out, fmt, &view, &[row], &["b", "a", "parity", "val2"], t)?;
            Ok(EXIT_OK)
        }
        Command::Rank2 { n } => {
            let r = rank2_reduction(*n)?;
            let ok = r.quotient_dim <= 1 && r.leading_ones;
            let row = vec![n.to_string(), r.rank.to_string(), r.quotient_dim.to_string(), r.complement.join(" ")];
            let t = || {
                format!(
                    "n = {n}: rank {} on {} monomials, quotient dim {}, complement {{{}}}",
                    r.rank,
                    r.basis.len(),
                    r.quotient_dim,
                    r.complement.join(", ")
                )
            };
            emit(out, fmt, &r, &[row], &["n", "rank", "quotient_dim", "complement"], t)?;
            Ok(if ok { EXIT_OK } else { EXIT_FOUND })
        }
    }
}

fn binom_view(b: i64, a: i64) -> Result<BinomView, Usage> {
    if b.unsigned_abs() >= MAX_ARG || a.unsigned_abs() >= MAX_ARG {
        return Err(Usage(format!("arguments must lie below 2^20 in absolute value, got ({b}, {a})")));
    }
    if b >= 0 {
        let parity = binom_parity(b as u64, a);
        let val2 = if (0..=b).contains(&a) { Some(binom_val2(b as u64, a as u64)?) } else { None };
        Ok(BinomView { b, a, parity, val2 })
    } else {
        if a < 0 {
            return Ok(BinomView { b, a, parity: 0, val2: None });
        }
        Ok(BinomView { b, a, parity: binom_parity_int(b, a as u64), val2: None })
    }
}

fn emit<T: Serialize>(
    out: &mut dyn Write,
    fmt: Format,
    value: &T,
    rows: &[Vec<String>],
    header: &[&str],
    text: impl FnOnce() -> String,
) -> Result<(), Usage> {
    match fmt {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, value)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(header)?;
            for r in rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
        Format::Text => writeln!(out, "{}", text())?,
    }
    Ok(())
}

const VERDICT_HEADER: [&str; 7] = ["source", "target", "class", "outcome", "rule", "witness", "hypotheses"];

fn outcome_str(o: Outcome) -> &'static str {
    match o {
        Outcome::Obstructed => "obstructed",
        Outcome::NoObstruction => "no-obstruction",
        Outcome::Exists => "exists",
        Outcome::Inconclusive => "inconclusive",
    }
}

fn witness_str(w: &Witness) -> String {
    match w {
        Witness::Relation { lhs, rhs } => format!("{} != {} ({} is zero)", fmt_parts(lhs), fmt_parts(rhs), fmt_parts(rhs)),
        Witness::NonzeroClass { degree } => format!("w{degree} != 0"),
        Witness::Pontryagin { i, coefficient } => format!("p{i} = {coefficient} y != 0"),
        Witness::Gamma { kappa, k } => format!("k = {k} <= kappa - 2 = {}", kappa - 2),
        Witness::ClosedForm { d, c } => format!("n = 2^{d} + {c}"),
        Witness::Functional { relation, source } => format!("value 1 on {relation} [{source}]"),
    }
}

fn hyps_str(v: &Verdict) -> String {
    v.hypotheses.iter().map(|h| format!("{}: {}", h.name, if h.holds { "yes" } else { "no" })).collect::<Vec<_>>().join("; ")
}

fn verdict_row(source: &str, target: &str, v: &Verdict) -> Vec<String> {
    vec![
        source.to_string(),
        target.to_string(),
        v.map_class.to_string(),
        outcome_str(v.outcome).to_string(),
        v.rule.clone(),
        v.witness.as_ref().map(witness_str).unwrap_or_default(),
        hyps_str(v),
    ]
}

fn verdict_line(v: &Verdict) -> String {
    let mut s = format!("{:<13} {:<15} [{}]", v.map_class.to_string(), outcome_str(v.outcome), v.rule);
    if let Some(w) = &v.witness {
        s += &format!("  {}", witness_str(w));
    }
    let failed: Vec<&str> = v.hypotheses.iter().filter(|h| !h.holds).map(|h| h.name.as_str()).collect();
    if !failed.is_empty() {
        s += &format!("  (fails: {})", failed.join(", "));
    }
    s
}

fn verdict_set(out: &mut dyn Write, fmt: Format, vs: VerdictSet) -> Result<i32, Usage> {
    let rows: Vec<Vec<String>> = vs.verdicts.iter().map(|v| verdict_row(&vs.source, &vs.target, v)).collect();
    let t = || {
        let mut s = format!("{} -> {} (k = {})", vs.source, vs.target, vs.k);
        if let Some(l) = vs.min_threshold {
            s += &format!(", minimal threshold {l}");
        }
        for v in &vs.verdicts {
            s += &format!("\n  {}", verdict_line(v));
        }
        s
    };
    emit(out, fmt, &vs, &rows, &VERDICT_HEADER, t)?;
    Ok(if vs.any_obstructed() { EXIT_FOUND } else { EXIT_OK })
}

#[derive(Serialize)]
struct DimsView {
    n: usize,
    k: usize,
    include_r0: bool,
    dim_im_rho: usize,
    dim_relations: usize,
    quotient_dim: usize,
    quotient_dim_without_r0: usize,
    complement: Vec<String>,
}

impl DimsView {
    const CSV_HEADER: &'static [&'static str] =
        &["n", "k", "include_r0", "dim_im_rho", "dim_relations", "quotient_dim", "quotient_dim_without_r0", "complement"];

    fn from(r: &crate::obstruct::QuotientReport, include_r0: bool) -> Self {
        DimsView {
            n: r.n,
            k: r.k,
            include_r0,
            dim_im_rho: r.dim_im_rho,
            dim_relations: r.dim_relations,
            quotient_dim: r.quotient_dim,
            quotient_dim_without_r0: r.quotient_dim_without_r0,
            complement: r.complement_strings(),
        }
    }

    fn csv_row(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.k.to_string(),
            self.include_r0.to_string(),
            self.dim_im_rho.to_string(),
            self.dim_relations.to_string(),
            self.quotient_dim.to_string(),
            self.quotient_dim_without_r0.to_string(),
            self.complement.join(" "),
        ]
    }

    fn text(&self) -> String {
        let mut s = format!(
            "n = {}, k = {}: dim im rho = {}, relations = {}, quotient = {}",
            self.n, self.k, self.dim_im_rho, self.dim_relations, self.quotient_dim
        );
        if !self.complement.is_empty() {
            s += &format!(", complement {{{}}}", self.complement.join(", "));
        }
        if self.include_r0 && self.quotient_dim_without_r0 != self.quotient_dim {
            s += &format!(" (without R0: {})", self.quotient_dim_without_r0);
        }
        s
    }
}

#[derive(Serialize)]
struct ClassifyView {
    n: usize,
    class: Codim1Class,
    quotient_dim: usize,
    complement: Vec<String>,
    consistent: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

#[derive(Serialize)]
struct BasisView {
    n: usize,
    k: usize,
    basis: Vec<String>,
    rows: Vec<String>,
    rank: usize,
    rank_without_r0: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    r0: Option<String>,
}

#[derive(Serialize)]
struct SweepRow {
    n: usize,
    k: usize,
    quotient_dim: usize,
    complement: Vec<String>,
    satisfied: bool,
}

#[derive(Serialize)]
struct SweepView {
    n_min: usize,
    n_max: usize,
    ks: Vec<usize>,
    points: usize,
    violations: usize,
    records: Vec<SweepRow>,
}

#[derive(Serialize)]
struct BinomView {
    b: i64,
    a: i64,
    parity: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    val2: Option<u32>,
}
