//! Command-line front end. Exit codes: 0 success, 1 a valid negative answer,
//! 2 bad input or usage.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::census;
use crate::filling::FillingPermutation;
use crate::io::{read_input, FillingRecord};
use crate::perm::format_cycle;
use crate::surgery::{self, Decomposition};
use crate::twist;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "fillperm",
    version,
    about = "Filling permutations of curve pairs on surfaces"
)]
pub struct Cli {
    /// Output rendering
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Record,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the alternation property and the defining equation
    Validate { file: PathBuf },
    /// Genus, regions, vertices, green vertices and piece type
    Info { file: PathBuf },
    /// Glue a piece into a minimal host at the vertex of `i`
    Assemble {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        piece: PathBuf,
        #[arg(long)]
        i: usize,
        /// Inferred from the vertex of `i` when omitted
        #[arg(long)]
        j: Option<usize>,
    },
    /// List connected-sum decompositions of a minimal permutation
    Decompose {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Cut out the piece described by the given anchors
    Extract {
        file: PathBuf,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        y: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        k: usize,
    },
    /// Disassemble and reassemble along every decomposition
    Roundtrip {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Search the twist group for a conjugating relabeling
    Equivalent { first: PathBuf, second: PathBuf },
    /// Enumerate all solutions for `n` and group them into orbits
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        single_cycle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn negative(stdout: String) -> Self {
        CommandResult {
            exit_code: EXIT_NEGATIVE,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(message: String) -> Self {
        CommandResult {
            exit_code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn dispatch<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                CommandResult {
                    exit_code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandResult::ok(text)
            }
        }
    }
}

pub fn run(cli: Cli) -> CommandResult {
    match execute(&cli) {
        Ok(result) => result,
        Err(e) => CommandResult::input_error(e.to_string()),
    }
}

fn load(path: &std::path::Path) -> Result<FillingPermutation, Error> {
    Ok(read_input(path)?.validate()?)
}

fn record<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("records serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct DecompositionRecord {
    k: usize,
    l: usize,
    x: usize,
    a: usize,
    y: usize,
    b: usize,
    #[serde(rename = "type")]
    quad: [usize; 4],
    genus_one_piece: bool,
}

impl From<&Decomposition> for DecompositionRecord {
    fn from(d: &Decomposition) -> Self {
        DecompositionRecord {
            k: d.k,
            l: d.l,
            x: d.x,
            a: d.a,
            y: d.y,
            b: d.b,
            quad: d.quad,
            genus_one_piece: d.is_genus_one_piece(),
        }
    }
}

fn describe(d: &Decomposition) -> String {
    let mut s = format!(
        "k={} l={} x={} a={} y={} b={} type={}",
        d.k,
        d.l,
        d.x,
        d.a,
        d.y,
        d.b,
        format_cycle(&d.quad)
    );
    if d.is_genus_one_piece() {
        s.push_str(" [genus-one piece]");
    }
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn execute(cli: &Cli) -> Result<CommandResult, Error> {
    let text = cli.format == Format::Text;
    match &cli.command {
        Command::Validate { file } => {
            let input = read_input(file)?;
            match input.validate() {
                Ok(fp) => {
                    let (n, c, g) = (fp.n(), fp.region_count(), fp.genus());
                    Ok(CommandResult::ok(if text {
                        format!("valid, n={n}, c={c}, genus={g}\n")
                    } else {
                        record(&json!({"valid": true, "n": n, "c": c, "genus": g}))
                    }))
                }
                Err(e) => Ok(CommandResult::negative(if text {
                    format!("invalid: {e}\n")
                } else {
                    record(&json!({"valid": false, "error": e.to_string()}))
                })),
            }
        }
        Command::Info { file } => {
            let fp = load(file)?;
            let info = fp.surface_info();
            let k = (fp.n() >= 4 && fp.n() % 2 == 0).then(|| (fp.n() - 2) / 2);
            let piece = k.filter(|&k| fp.is_z_piece(k));
            let ztype = piece.and_then(|_| fp.z_type()).map(|t| t.quad());
            if !text {
                return Ok(CommandResult::ok(record(&json!({
                    "surface": info,
                    "minimal": fp.is_minimal(),
                    "green_normalized": fp.is_green_normalized(),
                    "z_piece_k": piece,
                    "type": ztype,
                }))));
            }
            let mut out = format!("n={} c={} genus={}\n", info.n, info.region_count, info.genus);
            let _ = writeln!(out, "minimal: {}", yes_no(fp.is_minimal()));
            out.push_str("regions:\n");
            for r in &info.regions {
                let _ = writeln!(out, "  {} (size {})", format_cycle(r), r.len());
            }
            out.push_str("vertices:\n");
            for v in &info.vertices {
                let _ = writeln!(out, "  {}", format_cycle(v));
            }
            out.push_str("green vertices:\n");
            for v in &info.green_vertices {
                let _ = writeln!(out, "  {}", format_cycle(v));
            }
            let _ = writeln!(out, "green-normalized: {}", yes_no(fp.is_green_normalized()));
            match (piece, ztype) {
                (Some(k), Some(t)) => {
                    let _ = writeln!(out, "piece: k={k} type={}", format_cycle(&t));
                }
                _ => out.push_str("piece: no\n"),
            }
            Ok(CommandResult::ok(out))
        }
        Command::Assemble { host, piece, i, j } => {
            let host = load(host)?;
            let piece = load(piece)?;
            let site = surgery::attachment_site(&host, *i)?;
            if let Some(j) = j {
                if *j != site.j {
                    return Err(surgery::SurgeryError::NotAVertexAnchor {
                        i: *i,
                        reason: format!("paired even edge is {}, not {j}", site.j),
                    }
                    .into());
                }
            }
            let glued = surgery::assemble(&host, &piece, site)?;
            let fp = &glued.result;
            Ok(CommandResult::ok(if text {
                let mut out = format!("{}\n", fp.sigma());
                let _ = writeln!(out, "n={} genus={} i={} j={}", fp.n(), fp.genus(), site.i, site.j);
                if glued.piece_mirrored {
                    out.push_str("piece conjugated by mu to match the site\n");
                }
                out
            } else {
                record(&json!({
                    "result": FillingRecord::from_filling(fp),
                    "genus": fp.genus(),
                    "site": site,
                    "piece_mirrored": glued.piece_mirrored,
                }))
            }))
        }
        Command::Decompose { file, k } => {
            let fp = load(file)?;
            let found: Vec<Decomposition> = surgery::find_decompositions(&fp)?
                .into_iter()
                .filter(|d| k.is_none_or(|k| d.k == k))
                .collect();
            let body = if text {
                if found.is_empty() {
                    "no decomposition\n".to_string()
                } else {
                    found.iter().map(|d| describe(d) + "\n").collect()
                }
            } else {
                let recs: Vec<DecompositionRecord> = found.iter().map(Into::into).collect();
                record(&recs)
            };
            Ok(if found.is_empty() {
                CommandResult::negative(body)
            } else {
                CommandResult::ok(body)
            })
        }
        Command::Extract { file, x, a, y, b, k } => {
            let fp = load(file)?;
            let d = Decomposition::from_anchors(&fp, *k, [*x, *a, *y, *b])?;
            let ext = surgery::extract(&fp, &d)?;
            let parts = surgery::disassemble(&fp, &d)?;
            if !text {
                return Ok(CommandResult::ok(record(&json!({
                    "decomposition": DecompositionRecord::from(&d),
                    "extraction": ext,
                    "piece": FillingRecord::from_filling(&parts.piece),
                    "remainder": FillingRecord::from_filling(&parts.remainder),
                    "site": parts.site,
                }))));
            }
            let runs: String = ext.piece_cycles.iter().map(|c| format_cycle(c)).collect();
            let mut out = describe(&d) + "\n";
            let _ = writeln!(out, "i={} j={}", ext.i, ext.j);
            let _ = writeln!(out, "piece runs: {runs}");
            let _ = writeln!(out, "remainder cycle: {}", format_cycle(&ext.remainder));
            let _ = writeln!(out, "piece: {}", parts.piece.sigma());
            let _ = writeln!(out, "remainder: {}", parts.remainder.sigma());
            let _ = writeln!(out, "site: i={} j={}", parts.site.i, parts.site.j);
            Ok(CommandResult::ok(out))
        }
        Command::Roundtrip { file, k } => {
            let fp = load(file)?;
            let found: Vec<Decomposition> = surgery::find_decompositions(&fp)?
                .into_iter()
                .filter(|d| k.is_none_or(|k| d.k == k))
                .collect();
            if found.is_empty() {
                return Ok(CommandResult::negative(if text {
                    "no decomposition\n".to_string()
                } else {
                    record(&Vec::<()>::new())
                }));
            }
            let mut out = String::new();
            let mut recs = Vec::new();
            let mut failed = false;
            for d in &found {
                match surgery::round_trip_check(&fp, d) {
                    Ok(rt) => {
                        let _ = writeln!(
                            out,
                            "{}: kappa^{} delta^{}{}",
                            describe(d),
                            rt.kappa_power,
                            rt.delta_power,
                            if rt.piece_mirrored { " (piece mirrored)" } else { "" }
                        );
                        recs.push(json!({
                            "decomposition": DecompositionRecord::from(d),
                            "kappa_power": rt.kappa_power,
                            "delta_power": rt.delta_power,
                            "piece_mirrored": rt.piece_mirrored,
                            "reassembled": FillingRecord::from_filling(&rt.reassembled),
                        }));
                    }
                    Err(e) => {
                        failed = true;
                        let _ = writeln!(out, "{}: FAILED {e}", describe(d));
                        recs.push(json!({
                            "decomposition": DecompositionRecord::from(d),
                            "error": e.to_string(),
                        }));
                    }
                }
            }
            let body = if text { out } else { record(&recs) };
            Ok(if failed {
                CommandResult::negative(body)
            } else {
                CommandResult::ok(body)
            })
        }
        Command::Equivalent { first, second } => {
            let fp1 = load(first)?;
            let fp2 = load(second)?;
            let found = twist::are_equivalent(&fp1, &fp2)?;
            let minimal = fp1.is_minimal() && fp2.is_minimal();
            let caveat = "note: inputs are not minimal, so only a found witness is conclusive\n";
            if !text {
                let body = record(&json!({
                    "equivalent": found.is_some(),
                    "witness": found.as_ref().map(|e| e.witness.to_record()),
                    "orbit_certified": minimal,
                }));
                return Ok(if found.is_some() {
                    CommandResult::ok(body)
                } else {
                    CommandResult::negative(body)
                });
            }
            let note = if minimal { "" } else { caveat };
            Ok(match found {
                Some(e) => CommandResult::ok(format!("EQUIVALENT\nwitness: {}\n{note}", e.witness)),
                None => CommandResult::negative(format!("NOT-EQUIVALENT\n{note}")),
            })
        }
        Command::Census { n, single_cycle, out } => {
            let solutions = census::enumerate_filling(*n, *single_cycle)?;
            let result = census::classify(*n, &solutions)?;
            let bound = if *single_cycle && n % 2 == 1 && n.div_ceil(2) > 2 {
                census::upper_bound(n.div_ceil(2)).ok()
            } else {
                None
            };
            let closed = census::is_closed_under_twists(*n, &solutions);
            if let Some(path) = out {
                let file = std::fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                census::write_census(std::io::BufWriter::new(file), &result.records)?;
            }
            if !text {
                let mut summary = json!({
                    "n": n,
                    "single_cycle": single_cycle,
                    "raw_count": result.raw_count,
                    "orbit_count": result.orbit_count(),
                    "upper_bound": bound.as_ref().map(|b| b.to_string()),
                    "closed_under_twists": closed,
                });
                if out.is_none() {
                    summary["records"] = serde_json::to_value(&result.records).expect("records serialize");
                }
                return Ok(CommandResult::ok(record(&summary)));
            }
            let mut body = format!(
                "n={n} single-cycle={} raw={} orbits={}",
                yes_no(*single_cycle),
                result.raw_count,
                result.orbit_count()
            );
            if let Some(b) = &bound {
                let _ = write!(body, " bound={b}");
            }
            let _ = writeln!(body, " closed-under-twists={}", yes_no(closed));
            if out.is_none() {
                for r in &result.records {
                    let sigma = crate::perm::Permutation::from_images(r.canonical_form.clone())
                        .expect("census forms are permutations");
                    let _ = writeln!(
                        body,
                        "c={} genus={} orbit={} decomposable={} {}",
                        r.c,
                        r.genus,
                        r.orbit_size_raw,
                        yes_no(r.decomposable),
                        sigma
                    );
                }
            }
            Ok(CommandResult::ok(body))
        }
    }
}
