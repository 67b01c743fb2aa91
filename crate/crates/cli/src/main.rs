//! `pa`: build, measure, verify, contract and search permutation arrays.
//!
//! Exit status: 0 on success, 1 when a check fails (the witness goes to
//! stdout), 2 on usage, parse or I/O errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use permarray::bounds::{emit_table, parse_records, propagate_bounds, verified_group_records};
use permarray::contraction::contract_pa;
use permarray::distance::pa_hd;
use permarray::pa_file::{import_one_indexed, read_pa_file, symbol_map, write_pa_file};
use permarray::search::{verify_search_output, SearchProgress};
use permarray::{
    coset_search, gv_bound, BaseSpec, Labeling, Mode, PermArray, Permutation, SearchConfig,
    SearchError, Window,
};

#[derive(Parser)]
#[command(name = "pa", version, about = "Permutation arrays with verified minimum distance")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelingArg {
    /// printed s is symbol s-1
    Natural,
    /// printed symbols are inf, 0, 1, g, g^2, ... for the primitive element g
    Power,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Coset,
    Exact,
}

#[derive(Subcommand)]
enum Command {
    /// Write a PA built from a base group and optional coset representatives
    Gen {
        /// e.g. "PGL2 q=19", "AGAMMAL1 q=8", "GENS file=m12.gens degree=13"
        #[arg(long)]
        base: String,
        /// Coset representative, space- or comma-separated; repeatable
        #[arg(long = "rep")]
        reps: Vec<String>,
        /// Read representatives as 1-indexed lists
        #[arg(long)]
        one_indexed: bool,
        /// Symbol order of 1-indexed lists
        #[arg(long, value_enum, default_value = "natural", requires = "one_indexed")]
        labeling: LabelingArg,
        /// Claimed distance; measured when omitted
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the minimum distance of a PA file
    Hd {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "coset")]
        mode: ModeArg,
    },
    /// Check a PA file's claimed distance
    Verify {
        file: PathBuf,
        /// Also run the full pairwise scan up to this many members
        #[arg(long, default_value_t = 5000)]
        pairwise_cap: usize,
    },
    /// Contract every member and certify the result
    Contract {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        times: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Grow a PA by random coset search
    Search {
        #[arg(long)]
        base: String,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Consecutive rejections that end the run
        #[arg(long, default_value_t = 1_000_000)]
        max_candidates: u64,
        /// Stop once this many cosets are held
        #[arg(long)]
        max_cosets: Option<usize>,
        /// Accept cosets without any at distance exactly d
        #[arg(long)]
        no_tight: bool,
        /// Continue from a previous output
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Rewrite --out every this many candidates
        #[arg(long, default_value_t = 100_000)]
        checkpoint_every: u64,
        /// Evaluate candidates on all cores (same output)
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact Gilbert–Varshamov bound
    Gv {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Print a bound table
    Table {
        /// Records file, lines `n d size tag`; repeatable
        #[arg(long = "records")]
        records: Vec<PathBuf>,
        /// Include bounds measured on the built-in groups
        #[arg(long)]
        verified: bool,
        /// Close under the a/b/d rules inside the printed window
        #[arg(long)]
        propagate: bool,
        /// Row range, inclusive, e.g. 9..13
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        /// Column range, inclusive
        #[arg(long, value_parser = parse_range)]
        d: (usize, usize),
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").unwrap_or((s, s));
    let a: usize = a.trim().parse().map_err(|_| format!("bad range `{s}`"))?;
    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| format!("bad range `{s}`"))?;
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok((a, b))
}

fn load(path: &Path) -> Result<PermArray> {
    Ok(read_pa_file(path)?)
}

fn print_witness(pa: &PermArray, witness: (usize, usize)) {
    println!("witness[{}]: {}", witness.0, pa.element(witness.0));
    println!("witness[{}]: {}", witness.1, pa.element(witness.1));
}

fn gen(
    base: &str,
    reps: &[String],
    one_indexed: bool,
    labeling: LabelingArg,
    d: Option<usize>,
    out: &Path,
) -> Result<u8> {
    let spec: BaseSpec = base.parse()?;
    let descriptor = spec.resolve(None)?;
    let group = Arc::new(descriptor.materialize()?);
    let map = if one_indexed {
        let l = match labeling {
            LabelingArg::Natural => Labeling::Natural,
            LabelingArg::Power => Labeling::PowerOrder,
        };
        Some(symbol_map(l, &descriptor).ok_or_else(|| anyhow!("{spec} has no field for power order"))?)
    } else {
        None
    };
    let reps = reps
        .iter()
        .map(|r| match &map {
            Some(m) => import_one_indexed(r, m),
            None => r.parse::<Permutation>(),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut pa = PermArray::new(group, reps, 0)?;
    let measured = if pa.size() > 1 {
        Some(pa_hd(&pa, Mode::CosetShortcut)?)
    } else {
        None
    };
    let claimed = match (d, &measured) {
        (Some(d), _) => d,
        (None, Some(r)) => r.min_distance,
        (None, None) => pa.degree(),
    };
    pa.set_claimed_d(claimed);
    write_pa_file(out, &pa)?;
    println!(
        "wrote {} n={} size={} cosets={} d={claimed}",
        out.display(),
        pa.degree(),
        pa.size(),
        pa.cosets()
    );
    if let Some(r) = measured.filter(|r| r.min_distance < claimed) {
        println!("FAIL claimed d={claimed} but {r}");
        print_witness(&pa, r.witness);
        return Ok(1);
    }
    Ok(0)
}

fn hd(file: &Path, mode: ModeArg) -> Result<u8> {
    let pa = load(file)?;
    let mode = match mode {
        ModeArg::Coset => Mode::CosetShortcut,
        ModeArg::Exact => Mode::ExactPairwise,
    };
    println!("{}", pa_hd(&pa, mode)?);
    Ok(0)
}

fn verify(file: &Path, pairwise_cap: usize) -> Result<u8> {
    let pa = load(file)?;
    match verify_search_output(&pa, pairwise_cap) {
        Ok(r) => {
            println!("ok size={} claimed={} {r}", pa.size(), pa.claimed_d());
            Ok(0)
        }
        Err(SearchError::ClaimFailed { claimed, report }) => {
            println!("FAIL claimed d={claimed} but {report}");
            print_witness(&pa, report.witness);
            Ok(1)
        }
        Err(e @ SearchError::MethodsDisagree { .. }) => {
            println!("FAIL {e}");
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

fn contract(file: &Path, times: usize, out: &Path) -> Result<u8> {
    let pa = load(file)?;
    let (result, cert) = contract_pa(&pa, times)?;
    write_pa_file(out, &result)?;
    println!("{cert}");
    if cert.result_hd < cert.predicted_floor() {
        println!("FAIL result below the guaranteed {}", cert.predicted_floor());
        return Ok(1);
    }
    Ok(0)
}

fn search(
    base: &str,
    cfg: SearchConfig,
    resume: Option<&Path>,
    out: &Path,
) -> Result<u8> {
    let spec: BaseSpec = base.parse()?;
    let group = Arc::new(spec.resolve(None)?.materialize()?);
    let start = resume.map(load).transpose()?;
    let checkpoint = |p: &SearchProgress<'_>| {
        println!("cosets={} size={} tried={}", p.cosets, p.size, p.tried);
        if let Ok(mut pa) = PermArray::new(group.clone(), p.reps.to_vec(), cfg.target_distance) {
            pa.seed = Some(cfg.seed);
            if let Err(e) = write_pa_file(out, &pa) {
                eprintln!("checkpoint failed: {e}");
            }
        }
    };
    match coset_search(group.clone(), &cfg, start.as_ref(), checkpoint) {
        Ok(pa) => {
            write_pa_file(out, &pa)?;
            println!("wrote {} cosets={} size={}", out.display(), pa.cosets(), pa.size());
            Ok(0)
        }
        Err(SearchError::Exhausted { tried, state }) => {
            write_pa_file(out, &state)?;
            println!("exhausted after {tried} candidates with no new coset");
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

fn gv(n: usize, d: usize) -> Result<u8> {
    let r = gv_bound(n, d)?;
    println!("gv({n},{d})={} volume={}", r.bound, r.volume);
    Ok(0)
}

fn table(
    files: &[PathBuf],
    verified: bool,
    propagate: bool,
    n: (usize, usize),
    d: (usize, usize),
) -> Result<u8> {
    let mut records = Vec::new();
    for f in files {
        let text = std::fs::read_to_string(f).with_context(|| format!("cannot read {}", f.display()))?;
        records.extend(parse_records(&text).with_context(|| f.display().to_string())?);
    }
    if verified {
        records.extend(verified_group_records(n.0..=n.1));
    }
    if propagate {
        let window = Window {
            n: n.0..=n.1,
            d: d.0..=d.1,
        };
        records = propagate_bounds(&records, &window);
    }
    print!("{}", emit_table(&records, n.0..=n.1, d.0..=d.1));
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen {
            base,
            reps,
            one_indexed,
            labeling,
            d,
            out,
        } => gen(&base, &reps, one_indexed, labeling, d, &out),
        Command::Hd { file, mode } => hd(&file, mode),
        Command::Verify { file, pairwise_cap } => verify(&file, pairwise_cap),
        Command::Contract { file, times, out } => contract(&file, times, &out),
        Command::Search {
            base,
            d,
            seed,
            max_candidates,
            max_cosets,
            no_tight,
            resume,
            checkpoint_every,
            parallel,
            out,
        } => {
            if d == 0 {
                bail!("--d must be positive");
            }
            let cfg = SearchConfig {
                target_distance: d,
                seed,
                max_candidates,
                require_tight: !no_tight,
                checkpoint_every,
                max_cosets,
                parallel,
            };
            search(&base, cfg, resume.as_deref(), &out)
        }
        Command::Gv { n, d } => gv(n, d),
        Command::Table {
            records,
            verified,
            propagate,
            n,
            d,
        } => table(&records, verified, propagate, n, d),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
