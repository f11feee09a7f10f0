//! Thin command-line front end over the `multitrans` library.
//!
//! Exit codes: 0 success, 1 failing verdict under --strict, 2 parse
//! error, 3 invariant violation, 4 missing capability for the requested
//! lane.  Output is byte-identical across runs with identical flags.

use clap::{Parser, Subcommand};
use multitrans::classify::{classify, ClassifyBounds};
use multitrans::families::{evaluate, Bounds, FamilyQuery};
use multitrans::hitting::{hitting_finite, hitting_sft, hitting_spacing};
use multitrans::systems::ESystemWitness;
use multitrans::verify::{
    membership_equivalence_corpus_maps, membership_equivalence_corpus_sfts, random_gap_sets,
    search_separation, separation_csv, verify_membership_equivalence, verify_mixing_chain,
    verify_power_invariance, verify_tower_transitive_point, verify_weak_disjointness,
};
use multitrans::{Cylinder, DynSystem, Error, ExactSet, FiniteMap, IndexSet, Result, Sft, Verdict};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "multitrans",
    version,
    about = "Exact hitting-time sets, vector-family membership, and cross-checked transitivity verdicts for finite maps, vertex shifts, and spacing shifts"
)]
struct Cli {
    /// Exit 1 when the printed verdict fails or a report disagrees.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Property record for one system: transitivity, total transitivity,
    /// weak mixing, mixing, dense small periodic sets.
    Analyze {
        /// Path to a system JSON file, or a builtin token (full2, golden,
        /// cycle3, ...).
        #[arg(long)]
        system: String,
        /// Largest power swept by the total-transitivity check.
        #[arg(long, default_value_t = 5)]
        powers: u64,
        /// Cylinder depth for horizon-bounded lanes.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hitting-time set of two cylinders: exact for finite maps and
    /// vertex shifts, horizon-bounded for spacing shifts.
    Hitting {
        #[arg(long)]
        system: String,
        /// Cylinder: point list for maps (0 or 0,2), vertex word for
        /// vertex shifts (0.1.0), bit word for spacing shifts (101).
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        /// Shift bound for the spacing lane (default: system capacity
        /// minus |v|).
        #[arg(long)]
        horizon: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Family-membership verdict for an index set.
    Family {
        /// inf | cf | thick | vec | infty | seq
        #[arg(long)]
        kind: String,
        /// Step vector for --kind vec, comma separated.
        #[arg(long)]
        a: Option<String>,
        /// Staircase depth for --kind infty.
        #[arg(long)]
        r_max: Option<u64>,
        /// Sequence prefix for --kind seq, comma separated.
        #[arg(long)]
        prefix: Option<String>,
        /// Builtin token (odds, evens, all, empty, mod3.0.1) or a path to
        /// an index-set JSON file.
        #[arg(long)]
        set: String,
        /// Translate bound for bounded membership.
        #[arg(long)]
        n_max: Option<u64>,
        /// Witness bound for bounded membership.
        #[arg(long)]
        k_max: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check harness: both sides of one equivalence, or a corpus
    /// sweep.
    Verify {
        /// thm42 | lemma32 | prop33 | thm53 | tower
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        system: Option<String>,
        /// Corpus token for thm42: maps5 or sft4 (trailing digit = size cap).
        #[arg(long)]
        corpus: Option<String>,
        /// Step vector (thm42) or tested prefix (thm53), comma separated.
        #[arg(long)]
        a: Option<String>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Power exponent for lemma32.
        #[arg(long, default_value_t = 2)]
        n: u64,
        /// Staircase bound for lemma32.
        #[arg(long, default_value_t = 3)]
        bound: u64,
        /// Cycle length of the reference measure-carrying system (thm53).
        #[arg(long, default_value_t = 3)]
        e_size: usize,
        /// Tower height (tower) / staircase product depth (prop33).
        #[arg(long, default_value_t = 2)]
        k: u64,
        /// Vector length cap for corpus sweeps and prop33.
        #[arg(long, default_value_t = 3)]
        r_max: usize,
        /// Vector entry cap for corpus sweeps and prop33.
        #[arg(long, default_value_t = 3)]
        entry_max: u64,
        /// Number of seeded revalidations in corpus sweeps.
        #[arg(long, default_value_t = 64)]
        sample: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report path prefix: writes <out>.json and <out>.csv.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Property profiles over a stream of spacing-shift gap sets.
    Search {
        /// Explicit gap sets, dot separated (e.g. 2.4.6); repeatable.
        /// When absent, --count seeded random sets are generated.
        #[arg(long)]
        gaps: Vec<String>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 16)]
        max_gap: u64,
        #[arg(long, default_value_t = 512)]
        horizon: u64,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report path prefix: writes <out>.json and <out>.csv.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_u64_list(s: &str, what: &str) -> Result<Vec<u64>> {
    s.split([',', '.'])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| Error::Parse(format!("{what}: bad entry {t:?}"))))
        .collect()
}

fn load_system(token: &str) -> Result<DynSystem> {
    if Path::new(token).exists() {
        let text = std::fs::read_to_string(token)
            .map_err(|e| Error::Parse(format!("reading {token}: {e}")))?;
        return DynSystem::from_json(&text);
    }
    if token == "golden" {
        return Ok(DynSystem::Shift(Sft::golden_mean()));
    }
    if let Some(n) = token.strip_prefix("full") {
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad builtin {token:?}")))?;
        return Ok(DynSystem::Shift(Sft::full_shift(n)));
    }
    if let Some(n) = token.strip_prefix("cycle") {
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad builtin {token:?}")))?;
        if n == 0 {
            return Err(Error::Parse("cycle length must be >= 1".into()));
        }
        return Ok(DynSystem::Map(FiniteMap::cycle(n)));
    }
    Err(Error::Parse(format!(
        "system {token:?} is neither a file nor a builtin (golden, fullN, cycleN)"
    )))
}

fn parse_cylinder(sys: &DynSystem, s: &str, side: &str) -> Result<Cylinder> {
    let parse =
        |t: &str| t.parse::<usize>().map_err(|_| Error::Parse(format!("{side}: bad entry {t:?}")));
    match sys {
        DynSystem::Map(_) => {
            let pts: Vec<usize> =
                s.split([',', '.']).filter(|t| !t.is_empty()).map(parse).collect::<Result<_>>()?;
            Ok(Cylinder::points(pts))
        }
        DynSystem::Shift(_) => {
            let w: Vec<usize> =
                s.split([',', '.']).filter(|t| !t.is_empty()).map(parse).collect::<Result<_>>()?;
            Ok(Cylinder::word(w))
        }
        DynSystem::Spacing(_) => {
            let bits: Vec<u8> = s
                .chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    other => Err(Error::Parse(format!("{side}: bad bit {other:?}"))),
                })
                .collect::<Result<_>>()?;
            Ok(Cylinder::bits(bits))
        }
    }
}

fn load_set(token: &str) -> Result<IndexSet> {
    if Path::new(token).exists() {
        let text = std::fs::read_to_string(token)
            .map_err(|e| Error::Parse(format!("reading {token}: {e}")))?;
        return serde_json::from_str(&text).map_err(|e| Error::Parse(format!("set: {e}")));
    }
    match token {
        "odds" => Ok(IndexSet::Exact(ExactSet::residue_class(2, &[1])?)),
        "evens" => Ok(IndexSet::Exact(ExactSet::residue_class(2, &[0])?)),
        "all" => Ok(IndexSet::Exact(ExactSet::all())),
        "empty" => Ok(IndexSet::Exact(ExactSet::empty())),
        other => {
            if let Some(rest) = other.strip_prefix("mod") {
                let nums = parse_u64_list(rest, "set")?;
                if nums.len() < 2 {
                    return Err(Error::Parse("modP.R needs a modulus and residues".into()));
                }
                return Ok(IndexSet::Exact(ExactSet::residue_class(nums[0], &nums[1..])?));
            }
            Err(Error::Parse(format!(
                "set {other:?} is neither a file nor a builtin (odds, evens, all, empty, modP.R...)"
            )))
        }
    }
}

/// Serialize compactly with a trailing newline; identical flags must
/// produce identical bytes.
fn emit<T: serde::Serialize>(value: &T, out: Option<&PathBuf>) -> Result<String> {
    let json = serde_json::to_string(value).map_err(|e| Error::Parse(format!("encode: {e}")))?;
    let text = format!("{json}\n");
    print!("{text}");
    if let Some(path) = out {
        let target = if path.extension().is_some() {
            path.clone()
        } else {
            path.with_extension("json")
        };
        std::fs::write(&target, &text)
            .map_err(|e| Error::Parse(format!("writing {}: {e}", target.display())))?;
    }
    Ok(text)
}

fn write_csv(prefix: &Path, csv: &str) -> Result<()> {
    let target = prefix.with_extension("csv");
    std::fs::write(&target, csv)
        .map_err(|e| Error::Parse(format!("writing {}: {e}", target.display())))
}

/// Whether the emitted value should fail the process under --strict.
fn verdict_failed(v: &Verdict) -> bool {
    v.is_fails()
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.cmd {
        Cmd::Analyze { system, powers, depth, out } => {
            let sys = load_system(system)?;
            let record = classify(&sys, &ClassifyBounds { powers: *powers, depth: *depth })?;
            emit(&record, out.as_ref())?;
            Ok(record.transitive.is_fails())
        }
        Cmd::Hitting { system, u, v, horizon, out } => {
            let sys = load_system(system)?;
            let cu = parse_cylinder(&sys, u, "--u")?;
            let cv = parse_cylinder(&sys, v, "--v")?;
            let set = match &sys {
                DynSystem::Map(m) => IndexSet::Exact(hitting_finite(m, &cu, &cv)?),
                DynSystem::Shift(s) => IndexSet::Exact(hitting_sft(s, &cu, &cv)?),
                DynSystem::Spacing(s) => {
                    let h = horizon.unwrap_or_else(|| {
                        s.horizon().saturating_sub(cv.len() as u64)
                    });
                    IndexSet::Explicit(hitting_spacing(s, &cu, &cv, h)?)
                }
            };
            emit(&set, out.as_ref())?;
            Ok(false)
        }
        Cmd::Family { kind, a, r_max, prefix, set, n_max, k_max, out } => {
            let q = match kind.as_str() {
                "inf" => FamilyQuery::Inf,
                "cf" => FamilyQuery::Cf,
                "thick" => FamilyQuery::Thick,
                "vec" => {
                    let a = a.as_deref().ok_or_else(|| {
                        Error::Parse("--kind vec needs --a".into())
                    })?;
                    FamilyQuery::Vector { a: parse_u64_list(a, "--a")? }
                }
                "infty" => FamilyQuery::Infty {
                    r_max: r_max.ok_or_else(|| Error::Parse("--kind infty needs --r-max".into()))?,
                },
                "seq" => {
                    let p = prefix.as_deref().ok_or_else(|| {
                        Error::Parse("--kind seq needs --prefix".into())
                    })?;
                    FamilyQuery::Seq { prefix: parse_u64_list(p, "--prefix")? }
                }
                other => return Err(Error::Parse(format!("unknown family kind {other:?}"))),
            };
            let target = load_set(set)?;
            let bounds = match (n_max, k_max) {
                (Some(n), Some(k)) => Some(Bounds { n_max: *n, k_max: *k }),
                (None, None) => None,
                _ => {
                    return Err(Error::Parse("--n-max and --k-max must come together".into()));
                }
            };
            let verdict = evaluate(&q, &target, bounds.as_ref())?;
            emit(&verdict, out.as_ref())?;
            Ok(verdict_failed(&verdict))
        }
        Cmd::Verify {
            theorem,
            system,
            corpus,
            a,
            depth,
            n,
            bound,
            e_size,
            k,
            r_max,
            entry_max,
            sample,
            seed,
            out,
        } => {
            let need_system = || -> Result<DynSystem> {
                let token = system
                    .as_deref()
                    .ok_or_else(|| Error::Parse(format!("--theorem {theorem} needs --system")))?;
                load_system(token)
            };
            match theorem.as_str() {
                "thm42" => {
                    if let Some(c) = corpus {
                        let summary = if let Some(sz) = c.strip_prefix("maps") {
                            let max: usize = sz
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad corpus {c:?}")))?;
                            membership_equivalence_corpus_maps(
                                max, *r_max, *entry_max, *sample, *seed,
                            )?
                        } else if let Some(sz) = c.strip_prefix("sft") {
                            let max: usize = sz
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad corpus {c:?}")))?;
                            membership_equivalence_corpus_sfts(
                                max, *r_max, *entry_max, *depth, *sample, *seed,
                            )?
                        } else {
                            return Err(Error::Parse(format!(
                                "corpus {c:?} is not mapsN or sftN"
                            )));
                        };
                        emit(&summary, out.as_ref())?;
                        if let Some(prefix) = out {
                            write_csv(prefix, &summary.failures_csv())?;
                        }
                        Ok(!summary.all_agree())
                    } else {
                        let sys = need_system()?;
                        let a = parse_u64_list(
                            a.as_deref().unwrap_or("1,2"),
                            "--a",
                        )?;
                        let report = verify_membership_equivalence(&sys, &a, *depth)?;
                        emit(&report, out.as_ref())?;
                        if let Some(prefix) = out {
                            write_csv(prefix, &report.to_csv())?;
                        }
                        Ok(!report.all_agree())
                    }
                }
                "lemma32" => {
                    let report = verify_power_invariance(&need_system()?, *n, *bound)?;
                    emit(&report, out.as_ref())?;
                    if let Some(prefix) = out {
                        write_csv(prefix, &report.to_csv())?;
                    }
                    Ok(!report.all_agree())
                }
                "prop33" => {
                    let report =
                        verify_mixing_chain(&need_system()?, *r_max, *entry_max, *k, *depth)?;
                    emit(&report, out.as_ref())?;
                    if let Some(prefix) = out {
                        write_csv(prefix, &report.to_csv())?;
                    }
                    Ok(!report.all_agree())
                }
                "thm53" => {
                    let sys = need_system()?;
                    let a = parse_u64_list(a.as_deref().unwrap_or("2,4"), "--a")?;
                    let e = ESystemWitness::cycle(*e_size)?;
                    let report = verify_weak_disjointness(&sys, &a, &e, *depth)?;
                    emit(&report, out.as_ref())?;
                    if let Some(prefix) = out {
                        write_csv(prefix, &report.to_csv())?;
                    }
                    Ok(!report.all_agree() && !report.skipped)
                }
                "tower" => {
                    let sys = need_system()?;
                    let base = match sys {
                        DynSystem::Map(m) => m,
                        _ => {
                            return Err(Error::Capability(
                                "tower checks need a finite map base".into(),
                            ));
                        }
                    };
                    let verdict = verify_tower_transitive_point(&base, *k)?;
                    emit(&verdict, out.as_ref())?;
                    Ok(verdict_failed(&verdict))
                }
                other => Err(Error::Parse(format!(
                    "unknown theorem id {other:?} (thm42, lemma32, prop33, thm53, tower)"
                ))),
            }
        }
        Cmd::Search { gaps, count, max_gap, horizon, depth, seed, out } => {
            let sets: Vec<Vec<u64>> = if gaps.is_empty() {
                random_gap_sets(*count, *max_gap, *seed)
            } else {
                gaps.iter().map(|g| parse_u64_list(g, "--gaps")).collect::<Result<_>>()?
            };
            let rows = search_separation(&sets, *horizon, *depth)?;
            emit(&rows, out.as_ref())?;
            if let Some(prefix) = out {
                write_csv(prefix, &separation_csv(&rows))?;
            }
            Ok(false)
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse(_) => 2,
        Error::Capability(_) => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(failed) => {
            if failed && cli.strict {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
