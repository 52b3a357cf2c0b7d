use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use noncon::clifford::tapering_map;
use noncon::eigenstate::build_eigenstate;
use noncon::gf2::SymplecticVec;
use noncon::partition::{reduce_to_pauli, PlanKind};
use noncon::spectrum::{
    full_spectrum, ground_search, nu_sign, AnnealConfig, SearchMode, DEFAULT_BRUTE_CAP, DEFAULT_MERGE_TOLERANCE,
};
use noncon::structure::{build_graph, clique_partition, extract_generators, table_of_bounds, universally_commuting};
use noncon::verify::run_battery;
use noncon::{io, Decomposition, Error, PauliSum};

const EXIT_PARSE: u8 = 1;
const EXIT_CONTEXTUAL: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "noncon", version, about = "Analyse noncontextual Pauli Hamiltonians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Plan {
    Lcu,
    Sequence,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the term set as noncontextual or contextual.
    Check { file: PathBuf },
    /// Print symmetry generators, cliques, representatives and term factorizations.
    Decompose { file: PathBuf },
    /// Export the compatibility graph in DOT format.
    Graph {
        file: PathBuf,
        /// Output path, `-` for stdout.
        #[arg(long)]
        dot: PathBuf,
    },
    /// Print the Clifford map sending generators to single-qubit Z and the tapered Hamiltonian.
    Taper { file: PathBuf },
    /// Print every eigenvalue with multiplicity and contributing sector count.
    Spectrum {
        file: PathBuf,
        /// Beyond the exhaustive cap, report an annealed ground estimate instead of failing.
        #[arg(long)]
        anneal: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        sweeps: usize,
        #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
        cap: usize,
    },
    /// Minimize the sector energy over symmetry sectors.
    Ground {
        file: PathBuf,
        #[arg(long)]
        anneal: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        sweeps: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
        cap: usize,
    },
    /// Build the eigenvector for a sector as Pauli branches on a stabilizer state.
    Eigenstate {
        file: PathBuf,
        /// Sector bitmask; bit j set means generator j has eigenvalue -1.
        #[arg(long, value_parser = parse_mask)]
        nu: u128,
        /// `-` selects the lower energy of the sector, `+` the upper.
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        sign: i8,
        /// Flips the sign of completion stabilizers, selecting another degenerate eigenvector.
        #[arg(long, value_parser = parse_mask, default_value = "0")]
        completion: u128,
    },
    /// Reduce a pairwise anticommuting sum to a single Pauli word.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "lcu")]
        plan: Plan,
        /// Index of the target word in canonical term order.
        #[arg(long, default_value_t = 0)]
        target: usize,
    },
    /// Maximum Hamiltonian support for each (|G|, |A|) on n qubits.
    Bounds {
        #[arg(long)]
        n: usize,
    },
    /// Run the dense cross-check battery and print a JSON report.
    Verify { file: PathBuf },
}

fn parse_mask(s: &str) -> Result<u128, String> {
    let s = s.trim();
    let parsed = if let Some(b) = s.strip_prefix("0b") {
        u128::from_str_radix(b, 2)
    } else if let Some(h) = s.strip_prefix("0x") {
        u128::from_str_radix(h, 16)
    } else {
        s.parse()
    };
    parsed.map_err(|e| format!("bad bitmask '{s}': {e}"))
}

fn parse_sign(s: &str) -> Result<i8, String> {
    match s {
        "+" | "+1" | "1" => Ok(1),
        "-" | "-1" => Ok(-1),
        _ => Err(format!("sign must be + or -, got '{s}'")),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ContextualSet { .. }) | Some(Error::NotAnticommuting { .. }) => EXIT_CONTEXTUAL,
        Some(Error::CapExceeded { .. }) | Some(Error::TooManySymmetries { .. }) => EXIT_CAP,
        _ => EXIT_PARSE,
    }
}

fn load(path: &Path) -> anyhow::Result<PauliSum> {
    Ok(io::load(path)?)
}

fn decompose(h: &PauliSum) -> anyhow::Result<Decomposition> {
    Ok(extract_generators(h)?)
}

fn pivot_name(w: &noncon::PauliOperator) -> String {
    match SymplecticVec::of(w).pivot() {
        Some(col) => format!("{}{}", if col % 2 == 0 { 'x' } else { 'z' }, col / 2),
        None => "-".into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = exit_code(&e);
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Command, out: &mut impl Write) -> anyhow::Result<u8> {
    match cmd {
        Command::Check { file } => {
            let h = load(&file)?;
            let g = build_graph(&h);
            match g.contextual_witness() {
                None => {
                    writeln!(out, "noncontextual")?;
                    Ok(0)
                }
                Some((a, b, c)) => {
                    writeln!(out, "contextual")?;
                    writeln!(out, "witness {a} {b} {c}")?;
                    writeln!(
                        out,
                        "# {a} commutes with {b}, {b} commutes with {c}, {a} anticommutes with {c}"
                    )?;
                    Ok(EXIT_CONTEXTUAL)
                }
            }
        }
        Command::Decompose { file } => {
            let h = load(&file)?;
            let d = decompose(&h)?;
            writeln!(out, "n {}", d.num_qubits())?;
            writeln!(out, "identity {}", d.identity_coeff)?;
            writeln!(out, "universal {}", d.z_set.len())?;
            for w in &d.z_set {
                writeln!(out, "  {w}")?;
            }
            writeln!(out, "generators {}", d.num_generators())?;
            for (j, g) in d.g_generators.iter().enumerate() {
                writeln!(out, "  G{j} {g} pivot {}", pivot_name(g))?;
            }
            writeln!(out, "cliques {}", d.cliques.len())?;
            for (i, c) in d.cliques.iter().enumerate() {
                let members: Vec<String> = c.iter().map(|w| w.to_string()).collect();
                writeln!(out, "  C{i} rep {} members {}", d.a_reps[i], members.join(" "))?;
            }
            writeln!(out, "factorization {}", d.factorization.len())?;
            for t in &d.factorization {
                let gs: Vec<String> = (0..d.num_generators())
                    .filter(|j| (t.factor.g_mask >> j) & 1 == 1)
                    .map(|j| format!("G{j}"))
                    .collect();
                let clique = t.factor.clique.map_or("-".to_string(), |i| format!("C{i}"));
                writeln!(
                    out,
                    "  {} {} = {} [{}] {} h {}",
                    t.coeff,
                    t.word,
                    if t.factor.sign < 0.0 { "-" } else { "+" },
                    gs.join(" "),
                    clique,
                    t.h
                )?;
            }
            Ok(0)
        }
        Command::Graph { file, dot } => {
            let h = load(&file)?;
            let g = build_graph(&h);
            let text = g.to_dot();
            if dot.as_os_str() == "-" {
                write!(out, "{text}")?;
            } else {
                fs::write(&dot, text).with_context(|| format!("writing {}", dot.display()))?;
                let z = universally_commuting(&g);
                let cliques = clique_partition(&g, &z).map(|c| c.len());
                writeln!(out, "vertices {}", g.len())?;
                writeln!(out, "edges {}", g.edge_count())?;
                writeln!(out, "universal {}", z.len())?;
                match cliques {
                    Ok(k) => writeln!(out, "cliques {k}")?,
                    Err(_) => writeln!(out, "cliques contextual")?,
                }
            }
            Ok(0)
        }
        Command::Taper { file } => {
            let h = load(&file)?;
            let d = decompose(&h)?;
            let map = tapering_map(&d.g_generators, d.num_qubits())?;
            writeln!(out, "rotations {}", map.rotations().len())?;
            for r in map.rotations() {
                writeln!(out, "  exp({} i pi/4 {})", if r.turns > 0 { "+" } else { "-" }, r.axis)?;
            }
            writeln!(out, "targets {}", map.targets().len())?;
            for t in map.targets() {
                writeln!(
                    out,
                    "  {} -> {}Z{}",
                    d.g_generators[t.generator],
                    if t.sign < 0 { "-" } else { "+" },
                    t.qubit
                )?;
            }
            let tapered = map.conjugate(&h)?;
            writeln!(out, "hamiltonian {}", tapered.len())?;
            write!(out, "{}", tapered.to_text())?;
            Ok(0)
        }
        Command::Spectrum {
            file,
            anneal,
            seed,
            sweeps,
            cap,
        } => {
            let h = load(&file)?;
            let d = decompose(&h)?;
            if d.num_generators() > cap.min(63) {
                if !anneal {
                    return Err(Error::TooManySymmetries {
                        count: d.num_generators(),
                        cap,
                    }
                    .into());
                }
                let cfg = AnnealConfig {
                    seed,
                    sweeps,
                    ..AnnealConfig::default()
                };
                let r = ground_search(&d, SearchMode::Anneal(cfg))?;
                writeln!(
                    out,
                    "# {} generators exceed the exhaustive cap; annealed ground estimate only",
                    d.num_generators()
                )?;
                writeln!(out, "epsilon_0 {}", r.energy)?;
                writeln!(out, "nu {}", r.nu)?;
                writeln!(out, "certified false")?;
                return Ok(0);
            }
            let s = full_spectrum(&d, cap, DEFAULT_MERGE_TOLERANCE)?;
            writeln!(out, "# lambda multiplicity k_lambda")?;
            for e in &s.entries {
                writeln!(out, "{} {} {}", e.lambda, e.multiplicity, e.sectors)?;
            }
            writeln!(out, "# total {} block_dim {}", s.total_multiplicity(), s.block_dim)?;
            match s.divisor {
                Some(q) => writeln!(out, "# divisor {q} divisible {}", s.divisible)?,
                None => writeln!(out, "# divisor none")?,
            }
            Ok(0)
        }
        Command::Ground {
            file,
            anneal,
            seed,
            sweeps,
            restarts,
            cap,
        } => {
            let h = load(&file)?;
            let d = decompose(&h)?;
            let mode = if anneal {
                SearchMode::Anneal(AnnealConfig { seed, sweeps, restarts })
            } else {
                SearchMode::Brute { cap }
            };
            let r = ground_search(&d, mode)?;
            writeln!(out, "epsilon_0 {}", r.energy)?;
            writeln!(out, "nu {}", r.nu)?;
            for (j, g) in d.g_generators.iter().enumerate() {
                writeln!(out, "  {g} {}", if nu_sign(r.nu, j) < 0.0 { "-1" } else { "+1" })?;
            }
            writeln!(out, "certified {}", r.certified)?;
            Ok(0)
        }
        Command::Eigenstate {
            file,
            nu,
            sign,
            completion,
        } => {
            let h = load(&file)?;
            let d = decompose(&h)?;
            let e = build_eigenstate(&d, nu, sign, completion)?;
            writeln!(out, "energy {}", e.energy)?;
            writeln!(out, "nu {}", e.nu)?;
            writeln!(out, "sign {}", if e.sign < 0 { "-" } else { "+" })?;
            if e.degenerate {
                writeln!(out, "degenerate true")?;
            }
            writeln!(out, "anchor {}", e.state.anchor.generators().len())?;
            for g in e.state.anchor.generators() {
                let text = g.to_string();
                if text.starts_with('-') {
                    writeln!(out, "  {text}")?;
                } else {
                    writeln!(out, "  +{text}")?;
                }
            }
            writeln!(out, "branches {}", e.state.branches.len())?;
            for (amp, w) in &e.state.branches {
                writeln!(out, "  ({}, {}, {})", amp.re + 0.0, amp.im + 0.0, w)?;
            }
            writeln!(out, "chi_bound {}", e.state.chi_bound)?;
            Ok(0)
        }
        Command::Reduce { file, plan, target } => {
            let h = load(&file)?;
            let terms: Vec<_> = h.iter().map(|(w, c)| (*w, c)).collect();
            if terms.iter().any(|(w, _)| w.is_identity_word()) {
                bail!("identity term cannot be part of an anticommuting sum");
            }
            let kind = match plan {
                Plan::Lcu => PlanKind::Lcu,
                Plan::Sequence => PlanKind::Sequence,
            };
            let r = reduce_to_pauli(&terms, target, kind)?;
            match &r.plan {
                Some(p) => write!(out, "{p}")?,
                None => writeln!(out, "single word, no rotation")?,
            }
            writeln!(out, "target {}", r.word)?;
            writeln!(out, "sign {}", r.sign)?;
            writeln!(out, "norm {}", r.norm)?;
            Ok(0)
        }
        Command::Bounds { n } => {
            let rows = table_of_bounds(n)?;
            writeln!(out, "# |G| |A| max_terms exceeds_2^n")?;
            for r in rows {
                writeln!(out, "{} {} {} {}", r.g_size, r.a_size, r.max_terms, r.flag.as_str())?;
            }
            Ok(0)
        }
        Command::Verify { file } => {
            let h = load(&file)?;
            let report = run_battery(&h);
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            Ok(if report.passed() { 0 } else { EXIT_VERIFY })
        }
    }
}
