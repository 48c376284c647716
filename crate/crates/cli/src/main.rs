use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use adequate::adequacy::{condition_c_annihilator, condition_c_span, ReportOptions};
use adequate::cohomology::{h0, h1_capped, h1_trivial_both};
use adequate::expmap::{exp_nilpotent, log_unipotent};
use adequate::gmodule::{GModule, Irreducibility};
use adequate::group::MatGroup;
use adequate::harness::{
    corpus, exit, exit_code_for, run_check_text, zoo_prime_to_l_with_notes, zoo_sl2, zoo_sl2_sym,
    CheckOutcome, GroupSpecFile,
};
use adequate::weights::{
    check_bounded_pairing, half_bound_separation, PairingVerdict, SeparationVerdict, TorusData,
};
use adequate::{make_field, Error, FqMatrix};
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "adequate",
    version,
    about = "Exact adequacy checks for finite matrix groups"
)]
struct Cli {
    /// Seed for randomized steps (meataxe words, factorization).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum group order enumerated by closure.
    #[arg(long, global = true, default_value_t = adequate::group::DEFAULT_ORDER_CAP)]
    cap_order: usize,
    /// Maximum number of unknowns in a cocycle system.
    #[arg(long, global = true, default_value_t = adequate::cohomology::DEFAULT_UNKNOWNS_CAP)]
    cap_unknowns: usize,
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Include eigenprojector witnesses in reports.
    #[arg(long, global = true)]
    verbose_witnesses: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full adequacy report for one spec file, or every *.json in a directory.
    Check {
        file: Option<PathBuf>,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Span of the semisimple elements and its trace-pairing annihilator.
    Spanss { file: PathBuf },
    /// H^0 and H^1 of ad0, and H^1 with trivial coefficients.
    Cohomology { file: PathBuf },
    /// Closure order and element-order statistics.
    Closure { file: PathBuf },
    /// Irreducibility of the natural module, with a witness if reducible.
    Meataxe { file: PathBuf },
    /// Random nilpotent X over GF(p): prints X, exp X, log exp X.
    Expmap {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        dim: usize,
    },
    /// Character-lattice checks for a torus.
    Weights {
        #[command(subcommand)]
        check: WeightsCheck,
    },
    /// Writes the instance zoo as spec files.
    Zoo {
        /// Target directory.
        #[arg(long)]
        out: PathBuf,
        /// Write the shipped corpus with its pinned expectations instead.
        #[arg(long)]
        corpus: bool,
        #[arg(long, default_values_t = [5u64, 7, 11])]
        l: Vec<u64>,
    },
}

#[derive(Subcommand)]
enum WeightsCheck {
    /// Pairing bound |<mu, delta>| < l-1 on the polytope implies triviality.
    Pairing {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        rank: usize,
        /// r*r integers, row-major, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        frobenius: String,
        /// Vectors separated by ';', entries by ','.
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        /// Separation under the halved bound instead.
        #[arg(long)]
        half: bool,
    },
}

struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(exit_code_for(&e), e.to_string())
    }
}

fn load(path: &Path, cli: &Cli) -> Result<(GroupSpecFile, Arc<MatGroup>), Fail> {
    let text = fs::read_to_string(path)
        .map_err(|e| Fail(exit::INPUT, format!("{}: {e}", path.display())))?;
    let spec = GroupSpecFile::parse(&text)?;
    let g = spec.build(cli.cap_order)?;
    Ok((spec, g))
}

fn options(cli: &Cli) -> ReportOptions {
    ReportOptions {
        unknowns_cap: cli.cap_unknowns,
        order_cap: cli.cap_order,
        seed: cli.seed,
        verbose_witnesses: cli.verbose_witnesses,
    }
}

fn emit(cli: &Cli, value: serde_json::Value, table: &[(&str, String)]) {
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        );
    } else {
        let width = table.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in table {
            println!("{k:<width$}  {v}");
        }
    }
}

fn print_outcome(cli: &Cli, out: &CheckOutcome) {
    match &out.report {
        Some(r) if cli.json => println!("{}", r.to_json()),
        Some(r) => print!("{r}"),
        None => {}
    }
    if let Some(m) = &out.message {
        eprintln!(
            "{}: {m}",
            if out.label.is_empty() {
                "error"
            } else {
                &out.label
            }
        );
    }
}

fn check_file(path: &Path, opts: &ReportOptions) -> CheckOutcome {
    match fs::read_to_string(path) {
        Ok(text) => {
            let mut out = run_check_text(&text, opts);
            if out.label.is_empty() {
                out.label = path.display().to_string();
            }
            out
        }
        Err(e) => CheckOutcome {
            label: path.display().to_string(),
            report: None,
            exit_code: exit::INPUT,
            message: Some(e.to_string()),
        },
    }
}

fn check(cli: &Cli, file: Option<&Path>, dir: Option<&Path>) -> Result<i32, Fail> {
    let opts = options(cli);
    let paths: Vec<PathBuf> = match (file, dir) {
        (Some(f), None) => vec![f.to_path_buf()],
        (None, Some(d)) => {
            let mut v: Vec<PathBuf> = fs::read_dir(d)
                .map_err(|e| Fail(exit::INPUT, format!("{}: {e}", d.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            v.sort();
            v
        }
        _ => {
            return Err(Fail(
                exit::INPUT,
                "give exactly one of FILE or --dir".into(),
            ))
        }
    };
    // one pipeline per file; output merged in filename order
    let outcomes: Vec<CheckOutcome> = paths.par_iter().map(|p| check_file(p, &opts)).collect();
    let mut worst = exit::CONSISTENT;
    for (i, out) in outcomes.iter().enumerate() {
        if i > 0 && !cli.json {
            println!();
        }
        print_outcome(cli, out);
        worst = worst.max(out.exit_code);
    }
    Ok(worst)
}

fn spanss(cli: &Cli, file: &Path) -> Result<i32, Fail> {
    let (spec, g) = load(file, cli)?;
    let s = condition_c_span(&g);
    let a = condition_c_annihilator(&g, &s)?;
    let n = g.dim();
    emit(
        cli,
        json!({"label": spec.label, "n": n, "semisimple": g.semisimple_indices().len(),
               "dim-Z": s.dim_z, "by-span": s.holds, "dim-U": a.dim_u, "by-annihilator": a.holds}),
        &[
            ("group", spec.label.clone()),
            (
                "semisimple elements",
                g.semisimple_indices().len().to_string(),
            ),
            ("dim Z", format!("{} of {}", s.dim_z, n * n)),
            ("dim U", a.dim_u.to_string()),
            ("spanning", s.holds.to_string()),
        ],
    );
    Ok(exit::CONSISTENT)
}

fn cohomology(cli: &Cli, file: &Path) -> Result<i32, Fail> {
    let (spec, g) = load(file, cli)?;
    let (ad0, _) = GModule::ad0(&g);
    let h0d = h0(&ad0).dim();
    let c = h1_capped(&ad0, cli.cap_unknowns)?;
    let t = h1_trivial_both(&g, cli.cap_unknowns)?;
    emit(
        cli,
        json!({"label": spec.label, "h0-ad0": h0d, "z1-ad0": c.z1_dim, "b1-ad0": c.b1_dim, "h1-ad0": c.h1_dim,
               "h1-trivial-cocycles": t.by_cocycles, "h1-trivial-abelianization": t.by_abelianization}),
        &[
            ("group", spec.label.clone()),
            ("h0(ad0)", h0d.to_string()),
            (
                "z1/b1/h1(ad0)",
                format!("{}/{}/{}", c.z1_dim, c.b1_dim, c.h1_dim),
            ),
            ("h1(trivial), cocycles", t.by_cocycles.to_string()),
            (
                "h1(trivial), abelianization",
                t.by_abelianization.to_string(),
            ),
        ],
    );
    Ok(if t.by_cocycles == t.by_abelianization {
        exit::CONSISTENT
    } else {
        exit::INTERNAL
    })
}

fn closure(cli: &Cli, file: &Path) -> Result<i32, Fail> {
    let (spec, g) = load(file, cli)?;
    let mut orders: Vec<u64> = g.element_orders().to_vec();
    orders.sort_unstable();
    orders.dedup();
    let core = g.l_power_core()?.order();
    emit(
        cli,
        json!({"label": spec.label, "order": g.order(), "element-orders": orders,
               "semisimple": g.semisimple_indices().len(), "core-order": core}),
        &[
            ("group", spec.label.clone()),
            ("order", g.order().to_string()),
            ("element orders", format!("{orders:?}")),
            (
                "semisimple elements",
                g.semisimple_indices().len().to_string(),
            ),
            ("core order", core.to_string()),
        ],
    );
    Ok(exit::CONSISTENT)
}

fn meataxe(cli: &Cli, file: &Path) -> Result<i32, Fail> {
    let (spec, g) = load(file, cli)?;
    let v = GModule::natural(&g);
    match v.is_irreducible_seeded(cli.seed)? {
        Irreducibility::Irreducible { factor, .. } => emit(
            cli,
            json!({"label": spec.label, "irreducible": true, "certificate-degree": factor.degree()}),
            &[
                ("group", spec.label.clone()),
                ("irreducible", "yes".into()),
                (
                    "certificate factor degree",
                    format!("{:?}", factor.degree().unwrap_or(0)),
                ),
            ],
        ),
        Irreducibility::Reducible(w) => {
            let j = w.to_json(&spec.label);
            let basis = j.basis.clone();
            emit(
                cli,
                json!({"label": spec.label, "irreducible": false, "witness": j}),
                &[
                    ("group", spec.label.clone()),
                    ("irreducible", "no".into()),
                    ("invariant subspace", format!("{basis:?}")),
                    ("verified invariant", w.verified_invariant.to_string()),
                ],
            )
        }
    }
    Ok(exit::CONSISTENT)
}

fn expmap(cli: &Cli, p: u64, dim: usize) -> Result<i32, Fail> {
    let f = make_field(p, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut x = FqMatrix::zeros(&f, dim, dim);
    for i in 0..dim {
        for j in i + 1..dim {
            x.set(i, j, f.from_u64(rng.gen_range(0..p)));
        }
    }
    let e = exp_nilpotent(&x, p)?;
    let back = log_unipotent(&e, p)?;
    let show = |m: &FqMatrix| -> Vec<Vec<u64>> {
        m.row_vectors()
            .iter()
            .map(|r| r.iter().map(|a| a.packed()).collect())
            .collect()
    };
    let ok = back == x;
    emit(
        cli,
        json!({"X": show(&x), "exp": show(&e), "log-exp": show(&back), "roundtrip": ok}),
        &[
            ("X", format!("{:?}", show(&x))),
            ("exp X", format!("{:?}", show(&e))),
            ("log exp X", format!("{:?}", show(&back))),
            ("roundtrip", ok.to_string()),
        ],
    );
    Ok(if ok { exit::CONSISTENT } else { exit::INTERNAL })
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Fail> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Fail(exit::INPUT, format!("{t:?}: {e}")))
        })
        .collect()
}

fn weights(cli: &Cli, check: &WeightsCheck) -> Result<i32, Fail> {
    let WeightsCheck::Pairing {
        l,
        rank,
        frobenius,
        delta,
        half,
    } = check;
    let fr = parse_ints(frobenius)?;
    if fr.len() != rank * rank {
        return Err(Fail(
            exit::INPUT,
            format!("frobenius needs {} entries, got {}", rank * rank, fr.len()),
        ));
    }
    let fr: Vec<Vec<i64>> = fr.chunks(*rank).map(|c| c.to_vec()).collect();
    let delta = delta
        .split(';')
        .map(parse_ints)
        .collect::<Result<Vec<_>, _>>()?;
    let t = TorusData::new(*rank, fr, delta)?;
    let cap = adequate::weights::DEFAULT_BOX_CAP;
    let (holds, detail) = if *half {
        match half_bound_separation(&t, *l, cap)? {
            SeparationVerdict::Holds { enumerated } => (true, json!({"enumerated": enumerated})),
            SeparationVerdict::Collision(a, b) => (false, json!({"collision": [a, b]})),
        }
    } else {
        match check_bounded_pairing(&t, *l, cap)? {
            PairingVerdict::Holds { enumerated } => (true, json!({"enumerated": enumerated})),
            PairingVerdict::Counterexample(mu) => (false, json!({"counterexample": mu})),
        }
    };
    emit(
        cli,
        json!({"l": l, "rank": rank, "half": half, "holds": holds, "detail": detail}),
        &[
            (
                "check",
                if *half { "separation" } else { "pairing" }.to_string(),
            ),
            ("holds", holds.to_string()),
            ("detail", detail.to_string()),
        ],
    );
    Ok(if holds {
        exit::CONSISTENT
    } else {
        exit::INCONSISTENT
    })
}

fn write_spec(dir: &Path, name: &str, spec: &GroupSpecFile) -> Result<(), Fail> {
    let file: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect();
    let path = dir.join(format!("{file}.json"));
    fs::write(&path, spec.to_json() + "\n")
        .map_err(|e| Fail(exit::INPUT, format!("{}: {e}", path.display())))?;
    println!("{}", path.display());
    Ok(())
}

fn zoo(out: &Path, use_corpus: bool, ls: &[u64]) -> Result<i32, Fail> {
    fs::create_dir_all(out).map_err(|e| Fail(exit::INPUT, format!("{}: {e}", out.display())))?;
    if use_corpus {
        for (i, e) in corpus()?.iter().enumerate() {
            let params: Vec<String> = e.parameters.iter().map(u64::to_string).collect();
            write_spec(
                out,
                &format!("{i:02}-{}-{}", e.constructor, params.join("-")),
                &e.spec,
            )?;
        }
        return Ok(exit::CONSISTENT);
    }
    for &l in ls {
        if l >= 5 {
            write_spec(out, &format!("sl2-{l}"), &zoo_sl2(l)?)?;
            for m in 2..=3.min(l as usize - 1) {
                write_spec(out, &format!("sl2-sym{m}-{l}"), &zoo_sl2_sym(l, m)?)?;
            }
            let (kept, notes) = zoo_prime_to_l_with_notes(l)?;
            for (i, s) in kept.iter().enumerate() {
                write_spec(out, &format!("coprime-{l}-{i:02}"), s)?;
            }
            for n in notes {
                eprintln!("dropped: {n}");
            }
        }
    }
    Ok(exit::CONSISTENT)
}

fn run(cli: &Cli) -> Result<i32, Fail> {
    match &cli.command {
        Command::Check { file, dir } => check(cli, file.as_deref(), dir.as_deref()),
        Command::Spanss { file } => spanss(cli, file),
        Command::Cohomology { file } => cohomology(cli, file),
        Command::Closure { file } => closure(cli, file),
        Command::Meataxe { file } => meataxe(cli, file),
        Command::Expmap { p, dim } => expmap(cli, *p, *dim),
        Command::Weights { check } => weights(cli, check),
        Command::Zoo { out, corpus, l } => zoo(out, *corpus, l),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}
