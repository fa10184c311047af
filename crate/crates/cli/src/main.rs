use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use tcis::boolean::{
    cip_strength, derive_bijections, t_ci_strength, verify_pair_duality, BooleanPermutation,
};
use tcis::classify::{classify_tcis, Effort, Method};
use tcis::code::{DualDistance, LinearCode};
use tcis::construct::{bounds, mass_formula_check, qc_build, BitOrder, QcSpec};
use tcis::io::{read_file, write_file, CodeBody, CodeFile};
use tcis::partition::{t_cis_partition, PartitionOutcome};
use tcis::z4::{gray_image, lee_min_distance, z4_t_cis_partition, Z4Code};
use tcis::Error;

const EXIT_NO: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

/// Gray images above this many codewords are not enumerated by `z4`.
const MAX_GRAY_IMAGE_WORDS: usize = 1 << 16;

#[derive(Parser)]
#[command(
    name = "tcis",
    version,
    about = "Tools for codes with disjoint information sets"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for parallel enumerations (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a binary code splits into t disjoint information sets.
    CisCheck { file: PathBuf, t: usize },
    /// Print [n,k,d], dual distance and self-orthogonality.
    Report { file: PathBuf },
    /// Derive the linear bijections F_i(x) = x·(L_iᵀ)⁻¹ of a t-CIS code.
    Derive {
        file: PathBuf,
        t: usize,
        /// Write the bijections as F1.perm, F2.perm, … into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Correlation-immunity strength of two or more permutations.
    Cip {
        #[arg(required = true, num_args = 2..)]
        perms: Vec<PathBuf>,
    },
    /// Classify t-CIS [tk, k] codes up to coordinate permutation.
    Classify {
        k: usize,
        t: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Cat)]
        method: MethodArg,
        /// Lift the guards on long enumerations.
        #[arg(long)]
        extended: bool,
        /// Write one code file per class and a table.txt into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lee distance, Gray image and partition test for a Z4 code.
    Z4 {
        file: PathBuf,
        /// Also test for t disjoint information sets.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Distance bounds for t-CIS [tk, k] codes.
    Bounds { k: usize, t: usize },
    /// Check the orbit-counting formula against full enumeration.
    Masscheck { k: usize, t: usize },
    /// Build a one-generator quasi-cyclic code and report its parameters.
    Qc {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = OrderArg::High)]
        bit_order: OrderArg,
        /// Write the expanded generator as a bin file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare dual distance and strength on random permutation pairs.
    Duality {
        k: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Block,
    Cat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    High,
    Low,
}

/// JSON schema shared by `cis-check` and `report`. Index sets are 1-based.
#[derive(Serialize, Default)]
struct CodeReport {
    n: usize,
    k: usize,
    d: Option<usize>,
    dual_d: Option<usize>,
    t: Option<usize>,
    cis: Option<bool>,
    partition: Option<Vec<Vec<usize>>>,
    certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    self_orthogonal: Option<bool>,
}

#[derive(Serialize)]
struct Certificate {
    set: Vec<usize>,
    rank: usize,
}

fn one_based(set: &[usize]) -> Vec<usize> {
    set.iter().map(|&i| i + 1).collect()
}

fn join(set: &[usize]) -> String {
    set.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn print_json(value: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn load_binary(path: &Path) -> tcis::Result<LinearCode> {
    match read_file(path)?.body {
        CodeBody::Binary(c) => Ok(c),
        CodeBody::Qc { spec, .. } => Ok(qc_build(&spec)?.0),
        _ => Err(Error::Unsupported(format!(
            "{} is not a binary code file",
            path.display()
        ))),
    }
}

fn load_perm(path: &Path) -> tcis::Result<BooleanPermutation> {
    match read_file(path)?.body {
        CodeBody::Perm(p) => Ok(p),
        _ => Err(Error::Unsupported(format!(
            "{} is not a perm file",
            path.display()
        ))),
    }
}

fn load_z4(path: &Path) -> tcis::Result<Z4Code> {
    match read_file(path)?.body {
        CodeBody::Z4(c) => Ok(c),
        _ => Err(Error::Unsupported(format!(
            "{} is not a z4 file",
            path.display()
        ))),
    }
}

fn partition_report(out: &PartitionOutcome, report: &mut CodeReport) -> Vec<String> {
    report.cis = Some(out.is_partition());
    match out {
        PartitionOutcome::Partition(sets) => {
            report.partition = Some(sets.iter().map(|s| one_based(s)).collect());
            let mut lines = vec!["YES".to_string()];
            lines.extend(
                sets.iter()
                    .enumerate()
                    .map(|(i, s)| format!("I{}: {}", i + 1, join(&one_based(s)))),
            );
            lines
        }
        PartitionOutcome::Violation { set, rank } => {
            report.certificate = Some(Certificate {
                set: one_based(set),
                rank: *rank,
            });
            vec![
                "NO".to_string(),
                format!("S: {}", join(&one_based(set))),
                format!(
                    "|S| = {} > t·rank(S) = {}·{rank}",
                    set.len(),
                    report.t.unwrap_or(0)
                ),
            ]
        }
    }
}

fn cis_check(cli: &Cli, file: &Path, t: usize) -> tcis::Result<u8> {
    let c = load_binary(file)?;
    let out = t_cis_partition(&c, t)?;
    let mut report = CodeReport {
        n: c.n(),
        k: c.k(),
        t: Some(t),
        ..Default::default()
    };
    let lines = partition_report(&out, &mut report);
    if cli.json {
        print_json(&report);
    } else {
        println!("{}", lines.join("\n"));
    }
    Ok(if out.is_partition() { 0 } else { EXIT_NO })
}

fn report(cli: &Cli, file: &Path) -> tcis::Result<u8> {
    let c = load_binary(file)?;
    let d = c.min_distance(None)?;
    let dual = c.dual_distance(None)?;
    let so = c.is_self_orthogonal();
    if cli.json {
        print_json(&CodeReport {
            n: c.n(),
            k: c.k(),
            d: Some(d),
            dual_d: dual.finite(),
            self_orthogonal: Some(so),
            ..Default::default()
        });
    } else {
        println!("[{},{},{d}]", c.n(), c.k());
        let dual = match dual {
            DualDistance::Finite(v) => v.to_string(),
            DualDistance::Undefined => "∞ (the dual is the zero code)".into(),
        };
        println!("dual distance: {dual}");
        println!("self-orthogonal: {}", if so { "yes" } else { "no" });
    }
    Ok(0)
}

fn derive(cli: &Cli, file: &Path, t: usize, out: Option<&Path>) -> tcis::Result<u8> {
    let c = load_binary(file)?;
    let der = derive_bijections(&c, t)?;
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        for (i, f) in der.bijections.iter().enumerate() {
            write_file(
                dir.join(format!("F{}.perm", i + 1)),
                &CodeFile::new(CodeBody::Perm(f.clone())),
            )?;
        }
    }
    let matrices = der.matrices();
    if cli.json {
        let rows: Vec<Vec<String>> = matrices
            .iter()
            .map(|m| (0..m.nrows()).map(|i| m.row(i).to_string()).collect())
            .collect();
        let sets: Vec<Vec<usize>> = der.sets.iter().map(|s| one_based(s)).collect();
        print_json(&json!({ "t": t, "partition": sets, "matrices": rows }));
    } else {
        for (i, m) in matrices.iter().enumerate() {
            println!("F{} = (L{}ᵀ)⁻¹:", i + 1, i + 1);
            println!("{m}");
        }
    }
    Ok(0)
}

fn cip(cli: &Cli, paths: &[PathBuf]) -> tcis::Result<u8> {
    let fs = paths
        .iter()
        .map(|p| load_perm(p))
        .collect::<tcis::Result<Vec<_>>>()?;
    let s = if fs.len() == 2 {
        cip_strength(&fs[0], &fs[1])?
    } else {
        t_ci_strength(&fs)?
    };
    if cli.json {
        print_json(&json!({ "strength": s.value, "witness": s.witness }));
    } else {
        println!("strength: {}", s.value);
        println!(
            "violating tuple: {}",
            s.witness
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    Ok(0)
}

fn classify(
    cli: &Cli,
    k: usize,
    t: usize,
    method: MethodArg,
    extended: bool,
    out: Option<&Path>,
) -> tcis::Result<u8> {
    let method = match method {
        MethodArg::Block => Method::AppendBlock,
        MethodArg::Cat => Method::AppendCat,
    };
    let effort = if extended {
        Effort::Extended
    } else {
        Effort::Standard
    };
    let result = classify_tcis(k, t, method, effort)?;
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        for (i, class) in result.classes.iter().enumerate() {
            let mut file =
                CodeFile::new(CodeBody::Binary(class.code.clone())).with_groups(vec![k; t])?;
            file.comments.push(format!(
                " class {} of length {}, d = {}, self-orthogonal: {}",
                i + 1,
                t * k,
                class.min_distance,
                class.self_orthogonal
            ));
            write_file(dir.join(format!("class_{:05}.code", i + 1)), &file)?;
        }
        std::fs::write(dir.join("table.txt"), format!("{}\n", result.row))
            .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    }
    if cli.json {
        let cells: Vec<_> = result
            .row
            .cells
            .iter()
            .map(|(d, (so, nso))| json!({ "d": d, "self_orthogonal": so, "other": nso }))
            .collect();
        print_json(
            &json!({ "length": result.row.length, "k": k, "t": t, "cells": cells, "total": result.row.total }),
        );
    } else {
        println!("{}", result.row);
    }
    Ok(0)
}

fn z4(cli: &Cli, file: &Path, t: Option<usize>) -> tcis::Result<u8> {
    let c = load_z4(file)?;
    let lee = lee_min_distance(&c)?;
    let image = match 4usize.checked_pow(c.k() as u32) {
        Some(size) if size <= MAX_GRAY_IMAGE_WORDS => {
            let img = gray_image(&c)?;
            Some((img.n(), img.size(), img.min_distance()?))
        }
        _ => None,
    };
    let mut report = CodeReport {
        n: c.n(),
        k: c.k(),
        d: Some(lee),
        t,
        ..Default::default()
    };
    let lines = match t {
        Some(t) => partition_report(&z4_t_cis_partition(&c, t)?, &mut report),
        None => Vec::new(),
    };
    if cli.json {
        let mut value = serde_json::to_value(&report).expect("serializable");
        value["free"] = json!(c.is_free());
        value["gray_image"] =
            json!(image.map(|(n, size, d)| json!({ "n": n, "size": size, "d": d })));
        print_json(&value);
    } else {
        println!(
            "({},4^{},{lee}) {}",
            c.n(),
            c.k(),
            if c.is_free() { "free" } else { "not free" }
        );
        if let Some((n, size, d)) = image {
            let d = d.map_or("-".to_string(), |d| d.to_string());
            println!("Gray image: ({n},{size},{d})");
        }
        for l in lines {
            println!("{l}");
        }
    }
    Ok(match report.cis {
        Some(false) => EXIT_NO,
        _ => 0,
    })
}

fn bounds_cmd(cli: &Cli, k: usize, t: usize) -> tcis::Result<u8> {
    let b = bounds(k, t)?;
    if cli.json {
        print_json(&json!({
            "k": k,
            "t": t,
            "lower": b.trivial_lower,
            "upper": b.upper(),
            "singleton": b.singleton_upper,
            "plotkin": b.plotkin_upper.to_string(),
            "gv_delta": b.gv_delta,
        }));
    } else {
        println!("lower: {}", b.trivial_lower);
        println!("upper: {}", b.upper());
        println!("singleton: {}", b.singleton_upper);
        println!("plotkin: {}", b.plotkin_upper);
        println!("gv relative distance: {:.6}", b.gv_delta);
    }
    Ok(0)
}

fn masscheck(cli: &Cli, k: usize, t: usize) -> tcis::Result<u8> {
    let r = mass_formula_check(k, t)?;
    if cli.json {
        let classes: Vec<_> = r
            .classes
            .iter()
            .map(
                |c| json!({ "systematic": c.systematic_count, "orbit": c.orbit_count.to_string() }),
            )
            .collect();
        print_json(&json!({
            "k": k,
            "t": t,
            "systematic_total": r.systematic_total,
            "orbit_sum": r.orbit_sum().to_string(),
            "holds": r.holds(),
            "classes": classes,
        }));
    } else {
        println!("classes: {}", r.classes.len());
        println!("orbit sum: {}", r.orbit_sum());
        println!("|GL({k},2)|^{} = {}", t - 1, r.systematic_total);
        println!("{}", if r.holds() { "holds" } else { "FAILS" });
    }
    Ok(if r.holds() { 0 } else { EXIT_NO })
}

fn qc(cli: &Cli, file: &Path, order: OrderArg, out: Option<&Path>) -> tcis::Result<u8> {
    let CodeBody::Qc { spec, tokens } = read_file(file)?.body else {
        return Err(Error::Unsupported(format!(
            "{} is not a qc file",
            file.display()
        )));
    };
    let spec = match order {
        OrderArg::High => spec,
        OrderArg::Low => QcSpec::parse_row(spec.m(), &tokens.join(" "), BitOrder::LowFirst)?,
    };
    let (c, qc_report) = qc_build(&spec)?;
    let d = c.min_distance(None)?;
    let out_cis = t_cis_partition(&c, spec.t())?;
    if let Some(path) = out {
        let file =
            CodeFile::new(CodeBody::Binary(c.clone())).with_groups(vec![spec.m(); spec.t()])?;
        write_file(path, &file)?;
    }
    let gcds: Vec<String> = qc_report.gcds.iter().map(|g| g.to_string()).collect();
    if cli.json {
        print_json(&json!({
            "n": c.n(),
            "k": c.k(),
            "d": d,
            "t": spec.t(),
            "cis": out_cis.is_partition(),
            "all_coprime": qc_report.all_coprime(),
            "gcds": gcds,
        }));
    } else {
        println!("[{},{},{d}]", c.n(), c.k());
        println!(
            "{}-CIS: {}",
            spec.t(),
            if out_cis.is_partition() { "yes" } else { "no" }
        );
        let shared = qc_report.gcds.iter().filter(|g| !g.is_one()).count();
        println!(
            "coprime with x^{} - 1: {} of {}",
            spec.m(),
            spec.t() - shared,
            spec.t()
        );
        for (i, g) in gcds
            .iter()
            .enumerate()
            .filter(|(i, _)| !qc_report.gcds[*i].is_one())
        {
            println!("  gcd(a{}, x^{} - 1) = {g}", i + 1, spec.m());
        }
    }
    Ok(0)
}

fn duality(cli: &Cli, k: usize, samples: usize, seed: u64) -> tcis::Result<u8> {
    if !(1..=tcis::boolean::MAX_PERMUTATION_BITS).contains(&k) {
        return Err(Error::Range(format!("k = {k} is out of range")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_perm = |rng: &mut ChaCha8Rng| -> tcis::Result<BooleanPermutation> {
        let mut table: Vec<u32> = (0..1u32 << k).collect();
        for i in (1..table.len()).rev() {
            table.swap(i, rng.gen_range(0..=i));
        }
        BooleanPermutation::new(k, table)
    };
    let mut failures = Vec::new();
    for i in 0..samples {
        let (f1, f2) = (random_perm(&mut rng)?, random_perm(&mut rng)?);
        let r = verify_pair_duality(&f1, &f2)?;
        if !r.holds() {
            failures.push(i);
        }
    }
    if cli.json {
        print_json(&json!({ "k": k, "samples": samples, "seed": seed, "failures": failures }));
    } else {
        println!("{} of {samples} samples agree", samples - failures.len());
    }
    Ok(if failures.is_empty() { 0 } else { EXIT_NO })
}

fn run(cli: &Cli) -> tcis::Result<u8> {
    match &cli.command {
        Command::CisCheck { file, t } => cis_check(cli, file, *t),
        Command::Report { file } => report(cli, file),
        Command::Derive { file, t, out } => derive(cli, file, *t, out.as_deref()),
        Command::Cip { perms } => cip(cli, perms),
        Command::Classify {
            k,
            t,
            method,
            extended,
            out,
        } => classify(cli, *k, *t, *method, *extended, out.as_deref()),
        Command::Z4 { file, t } => z4(cli, file, *t),
        Command::Bounds { k, t } => bounds_cmd(cli, *k, *t),
        Command::Masscheck { k, t } => masscheck(cli, *k, *t),
        Command::Qc {
            file,
            bit_order,
            out,
        } => qc(cli, file, *bit_order, out.as_deref()),
        Command::Duality { k, samples, seed } => duality(cli, *k, *samples, *seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e @ Error::Infeasible(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INFEASIBLE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
