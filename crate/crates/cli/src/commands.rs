use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ktf_core::catalog::resolve_model;
use ktf_core::engine::{orbit, partial_order, Separation, Separator};
use ktf_core::search::{find_min_points, SearchConfig, Target};
use ktf_core::set_model::{validate, ModelFile};
use ktf_core::verify::{run_suite, CRITERIA};
use ktf_core::word::{count_kge, enumerate_kge, normalize, p_polynomial};
use ktf_core::{Generator, Model, OpWord};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "ktf",
    version,
    about = "Closure, interior, frontier and complement operators on nested topologies"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the canonical even words for n topologies, grouped by type.
    Enumerate {
        #[arg(short, long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Print the canonical form of each word.
    Normalize {
        #[arg(short, long)]
        n: usize,
        /// Words such as "k1 c i2 f1"; letters compose right to left.
        #[arg(required = true)]
        words: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Sets reachable from one set under a list of generators.
    Orbit {
        /// Built-in name (pmodel, staircase:N:M, ...) or model file.
        #[arg(long)]
        model: String,
        /// Atom names separated by commas, or a hex mask such as 0x1f.
        #[arg(long)]
        set: String,
        /// Generators such as k1,f1,c.
        #[arg(long)]
        gens: String,
        #[command(flatten)]
        out: Output,
    },
    /// The pointwise order between words on a model.
    Poset {
        #[arg(long)]
        model: String,
        /// `canonical` for every canonical even word, or a file with one word per line.
        #[arg(long, default_value = "canonical")]
        words: String,
        /// Emit the Hasse diagram in DOT.
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Find a staircase model and set on which two canonical words differ.
    Separate {
        #[arg(short, long)]
        n: usize,
        first: String,
        second: String,
        #[command(flatten)]
        out: Output,
    },
    /// Run acceptance checks by number, name, or `all`.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        out: Output,
    },
    /// Search small finite spaces for a minimal witness.
    Search {
        #[arg(long, value_parser = parse_target)]
        target: Target,
        /// Largest number of points to try.
        #[arg(long, default_value_t = 5)]
        points: usize,
        /// Allow randomized search past the exhaustive range.
        #[arg(long)]
        bounded: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Seconds for the randomized phase.
        #[arg(long, default_value_t = 60)]
        time_budget: u64,
        /// Write the witness model file here.
        #[arg(long)]
        save: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Print a model and its validation report.
    Model {
        #[arg(long)]
        model: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse()
        .map_err(|e: ktf_core::search::SearchError| e.to_string())
}

fn no_dot(format: Format, command: &str) -> Result<(), CliError> {
    if format == Format::Dot {
        return Err(CliError::Usage(format!("{command} has no dot output")));
    }
    Ok(())
}

fn print_json(w: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    let text =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    writeln!(w, "{text}")?;
    Ok(())
}

fn parse_word(text: &str) -> Result<OpWord, CliError> {
    text.parse().map_err(CliError::from)
}

pub fn run(cli: Cli, w: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Enumerate { n, out } => enumerate(n, out.format, w),
        Command::Normalize { n, words, out } => normalize_words(n, &words, out.format, w),
        Command::Orbit {
            model,
            set,
            gens,
            out,
        } => orbit_cmd(&model, &set, &gens, out.format, w),
        Command::Poset {
            model,
            words,
            dot,
            out,
        } => {
            let format = if dot { Format::Dot } else { out.format };
            poset(&model, &words, format, w)
        }
        Command::Separate {
            n,
            first,
            second,
            out,
        } => separate(n, &first, &second, out.format, w),
        Command::Verify { suite, out } => verify(&suite, out.format, w),
        Command::Search {
            target,
            points,
            bounded,
            seed,
            time_budget,
            save,
            out,
        } => {
            let config = SearchConfig {
                limit: points,
                bounded,
                seed,
                time_budget: Duration::from_secs(time_budget),
            };
            search(target, &config, save, out.format, w)
        }
        Command::Model { model, out } => model_cmd(&model, out.format, w),
    }
}

fn enumerate(n: usize, format: Format, w: &mut dyn Write) -> Result<(), CliError> {
    no_dot(format, "enumerate")?;
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let groups = enumerate_kge(n);
    let counts = count_kge::<u64>(n as u64);
    let total: usize = groups.iter().map(|(_, v)| v.len()).sum();
    if total as u64 != counts.total {
        return Err(CliError::Internal(format!(
            "listed {total} words but the formulas give {}",
            counts.total
        )));
    }
    let p = p_polynomial::<u64>(n as u64);
    match format {
        Format::Json => {
            let types: Vec<Value> = groups
                .iter()
                .map(|(t, words)| {
                    json!({
                        "type": t.label(),
                        "count": words.len(),
                        "words": words.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            print_json(
                w,
                &json!({ "n": n, "total": total, "p": p, "types": types }),
            )
        }
        _ => {
            for (t, words) in &groups {
                let list: Vec<String> = words.iter().map(|x| x.to_string()).collect();
                writeln!(
                    w,
                    "{:<10} {:>6}  {}",
                    t.label(),
                    words.len(),
                    list.join(", ")
                )?;
            }
            writeln!(w, "total {total}")?;
            writeln!(w, "p({n}) = {p}")?;
            Ok(())
        }
    }
}

fn normalize_words(
    n: usize,
    words: &[String],
    format: Format,
    w: &mut dyn Write,
) -> Result<(), CliError> {
    no_dot(format, "normalize")?;
    let mut rows = Vec::with_capacity(words.len());
    for text in words {
        let word = parse_word(text)?;
        let canonical = normalize(&word, n)?;
        rows.push((word, canonical));
    }
    match format {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(a, b)| json!({ "input": a.to_string(), "canonical": b.to_string() }))
                .collect();
            print_json(w, &json!({ "n": n, "results": items }))
        }
        _ => {
            for (_, canonical) in &rows {
                writeln!(w, "{canonical}")?;
            }
            Ok(())
        }
    }
}

fn load(model: &str) -> Result<Model, CliError> {
    Ok(resolve_model(model)?)
}

fn orbit_cmd(
    model: &str,
    set: &str,
    gens: &str,
    format: Format,
    w: &mut dyn Write,
) -> Result<(), CliError> {
    no_dot(format, "orbit")?;
    let m = load(model)?;
    let initial = m.parse_mask(set)?;
    let gens = Generator::parse_list(gens)?;
    let result = orbit(&m, &initial, &gens)?;
    match format {
        Format::Json => {
            let sets: Vec<Value> = result
                .sets
                .iter()
                .zip(&result.witnesses)
                .map(|(s, word)| json!({ "atoms": m.mask_names(s), "mask": s.to_hex(), "witness": word.to_string() }))
                .collect();
            print_json(
                w,
                &json!({
                    "model": model,
                    "initial": m.mask_names(&initial),
                    "generators": result.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    "size": result.len(),
                    "sets": sets,
                }),
            )
        }
        _ => {
            writeln!(w, "{} sets", result.len())?;
            for (s, word) in result.sets.iter().zip(&result.witnesses) {
                writeln!(w, "{:<24} {}", word.to_string(), s.to_hex())?;
            }
            Ok(())
        }
    }
}

fn read_words(spec: &str, n: usize) -> Result<Vec<OpWord>, CliError> {
    if spec == "canonical" {
        return Ok(ktf_core::word::enumerate_kge_flat(n));
    }
    let text =
        std::fs::read_to_string(spec).map_err(|e| CliError::Usage(format!("{spec}: {e}")))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_word)
        .collect()
}

fn poset(model: &str, words: &str, format: Format, w: &mut dyn Write) -> Result<(), CliError> {
    let m = load(model)?;
    let list = read_words(words, m.n())?;
    let result = partial_order(&m, &list)?;
    match format {
        Format::Dot => {
            write!(w, "{}", result.to_dot())?;
            Ok(())
        }
        Format::Json => print_json(w, &result.to_json()),
        Format::Text => {
            writeln!(
                w,
                "{} words, {} classes",
                result.len(),
                result.class_count()
            )?;
            for (i, row) in result.leq_bitstrings().iter().enumerate() {
                writeln!(w, "{row}  {}", result.elements[i])?;
            }
            writeln!(w, "hasse")?;
            for &(a, b) in &result.hasse {
                writeln!(w, "  {} <= {}", result.elements[a], result.elements[b])?;
            }
            Ok(())
        }
    }
}

fn separate(
    n: usize,
    first: &str,
    second: &str,
    format: Format,
    w: &mut dyn Write,
) -> Result<(), CliError> {
    no_dot(format, "separate")?;
    let a = parse_word(first)?;
    let b = parse_word(second)?;
    let mut sep = Separator::new(n)?;
    let outcome = sep.separate(&a, &b)?;
    let Separation::Separated(witness) = outcome else {
        if format == Format::Json {
            print_json(
                w,
                &json!({ "first": first, "second": second, "separated": false }),
            )?;
        }
        return Err(CliError::Failed(format!(
            "{a} and {b} agree on every staircase for n = {n}"
        )));
    };
    let model = sep.model(witness.m);
    match format {
        Format::Json => print_json(
            w,
            &json!({
                "first": a.to_string(),
                "second": b.to_string(),
                "separated": true,
                "staircase": format!("staircase:{n}:{}", witness.m),
                "set": model.mask_names(&witness.set),
                "mask": witness.set.to_hex(),
            }),
        ),
        _ => {
            writeln!(w, "staircase:{n}:{} {}", witness.m, witness.set.to_hex())?;
            Ok(())
        }
    }
}

fn verify(suite: &str, format: Format, w: &mut dyn Write) -> Result<(), CliError> {
    no_dot(format, "verify")?;
    let outcomes = run_suite(suite).ok_or_else(|| {
        let names: Vec<&str> = CRITERIA.iter().map(|c| c.name).collect();
        CliError::Usage(format!(
            "unknown suite {suite:?}; use all, 1-12 or one of {}",
            names.join(", ")
        ))
    })?;
    match format {
        Format::Json => {
            let items: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "id": o.id,
                        "name": o.name,
                        "passed": o.passed,
                        "detail": o.detail,
                        "seconds": o.elapsed.as_secs_f64(),
                        "budget_seconds": o.budget.as_secs(),
                    })
                })
                .collect();
            print_json(w, &json!({ "criteria": items }))?;
        }
        _ => {
            for o in &outcomes {
                writeln!(w, "{o}")?;
            }
        }
    }
    if let Some(o) = outcomes.iter().find(|o| o.errored) {
        return Err(CliError::Internal(format!(
            "criterion {} stopped: {}",
            o.id, o.detail
        )));
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} criteria failed")));
    }
    Ok(())
}

fn search(
    target: Target,
    config: &SearchConfig,
    save: Option<PathBuf>,
    format: Format,
    w: &mut dyn Write,
) -> Result<(), CliError> {
    no_dot(format, "search")?;
    let outcome = find_min_points(target, config)?;
    let model = outcome.model();
    let file = ModelFile::from_model(&model);
    let set = outcome.set.as_ref().map(|s| model.mask_names(s));
    if let Some(path) = save {
        std::fs::write(&path, ktf_core::set_model::to_json(&model))
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    }
    match format {
        Format::Json => print_json(
            w,
            &json!({
                "target": target.name(),
                "points": outcome.points,
                "minimal": outcome.minimal,
                "examined": outcome.examined,
                "set": set,
                "model": file,
            }),
        ),
        _ => {
            let claim = if outcome.minimal {
                "minimal"
            } else {
                "not proven minimal"
            };
            writeln!(
                w,
                "{target}: {} points ({claim}, {} spaces examined)",
                outcome.points, outcome.examined
            )?;
            if let Some(set) = set {
                writeln!(w, "set {{{}}}", set.join(","))?;
            }
            write!(w, "{}", ktf_core::set_model::to_json(&model))?;
            Ok(())
        }
    }
}

fn model_cmd(spec: &str, format: Format, w: &mut dyn Write) -> Result<(), CliError> {
    no_dot(format, "model")?;
    let m = load(spec)?;
    let report = validate(&m);
    match format {
        Format::Json => {
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "sampled": c.sampled, "counterexample": c.counterexample }))
                .collect();
            print_json(
                w,
                &json!({ "model": ModelFile::from_model(&m), "valid": report.is_valid(), "checks": checks }),
            )?;
        }
        _ => {
            writeln!(w, "{} atoms, {} topologies", m.atom_count(), m.n())?;
            write!(w, "{report}")?;
        }
    }
    if report.is_valid() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{spec} fails validation")))
    }
}
