//! Command-line front end. Each subcommand wraps one library operation;
//! `--json` switches to machine-readable output. Exit codes: 0 success,
//! 1 domain error, 2 usage error (via clap).

use std::collections::BTreeMap;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::actions::{induced_on_k, linear_extension_obstruction, ActionTable};
use crate::exactalg::Rational;
use crate::homs::{
    check_lifting_diagram, make_disc_projection, make_fiber_projection, make_gamma3_projection,
    make_psi_bar, ClassHom,
};
use crate::nilquot::{c2_abelianization, c2_eval, derived_subgroup, make_group};
use crate::presentations::{
    artin_presentation, gamma3_presentation, mixed_presentation, sbgs_presentation,
    surface_presentation, Presentation,
};
use crate::reps::{burau_reduced, burau_unreduced, gassner, RepMatrix};
use crate::words::{parse_word, GroupContext, Letter, QuotFamily, Word};
use crate::{Error, Result};

#[derive(Parser)]
#[command(name = "braidkit", version, about = "Exact computation in surface braid groups")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for sampling subcommands.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupName {
    Artin,
    Surface,
    Fiber,
    Mixed,
    Free,
    Gg,
    Hg,
    Kg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapName {
    /// r_n: surface braids to G_g.
    Rn,
    /// r_kn: mixed braids to H_g.
    Rkn,
    /// P_k: fiber braids to K_g.
    Pk,
    /// psi-bar: H_g to G_g.
    Psibar,
    /// p_k: disc braids to q/t exponents.
    Pd,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresName {
    Artin,
    Surface,
    Sbgs,
    Mixed,
    Gamma3Gg,
    Gamma3Hg,
    Gamma3Kg,
}

#[derive(Args, Clone, Copy)]
struct Params {
    #[arg(long, default_value_t = 0)]
    g: usize,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a word and print its free reduction.
    Parse {
        #[arg(long, value_enum)]
        group: GroupName,
        #[command(flatten)]
        params: Params,
        word: String,
    },
    /// Normal form in a class-2 quotient (G_g, H_g, K_g).
    Nf {
        #[arg(long, value_enum)]
        group: GroupName,
        #[command(flatten)]
        params: Params,
        word: String,
    },
    /// Apply a named projection to a braid word.
    Project {
        #[arg(long, value_enum)]
        map: MapName,
        #[command(flatten)]
        params: Params,
        word: String,
    },
    /// Conjugate a fiber word by an acting word of the base.
    Act {
        #[command(flatten)]
        params: Params,
        /// Acting word over the base surface braid group.
        #[arg(long)]
        by: String,
        word: String,
    },
    /// Induced automorphism of K_g under one acting letter.
    Induced {
        #[command(flatten)]
        params: Params,
        /// Single acting letter, e.g. "B1" or "A2^-1".
        #[arg(long)]
        by: String,
    },
    /// Linear-extension obstruction report.
    Obstruction {
        #[command(flatten)]
        params: Params,
    },
    /// Unreduced (or reduced) Burau matrix of a braid word.
    Burau {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        reduced: bool,
        /// Exact evaluation, e.g. "t=1" or "t=-1/2".
        #[arg(long)]
        eval: Option<String>,
        word: String,
    },
    /// Gassner matrix of a pure braid word.
    Gassner {
        #[arg(long)]
        n: usize,
        /// Exact evaluation, e.g. "t1=2,t2=1/3".
        #[arg(long)]
        eval: Option<String>,
        word: String,
    },
    /// Abelian invariants of a presentation or class-2 group.
    Abelian {
        #[arg(long, value_enum)]
        of: PresName,
        #[command(flatten)]
        params: Params,
        /// Invariants of the derived subgroup instead (class-2 groups only).
        #[arg(long)]
        derived: bool,
    },
    /// Verify presentations and homomorphisms relator by relator.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Check the disc-to-fiber lifting square on random words.
    Diagram {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum VerifyWhat {
    Presentation {
        #[arg(long, value_enum)]
        kind: PresName,
        #[command(flatten)]
        params: Params,
    },
    Hom {
        #[arg(long, value_enum)]
        map: MapName,
        #[command(flatten)]
        params: Params,
    },
}

fn context_of(group: GroupName, p: Params) -> Result<GroupContext> {
    let ctx = match group {
        GroupName::Artin => GroupContext::ArtinB { n: p.n },
        GroupName::Surface => GroupContext::SurfaceB { g: p.g, n: p.n },
        GroupName::Fiber => GroupContext::FiberB { k: p.k, g: p.g, n: p.n },
        GroupName::Mixed => GroupContext::MixedB { k: p.k, n: p.n, g: p.g },
        GroupName::Free => GroupContext::FreeF { n: p.n },
        GroupName::Gg => GroupContext::Class2Quot { family: QuotFamily::Gg, g: p.g },
        GroupName::Hg => GroupContext::Class2Quot { family: QuotFamily::Hg, g: p.g },
        GroupName::Kg => GroupContext::Class2Quot { family: QuotFamily::Kg, g: p.g },
    };
    ctx.validate()?;
    Ok(ctx)
}

fn quot_family(group: GroupName) -> Result<QuotFamily> {
    match group {
        GroupName::Gg => Ok(QuotFamily::Gg),
        GroupName::Hg => Ok(QuotFamily::Hg),
        GroupName::Kg => Ok(QuotFamily::Kg),
        _ => Err(Error::InvalidParameters("nf needs --group gg|hg|kg".into())),
    }
}

fn presentation_of(kind: PresName, p: Params) -> Result<Presentation> {
    match kind {
        PresName::Artin => artin_presentation(p.n),
        PresName::Surface => surface_presentation(p.g, p.n),
        PresName::Sbgs => sbgs_presentation(p.k, p.g, p.n),
        PresName::Mixed => mixed_presentation(p.k, p.n, p.g),
        PresName::Gamma3Gg => gamma3_presentation(QuotFamily::Gg, p.g),
        PresName::Gamma3Hg => gamma3_presentation(QuotFamily::Hg, p.g),
        PresName::Gamma3Kg => gamma3_presentation(QuotFamily::Kg, p.g),
    }
}

fn class_hom_of(map: MapName, p: Params) -> Result<ClassHom> {
    match map {
        MapName::Rn => make_gamma3_projection(QuotFamily::Gg, p.g, 0, p.n),
        MapName::Rkn => make_gamma3_projection(QuotFamily::Hg, p.g, p.k, p.n),
        MapName::Pk => make_fiber_projection(p.g, p.k, p.n),
        MapName::Psibar => make_psi_bar(p.g),
        MapName::Pd => Err(Error::InvalidParameters("p_k is not a class hom".into())),
    }
}

fn parse_assignment(text: &str) -> Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for piece in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (var, val) = piece
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameters(format!("bad assignment {piece:?}")))?;
        let val = val.trim();
        let rat = if let Some((num, den)) = val.split_once('/') {
            Rational::new(
                BigInt::from_str(num.trim())
                    .map_err(|e| Error::InvalidParameters(e.to_string()))?,
                BigInt::from_str(den.trim())
                    .map_err(|e| Error::InvalidParameters(e.to_string()))?,
            )
        } else {
            Rational::from_integer(
                BigInt::from_str(val).map_err(|e| Error::InvalidParameters(e.to_string()))?,
            )
        };
        out.insert(var.trim().to_string(), rat);
    }
    Ok(out)
}

fn single_letter(w: &Word) -> Result<Letter> {
    match w.letters() {
        [l] => Ok(*l),
        _ => Err(Error::InvalidParameters(format!("expected a single letter, got {w}"))),
    }
}

fn seed_from_env() -> u64 {
    std::env::var("SBK_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

fn print_matrix(m: &RepMatrix, eval: Option<&str>, json: bool) -> Result<()> {
    match eval {
        Some(text) => {
            let values = m.specialize(&parse_assignment(text)?)?;
            if json {
                let rows: Vec<Vec<String>> = values
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect())
                    .collect();
                println!("{}", serde_json::json!({ "n": m.n, "entries": rows }));
            } else {
                for row in &values {
                    let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    println!("[{}]", cells.join(", "));
                }
            }
        }
        None if json => println!("{}", m.to_json()),
        None => {
            for row in &m.entries {
                let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                println!("[{}]", cells.join(", "));
            }
        }
    }
    Ok(())
}

/// Run `samples` across `jobs` threads, each seeded independently, and
/// fold the pass flags.
fn parallel_samples<F>(samples: usize, jobs: usize, seed: u64, f: F) -> Result<bool>
where
    F: Fn(usize, u64) -> Result<bool> + Sync,
{
    let jobs = jobs.max(1).min(samples.max(1));
    let per = samples.div_ceil(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let f = &f;
                scope.spawn(move || f(per.min(samples.saturating_sub(j * per)), seed + j as u64))
            })
            .collect();
        let mut pass = true;
        for h in handles {
            pass &= h.join().map_err(|_| Error::Internal("worker panicked".into()))??;
        }
        Ok(pass)
    })
}

pub fn run() -> Result<()> {
    let cli = Cli::parse();
    let json = cli.json;
    match cli.command {
        Command::Parse { group, params, word } => {
            let ctx = context_of(group, params)?;
            let w = parse_word(&word, ctx)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({ "context": ctx.to_string(), "word": w.to_string() })
                );
            } else {
                println!("{w}");
            }
        }
        Command::Nf { group, params, word } => {
            let family = quot_family(group)?;
            let grp = make_group(family, params.g)?;
            let w = parse_word(&word, grp.context())?;
            let x = c2_eval(&grp, &w)?;
            if json {
                println!("{}", x.to_json(&grp));
            } else {
                println!("{x}");
            }
        }
        Command::Project { map, params, word } => match map {
            MapName::Pd => {
                let pd = make_disc_projection(params.k, params.n)?;
                let w = parse_word(&word, pd.source())?;
                let img = pd.apply(&w)?;
                if json {
                    println!("{}", serde_json::to_string(&img).expect("serializable"));
                } else {
                    println!("{img}");
                }
            }
            _ => {
                let hom = class_hom_of(map, params)?;
                let w = parse_word(&word, hom.source())?;
                let x = hom.apply(&w)?;
                if json {
                    println!("{}", x.to_json(hom.target()));
                } else {
                    println!("{x}");
                }
            }
        },
        Command::Act { params, by, word } => {
            let table = ActionTable::new(params.g, params.k, params.n)?;
            let base = GroupContext::SurfaceB { g: params.g, n: params.n };
            let beta = parse_word(&by, base)?;
            let w = parse_word(&word, table.fiber_context())?;
            let out = table.act_word(&beta, &w)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({ "by": beta.to_string(), "image": out.to_string() })
                );
            } else {
                println!("{out}");
            }
        }
        Command::Induced { params, by } => {
            let base = GroupContext::SurfaceB { g: params.g, n: params.n };
            let beta = single_letter(&parse_word(&by, base)?)?;
            let kind = match beta.gen.kind {
                crate::words::GenKind::Sigma => crate::words::GenKind::SigmaTilde,
                crate::words::GenKind::A => crate::words::GenKind::ATilde,
                crate::words::GenKind::B => crate::words::GenKind::BTilde,
                other => other,
            };
            let beta = Letter::new(crate::words::Generator::new(kind, beta.gen.index), beta.exp);
            let map = induced_on_k(beta, params.g, params.k, params.n)?;
            if json {
                println!("{}", map.to_json());
            } else {
                for gen in map.group().context().generators() {
                    println!("{gen} -> {}", map.image_of(gen)?);
                }
            }
        }
        Command::Obstruction { params } => {
            let report = linear_extension_obstruction(params.g, params.k, params.n)?;
            if json {
                println!("{}", serde_json::to_string(&report).expect("serializable"));
            } else {
                println!(
                    "induced({}) sends [a1] to zeta^{} * [a1]; zeta has infinite order; \
                     obstructed = {}",
                    report.beta, report.zeta_exponent, report.obstructed
                );
            }
        }
        Command::Burau { n, reduced, eval, word } => {
            let b = parse_word(&word, GroupContext::ArtinB { n })?;
            let m = if reduced { burau_reduced(&b)? } else { burau_unreduced(&b)? };
            print_matrix(&m, eval.as_deref(), json)?;
        }
        Command::Gassner { n, eval, word } => {
            let b = parse_word(&word, GroupContext::ArtinB { n })?;
            let m = gassner(&b)?;
            print_matrix(&m, eval.as_deref(), json)?;
        }
        Command::Abelian { of, params, derived } => {
            let descriptor = match (of, derived) {
                (PresName::Gamma3Gg, true) => derived_subgroup(&make_group(QuotFamily::Gg, params.g)?),
                (PresName::Gamma3Hg, true) => derived_subgroup(&make_group(QuotFamily::Hg, params.g)?),
                (PresName::Gamma3Kg, true) => derived_subgroup(&make_group(QuotFamily::Kg, params.g)?),
                (PresName::Gamma3Gg, false) => c2_abelianization(&make_group(QuotFamily::Gg, params.g)?),
                (PresName::Gamma3Hg, false) => c2_abelianization(&make_group(QuotFamily::Hg, params.g)?),
                (PresName::Gamma3Kg, false) => c2_abelianization(&make_group(QuotFamily::Kg, params.g)?),
                (_, true) => {
                    return Err(Error::InvalidParameters(
                        "--derived applies to gamma3 groups only".into(),
                    ))
                }
                (kind, false) => {
                    crate::exactalg::abelian_invariants(&presentation_of(kind, params)?)
                }
            };
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "free_rank": descriptor.free_rank,
                        "torsion": descriptor.torsion,
                        "display": descriptor.to_string(),
                    })
                );
            } else {
                println!("{descriptor}");
            }
        }
        Command::Verify { what } => match what {
            VerifyWhat::Presentation { kind, params } => {
                let p = presentation_of(kind, params)?;
                if json {
                    println!("{}", p.to_json());
                } else {
                    println!(
                        "{}: {} generators, {} relators, all well formed",
                        p.context(),
                        p.generators().len(),
                        p.relators().len()
                    );
                }
            }
            VerifyWhat::Hom { map, params } => {
                let hom = class_hom_of(map, params)?;
                if json {
                    println!(
                        "{}",
                        serde_json::json!({
                            "name": hom.name(),
                            "source": hom.source().to_string(),
                            "verified": true,
                        })
                    );
                } else {
                    println!("{}: all relators map to the identity", hom.name());
                }
            }
        },
        Command::Diagram { params, samples } => {
            let seed = seed_from_env();
            let pass = parallel_samples(samples, cli.jobs, seed, |count, seed| {
                Ok(check_lifting_diagram(params.g, params.k, params.n, count, seed)?.pass)
            })?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({ "samples": samples, "pass": pass })
                );
            } else {
                println!("{samples} samples: {}", if pass { "pass" } else { "FAIL" });
            }
            if !pass {
                return Err(Error::Internal("lifting diagram failed".into()));
            }
        }
    }
    Ok(())
}
