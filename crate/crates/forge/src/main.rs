use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use forge::json::{model_from_json, page_json};
use forge::manifest::{reproduce, Manifest};
use forge::{window_or, ForgeError, DEFAULT_WINDOW};
use forge_core::ahss::{self, D5Case, Page, SpectrumSpec};
use forge_core::emspaces::{cx_group, parse_class, z2_basis, SpaceSpec, CX_WINDOW};
use forge_core::fusionalg::{
    algebra_objects, cheshire_square, is_invertible, m_square_constraint, mme_table, parse_self_braiding, Sector,
};
use forge_core::groupcoh::{cohomology, Coefficients, FiniteAbelianGroup};
use forge_core::steenrod::{adem_reduce_with, parse_word, Strategy};
use forge_core::twogroups::{self as tg, Particle, ReparamAction, Splitting};

#[derive(Parser)]
#[command(name = "forge", version, about = "Steenrod calculus, twisted AHSS pages and braided 2-group classification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduce a word of squares to admissible form, e.g. "Sq2Sq2" or "2,2".
    Steenrod {
        word: String,
        #[arg(long, value_enum, default_value = "leftmost")]
        strategy: StrategyArg,
    },
    /// Cohomology of a product of Eilenberg-MacLane spaces.
    Cohomology {
        #[arg(long)]
        space: String,
        #[arg(long)]
        degree: u32,
        /// z2 lists a basis; cx gives the C^× group with its summands.
        #[arg(long, default_value = "z2")]
        coeff: String,
    },
    /// Cohomology of a finite abelian group from the bar complex.
    Groupcoh {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "cx")]
        coeff: String,
        #[arg(long)]
        degree: usize,
    },
    /// Twisted Atiyah-Hirzebruch spectral sequences.
    Ahss {
        #[command(subcommand)]
        cmd: AhssCmd,
    },
    /// Extension classes and their reparameterization orbits.
    Classify {
        #[arg(long, value_enum)]
        particles: ParticleArg,
        /// Drop the requirement that the EM term appears.
        #[arg(long)]
        no_detectability: bool,
    },
    /// Decide S or T for a fermionic class such as "Sq2E + EM + Sq2Sq1M".
    Discriminate {
        #[arg(long)]
        alpha: String,
    },
    /// Galois descent options and their orbits.
    Galois {
        /// Diagnostic mode without the m <-> m' exchange.
        #[arg(long)]
        no_exchange: bool,
        #[arg(long)]
        json: bool,
    },
    /// The closing long exact sequence in one d5 case.
    WittLes {
        #[arg(long)]
        case: String,
    },
    /// Algebra objects and fusion rules in pointed braided categories.
    Fusion {
        #[command(subcommand)]
        cmd: FusionCmd,
    },
    /// Undetectable strings in a model given as JSON (inline or a file path).
    ScanDetectability {
        #[arg(long)]
        model: String,
    },
    /// Run a result manifest and compare every entry.
    Reproduce {
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Comma-separated ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum AhssCmd {
    Run {
        #[arg(long)]
        base: String,
        #[arg(long, default_value = "SH")]
        spectrum: String,
        #[arg(long)]
        twist: Option<String>,
        /// Defaults to FORGE_WINDOW, then 6.
        #[arg(long)]
        window: Option<u32>,
        /// 2, 3 or inf.
        #[arg(long, default_value = "2")]
        page: String,
        /// d5-vanishes or d5-nonzero.
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum FusionCmd {
    /// Enumerate (K, α) and decide invertibility.
    Algebras {
        #[arg(long, default_value = "Z2xZ2")]
        group: String,
        /// Self-braidings, e.g. "f:-1,e:-1,fe:+1".
        #[arg(long, default_value = "f:-1,e:-1,fe:+1")]
        q: String,
    },
    /// c ⊗ c for the Cheshire string.
    Cheshire {
        #[arg(long, value_enum)]
        sector: SectorArg,
    },
    /// Allowed values of m ⊗ m.
    MSquare {
        /// Control case with β_{c,c} trivial.
        #[arg(long)]
        control: bool,
    },
    /// The sixteen minimal modular extensions of super vector spaces.
    Mme,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Leftmost,
    Rightmost,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParticleArg {
    Boson,
    Fermion,
}

#[derive(Clone, Copy, ValueEnum)]
enum SectorArg {
    Bosonic,
    Fermionic,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<ExitCode, ForgeError> {
    match cmd {
        Cmd::Steenrod { word, strategy } => {
            let w = parse_word(&word)?;
            let s = match strategy {
                StrategyArg::Leftmost => Strategy::Leftmost,
                StrategyArg::Rightmost => Strategy::Rightmost,
            };
            let r = adem_reduce_with(&w, s);
            println!("{}", if r.is_zero() { "0".to_string() } else { r.to_string() });
        }
        Cmd::Cohomology { space, degree, coeff } => {
            let s = Arc::new(SpaceSpec::parse(&space)?);
            match coeff.to_ascii_lowercase().as_str() {
                "z2" => {
                    let basis = z2_basis(&s, degree)?;
                    println!("H^{degree}({s}; Z_2): dimension {}", basis.len());
                    for b in basis {
                        println!("  {b}");
                    }
                }
                "cx" | "c*" => {
                    if degree > CX_WINDOW {
                        eprintln!("note: C^× groups are validated through degree {CX_WINDOW}");
                    }
                    let g = cx_group(&s, degree)?;
                    println!("H^{degree}({s}; C^×) = {}", g.group);
                    for m in &g.summands {
                        println!("  {}", m.label());
                    }
                    for k in &g.reduction_kernel {
                        println!("  trivial in C^×: {k}");
                    }
                }
                other => return Err(ForgeError::Usage(format!("unknown coefficients {other:?}, use z2 or cx"))),
            }
        }
        Cmd::Groupcoh { group, coeff, degree } => {
            let g = FiniteAbelianGroup::parse(&group)?;
            let m = Coefficients::parse(&coeff).ok_or_else(|| ForgeError::Usage(format!("unknown coefficients {coeff:?}")))?;
            println!("H^{degree}({g}; {coeff}) = {}", cohomology(&g, m, degree)?);
        }
        Cmd::Ahss { cmd: AhssCmd::Run { base, spectrum, twist, window, page, case, json } } => {
            let base = Arc::new(SpaceSpec::parse(&base)?);
            let spec = SpectrumSpec::by_name(&spectrum)?.twisted(twist.as_deref());
            let window = match window {
                Some(w) => w,
                None => window_or(DEFAULT_WINDOW)?,
            };
            let case = case.as_deref().map(D5Case::parse).transpose()?;
            let page = Page::parse(&page).ok_or_else(|| ForgeError::Usage(format!("unknown page {page:?}")))?;
            let state = ahss::run(&base, &spec, window, case)?;
            if json {
                let mut v = page_json(&state, page)?;
                let abut: Vec<String> =
                    (0..=window).map(|n| ahss::abutment(&state, n).map(|a| a.to_string())).collect::<Result<_, _>>()?;
                v["abutments"] = serde_json::json!(abut);
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                print!("{}", ahss::emit_page(&state, page)?);
                for n in 0..=window {
                    println!("{}", ahss::abutment(&state, n)?);
                }
            }
        }
        Cmd::Classify { particles, no_detectability } => {
            let p = match particles {
                ParticleArg::Boson => Particle::Boson,
                ParticleArg::Fermion => Particle::Fermion,
            };
            let cands = tg::enumerate_extensions(p, !no_detectability);
            println!("H^5({}; C^×) = {}", tg::split_space(), tg::extension_group()?.group);
            for c in &cands {
                println!("candidate: {}", tg::normal_form(&c.alpha)?);
            }
            let classes: Vec<_> = cands.iter().map(|c| c.alpha.clone()).collect();
            let orbits = tg::orbits(&classes, ReparamAction::STANDARD)?;
            println!("orbits: {}", orbits.len());
            for (i, o) in orbits.iter().enumerate() {
                let names: Vec<String> = o.iter().map(|c| tg::normal_form(c).map(|c| c.to_string())).collect::<Result<_, _>>()?;
                let tag = if p == Particle::Fermion {
                    format!(" [{}]", tg::discriminate_ST(&tg::BraidedTwoGroup::from_alpha(o[0].clone(), Splitting::MagneticBosons))?)
                } else {
                    String::new()
                };
                println!("  {i}: {{{}}}{tag}", names.join(", "));
            }
        }
        Cmd::Discriminate { alpha } => {
            let a = parse_class(&tg::split_space(), &alpha)?;
            let g = tg::BraidedTwoGroup::from_alpha(a, Splitting::MagneticBosons);
            println!("{}", tg::discriminate_ST(&g)?);
        }
        Cmd::Galois { no_exchange, json } => {
            let r = tg::galois_options(!no_exchange)?;
            if json {
                let orbits: Vec<_> = r
                    .orbits
                    .iter()
                    .map(|o| {
                        serde_json::json!({
                            "label": o.label,
                            "members": o.members.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                            "anomaly": o.anomaly,
                        })
                    })
                    .collect();
                let raw: Vec<String> = r.raw.iter().map(|o| o.to_string()).collect();
                println!("{}", serde_json::to_string_pretty(&serde_json::json!({"raw": raw, "orbits": orbits}))?);
            } else {
                println!("raw options: {}", r.raw.len());
                for o in &r.raw {
                    println!("  {o}");
                }
                println!("orbits: {}", r.orbits.len());
                for o in &r.orbits {
                    let m: Vec<String> = o.members.iter().map(|m| m.to_string()).collect();
                    println!("  {}: {}  anomaly {}", o.label, m.join(" "), o.anomaly);
                }
            }
        }
        Cmd::WittLes { case } => {
            let w = tg::witt_les(D5Case::parse(&case)?)?;
            for l in &w.lines {
                println!("{l}");
            }
        }
        Cmd::Fusion { cmd } => fusion(cmd)?,
        Cmd::ScanDetectability { model } => {
            let text = if model.trim_start().starts_with('{') { model } else { std::fs::read_to_string(&model)? };
            let m = model_from_json(&text)?;
            let r = tg::detectability_scan(&m)?;
            for x in &r.undetectable {
                println!("undetectable string {x:?}");
            }
            if r.electron_undetectable {
                println!("undetectable particle e: no string links with it");
            }
            if r.passes() {
                println!("remote detectability holds");
            } else {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Reproduce { manifest, only, json } => {
            let m = match manifest {
                Some(p) => Manifest::load(&p)?,
                None => Manifest::builtin(),
            };
            let start = Instant::now();
            let outcomes = reproduce(&m, &only)?;
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if json {
                println!("{}", serde_json::to_string_pretty(&outcomes)?);
            } else {
                for o in &outcomes {
                    if o.passed {
                        println!("PASS {} ({} ms): {}", o.id, o.millis, o.observed);
                    } else {
                        println!("FAIL {} ({} ms)\n  expected: {}\n  observed: {}", o.id, o.millis, o.expected, o.observed);
                    }
                }
                println!("{} of {} entries pass in {:.2} s", outcomes.len() - failed, outcomes.len(), start.elapsed().as_secs_f64());
            }
            if failed > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn fusion(cmd: FusionCmd) -> Result<(), ForgeError> {
    match cmd {
        FusionCmd::Algebras { group, q } => {
            let g = FiniteAbelianGroup::parse(&group)?;
            let cat = parse_self_braiding(&g, &q)?;
            let objs = algebra_objects(&cat)?;
            for o in &objs {
                let v = if is_invertible(o, &cat)? { "invertible" } else { "not invertible" };
                println!("({}): {v}", o.label(&cat));
            }
        }
        FusionCmd::Cheshire { sector } => {
            let s = match sector {
                SectorArg::Bosonic => Sector::Bosonic,
                SectorArg::Fermionic => Sector::Fermionic,
            };
            println!("{}", cheshire_square(s));
        }
        FusionCmd::MSquare { control } => {
            let r = m_square_constraint(false, !control);
            for a in &r.allowed {
                println!("{a}");
            }
            println!("({})", r.witness);
        }
        FusionCmd::Mme => {
            for e in mme_table() {
                println!("k = {:>2}  {:?}  c = {}", e.k, e.kind, e.central_charge());
            }
        }
    }
    Ok(())
}
