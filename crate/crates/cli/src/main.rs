use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vagroup::catalog;
use vagroup::dual::{CrystalLike, DualChar, Lattice, DEFAULT_CENSUS_BUDGET, DEFAULT_PRIME_BOUND};
use vagroup::mackey::{InducingCharacter, Irreducibility, MonomialRep, DEFAULT_IMAGE_CAP};
use vagroup::rigidity::{
    compare, fingerprint, load_group, survey_wallpaper, CrystalLikeStatus, FingerprintOptions,
};
use vagroup::Error;

#[derive(Parser)]
#[command(
    name = "vagroup",
    version,
    about = "Invariants of virtually abelian groups"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest free denominator for orbit censuses.
    #[arg(long, default_value_t = 3, global = true)]
    denominator: u64,
    /// Largest prime tried when searching for a character with a full orbit.
    #[arg(long, default_value_t = DEFAULT_PRIME_BOUND, global = true)]
    prime_bound: u64,
    /// Maximum number of characters enumerated by one search or census.
    #[arg(long, default_value_t = DEFAULT_CENSUS_BUDGET, global = true)]
    budget: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in groups.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Invariant fingerprint of a catalog group or a group-definition file.
    Fingerprint { source: String },
    /// Field-by-field comparison of two groups.
    Compare { a: String, b: String },
    /// Orbit and irreducible-dimension census at one denominator.
    Census {
        source: String,
        #[arg(short = 'N')]
        n: u64,
    },
    /// Search for a character of the lattice with a full orbit.
    PrincipalChar {
        source: String,
        #[arg(long, value_enum, default_value_t = LatticeArg::Model)]
        lattice: LatticeArg,
    },
    /// Induce a lattice character, written `a/b,c/d;t1,t2`.
    Induce {
        source: String,
        #[arg(long = "char")]
        character: String,
    },
    /// Separation matrix of the 17 wallpaper groups.
    SurveyWallpaper,
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Print the definition file of a catalog entry.
    Export {
        name: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LatticeArg {
    Model,
    Centralizer,
}

enum Status {
    Ok,
    Inconclusive,
}

struct Output {
    text: String,
    json: Value,
    status: Status,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            status: Status::Ok,
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable report")
}

fn options(cli: &Cli) -> FingerprintOptions {
    FingerprintOptions {
        max_denominator: cli.denominator,
        prime_bound: cli.prime_bound,
        budget: cli.budget,
    }
}

fn catalog_list() -> vagroup::Result<Output> {
    let mut text = String::new();
    let mut rows = Vec::new();
    for entry in catalog::entries() {
        let g = entry.group()?;
        text.push_str(&format!(
            "{:<24} rank {}  |D| {:<3} {}\n",
            entry.name,
            g.rank(),
            g.point_group().order(),
            entry.description
        ));
        rows.push(json!({
            "name": entry.name,
            "description": entry.description,
            "rank": g.rank(),
            "point_group_order": g.point_group().order(),
            "reference": entry.reference.is_some(),
        }));
    }
    Ok(Output::ok(text.trim_end().to_string(), Value::Array(rows)))
}

fn census(cli: &Cli, source: &str, n: u64) -> vagroup::Result<Output> {
    let loaded = load_group(source)?;
    let g = &loaded.group;
    let orbits = g.orbit_census(n, cli.budget)?;
    let dims = g.dimension_census(n, cli.budget)?;
    let (dimensions, unsupported) = (dims.dimensions, dims.unsupported_orbits);
    let render = |m: &std::collections::BTreeMap<usize, usize>| {
        m.iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let text = format!(
        "group       {}\nN           {n}\norbits      {}\ndimensions  {}\nunsupported {unsupported}",
        loaded.name,
        render(&orbits),
        render(&dimensions)
    );
    let json = json!({
        "group": loaded.name,
        "denominator": n,
        "orbits": orbits,
        "dimensions": dimensions,
        "unsupported_orbits": unsupported,
    });
    Ok(Output::ok(text, json))
}

fn principal_char(cli: &Cli, source: &str, lattice: LatticeArg) -> vagroup::Result<Output> {
    let loaded = load_group(source)?;
    let g = &loaded.group;
    let lattice = match lattice {
        LatticeArg::Model => Lattice::Model,
        LatticeArg::Centralizer => Lattice::Centralizer,
    };
    let result = g.find_principal_character(lattice, cli.prime_bound, cli.budget)?;
    let status = CrystalLikeStatus::from(&result);
    let text = match &result {
        CrystalLike::Yes(w) => {
            let mut t = format!(
                "{}: character {} at p = {} has orbit size {} = [G : lattice]",
                loaded.name, w.character, w.prime, w.orbit_size
            );
            if let Some(ext) = &w.extension {
                t.push_str(&format!("\nextension to L: {ext}"));
            }
            t
        }
        CrystalLike::No(cert) => {
            let mut t = format!(
                "{}: not crystal-like; every orbit has size at most {} < {}",
                loaded.name, cert.orbit_size_bound, cert.index
            );
            for u in &cert.per_torsion {
                let psi: Vec<String> = u.torsion.iter().map(ToString::to_string).collect();
                t.push_str(&format!(
                    "\n  torsion character ({}) fixed by point {} (fixing subgroup order {})",
                    psi.join(","),
                    u.element,
                    u.fixed_order
                ));
            }
            t
        }
        CrystalLike::Inconclusive {
            prime_bound,
            reason,
        } => {
            format!(
                "{}: inconclusive up to p = {prime_bound}: {reason}",
                loaded.name
            )
        }
    };
    Ok(Output {
        text,
        json: json!({ "group": loaded.name, "result": to_json(&status) }),
        status: match result {
            CrystalLike::Inconclusive { .. } => Status::Inconclusive,
            _ => Status::Ok,
        },
    })
}

fn induce(source: &str, spec: &str) -> vagroup::Result<Output> {
    let loaded = load_group(source)?;
    let g = &loaded.group;
    let chi: DualChar = spec.parse()?;
    let chi = chi.for_group(g)?;
    let rep: MonomialRep = match g.extend_lattice_character(&chi) {
        Some(ext) if g.in_n_k(&ext) => g.induce(&ext)?,
        _ => g.induce_from_lattice(&chi),
    };
    let from = match rep.character() {
        InducingCharacter::Centralizer(ext) => format!("centralizer character {ext}"),
        InducingCharacter::Lattice(c) => format!("lattice character {c}"),
    };
    let irreducibility = rep.check_irreducible(DEFAULT_IMAGE_CAP);
    let verdict = match &irreducibility {
        Irreducibility::Irreducible { image_order } => {
            format!("irreducible (image of order {image_order})")
        }
        Irreducibility::Reducible {
            image_order,
            average,
        } => {
            format!("reducible (image of order {image_order}, average |trace|^2 {average})")
        }
        Irreducibility::Inconclusive { cap } => format!("inconclusive (image larger than {cap})"),
    };
    let mut text = format!(
        "{}: induced from {from}\ndimension {}\n{verdict}",
        loaded.name,
        rep.dimension()
    );
    let mut images = Vec::new();
    for (x, m) in rep.generators().iter().zip(rep.images()) {
        text.push_str(&format!("\n  {}\n    {m}", g.describe(x)));
        images.push(json!({ "generator": g.describe(x), "image": m.to_string() }));
    }
    let json = json!({
        "group": loaded.name,
        "induced_from": from,
        "dimension": rep.dimension(),
        "transversal": rep.transversal(),
        "irreducibility": verdict,
        "images": images,
    });
    Ok(Output {
        text,
        json,
        status: match irreducibility {
            Irreducibility::Inconclusive { .. } => Status::Inconclusive,
            _ => Status::Ok,
        },
    })
}

fn run(cli: &Cli) -> vagroup::Result<Output> {
    match &cli.command {
        Command::Catalog {
            action: CatalogAction::List,
        } => catalog_list(),
        Command::Catalog {
            action: CatalogAction::Export { name },
        } => {
            let text = catalog::export(name)?;
            Ok(Output::ok(
                text.trim_end().to_string(),
                json!({ "name": name, "definition": text }),
            ))
        }
        Command::Fingerprint { source } => {
            let f = fingerprint(&load_group(source)?, &options(cli))?;
            Ok(Output {
                text: f.to_string(),
                json: to_json(&f),
                status: if f.is_inconclusive() {
                    Status::Inconclusive
                } else {
                    Status::Ok
                },
            })
        }
        Command::Compare { a, b } => {
            let fa = fingerprint(&load_group(a)?, &options(cli))?;
            let fb = fingerprint(&load_group(b)?, &options(cli))?;
            let c = compare(&fa, &fb);
            Ok(Output {
                text: c.to_string(),
                json: to_json(&c),
                status: if c.inconclusive {
                    Status::Inconclusive
                } else {
                    Status::Ok
                },
            })
        }
        Command::Census { source, n } => census(cli, source, *n),
        Command::PrincipalChar { source, lattice } => principal_char(cli, source, *lattice),
        Command::Induce { source, character } => induce(source, character),
        Command::SurveyWallpaper => {
            let s = survey_wallpaper(cli.prime_bound, cli.budget)?;
            Ok(Output {
                text: s.to_string(),
                json: to_json(&s),
                status: if s.all_separated {
                    Status::Ok
                } else {
                    Status::Inconclusive
                },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("json output")
                ),
            }
            match out.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Inconclusive => ExitCode::from(2),
            }
        }
        Err(Error::BudgetExceeded { needed, budget }) => {
            eprintln!("inconclusive: {needed} characters needed, budget is {budget}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
