//! `hvb`: batch front-end for homogeneous vector bundle computations.

mod input;
mod table;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hvb_core::bundlecat::{Block, Classification, HomogBundle};
use hvb_core::galois::{CharacterOrbit, CharacterPoint};
use hvb_core::isogeny::{self, IsogenyData, PushforwardReport};
use hvb_core::nilmod::{self, DecompositionReport};
use hvb_core::{Error, NilModule, Result};
use serde_json::{json, Value};

use input::{load, load_bundle, load_isogeny, load_module, read, versioned, Input};
use table::Table;

#[derive(Parser)]
#[command(name = "hvb", version, about = "Homogeneous vector bundles on abelian varieties as modules")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for randomized searches.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Check any input and list violated invariants.
    Validate { file: String },
    /// Direct sum of two modules or two bundles.
    Sum { a: String, b: String },
    /// Tensor product of two modules or two bundles.
    Tensor { a: String, b: String },
    /// Dual of a module or bundle.
    Dual { file: String },
    /// Dimension of Hom between two modules or two bundles.
    Hom { a: String, b: String },
    /// Ext dimensions in degrees 0..=max-degree.
    Ext {
        /// Defaults to the number of generators.
        #[arg(long)]
        max_degree: Option<usize>,
        a: String,
        b: String,
    },
    /// Krull-Schmidt decomposition of a module.
    Decompose { file: String },
    /// Block decomposition of a bundle.
    Blocks { file: String },
    /// Classification flags of a bundle.
    Classify { file: String },
    /// Pull a bundle on the target back along an isogeny.
    Pullback { isogeny: String, bundle: String },
    /// Push a bundle on the source forward along an isogeny.
    Pushforward {
        /// Assert the working character level; refused when insufficient.
        #[arg(long)]
        level: Option<u64>,
        isogeny: String,
        bundle: String,
    },
    /// Frobenius pushforward of the structure sheaf (or a line bundle).
    Frobenius {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        /// File with {"characters": ..., "point": ...} giving the line bundle.
        #[arg(long)]
        base: Option<String>,
    },
    /// Split an isogeny into multiplicative and unipotent stages.
    Factor { isogeny: String },
    /// Orbit of a point, or all orbits when no point is given.
    Orbit {
        /// Character module or ground context.
        file: String,
        /// Comma-separated coordinates.
        #[arg(long, value_delimiter = ',')]
        point: Option<Vec<u64>>,
        /// Inseparable degree of the point.
        #[arg(long, default_value_t = 1)]
        q: u64,
    },
}

enum Report {
    Module(NilModule),
    Bundle(HomogBundle),
    Dimension(usize),
    Dimensions(Vec<usize>),
    Decomposition(DecompositionReport),
    Blocks(Vec<Block>),
    Pushforward(PushforwardReport),
    Classification(Classification),
    Validation { kind: &'static str, violations: Vec<String> },
    Factor(IsogenyData, IsogenyData),
    Orbits(Vec<CharacterOrbit>),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = match run(&cli.command, cli.seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("hvb: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let written = match cli.format {
        Format::Json => to_json(&report).and_then(|v| {
            serde_json::to_writer(&mut out, &v).map_err(|e| Error::input(format!("output: {e}")))?;
            writeln!(out).map_err(|e| Error::input(format!("output: {e}")))
        }),
        Format::Table => to_table(&report, cli.seed)
            .and_then(|t| t.write(&mut out).map_err(|e| Error::input(format!("output: {e}")))),
    };
    let flushed = written.and_then(|_| out.flush().map_err(|e| Error::input(format!("output: {e}"))));
    if let Err(e) = flushed {
        eprintln!("hvb: {e}");
        return ExitCode::from(exit_code(&e));
    }
    if let Report::Validation { violations, .. } = &report {
        if !violations.is_empty() {
            for v in violations {
                eprintln!("hvb: violation: {v}");
            }
            return ExitCode::from(1);
        }
    }
    ExitCode::SUCCESS
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) => 1,
        Error::Unsupported(_) => 2,
    }
}

/// Loads an operand, rejecting modules that violate their invariants.
fn operand(path: &str) -> Result<Input> {
    let item = load(path)?;
    if let Input::Module(m) = &item {
        m.ensure_valid()?;
    }
    Ok(item)
}

fn pair(a: &str, b: &str) -> Result<(Input, Input)> {
    Ok((operand(a)?, operand(b)?))
}

fn mismatch(a: &Input, b: &Input) -> Error {
    Error::input(format!("cannot combine inputs of kinds {:?} and {:?}", a.kind(), b.kind()))
}

fn run(cmd: &Command, seed: u64) -> Result<Report> {
    Ok(match cmd {
        Command::Validate { file } => validate(load(file)?)?,
        Command::Sum { a, b } => match pair(a, b)? {
            (Input::Module(x), Input::Module(y)) => Report::Module(x.direct_sum(&y)?),
            (Input::Bundle(x), Input::Bundle(y)) => Report::Bundle(x.direct_sum(&y)?),
            (x, y) => return Err(mismatch(&x, &y)),
        },
        Command::Tensor { a, b } => match pair(a, b)? {
            (Input::Module(x), Input::Module(y)) => Report::Module(x.tensor(&y)?),
            (Input::Bundle(x), Input::Bundle(y)) => Report::Bundle(x.tensor(&y)?),
            (x, y) => return Err(mismatch(&x, &y)),
        },
        Command::Dual { file } => match operand(file)? {
            Input::Module(m) => Report::Module(m.dual()),
            Input::Bundle(b) => Report::Bundle(b.dual()),
            other => return Err(Error::input(format!("cannot dualize input of kind {:?}", other.kind()))),
        },
        Command::Hom { a, b } => match pair(a, b)? {
            (Input::Module(x), Input::Module(y)) => Report::Dimension(nilmod::hom_dim(&x, &y)?),
            (Input::Bundle(x), Input::Bundle(y)) => Report::Dimension(x.hom_ext_dims(&y, 0)?[0]),
            (x, y) => return Err(mismatch(&x, &y)),
        },
        Command::Ext { max_degree, a, b } => match pair(a, b)? {
            (Input::Module(x), Input::Module(y)) => {
                let d = max_degree.unwrap_or(x.g());
                Report::Dimensions(nilmod::ext_dims(&x, &y, d)?)
            }
            (Input::Bundle(x), Input::Bundle(y)) => {
                let d = max_degree.unwrap_or(x.context().g());
                Report::Dimensions(x.hom_ext_dims(&y, d)?)
            }
            (x, y) => return Err(mismatch(&x, &y)),
        },
        Command::Decompose { file } => {
            let m = load_module(file)?;
            m.ensure_valid()?;
            Report::Decomposition(nilmod::decompose(&m, seed)?)
        }
        Command::Blocks { file } => Report::Blocks(load_bundle(file)?.block_decompose(seed)?),
        Command::Classify { file } => Report::Classification(load_bundle(file)?.classify()),
        Command::Pullback { isogeny: i, bundle } => {
            Report::Bundle(isogeny::pullback(&load_isogeny(i)?, &load_bundle(bundle)?)?)
        }
        Command::Pushforward { level, isogeny: i, bundle } => {
            let iso = load_isogeny(i)?;
            let e = load_bundle(bundle)?;
            if let Some(l) = level {
                check_level(&iso, &e, *l)?;
            }
            Report::Pushforward(isogeny::pushforward(&iso, &e, seed)?)
        }
        Command::Frobenius { g, r, p, n, base } => {
            let base = match base {
                Some(path) => Some(read_base(path)?),
                None => None,
            };
            let base_ref = base.as_ref().map(|(m, x)| (m, x));
            Report::Pushforward(isogeny::frobenius_pushforward(*g, *r, *p, *n, base_ref)?)
        }
        Command::Factor { isogeny: i } => {
            let (m, u) = isogeny::factor_isogeny(&load_isogeny(i)?)?;
            Report::Factor(m, u)
        }
        Command::Orbit { file, point, q } => {
            let chars = match load(file)? {
                Input::Characters(c) => c,
                Input::Context(c) => c.characters().clone(),
                other => return Err(Error::input(format!("orbit needs a character module, got kind {:?}", other.kind()))),
            };
            match point {
                Some(coords) => Report::Orbits(vec![chars.orbit_of(&CharacterPoint::new(coords.clone(), *q))?]),
                None if *q == 1 => Report::Orbits(chars.orbits()?),
                None => return Err(Error::input("--q needs --point")),
            }
        }
    })
}

fn validate(item: Input) -> Result<Report> {
    let kind = item.kind();
    let violations = match &item {
        Input::Module(m) => m.validate()?.iter().map(|v| v.to_string()).collect(),
        Input::Isogeny(i) => i.validate()?.iter().map(|v| v.to_string()).collect(),
        // Bundles, contexts and character modules are checked while parsing.
        Input::Bundle(b) => match b.summands().iter().find_map(|s| match &s.data {
            hvb_core::bundlecat::BlockData::Module(m) => m.ensure_valid().err(),
            _ => None,
        }) {
            Some(e) => vec![e.to_string()],
            None => Vec::new(),
        },
        Input::Characters(_) | Input::Context(_) => Vec::new(),
    };
    Ok(Report::Validation { kind, violations })
}

fn check_level(iso: &IsogenyData, e: &HomogBundle, level: u64) -> Result<()> {
    let needed = isogeny::required_level(iso, e)?;
    if level == 0 || !level.is_multiple_of(needed) {
        return Err(Error::input(format!("torsion level {level} is insufficient: a multiple of {needed} is required")));
    }
    let available = iso.dst.characters().level();
    if !available.is_multiple_of(level) {
        return Err(Error::input(format!(
            "torsion level {level} is not supported by the target's characters (truncated at level {available})"
        )));
    }
    Ok(())
}

fn read_base(path: &str) -> Result<(hvb_core::galois::GaloisModule, CharacterPoint)> {
    let v = read(path)?;
    let obj = v.as_object().ok_or_else(|| Error::input("base must be an object"))?;
    for k in obj.keys() {
        if k != "characters" && k != "point" {
            return Err(Error::input(format!("unknown base key {k:?}")));
        }
    }
    let chars = hvb_core::galois::GaloisModule::from_json(
        obj.get("characters").ok_or_else(|| Error::input("base needs \"characters\""))?,
    )?;
    let point: CharacterPoint =
        serde_json::from_value(obj.get("point").cloned().ok_or_else(|| Error::input("base needs \"point\""))?)
            .map_err(|e| Error::input(format!("point: {e}")))?;
    Ok((chars, point))
}

fn block_json(b: &Block) -> Value {
    json!({
        "orbit": b.orbit,
        "summands": b.summands.iter().map(|s| {
            let mut v = json!({
                "rank": s.rank,
                "multiplicity": s.multiplicity,
                "indecomposable": s.indecomposable,
                "loewy_length": s.loewy_length,
            });
            if let Some(m) = &s.module {
                v["module"] = m.to_json();
            }
            v
        }).collect::<Vec<_>>(),
    })
}

fn to_json(r: &Report) -> Result<Value> {
    Ok(match r {
        Report::Module(m) => versioned(m.to_json()),
        Report::Bundle(b) => versioned(b.to_json()),
        Report::Dimension(d) => json!(d),
        Report::Dimensions(d) => json!(d),
        Report::Decomposition(d) => versioned(d.to_json()),
        Report::Blocks(bs) => versioned(json!({ "blocks": bs.iter().map(block_json).collect::<Vec<_>>() })),
        Report::Pushforward(p) => versioned(p.to_json()),
        Report::Classification(c) => {
            versioned(serde_json::to_value(c).map_err(|e| Error::input(format!("output: {e}")))?)
        }
        Report::Validation { kind, violations } => {
            versioned(json!({ "kind": kind, "valid": violations.is_empty(), "violations": violations }))
        }
        Report::Factor(m, u) => versioned(json!({ "multiplicative": m.to_json(), "unipotent": u.to_json() })),
        Report::Orbits(os) => versioned(json!({ "orbits": os })),
    })
}

const BLOCK_HEADER: [&str; 5] = ["orbit", "rank", "multiplicity", "indecomposable", "loewy_length"];

fn block_rows(t: &mut Table, bs: &[Block]) {
    for b in bs {
        for s in &b.summands {
            t.row(vec![
                b.orbit.to_string(),
                s.rank.to_string(),
                s.multiplicity.to_string(),
                table::flag(s.indecomposable),
                table::count(s.loewy_length),
            ]);
        }
    }
}

fn to_table(r: &Report, seed: u64) -> Result<Table> {
    Ok(match r {
        Report::Module(m) => {
            let mut t = Table::new(&["field", "flavor", "g", "rank", "loewy_length", "socle_dim"]);
            t.row(vec![
                m.field().to_string(),
                format!("{:?}", m.flavor()).to_lowercase(),
                m.g().to_string(),
                m.rank().to_string(),
                m.loewy_length().to_string(),
                m.socle_dim().to_string(),
            ]);
            t
        }
        Report::Bundle(b) => {
            let mut t = Table::new(&BLOCK_HEADER);
            block_rows(&mut t, &b.block_decompose(seed)?);
            t
        }
        Report::Blocks(bs) => {
            let mut t = Table::new(&BLOCK_HEADER);
            block_rows(&mut t, bs);
            t
        }
        Report::Dimension(d) => {
            let mut t = Table::new(&["dim"]);
            t.row(vec![d.to_string()]);
            t
        }
        Report::Dimensions(ds) => {
            let mut t = Table::new(&["degree", "dim"]);
            for (i, d) in ds.iter().enumerate() {
                t.row(vec![i.to_string(), d.to_string()]);
            }
            t
        }
        Report::Decomposition(d) => {
            let mut t = Table::new(&["summand", "rank", "multiplicity", "indecomposable", "loewy_length"]);
            for (i, s) in d.summands.iter().enumerate() {
                t.row(vec![
                    i.to_string(),
                    s.module.rank().to_string(),
                    s.multiplicity.to_string(),
                    "yes".into(),
                    s.module.loewy_length().to_string(),
                ]);
            }
            t
        }
        Report::Pushforward(p) => {
            let mut t = Table::new(&BLOCK_HEADER);
            for b in p.blocks() {
                t.row(vec![
                    b.orbit.to_string(),
                    b.rank().to_string(),
                    b.multiplicity.to_string(),
                    table::flag(b.indecomposable),
                    table::count(b.loewy_length),
                ]);
            }
            t
        }
        Report::Classification(c) => {
            let mut t = Table::new(&["property", "value"]);
            t.row(vec!["semisimple".into(), table::flag(c.semisimple)]);
            t.row(vec!["unipotent".into(), table::flag(Some(c.unipotent))]);
            t.row(vec!["essentially_finite".into(), table::flag(Some(c.essentially_finite))]);
            t.row(vec!["finiteness_exponent".into(), c.finiteness_exponent.to_string()]);
            t.row(vec!["irreducible".into(), table::flag(Some(c.irreducible))]);
            t
        }
        Report::Validation { kind, violations } => {
            let mut t = Table::new(&["kind", "violation"]);
            if violations.is_empty() {
                t.row(vec![kind.to_string(), "none".into()]);
            }
            for v in violations {
                t.row(vec![kind.to_string(), v.clone()]);
            }
            t
        }
        Report::Factor(m, u) => {
            let mut t = Table::new(&["stage", "degree", "separable"]);
            for (name, i) in [("multiplicative", m), ("unipotent", u)] {
                t.row(vec![name.into(), i.computed_degree().to_string(), table::flag(Some(i.is_separable()))]);
            }
            t
        }
        Report::Orbits(os) => {
            let mut t = Table::new(&["orbit", "size", "degree"]);
            for o in os {
                t.row(vec![o.to_string(), o.s().to_string(), o.degree().to_string()]);
            }
            t
        }
    })
}
