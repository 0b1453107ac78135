//! The `prim-lattice` command-line front end.
//!
//! Every JSON-valued flag accepts inline JSON, a file path, `@path`, or `@-`
//! for standard input. Results go to stdout as canonical JSON (sorted keys);
//! diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 oracle mismatch.

use std::ffi::OsString;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::Error;
use crate::graph::{DirectedGraph, RawGraph};
use crate::ideal::{
    closure_contains, contained_in_prim, enumerate_primitive_strata, hull, hull_to_pair, pair_join,
    pair_leq, pair_meet, GaugeLattice, Hull, HullEntryJson, IdealPair, PairJson, PrimitiveIdeal,
    PrimitiveJson,
};
use crate::oracle;
use crate::tails::enumerate_maximal_tails;

#[derive(Parser, Debug)]
#[command(
    name = "prim-lattice",
    version,
    about = "Ideal lattice calculator for graph C*-algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphArg {
    /// Graph JSON: {"vertices": [...], "edges": [{"id", "src", "rng"}]}
    #[arg(short = 'g', long = "graph")]
    graph: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a graph and print it in canonical form
    Validate(GraphArg),
    /// List the maximal tails
    Tails(GraphArg),
    /// List the strata of the primitive ideal space
    Prims(GraphArg),
    /// List the saturated hereditary sets
    SatHered(GraphArg),
    /// Decide containment of two ideals given as pairs
    Leq {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Intersection of a list of ideal pairs
    Meet {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        pairs: String,
    },
    /// Closed span of a list of ideal pairs
    Join {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        pairs: String,
    },
    /// Primitive ideals containing an ideal pair
    Hull {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        pair: String,
    },
    /// Ideal pair with a given hull
    FromHull {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        hull: String,
    },
    /// Decide whether a primitive ideal lies in the closure of a set of them
    Closure {
        #[command(flatten)]
        graph: GraphArg,
        /// List of primitive ideals
        #[arg(short = 'X', long = "set")]
        set: String,
        #[arg(long)]
        target: String,
    },
    /// Decide whether an ideal pair is contained in a primitive ideal
    Contains {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        pair: String,
        #[arg(long)]
        prim: String,
    },
    /// Lattice of gauge-invariant ideals (saturated hereditary sets)
    GaugeLattice {
        #[command(flatten)]
        graph: GraphArg,
        /// Emit the Hasse diagram in DOT format
        #[arg(long)]
        dot: bool,
    },
    /// Run the brute-force and coherence checks on randomized samples
    Oracle {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }
}

/// Runs against the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(
        args,
        &mut io::stdin().lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

pub fn run_with<I, T>(
    args: I,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut input = Inputs { stdin, used: false };
    match dispatch(cli.command, &mut input) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) => {
                    let _ = writeln!(err, "usage error: {msg}");
                }
                Failure::Domain(e) => {
                    let _ = writeln!(err, "error: {e}");
                }
                Failure::Mismatch(report) => {
                    let _ = out.write_all(report.as_bytes());
                    let _ = writeln!(err, "oracle mismatch");
                }
            }
            failure.exit_code()
        }
    }
}

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    used: bool,
}

impl Inputs<'_> {
    fn text(&mut self, arg: &str) -> Result<String, Failure> {
        let trimmed = arg.trim_start();
        if arg == "@-" || arg == "-" {
            if self.used {
                return Err(Failure::Usage(
                    "standard input can be read only once".into(),
                ));
            }
            self.used = true;
            let mut buf = String::new();
            self.stdin
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
            return Ok(buf);
        }
        if trimmed.starts_with(['{', '[', '"']) {
            return Ok(arg.to_string());
        }
        let path = arg.strip_prefix('@').unwrap_or(arg);
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }

    fn json<T: DeserializeOwned>(&mut self, arg: &str, what: &str) -> Result<T, Failure> {
        let text = self.text(arg)?;
        serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("malformed {what} JSON: {e}")))
    }

    fn graph(&mut self, arg: &GraphArg) -> Result<DirectedGraph, Failure> {
        let raw: RawGraph = self.json(&arg.graph, "graph")?;
        Ok(raw.validate()?)
    }

    fn pair(&mut self, graph: &DirectedGraph, arg: &str) -> Result<IdealPair, Failure> {
        Ok(self.json::<PairJson>(arg, "ideal pair")?.resolve(graph)?)
    }

    fn pairs(&mut self, graph: &DirectedGraph, arg: &str) -> Result<Vec<IdealPair>, Failure> {
        let raw: Vec<PairJson> = self.json(arg, "ideal pair list")?;
        Ok(raw
            .iter()
            .map(|p| p.resolve(graph))
            .collect::<Result<_, _>>()?)
    }

    fn prim(&mut self, graph: &DirectedGraph, arg: &str) -> Result<PrimitiveIdeal, Failure> {
        Ok(self
            .json::<PrimitiveJson>(arg, "primitive ideal")?
            .resolve(graph)?)
    }

    fn prims(&mut self, graph: &DirectedGraph, arg: &str) -> Result<Vec<PrimitiveIdeal>, Failure> {
        let raw: Vec<PrimitiveJson> = self.json(arg, "primitive ideal list")?;
        Ok(raw
            .iter()
            .map(|p| p.resolve(graph))
            .collect::<Result<_, _>>()?)
    }

    fn hull(&mut self, graph: &DirectedGraph, arg: &str) -> Result<Hull, Failure> {
        let raw: Vec<HullEntryJson> = self.json(arg, "hull")?;
        Ok(Hull(
            raw.iter()
                .map(|e| e.resolve(graph))
                .collect::<Result<_, _>>()?,
        ))
    }
}

/// Pretty JSON with sorted object keys and a trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("domain values serialize");
    let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
    text.push('\n');
    text
}

fn dispatch(command: Command, input: &mut Inputs<'_>) -> Result<String, Failure> {
    let text = match command {
        Command::Validate(g) => canonical_json(&input.graph(&g)?.to_raw()),
        Command::Tails(g) => canonical_json(&enumerate_maximal_tails(&input.graph(&g)?)?),
        Command::Prims(g) => canonical_json(&enumerate_primitive_strata(&input.graph(&g)?)?),
        Command::SatHered(g) => canonical_json(&input.graph(&g)?.enumerate_saturated_hereditary()),
        Command::Leq { graph, left, right } => {
            let g = input.graph(&graph)?;
            let (l, r) = (input.pair(&g, &left)?, input.pair(&g, &right)?);
            canonical_json(&serde_json::json!({ "leq": pair_leq(&l, &r) }))
        }
        Command::Meet { graph, pairs } => {
            let g = input.graph(&graph)?;
            canonical_json(&pair_meet(&g, &input.pairs(&g, &pairs)?)?)
        }
        Command::Join { graph, pairs } => {
            let g = input.graph(&graph)?;
            canonical_json(&pair_join(&g, &input.pairs(&g, &pairs)?)?)
        }
        Command::Hull { graph, pair } => {
            let g = input.graph(&graph)?;
            canonical_json(&hull(&g, &input.pair(&g, &pair)?)?)
        }
        Command::FromHull { graph, hull } => {
            let g = input.graph(&graph)?;
            canonical_json(&hull_to_pair(&g, &input.hull(&g, &hull)?)?)
        }
        Command::Closure { graph, set, target } => {
            let g = input.graph(&graph)?;
            let xs = input.prims(&g, &set)?;
            let target = input.prim(&g, &target)?;
            canonical_json(&serde_json::json!({ "contained": closure_contains(&g, &xs, &target)? }))
        }
        Command::Contains { graph, pair, prim } => {
            let g = input.graph(&graph)?;
            let p = input.pair(&g, &pair)?;
            let prim = input.prim(&g, &prim)?;
            canonical_json(&serde_json::json!({ "contained": contained_in_prim(&p, &prim) }))
        }
        Command::GaugeLattice { graph, dot } => {
            let lattice = GaugeLattice::new(&input.graph(&graph)?);
            match dot {
                true => lattice.to_dot(),
                false => canonical_json(&lattice),
            }
        }
        Command::Oracle {
            graph,
            seed,
            samples,
        } => {
            let g = input.graph(&graph)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let report = oracle::run_all(&g, &mut rng, samples)?;
            let text = canonical_json(&serde_json::json!({
                "pass": report.pass(),
                "checked": report.checked,
                "mismatches": report.mismatches,
            }));
            if !report.pass() {
                return Err(Failure::Mismatch(text));
            }
            text
        }
    };
    Ok(text)
}
