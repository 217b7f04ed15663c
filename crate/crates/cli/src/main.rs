mod coeff;
mod commands;

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::Rng;

use wphom::complex::{FilteredComplex, Simplex};
use wphom::corpus::{random_complex, random_filtration, random_graph, rng, ComplexShape};
use wphom::error::{Error, Result};
use wphom::filtration::{graph_to_filtration, ideal_chain_filtration, stanley_reisner_filtration, with_unit_integer_weights, wrs_filtration, RankOrder};
use wphom::homology::Coefficients;
use wphom::io::{self, parse_qpoly, WeightFormat};
use wphom::ring::{EuclideanRing, MultiPoly, QPoly};

use commands::Report;

/// Homology of weighted simplicial complexes over Z and Q[x].
#[derive(Parser)]
#[command(name = "wphom", version)]
struct Cli {
    /// Also write a machine-readable JSON report here.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check face closure and weight divisibility.
    Validate { file: PathBuf },
    /// Weighted homology in every degree.
    Homology {
        file: PathBuf,
        /// z, q, fp:<p>, zmod:<m>; or poly, q, polymod:<π>^<r> for polynomial weights.
        #[arg(long, default_value = "default")]
        coeff: String,
    },
    /// Persistent homology H_k^{i,q} of a filtration file.
    Persist {
        file: PathBuf,
        #[arg(long, default_value = "default")]
        coeff: String,
        #[arg(long, requires_all = ["i", "q"])]
        k: Option<usize>,
        #[arg(long, requires_all = ["k", "q"])]
        i: Option<usize>,
        #[arg(long, requires_all = ["k", "i"])]
        q: Option<usize>,
        /// Every triple (the default when no triple is given).
        #[arg(long, conflicts_with_all = ["k", "i", "q"])]
        all: bool,
    },
    /// Bockstein spectral sequence pages.
    Bockstein {
        file: PathBuf,
        /// Repeatable; defaults to the primes dividing some weight.
        #[arg(long = "prime")]
        primes: Vec<String>,
        #[arg(long, default_value_t = 4)]
        max_page: usize,
        /// Rebuild integral homology from the tables and compare.
        #[arg(long)]
        recover: bool,
    },
    /// Mayer-Vietoris sequence of a cover by two subcomplexes.
    Mv {
        file: PathBuf,
        /// Simplex list of the first subcomplex; faces are added automatically.
        #[arg(long)]
        k0: PathBuf,
        #[arg(long)]
        k1: PathBuf,
        #[arg(long, default_value = "default")]
        coeff: String,
    },
    /// Build a filtration file from a weighted complex.
    Filtration {
        #[command(subcommand)]
        kind: FiltrationKind,
    },
    /// Clique complex of a weighted graph with its rank filtration.
    #[command(name = "graph2filtration")]
    GraphToFiltration {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Order::Desc)]
        order: Order,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare persistent modules over R/p^r and R/p^{2r} through theta and epsilon.
    Ptop2 {
        file: PathBuf,
        #[arg(long)]
        prime: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// Seeded random complexes, filtrations and graphs.
    GenCorpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum FiltrationKind {
    /// Weight-rank filtration of an integer complex.
    Wrs {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Filtration by a descending chain of principal ideals.
    IdealChain {
        file: PathBuf,
        /// Comma-separated generators g_1, g_2, … with g_t dividing g_{t+1}.
        #[arg(long)]
        chain: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stanley-Reisner filtration of a multivariate monomial complex.
    StanleyReisner {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Asc,
    Desc,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<Report> {
    match out {
        Some(p) => {
            write(p, text)?;
            Ok(Report {
                text: format!("wrote {}", p.display()),
                json: serde_json::json!({"written": p.display().to_string()}),
                ok: true,
            })
        }
        None => Ok(Report {
            text: text.trim_end().to_string(),
            json: serde_json::Value::Null,
            ok: true,
        }),
    }
}

fn first_var(vars: &[String]) -> &str {
    vars.first().map_or("x", String::as_str)
}

fn unsupported(what: &str) -> Error {
    Error::InvalidCoefficients(format!("{what} is not available for multivariate weights"))
}

fn unknown_ring(tag: &str) -> Error {
    Error::parse(1, 1, format!("unknown ring '{tag}'; expected int, poly or mpoly"))
}

fn int_coeff(spec: &str) -> Result<Coefficients<BigInt>> {
    coeff::integer_coefficients(if spec == "default" { "z" } else { spec })
}

fn poly_coeff(spec: &str, var: &str) -> Result<Coefficients<QPoly>> {
    coeff::polynomial_coefficients(if spec == "default" { "poly" } else { spec }, var)
}

/// A simplex list together with all faces of the listed simplices.
fn closed_list(text: &str, labels: &[String]) -> Result<Vec<Simplex>> {
    let mut set = BTreeSet::new();
    for s in io::read_simplex_list(text, labels)? {
        set.extend(s.proper_faces());
        set.insert(s);
    }
    Ok(set.into_iter().collect())
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse().map_err(|_| Error::parse(1, 1, format!("'{s}' is not an integer")))
}

fn run(cmd: Command) -> Result<Report> {
    match cmd {
        Command::Validate { file } => {
            let text = read(&file)?;
            match io::ring_tag(&text)?.as_str() {
                "int" => Ok(commands::validate(&io::read_complex::<BigInt>(&text)?.0)),
                "poly" => Ok(commands::validate(&io::read_complex::<QPoly>(&text)?.0)),
                "mpoly" => Ok(commands::validate(&io::read_complex::<MultiPoly>(&text)?.0)),
                t => Err(unknown_ring(t)),
            }
        }
        Command::Homology { file, coeff } => {
            let text = read(&file)?;
            match io::ring_tag(&text)?.as_str() {
                "int" => commands::homology_report(&io::read_complex::<BigInt>(&text)?.0, &int_coeff(&coeff)?),
                "poly" => {
                    let (k, vars) = io::read_complex::<QPoly>(&text)?;
                    commands::homology_report(&k, &poly_coeff(&coeff, first_var(&vars))?)
                }
                "mpoly" => Err(unsupported("homology")),
                t => Err(unknown_ring(t)),
            }
        }
        Command::Persist { file, coeff, k, i, q, all: _ } => {
            let text = read(&file)?;
            let triple = k.zip(i).zip(q).map(|((k, i), q)| (k, i, q));
            match io::ring_tag(&text)?.as_str() {
                "int" => commands::persist(&io::read_filtration::<BigInt>(&text)?.0, &int_coeff(&coeff)?, triple),
                "poly" => {
                    let (f, vars) = io::read_filtration::<QPoly>(&text)?;
                    commands::persist(&f, &poly_coeff(&coeff, first_var(&vars))?, triple)
                }
                "mpoly" => {
                    let f = with_unit_integer_weights(&io::read_filtration::<MultiPoly>(&text)?.0);
                    commands::persist(&f, &int_coeff(&coeff)?, triple)
                }
                t => Err(unknown_ring(t)),
            }
        }
        Command::Bockstein { file, primes, max_page, recover } => {
            let text = read(&file)?;
            match io::ring_tag(&text)?.as_str() {
                "int" => {
                    let primes = primes.iter().map(|p| parse_int(p)).collect::<Result<_>>()?;
                    commands::bockstein(&io::read_complex::<BigInt>(&text)?.0, primes, max_page, recover)
                }
                "poly" => {
                    let (k, vars) = io::read_complex::<QPoly>(&text)?;
                    let primes = primes.iter().map(|p| parse_qpoly(p, first_var(&vars))).collect::<Result<_>>()?;
                    commands::bockstein(&k, primes, max_page, recover)
                }
                "mpoly" => Err(unsupported("the Bockstein spectral sequence")),
                t => Err(unknown_ring(t)),
            }
        }
        Command::Mv { file, k0, k1, coeff } => {
            let text = read(&file)?;
            let (l0, l1) = (read(&k0)?, read(&k1)?);
            match io::ring_tag(&text)?.as_str() {
                "int" => {
                    let k = io::read_complex::<BigInt>(&text)?.0;
                    let a = closed_list(&l0, k.labels())?;
                    let b = closed_list(&l1, k.labels())?;
                    commands::mayer_vietoris(&k, &a, &b, &int_coeff(&coeff)?)
                }
                "poly" => {
                    let (k, vars) = io::read_complex::<QPoly>(&text)?;
                    let a = closed_list(&l0, k.labels())?;
                    let b = closed_list(&l1, k.labels())?;
                    commands::mayer_vietoris(&k, &a, &b, &poly_coeff(&coeff, first_var(&vars))?)
                }
                "mpoly" => Err(unsupported("Mayer-Vietoris")),
                t => Err(unknown_ring(t)),
            }
        }
        Command::Filtration { kind } => filtration(kind),
        Command::GraphToFiltration { graph, order, max_dim, out } => {
            let g = io::read_graph(&read(&graph)?)?;
            let order = match order {
                Order::Asc => RankOrder::Ascending,
                Order::Desc => RankOrder::Descending,
            };
            let (_, wrs) = graph_to_filtration(&g, max_dim, order)?;
            emit(out.as_deref(), &io::write_filtration(&wrs.filtration, &[]))
        }
        Command::Ptop2 { file, prime, k, i, q, r } => {
            let text = read(&file)?;
            match io::ring_tag(&text)?.as_str() {
                "int" => commands::ptop2(&io::read_filtration::<BigInt>(&text)?.0, &parse_int(&prime)?, (k, i, q), r),
                "poly" => {
                    let (f, vars) = io::read_filtration::<QPoly>(&text)?;
                    commands::ptop2(&f, &parse_qpoly(&prime, first_var(&vars))?, (k, i, q), r)
                }
                "mpoly" => Err(unsupported("ptop2")),
                t => Err(unknown_ring(t)),
            }
        }
        Command::GenCorpus { seed, count, out } => gen_corpus(seed, count, &out),
    }
}

fn ideal_chain<R: EuclideanRing + WeightFormat>(
    text: &str,
    chain: &str,
    parse: impl Fn(&str, &[String]) -> Result<R>,
) -> Result<String> {
    let (k, vars) = io::read_complex::<R>(text)?;
    let gens = chain.split(',').map(|g| parse(g, &vars)).collect::<Result<Vec<R>>>()?;
    Ok(io::write_filtration(&ideal_chain_filtration(&k, &gens)?, &vars))
}

fn filtration(kind: FiltrationKind) -> Result<Report> {
    match kind {
        FiltrationKind::Wrs { file, out } => {
            let text = read(&file)?;
            match io::ring_tag(&text)?.as_str() {
                "int" => {
                    let wrs = wrs_filtration(&io::read_complex::<BigInt>(&text)?.0)?;
                    emit(out.as_deref(), &io::write_filtration(&wrs.filtration, &[]))
                }
                "poly" | "mpoly" => Err(Error::InvalidCoefficients("the weight-rank filtration needs integer weights".into())),
                t => Err(unknown_ring(t)),
            }
        }
        FiltrationKind::IdealChain { file, chain, out } => {
            let text = read(&file)?;
            let written = match io::ring_tag(&text)?.as_str() {
                "int" => ideal_chain::<BigInt>(&text, &chain, |g, _| parse_int(g))?,
                "poly" => ideal_chain::<QPoly>(&text, &chain, |g, vars| parse_qpoly(g, first_var(vars)))?,
                "mpoly" => return Err(unsupported("an ideal-chain filtration")),
                t => return Err(unknown_ring(t)),
            };
            emit(out.as_deref(), &written)
        }
        FiltrationKind::StanleyReisner { file, out } => {
            let text = read(&file)?;
            match io::ring_tag(&text)?.as_str() {
                "mpoly" => {
                    let (k, vars) = io::read_complex::<MultiPoly>(&text)?;
                    let sr = stanley_reisner_filtration(&k)?;
                    emit(out.as_deref(), &io::write_filtration(&sr.filtration, &vars))
                }
                "int" | "poly" => Err(Error::InvalidCoefficients("the Stanley-Reisner filtration needs monomial (mpoly) weights".into())),
                t => Err(unknown_ring(t)),
            }
        }
    }
}

fn gen_corpus(seed: u64, count: usize, out: &Path) -> Result<Report> {
    fs::create_dir_all(out).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    let mut r = rng(seed);
    let moduli = [4u64, 8, 12, 18, 36, 60];
    let mut files = Vec::new();
    for n in 0..count {
        let modulus = moduli[r.gen_range(0..moduli.len())];
        let k = random_complex(&mut r, ComplexShape::default(), modulus);
        let steps = r.gen_range(2..=4);
        let f: FilteredComplex<BigInt> = random_filtration(&mut r, &k, steps);
        let g = random_graph(&mut r, 7);
        for (name, body) in [
            (format!("complex-{n:03}.json"), io::write_complex(&k, &[])),
            (format!("filtration-{n:03}.json"), io::write_filtration(&f, &[])),
            (format!("graph-{n:03}.txt"), io::write_graph(&g)),
        ] {
            write(&out.join(&name), &body)?;
            files.push(name);
        }
    }
    Ok(Report {
        text: format!("wrote {} files to {}", files.len(), out.display()),
        json: serde_json::json!({"seed": seed, "files": files}),
        ok: true,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(cli.command).and_then(|rep| {
        if let Some(path) = &cli.report {
            let body = serde_json::to_string_pretty(&rep.json).expect("serializable") + "\n";
            write(path, &body)?;
        }
        Ok(rep)
    });
    match outcome {
        Ok(rep) => {
            let _ = writeln!(std::io::stdout(), "{}", rep.text);
            if rep.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_parse() { 2 } else { 1 })
        }
    }
}
