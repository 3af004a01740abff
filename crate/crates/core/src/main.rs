use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use affcell::asymptotic::{gamma_tilde_product, lattice_to_weyl, pieri_product};
use affcell::cells::{check_star_identity, star, star_orbit, CellAtlas, Side, StarReport};
use affcell::parse::{parse_element, parse_generator, parse_genset, parse_partition, parse_tuple};
use affcell::schur::{cell_generation_check, hecke_idempotent_check, schur_mul, schur_ntilde};
use affcell::verify::{self, Suite};
use affcell::{AffinePerm, GenSet, HeckeElt, KlCache, PartitionData, Result, Truncation};

#[derive(Parser)]
#[command(name = "affcell", version, about = "Exact computations in the affine Hecke and q-Schur algebras of type A")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    T,
    N,
}

#[derive(Subcommand)]
enum Command {
    /// The KL polynomial P_{y,w} and mu(y,w).
    Kl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        y: String,
        #[arg(long)]
        w: String,
    },
    /// The product of two basis elements.
    Mul {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "n")]
        basis: BasisArg,
        a: String,
        b: String,
    },
    /// A single star operation.
    Star {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        w: String,
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
    },
    /// The star orbit of an element up to a length bound, with witnesses.
    Orbit {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
    },
    /// Checks h_{u,v}^w = h_{u,v*}^{w*} over certified left-cell mates of v.
    CheckStar {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        /// Defaults to every index.
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// The element w(x) of a lattice point.
    Lattice {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        x: String,
    },
    /// Pieri and renormalised products of a lattice point with a generator.
    Gamma {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        x: String,
        /// `i,j`, `-i` for an inverse, or `e`.
        #[arg(long)]
        gen: String,
    },
    /// The product Ñ^u_{QR} Ñ^v_{RP} in the affine q-Schur algebra.
    SchurMul {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        q: String,
        #[arg(long, default_value = "")]
        r: String,
        #[arg(long, default_value = "")]
        p: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Idempotence of Ñ^{w_P}_{PP} and the factorization through Ñ_{w_P}.
    Idempotent {
        #[arg(long)]
        n: usize,
        #[arg(long = "P", default_value = "")]
        p: String,
    },
    /// Generation of a cell of the Schur algebra by its idempotent.
    CellGen {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// Runs the verification suites.
    Verify {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn element_json(w: &AffinePerm) -> Value {
    json!({"n": w.rank(), "window": w.window(), "length": w.length(), "text": w.to_string()})
}

fn star_json(r: &StarReport) -> Value {
    json!({
        "checked": r.checked,
        "uncertified": r.uncertified,
        "violations": r.violations,
    })
}

fn run(cli: Cli) -> Result<(Value, bool)> {
    let out = match cli.command {
        Command::Kl { n, y, w } => {
            let y = parse_element(Some(n), &y)?;
            let w = parse_element(Some(n), &w)?;
            let cache = KlCache::new(n, w.length());
            json!({
                "y": element_json(&y),
                "w": element_json(&w),
                "P": cache.kl_poly(&y, &w)?,
                "mu": cache.mu(&y, &w)?.to_string(),
            })
        }
        Command::Mul { n, basis, a, b } => {
            let a = parse_element(n, &a)?;
            let b = parse_element(Some(a.rank()), &b)?;
            match basis {
                BasisArg::T => serde_json::to_value(HeckeElt::t(&a).t_mul(&HeckeElt::t(&b))?).unwrap(),
                BasisArg::N => {
                    let cache = KlCache::new(a.rank(), a.length() + b.length());
                    let prod = cache.n_mul(&HeckeElt::nt(&a), &HeckeElt::nt(&b))?;
                    serde_json::to_value(prod).unwrap()
                }
            }
        }
        Command::Star { n, w, i, side } => element_json(&star(&parse_element(n, &w)?, side.into(), i)?),
        Command::Orbit { n, w, bound, side } => {
            let w = parse_element(n, &w)?;
            let orbit = star_orbit(&w, side.into(), bound)?;
            json!(orbit
                .iter()
                .map(|(x, seq)| json!({"element": element_json(x), "sequence": seq}))
                .collect::<Vec<_>>())
        }
        Command::CheckStar { n, u, v, i, bound } => {
            let u = parse_element(n, &u)?;
            let v = parse_element(Some(u.rank()), &v)?;
            let n = u.rank();
            let cache = KlCache::new(n, bound.max(u.length() + v.length() + 1));
            let atlas = CellAtlas::build(&cache, Truncation::new(bound, 1), 6)?;
            let mut report = StarReport::default();
            let indices: Vec<usize> = i.map_or_else(|| (0..n).collect(), |i| vec![i]);
            for i in indices {
                report.merge(check_star_identity(&cache, &atlas, &u, &v, i)?);
            }
            star_json(&report)
        }
        Command::Lattice { n, lambda, x } => {
            let data = PartitionData::new(&parse_partition(&lambda)?);
            if let Some(n) = n {
                if n != data.n() {
                    return Err(affcell::Error::RankMismatch(n, data.n()));
                }
            }
            let x = parse_tuple(&data, &x)?;
            element_json(&lattice_to_weyl(&data, &x)?)
        }
        Command::Gamma { lambda, x, gen } => {
            let data = PartitionData::new(&parse_partition(&lambda)?);
            let x = parse_tuple(&data, &x)?;
            let gen = parse_generator(&gen)?;
            let pieri = pieri_product(&data, &x, gen)?;
            let terms: Vec<Value> = gamma_tilde_product(&data, &x, gen)?
                .into_iter()
                .map(|(t, c)| {
                    let w = lattice_to_weyl(&data, &t).map(|w| element_json(&w)).unwrap_or(Value::Null);
                    json!({"x": t, "element": w, "gamma": 1, "gamma_tilde": c})
                })
                .collect();
            json!({"pieri_terms": pieri.len(), "terms": terms})
        }
        Command::SchurMul { n, q, r, p, u, v } => {
            let (q, r, p) = (parse_genset(&q)?, parse_genset(&r)?, parse_genset(&p)?);
            let u = parse_element(Some(n), &u)?;
            let v = parse_element(Some(n), &v)?;
            let cache = KlCache::new(n, u.length() + v.length());
            let prod = schur_mul(&cache, &schur_ntilde(q, r, &u)?, &schur_ntilde(r, p, &v)?)?;
            json!({
                "basis": "N",
                "n": n,
                "terms": prod.terms.iter().map(|(k, c)| json!({"Q": k.q, "P": k.p, "window": k.w.window(), "coeff": c})).collect::<Vec<_>>(),
            })
        }
        Command::Idempotent { n, p } => {
            let p = parse_genset(&p)?;
            let cache = KlCache::new(n, n * n.saturating_sub(1) + 2);
            let rep = hecke_idempotent_check(&cache, p)?;
            let ok = rep.ok();
            return Ok((json!({"version": verify::REPORT_VERSION, "report": rep, "ok": ok}), !ok));
        }
        Command::CellGen { lambda, bound } => {
            let lambda = parse_partition(&lambda)?;
            let n = lambda.size();
            let cache = KlCache::new(n, 2 * bound + 2);
            let atlas = CellAtlas::build(&cache, Truncation::new(bound + 3, 1), 6)?;
            let rep = cell_generation_check(&cache, &atlas, &lambda, bound, &GenSet::all_finite_subsets(n))?;
            let bad = !rep.ok();
            return Ok((json!({"version": verify::REPORT_VERSION, "report": rep}), bad));
        }
        Command::Verify { n, bound, suite } => {
            let suite: Suite = suite.parse()?;
            let report = verify::run(n, bound, suite)?;
            eprint!("{}", report.summary_table());
            let bad = report.has_violations();
            return Ok((serde_json::to_value(&report).unwrap(), bad));
        }
    };
    Ok((out, false))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((value, violations)) => {
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
            if violations {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
