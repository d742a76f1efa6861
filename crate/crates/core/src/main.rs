use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hgmkit::conic::{analyze, AnalysisOptions};
use hgmkit::error::{Error, Result};
use hgmkit::exact::rat::to_f64;
use hgmkit::exact::{parse_rat, Rat};
use hgmkit::gkz::{build_gkz, count_torus_points, realize_monomials, reference_model, restrict_to_line, restriction_certificate, simplex_model, ToricModel};
use hgmkit::hodge::{dimension_identities, interior_point_count, theorem_chain_report};
use hgmkit::hypergeom::{bh_ratio, BhRatio, build_cofactor, build_irreducible_operator, build_reducible_operator, reduced_exponents, singular_value, GammaList};
use hgmkit::lattice::{delta_vector_with_budget, normalized_volume, DEFAULT_BUDGET};
use hgmkit::monodromy::{certify, run, ContinuationConfig};
use hgmkit::report::Report;
use hgmkit::verify::{verify_all, VerifyOptions};

#[derive(Parser)]
#[command(name = "hgmkit", version, about = "Hypergeometric operator, GKZ, conic bundle and monodromy checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Print compact single-line JSON instead of pretty JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Working precision in bits for numerical continuation.
    #[arg(long, global = true, default_value_t = 192)]
    bits: usize,
    /// Numerical tolerance, e.g. 1e-8 or 1/100000000.
    #[arg(long, global = true, default_value = "1e-8", value_parser = parse_rat_arg)]
    tol: Rat,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Lattice point enumeration budget.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Series data, singular value and local exponents of a gamma list.
    Gamma {
        #[arg(allow_hyphen_values = true, value_parser = parse_gamma_arg)]
        gamma: GammaList,
    },
    /// The operators H, G and the reducible operator, with the factorization check.
    Operator {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_gamma_arg)]
        gamma: Option<GammaList>,
    },
    /// GKZ system of a toric model.
    Gkz {
        #[command(subcommand)]
        cmd: GkzCmd,
    },
    /// Conic bundle pipeline on the reference model.
    Conic {
        #[command(subcommand)]
        cmd: ConicCmd,
    },
    /// Newton polytope of the toric model of a gamma list.
    Polytope {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_gamma_arg)]
        gamma: Option<GammaList>,
    },
    /// Dimension identities and the Hodge table.
    Hodge {
        #[command(subcommand)]
        cmd: HodgeCmd,
    },
    /// Numerical monodromy of H.
    Monodromy {
        #[command(subcommand)]
        cmd: MonodromyCmd,
    },
    /// Every acceptance criterion in order.
    VerifyAll,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    /// The six-monomial model in four variables.
    Reference,
    /// The simplex model `1 + u1 + ... + u4 - u^(2,3,5,9)/α`.
    #[value(alias = "bcm")]
    Simplex,
}

#[derive(Subcommand)]
enum GkzCmd {
    /// Euler and box operators of a fixed model, or of the realized model of `--gamma`.
    Build {
        #[arg(long, value_enum, default_value_t = Model::Reference, conflicts_with = "gamma")]
        model: Model,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_gamma_arg)]
        gamma: Option<GammaList>,
    },
    /// Restriction of the box operator to the line, compared with the reducible operator.
    Restrict {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_gamma_arg)]
        gamma: Option<GammaList>,
    },
    /// Torus point counts over F_p.
    Count {
        #[arg(long, value_enum, default_value_t = Model::Reference)]
        model: Model,
        #[arg(long)]
        p: u64,
        /// A single α; all α in 1..p when omitted.
        #[arg(long)]
        alpha: Option<u64>,
    },
}

#[derive(Subcommand)]
enum ConicCmd {
    Analyze {
        #[arg(long, default_value = "1", value_parser = parse_rat_arg)]
        alpha: Rat,
    },
}

#[derive(Subcommand)]
enum HodgeCmd {
    Report,
}

#[derive(Subcommand)]
enum MonodromyCmd {
    Run {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_gamma_arg)]
        gamma: Option<GammaList>,
    },
}

fn parse_rat_arg(s: &str) -> std::result::Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn parse_gamma_arg(s: &str) -> std::result::Result<GammaList, String> {
    let entries = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("not an integer: {t:?}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    GammaList::new(entries).map_err(|e| e.to_string())
}

fn model(m: Model) -> ToricModel {
    match m {
        Model::Reference => reference_model(),
        Model::Simplex => simplex_model(),
    }
}

fn model_name(m: Model) -> &'static str {
    match m {
        Model::Reference => "reference",
        Model::Simplex => "simplex",
    }
}

fn gamma_or_standard(g: Option<GammaList>) -> GammaList {
    g.unwrap_or_else(GammaList::standard)
}

fn strs<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn gamma_report(g: &GammaList) -> Result<Report> {
    let mut r = Report::new("gamma", json!({ "gamma": g.entries() }));
    let e = reduced_exponents(g);
    let bh = bh_ratio(g)?;
    r.results = json!({
        "alpha0": singular_value(g).to_string(),
        "order": e.order,
        "exps0": strs(&e.exps0),
        "expsInf": strs(&e.exps_inf),
        "q0": BhRatio::describe(&bh.q0),
        "qInf": BhRatio::describe(&bh.q_inf),
    });
    r.check("cyclotomic ratio identity", "operator.cyclotomic-ratio", bh.holds, true, bh.holds);
    Ok(r)
}

fn operator_report(g: &GammaList) -> Result<Report> {
    let mut r = Report::new("operator", json!({ "gamma": g.entries() }));
    let h = build_irreducible_operator(g);
    let cof = build_cofactor(g);
    let red = build_reducible_operator(g);
    let prod = cof.compose(&h);
    r.results = json!({
        "H": { "order": h.order(), "text": h.to_string(), "parts": h.to_json() },
        "G": { "order": cof.order(), "text": cof.to_string(), "parts": cof.to_json() },
        "reducible": { "order": red.order(), "text": red.to_string(), "parts": red.to_json() },
    });
    r.check("G*H = reducible operator", "operator.factorization", prod == red, &red, &prod);
    Ok(r)
}

fn gkz_report(cmd: GkzCmd) -> Result<Report> {
    match cmd {
        GkzCmd::Build { model: m, gamma } => {
            let (tm, inputs) = match gamma {
                Some(g) => (realize_monomials(&g)?, json!({ "gamma": g.entries() })),
                None => (model(m), json!({ "model": model_name(m) })),
            };
            let sys = build_gkz(&tm.monomials)?;
            let mut r = Report::new("gkz build", inputs);
            r.check("lattice relation pairs to zero with the Euler rows", "gkz.euler-rows", sys.euler_box_pairings().iter().all(|&x| x == 0), "all zero", format!("{:?}", sys.euler_box_pairings()));
            r.results = json!({ "polynomial": tm.f.to_string(), "system": sys.to_json() });
            Ok(r)
        }
        GkzCmd::Restrict { gamma } => {
            let g = gamma_or_standard(gamma);
            let tm = realize_monomials(&g)?;
            let sys = build_gkz(&tm.monomials)?;
            let restricted = restrict_to_line(&sys, &g, &tm.kexp)?;
            let cert = restriction_certificate(&g)?;
            let mut r = Report::new("gkz restrict", json!({ "gamma": g.entries() }));
            r.results = json!({
                "restricted": restricted.to_string(),
                "reducible": cert.reducible.to_string(),
                "z": cert.z,
                "commonFactor": cert.common_factor.to_string(),
                "scale": cert.scale.to_string(),
                "alphaFlipped": cert.alpha_flipped,
            });
            r.check("reducible = D^z * K", "gkz.restriction-factor", cert.left_identity, true, cert.left_identity);
            r.check("restricted = c * K' * D^z", "gkz.restriction-factor", cert.right_identity, true, cert.right_identity);
            r.check("restriction equals the reducible operator up to a unit", "gkz.restriction", cert.equal_up_to_unit, &cert.reducible, &cert.restricted);
            Ok(r)
        }
        GkzCmd::Count { model: m, p, alpha } => {
            let tm = model(m);
            let alphas: Vec<u64> = match alpha {
                Some(a) => vec![a],
                None => (1..p).collect(),
            };
            let mut counts = Vec::new();
            for a in alphas {
                counts.push(json!({ "alpha": a, "count": count_torus_points(&tm.f, p, a)? }));
            }
            let mut r = Report::new("gkz count", json!({ "model": model_name(m), "p": p, "alpha": alpha }));
            r.results = json!({ "polynomial": tm.f.to_string(), "counts": counts });
            Ok(r)
        }
    }
}

fn conic_report(alpha: Rat, seed: u64) -> Result<Report> {
    let a = analyze(&reference_model(), &AnalysisOptions { alpha: alpha.clone(), seed, ..Default::default() })?;
    let mut r = Report::new("conic analyze", json!({ "alpha": alpha.to_string(), "seed": seed }));
    r.check("Riemann-Hurwitz", "conic.hurwitz", a.hurwitz_holds(), true, a.hurwitz_holds());
    r.check_eq("2g~ - 2g = anti-invariant rank", "conic.rank", a.anti_invariant_rank as i64, a.genus_rank());
    r.check("ranks off the discriminant are 3", "conic.rank-stratification", a.ranks.ranks_off().iter().all(|&k| k == 3), 3, format!("{:?}", a.ranks.ranks_off()));
    r.check("ranks on the discriminant are 2", "conic.rank-stratification", a.ranks.ranks_on().iter().all(|&k| k == 2), 2, format!("{:?}", a.ranks.ranks_on()));
    r.results = a.to_json();
    Ok(r)
}

fn polytope_report(g: &GammaList, budget: u64) -> Result<Report> {
    let tm = realize_monomials(g)?;
    let p = tm.newton_polytope()?;
    let vol = normalized_volume(&p)?;
    let interior = interior_point_count(&p)?;
    let delta = delta_vector_with_budget(&p, budget)?;
    let order = build_reducible_operator(g).order() as u64;
    let mut r = Report::new("polytope", json!({ "gamma": g.entries(), "budget": budget }));
    r.check_eq("normalized volume = order of the reducible operator", "hodge.volume", order, vol);
    r.check_eq("sum of the delta vector = volume", "lattice.delta-vector", vol, delta.iter().sum::<u64>());
    r.results = json!({
        "points": tm.monomials.points,
        "polytope": p.to_json(),
        "volume": vol,
        "interiorPoints": interior,
        "deltaVector": delta,
    });
    Ok(r)
}

fn hodge_report() -> Result<Report> {
    let g = GammaList::standard();
    let d = dimension_identities(&g)?;
    let chain = theorem_chain_report()?;
    let mut r = Report::new("hodge report", json!({ "gamma": g.entries() }));
    for c in &d.checks {
        r.check(&c.name, "hodge.dimensions", c.pass, c.left, c.right);
    }
    r.check("rank computed four ways agrees", "hodge.rank-chain", chain.all_equal, true, chain.all_equal);
    r.results = json!({ "dimensions": d, "chain": chain });
    Ok(r)
}

fn monodromy_report(g: &GammaList, global: &Global) -> Result<Report> {
    let cfg = ContinuationConfig { precision: global.bits, tolerance: global.tol.clone(), ..ContinuationConfig::default() };
    let report = run(g, &cfg)?;
    let mut r = Report::new("monodromy run", json!({ "gamma": g.entries(), "bits": global.bits, "tolerance": global.tol.to_string() }));
    for line in certify(&report) {
        r.check(&line.check, "monodromy", line.pass, format!("< {:e}", to_f64(&global.tol)), &line.value);
    }
    r.results = serde_json::to_value(&report).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(r)
}

fn execute(cli: Cli) -> Result<Report> {
    let g = &cli.global;
    match cli.cmd {
        Cmd::Gamma { gamma } => gamma_report(&gamma),
        Cmd::Operator { gamma } => operator_report(&gamma_or_standard(gamma)),
        Cmd::Gkz { cmd } => gkz_report(cmd),
        Cmd::Conic { cmd: ConicCmd::Analyze { alpha } } => conic_report(alpha, g.seed),
        Cmd::Polytope { gamma } => polytope_report(&gamma_or_standard(gamma), g.budget),
        Cmd::Hodge { cmd: HodgeCmd::Report } => hodge_report(),
        Cmd::Monodromy { cmd: MonodromyCmd::Run { gamma } } => monodromy_report(&gamma_or_standard(gamma), g),
        Cmd::VerifyAll => verify_all(&VerifyOptions { bits: g.bits, tolerance: g.tol.clone(), seed: g.seed, ..Default::default() }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let compact = cli.global.json;
    match execute(cli) {
        Ok(report) => {
            let v = report.to_json();
            let text = if compact { v.to_string() } else { serde_json::to_string_pretty(&v).expect("json") };
            println!("{text}");
            eprint!("{}", report.summary());
            if report.all_pass() {
                eprintln!("{}: all checks pass", report.command);
                ExitCode::SUCCESS
            } else {
                eprintln!("{}: some checks failed", report.command);
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
