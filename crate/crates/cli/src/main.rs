mod cache;

use std::collections::BTreeSet;
use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use panehr::ehrhart::{
    ehr_hypersimplex, ehr_panhandle, ehr_paving, phi_poly, psi_poly, PanhandleParams, PavingProfile,
};
use panehr::forests::{enumerate_cf, enumerate_cf1, enumerate_dcf, gamma, ForestQuery};
use panehr::oracle::{
    count_points_hypersimplex, count_points_panhandle, count_points_paving, ExplicitPavingPolytope,
};
use panehr::verify::{run_campaign, Bounds, Campaign, SweepReport};
use panehr::{Error, Polynomial};

use cache::Cache;

const CAMPAIGN_HELP: &str = "\
CSV columns per campaign (each followed by pass,detail):
  identity-main    q,s,k,ell,m,enumerated,formula
  identity-lah     q,s,k,enumerated,formula,marginal
  identity-upper   q,s,k,ell,m,enumerated,expression
  per-term         family,q,s,k,ell,m,i,signed_sum,term
  phi              kind,q,s,objects,images,accepted,roundtrip_failures,invariant_failures,shape_failures
  involution       q,s,k,ell,m,negative,positive,f_images,fixed,cf,signed_total
  ehrhart-oracle   r,s,n,formula,oracle,uniform,at_one
  bounds           kind,r,n,shape,result
  positivity       r,s,n,phi,psi,relaxation,ehrhart";

#[derive(Parser, Debug)]
#[command(
    name = "panehr",
    version,
    about = "Ehrhart polynomials of panhandle and paving matroids, and the forest identities behind them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Cache directory.
    #[arg(long, global = true, env = "PANEHR_CACHE_DIR", value_name = "PATH")]
    cache_dir: Option<PathBuf>,

    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Never colorize output.
    #[arg(long, global = true)]
    no_color: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a polynomial in t.
    Compute {
        family: Family,
        #[command(flatten)]
        params: PolytopeArgs,
    },
    /// Run a verification campaign.
    #[command(after_help = CAMPAIGN_HELP)]
    Verify {
        campaign: CampaignArg,
        #[command(flatten)]
        grid: GridArgs,
        /// Write the per-tuple report as CSV.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// List forests in canonical order.
    Enumerate {
        kind: EnumerateKind,
        #[command(flatten)]
        query: QueryArgs,
    },
    /// Direct lattice-point counts.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
    /// Inspect or clear the cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    Panhandle,
    Paving,
    Hypersimplex,
    Phi,
    Psi,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CampaignArg {
    IdentityMain,
    IdentityLah,
    IdentityUpper,
    PerTerm,
    Phi,
    Involution,
    EhrhartOracle,
    Bounds,
    Positivity,
}

impl From<CampaignArg> for Campaign {
    fn from(c: CampaignArg) -> Self {
        match c {
            CampaignArg::IdentityMain => Campaign::IdentityMain,
            CampaignArg::IdentityLah => Campaign::IdentityLah,
            CampaignArg::IdentityUpper => Campaign::IdentityUpper,
            CampaignArg::PerTerm => Campaign::PerTerm,
            CampaignArg::Phi => Campaign::Phi,
            CampaignArg::Involution => Campaign::Involution,
            CampaignArg::EhrhartOracle => Campaign::EhrhartOracle,
            CampaignArg::Bounds => Campaign::Bounds,
            CampaignArg::Positivity => Campaign::Positivity,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EnumerateKind {
    Forests,
    Dcf,
    Cf1,
}

#[derive(Subcommand, Debug)]
enum OracleAction {
    /// Lattice points of the t-th dilate for t = 0..=max-t. Counts the
    /// panhandle polytope when --s is given, the paving polytope when
    /// --hyperplanes is given, and the hypersimplex otherwise.
    Count {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        n: usize,
        /// Subsets of [n], e.g. "1,2;3,4".
        #[arg(long)]
        hyperplanes: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_t: u64,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    Clear,
    Stats,
}

#[derive(Args, Debug)]
struct PolytopeArgs {
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Sizes of the relaxed stressed hyperplanes, comma-separated.
    #[arg(long, value_delimiter = ',')]
    hyperplane_sizes: Vec<usize>,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long)]
    max_s: Option<usize>,
    #[arg(long)]
    max_q: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    max_hyperplanes: Option<usize>,
    /// Allow bounds beyond the desk-scale limits.
    #[arg(long)]
    i_know_this_is_slow: bool,
}

#[derive(Args, Debug)]
struct QueryArgs {
    #[arg(long)]
    q: usize,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Size of A (dcf only).
    #[arg(long)]
    i: Option<usize>,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(msg: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParams(_)
            | Error::InvalidBlock(_)
            | Error::InvalidForest(_)
            | Error::Parse(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

struct Context {
    json: bool,
    color: bool,
    cache: Cache,
}

fn need(name: &str, v: Option<usize>) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::invalid(format!("--{name} is required")))
}

/// A validated compute request.
enum Target {
    Panhandle(Family, PanhandleParams),
    Hypersimplex(usize, usize),
    Paving(PavingProfile),
}

impl Target {
    fn parse(family: Family, p: &PolytopeArgs) -> Result<Self, Failure> {
        let r = need("r", p.r)?;
        let n = need("n", p.n)?;
        Ok(match family {
            Family::Panhandle | Family::Phi | Family::Psi => {
                Target::Panhandle(family, PanhandleParams::new(r, need("s", p.s)?, n)?)
            }
            Family::Hypersimplex => {
                if r < 1 || r >= n {
                    return Err(Failure::invalid(format!(
                        "need 1 <= r <= n-1, got r={r} n={n}"
                    )));
                }
                Target::Hypersimplex(r, n)
            }
            Family::Paving => Target::Paving(PavingProfile::new(r, n, p.hyperplane_sizes.clone())?),
        })
    }

    fn label(&self) -> String {
        match self {
            Target::Panhandle(_, p) => format!("r={},s={},n={}", p.r(), p.s(), p.n()),
            Target::Hypersimplex(r, n) => format!("r={r},n={n}"),
            Target::Paving(p) => {
                let sizes: Vec<String> = p
                    .hyperplane_sizes()
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                format!("r={},n={},sizes={}", p.r(), p.n(), sizes.join("+"))
            }
        }
    }

    fn compute(&self) -> Result<Polynomial, Failure> {
        Ok(match self {
            Target::Panhandle(Family::Phi, p) => phi_poly(p),
            Target::Panhandle(Family::Psi, p) => psi_poly(p),
            Target::Panhandle(_, p) => ehr_panhandle(p),
            Target::Hypersimplex(r, n) => ehr_hypersimplex(*r, *n)?,
            Target::Paving(p) => ehr_paving(p)?,
        })
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Panhandle => "panhandle",
        Family::Paving => "paving",
        Family::Hypersimplex => "hypersimplex",
        Family::Phi => "phi",
        Family::Psi => "psi",
    }
}

fn cmd_compute(ctx: &mut Context, family: Family, params: &PolytopeArgs) -> Outcome {
    let target = Target::parse(family, params)?;
    let key = cache::key(family_name(family), &target.label());
    let json = match ctx.cache.get(&key) {
        Some(hit) => {
            eprintln!("cache hit: {key}");
            hit
        }
        None => {
            let j = target.compute()?.to_json();
            ctx.cache.put(&key, &j);
            j
        }
    };
    let poly = Polynomial::from_json(&json)?;
    if ctx.json {
        println!("{json}");
    } else {
        println!("{poly}");
    }
    Ok(())
}

fn paint(ctx: &Context, text: &str, ok: bool) -> String {
    if ctx.color {
        let code = if ok { "32" } else { "31" };
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

fn report_json(report: &SweepReport) -> String {
    let value = serde_json::json!({
        "campaign": report.campaign.name(),
        "bounds": {
            "max_s": report.bounds.max_s,
            "max_q": report.bounds.max_q,
            "max_n": report.bounds.max_n,
            "max_hyperplanes": report.bounds.max_hyperplanes,
        },
        "tuples": report.rows.len(),
        "passed": report.rows.iter().filter(|r| r.pass).count(),
        "pass": report.passed(),
        "first_failure": report.first_failure().map(|r| report.describe(r)),
    });
    serde_json::to_string(&value).expect("report serializes")
}

fn cmd_verify(
    ctx: &Context,
    campaign: Campaign,
    grid: &GridArgs,
    csv: Option<&PathBuf>,
) -> Outcome {
    let d = campaign.default_bounds();
    let bounds = Bounds {
        max_s: grid.max_s.unwrap_or(d.max_s),
        max_q: grid.max_q.unwrap_or(d.max_q),
        max_n: grid.max_n.unwrap_or(d.max_n),
        max_hyperplanes: grid.max_hyperplanes.unwrap_or(d.max_hyperplanes),
    };
    let limit = campaign.desk_limits();
    if !bounds.within(&limit) && !grid.i_know_this_is_slow {
        return Err(Failure::invalid(format!(
            "bounds exceed the desk-scale limits for {campaign} \
             (max-s {}, max-q {}, max-n {}, max-hyperplanes {}); pass --i-know-this-is-slow to run anyway",
            limit.max_s, limit.max_q, limit.max_n, limit.max_hyperplanes
        )));
    }
    let report = run_campaign(campaign, bounds);
    if let Some(path) = csv {
        std::fs::write(path, report.to_csv()).map_err(|e| Failure {
            code: 1,
            message: format!("cannot write {}: {e}", path.display()),
        })?;
    }
    eprintln!(
        "{campaign}: finished in {:.2}s",
        report.elapsed.as_secs_f64()
    );
    if ctx.json {
        println!("{}", report_json(&report));
    } else {
        println!("{}", paint(ctx, &report.summary(), report.passed()));
    }
    match report.first_failure() {
        None => Ok(()),
        Some(row) => Err(Failure {
            code: 1,
            message: format!("first failing tuple: {}", report.describe(row)),
        }),
    }
}

fn print_lines(ctx: &Context, lines: Vec<String>) {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if ctx.json {
        let _ = writeln!(
            out,
            "{}",
            serde_json::json!({ "count": lines.len(), "objects": lines })
        );
        return;
    }
    for l in &lines {
        let _ = writeln!(out, "{l}");
    }
    let _ = writeln!(out, "count: {}", lines.len());
}

fn cmd_enumerate(ctx: &Context, kind: EnumerateKind, a: &QueryArgs) -> Outcome {
    let lines: Vec<String> = match kind {
        EnumerateKind::Forests => {
            if a.ell.is_some() != a.m.is_some() {
                return Err(Failure::invalid("--ell and --m must be given together"));
            }
            if let Some(ell) = a.ell {
                ForestQuery::refined(a.q, a.s, a.k, ell, a.m.unwrap_or(0)).validate()?;
            }
            let all = enumerate_cf(a.q, a.s, a.k)?;
            let mut out = Vec::new();
            for f in all {
                let keep = match (a.ell, a.m) {
                    (Some(ell), Some(m)) => gamma(&f, ell)? == m,
                    _ => true,
                };
                if keep {
                    out.push(f.to_string());
                }
            }
            out
        }
        EnumerateKind::Dcf => {
            let mut query = ForestQuery::new(a.q, a.s, a.k);
            query.ell = a.ell;
            query.m = a.m;
            query.i = a.i;
            enumerate_dcf(&query)?
                .iter()
                .map(ToString::to_string)
                .collect()
        }
        EnumerateKind::Cf1 => {
            let ell = need("ell", a.ell)?;
            let m = need("m", a.m)?;
            enumerate_cf1(a.q, a.s, a.k, ell, m)?
                .iter()
                .map(ToString::to_string)
                .collect()
        }
    };
    print_lines(ctx, lines);
    Ok(())
}

fn parse_hyperplanes(text: &str) -> Result<Vec<BTreeSet<u32>>, Failure> {
    text.split(';')
        .filter(|h| !h.trim().is_empty())
        .map(|h| {
            h.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u32>()
                        .map_err(|e| Failure::invalid(format!("bad hyperplane element {x:?}: {e}")))
                })
                .collect()
        })
        .collect()
}

fn cmd_oracle(ctx: &Context, action: &OracleAction) -> Outcome {
    let OracleAction::Count {
        r,
        s,
        n,
        hyperplanes,
        max_t,
    } = action;
    let (r, n) = (*r, *n);
    let counter: Box<dyn Fn(u64) -> String> = match (s, hyperplanes) {
        (Some(_), Some(_)) => {
            return Err(Failure::invalid(
                "--s and --hyperplanes are mutually exclusive",
            ))
        }
        (Some(s), None) => {
            let p = PanhandleParams::new(r, *s, n)?;
            Box::new(move |t| count_points_panhandle(&p, t).to_string())
        }
        (None, Some(h)) => {
            let poly = ExplicitPavingPolytope::new(r, n, parse_hyperplanes(h)?)?;
            Box::new(move |t| count_points_paving(&poly, t).to_string())
        }
        (None, None) => {
            if r < 1 || r >= n {
                return Err(Failure::invalid(format!(
                    "need 1 <= r <= n-1, got r={r} n={n}"
                )));
            }
            Box::new(move |t| count_points_hypersimplex(r, n, t).to_string())
        }
    };
    let counts: Vec<(u64, String)> = (0..=*max_t).map(|t| (t, counter(t))).collect();
    if ctx.json {
        let items: Vec<serde_json::Value> = counts
            .iter()
            .map(|(t, c)| serde_json::json!({ "t": t, "count": c }))
            .collect();
        println!("{}", serde_json::Value::Array(items));
    } else {
        for (t, c) in counts {
            println!("{t} {c}");
        }
    }
    Ok(())
}

fn cmd_cache(ctx: &Context, action: &CacheAction) -> Outcome {
    let Some(dir) = ctx.cache.dir() else {
        return Err(Failure {
            code: 1,
            message: "no usable cache directory".into(),
        });
    };
    let io = |e: std::io::Error| Failure {
        code: 1,
        message: format!("{}: {e}", dir.display()),
    };
    match action {
        CacheAction::Clear => {
            let removed = ctx.cache.clear().map_err(io)?;
            println!("removed {removed} entries from {}", dir.display());
        }
        CacheAction::Stats => {
            let st = ctx.cache.stats().map_err(io)?;
            if ctx.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "dir": dir.display().to_string(),
                        "entries": st.entries,
                        "current_version": st.current_version,
                        "bytes": st.bytes,
                    })
                );
            } else {
                println!("dir: {}", dir.display());
                println!(
                    "entries: {} ({} from version {})",
                    st.entries,
                    st.current_version,
                    cache::VERSION
                );
                println!("bytes: {}", st.bytes);
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::invalid("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure {
                code: 1,
                message: format!("thread pool: {e}"),
            })?;
    }
    let cache_wanted = !cli.no_cache || matches!(cli.command, Command::Cache { .. });
    let cache = match cli.cache_dir.clone().or_else(cache::default_dir) {
        Some(dir) if cache_wanted => Cache::open(dir),
        _ => Cache::disabled(),
    };
    let color =
        !cli.no_color && std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
    let mut ctx = Context {
        json: cli.json,
        color,
        cache,
    };
    match &cli.command {
        Command::Compute { family, params } => cmd_compute(&mut ctx, *family, params),
        Command::Verify {
            campaign,
            grid,
            csv,
        } => cmd_verify(&ctx, (*campaign).into(), grid, csv.as_ref()),
        Command::Enumerate { kind, query } => cmd_enumerate(&ctx, *kind, query),
        Command::Oracle { action } => cmd_oracle(&ctx, action),
        Command::Cache { action } => cmd_cache(&ctx, action),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
