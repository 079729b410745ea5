//! Command-line front end. Every number printed is the library result
//! rendered in decimal.
//!
//! Exit codes: 0 when everything passes, 1 when a check reports a
//! violation, 2 for usage, configuration and file errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::bounds::{
    binom_sum_bound, bregman_bound, coin_lower_bounds, colorings_bip_bound, compare_exact, embed_upper_bound,
    fractional_cover, fractional_independence, homs_bip_bound, hstar_build, kahn_lovasz_bound, loomis_whitney_check,
    nonbip_order_bound, parse_rational, RootProductBound,
};
use crate::count::{
    body_volume_and_projections, colorings, cycle_cover_sums, embed_count, hom_count, independent_sets_of_size,
    independent_sets_total, matchings_kdd_formula, matchings_of_size, matchings_total, max_triangle_intersecting,
    min_distinguishing, perfect_matchings, permanent, CountResult,
};
use crate::entropy::{
    binary_entropy, binomial_half_entropy, check_all, chernoff_tail_check, read_joint, JointDistribution,
};
use crate::error::{Error, Result};
use crate::graph::{
    enumerate_all_graphs, enumerate_bipartite_regular, enumerate_regular, parse_named, read_graph, read_matrix,
    render_graph, render_matrix, Graph, LatticeBody, ZeroOneMatrix,
};
use crate::verify::{self, CheckSpec, Format, Params, Registry, Report};

/// Prefix of the environment variables that tighten parameter caps, e.g.
/// `ENTCOUNT_CAP_INSTANCES=5000`.
pub const CAP_ENV_PREFIX: &str = "ENTCOUNT_CAP_";

#[derive(Parser, Debug)]
#[command(name = "entcount", version, about = "Exact counts, entropy checks and bound verification")]
#[command(after_help = "Graphs: named shorthand (k_dd:3, knd:12,3, kn:5, cycle:6, path:4, empty:3, h_ind, h_wr) or a graph file.\n\
Matrices: identity:N, ones:N, blocks:A,B,.. or a matrix file. Bodies: box:A,B,.. or a body file.\n\
Caps: ENTCOUNT_CAP_<PARAM> (e.g. ENTCOUNT_CAP_INSTANCES, ENTCOUNT_CAP_MAX_N) rejects larger check parameters.\n\
Exit codes: 0 pass, 1 violation, 2 usage or file error.")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; text by default for single results, json for checks.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutFormat>,
    /// Seed for random families.
    #[arg(long, global = true, default_value_t = 0, env = "ENTCOUNT_SEED")]
    pub seed: u64,
    /// Slack granted to floating-point entropy checks.
    #[arg(long, global = true, env = "ENTCOUNT_TOLERANCE")]
    pub tolerance: Option<f64>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "ENTCOUNT_JOBS")]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Entropies of distributions and the binomial tail.
    Entropy {
        #[command(subcommand)]
        what: EntropyCmd,
    },
    /// Exact counts.
    Count {
        #[command(subcommand)]
        what: CountCmd,
    },
    /// A bound next to the exact count it controls.
    Bound {
        #[command(subcommand)]
        what: BoundCmd,
    },
    /// Run one registered check.
    Check(CheckArgs),
    /// Run a list of checks from a JSON spec file, or every check.
    Sweep {
        /// JSON list of {name, params, seed}.
        #[arg(long, conflicts_with = "all")]
        specs: Option<PathBuf>,
        /// Every registered check with its default family.
        #[arg(long)]
        all: bool,
    },
    /// Isomorph-free graph families.
    Enumerate {
        #[command(subcommand)]
        what: EnumerateCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum EntropyCmd {
    /// Joint and marginal entropies of a distribution file.
    Joint {
        file: PathBuf,
        /// Also run the property suite.
        #[arg(long)]
        check: bool,
    },
    /// H(p) of a biased coin.
    Binary { p: f64 },
    /// H(Bin(m, 1/2)).
    Binomial { m: usize },
    /// Exact symmetric binomial tail against 2^(1 - c^2/2).
    Tail {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: f64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GraphArg {
    /// Named graph or graph file.
    #[arg(long)]
    pub graph: String,
}

#[derive(Subcommand, Debug)]
pub enum CountCmd {
    /// Permanent of a 0-1 matrix.
    Permanent {
        #[arg(long)]
        matrix: String,
    },
    /// Perfect matchings.
    PerfectMatchings(GraphArg),
    /// Matchings of size t, or all matchings.
    Matchings {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Independent sets of size t, or all independent sets.
    IndependentSets {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Proper colourings with q colours.
    Colorings {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        q: usize,
    },
    /// Homomorphisms from the graph to the target.
    Hom {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        target: String,
    },
    /// Injective homomorphisms from the pattern into the graph.
    Embed {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        pattern: String,
    },
    /// Cycle-cover sums (even and all).
    CycleCovers(GraphArg),
    /// Matchings of size t in K(n,d), from the component formula.
    KddMatchings {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: usize,
    },
    /// Least size of a distinguishing family on n points.
    MinDistinguishing {
        #[arg(long)]
        n: usize,
    },
    /// Largest triangle-intersecting family of graphs on n vertices.
    TriangleFamily {
        #[arg(long)]
        n: usize,
    },
    /// Volume and coordinate projections of a lattice body.
    Projections {
        #[arg(long)]
        body: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoundCmd {
    /// Permanent against prod (r_i!)^(1/r_i).
    Bregman {
        #[arg(long)]
        matrix: String,
    },
    /// Perfect matchings against prod (d_v!)^(1/2d_v).
    KahnLovasz(GraphArg),
    /// Volume against the product of coordinate projections.
    LoomisWhitney {
        #[arg(long)]
        body: String,
    },
    /// Colourings of a d-regular bipartite graph against c_q(K_{d,d})^(n/2d).
    Colorings {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        q: usize,
    },
    /// Homomorphisms of a d-regular bipartite graph against hom(K_{d,d},H)^(n/2d).
    Homs {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        target: String,
    },
    /// Homomorphisms of a d-regular graph against the ordered product bound.
    Ordered {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        target: String,
        /// Vertices from first to last, comma separated (default natural).
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
    },
    /// Embeddings of the pattern against (2 l)^rho*.
    Embed {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        pattern: String,
    },
    /// sum_{i <= alpha n} C(n,i) against 2^(H(alpha) n).
    BinomSum {
        #[arg(long)]
        n: usize,
        /// p/q or a decimal.
        #[arg(long)]
        alpha: String,
    },
    /// Lower bounds on the least distinguishing family.
    Coin {
        #[arg(long)]
        n: usize,
    },
    /// Optimal fractional edge cover.
    FractionalCover(GraphArg),
    /// Optimal fractional independent set.
    FractionalIndependence(GraphArg),
    /// Blow-up with at most l edges and many copies of the pattern.
    Hstar {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        ell: usize,
    },
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Registered check name.
    pub name: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub half_n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// One or more q values, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub q: Option<Vec<usize>>,
    #[arg(long)]
    pub t_max: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub targets: Option<Vec<String>>,
    #[arg(long)]
    pub instances: Option<usize>,
    #[arg(long)]
    pub orders: Option<usize>,
    /// Include non-bipartite graphs where the check allows it.
    #[arg(long)]
    pub general: Option<bool>,
    #[arg(long)]
    pub max_range: Option<u32>,
    #[arg(long)]
    pub max_edges: Option<usize>,
    #[arg(long)]
    pub max_ell: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    /// One row per instance.
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Subcommand, Debug)]
pub enum EnumerateCmd {
    /// d-regular graphs on n vertices.
    Regular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Print every graph, not just the count.
        #[arg(long)]
        list: bool,
    },
    /// d-regular bipartite graphs with parts of size half_n.
    Bipartite {
        #[arg(long)]
        half_n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        list: bool,
    },
    /// All graphs on n vertices.
    All {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        list: bool,
    },
}

/// Parses `args` (including the program name), runs, and returns the exit
/// code. Output goes to `stdout` unless `--out` is given.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{}", e.render())
            } else {
                write!(stderr, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.global.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::invalid(format!("cannot start {j} workers: {e}"))),
        },
        None => execute(&cli),
    };
    match result.and_then(|(text, code)| deliver(&cli.global, &text, stdout).map(|_| code)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

pub fn main() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn deliver(g: &Global, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match &g.out {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
            path: p.clone(),
            source,
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn load_graph(spec: &str) -> Result<Graph> {
    if Path::new(spec).is_file() {
        return read_graph(spec);
    }
    parse_named(spec)
}

fn numbers(args: &str, what: &str) -> Result<Vec<usize>> {
    args.split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::invalid(format!("bad parameters in `{what}`")))
}

fn load_matrix(spec: &str) -> Result<ZeroOneMatrix> {
    if Path::new(spec).is_file() {
        return read_matrix(spec);
    }
    match spec.split_once(':') {
        Some(("identity", n)) => ZeroOneMatrix::identity(numbers(n, spec)?[0]),
        Some(("ones", n)) => ZeroOneMatrix::all_ones(numbers(n, spec)?[0]),
        Some(("blocks", s)) => ZeroOneMatrix::ones_blocks(&numbers(s, spec)?),
        _ => Err(Error::invalid(format!("`{spec}` is neither a matrix file nor identity:N, ones:N, blocks:A,B"))),
    }
}

fn load_body(spec: &str) -> Result<LatticeBody> {
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|source| Error::Io {
            path: spec.into(),
            source,
        })?;
        return LatticeBody::parse(&text);
    }
    match spec.split_once(':') {
        Some(("box", s)) => LatticeBody::cuboid(&numbers(s, spec)?),
        _ => Err(Error::invalid(format!("`{spec}` is neither a body file nor box:A,B,.."))),
    }
}

fn json_text(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializes");
    s.push('\n');
    s
}

fn text_mode(g: &Global) -> Result<bool> {
    match g.format {
        None | Some(OutFormat::Text) => Ok(true),
        Some(OutFormat::Json) => Ok(false),
        Some(OutFormat::Csv) => Err(Error::invalid("csv output is available for check and sweep only")),
    }
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    let g = &cli.global;
    match &cli.verb {
        Verb::Entropy { what } => entropy_cmd(g, what).map(|t| (t, 0)),
        Verb::Count { what } => count_cmd(g, what).map(|t| (t, 0)),
        Verb::Bound { what } => bound_cmd(g, what),
        Verb::Check(args) => {
            let spec = check_spec(g, args)?;
            let report = verify::run_check(&spec)?;
            reports_out(g, vec![report])
        }
        Verb::Sweep { specs, all } => {
            let specs = match (specs, all) {
                (Some(p), _) => verify::read_specs(p)?,
                (None, true) => Registry::standard()
                    .entries()
                    .iter()
                    .map(|e| CheckSpec::new(e.name).with_seed(g.seed))
                    .collect(),
                (None, false) => return Err(Error::invalid("sweep needs --specs FILE or --all")),
            };
            for s in &specs {
                check_env_caps(&s.params)?;
            }
            reports_out(g, verify::sweep(&specs)?)
        }
        Verb::Enumerate { what } => enumerate_cmd(g, what).map(|t| (t, 0)),
    }
}

fn reports_out(g: &Global, reports: Vec<Report>) -> Result<(String, i32)> {
    let code = verify::exit_code(&reports);
    let text = match g.format {
        None | Some(OutFormat::Json) => verify::render_reports(&reports, Format::Json),
        Some(OutFormat::Csv) => verify::render_reports(&reports, Format::Csv),
        Some(OutFormat::Text) => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&format!(
                    "{} {}: {} instances, {} violations, {} tight, {} ms\n",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.check,
                    r.instances,
                    r.violations.len(),
                    r.tight_count,
                    r.elapsed_ms
                ));
            }
            s
        }
    };
    Ok((text, code))
}

fn check_spec(g: &Global, a: &CheckArgs) -> Result<CheckSpec> {
    let params = Params {
        n: a.n,
        max_n: a.max_n,
        half_n: a.half_n,
        d: a.d,
        qs: a.q.clone(),
        t_max: a.t_max,
        targets: a.targets.clone(),
        instances: a.instances,
        orders: a.orders,
        general: a.general,
        max_range: a.max_range,
        max_edges: a.max_edges,
        max_ell: a.max_ell,
        sizes: a.sizes.clone(),
        tolerance: g.tolerance,
    };
    check_env_caps(&params)?;
    let mut spec = CheckSpec::new(a.name.clone()).with_params(params).with_seed(g.seed);
    spec.verbose = a.verbose;
    Ok(spec)
}

/// Rejects parameters above any `ENTCOUNT_CAP_<NAME>` set in the
/// environment.
fn check_env_caps(p: &Params) -> Result<()> {
    let value = serde_json::to_value(p).expect("params serialize");
    let Value::Object(fields) = value else { return Ok(()) };
    for (key, v) in fields {
        let var = format!("{CAP_ENV_PREFIX}{}", key.to_uppercase());
        let Ok(cap) = std::env::var(&var) else { continue };
        let cap: f64 = cap.trim().parse().map_err(|_| Error::invalid(format!("{var} is not a number")))?;
        let worst = match &v {
            Value::Number(x) => x.as_f64(),
            Value::Array(xs) => xs.iter().filter_map(Value::as_f64).reduce(f64::max),
            _ => None,
        };
        if let Some(w) = worst {
            if w > cap {
                return Err(Error::invalid(format!("{key} = {w} exceeds {var} = {cap}")));
            }
        }
    }
    Ok(())
}

fn entropy_cmd(g: &Global, what: &EntropyCmd) -> Result<String> {
    let text = text_mode(g)?;
    let tol = g.tolerance.unwrap_or(verify::DEFAULT_TOLERANCE);
    Ok(match what {
        EntropyCmd::Joint { file, check } => {
            let j = read_joint(file)?;
            let marginals: Vec<f64> = (0..j.arity()).map(|i| j.entropy_of(1 << i)).collect::<Result<_>>()?;
            let checks = if *check {
                use rand::SeedableRng;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(g.seed);
                check_all(&j, &mut rng, tol)
            } else {
                Vec::new()
            };
            if text {
                joint_text(&j, &marginals, &checks)
            } else {
                json_text(&json!({ "entropy": j.entropy(), "marginals": marginals, "checks": checks }))
            }
        }
        EntropyCmd::Binary { p } => single(text, "binary entropy", binary_entropy(*p)?),
        EntropyCmd::Binomial { m } => single(text, "binomial entropy", binomial_half_entropy(*m)?),
        EntropyCmd::Tail { n, c } => {
            let t = chernoff_tail_check(*n, *c)?;
            if text {
                format!(
                    "tail {}/2^{} = {}\nbound {}\nholds {}\n",
                    t.tail_numerator, t.n, t.tail, t.bound, t.holds
                )
            } else {
                json_text(&t)
            }
        }
    })
}

fn joint_text(j: &JointDistribution, marginals: &[f64], checks: &[crate::entropy::PropertyCheck]) -> String {
    let mut s = format!("H = {}\n", j.entropy());
    for (i, h) in marginals.iter().enumerate() {
        s.push_str(&format!("H(X{i}) = {h}\n"));
    }
    for c in checks {
        s.push_str(&format!(
            "{} {}: {} vs {}\n",
            if c.holds { "ok" } else { "FAIL" },
            c.property,
            c.lhs,
            c.rhs
        ));
    }
    s
}

fn single(text: bool, what: &str, x: f64) -> String {
    if text {
        format!("{x}\n")
    } else {
        json_text(&json!({ "what": what, "value": x }))
    }
}

fn count_out(g: &Global, what: &str, input: &str, value: BigUint) -> Result<String> {
    Ok(if text_mode(g)? {
        format!("{value}\n")
    } else {
        json_text(&CountResult::new(what, input, value))
    })
}

fn count_cmd(g: &Global, what: &CountCmd) -> Result<String> {
    match what {
        CountCmd::Permanent { matrix } => {
            let m = load_matrix(matrix)?;
            count_out(g, "permanent", &render_matrix(&m), permanent(&m)?)
        }
        CountCmd::PerfectMatchings(a) => {
            let h = load_graph(&a.graph)?;
            count_out(g, "perfect matchings", &render_graph(&h), perfect_matchings(&h)?)
        }
        CountCmd::Matchings { g: a, t } => {
            let h = load_graph(&a.graph)?;
            let v = match t {
                Some(t) => matchings_of_size(&h, *t)?,
                None => matchings_total(&h)?,
            };
            count_out(g, &label("matchings", *t), &render_graph(&h), v)
        }
        CountCmd::IndependentSets { g: a, t } => {
            let h = load_graph(&a.graph)?;
            let v = match t {
                Some(t) => independent_sets_of_size(&h, *t)?,
                None => independent_sets_total(&h)?,
            };
            count_out(g, &label("independent sets", *t), &render_graph(&h), v)
        }
        CountCmd::Colorings { g: a, q } => {
            let h = load_graph(&a.graph)?;
            count_out(g, &format!("{q}-colorings"), &render_graph(&h), colorings(&h, *q)?)
        }
        CountCmd::Hom { g: a, target } => {
            let (h, t) = (load_graph(&a.graph)?, load_graph(target)?);
            let input = format!("{}{}", render_graph(&h), render_graph(&t));
            count_out(g, "homomorphisms", &input, hom_count(&h, &t)?)
        }
        CountCmd::Embed { g: a, pattern } => {
            let (h, p) = (load_graph(&a.graph)?, load_graph(pattern)?);
            let input = format!("{}{}", render_graph(&p), render_graph(&h));
            count_out(g, "embeddings", &input, embed_count(&p, &h)?)
        }
        CountCmd::CycleCovers(a) => {
            let h = load_graph(&a.graph)?;
            let s = cycle_cover_sums(&h)?;
            Ok(if text_mode(g)? {
                format!("even {}\nall {}\n", s.even, s.all)
            } else {
                json_text(&s)
            })
        }
        CountCmd::KddMatchings { n, d, t } => {
            count_out(g, "matchings in K(n,d)", &format!("{n} {d} {t}"), matchings_kdd_formula(*n, *d, *t)?)
        }
        CountCmd::MinDistinguishing { n } => {
            let (f, fam) = min_distinguishing(*n)?;
            Ok(if text_mode(g)? {
                format!("{f}\n")
            } else {
                json_text(&json!({ "what": "least distinguishing family", "n": n, "value": f, "family": fam.members() }))
            })
        }
        CountCmd::TriangleFamily { n } => {
            let (size, fam) = max_triangle_intersecting(*n)?;
            Ok(if text_mode(g)? {
                format!("{size}\n")
            } else {
                json_text(&json!({ "what": "triangle-intersecting family", "n": n, "value": size, "edge_masks": fam }))
            })
        }
        CountCmd::Projections { body } => {
            let b = load_body(body)?;
            let (vol, projs) = body_volume_and_projections(&b);
            Ok(if text_mode(g)? {
                let p: Vec<String> = projs.iter().map(|x| x.to_string()).collect();
                format!("volume {vol}\nprojections {}\n", p.join(" "))
            } else {
                let p: Vec<String> = projs.iter().map(|x| x.to_string()).collect();
                json_text(&json!({ "volume": vol.to_string(), "projections": p }))
            })
        }
    }
}

fn label(what: &str, t: Option<usize>) -> String {
    match t {
        Some(t) => format!("{what} of size {t}"),
        None => what.to_string(),
    }
}

fn bound_out(g: &Global, name: &str, count: &BigUint, bound: &RootProductBound) -> Result<(String, i32)> {
    let cmp = compare_exact(count, bound)?;
    let code = cmp.verdict.violates() as i32;
    let text = if text_mode(g)? {
        format!(
            "bound {}\ncount {count}\nverdict {:?}\nbound_approx {}\n",
            bound.normalized(),
            cmp.verdict,
            bound.to_f64()
        )
    } else {
        json_text(&json!({
            "bound_name": name,
            "count": count.to_string(),
            "bound": bound,
            "verdict": cmp.verdict,
            "slack_log2": cmp.slack_log2,
        }))
    };
    Ok((text, code))
}

fn regular(h: &Graph) -> Result<usize> {
    h.regular_degree().ok_or_else(|| Error::invalid("graph is not regular"))
}

fn bound_cmd(g: &Global, what: &BoundCmd) -> Result<(String, i32)> {
    match what {
        BoundCmd::Bregman { matrix } => {
            let m = load_matrix(matrix)?;
            bound_out(g, "bregman", &permanent(&m)?, &bregman_bound(&m.row_sums()))
        }
        BoundCmd::KahnLovasz(a) => {
            let h = load_graph(&a.graph)?;
            bound_out(g, "kahn-lovasz", &perfect_matchings(&h)?, &kahn_lovasz_bound(&h.degrees()))
        }
        BoundCmd::LoomisWhitney { body } => {
            let b = load_body(body)?;
            let (vol, bound, _) = loomis_whitney_check(&b)?;
            bound_out(g, "loomis-whitney", &vol, &bound)
        }
        BoundCmd::Colorings { g: a, q } => {
            let h = load_graph(&a.graph)?;
            if h.two_coloring().is_none() {
                return Err(Error::invalid("graph is not bipartite"));
            }
            let bound = colorings_bip_bound(h.n(), regular(&h)?, *q)?;
            bound_out(g, "bipartite colorings", &colorings(&h, *q)?, &bound)
        }
        BoundCmd::Homs { g: a, target } => {
            let (h, t) = (load_graph(&a.graph)?, load_graph(target)?);
            if h.two_coloring().is_none() {
                return Err(Error::invalid("graph is not bipartite"));
            }
            let bound = homs_bip_bound(h.n(), regular(&h)?, &t)?;
            bound_out(g, "bipartite homomorphisms", &hom_count(&h, &t)?, &bound)
        }
        BoundCmd::Ordered { g: a, target, order } => {
            let (h, t) = (load_graph(&a.graph)?, load_graph(target)?);
            let order = order.clone().unwrap_or_else(|| (0..h.n()).collect());
            let bound = nonbip_order_bound(&h, &order, &t)?;
            bound_out(g, "ordered homomorphisms", &hom_count(&h, &t)?, &bound)
        }
        BoundCmd::Embed { g: a, pattern } => {
            let (h, p) = (load_graph(&a.graph)?, load_graph(pattern)?);
            let bound = embed_upper_bound(&p, h.edge_count())?;
            bound_out(g, "embeddings", &embed_count(&p, &h)?, &bound)
        }
        BoundCmd::BinomSum { n, alpha } => {
            let a = match parse_rational(alpha) {
                Ok(a) => a,
                Err(_) => {
                    let x: f64 = alpha.parse().map_err(|_| Error::invalid(format!("bad alpha `{alpha}`")))?;
                    num_rational::BigRational::from_float(x).ok_or_else(|| Error::invalid("alpha must be finite"))?
                }
            };
            let c = binom_sum_bound(*n, &a)?;
            let text = if text_mode(g)? {
                format!("sum {}\nbound 2^{}\nholds {}\ncertified {}\n", c.lhs, c.log2_bound, c.holds, c.certified)
            } else {
                json_text(&c)
            };
            Ok((text, (!c.holds) as i32))
        }
        BoundCmd::Coin { n } => {
            let (simple, refined) = coin_lower_bounds(*n)?;
            let text = if text_mode(g)? {
                format!("simple {simple}\nrefined {refined}\n")
            } else {
                json_text(&json!({ "n": n, "simple": simple, "refined": refined }))
            };
            Ok((text, 0))
        }
        BoundCmd::FractionalCover(a) => {
            let w = fractional_cover(&load_graph(&a.graph)?)?;
            Ok((weights_out(g, &w)?, 0))
        }
        BoundCmd::FractionalIndependence(a) => {
            let w = fractional_independence(&load_graph(&a.graph)?)?;
            Ok((weights_out(g, &w)?, 0))
        }
        BoundCmd::Hstar { pattern, ell } => {
            let p = load_graph(pattern)?;
            let s = hstar_build(&p, *ell)?;
            let found = embed_count(&p, &s.graph)?;
            let text = if text_mode(g)? {
                let sizes: Vec<String> = s.sizes.iter().map(|x| x.to_string()).collect();
                format!(
                    "sizes {}\nedges {}\nguaranteed {}\nembeddings {found}\n{}",
                    sizes.join(" "),
                    s.graph.edge_count(),
                    s.guaranteed,
                    render_graph(&s.graph)
                )
            } else {
                let psi: Vec<String> = s.psi.iter().map(|x| x.to_string()).collect();
                json_text(&json!({
                    "sizes": s.sizes,
                    "psi": psi,
                    "edges": s.graph.edge_count(),
                    "guaranteed": s.guaranteed.to_string(),
                    "embeddings": found.to_string(),
                    "graph": render_graph(&s.graph),
                }))
            };
            Ok((text, (found < s.guaranteed) as i32))
        }
    }
}

fn weights_out(g: &Global, w: &crate::bounds::FractionalWeights) -> Result<String> {
    Ok(if text_mode(g)? {
        let ws: Vec<String> = w.weights.iter().map(|x| x.to_string()).collect();
        format!("objective {}\nweights {}\n", w.objective, ws.join(" "))
    } else {
        json_text(w)
    })
}

fn enumerate_cmd(g: &Global, what: &EnumerateCmd) -> Result<String> {
    let (graphs, list) = match what {
        EnumerateCmd::Regular { n, d, list } => (enumerate_regular(*n, *d)?, *list),
        EnumerateCmd::Bipartite { half_n, d, list } => (enumerate_bipartite_regular(*half_n, *d)?, *list),
        EnumerateCmd::All { n, list } => (enumerate_all_graphs(*n)?, *list),
    };
    Ok(if text_mode(g)? {
        let mut s = format!("{}\n", graphs.len());
        if list {
            for h in &graphs {
                s.push('\n');
                s.push_str(&render_graph(h));
            }
        }
        s
    } else {
        let rendered: Vec<String> = if list { graphs.iter().map(render_graph).collect() } else { Vec::new() };
        json_text(&json!({ "count": graphs.len(), "graphs": rendered }))
    })
}
