use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use homobraid::arith::FiniteField;
use homobraid::asf::{self, AsfError, HomogeneousElement};
use homobraid::betti::{self, BettiError, Constraint, SlRealization};
use homobraid::braid::{self, BraidError, BraidWord};
use homobraid::gauge::{self, GaugeError, TruncatedLoopMatrix};
use homobraid::mpgrading::{self, GradingError};
use homobraid::rootsys::{regular_numbers, CartanType, Family, RootSystem, RootSystemError, SlopeData};

#[derive(Parser)]
#[command(name = "homobraid", version, about = "Root data, slope braids, point counts and gauge normalization")]
struct Cli {
    /// Also print tab-separated rows for tabular commands (after the JSON).
    #[arg(long, global = true)]
    tsv: bool,
    /// Record wall time in the manifest.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degrees, exponents and basic invariants of a root system.
    Degrees(TypeArgs),
    /// Regular numbers of the Weyl group.
    RegularNumbers(TypeArgs),
    /// Moy–Prasad graded dimensions at a slope.
    Grading(SlopeArgs),
    /// Dimensions of the moduli spaces attached to a slope.
    Dims(SlopeArgs),
    /// Both sides of the fractional-part identity.
    IdentityCheck(SlopeArgs),
    /// The slope braid.
    Braid(BraidArgs),
    /// Garside normal form of a positive braid.
    BraidNf(BraidNfArgs),
    /// Point counts.
    #[command(subcommand)]
    Count(CountCommand),
    /// Gauge a random conjugate of ψ back to ψ.
    Gauge(GaugeArgs),
}

#[derive(Subcommand)]
enum CountCommand {
    /// Braid variety over F_q.
    Betti(BettiArgs),
    /// Lattice-chain model of the affine Springer fiber over F_q.
    Asf(AsfArgs),
}

#[derive(Args, Serialize)]
struct TypeArgs {
    /// Cartan family (A, B, C, D, E, F, G) or a full type such as A2.
    #[arg(long = "type")]
    family: String,
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Args, Serialize)]
struct SlopeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    ty: TypeArgs,
    /// Slope `d/m`.
    #[arg(long)]
    slope: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Serialize)]
struct BraidArgs {
    #[command(flatten)]
    #[serde(flatten)]
    slope: SlopeArgs,
    /// Starting angle of the path; defaults to a generic value.
    #[arg(long)]
    theta0: Option<f64>,
}

#[derive(Args, Serialize)]
struct BraidNfArgs {
    #[command(flatten)]
    #[serde(flatten)]
    ty: TypeArgs,
    /// Comma-separated letters, e.g. 1,2,1.
    #[arg(long)]
    braid: String,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ConstraintArg {
    None,
    Unipotent,
    /// No constraint, split by formal-monodromy class.
    Kappa,
}

#[derive(Args, Serialize)]
struct BettiArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    braid: String,
    #[arg(long)]
    q: u32,
    #[arg(long, value_enum, default_value = "none")]
    constraint: ConstraintArg,
    /// Split the count by formal-monodromy class.
    #[arg(long)]
    per_kappa: bool,
    #[arg(long, default_value_t = betti::DEFAULT_BUDGET as u64)]
    budget: u64,
}

#[derive(Args, Serialize)]
struct AsfArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    q: u32,
    /// Truncation window; defaults to d + 1.
    #[arg(long)]
    window: Option<u32>,
}

#[derive(Args, Serialize)]
struct GaugeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 8)]
    depth: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of grades in the random conjugating element.
    #[arg(long, default_value_t = 4)]
    generator_depth: i64,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Internal(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Internal(_) => 3,
            Failure::Budget(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Internal(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<RootSystemError> for Failure {
    fn from(e: RootSystemError) -> Self {
        match e {
            RootSystemError::Internal(_) => Failure::Internal(e.to_string()),
            RootSystemError::GroupTooLarge { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<GradingError> for Failure {
    fn from(e: GradingError) -> Self {
        match e {
            GradingError::Root(r) => r.into(),
            GradingError::Internal(_) => Failure::Internal(e.to_string()),
        }
    }
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        match e {
            BraidError::Root(r) => r.into(),
            BraidError::Internal(_) => Failure::Internal(e.to_string()),
            BraidError::SearchBudget(_) => Failure::Budget(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<BettiError> for Failure {
    fn from(e: BettiError) -> Self {
        match e {
            BettiError::Root(r) => r.into(),
            BettiError::Budget { .. } => Failure::Budget(e.to_string()),
            BettiError::Internal(_) | BettiError::InvalidPoint(_) => Failure::Internal(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<AsfError> for Failure {
    fn from(e: AsfError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<GaugeError> for Failure {
    fn from(e: GaugeError) -> Self {
        match e {
            GaugeError::InvalidInput(_) => Failure::Invalid(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

struct Output {
    body: Map<String, Value>,
    seed: Option<u64>,
    inputs: Value,
    rows: Vec<Vec<String>>,
}

impl Output {
    fn new(body: Value, inputs: impl Serialize) -> Self {
        let Value::Object(body) = body else { unreachable!("outputs are objects") };
        Output { body, seed: None, inputs: serde_json::to_value(inputs).unwrap(), rows: Vec::new() }
    }

    fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    fn rows(mut self, rows: Vec<Vec<String>>) -> Self {
        self.rows = rows;
        self
    }
}

fn root_system(t: &TypeArgs) -> Result<RootSystem, Failure> {
    let ct = match t.rank {
        Some(rank) => CartanType::new(t.family.parse::<Family>()?, rank)?,
        None => t.family.parse::<CartanType>()?,
    };
    Ok(RootSystem::new(ct)?)
}

fn slope_data(s: &SlopeArgs) -> Result<SlopeData, Failure> {
    Ok(SlopeData::parse(&root_system(&s.ty)?, &s.slope, s.seed)?)
}

/// A count as a JSON number, or a decimal string beyond `u64`.
fn big(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v))
}

fn row<T: ToString>(cells: impl IntoIterator<Item = T>) -> Vec<String> {
    cells.into_iter().map(|c| c.to_string()).collect()
}

fn degrees(a: &TypeArgs) -> Result<Output, Failure> {
    let rs = root_system(a)?;
    let body = json!({
        "type": rs.cartan_type().to_string(),
        "rank": rs.rank(),
        "degrees": rs.degrees(),
        "exponents": rs.exponents(),
        "coxeter_number": rs.coxeter_number(),
        "num_roots": rs.num_roots(),
        "weyl_group_order": big(rs.weyl_group_order()),
    });
    let rows = rs.degrees().iter().zip(rs.exponents()).map(|(d, e)| row([*d, e])).collect();
    Ok(Output::new(body, a).rows(rows))
}

fn regular(a: &TypeArgs) -> Result<Output, Failure> {
    let rs = root_system(a)?;
    let nums = regular_numbers(&rs);
    let rows = nums.iter().map(|m| row([m])).collect();
    Ok(Output::new(json!({ "regular_numbers": nums }), a).rows(rows))
}

fn grading(a: &SlopeArgs) -> Result<Output, Failure> {
    let sd = slope_data(a)?;
    let g = mpgrading::build_grading(&sd)?;
    let rows = g.g_dims.iter().zip(&g.c_dims).enumerate().map(|(i, (x, c))| row([i, *x, *c])).collect();
    let mut body = serde_json::to_value(&g).unwrap();
    body["x_m"] = json!(g.x_m.iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(Output::new(body, a).seed(a.seed).rows(rows))
}

fn dims(a: &SlopeArgs) -> Result<Output, Failure> {
    let sd = slope_data(a)?;
    let d = mpgrading::moduli_dims(&sd)?;
    Ok(Output::new(serde_json::to_value(d).unwrap(), a).seed(a.seed))
}

fn identity_check(a: &SlopeArgs) -> Result<Output, Failure> {
    let sd = slope_data(a)?;
    let (lhs, rhs) = mpgrading::fractional_identity_check(&sd);
    if lhs != rhs {
        return Err(Failure::Internal(format!("fractional identity fails: {lhs} ≠ {rhs}")));
    }
    Ok(Output::new(json!({ "lhs": lhs.to_string(), "rhs": rhs.to_string(), "holds": true }), a).seed(a.seed))
}

fn braid_cmd(a: &BraidArgs) -> Result<Output, Failure> {
    let sd = slope_data(&a.slope)?;
    let theta0 = a.theta0.unwrap_or_else(|| braid::default_theta0(&sd));
    let b = braid::slope_braid(&sd, theta0)?;
    let body = json!({ "letters": b.letters(), "length": b.len(), "theta0": theta0 });
    Ok(Output::new(body, a).seed(a.slope.seed))
}

fn braid_nf(a: &BraidNfArgs) -> Result<Output, Failure> {
    let rs = root_system(&a.ty)?;
    let b = BraidWord::parse(&rs, &a.braid)?;
    let nf = braid::normal_form(&rs, &b);
    let words = nf.factor_words(&rs);
    let rows = words.iter().map(|w| row(w)).collect();
    let body = json!({ "delta_power": nf.delta_power, "factors": words, "length": nf.length(&rs) });
    Ok(Output::new(body, a).rows(rows))
}

fn count_betti(a: &BettiArgs) -> Result<Output, Failure> {
    let real = SlRealization::new(a.n, a.q)?;
    let b = BraidWord::parse(real.root_system(), &a.braid)?;
    let (constraint, per_kappa) = match a.constraint {
        ConstraintArg::None => (Constraint::None, a.per_kappa),
        ConstraintArg::Unipotent => (Constraint::Unipotent, a.per_kappa),
        ConstraintArg::Kappa => (Constraint::None, true),
    };
    let report = betti::count(&real, &b, constraint, a.budget.into())?;
    if constraint == Constraint::None && report.raw % report.group_order != 0 {
        return Err(Failure::Internal(format!(
            "raw count {} is not divisible by |G| = {}",
            report.raw, report.group_order
        )));
    }
    let mut body = json!({
        "raw": big(report.raw),
        "group_order": big(report.group_order),
        "stacky": report.stacky().to_string(),
        "constraint": constraint.tag(),
    });
    let mut rows = Vec::new();
    if per_kappa {
        let fibers = betti::fiber_count_by_kappa(&real, &b, constraint, a.budget.into())?;
        let total: u128 = fibers.values().sum();
        if total != report.raw {
            return Err(Failure::Internal(format!("fibers sum to {total}, expected {}", report.raw)));
        }
        let classes = betti::twisted_classes(&real, &b)?;
        let entries: Vec<Value> = classes
            .iter()
            .map(|k| {
                let c = fibers.get(k).copied().unwrap_or(0);
                rows.push(row([format!("{k:?}"), c.to_string()]));
                json!({ "kappa": k, "raw": big(c) })
            })
            .collect();
        body["per_kappa"] = Value::Array(entries);
    }
    Ok(Output::new(body, a).rows(rows))
}

fn count_asf(a: &AsfArgs) -> Result<Output, Failure> {
    let psi = HomogeneousElement::new(a.n, a.d)?;
    let f = FiniteField::new(a.q).map_err(AsfError::from)?;
    let report = asf::count_asf(&psi, &f, a.window.unwrap_or_else(|| psi.default_window()))?;
    let body = json!({ "count": big(report.count), "window": report.window, "stable": report.stable });
    Ok(Output::new(body, a))
}

fn gauge_cmd(a: &GaugeArgs) -> Result<Output, Failure> {
    if a.n < 2 || a.d == 0 {
        return Err(Failure::Invalid("need n ≥ 2 and d ≥ 1".into()));
    }
    HomogeneousElement::new(a.n, a.d)?;
    if a.depth < 0 || a.generator_depth < 0 {
        return Err(Failure::Invalid("depths must be nonnegative".into()));
    }
    let psi = TruncatedLoopMatrix::psi(a.n, a.d);
    let floor = -a.depth - a.d as i64;
    let h = gauge::random_pro_unipotent(a.n, a.generator_depth, floor, a.seed);
    let target = h.act(&psi).truncate(-a.depth);
    let g = gauge::gauge_to(&psi, &target, a.depth)?;
    let residual_zero = gauge::residual(&psi, &target, &g, a.depth).is_zero();
    if !residual_zero {
        return Err(Failure::Internal("nonzero residual after gauge normalization".into()));
    }
    let body = json!({ "factors": gauge::factor_report(&g), "residual_zero": residual_zero });
    Ok(Output::new(body, a).seed(a.seed))
}

fn dispatch(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Degrees(a) => degrees(a),
        Command::RegularNumbers(a) => regular(a),
        Command::Grading(a) => grading(a),
        Command::Dims(a) => dims(a),
        Command::IdentityCheck(a) => identity_check(a),
        Command::Braid(a) => braid_cmd(a),
        Command::BraidNf(a) => braid_nf(a),
        Command::Count(CountCommand::Betti(a)) => count_betti(a),
        Command::Count(CountCommand::Asf(a)) => count_asf(a),
        Command::Gauge(a) => gauge_cmd(a),
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("HOMOBRAID_THREADS") else { return Ok(()) };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Invalid(format!("HOMOBRAID_THREADS = `{v}` is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Internal(e.to_string()))
}

fn run(cli: &Cli, argv: &[String]) -> Result<(), Failure> {
    configure_threads()?;
    let start = Instant::now();
    let out = dispatch(&cli.command)?;
    let mut manifest = json!({
        "command_line": argv,
        "seed": out.seed,
        "versions": { "homobraid": homobraid::VERSION, "cli": env!("CARGO_PKG_VERSION") },
        "inputs": out.inputs,
    });
    if cli.timing {
        manifest["wall_time_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
    }
    let mut doc = out.body;
    doc.insert("schema".into(), json!(1));
    doc.insert("manifest".into(), manifest);
    println!("{}", Value::Object(doc));
    if cli.tsv {
        for r in &out.rows {
            println!("{}", r.join("\t"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::iter::once("homobraid".to_string()).chain(std::env::args().skip(1)).collect();
    let cli = Cli::parse();
    match run(&cli, &argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
