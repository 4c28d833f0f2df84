//! Subcommand definitions and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use sadic::directive::{DirectiveSequence, SadicError};
use sadic::dynamics::{
    coding_consistency, cs_density_histogram, letter_discrepancy, lyapunov, lyapunov_periodic,
    DynamicsError, ProjectionSign,
};
use sadic::mcf::{CellLabel, MCFAlgorithm, McfError};
use sadic::rauzy::{
    cloud, cloud_to_csv, cloud_to_png, cloud_to_svg, raster_tiling_check, raster_to_png,
    right_eigenvector_auto, CloudOptions, ProjectionFrame, RauzyError,
};
use sadic::simplex::SimplexPoint;
use sadic::spectral::{
    bpa_run, char_poly, effective_gcc, gcc_grid_search, pisot_certify, BpaVerdict, GccConfig,
    IntPoly, SpectralError,
};
use sadic::substitution::Substitution;
use sadic::word::Word;
use sadic::IntMatrix;

use crate::report::Report;

pub struct CliError {
    pub exit_code: i32,
    pub message: String,
}

pub enum CliOutcome {
    Success,
    Inconclusive,
}

fn internal(msg: impl Into<String>) -> CliError {
    CliError {
        exit_code: 1,
        message: msg.into(),
    }
}

fn domain(msg: impl Into<String>) -> CliError {
    CliError {
        exit_code: 2,
        message: msg.into(),
    }
}

fn inconclusive(msg: impl Into<String>) -> CliError {
    CliError {
        exit_code: 3,
        message: msg.into(),
    }
}

impl From<McfError> for CliError {
    fn from(e: McfError) -> Self {
        match e {
            McfError::DimensionMismatch(..) | McfError::InvalidCell(_) => internal(e.to_string()),
            _ => domain(e.to_string()),
        }
    }
}

impl From<SadicError> for CliError {
    fn from(e: SadicError) -> Self {
        match e {
            SadicError::LengthBudget { .. } => inconclusive(e.to_string()),
            _ => domain(e.to_string()),
        }
    }
}

impl From<RauzyError> for CliError {
    fn from(e: RauzyError) -> Self {
        match e {
            RauzyError::Io(io) => internal(io.to_string()),
            RauzyError::PointBudget { .. } => inconclusive(e.to_string()),
            _ => domain(e.to_string()),
        }
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::IndeterminatePrecision { .. }
            | SpectralError::EnumerationTooLarge { .. }
            | SpectralError::SearchExhausted => inconclusive(e.to_string()),
            SpectralError::Sadic(inner) => inner.into(),
            SpectralError::NotMonic | SpectralError::BadInput(_) => internal(e.to_string()),
        }
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::Sadic(inner) => inner.into(),
            DynamicsError::Rauzy(inner) => inner.into(),
            DynamicsError::Mcf(inner) => inner.into(),
            _ => domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        internal(e.to_string())
    }
}

fn default_precision() -> u32 {
    std::env::var("SADIC_PRECISION")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(256)
}

#[derive(Parser)]
#[command(
    name = "sadic",
    version,
    about = "Multidimensional continued fractions, S-adic words, Rauzy fractals, and spectrum verification"
)]
pub struct Cli {
    /// Cap worker parallelism (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Working precision in bits (default 256, or SADIC_PRECISION).
    #[arg(long, global = true)]
    pub precision_bits: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

/// Source of a directive sequence: an explicit substitution list or a
/// continued fraction expansion of a point.
#[derive(Args, Serialize, Clone)]
pub struct SequenceArgs {
    /// Substitutions like '1->13;2->12;3->2', multiple periods separated by
    /// '|' form a periodic sequence.
    #[arg(long, conflicts_with_all = ["algo", "x"])]
    pub subst: Option<String>,
    /// Algorithm id: cs, ar, brun, jp.
    #[arg(long, requires = "x")]
    pub algo: Option<String>,
    /// Point as comma-separated fractions or decimals, e.g. 2/5,1/4,7/20.
    #[arg(long, requires = "algo")]
    pub x: Option<String>,
    /// Alphabet size for algorithms that exist in several dimensions.
    #[arg(long, default_value_t = 3)]
    pub d: u8,
}

impl SequenceArgs {
    fn build(&self, precision: u32) -> Result<DirectiveSequence, CliError> {
        if let Some(text) = &self.subst {
            let subs: Vec<Substitution> = text
                .split('|')
                .map(|s| Substitution::parse(s.trim()).map_err(|e| internal(e.to_string())))
                .collect::<Result<_, _>>()?;
            return DirectiveSequence::periodic(subs).map_err(Into::into);
        }
        match (&self.algo, &self.x) {
            (Some(algo), Some(x)) => {
                let algo = MCFAlgorithm::by_name(algo, self.d)
                    .ok_or_else(|| internal(format!("unknown algorithm {algo:?}")))?;
                let point =
                    SimplexPoint::parse(x, precision).map_err(|e| internal(e.to_string()))?;
                DirectiveSequence::cf_driven(algo, point).map_err(Into::into)
            }
            _ => Err(internal("provide either --subst or --algo with --x")),
        }
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Run a continued fraction expansion and report cells, cocycle
    /// matrices, and convergence errors.
    Expand(ExpandArgs),
    /// Print a limit word prefix of a directive sequence.
    Word(WordArgs),
    /// Factor complexity p(1..n) from a saturated language table.
    Complexity(ComplexityArgs),
    /// Balance constants of the language.
    Balance(BalanceArgs),
    /// Rauzy fractal rendering and export.
    Rauzy(RauzyArgs),
    /// Raster tiling check for the lattice translates of the fractal.
    Tiling(TilingArgs),
    /// Balanced-pair algorithm run.
    Bpa(BpaArgs),
    /// Pisot certification of a polynomial, matrix, or substitution.
    Pisot(PisotArgs),
    /// Effective geometric coincidence check (single tuple or grid search).
    Gcc(GccArgs),
    /// Monte Carlo or periodic Lyapunov exponents.
    Lyapunov(LyapunovArgs),
    /// Cassaigne-Selmer invariant density histogram vs the analytic masses.
    Density(DensityArgs),
    /// Letter-count discrepancy trace of a limit word.
    Discrepancy(DiscrepancyArgs),
    /// Natural-coding consistency cross-check.
    CodingCheck(CodingCheckArgs),
}

pub fn run(cli: Cli) -> Result<CliOutcome, CliError> {
    let precision = cli.precision_bits.unwrap_or_else(default_precision);
    let out = cli.out.as_deref();
    match cli.command {
        Command::Expand(a) => expand(a, precision, out),
        Command::Word(a) => word(a, precision, out),
        Command::Complexity(a) => complexity(a, precision, out),
        Command::Balance(a) => balance(a, precision, out),
        Command::Rauzy(a) => rauzy(a, precision, out),
        Command::Tiling(a) => tiling(a, precision, out),
        Command::Bpa(a) => bpa(a, precision, out),
        Command::Pisot(a) => pisot(a, precision, out),
        Command::Gcc(a) => gcc(a, precision, out),
        Command::Lyapunov(a) => lyapunov_cmd(a, precision, out),
        Command::Density(a) => density(a, precision, out),
        Command::Discrepancy(a) => discrepancy(a, precision, out),
        Command::CodingCheck(a) => coding_check(a, precision, out),
    }
}

// ---------------------------------------------------------------------------

#[derive(Args, Serialize)]
pub struct ExpandArgs {
    /// Algorithm id: cs, ar, brun, jp.
    #[arg(long)]
    pub algo: String,
    #[arg(long, default_value_t = 3)]
    pub d: u8,
    /// Start point, e.g. 1/5,3/10,1/2.
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub steps: usize,
}

#[derive(Serialize)]
struct ExpandResult {
    cells: Vec<String>,
    completed_steps: usize,
    error: Option<String>,
    error_step: Option<usize>,
    iterates: Vec<Vec<String>>,
    /// trA^(k) per step as decimal-string rows.
    cocycle_products: Vec<Vec<Vec<String>>>,
    strong_errors: Vec<Vec<f64>>,
    weak_errors: Vec<Vec<f64>>,
}

fn expand(
    a: ExpandArgs,
    precision: u32,
    out: Option<&std::path::Path>,
) -> Result<CliOutcome, CliError> {
    if a.steps > 5_000 {
        // the record keeps every exact cocycle product; entries grow
        // linearly in bits, so the report would be quadratic in steps
        return Err(internal(
            "--steps larger than 5000 would produce a gigantic exact report",
        ));
    }
    let algo = MCFAlgorithm::by_name(&a.algo, a.d)
        .ok_or_else(|| internal(format!("unknown algorithm {:?}", a.algo)))?;
    let x = SimplexPoint::parse(&a.x, precision).map_err(|e| internal(e.to_string()))?;
    let rec = algo.expand(&x, a.steps);
    if rec.cells.is_empty() {
        if let Some((step, e)) = &rec.error {
            // nothing at all could be expanded: surface the domain error
            return Err(domain(format!("step {step}: {e}")));
        }
    }
    let errs = rec.convergence_errors();
    let result = ExpandResult {
        cells: rec.cells.iter().map(|c| c.to_string()).collect(),
        completed_steps: rec.cells.len(),
        error: rec.error.as_ref().map(|(_, e)| e.to_string()),
        error_step: rec.error.as_ref().map(|(k, _)| *k),
        iterates: rec.iterates.iter().map(|p| p.coord_strings()).collect(),
        cocycle_products: rec
            .products
            .iter()
            .map(IntMatrix::to_decimal_rows)
            .collect(),
        strong_errors: errs.strong,
        weak_errors: errs.weak,
    };
    Report::new("expand", None, precision, a, result).emit(out)?;
    Ok(CliOutcome::Success)
}

// ---------------------------------------------------------------------------

#[derive(Args, Serialize)]
pub struct WordArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    /// Number of letters to produce.
    #[arg(long)]
    pub length: usize,
}

#[derive(Serialize)]
struct WordResult {
    word: String,
    length: usize,
}

fn word(
    a: WordArgs,
    precision: u32,
    out: Option<&std::path::Path>,
) -> Result<CliOutcome, CliError> {
    let seq = a.seq.build(precision)?;
    let w = seq.limit_word_prefix(a.length)?;
    let result = WordResult {
        length: w.len(),
        word: w.to_string(),
    };
    Report::new("word", None, precision, a, result).emit(out)?;
    Ok(CliOutcome::Success)
}

// ---------------------------------------------------------------------------

#[derive(Args, Serialize)]
pub struct ComplexityArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
    /// Explicit scan depth; searched automatically when omitted.
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub depth_cap: usize,
}

#[derive(Serialize)]
struct ComplexityResult {
    complexities: Vec<usize>,
    depth: usize,
    saturated: bool,
}

fn complexity(
    a: ComplexityArgs,
    precision: u32,
    out: Option<&std::path::Path>,
) -> Result<CliOutcome, CliError> {
    let seq = a.seq.build(precision)?;
    let table = match a.depth {
        Some(depth) => seq.language(a.max_n, depth)?,
        None => seq.saturated_language(a.max_n, a.depth_cap)?,
    };
    let result = ComplexityResult {
        complexities: table.complexities(),
        depth: table.depth,
        saturated: table.saturated,
    };
    let unsaturated = !table.saturated;
    Report::new("complexity", None, precision, a, result).emit(out)?;
    Ok(if unsaturated {
        CliOutcome::Inconclusive
    } else {
        CliOutcome::Success
    })
}

// ---------------------------------------------------------------------------

#[derive(Args, Serialize)]
pub struct BalanceArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    /// Scan factors up to this length.
    #[arg(long, default_value_t = 64)]
    pub scan: usize,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub depth_cap: usize,
    /// Also compute per-factor constants for factors up to this length
    /// (3 when the flag is given bare).
    #[arg(long, num_args = 0..=1, default_missing_value = "3")]
    pub factors_up_to: Option<usize>,
}

fn balance(
    a: BalanceArgs,
    precision: u32,
    out: Option<&std::path::Path>,
) -> Result<CliOutcome, CliError> {
    let seq = a.seq.build(precision)?;
    let depth = match a.depth {
        Some(d) => d,
        None => seq.saturated_language(a.scan, a.depth_cap)?.depth,
    };
    let report = seq.balance(a.scan, depth, a.factors_up_to)?;
    Report::new("balance", None, precision, a, report).emit(out)?;
    Ok(CliOutcome::Success)
}

// ---------------------------------------------------------------------------

#[derive(Args, Serialize)]
pub struct RauzyArgs {
    #[command(subcommand)]
    pub action: RauzyAction,
}

#[derive(Subcommand, Serialize)]
pub enum RauzyAction {
    /// Generate the fractal point cloud and write it as PNG, SVG, or CSV
    /// (by file extension).
    Render(RenderArgs),
}

#[derive(Args, Serialize)]
pub struct RenderArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[arg(long)]
    pub depth: usize,
    #[arg(long, default_value_t = 1)]
    pub tag_len: usize,
    /// Output file; extension selects the format (.png, .svg, .csv). The
    /// global --out also works here when it carries one of those extensions.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Seed letters (default: whole alphabet).
    #[arg(long, value_delimiter = ',')]
    pub seed_letters: Option<Vec<u8>>,
    /// Deduplicate identical points on CSV export.
    #[arg(long, default_value_t = false)]
    pub dedup: bool,
    #[arg(long, default_value_t = 1024)]
    pub resolution: usize,
}

#[derive(Serialize)]
struct RenderResult {
    points: usize,
    max_supnorm: f64,
    letter_fractions: Vec<f64>,
    file: String,
}

fn rauzy(
    a: RauzyArgs,
    precision: u32,
    out: Option<&std::path::Path>,
) -> Result<CliOutcome, CliError> {
    let RauzyAction::Render(r) = a.action;
    let seq = r.seq.build(precision)?;
    let options = CloudOptions {
        seeds: r.seed_letters.clone(),
        precision_bits: precision,
        ..Default::default()
    };
    let c = cloud(&seq, r.depth, r.tag_len, &options)?;
    let is_image = |p: &std::path::Path| {
        matches!(
            p.extension().and_then(|e| e.to_str()),
            Some("png") | Some("svg") | Some("csv")
        )
    };
    // `--out cloud.png` renders the image there and leaves the report on
    // stdout; an explicit --file always wins
    let (file, report_out) = match (&r.file, out) {
        (Some(f), _) => (f.clone(), out),
        (None, Some(o)) if is_image(o) => (o.to_path_buf(), None),
        (None, _) => return Err(internal("provide --file (or --out) with .png/.svg/.csv")),
    };
    match file.extension().and_then(|e| e.to_str()).unwrap_or("") {
        "png" => cloud_to_png(&c, &file, r.resolution)?,
        "svg" => {
            let mut f = std::io::BufWriter::new(std::fs::File::create(&file)?);
            cloud_to_svg(&c, &mut f, r.resolution)?;
        }
        "csv" => {
            let mut f = std::io::BufWriter::new(std::fs::File::create(&file)?);
            cloud_to_csv(&c, &mut f, r.dedup)?;
        }
        other => return Err(internal(format!("unsupported extension {other:?}"))),
    }
    let result = RenderResult {
        points: c.points.len(),
        max_supnorm: c.max_supnorm,
        letter_fractions: c.letter_fractions(),
        file: file.display().to_string(),
    };
    Report::new("rauzy-render", None, precision, r, result).emit(report_out)?;
    Ok(CliOutcome::Success)
}

// ---------------------------------------------------------------------------

#[derive(Args, Serialize)]
pub struct TilingArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[arg(long)]
    pub depth: usize,
    #[arg(long, default_value_t = 2)]
    pub radius: i64,
    #[arg(long, default_value_t = 512)]
    pub resolution: usize,
    /// Optional PNG of the raster.
    #[arg(long)]
    pub image: Option<PathBuf>,
}

fn tiling(
    a: TilingArgs,
    precision: u32,
    out: Option<&std::path::Path>,
) -> Result<CliOutcome, CliError> {
    let seq = a.seq.build(precision)?;
    let options = CloudOptions {
        precision_bits: precision,
        ..Default::default()
    };
    let c = cloud(&seq, a.depth, 1, &options)?;
    let raster = raster_tiling_check(&c, a.radius, a.resolution)?;
    if let Some(path) = &a.image {
        raster_to_png(&raster, path)?;
    }
    Report::new("tiling", None, precision, a, &raster).emit(out)?;
    Ok(CliOutcome::Success)
}

// ---------------------------------------------------------------------------

#[derive(Args, Serialize)]
pub struct BpaArgs {
    /// Substitution, e.g. '1->13;2->12;3->2'.
    #[arg(long)]
    pub subst: String,
    #[arg(long, default_value_t = 10_000)]
    pub pair_cap: usize,
    #[arg(long, default_value_t = 1_000)]
    pub iter_cap: usize,
}

#[derive(Serialize)]
struct BpaReport {
    verdict: String,
    terminates: bool,
    pairs: Vec<String>,
    generations: Vec<Vec<String>>,
    rounds: usize,
    witness: Option<Vec<String>>,
}

fn bpa(a: BpaArgs, precision: u32, out: Option<&std::path::Path>) -> Result<CliOutcome, CliError> {
    let sigma = Substitution::parse(&a.subst).map_err(|e| internal(e.to_string()))?;
    let result = bpa_run(&sigma, a.pair_cap, a.iter_cap);
    let (verdict, witness, outcome) = match &result.verdict {
        BpaVerdict::Terminates => ("Terminates".to_string(), None, CliOutcome::Success),
        BpaVerdict::NonDiscrete { witness } => (
            "NonDiscrete".to_string(),
            Some(witness.iter().map(|p| p.to_string()).collect()),
            CliOutcome::Success,
        ),
        BpaVerdict::Inconclusive { reason } => (
            format!("Inconclusive: {reason}"),
            None,
            CliOutcome::Inconclusive,
        ),
    };
    let report = BpaReport {
        terminates: result.terminates(),
        verdict,
        pairs: result.pairs.iter().map(|p| p.to_string()).collect(),
        generations: result
            .generations
            .iter()
            .map(|g| g.iter().map(|p| p.to_string()).collect())
            .collect(),
        rounds: result.rounds,
        witness,
    };
    Report::new("bpa", None, precision, a, report).emit(out)?;
    Ok(outcome)
}

// ---------------------------------------------------------------------------

#[derive(Args, Serialize)]
pub struct PisotArgs {
    /// Monic polynomial, low-to-high coefficients, e.g. '-1,1,-2,1'.
    #[arg(long, conflicts_with_all = ["matrix", "subst"], allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// Square integer matrix, rows separated by ';', e.g. '1,1,0;0,1,1;1,0,0'.
    #[arg(long, conflicts_with = "subst", allow_hyphen_values = true)]
    pub matrix: Option<String>,
    /// Substitution whose incidence matrix is certified.
    #[arg(long)]
    pub subst: Option<String>,
}

fn pisot(
    a: PisotArgs,
    precision: u32,
    out: Option<&std::path::Path>,
) -> Result<CliOutcome, CliError> {
    let poly = if let Some(p) = &a.poly {
        let coeffs: Vec<i64> = p
            .split(',')
            .map(|c| {
                c.trim()
                    .parse()
                    .map_err(|_| internal(format!("bad coefficient {c:?}")))
            })
            .collect::<Result<_, _>>()?;
        IntPoly::from_i64(&coeffs)
    } else if let Some(m) = &a.matrix {
        let m = IntMatrix::parse(m).map_err(|e| internal(e.to_string()))?;
        char_poly(&m)
    } else if let Some(s) = &a.subst {
        let sigma = Substitution::parse(s).map_err(|e| internal(e.to_string()))?;
        char_poly(sigma.incidence())
    } else {
        return Err(internal("provide --poly, --matrix, or --subst"));
    };
    let cert = pisot_certify(&poly)?;
    Report::new("pisot", None, precision, a, cert).emit(out)?;
    Ok(CliOutcome::Success)
}

// ---------------------------------------------------------------------------

#[derive(Args, Serialize)]
pub struct GccArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    /// Cocycle level n.
    #[arg(long)]
    pub n: usize,
    /// Balance constant C.
    #[arg(long)]
    pub c: f64,
    /// Shift z as coordinates in the 1⊥ basis, e.g. '0.2,-0.4'.
    #[arg(long, conflicts_with = "search_z", allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Letter i.
    #[arg(long, default_value_t = 1)]
    pub i: u8,
    /// Grid-search over shifts (and letters) instead of one tuple.
    #[arg(long, default_value_t = false)]
    pub search_z: bool,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: usize,
    /// Levels tried by the search.
    #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 4, 6, 8])]
    pub search_levels: Vec<usize>,
    #[arg(long, default_value_t = 1.2)]
    pub z_extent: f64,
    #[arg(long, default_value_t = 9)]
    pub z_steps: usize,
}

fn gcc(a: GccArgs, precision: u32, out: Option<&std::path::Path>) -> Result<CliOutcome, CliError> {
    let seq = a.seq.build(precision)?;
    let eig = right_eigenvector_auto(&seq, 1e-30, precision)?;
    let u = eig.point.to_bigfloat_vec(precision);
    let frame = ProjectionFrame::new(&eig.point, precision);
    let config = GccConfig {
        budget: a.budget,
        ..Default::default()
    };
    if a.search_z {
        let witness = gcc_grid_search(
            &seq,
            &u,
            frame.basis_f64(),
            &a.search_levels,
            a.c,
            a.z_extent,
            a.z_steps,
            &config,
        )?;
        let found = witness.is_some();
        Report::new("gcc", None, precision, a, &witness).emit(out)?;
        return Ok(if found {
            CliOutcome::Success
        } else {
            CliOutcome::Inconclusive
        });
    }
    let z_basis: Vec<f64> = match &a.z {
        Some(z) => z
            .split(',')
            .map(|c| {
                c.trim()
                    .parse()
                    .map_err(|_| internal(format!("bad shift {c:?}")))
            })
            .collect::<Result<_, _>>()?,
        None => vec![0.0; seq.dim() as usize - 1],
    };
    let mut z = vec![0.0; seq.dim() as usize];
    for (coef, b) in z_basis.iter().zip(frame.basis_f64()) {
        for k in 0..z.len() {
            z[k] += coef * b[k];
        }
    }
    let witness = effective_gcc(&seq, &u, a.n, a.c, &z, a.i, &config)?;
    let verdict = witness.verdict;
    Report::new("gcc", None, precision, a, &witness).emit(out)?;
    Ok(if verdict {
        CliOutcome::Success
    } else {
        CliOutcome::Inconclusive
    })
}

// ---------------------------------------------------------------------------

#[derive(Args, Serialize)]
pub struct LyapunovArgs {
    /// Algorithm id: cs, brun, jp (ar has no Lebesgue-generic measure).
    #[arg(long)]
    pub algo: String,
    #[arg(long, default_value_t = 3)]
    pub d: u8,
    #[arg(long, default_value_t = 100_000)]
    pub steps: usize,
    #[arg(long, default_value_t = 32)]
    pub trials: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Deterministic periodic cell loop instead of Monte Carlo, e.g. '1,2'
    /// for CS cells or '1:2,2:3' for Brun pairs.
    #[arg(long)]
    pub cells: Option<String>,
}

fn parse_cells(algo: &MCFAlgorithm, text: &str) -> Result<Vec<CellLabel>, CliError> {
    let mut cells = Vec::new();
    for tok in text.split(',') {
        let tok = tok.trim();
        let cell = if let Some((a, b)) = tok.split_once(':') {
            let a: u64 = a
                .trim()
                .parse()
                .map_err(|_| internal(format!("bad cell {tok:?}")))?;
            let b: u64 = b
                .trim()
                .parse()
                .map_err(|_| internal(format!("bad cell {tok:?}")))?;
            match algo.name() {
                "brun" => CellLabel::Brun(a as u8, b as u8),
                "jacobi-perron" => CellLabel::Jp(a, b),
                _ => return Err(internal("pair cells need brun or jp")),
            }
        } else {
            let v: u8 = tok
                .parse()
                .map_err(|_| internal(format!("bad cell {tok:?}")))?;
            match algo.name() {
                "cassaigne-selmer" => CellLabel::Cs(v),
                "arnoux-rauzy" => CellLabel::Ar(v),
                _ => return Err(internal("single cells need cs or ar")),
            }
        };
        if !algo.cell_is_valid(&cell) {
            return Err(internal(format!("cell {cell} invalid for {}", algo.name())));
        }
        cells.push(cell);
    }
    Ok(cells)
}

fn lyapunov_cmd(
    a: LyapunovArgs,
    precision: u32,
    out: Option<&std::path::Path>,
) -> Result<CliOutcome, CliError> {
    let algo = MCFAlgorithm::by_name(&a.algo, a.d)
        .ok_or_else(|| internal(format!("unknown algorithm {:?}", a.algo)))?;
    if let Some(cells_text) = &a.cells {
        let cells = parse_cells(&algo, cells_text)?;
        let est = lyapunov_periodic(&algo, &cells)?;
        Report::new("lyapunov-periodic", None, precision, a, est).emit(out)?;
        return Ok(CliOutcome::Success);
    }
    let est = lyapunov(&algo, a.steps, a.trials, a.seed)?;
    let seed = a.seed;
    Report::new("lyapunov", Some(seed), precision, a, est).emit(out)?;
    Ok(CliOutcome::Success)
}

// ---------------------------------------------------------------------------

#[derive(Args, Serialize)]
pub struct DensityArgs {
    #[arg(long, default_value_t = 1_000_000)]
    pub steps: usize,
    #[arg(long, default_value_t = 8)]
    pub grid: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

fn density(
    a: DensityArgs,
    precision: u32,
    out: Option<&std::path::Path>,
) -> Result<CliOutcome, CliError> {
    let report = cs_density_histogram(a.steps, a.grid, a.seed)?;
    let seed = a.seed;
    Report::new("density", Some(seed), precision, a, report).emit(out)?;
    Ok(CliOutcome::Success)
}

// ---------------------------------------------------------------------------

#[derive(Args, Serialize)]
pub struct DiscrepancyArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub n_max: usize,
    #[arg(long, default_value_t = 20)]
    pub checkpoints: usize,
    /// Also trace occurrence deviations of these factors (comma separated).
    #[arg(long)]
    pub factors: Option<String>,
}

fn discrepancy(
    a: DiscrepancyArgs,
    precision: u32,
    out: Option<&std::path::Path>,
) -> Result<CliOutcome, CliError> {
    let seq = a.seq.build(precision)?;
    let eig = right_eigenvector_auto(&seq, 1e-30, precision)?;
    let u = eig.point.to_bigfloat_vec(precision);
    let factors: Option<Vec<Word>> = match &a.factors {
        None => None,
        Some(t) => Some(
            t.split(',')
                .map(|w| Word::parse(w.trim()).map_err(|e| internal(e.to_string())))
                .collect::<Result<_, _>>()?,
        ),
    };
    let trace = letter_discrepancy(&seq, &u, a.n_max, a.checkpoints, factors.as_deref())?;
    Report::new("discrepancy", None, precision, a, trace).emit(out)?;
    Ok(CliOutcome::Success)
}

// ---------------------------------------------------------------------------

#[derive(Args, Serialize)]
pub struct CodingCheckArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[arg(long, default_value_t = 1_000)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub epsilon: f64,
    /// Deliberately flip the projection sign (falsification control).
    #[arg(long, default_value_t = false)]
    pub flip_sign: bool,
}

fn coding_check(
    a: CodingCheckArgs,
    precision: u32,
    out: Option<&std::path::Path>,
) -> Result<CliOutcome, CliError> {
    let seq = a.seq.build(precision)?;
    let sign = if a.flip_sign {
        ProjectionSign::Plus
    } else {
        ProjectionSign::Minus
    };
    let report = coding_consistency(&seq, a.n, a.epsilon, sign)?;
    Report::new("coding-check", None, precision, a, report).emit(out)?;
    Ok(CliOutcome::Success)
}
