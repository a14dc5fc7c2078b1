//! Command-line front end.
//!
//! Every solver checks its answer exactly on a sample set and reports the
//! verdict next to the sampled graph of the solution. Exit codes are listed on
//! [`Status`].

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use ordaut_core::rational::parse_rational;
use ordaut_core::{
    color_sequence, commutator_decomposition, enumerate_color_sequences, measure_locate, nth_root, realize,
    solve_conjugacy_with, solve_two_sided, solve_word, support_decompose, validate, Automorphism, ColorSequence,
    Exponent, LocateMode, PlAutomorphism, Rational, Terrain, Word,
};
use serde::Serialize;

use crate::json::{parse_pl, parse_word, CostReportJson, ElementJson, PlJson, PointJson, TerrainJson, Q};
use crate::samples::{sample_set, DEFAULT_SAMPLES};

const LONG_ABOUT: &str = "\
Exact order automorphisms of the rational line.

Maps compose LEFT TO RIGHT: the word `f g` applies f first, then g, and
`x^-1 g x = f` means t -> x(g(x^-1(t))) equals f(t). Input maps are PL JSON
files ({\"knots\":[{\"x\":\"p/q\",\"y\":\"p/q\"}],\"left_slope\":\"1\",\"right_slope\":\"1\"});
`-` reads standard input.

Exit codes: 0 success, 1 no solution exists, 2 input error, 3 verification failure.";

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    NoSolution = 1,
    InputError = 2,
    VerificationFailed = 3,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Linear,
    FastForward,
}

impl From<ModeArg> for LocateMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Linear => LocateMode::Linear,
            ModeArg::FastForward => LocateMode::FastForward,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ordaut", version, about = "Exact order automorphisms of the rational line", long_about = LONG_ABOUT)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Number of rational sample points used for verification and graphs.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Orbit location strategy.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Linear)]
    pub mode: ModeArg,
    /// Seed for the random part of the sample set.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Terrain and color sequence of a PL map.
    Terrain { map: PathBuf },
    /// Decide whether f = h^-1 g h has a solution h and build it.
    Conjugate { g: PathBuf, f: PathBuf },
    /// Solve x^e1 g x^e2 = f (default e1 = e2 = 1).
    SolveXgx {
        g: PathBuf,
        f: PathBuf,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        e1: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        e2: i64,
    },
    /// Solve w(x_2, ..., x_n) = g for a reduced word w (Word JSON).
    SolveWord { word: PathBuf, g: PathBuf },
    /// An n-th root x with x^n = g.
    Root {
        g: PathBuf,
        #[arg(short, long)]
        n: usize,
    },
    /// x, y with x^-1 y^-1 x y = g.
    Commutator { g: PathBuf },
    /// All color sequences of length n.
    EnumerateTerrains { n: usize },
    /// A PL map whose terrain has the given color sequence, e.g. "+0-".
    Realize {
        #[arg(allow_hyphen_values = true)]
        sequence: String,
    },
    /// Locate gamma in the orbit partition of g anchored at alpha and report the cost.
    Measure {
        g: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
    },
    /// Evaluate a PL map at the given points (or at the sample set).
    Eval {
        map: PathBuf,
        #[arg(long = "at", allow_hyphen_values = true)]
        points: Vec<String>,
        #[arg(long)]
        inverse: bool,
    },
}

/// Rendered JSON and the exit status it implies.
#[derive(Debug)]
pub struct Output {
    pub json: String,
    pub status: Status,
}

#[derive(Debug, Serialize)]
pub struct Mismatch {
    pub x: Q,
    pub lhs: Q,
    pub rhs: Q,
}

#[derive(Debug, Serialize)]
pub struct Verification {
    pub equation: String,
    pub samples: usize,
    pub verified: bool,
    pub mismatches: Vec<Mismatch>,
}

/// Exact comparison of `lhs` and `rhs` at every sample; keeps the first few
/// disagreements.
pub fn verify(equation: &str, lhs: &Automorphism, rhs: &Automorphism, pts: &[Rational]) -> Verification {
    let mut mismatches = Vec::new();
    let mut verified = true;
    for q in pts {
        let (a, b) = (lhs.eval(q), rhs.eval(q));
        if a != b {
            verified = false;
            if mismatches.len() < 5 {
                mismatches.push(Mismatch { x: Q(q.clone()), lhs: Q(a), rhs: Q(b) });
            }
        }
    }
    Verification { equation: equation.to_string(), samples: pts.len(), verified, mismatches }
}

pub fn graph(a: &Automorphism, pts: &[Rational]) -> Vec<PointJson> {
    pts.iter().map(|q| PointJson { x: Q(q.clone()), y: Q(a.eval(q)) }).collect()
}

#[derive(Debug, Serialize)]
struct Pairing {
    color: String,
    source: ElementJson,
    target: ElementJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    anchors: Option<[Q; 2]>,
}

fn pairings(source: &Terrain, target: &Terrain) -> Vec<Pairing> {
    source
        .elements
        .iter()
        .zip(&target.elements)
        .map(|(i, j)| Pairing {
            color: i.color.symbol().to_string(),
            source: i.into(),
            target: j.into(),
            anchors: i.color.is_component().then(|| [Q(i.anchor()), Q(j.anchor())]),
        })
        .collect()
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_pl(path: &Path) -> anyhow::Result<PlAutomorphism> {
    parse_pl(&read_input(path)?).with_context(|| format!("parsing PL map from {}", path.display()))
}

fn load_word(path: &Path) -> anyhow::Result<Word> {
    parse_word(&read_input(path)?).with_context(|| format!("parsing word from {}", path.display()))
}

fn rational_arg(name: &str, s: &str) -> anyhow::Result<Rational> {
    match parse_rational(s) {
        Some(q) => Ok(q),
        None => bail!("--{name}: not a rational: {s:?}"),
    }
}

fn colors_of(g: &PlAutomorphism) -> String {
    color_sequence(&support_decompose(g)).to_string()
}

fn render<T: Serialize>(value: &T, status: Status) -> anyhow::Result<Output> {
    Ok(Output { json: serde_json::to_string_pretty(value)?, status })
}

fn verdict(v: &Verification) -> Status {
    if v.verified {
        Status::Success
    } else {
        Status::VerificationFailed
    }
}

pub fn run(cli: &Cli) -> anyhow::Result<Output> {
    let OutputFormat::Json = cli.output;
    if cli.samples == 0 {
        bail!("--samples must be positive");
    }
    let samples = |maps: &[&PlAutomorphism]| sample_set(maps, cli.samples, cli.seed);
    match &cli.command {
        Command::Terrain { map } => cmd_terrain(&load_pl(map)?),
        Command::Conjugate { g, f } => {
            let (g, f) = (load_pl(g)?, load_pl(f)?);
            cmd_conjugate(&g, &f, cli.mode.into(), &samples(&[&g, &f]))
        }
        Command::SolveXgx { g, f, e1, e2 } => {
            let (Some(e1), Some(e2)) = (Exponent::from_sign(*e1), Exponent::from_sign(*e2)) else {
                bail!("exponents must be 1 or -1");
            };
            let (g, f) = (load_pl(g)?, load_pl(f)?);
            let pts = samples(&[&g, &f, &f.then(&g), &g.then(&f)]);
            cmd_solve_two_sided(&g, &f, e1, e2, &pts)
        }
        Command::SolveWord { word, g } => {
            let (w, g) = (load_word(word)?, load_pl(g)?);
            cmd_solve_word(&w, &g, &samples(&[&g]))
        }
        Command::Root { g, n } => {
            let g = load_pl(g)?;
            cmd_root(&g, *n, &samples(&[&g]))
        }
        Command::Commutator { g } => {
            let g = load_pl(g)?;
            cmd_commutator(&g, &samples(&[&g]))
        }
        Command::EnumerateTerrains { n } => cmd_enumerate(*n),
        Command::Realize { sequence } => cmd_realize(sequence),
        Command::Measure { g, alpha, gamma } => {
            let g = load_pl(g)?;
            cmd_measure(&g, &rational_arg("alpha", alpha)?, &rational_arg("gamma", gamma)?, cli.mode.into())
        }
        Command::Eval { map, points, inverse } => {
            let g = load_pl(map)?;
            let pts = if points.is_empty() {
                samples(&[&g])
            } else {
                points.iter().map(|p| rational_arg("at", p)).collect::<anyhow::Result<_>>()?
            };
            cmd_eval(&g, &pts, *inverse)
        }
    }
}

#[derive(Debug, Serialize)]
struct TerrainResponse {
    colors: String,
    valid: bool,
    terrain: TerrainJson,
}

pub fn cmd_terrain(g: &PlAutomorphism) -> anyhow::Result<Output> {
    let t = support_decompose(g);
    let valid = validate(&t);
    let resp = TerrainResponse { colors: color_sequence(&t).to_string(), valid, terrain: (&t).into() };
    render(&resp, if valid { Status::Success } else { Status::VerificationFailed })
}

#[derive(Debug, Serialize)]
struct ColorPair {
    g: String,
    f: String,
}

#[derive(Debug, Serialize)]
struct Solution<C: Serialize> {
    construction: C,
    graph: Vec<PointJson>,
}

#[derive(Debug, Serialize)]
struct ConjugatorConstruction {
    method: &'static str,
    locate_mode: &'static str,
    pairs: Vec<Pairing>,
}

#[derive(Debug, Serialize)]
struct ConjugateResponse {
    conjugate: bool,
    colors: ColorPair,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solution: Option<Solution<ConjugatorConstruction>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<Verification>,
}

pub fn cmd_conjugate(g: &PlAutomorphism, f: &PlAutomorphism, mode: LocateMode, pts: &[Rational]) -> anyhow::Result<Output> {
    let colors = ColorPair { g: colors_of(g), f: colors_of(f) };
    let Some(h) = solve_conjugacy_with(g, f, mode) else {
        let resp = ConjugateResponse { conjugate: false, colors, verified: None, solution: None, verification: None };
        return render(&resp, Status::NoSolution);
    };
    let h: Automorphism = h.into();
    let lhs = h.inverse().then(&g.clone().into()).then(&h);
    let v = verify("h^-1 g h = f", &lhs, &f.clone().into(), pts);
    let construction = ConjugatorConstruction {
        method: "orbit conjugator",
        locate_mode: mode.name(),
        pairs: pairings(&support_decompose(g), &support_decompose(f)),
    };
    let status = verdict(&v);
    let resp = ConjugateResponse {
        conjugate: true,
        colors,
        verified: Some(v.verified),
        solution: Some(Solution { construction, graph: graph(&h, pts) }),
        verification: Some(v),
    };
    render(&resp, status)
}

#[derive(Debug, Serialize)]
struct TwoSidedConstruction {
    method: &'static str,
    exponents: [i64; 2],
    /// Terrain of the product whose components carry the construction.
    terrain: TerrainJson,
}

#[derive(Debug, Serialize)]
struct TwoSidedResponse {
    equation: String,
    solvable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solution: Option<Solution<TwoSidedConstruction>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<Verification>,
}

fn sign(e: Exponent) -> i64 {
    match e {
        Exponent::Plus => 1,
        Exponent::Minus => -1,
    }
}

pub fn cmd_solve_two_sided(
    g: &PlAutomorphism,
    f: &PlAutomorphism,
    e1: Exponent,
    e2: Exponent,
    pts: &[Rational],
) -> anyhow::Result<Output> {
    let equation = format!("x^{} g x^{} = f", sign(e1), sign(e2));
    let Some(x) = solve_two_sided(g, f, e1, e2) else {
        let resp = TwoSidedResponse { equation, solvable: false, verified: None, solution: None, verification: None };
        return render(&resp, Status::NoSolution);
    };
    let power = |e: Exponent| if e == Exponent::Plus { x.clone() } else { x.inverse() };
    let lhs = power(e1).then(&g.clone().into()).then(&power(e2));
    let v = verify(&equation, &lhs, &f.clone().into(), pts);
    let (method, terrain) = match (e1, e2) {
        (Exponent::Plus, Exponent::Plus) => ("xgx", support_decompose(&f.then(g))),
        (Exponent::Minus, Exponent::Minus) => ("xgx on x f x = g", support_decompose(&g.then(f))),
        _ => ("orbit conjugator", support_decompose(g)),
    };
    let construction = TwoSidedConstruction { method, exponents: [sign(e1), sign(e2)], terrain: (&terrain).into() };
    let status = verdict(&v);
    let resp = TwoSidedResponse {
        equation,
        solvable: true,
        verified: Some(v.verified),
        solution: Some(Solution { construction, graph: graph(&x, pts) }),
        verification: Some(v),
    };
    render(&resp, status)
}

#[derive(Debug, Serialize)]
struct VariableGraph {
    var: u32,
    graph: Vec<PointJson>,
}

#[derive(Debug, Serialize)]
struct WordConstruction {
    method: &'static str,
    word: String,
    cyclic_core: String,
    terrain: TerrainJson,
}

#[derive(Debug, Serialize)]
struct WordResponse {
    equation: String,
    verified: bool,
    construction: WordConstruction,
    assignment: Vec<VariableGraph>,
    verification: Verification,
}

fn letters_string(letters: &[ordaut_core::Letter]) -> String {
    Word::new(letters.to_vec()).map(|w| w.to_string()).unwrap_or_default()
}

pub fn cmd_solve_word(w: &Word, g: &PlAutomorphism, pts: &[Rational]) -> anyhow::Result<Output> {
    let a = solve_word(w, g)?;
    let equation = format!("{w} = g");
    let v = verify(&equation, &a.evaluate(w), &g.clone().into(), pts);
    let construction = WordConstruction {
        method: "orbit grid interpolation",
        word: w.to_string(),
        cyclic_core: letters_string(&w.cyclic_reduction().1),
        terrain: (&support_decompose(g)).into(),
    };
    let assignment = a.iter().map(|(v, x)| VariableGraph { var: *v, graph: graph(x, pts) }).collect();
    let status = verdict(&v);
    render(&WordResponse { equation, verified: v.verified, construction, assignment, verification: v }, status)
}

#[derive(Debug, Serialize)]
struct RootConstruction {
    method: &'static str,
    n: usize,
    terrain: TerrainJson,
}

#[derive(Debug, Serialize)]
struct RootResponse {
    equation: String,
    verified: bool,
    solution: Solution<RootConstruction>,
    verification: Verification,
}

pub fn cmd_root(g: &PlAutomorphism, n: usize, pts: &[Rational]) -> anyhow::Result<Output> {
    let x = nth_root(g, n)?;
    let equation = format!("x^{n} = g");
    let v = verify(&equation, &x.power(n as i64), &g.clone().into(), pts);
    let construction = RootConstruction { method: "orbit grid interpolation", n, terrain: (&support_decompose(g)).into() };
    let status = verdict(&v);
    let resp = RootResponse { equation, verified: v.verified, solution: Solution { construction, graph: graph(&x, pts) }, verification: v };
    render(&resp, status)
}

#[derive(Debug, Serialize)]
struct CommutatorResponse {
    equation: &'static str,
    verified: bool,
    construction: WordConstruction,
    assignment: Vec<VariableGraph>,
    verification: Verification,
}

pub fn cmd_commutator(g: &PlAutomorphism, pts: &[Rational]) -> anyhow::Result<Output> {
    let (x, y) = commutator_decomposition(g);
    let lhs = x.inverse().then(&y.inverse()).then(&x).then(&y);
    let v = verify("x^-1 y^-1 x y = g", &lhs, &g.clone().into(), pts);
    let w = Word::commutator(2, 3);
    let construction = WordConstruction {
        method: "orbit grid interpolation",
        word: w.to_string(),
        cyclic_core: w.to_string(),
        terrain: (&support_decompose(g)).into(),
    };
    let assignment = vec![VariableGraph { var: 2, graph: graph(&x, pts) }, VariableGraph { var: 3, graph: graph(&y, pts) }];
    let status = verdict(&v);
    let resp = CommutatorResponse { equation: "x^-1 y^-1 x y = g", verified: v.verified, construction, assignment, verification: v };
    render(&resp, status)
}

#[derive(Debug, Serialize)]
struct EnumerateResponse {
    n: usize,
    count: usize,
    sequences: Vec<String>,
}

pub fn cmd_enumerate(n: usize) -> anyhow::Result<Output> {
    if n == 0 {
        bail!("terrains have at least one element");
    }
    let sequences: Vec<String> = enumerate_color_sequences(n).iter().map(|s| s.to_string()).collect();
    render(&EnumerateResponse { n, count: sequences.len(), sequences }, Status::Success)
}

#[derive(Debug, Serialize)]
struct RealizeResponse {
    sequence: String,
    map: PlJson,
    roundtrip: String,
    verified: bool,
}

pub fn cmd_realize(sequence: &str) -> anyhow::Result<Output> {
    let s: ColorSequence = sequence.parse().with_context(|| format!("parsing color sequence {sequence:?}"))?;
    let g = realize(&s)?;
    let back = color_sequence(&support_decompose(&g));
    let verified = back == s;
    let resp = RealizeResponse { sequence: s.to_string(), map: (&g).into(), roundtrip: back.to_string(), verified };
    render(&resp, if verified { Status::Success } else { Status::VerificationFailed })
}

pub fn cmd_measure(g: &PlAutomorphism, alpha: &Rational, gamma: &Rational, mode: LocateMode) -> anyhow::Result<Output> {
    let report = measure_locate(g, alpha, gamma, mode).context("gamma must lie in the support component of alpha")?;
    render(&CostReportJson::from(&report), Status::Success)
}

#[derive(Debug, Serialize)]
struct EvalResponse {
    inverse: bool,
    points: Vec<PointJson>,
}

pub fn cmd_eval(g: &PlAutomorphism, pts: &[Rational], inverse: bool) -> anyhow::Result<Output> {
    let points = pts
        .iter()
        .map(|q| PointJson { x: Q(q.clone()), y: Q(if inverse { g.eval_inverse(q) } else { g.eval(q) }) })
        .collect();
    render(&EvalResponse { inverse, points }, Status::Success)
}
