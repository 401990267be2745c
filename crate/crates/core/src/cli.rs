//! Command-line front end. Every run writes one [`FactorReport`] and exits
//! 0 on success, 2 on invalid input, 3 on numerical failure.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::ahiezer::{ahiezer_from_factor, upper_halfplane_zero_count, verify_outer, zero_free_certificate, ContourBox};
use crate::ap::{ApFunc, FREQ_MERGE_TOL};
use crate::cepstral::{cepstral_factor_circle, cepstral_factor_ordered, CepstralConfig, Ladder};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::io::{self, Coeffs, CoeffFile, FactorReport};
use crate::levinson::szego_factor;
use crate::order::ArchOrder;
use crate::roots::{fejer_riesz, mahler_jensen, mahler_quadrature, outer_check, FejerRieszConfig};
use crate::trig::TrigPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Roots,
    Cepstral,
    Levinson,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Roots => "roots",
            Method::Cepstral => "cepstral",
            Method::Levinson => "levinson",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Factor,
    Mahler,
    Lift,
    Ahiezer,
    VerifyOuter,
    VerifyFixtures,
    Compare,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Factor => "factor",
            Command::Mahler => "mahler",
            Command::Lift => "lift",
            Command::Ahiezer => "ahiezer",
            Command::VerifyOuter => "verify-outer",
            Command::VerifyFixtures => "verify-fixtures",
            Command::Compare => "compare",
        }
    }
}

/// Default tolerances; any of them can be overridden with `--tol name=value`.
pub fn default_tolerances() -> BTreeMap<String, f64> {
    [
        ("nonneg", 1e-9),
        ("boundary", 1e-6),
        ("threshold", 1e-10),
        ("nyquist", 1e-8),
        ("certificate", 1e-8),
        ("containment", 1e-8),
        ("outer", 1e-6),
        ("compare", 1e-5),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

/// Fully resolved settings of one run, echoed into the report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub method: Method,
    pub methods: Vec<Method>,
    pub grid: usize,
    /// Levinson section order; `None` is `max(64, 4 · degree)`.
    pub order: Option<usize>,
    /// `(m_max, n_max)`, zero meaning off.
    pub ladder: Option<(u64, u64)>,
    pub alpha: Option<f64>,
    pub polish: bool,
    pub tolerances: BTreeMap<String, f64>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    /// Points per axis in CSV output.
    pub samples: usize,
    #[serde(rename = "box")]
    pub contour: Option<[f64; 4]>,
    pub seed: Option<u64>,
    pub count: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            method: Method::Roots,
            methods: vec![Method::Roots, Method::Cepstral, Method::Levinson],
            grid: 4096,
            order: None,
            ladder: None,
            alpha: None,
            polish: false,
            tolerances: default_tolerances(),
            input: None,
            output: None,
            csv: None,
            samples: 256,
            contour: None,
            seed: None,
            count: 20,
        }
    }

    fn tol(&self, name: &str) -> f64 {
        self.tolerances[name]
    }

    pub fn validate(&self) -> Result<()> {
        if !crate::grid::is_power_of_two(self.grid) {
            return Err(Error::InvalidArgument(format!("grid must be a power of two, got {}", self.grid)));
        }
        for (name, v) in &self.tolerances {
            if !default_tolerances().contains_key(name) {
                return Err(Error::InvalidArgument(format!("unknown tolerance {name:?}")));
            }
            if !(v.is_finite() && *v > 0.0) {
                return Err(Error::InvalidArgument(format!("tolerance {name} must be positive, got {v}")));
            }
        }
        if let Some(a) = self.alpha {
            ArchOrder::new(a)?;
        }
        if self.order == Some(0) {
            return Err(Error::InvalidArgument("order must be positive".into()));
        }
        if self.samples == 0 {
            return Err(Error::InvalidArgument("samples must be positive".into()));
        }
        Ok(())
    }

    fn ladder(&self) -> Ladder {
        match self.ladder {
            None => Ladder::trivial(),
            Some((m, n)) => Ladder::new((m > 0).then_some(m as f64), (n > 0).then_some(n as usize)),
        }
    }

    fn cepstral(&self) -> CepstralConfig {
        let mut c = CepstralConfig::new(self.grid).with_ladder(self.ladder());
        c.threshold = self.tol("threshold");
        c.nyquist_tol = self.tol("nyquist");
        c
    }

    fn fejer_riesz(&self) -> FejerRieszConfig {
        FejerRieszConfig {
            nonneg_tol: self.tol("nonneg"),
            boundary_tol: self.tol("boundary"),
            polish: self.polish,
        }
    }

    fn read_input(&self) -> Result<Coeffs> {
        let path = self
            .input
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("missing --in".into()))?;
        let c = io::read_coeffs(path)?;
        match (&c, self.alpha) {
            (Coeffs::Bivar(_), None) => Err(Error::InvalidArgument("bivar input needs --alpha".into())),
            (Coeffs::Trig(_) | Coeffs::Ap(_), Some(_)) => Err(Error::InvalidArgument(format!(
                "--alpha only applies to bivar input, got {}",
                c.kind()
            ))),
            _ => Ok(c),
        }
    }

    fn order_from_alpha(&self) -> Option<ArchOrder> {
        self.alpha.map(|a| ArchOrder::new(a).expect("validated"))
    }
}

/// Outcome of [`run`]: exit code and the report that was written.
pub struct Outcome {
    pub code: i32,
    pub report: FactorReport,
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_validation() {
        2
    } else {
        3
    }
}

/// Runs one command and writes the report to `config.output` when set.
pub fn run(config: &RunConfig) -> Outcome {
    let mut report = FactorReport::new(config.command.name(), io::to_value(config));
    let result = config.validate().and_then(|_| dispatch(config, &mut report));
    let code = match &result {
        Ok(()) => 0,
        Err(e) => {
            report.error = Some(e.into());
            exit_code(e)
        }
    };
    if let Some(path) = &config.output {
        if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
            let e = Error::Io(format!("{}: {e}", path.display()));
            report.error = Some((&e).into());
            return Outcome { code: 3, report };
        }
    }
    Outcome { code, report }
}

fn dispatch(cfg: &RunConfig, report: &mut FactorReport) -> Result<()> {
    match cfg.command {
        Command::Factor => factor(cfg, report),
        Command::Mahler => mahler(cfg, report),
        Command::Lift => lift(cfg, report),
        Command::Ahiezer => ahiezer(cfg, report),
        Command::VerifyOuter => verify_outer_cmd(cfg, report),
        Command::VerifyFixtures => verify_fixtures(cfg, report),
        Command::Compare => compare(cfg, report),
    }
}

fn csv_writer(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |e| Error::Io(format!("{}: {e}", path.display()))
}

fn as_trig(c: Coeffs) -> Result<TrigPoly> {
    match c {
        Coeffs::Trig(p) => Ok(p),
        other => Err(Error::InvalidArgument(format!("expected trig input, got {}", other.kind()))),
    }
}

/// One circle factor by `method`, with its report entries.
fn factor_circle(cfg: &RunConfig, method: Method, w: &TrigPoly, report: &mut FactorReport) -> Result<TrigPoly> {
    match method {
        Method::Roots => {
            let f = fejer_riesz(w, &cfg.fejer_riesz())?;
            report.roots = f.roots.iter().map(|r| [r.re, r.im]).collect();
            report.mahler = Some(mahler_jensen(&f.h)?.powi(2));
            report.residual = Some(f.residual);
            report.flag("boundary_pairs", f.boundary_pairs);
            let q = mahler_quadrature(w, 1 << 14)?;
            report.flag("clipped_samples", q.clipped);
            report.diag("mahler_quadrature", q.value);
            report.diag("scale", f.scale);
            Ok(f.h)
        }
        Method::Cepstral => {
            let t = cepstral_factor_circle(w, &cfg.cepstral())?;
            let tol = cfg.tol("certificate");
            report.mahler = Some(t.h.coeff(0).re.powi(2));
            report.residual = Some(t.residual);
            report.flag("certified", t.ladder.iter().all(|s| s.is_certified(tol)));
            report.diag("ladder", &t.ladder);
            Ok(t.h)
        }
        Method::Levinson => {
            let n = cfg.order.unwrap_or((4 * w.degree()).max(64));
            let f = szego_factor(w, n, cfg.grid)?;
            report.diag("section_order", n);
            report.mahler = Some(f.section.eps);
            report.residual = Some(f.residual);
            report.diag("eps", f.section.eps);
            report.diag("mahler_quadrature", f.mahler);
            report.diag("gap", f.gap);
            report.diag("flatness", f.section.flatness);
            report.diag("min_abs_predictor", f.section.min_abs_predictor);
            report.diag("leak", f.section.leak);
            report.diag("prediction_errors", &f.section.predictor.errors);
            Ok(f.section.h)
        }
    }
}

fn factor(cfg: &RunConfig, report: &mut FactorReport) -> Result<()> {
    report.method = Some(cfg.method.name().into());
    match cfg.read_input()? {
        Coeffs::Trig(w) => {
            let h = factor_circle(cfg, cfg.method, &w, report)?;
            report.factor = Some(CoeffFile::from(&h));
            if let Some(path) = &cfg.csv {
                io::emit_factor_samples(&w, &h, cfg.samples, &mut csv_writer(path)?).map_err(io_err(path))?;
            }
        }
        Coeffs::Bivar(w) => {
            if cfg.method != Method::Cepstral {
                return Err(Error::InvalidArgument(format!(
                    "bivar input needs --method cepstral, got {}",
                    cfg.method.name()
                )));
            }
            let order = cfg.order_from_alpha().unwrap();
            let t = cepstral_factor_ordered(&w, &order, &cfg.cepstral())?;
            let cont = t.containment.unwrap();
            report.factor = Some(CoeffFile::from(&t.h));
            report.mahler = Some(t.h.coeff(crate::trig::Z2(0, 0)).re.powi(2));
            report.residual = Some(t.residual);
            report.order = Some(order);
            report.flag("certified", t.ladder.iter().all(|s| s.is_certified(cfg.tol("certificate"))));
            report.flag("contained", cont.holds(cfg.tol("containment")));
            report.diag("containment", cont);
            report.diag("ladder", &t.ladder);
            if let Some(path) = &cfg.csv {
                io::emit_factor_samples_bivar(&w, &t.h, cfg.samples, &mut csv_writer(path)?).map_err(io_err(path))?;
            }
        }
        Coeffs::Ap(_) => {
            return Err(Error::InvalidArgument("factor takes trig or bivar input; use ahiezer for ap".into()))
        }
    }
    Ok(())
}

fn mahler(cfg: &RunConfig, report: &mut FactorReport) -> Result<()> {
    let h = as_trig(cfg.read_input()?)?;
    let jensen = mahler_jensen(&h)?;
    let q = mahler_quadrature(&h, cfg.grid)?;
    report.mahler = Some(jensen);
    report.flag("clipped_samples", q.clipped);
    report.diag("mahler_quadrature", q.value);
    if h.min_freq().is_some_and(|k| k >= 0) {
        let check = outer_check(&h, cfg.tol("outer"))?;
        report.flag("outer", check.by_mahler);
        report.diag("outer_check", check);
    }
    Ok(())
}

fn lift(cfg: &RunConfig, report: &mut FactorReport) -> Result<()> {
    let Coeffs::Bivar(p) = cfg.read_input()? else {
        return Err(Error::InvalidArgument("lift takes bivar input".into()));
    };
    let order = cfg.order_from_alpha().unwrap();
    let f = order.lift(&p)?;
    report.factor = Some(CoeffFile::from(&f));
    report.diag("bohr_mean", [f.bohr_mean().re, f.bohr_mean().im]);
    report.diag("bandwidth", f.bandwidth());
    report.order = Some(order);
    if let Some(path) = &cfg.csv {
        let span = std::f64::consts::TAU * 10.0;
        io::emit_samples(&Coeffs::Ap(f), cfg.samples, span, &mut csv_writer(path)?).map_err(io_err(path))?;
    }
    Ok(())
}

fn contour_box(b: [f64; 4]) -> ContourBox {
    ContourBox::new(b[0], b[1], b[2], b[3])
}

fn ahiezer(cfg: &RunConfig, report: &mut FactorReport) -> Result<()> {
    let Coeffs::Ap(h) = cfg.read_input()? else {
        return Err(Error::InvalidArgument("ahiezer takes ap input".into()));
    };
    let pair = ahiezer_from_factor(&h)?;
    report.factor = Some(CoeffFile::from(&pair.s));
    report.residual = Some(pair.identity_residual);
    report.flag("spectrum_contained", pair.spectrum_contained);
    report.diag("tau", pair.tau);
    report.diag("f", CoeffFile::from(&pair.f));
    if let Some(b) = cfg.contour {
        // S differs from h by the zero-free e^{−iτz/2}
        let zeros = upper_halfplane_zero_count(&h, &contour_box(b), cfg.samples)?;
        report.diag("upper_zero_count", zeros);
    }
    if let Some(path) = &cfg.csv {
        let span = std::f64::consts::TAU * 10.0;
        io::emit_samples(&Coeffs::Ap(pair.s), cfg.samples, span, &mut csv_writer(path)?).map_err(io_err(path))?;
    }
    Ok(())
}

/// Outerness of a trig or one-sided ap input. Trig inputs are decided by
/// both the root criterion and zero counting; ap inputs by zero counting over
/// one period `2π/ω_min`, or over `--box` (its `y0` as the lower height).
fn verify_outer_cmd(cfg: &RunConfig, report: &mut FactorReport) -> Result<()> {
    let (f, roots_verdict) = match cfg.read_input()? {
        Coeffs::Trig(h) => {
            let check = outer_check(&h, cfg.tol("outer"))?;
            report.diag("outer_check", check);
            (ApFunc::from_trig(&h), Some(check.by_mahler))
        }
        Coeffs::Ap(f) => (f, None),
        Coeffs::Bivar(_) => return Err(Error::InvalidArgument("verify outer takes trig or ap input".into())),
    };
    let verdict = match cfg.contour {
        Some(b) => {
            let cert = zero_free_certificate(&f, (b[0], b[1]), b[2], cfg.samples)?;
            let outer = f.bohr_mean().norm() > 0.0 && cert.zero_free();
            report.diag("certificate", &cert);
            outer
        }
        None => {
            let w_min = f
                .iter()
                .map(|(w, _)| w)
                .filter(|w| *w > FREQ_MERGE_TOL)
                .fold(f64::INFINITY, f64::min);
            let period = if w_min.is_finite() { std::f64::consts::TAU / w_min } else { std::f64::consts::TAU };
            let v = verify_outer(&f, period, 1e-6, cfg.samples)?;
            report.diag("certificate", &v.certificate);
            v.outer
        }
    };
    report.flag("outer", verdict);
    if let Some(r) = roots_verdict {
        report.flag("criteria_agree", r == verdict);
    }
    Ok(())
}

/// Random outer polynomials through all three methods; fails when any
/// factor misses the generator.
fn verify_fixtures(cfg: &RunConfig, report: &mut FactorReport) -> Result<()> {
    let seed = cfg.seed.unwrap_or(0);
    let mut rng = fixtures::rng(seed);
    let tol = cfg.tol("compare");
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for case in 0..cfg.count {
        let d = 1 + case % 8;
        let h = fixtures::random_outer(&mut rng, d, 1.2, 3.0);
        let w = h.squared_modulus();
        let mut scratch = FactorReport::default();
        let mut case_worst = 0.0f64;
        for &m in &cfg.methods {
            let got = factor_circle(cfg, m, &w, &mut scratch)?;
            case_worst = case_worst.max(got.max_coeff_diff(&h));
        }
        worst = worst.max(case_worst);
        if case_worst >= tol {
            failures.push(json!({"case": case, "degree": d, "error": case_worst}));
        }
    }
    report.diag("seed", seed);
    report.diag("cases", cfg.count);
    report.diag("worst_error", worst);
    report.diag("failures", &failures);
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Error::VerificationFailed {
            failures: failures.len(),
            total: cfg.count,
        })
    }
}

fn compare(cfg: &RunConfig, report: &mut FactorReport) -> Result<()> {
    let w = as_trig(cfg.read_input()?)?;
    let mut factors = Vec::with_capacity(cfg.methods.len());
    for &m in &cfg.methods {
        let mut sub = FactorReport::default();
        let h = factor_circle(cfg, m, &w, &mut sub)?;
        report.diag(
            m.name(),
            json!({"factor": CoeffFile::from(&h), "mahler": sub.mahler, "residual": sub.residual}),
        );
        factors.push((m, h));
    }
    let mut deltas = BTreeMap::new();
    for (i, (a, ha)) in factors.iter().enumerate() {
        for (b, hb) in &factors[i + 1..] {
            deltas.insert(format!("{}-{}", a.name(), b.name()), ha.max_coeff_diff(hb));
        }
    }
    let tol = cfg.tol("compare");
    report.flag("agree", deltas.values().all(|d| *d < tol));
    report.diag("deltas", &deltas);
    report.method = Some(cfg.methods.iter().map(|m| m.name()).collect::<Vec<_>>().join(","));
    Ok(())
}

#[derive(Parser, Debug)]
#[command(name = "specfact", version, about = "Outer spectral factors of nonnegative trigonometric and almost periodic spectra")]
pub struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Coefficient JSON file
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Report file; printed to stdout when absent
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// CSV samples file
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
    /// Points per axis in the CSV
    #[arg(long, default_value_t = 256)]
    samples: usize,
    /// Tolerance override, e.g. --tol boundary=1e-7 (repeatable)
    #[arg(long = "tol", value_name = "NAME=VALUE", value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
}

#[derive(Args, Debug, Clone)]
struct Numerics {
    /// Grid size for cepstral and levinson (power of two)
    #[arg(long, default_value_t = 4096)]
    grid: usize,
    /// Levinson section order [default: max(64, 4 × input degree)]
    #[arg(long)]
    order: Option<usize>,
    /// Cepstral ladder m_max,n_max (0 disables either part)
    #[arg(long, value_name = "M,N", value_parser = parse_ladder)]
    ladder: Option<(u64, u64)>,
    /// One Newton step per root in the roots method
    #[arg(long)]
    polish: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Outer factor of a nonnegative trig or bivar weight
    Factor {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        numerics: Numerics,
        #[arg(long, value_enum, default_value = "roots")]
        method: Method,
        /// Order slope; required for bivar input
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Mahler measure by Jensen's formula and by quadrature
    Mahler {
        #[command(flatten)]
        common: Common,
        /// Quadrature points
        #[arg(long, default_value_t = 1 << 14)]
        grid: usize,
    },
    /// Lift a bivar polynomial to an almost periodic function on the line
    Lift {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        alpha: f64,
    },
    /// Ahiezer factor of |h|² for a one-sided ap function h
    Ahiezer {
        #[command(flatten)]
        common: Common,
        /// Count zeros of h in x0,x1,y0,y1
        #[arg(long = "box", value_name = "X0,X1,Y0,Y1", value_parser = parse_box)]
        contour: Option<[f64; 4]>,
    },
    /// Verification suites
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Factor one weight by several methods and report pairwise deltas
    Compare {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        numerics: Numerics,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "roots,cepstral,levinson")]
        methods: Vec<Method>,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyTarget {
    /// Outerness by zero counting (and roots, for trig input)
    Outer {
        #[command(flatten)]
        common: Common,
        /// x0,x1,y_min,unused: horizontal window and lower height
        #[arg(long = "box", value_name = "X0,X1,Y0,Y1", value_parser = parse_box)]
        contour: Option<[f64; 4]>,
    },
    /// Random outer fixtures through every method; seed from SPECFACT_SEED
    Fixtures {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[command(flatten)]
        numerics: Numerics,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long = "tol", value_name = "NAME=VALUE", value_parser = parse_tol)]
        tol: Vec<(String, f64)>,
    },
}

fn parse_tol(s: &str) -> std::result::Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or("expected NAME=VALUE")?;
    let v: f64 = v.parse().map_err(|e| format!("{v:?}: {e}"))?;
    Ok((k.to_string(), v))
}

fn parse_list<const N: usize, T: std::str::FromStr>(s: &str) -> std::result::Result<[T; N], String>
where
    T::Err: std::fmt::Display,
{
    let parts: Vec<T> = s
        .split(',')
        .map(|p| p.trim().parse::<T>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    parts.try_into().map_err(|_| format!("expected {N} comma-separated values"))
}

fn parse_ladder(s: &str) -> std::result::Result<(u64, u64), String> {
    let [m, n] = parse_list::<2, u64>(s)?;
    Ok((m, n))
}

fn parse_box(s: &str) -> std::result::Result<[f64; 4], String> {
    parse_list::<4, f64>(s)
}

impl Common {
    fn apply(&self, cfg: &mut RunConfig) {
        cfg.input = Some(self.input.clone());
        cfg.output = self.out.clone();
        cfg.csv = self.csv.clone();
        cfg.samples = self.samples;
        cfg.tolerances.extend(self.tol.iter().cloned());
    }
}

impl Numerics {
    fn apply(&self, cfg: &mut RunConfig) {
        cfg.grid = self.grid;
        cfg.order = self.order;
        cfg.ladder = self.ladder;
        cfg.polish = self.polish;
    }
}

impl Cli {
    /// Resolves the parsed arguments; `SPECFACT_SEED` is read here.
    pub fn into_config(self) -> Result<RunConfig> {
        Ok(match self.command {
            Cmd::Factor { common, numerics, method, alpha } => {
                let mut c = RunConfig::new(Command::Factor);
                common.apply(&mut c);
                numerics.apply(&mut c);
                c.method = method;
                c.alpha = alpha;
                c
            }
            Cmd::Mahler { common, grid } => {
                let mut c = RunConfig::new(Command::Mahler);
                common.apply(&mut c);
                c.grid = grid;
                c
            }
            Cmd::Lift { common, alpha } => {
                let mut c = RunConfig::new(Command::Lift);
                common.apply(&mut c);
                c.alpha = Some(alpha);
                c
            }
            Cmd::Ahiezer { common, contour } => {
                let mut c = RunConfig::new(Command::Ahiezer);
                common.apply(&mut c);
                c.contour = contour;
                c
            }
            Cmd::Verify { target: VerifyTarget::Outer { common, contour } } => {
                let mut c = RunConfig::new(Command::VerifyOuter);
                common.apply(&mut c);
                c.contour = contour;
                c
            }
            Cmd::Verify { target: VerifyTarget::Fixtures { count, numerics, out, tol } } => {
                let mut c = RunConfig::new(Command::VerifyFixtures);
                numerics.apply(&mut c);
                c.count = count;
                c.output = out;
                c.tolerances.extend(tol);
                c.seed = Some(fixtures::seed_from_env()?);
                c
            }
            Cmd::Compare { common, numerics, methods } => {
                let mut c = RunConfig::new(Command::Compare);
                common.apply(&mut c);
                numerics.apply(&mut c);
                c.methods = methods;
                c
            }
        })
    }
}

/// Parses `args`, runs, prints the report when no `--out` was given, and
/// returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let config = match cli.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let outcome = run(&config);
    if config.output.is_none() {
        use std::io::Write;
        // a closed pipe is the reader's choice, not a failure of the run
        let _ = writeln!(std::io::stdout().lock(), "{}", outcome.report.to_json());
    }
    if let Some(e) = &outcome.report.error {
        eprintln!("error: {} ({})", e.message, e.name);
    }
    outcome.code
}
