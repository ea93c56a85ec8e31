//! Monte Carlo sweeps: i.i.d. Z noise, decoding, failure counting, Wilson
//! intervals, and the CSV/JSON result files.
//!
//! Trial `t` of a point draws from `ChaCha8` seeded with the master seed on
//! stream `t`, so a point's result does not depend on thread count or
//! scheduling.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::augmented::{AugmentedCode, ErrorStdForm};
use crate::decoder::{DecodeError, Decoder, DecoderKind};
use crate::fixed_code::{CodeError, CssCode};
use crate::toric::Cellulation;

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

pub const CSV_HEADER: &str = "code,m,fixed_code,decoder,p,trials,failures,inconsistencies,rate,ci_low,ci_high,seed,wall_ms";

/// Which fixed code to use in a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedCodeChoice {
    FourTwoTwo,
    Trivial,
    Steane,
    File(PathBuf),
}

impl FixedCodeChoice {
    pub fn label(&self) -> String {
        match self {
            FixedCodeChoice::FourTwoTwo => "422".into(),
            FixedCodeChoice::Trivial => "trivial".into(),
            FixedCodeChoice::Steane => "steane".into(),
            FixedCodeChoice::File(p) => p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string()),
        }
    }

    pub fn load(&self) -> Result<CssCode, LoadError> {
        match self {
            FixedCodeChoice::FourTwoTwo => Ok(CssCode::four_two_two()),
            FixedCodeChoice::Trivial => Ok(CssCode::trivial()),
            FixedCodeChoice::Steane => Ok(CssCode::steane()),
            FixedCodeChoice::File(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| LoadError::Io {
                    path: p.clone(),
                    source,
                })?;
                Ok(CssCode::parse(&text)?)
            }
        }
    }
}

impl FromStr for FixedCodeChoice {
    type Err = std::convert::Infallible;

    /// `422`, `trivial` and `steane` name built-in codes; anything else is a path.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "422" | "[[4,2,2]]" => FixedCodeChoice::FourTwoTwo,
            "trivial" | "[[1,1,1]]" => FixedCodeChoice::Trivial,
            "steane" | "[[7,1,3]]" => FixedCodeChoice::Steane,
            path => FixedCodeChoice::File(PathBuf::from(path)),
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub m: Vec<usize>,
    pub fixed_code: FixedCodeChoice,
    pub decoder: DecoderKind,
    pub p: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    /// Store measured wall time; off by default so output files are reproducible.
    pub record_time: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("p = {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("torus side must be at least 2, got {0}")]
    BadSide(usize),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SweepError> {
        if self.trials == 0 {
            return Err(SweepError::NoTrials);
        }
        if let Some(&p) = self.p.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(SweepError::BadProbability(p));
        }
        if let Some(&m) = self.m.iter().find(|&&m| m < 2) {
            return Err(SweepError::BadSide(m));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointResult {
    /// `toric` when the fixed code is `[[1,1,1]]`, `augmented` otherwise.
    pub code: String,
    pub m: usize,
    pub fixed_code: String,
    pub decoder: DecoderKind,
    pub p: f64,
    pub trials: u64,
    /// Logical failures, inconsistencies included.
    pub failures: u64,
    pub inconsistencies: u64,
    pub rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
    pub wall_ms: u64,
}

impl PointResult {
    pub fn half_width(&self) -> f64 {
        (self.ci_high - self.ci_low) / 2.0
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.code,
            self.m,
            self.fixed_code,
            self.decoder,
            self.p,
            self.trials,
            self.failures,
            self.inconsistencies,
            self.rate,
            self.ci_low,
            self.ci_high,
            self.seed,
            self.wall_ms
        )
    }
}

/// Wilson score interval for `k` successes out of `n` at 95%.
pub fn wilson_interval(k: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let phat = k as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = Z95 * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Flips each of the `n` qubits independently with probability `p`.
pub fn sample_error(code: &AugmentedCode, p: f64, rng: &mut impl Rng) -> ErrorStdForm {
    let mut err = code.zero_error();
    sample_into(code, p, rng, &mut err);
    err
}

fn sample_into(code: &AugmentedCode, p: f64, rng: &mut impl Rng, err: &mut ErrorStdForm) {
    let fixed = code.fixed();
    let mut draw = |bits: usize| -> u64 {
        let mut w = 0;
        for i in 0..bits {
            if rng.gen::<f64>() < p {
                w |= 1 << i;
            }
        }
        w
    };
    for x in err.vertex.iter_mut() {
        *x = draw(fixed.n_z());
    }
    for x in err.edge.iter_mut() {
        *x = draw(fixed.n());
    }
    for x in err.face.iter_mut() {
        *x = draw(fixed.n_x());
    }
}

/// The generator for trial `trial` under master seed `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub failures: u64,
    pub inconsistencies: u64,
}

impl Tally {
    fn add(self, other: Tally) -> Tally {
        Tally {
            failures: self.failures + other.failures,
            inconsistencies: self.inconsistencies + other.inconsistencies,
        }
    }
}

/// One trial: sample, decode, check the residual. Panics if a correction
/// does not reproduce the syndrome, which would be a decoder bug.
pub fn run_trial(decoder: &mut Decoder<'_>, p: f64, rng: &mut impl Rng) -> Tally {
    let code = decoder.code();
    let err = sample_error(code, p, rng);
    let s = code.syndrome(&err);
    match decoder.decode(&s) {
        Ok(corr) => {
            assert_eq!(code.syndrome(&corr), s, "correction does not match the syndrome");
            let residual = err.xor(&corr);
            Tally {
                failures: u64::from(code.logical_pairings(&residual) != 0),
                inconsistencies: 0,
            }
        }
        Err(DecodeError::Inconsistent { .. }) => Tally {
            failures: 1,
            inconsistencies: 1,
        },
        Err(e) => panic!("decoder failed on a true syndrome: {e}"),
    }
}

/// Failure counts over `trials` seeded trials, in parallel.
pub fn run_trials(code: &AugmentedCode, kind: DecoderKind, p: f64, trials: u64, seed: u64) -> Result<Tally, DecodeError> {
    // fail early on unsupported decoder/code pairs
    Decoder::new(code, kind)?;
    let base = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..trials)
        .into_par_iter()
        .map_init(
            || Decoder::new(code, kind).expect("checked above"),
            |dec, t| {
                let mut rng = base.clone();
                rng.set_stream(t);
                run_trial(dec, p, &mut rng)
            },
        )
        .reduce(Tally::default, Tally::add))
}

fn code_family(fixed: &CssCode) -> &'static str {
    if fixed.n() == 1 && fixed.n_x() == 0 && fixed.n_z() == 0 {
        "toric"
    } else {
        "augmented"
    }
}

/// Runs one `(code, decoder, p)` point. `wall_ms` is 0 unless `record_time`.
pub fn run_point(
    code: &AugmentedCode,
    fixed_label: &str,
    kind: DecoderKind,
    p: f64,
    trials: u64,
    seed: u64,
    record_time: bool,
) -> Result<PointResult, DecodeError> {
    let start = Instant::now();
    let tally = run_trials(code, kind, p, trials, seed)?;
    let wall_ms = if record_time {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    let (ci_low, ci_high) = wilson_interval(tally.failures, trials);
    Ok(PointResult {
        code: code_family(code.fixed()).to_string(),
        m: code.cellulation().side(),
        fixed_code: fixed_label.to_string(),
        decoder: kind,
        p,
        trials,
        failures: tally.failures,
        inconsistencies: tally.inconsistencies,
        rate: tally.failures as f64 / trials as f64,
        ci_low,
        ci_high,
        seed,
        wall_ms,
    })
}

/// All points of a sweep, `m` major and `p` minor.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<PointResult>, SweepError> {
    config.validate()?;
    let fixed = config.fixed_code.load()?;
    let label = config.fixed_code.label();
    let mut out = Vec::with_capacity(config.m.len() * config.p.len());
    for &m in &config.m {
        let cell = Cellulation::torus(m).map_err(|_| SweepError::BadSide(m))?;
        let code = AugmentedCode::new(cell, fixed.clone());
        for &p in &config.p {
            out.push(run_point(
                &code,
                &label,
                config.decoder,
                p,
                config.trials,
                config.seed,
                config.record_time,
            )?);
        }
    }
    Ok(out)
}

pub fn to_csv(points: &[PointResult]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for p in points {
        s.push_str(&p.csv_row());
        s.push('\n');
    }
    s
}

#[derive(Serialize)]
struct JsonConfig<'a> {
    m: &'a [usize],
    fixed_code: String,
    decoder: DecoderKind,
    p: &'a [f64],
    trials: u64,
    seed: u64,
}

#[derive(Serialize)]
struct JsonOutput<'a> {
    config: JsonConfig<'a>,
    points: &'a [PointResult],
}

pub fn to_json(config: &SweepConfig, points: &[PointResult]) -> String {
    let doc = JsonOutput {
        config: JsonConfig {
            m: &config.m,
            fixed_code: config.fixed_code.label(),
            decoder: config.decoder,
            p: &config.p,
            trials: config.trials,
            seed: config.seed,
        },
        points,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn render(config: &SweepConfig, points: &[PointResult]) -> String {
    match config.format {
        OutputFormat::Csv => to_csv(points),
        OutputFormat::Json => to_json(config, points),
    }
}

pub fn write_output(path: &Path, contents: &str) -> std::io::Result<()> {
    std::fs::write(path, contents)
}

/// Physical qubits per logical qubit at distance `d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverheadRow {
    pub d: usize,
    /// `[[2m², 2, m]]` with `m = d`.
    pub toric: f64,
    /// `[[10m², 4, 2m]]` with `m = d / 2`; only for even `d`.
    pub augmented: Option<f64>,
}

pub fn overhead_table(ds: &[usize]) -> Vec<OverheadRow> {
    ds.iter()
        .map(|&d| {
            let toric = (2 * d * d) as f64 / 2.0;
            let augmented = (d % 2 == 0).then(|| {
                let m = d / 2;
                (10 * m * m) as f64 / 4.0
            });
            OverheadRow { d, toric, augmented }
        })
        .collect()
}

pub fn overhead_csv(rows: &[OverheadRow]) -> String {
    let mut s = String::from("d,toric_n_per_k,augmented_n_per_k\n");
    for r in rows {
        let aug = r.augmented.map(|a| a.to_string()).unwrap_or_default();
        let _ = writeln!(s, "{},{},{}", r.d, r.toric, aug);
    }
    s
}

/// `n / k` of a concrete code.
pub fn qubits_per_logical(code: &AugmentedCode) -> f64 {
    code.n() as f64 / code.k() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(m: usize, fixed: CssCode) -> AugmentedCode {
        AugmentedCode::new(Cellulation::torus(m).unwrap(), fixed)
    }

    #[test]
    fn sampling_extremes() {
        let c = code(3, CssCode::four_two_two());
        let mut rng = trial_rng(1, 0);
        for _ in 0..20 {
            assert!(sample_error(&c, 0.0, &mut rng).is_zero());
            assert_eq!(sample_error(&c, 1.0, &mut rng).weight(), c.n());
        }
    }

    #[test]
    fn sampling_mean_weight() {
        // n = 1000 with the trivial code on a 22x22 torus is 968; use 10x10 with [[4,2,2]]
        let c = code(10, CssCode::four_two_two());
        assert_eq!(c.n(), 1000);
        let samples = 10_000u64;
        let total: usize = (0..samples)
            .map(|t| sample_error(&c, 0.1, &mut trial_rng(7, t)).weight())
            .sum();
        let mean = total as f64 / samples as f64;
        let sigma = (1000.0f64 * 0.1 * 0.9 / samples as f64).sqrt();
        assert!((mean - 100.0).abs() < 5.0 * sigma, "mean {mean}");
    }

    #[test]
    fn wilson_examples() {
        let (lo, hi) = wilson_interval(0, 100);
        assert!(lo.abs() < 1e-12);
        assert!((hi - 0.036_994).abs() < 1e-5, "{hi}");
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo - 0.403_831).abs() < 1e-5 && (hi - 0.596_169).abs() < 1e-5);
    }

    #[test]
    fn zero_noise_never_fails() {
        let c = code(3, CssCode::four_two_two());
        for kind in DecoderKind::ALL {
            let r = run_point(&c, "422", kind, 0.0, 200, 3, false).unwrap();
            assert_eq!(r.failures, 0);
            assert_eq!(r.rate, 0.0);
        }
    }

    #[test]
    fn points_are_reproducible() {
        let c = code(2, CssCode::four_two_two());
        let a = run_point(&c, "422", DecoderKind::V1, 0.05, 10_000, 99, false).unwrap();
        let b = run_point(&c, "422", DecoderKind::V1, 0.05, 10_000, 99, false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.csv_row(), b.csv_row());
        assert!(a.failures > 0);
    }

    #[test]
    fn overhead_values() {
        let rows = overhead_table(&[30, 12, 5]);
        assert_eq!(rows[0].toric, 900.0);
        assert_eq!(rows[0].augmented, Some(562.5));
        assert_eq!(rows[1].augmented, Some(90.0));
        assert_eq!(rows[2].augmented, None);
        assert_eq!(qubits_per_logical(&code(6, CssCode::four_two_two())), 90.0);
        assert!(overhead_csv(&rows).contains("30,900,562.5\n"));
    }

    #[test]
    fn fixed_code_choices() {
        assert_eq!("422".parse::<FixedCodeChoice>().unwrap(), FixedCodeChoice::FourTwoTwo);
        assert_eq!(FixedCodeChoice::Trivial.label(), "trivial");
        let f: FixedCodeChoice = "codes/my_code.txt".parse().unwrap();
        assert_eq!(f.label(), "my_code");
        assert!(matches!(f.load(), Err(LoadError::Io { .. })));
    }

    #[test]
    fn config_validation() {
        let mut cfg = SweepConfig {
            m: vec![3],
            fixed_code: FixedCodeChoice::FourTwoTwo,
            decoder: DecoderKind::V1,
            p: vec![0.01],
            trials: 1,
            seed: 0,
            out: None,
            format: OutputFormat::Csv,
            record_time: false,
        };
        assert!(cfg.validate().is_ok());
        cfg.p.push(1.5);
        assert!(matches!(cfg.validate(), Err(SweepError::BadProbability(_))));
        cfg.p.pop();
        cfg.trials = 0;
        assert!(matches!(cfg.validate(), Err(SweepError::NoTrials)));
    }
}
