//! Session config files: `key = value` lines (a TOML subset).
//!
//! ```text
//! # Lorentzian plane
//! dim = 2
//! metric = [[1, 0],
//!           [0, -1]]
//! seed = 7
//! trials = 200
//! tolerance = 1e-9
//! ```
//!
//! `dim` is required. `metric` defaults to the identity, `seed` to 0,
//! `trials` to 200 and `tolerance` to `1e-9`.

use std::ops::Range;
use std::path::Path;

use dualmetric::{AlgebraError, Dimension, MetricTensor};
use nalgebra::DMatrix;
use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("missing required key `dim`")]
    MissingDim,
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Validated session parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SessionConfig {
    pub dim: Dimension,
    pub metric: MetricTensor,
    pub seed: u64,
    pub trials: usize,
    pub tolerance: f64,
}

impl SessionConfig {
    /// Identity metric with default seed, trials and tolerance.
    pub fn euclidean(dim: Dimension) -> Self {
        SessionConfig {
            dim,
            metric: MetricTensor::euclidean(dim),
            seed: 0,
            trials: DEFAULT_TRIALS,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        parse_config(&text)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    dim: Option<Spanned<i64>>,
    metric: Option<Spanned<Vec<Vec<f64>>>>,
    seed: Option<Spanned<i64>>,
    trials: Option<Spanned<i64>>,
    tolerance: Option<Spanned<f64>>,
}

/// 1-based line and column (in characters) of a byte offset.
fn locate(text: &str, offset: usize) -> (usize, usize) {
    let mut offset = offset.min(text.len());
    while !text.is_char_boundary(offset) {
        offset -= 1;
    }
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
    (line, column)
}

fn at(text: &str, span: Range<usize>, message: impl Into<String>) -> ConfigError {
    let (line, column) = locate(text, span.start);
    ConfigError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_config(text: &str) -> Result<SessionConfig, ConfigError> {
    let raw: Raw = toml::from_str(text).map_err(|e| {
        let span = e.span().unwrap_or(0..0);
        at(text, span, e.message().trim_end())
    })?;

    let dim_field = raw.dim.ok_or(ConfigError::MissingDim)?;
    let dim_value = *dim_field.get_ref();
    let dim = usize::try_from(dim_value)
        .ok()
        .and_then(|n| Dimension::new(n).ok())
        .ok_or_else(|| {
            at(
                text,
                dim_field.span(),
                format!("dim must be between 1 and {}, got {dim_value}", dualmetric::MAX_DIM),
            )
        })?;

    let metric = match raw.metric {
        None => MetricTensor::euclidean(dim),
        Some(field) => {
            let span = field.span();
            let rows = field.into_inner();
            let n = dim.get();
            if rows.len() != n {
                return Err(at(
                    text,
                    span,
                    format!("metric has {} rows, expected {n} for dim = {n}", rows.len()),
                ));
            }
            if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
                return Err(at(
                    text,
                    span,
                    format!("metric row {} has {} entries, expected {n}", i + 1, row.len()),
                ));
            }
            let g = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
            MetricTensor::new(g).map_err(|e| match e {
                AlgebraError::Singular { det } => {
                    at(text, span, format!("metric is degenerate (det = {det:e})"))
                }
                other => at(text, span, format!("invalid metric: {other}")),
            })?
        }
    };

    let seed = match raw.seed {
        None => 0,
        Some(field) => u64::try_from(*field.get_ref())
            .map_err(|_| at(text, field.span(), "seed must be non-negative"))?,
    };
    let trials = match raw.trials {
        None => DEFAULT_TRIALS,
        Some(field) => usize::try_from(*field.get_ref())
            .ok()
            .filter(|&t| t >= 1)
            .ok_or_else(|| at(text, field.span(), "trials must be at least 1"))?,
    };
    let tolerance = match raw.tolerance {
        None => DEFAULT_TOLERANCE,
        Some(field) => Some(*field.get_ref())
            .filter(|t| t.is_finite() && *t > 0.0)
            .ok_or_else(|| at(text, field.span(), "tolerance must be positive and finite"))?,
    };

    Ok(SessionConfig {
        dim,
        metric,
        seed,
        trials,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syntax_line(err: ConfigError) -> (usize, usize, String) {
        match err {
            ConfigError::Syntax {
                line,
                column,
                message,
            } => (line, column, message),
            other => panic!("expected syntax error, got {other}"),
        }
    }

    #[test]
    fn diag_metric() {
        let cfg = parse_config("dim = 2\nmetric = [[2,0],[0,3]]").unwrap();
        assert_eq!(cfg.dim.get(), 2);
        assert_eq!(cfg.metric.matrix(), &DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 3.0]));
        assert_eq!((cfg.seed, cfg.trials, cfg.tolerance), (0, 200, 1e-9));
    }

    #[test]
    fn shape_error() {
        let (line, col, msg) = syntax_line(parse_config("dim = 2\nmetric = [[1,0]]").unwrap_err());
        assert_eq!((line, col), (2, 10));
        assert!(msg.contains("1 rows"), "{msg}");
        let (_, _, msg) = syntax_line(parse_config("dim = 2\nmetric = [[1,0],[0]]").unwrap_err());
        assert!(msg.contains("row 2"), "{msg}");
    }

    #[test]
    fn degenerate_metric() {
        let (_, _, msg) = syntax_line(parse_config("dim = 2\nmetric = [[1,1],[1,1]]").unwrap_err());
        assert!(msg.contains("degenerate"), "{msg}");
    }

    #[test]
    fn asymmetric_metric() {
        let err = parse_config("dim = 2\nmetric = [[1,0.5],[0,1]]").unwrap_err();
        assert!(syntax_line(err).2.contains("asymmetry"));
        let cfg = parse_config("dim = 2\nmetric = [[1,1e-13],[0,1]]").unwrap();
        assert_eq!(cfg.metric.matrix()[(0, 1)], cfg.metric.matrix()[(1, 0)]);
    }

    #[test]
    fn comments_multiline_and_all_keys() {
        let text = "# header\ndim = 3   # three\nmetric = [\n  [1, 0, 0],\n  [0, 1, 0],\n  [0, 0, -1],\n]\nseed = 42\ntrials = 10\ntolerance = 1e-8\n";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.metric.matrix()[(2, 2)], -1.0);
        assert_eq!((cfg.seed, cfg.trials, cfg.tolerance), (42, 10, 1e-8));
    }

    #[test]
    fn default_metric_is_identity() {
        let cfg = parse_config("dim = 4").unwrap();
        assert_eq!(cfg.metric.matrix(), &DMatrix::identity(4, 4));
    }

    #[test]
    fn rejects_bad_keys_and_values() {
        assert!(matches!(parse_config("metric = [[1]]"), Err(ConfigError::MissingDim)));
        let (line, _, msg) = syntax_line(parse_config("dim = 2\ncolour = 3").unwrap_err());
        assert_eq!(line, 2);
        assert!(msg.contains("colour"), "{msg}");
        syntax_line(parse_config("dim = 2\ndim = 3").unwrap_err());
        syntax_line(parse_config("dim = 0").unwrap_err());
        syntax_line(parse_config("dim = 13").unwrap_err());
        syntax_line(parse_config("dim = 2\ntrials = 0").unwrap_err());
        syntax_line(parse_config("dim = 2\nseed = -1").unwrap_err());
        syntax_line(parse_config("dim = 2\ntolerance = -1.0").unwrap_err());
        syntax_line(parse_config("dim = 2\ntolerance = nan").unwrap_err());
        syntax_line(parse_config("dim = 2\nmetric = [[1,0],[0,inf]]").unwrap_err());
        let (line, col, _) = syntax_line(parse_config("dim = 2\nmetric = [[1, 0], [0, 1]").unwrap_err());
        assert_eq!(line, 2);
        assert!(col > 1);
    }

    #[test]
    fn locate_counts_characters() {
        assert_eq!(locate("ab\nγd", 5), (2, 2));
        assert_eq!(locate("", 3), (1, 1));
    }
}
