use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::Context as _;
use dynnet::temporal_graph::{Schema, Strategy};
use dynnet::{seed, TrainConfig, WalkConfig};
use serde::{Deserialize, Serialize};

use crate::UsageError;

/// Comma-separated list of values; more than one value makes the flag a
/// sweep axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep<T>(pub Vec<T>);

impl<T: FromStr> FromStr for Sweep<T>
where
    T::Err: Display,
{
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let values = s
            .split(',')
            .map(|v| v.trim().parse::<T>().map_err(|e| format!("{v:?}: {e}")))
            .collect::<Result<Vec<T>, String>>()?;
        if values.is_empty() {
            return Err("empty list".into());
        }
        Ok(Sweep(values))
    }
}

/// Snapshot construction parameters as given on the command line: `window`
/// for time windows, `events` for event windows, one `stride` for both.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Construction {
    pub window: Option<f64>,
    pub events: Option<usize>,
    pub stride: Option<f64>,
}

impl Construction {
    pub fn strategy(&self) -> Result<Strategy, UsageError> {
        let stride = self.stride.ok_or_else(|| UsageError("--stride is required".into()))?;
        match (self.window, self.events) {
            (Some(_), Some(_)) => Err(UsageError("--window and --events are mutually exclusive".into())),
            (None, None) => Err(UsageError("one of --window or --events is required".into())),
            (Some(window), None) => Ok(Strategy::Time { window, stride }),
            (None, Some(window)) => {
                if stride.fract() != 0.0 || stride < 1.0 {
                    return Err(UsageError(format!(
                        "event stride must be a positive integer, got {stride}"
                    )));
                }
                Ok(Strategy::Events {
                    window,
                    stride: stride as usize,
                })
            }
        }
    }
}

/// Everything one pipeline run needs. Written to `run.json` in every output
/// directory; passing that file back through `--config` repeats the run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    pub input: Option<PathBuf>,
    pub schema: Schema,
    pub construction: Construction,
    pub walk: WalkConfig,
    pub train: TrainConfig,
    /// Share of the stream (in time order) used for training in link
    /// prediction.
    pub train_fraction: f64,
    /// Previously trained embeddings used instead of training.
    pub embeddings: Option<PathBuf>,
    pub out: Option<PathBuf>,
    /// Root seed; walks, training and evaluation draw from named
    /// sub-streams of it.
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            input: None,
            schema: Schema::default(),
            construction: Construction::default(),
            walk: WalkConfig::default(),
            train: TrainConfig::default(),
            train_fraction: 0.75,
            embeddings: None,
            out: None,
            seed: 0,
        }
    }
}

impl PipelineConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        // Accept a run manifest as well as a bare config.
        if value.get("command").is_some() {
            value = value["config"].take();
        }
        serde_json::from_value(value).map_err(|e| UsageError(format!("{}: {e}", path.display())).into())
    }

    pub fn input(&self) -> Result<&Path, UsageError> {
        self.input
            .as_deref()
            .ok_or_else(|| UsageError("--input is required".into()))
    }

    pub fn out(&self) -> Result<&Path, UsageError> {
        self.out
            .as_deref()
            .ok_or_else(|| UsageError("--out is required".into()))
    }

    pub fn stream_seed(&self, label: &str) -> u64 {
        seed::named(self.seed, label)
    }

    /// Training config with its seed taken from the `train` sub-stream.
    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            seed: self.stream_seed("train"),
            ..self.train.clone()
        }
    }
}

type Setter = Box<dyn Fn(&mut PipelineConfig)>;

/// One swept flag: its name and a setter per value.
pub struct Axis {
    name: &'static str,
    values: Vec<(String, Setter)>,
}

impl Axis {
    pub fn new<T>(name: &'static str, sweep: &Option<Sweep<T>>, set: fn(&mut PipelineConfig, T)) -> Option<Axis>
    where
        T: Display + Clone + 'static,
    {
        let sweep = sweep.as_ref()?;
        let values = sweep
            .0
            .iter()
            .cloned()
            .map(|v| {
                let label = v.to_string();
                let setter: Setter = Box::new(move |c: &mut PipelineConfig| set(c, v.clone()));
                (label, setter)
            })
            .collect();
        Some(Axis { name, values })
    }
}

/// One concrete run of a sweep. `label` is empty when nothing is swept.
pub struct Run {
    pub label: String,
    pub config: PipelineConfig,
}

/// Cross product of all axes applied on top of `base`. Swept runs write to
/// `<out>/<label>`.
pub fn expand(base: &PipelineConfig, axes: &[Axis]) -> Vec<Run> {
    let mut runs = vec![Run {
        label: String::new(),
        config: base.clone(),
    }];
    for axis in axes {
        let swept = axis.values.len() > 1;
        let mut next = Vec::with_capacity(runs.len() * axis.values.len());
        for run in &runs {
            for (value, set) in &axis.values {
                let mut config = run.config.clone();
                set(&mut config);
                let label = match (swept, run.label.is_empty()) {
                    (false, _) => run.label.clone(),
                    (true, true) => format!("{}={value}", axis.name),
                    (true, false) => format!("{}_{}={value}", run.label, axis.name),
                };
                next.push(Run { label, config });
            }
        }
        runs = next;
    }
    for run in &mut runs {
        if !run.label.is_empty() {
            run.config.out = run.config.out.as_ref().map(|o| o.join(&run.label));
        }
    }
    runs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parses_lists() {
        assert_eq!("1,2, 3".parse::<Sweep<usize>>().unwrap(), Sweep(vec![1, 2, 3]));
        assert!("1,x".parse::<Sweep<usize>>().is_err());
    }

    #[test]
    fn expansion_is_a_cross_product() {
        let base = PipelineConfig {
            out: Some(PathBuf::from("o")),
            ..PipelineConfig::default()
        };
        let axes: Vec<Axis> = [
            Axis::new("dim", &Some(Sweep(vec![8usize, 16])), |c, v| c.train.dim = v),
            Axis::new("lambda", &Some(Sweep(vec![1.0f64, 10.0, 100.0])), |c, v| {
                c.train.lambda = v
            }),
            Axis::new("seed", &Some(Sweep(vec![7u64])), |c, v| c.seed = v),
        ]
        .into_iter()
        .flatten()
        .collect();
        let runs = expand(&base, &axes);
        assert_eq!(runs.len(), 6);
        assert!(runs.iter().all(|r| r.config.seed == 7));
        assert_eq!(runs[0].label, "dim=8_lambda=1");
        assert_eq!(runs[0].config.out, Some(PathBuf::from("o/dim=8_lambda=1")));
        assert_eq!(runs[5].config.train.dim, 16);
        assert_eq!(runs[5].config.train.lambda, 100.0);
    }

    #[test]
    fn single_values_do_not_create_subdirectories() {
        let base = PipelineConfig {
            out: Some(PathBuf::from("o")),
            ..PipelineConfig::default()
        };
        let axes: Vec<Axis> = Axis::new("dim", &Some(Sweep(vec![8usize])), |c, v| c.train.dim = v)
            .into_iter()
            .collect();
        let runs = expand(&base, &axes);
        assert_eq!(runs.len(), 1);
        assert_eq!(runs[0].config.out, Some(PathBuf::from("o")));
    }

    #[test]
    fn construction_rules() {
        let c = Construction {
            window: Some(3600.0),
            events: None,
            stride: Some(360.0),
        };
        assert!((c.strategy().unwrap().overlap() - 0.9).abs() < 1e-12);
        let e = Construction {
            window: None,
            events: Some(8000),
            stride: Some(4000.0),
        };
        assert_eq!(e.strategy().unwrap().overlap(), 0.5);
        assert!(Construction { stride: Some(1.5), ..e }.strategy().is_err());
        assert!(Construction { window: Some(1.0), ..e }.strategy().is_err());
        assert!(Construction::default().strategy().is_err());
    }
}
