//! Generators, the Monte Carlo harness, experiments and report output.

pub mod conditional;
pub mod experiment;
pub mod generate;
pub mod monte_carlo;
pub mod plot;
pub mod stats;
pub mod suite;
pub mod table;

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

pub use conditional::{conditional_pair_check, ConditionalCheck};
pub use experiment::{run_experiment, Budgets, ExperimentConfig, ExperimentReport, ExperimentRow, InstanceSource, OutputSpec};
pub use generate::{gen_complete_uniform, gen_fano, gen_random_uniform, GeneratorSpec};
pub use monte_carlo::{monte_carlo, Algorithm, McOptions, MonteCarloReport};
pub use stats::wilson;
pub use suite::{fixed_suite, SuiteInstance};
pub use table::{bound_table, BoundRow};

pub fn to_csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn from_csv_str<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(Error::from)
}

pub fn write_csv<T: Serialize>(rows: &[T], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_csv_string(rows)?).map_err(|e| Error::io(path, e))
}

pub fn read_csv<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<Vec<T>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_csv_str(&text)
}

pub fn write_json<T: Serialize + ?Sized>(value: &T, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        line: e.line(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::monte_carlo::{monte_carlo, McOptions};

    #[test]
    fn monte_carlo_report_round_trips() {
        let h = gen_random_uniform(7, 3, 9, 1).unwrap();
        let opts = McOptions { count_chains: true, ..McOptions::default() };
        let reports = vec![
            monte_carlo(&h, 2, 500, 3, None, &opts).unwrap(),
            monte_carlo(&h, 3, 500, 3, Some(0.123456789), &McOptions::default()).unwrap(),
        ];
        let csv = to_csv_string(&reports).unwrap();
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
        assert_eq!(from_csv_str::<MonteCarloReport>(&csv).unwrap(), reports);
        let json = serde_json::to_string(&reports).unwrap();
        assert_eq!(serde_json::from_str::<Vec<MonteCarloReport>>(&json).unwrap(), reports);
    }
}
