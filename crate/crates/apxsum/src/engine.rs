use apxsum_core::minconv::ConvValue;
use apxsum_core::{DenseEngine, MinConvEngine, NaiveEngine, Result};
use clap::ValueEnum;

/// Runtime choice between the built-in engines.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum EngineKind {
    /// Quadratic loop over defined pairs only.
    #[default]
    Naive,
    /// Quadratic loop over every index pair of the sentinel-encoded input.
    Dense,
}

impl MinConvEngine for EngineKind {
    fn min_conv<V: ConvValue>(&self, a: &[Option<V>], b: &[Option<V>]) -> Result<Vec<Option<V>>> {
        match self {
            EngineKind::Naive => NaiveEngine.min_conv(a, b),
            EngineKind::Dense => DenseEngine.min_conv(a, b),
        }
    }
}
