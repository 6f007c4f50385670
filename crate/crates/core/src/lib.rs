//! Epidemic simulation on multi-layer contact networks with scheduled
//! vaccination rounds, and the PREEMPT lives-saved seed selection.
//!
//! Pipeline: [`network`] builds the contact graph, [`disease`] advances an
//! SEIR-style process over it, [`sampler`] draws live-edge realizations,
//! [`selection`] picks whom to vaccinate, [`workflow`] runs scheduled
//! experiments and [`metrics`] writes the results.

pub mod cli;
pub mod config;
pub mod disease;
pub mod error;
pub mod metrics;
pub mod network;
pub mod rng;
pub mod sampler;
pub mod selection;
pub mod workflow;

pub use disease::{Compartment, DayOutcome, DiseaseParams, SimState};
pub use error::{Error, Result};
pub use metrics::{DayRecord, MeanSeries, MetricsTimeSeries};
pub use network::{generate_synthetic_population, AgentId, ContactNetwork, Layer, PopulationConfig};
pub use sampler::{LiveEdgeSample, Retention, SampleSet, SamplingView};
pub use selection::{SeedSet, SelectionContext, Strategy};
pub use workflow::{run_comparison, run_experiment, ExperimentConfig, InterventionSchedule, ScheduleSpec};
