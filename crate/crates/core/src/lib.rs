//! Deterministic single-photon quantum hardware simulator.
//!
//! Exact multi-photon linear optics (permanents, interferometer meshes,
//! loss), partial distinguishability with Gram-matrix internal states,
//! emitter/demultiplexer resource models, and heralded/deterministic
//! entanglement protocols with stabilizer verification.

pub mod distinguishability;
pub mod distribution;
pub mod emitter;
pub mod entangle;
pub mod error;
pub mod fock;
pub mod interferometer;
pub mod io;
pub mod linalg;
pub mod loss;
pub mod mesh;
pub mod permanent;

pub use distinguishability::{
    delta_benchmark, delta_curve, hom_coincidence, partial_distribution, BenchmarkConfig,
    BenchmarkResult, DistinguishabilityModel, Reference,
};
pub use distribution::{
    output_distribution, sample_outputs, transition_amplitude, Distribution,
};
pub use emitter::{
    demultiplex, n_photon_rate, per_photon_efficiency, photon_train, rate_curve, DemuxPlan,
    PhotonEvent, SourceModel,
};
pub use error::{Error, Result};
pub use fock::{EngineCaps, FockState};
pub use interferometer::{haar_random_unitary, Interferometer};
pub use loss::{apply_loss, LossChannel};
pub use mesh::{clements_decompose, mesh_compose, MeshParams, MzCell};
pub use permanent::{permanent, permanent_glynn};
