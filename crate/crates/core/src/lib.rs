//! Exact entanglement dynamics of two qubits coupled to a finite bath of
//! dephasing qubits.
//!
//! The system qubits S1 and S2 interact through `σz⊗σz` and couple to each
//! bath qubit through `σz⊗σz` terms, so the reduced two-qubit state evolves
//! in closed form ([`dynamics`]). Concurrence is computed from the reduced
//! state ([`entanglement`]), and a brute-force evolution of the whole
//! system-plus-bath state ([`oracle`]) serves as an independent reference.

pub mod cli;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod presets;
pub mod sweep;
pub mod verify;

pub use dynamics::{reduced_density, Propagator};
pub use entanglement::{concurrence, concurrence_x_state, Concurrence};
pub use error::{Error, Result};
pub use model::{
    BellFamily, DensityMatrix4, EnvQubit, EnvironmentSpec, InitialState, SystemParams,
};
pub use sweep::{run_sweep, ConcurrenceGrid, SweepSpec};
