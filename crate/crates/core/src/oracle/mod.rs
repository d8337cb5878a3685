//! Independent checks of engine results: bounded model checking, explicit-state
//! reachability for small circuits, invariant certification and trace replay.

mod bmc;
mod certify;
mod explicit;

pub use bmc::bmc;
pub use certify::{certify, CertCheck, Certificate, CertificateError, Certification};
pub use explicit::{explicit_bad_depth, explicit_reach, ExplicitError, ReachableStates, DEFAULT_LATCH_LIMIT};

use crate::circuit::{simulate, Circuit, SimError};
use crate::ic3::Trace;

/// Whether `trace` drives `c` into bad at its last cycle with every constraint met.
pub fn replay(c: &Circuit, trace: &Trace) -> Result<bool, SimError> {
    Ok(!trace.inputs.is_empty() && simulate(c, &trace.init, &trace.inputs)?.ends_bad())
}
