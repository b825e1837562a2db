//! Process-wide size caps.
//!
//! The ground-set cap bounds every `GroundSet`; operations whose cost or
//! memory is quadratic in `2^n` (dense relations) use the lower quadratic
//! cap. Both can be raised, e.g. from the command line.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_GROUND_CAP: usize = 16;
pub const DEFAULT_QUADRATIC_CAP: usize = 13;
/// Hard limit imposed by the `u32` subset codes.
pub const MAX_GROUND: usize = 24;

static GROUND_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_GROUND_CAP);
static QUADRATIC_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_QUADRATIC_CAP);

pub fn ground_cap() -> usize {
    GROUND_CAP.load(Ordering::Relaxed)
}

pub fn quadratic_cap() -> usize {
    QUADRATIC_CAP.load(Ordering::Relaxed)
}

pub fn set_ground_cap(cap: usize) {
    GROUND_CAP.store(cap.min(MAX_GROUND), Ordering::Relaxed);
}

pub fn set_quadratic_cap(cap: usize) {
    QUADRATIC_CAP.store(cap.min(MAX_GROUND), Ordering::Relaxed);
}

pub(crate) fn check_ground(n: usize) -> Result<()> {
    let cap = ground_cap();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "ground set",
            size: n,
            cap,
        });
    }
    Ok(())
}

pub(crate) fn check_quadratic(n: usize) -> Result<()> {
    let cap = quadratic_cap().min(ground_cap());
    if n > cap {
        return Err(Error::CapExceeded {
            what: "dense relation side",
            size: n,
            cap,
        });
    }
    Ok(())
}
