//! Quasi-ideals, the stably continuous frame `QF S`, way-below, the
//! isomorphism with the spectrum's opens and the Karoubi envelope.

mod karoubi;
mod laws;
mod quasi;

pub use karoubi::{karoubi_envelope, karoubi_envelope_default, KaroubiEnvelope, KaroubiReport, DEFAULT_KAROUBI_CAP};
pub use laws::{verify_frame_laws, verify_open_iso, FrameLawsReport, OpenIsoReport};
pub use quasi::{
    column_polar, default_mode, downset, frame_model, is_cut_idempotent, is_quasi_ideal, way_below,
    FrameDump, FrameMode, FrameModel, QuasiIdeal, DEFAULT_FRAME_CAP, EXHAUSTIVE_MAX,
};
