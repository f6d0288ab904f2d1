//! Specialised counting sequences and closed forms that the solved series
//! must reproduce.
//!
//! Each submodule is an independent consistency check on the solver output:
//!
//! * [`cubic`] — uncoloured rooted cubic maps via the Goulden–Jackson
//!   recurrence, the quadratic ODE their generating series satisfies, and
//!   the planar closed form;
//! * [`unicellular`] — one-face cubic maps of maximal genus, generated by a
//!   pair of first-order operators, together with eleven closed-form
//!   coefficient families;
//! * [`planar`] — the genus-zero restriction of the defining equation;
//! * [`inequality`] — a positivity bound relating each rooted count to the
//!   counts of one genus and two sizes below.

pub mod cubic;
pub mod inequality;
pub mod planar;
pub mod unicellular;
