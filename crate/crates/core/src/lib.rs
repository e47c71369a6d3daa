//! Exact-arithmetic toolkit for confusion-matrix metrics.
//!
//! Everything in this crate computes with exact values: arbitrary-precision
//! integers, rationals, and surds (`q * sqrt(r)`). Floating point never enters
//! the core, so every metric comparison is decidable and every reported digit
//! is certified.
//!
//! The crate has four layers:
//!
//! * [`exact`] — big-integer square roots, rationals, and [`exact::Surd`]
//!   values with exact ordering and certified decimal rendering.
//! * [`symbolic`] — a miniature computer-algebra core over sparse multivariate
//!   integer polynomials: expression parsing, canonical radical forms
//!   `(P/Q)*sqrt(R)`, limits at infinity, and identity checking. This is what
//!   mechanically verifies that the Matthews correlation coefficient tends to
//!   the Fowlkes–Mallows index as the number of true negatives grows without
//!   bound.
//! * [`metrics`] — exact PPV / TPR / F1 / FM / MCC on confusion counts, the
//!   TN→∞ limit value, and certified enclosures of the |MCC − FM| gap.
//! * [`detect`] — bounding-box IoU and greedy matching that turn detection
//!   results into TP/FP/FN counts (TN deliberately absent).
//!
//! [`verify`] ties the symbolic layer into the end-to-end limit verification
//! used by the CLI, and [`batch`] provides the data-parallel helpers (rayon
//! behind the `parallel` feature, sequential otherwise) used for sweeps.

pub mod batch;
pub mod detect;
pub mod exact;
pub mod metrics;
pub mod symbolic;
pub mod verify;
