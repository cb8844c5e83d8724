//! Exact computations behind the classification of 1-connected closed smooth
//! 13-manifolds whose integral cohomology ring is that of CP³ × S⁷.
//!
//! The pipeline, bottom to top:
//!
//! * [`gf2`] / [`gf3`] — bit-packed linear algebra over GF(2) and a small
//!   dense GF(3) fragment;
//! * [`steenrod`] — the mod-2 Steenrod algebra in the admissible basis, with
//!   Adem rewriting and the finite subalgebras 𝒜(n);
//! * [`graded`] — finite graded modules over the Steenrod algebra, in
//!   particular H*(CPⁿ; Z₂) and the Thom modules H*(Mξ_s; Z₂) with the
//!   twisted action Sq^i U = w_i(ξ) U;
//! * [`charclass`] — characteristic classes of the stable bundles ξ = −sℋ
//!   over CPⁿ and the w₂/w₄ case split;
//! * [`resolution`] — minimal free resolutions and Ext charts with
//!   h₀/h₁/h₂ multiplication lines;
//! * [`chart`] — chart data structures and ASCII/JSON/SVG rendering;
//! * [`sseq`] — Atiyah–Hirzebruch and algebraic-AHSS bookkeeping for the
//!   bordism group of the normal structure, through the 2- and 3-primary
//!   verdicts at dimension 13;
//! * [`classifier`] — diffeomorphism / homeomorphism / homotopy-equivalence
//!   verdicts for pairs of manifold invariants;
//! * [`data`] — embedded coefficient tables and chart data, every datum
//!   carrying its literature citation;
//! * [`selftest`] — the self-test harness replaying the computations
//!   end to end.

pub mod charclass;
pub mod chart;
pub mod classifier;
pub mod data;
pub mod error;
pub mod gf2;
pub mod gf3;
pub mod graded;
pub(crate) mod par;
pub mod resolution;
pub mod selftest;
pub mod sseq;
pub mod steenrod;

pub use error::Error;
