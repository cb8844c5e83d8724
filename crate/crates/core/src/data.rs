//! Embedded reference data, every datum carrying its literature citation.
//!
//! Three kinds of facts live here:
//!
//! * the coefficient table π_i(MO⟨8⟩) for i ≤ 14 (Giambalvo; Hovey–Ravenel),
//! * the reference Ext chart over 𝒜(2) with its product lines, tower
//!   columns, and the Adams d₂ arrows matching the coefficient table,
//! * the homotopy-classification constants [CP², BG] = [CP³, BG] = Z₂₄.
//!
//! The chart data is regression-checked against the resolution engine by
//! the self-test harness; the table is cross-checked against the chart by
//! the order-consistency validator in [`crate::sseq`].

use std::collections::BTreeMap;

use crate::chart::LineKind;

/// A dot of the embedded sphere-level chart (all ranks in range are 1).
#[derive(Clone, Copy, Debug)]
pub struct SphereDot {
    pub s: u32,
    pub stem: u32,
    pub label: &'static str,
    pub citation: &'static str,
}

/// A product line h_j: `from` → `to`, given by (s, stem) pairs.
/// `charted` marks the canonical chart lines; the rest are forced by
/// graded commutativity and verified against the computed chart.
#[derive(Clone, Copy, Debug)]
pub struct SphereLine {
    pub kind: LineKind,
    pub from: (u32, u32),
    pub to: (u32, u32),
    pub charted: bool,
    pub citation: &'static str,
}

/// An Adams d₂ arrow of the reference chart, (s, stem) → (s+2, stem−1).
#[derive(Clone, Copy, Debug)]
pub struct AdamsArrow {
    pub from: (u32, u32),
    pub to: (u32, u32),
    pub citation: &'static str,
}

/// A column carrying an infinite h₀-tower: every filtration ≥ base_s at
/// this stem is occupied.
#[derive(Clone, Copy, Debug)]
pub struct TowerColumn {
    pub stem: u32,
    pub base_s: u32,
    pub citation: &'static str,
}

/// One entry of the embedded coefficient table, in invariant-factor form.
#[derive(Clone, Copy, Debug)]
pub struct PiGroup {
    pub i: u32,
    pub free_rank: u32,
    pub torsion: &'static [u64],
    pub citation: &'static str,
}

/// An embedded group-valued fact used by the classifier.
#[derive(Clone, Copy, Debug)]
pub struct GroupFact {
    pub name: &'static str,
    pub order: u64,
    pub citation: &'static str,
}

const CHART: &str = "reference Ext chart over A(2) (Shimada-Iwai; low-stem tmf chart)";
const CHART_TOWER: &str = "stem-0 h_0-tower of the reference Ext chart over A(2)";
const COMMUTE: &str = "graded commutativity of Ext applied to a charted line";
const EXTRACTED: &str = "product extraction from the minimal differential";

/// Dots of the Ext chart over 𝒜(2) for s ≤ 8, stem ≤ 15.
pub const SPHERE_DOTS: &[SphereDot] = &[
    SphereDot { s: 0, stem: 0, label: "1", citation: CHART_TOWER },
    SphereDot { s: 1, stem: 0, label: "h₀", citation: CHART_TOWER },
    SphereDot { s: 2, stem: 0, label: "h₀²", citation: CHART_TOWER },
    SphereDot { s: 3, stem: 0, label: "h₀³", citation: CHART_TOWER },
    SphereDot { s: 4, stem: 0, label: "h₀⁴", citation: CHART_TOWER },
    SphereDot { s: 5, stem: 0, label: "h₀⁵", citation: CHART_TOWER },
    SphereDot { s: 6, stem: 0, label: "h₀⁶", citation: CHART_TOWER },
    SphereDot { s: 7, stem: 0, label: "h₀⁷", citation: CHART_TOWER },
    SphereDot { s: 8, stem: 0, label: "h₀⁸", citation: CHART_TOWER },
    SphereDot { s: 1, stem: 1, label: "h₁", citation: CHART },
    SphereDot { s: 2, stem: 2, label: "h₁²", citation: CHART },
    SphereDot { s: 1, stem: 3, label: "h₂", citation: CHART },
    SphereDot { s: 2, stem: 3, label: "h₀h₂", citation: CHART },
    SphereDot { s: 3, stem: 3, label: "h₀²h₂", citation: "chart relation h₁³ = h₀²h₂" },
    SphereDot { s: 2, stem: 6, label: "h₂²", citation: CHART },
    SphereDot { s: 3, stem: 8, label: "c₀", citation: CHART },
    SphereDot { s: 4, stem: 8, label: "ω", citation: CHART },
    SphereDot { s: 5, stem: 8, label: "h₀ω", citation: CHART },
    SphereDot { s: 6, stem: 8, label: "h₀²ω", citation: CHART },
    SphereDot { s: 7, stem: 8, label: "h₀³ω", citation: CHART },
    SphereDot { s: 8, stem: 8, label: "h₀⁴ω", citation: CHART },
    SphereDot { s: 4, stem: 9, label: "h₁c₀", citation: CHART },
    SphereDot { s: 5, stem: 9, label: "h₁ω", citation: CHART },
    SphereDot { s: 6, stem: 10, label: "h₁²ω", citation: CHART },
    SphereDot { s: 5, stem: 11, label: "h₂ω", citation: CHART },
    SphereDot { s: 6, stem: 11, label: "h₀h₂ω", citation: CHART },
    SphereDot { s: 7, stem: 11, label: "h₀²h₂ω", citation: "chart relation h₁³ω = h₀²h₂ω" },
    SphereDot { s: 3, stem: 12, label: "τ", citation: CHART },
    SphereDot { s: 4, stem: 12, label: "h₀τ", citation: CHART },
    SphereDot { s: 5, stem: 12, label: "h₀²τ", citation: CHART },
    SphereDot { s: 6, stem: 12, label: "h₀³τ", citation: CHART },
    SphereDot { s: 7, stem: 12, label: "h₀⁴τ", citation: CHART },
    SphereDot { s: 8, stem: 12, label: "h₀⁵τ", citation: CHART },
    SphereDot { s: 4, stem: 14, label: "d₀", citation: CHART },
    SphereDot { s: 5, stem: 14, label: "h₀d₀", citation: CHART },
    SphereDot { s: 6, stem: 14, label: "h₀²d₀", citation: "chart relation h₂²ω = h₀²d₀" },
    SphereDot { s: 3, stem: 15, label: "κ", citation: CHART },
    SphereDot { s: 4, stem: 15, label: "h₀κ", citation: CHART },
    SphereDot { s: 5, stem: 15, label: "h₀²κ", citation: "chart relation h₀²κ = h₁d₀" },
];

/// Product lines of the chart, s ≤ 8, stems ≤ 15.
pub const SPHERE_LINES: &[SphereLine] = &[
    // h0-towers
    SphereLine { kind: LineKind::H0, from: (0, 0), to: (1, 0), charted: true, citation: CHART_TOWER },
    SphereLine { kind: LineKind::H0, from: (1, 0), to: (2, 0), charted: true, citation: CHART_TOWER },
    SphereLine { kind: LineKind::H0, from: (2, 0), to: (3, 0), charted: true, citation: CHART_TOWER },
    SphereLine { kind: LineKind::H0, from: (3, 0), to: (4, 0), charted: true, citation: CHART_TOWER },
    SphereLine { kind: LineKind::H0, from: (4, 0), to: (5, 0), charted: true, citation: CHART_TOWER },
    SphereLine { kind: LineKind::H0, from: (5, 0), to: (6, 0), charted: true, citation: CHART_TOWER },
    SphereLine { kind: LineKind::H0, from: (6, 0), to: (7, 0), charted: true, citation: CHART_TOWER },
    SphereLine { kind: LineKind::H0, from: (7, 0), to: (8, 0), charted: true, citation: CHART_TOWER },
    SphereLine { kind: LineKind::H0, from: (1, 3), to: (2, 3), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (2, 3), to: (3, 3), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (4, 8), to: (5, 8), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (5, 8), to: (6, 8), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (6, 8), to: (7, 8), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (7, 8), to: (8, 8), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (5, 11), to: (6, 11), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (6, 11), to: (7, 11), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (3, 12), to: (4, 12), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (4, 12), to: (5, 12), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (5, 12), to: (6, 12), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (6, 12), to: (7, 12), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (7, 12), to: (8, 12), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (4, 14), to: (5, 14), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (5, 14), to: (6, 14), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (3, 15), to: (4, 15), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H0, from: (4, 15), to: (5, 15), charted: true, citation: CHART },
    // h1-lines
    SphereLine { kind: LineKind::H1, from: (0, 0), to: (1, 1), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H1, from: (1, 1), to: (2, 2), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H1, from: (2, 2), to: (3, 3), charted: true, citation: "chart relation h₁³ = h₀²h₂" },
    SphereLine { kind: LineKind::H1, from: (3, 8), to: (4, 9), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H1, from: (4, 8), to: (5, 9), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H1, from: (5, 9), to: (6, 10), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H1, from: (6, 10), to: (7, 11), charted: true, citation: "chart relation h₁³ω = h₀²h₂ω" },
    SphereLine { kind: LineKind::H1, from: (4, 14), to: (5, 15), charted: true, citation: "chart relation h₀²κ = h₁d₀" },
    // h2-lines
    SphereLine { kind: LineKind::H2, from: (0, 0), to: (1, 3), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H2, from: (1, 3), to: (2, 6), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H2, from: (4, 8), to: (5, 11), charted: true, citation: CHART },
    SphereLine { kind: LineKind::H2, from: (5, 11), to: (6, 14), charted: true, citation: "chart relation h₂²ω = h₀²d₀" },
    SphereLine { kind: LineKind::H2, from: (1, 0), to: (2, 3), charted: false, citation: COMMUTE },
    SphereLine { kind: LineKind::H2, from: (2, 0), to: (3, 3), charted: false, citation: COMMUTE },
    SphereLine { kind: LineKind::H2, from: (5, 8), to: (6, 11), charted: false, citation: COMMUTE },
    SphereLine { kind: LineKind::H2, from: (6, 8), to: (7, 11), charted: false, citation: COMMUTE },
    SphereLine { kind: LineKind::H2, from: (3, 12), to: (4, 15), charted: false, citation: EXTRACTED },
    SphereLine { kind: LineKind::H2, from: (4, 12), to: (5, 15), charted: false, citation: EXTRACTED },
];

/// Adams d₂ differentials dashed into the source figure.
pub const ADAMS_D2_ARROWS: &[AdamsArrow] = &[
    AdamsArrow { from: (3, 12), to: (5, 11), citation: "Adams d2 arrow τ → h₂ω (forces pi_11(MO<8>) = 0)" },
    AdamsArrow { from: (4, 12), to: (6, 11), citation: "Adams d2 arrow h₀τ → h₀h₂ω (matches the coefficient table)" },
    AdamsArrow { from: (5, 12), to: (7, 11), citation: "Adams d2 arrow h₀²τ → h₀²h₂ω (matches the coefficient table)" },
    AdamsArrow { from: (3, 15), to: (5, 14), citation: "Adams d2 arrow κ → h₀d₀ (matches the coefficient table)" },
    AdamsArrow { from: (4, 15), to: (6, 14), citation: "Adams d2 arrow h₀κ → h₀²d₀ (matches the coefficient table)" },
];

/// A Massey-bracket value ⟨argument, h₁, h₂⟩, both sides given by (s, stem).
///
/// These feed the composite-path rule of the page engine: a cell chain
/// a → a−1 → a−3 attached by Sq² then Sq⁴ transgresses by ⟨z, h₁, h₂⟩ once
/// both primary differentials vanish. Only nonzero values in range are
/// listed, and bracket order matters: every ⟨z, h₂, h₁⟩ relevant in range
/// is zero (cross-validated).
#[derive(Clone, Copy, Debug)]
pub struct MasseyBracket {
    pub argument: (u32, u32),
    pub value: (u32, u32),
    pub citation: &'static str,
}

/// ⟨h₁c₀, h₁, h₂⟩ = h₀d₀, the one nonzero bracket the page engine needs.
/// The indeterminacy vanishes (both flanking bidegrees are empty), and the
/// value is pinned by two independent minimal resolutions: H*(Mξ₁) and the
/// three-cell module with Sq⁴(u₀) = u₄, Sq²(u₄) = u₆, where the rank at
/// (s, t) = (5, 19) drops to 1.
pub const MASSEY_H1_H2: &[MasseyBracket] = &[MasseyBracket {
    argument: (4, 9),
    value: (5, 14),
    citation: "transgression forced by the direct A(2)-resolutions of H*(Mξ₁) \
               and of the 3-cell module (0,4,6); bracket defined since h₁·h₁c₀ = 0 and h₁h₂ = 0",
}];

/// Columns carrying infinite h₀-towers, matching the Z summands of the
/// coefficient table at i = 0, 8, 12.
pub const TOWER_COLUMNS: &[TowerColumn] = &[
    TowerColumn { stem: 0, base_s: 0, citation: "pi_0(MO<8>) = Z (Giambalvo; Hovey-Ravenel)" },
    TowerColumn { stem: 8, base_s: 4, citation: "pi_8(MO<8>) = Z + Z/2 (Giambalvo; Hovey-Ravenel)" },
    TowerColumn { stem: 12, base_s: 3, citation: "pi_12(MO<8>) = Z (Giambalvo; Hovey-Ravenel)" },
];

const PI_TABLE: &str = "embedded table of pi_i(MO<8>), i <= 14 (Giambalvo; Hovey-Ravenel)";

/// π_i(MO⟨8⟩) for 0 ≤ i ≤ 14: Z, Z₂, Z₂, Z₂₄, 0, 0, Z₂, 0, Z⊕Z₂, Z₂⊕Z₂,
/// Z₆, 0, Z, Z₃, Z₂.
pub const PI_MO8: &[PiGroup] = &[
    PiGroup { i: 0, free_rank: 1, torsion: &[], citation: PI_TABLE },
    PiGroup { i: 1, free_rank: 0, torsion: &[2], citation: PI_TABLE },
    PiGroup { i: 2, free_rank: 0, torsion: &[2], citation: PI_TABLE },
    PiGroup { i: 3, free_rank: 0, torsion: &[24], citation: PI_TABLE },
    PiGroup { i: 4, free_rank: 0, torsion: &[], citation: PI_TABLE },
    PiGroup { i: 5, free_rank: 0, torsion: &[], citation: PI_TABLE },
    PiGroup { i: 6, free_rank: 0, torsion: &[2], citation: PI_TABLE },
    PiGroup { i: 7, free_rank: 0, torsion: &[], citation: PI_TABLE },
    PiGroup { i: 8, free_rank: 1, torsion: &[2], citation: PI_TABLE },
    PiGroup { i: 9, free_rank: 0, torsion: &[2, 2], citation: PI_TABLE },
    PiGroup { i: 10, free_rank: 0, torsion: &[6], citation: PI_TABLE },
    PiGroup { i: 11, free_rank: 0, torsion: &[], citation: PI_TABLE },
    PiGroup { i: 12, free_rank: 1, torsion: &[], citation: PI_TABLE },
    PiGroup { i: 13, free_rank: 0, torsion: &[3], citation: PI_TABLE },
    PiGroup { i: 14, free_rank: 0, torsion: &[2], citation: PI_TABLE },
];

/// [CP², BG] and [CP³, BG], both cyclic of order 24.
pub const GROUP_FACTS: &[GroupFact] = &[
    GroupFact { name: "[CP^2, BG]", order: 24, citation: "classical fiber-homotopy classification: [CP^2, BG] = Z/24" },
    GroupFact { name: "[CP^3, BG]", order: 24, citation: "classical fiber-homotopy classification: [CP^3, BG] = Z/24" },
];

/// Label table keyed by (s, stem, index) for decorating computed charts.
pub fn chart_label_table() -> BTreeMap<(u32, u32, u32), String> {
    SPHERE_DOTS
        .iter()
        .map(|d| ((d.s, d.stem, 0u32), d.label.to_string()))
        .collect()
}

/// Largest stem / filtration covered by the embedded chart.
pub const SPHERE_STEM_MAX: u32 = 15;
pub const SPHERE_S_MAX: u32 = 8;

/// Dots of the reference E₁ page (stems 12–14 of the algebraic AHSS),
/// with their conventional labels.
#[derive(Clone, Copy, Debug)]
pub struct PageDot {
    pub s: u32,
    pub stem: u32,
    pub label: &'static str,
}

pub const PAGE_DOTS: &[PageDot] = &[
    PageDot { s: 3, stem: 12, label: "τU" },
    PageDot { s: 4, stem: 12, label: "h₀τU" },
    PageDot { s: 5, stem: 12, label: "h₀²τU" },
    PageDot { s: 6, stem: 12, label: "h₀³τU" },
    PageDot { s: 7, stem: 12, label: "h₀⁴τU" },
    PageDot { s: 8, stem: 12, label: "h₀⁵τU" },
    PageDot { s: 3, stem: 12, label: "c₀x²U" },
    PageDot { s: 4, stem: 12, label: "ωx²U" },
    PageDot { s: 5, stem: 12, label: "h₀ωx²U" },
    PageDot { s: 6, stem: 12, label: "h₀²ωx²U" },
    PageDot { s: 7, stem: 12, label: "h₀³ωx²U" },
    PageDot { s: 8, stem: 12, label: "h₀⁴ωx²U" },
    PageDot { s: 4, stem: 13, label: "h₁c₀x²U" },
    PageDot { s: 5, stem: 13, label: "h₁ωx²U" },
    PageDot { s: 5, stem: 13, label: "h₂ωxU" },
    PageDot { s: 6, stem: 13, label: "h₀h₂ωxU" },
    PageDot { s: 7, stem: 13, label: "h₀²h₂ωxU" },
    PageDot { s: 3, stem: 14, label: "τxU" },
    PageDot { s: 4, stem: 14, label: "h₀τxU" },
    PageDot { s: 5, stem: 14, label: "h₀²τxU" },
    PageDot { s: 6, stem: 14, label: "h₀³τxU" },
    PageDot { s: 7, stem: 14, label: "h₀⁴τxU" },
    PageDot { s: 8, stem: 14, label: "h₀⁵τxU" },
];

/// Citation attached to the reference page data.
pub const PAGE_CITATION: &str =
    "reference E1 page of Ext over A(2) for H*(M xi; Z_2), stems 12-14";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_bidegrees_and_labels_are_unique() {
        let mut seen = std::collections::BTreeSet::new();
        let mut labels = std::collections::BTreeSet::new();
        for d in SPHERE_DOTS {
            assert!(seen.insert((d.s, d.stem)), "duplicate dot ({}, {})", d.s, d.stem);
            assert!(labels.insert(d.label), "duplicate label {}", d.label);
            assert!(d.s <= SPHERE_S_MAX && d.stem <= SPHERE_STEM_MAX);
        }
    }

    #[test]
    fn lines_connect_existing_dots_with_correct_degrees() {
        let dots: std::collections::BTreeSet<(u32, u32)> =
            SPHERE_DOTS.iter().map(|d| (d.s, d.stem)).collect();
        for l in SPHERE_LINES {
            assert!(dots.contains(&l.from), "{:?} missing from-dot", l);
            assert!(dots.contains(&l.to), "{:?} missing to-dot", l);
            let stem_jump = match l.kind {
                LineKind::H0 => 0,
                LineKind::H1 => 1,
                LineKind::H2 => 3,
                LineKind::D2 => unreachable!("no d2 product lines"),
            };
            assert_eq!(l.to.0, l.from.0 + 1, "{l:?}");
            assert_eq!(l.to.1, l.from.1 + stem_jump, "{l:?}");
        }
    }

    #[test]
    fn adams_arrows_have_d2_degree() {
        let dots: std::collections::BTreeSet<(u32, u32)> =
            SPHERE_DOTS.iter().map(|d| (d.s, d.stem)).collect();
        for a in ADAMS_D2_ARROWS {
            assert!(dots.contains(&a.from) && dots.contains(&a.to), "{a:?}");
            assert_eq!(a.to.0, a.from.0 + 2, "{a:?}");
            assert_eq!(a.to.1 + 1, a.from.1, "{a:?}");
        }
    }

    #[test]
    fn pi_table_shape() {
        assert_eq!(PI_MO8.len(), 15);
        for (i, g) in PI_MO8.iter().enumerate() {
            assert_eq!(g.i as usize, i);
        }
        assert_eq!(PI_MO8[3].torsion, &[24]);
        assert_eq!(PI_MO8[10].torsion, &[6]);
        assert_eq!(PI_MO8[12].free_rank, 1);
        assert_eq!(PI_MO8[13].torsion, &[3]);
    }
}
