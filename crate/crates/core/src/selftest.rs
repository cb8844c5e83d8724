//! The self-test harness: replays the pipeline's computations end to end
//! and reports one pass/fail line per check, each failure naming the
//! violated source fact.
//!
//! `quick` runs the property checks; `full` additionally recomputes the
//! Ext chart over 𝒜(2) against the embedded figure data (byte-identical
//! golden JSON included) and cross-validates the page engine against
//! direct resolutions for s ∈ {0,…,4}. The harness tracks which operations
//! each check exercises and asserts that a full run covers every operation
//! in the library.

use crate::charclass::{
    case_of, characteristic_classes, realize_bundle_total_space, wu_consistency, CaseTag,
    ManifoldInvariants,
};
use crate::chart::{ExportFormat, ExtChart};
use crate::classifier;
use crate::data;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graded::{cpn_module, thom_module, GradedModule, ThomModule};
use crate::resolution::{minimal_resolution, ResolveOptions};
use crate::sseq::{
    self, aahss_e1_page, aahss_run, adams_d2, ahss_e2_slice, cross_validate_ext,
    table_chart_consistency, AbelianGroup, CoefficientTable, ThreePrimaryVerdict,
    TwoPrimaryVerdict,
};
use crate::steenrod::{
    adem_reduce, basis_in_degree, multiply, p3_action_on_thom, AlgebraProfile, SquareWord,
    SteenrodElement,
};

/// Self-test depth.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Depth {
    Quick,
    Full,
}

impl std::str::FromStr for Depth {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "quick" => Ok(Depth::Quick),
            "full" => Ok(Depth::Full),
            other => Err(Error::Parse(format!("unknown depth {other:?}"))),
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub ops: &'static [&'static str],
    pub passed: bool,
    pub detail: String,
}

/// Outcome of a harness run.
#[derive(Debug)]
pub struct SelfTestReport {
    pub depth: Depth,
    pub checks: Vec<CheckResult>,
}

impl SelfTestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status}  {}: {}\n", c.name, c.detail));
        }
        out.push_str(&format!(
            "{}: {} checks, {} failed\n",
            if self.passed() { "OK" } else { "FAILED" },
            self.checks.len(),
            self.checks.iter().filter(|c| !c.passed).count()
        ));
        out
    }
}

/// Every operation the library exposes, for the coverage assertion.
pub const ALL_OPS: &[&str] = &[
    "steenrod.adem_reduce",
    "steenrod.multiply",
    "steenrod.basis_in_degree",
    "steenrod.p3_action_on_thom",
    "f2linalg.rank",
    "f2linalg.kernel_basis",
    "f2linalg.solve",
    "graded.cpn_module",
    "graded.thom_module",
    "graded.restrict_to_skeleton",
    "graded.verify_cartan",
    "charclass.characteristic_classes",
    "charclass.case_of",
    "charclass.realize_bundle_total_space",
    "charclass.wu_consistency",
    "resolution.minimal_resolution",
    "resolution.ext_ranks",
    "resolution.hj_products",
    "resolution.chart_export",
    "sseq.ahss_e2_slice",
    "sseq.aahss_e1_page",
    "sseq.aahss_run",
    "sseq.adams_d2",
    "sseq.three_primary",
    "sseq.cross_validate_ext",
    "classifier.classify",
    "classifier.bundle_realization",
    "classifier.fiber_homotopy_equivalent",
    "classifier.homotopy_sphere_product",
    "classifier.curvature_annotation",
    "cli.selftest",
    "cli.render",
];

/// Golden renders of the recomputed chart and page, frozen from the first
/// verified build.
pub const CHART_GOLDEN_JSON: &str = include_str!("../golden/ext_chart_a2.json");
pub const CHART_GOLDEN_ASCII: &str = include_str!("../golden/ext_chart_a2.txt");
pub const PAGE_GOLDEN_JSON: &str = include_str!("../golden/aahss_page.json");

// ---------------------------------------------------------------------
// validators shared with the negative-control tests
// ---------------------------------------------------------------------

/// Validate a coefficient table against the embedded chart structure.
pub fn validate_pi_table(table: &CoefficientTable) -> Result<()> {
    table_chart_consistency(
        table,
        data::SPHERE_DOTS,
        data::ADAMS_D2_ARROWS,
        data::TOWER_COLUMNS,
    )
}

/// Recompute the chart over 𝒜(2) (s ≤ 8, stem ≤ 14).
pub fn compute_reference_chart(opts: ResolveOptions) -> Result<ExtChart> {
    let trivial = GradedModule::with_basis(&[("1".to_string(), 0)], 30);
    let res = minimal_resolution(&trivial, AlgebraProfile::Subalgebra(2), 8, 30, opts);
    res.check_d_squared()?;
    res.check_minimality()?;
    res.euler_characteristic_check()?;
    let labels = data::chart_label_table();
    let mut chart = res.to_chart(8, 14, Some(&labels))?;
    chart.canonicalize();
    Ok(chart)
}

/// The embedded chart restricted to stem ≤ 14, as an [`ExtChart`].
pub fn embedded_reference_chart() -> ExtChart {
    let mut dots = std::collections::BTreeMap::new();
    for d in data::SPHERE_DOTS {
        if d.stem <= 14 {
            dots.entry((d.s, d.stem))
                .or_insert_with(Vec::new)
                .push(d.label.to_string());
        }
    }
    let lines = data::SPHERE_LINES
        .iter()
        .filter(|l| l.from.1 <= 14 && l.to.1 <= 14)
        .map(|l| crate::chart::ChartLine {
            from: (l.from.0, l.from.1, 0),
            to: (l.to.0, l.to.1, 0),
            kind: l.kind,
        })
        .collect();
    let mut chart = ExtChart {
        range: crate::chart::ChartRange {
            s_max: 8,
            stem_max: 14,
        },
        dots: dots
            .into_iter()
            .map(|((s, stem), labels)| crate::chart::ChartDot {
                s,
                stem,
                rank: labels.len(),
                labels,
            })
            .collect(),
        lines,
    };
    chart.canonicalize();
    chart
}

/// A golden chart must equal the recomputed one dot-for-dot and
/// line-for-line.
pub fn validate_chart(golden: &ExtChart, computed: &ExtChart) -> Result<()> {
    if golden != computed {
        for d in &computed.dots {
            if golden.rank_at(d.s, d.stem) != d.rank {
                return Err(Error::SelfTest(format!(
                    "chart mismatch at (s={}, stem={}): computed rank {}, golden rank {} \
                     [reference Ext chart over A(2)]",
                    d.s,
                    d.stem,
                    d.rank,
                    golden.rank_at(d.s, d.stem)
                )));
            }
        }
        for d in &golden.dots {
            if computed.rank_at(d.s, d.stem) != d.rank {
                return Err(Error::SelfTest(format!(
                    "chart mismatch at (s={}, stem={}): golden rank {}, computed rank {} \
                     [reference Ext chart over A(2)]",
                    d.s,
                    d.stem,
                    d.rank,
                    computed.rank_at(d.s, d.stem)
                )));
            }
        }
        return Err(Error::SelfTest(
            "chart line or label sets differ from the recomputation [reference Ext chart]".into(),
        ));
    }
    Ok(())
}

/// A Thom module must satisfy the Cartan expansion and the Thom-class
/// twisting Sq^iU = w_i(ξ)U.
pub fn validate_thom(t: &ThomModule) -> Result<()> {
    let cartan = t.verify_cartan(13);
    if !cartan.pass {
        return Err(Error::SelfTest(format!(
            "Thom action table violates the Cartan expansion \
             Sq^n(aU) = Σ Sq^i(a)·Sq^{{n-i}}(U): {}",
            cartan.counterexample.unwrap_or_default()
        )));
    }
    let wu = wu_consistency(t.s());
    if !wu.pass {
        return Err(Error::SelfTest(format!(
            "Thom class twisting violates Sq^iU = w_i(ξ)U: {}",
            wu.detail
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------
// the harness
// ---------------------------------------------------------------------

struct Check {
    name: &'static str,
    ops: &'static [&'static str],
    full_only: bool,
    run: fn() -> Result<String>,
}

fn xorshift(x: &mut u64) -> u64 {
    *x ^= *x << 13;
    *x ^= *x >> 7;
    *x ^= *x << 17;
    *x
}

fn checks() -> Vec<Check> {
    vec![
        Check {
            name: "adem rewriting",
            ops: &["steenrod.adem_reduce", "steenrod.multiply"],
            full_only: false,
            run: || {
                let zero = adem_reduce(&SquareWord::new(&[1, 1]));
                if !zero.is_zero() {
                    return Err(Error::SelfTest("Sq1 Sq1 != 0 [Adem relation]".into()));
                }
                let mut expect = SteenrodElement::zero();
                expect.toggle(SquareWord::new(&[3, 1]));
                if adem_reduce(&SquareWord::new(&[2, 2])) != expect {
                    return Err(Error::SelfTest("Sq2 Sq2 != Sq3 Sq1 [Adem relation]".into()));
                }
                // associativity on a deterministic pseudo-random sample
                let mut state = 0x5eed_2026u64;
                for _ in 0..200 {
                    let a = 1 + (xorshift(&mut state) % 6) as u32;
                    let b = 1 + (xorshift(&mut state) % 6) as u32;
                    let c = 1 + (xorshift(&mut state) % 6) as u32;
                    let ea: SteenrodElement = adem_reduce(&SquareWord::new(&[a]));
                    let eb: SteenrodElement = adem_reduce(&SquareWord::new(&[b]));
                    let ec: SteenrodElement = adem_reduce(&SquareWord::new(&[c]));
                    let left = multiply(&multiply(&ea, &eb), &ec);
                    let right = multiply(&ea, &multiply(&eb, &ec));
                    if left != right {
                        return Err(Error::SelfTest(format!(
                            "associativity failed on Sq{a}·Sq{b}·Sq{c}"
                        )));
                    }
                }
                Ok("Adem examples and 200 associativity triples".into())
            },
        },
        Check {
            name: "admissible basis dimensions",
            ops: &["steenrod.basis_in_degree"],
            full_only: false,
            run: || {
                // Milnor-side dimensions by partition counting
                let maxd = 16usize;
                let mut milnor = vec![0u64; maxd + 1];
                milnor[0] = 1;
                let mut i = 1;
                while (1usize << i) - 1 <= maxd {
                    let g = (1usize << i) - 1;
                    for d in g..=maxd {
                        milnor[d] += milnor[d - g];
                    }
                    i += 1;
                }
                for (d, &expected) in milnor.iter().enumerate() {
                    let got = basis_in_degree(AlgebraProfile::Full, d as u32).len() as u64;
                    if got != expected {
                        return Err(Error::SelfTest(format!(
                            "admissible count {got} != Milnor count {expected} in degree {d}"
                        )));
                    }
                }
                Ok(format!("degrees 0..={maxd} agree with the Milnor count"))
            },
        },
        Check {
            name: "GF(2) kernels",
            ops: &["f2linalg.rank", "f2linalg.kernel_basis", "f2linalg.solve"],
            full_only: false,
            run: || {
                let mut state = 0xb17_5eedu64;
                for _ in 0..200 {
                    let rows = 1 + (xorshift(&mut state) % 24) as usize;
                    let cols = 1 + (xorshift(&mut state) % 24) as usize;
                    let mut m = BitMatrix::zeros(rows, cols);
                    for r in 0..rows {
                        for c in 0..cols {
                            if xorshift(&mut state) & 1 == 1 {
                                m.set(r, c, true);
                            }
                        }
                    }
                    let kernel = m.kernel_basis();
                    if m.rank() + kernel.dim() != cols {
                        return Err(Error::SelfTest("rank-nullity failed".into()));
                    }
                    for v in kernel.basis() {
                        if !m.mul_vec(v).is_zero() {
                            return Err(Error::SelfTest("kernel vector not annihilated".into()));
                        }
                    }
                    let mut x = crate::gf2::BitVec::zeros(cols);
                    for c in 0..cols {
                        if xorshift(&mut state) & 1 == 1 {
                            x.set(c, true);
                        }
                    }
                    let target = m.mul_vec(&x);
                    let solved = m
                        .solve(&target)
                        .ok_or_else(|| Error::SelfTest("consistent system unsolved".into()))?;
                    if m.mul_vec(&solved) != target {
                        return Err(Error::SelfTest("solve verification failed".into()));
                    }
                }
                Ok("rank-nullity, kernels, solves on 200 random matrices".into())
            },
        },
        Check {
            name: "characteristic classes",
            ops: &["charclass.characteristic_classes", "charclass.case_of"],
            full_only: false,
            run: || {
                for s in -100..=100i64 {
                    let b = characteristic_classes(s, 4);
                    if b.c1.coefficient(1) != -s
                        || b.c2.coefficient(2) != s * (s + 1) / 2
                        || b.p1.coefficient(2) != -s
                    {
                        return Err(Error::SelfTest(format!(
                            "classes of ξ at s = {s} disagree with c1 = -sx, \
                             c2 = s(s+1)/2 x², p1 = -sx²"
                        )));
                    }
                    let expected = match s.rem_euclid(4) {
                        0 => CaseTag::Case1,
                        3 => CaseTag::Case2,
                        2 => CaseTag::Case3,
                        _ => CaseTag::Case4,
                    };
                    if case_of(s) != expected {
                        return Err(Error::SelfTest(format!("case mismatch at s = {s}")));
                    }
                }
                Ok("class formulas and the mod-4 case split, |s| ≤ 100".into())
            },
        },
        Check {
            name: "embedded table vs chart",
            ops: &["cli.selftest"],
            full_only: false,
            run: || {
                validate_pi_table(&CoefficientTable::embedded())?;
                Ok("π_i(MO⟨8⟩) order-consistent with the chart for i ≤ 14".into())
            },
        },
        Check {
            name: "Thom modules",
            ops: &[
                "graded.cpn_module",
                "graded.thom_module",
                "graded.verify_cartan",
                "charclass.wu_consistency",
            ],
            full_only: false,
            run: || {
                let base = cpn_module(4, 8);
                if base.rank() != 5 {
                    return Err(Error::SelfTest("H*(CP⁴) should have 5 classes".into()));
                }
                for s in -24..=24i64 {
                    validate_thom(&thom_module(s, 4, 8)?)?;
                }
                Ok("Cartan and Sq^iU = w_i(ξ)U for |s| ≤ 24".into())
            },
        },
        Check {
            name: "restricted-module naturality",
            ops: &["graded.restrict_to_skeleton", "sseq.adams_d2"],
            full_only: false,
            run: || {
                for s in -12..=12i64 {
                    let restricted = thom_module(s, 4, 8)?.restrict_to_skeleton(1)?;
                    let run = aahss_run(&restricted)?;
                    let adams = adams_d2(&run);
                    if !adams.e_infinity_stem13.is_empty() {
                        return Err(Error::SelfTest(format!(
                            "2-primary stem 13 over the CP¹ restriction must vanish \
                             (Atiyah-Hirzebruch control), s = {s}"
                        )));
                    }
                }
                Ok("stem-13 E∞ over CP¹ vanishes for |s| ≤ 12".into())
            },
        },
        Check {
            name: "AHSS degree-13 slice",
            ops: &["sseq.ahss_e2_slice"],
            full_only: false,
            run: || {
                for s in -24..=24i64 {
                    let page = ahss_e2_slice(s, 13);
                    let expected: std::collections::BTreeMap<(u32, u32), AbelianGroup> = [
                        ((0u32, 13u32), AbelianGroup::cyclic(3)),
                        ((4, 9), AbelianGroup::from_parts(0, &[2, 2])),
                    ]
                    .into_iter()
                    .collect();
                    if page.entries != expected {
                        return Err(Error::SelfTest(format!(
                            "degree-13 slice differs from E₂^(0,13) = Z₃, E₂^(4,9) = Z₂², s = {s}"
                        )));
                    }
                }
                Ok("E₂ slice equals {(0,13): Z/3, (4,9): Z/2²} for |s| ≤ 24".into())
            },
        },
        Check {
            name: "page engine verdicts",
            ops: &[
                "sseq.aahss_e1_page",
                "sseq.aahss_run",
                "sseq.three_primary",
                "steenrod.p3_action_on_thom",
            ],
            full_only: false,
            run: || {
                let m = thom_module(1, 4, 8)?;
                let stem13: Vec<String> =
                    aahss_e1_page(&m, 13).into_iter().map(|e| e.label).collect();
                if stem13
                    != ["h₁c₀x²U", "h₂ωxU", "h₁ωx²U", "h₀h₂ωxU", "h₀²h₂ωxU"]
                {
                    return Err(Error::SelfTest(
                        "stem-13 E₁ page differs from the reference page".into(),
                    ));
                }
                for s in -100..=100i64 {
                    let v = sseq::verdict(s)?;
                    let want_two = if s.rem_euclid(2) == 0 {
                        TwoPrimaryVerdict::Z2 {
                            generator: "h₁c₀x²U".to_string(),
                        }
                    } else {
                        TwoPrimaryVerdict::Zero
                    };
                    if v.two_primary != want_two {
                        return Err(Error::SelfTest(format!(
                            "2-primary verdict at s = {s} disagrees with the verdict table"
                        )));
                    }
                    let want_three = if s.rem_euclid(3) == 0 {
                        ThreePrimaryVerdict::AtMostZ3
                    } else {
                        ThreePrimaryVerdict::Zero
                    };
                    if v.three_primary != want_three {
                        return Err(Error::SelfTest(format!(
                            "3-primary verdict at s = {s} disagrees with the mod-3 criterion"
                        )));
                    }
                    if p3_action_on_thom(s) != (-s).rem_euclid(3) as u8 {
                        return Err(Error::SelfTest("𝒫¹U coefficient mismatch".into()));
                    }
                }
                Ok("2- and 3-primary verdict tables for |s| ≤ 100".into())
            },
        },
        Check {
            name: "classifier",
            ops: &[
                "classifier.classify",
                "classifier.bundle_realization",
                "classifier.fiber_homotopy_equivalent",
                "classifier.homotopy_sphere_product",
                "classifier.curvature_annotation",
                "charclass.realize_bundle_total_space",
            ],
            full_only: false,
            run: || {
                use classifier::*;
                let inv = ManifoldInvariants::from_p1_coefficient;
                let examples = [
                    (5i64, 5i64, Relation::Diffeomorphic),
                    (3, 3, Relation::DiffeomorphicUpToExoticSphere),
                    (1, 25, Relation::HomotopyEquivalent),
                    (1, 3, Relation::NotEquivalent),
                ];
                for (a, b, want) in examples {
                    let v = classify(inv(a), inv(b), true)?;
                    if v.relation != want {
                        return Err(Error::SelfTest(format!(
                            "classify({a}, {b}) gave {:?}, the classification table requires {want:?}",
                            v.relation
                        )));
                    }
                }
                if !fiber_homotopy_equivalent(FibrationClass::new(1), FibrationClass::new(25))
                    || fiber_homotopy_equivalent(FibrationClass::new(1), FibrationClass::new(2))
                {
                    return Err(Error::SelfTest(
                        "fiber-homotopy criterion p1 mod 24 violated".into(),
                    ));
                }
                if homotopy_sphere_product("Σ", "Σ'").relation != Relation::Diffeomorphic {
                    return Err(Error::SelfTest(
                        "CP³×Σ⁷ products must be diffeomorphic [pi_7(MO<8>) = 0]".into(),
                    ));
                }
                for s in (-99..=99i64).step_by(2) {
                    let r = bundle_realization(s)?;
                    if realize_bundle_total_space(r.fibration.p1_coefficient).s != s {
                        return Err(Error::SelfTest(format!(
                            "realization round trip failed at s = {s} [(4+k)x² rule]"
                        )));
                    }
                    curvature_annotation(s)?;
                }
                Ok("classification and fiber-homotopy examples, realization round trips".into())
            },
        },
        Check {
            name: "resolution invariants",
            ops: &[
                "resolution.minimal_resolution",
                "resolution.ext_ranks",
                "resolution.hj_products",
                "resolution.chart_export",
                "cli.render",
            ],
            full_only: false,
            run: || {
                let trivial = GradedModule::with_basis(&[("1".to_string(), 0)], 16);
                let res = minimal_resolution(
                    &trivial,
                    AlgebraProfile::Subalgebra(2),
                    4,
                    16,
                    ResolveOptions::default(),
                );
                res.check_d_squared()?;
                res.check_minimality()?;
                res.euler_characteristic_check()?;
                if res.ext_rank(3, 11)? != 1 {
                    return Err(Error::SelfTest("Ext^(3,11) should be c₀ [reference chart]".into()));
                }
                if res.hj_lines().is_empty() {
                    return Err(Error::SelfTest("no product lines extracted".into()));
                }
                let chart = res.to_chart(4, 8, None)?;
                let json = chart.export(ExportFormat::Json);
                let parsed = ExtChart::from_json(&json)?;
                if parsed.to_json() != json {
                    return Err(Error::SelfTest("chart JSON round trip not stable".into()));
                }
                let _ = chart.export(ExportFormat::Ascii);
                let _ = chart.export(ExportFormat::Svg);
                Ok("d∘d = 0, minimality, Euler characteristic, export round trip".into())
            },
        },
        Check {
            name: "reference chart regression",
            ops: &["resolution.minimal_resolution", "resolution.hj_products"],
            full_only: true,
            run: || {
                let computed = compute_reference_chart(ResolveOptions::default())?;
                validate_chart(&embedded_reference_chart(), &computed)?;
                if computed.to_json() != CHART_GOLDEN_JSON.trim_end() {
                    return Err(Error::SelfTest(
                        "recomputed chart JSON is not byte-identical to the golden file \
                         [reference Ext chart over A(2)]"
                            .into(),
                    ));
                }
                if computed.to_ascii() != CHART_GOLDEN_ASCII {
                    return Err(Error::SelfTest(
                        "recomputed chart ASCII differs from the golden file [reference Ext chart]".into(),
                    ));
                }
                Ok("every dot and line of the chart reproduced, golden bytes stable".into())
            },
        },
        Check {
            name: "cross-validation oracle",
            ops: &["sseq.cross_validate_ext"],
            full_only: true,
            run: || {
                for s in 0..=4i64 {
                    let report = cross_validate_ext(s, ResolveOptions::default())?;
                    if !report.pass {
                        let diff: Vec<String> = report
                            .mismatches()
                            .iter()
                            .map(|r| {
                                format!(
                                    "stem {} filtration {}: page engine {} vs resolution {}",
                                    r.stem, r.filtration, r.aahss_survivors, r.resolution_rank
                                )
                            })
                            .collect();
                        return Err(Error::SelfTest(format!(
                            "AAHSS survivors disagree with the direct resolution at s = {s} \
                             [page-differential oracle]: {}",
                            diff.join("; ")
                        )));
                    }
                }
                Ok("page engine matches direct resolutions for s ∈ {0,…,4}".into())
            },
        },
        Check {
            name: "reference page regression",
            ops: &["sseq.aahss_e1_page", "cli.render"],
            full_only: true,
            run: || {
                let m = thom_module(1, 4, 8)?;
                let chart = sseq::page_chart(&m, &[12, 13, 14]);
                for d in data::PAGE_DOTS {
                    if !chart.labels_at(d.s, d.stem).contains(&d.label.to_string()) {
                        return Err(Error::SelfTest(format!(
                            "page is missing {} at (s={}, stem={}) [{}]",
                            d.label,
                            d.s,
                            d.stem,
                            data::PAGE_CITATION
                        )));
                    }
                }
                if chart.to_json() != PAGE_GOLDEN_JSON.trim_end() {
                    return Err(Error::SelfTest(
                        "page JSON is not byte-identical to the golden file [reference page]".into(),
                    ));
                }
                Ok("page contains every labeled dot of the figure, golden bytes stable".into())
            },
        },
    ]
}

/// Run the harness at the requested depth.
pub fn run(depth: Depth) -> SelfTestReport {
    let mut results = Vec::new();
    for check in checks() {
        if check.full_only && depth == Depth::Quick {
            continue;
        }
        let outcome = (check.run)();
        results.push(match outcome {
            Ok(detail) => CheckResult {
                name: check.name,
                ops: check.ops,
                passed: true,
                detail,
            },
            Err(e) => CheckResult {
                name: check.name,
                ops: check.ops,
                passed: false,
                detail: e.to_string(),
            },
        });
    }
    SelfTestReport {
        depth,
        checks: results,
    }
}

/// Union of ops exercised by a full run; must cover [`ALL_OPS`].
pub fn coverage() -> Vec<&'static str> {
    let mut ops: Vec<&'static str> = checks().iter().flat_map(|c| c.ops.iter().copied()).collect();
    ops.sort_unstable();
    ops.dedup();
    ops
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_passes() {
        let report = run(Depth::Quick);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn full_run_covers_every_op() {
        let covered = coverage();
        for op in ALL_OPS {
            assert!(covered.contains(op), "operation {op} not exercised");
        }
    }

    #[test]
    fn corrupted_pi_table_fails_with_citation() {
        let table = CoefficientTable::embedded().with_entry(9, AbelianGroup::cyclic(2));
        let err = validate_pi_table(&table).unwrap_err().to_string();
        assert!(err.contains("Giambalvo"), "{err}");
    }

    #[test]
    fn corrupted_thom_table_fails_with_citation() {
        let mut t = thom_module(1, 4, 8).unwrap();
        let idx = t.module().index_of("xU").unwrap();
        let tgt = t.module().index_of("x^2U").unwrap();
        let mut v = t.module().act_basis(2, idx);
        v.toggle(tgt);
        t.module_mut().set_action(2, idx, v);
        let err = validate_thom(&t).unwrap_err().to_string();
        assert!(err.contains("Cartan"), "{err}");
    }
}
