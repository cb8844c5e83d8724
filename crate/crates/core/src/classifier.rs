//! The verdict engine: diffeomorphism / homeomorphism / homotopy-equivalence
//! decisions for pairs of 13-manifolds with the cohomology of CP³ × S⁷,
//! bundle realization over CP³, fiber-homotopy comparison of S⁷-bundles,
//! and the curvature annotations.
//!
//! The inputs are the manifold invariants (p₁ = s·x², spin condition); the
//! theorems classify nonspin manifolds admitting restriction lifts. The
//! restriction-lift hypothesis is a homotopy-theoretic property not
//! computable from s, so callers assert it explicitly.

use serde::Serialize;

use crate::charclass::ManifoldInvariants;
use crate::data;
use crate::error::{Error, Result};

/// Classification outcome, strongest relation first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum Relation {
    Diffeomorphic,
    DiffeomorphicUpToExoticSphere,
    Homeomorphic,
    HomotopyEquivalent,
    NotEquivalent,
}

impl Relation {
    /// Does this relation imply `weaker`?
    pub fn implies(self, weaker: Relation) -> bool {
        use Relation::*;
        if self == NotEquivalent || weaker == NotEquivalent {
            return self == weaker;
        }
        // Diffeomorphic ⇒ DiffeomorphicUpToExoticSphere ⇒ Homeomorphic
        // ⇒ HomotopyEquivalent
        (self as u8) <= (weaker as u8)
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Relation::Diffeomorphic => write!(f, "diffeomorphic"),
            Relation::DiffeomorphicUpToExoticSphere => {
                write!(f, "diffeomorphic after connected sum with an exotic 13-sphere")
            }
            Relation::Homeomorphic => write!(f, "homeomorphic"),
            Relation::HomotopyEquivalent => write!(f, "homotopy equivalent"),
            Relation::NotEquivalent => write!(f, "not homotopy equivalent"),
        }
    }
}

/// A classification verdict with its justifying invariant comparisons.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub relation: Relation,
    pub justification: Vec<String>,
}

/// Classify two nonspin manifolds with restriction lifts by their
/// invariants.
///
/// * equal p₁, p₁ ≢ 0 mod 3 → diffeomorphic;
/// * equal p₁, p₁ ≡ 0 mod 3 → diffeomorphic up to an exotic sphere (and
///   homeomorphic);
/// * unequal p₁, congruent mod 24 → homotopy equivalent, not homeomorphic;
/// * p₁ incongruent mod 24 → not homotopy equivalent.
///
/// Even s (spin) violates the hypotheses and is an error, not a weaker
/// verdict. `restriction_lift` is caller-asserted.
pub fn classify(
    a: ManifoldInvariants,
    b: ManifoldInvariants,
    restriction_lift: bool,
) -> Result<Verdict> {
    for (name, m) in [("first", a), ("second", b)] {
        if m.spin || m.s % 2 == 0 {
            return Err(Error::Hypothesis(format!(
                "{name} manifold is spin (p1 = {}x^2, w2 = 0): the classification \
                 theorems require nonspin manifolds",
                m.s
            )));
        }
    }
    if !restriction_lift {
        return Err(Error::Hypothesis(
            "both manifolds must admit restriction lifts (caller-asserted hypothesis)".into(),
        ));
    }
    let mut justification = Vec::new();
    let relation = if a.s == b.s {
        justification.push(format!("p1 agrees: both are {}x^2", a.s));
        if a.s.rem_euclid(3) != 0 {
            justification.push(format!(
                "p1 = {}x^2 is nonzero mod 3, so the order-3 bordism ambiguity vanishes",
                a.s
            ));
            Relation::Diffeomorphic
        } else {
            justification.push(format!(
                "p1 = {}x^2 vanishes mod 3: the bordism class is determined only up to \
                 an order-3 exotic sphere",
                a.s
            ));
            justification.push("equal p1 still gives a homeomorphism".into());
            Relation::DiffeomorphicUpToExoticSphere
        }
    } else if (a.s - b.s).rem_euclid(24) == 0 {
        justification.push(format!(
            "p1 differs ({}x^2 vs {}x^2), so the manifolds are not homeomorphic",
            a.s, b.s
        ));
        justification.push(format!(
            "p1 agrees mod 24 ({} ≡ {}), giving fiber-homotopy-equivalent sphere bundles",
            a.s.rem_euclid(24),
            b.s.rem_euclid(24)
        ));
        Relation::HomotopyEquivalent
    } else {
        justification.push(format!(
            "p1 mod 24 is a homotopy invariant and differs: {} vs {}",
            a.s.rem_euclid(24),
            b.s.rem_euclid(24)
        ));
        Relation::NotEquivalent
    };
    Ok(Verdict {
        relation,
        justification,
    })
}

/// The fiber-homotopy class of an 8-dimensional bundle over CP³ with
/// p₁ = k·x²; the type is determined by k mod 24 since [CP³, BG] = Z₂₄.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct FibrationClass {
    pub p1_coefficient: i64,
}

impl FibrationClass {
    pub fn new(k: i64) -> Self {
        FibrationClass { p1_coefficient: k }
    }
}

/// Realize p₁ = s·x² as the total space of an S⁷-bundle over CP³: the
/// bundle η has p₁(η) = (s − 4)·x². Smooth when s ≢ 0 mod 3, topological
/// otherwise. Even s lies outside the realization hypotheses.
#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    pub s: i64,
    pub fibration: FibrationClass,
    pub smooth: bool,
    pub annotation: String,
}

pub fn bundle_realization(s: i64) -> Result<Realization> {
    if s % 2 == 0 {
        return Err(Error::Hypothesis(format!(
            "s = {s} is even (spin): bundle realization covers nonspin manifolds"
        )));
    }
    let smooth = s.rem_euclid(3) != 0;
    let annotation = if smooth {
        format!("smooth S^7-bundle over CP^3 with p1(eta) = {}x^2", s - 4)
    } else {
        format!(
            "topological S^7-bundle over CP^3 with p1(eta) = {}x^2 (smooth only after \
             connected sum with an exotic sphere)",
            s - 4
        )
    };
    Ok(Realization {
        s,
        fibration: FibrationClass::new(s - 4),
        smooth,
        annotation,
    })
}

/// Fiber-homotopy equivalence of the S⁷-bundles of two 8-dimensional
/// bundles over CP³: true iff p₁ agrees mod 24.
pub fn fiber_homotopy_equivalent(a: FibrationClass, b: FibrationClass) -> bool {
    (a.p1_coefficient - b.p1_coefficient).rem_euclid(24) == 0
}

/// CP³ × Σ⁷ is diffeomorphic to CP³ × Σ'⁷ for any homotopy 7-spheres: the
/// bordism group in dimension 7 vanishes, so the products are B-cobordant
/// and the h-cobordism argument applies.
pub fn homotopy_sphere_product(sigma_a: &str, sigma_b: &str) -> Verdict {
    let pi7 = &data::PI_MO8[7];
    debug_assert!(pi7.free_rank == 0 && pi7.torsion.is_empty());
    Verdict {
        relation: Relation::Diffeomorphic,
        justification: vec![
            format!("CP^3 x {sigma_a} and CP^3 x {sigma_b} carry normal B-structures"),
            format!(
                "pi_7(MO<8>) = 0 [{}], so every homotopy 7-sphere bounds compatibly and \
                 the products are B-cobordant, hence h-cobordant",
                pi7.citation
            ),
        ],
    }
}

/// Non-negative-curvature annotation: the manifold itself when s ≢ 0 mod 3,
/// otherwise its connected sum with an exotic 13-sphere. Derived from the
/// verdict logic; no geometry is computed.
pub fn curvature_annotation(s: i64) -> Result<String> {
    if s % 2 == 0 {
        return Err(Error::Hypothesis(format!(
            "s = {s} is even (spin): the curvature statement covers nonspin manifolds"
        )));
    }
    Ok(if s.rem_euclid(3) != 0 {
        "M admits a metric of non-negative sectional curvature".to_string()
    } else {
        "M # Sigma^13 admits a metric of non-negative sectional curvature for some exotic \
         13-sphere Sigma^13"
            .to_string()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(s: i64) -> ManifoldInvariants {
        ManifoldInvariants::from_p1_coefficient(s)
    }

    #[test]
    fn equal_p1_nonzero_mod_3_is_diffeomorphic() {
        let v = classify(inv(5), inv(5), true).unwrap();
        assert_eq!(v.relation, Relation::Diffeomorphic);
    }

    #[test]
    fn equal_p1_zero_mod_3_is_diffeo_up_to_exotic_sphere() {
        let v = classify(inv(3), inv(3), true).unwrap();
        assert_eq!(v.relation, Relation::DiffeomorphicUpToExoticSphere);
        assert!(v.justification.iter().any(|j| j.contains("homeomorphism")));
    }

    #[test]
    fn congruent_mod_24_is_homotopy_equivalent_only() {
        let v = classify(inv(1), inv(25), true).unwrap();
        assert_eq!(v.relation, Relation::HomotopyEquivalent);
        assert!(v
            .justification
            .iter()
            .any(|j| j.contains("not homeomorphic")));
    }

    #[test]
    fn incongruent_mod_24_is_not_equivalent() {
        let v = classify(inv(1), inv(3), true).unwrap();
        assert_eq!(v.relation, Relation::NotEquivalent);
    }

    #[test]
    fn spin_input_is_a_hypothesis_error() {
        let err = classify(inv(4), inv(5), true).unwrap_err();
        assert!(err.to_string().contains("spin"));
        assert!(classify(inv(5), inv(5), false).is_err());
    }

    #[test]
    fn classify_is_symmetric() {
        for sa in (-99..=99i64).step_by(2) {
            for sb in [sa, sa + 24, sa + 2, 1, 3] {
                if sb % 2 == 0 {
                    continue;
                }
                let ab = classify(inv(sa), inv(sb), true).unwrap();
                let ba = classify(inv(sb), inv(sa), true).unwrap();
                assert_eq!(ab.relation, ba.relation, "({sa}, {sb})");
            }
        }
    }

    #[test]
    fn relation_monotonicity() {
        use Relation::*;
        assert!(Diffeomorphic.implies(Homeomorphic));
        assert!(Diffeomorphic.implies(HomotopyEquivalent));
        assert!(DiffeomorphicUpToExoticSphere.implies(Homeomorphic));
        assert!(Homeomorphic.implies(HomotopyEquivalent));
        assert!(!Homeomorphic.implies(Diffeomorphic));
        assert!(!NotEquivalent.implies(HomotopyEquivalent));
    }

    #[test]
    fn realization_examples() {
        let r = bundle_realization(5).unwrap();
        assert_eq!(r.fibration.p1_coefficient, 1);
        assert!(r.smooth);
        let r = bundle_realization(3).unwrap();
        assert_eq!(r.fibration.p1_coefficient, -1);
        assert!(!r.smooth);
        assert!(bundle_realization(4).is_err());
    }

    #[test]
    fn realization_round_trips_through_total_space() {
        for s in (-99..=99i64).step_by(2) {
            let r = bundle_realization(s).unwrap();
            let back = crate::charclass::realize_bundle_total_space(r.fibration.p1_coefficient);
            assert_eq!(back.s, s);
        }
    }

    #[test]
    fn fiber_homotopy_mod_24() {
        assert!(fiber_homotopy_equivalent(
            FibrationClass::new(1),
            FibrationClass::new(25)
        ));
        assert!(fiber_homotopy_equivalent(
            FibrationClass::new(0),
            FibrationClass::new(0)
        ));
        assert!(!fiber_homotopy_equivalent(
            FibrationClass::new(1),
            FibrationClass::new(2)
        ));
    }

    #[test]
    fn sphere_products_are_always_diffeomorphic() {
        let v = homotopy_sphere_product("S^7", "Sigma^7");
        assert_eq!(v.relation, Relation::Diffeomorphic);
        let v = homotopy_sphere_product("Sigma^7", "Sigma^7");
        assert_eq!(v.relation, Relation::Diffeomorphic);
        // all 28 classes pairwise
        for i in 0..28 {
            for j in 0..28 {
                let v = homotopy_sphere_product(&format!("Sigma_{i}"), &format!("Sigma_{j}"));
                assert_eq!(v.relation, Relation::Diffeomorphic);
            }
        }
    }

    #[test]
    fn curvature_annotations() {
        assert!(curvature_annotation(5).unwrap().starts_with("M admits"));
        assert!(curvature_annotation(3).unwrap().contains("Sigma^13"));
        assert!(curvature_annotation(2).is_err());
    }

    #[test]
    fn classify_consistent_with_sseq_verdicts() {
        // when both primary parts of the bordism group vanish, equal
        // invariants give a diffeomorphism
        for s in (-99..=99i64).step_by(2) {
            let v = crate::sseq::verdict(s).unwrap();
            let two_zero = v.two_primary == crate::sseq::TwoPrimaryVerdict::Zero;
            let three_zero = v.three_primary == crate::sseq::ThreePrimaryVerdict::Zero;
            let c = classify(inv(s), inv(s), true).unwrap();
            if two_zero && three_zero {
                assert_eq!(c.relation, Relation::Diffeomorphic, "s = {s}");
            } else {
                assert_eq!(
                    c.relation,
                    Relation::DiffeomorphicUpToExoticSphere,
                    "s = {s}"
                );
            }
        }
    }
}
