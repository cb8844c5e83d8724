//! Characteristic classes of the stable bundles ξ = −sℋ over CPⁿ and the
//! w₂/w₄ case split driving the spectral-sequence analysis.
//!
//! All arithmetic happens in truncated polynomial rings Z\[x\]/(x^{n+1}) and
//! their mod-2, mod-3 reductions, with x the degree-2 generator. The total
//! Chern class of ξ is (1+x)^{−s}; Stiefel–Whitney classes are its mod-2
//! reduction, computed for s > 0 as the truncated power-series inverse of
//! (1+x)^s.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded;

/// Coefficient domain of a [`TruncatedPolynomial`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Modulus {
    Integer,
    Mod2,
    Mod3,
}

/// Polynomial in x with arithmetic truncated above x^truncation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedPolynomial {
    coeffs: Vec<i64>,
    modulus: Modulus,
    truncation: usize,
}

impl TruncatedPolynomial {
    pub fn new(coeffs: &[i64], modulus: Modulus, truncation: usize) -> Self {
        let mut p = TruncatedPolynomial {
            coeffs: vec![0; truncation + 1],
            modulus,
            truncation,
        };
        for (i, &c) in coeffs.iter().take(truncation + 1).enumerate() {
            p.coeffs[i] = c;
        }
        p.normalize();
        p
    }

    pub fn zero(modulus: Modulus, truncation: usize) -> Self {
        TruncatedPolynomial::new(&[], modulus, truncation)
    }

    pub fn one(modulus: Modulus, truncation: usize) -> Self {
        TruncatedPolynomial::new(&[1], modulus, truncation)
    }

    /// 1 + x, the total Chern class of the Hopf bundle.
    pub fn one_plus_x(modulus: Modulus, truncation: usize) -> Self {
        TruncatedPolynomial::new(&[1, 1], modulus, truncation)
    }

    fn normalize(&mut self) {
        match self.modulus {
            Modulus::Integer => {}
            Modulus::Mod2 => {
                for c in &mut self.coeffs {
                    *c = c.rem_euclid(2);
                }
            }
            Modulus::Mod3 => {
                for c in &mut self.coeffs {
                    *c = c.rem_euclid(3);
                }
            }
        }
    }

    pub fn coefficient(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &TruncatedPolynomial) -> TruncatedPolynomial {
        assert_eq!(self.modulus, other.modulus);
        assert_eq!(self.truncation, other.truncation);
        let mut out = self.clone();
        for i in 0..=self.truncation {
            out.coeffs[i] += other.coefficient(i);
        }
        out.normalize();
        out
    }

    pub fn mul(&self, other: &TruncatedPolynomial) -> TruncatedPolynomial {
        assert_eq!(self.modulus, other.modulus);
        assert_eq!(self.truncation, other.truncation);
        let mut out = TruncatedPolynomial::zero(self.modulus, self.truncation);
        for i in 0..=self.truncation {
            if self.coeffs[i] == 0 {
                continue;
            }
            for j in 0..=(self.truncation - i) {
                out.coeffs[i + j] += self.coeffs[i] * other.coefficient(j);
            }
        }
        out.normalize();
        out
    }

    pub fn pow(&self, e: u32) -> TruncatedPolynomial {
        let mut out = TruncatedPolynomial::one(self.modulus, self.truncation);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Power-series inverse; requires the constant term to be a unit
    /// (±1 over Z, nonzero mod 2 or 3).
    pub fn inverse(&self) -> Result<TruncatedPolynomial> {
        let c0 = self.coefficient(0);
        let c0_inv = match self.modulus {
            Modulus::Integer => match c0 {
                1 => 1,
                -1 => -1,
                _ => {
                    return Err(Error::Hypothesis(format!(
                        "constant term {c0} is not a unit over Z"
                    )))
                }
            },
            Modulus::Mod2 => {
                if c0.rem_euclid(2) == 1 {
                    1
                } else {
                    return Err(Error::Hypothesis("constant term is 0 mod 2".into()));
                }
            }
            Modulus::Mod3 => match c0.rem_euclid(3) {
                1 => 1,
                2 => 2, // 2·2 = 4 ≡ 1
                _ => return Err(Error::Hypothesis("constant term is 0 mod 3".into())),
            },
        };
        let mut inv = TruncatedPolynomial::zero(self.modulus, self.truncation);
        inv.coeffs[0] = c0_inv;
        for i in 1..=self.truncation {
            let mut acc: i64 = 0;
            for j in 1..=i {
                acc += self.coefficient(j) * inv.coeffs[i - j];
            }
            inv.coeffs[i] = -c0_inv * acc;
            match self.modulus {
                Modulus::Integer => {}
                Modulus::Mod2 => inv.coeffs[i] = inv.coeffs[i].rem_euclid(2),
                Modulus::Mod3 => inv.coeffs[i] = inv.coeffs[i].rem_euclid(3),
            }
        }
        inv.normalize();
        Ok(inv)
    }

    pub fn reduce(&self, modulus: Modulus) -> TruncatedPolynomial {
        TruncatedPolynomial::new(&self.coeffs, modulus, self.truncation)
    }
}

impl std::fmt::Display for TruncatedPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{a}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// ξ = −sℋ over CPⁿ with its Chern, Pontryagin, and Stiefel–Whitney data.
#[derive(Clone, Debug)]
pub struct BundleClass {
    pub s: i64,
    pub base_n: u32,
    /// Total Chern class (1+x)^{−s} over Z, truncated.
    pub total_chern: TruncatedPolynomial,
    pub c1: TruncatedPolynomial,
    pub c2: TruncatedPolynomial,
    pub p1: TruncatedPolynomial,
    /// Total Stiefel–Whitney class, mod 2.
    pub w: TruncatedPolynomial,
}

impl BundleClass {
    /// w(ξ) coefficients as bits: entry i is the xⁱ-coefficient, so the
    /// degree-2i class w_{2i}.
    pub fn sw_coefficients(&self) -> Vec<u8> {
        (0..=self.base_n as usize)
            .map(|i| self.w.coefficient(i) as u8)
            .collect()
    }

    pub fn w2_nonzero(&self) -> bool {
        self.w.coefficient(1) != 0
    }

    pub fn w4_nonzero(&self) -> bool {
        self.w.coefficient(2) != 0
    }
}

/// Chern, Pontryagin and Stiefel–Whitney classes of ξ = −sℋ over CPⁿ:
/// c₁ = −sx, c₂ = s(s+1)/2·x², p₁ = c₁² − 2c₂ = −sx², w = (1+x)^{−s} mod 2.
pub fn characteristic_classes(s: i64, base_n: u32) -> BundleClass {
    assert!(base_n >= 1);
    let n = base_n as usize;
    let one_plus_x = TruncatedPolynomial::one_plus_x(Modulus::Integer, n);
    let total_chern = if s >= 0 {
        one_plus_x
            .pow(s as u32)
            .inverse()
            .expect("unit constant term")
    } else {
        one_plus_x.pow((-s) as u32)
    };
    let c1 = TruncatedPolynomial::new(&[0, total_chern.coefficient(1)], Modulus::Integer, n);
    let c2 = TruncatedPolynomial::new(&[0, 0, total_chern.coefficient(2)], Modulus::Integer, n);
    // p₁ of the underlying real bundle is c₁² − 2c₂
    let p1 = {
        let c1_sq = c1.mul(&c1);
        let minus_2c2 =
            TruncatedPolynomial::new(&[0, 0, -2 * c2.coefficient(2)], Modulus::Integer, n);
        c1_sq.add(&minus_2c2)
    };
    let w = total_chern.reduce(Modulus::Mod2);
    BundleClass {
        s,
        base_n,
        total_chern,
        c1,
        c2,
        p1,
        w,
    }
}

/// The four-way split of the bordism analysis, decided by (w₂(ξ), w₄(ξ)).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum CaseTag {
    Case1,
    Case2,
    Case3,
    Case4,
}

impl CaseTag {
    pub fn from_w(w2_nonzero: bool, w4_nonzero: bool) -> CaseTag {
        match (w2_nonzero, w4_nonzero) {
            (false, false) => CaseTag::Case1,
            (true, false) => CaseTag::Case2,
            (false, true) => CaseTag::Case3,
            (true, true) => CaseTag::Case4,
        }
    }
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CaseTag::Case1 => write!(f, "Case 1 (w2 = 0, w4 = 0)"),
            CaseTag::Case2 => write!(f, "Case 2 (w2 != 0, w4 = 0)"),
            CaseTag::Case3 => write!(f, "Case 3 (w2 = 0, w4 != 0)"),
            CaseTag::Case4 => write!(f, "Case 4 (w2 != 0, w4 != 0)"),
        }
    }
}

/// Case of ξ_s, computed from the characteristic classes (equivalently a
/// function of s mod 4: 0→1, 3→2, 2→3, 1→4).
pub fn case_of(s: i64) -> CaseTag {
    let b = characteristic_classes(s, 4);
    CaseTag::from_w(b.w2_nonzero(), b.w4_nonzero())
}

/// Invariants of a candidate manifold: p₁(ℳ) = s·x² and the spin condition
/// w₂(ℳ) = s·x mod 2.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ManifoldInvariants {
    pub s: i64,
    pub spin: bool,
}

impl ManifoldInvariants {
    pub fn from_p1_coefficient(s: i64) -> Self {
        ManifoldInvariants {
            s,
            spin: s % 2 == 0,
        }
    }
}

/// Invariants of the total space of the S⁷-bundle of an 8-dimensional
/// vector bundle η over CP³ with p₁(η) = k·x²: its first Pontryagin class
/// is (4+k)·x².
pub fn realize_bundle_total_space(k: i64) -> ManifoldInvariants {
    ManifoldInvariants::from_p1_coefficient(4 + k)
}

/// Report of [`wu_consistency`].
#[derive(Clone, Debug)]
pub struct WuReport {
    pub s: i64,
    pub pass: bool,
    pub detail: String,
}

/// Confirms the Thom module's Sq^iU coefficients equal w_i(ξ) computed
/// here, for i ≤ 8.
pub fn wu_consistency(s: i64) -> WuReport {
    let bundle = characteristic_classes(s, 4);
    let thom = graded::thom_module(s, 4, 8).expect("cap 8 is within 2n");
    for i in 0..=8u32 {
        let from_thom = thom.sq_u_coefficient(i);
        let from_classes = if i % 2 == 0 {
            bundle.w.coefficient((i / 2) as usize) as u8
        } else {
            0
        };
        if from_thom != from_classes {
            return WuReport {
                s,
                pass: false,
                detail: format!("Sq^{i}U coefficient {from_thom} but w_{i}(xi) = {from_classes}"),
            };
        }
    }
    WuReport {
        s,
        pass: true,
        detail: format!("Sq^iU = w_i(xi)U for i <= 8, s = {s}"),
    }
}

/// JSON record emitted by the `charclass` CLI subcommand.
#[derive(Serialize)]
pub struct CharClassRecord {
    pub s: i64,
    pub c1: i64,
    pub c2: i64,
    pub p1: i64,
    pub w2: u8,
    pub w4: u8,
    pub case: CaseTag,
}

impl CharClassRecord {
    pub fn for_s(s: i64) -> Self {
        let b = characteristic_classes(s, 4);
        CharClassRecord {
            s,
            c1: b.c1.coefficient(1),
            c2: b.c2.coefficient(2),
            p1: b.p1.coefficient(2),
            w2: b.w.coefficient(1) as u8,
            w4: b.w.coefficient(2) as u8,
            case: case_of(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn section_2_formulas() {
        for s in -100..=100i64 {
            let b = characteristic_classes(s, 4);
            assert_eq!(b.c1.coefficient(1), -s, "c1 at s={s}");
            assert_eq!(b.c2.coefficient(2), s * (s + 1) / 2, "c2 at s={s}");
            assert_eq!(b.p1.coefficient(2), -s, "p1 at s={s}");
        }
    }

    #[test]
    fn s_equals_one() {
        let b = characteristic_classes(1, 4);
        assert_eq!(b.c1.coefficient(1), -1);
        assert_eq!(b.c2.coefficient(2), 1);
        assert_eq!(b.p1.coefficient(2), -1);
    }

    #[test]
    fn s_zero_trivial() {
        let b = characteristic_classes(0, 4);
        assert!(b.c1.is_zero());
        assert!(b.c2.is_zero());
        assert!(b.p1.is_zero());
        assert_eq!(b.sw_coefficients(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn s_four_has_trivial_w2_w4() {
        let b = characteristic_classes(4, 4);
        assert!(!b.w2_nonzero());
        // w4-coefficient = c2 mod 2 = 10 mod 2 = 0
        assert!(!b.w4_nonzero());
        assert_eq!(case_of(4), CaseTag::Case1);
    }

    #[test]
    fn case_examples() {
        assert_eq!(case_of(3), CaseTag::Case2);
        assert_eq!(case_of(1), CaseTag::Case4);
        assert_eq!(case_of(2), CaseTag::Case3);
    }

    #[test]
    fn case_depends_only_on_s_mod_4() {
        for s in -100..=100i64 {
            let expected = match s.rem_euclid(4) {
                0 => CaseTag::Case1,
                3 => CaseTag::Case2,
                2 => CaseTag::Case3,
                _ => CaseTag::Case4,
            };
            assert_eq!(case_of(s), expected, "s = {s}");
        }
    }

    #[test]
    fn nonspin_means_case_2_or_4() {
        for s in (-99..=99i64).step_by(2) {
            let c = case_of(s);
            assert!(
                c == CaseTag::Case2 || c == CaseTag::Case4,
                "odd s = {s} gave {c:?}"
            );
        }
    }

    #[test]
    fn sw_inverse_property() {
        // w(ξ_s)·(1+x)^s ≡ 1 in Z₂[x]/(x⁵)
        for s in -30..=30i64 {
            let b = characteristic_classes(s, 4);
            let one_plus_x = TruncatedPolynomial::one_plus_x(Modulus::Mod2, 4);
            let rhs = if s >= 0 {
                one_plus_x.pow(s as u32)
            } else {
                one_plus_x.pow((-s) as u32).inverse().unwrap()
            };
            let product = b.w.mul(&rhs);
            assert_eq!(product, TruncatedPolynomial::one(Modulus::Mod2, 4), "s={s}");
        }
    }

    #[test]
    fn realize_total_space() {
        assert_eq!(realize_bundle_total_space(0).s, 4);
        assert_eq!(realize_bundle_total_space(-4).s, 0);
        assert!(realize_bundle_total_space(-4).spin);
        let m = realize_bundle_total_space(1);
        assert_eq!(m.s, 5);
        assert!(!m.spin);
    }

    #[test]
    fn wu_consistency_examples() {
        assert!(wu_consistency(2).pass);
        assert!(wu_consistency(0).pass);
        let r7 = wu_consistency(7);
        assert!(r7.pass);
        // s = 7: w2 != 0, w4-coefficient 28 ≡ 0 mod 2 -> Case 2
        assert_eq!(case_of(7), CaseTag::Case2);
    }

    #[test]
    fn mod3_inverse() {
        let p = TruncatedPolynomial::new(&[2, 1], Modulus::Mod3, 3);
        let inv = p.inverse().unwrap();
        assert_eq!(p.mul(&inv), TruncatedPolynomial::one(Modulus::Mod3, 3));
    }
}
