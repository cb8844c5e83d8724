//! Finite graded modules over the Steenrod algebra.
//!
//! A [`GradedModule`] is a finite-dimensional graded GF(2) vector space with
//! explicit tables for every Sq^k up to a degree cap. The two families the
//! pipeline needs are H*(CPⁿ; Z₂), whose action comes from the total-square
//! formula Sq(xᵃ) = xᵃ(1+x)ᵃ, and the Thom modules H*(Mξ_s; Z₂) on the
//! basis {xᵃU : 0 ≤ a ≤ n}, whose action is forced by the Cartan formula
//! together with Sq^i U = w_i(ξ) U.
//!
//! The Thom class U sits in degree 0 (spectrum normalization), so xᵃU has
//! degree 2a. This convention pins the two nonzero Atiyah–Hirzebruch
//! entries of total degree 13 at positions (0, 13) and (4, 9).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::charclass;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::steenrod::{adem_reduce, binom_mod2, SquareWord};

/// Finite graded GF(2) module with Steenrod action tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    labels: Vec<String>,
    degrees: Vec<u32>,
    /// `action[k - 1][i]` = Sq^k(basis i) as a vector over the basis,
    /// for 1 ≤ k ≤ degree_cap.
    action: Vec<Vec<BitVec>>,
    degree_cap: u32,
    /// Set when some action result fell beyond the cap and was dropped.
    truncated: bool,
}

impl GradedModule {
    /// A module with the given basis and all-zero action tables.
    pub fn with_basis(basis: &[(String, u32)], degree_cap: u32) -> Self {
        let n = basis.len();
        GradedModule {
            labels: basis.iter().map(|(l, _)| l.clone()).collect(),
            degrees: basis.iter().map(|(_, d)| *d).collect(),
            action: (0..degree_cap).map(|_| vec![BitVec::zeros(n); n]).collect(),
            degree_cap,
            truncated: false,
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn was_truncated(&self) -> bool {
        self.truncated
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn indices_in_degree(&self, d: u32) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.degrees[i] == d).collect()
    }

    pub fn dim_in_degree(&self, d: u32) -> usize {
        self.indices_in_degree(d).len()
    }

    pub fn top_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Set Sq^k(basis i); `value` must be homogeneous of degree deg(i)+k.
    pub fn set_action(&mut self, k: u32, i: usize, value: BitVec) {
        assert!(k >= 1 && k <= self.degree_cap);
        for j in value.ones() {
            debug_assert_eq!(self.degrees[j], self.degrees[i] + k);
        }
        self.action[(k - 1) as usize][i] = value;
    }

    pub fn mark_truncated(&mut self) {
        self.truncated = true;
    }

    /// Sq^k applied to one basis element. Sq⁰ is the identity; every k
    /// beyond the cap acts by zero (the module is flagged truncated at
    /// construction when that loses information).
    pub fn act_basis(&self, k: u32, i: usize) -> BitVec {
        if k == 0 {
            return BitVec::from_indices(self.rank(), &[i]);
        }
        if k > self.degree_cap {
            return BitVec::zeros(self.rank());
        }
        self.action[(k - 1) as usize][i].clone()
    }

    /// Linear extension of Sq^k.
    pub fn act(&self, k: u32, v: &BitVec) -> BitVec {
        if k == 0 {
            return v.clone();
        }
        let mut out = BitVec::zeros(self.rank());
        if k > self.degree_cap {
            return out;
        }
        for i in v.ones() {
            out.xor_assign(&self.action[(k - 1) as usize][i]);
        }
        out
    }

    /// Action of a composite word, rightmost square first.
    pub fn act_word(&self, w: &SquareWord, v: &BitVec) -> BitVec {
        let mut cur = v.clone();
        for &k in w.exponents().iter().rev() {
            cur = self.act(k, &cur);
        }
        cur
    }

    /// Instability: Sq^k(b) = 0 whenever k > deg(b).
    ///
    /// This is the space-level constraint, valid for modules that are
    /// cohomologies of spaces in their honest grading (H*(CPⁿ), Thom
    /// spaces of genuine bundles after shifting U to the bundle rank).
    pub fn check_instability(&self) -> Result<()> {
        self.check_instability_shifted(0)
    }

    /// Instability in a shifted grading: Sq^k(b) = 0 whenever
    /// k > deg(b) + shift.
    ///
    /// Thom modules here normalize U to degree 0 even when the bundle has
    /// positive rank, so the space-level inequality only holds after
    /// shifting by that rank: for ξ = −sℋ with s ≤ 0 the Thom space is a
    /// genuine space with U in degree −2s.
    pub fn check_instability_shifted(&self, shift: u32) -> Result<()> {
        for i in 0..self.rank() {
            for k in self.degrees[i] + shift + 1..=self.degree_cap {
                if !self.act_basis(k, i).is_zero() {
                    return Err(Error::SelfTest(format!(
                        "instability violated: Sq^{k}({}) != 0 in degree {} (shift {shift})",
                        self.labels[i], self.degrees[i]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Adem compatibility: the table action of Sq^a∘Sq^b equals the action
    /// of the admissible expansion of Sq^aSq^b, for a < 2b with a+b within
    /// the cap.
    pub fn check_adem_compatibility(&self) -> Result<()> {
        for a in 1..self.degree_cap {
            for b in 1..=(self.degree_cap - a) {
                if a >= 2 * b {
                    continue;
                }
                let reduced = adem_reduce(&SquareWord::new(&[a, b]));
                for i in 0..self.rank() {
                    let composite = self.act(a, &self.act_basis(b, i));
                    let mut expanded = BitVec::zeros(self.rank());
                    for t in reduced.terms() {
                        expanded.xor_assign(
                            &self.act_word(t, &BitVec::from_indices(self.rank(), &[i])),
                        );
                    }
                    if composite != expanded {
                        return Err(Error::SelfTest(format!(
                            "Adem compatibility violated on Sq^{a}Sq^{b}({})",
                            self.labels[i]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Line-oriented text form: one `gen <label> <degree>` per generator,
    /// one `sq <k> <label> = <label>+...` per nonzero action entry.
    /// Emission order is canonical, so round-trips are byte-exact.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "cap {}", self.degree_cap);
        for i in 0..self.rank() {
            let _ = writeln!(out, "gen {} {}", self.labels[i], self.degrees[i]);
        }
        for k in 1..=self.degree_cap {
            for i in 0..self.rank() {
                let v = self.act_basis(k, i);
                if v.is_zero() {
                    continue;
                }
                let targets: Vec<&str> = v.ones().map(|j| self.labels[j].as_str()).collect();
                let _ = writeln!(out, "sq {k} {} = {}", self.labels[i], targets.join("+"));
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<GradedModule> {
        let mut cap: Option<u32> = None;
        let mut basis: Vec<(String, u32)> = Vec::new();
        let mut sq_lines: Vec<(u32, String, Vec<String>)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("cap") => {
                    let v = parts.next().ok_or_else(|| bad("missing cap value"))?;
                    cap = Some(v.parse().map_err(|_| bad("bad cap value"))?);
                }
                Some("gen") => {
                    let label = parts.next().ok_or_else(|| bad("missing label"))?;
                    let deg = parts.next().ok_or_else(|| bad("missing degree"))?;
                    basis.push((
                        label.to_string(),
                        deg.parse().map_err(|_| bad("bad degree"))?,
                    ));
                }
                Some("sq") => {
                    let k: u32 = parts
                        .next()
                        .ok_or_else(|| bad("missing k"))?
                        .parse()
                        .map_err(|_| bad("bad k"))?;
                    let source = parts.next().ok_or_else(|| bad("missing source"))?;
                    if parts.next() != Some("=") {
                        return Err(bad("expected '='"));
                    }
                    let rhs = parts.next().ok_or_else(|| bad("missing targets"))?;
                    sq_lines.push((
                        k,
                        source.to_string(),
                        rhs.split('+').map(str::to_string).collect(),
                    ));
                }
                _ => return Err(bad("unknown directive")),
            }
        }
        let cap = cap.ok_or_else(|| Error::Parse("missing cap line".into()))?;
        let mut m = GradedModule::with_basis(&basis, cap);
        for (k, source, targets) in sq_lines {
            let i = m
                .index_of(&source)
                .ok_or_else(|| Error::Parse(format!("unknown generator {source:?}")))?;
            let mut v = BitVec::zeros(m.rank());
            for t in targets {
                let j = m
                    .index_of(&t)
                    .ok_or_else(|| Error::Parse(format!("unknown generator {t:?}")))?;
                v.toggle(j);
            }
            m.set_action(k, i, v);
        }
        Ok(m)
    }

    /// The same module with basis order permuted; used by determinism tests.
    pub fn permuted(&self, perm: &[usize]) -> GradedModule {
        assert_eq!(perm.len(), self.rank());
        let mut inverse = vec![0usize; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let basis: Vec<(String, u32)> = perm
            .iter()
            .map(|&old| (self.labels[old].clone(), self.degrees[old]))
            .collect();
        let mut m = GradedModule::with_basis(&basis, self.degree_cap);
        m.truncated = self.truncated;
        for k in 1..=self.degree_cap {
            for (new, &old) in perm.iter().enumerate() {
                let v = self.act_basis(k, old);
                if v.is_zero() {
                    continue;
                }
                let moved = BitVec::from_indices(
                    self.rank(),
                    &v.ones().map(|j| inverse[j]).collect::<Vec<_>>(),
                );
                m.set_action(k, new, moved);
            }
        }
        m
    }
}

/// H*(CPⁿ; Z₂) up to the cap: basis xᵃ in degree 2a, action from
/// Sq(xᵃ) = xᵃ(1+x)ᵃ truncated at xⁿ.
pub fn cpn_module(n: u32, cap: u32) -> GradedModule {
    let basis: Vec<(String, u32)> = (0..=n)
        .filter(|&a| 2 * a <= cap)
        .map(|a| (power_label("x", a, ""), 2 * a))
        .collect();
    let count = basis.len() as u32;
    let mut m = GradedModule::with_basis(&basis, cap);
    for a in 0..count {
        for i in 1..=a {
            // Sq^{2i}(x^a) = binom(a, i) x^{a+i}
            if !binom_mod2(u64::from(a), u64::from(i)) {
                continue;
            }
            if a + i < count {
                let v = BitVec::from_indices(m.rank(), &[(a + i) as usize]);
                m.set_action(2 * i, a as usize, v);
            } else if a + i <= n {
                m.mark_truncated();
            }
        }
    }
    m
}

fn power_label(var: &str, a: u32, suffix: &str) -> String {
    match a {
        0 if suffix.is_empty() => "1".to_string(),
        0 => suffix.to_string(),
        1 => format!("{var}{suffix}"),
        _ => format!("{var}^{a}{suffix}"),
    }
}

/// The Thom module H*(Mξ_s; Z₂) over CPⁿ: free of rank one over H*(CPⁿ)
/// on the Thom class U, with Sq^i U = w_i(ξ) U and the Cartan expansion
/// Sq^n(aU) = Σ Sq^i(a) ∪ Sq^{n−i}(U).
#[derive(Clone, Debug)]
pub struct ThomModule {
    module: GradedModule,
    s: i64,
    base_n: u32,
    /// w(ξ) coefficients: `sw[i]` is the xⁱ-coefficient, i ≤ n.
    sw: Vec<u8>,
}

impl ThomModule {
    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    /// Mutable access to the action table, for fault-injection controls:
    /// a corrupted table must make the validators fail loudly.
    pub fn module_mut(&mut self) -> &mut GradedModule {
        &mut self.module
    }

    pub fn into_module(self) -> GradedModule {
        self.module
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn base_n(&self) -> u32 {
        self.base_n
    }

    pub fn sw_coefficients(&self) -> &[u8] {
        &self.sw
    }

    /// Coefficient of x^{i/2}U in Sq^i(U); zero for odd i.
    pub fn sq_u_coefficient(&self, i: u32) -> u8 {
        if i % 2 == 1 || (i / 2) as usize >= self.sw.len() {
            0
        } else {
            self.sw[(i / 2) as usize]
        }
    }

    /// Restrict to the Thom module over CP^{n'} (sub-basis xᵃU, a ≤ n').
    pub fn restrict_to_skeleton(&self, n_prime: u32) -> Result<ThomModule> {
        if n_prime >= self.base_n {
            if n_prime == self.base_n {
                return Ok(self.clone());
            }
            return Err(Error::Hypothesis(format!(
                "restriction target CP^{n_prime} is not below CP^{}",
                self.base_n
            )));
        }
        thom_module(self.s, n_prime, self.module.degree_cap().min(2 * n_prime))
    }

    /// Exhaustively recheck the stored table against a fresh Cartan
    /// expansion for all Sq^k with k ≤ max_degree.
    pub fn verify_cartan(&self, max_degree: u32) -> CartanReport {
        let m = &self.module;
        for k in 1..=max_degree.min(m.degree_cap()) {
            for a in 0..m.rank() as u32 {
                let stored = m.act_basis(k, a as usize);
                let mut expected = BitVec::zeros(m.rank());
                if k % 2 == 0 {
                    let i = k / 2;
                    let target = a + i;
                    if target <= self.base_n && 2 * target <= m.degree_cap() {
                        let mut coeff = false;
                        for j in 0..=i.min(a) {
                            // Sq^{2j}(xᵃ) = binom(a,j) x^{a+j}; Sq^{2(i−j)}U = w[i−j] x^{i−j}U
                            let c_base = binom_mod2(u64::from(a), u64::from(j));
                            let c_thom = self.sw.get((i - j) as usize).is_some_and(|&w| w == 1);
                            coeff ^= c_base && c_thom;
                        }
                        if coeff {
                            expected.set(target as usize, true);
                        }
                    }
                }
                if stored != expected {
                    return CartanReport {
                        pass: false,
                        counterexample: Some(format!(
                            "Sq^{k}({}): stored {:?}, Cartan expansion {:?}",
                            m.label(a as usize),
                            stored,
                            expected
                        )),
                    };
                }
            }
        }
        CartanReport {
            pass: true,
            counterexample: None,
        }
    }
}

/// Outcome of [`ThomModule::verify_cartan`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanReport {
    pub pass: bool,
    pub counterexample: Option<String>,
}

/// Build H*(Mξ_s; Z₂) over CPⁿ with basis xᵃU in degree 2a, 2a ≤ cap.
///
/// Rejects caps beyond 2n: there are no such classes, and silently capping
/// would hide modeling bugs upstream.
pub fn thom_module(s: i64, n: u32, cap: u32) -> Result<ThomModule> {
    if cap > 2 * n {
        return Err(Error::CapExceedsTopDegree { cap, max: 2 * n });
    }
    let bundle = charclass::characteristic_classes(s, n);
    let sw: Vec<u8> = bundle.sw_coefficients();
    let basis: Vec<(String, u32)> = (0..=n)
        .filter(|&a| 2 * a <= cap)
        .map(|a| (power_label("x", a, "U"), 2 * a))
        .collect();
    let count = basis.len() as u32;
    let mut m = GradedModule::with_basis(&basis, cap);
    for a in 0..count {
        for i in 1..=(cap / 2) {
            let target = a + i;
            let mut coeff = false;
            for j in 0..=i.min(a) {
                let c_base = binom_mod2(u64::from(a), u64::from(j));
                let c_thom = sw.get((i - j) as usize).is_some_and(|&w| w == 1);
                coeff ^= c_base && c_thom;
            }
            if !coeff {
                continue;
            }
            if target < count {
                let v = BitVec::from_indices(m.rank(), &[target as usize]);
                m.set_action(2 * i, a as usize, v);
            } else if target <= n {
                // the class x^{a+i}U exists over CPⁿ but lies beyond the cap
                m.mark_truncated();
            }
        }
    }
    Ok(ThomModule {
        module: m,
        s,
        base_n: n,
        sw,
    })
}

/// Per-degree dimensions as a map degree → dim.
pub fn dimension_profile(m: &GradedModule) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for i in 0..m.rank() {
        *out.entry(m.degree(i)).or_insert(0) += 1;
    }
    out
}
