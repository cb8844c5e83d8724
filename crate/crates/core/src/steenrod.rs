//! The mod-2 Steenrod algebra 𝒜₂ in the admissible (Serre–Cartan) basis,
//! with Adem rewriting, the finite subalgebras 𝒜(n) generated by
//! Sq¹,…,Sq^{2ⁿ}, and the two mod-3 operations acting on Thom classes.
//!
//! A monomial Sq^{i₁}⋯Sq^{i_k} is *admissible* when i_j ≥ 2·i_{j+1} for all
//! j; admissible monomials form a GF(2)-basis of 𝒜₂. Products are rewritten
//! into this basis with the Adem relation
//!
//! ```text
//! Sq^a Sq^b = Σ_{c=0}^{⌊a/2⌋} binom(b−c−1, a−2c) Sq^{a+b−c} Sq^c   (a < 2b)
//! ```
//!
//! with binomial coefficients mod 2 decided by Lucas' theorem (a bitwise
//! AND test). Rewriting is memoized behind a lock, so values are safe to
//! share across threads and independent of evaluation order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use crate::gf2::{BitVec, Subspace};

/// binom(n, k) mod 2 by Lucas: odd iff every bit of k is set in n.
#[inline]
pub fn binom_mod2(n: u64, k: u64) -> bool {
    n & k == k
}

/// A composite of Steenrod squares Sq^{i₁}⋯Sq^{i_k}, not necessarily
/// admissible. The empty word is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct SquareWord(Vec<u32>);

impl SquareWord {
    pub fn unit() -> Self {
        SquareWord(Vec::new())
    }

    /// Build a word from exponents; panics on a zero exponent (Sq⁰ = 1 is
    /// never stored).
    pub fn new(exponents: &[u32]) -> Self {
        assert!(
            exponents.iter().all(|&i| i > 0),
            "exponents must be strictly positive"
        );
        SquareWord(exponents.to_vec())
    }

    pub fn single(i: u32) -> Self {
        SquareWord::new(&[i])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= 2 * w[1])
    }

    /// Concatenation Sq^I ∘ Sq^J.
    pub fn concat(&self, other: &SquareWord) -> SquareWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SquareWord(v)
    }
}

impl fmt::Display for SquareWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sq(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for SquareWord {
    type Err = crate::Error;

    /// Accepts `Sq(2,1)`, `(2,1)`, or `2,1`; `Sq()` is the unit.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let s = s.strip_prefix("Sq").unwrap_or(s).trim();
        let s = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s)
            .trim();
        if s.is_empty() {
            return Ok(SquareWord::unit());
        }
        let mut exponents = Vec::new();
        for part in s.split(',') {
            let i: u32 = part
                .trim()
                .parse()
                .map_err(|_| crate::Error::Parse(format!("bad exponent {part:?}")))?;
            if i == 0 {
                return Err(crate::Error::Parse("exponent 0 is not allowed".into()));
            }
            exponents.push(i);
        }
        Ok(SquareWord(exponents))
    }
}

/// A GF(2)-sum of admissible monomials; presence in the set means
/// coefficient 1, so mod-2 cancellation is handled by toggling membership.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SteenrodElement {
    terms: BTreeSet<SquareWord>,
}

impl SteenrodElement {
    pub fn zero() -> Self {
        SteenrodElement::default()
    }

    pub fn unit() -> Self {
        SquareWord::unit().into()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Shared degree of the terms; `None` for the zero element.
    pub fn degree(&self) -> Option<u32> {
        let d = self.terms.iter().next()?.degree();
        debug_assert!(self.terms.iter().all(|w| w.degree() == d));
        Some(d)
    }

    /// Terms in descending lexicographic order of exponent sequences.
    pub fn terms(&self) -> impl Iterator<Item = &SquareWord> {
        self.terms.iter().rev()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn contains(&self, word: &SquareWord) -> bool {
        self.terms.contains(word)
    }

    pub fn toggle(&mut self, word: SquareWord) {
        debug_assert!(word.is_admissible());
        if !self.terms.remove(&word) {
            self.terms.insert(word);
        }
    }

    pub fn add_assign(&mut self, other: &SteenrodElement) {
        for w in &other.terms {
            self.toggle(w.clone());
        }
    }
}

impl From<SquareWord> for SteenrodElement {
    fn from(word: SquareWord) -> Self {
        let mut e = SteenrodElement::zero();
        e.toggle(word);
        e
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, w) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

fn adem_cache() -> &'static Mutex<HashMap<SquareWord, Arc<SteenrodElement>>> {
    static CACHE: OnceLock<Mutex<HashMap<SquareWord, Arc<SteenrodElement>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Expand a (possibly inadmissible) word in the admissible basis.
///
/// Total function: rewriting terminates and the result is a fixed point of
/// further reduction. Degree is preserved.
pub fn adem_reduce(word: &SquareWord) -> SteenrodElement {
    if word.is_admissible() {
        return word.clone().into();
    }
    if let Some(hit) = adem_cache().lock().unwrap().get(word) {
        return (**hit).clone();
    }
    // leftmost inadmissible pair
    let exps = word.exponents();
    let pos = exps
        .windows(2)
        .position(|w| w[0] < 2 * w[1])
        .expect("inadmissible word has an inadmissible pair");
    let (a, b) = (exps[pos], exps[pos + 1]);
    let mut result = SteenrodElement::zero();
    for c in 0..=a / 2 {
        if !binom_mod2(u64::from(b - c - 1), u64::from(a - 2 * c)) {
            continue;
        }
        let mut v: Vec<u32> = exps[..pos].to_vec();
        v.push(a + b - c);
        if c > 0 {
            v.push(c);
        }
        v.extend_from_slice(&exps[pos + 2..]);
        result.add_assign(&adem_reduce(&SquareWord(v)));
    }
    adem_cache()
        .lock()
        .unwrap()
        .insert(word.clone(), Arc::new(result.clone()));
    result
}

/// Product in 𝒜₂, bilinear over GF(2), result in admissible form.
pub fn multiply(a: &SteenrodElement, b: &SteenrodElement) -> SteenrodElement {
    let mut out = SteenrodElement::zero();
    for wa in &a.terms {
        for wb in &b.terms {
            out.add_assign(&adem_reduce(&wa.concat(wb)));
        }
    }
    out
}

/// The full algebra or the finite subalgebra 𝒜(n).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AlgebraProfile {
    Full,
    Subalgebra(u32),
}

impl AlgebraProfile {
    /// Degrees of the algebra generators relevant up to `max_degree`:
    /// Sq^{2^j} throughout for the full algebra, Sq¹,…,Sq^{2ⁿ} for 𝒜(n).
    pub fn generator_degrees(&self, max_degree: u32) -> Vec<u32> {
        let top = match self {
            AlgebraProfile::Full => max_degree,
            AlgebraProfile::Subalgebra(n) => (1u32 << n).min(max_degree),
        };
        (0..)
            .map(|j| 1u32 << j)
            .take_while(|&g| g <= top)
            .collect()
    }
}

impl fmt::Display for AlgebraProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraProfile::Full => write!(f, "A"),
            AlgebraProfile::Subalgebra(n) => write!(f, "A({n})"),
        }
    }
}

impl FromStr for AlgebraProfile {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("a") || s.eq_ignore_ascii_case("full") {
            return Ok(AlgebraProfile::Full);
        }
        let body = s
            .strip_prefix('A')
            .or_else(|| s.strip_prefix('a'))
            .ok_or_else(|| crate::Error::Parse(format!("bad profile {s:?}")))?;
        let body = body
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(body);
        let n: u32 = body
            .parse()
            .map_err(|_| crate::Error::Parse(format!("bad profile {s:?}")))?;
        Ok(AlgebraProfile::Subalgebra(n))
    }
}

/// All admissible monomials of the full algebra in `degree`, descending
/// lexicographic order.
fn admissible_words(degree: u32) -> Vec<SquareWord> {
    // words[d] = admissible words of degree d, keyed by leading exponent
    let mut per_degree: Vec<Vec<SquareWord>> = vec![vec![SquareWord::unit()]];
    for d in 1..=degree {
        let mut here = vec![SquareWord::single(d)];
        for d_rest in 1..d {
            let lead = d - d_rest;
            for w in &per_degree[d_rest as usize] {
                if lead >= 2 * w.exponents()[0] {
                    let mut v = vec![lead];
                    v.extend_from_slice(w.exponents());
                    here.push(SquareWord(v));
                }
            }
        }
        here.sort_by(|x, y| y.cmp(x));
        per_degree.push(here);
    }
    per_degree.swap_remove(degree as usize)
}

/// Basis data for one internal degree of a profile algebra: the chosen
/// basis elements and, in subalgebra case, the RREF subspace they span
/// inside the admissible coordinates of the full algebra.
struct DegreeBasis {
    /// Admissible monomials of the full algebra in this degree (the
    /// coordinate frame), descending order.
    frame: Vec<SquareWord>,
    frame_index: HashMap<SquareWord, usize>,
    /// Basis of the profile algebra in this degree, as elements.
    elements: Vec<SteenrodElement>,
    /// Span of `elements` in frame coordinates (RREF rows = elements).
    span: Subspace,
}

/// A handle to the full algebra or 𝒜(n) with memoized degreewise bases and
/// multiplication tables. Cheap to create; caches fill lazily behind locks
/// and never change a computed value, so concurrent use is deterministic.
/// Multiplication table of one degree pair: `table[i][j]` is the product
/// of the i-th and j-th basis elements, in target-degree coordinates.
pub type ProductTable = Vec<Vec<BitVec>>;

pub struct Algebra {
    profile: AlgebraProfile,
    degrees: RwLock<HashMap<u32, Arc<DegreeBasis>>>,
    products: RwLock<HashMap<(u32, u32), Arc<ProductTable>>>,
}

impl Algebra {
    pub fn new(profile: AlgebraProfile) -> Self {
        Algebra {
            profile,
            degrees: RwLock::new(HashMap::new()),
            products: RwLock::new(HashMap::new()),
        }
    }

    pub fn profile(&self) -> AlgebraProfile {
        self.profile
    }

    fn degree_basis(&self, d: u32) -> Arc<DegreeBasis> {
        if let Some(hit) = self.degrees.read().unwrap().get(&d) {
            return hit.clone();
        }
        // Build lower degrees first so subalgebra spans can be assembled
        // from generator multiples of lower pieces.
        if d > 0 {
            for g in self.profile.generator_degrees(d) {
                if g < d {
                    self.degree_basis(d - g);
                }
            }
        }
        let frame = admissible_words(d);
        let frame_index: HashMap<SquareWord, usize> = frame
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let mut span = Subspace::new(frame.len());
        let mut elements = Vec::new();
        match self.profile {
            AlgebraProfile::Full => {
                for (i, w) in frame.iter().enumerate() {
                    let mut v = BitVec::zeros(frame.len());
                    v.set(i, true);
                    span.insert(v);
                    elements.push(w.clone().into());
                }
            }
            AlgebraProfile::Subalgebra(_) => {
                if d == 0 {
                    let mut v = BitVec::zeros(1);
                    v.set(0, true);
                    span.insert(v);
                    elements.push(SteenrodElement::unit());
                } else {
                    // candidate spanning set: Sq^g · (basis of degree d−g)
                    let mut candidates = Vec::new();
                    for g in self.profile.generator_degrees(d) {
                        if g > d {
                            continue;
                        }
                        let lower = self.degree_basis(d - g);
                        let sq_g: SteenrodElement = SquareWord::single(g).into();
                        for e in &lower.elements {
                            candidates.push(multiply(&sq_g, e));
                        }
                    }
                    for e in candidates {
                        let v = coords_in_frame(&e, &frame_index, frame.len());
                        let mut probe = v.clone();
                        span.reduce(&mut probe);
                        if !probe.is_zero() {
                            span.insert(v);
                            elements.push(e);
                        }
                    }
                    // canonicalize: elements in RREF coordinates, pivot order
                    elements = span
                        .basis()
                        .iter()
                        .map(|row| element_of_frame(row, &frame))
                        .collect();
                }
            }
        }
        let data = Arc::new(DegreeBasis {
            frame,
            frame_index,
            elements,
            span,
        });
        self.degrees
            .write()
            .unwrap()
            .entry(d)
            .or_insert(data)
            .clone()
    }

    /// GF(2)-dimension of the profile algebra in `degree`.
    pub fn dim(&self, degree: u32) -> usize {
        self.degree_basis(degree).elements.len()
    }

    /// The canonical basis of the profile algebra in `degree`.
    pub fn basis_elements(&self, degree: u32) -> Vec<SteenrodElement> {
        self.degree_basis(degree).elements.clone()
    }

    /// Membership test: the admissible expansion lies in the profile.
    pub fn contains(&self, e: &SteenrodElement) -> bool {
        let Some(d) = e.degree() else {
            return true;
        };
        let data = self.degree_basis(d);
        let v = coords_in_frame(e, &data.frame_index, data.frame.len());
        data.span.contains(&v)
    }

    pub fn contains_word(&self, w: &SquareWord) -> bool {
        self.contains(&adem_reduce(w))
    }

    /// Coordinates of `e` in the degree basis; `None` when `e` is not in
    /// the profile.
    pub fn coords(&self, e: &SteenrodElement) -> Option<(u32, BitVec)> {
        let d = e.degree().unwrap_or(0);
        let data = self.degree_basis(d);
        let mut v = coords_in_frame(e, &data.frame_index, data.frame.len());
        let mut coords = BitVec::zeros(data.elements.len());
        for (i, row) in data.span.basis().iter().enumerate() {
            let pivot = row.first_one().expect("basis rows are nonzero");
            if v.get(pivot) {
                v.xor_assign(row);
                coords.set(i, true);
            }
        }
        v.is_zero().then_some((d, coords))
    }

    pub fn element_of_coords(&self, degree: u32, coords: &BitVec) -> SteenrodElement {
        let data = self.degree_basis(degree);
        let mut e = SteenrodElement::zero();
        for i in coords.ones() {
            e.add_assign(&data.elements[i]);
        }
        e
    }

    /// Coefficient of the admissible word `w` in the element with the given
    /// coordinates. Used to read h_j-multiplications (w = Sq^{2^j}) off
    /// minimal differentials.
    pub fn word_coefficient(&self, degree: u32, coords: &BitVec, w: &SquareWord) -> bool {
        let data = self.degree_basis(degree);
        let mut c = false;
        for i in coords.ones() {
            c ^= data.elements[i].contains(w);
        }
        c
    }

    /// Multiplication table basis(d1) × basis(d2) → coordinates in d1+d2.
    pub fn product_table(&self, d1: u32, d2: u32) -> Arc<ProductTable> {
        if let Some(hit) = self.products.read().unwrap().get(&(d1, d2)) {
            return hit.clone();
        }
        let left = self.degree_basis(d1);
        let right = self.degree_basis(d2);
        let table: ProductTable = left
            .elements
            .iter()
            .map(|a| {
                right
                    .elements
                    .iter()
                    .map(|b| {
                        let p = multiply(a, b);
                        self.coords(&p)
                            .expect("profile algebras are closed under multiplication")
                            .1
                    })
                    .collect()
            })
            .collect();
        let table = Arc::new(table);
        self.products
            .write()
            .unwrap()
            .entry((d1, d2))
            .or_insert(table)
            .clone()
    }
}

fn coords_in_frame(
    e: &SteenrodElement,
    frame_index: &HashMap<SquareWord, usize>,
    frame_len: usize,
) -> BitVec {
    let mut v = BitVec::zeros(frame_len);
    for w in e.terms() {
        let i = frame_index
            .get(w)
            .expect("term degree matches the frame degree");
        v.toggle(*i);
    }
    v
}

fn element_of_frame(coords: &BitVec, frame: &[SquareWord]) -> SteenrodElement {
    let mut e = SteenrodElement::zero();
    for i in coords.ones() {
        e.toggle(frame[i].clone());
    }
    e
}

/// Admissible monomials of `degree` admitted by the profile, descending
/// lexicographic order.
///
/// For the full algebra this is the degreewise basis. For 𝒜(n) it is the
/// set of admissible monomials whose expansion lies in 𝒜(n). That set does
/// NOT span 𝒜(n) in general — already 𝒜(1) in degree 5 and 𝒜(2) in degree
/// 9 contain elements expressible only as sums of admissibles — so the
/// resolution engine works with [`Algebra::basis_elements`] (canonical RREF
/// subspace bases) instead.
pub fn basis_in_degree(profile: AlgebraProfile, degree: u32) -> Vec<SquareWord> {
    let words = admissible_words(degree);
    match profile {
        AlgebraProfile::Full => words,
        AlgebraProfile::Subalgebra(_) => {
            let algebra = Algebra::new(profile);
            words
                .into_iter()
                .filter(|w| algebra.contains_word(w))
                .collect()
        }
    }
}

/// The two odd-primary operations the pipeline needs, both at p = 3.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OddSteenrodOp {
    /// The reduced power 𝒫¹, of cohomological degree 4.
    P1,
    /// The Bockstein β, of degree 1.
    Bockstein,
}

impl OddSteenrodOp {
    pub const PRIME: u32 = 3;

    pub fn degree(self) -> u32 {
        match self {
            OddSteenrodOp::P1 => 4,
            OddSteenrodOp::Bockstein => 1,
        }
    }
}

/// Coefficient of x²U in 𝒫¹U on the Thom spectrum of ξ = −sℋ:
/// 𝒫¹U = p₁(ξ)U mod 3 with p₁(ξ) = −s·x², so the coefficient is −s mod 3.
pub fn p3_action_on_thom(s: i64) -> u8 {
    (-s).rem_euclid(3) as u8
}
