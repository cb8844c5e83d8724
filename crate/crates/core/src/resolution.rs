//! Minimal free resolutions over the Steenrod algebra or its finite
//! subalgebras, computed degreewise with bit-packed kernels.
//!
//! Stage s is a free module on generators g(s,t,i); the differential of a
//! new generator is the kernel vector it was lifted from, so minimality
//! (no unit coefficients) holds by construction and is re-checked. The
//! number of stage-s generators in internal degree t is dim Ext^{s,t}.
//!
//! Products with h_j are read off the minimal differential: the h_j-line
//! from a stage-s dot to a stage-(s+1) dot is the coefficient of Sq^{2^j}
//! in the corresponding differential entry.
//!
//! Stage results are only reported for t ≤ t_max − s (a conservative
//! staircase guard; see [`Resolution::trusted_t`]).

use std::collections::BTreeMap;

use crate::chart::{ChartDot, ChartLine, ChartRange, ExtChart, LineKind};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, Subspace};
use crate::graded::GradedModule;
use crate::par;
use crate::steenrod::{Algebra, AlgebraProfile, SquareWord, SteenrodElement};

/// A free-module generator with its internal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub degree: u32,
}

/// One stage of the resolution. For s = 0 the differential images live in
/// the resolved module's coordinates; for s ≥ 1 they live in the degreewise
/// basis of the previous stage at the generator's degree.
#[derive(Clone, Debug)]
pub struct FreeModuleStage {
    pub generators: Vec<Generator>,
    d_images: Vec<BitVec>,
}

impl FreeModuleStage {
    pub fn differential_image(&self, i: usize) -> &BitVec {
        &self.d_images[i]
    }
}

/// Options for a resolution run. `sequential` forces the per-degree linear
/// algebra onto one thread; output is bit-identical either way.
#[derive(Clone, Copy, Debug, Default)]
pub struct ResolveOptions {
    pub sequential: bool,
}

/// A computed minimal resolution together with its trusted range.
pub struct Resolution {
    profile: AlgebraProfile,
    algebra: Algebra,
    module: GradedModule,
    s_max: u32,
    t_max: u32,
    stages: Vec<FreeModuleStage>,
}

/// Layout of the degreewise basis of a free module: one block per
/// generator (generator index, algebra degree, block offset), ordered by
/// generator index.
fn free_layout(gens: &[Generator], alg: &Algebra, t: u32) -> Vec<(usize, u32, usize)> {
    let mut layout = Vec::new();
    let mut offset = 0;
    for (i, g) in gens.iter().enumerate() {
        if g.degree > t {
            continue;
        }
        let d = t - g.degree;
        let dim = alg.dim(d);
        if dim > 0 {
            layout.push((i, d, offset));
            offset += dim;
        }
    }
    layout
}

fn free_dim(gens: &[Generator], alg: &Algebra, t: u32) -> usize {
    free_layout(gens, alg, t)
        .iter()
        .map(|&(_, d, _)| alg.dim(d))
        .sum()
}

/// Action of a single Sq^k on a degreewise free-module vector
/// (degree t → t + k).
fn free_act_sq(gens: &[Generator], alg: &Algebra, k: u32, t: u32, v: &BitVec) -> BitVec {
    let src = free_layout(gens, alg, t);
    let dst = free_layout(gens, alg, t + k);
    let dst_dim = free_dim(gens, alg, t + k);
    let mut out = BitVec::zeros(dst_dim);
    let sq_k: SteenrodElement = SquareWord::single(k).into();
    let (_, sq_coords) = alg
        .coords(&sq_k)
        .expect("profile generator degrees stay in the profile");
    for &(gen_idx, d, offset) in &src {
        let dim = alg.dim(d);
        let block: Vec<usize> = (0..dim).filter(|&b| v.get(offset + b)).collect();
        if block.is_empty() {
            continue;
        }
        let Some(&(_, _, dst_offset)) = dst.iter().find(|&&(gi, _, _)| gi == gen_idx) else {
            continue;
        };
        let table = alg.product_table(k, d);
        for b in block {
            for li in sq_coords.ones() {
                let prod = &table[li][b];
                for p in prod.ones() {
                    out.toggle(dst_offset + p);
                }
            }
        }
    }
    out
}

fn module_act_element(m: &GradedModule, e: &SteenrodElement, v: &BitVec) -> BitVec {
    let mut out = BitVec::zeros(m.rank());
    for w in e.terms() {
        out.xor_assign(&m.act_word(w, v));
    }
    out
}

/// Minimal generators of the resolved module per degree, with the chosen
/// module vectors.
fn module_generators(m: &GradedModule, alg: &Algebra, t_max: u32) -> Vec<(u32, Vec<BitVec>)> {
    let gen_degrees = alg.profile().generator_degrees(t_max.max(1));
    let mut chosen: Vec<(u32, Vec<BitVec>)> = Vec::new();
    for t in 0..=t_max {
        let slice = m.indices_in_degree(t);
        if slice.is_empty() {
            chosen.push((t, Vec::new()));
            continue;
        }
        // reachable part of degree t: Sq^g applied to everything below
        let mut span = Subspace::new(m.rank());
        for &g in &gen_degrees {
            if g > t {
                continue;
            }
            for i in m.indices_in_degree(t - g) {
                let v = m.act_basis(g, i);
                if !v.is_zero() {
                    span.insert(v);
                }
            }
        }
        let mut new_gens = Vec::new();
        for i in slice {
            let v = BitVec::from_indices(m.rank(), &[i]);
            if span.insert(v.clone()) {
                new_gens.push(v);
            }
        }
        chosen.push((t, new_gens));
    }
    chosen
}

/// Compute the minimal resolution of `m` over the profile algebra through
/// homological degree `s_max` and internal degree `t_max`.
pub fn minimal_resolution(
    m: &GradedModule,
    profile: AlgebraProfile,
    s_max: u32,
    t_max: u32,
    opts: ResolveOptions,
) -> Resolution {
    let alg = Algebra::new(profile);

    let mut stage0 = FreeModuleStage {
        generators: Vec::new(),
        d_images: Vec::new(),
    };
    for (t, gens_at_t) in module_generators(m, &alg, t_max) {
        for (i, v) in gens_at_t.into_iter().enumerate() {
            stage0.generators.push(Generator {
                label: format!("g(0,{t},{i})"),
                degree: t,
            });
            stage0.d_images.push(v);
        }
    }
    let mut stages = vec![stage0];

    for s in 1..=s_max {
        let prev = &stages[(s - 1) as usize];
        let prev_prev_gens: Option<Vec<Generator>> = if s >= 2 {
            Some(stages[(s - 2) as usize].generators.clone())
        } else {
            None
        };

        // kernel of the previous differential in every internal degree,
        // degrees handled independently
        let degrees: Vec<u32> = (0..=t_max).collect();
        let kernels: Vec<Subspace> = par::map_collect(degrees, opts.sequential, |t| {
            differential_matrix(m, &alg, prev, prev_prev_gens.as_deref(), t).kernel_basis()
        });

        // sweep degrees upward, extending the reachable span and picking
        // new generators from each kernel
        let gen_degrees = alg.profile().generator_degrees(t_max.max(1));
        let mut new_stage = FreeModuleStage {
            generators: Vec::new(),
            d_images: Vec::new(),
        };
        for t in 0..=t_max {
            let dim_t = free_dim(&prev.generators, &alg, t);
            if dim_t == 0 {
                continue;
            }
            let mut span = Subspace::new(dim_t);
            for &g in &gen_degrees {
                if g > t {
                    continue;
                }
                for v in kernels[(t - g) as usize].basis() {
                    let moved = free_act_sq(&prev.generators, &alg, g, t - g, v);
                    if !moved.is_zero() {
                        span.insert(moved);
                    }
                }
            }
            let mut index = 0;
            for v in kernels[t as usize].basis() {
                if span.insert(v.clone()) {
                    new_stage.generators.push(Generator {
                        label: format!("g({s},{t},{index})"),
                        degree: t,
                    });
                    new_stage.d_images.push(v.clone());
                    index += 1;
                }
            }
        }
        stages.push(new_stage);
    }

    Resolution {
        profile,
        algebra: alg,
        module: m.clone(),
        s_max,
        t_max,
        stages,
    }
}

/// Matrix of the differential out of `stage` in internal degree `t`.
/// Rows index the target (previous stage, or the module for stage 0);
/// columns index the degreewise basis of the free module on
/// `stage.generators`.
fn differential_matrix(
    m: &GradedModule,
    alg: &Algebra,
    stage: &FreeModuleStage,
    prev_gens: Option<&[Generator]>,
    t: u32,
) -> BitMatrix {
    let src = free_layout(&stage.generators, alg, t);
    let cols = free_dim(&stage.generators, alg, t);
    match prev_gens {
        None => {
            // d0 : F_0 -> M, restricted to the degree-t slice of M
            let slice = m.indices_in_degree(t);
            let slice_pos: BTreeMap<usize, usize> =
                slice.iter().enumerate().map(|(p, &i)| (i, p)).collect();
            let mut mat = BitMatrix::zeros(slice.len(), cols);
            for &(gen_idx, d, offset) in &src {
                let basis = alg.basis_elements(d);
                for (b, e) in basis.iter().enumerate() {
                    let image = module_act_element(m, e, &stage.d_images[gen_idx]);
                    for i in image.ones() {
                        mat.set(slice_pos[&i], offset + b, true);
                    }
                }
            }
            mat
        }
        Some(prev_gens) => {
            let dst = free_layout(prev_gens, alg, t);
            let rows = free_dim(prev_gens, alg, t);
            let mut mat = BitMatrix::zeros(rows, cols);
            for &(gen_idx, d, offset) in &src {
                let g_degree = stage.generators[gen_idx].degree;
                let image = &stage.d_images[gen_idx];
                let image_layout = free_layout(prev_gens, alg, g_degree);
                for b in 0..alg.dim(d) {
                    // column = (basis element b of degree d) · d(generator)
                    let mut col = BitVec::zeros(rows);
                    for &(pg, pd, poffset) in &image_layout {
                        let pdim = alg.dim(pd);
                        let bits: Vec<usize> =
                            (0..pdim).filter(|&k| image.get(poffset + k)).collect();
                        if bits.is_empty() {
                            continue;
                        }
                        let Some(&(_, _, dst_offset)) =
                            dst.iter().find(|&&(gi, _, _)| gi == pg)
                        else {
                            continue;
                        };
                        let table = alg.product_table(d, pd);
                        for k in bits {
                            let prod = &table[b][k];
                            for p in prod.ones() {
                                col.toggle(dst_offset + p);
                            }
                        }
                    }
                    for r in col.ones() {
                        mat.set(r, offset + b, true);
                    }
                }
            }
            mat
        }
    }
}

impl Resolution {
    pub fn profile(&self) -> AlgebraProfile {
        self.profile
    }

    pub fn s_max(&self) -> u32 {
        self.s_max
    }

    pub fn t_max(&self) -> u32 {
        self.t_max
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn stage(&self, s: u32) -> &FreeModuleStage {
        &self.stages[s as usize]
    }

    /// Largest internal degree trusted at stage s (staircase guard).
    pub fn trusted_t(&self, s: u32) -> i64 {
        i64::from(self.t_max) - i64::from(s)
    }

    /// Number of stage-s generators in internal degree t = dim Ext^{s,t}.
    pub fn ext_rank(&self, s: u32, t: u32) -> Result<usize> {
        if s > self.s_max || i64::from(t) > self.trusted_t(s) {
            return Err(Error::OutOfTrustedRange {
                s,
                t,
                t_trusted: self.trusted_t(s.min(self.s_max)),
            });
        }
        Ok(self.stages[s as usize]
            .generators
            .iter()
            .filter(|g| g.degree == t)
            .count())
    }

    /// Generators of stage s in degree t, with their stage indices.
    pub fn generators_at(&self, s: u32, t: u32) -> Vec<(usize, &Generator)> {
        self.stages[s as usize]
            .generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.degree == t)
            .collect()
    }

    /// d ∘ d = 0 on every generator in range.
    pub fn check_d_squared(&self) -> Result<()> {
        if self.s_max >= 1 {
            let stage = &self.stages[1];
            let prev = &self.stages[0];
            for (i, g) in stage.generators.iter().enumerate() {
                let mat = differential_matrix(&self.module, &self.algebra, prev, None, g.degree);
                if !mat.mul_vec(&stage.d_images[i]).is_zero() {
                    return Err(Error::SelfTest(format!(
                        "d0∘d1 != 0 on generator {}",
                        g.label
                    )));
                }
            }
        }
        for s in 2..=self.s_max {
            let stage = &self.stages[s as usize];
            let prev = &self.stages[(s - 1) as usize];
            let prev_prev = &self.stages[(s - 2) as usize];
            for (i, g) in stage.generators.iter().enumerate() {
                let mat = differential_matrix(
                    &self.module,
                    &self.algebra,
                    prev,
                    Some(&prev_prev.generators),
                    g.degree,
                );
                if !mat.mul_vec(&stage.d_images[i]).is_zero() {
                    return Err(Error::SelfTest(format!(
                        "d∘d != 0 on generator {} (s={s}, t={})",
                        g.label, g.degree
                    )));
                }
            }
        }
        Ok(())
    }

    /// No differential entry contains the unit of the algebra.
    pub fn check_minimality(&self) -> Result<()> {
        for s in 1..=self.s_max {
            let stage = &self.stages[s as usize];
            let prev = &self.stages[(s - 1) as usize];
            for (i, g) in stage.generators.iter().enumerate() {
                let layout = free_layout(&prev.generators, &self.algebra, g.degree);
                for &(pg, pd, poffset) in &layout {
                    if pd == 0 && stage.d_images[i].get(poffset) {
                        return Err(Error::SelfTest(format!(
                            "minimality violated: d({}) has a unit coefficient on {}",
                            g.label, prev.generators[pg].label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Degreewise Euler characteristic against an independent non-minimal
    /// (bar-type) resolution: both alternating sums must equal dim M_t.
    pub fn euler_characteristic_check(&self) -> Result<()> {
        let t_top = self.s_max.min(self.t_max);
        let len = t_top as usize + 1;
        let alg_dims: Vec<i64> = (0..=t_top).map(|d| self.algebra.dim(d) as i64).collect();
        let mut aug_dims = alg_dims.clone();
        aug_dims[0] = 0;
        let module_dims: Vec<i64> = (0..=t_top)
            .map(|d| self.module.dim_in_degree(d) as i64)
            .collect();
        let convolve = |a: &[i64], b: &[i64]| -> Vec<i64> {
            let mut out = vec![0i64; len];
            for i in 0..len.min(a.len()) {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..(len - i).min(b.len()) {
                    out[i + j] += a[i] * b[j];
                }
            }
            out
        };
        // bar stage s has dims A ⊗ (A⁺)^{⊗s} ⊗ M; (A⁺)^{⊗s} vanishes below
        // degree s, so only s ≤ t_top contribute
        let mut bar_alternating = vec![0i64; len];
        let mut aplus_power: Vec<i64> = {
            let mut v = vec![0i64; len];
            v[0] = 1;
            v
        };
        let mut sign = 1i64;
        for s in 0..=t_top {
            let stage_dims = convolve(&convolve(&alg_dims, &aplus_power), &module_dims);
            for (t, &d) in stage_dims.iter().enumerate() {
                bar_alternating[t] += sign * d;
            }
            if s < t_top {
                aplus_power = convolve(&aplus_power, &aug_dims);
                sign = -sign;
            }
        }

        for t in 0..=t_top {
            let mut minimal_sum = 0i64;
            for s in 0..=self.s_max {
                let sign = if s % 2 == 0 { 1 } else { -1 };
                minimal_sum +=
                    sign * free_dim(&self.stages[s as usize].generators, &self.algebra, t) as i64;
            }
            let expected = self.module.dim_in_degree(t) as i64;
            if bar_alternating[t as usize] != expected || minimal_sum != expected {
                return Err(Error::SelfTest(format!(
                    "Euler characteristic mismatch in degree {t}: minimal {minimal_sum}, bar {}, module {expected}",
                    bar_alternating[t as usize]
                )));
            }
        }
        Ok(())
    }

    /// h_j-multiplication lines read off the minimal differential,
    /// j ∈ {0, 1, 2}.
    pub fn hj_lines(&self) -> Vec<ChartLine> {
        let mut lines = Vec::new();
        for s in 1..=self.s_max {
            let stage = &self.stages[s as usize];
            let prev = &self.stages[(s - 1) as usize];
            for (i, g) in stage.generators.iter().enumerate() {
                if g.degree < s {
                    continue;
                }
                let image = &stage.d_images[i];
                let layout = free_layout(&prev.generators, &self.algebra, g.degree);
                let to_idx = self.bidegree_index(s, i);
                for &(pg, pd, poffset) in &layout {
                    let kind = match pd {
                        1 => LineKind::H0,
                        2 => LineKind::H1,
                        4 => LineKind::H2,
                        _ => continue,
                    };
                    let dim = self.algebra.dim(pd);
                    let mut coords = BitVec::zeros(dim);
                    for b in 0..dim {
                        if image.get(poffset + b) {
                            coords.set(b, true);
                        }
                    }
                    if coords.is_zero() {
                        continue;
                    }
                    if self
                        .algebra
                        .word_coefficient(pd, &coords, &SquareWord::single(pd))
                    {
                        let from_gen = &prev.generators[pg];
                        if from_gen.degree < s - 1 {
                            continue;
                        }
                        let from_idx = self.bidegree_index(s - 1, pg);
                        lines.push(ChartLine {
                            from: (s - 1, from_gen.degree - (s - 1), from_idx),
                            to: (s, g.degree - s, to_idx),
                            kind,
                        });
                    }
                }
            }
        }
        lines.sort();
        lines.dedup();
        lines
    }

    /// Index of a generator within its (s, t) bidegree.
    fn bidegree_index(&self, s: u32, gen_idx: usize) -> u32 {
        let stage = &self.stages[s as usize];
        let t = stage.generators[gen_idx].degree;
        stage.generators[..gen_idx]
            .iter()
            .filter(|g| g.degree == t)
            .count() as u32
    }

    /// Assemble the chart in (stem, filtration) coordinates. Every dot must
    /// be in the trusted range; labels default to the generator labels.
    pub fn to_chart(
        &self,
        s_max: u32,
        stem_max: u32,
        labels: Option<&BTreeMap<(u32, u32, u32), String>>,
    ) -> Result<ExtChart> {
        let mut dots: BTreeMap<(u32, u32), Vec<String>> = BTreeMap::new();
        for s in 0..=s_max.min(self.s_max) {
            for (i, g) in self.stages[s as usize].generators.iter().enumerate() {
                if g.degree < s {
                    continue;
                }
                let stem = g.degree - s;
                if stem > stem_max {
                    continue;
                }
                self.ext_rank(s, g.degree)?;
                let idx = self.bidegree_index(s, i);
                let label = labels
                    .and_then(|table| table.get(&(s, stem, idx)).cloned())
                    .unwrap_or_else(|| g.label.clone());
                dots.entry((s, stem)).or_default().push(label);
            }
        }
        let lines = self
            .hj_lines()
            .into_iter()
            .filter(|l| {
                l.from.0 <= s_max && l.to.0 <= s_max && l.from.1 <= stem_max && l.to.1 <= stem_max
            })
            .collect();
        Ok(ExtChart {
            range: ChartRange { s_max, stem_max },
            dots: dots
                .into_iter()
                .map(|((s, stem), labels)| ChartDot {
                    s,
                    stem,
                    rank: labels.len(),
                    labels,
                })
                .collect(),
            lines,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{cpn_module, GradedModule};

    fn trivial_module() -> GradedModule {
        GradedModule::with_basis(&[("1".to_string(), 0)], 24)
    }

    #[test]
    fn trivial_module_stage0() {
        let m = trivial_module();
        let res = minimal_resolution(
            &m,
            AlgebraProfile::Subalgebra(2),
            3,
            12,
            ResolveOptions::default(),
        );
        assert_eq!(res.ext_rank(0, 0).unwrap(), 1);
        for t in 1..=9 {
            assert_eq!(res.ext_rank(0, t).unwrap(), 0, "t = {t}");
        }
    }

    #[test]
    fn a2_stage1_generators_are_sq1_sq2_sq4() {
        let m = trivial_module();
        let res = minimal_resolution(
            &m,
            AlgebraProfile::Subalgebra(2),
            2,
            12,
            ResolveOptions::default(),
        );
        assert_eq!(res.ext_rank(1, 1).unwrap(), 1); // h0
        assert_eq!(res.ext_rank(1, 2).unwrap(), 1); // h1
        assert_eq!(res.ext_rank(1, 4).unwrap(), 1); // h2
        for t in [3, 5, 6, 7, 8, 9, 10] {
            assert_eq!(res.ext_rank(1, t).unwrap(), 0, "t = {t}");
        }
    }

    #[test]
    fn full_algebra_stage1_has_h3() {
        let m = trivial_module();
        let res = minimal_resolution(&m, AlgebraProfile::Full, 2, 12, ResolveOptions::default());
        assert_eq!(res.ext_rank(1, 1).unwrap(), 1);
        assert_eq!(res.ext_rank(1, 2).unwrap(), 1);
        assert_eq!(res.ext_rank(1, 4).unwrap(), 1);
        assert_eq!(res.ext_rank(1, 8).unwrap(), 1); // h3 exists over the full algebra
        assert_eq!(res.ext_rank(1, 3).unwrap(), 0);
    }

    #[test]
    fn d_squared_minimality_euler() {
        let m = trivial_module();
        let res = minimal_resolution(
            &m,
            AlgebraProfile::Subalgebra(2),
            5,
            14,
            ResolveOptions::default(),
        );
        res.check_d_squared().unwrap();
        res.check_minimality().unwrap();
        res.euler_characteristic_check().unwrap();
    }

    #[test]
    fn out_of_range_is_rejected() {
        let m = trivial_module();
        let res = minimal_resolution(
            &m,
            AlgebraProfile::Subalgebra(2),
            3,
            10,
            ResolveOptions::default(),
        );
        assert!(res.ext_rank(2, 9).is_err());
        assert!(res.ext_rank(2, 8).is_ok());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let m = cpn_module(4, 8);
        let seq = minimal_resolution(
            &m,
            AlgebraProfile::Subalgebra(2),
            4,
            16,
            ResolveOptions { sequential: true },
        );
        let par = minimal_resolution(
            &m,
            AlgebraProfile::Subalgebra(2),
            4,
            16,
            ResolveOptions { sequential: false },
        );
        for s in 0..=4u32 {
            assert_eq!(seq.stage(s).generators, par.stage(s).generators, "stage {s}");
        }
        assert_eq!(seq.hj_lines(), par.hj_lines());
    }

    #[test]
    fn h0_tower_on_the_unit_column() {
        let m = trivial_module();
        let res = minimal_resolution(
            &m,
            AlgebraProfile::Subalgebra(2),
            5,
            14,
            ResolveOptions::default(),
        );
        // stem 0 carries one dot at every filtration, joined by h0-lines
        for s in 0..=5u32 {
            assert_eq!(res.ext_rank(s, s).unwrap(), 1, "s = {s}");
        }
        let lines = res.hj_lines();
        for s in 0..5u32 {
            assert!(
                lines.contains(&ChartLine {
                    from: (s, 0, 0),
                    to: (s + 1, 0, 0),
                    kind: LineKind::H0,
                }),
                "missing h0 line at s = {s}"
            );
        }
    }
}
