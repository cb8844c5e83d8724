//! Cross-cutting invariants: determinism under input reordering, packed
//! linear algebra against an unpacked oracle at scale, and property tests
//! for the serialization surfaces.

use std::collections::BTreeMap;

use proptest::prelude::*;

use mb13::chart::{ChartDot, ChartLine, ChartRange, ExtChart, LineKind};
use mb13::gf2::BitMatrix;
use mb13::graded::{thom_module, GradedModule};
use mb13::resolution::{minimal_resolution, ResolveOptions};
use mb13::steenrod::{adem_reduce, AlgebraProfile, SquareWord};

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

#[test]
fn chart_stable_under_generator_reordering() {
    let m = thom_module(1, 4, 8).unwrap().into_module();
    let shuffled = m.permuted(&[3, 0, 4, 1, 2]);
    let a = minimal_resolution(
        &m,
        AlgebraProfile::Subalgebra(2),
        6,
        24,
        ResolveOptions::default(),
    );
    let b = minimal_resolution(
        &shuffled,
        AlgebraProfile::Subalgebra(2),
        6,
        24,
        ResolveOptions::default(),
    );
    for s in 0..=6u32 {
        for t in s..=(24 - s) {
            assert_eq!(
                a.ext_rank(s, t).unwrap(),
                b.ext_rank(s, t).unwrap(),
                "rank differs at ({s}, {t})"
            );
        }
    }
    // line multiset per bidegree pair is basis-independent
    let collect = |lines: Vec<ChartLine>| -> BTreeMap<(u32, u32, u32, u32, LineKind), usize> {
        let mut out = BTreeMap::new();
        for l in lines {
            if l.to.0 <= 6 && l.to.1 + l.to.0 <= 18 {
                *out.entry((l.from.0, l.from.1, l.to.0, l.to.1, l.kind))
                    .or_insert(0) += 1;
            }
        }
        out
    };
    assert_eq!(collect(a.hj_lines()), collect(b.hj_lines()));
}

#[test]
fn single_square_associativity_exhaustive_through_degree_20() {
    use mb13::steenrod::{multiply, SteenrodElement};
    let sq = |n: u32| -> SteenrodElement { adem_reduce(&SquareWord::single(n)) };
    for a in 1..=18u32 {
        for b in 1..=(19 - a) {
            for c in 1..=(20 - a - b) {
                let left = multiply(&multiply(&sq(a), &sq(b)), &sq(c));
                let right = multiply(&sq(a), &multiply(&sq(b), &sq(c)));
                assert_eq!(left, right, "Sq{a}·Sq{b}·Sq{c}");
            }
        }
    }
}

#[test]
fn packed_matches_naive_on_ten_thousand_matrices() {
    fn naive_rank(m: &[Vec<bool>]) -> usize {
        let mut m = m.to_vec();
        let rows = m.len();
        let cols = m[0].len();
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| m[r][col]) else {
                continue;
            };
            m.swap(rank, pivot);
            for r in 0..rows {
                if r != rank && m[r][col] {
                    let src = m[rank].clone();
                    for (a, b) in m[r].iter_mut().zip(&src) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
    let mut rng = XorShift(0x1234_5678_9abc_def0);
    for trial in 0..10_000 {
        let rows = 1 + (rng.next() % 12) as usize;
        let cols = 1 + (rng.next() % 12) as usize;
        let mut packed = BitMatrix::zeros(rows, cols);
        let mut unpacked = vec![vec![false; cols]; rows];
        for (r, row) in unpacked.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                if rng.next() & 1 == 1 {
                    packed.set(r, c, true);
                    *cell = true;
                }
            }
        }
        let expected = naive_rank(&unpacked);
        assert_eq!(packed.rank(), expected, "trial {trial}");
        assert_eq!(packed.kernel_basis().dim(), cols - expected, "trial {trial}");
    }
}

proptest! {
    #[test]
    fn adem_reduction_preserves_degree_and_admissibility(
        exps in proptest::collection::vec(1u32..=6, 1..=4)
    ) {
        let word = SquareWord::new(&exps);
        let reduced = adem_reduce(&word);
        for term in reduced.terms() {
            prop_assert!(term.is_admissible());
            prop_assert_eq!(term.degree(), word.degree());
        }
    }

    #[test]
    fn thom_presentations_round_trip(s in -50i64..=50, n in 1u32..=4) {
        let cap = 2 * n;
        let t = thom_module(s, n, cap).unwrap();
        let text = t.module().to_text();
        let parsed = GradedModule::from_text(&text).unwrap();
        prop_assert_eq!(&parsed, t.module());
        prop_assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn chart_json_round_trips(
        dots in proptest::collection::vec((0u32..6, 0u32..10, 1usize..3), 0..8)
    ) {
        let mut chart = ExtChart {
            range: ChartRange { s_max: 6, stem_max: 10 },
            dots: dots
                .into_iter()
                .map(|(s, stem, rank)| ChartDot {
                    s,
                    stem,
                    rank,
                    labels: (0..rank).map(|i| format!("g({s},{stem},{i})")).collect(),
                })
                .collect(),
            lines: vec![],
        };
        chart.canonicalize();
        chart.dots.dedup_by_key(|d| (d.stem, d.s));
        let json = chart.to_json();
        let parsed = ExtChart::from_json(&json).unwrap();
        prop_assert_eq!(parsed.to_json(), json);
    }
}
