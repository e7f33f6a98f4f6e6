//! Property suites: factoriality of languages, block graphs versus the
//! induced de Bruijn subgraph, window extraction laws, metric laws, and
//! the invariance residues of alpha/omega window specs.

use limset::gallery::{
    alphabet2, alphabet3, alphabet4, backward_spike_tail, descending_gap_alpha_tail, golden_mean,
    interleaved_block_point, spike_point, spike_spec,
};
use limset::limits::{
    alpha_windows, is_ict, omega_windows, sampled_tail_windows, window_hausdorff, SetSpec,
    Sidedness, Stabilization,
};
use limset::symbolic::{block_graph, Alphabet, Growth, SeqPoint, Sft, Template, Word};
use proptest::prelude::*;
use std::collections::BTreeSet;
use std::sync::Arc;

fn arb_sft() -> impl Strategy<Value = Option<Sft>> {
    // subsets of the 3-words over {0,1,2} as allowed words
    (1u32..(1 << 8)).prop_map(|mask| {
        let ab = alphabet3();
        let all: Vec<Word> = Sft::full_shift(ab.clone())
            .language(3)
            .unwrap()
            .into_iter()
            .take(8)
            .collect();
        let allowed: BTreeSet<Word> = all
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, w)| w.clone())
            .collect();
        // widen with every word containing a 2 so the subshift usually survives
        let mut allowed = allowed;
        for w in Sft::full_shift(ab.clone()).language(3).unwrap() {
            if w.symbols().iter().any(|s| ab.name(*s) == "2") {
                allowed.insert(w);
            }
        }
        Sft::from_allowed(ab, 3, &allowed).ok()
    })
}

fn arb_point() -> impl Strategy<Value = (Arc<Alphabet>, SeqPoint)> {
    (
        proptest::collection::vec(0u8..2, 0..6),
        proptest::collection::vec(0u8..2, 1..4),
        0u8..3,
    )
        .prop_map(|(transient, litpart, style)| {
            let ab = alphabet2();
            let t: Word = transient
                .iter()
                .map(|&b| ab.lookup(&b.to_string()).unwrap())
                .collect();
            let lit: Word = litpart
                .iter()
                .map(|&b| ab.lookup(&b.to_string()).unwrap())
                .collect();
            let p = match style {
                0 => SeqPoint::periodic(t, lit).unwrap(),
                1 => SeqPoint::scheduled(
                    t,
                    vec![
                        Template::Lit(lit),
                        Template::Run {
                            sym: ab.lookup("0").unwrap(),
                            len: Growth::linear(),
                        },
                    ],
                )
                .unwrap(),
                _ => SeqPoint::scheduled(
                    t,
                    vec![
                        Template::Run {
                            sym: ab.lookup("1").unwrap(),
                            len: Growth {
                                per_stage: 1,
                                base: 1,
                            },
                        },
                        Template::Lit(lit),
                        Template::Run {
                            sym: ab.lookup("0").unwrap(),
                            len: Growth {
                                per_stage: 2,
                                base: 0,
                            },
                        },
                    ],
                )
                .unwrap(),
            };
            (ab, p)
        })
}

proptest! {
    /// Every factor of a language word is a language word.
    #[test]
    fn language_is_factorial(sft in arb_sft(), len in 2usize..5) {
        if let Some(sft) = sft {
            let long = sft.language(len).unwrap();
            let short = sft.language(len - 1).unwrap();
            let mut derived = BTreeSet::new();
            for w in &long {
                derived.extend(w.factors(len - 1));
            }
            prop_assert_eq!(derived, short);
        }
    }

    /// The block graph equals the admissibility-induced subgraph of the full
    /// de Bruijn graph.
    #[test]
    fn block_graph_is_induced_de_bruijn(sft in arb_sft(), k in 1usize..4) {
        if let Some(sft) = sft {
            let v = sft.language(k).unwrap();
            let f = sft.language(k + 1).unwrap();
            let g = block_graph(&v, k, Some(&f)).unwrap();
            let mut brute = BTreeSet::new();
            for (i, u) in g.vertices().iter().enumerate() {
                for (j, w) in g.vertices().iter().enumerate() {
                    if u.symbols()[1..] == w.symbols()[..k - 1] {
                        let mut fused = u.clone();
                        fused.push(w.symbols()[k - 1]);
                        if f.contains(&fused) {
                            brute.insert((i, j));
                        }
                    }
                }
            }
            let got: BTreeSet<(usize, usize)> = g.edges().collect();
            prop_assert_eq!(got, brute);
        }
    }

    /// Dropping the first symbol of a window is the window one step later.
    #[test]
    fn window_shift_consistency((_ab, p) in arb_point(), start in 0u64..40, len in 2usize..8) {
        let long = p.window(start, len);
        let shifted = p.window(start + 1, len - 1);
        prop_assert_eq!(long.factor(1, len - 1), shifted);
    }

    /// The empirical tail scan agrees with the exact limit windows whenever
    /// it stabilises.
    #[test]
    fn sampled_scan_matches_exact((ab, p) in arb_point(), len in 1usize..4) {
        let exact = omega_windows(&ab, &p, len).unwrap();
        let prefix = p.window(0, 5000);
        if let Ok(scan) = sampled_tail_windows(&ab, &prefix, len, Stabilization::default()) {
            prop_assert_eq!(scan.words(), exact.words());
        }
    }

    /// The dyadic Hausdorff bound is symmetric and reflexively zero.
    #[test]
    fn hausdorff_symmetry(mask_a in 0u8..8, mask_b in 0u8..8) {
        let ab = alphabet4();
        let pick = |mask: u8| {
            let names = ["1", "2", "3"];
            let spikes: Vec<&str> = names
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, s)| *s)
                .collect();
            spike_spec(&ab, &spikes)
        };
        let a = pick(mask_a);
        let b = pick(mask_b);
        let dab = window_hausdorff(&ab, &a, &b, 4, Sidedness::OneSided).unwrap();
        let dba = window_hausdorff(&ab, &b, &a, 4, Sidedness::OneSided).unwrap();
        prop_assert_eq!(dab, dba);
        let daa = window_hausdorff(&ab, &a, &a, 4, Sidedness::OneSided).unwrap();
        prop_assert!(daa.is_zero());
    }
}

#[test]
fn corpus_limit_specs_are_internally_chain_transitive() {
    // alpha- and omega-limit window specs of every corpus point pass is_ict
    let ab2 = alphabet2();
    let ab3 = alphabet3();
    let ab4 = alphabet4();
    let omega_specs: Vec<(Arc<Alphabet>, SetSpec)> = vec![
        (ab4.clone(), SetSpec::OmegaOf(spike_point(&ab4, "1"))),
        (ab4.clone(), SetSpec::OmegaOf(spike_point(&ab4, "2"))),
        (ab2.clone(), SetSpec::OmegaOf(spike_point(&ab2, "1"))),
        (
            ab3.clone(),
            SetSpec::OmegaOfTwoSided(interleaved_block_point(&ab3)),
        ),
        (ab2.clone(), SetSpec::Language(golden_mean())),
    ];
    for (ab, spec) in &omega_specs {
        for k in 1..=4 {
            assert!(
                is_ict(ab, spec, k).unwrap(),
                "omega spec fails is_ict at k={k}"
            );
        }
    }
    let alpha_specs: Vec<(Arc<Alphabet>, SetSpec)> = vec![
        (
            ab4.clone(),
            SetSpec::AlphaOf(backward_spike_tail(&ab4, "3", "1")),
        ),
        (
            ab2.clone(),
            SetSpec::AlphaOf(descending_gap_alpha_tail(&ab2)),
        ),
        (
            ab3.clone(),
            SetSpec::AlphaOf(interleaved_block_point(&ab3).left),
        ),
    ];
    for (ab, spec) in &alpha_specs {
        for k in 1..=4 {
            assert!(
                is_ict(ab, spec, k).unwrap(),
                "alpha spec fails is_ict at k={k}"
            );
        }
    }
}

#[test]
fn omega_specs_have_bi_extendable_block_graphs() {
    // strong invariance residue: every vertex of an omega spec's block graph
    // has an incoming and an outgoing edge
    let ab = alphabet4();
    for spec in [
        SetSpec::OmegaOf(spike_point(&ab, "1")),
        SetSpec::OmegaOf(spike_point(&ab, "2")),
    ] {
        for k in 1..=4usize {
            let v = spec.windows(&ab, k + 1).unwrap();
            let f = spec.windows(&ab, k + 2).unwrap();
            let g = block_graph(v.words(), k + 1, Some(f.words())).unwrap();
            for i in 0..g.vertex_count() {
                assert!(!g.successors(i).is_empty(), "vertex without successor");
                assert!(!g.predecessors(i).is_empty(), "vertex without predecessor");
            }
        }
    }
}

#[test]
fn alpha_specs_are_follower_closed() {
    // forward invariance residue: alpha window sets extend to the right
    // within themselves
    let ab = alphabet4();
    let specs = [
        SetSpec::AlphaOf(backward_spike_tail(&ab, "3", "1")),
        SetSpec::AlphaOf(descending_gap_alpha_tail(&alphabet2())),
    ];
    let abs = [ab, alphabet2()];
    for (spec, ab) in specs.iter().zip(&abs) {
        for k in 1..=4usize {
            let v = spec.windows(ab, k + 1).unwrap();
            let f = spec.windows(ab, k + 2).unwrap();
            let g = block_graph(v.words(), k + 1, Some(f.words())).unwrap();
            for i in 0..g.vertex_count() {
                assert!(!g.successors(i).is_empty(), "alpha window without follower");
            }
        }
    }
}

#[test]
fn alpha_of_interleaved_point_matches_hand_computation() {
    // the left tail ... 0^n 1^n ... 0 1 has both block junctions recurring
    let ab = alphabet3();
    let p = interleaved_block_point(&ab);
    let a2 = alpha_windows(&ab, &p.left, 2).unwrap();
    let words: Vec<String> = a2.words().iter().map(|w| ab.fmt_word(w)).collect();
    assert_eq!(words, vec!["00", "01", "10", "11"]);
}
