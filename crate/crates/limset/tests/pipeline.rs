//! Cross-module integration: realisations feed the shadowing witnesses, the
//! witness checkers recognise matched and mismatched tails, and sampled
//! orbits respect the box graphs.

use limset::construct::{build_full_trajectory, build_limit_point};
use limset::gallery::{alphabet2, alphabet3, golden_mean, plateau_map, spike_spec, squares_map};
use limset::interval::{box_graph, chain_recurrent_outer, Rat};
use limset::limits::{is_ict, SetSpec, Stabilization};
use limset::rng::SplitMix64;
use limset::shadowing::{
    backward_orbital_limit_witness, cofinal_orbital_witness, eventual_strong_orbital_witness,
    random_pseudo_orbit, shadow_backward, verify_backward_asymptotic, BackwardTail,
    BackwardTrajectory, Direction,
};
use limset::symbolic::{SeqPoint, Word};

#[test]
fn realisation_alpha_tail_is_chain_transitive() {
    // the constructed left tail is a backward asymptotic pseudo-orbit
    // realised exactly; its alpha window spec passes is_ict
    let ab = alphabet2();
    let spec = SetSpec::Language(golden_mean());
    let f = build_full_trajectory(&ab, &spec, 3, 1 << 14).unwrap();
    let alpha = SetSpec::AlphaOf(f.point.left.clone());
    for k in 1..=3 {
        assert!(is_ict(&ab, &alpha, k).unwrap());
    }
}

#[test]
fn empirical_alpha_scan_of_a_realisation_is_chain_transitive() {
    // scan the left coordinate stream of a built trajectory empirically,
    // freeze the window sets into a table spec, and re-decide chain
    // transitivity from the sample alone
    let ab = alphabet2();
    let spec = SetSpec::Language(golden_mean());
    let f = build_full_trajectory(&ab, &spec, 3, 1 << 14).unwrap();
    let sample = f.point.window(-4000, 4000).reversed();
    let mut by_len = std::collections::BTreeMap::new();
    for l in 1..=5usize {
        let scanned =
            limset::limits::sampled_tail_windows(&ab, &sample, l, Stabilization::default())
                .unwrap();
        let words: std::collections::BTreeSet<Word> =
            scanned.words().iter().map(|w| w.reversed()).collect();
        by_len.insert(l, words);
    }
    let empirical = SetSpec::Table { by_len };
    for k in 1..=3 {
        assert!(is_ict(&ab, &empirical, k).unwrap());
    }
}

#[test]
fn stage_coverage_is_monotone() {
    let ab = alphabet2();
    let spec = SetSpec::Language(golden_mean());
    let r = build_limit_point(&ab, &spec, 4, 1 << 14).unwrap();
    for k in 0..=4usize {
        let want = spec.windows(&ab, k + 1).unwrap();
        for st in &r.schedule.stages[k..] {
            for w in want.words() {
                assert!(st.word.contains_factor(w), "stage {} misses a window", st.k);
            }
        }
    }
}

#[test]
fn orbital_limit_witness_on_matched_and_mismatched_realisations() {
    let ab = alphabet3();
    let policy = Stabilization::default();
    let mk = |spikes: &[&str]| {
        let f = build_full_trajectory(&ab, &spike_spec(&ab, spikes), 3, 1 << 14).unwrap();
        BackwardTail::Trajectory(BackwardTrajectory {
            left: f.point.left.clone(),
            base: SeqPoint::periodic(f.point.window(0, 8), ab.parse_word("0").unwrap()).unwrap(),
        })
    };
    let one = mk(&["1"]);
    let one_again = mk(&["1"]);
    let two = mk(&["2"]);
    assert!(backward_orbital_limit_witness(&ab, &one, &one_again, 3, policy).unwrap());
    assert!(!backward_orbital_limit_witness(&ab, &one, &two, 1, policy).unwrap());
}

#[test]
fn cofinal_and_eventual_witnesses_on_spike_tails() {
    let sft = golden_mean();
    let ab = alphabet2();
    // backward pseudo-orbit marching a spike leftward with one sloppy jump
    let point = |prefix: &str| {
        SeqPoint::periodic(ab.parse_word(prefix).unwrap(), ab.parse_word("0").unwrap()).unwrap()
    };
    let mut entries = Vec::new();
    for r in (1..=40u32).rev() {
        let mut w = Word::empty();
        for _ in 0..r {
            w.push(ab.lookup("0").unwrap());
        }
        w.extend(&ab.parse_word("1").unwrap());
        entries.push(SeqPoint::periodic(w, ab.parse_word("0").unwrap()).unwrap());
    }
    entries.push(point("1"));
    let po = limset::shadowing::PseudoOrbit::backward(entries.clone(), 5).unwrap();
    let shade = shadow_backward(&sft, &po, 2).unwrap();
    let po_tail = BackwardTail::Points(entries);
    let traj_tail = BackwardTail::Trajectory(shade.trajectory);
    let n = cofinal_orbital_witness(&po_tail, &traj_tail, 2, 1, 40, 2).unwrap();
    assert!(n.is_some(), "matched tails must certify within the horizon");
    let k = eventual_strong_orbital_witness(&po_tail, &traj_tail, 2, 40, 2).unwrap();
    assert!(k.is_some());

    // alpha-rich pseudo-orbit versus a quiet trajectory: no witness appears
    let mut rich = Vec::new();
    for r in 0..40u32 {
        rich.push(point(if r % 2 == 0 { "1" } else { "01" }));
    }
    rich.push(point("1"));
    let quiet = BackwardTail::Trajectory(BackwardTrajectory {
        left: limset::symbolic::LeftTail::constant(ab.lookup("0").unwrap()),
        base: point(""),
    });
    let none = cofinal_orbital_witness(&BackwardTail::Points(rich), &quiet, 2, 1, 40, 2).unwrap();
    assert_eq!(none, None);
}

#[test]
fn realisation_stage_stream_is_backward_asymptotic() {
    // read the one-sided realisation's stages backwards: the suffix points
    // form a backward asymptotic pseudo-orbit under a shrinking schedule
    let ab = alphabet2();
    let spec = SetSpec::Language(golden_mean());
    let r = build_limit_point(&ab, &spec, 3, 1 << 14).unwrap();
    let word = r.point.window(0, 80);
    let entries: Vec<SeqPoint> = (0..24u64)
        .map(|i| {
            SeqPoint::periodic(word.factor(i as usize, 40), ab.parse_word("0").unwrap()).unwrap()
        })
        .collect();
    // exact shifts of one stream: any shrinking schedule certifies
    let schedule: Vec<u32> = (0..23).map(|i| 12 - i / 2).collect();
    assert!(verify_backward_asymptotic(&entries, &schedule)
        .unwrap()
        .is_ok());
}

#[test]
fn exact_orbits_follow_the_box_graph() {
    for (m, h) in [
        (plateau_map(), Rat::pow2_neg(4)),
        (squares_map(), Rat::pow2_neg(5)),
    ] {
        let g = box_graph(&m, &h, &Rat::pow2_neg(8)).unwrap();
        let mut rng = SplitMix64::new(9);
        for _ in 0..40 {
            let num = rng.below(63) as i64 - 31;
            let x = Rat::frac(num, 32);
            let orbit = m.orbit(&x, 12).unwrap();
            for pair in orbit.windows(2) {
                let a = g.grid.index_of(&pair[0]).unwrap();
                let b = g.grid.index_of(&pair[1]).unwrap();
                assert!(
                    g.has_edge(a, b),
                    "orbit step {} -> {} leaves the box graph",
                    pair[0],
                    pair[1]
                );
            }
        }
    }
}

#[test]
fn late_orbit_boxes_lie_in_the_chain_recurrent_outer_set() {
    // quadratic pieces square their rationals, so those orbits stay short
    for (m, steps, late) in [(plateau_map(), 40usize, 30usize), (squares_map(), 10, 8)] {
        let rep = chain_recurrent_outer(&m, &Rat::pow2_neg(5), &Rat::pow2_neg(6)).unwrap();
        let mut rng = SplitMix64::new(31);
        for _ in 0..40 {
            let num = rng.below(63) as i64 - 31;
            let x = Rat::frac(num, 32);
            let orbit = m.orbit(&x, steps).unwrap();
            for p in &orbit[late..] {
                let b = rep.grid.index_of(p).unwrap();
                assert!(
                    rep.boxes.contains(&b),
                    "late orbit point {p} outside the outer set"
                );
            }
        }
    }
}

#[test]
fn random_backward_pseudo_orbits_round_trip_through_witnesses() {
    let sft = golden_mean();
    let mut rng = SplitMix64::new(4242);
    for _ in 0..20 {
        let po = random_pseudo_orbit(&sft, &mut rng, 14, 6, Direction::Backward).unwrap();
        let shade = shadow_backward(&sft, &po, 4).unwrap();
        let po_tail = BackwardTail::Points(po.entries.clone());
        let traj_tail = BackwardTail::Trajectory(shade.trajectory);
        // the shadow stays within 2^-4 of the pseudo-orbit, so projections
        // at resolution 3 agree wherever both are defined
        let n = cofinal_orbital_witness(&po_tail, &traj_tail, 3, 0, 13, 3).unwrap();
        assert!(n.is_some());
    }
}
