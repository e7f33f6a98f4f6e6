//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).
//!
//! Criterion 7's node-accumulation clause is asserted exactly as documented
//! and is expected red: the computed box set provably exceeds the three
//! documented boxes (the map's positive zone is a full tent tree whose
//! depth-d preimage levels are dense grids). The companion branch clauses
//! pass; the library's gallery marks the same discrepancy as a divergence.

use limset::construct::build_full_trajectory;
use limset::dyadic::Dyadic;
use limset::gallery::{
    alphabet2, alphabet3, checks_interleaved_blocks, checks_spike_families,
    descending_gap_alpha_tail, descending_gap_language, golden_mean, period_two, plateau_map,
    spike_point, spike_spec, spike_system_language, squares_map, vee_map, CheckStatus,
};
use limset::interval::{
    box_graph, chain_recurrent_outer, falsify_shadowing, is_box_ict, neg_limit_a1,
    neg_limit_trajectories, BoxReport, NegLimitMode, Rat,
};
use limset::limits::{
    alpha_windows, enumerate_maximal_ict, ict_singletons, is_ict, omega_windows, window_hausdorff,
    SetSpec, Sidedness,
};
use limset::rng::SplitMix64;
use limset::shadowing::{
    random_pseudo_orbit, random_two_sided_pseudo_orbit, shadow_backward, shadow_forward,
    shadow_two_sided, verify_backward_shadow, verify_forward_shadow, verify_pseudo_orbit,
    verify_two_sided_shadow, Direction,
};
use limset::symbolic::{block_graph, Alphabet, SeqPoint, Sft, Word};
use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

fn report(criterion: &str, ok: bool, elapsed: std::time::Duration, detail: &str) {
    println!(
        "criterion {criterion}: {} ({:.2?}) - {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn budget(criterion: &str, elapsed: std::time::Duration, limit_s: f64) {
    assert!(
        elapsed.as_secs_f64() < limit_s,
        "criterion {criterion} exceeded its {limit_s}s budget: {elapsed:.2?}"
    );
}

#[test]
fn criterion_1_spike_family_reproduction() {
    let t0 = Instant::now();
    let checks = checks_spike_families().unwrap();
    let ok = checks.iter().all(|c| c.status == CheckStatus::Pass);
    let elapsed = t0.elapsed();
    budget("1", elapsed, 5.0);
    report(
        "1",
        ok,
        elapsed,
        "omega/alpha window families and the four extra classes",
    );
}

#[test]
fn criterion_2_orbit_closures() {
    let t0 = Instant::now();
    let a = limset::gallery::checks_spike_orbit_closure().unwrap();
    let b = limset::gallery::checks_descending_gap_closure().unwrap();
    let ok = a.iter().chain(&b).all(|c| c.status == CheckStatus::Pass);
    let elapsed = t0.elapsed();
    budget("2", elapsed, 5.0);
    report(
        "2",
        ok,
        elapsed,
        "one-sided closures: stated side matches, other side differs",
    );
}

#[test]
fn criterion_3_gamma_limit_set() {
    let t0 = Instant::now();
    let checks = checks_interleaved_blocks().unwrap();
    let ok = checks.iter().all(|c| c.status == CheckStatus::Pass);
    let elapsed = t0.elapsed();
    budget("3", elapsed, 2.0);
    report(
        "3",
        ok,
        elapsed,
        "gamma windows {0^L,1^L}, not ICT, single ambient chain component",
    );
}

#[test]
fn criterion_4_shadowing_suite() {
    let t0 = Instant::now();
    let sft = golden_mean();
    let mut failures = 0usize;
    let mut total = 0usize;
    for k in 2..=8u32 {
        let delta_exp = k + 1;
        let mut rng = SplitMix64::new(0xC0FFEE + k as u64);
        for i in 0..500 {
            total += 3;
            let len = 8 + (i % 12);
            let po =
                random_pseudo_orbit(&sft, &mut rng, len, delta_exp, Direction::Forward).unwrap();
            assert!(verify_pseudo_orbit(&po).unwrap().is_ok());
            let f = shadow_forward(&sft, &po, k).unwrap();
            if verify_forward_shadow(&sft, &po, &f.shadow, k).is_err() || !f.cert.holds_at(k) {
                failures += 1;
            }
            let po =
                random_pseudo_orbit(&sft, &mut rng, len, delta_exp, Direction::Backward).unwrap();
            let b = shadow_backward(&sft, &po, k).unwrap();
            if verify_backward_shadow(&sft, &po, &b.trajectory, k).is_err() || !b.cert.holds_at(k) {
                failures += 1;
            }
            let po = random_two_sided_pseudo_orbit(&sft, &mut rng, len, delta_exp).unwrap();
            let s = shadow_two_sided(&sft, &po, k).unwrap();
            if verify_two_sided_shadow(&sft, &po, &s.shadow, k).is_err() || !s.cert.holds_at(k) {
                failures += 1;
            }
        }
    }
    let elapsed = t0.elapsed();
    budget("4", elapsed, 10.0);
    report(
        "4",
        failures == 0,
        elapsed,
        &format!("{total} certificates re-verified"),
    );
}

#[test]
fn criterion_5_constructive_realisation() {
    let t0 = Instant::now();
    let targets: Vec<(Arc<Alphabet>, SetSpec)> = vec![
        (alphabet2(), spike_spec(&alphabet2(), &[])),
        (alphabet2(), SetSpec::Language(period_two())),
        (alphabet2(), SetSpec::Language(golden_mean())),
        (alphabet3(), spike_spec(&alphabet3(), &["1", "2"])),
    ];
    let mut ok = true;
    for (ab, spec) in &targets {
        let f = build_full_trajectory(ab, spec, 4, 1 << 16).unwrap();
        ok &= f.omega_cert.all_ok() && f.alpha_cert.all_ok();
        for k in 0..=4u32 {
            let alpha = SetSpec::AlphaOf(f.point.left.clone());
            let omega = SetSpec::OmegaOfTwoSided(f.point.clone());
            ok &=
                window_hausdorff(ab, &alpha, spec, k, Sidedness::OneSided).unwrap() == Dyadic::Zero;
            ok &=
                window_hausdorff(ab, &omega, spec, k, Sidedness::OneSided).unwrap() == Dyadic::Zero;
        }
    }
    let elapsed = t0.elapsed();
    budget("5", elapsed, 20.0);
    report(
        "5",
        ok,
        elapsed,
        "four targets realised with alpha = omega = target at k<=4",
    );
}

#[test]
fn criterion_6_shadowing_falsification() {
    let t0 = Instant::now();
    let m = squares_map();
    let cert = falsify_shadowing(&m, &Rat::frac(1, 3), &Rat::frac(1, 64)).unwrap();
    let mut ok = cert.all_verified(&m).unwrap();
    let h = Rat::pow2_neg(7);
    let rep = chain_recurrent_outer(&m, &h, &Rat::pow2_neg(8)).unwrap();
    let near = BoxReport::boxes_near(
        &rep.grid,
        &[Rat::int(-1), Rat::zero(), Rat::int(1)],
        &(&Rat::int(2) * &h),
    );
    ok &= rep.boxes.is_subset(&near);
    let g = box_graph(&m, &h, &Rat::pow2_neg(8)).unwrap();
    for p in [Rat::int(-1), Rat::zero(), Rat::int(1)] {
        let b = rep.grid.index_of(&p).unwrap();
        ok &= is_box_ict(&g, &[b].into_iter().collect());
    }
    let elapsed = t0.elapsed();
    budget("6", elapsed, 10.0);
    report(
        "6",
        ok,
        elapsed,
        "certificate obligations and the box outer approximation",
    );
}

#[test]
fn criterion_7_negative_limit_boxes() {
    let t0 = Instant::now();
    let res = Rat::pow2_neg(5);

    let plateau = plateau_map();
    let a1 = neg_limit_a1(&plateau, &Rat::zero(), 12, &res).unwrap();
    let a1_ok = a1.boxes.len() == a1.grid.count();

    let a2p =
        neg_limit_trajectories(&plateau, &Rat::zero(), NegLimitMode::Branches, 12, &res).unwrap();
    let want_p: BTreeSet<usize> = [Rat::int(-1), Rat::zero(), Rat::int(1)]
        .iter()
        .map(|p| a2p.grid.index_of(p).unwrap())
        .collect();
    let a2p_ok = a2p.boxes == want_p;

    let vee = vee_map();
    let a2v = neg_limit_trajectories(&vee, &Rat::zero(), NegLimitMode::Branches, 12, &res).unwrap();
    let want_v: BTreeSet<usize> = [Rat::frac(2, 3), Rat::int(2)]
        .iter()
        .map(|p| a2v.grid.index_of(p).unwrap())
        .collect();
    let a2v_ok = a2v.boxes == want_v;

    let a3 = neg_limit_trajectories(&vee, &Rat::zero(), NegLimitMode::Nodes, 12, &res).unwrap();
    let want_a3: BTreeSet<usize> = [Rat::zero(), Rat::frac(2, 3), Rat::int(2)]
        .iter()
        .map(|p| a3.grid.index_of(p).unwrap())
        .collect();
    let a3_ok = a3.boxes == want_a3;

    let elapsed = t0.elapsed();
    budget("7", elapsed, 10.0);
    println!(
        "criterion 7 clauses: a1 {} / a2-plateau {} / a2-vee {} / a3-vee {} ({} boxes vs 3 documented)",
        a1_ok, a2p_ok, a2v_ok, a3_ok, a3.boxes.len(),
    );
    report(
        "7",
        a1_ok && a2p_ok && a2v_ok && a3_ok,
        elapsed,
        "the a3 clause is documented-divergent: node accumulation provably exceeds the three boxes",
    );
}

/// Brute-force internal chain transitivity over cylinder representatives:
/// materialised lexicographically-least points per (k+2)-cylinder, exact
/// metric steps, reachability in the step digraph. Fully independent of the
/// block-graph path.
fn brute_force_ict(sft: &Sft, k: u32) -> bool {
    let len = k as usize + 2;
    let words = sft.language(len).unwrap();
    let reps: Vec<SeqPoint> = words
        .iter()
        .map(|w| {
            // lexicographically least admissible completion
            let t = sft.context();
            let core = sft.core();
            let mut word = w.clone();
            let mut v = core.vertex_index(&word.suffix(t)).unwrap();
            let (approach, cycle) = core.greedy_cycle(v, true);
            let path: Vec<usize> = approach.into_iter().chain(cycle.clone()).collect();
            for &u in &path[1..] {
                word.push(*core.vertices()[u].symbols().last().unwrap());
            }
            v = *path.last().unwrap();
            let _ = v;
            let period: Word = {
                let mut p = Word::empty();
                for &u in cycle.iter().skip(1).chain(std::iter::once(&cycle[0])) {
                    p.push(*core.vertices()[u].symbols().last().unwrap());
                }
                p
            };
            SeqPoint::periodic(word, period).unwrap()
        })
        .collect();
    if reps.is_empty() {
        return false;
    }
    let n = reps.len();
    // exact metric step: sigma(p) and q agree on indices 0..=k
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if reps[i].window(1, k as usize + 1) == reps[j].window(0, k as usize + 1) {
                adj[i].push(j);
            }
        }
    }
    // chains need at least one step: b reachable from a in >= 1 step
    let reach_from = |s: usize| -> Vec<bool> {
        let mut seen = vec![false; n];
        let mut queue: Vec<usize> = adj[s].clone();
        for &q in &queue {
            seen[q] = true;
        }
        while let Some(v) = queue.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
        seen
    };
    (0..n).all(|a| {
        let seen = reach_from(a);
        seen.iter().all(|&x| x)
    })
}

#[test]
fn criterion_8_oracle_equivalence() {
    let t0 = Instant::now();
    let ab = alphabet2();
    let all3: Vec<Word> = Sft::full_shift(ab.clone())
        .language(3)
        .unwrap()
        .into_iter()
        .collect();
    let mut compared = 0usize;
    let mut disagreements = 0usize;
    for mask in 1u32..(1 << all3.len()) {
        let allowed: BTreeSet<Word> = all3
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, w)| w.clone())
            .collect();
        let Ok(sft) = Sft::from_allowed(ab.clone(), 3, &allowed) else {
            continue; // empty subshift
        };
        for k in 1..=2u32 {
            let fast = is_ict(&ab, &SetSpec::Language(sft.clone()), k).unwrap();
            let slow = brute_force_ict(&sft, k);
            compared += 1;
            if fast != slow {
                disagreements += 1;
            }
        }
    }
    let elapsed = t0.elapsed();
    budget("8", elapsed, 60.0);
    report(
        "8",
        disagreements == 0 && compared > 300,
        elapsed,
        &format!("{compared} subshift/resolution pairs, {disagreements} disagreements"),
    );
}

fn random_spec(rng: &mut SplitMix64, ab: &Arc<Alphabet>) -> SetSpec {
    loop {
        if rng.below(2) == 0 {
            // random spike family
            let spikes: BTreeSet<_> = ab.symbols().skip(1).filter(|_| rng.below(2) == 0).collect();
            return SetSpec::Spike {
                quiet: ab.symbols().next().unwrap(),
                spikes,
            };
        }
        // random subshift from allowed 2-words
        let all2: Vec<Word> = Sft::full_shift(ab.clone())
            .language(2)
            .unwrap()
            .into_iter()
            .collect();
        let allowed: BTreeSet<Word> = all2.into_iter().filter(|_| rng.below(3) > 0).collect();
        if let Ok(sft) = Sft::from_allowed(ab.clone(), 2, &allowed) {
            return SetSpec::Language(sft);
        }
    }
}

#[test]
fn criterion_9_metric_and_monotonicity_suites() {
    let t0 = Instant::now();
    let ab = alphabet3();
    let mut rng = SplitMix64::new(2024);
    let mut ok = true;
    for _ in 0..200 {
        let a = random_spec(&mut rng, &ab);
        let b = random_spec(&mut rng, &ab);
        let c = random_spec(&mut rng, &ab);
        let dab = window_hausdorff(&ab, &a, &b, 4, Sidedness::OneSided).unwrap();
        let dba = window_hausdorff(&ab, &b, &a, 4, Sidedness::OneSided).unwrap();
        let daa = window_hausdorff(&ab, &a, &a, 4, Sidedness::OneSided).unwrap();
        let dbc = window_hausdorff(&ab, &b, &c, 4, Sidedness::OneSided).unwrap();
        let dac = window_hausdorff(&ab, &a, &c, 4, Sidedness::OneSided).unwrap();
        ok &= dab == dba;
        ok &= daa == Dyadic::Zero;
        // ultrametric form of the triangle inequality on the dyadic bound
        ok &= dac <= dab.max(dbc);
    }

    // shadowing certificates verify at every coarser epsilon
    let sft = golden_mean();
    let mut srng = SplitMix64::new(77);
    for _ in 0..50 {
        let po = random_pseudo_orbit(&sft, &mut srng, 10, 9, Direction::Forward).unwrap();
        let f = shadow_forward(&sft, &po, 8).unwrap();
        for coarser in 2..=8 {
            ok &= f.cert.holds_at(coarser);
        }
    }

    // chain-recurrence outer approximation is antitone in one refinement
    for m in [plateau_map(), squares_map(), vee_map()] {
        let coarse = chain_recurrent_outer(&m, &Rat::pow2_neg(5), &Rat::pow2_neg(6)).unwrap();
        let fine = chain_recurrent_outer(&m, &Rat::pow2_neg(6), &Rat::pow2_neg(7)).unwrap();
        for &b in &fine.boxes {
            let lo = fine.grid.box_interval(b).lo;
            ok &= coarse.boxes.contains(&coarse.grid.index_of(&lo).unwrap());
        }
    }
    let elapsed = t0.elapsed();
    budget("9", elapsed, 30.0);
    report(
        "9",
        ok,
        elapsed,
        "hausdorff metric laws, epsilon monotonicity, grid antitonicity",
    );
}

#[test]
fn criterion_2_supplement_alpha_omega_window_level_inequalities() {
    // the window families on the two sides straddle each closure example
    let ab = alphabet2();
    let x = spike_point(&ab, "1");
    let t53 = descending_gap_alpha_tail(&ab);
    for l in 1..=4 {
        let omega_52 = omega_windows(&ab, &x, l).unwrap();
        let alpha_53 = alpha_windows(&ab, &t53, l).unwrap();
        assert_eq!(
            omega_52.words(),
            alpha_53.words(),
            "both are the one-spike family"
        );
    }
    // the ambient language-level classes coincide with those families at
    // the certified resolutions
    let lang52 = spike_system_language(&ab);
    let am52 = Sft::from_allowed(ab.clone(), 2, lang52.windows(&ab, 2).unwrap().words()).unwrap();
    assert_eq!(enumerate_maximal_ict(&am52, 1).unwrap().len(), 1);
    assert_eq!(ict_singletons(&am52, 1).unwrap().len(), 1);
    let lang53 = descending_gap_language(&ab);
    let am53 = Sft::from_allowed(ab.clone(), 3, lang53.windows(&ab, 3).unwrap().words()).unwrap();
    let classes = enumerate_maximal_ict(&am53, 2).unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(
        classes[0].words(),
        spike_spec(&ab, &["1"]).windows(&ab, 3).unwrap().words()
    );
    // sanity: the ambient block graph machinery agrees with a hand check
    let v = am53.language(3).unwrap();
    let f = am53.language(4).unwrap();
    let g = block_graph(&v, 3, Some(&f)).unwrap();
    assert!(g.strongly_connected_with_edge());
}
