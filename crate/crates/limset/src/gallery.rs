//! The bundled worked examples: shift systems, points, interval maps and
//! the documented claims about their limit sets, packaged as re-runnable
//! checks.
//!
//! Each check computes a value from scratch and compares it with the
//! documented expectation. `Pass`/`Fail` report agreement; `Diverges` marks
//! the one documented claim that the honest computation provably exceeds
//! (see the check's note), kept separate so reproduction runs can still
//! distinguish regressions from the known discrepancy.

use crate::construct::build_full_trajectory;
use crate::dyadic::Dyadic;
use crate::error::Result;
use crate::interval::{
    box_graph, chain_recurrent_outer, falsify_shadowing, is_box_ict, neg_limit_a1,
    neg_limit_trajectories, BoxReport, NegLimitMode, PiecewiseMap, Rat,
};
use crate::limits::{
    alpha_windows, chain_component_check, enumerate_maximal_ict, gamma_windows, ict_singletons,
    is_ict, omega_windows, omega_windows_two_sided, window_hausdorff, SetSpec, Sidedness,
    WindowSet,
};
use crate::symbolic::{
    Alphabet, Growth, LeftTail, Ray, SeqPoint, Sft, Template, TwoSidedPoint, Word,
};
use std::collections::BTreeSet;
use std::sync::Arc;

/// Outcome of one gallery check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The computation is healthy but provably differs from the documented
    /// value; the note carries the analysis.
    Diverges,
}

/// One re-runnable claim about a worked example.
#[derive(Debug, Clone)]
pub struct Check {
    pub example: &'static str,
    pub name: &'static str,
    pub claim: String,
    pub computed: String,
    pub status: CheckStatus,
}

impl Check {
    fn of(
        example: &'static str,
        name: &'static str,
        claim: &str,
        ok: bool,
        computed: String,
    ) -> Check {
        Check {
            example,
            name,
            claim: claim.to_string(),
            computed,
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
        }
    }
}

pub fn alphabet2() -> Arc<Alphabet> {
    Alphabet::of_chars("01")
}

pub fn alphabet3() -> Arc<Alphabet> {
    Alphabet::of_chars("012")
}

pub fn alphabet4() -> Arc<Alphabet> {
    Alphabet::of_chars("0123")
}

pub fn golden_mean() -> Sft {
    Sft::parse("0 1\n11").expect("golden mean subshift")
}

pub fn period_two() -> Sft {
    Sft::parse("0 1\n00\n11").expect("period-two subshift")
}

/// `s q s q^2 s q^3 ...`: the canonical point whose omega-limit set is the
/// one-spike family over the quiet symbol.
pub fn spike_point(alphabet: &Arc<Alphabet>, spike: &str) -> SeqPoint {
    let quiet = alphabet.lookup("0").expect("quiet symbol");
    SeqPoint::scheduled(
        Word::empty(),
        vec![
            Template::Lit(alphabet.parse_word(spike).expect("spike word")),
            Template::Run {
                sym: quiet,
                len: Growth::linear(),
            },
        ],
    )
    .expect("spike point")
}

/// The one-spike window spec `{0^inf} ∪ {0^a s 0^inf}` for each spike.
pub fn spike_spec(alphabet: &Arc<Alphabet>, spikes: &[&str]) -> SetSpec {
    SetSpec::Spike {
        quiet: alphabet.lookup("0").expect("quiet symbol"),
        spikes: spikes
            .iter()
            .map(|s| alphabet.lookup(s).expect("spike symbol"))
            .collect(),
    }
}

/// Backward coordinate stream `... s 0^3 s 0^2 s 0 <head>`: spikes of `s`
/// with gaps growing into the past.
pub fn backward_spike_tail(alphabet: &Arc<Alphabet>, spike: &str, head: &str) -> LeftTail {
    let quiet = alphabet.lookup("0").expect("quiet symbol");
    LeftTail::scheduled(
        vec![
            Template::Lit(alphabet.parse_word(spike).expect("spike word")),
            Template::Run {
                sym: quiet,
                len: Growth::linear(),
            },
        ],
        alphabet.parse_word(head).expect("head word"),
    )
    .expect("backward spike tail")
}

/// The two-sided point with interleaved blocks: left tail
/// `... 0^n 1^n ... 0^2 1^2 0 1`, right tail `0^2 2 1^2 2 0^3 2 1^3 2 ...`.
pub fn interleaved_block_point(alphabet: &Arc<Alphabet>) -> TwoSidedPoint {
    let zero = alphabet.lookup("0").unwrap();
    let one = alphabet.lookup("1").unwrap();
    let two = alphabet.parse_word("2").unwrap();
    let left = LeftTail::scheduled(
        vec![
            Template::Run {
                sym: zero,
                len: Growth::linear(),
            },
            Template::Run {
                sym: one,
                len: Growth::linear(),
            },
        ],
        Word::empty(),
    )
    .unwrap();
    let right = Ray::staged(
        Word::empty(),
        vec![
            Template::Run {
                sym: zero,
                len: Growth {
                    per_stage: 1,
                    base: 1,
                },
            },
            Template::Lit(two.clone()),
            Template::Run {
                sym: one,
                len: Growth {
                    per_stage: 1,
                    base: 1,
                },
            },
            Template::Lit(two),
        ],
    )
    .unwrap();
    TwoSidedPoint::new(left, Word::empty(), right)
}

/// Window language of the closure of the single-spike orbit system
/// (the spike point, its shifts, its 0-padded copies and their limits),
/// exact up to length 8.
pub fn spike_system_language(alphabet: &Arc<Alphabet>) -> SetSpec {
    let quiet = alphabet.lookup("0").unwrap();
    let one = alphabet.parse_word("1").unwrap();
    // the ray 0^8 1 0 1 0^2 1 0^3 ... sees every window of the closure
    let ray = Ray::staged(
        Word::repeated(quiet, 8),
        vec![
            Template::Lit(one),
            Template::Run {
                sym: quiet,
                len: Growth::linear(),
            },
        ],
    )
    .unwrap();
    SetSpec::ClosureOf {
        rays: vec![ray],
        max_len: 8,
    }
}

/// Window language of the closure of the descending-gap system
/// `{ shifts of 1 0^n 1 0^(n-1) ... 1 0^2 1 0^inf }`, exact up to length 8:
/// one deep representative word plus quiet padding carries every window.
pub fn descending_gap_language(alphabet: &Arc<Alphabet>) -> SetSpec {
    let quiet = alphabet.lookup("0").unwrap();
    let one = alphabet.lookup("1").unwrap();
    let mut w = Word::repeated(quiet, 8);
    for gap in (2..=10u64).rev() {
        w.push(one);
        for _ in 0..gap {
            w.push(quiet);
        }
    }
    w.push(one);
    let ray = Ray::periodic(w, Word::repeated(quiet, 1)).unwrap();
    SetSpec::ClosureOf {
        rays: vec![ray],
        max_len: 8,
    }
}

/// Backward coordinate stream `... 0^3 1 0^2 1 0 1` of the descending-gap
/// system's deep backward trajectories.
pub fn descending_gap_alpha_tail(alphabet: &Arc<Alphabet>) -> LeftTail {
    let quiet = alphabet.lookup("0").unwrap();
    let one = alphabet.parse_word("1").unwrap();
    LeftTail::scheduled(
        vec![
            Template::Run {
                sym: quiet,
                len: Growth::linear(),
            },
            Template::Lit(one),
        ],
        Word::empty(),
    )
    .unwrap()
}

/// Interval map with an attracting plateau: `2x+1`, then `0`, then `2x-1`
/// on `[-1, 1]`.
pub fn plateau_map() -> PiecewiseMap {
    PiecewiseMap::parse(
        "-1,-1/2,true,false,1,2,0\n-1/2,1/2,true,false,0,0,0\n1/2,1,true,true,-1,2,0",
    )
    .expect("plateau map")
}

/// The vee map `2x+2 / 2-2x / 2x-2` on `[-1, 2]`.
pub fn vee_map() -> PiecewiseMap {
    PiecewiseMap::parse("-1,0,true,false,2,2,0\n0,1,true,false,2,-2,0\n1,2,true,true,-2,2,0")
        .expect("vee map")
}

/// The squaring map `(x+1)^2 - 1 / x^2` on `[-1, 1]`.
pub fn squares_map() -> PiecewiseMap {
    PiecewiseMap::parse("-1,0,true,false,0,2,1\n0,1,true,true,0,0,1").expect("squares map")
}

fn fmt_windows(w: &WindowSet) -> String {
    let words: Vec<String> = w.words().iter().map(|x| w.alphabet().fmt_word(x)).collect();
    format!("{{{}}}", words.join(","))
}

fn box_set_string(rep: &BoxReport) -> String {
    let ids: Vec<String> = rep.boxes.iter().map(|b| b.to_string()).collect();
    format!("boxes[{}]", ids.join(","))
}

fn spec_equals_windows(alphabet: &Arc<Alphabet>, spec: &SetSpec, got: &WindowSet) -> Result<bool> {
    Ok(spec.windows(alphabet, got.len())?.words() == got.words())
}

/// All checks for the interleaved omega/alpha system over four symbols.
pub fn checks_spike_families() -> Result<Vec<Check>> {
    const EX: &str = "2.8";
    let ab = alphabet4();
    let mut out = Vec::new();

    let x = spike_point(&ab, "1");
    let y = spike_point(&ab, "2");
    let alpha_tail = backward_spike_tail(&ab, "3", "1");

    let mut omega_ok = true;
    let mut detail = String::new();
    for l in 1..=4 {
        let wx = omega_windows(&ab, &x, l)?;
        let wy = omega_windows(&ab, &y, l)?;
        omega_ok &= spec_equals_windows(&ab, &spike_spec(&ab, &["1"]), &wx)?;
        omega_ok &= spec_equals_windows(&ab, &spike_spec(&ab, &["2"]), &wy)?;
        if l == 2 {
            detail = format!("omega(x) at L=2: {}", fmt_windows(&wx));
        }
    }
    out.push(Check::of(
        EX,
        "omega-windows",
        "omega window sets of x and y at L<=4 are the one-spike families",
        omega_ok,
        detail,
    ));

    let mut alpha_ok = true;
    for l in 1..=4 {
        let wa = alpha_windows(&ab, &alpha_tail, l)?;
        alpha_ok &= spec_equals_windows(&ab, &spike_spec(&ab, &["3"]), &wa)?;
    }
    out.push(Check::of(
        EX,
        "alpha-windows",
        "alpha window set of the backward trajectory at L<=4 is the 3-spike family",
        alpha_ok,
        format!("L=2: {}", fmt_windows(&alpha_windows(&ab, &alpha_tail, 2)?)),
    ));

    let extras: Vec<Vec<&str>> = vec![
        vec!["1", "2"],
        vec!["1", "3"],
        vec!["2", "3"],
        vec!["1", "2", "3"],
    ];
    let mut ict_ok = true;
    for spikes in &extras {
        for k in 1..=3 {
            ict_ok &= is_ict(&ab, &spike_spec(&ab, spikes), k)?;
        }
    }
    out.push(Check::of(
        EX,
        "extra-families-ict",
        "each of the four extra spike families passes is_ict at k<=3",
        ict_ok,
        format!("{} families, k in 1..=3", extras.len()),
    ));

    let computed: Vec<SetSpec> = vec![
        spike_spec(&ab, &["1"]),
        spike_spec(&ab, &["2"]),
        spike_spec(&ab, &["3"]),
        spike_spec(&ab, &[]),
    ];
    let mut distinct_ok = true;
    for spikes in &extras {
        for c in &computed {
            let d = window_hausdorff(&ab, &spike_spec(&ab, spikes), c, 1, Sidedness::OneSided)?;
            distinct_ok &= d > Dyadic::Zero;
        }
    }
    out.push(Check::of(
        EX,
        "extra-families-distinct",
        "every extra family differs from every computed alpha/omega set at k=1",
        distinct_ok,
        "window_hausdorff > 0 for all 16 pairs".into(),
    ));
    Ok(out)
}

/// Checks for the plateau map's negative limit sets.
pub fn checks_plateau_negative_limits() -> Result<Vec<Check>> {
    const EX: &str = "3.1";
    let m = plateau_map();
    let res = Rat::pow2_neg(5);
    let mut out = Vec::new();

    let a1 = neg_limit_a1(&m, &Rat::zero(), 12, &res)?;
    out.push(Check::of(
        EX,
        "a1-covers-interval",
        "preimage-set accumulation of 0 at D=12, res=2^-5 covers every box of [-1,1]",
        a1.boxes.len() == a1.grid.count(),
        format!("{}/{} boxes hit", a1.boxes.len(), a1.grid.count()),
    ));

    let a1_fix = neg_limit_a1(&m, &Rat::int(-1), 12, &res)?;
    let fix_box = a1_fix.grid.index_of(&Rat::int(-1)).unwrap();
    out.push(Check::of(
        EX,
        "a1-fixed-point-persists",
        "the box at the fixed point -1 persists in its own preimage accumulation",
        a1_fix.boxes.contains(&fix_box),
        box_set_string(&a1_fix),
    ));

    let a2 = neg_limit_trajectories(&m, &Rat::zero(), NegLimitMode::Branches, 12, &res)?;
    let want: BTreeSet<usize> = [Rat::int(-1), Rat::zero(), Rat::int(1)]
        .iter()
        .map(|p| a2.grid.index_of(p).unwrap())
        .collect();
    out.push(Check::of(
        EX,
        "a2-three-fixed-points",
        "branch accumulation of 0 yields exactly the boxes containing {-1, 0, 1}",
        a2.boxes == want,
        box_set_string(&a2),
    ));
    Ok(out)
}

/// Checks for the vee map's negative limit sets.
pub fn checks_vee_negative_limits() -> Result<Vec<Check>> {
    const EX: &str = "3.2";
    let m = vee_map();
    let res = Rat::pow2_neg(5);
    let mut out = Vec::new();

    let a2 = neg_limit_trajectories(&m, &Rat::zero(), NegLimitMode::Branches, 12, &res)?;
    let want: BTreeSet<usize> = [Rat::frac(2, 3), Rat::int(2)]
        .iter()
        .map(|p| a2.grid.index_of(p).unwrap())
        .collect();
    out.push(Check::of(
        EX,
        "a2-inverse-fixed-points",
        "branch accumulation of 0 yields exactly the boxes containing {2/3, 2}",
        a2.boxes == want,
        box_set_string(&a2),
    ));

    let a3 = neg_limit_trajectories(&m, &Rat::zero(), NegLimitMode::Nodes, 12, &res)?;
    let documented: BTreeSet<usize> = [Rat::zero(), Rat::frac(2, 3), Rat::int(2)]
        .iter()
        .map(|p| a3.grid.index_of(p).unwrap())
        .collect();
    let contains = documented.is_subset(&a3.boxes);
    let equals = a3.boxes == documented;
    out.push(Check {
        example: EX,
        name: "a3-node-accumulation",
        claim: "node accumulation of 0 yields exactly the boxes containing {0, 2/3, 2}".into(),
        computed: format!(
            "{} boxes; contains the documented three: {}. The positive zone is a full \
             tent tree whose depth-d level is a 2^-(d-2)-dense grid, so node \
             accumulation provably reaches every box of [0,2] and the one-step \
             offshoots below 0; exact equality with the three documented boxes is \
             not attainable by this (or any principled) finite proxy",
            a3.boxes.len(),
            contains
        ),
        status: if equals {
            CheckStatus::Pass
        } else if contains {
            CheckStatus::Diverges
        } else {
            CheckStatus::Fail
        },
    });
    Ok(out)
}

/// Checks for the squaring map: the shadowing falsification and the box
/// outer approximation of its chain recurrent set.
pub fn checks_squares_map() -> Result<Vec<Check>> {
    const EX: &str = "4.4";
    let m = squares_map();
    let mut out = Vec::new();

    let cert = falsify_shadowing(&m, &Rat::frac(1, 3), &Rat::frac(1, 64))?;
    let obligations = cert.verify(&m)?;
    let all_ok = obligations.iter().all(|&(_, ok)| ok);
    out.push(Check::of(
        EX,
        "falsification-certificate",
        "the delta=1/64 pseudo-orbit certificate re-verifies all four obligations",
        all_ok && cert.pseudo_orbit.entries.len() <= 40,
        format!(
            "{} entries, final {}; {}",
            cert.pseudo_orbit.entries.len(),
            cert.final_entry(),
            cert.conclusion()
        ),
    ));

    out.push(Check::of(
        EX,
        "falsification-margin",
        "delta = 1/4 is rejected by the documented margin",
        falsify_shadowing(&m, &Rat::frac(1, 3), &Rat::frac(1, 4)).is_err(),
        "rejected".into(),
    ));

    let h = Rat::pow2_neg(7);
    let fatten = Rat::pow2_neg(8);
    let rep = chain_recurrent_outer(&m, &h, &fatten)?;
    let near = BoxReport::boxes_near(
        &rep.grid,
        &[Rat::int(-1), Rat::zero(), Rat::int(1)],
        &(&Rat::int(2) * &h),
    );
    out.push(Check::of(
        EX,
        "chain-recurrent-outer",
        "recurrent boxes at h=1/128, fatten=1/256 lie within 2h of {-1, 0, 1}",
        rep.boxes.is_subset(&near),
        format!("{} recurrent boxes", rep.boxes.len()),
    ));

    let g = box_graph(&m, &h, &fatten)?;
    let mut singles_ok = true;
    for p in [Rat::int(-1), Rat::zero(), Rat::int(1)] {
        let b = rep.grid.index_of(&p).unwrap();
        singles_ok &= rep.boxes.contains(&b) && is_box_ict(&g, &[b].into_iter().collect());
    }
    out.push(Check::of(
        EX,
        "fixed-point-singletons",
        "the three fixed-point boxes recur and pass the box-level chain transitivity check",
        singles_ok,
        "three singleton box sets".into(),
    ));
    Ok(out)
}

/// Checks for the interleaved-block two-sided point: gamma windows, the
/// failed chain transitivity, and the ambient chain component.
pub fn checks_interleaved_blocks() -> Result<Vec<Check>> {
    const EX: &str = "4.10";
    let ab = alphabet3();
    let p = interleaved_block_point(&ab);
    let mut out = Vec::new();

    let mut gamma_ok = true;
    for l in 1..=4usize {
        let g = gamma_windows(&ab, &p, l)?;
        let want: BTreeSet<Word> = [
            Word::repeated(ab.lookup("0").unwrap(), l),
            Word::repeated(ab.lookup("1").unwrap(), l),
        ]
        .into_iter()
        .collect();
        gamma_ok &= g.words() == &want;
    }
    out.push(Check::of(
        EX,
        "gamma-windows",
        "gamma window sets at L<=4 are exactly {0^L, 1^L}",
        gamma_ok,
        format!("L=2: {}", fmt_windows(&gamma_windows(&ab, &p, 2)?)),
    ));

    let gamma_spec = SetSpec::Intersect(
        Box::new(SetSpec::AlphaOf(p.left.clone())),
        Box::new(SetSpec::OmegaOfTwoSided(p.clone())),
    );
    out.push(Check::of(
        EX,
        "gamma-not-ict",
        "the gamma spec fails internal chain transitivity at k=1",
        !is_ict(&ab, &gamma_spec, 1)?,
        "two fixed-point components".into(),
    ));

    let full3 = Sft::full_shift(ab.clone());
    let w = gamma_windows(&ab, &p, 2)?;
    out.push(Check::of(
        EX,
        "single-chain-component",
        "the gamma windows lie in one chain component of the ambient full shift",
        chain_component_check(&w, &full3, 1)?,
        "ambient block graph is strongly connected".into(),
    ));

    // the omega tail scan must agree with the exact template analysis
    let exact = omega_windows_two_sided(&ab, &p, 3)?;
    let sampled = crate::limits::sampled_tail_windows(
        &ab,
        &p.window(0, 6000),
        3,
        crate::limits::Stabilization::default(),
    )?;
    out.push(Check::of(
        EX,
        "omega-scan-cross-check",
        "exact omega windows of the right tail match a stabilised sample scan",
        exact.words() == sampled.words(),
        format!("L=3: {}", fmt_windows(&exact)),
    ));
    Ok(out)
}

/// Checks for the single-spike orbit closure: omega side realised, alpha
/// side collapsed.
pub fn checks_spike_orbit_closure() -> Result<Vec<Check>> {
    const EX: &str = "5.2";
    let ab = alphabet2();
    let mut out = Vec::new();

    let x = spike_point(&ab, "1");
    let mut omega_ok = true;
    for l in 1..=4 {
        omega_ok &=
            spec_equals_windows(&ab, &spike_spec(&ab, &["1"]), &omega_windows(&ab, &x, l)?)?;
    }
    out.push(Check::of(
        EX,
        "omega-family",
        "omega windows of the spike point at L<=4 are the one-spike family",
        omega_ok,
        format!("L=2: {}", fmt_windows(&omega_windows(&ab, &x, 2)?)),
    ));

    // every backward trajectory has quiet coordinates: ... 0 0 0 <1>
    let tail = LeftTail::periodic(ab.parse_word("0").unwrap(), ab.parse_word("1").unwrap())?;
    let mut alpha_ok = true;
    for l in 1..=4 {
        alpha_ok &=
            spec_equals_windows(&ab, &spike_spec(&ab, &[]), &alpha_windows(&ab, &tail, l)?)?;
    }
    out.push(Check::of(
        EX,
        "alpha-family",
        "alpha windows of the backward trajectories at L<=4 collapse to the fixed point",
        alpha_ok,
        format!("L=2: {}", fmt_windows(&alpha_windows(&ab, &tail, 2)?)),
    ));

    let mut sides_differ = true;
    for l in 1..=4usize {
        let omega_side = spike_spec(&ab, &["1"]).windows(&ab, l)?;
        let alpha_side = spike_spec(&ab, &[]).windows(&ab, l)?;
        sides_differ &= omega_side.words() != alpha_side.words();
    }
    out.push(Check::of(
        EX,
        "families-differ",
        "the omega family differs from the closed alpha family at every L<=4",
        sides_differ,
        "strict at L=1 already".into(),
    ));

    let lang = spike_system_language(&ab);
    let ambient = Sft::from_allowed(ab.clone(), 2, lang.windows(&ab, 2)?.words())?;
    let classes = enumerate_maximal_ict(&ambient, 1)?;
    let singles = ict_singletons(&ambient, 1)?;
    let class_ok = classes.len() == 1
        && classes[0].words() == spike_spec(&ab, &["1"]).windows(&ab, 2)?.words()
        && singles.len() == 1
        && singles[0].words() == spike_spec(&ab, &[]).windows(&ab, 2)?.words();
    out.push(Check::of(
        EX,
        "maximal-ict-classes",
        "at resolution 1 the maximal class plus the singleton match the omega side",
        class_ok,
        format!("{} classes, {} singletons", classes.len(), singles.len()),
    ));

    let mut stated_ict = true;
    for k in 1..=3 {
        stated_ict &= is_ict(&ab, &spike_spec(&ab, &["1"]), k)?;
        stated_ict &= is_ict(&ab, &spike_spec(&ab, &[]), k)?;
    }
    out.push(Check::of(
        EX,
        "omega-side-is-ict",
        "both omega-side members pass is_ict at k<=3",
        stated_ict,
        "spike family and fixed point".into(),
    ));
    Ok(out)
}

/// Checks for the descending-gap closure: alpha side realised, omega side
/// collapsed.
pub fn checks_descending_gap_closure() -> Result<Vec<Check>> {
    const EX: &str = "5.3";
    let ab = alphabet2();
    let mut out = Vec::new();

    let tail = descending_gap_alpha_tail(&ab);
    let mut alpha_ok = true;
    for l in 1..=4 {
        alpha_ok &= spec_equals_windows(
            &ab,
            &spike_spec(&ab, &["1"]),
            &alpha_windows(&ab, &tail, l)?,
        )?;
    }
    out.push(Check::of(
        EX,
        "alpha-family",
        "alpha windows of the deep backward trajectory at L<=4 are the one-spike family",
        alpha_ok,
        format!("L=2: {}", fmt_windows(&alpha_windows(&ab, &tail, 2)?)),
    ));

    // every point has finitely many 1s, so omega collapses
    let y = SeqPoint::periodic(
        ab.parse_word("10010001").unwrap(),
        ab.parse_word("0").unwrap(),
    )?;
    let mut omega_ok = true;
    for l in 1..=4 {
        omega_ok &= spec_equals_windows(&ab, &spike_spec(&ab, &[]), &omega_windows(&ab, &y, l)?)?;
    }
    out.push(Check::of(
        EX,
        "omega-family",
        "omega windows of every point collapse to the fixed point at L<=4",
        omega_ok,
        format!("L=2: {}", fmt_windows(&omega_windows(&ab, &y, 2)?)),
    ));

    let mut sides_differ = true;
    for l in 1..=4usize {
        sides_differ &= spike_spec(&ab, &["1"]).windows(&ab, l)?.words()
            != spike_spec(&ab, &[]).windows(&ab, l)?.words();
    }
    out.push(Check::of(
        EX,
        "families-differ",
        "the alpha family differs from the closed omega family at every L<=4",
        sides_differ,
        "strict at L=1 already".into(),
    ));

    let lang = descending_gap_language(&ab);
    let mut class_ok = true;
    let mut detail = String::new();
    for k in 1..=2u32 {
        let ambient = Sft::from_allowed(
            ab.clone(),
            k as usize + 1,
            lang.windows(&ab, k as usize + 1)?.words(),
        )?;
        let classes = enumerate_maximal_ict(&ambient, k)?;
        let singles = ict_singletons(&ambient, k)?;
        class_ok &= classes.len() == 1
            && classes[0].words()
                == spike_spec(&ab, &["1"])
                    .windows(&ab, k as usize + 1)?
                    .words()
            && singles.len() == 1
            && singles[0].words() == spike_spec(&ab, &[]).windows(&ab, k as usize + 1)?.words();
        if k == 2 {
            detail = format!("k=2 class: {}", fmt_windows(&classes[0]));
        }
    }
    out.push(Check::of(
        EX,
        "maximal-ict-classes",
        "at resolutions 1 and 2 the maximal class plus the singleton match the alpha side",
        class_ok,
        detail,
    ));
    Ok(out)
}

/// Constructive realisation checks: full trajectories whose alpha and omega
/// window sets equal each target spec at all certified resolutions.
pub fn checks_realisation() -> Result<Vec<Check>> {
    const EX: &str = "4.7";
    let mut out = Vec::new();
    let targets: Vec<(&'static str, Arc<Alphabet>, SetSpec)> = vec![
        ("fixed-point", alphabet2(), spike_spec(&alphabet2(), &[])),
        (
            "period-two-orbit",
            alphabet2(),
            SetSpec::Language(period_two()),
        ),
        (
            "golden-mean-shift",
            alphabet2(),
            SetSpec::Language(golden_mean()),
        ),
        (
            "two-spike-family",
            alphabet3(),
            spike_spec(&alphabet3(), &["1", "2"]),
        ),
    ];
    for (name, ab, spec) in &targets {
        let f = build_full_trajectory(ab, spec, 4, 1 << 16)?;
        let mut ok = f.omega_cert.all_ok() && f.alpha_cert.all_ok();
        let omega_spec = SetSpec::OmegaOfTwoSided(f.point.clone());
        let alpha_spec = SetSpec::AlphaOf(f.point.left.clone());
        ok &= window_hausdorff(ab, &omega_spec, spec, 4, Sidedness::OneSided)? == Dyadic::Zero;
        ok &= window_hausdorff(ab, &alpha_spec, spec, 4, Sidedness::OneSided)? == Dyadic::Zero;
        out.push(Check::of(
            EX,
            name,
            "alpha and omega window sets of the built trajectory equal the target at k<=4",
            ok,
            format!("central window: {}", ab.fmt_word(&f.point.window(-8, 16))),
        ));
    }
    Ok(out)
}

/// Every gallery check, optionally filtered by example id.
pub fn run_checks(only: Option<&str>) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let wants = |id: &str| only.is_none_or(|o| o == id);
    if wants("2.8") {
        out.extend(checks_spike_families()?);
    }
    if wants("3.1") {
        out.extend(checks_plateau_negative_limits()?);
    }
    if wants("3.2") {
        out.extend(checks_vee_negative_limits()?);
    }
    if wants("4.4") {
        out.extend(checks_squares_map()?);
    }
    if wants("4.7") {
        out.extend(checks_realisation()?);
    }
    if wants("4.10") {
        out.extend(checks_interleaved_blocks()?);
    }
    if wants("5.2") {
        out.extend(checks_spike_orbit_closure()?);
    }
    if wants("5.3") {
        out.extend(checks_descending_gap_closure()?);
    }
    Ok(out)
}

/// The example ids in report order.
pub fn example_ids() -> &'static [&'static str] {
    &["2.8", "3.1", "3.2", "4.4", "4.7", "4.10", "5.2", "5.3"]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_runs() {
        let checks = run_checks(None).unwrap();
        assert!(checks.len() >= 20);
        for c in &checks {
            assert_ne!(
                c.status,
                CheckStatus::Fail,
                "{} / {}: {}",
                c.example,
                c.name,
                c.computed
            );
        }
        // the known divergence is present and marked
        assert!(checks
            .iter()
            .any(|c| c.name == "a3-node-accumulation" && c.status == CheckStatus::Diverges));
    }

    #[test]
    fn filtering_selects_one_example() {
        let checks = run_checks(Some("5.2")).unwrap();
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|c| c.example == "5.2"));
    }
}
