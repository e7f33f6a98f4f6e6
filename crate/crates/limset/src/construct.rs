//! Constructive realisation of internally chain transitive sets as limit
//! sets: dense chain schedules through a window spec, one-sided points whose
//! omega window sets match the spec at every certified resolution, and full
//! trajectories matching it on both sides.
//!
//! Stage j walks the (k_j+1)-block graph with `k_j = min(j, K)`: in the
//! dyadic metric a walk of the (k+1)-block graph is a `2^-k`-chain, so the
//! concatenated stages form an asymptotic pseudo-orbit through the set. In
//! shift spaces that pseudo-orbit is realised exactly by one point (stage K
//! repeats forever, so the result is eventually periodic), which upgrades
//! the approximation statement to window-set equality at resolutions up to
//! K. Outputs are one canonical realisation: bases are lexicographically
//! least windows and connector paths are BFS-shortest in canonical order.

use crate::error::{Error, Result};
use crate::limits::{is_ict, SetSpec};
use crate::symbolic::{
    block_graph, Alphabet, BlockGraph, LeftTail, Ray, SeqPoint, TwoSidedPoint, Word,
};
use std::collections::BTreeSet;
use std::sync::Arc;

/// A closed walk through every vertex of a stage block graph.
#[derive(Debug, Clone)]
pub struct StageWalk {
    /// Stage resolution: vertices have length `k + 1`.
    pub k: u32,
    /// Vertex sequence, first = last = the stage base.
    pub walk: Vec<Word>,
    /// The walk spelled as a word.
    pub word: Word,
    /// `word` minus its trailing base: what the stage contributes to the
    /// concatenated stream.
    pub emission: Word,
}

/// The per-stage dense chains realising a spec up to resolution K.
#[derive(Debug, Clone)]
pub struct ChainSchedule {
    pub stages: Vec<StageWalk>,
}

/// Evidence that a realisation hits its contract, recomputed from the
/// emitted object rather than trusted from the construction.
#[derive(Debug, Clone)]
pub struct RealizationCert {
    pub resolution: u32,
    /// Per k <= K: every spec (k+1)-window occurs in every stage walk >= k.
    pub coverage: Vec<(u32, bool)>,
    /// Per L <= K+2: every L-window of the tail from stage L-2 on lies in
    /// the spec's window set.
    pub membership: Vec<(usize, bool)>,
    /// Per L <= K+1: the limit window set of the realisation equals the
    /// spec's windows.
    pub limit_match: Vec<(usize, bool)>,
}

impl RealizationCert {
    pub fn all_ok(&self) -> bool {
        self.coverage.iter().all(|&(_, b)| b)
            && self.membership.iter().all(|&(_, b)| b)
            && self.limit_match.iter().all(|&(_, b)| b)
    }
}

/// A one-sided point realising a spec as its omega-limit set.
#[derive(Debug, Clone)]
pub struct Realization {
    pub point: SeqPoint,
    pub schedule: ChainSchedule,
    pub cert: RealizationCert,
}

/// A full trajectory realising a spec as both its alpha- and omega-limit
/// set.
#[derive(Debug, Clone)]
pub struct FullRealization {
    pub point: TwoSidedPoint,
    pub schedule: ChainSchedule,
    pub omega_cert: RealizationCert,
    pub alpha_cert: RealizationCert,
}

fn stage_graph(alphabet: &Arc<Alphabet>, spec: &SetSpec, k: u32) -> Result<BlockGraph> {
    let v = spec.windows(alphabet, k as usize + 1)?;
    let f = spec.windows(alphabet, k as usize + 2)?;
    block_graph(v.words(), k as usize + 1, Some(f.words()))
}

/// Shortest closed walk from `base` back to itself with at least one edge.
fn shortest_return(g: &BlockGraph, base: usize) -> Result<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for &s in g.successors(base) {
        if let Some(mut p) = g.shortest_path(s, base) {
            let mut walk = vec![base];
            walk.append(&mut p);
            if best.as_ref().is_none_or(|b| walk.len() < b.len()) {
                best = Some(walk);
            }
        }
    }
    best.ok_or(Error::NotChainTransitive {
        k: g.k() as u32 - 1,
    })
}

/// A closed walk from `base` visiting every vertex of the stage graph:
/// unvisited vertices are taken in canonical order, connected by
/// BFS-shortest paths, then the walk returns to base. Fails when the graph
/// is not strongly connected (the set is not chain transitive at this
/// resolution) or when `base` is not a vertex.
pub fn dense_chain(
    alphabet: &Arc<Alphabet>,
    spec: &SetSpec,
    k: u32,
    base: &Word,
) -> Result<Vec<Word>> {
    let g = stage_graph(alphabet, spec, k)?;
    if !g.strongly_connected_with_edge() {
        return Err(Error::NotChainTransitive { k });
    }
    let start = g
        .vertex_index(base)
        .ok_or_else(|| Error::Invalid("base word is not a spec window".into()))?;
    let walk = dense_walk_indices(&g, start)?;
    Ok(walk.into_iter().map(|i| g.vertices()[i].clone()).collect())
}

fn dense_walk_indices(g: &BlockGraph, start: usize) -> Result<Vec<usize>> {
    let mut walk = vec![start];
    let mut visited = vec![false; g.vertex_count()];
    visited[start] = true;
    let mut cur = start;
    for v in 0..g.vertex_count() {
        if visited[v] {
            continue;
        }
        let path = g.shortest_path(cur, v).ok_or(Error::NotChainTransitive {
            k: g.k() as u32 - 1,
        })?;
        for &w in &path[1..] {
            visited[w] = true;
            walk.push(w);
        }
        cur = v;
    }
    if cur == start {
        // nothing beyond the base: traverse the shortest cycle instead
        let ret = shortest_return(g, start)?;
        walk.extend_from_slice(&ret[1..]);
    } else {
        let path = g
            .shortest_path(cur, start)
            .ok_or(Error::NotChainTransitive {
                k: g.k() as u32 - 1,
            })?;
        walk.extend_from_slice(&path[1..]);
    }
    Ok(walk)
}

fn walk_word(walk: &[Word]) -> Word {
    let mut w = walk[0].clone();
    for v in &walk[1..] {
        w.push(*v.symbols().last().unwrap());
    }
    w
}

/// Lexicographically least window of the spec at the given length.
fn lex_base(alphabet: &Arc<Alphabet>, spec: &SetSpec, len: usize) -> Result<Word> {
    spec.windows(alphabet, len)?
        .words()
        .iter()
        .next()
        .cloned()
        .ok_or_else(|| Error::Invalid("spec has no windows".into()))
}

fn build_schedule(alphabet: &Arc<Alphabet>, spec: &SetSpec, res: u32) -> Result<ChainSchedule> {
    for k in 0..=res {
        if !is_ict(alphabet, spec, k)? {
            return Err(Error::NotChainTransitive { k });
        }
    }
    let mut stages = Vec::new();
    let mut prev_base: Option<Word> = None;
    for k in 0..=res {
        let base = lex_base(alphabet, spec, k as usize + 1)?;
        if let Some(p) = &prev_base {
            if &base.prefix(p.len()) != p {
                return Err(Error::Invalid(
                    "stage bases do not refine each other; spec language is not extendable".into(),
                ));
            }
        }
        let walk_words = dense_chain(alphabet, spec, k, &base)?;
        let word = walk_word(&walk_words);
        let emission = word.prefix(word.len() - (k as usize + 1));
        stages.push(StageWalk {
            k,
            walk: walk_words,
            word,
            emission,
        });
        prev_base = Some(base);
    }
    Ok(ChainSchedule { stages })
}

fn check_realization(
    alphabet: &Arc<Alphabet>,
    spec: &SetSpec,
    schedule: &ChainSchedule,
    tail_limit_windows: &dyn Fn(usize) -> BTreeSet<Word>,
    res: u32,
) -> Result<RealizationCert> {
    let period = &schedule.stages[res as usize].emission;
    let mut coverage = Vec::new();
    for k in 0..=res {
        let want = spec.windows(alphabet, k as usize + 1)?;
        let ok = schedule.stages[k as usize..]
            .iter()
            .all(|st| want.words().iter().all(|w| st.word.contains_factor(w)));
        coverage.push((k, ok));
    }
    let mut membership = Vec::new();
    for len in 1..=(res as usize + 2) {
        let allowed = spec.windows(alphabet, len)?;
        let j0 = len.saturating_sub(2).min(res as usize);
        let mut scan = Word::empty();
        for st in &schedule.stages[j0..] {
            scan.extend(&st.emission);
        }
        scan.extend(period);
        scan.extend(&period.prefix(len.saturating_sub(1).min(period.len())));
        let ok = scan.factors(len).iter().all(|w| allowed.contains(w));
        membership.push((len, ok));
    }
    let mut limit_match = Vec::new();
    for len in 1..=(res as usize + 1) {
        let want = spec.windows(alphabet, len)?;
        let got = tail_limit_windows(len);
        limit_match.push((len, &got == want.words()));
    }
    Ok(RealizationCert {
        resolution: res,
        coverage,
        membership,
        limit_match,
    })
}

/// Build a one-sided point whose omega window sets match the spec at every
/// length up to K+1: stages 0..K-1 form the transient, the stage-K walk
/// repeats forever. Fails with a budget error when the prefix (transient
/// plus one period) does not fit in `budget` symbols.
pub fn build_limit_point(
    alphabet: &Arc<Alphabet>,
    spec: &SetSpec,
    res: u32,
    budget: usize,
) -> Result<Realization> {
    let schedule = build_schedule(alphabet, spec, res)?;
    let mut transient = Word::empty();
    for st in &schedule.stages[..res as usize] {
        transient.extend(&st.emission);
    }
    let period = schedule.stages[res as usize].emission.clone();
    let needed = transient.len() + period.len();
    if needed > budget {
        return Err(Error::BudgetExceeded { budget, needed });
    }
    let point = SeqPoint::periodic(transient, period)?;
    let ray = point.ray.clone();
    let cert = check_realization(alphabet, spec, &schedule, &|l| ray.limit_windows(l), res)?;
    Ok(Realization {
        point,
        schedule,
        cert,
    })
}

/// Build a full trajectory whose alpha and omega window sets both match the
/// spec at every length up to K+1. The right tail is the forward schedule;
/// the left tail appends the stages leftward in increasing order, so both
/// far ends cycle through the stage-K walk.
pub fn build_full_trajectory(
    alphabet: &Arc<Alphabet>,
    spec: &SetSpec,
    res: u32,
    budget: usize,
) -> Result<FullRealization> {
    let schedule = build_schedule(alphabet, spec, res)?;
    let period = schedule.stages[res as usize].emission.clone();
    let mut right_transient = Word::empty();
    for st in &schedule.stages[..res as usize] {
        right_transient.extend(&st.emission);
    }
    // reading order ... S_K S_K S_{K-1} ... S_2 S_1 | center
    let mut left_transient = Word::empty();
    for st in schedule.stages[1..res as usize].iter().rev() {
        left_transient.extend(&st.emission);
    }
    let needed = 2 * period.len() + right_transient.len() + left_transient.len();
    if needed > budget {
        return Err(Error::BudgetExceeded { budget, needed });
    }
    let left = LeftTail::periodic(period.clone(), left_transient)?;
    let right = Ray::periodic(right_transient, period.clone())?;
    let point = TwoSidedPoint::new(left, Word::empty(), right);
    let right_ray = point.right.clone();
    let omega_cert = check_realization(
        alphabet,
        spec,
        &schedule,
        &|l| right_ray.limit_windows(l),
        res,
    )?;
    let left_tail = point.left.clone();
    let alpha_cert = check_realization(
        alphabet,
        spec,
        &schedule,
        &|l| left_tail.limit_windows(l),
        res,
    )?;
    Ok(FullRealization {
        point,
        schedule,
        omega_cert,
        alpha_cert,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::{omega_windows, Provenance};
    use crate::symbolic::{Sft, Symbol};

    fn spike_spec(spikes: &[u8]) -> SetSpec {
        SetSpec::Spike {
            quiet: Symbol(0),
            spikes: spikes.iter().map(|&s| Symbol(s)).collect(),
        }
    }

    #[test]
    fn singleton_realises_as_constant_point() {
        let ab = Alphabet::of_chars("01");
        let r = build_limit_point(&ab, &spike_spec(&[]), 3, 4096).unwrap();
        assert!(r.cert.all_ok());
        assert_eq!(r.point.window(0, 6), ab.parse_word("000000").unwrap());
    }

    #[test]
    fn golden_mean_dense_chain_covers_vertices() {
        let gm = Sft::parse("0 1\n11").unwrap();
        let ab = gm.alphabet().clone();
        let spec = SetSpec::Language(gm);
        let walk = dense_chain(&ab, &spec, 1, &ab.parse_word("00").unwrap()).unwrap();
        assert_eq!(walk.first(), walk.last());
        let seen: BTreeSet<&Word> = walk.iter().collect();
        assert_eq!(seen.len(), 3);
        // each step is a valid fuse
        let fuse = spec.windows(&ab, 3).unwrap();
        for pair in walk.windows(2) {
            let mut w = pair[0].clone();
            w.push(*pair[1].symbols().last().unwrap());
            assert!(fuse.contains(&w));
        }
    }

    #[test]
    fn not_chain_transitive_spec_is_rejected() {
        let ab = Alphabet::of_chars("01");
        let mut by_len = std::collections::BTreeMap::new();
        for l in 1..=4usize {
            let words: BTreeSet<Word> =
                [Word::repeated(Symbol(0), l), Word::repeated(Symbol(1), l)]
                    .into_iter()
                    .collect();
            by_len.insert(l, words);
        }
        let spec = SetSpec::Table { by_len };
        match dense_chain(&ab, &spec, 1, &ab.parse_word("00").unwrap()) {
            Err(Error::NotChainTransitive { k: 1 }) => {}
            other => panic!("expected chain transitivity failure, got {other:?}"),
        }
    }

    #[test]
    fn golden_mean_realization_hits_language() {
        let gm = Sft::parse("0 1\n11").unwrap();
        let ab = gm.alphabet().clone();
        let spec = SetSpec::Language(gm);
        let r = build_limit_point(&ab, &spec, 4, 4096).unwrap();
        assert!(r.cert.all_ok());
        for l in 1..=5 {
            let got = omega_windows(&ab, &r.point, l).unwrap();
            let want = spec.windows(&ab, l).unwrap();
            assert_eq!(got.words(), want.words(), "length {l}");
        }
    }

    #[test]
    fn emitted_prefix_scans_to_the_language() {
        let gm = Sft::parse("0 1\n11").unwrap();
        let ab = gm.alphabet().clone();
        let spec = SetSpec::Language(gm);
        let r = build_limit_point(&ab, &spec, 4, 4096).unwrap();
        let prefix = r.point.window(0, 4096);
        for l in 1..=5 {
            let got = crate::limits::sampled_tail_windows(
                &ab,
                &prefix,
                l,
                crate::limits::Stabilization::default(),
            )
            .unwrap();
            assert_eq!(got.words(), spec.windows(&ab, l).unwrap().words());
            assert!(matches!(got.provenance(), Provenance::Empirical { .. }));
        }
    }

    #[test]
    fn period_two_trajectory_is_asymptotic_to_the_orbit() {
        let p2 = Sft::parse("0 1\n00\n11").unwrap();
        let ab = p2.alphabet().clone();
        let spec = SetSpec::Language(p2);
        let f = build_full_trajectory(&ab, &spec, 3, 4096).unwrap();
        assert!(f.omega_cert.all_ok() && f.alpha_cert.all_ok());
        // both tails eventually alternate
        let w = f.point.window(-9, 18);
        let s = ab.fmt_word(&w);
        assert!(s.contains("010101") || s.contains("101010"), "window {s}");
    }

    #[test]
    fn budget_error_reports_requirement() {
        let gm = Sft::parse("0 1\n11").unwrap();
        let ab = gm.alphabet().clone();
        match build_limit_point(&ab, &SetSpec::Language(gm), 4, 3) {
            Err(Error::BudgetExceeded { needed, .. }) => assert!(needed > 3),
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
