//! Window-set representations of closed shift-invariant sets, alpha/omega/
//! gamma limit-set computation, internal chain transitivity at finite
//! resolution, and the dyadic Hausdorff comparison.
//!
//! A closed shift-invariant set is observed through its window projections:
//! the set of length-L factors of its points, one set per L. Equality of
//! resolution-k projections bounds the Hausdorff distance by `2^-k` under
//! the dyadic metric, and the (k+1)-block graph of a projection decides
//! `2^-k`-internal chain transitivity.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::symbolic::{
    block_graph, Alphabet, LeftTail, Ray, SeqPoint, Sft, Symbol, TwoSidedPoint, Word,
};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// How a window set was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    /// Scanned from a finite sample; `cutoff` is the prefix length that the
    /// stabilisation policy certified.
    Empirical {
        cutoff: usize,
    },
}

impl Provenance {
    fn join(self, other: Provenance) -> Provenance {
        match (self, other) {
            (Provenance::Exact, Provenance::Exact) => Provenance::Exact,
            (Provenance::Exact, p) | (p, Provenance::Exact) => p,
            (Provenance::Empirical { cutoff: a }, Provenance::Empirical { cutoff: b }) => {
                Provenance::Empirical { cutoff: a.min(b) }
            }
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Provenance::Exact => "exact".into(),
            Provenance::Empirical { cutoff } => format!("empirical({cutoff})"),
        }
    }
}

/// A finite set of equal-length words over an alphabet, with provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowSet {
    len: usize,
    words: BTreeSet<Word>,
    alphabet: Arc<Alphabet>,
    provenance: Provenance,
}

impl WindowSet {
    pub fn new(alphabet: Arc<Alphabet>, len: usize, words: BTreeSet<Word>) -> Result<WindowSet> {
        if words.iter().any(|w| w.len() != len) {
            return Err(Error::Invalid(format!(
                "all windows must have length {len}"
            )));
        }
        Ok(WindowSet {
            len,
            words,
            alphabet,
            provenance: Provenance::Exact,
        })
    }

    pub fn with_provenance(mut self, p: Provenance) -> WindowSet {
        self.provenance = p;
        self
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    /// The length-`shorter` factor set.
    pub fn factor_set(&self, shorter: usize) -> WindowSet {
        let mut words = BTreeSet::new();
        for w in &self.words {
            words.extend(w.factors(shorter));
        }
        WindowSet {
            len: shorter,
            words,
            alphabet: self.alphabet.clone(),
            provenance: self.provenance,
        }
    }

    /// Serialise as a sorted word list under an `L=<n>` header.
    pub fn to_text(&self) -> String {
        let mut out = format!("L={}\n", self.len);
        for w in &self.words {
            out.push_str(&self.alphabet.fmt_word(w));
            out.push('\n');
        }
        out
    }
}

/// A closed subset of a shift space presented by its window projections.
///
/// Language, spike and limit-set sources are exact generators; tables and
/// closures only answer the lengths they were built for.
#[derive(Debug, Clone)]
pub enum SetSpec {
    /// The whole subshift.
    Language(Sft),
    /// `{q^inf} ∪ {q^a s q^inf : s in spikes, a >= 0}`: the one-spike family
    /// over a quiet symbol. With no spikes this is the fixed point alone.
    Spike {
        quiet: Symbol,
        spikes: BTreeSet<Symbol>,
    },
    /// Omega-limit set of a one-sided point.
    OmegaOf(SeqPoint),
    /// Omega-limit set of a two-sided point (right tail).
    OmegaOfTwoSided(TwoSidedPoint),
    /// Alpha-limit set of a backward trajectory presented by its
    /// 0-th-coordinate stream.
    AlphaOf(LeftTail),
    /// Every window that occurs anywhere in the given streams: the language
    /// of the closure of their orbits. Exact up to `max_len`.
    ClosureOf { rays: Vec<Ray>, max_len: usize },
    /// Explicit per-length table.
    Table {
        by_len: BTreeMap<usize, BTreeSet<Word>>,
    },
    /// Window-level intersection of two specs.
    Intersect(Box<SetSpec>, Box<SetSpec>),
}

impl SetSpec {
    /// The window projection at length `len`.
    pub fn windows(&self, alphabet: &Arc<Alphabet>, len: usize) -> Result<WindowSet> {
        if len == 0 {
            return Err(Error::Invalid("window length must be >= 1".into()));
        }
        match self {
            SetSpec::Language(sft) => WindowSet::new(alphabet.clone(), len, sft.language(len)?),
            SetSpec::Spike { quiet, spikes } => {
                let mut words = BTreeSet::new();
                words.insert(Word::repeated(*quiet, len));
                for &s in spikes {
                    for i in 0..len {
                        let mut syms = vec![*quiet; len];
                        syms[i] = s;
                        words.insert(Word::new(syms));
                    }
                }
                WindowSet::new(alphabet.clone(), len, words)
            }
            SetSpec::OmegaOf(p) => WindowSet::new(alphabet.clone(), len, p.ray.limit_windows(len)),
            SetSpec::OmegaOfTwoSided(p) => {
                WindowSet::new(alphabet.clone(), len, p.omega_tail_windows(len))
            }
            SetSpec::AlphaOf(tail) => {
                WindowSet::new(alphabet.clone(), len, tail.limit_windows(len))
            }
            SetSpec::ClosureOf { rays, max_len } => {
                if len > *max_len {
                    return Err(Error::GeneratorRange(len));
                }
                let mut words = BTreeSet::new();
                for r in rays {
                    words.extend(r.all_windows(len));
                }
                WindowSet::new(alphabet.clone(), len, words)
            }
            SetSpec::Table { by_len } => {
                let words = by_len.get(&len).ok_or(Error::GeneratorRange(len))?;
                WindowSet::new(alphabet.clone(), len, words.clone())
            }
            SetSpec::Intersect(a, b) => {
                let wa = a.windows(alphabet, len)?;
                let wb = b.windows(alphabet, len)?;
                let words = wa.words().intersection(wb.words()).cloned().collect();
                Ok(WindowSet::new(alphabet.clone(), len, words)?
                    .with_provenance(wa.provenance().join(wb.provenance())))
            }
        }
    }

    /// Check factorial consistency for every adjacent pair of lengths in
    /// `lo..=hi`: the length-L factors of the (L+1)-set equal the L-set.
    pub fn factorial_consistent(
        &self,
        alphabet: &Arc<Alphabet>,
        lo: usize,
        hi: usize,
    ) -> Result<bool> {
        for l in lo..hi {
            let shorter = self.windows(alphabet, l)?;
            let longer = self.windows(alphabet, l + 1)?;
            if longer.factor_set(l).words() != shorter.words() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Serialise as `(tag, per-L lists up to l_max)`.
    pub fn to_text(&self, alphabet: &Arc<Alphabet>, l_max: usize) -> Result<String> {
        let mut sets = Vec::new();
        for l in 1..=l_max {
            sets.push(self.windows(alphabet, l)?);
        }
        let tag = sets
            .iter()
            .map(|s| s.provenance())
            .fold(Provenance::Exact, Provenance::join);
        let mut out = format!("tag={}\n", tag.tag());
        for s in &sets {
            out.push_str(&s.to_text());
        }
        Ok(out)
    }
}

/// Omega window set of a one-sided point: the length-`len` words occurring
/// infinitely often in it. Exact for every finitely described point.
pub fn omega_windows(alphabet: &Arc<Alphabet>, p: &SeqPoint, len: usize) -> Result<WindowSet> {
    WindowSet::new(alphabet.clone(), len, p.ray.limit_windows(len))
}

/// Omega window set of a two-sided point: windows occurring infinitely often
/// in its right tail.
pub fn omega_windows_two_sided(
    alphabet: &Arc<Alphabet>,
    p: &TwoSidedPoint,
    len: usize,
) -> Result<WindowSet> {
    WindowSet::new(alphabet.clone(), len, p.omega_tail_windows(len))
}

/// Alpha window set of a backward trajectory, presented as the left-infinite
/// stream of 0-th coordinates: windows occurring infinitely often in the
/// left tail.
pub fn alpha_windows(alphabet: &Arc<Alphabet>, tail: &LeftTail, len: usize) -> Result<WindowSet> {
    WindowSet::new(alphabet.clone(), len, tail.limit_windows(len))
}

/// Gamma window set of a two-sided point: the intersection of the alpha and
/// omega window sets at the same length. May be empty.
pub fn gamma_windows(alphabet: &Arc<Alphabet>, p: &TwoSidedPoint, len: usize) -> Result<WindowSet> {
    let alpha = p.alpha_tail_windows(len);
    let omega = p.omega_tail_windows(len);
    WindowSet::new(
        alphabet.clone(),
        len,
        alpha.intersection(&omega).cloned().collect(),
    )
}

/// Doubling stabilisation policy for window scans over finite samples.
#[derive(Debug, Clone, Copy)]
pub struct Stabilization {
    /// Longest prefix the scan may consume.
    pub budget: usize,
}

impl Default for Stabilization {
    fn default() -> Self {
        Stabilization { budget: 1 << 20 }
    }
}

/// Empirical tail-window scan of a finite sample: the windows of the segment
/// `[t, 2t)` for doubling t, accepted once two successive segments agree.
/// The result carries the certified cutoff; running out of sample without
/// agreement is an error, never a silent answer.
pub fn sampled_tail_windows(
    alphabet: &Arc<Alphabet>,
    word: &Word,
    len: usize,
    policy: Stabilization,
) -> Result<WindowSet> {
    let budget = policy.budget.min(word.len());
    let segment = |s: usize| -> Option<BTreeSet<Word>> {
        if 2 * s + len - 1 > word.len() {
            return None;
        }
        Some(word.factor(s, s + len - 1).factors(len))
    };
    let mut start = len.max(8).next_power_of_two();
    loop {
        let next = start * 2;
        if 4 * start + len - 1 > budget {
            return Err(Error::NotStabilised { budget });
        }
        if let (Some(a), Some(b)) = (segment(start), segment(next)) {
            if a == b {
                return Ok(WindowSet::new(alphabet.clone(), len, b)?
                    .with_provenance(Provenance::Empirical { cutoff: 4 * start }));
            }
        }
        start = next;
    }
}

/// Decide `2^-k`-internal chain transitivity of the set presented by `spec`:
/// the (k+1)-block graph, with edges validated against the (k+2)-window set,
/// must be strongly connected with at least one edge.
///
/// Chains need length >= 1, so a singleton is accepted exactly when its
/// vertex carries a self-loop (a fixed point). The verdict certifies the
/// tested resolution only.
pub fn is_ict(alphabet: &Arc<Alphabet>, spec: &SetSpec, k: u32) -> Result<bool> {
    let v = spec.windows(alphabet, k as usize + 1)?;
    if v.is_empty() {
        return Ok(false);
    }
    let f = spec.windows(alphabet, k as usize + 2)?;
    let g = block_graph(v.words(), k as usize + 1, Some(f.words()))?;
    Ok(g.strongly_connected_with_edge())
}

/// The resolution-k maximal internally chain transitive classes of a
/// subshift: strongly connected components with at least one edge of the
/// (k+1)-block graph, as window sets.
pub fn enumerate_maximal_ict(sft: &Sft, k: u32) -> Result<Vec<WindowSet>> {
    let v = sft.language(k as usize + 1)?;
    let f = sft.language(k as usize + 2)?;
    let g = block_graph(&v, k as usize + 1, Some(&f))?;
    let mut out = Vec::new();
    for comp in g.cyclic_sccs() {
        let words: BTreeSet<Word> = comp.iter().map(|&i| g.vertices()[i].clone()).collect();
        out.push(WindowSet::new(
            sft.alphabet().clone(),
            k as usize + 1,
            words,
        )?);
    }
    Ok(out)
}

/// Fixed-point singletons of the subshift at resolution k: symbols s with
/// s^(k+2) in the language give the singleton window sets `{s^(k+1)}`.
pub fn ict_singletons(sft: &Sft, k: u32) -> Result<Vec<WindowSet>> {
    let lang = sft.language(k as usize + 2)?;
    let mut out = Vec::new();
    for s in sft.alphabet().symbols() {
        if lang.contains(&Word::repeated(s, k as usize + 2)) {
            let words = [Word::repeated(s, k as usize + 1)].into_iter().collect();
            out.push(WindowSet::new(
                sft.alphabet().clone(),
                k as usize + 1,
                words,
            )?);
        }
    }
    Ok(out)
}

/// True iff every word of `w` lies in one strongly connected component of
/// the ambient block graph at the same resolution: chains run through the
/// ambient subshift, not through `w`.
pub fn chain_component_check(w: &WindowSet, ambient: &Sft, k: u32) -> Result<bool> {
    let len = k as usize + 1;
    if w.len() != len {
        return Err(Error::Invalid(format!(
            "window length {} does not match resolution k={k}",
            w.len()
        )));
    }
    let lang = ambient.language(len)?;
    if !w.words().is_subset(&lang) {
        return Err(Error::Invalid(
            "window set leaves the ambient language".into(),
        ));
    }
    if w.is_empty() {
        return Ok(true);
    }
    let g = block_graph(&lang, len, Some(&ambient.language(len + 1)?))?;
    let sccs = g.sccs();
    let comp_of = |word: &Word| -> usize {
        let idx = g.vertex_index(word).expect("word in ambient language");
        sccs.iter()
            .position(|c| c.binary_search(&idx).is_ok())
            .unwrap()
    };
    let mut comps = w.words().iter().map(comp_of);
    let first = comps.next().unwrap();
    Ok(comps.all(|c| c == first))
}

/// Which index convention relates window length to resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sidedness {
    /// Agreement at resolution k means equal (k+1)-window sets.
    OneSided,
    /// Agreement at resolution k means equal (2k+1)-window sets.
    TwoSided,
}

impl Sidedness {
    pub fn window_len(self, k: u32) -> usize {
        match self {
            Sidedness::OneSided => k as usize + 1,
            Sidedness::TwoSided => 2 * k as usize + 1,
        }
    }
}

/// Dyadic upper bound on the Hausdorff distance between the sets presented
/// by two specs: `0` when the window projections agree at every resolution
/// up to `k_max`, otherwise `2^-k*` for the largest resolution `k*` with
/// agreement (`1` when they disagree already at resolution 0). Symmetric in
/// its arguments.
pub fn window_hausdorff(
    alphabet: &Arc<Alphabet>,
    a: &SetSpec,
    b: &SetSpec,
    k_max: u32,
    side: Sidedness,
) -> Result<Dyadic> {
    for k in 0..=k_max {
        let len = side.window_len(k);
        let wa = a.windows(alphabet, len)?;
        let wb = b.windows(alphabet, len)?;
        if wa.words() != wb.words() {
            return Ok(if k == 0 {
                Dyadic::Pow(0)
            } else {
                Dyadic::Pow(k - 1)
            });
        }
    }
    Ok(Dyadic::Zero)
}
