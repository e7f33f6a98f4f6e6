use super::graph::{block_graph, BlockGraph};
use super::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::sync::Arc;

const ENUMERATION_CAP: usize = 1 << 22;

/// A shift of finite type given by its forbidden words.
///
/// Construction derives the memory, builds the de Bruijn graph on context
/// words and trims it to the bi-essential part, so that [`Sft::language`]
/// reports exactly the factors of bi-infinite admissible sequences. Symbols
/// occurring in no such sequence are pruned and reported.
#[derive(Debug, Clone)]
pub struct Sft {
    alphabet: Arc<Alphabet>,
    forbidden: BTreeSet<Word>,
    memory: usize,
    context: usize,
    core: BlockGraph,
    pruned: Vec<Symbol>,
}

impl Sft {
    pub fn from_forbidden(alphabet: Arc<Alphabet>, forbidden: BTreeSet<Word>) -> Result<Sft> {
        if forbidden.iter().any(Word::is_empty) {
            return Err(Error::Invalid("forbidden words must be nonempty".into()));
        }
        let memory = forbidden.iter().map(Word::len).max().unwrap_or(1) - 1;
        let context = memory.max(1);
        let admissible = |w: &Word| !forbidden.iter().any(|f| w.contains_factor(f));
        let vertices = enumerate_words(&alphabet, context, &admissible)?;
        let fuse = enumerate_words(&alphabet, context + 1, &admissible)?;
        let (vertices, fuse) = trim_bi_essential(vertices, fuse, context);
        if vertices.is_empty() {
            return Err(Error::EmptySubshift);
        }
        let core = block_graph(&vertices, context, Some(&fuse))?;
        let pruned = alphabet
            .symbols()
            .filter(|s| !vertices.iter().any(|v| v.symbols().contains(s)))
            .collect();
        Ok(Sft {
            alphabet,
            forbidden,
            memory,
            context,
            core,
            pruned,
        })
    }

    /// SFT whose admissible `len`-words are exactly `allowed` (everything
    /// else of that length is forbidden).
    pub fn from_allowed(
        alphabet: Arc<Alphabet>,
        len: usize,
        allowed: &BTreeSet<Word>,
    ) -> Result<Sft> {
        let all = enumerate_words(&alphabet, len, &|_| true)?;
        let forbidden: BTreeSet<Word> = all.difference(allowed).cloned().collect();
        Sft::from_forbidden(alphabet, forbidden)
    }

    /// The full shift over `alphabet`.
    pub fn full_shift(alphabet: Arc<Alphabet>) -> Sft {
        Sft::from_forbidden(alphabet, BTreeSet::new()).expect("full shift is nonempty")
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &BTreeSet<Word> {
        &self.forbidden
    }

    /// Memory m: length of the longest forbidden word minus one (0 for the
    /// full shift). Any word whose (m+1)-factors are admissible is
    /// admissible.
    pub fn memory(&self) -> usize {
        self.memory
    }

    /// Symbols that occur in no bi-infinite admissible sequence.
    pub fn pruned_symbols(&self) -> &[Symbol] {
        &self.pruned
    }

    /// Trimmed de Bruijn core on context words.
    pub fn core(&self) -> &BlockGraph {
        &self.core
    }

    pub fn context(&self) -> usize {
        self.context
    }

    /// True iff `w` avoids every forbidden factor. This is weaker than
    /// occurring in a bi-infinite point; see [`Sft::language`].
    pub fn is_admissible(&self, w: &Word) -> bool {
        !self.forbidden.iter().any(|f| w.contains_factor(f))
    }

    /// The words of length `len` occurring in bi-infinite admissible
    /// sequences.
    pub fn language(&self, len: usize) -> Result<BTreeSet<Word>> {
        if len == 0 {
            return Err(Error::Invalid("language length must be >= 1".into()));
        }
        let t = self.context;
        if len <= t {
            let mut out = BTreeSet::new();
            for v in self.core.vertices() {
                out.extend(v.factors(len));
            }
            return Ok(out);
        }
        // depth-first extension of every context vertex by len - t edges
        let mut out = BTreeSet::new();
        let mut stack: Vec<(usize, Word)> = self
            .core
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, w)| (i, w.clone()))
            .collect();
        while let Some((v, word)) = stack.pop() {
            if out.len().saturating_mul(len) > ENUMERATION_CAP {
                return Err(Error::Invalid(format!(
                    "language at length {len} is too large"
                )));
            }
            if word.len() == len {
                out.insert(word);
                continue;
            }
            for &w in self.core.successors(v) {
                let mut next = word.clone();
                next.push(self.core.vertices()[w].symbols()[t - 1]);
                stack.push((w, next));
            }
        }
        Ok(out)
    }

    /// Serialise in the text format: alphabet line, then one forbidden word
    /// per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.alphabet);
        for f in &self.forbidden {
            out.push_str(&self.alphabet.fmt_word(f));
            out.push('\n');
        }
        out
    }

    /// Parse the text format. Blank lines and lines starting with `#` are
    /// skipped; parse failures carry 1-based line numbers.
    pub fn parse(text: &str) -> Result<Sft> {
        let mut alphabet: Option<Arc<Alphabet>> = None;
        let mut forbidden = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match &alphabet {
                None => {
                    let names: Vec<String> = line.split_whitespace().map(String::from).collect();
                    alphabet = Some(Alphabet::new(names).map_err(|e| Error::Parse {
                        line: idx + 1,
                        msg: e.to_string(),
                    })?);
                }
                Some(ab) => {
                    let w = ab.parse_word(line).map_err(|e| Error::Parse {
                        line: idx + 1,
                        msg: e.to_string(),
                    })?;
                    if w.is_empty() {
                        return Err(Error::Parse {
                            line: idx + 1,
                            msg: "empty forbidden word".into(),
                        });
                    }
                    forbidden.insert(w);
                }
            }
        }
        let alphabet = alphabet.ok_or(Error::Parse {
            line: 1,
            msg: "missing alphabet line".into(),
        })?;
        Sft::from_forbidden(alphabet, forbidden)
    }
}

fn enumerate_words(
    alphabet: &Alphabet,
    len: usize,
    keep: &dyn Fn(&Word) -> bool,
) -> Result<BTreeSet<Word>> {
    let count = alphabet.len().checked_pow(len as u32).unwrap_or(usize::MAX);
    if count > ENUMERATION_CAP {
        return Err(Error::Invalid(format!(
            "cannot enumerate words of length {len}"
        )));
    }
    let mut out = BTreeSet::new();
    let mut cur = vec![Symbol(0); len];
    loop {
        let w = Word::new(cur.clone());
        if keep(&w) {
            out.insert(w);
        }
        // odometer increment
        let mut i = len;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if (cur[i].0 as usize) + 1 < alphabet.len() {
                cur[i].0 += 1;
                break;
            }
            cur[i].0 = 0;
        }
    }
}

/// Iteratively remove context words with no admissible predecessor or
/// successor, and fuse words touching removed contexts, until stable. What
/// survives is exactly the set of words on bi-infinite admissible paths.
fn trim_bi_essential(
    mut vertices: BTreeSet<Word>,
    mut fuse: BTreeSet<Word>,
    t: usize,
) -> (BTreeSet<Word>, BTreeSet<Word>) {
    loop {
        fuse.retain(|f| vertices.contains(&f.prefix(t)) && vertices.contains(&f.suffix(t)));
        let keep: BTreeSet<Word> = vertices
            .iter()
            .filter(|v| {
                let has_out = fuse.iter().any(|f| &f.prefix(t) == *v);
                let has_in = fuse.iter().any(|f| &f.suffix(t) == *v);
                has_out && has_in
            })
            .cloned()
            .collect();
        if keep.len() == vertices.len() {
            return (vertices, fuse);
        }
        vertices = keep;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn golden_mean() -> Sft {
        Sft::parse("0 1\n11").unwrap()
    }

    #[test]
    fn golden_mean_memory_and_language() {
        let sft = golden_mean();
        assert_eq!(sft.memory(), 1);
        assert!(sft.pruned_symbols().is_empty());
        let ab = sft.alphabet().clone();
        let l2: Vec<String> = sft
            .language(2)
            .unwrap()
            .iter()
            .map(|w| ab.fmt_word(w))
            .collect();
        assert_eq!(l2, vec!["00", "01", "10"]);
        // Fibonacci counts 2, 3, 5, 8
        let sizes: Vec<usize> = (1..=4).map(|l| sft.language(l).unwrap().len()).collect();
        assert_eq!(sizes, vec![2, 3, 5, 8]);
    }

    #[test]
    fn one_symbol_full_shift() {
        let ab = Alphabet::of_chars("0");
        let sft = Sft::from_forbidden(ab, BTreeSet::new()).unwrap();
        assert_eq!(sft.memory(), 0);
        assert_eq!(sft.language(3).unwrap().len(), 1);
    }

    #[test]
    fn everything_forbidden_is_empty() {
        let ab = Alphabet::of_chars("01");
        let forbidden: BTreeSet<Word> = [ab.parse_word("0").unwrap(), ab.parse_word("1").unwrap()]
            .into_iter()
            .collect();
        match Sft::from_forbidden(ab, forbidden) {
            Err(Error::EmptySubshift) => {}
            other => panic!("expected empty subshift, got {other:?}"),
        }
    }

    #[test]
    fn full_two_shift_language_sizes() {
        let ab = Alphabet::of_chars("01");
        let sft = Sft::full_shift(ab);
        assert_eq!(sft.language(3).unwrap().len(), 8);
        let sizes: Vec<usize> = (1..=3).map(|l| sft.language(l).unwrap().len()).collect();
        assert_eq!(sizes, vec![2, 4, 8]);
    }

    #[test]
    fn forbidden_10_keeps_heads_and_tails() {
        // "10" never occurs: 0^inf, 1^inf and 0^k 1^inf survive
        let sft = Sft::parse("0 1\n10").unwrap();
        let ab = sft.alphabet().clone();
        let l2: Vec<String> = sft
            .language(2)
            .unwrap()
            .iter()
            .map(|w| ab.fmt_word(w))
            .collect();
        assert_eq!(l2, vec!["00", "01", "11"]);
    }

    #[test]
    fn dead_symbol_is_pruned() {
        // 2 can appear at most once in any sequence, never in a bi-infinite
        // point of the subshift where "2" leads nowhere
        let sft = Sft::parse("0 1 2\n22\n20\n21\n02\n12").unwrap();
        assert_eq!(sft.pruned_symbols().len(), 1);
        let ab = sft.alphabet().clone();
        assert!(!sft
            .language(1)
            .unwrap()
            .contains(&ab.parse_word("2").unwrap()));
    }

    #[test]
    fn parse_error_carries_line_number() {
        match Sft::parse("0 1\n12") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
