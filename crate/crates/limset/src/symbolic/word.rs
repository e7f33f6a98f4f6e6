use super::Symbol;
use std::ops::Deref;

/// A finite sequence of symbols (possibly empty).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(syms: Vec<Symbol>) -> Word {
        Word(syms)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn repeated(sym: Symbol, n: usize) -> Word {
        Word(vec![sym; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.factor(0, len.min(self.len()))
    }

    pub fn suffix(&self, len: usize) -> Word {
        let len = len.min(self.len());
        self.factor(self.len() - len, len)
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    /// True iff `needle` occurs as a factor.
    pub fn contains_factor(&self, needle: &Word) -> bool {
        if needle.is_empty() {
            return true;
        }
        if needle.len() > self.len() {
            return false;
        }
        self.0.windows(needle.len()).any(|w| w == needle.symbols())
    }

    /// All distinct factors of the given length, in sorted order.
    pub fn factors(&self, len: usize) -> std::collections::BTreeSet<Word> {
        let mut out = std::collections::BTreeSet::new();
        if len == 0 || len > self.len() {
            return out;
        }
        for w in self.0.windows(len) {
            out.insert(Word(w.to_vec()));
        }
        out
    }
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use crate::symbolic::Alphabet;

    #[test]
    fn factors_and_containment() {
        let ab = Alphabet::of_chars("01");
        let w = ab.parse_word("10100").unwrap();
        assert!(w.contains_factor(&ab.parse_word("010").unwrap()));
        assert!(!w.contains_factor(&ab.parse_word("11").unwrap()));
        let f2: Vec<String> = w.factors(2).iter().map(|x| ab.fmt_word(x)).collect();
        assert_eq!(f2, vec!["00", "01", "10"]);
    }
}
