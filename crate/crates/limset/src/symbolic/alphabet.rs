use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Index of a symbol within its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u8);

/// A finite ordered alphabet.
///
/// The ordering of `names` is total and fixed; it drives every canonical
/// serialisation (sorted window lists, lexicographically least base words,
/// first-cycle completions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    single_char: bool,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Arc<Alphabet>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Invalid(
                "alphabet must have at least one symbol".into(),
            ));
        }
        if names.len() > 255 {
            return Err(Error::Invalid("alphabet too large".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || a.contains(',') || a.contains(char::is_whitespace) {
                return Err(Error::Invalid(format!("bad symbol name `{a}`")));
            }
            if names[..i].contains(a) {
                return Err(Error::Invalid(format!("duplicate symbol `{a}`")));
            }
        }
        let single_char = names.iter().all(|n| n.chars().count() == 1);
        Ok(Arc::new(Alphabet { names, single_char }))
    }

    /// Convenience constructor for the common single-character case.
    pub fn of_chars(chars: &str) -> Arc<Alphabet> {
        Alphabet::new(chars.chars().map(String::from).collect()).expect("valid alphabet")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len()).map(|i| Symbol(i as u8))
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.0 as usize]
    }

    pub fn lookup(&self, name: &str) -> Result<Symbol> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Symbol(i as u8))
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// Words print as juxtaposed characters when every symbol is a single
    /// character and comma-separated otherwise.
    pub fn single_char(&self) -> bool {
        self.single_char
    }

    pub fn fmt_word(&self, word: &[Symbol]) -> String {
        if self.single_char {
            word.iter().map(|&s| self.name(s)).collect()
        } else {
            word.iter()
                .map(|&s| self.name(s))
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<super::Word> {
        let mut syms = Vec::new();
        if self.single_char {
            for ch in text.chars() {
                syms.push(self.lookup(&ch.to_string())?);
            }
        } else if !text.is_empty() {
            for part in text.split(',') {
                syms.push(self.lookup(part)?);
            }
        }
        Ok(super::Word::new(syms))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(" "))
    }
}
