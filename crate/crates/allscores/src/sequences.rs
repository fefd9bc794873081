//! Symbols, sequences and the NextMatch/PrevMatch machinery.
//!
//! Positions are 1-based throughout: a sequence of length `n` occupies
//! positions `1..=n`, and match queries accept positions `0..=n`. The
//! sentinels "+inf" / "-inf" are represented out of band as `None`; a
//! `Some(p)` always satisfies `1 <= p <= n`, so no arithmetic is ever done
//! on a sentinel.

use crate::error::{Error, Result};

/// A fixed, ordered set of symbols. Sized at construction; every sequence
/// and match table built over it rejects foreign symbols at ingestion.
#[derive(Debug, Clone)]
pub struct Alphabet {
    symbols: Vec<u8>,
    index: Box<[i16; 256]>,
}

impl Alphabet {
    pub fn new(symbols: &[u8]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must not be empty".into()));
        }
        let mut index = Box::new([-1i16; 256]);
        for (i, &s) in symbols.iter().enumerate() {
            if index[s as usize] >= 0 {
                return Err(Error::InvalidAlphabet(format!(
                    "duplicate symbol {:?}",
                    s as char
                )));
            }
            index[s as usize] = i as i16;
        }
        Ok(Alphabet {
            symbols: symbols.to_vec(),
            index,
        })
    }

    /// ASCII lowercase `a..=z`, the default alphabet of the CLI.
    pub fn lowercase() -> Self {
        Alphabet::new(&(b'a'..=b'z').collect::<Vec<_>>()).unwrap()
    }

    /// The first `k` lowercase letters; handy for small-alphabet fuzzing.
    pub fn lowercase_prefix(k: usize) -> Result<Self> {
        if k == 0 || k > 26 {
            return Err(Error::InvalidAlphabet(format!("size {k} not in 1..=26")));
        }
        Alphabet::new(&(b'a'..b'a' + k as u8).collect::<Vec<_>>())
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn contains(&self, sym: u8) -> bool {
        self.index[sym as usize] >= 0
    }

    /// Dense index of `sym`, or an ingestion error.
    pub fn index_of(&self, sym: u8) -> Result<usize> {
        let i = self.index[sym as usize];
        if i < 0 {
            Err(Error::SymbolNotInAlphabet(sym as char))
        } else {
            Ok(i as usize)
        }
    }
}

/// An indexed string over an [`Alphabet`], positions `1..=len`.
///
/// The substring convention follows the half-open form `S[i..j]` =
/// positions `i+1..=j`, so `S[i..i]` is empty.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Sequence {
    symbols: Vec<u8>,
}

impl Sequence {
    pub fn from_bytes(bytes: &[u8], alphabet: &Alphabet) -> Result<Self> {
        for &b in bytes {
            if !alphabet.contains(b) {
                return Err(Error::SymbolNotInAlphabet(b as char));
            }
        }
        Ok(Sequence {
            symbols: bytes.to_vec(),
        })
    }

    pub fn empty() -> Self {
        Sequence::default()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbol at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> u8 {
        self.symbols[pos - 1]
    }

    pub fn push_back(&mut self, sym: u8) {
        self.symbols.push(sym);
    }

    pub fn bytes(&self) -> &[u8] {
        &self.symbols
    }

    pub fn reversed(&self) -> Sequence {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Sequence { symbols }
    }
}

fn check_pos(pos: usize, len: usize) -> Result<()> {
    if pos > len {
        Err(Error::PositionOutOfRange { pos, max: len })
    } else {
        Ok(())
    }
}

/// Minimum position `i' > i` with `s[i'] == sym`, or `None` for "+inf".
pub fn next_match(i: usize, sym: u8, s: &Sequence) -> Result<Option<usize>> {
    check_pos(i, s.len())?;
    Ok((i + 1..=s.len()).find(|&p| s.at(p) == sym))
}

/// Maximum position `j' <= j` with `s[j'] == sym`, or `None` for "-inf".
pub fn prev_match(j: usize, sym: u8, s: &Sequence) -> Result<Option<usize>> {
    check_pos(j, s.len())?;
    Ok((1..=j).rev().find(|&p| s.at(p) == sym))
}

/// Precomputed NextMatch/PrevMatch tables for a fixed sequence.
///
/// `next[i][c]` and `prev[i][c]` are indexed by position `0..=n` and dense
/// symbol index `c`; both columns are non-decreasing in the position.
#[derive(Debug, Clone)]
pub struct StaticMatchTables {
    alphabet: Alphabet,
    next: Vec<Vec<Option<usize>>>,
    prev: Vec<Vec<Option<usize>>>,
}

impl StaticMatchTables {
    pub fn len(&self) -> usize {
        self.prev.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn next_match(&self, i: usize, sym: u8) -> Result<Option<usize>> {
        check_pos(i, self.len())?;
        Ok(self.next[i][self.alphabet.index_of(sym)?])
    }

    pub fn prev_match(&self, j: usize, sym: u8) -> Result<Option<usize>> {
        check_pos(j, self.len())?;
        Ok(self.prev[j][self.alphabet.index_of(sym)?])
    }
}

/// Build both lookup tables in one left-to-right and one right-to-left pass;
/// each (position, symbol) pair is written exactly once.
pub fn build_static_tables(s: &Sequence, alphabet: &Alphabet) -> StaticMatchTables {
    let n = s.len();
    let k = alphabet.size();
    let mut prev = vec![vec![None; k]; n + 1];
    for i in 1..=n {
        prev[i] = prev[i - 1].clone();
        let c = alphabet.index_of(s.at(i)).expect("sequence over alphabet");
        prev[i][c] = Some(i);
    }
    let mut next = vec![vec![None; k]; n + 1];
    for i in (0..n).rev() {
        next[i] = next[i + 1].clone();
        let c = alphabet.index_of(s.at(i + 1)).expect("sequence over alphabet");
        next[i][c] = Some(i + 1);
    }
    StaticMatchTables {
        alphabet: alphabet.clone(),
        next,
        prev,
    }
}

/// Growable match tables for a sequence that is extended by appends.
///
/// `prev_rows[i]` holds the full PrevMatch row for position `i`. The
/// NextMatch side stores one row per position but only the cells at row 0
/// and at rows `i` with `s[i] == sym` are meaningful; a query goes through
/// [`DynamicMatchTables::next_match`], which resolves via PrevMatch first.
/// Appending a symbol touches one existing cell plus the two appended rows.
#[derive(Debug, Clone)]
pub struct DynamicMatchTables {
    alphabet: Alphabet,
    prev_rows: Vec<Vec<Option<usize>>>,
    next_rows: Vec<Vec<Option<usize>>>,
}

impl DynamicMatchTables {
    pub fn new(alphabet: Alphabet) -> Self {
        let k = alphabet.size();
        DynamicMatchTables {
            alphabet,
            prev_rows: vec![vec![None; k]],
            next_rows: vec![vec![None; k]],
        }
    }

    /// Build tables already consistent with `s`.
    pub fn from_sequence(s: &Sequence, alphabet: &Alphabet) -> Result<Self> {
        let mut t = DynamicMatchTables::new(alphabet.clone());
        for p in 1..=s.len() {
            t.append(s.at(p))?;
        }
        Ok(t)
    }

    /// Current sequence length.
    pub fn len(&self) -> usize {
        self.prev_rows.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Extend the underlying sequence by `sym`. O(|alphabet|).
    pub fn append(&mut self, sym: u8) -> Result<()> {
        let c = self.alphabet.index_of(sym)?;
        let n = self.len();
        let mut row = self.prev_rows[n].clone();
        row[c] = Some(n + 1);
        self.prev_rows.push(row);
        // Back-patch NextMatch at the previous occurrence (row 0 if none).
        let patch = self.prev_rows[n][c].unwrap_or(0);
        self.next_rows[patch][c] = Some(n + 1);
        self.next_rows.push(vec![None; self.alphabet.size()]);
        Ok(())
    }

    pub fn prev_match(&self, j: usize, sym: u8) -> Result<Option<usize>> {
        check_pos(j, self.len())?;
        Ok(self.prev_rows[j][self.alphabet.index_of(sym)?])
    }

    /// NextMatch in O(1): `next_rows[max(0, PrevMatch(i, sym))][sym]`.
    pub fn next_match(&self, i: usize, sym: u8) -> Result<Option<usize>> {
        check_pos(i, self.len())?;
        let c = self.alphabet.index_of(sym)?;
        let anchor = self.prev_rows[i][c].unwrap_or(0);
        Ok(self.next_rows[anchor][c])
    }
}

/// Constant-time NextMatch/PrevMatch access used by the incremental scans.
///
/// Implemented by [`DynamicMatchTables`] directly and by [`ReversedTables`],
/// which serves queries about `rev(S)` from tables built over `S`.
pub trait MatchOracle {
    fn len(&self) -> usize;
    fn next_match(&self, i: usize, sym: u8) -> Option<usize>;
    fn prev_match(&self, j: usize, sym: u8) -> Option<usize>;
}

impl MatchOracle for DynamicMatchTables {
    fn len(&self) -> usize {
        DynamicMatchTables::len(self)
    }

    fn next_match(&self, i: usize, sym: u8) -> Option<usize> {
        DynamicMatchTables::next_match(self, i, sym).expect("position in range")
    }

    fn prev_match(&self, j: usize, sym: u8) -> Option<usize> {
        DynamicMatchTables::prev_match(self, j, sym).expect("position in range")
    }
}

/// Match queries over `rev(S)` answered by tables kept for `S`.
///
/// With `n = |S|`, position `q` of `rev(S)` holds `S[n+1-q]`, so a NextMatch
/// over the reversal is a PrevMatch over the original and vice versa.
pub struct ReversedTables<'a>(pub &'a DynamicMatchTables);

impl MatchOracle for ReversedTables<'_> {
    fn len(&self) -> usize {
        self.0.len()
    }

    fn next_match(&self, i: usize, sym: u8) -> Option<usize> {
        let n = self.0.len();
        self.0
            .prev_match(n - i, sym)
            .expect("position in range")
            .map(|p| n + 1 - p)
    }

    fn prev_match(&self, j: usize, sym: u8) -> Option<usize> {
        let n = self.0.len();
        self.0
            .next_match(n - j, sym)
            .expect("position in range")
            .map(|p| n + 1 - p)
    }
}
