//! Word algebra for the abstract free group and the free Abelian group over
//! a finite labelled point set.
//!
//! Letters refer to points by dense index; labels live with the space and
//! are only needed for parsing and display.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use itertools::Itertools;

use crate::error::{Error, Result};

/// A point of the underlying space, by index into its label table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub usize);

/// A symbol of the alphabet `X ∪ {e} ∪ X⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Pos(Point),
    Neg(Point),
    Neutral,
}

impl Letter {
    pub fn pos(i: usize) -> Letter {
        Letter::Pos(Point(i))
    }

    pub fn neg(i: usize) -> Letter {
        Letter::Neg(Point(i))
    }

    pub fn inverse(self) -> Letter {
        match self {
            Letter::Pos(p) => Letter::Neg(p),
            Letter::Neg(p) => Letter::Pos(p),
            Letter::Neutral => Letter::Neutral,
        }
    }

    pub fn point(self) -> Option<Point> {
        match self {
            Letter::Pos(p) | Letter::Neg(p) => Some(p),
            Letter::Neutral => None,
        }
    }

    /// True for `x, x⁻¹` and `x⁻¹, x`; never for the neutral letter.
    pub fn cancels_with(self, other: Letter) -> bool {
        self != Letter::Neutral && self.inverse() == other
    }

    pub fn display<'a>(&self, labels: &'a [String]) -> LetterDisplay<'a> {
        LetterDisplay {
            letter: *self,
            labels,
        }
    }
}

pub struct LetterDisplay<'a> {
    letter: Letter,
    labels: &'a [String],
}

impl fmt::Display for LetterDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = |p: Point| {
            self.labels
                .get(p.0)
                .cloned()
                .unwrap_or_else(|| format!("x{}", p.0))
        };
        match self.letter {
            Letter::Pos(p) => write!(f, "{}", label(p)),
            Letter::Neg(p) => write!(f, "{}^-1", label(p)),
            Letter::Neutral => write!(f, "e"),
        }
    }
}

/// Checks that labels are usable in the token syntax: unique, nonempty,
/// free of whitespace and `^`, and distinct from the neutral token `e`.
pub fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for label in labels {
        if label.is_empty() || label == "e" || label.contains('^') || label.contains(char::is_whitespace) {
            return Err(Error::InvalidLabels(format!("`{label}` cannot be used as a point label")));
        }
        if !seen.insert(label.as_str()) {
            return Err(Error::InvalidLabels(format!("duplicate label `{label}`")));
        }
    }
    Ok(())
}

pub fn label_index(labels: &[String], label: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

/// A word over `X ∪ {e} ∪ X⁻¹`.
///
/// Equality and hashing go through the reduced form, so two words are equal
/// exactly when they represent the same group element. The raw letter
/// sequence is still available for padded witnesses.
#[derive(Clone, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
    reduced: bool,
}

impl Word {
    pub fn identity() -> Word {
        Word {
            letters: Vec::new(),
            reduced: true,
        }
    }

    /// Keeps the sequence exactly as given.
    pub fn from_letters(letters: Vec<Letter>) -> Word {
        let reduced = is_reduced_sequence(&letters);
        Word { letters, reduced }
    }

    pub fn letter(letter: Letter) -> Word {
        Word::from_letters(vec![letter])
    }

    /// Parses whitespace-separated tokens: `a`, `a^-1` or `e`.
    pub fn parse(text: &str, labels: &[String]) -> Result<Word> {
        let letters = text
            .split_whitespace()
            .map(|token| parse_token(token, labels))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::from_letters(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// True when the word reduces to the neutral element.
    pub fn is_identity(&self) -> bool {
        self.reduce().is_empty()
    }

    /// Free reduction with a single stack pass; neutral letters vanish.
    pub fn reduce(&self) -> Word {
        if self.reduced {
            return self.clone();
        }
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &letter in &self.letters {
            if letter == Letter::Neutral {
                continue;
            }
            match stack.last() {
                Some(&top) if top.cancels_with(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Word {
            letters: stack,
            reduced: true,
        }
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            letters,
            reduced: false,
        }
        .reduce()
    }

    pub fn invert(&self) -> Word {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        Word {
            letters,
            reduced: self.reduced,
        }
    }

    /// `w g w⁻¹`, reduced.
    pub fn conjugate_by(&self, w: &Word) -> Word {
        w.multiply(self).multiply(&w.invert())
    }

    pub fn abelianize(&self) -> AbelianWord {
        let mut coeffs = BTreeMap::new();
        for letter in &self.letters {
            match *letter {
                Letter::Pos(p) => *coeffs.entry(p).or_insert(0) += 1,
                Letter::Neg(p) => *coeffs.entry(p).or_insert(0) -= 1,
                Letter::Neutral => {}
            }
        }
        AbelianWord::from_map(coeffs)
    }

    /// No adjacent `u, u⁻¹` or `u⁻¹, u`; neutral letters may appear anywhere.
    pub fn is_almost_irreducible(&self) -> bool {
        self.letters
            .iter()
            .tuple_windows()
            .all(|(a, b)| !a.cancels_with(*b))
    }

    /// All words of length exactly `2n` obtained by inserting neutral letters
    /// into this (reduced, nonempty) word, in lexicographic order of the
    /// inserted positions.
    pub fn enumerate_paddings(&self, n: usize) -> Result<Paddings> {
        if !self.reduced || self.letters.contains(&Letter::Neutral) {
            let (i, j) = first_cancellation(&self.letters).unwrap_or((0, 0));
            return Err(Error::NotReduced(i, j));
        }
        if n == 0 || 2 * n < self.letters.len() {
            return Err(Error::PaddingTooShort {
                n,
                len: self.letters.len(),
            });
        }
        Ok(Paddings::new(self.letters.clone(), 2 * n))
    }

    pub fn display<'a>(&'a self, labels: &'a [String]) -> WordDisplay<'a> {
        WordDisplay {
            letters: &self.letters,
            labels,
        }
    }
}

fn parse_token(token: &str, labels: &[String]) -> Result<Letter> {
    if token == "e" {
        return Ok(Letter::Neutral);
    }
    if let Some((base, exp)) = token.split_once('^') {
        let idx = label_index(labels, base)?;
        return match exp {
            "-1" => Ok(Letter::neg(idx)),
            "1" => Ok(Letter::pos(idx)),
            _ => Err(Error::Parse(format!("unsupported exponent in token `{token}`"))),
        };
    }
    Ok(Letter::pos(label_index(labels, token)?))
}

fn is_reduced_sequence(letters: &[Letter]) -> bool {
    !letters.contains(&Letter::Neutral) && first_cancellation(letters).is_none()
}

fn first_cancellation(letters: &[Letter]) -> Option<(usize, usize)> {
    letters
        .iter()
        .tuple_windows()
        .position(|(a, b)| a.cancels_with(*b))
        .map(|i| (i, i + 1))
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        if self.reduced && other.reduced {
            return self.letters == other.letters;
        }
        self.reduce().letters == other.reduce().letters
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.reduce().letters.hash(state);
    }
}

pub struct WordDisplay<'a> {
    letters: &'a [Letter],
    labels: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", letter.display(self.labels))?;
        }
        Ok(())
    }
}

/// Iterator over the neutral paddings of a reduced word.
#[derive(Debug)]
pub struct Paddings {
    letters: Vec<Letter>,
    combos: itertools::Combinations<std::ops::Range<usize>>,
}

impl Paddings {
    fn new(letters: Vec<Letter>, total: usize) -> Paddings {
        let pads = total - letters.len();
        Paddings {
            letters,
            combos: (0..total).combinations(pads),
        }
    }
}

impl Iterator for Paddings {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let positions = self.combos.next()?;
        let total = self.letters.len() + positions.len();
        let mut out = Vec::with_capacity(total);
        let mut source = self.letters.iter();
        let mut pads = positions.iter().peekable();
        for i in 0..total {
            if pads.peek() == Some(&&i) {
                pads.next();
                out.push(Letter::Neutral);
            } else {
                out.push(*source.next().expect("letter count matches"));
            }
        }
        Some(Word::from_letters(out))
    }
}

/// An element `m₁x₁ + ⋯ + mₙxₙ` of the free Abelian group; the coefficient
/// map is its normal form (zero coefficients are never stored).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianWord {
    coeffs: BTreeMap<Point, i64>,
}

impl AbelianWord {
    pub fn neutral() -> AbelianWord {
        AbelianWord::default()
    }

    pub fn from_map(mut coeffs: BTreeMap<Point, i64>) -> AbelianWord {
        coeffs.retain(|_, m| *m != 0);
        AbelianWord { coeffs }
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (usize, i64)>) -> AbelianWord {
        let mut coeffs = BTreeMap::new();
        for (p, m) in pairs {
            *coeffs.entry(Point(p)).or_insert(0) += m;
        }
        AbelianWord::from_map(coeffs)
    }

    pub fn generator(p: usize) -> AbelianWord {
        AbelianWord::from_coeffs([(p, 1)])
    }

    /// Parses a JSON coefficient map such as `{"a": -1, "b": 1}`.
    pub fn parse_json(text: &str, labels: &[String]) -> Result<AbelianWord> {
        let map: BTreeMap<String, i64> = serde_json::from_str(text)?;
        let pairs = map
            .into_iter()
            .map(|(label, m)| Ok((label_index(labels, &label)?, m)))
            .collect::<Result<Vec<_>>>()?;
        Ok(AbelianWord::from_coeffs(pairs))
    }

    pub fn coeffs(&self) -> &BTreeMap<Point, i64> {
        &self.coeffs
    }

    pub fn coeff(&self, p: Point) -> i64 {
        self.coeffs.get(&p).copied().unwrap_or(0)
    }

    pub fn is_neutral(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Σ |mᵢ|`.
    pub fn len(&self) -> usize {
        self.coeffs.values().map(|m| m.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &AbelianWord) -> AbelianWord {
        let mut coeffs = self.coeffs.clone();
        for (&p, &m) in &other.coeffs {
            *coeffs.entry(p).or_insert(0) += m;
        }
        AbelianWord::from_map(coeffs)
    }

    pub fn neg(&self) -> AbelianWord {
        AbelianWord {
            coeffs: self.coeffs.iter().map(|(&p, &m)| (p, -m)).collect(),
        }
    }

    pub fn sub(&self, other: &AbelianWord) -> AbelianWord {
        self.add(&other.neg())
    }

    /// The `l` signed letters of the normal form, points in index order.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.len());
        for (&p, &m) in &self.coeffs {
            let letter = if m > 0 { Letter::Pos(p) } else { Letter::Neg(p) };
            out.extend(std::iter::repeat_n(letter, m.unsigned_abs() as usize));
        }
        out
    }

    pub fn to_json(&self, labels: &[String]) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(p, m)| (labels[p.0].clone(), serde_json::Value::from(*m)))
            .collect();
        serde_json::Value::Object(map)
    }
}
