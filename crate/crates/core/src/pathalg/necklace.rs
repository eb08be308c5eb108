use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::quiver::{Arrow, NcPoly, Path};
use crate::exactnum::{Matrix, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NecklaceError {
    #[error("letter {0} is not in alphabet {1}")]
    AlphabetMismatch(Letter, Alphabet),
    #[error("malformed word {0:?}")]
    BadWord(String),
}

/// Letters of the two-loop alphabets, ordered `a < b < a* < b*`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    A,
    B,
    AStar,
    BStar,
}

impl Letter {
    pub fn name(self) -> &'static str {
        match self {
            Letter::A => "a",
            Letter::B => "b",
            Letter::AStar => "a*",
            Letter::BStar => "b*",
        }
    }

    pub fn parse(s: &str) -> Option<Letter> {
        match s.trim() {
            "a" => Some(Letter::A),
            "b" => Some(Letter::B),
            "a*" => Some(Letter::AStar),
            "b*" => Some(Letter::BStar),
            _ => None,
        }
    }

    /// Exchange starred and unstarred letters.
    pub fn mirror(self) -> Letter {
        match self {
            Letter::A => Letter::AStar,
            Letter::B => Letter::BStar,
            Letter::AStar => Letter::A,
            Letter::BStar => Letter::B,
        }
    }

    pub fn is_starred(self) -> bool {
        matches!(self, Letter::AStar | Letter::BStar)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parse a compact word such as `aab` or `a*a*b*`.
pub fn parse_word(s: &str) -> Result<Vec<Letter>, NecklaceError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    while i < chars.len() {
        let starred = chars.get(i + 1) == Some(&'*');
        let letter = match (chars[i], starred) {
            ('a', false) => Letter::A,
            ('b', false) => Letter::B,
            ('a', true) => Letter::AStar,
            ('b', true) => Letter::BStar,
            _ => return Err(NecklaceError::BadWord(s.to_string())),
        };
        out.push(letter);
        i += if starred { 2 } else { 1 };
    }
    Ok(out)
}

pub fn word_to_string(w: &[Letter]) -> String {
    w.iter().map(|l| l.name()).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Alphabet {
    /// `{a, b}`
    Unstarred,
    /// `{a*, b*}`
    Starred,
    /// all four letters
    Full,
}

impl Alphabet {
    pub fn contains(self, l: Letter) -> bool {
        match self {
            Alphabet::Unstarred => !l.is_starred(),
            Alphabet::Starred => l.is_starred(),
            Alphabet::Full => true,
        }
    }

    pub fn mirror(self) -> Alphabet {
        match self {
            Alphabet::Unstarred => Alphabet::Starred,
            Alphabet::Starred => Alphabet::Unstarred,
            Alphabet::Full => Alphabet::Full,
        }
    }

    pub fn join(self, other: Alphabet) -> Alphabet {
        if self == other {
            self
        } else {
            Alphabet::Full
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Unstarred => "ab",
            Alphabet::Starred => "a*b*",
            Alphabet::Full => "aba*b*",
        }
    }

    pub fn parse(s: &str) -> Option<Alphabet> {
        match s.trim() {
            "ab" => Some(Alphabet::Unstarred),
            "a*b*" => Some(Alphabet::Starred),
            "aba*b*" | "full" => Some(Alphabet::Full),
            _ => None,
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Lexicographically minimal rotation.
pub fn canonical_rotation(w: &[Letter]) -> Vec<Letter> {
    let n = w.len();
    (0..n)
        .map(|s| w[s..].iter().chain(&w[..s]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Element of the free algebra on two (or four) letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreePoly<R> {
    terms: BTreeMap<Vec<Letter>, R>,
}

impl<R: Ring> Default for FreePoly<R> {
    fn default() -> Self {
        FreePoly::zero()
    }
}

impl<R: Ring> FreePoly<R> {
    pub fn zero() -> Self {
        FreePoly { terms: BTreeMap::new() }
    }

    pub fn word(w: Vec<Letter>) -> Self {
        FreePoly::from_terms([(R::one(), w)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (R, Vec<Letter>)>) -> Self {
        let mut out = FreePoly::zero();
        for (c, w) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn add_term(&mut self, w: Vec<Letter>, c: R) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&w) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(w, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Letter>, &R)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &R) -> Self {
        FreePoly::from_terms(self.terms.iter().map(|(w, x)| (x.clone() * c.clone(), w.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = FreePoly::zero();
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                out.add_term(u.iter().chain(v).copied().collect(), c.clone() * d.clone());
            }
        }
        out
    }

    /// Evaluate with each letter replaced by an `n×n` matrix; the empty word
    /// is the identity.
    pub fn eval_matrix<S>(&self, n: usize, mats: &impl Fn(Letter) -> Matrix<S>) -> Matrix<S>
    where
        S: Ring + From<R>,
    {
        let mut acc = Matrix::zeros(n, n);
        for (w, c) in &self.terms {
            let m = word_product(n, w, mats);
            acc = &acc + &m.scale(&S::from(c.clone()));
        }
        acc
    }
}

fn word_product<S: Ring>(n: usize, w: &[Letter], mats: &impl Fn(Letter) -> Matrix<S>) -> Matrix<S> {
    let mut it = w.iter();
    match it.next() {
        None => Matrix::identity(n),
        Some(&first) => it.fold(mats(first), |acc, &l| &acc * &mats(l)),
    }
}

impl<R: Ring + fmt::Display> fmt::Display for FreePoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms)
    }
}

fn write_terms<R: fmt::Display>(f: &mut fmt::Formatter<'_>, terms: &BTreeMap<Vec<Letter>, R>) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (w, c)) in terms.iter().enumerate() {
        if i > 0 {
            f.write_str(" + ")?;
        }
        let w = if w.is_empty() { "1".to_string() } else { word_to_string(w) };
        write!(f, "({c}){w}")?;
    }
    Ok(())
}

/// Combination of cyclic words modulo constants.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Necklace<R> {
    alphabet: Alphabet,
    terms: BTreeMap<Vec<Letter>, R>,
}

impl<R: Ring> Necklace<R> {
    pub fn zero(alphabet: Alphabet) -> Self {
        Necklace { alphabet, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        alphabet: Alphabet,
        terms: impl IntoIterator<Item = (R, Vec<Letter>)>,
    ) -> Result<Self, NecklaceError> {
        let mut out = Necklace::zero(alphabet);
        for (c, w) in terms {
            if let Some(&bad) = w.iter().find(|l| !alphabet.contains(**l)) {
                return Err(NecklaceError::AlphabetMismatch(bad, alphabet));
            }
            out.add_term(&w, c);
        }
        Ok(out)
    }

    /// Single cyclic word with unit coefficient; the alphabet is inferred.
    pub fn word(w: &[Letter]) -> Self {
        let alphabet = if w.iter().all(|l| !l.is_starred()) {
            Alphabet::Unstarred
        } else if w.iter().all(|l| l.is_starred()) {
            Alphabet::Starred
        } else {
            Alphabet::Full
        };
        let mut out = Necklace::zero(alphabet);
        out.add_term(w, R::one());
        out
    }

    /// Parse a compact word such as `aab`.
    pub fn parse(s: &str) -> Result<Self, NecklaceError> {
        Ok(Necklace::word(&parse_word(s)?))
    }

    fn add_term(&mut self, w: &[Letter], c: R) {
        if w.is_empty() || c.is_zero() {
            return;
        }
        let key = canonical_rotation(w);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Letter>, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Letter]) -> R {
        self.terms.get(&canonical_rotation(w)).cloned().unwrap_or_else(R::zero)
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Necklace::zero(self.alphabet);
        for (w, x) in &self.terms {
            out.add_term(w, x.clone() * c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-R::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.alphabet = self.alphabet.join(other.alphabet);
        for (w, c) in &other.terms {
            out.add_term(w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Relabel letters, with a sign per letter.
    pub fn map_letters(&self, alphabet: Alphabet, f: impl Fn(Letter) -> (Letter, bool)) -> Self {
        let mut out = Necklace::zero(alphabet);
        for (w, c) in &self.terms {
            let mut negate = false;
            let mapped: Vec<Letter> = w
                .iter()
                .map(|&l| {
                    let (m, flip) = f(l);
                    negate ^= flip;
                    m
                })
                .collect();
            out.add_term(&mapped, if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    /// `f(a, b) ↦ f(a*, b*)` and back.
    pub fn mirror(&self) -> Self {
        self.map_letters(self.alphabet.mirror(), |l| (l.mirror(), false))
    }

    /// Trace of the evaluation at `n×n` matrices.
    pub fn trace_eval<S>(&self, n: usize, mats: &impl Fn(Letter) -> Matrix<S>) -> S
    where
        S: Ring + From<R>,
    {
        let mut acc = S::zero();
        for (w, c) in &self.terms {
            acc = acc + S::from(c.clone()) * word_product(n, w, mats).trace();
        }
        acc
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Necklace<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms)
    }
}

/// Rotate each occurrence of `letter` to the front, delete it, and sum.
pub fn necklace_derive<R: Ring>(f: &Necklace<R>, letter: Letter) -> FreePoly<R> {
    let mut out = FreePoly::zero();
    for (w, c) in &f.terms {
        for (i, &l) in w.iter().enumerate() {
            if l == letter {
                let rest: Vec<Letter> = w[i + 1..].iter().chain(&w[..i]).copied().collect();
                out.add_term(rest, c.clone());
            }
        }
    }
    out
}

/// Which loop substitution to apply.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LoopMode {
    /// `b = x·y`
    Unstarred,
    /// `b* = y*·x*`
    Starred,
}

/// Replace `b` by `x·y` (or `b*` by `y*·x*`); the empty word becomes `e1`.
pub fn substitute_loops<R: Ring>(g: &FreePoly<R>, mode: LoopMode) -> Result<NcPoly<R>, NecklaceError> {
    let alphabet = match mode {
        LoopMode::Unstarred => Alphabet::Unstarred,
        LoopMode::Starred => Alphabet::Starred,
    };
    let mut out = NcPoly::zero();
    for (w, c) in g.terms() {
        let mut arrows = Vec::with_capacity(2 * w.len());
        for &l in w {
            if !alphabet.contains(l) {
                return Err(NecklaceError::AlphabetMismatch(l, alphabet));
            }
            match l {
                Letter::A => arrows.push(Arrow::A),
                Letter::B => arrows.extend([Arrow::X, Arrow::Y]),
                Letter::AStar => arrows.push(Arrow::AStar),
                Letter::BStar => arrows.extend([Arrow::YStar, Arrow::XStar]),
            }
        }
        let path = if arrows.is_empty() { Path::e1() } else { Path::Word(arrows) };
        out.add_term(path, c.clone());
    }
    Ok(out)
}

/// The necklace bracket of an unstarred and a starred element: the cyclic
/// projection of `−(∂f/∂a·∂g/∂a* + ∂f/∂b·∂g/∂b*)`. Constants are dropped from
/// the necklace and returned separately.
pub fn necklace_bracket<R: Ring>(f: &Necklace<R>, g: &Necklace<R>) -> (Necklace<R>, R) {
    let mut out = Necklace::zero(Alphabet::Full);
    let mut dropped = R::zero();
    for (l, ls) in [(Letter::A, Letter::AStar), (Letter::B, Letter::BStar)] {
        let prod = necklace_derive(f, l).mul(&necklace_derive(g, ls));
        for (w, c) in prod.terms() {
            let c = -c.clone();
            if w.is_empty() {
                dropped = dropped + c;
            } else {
                out.add_term(w, c);
            }
        }
    }
    (out, dropped)
}
