//! Classical Weyl groups realised as (signed) permutations.
//!
//! An element of `S_n`, `BC_n` or `D_n` is stored as its window
//! `w(1), ..., w(n)`, with `w(-i) = -w(i)`. Generators act on the right by
//! permuting positions and on the left by permuting values.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four classical families. `B` and `C` share the group `BC_n`; the tag
/// only selects polynomial conventions downstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupType {
    A,
    B,
    C,
    D,
}

impl GroupType {
    /// All types, in declaration order.
    pub const ALL: [GroupType; 4] = [GroupType::A, GroupType::B, GroupType::C, GroupType::D];

    /// True for the hyperoctahedral conventions (`B` or `C`).
    pub fn is_bc(self) -> bool {
        matches!(self, GroupType::B | GroupType::C)
    }

    /// The simple generators of the rank-`n` group, in canonical letter order.
    pub fn generators(self, n: usize) -> Vec<Letter> {
        let mut out = Vec::new();
        match self {
            GroupType::A => {}
            GroupType::B | GroupType::C => out.push(Letter::Zero),
            GroupType::D => {
                if n >= 2 {
                    out.push(Letter::OneHat)
                }
            }
        }
        out.extend((1..n).map(|i| Letter::S(i as u8)));
        out
    }

    /// Whether `letter` is a generator of the rank-`n` group of this type.
    pub fn has_letter(self, letter: Letter, n: usize) -> bool {
        match letter {
            Letter::Zero => self.is_bc() && n >= 1,
            Letter::OneHat => self == GroupType::D && n >= 2,
            Letter::S(i) => i >= 1 && (i as usize) < n,
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupType::A => "A",
            GroupType::B => "B",
            GroupType::C => "C",
            GroupType::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for GroupType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(GroupType::A),
            "B" => Ok(GroupType::B),
            "C" => Ok(GroupType::C),
            "D" => Ok(GroupType::D),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected one of A, B, C, D".into(),
            }),
        }
    }
}

/// A simple generator: `s_0`, `s_1̂` or `s_i` with `i >= 1`.
///
/// The derived order is the canonical letter order `0 < 1̂ < 1 < 2 < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    Zero,
    OneHat,
    S(u8),
}

impl Letter {
    /// Numeric rank used for peaks and descents, with `1̂` ranked as `1`.
    pub fn peak_rank(self) -> u32 {
        match self {
            Letter::Zero => 0,
            Letter::OneHat => 1,
            Letter::S(i) => i as u32,
        }
    }

    /// Index `i` of a type-A letter `s_i`, if it is one.
    pub fn index(self) -> Option<usize> {
        match self {
            Letter::S(i) => Some(i as usize),
            _ => None,
        }
    }

    /// Whether the letter is `s_1` or `s_1̂`.
    pub fn is_one_like(self) -> bool {
        matches!(self, Letter::S(1) | Letter::OneHat)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Zero => f.write_str("s0"),
            Letter::OneHat => f.write_str("s1^"),
            Letter::S(i) => write!(f, "s{i}"),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let body = t.strip_prefix('s').unwrap_or(t);
        let err = || Error::Parse {
            input: s.to_string(),
            reason: "expected a letter such as s0, s1^, s2".into(),
        };
        if body == "1^" || body == "1'" || body == "1hat" {
            return Ok(Letter::OneHat);
        }
        let i: u8 = body.parse().map_err(|_| err())?;
        Ok(if i == 0 { Letter::Zero } else { Letter::S(i) })
    }
}

/// A word in the generators, possibly with marked commuting pairs.
///
/// A marked pair at index `i` joins `letters[i]` and `letters[i + 1]`, which
/// are `s_1` and `s_1̂` in some order and were emitted by a single cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word {
    pub letters: Vec<Letter>,
    pub marked_pairs: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word {
            letters,
            marked_pairs: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends a single letter.
    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    /// Appends the commuting pair `s_1 s_1̂` and marks it.
    pub fn push_marked_pair(&mut self) {
        self.marked_pairs.push(self.letters.len());
        self.letters.push(Letter::S(1));
        self.letters.push(Letter::OneHat);
    }

    /// Concatenation; marked pairs of `other` are shifted accordingly.
    pub fn concat(&self, other: &Word) -> Word {
        let shift = self.letters.len();
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        let mut marked_pairs = self.marked_pairs.clone();
        marked_pairs.extend(other.marked_pairs.iter().map(|p| p + shift));
        Word {
            letters,
            marked_pairs,
        }
    }

    /// All `2^r` readings obtained by ordering each marked pair both ways.
    pub fn readings(&self) -> Vec<Vec<Letter>> {
        let mut out = vec![self.letters.clone()];
        for &p in &self.marked_pairs {
            let mut extra = Vec::with_capacity(out.len());
            for w in &out {
                let mut v = w.clone();
                v.swap(p, p + 1);
                extra.push(v);
            }
            out.extend(extra);
        }
        out.sort();
        out
    }

    /// Product `s_{a_1} ... s_{a_l}` evaluated on the identity of rank `n`.
    pub fn product(&self, n: usize) -> SignedPermutation {
        product(&self.letters, n)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Parses a whitespace-separated list of letters such as `"s1 s0 s1^"`.
pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
    s.split_whitespace().map(Letter::from_str).collect()
}

/// An element of `S_n`, `BC_n` or `D_n` in window notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    /// Builds a permutation from its window, checking that the absolute
    /// values form a permutation of `1..=n`.
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &v in &window {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::InvalidPermutation(format!("{window:?}")));
            }
            seen[a] = true;
        }
        Ok(SignedPermutation { window })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            window: (1..=n as i32).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    /// `w(i)` for `i` in `±1..=±n`.
    pub fn at(&self, i: i32) -> i32 {
        if i > 0 {
            self.window[(i - 1) as usize]
        } else {
            -self.window[(-i - 1) as usize]
        }
    }

    /// Number of negative window entries, `s(w)`.
    pub fn negatives(&self) -> usize {
        self.window.iter().filter(|&&v| v < 0).count()
    }

    /// Whether `self` belongs to the group of type `t` and rank `n()`.
    pub fn is_in(&self, t: GroupType) -> bool {
        match t {
            GroupType::A => self.negatives() == 0,
            GroupType::B | GroupType::C => true,
            GroupType::D => self.negatives().is_multiple_of(2),
        }
    }

    /// Errors unless `self` is an element of type `t`.
    pub fn check_in(&self, t: GroupType) -> Result<()> {
        if self.is_in(t) {
            Ok(())
        } else {
            Err(Error::WrongGroup {
                perm: self.to_string(),
                group: t.to_string(),
            })
        }
    }

    /// Right multiplication `w * s`, acting on positions.
    pub fn mul_letter(&self, s: Letter) -> Self {
        let mut w = self.window.clone();
        match s {
            Letter::Zero => w[0] = -w[0],
            Letter::OneHat => {
                let (a, b) = (w[0], w[1]);
                w[0] = -b;
                w[1] = -a;
            }
            Letter::S(i) => w.swap(i as usize - 1, i as usize),
        }
        SignedPermutation { window: w }
    }

    /// Left multiplication `s * w`, acting on values.
    pub fn letter_mul(&self, s: Letter) -> Self {
        let act = |v: i32| -> i32 {
            let sign = v.signum();
            let m = v.abs();
            match s {
                Letter::Zero => {
                    if m == 1 {
                        -v
                    } else {
                        v
                    }
                }
                Letter::OneHat => match m {
                    1 => -sign * 2,
                    2 => -sign,
                    _ => v,
                },
                Letter::S(i) => {
                    let i = i as i32;
                    if m == i {
                        sign * (i + 1)
                    } else if m == i + 1 {
                        sign * i
                    } else {
                        v
                    }
                }
            }
        };
        SignedPermutation {
            window: self.window.iter().map(|&v| act(v)).collect(),
        }
    }

    /// Applies `s` on the given side after checking it is a generator of `t`.
    pub fn apply_letter(&self, s: Letter, side: Side, t: GroupType) -> Result<Self> {
        if !t.has_letter(s, self.n()) {
            return Err(Error::InvalidLetter {
                letter: s.to_string(),
                group: t.to_string(),
                n: self.n(),
            });
        }
        Ok(match side {
            Side::Right => self.mul_letter(s),
            Side::Left => self.letter_mul(s),
        })
    }

    /// Composition `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &SignedPermutation) -> Self {
        SignedPermutation {
            window: other.window.iter().map(|&v| self.at(v)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut w = vec![0; self.n()];
        for (i, &v) in self.window.iter().enumerate() {
            let pos = (i + 1) as i32;
            w[v.unsigned_abs() as usize - 1] = if v > 0 { pos } else { -pos };
        }
        SignedPermutation { window: w }
    }

    /// Inversions of the window in integer order.
    pub fn inversions(&self) -> usize {
        let w = &self.window;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// Coxeter length in the group of type `t`.
    pub fn length(&self, t: GroupType) -> usize {
        let inv = self.inversions();
        let neg = self.window.iter().filter(|&&v| v < 0);
        match t {
            GroupType::A => inv,
            GroupType::B | GroupType::C => inv + neg.map(|v| v.unsigned_abs() as usize).sum::<usize>(),
            GroupType::D => inv + neg.map(|v| v.unsigned_abs() as usize - 1).sum::<usize>(),
        }
    }

    /// Right descents: generators `s` with `l(w s) < l(w)`.
    pub fn right_descents(&self, t: GroupType) -> Vec<Letter> {
        let l = self.length(t);
        t.generators(self.n())
            .into_iter()
            .filter(|&s| self.mul_letter(s).length(t) < l)
            .collect()
    }

    /// The same element viewed in rank `m >= n`, fixing `n+1..=m`.
    pub fn embed(&self, m: usize) -> Self {
        let mut w = self.window.clone();
        w.extend(self.n() as i32 + 1..=m as i32);
        SignedPermutation { window: w }
    }

    /// Parses space-separated entries; a negative entry is written `-3` or `3~`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut w = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let (body, neg) = match tok.strip_suffix('~') {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let v: i32 = body.parse().map_err(|_| Error::Parse {
                input: s.to_string(),
                reason: format!("bad entry {tok:?}"),
            })?;
            w.push(if neg { -v } else { v });
        }
        if w.is_empty() {
            return Err(Error::Parse {
                input: s.to_string(),
                reason: "empty permutation".into(),
            });
        }
        SignedPermutation::new(w)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SignedPermutation::parse(s)
    }
}

/// Side of a group action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Product of a letter sequence, evaluated on the identity of rank `n`.
pub fn product(letters: &[Letter], n: usize) -> SignedPermutation {
    letters
        .iter()
        .fold(SignedPermutation::identity(n), |w, &s| w.mul_letter(s))
}

/// Whether the letters form a reduced word in the group of type `t`.
pub fn is_reduced_word(letters: &[Letter], t: GroupType, n: usize) -> bool {
    let mut w = SignedPermutation::identity(n);
    for (i, &s) in letters.iter().enumerate() {
        w = w.mul_letter(s);
        if w.length(t) != i + 1 {
            return false;
        }
    }
    true
}

/// All elements of the rank-`n` group of type `t`, sorted by window.
pub fn elements(t: GroupType, n: usize) -> Vec<SignedPermutation> {
    let mut perms: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for v in 1..=n as i32 {
                if !p.iter().any(|&x| x.abs() == v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        perms = next;
    }
    let mut out = Vec::new();
    for p in perms {
        let signs: u32 = if t == GroupType::A { 1 } else { 1 << n };
        for mask in 0..signs {
            let w: Vec<i32> = p
                .iter()
                .enumerate()
                .map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v })
                .collect();
            let sp = SignedPermutation { window: w };
            if sp.is_in(t) {
                out.push(sp);
            }
        }
    }
    out.sort();
    out
}

/// The full set `R(w)` of reduced words, in canonical lexicographic order.
pub fn reduced_words(w: &SignedPermutation, t: GroupType) -> Vec<Vec<Letter>> {
    let mut memo: HashMap<SignedPermutation, Vec<Vec<Letter>>> = HashMap::new();
    let mut out = reduced_words_memo(w, t, &mut memo);
    out.sort();
    out
}

fn reduced_words_memo(
    w: &SignedPermutation,
    t: GroupType,
    memo: &mut HashMap<SignedPermutation, Vec<Vec<Letter>>>,
) -> Vec<Vec<Letter>> {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let l = w.length(t);
    let res = if l == 0 {
        vec![vec![]]
    } else {
        let mut res = Vec::new();
        for s in w.right_descents(t) {
            let u = w.mul_letter(s);
            for mut word in reduced_words_memo(&u, t, memo) {
                word.push(s);
                res.push(word);
            }
        }
        res
    };
    debug_assert!(l > 0 || res.len() == 1);
    memo.insert(w.clone(), res.clone());
    res
}

/// Signed Lehmer code `(L, N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LehmerCode {
    /// `L_i = #{j > i : w(i) > w(j)}` on the window.
    pub l: Vec<usize>,
    /// Decreasing list of the positive values with negative preimages.
    pub n: Vec<usize>,
}

/// Computes the (signed) Lehmer code of `w`.
pub fn lehmer_code(w: &SignedPermutation) -> LehmerCode {
    let win = w.window();
    let l = (0..win.len())
        .map(|i| (i + 1..win.len()).filter(|&j| win[i] > win[j]).count())
        .collect();
    let mut n: Vec<usize> = win
        .iter()
        .filter(|&&v| v < 0)
        .map(|v| v.unsigned_abs() as usize)
        .collect();
    n.sort_unstable_by(|a, b| b.cmp(a));
    LehmerCode { l, n }
}

/// Rebuilds the permutation with the given code and rank.
pub fn from_lehmer_code(code: &LehmerCode, n: usize) -> Result<SignedPermutation> {
    let bad = || Error::InvalidPermutation(format!("no permutation with code {code:?}"));
    if code.l.len() != n {
        return Err(bad());
    }
    let mut values: Vec<i32> = (1..=n as i32)
        .map(|v| if code.n.contains(&(v as usize)) { -v } else { v })
        .collect();
    values.sort_unstable();
    let mut w = Vec::with_capacity(n);
    for &li in &code.l {
        if li >= values.len() {
            return Err(bad());
        }
        w.push(values.remove(li));
    }
    let sp = SignedPermutation::new(w)?;
    if lehmer_code(&sp) != *code {
        return Err(bad());
    }
    Ok(sp)
}

/// Partition data attached to a Grassmannian element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GrassmannianData {
    /// Type A: unique descent at `k` and partition `lambda`.
    Unsigned { descent: usize, lambda: Vec<usize> },
    /// Types B, C, D: the strict partition indexing the `P`/`Q` function.
    Signed { mu: Vec<usize> },
}

/// Recognises Grassmannian elements and returns their partition.
///
/// Type A requires a unique descent. Types B and C require an increasing
/// window and give `mu` = absolute values of the negative entries. Type D
/// lowers each part by one and drops a trailing zero.
pub fn grassmannian_data(w: &SignedPermutation, t: GroupType) -> Option<GrassmannianData> {
    let win = w.window();
    match t {
        GroupType::A => {
            if !w.is_in(GroupType::A) {
                return None;
            }
            let descents: Vec<usize> = (1..win.len()).filter(|&i| win[i - 1] > win[i]).collect();
            if descents.len() != 1 {
                return None;
            }
            let k = descents[0];
            let lambda = (1..=k)
                .rev()
                .map(|i| (win[i - 1] - i as i32) as usize)
                .collect();
            Some(GrassmannianData::Unsigned { descent: k, lambda })
        }
        _ => {
            if !w.is_in(t) || win.windows(2).any(|p| p[0] > p[1]) {
                return None;
            }
            let mut mu: Vec<usize> = win
                .iter()
                .filter(|&&v| v < 0)
                .map(|v| v.unsigned_abs() as usize)
                .collect();
            if t == GroupType::D {
                mu = mu.into_iter().map(|m| m - 1).filter(|&m| m > 0).collect();
            }
            Some(GrassmannianData::Signed { mu })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    fn p(s: &str) -> SignedPermutation {
        SignedPermutation::parse(s).unwrap()
    }

    fn bfs_lengths(t: GroupType, n: usize) -> HashMap<SignedPermutation, usize> {
        let mut dist = HashMap::new();
        let id = SignedPermutation::identity(n);
        dist.insert(id.clone(), 0);
        let mut q = VecDeque::from([id]);
        while let Some(w) = q.pop_front() {
            let d = dist[&w];
            for s in t.generators(n) {
                let u = w.mul_letter(s);
                if !dist.contains_key(&u) {
                    dist.insert(u.clone(), d + 1);
                    q.push_back(u);
                }
            }
        }
        dist
    }

    #[test]
    fn single_generators() {
        let id2 = SignedPermutation::identity(2);
        assert_eq!(id2.mul_letter(Letter::S(1)), p("2 1"));
        assert_eq!(SignedPermutation::identity(1).mul_letter(Letter::Zero), p("-1"));
    }

    #[test]
    fn worked_products() {
        let w = product(&parse_word("s1 s2 s1 s0 s1 s2").unwrap(), 3);
        assert_eq!(w, p("2 1 -3"));
        assert_eq!(w.length(GroupType::C), 6);
        let a = product(&parse_word("s3 s2 s1 s3").unwrap(), 4);
        assert_eq!(a, p("4 1 3 2"));
        assert_eq!(a.length(GroupType::A), 4);
        let d = product(&parse_word("s2 s1 s1^ s3 s2 s1^ s1 s3").unwrap(), 4);
        assert_eq!(d, p("1 -4 2 -3"));
        assert_eq!(d.length(GroupType::D), 8);
        assert_eq!(product(&parse_word("s2 s1 s2 s0 s1").unwrap(), 3), p("2 -3 1"));
    }

    #[test]
    fn reduced_word_checks() {
        assert!(is_reduced_word(&parse_word("s1 s2 s1 s0 s1 s2").unwrap(), GroupType::B, 3));
        assert!(!is_reduced_word(&parse_word("s2 s3 s2 s3").unwrap(), GroupType::A, 4));
        assert!(is_reduced_word(&[], GroupType::D, 3));
    }

    #[test]
    fn length_formula_matches_bfs() {
        for t in GroupType::ALL {
            for n in 1..=3 {
                if t == GroupType::D && n < 2 {
                    continue;
                }
                let dist = bfs_lengths(t, n);
                let els = elements(t, n);
                assert_eq!(dist.len(), els.len(), "{t} {n}");
                for w in els {
                    assert_eq!(w.length(t), dist[&w], "{t} {w}");
                }
            }
        }
    }

    #[test]
    fn reduced_word_sets() {
        assert_eq!(reduced_words(&SignedPermutation::identity(3), GroupType::B), vec![vec![]]);
        let brute = |w: &SignedPermutation, t: GroupType| {
            let gens = t.generators(w.n());
            let l = w.length(t);
            let mut words: Vec<Vec<Letter>> = vec![vec![]];
            for _ in 0..l {
                words = words
                    .into_iter()
                    .flat_map(|a| gens.iter().map(move |&s| [a.clone(), vec![s]].concat()))
                    .collect();
            }
            words.retain(|a| product(a, w.n()) == *w);
            words
        };
        let w = product(&parse_word("s0 s1 s0").unwrap(), 2);
        assert_eq!(reduced_words(&w, GroupType::B), brute(&w, GroupType::B));
        assert_eq!(reduced_words(&w, GroupType::B).len(), 1);
        let a = p("1 4 3 2");
        assert_eq!(reduced_words(&a, GroupType::A), brute(&a, GroupType::A));
        assert_eq!(reduced_words(&a, GroupType::A).len(), 2);
    }

    #[test]
    fn reduced_words_are_reduced_and_complete() {
        for t in [GroupType::B, GroupType::D] {
            for w in elements(t, 3) {
                let words = reduced_words(&w, t);
                let set: HashSet<_> = words.iter().cloned().collect();
                assert_eq!(set.len(), words.len());
                for a in &words {
                    assert_eq!(a.len(), w.length(t));
                    assert_eq!(product(a, 3), w);
                }
            }
        }
    }

    #[test]
    fn lehmer_examples() {
        assert_eq!(lehmer_code(&p("1 2 6 5 4 3")).l, vec![0, 0, 3, 2, 1, 0]);
        assert_eq!(lehmer_code(&p("1 3 5 6 2 4")).l, vec![0, 1, 2, 2, 0, 0]);
        let c = lehmer_code(&SignedPermutation::identity(3));
        assert_eq!((c.l, c.n), (vec![0, 0, 0], vec![]));
    }

    #[test]
    fn lehmer_round_trip() {
        for t in [GroupType::A, GroupType::B] {
            for w in elements(t, 4) {
                assert_eq!(from_lehmer_code(&lehmer_code(&w), 4).unwrap(), w);
            }
        }
    }

    #[test]
    fn grassmannian_examples() {
        assert_eq!(
            grassmannian_data(&p("1 3 5 6 2 4"), GroupType::A),
            Some(GrassmannianData::Unsigned {
                descent: 4,
                lambda: vec![2, 2, 1, 0]
            })
        );
        assert_eq!(
            grassmannian_data(&p("-2 1"), GroupType::B),
            Some(GrassmannianData::Signed { mu: vec![2] })
        );
        assert_eq!(grassmannian_data(&p("4 1 3 2"), GroupType::A), None);
    }

    #[test]
    fn coxeter_relations() {
        let id = SignedPermutation::identity(4);
        let w = |s: &str| product(&parse_word(s).unwrap(), 4);
        assert_eq!(w("s1 s2 s1"), w("s2 s1 s2"));
        assert_eq!(w("s0 s1 s0 s1"), w("s1 s0 s1 s0"));
        assert_eq!(w("s1^ s2 s1^"), w("s2 s1^ s2"));
        assert_eq!(w("s1^ s1"), w("s1 s1^"));
        assert_eq!(w("s0 s2"), w("s2 s0"));
        assert_eq!(w("s0 s1 s0"), w("s1^"));
        for s in GroupType::B.generators(4).into_iter().chain([Letter::OneHat]) {
            assert_eq!(id.mul_letter(s).mul_letter(s), id);
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("3 -2 -4 1"), p("3 2~ 4~ 1"));
        assert!(SignedPermutation::parse("1 1").is_err());
        assert!(SignedPermutation::parse("").is_err());
        assert_eq!(p("3 -2 -4 1").to_string(), "3 -2 -4 1");
    }

    #[test]
    fn left_action_is_conjugate_of_right() {
        for w in elements(GroupType::B, 3) {
            for s in [Letter::Zero, Letter::S(1), Letter::S(2)] {
                let sw = w.letter_mul(s);
                let single = SignedPermutation::identity(3).mul_letter(s);
                assert_eq!(sw, single.compose(&w));
                assert_eq!(w.mul_letter(s), w.compose(&single));
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn signed_perm(n: usize) -> impl Strategy<Value = SignedPermutation> {
            (Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(), any::<u32>()).prop_map(
                move |(v, mask)| {
                    let w = v
                        .into_iter()
                        .enumerate()
                        .map(|(i, x)| if mask >> i & 1 == 1 { -x } else { x })
                        .collect();
                    SignedPermutation::new(w).unwrap()
                },
            )
        }

        proptest! {
            #[test]
            fn length_changes_by_one(w in signed_perm(5)) {
                for s in GroupType::B.generators(5) {
                    let d = w.mul_letter(s).length(GroupType::B) as i64 - w.length(GroupType::B) as i64;
                    prop_assert_eq!(d.abs(), 1);
                }
            }

            #[test]
            fn lehmer_is_injective(w in signed_perm(6)) {
                prop_assert_eq!(from_lehmer_code(&lehmer_code(&w), 6).unwrap(), w);
            }

            #[test]
            fn inverse_and_length(w in signed_perm(5)) {
                prop_assert_eq!(w.compose(&w.inverse()), SignedPermutation::identity(5));
                prop_assert_eq!(w.inverse().length(GroupType::B), w.length(GroupType::B));
            }
        }
    }
}
