//! Schubert polynomials of every type by every route: pipe dream sums,
//! factorization sums over Stanley functions, Cauchy expansions for double
//! polynomials and extended excited Young diagrams in type `B`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pipedream::{dream_sum, enumerate, Base};
use crate::poly::{divided_difference, Family, Generator, Level, Operator, Polynomial, Tagged, Var};
use crate::symfun::{one_count, schubert_a_from_words, stanley_e, stanley_f, x_admissible, z_admissible};
use crate::weyl::{elements, is_reduced_word, product, reduced_words, GroupType, Letter, Side, SignedPermutation};

/// A length-additive splitting with `u v = w` (right) or `v u = w` (left)
/// and `v` in the symmetric group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factorization {
    pub u: SignedPermutation,
    pub v: SignedPermutation,
}

fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::from(1) << e as usize)
    } else {
        BigRational::new(BigInt::from(1), BigInt::from(1) << (-e) as usize)
    }
}

fn symmetric_part(w: &SignedPermutation, t: GroupType, side: Side) -> Vec<Factorization> {
    let lw = w.length(t);
    let mut out: Vec<Factorization> = elements(GroupType::A, w.n())
        .into_iter()
        .filter_map(|v| {
            let vi = v.inverse();
            let u = match side {
                Side::Right => w.compose(&vi),
                Side::Left => vi.compose(w),
            };
            (u.is_in(t) && u.length(t) + v.length(t) == lw).then_some(Factorization { u, v })
        })
        .collect();
    out.sort_by(|a, b| (a.v.length(t), &a.v, &a.u).cmp(&(b.v.length(t), &b.v, &b.u)));
    out
}

/// All splittings `w = u v` with `l(u) + l(v) = l(w)` and `v` unsigned.
pub fn factorizations(w: &SignedPermutation, t: GroupType) -> Vec<Factorization> {
    symmetric_part(w, t, Side::Right)
}

/// All splittings `w = v u` with `l(u) + l(v) = l(w)` and `v` unsigned.
pub fn left_factorizations(w: &SignedPermutation, t: GroupType) -> Vec<Factorization> {
    symmetric_part(w, t, Side::Left)
}

/// Number of entries changing sign, `s(w)`.
pub fn sign_changes(w: &SignedPermutation) -> usize {
    w.negatives()
}

/// Type-`A` Schubert polynomial as a sum over pipe dreams.
pub fn schubert_a(w: &SignedPermutation) -> Result<Polynomial> {
    w.check_in(GroupType::A)?;
    let base = Arc::new(Base::new(GroupType::A, w.n(), 0, false)?);
    dream_sum(&base, w)
}

/// The `k`-truncated Schubert polynomial of type `t` as a dream sum.
pub fn schubert_bcd(t: GroupType, w: &SignedPermutation, k: usize) -> Result<Tagged> {
    w.check_in(t)?;
    let k = if t == GroupType::A { 0 } else { k };
    let base = Arc::new(Base::new(t, w.n(), k, false)?);
    Ok(Tagged::new(Level::new(w.n(), k, 0), dream_sum(&base, w)?))
}

/// `F_u` in the normalization of type `t`, including the factor `2^{-s(w)}`
/// in type `B`.
fn stanley_part(t: GroupType, u: &SignedPermutation, k: usize) -> Polynomial {
    match t {
        GroupType::A => Polynomial::one(),
        GroupType::C => stanley_f(u, k),
        GroupType::B => stanley_f(u, k).scale(&pow2(-(sign_changes(u) as i64))),
        GroupType::D => stanley_e(u, k),
    }
}

/// The factorization sum `Σ_{uv=w} F_u(x) S_v(z)` in the normalization of type `t`.
pub fn schubert_via_bh(t: GroupType, w: &SignedPermutation, k: usize) -> Result<Tagged> {
    w.check_in(t)?;
    if t == GroupType::A {
        return Ok(Tagged::new(Level::new(w.n(), 0, 0), schubert_a_from_words(w)));
    }
    let parts: Vec<Polynomial> = factorizations(w, t)
        .into_par_iter()
        .map(|f| &stanley_part(t, &f.u, k) * &schubert_a_from_words(&f.v))
        .collect();
    Ok(Tagged::new(Level::new(w.n(), k, 0), parts.into_iter().sum()))
}

/// Both routes to a double Schubert polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleSchubert {
    /// `Σ_{vu=w} S_{v^{-1}}(-t) F_u(z, x)`.
    pub cauchy: Tagged,
    /// Sum over dreams on the double base.
    pub dreams: Tagged,
    pub equal: bool,
}

fn negate_to_t(p: &Polynomial) -> Polynomial {
    p.rename(|v| match v {
        Var::Z(i) => (Var::T(i), true),
        other => (other, false),
    })
}

/// The double Schubert polynomial with `t` variables beyond `m` set to zero.
pub fn double_schubert(t: GroupType, w: &SignedPermutation, k: usize, m: usize) -> Result<DoubleSchubert> {
    w.check_in(t)?;
    let k = if t == GroupType::A { 0 } else { k };
    let level = Level::new(w.n(), k, m);
    let parts: Vec<Result<Polynomial>> = left_factorizations(w, t)
        .into_par_iter()
        .map(|f| {
            let left = negate_to_t(&schubert_a_from_words(&f.v.inverse())).truncate_t(m);
            Ok(&left * &schubert_via_bh(t, &f.u, k)?.poly)
        })
        .collect();
    let cauchy: Polynomial = parts.into_iter().collect::<Result<Vec<_>>>()?.into_iter().sum();
    let base = Arc::new(Base::new(t, w.n(), k, true)?);
    let dreams = dream_sum(&base, w)?.truncate_t(m);
    let equal = cauchy == dreams;
    Ok(DoubleSchubert {
        cauchy: Tagged::new(level, cauchy),
        dreams: Tagged::new(level, dreams),
        equal,
    })
}

/// Outcome of checking one divided-difference relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DividedDifferenceReport {
    pub group: GroupType,
    pub w: SignedPermutation,
    pub generator: Generator,
    pub level: Level,
    /// The element indexing the expected right-hand side, if the length drops.
    pub target: Option<SignedPermutation>,
    pub expected: Polynomial,
    pub actual: Polynomial,
    pub difference: Polynomial,
    pub pass: bool,
}

impl DividedDifferenceReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group.to_string(),
            "w": self.w.to_string(),
            "operator": format!("{}{}", match self.generator.family { Family::Z => "d_", Family::T => "delta_" }, self.generator.letter),
            "level": {"n": self.level.n, "k": self.level.k, "m": self.level.m},
            "target": self.target.as_ref().map(|t| t.to_string()),
            "expected": self.expected.to_text(),
            "actual": self.actual.to_text(),
            "difference": self.difference.to_text(),
            "pass": self.pass,
        })
    }
}

fn polynomial_at(t: GroupType, w: &SignedPermutation, k: usize, m: Option<usize>) -> Result<Polynomial> {
    match m {
        None => Ok(schubert_bcd(t, w, k)?.poly),
        Some(m) => {
            let base = Arc::new(Base::new(t, w.n(), k, true)?);
            Ok(dream_sum(&base, w)?.truncate_t(m))
        }
    }
}

/// Checks `∂_s F_w = F_{ws}` (family `Z`) or `δ_s F_w = F_{sw}` (family `T`,
/// on double polynomials with `m` variables `t`), with zero on the right
/// when the length does not drop. The left side is computed from the
/// polynomial at the higher level the operator needs.
pub fn verify_divided_difference(
    t: GroupType,
    w: &SignedPermutation,
    letter: Letter,
    family: Family,
    k: usize,
    m: Option<usize>,
) -> Result<DividedDifferenceReport> {
    w.check_in(t)?;
    if !t.has_letter(letter, w.n()) {
        return Err(Error::InvalidLetter {
            letter: letter.to_string(),
            group: t.to_string(),
            n: w.n(),
        });
    }
    let generator = Generator { family, letter };
    if family == Family::T {
        let needed = match letter {
            Letter::Zero => 1,
            Letter::OneHat => 2,
            Letter::S(i) => i as usize + 1,
        };
        let given = m.unwrap_or(0);
        if given < needed {
            return Err(Error::InsufficientTruncation { needed, given });
        }
    }
    let k = if t == GroupType::A { 0 } else { k };
    let input = polynomial_at(t, w, k + generator.slack(), m)?;
    let actual = divided_difference(&input, Operator::new(generator, t == GroupType::B), k)?;
    let moved = match family {
        Family::Z => w.mul_letter(letter),
        Family::T => w.letter_mul(letter),
    };
    let (target, expected) = if moved.length(t) < w.length(t) {
        (Some(moved.clone()), polynomial_at(t, &moved, k, m)?)
    } else {
        (None, Polynomial::zero())
    };
    let difference = &actual - &expected;
    Ok(DividedDifferenceReport {
        group: t,
        w: w.clone(),
        generator,
        level: Level::new(w.n(), k, m.unwrap_or(0)),
        target,
        pass: difference.is_zero(),
        expected,
        actual,
        difference,
    })
}

/// A box of the trapezoid carrying extended excited Young diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EydBox {
    pub row: usize,
    pub col: usize,
    pub letter: Letter,
    pub weight: Polynomial,
}

/// The boxes of the rank-`n` trapezoid in reading order: rows from the top,
/// right to left inside a row. The top `n` rows have length `n`, each
/// shifted one step right of the row below; the staircase `(n-1, ..., 1)`
/// sits underneath.
pub fn eyd_boxes(n: usize) -> Vec<EydBox> {
    let mut boxes = Vec::new();
    for r in 1..=n {
        let i = n + 1 - r;
        for c in 0..n {
            let weight = if c == 0 {
                Polynomial::x(i)
            } else if i + c <= n {
                Polynomial::x(i) + Polynomial::x(i + c)
            } else {
                Polynomial::x(i) - Polynomial::t(i + c - n)
            };
            let letter = if c == 0 { Letter::Zero } else { Letter::S(c as u8) };
            boxes.push(EydBox {
                row: r,
                col: n - r + c,
                letter,
                weight,
            });
        }
    }
    for rp in 1..n {
        for c in 0..n - rp {
            boxes.push(EydBox {
                row: n + rp,
                col: c,
                letter: Letter::S((rp + c) as u8),
                weight: Polynomial::z(rp) + Polynomial::x(c + 1),
            });
        }
    }
    boxes.sort_by_key(|b| (b.row, std::cmp::Reverse(b.col)));
    boxes
}

/// A marked subset of the trapezoid, stored as indices into [`eyd_boxes`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedEyd {
    pub n: usize,
    pub marked: Vec<usize>,
}

impl ExtendedEyd {
    pub fn word(&self, boxes: &[EydBox]) -> Vec<Letter> {
        self.marked.iter().map(|&i| boxes[i].letter).collect()
    }

    pub fn weight(&self, boxes: &[EydBox]) -> Polynomial {
        self.marked.iter().fold(Polynomial::one(), |acc, &i| &acc * &boxes[i].weight)
    }

    pub fn shape(&self, boxes: &[EydBox]) -> SignedPermutation {
        product(&self.word(boxes), self.n)
    }

    pub fn is_reduced(&self, boxes: &[EydBox]) -> bool {
        is_reduced_word(&self.word(boxes), GroupType::B, self.n)
    }
}

/// All reduced extended diagrams of rank `n`, grouped by shape.
pub fn extended_eyds(n: usize) -> BTreeMap<SignedPermutation, Vec<ExtendedEyd>> {
    let boxes = eyd_boxes(n);
    let mut out: BTreeMap<SignedPermutation, Vec<ExtendedEyd>> = BTreeMap::new();
    fn rec(
        i: usize,
        boxes: &[EydBox],
        cur: SignedPermutation,
        marked: &mut Vec<usize>,
        n: usize,
        out: &mut BTreeMap<SignedPermutation, Vec<ExtendedEyd>>,
    ) {
        if i == boxes.len() {
            out.entry(cur).or_default().push(ExtendedEyd {
                n,
                marked: marked.clone(),
            });
            return;
        }
        rec(i + 1, boxes, cur.clone(), marked, n, out);
        let next = cur.mul_letter(boxes[i].letter);
        if next.length(GroupType::B) == marked.len() + 1 {
            marked.push(i);
            rec(i + 1, boxes, next, marked, n, out);
            marked.pop();
        }
    }
    rec(0, &boxes, SignedPermutation::identity(n), &mut Vec::new(), n, &mut out);
    out
}

/// Sum of box weights over reduced extended diagrams of shape `w`, at
/// level `(n, n, n-1)`.
pub fn kirillov_naruse_b(w: &SignedPermutation) -> Result<Tagged> {
    w.check_in(GroupType::B)?;
    let n = w.n();
    let boxes = eyd_boxes(n);
    let all = extended_eyds(n);
    let sum = all
        .get(w)
        .map(|ds| ds.iter().map(|d| d.weight(&boxes)).sum())
        .unwrap_or_else(Polynomial::zero);
    Ok(Tagged::new(Level::new(n, n, n.saturating_sub(1)), sum))
}

/// Dreams sharing an x-word, x-sequence, z-word and z-sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountClass {
    pub u: SignedPermutation,
    pub a: Vec<Letter>,
    pub alpha: Vec<usize>,
    pub v: SignedPermutation,
    pub b: Vec<Letter>,
    pub beta: Vec<usize>,
    pub expected: usize,
    pub observed: usize,
}

type ClassKey = (Vec<Letter>, Vec<usize>, Vec<Letter>, Vec<usize>);

/// `r(a, α)`: adjacent positions holding `1` and `1̂` in the same block.
pub fn one_pairs(a: &[Letter], alpha: &[usize]) -> usize {
    (0..a.len().saturating_sub(1))
        .filter(|&i| {
            alpha[i] == alpha[i + 1]
                && matches!(
                    (a[i], a[i + 1]),
                    (Letter::S(1), Letter::OneHat) | (Letter::OneHat, Letter::S(1))
                )
        })
        .count()
}

/// Groups the dreams of `w` (types `B`, `C`, `D`) by word and index data
/// and pairs each class with the multiplicity predicted from the
/// factorization sum. Classes present on only one side appear with a zero.
pub fn counting_classes(t: GroupType, w: &SignedPermutation, k: usize) -> Result<Vec<CountClass>> {
    w.check_in(t)?;
    let n = w.n();
    let mut expected: BTreeMap<ClassKey, usize> = BTreeMap::new();
    let s = sign_changes(w) as i64;
    for f in factorizations(w, t) {
        let b_words = reduced_words(&f.v, GroupType::A);
        for a in reduced_words(&f.u, t) {
            for alpha in x_admissible(&a, k) {
                let e = match t {
                    GroupType::C => alpha.distinct as i64,
                    GroupType::B => alpha.distinct as i64 - s,
                    _ => alpha.distinct as i64 - one_count(&a) as i64 + one_pairs(&a, &alpha.seq) as i64,
                };
                let count = 1usize << e.max(0);
                for b in &b_words {
                    for beta in z_admissible(b) {
                        expected.insert((a.clone(), alpha.seq.clone(), b.clone(), beta.seq), count);
                    }
                }
            }
        }
    }
    let base = Arc::new(Base::new(t, n, k, false)?);
    let mut observed: BTreeMap<ClassKey, usize> = BTreeMap::new();
    for d in enumerate(&base, w)? {
        let dw = d.word();
        let readings: BTreeSet<Vec<Letter>> = dw.x.readings().into_iter().collect();
        for a in readings {
            *observed
                .entry((a, dw.x_blocks.clone(), dw.z.letters.clone(), dw.z_rows.clone()))
                .or_default() += 1;
        }
    }
    let keys: BTreeSet<&ClassKey> = expected.keys().chain(observed.keys()).collect();
    Ok(keys
        .into_iter()
        .map(|key| {
            let (a, alpha, b, beta) = key.clone();
            CountClass {
                u: product(&a, n),
                v: product(&b, n),
                a,
                alpha,
                b,
                beta,
                expected: expected.get(key).copied().unwrap_or(0),
                observed: observed.get(key).copied().unwrap_or(0),
            }
        })
        .collect())
}
