//! Exact sparse polynomials over `Q` in the variable families `z`, `x`, `t`.
//!
//! Indices are 1-based. A polynomial "at level `k`" only involves
//! `x_1, ..., x_k`; the symmetric variables beyond `k` are set to zero.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::Letter;

/// One of the three variable families with its 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    Z(usize),
    X(usize),
    T(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z(i) => write!(f, "z{i}"),
            Var::X(i) => write!(f, "x{i}"),
            Var::T(i) => write!(f, "t{i}"),
        }
    }
}

/// Exponent vectors for `z`, `x` and `t`, with trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Monomial {
    z: Vec<u32>,
    x: Vec<u32>,
    t: Vec<u32>,
}

fn strip(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn add_vec(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, e) in a.iter().enumerate() {
        out[i] += e;
    }
    for (i, e) in b.iter().enumerate() {
        out[i] += e;
    }
    out
}

fn le_vec(a: &[u32], b: &[u32]) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, &e)| e <= b.get(i).copied().unwrap_or(0))
}

fn sub_vec(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = a.to_vec();
    for (i, e) in b.iter().enumerate() {
        out[i] -= e;
    }
    strip(out)
}

impl Monomial {
    /// The constant monomial `1`.
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn new(z: Vec<u32>, x: Vec<u32>, t: Vec<u32>) -> Self {
        Monomial {
            z: strip(z),
            x: strip(x),
            t: strip(t),
        }
    }

    pub fn var(v: Var) -> Self {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let unit = |i: usize| {
            let mut w = vec![0; i];
            w[i - 1] = e;
            strip(w)
        };
        match v {
            Var::Z(i) => Monomial { z: unit(i), ..Default::default() },
            Var::X(i) => Monomial { x: unit(i), ..Default::default() },
            Var::T(i) => Monomial { t: unit(i), ..Default::default() },
        }
    }

    pub fn z(&self) -> &[u32] {
        &self.z
    }

    pub fn x(&self) -> &[u32] {
        &self.x
    }

    pub fn t(&self) -> &[u32] {
        &self.t
    }

    pub fn exponent(&self, v: Var) -> u32 {
        let (vec, i) = match v {
            Var::Z(i) => (&self.z, i),
            Var::X(i) => (&self.x, i),
            Var::T(i) => (&self.t, i),
        };
        vec.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.z.is_empty() && self.x.is_empty() && self.t.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.z.iter().chain(&self.x).chain(&self.t).sum()
    }

    /// Largest `i` with `x_i` present, or `0`.
    pub fn max_x(&self) -> usize {
        self.x.len()
    }

    pub fn max_z(&self) -> usize {
        self.z.len()
    }

    pub fn max_t(&self) -> usize {
        self.t.len()
    }

    /// Number of distinct `x` variables present.
    pub fn x_support(&self) -> usize {
        self.x.iter().filter(|&&e| e > 0).count()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            z: add_vec(&self.z, &other.z),
            x: add_vec(&self.x, &other.x),
            t: add_vec(&self.t, &other.t),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        le_vec(&self.z, &other.z) && le_vec(&self.x, &other.x) && le_vec(&self.t, &other.t)
    }

    /// `other / self`; the caller guarantees divisibility.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            z: sub_vec(&other.z, &self.z),
            x: sub_vec(&other.x, &self.x),
            t: sub_vec(&other.t, &self.t),
        }
    }

    /// Iterator over `(variable, exponent)` pairs with positive exponent.
    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        let fam = |v: &'_ [u32], mk: fn(usize) -> Var| {
            v.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(move |(i, &e)| (mk(i + 1), e))
                .collect::<Vec<_>>()
        };
        fam(&self.z, Var::Z)
            .into_iter()
            .chain(fam(&self.x, Var::X))
            .chain(fam(&self.t, Var::T))
    }

    /// Display order: higher degree first, then larger exponents first
    /// along `z_1, z_2, ..., x_1, x_2, ..., t_1, t_2, ...`.
    pub fn display_cmp(&self, other: &Monomial) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            let key = |m: &Monomial, len_z: usize, len_x: usize| {
                let mut k = m.z.clone();
                k.resize(len_z, 0);
                let mut xs = m.x.clone();
                xs.resize(len_x, 0);
                k.extend(xs);
                k.extend(&m.t);
                k
            };
            let lz = self.z.len().max(other.z.len());
            let lx = self.x.len().max(other.x.len());
            let (a, b) = (key(self, lz, lx), key(other, lz, lx));
            for i in 0..a.len().max(b.len()) {
                let (ea, eb) = (a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0));
                if ea != eb {
                    return eb.cmp(&ea);
                }
            }
            Ordering::Equal
        })
    }

    /// Comparison key for the leading-term order of rank `n`: exponents of
    /// `z_{n-1}, ..., z_1, x_1, x_2, ..., t_1, ...`, padded to common widths.
    fn bottom_key(&self, n: usize, len_x: usize, len_t: usize) -> Vec<u32> {
        let zmax = self.z.len().max(n.saturating_sub(1));
        let mut key: Vec<u32> = (1..=zmax).rev().map(|i| self.exponent(Var::Z(i))).collect();
        key.extend((1..=len_x).map(|i| self.exponent(Var::X(i))));
        key.extend((1..=len_t).map(|i| self.exponent(Var::T(i))));
        key
    }

    /// Total order used for leading terms and bottom dreams of rank `n`.
    pub fn bottom_cmp(&self, other: &Monomial, n: usize) -> Ordering {
        let n = n.max(self.z.len() + 1).max(other.z.len() + 1);
        let lx = self.x.len().max(other.x.len());
        let lt = self.t.len().max(other.t.len());
        self.bottom_key(n, lx, lt).cmp(&other.bottom_key(n, lx, lt))
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, latex: bool) -> fmt::Result {
        let mut first = true;
        for (v, e) in self.factors() {
            if !latex && !first {
                f.write_str("*")?;
            }
            first = false;
            if latex {
                let (c, i) = match v {
                    Var::Z(i) => ('z', i),
                    Var::X(i) => ('x', i),
                    Var::T(i) => ('t', i),
                };
                write!(f, "{c}_{{{i}}}")?;
                if e > 1 {
                    write!(f, "^{{{e}}}")?;
                }
            } else {
                write!(f, "{v}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, false)
    }
}

/// A polynomial with exact rational coefficients; zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(rat(1))
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn integer(c: i64) -> Self {
        Polynomial::constant(rat(c))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn var(v: Var) -> Self {
        Polynomial::term(rat(1), Monomial::var(v))
    }

    pub fn z(i: usize) -> Self {
        Polynomial::var(Var::Z(i))
    }

    pub fn x(i: usize) -> Self {
        Polynomial::var(Var::X(i))
    }

    pub fn t(i: usize) -> Self {
        Polynomial::var(Var::T(i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Coefficient of `m` (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, c: BigRational, m: Monomial) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn max_x(&self) -> usize {
        self.terms.keys().map(Monomial::max_x).max().unwrap_or(0)
    }

    pub fn max_z(&self) -> usize {
        self.terms.keys().map(Monomial::max_z).max().unwrap_or(0)
    }

    pub fn max_t(&self) -> usize {
        self.terms.keys().map(Monomial::max_t).max().unwrap_or(0)
    }

    /// Specialisation `x_{k+1} = x_{k+2} = ... = 0`.
    pub fn truncate_x(&self, k: usize) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.max_x() <= k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Specialisation `t_{m+1} = t_{m+2} = ... = 0`.
    pub fn truncate_t(&self, m: usize) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(mo, _)| mo.max_t() <= m)
                .map(|(mo, c)| (mo.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sets every `t` variable to zero.
    pub fn drop_t(&self) -> Polynomial {
        self.truncate_t(0)
    }

    /// Replaces every variable `v` by the polynomial `image(v)`.
    pub fn substitute(&self, image: impl Fn(Var) -> Polynomial) -> Polynomial {
        let mut cache: HashMap<(Var, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut p = Polynomial::constant(c.clone());
            for (v, e) in m.factors() {
                let pw = cache
                    .entry((v, e))
                    .or_insert_with(|| image(v).pow(e))
                    .clone();
                p = &p * &pw;
            }
            out += &p;
        }
        out
    }

    /// Renames variables one-to-one with a sign; faster than `substitute`.
    pub fn rename(&self, image: impl Fn(Var) -> (Var, bool)) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut mono = Monomial::one();
            let mut neg = false;
            for (v, e) in m.factors() {
                let (w, flip) = image(v);
                mono = mono.mul(&Monomial::var_pow(w, e));
                neg ^= flip && e % 2 == 1;
            }
            out.add_term(if neg { -c.clone() } else { c.clone() }, mono);
        }
        out
    }

    /// Largest term in the storage order, used by exact division.
    fn lead(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, failing unless `d` divides `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Polynomial> {
        let (dm, dc) = d.lead().ok_or(Error::ZeroPolynomial)?;
        let mut rem = self.clone();
        let mut q = Polynomial::zero();
        while let Some((rm, rc)) = rem.lead() {
            if !dm.divides(rm) {
                return Err(Error::NotDivisible);
            }
            let m = dm.quotient_of(rm);
            let c = rc / dc;
            let step = Polynomial::term(c, m);
            rem -= &(&step * d);
            q += &step;
        }
        Ok(q)
    }

    /// Largest monomial for the leading-term order of rank `n`.
    pub fn leading_monomial(&self, n: usize) -> Result<Monomial> {
        self.terms
            .keys()
            .max_by(|a, b| a.bottom_cmp(b, n))
            .cloned()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Terms sorted in display order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }

    /// Plain-text rendering, e.g. `z1*x1 + 1/3*x1^3 - x2`.
    pub fn to_text(&self) -> String {
        self.render(false)
    }

    /// LaTeX rendering with `\frac` coefficients.
    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if latex {
                if a.is_integer() {
                    a.numer().to_string()
                } else {
                    format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
                }
            } else {
                a.to_string()
            };
            let mono = MonoFmt { m, latex }.to_string();
            if m.is_one() {
                s.push_str(&coeff);
            } else if a.is_one() {
                s.push_str(&mono);
            } else if latex {
                s.push_str(&coeff);
                s.push_str(&mono);
            } else {
                s.push_str(&coeff);
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }

    /// JSON value `{"terms":[{"c":"num/den","z":[..],"x":[..],"t":[..]}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson::from(self)).expect("polynomial serialises")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Polynomial> {
        let pj: PolyJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse {
            input: v.to_string(),
            reason: e.to_string(),
        })?;
        let mut p = Polynomial::zero();
        for t in pj.terms {
            let c: BigRational = t.c.parse().map_err(|_| Error::Parse {
                input: t.c.clone(),
                reason: "bad rational".into(),
            })?;
            p.add_term(c, Monomial::new(t.z, t.x, t.t));
        }
        Ok(p)
    }
}

struct MonoFmt<'a> {
    m: &'a Monomial,
    latex: bool,
}

impl fmt::Display for MonoFmt<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.m.write_with(f, self.latex)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    c: String,
    z: Vec<u32>,
    x: Vec<u32>,
    t: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl From<&Polynomial> for PolyJson {
    fn from(p: &Polynomial) -> Self {
        PolyJson {
            terms: p
                .sorted_terms()
                .into_iter()
                .map(|(m, c)| TermJson {
                    c: format!("{}/{}", c.numer(), c.denom()),
                    z: m.z.clone(),
                    x: m.x.clone(),
                    t: m.t.clone(),
                })
                .collect(),
        }
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(c.clone(), m.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(-c.clone(), m.clone());
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(c1 * c2, m1.mul(m2));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&rat(-1))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        let mut out = Polynomial::zero();
        for p in iter {
            out += &p;
        }
        out
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::term(rat(1), m)
    }
}

/// Power sum `x_1^d + ... + x_k^d`.
pub fn power_sum(d: u32, k: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    for i in 1..=k {
        p.add_term(rat(1), Monomial::var_pow(Var::X(i), d));
    }
    p
}

/// The variable family a generator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Z,
    T,
}

/// A generator acting on polynomials: `s_i^z` or `s_i^t` for a letter `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub family: Family,
    pub letter: Letter,
}

impl Generator {
    pub fn z(letter: Letter) -> Self {
        Generator { family: Family::Z, letter }
    }

    pub fn t(letter: Letter) -> Self {
        Generator { family: Family::T, letter }
    }

    /// Number of `x` slots consumed by the insertion (0, 1 or 2).
    pub fn slack(self) -> usize {
        match self.letter {
            Letter::Zero => 1,
            Letter::OneHat => 2,
            Letter::S(_) => 0,
        }
    }
}

/// Applies a generator to `f`, producing the result at level `k`.
///
/// For `s_0` the input must live at level `k + 1`; for `s_1̂` at level
/// `k + 2`. The vacated slots receive `z_1` (and `z_2`) for the `z` family,
/// or `-t_1` (and `-t_2`) for the `t` family.
pub fn act_generator(f: &Polynomial, g: Generator, k: usize) -> Result<Polynomial> {
    let slack = g.slack();
    if slack > 0 && f.max_x() > k + slack {
        return Err(Error::LevelOverflow {
            index: f.max_x(),
            level: k + slack,
        });
    }
    let shifted = |i: usize| Polynomial::x(i - slack);
    Ok(match (g.family, g.letter) {
        (Family::Z, Letter::S(i)) => {
            let i = i as usize;
            f.rename(|v| match v {
                Var::Z(j) if j == i => (Var::Z(i + 1), false),
                Var::Z(j) if j == i + 1 => (Var::Z(i), false),
                other => (other, false),
            })
        }
        (Family::T, Letter::S(i)) => {
            let i = i as usize;
            f.rename(|v| match v {
                Var::T(j) if j == i => (Var::T(i + 1), false),
                Var::T(j) if j == i + 1 => (Var::T(i), false),
                other => (other, false),
            })
        }
        (Family::Z, Letter::Zero) => f.substitute(|v| match v {
            Var::Z(1) => -Polynomial::z(1),
            Var::X(1) => Polynomial::z(1),
            Var::X(i) => shifted(i),
            other => Polynomial::var(other),
        }),
        (Family::Z, Letter::OneHat) => f.substitute(|v| match v {
            Var::Z(1) => -Polynomial::z(2),
            Var::Z(2) => -Polynomial::z(1),
            Var::X(1) => Polynomial::z(1),
            Var::X(2) => Polynomial::z(2),
            Var::X(i) => shifted(i),
            other => Polynomial::var(other),
        }),
        (Family::T, Letter::Zero) => f.substitute(|v| match v {
            Var::T(1) => -Polynomial::t(1),
            Var::X(1) => -Polynomial::t(1),
            Var::X(i) => shifted(i),
            other => Polynomial::var(other),
        }),
        (Family::T, Letter::OneHat) => f.substitute(|v| match v {
            Var::T(1) => -Polynomial::t(2),
            Var::T(2) => -Polynomial::t(1),
            Var::X(1) => -Polynomial::t(1),
            Var::X(2) => -Polynomial::t(2),
            Var::X(i) => shifted(i),
            other => Polynomial::var(other),
        }),
    })
}

/// A divided-difference operator `∂` (family `Z`) or `δ` (family `T`).
///
/// `b_normalized` selects the doubled operator `∂_0^B = 2∂_0` (resp. `δ_0^B`);
/// it has no effect for other letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Operator {
    pub generator: Generator,
    pub b_normalized: bool,
}

impl Operator {
    pub fn new(generator: Generator, b_normalized: bool) -> Self {
        Operator {
            generator,
            b_normalized,
        }
    }

    /// The linear denominator of the operator.
    pub fn denominator(self) -> Polynomial {
        let z = Polynomial::z;
        let t = Polynomial::t;
        match (self.generator.family, self.generator.letter) {
            (Family::Z, Letter::S(i)) => z(i as usize) - z(i as usize + 1),
            (Family::Z, Letter::Zero) => z(1).scale(&rat(-2)),
            (Family::Z, Letter::OneHat) => -(z(1) + z(2)),
            (Family::T, Letter::S(i)) => t(i as usize + 1) - t(i as usize),
            (Family::T, Letter::Zero) => t(1).scale(&rat(2)),
            (Family::T, Letter::OneHat) => t(1) + t(2),
        }
    }
}

/// Applies a divided-difference operator and returns the result at level `k`.
///
/// The input must be available at level `k + slack` (see [`act_generator`]);
/// higher levels are truncated first. Fails with [`Error::NotDivisible`]
/// when the numerator is not a multiple of the denominator.
pub fn divided_difference(f: &Polynomial, op: Operator, k: usize) -> Result<Polynomial> {
    let slack = op.generator.slack();
    let input = f.truncate_x(k + slack);
    let moved = act_generator(&input, op.generator, k)?;
    let num = &f.truncate_x(k) - &moved;
    let q = num.div_exact(&op.denominator())?;
    Ok(if op.b_normalized && op.generator.letter == Letter::Zero {
        q.scale(&rat(2))
    } else {
        q
    })
}

/// Variable-count context `(n, k, m)` attached to a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Level {
    /// Rank of the Weyl group, fixing the `z` variables in play.
    pub n: usize,
    /// Number of active `x` variables.
    pub k: usize,
    /// Number of active `t` variables.
    pub m: usize,
}

impl Level {
    pub fn new(n: usize, k: usize, m: usize) -> Self {
        Level { n, k, m }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, k={}, m={})", self.n, self.k, self.m)
    }
}

/// A polynomial tagged with the level it was computed at. Equality compares
/// the tag as well as the coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tagged {
    pub level: Level,
    pub poly: Polynomial,
}

impl Tagged {
    pub fn new(level: Level, poly: Polynomial) -> Self {
        Tagged { level, poly }
    }

    /// Compares against `other`, refusing mismatched levels.
    pub fn same_as(&self, other: &Tagged) -> Result<bool> {
        if self.level != other.level {
            return Err(Error::Parse {
                input: format!("{} vs {}", self.level, other.level),
                reason: "polynomials computed at different levels".into(),
            });
        }
        Ok(self.poly == other.poly)
    }

    /// Lowers the `x` level to `k` by setting the surplus variables to zero.
    pub fn truncate(&self, k: usize) -> Tagged {
        Tagged {
            level: Level { k: k.min(self.level.k), ..self.level },
            poly: self.poly.truncate_x(k),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.poly.to_json();
        v["level"] = serde_json::json!({"n": self.level.n, "k": self.level.k, "m": self.level.m});
        v
    }
}

impl fmt::Display for Tagged {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn power_sums() {
        assert_eq!(power_sum(1, 2), Polynomial::x(1) + Polynomial::x(2));
        assert_eq!(power_sum(3, 1), Polynomial::x(1).pow(3));
        assert!(power_sum(1, 0).is_zero());
    }

    #[test]
    fn text_rendering() {
        assert_eq!(power_sum(1, 2).to_text(), "x1 + x2");
        let p = Polynomial::z(1) * Polynomial::x(1) - Polynomial::x(2).pow(3).scale(&r(1, 3))
            + Polynomial::integer(2);
        assert_eq!(p.to_text(), "-1/3*x2^3 + z1*x1 + 2");
        assert_eq!(p.to_latex(), "-\\frac{1}{3}x_{2}^{3} + z_{1}x_{1} + 2");
        assert_eq!(Polynomial::zero().to_text(), "0");
    }

    #[test]
    fn json_round_trip() {
        let p = Polynomial::z(2) * Polynomial::t(1) - Polynomial::x(3).scale(&r(2, 7));
        let j = p.to_json();
        assert_eq!(Polynomial::from_json(&j).unwrap(), p);
        assert_eq!(j["terms"][0]["c"], "1/1");
    }

    #[test]
    fn generator_examples() {
        let z1 = Polynomial::z(1);
        assert_eq!(act_generator(&z1, Generator::z(Letter::S(1)), 0).unwrap(), Polynomial::z(2));
        let tt = Polynomial::t(1) * Polynomial::t(2);
        assert_eq!(act_generator(&tt, Generator::t(Letter::S(1)), 0).unwrap(), tt);
        for k in 0..4 {
            let got = act_generator(&power_sum(1, k + 1), Generator::z(Letter::Zero), k).unwrap();
            assert_eq!(got, z1.clone() + power_sum(1, k));
        }
        assert!(matches!(
            act_generator(&Polynomial::x(5), Generator::z(Letter::Zero), 2),
            Err(Error::LevelOverflow { .. })
        ));
    }

    #[test]
    fn divided_difference_examples() {
        let d1 = Operator::new(Generator::z(Letter::S(1)), false);
        assert_eq!(divided_difference(&Polynomial::z(1), d1, 0).unwrap(), Polynomial::one());
        let d2 = Operator::new(Generator::z(Letter::S(2)), false);
        assert!(divided_difference(&Polynomial::z(1), d2, 0).unwrap().is_zero());
        let d0b = Operator::new(Generator::z(Letter::Zero), true);
        for k in 0..4 {
            assert_eq!(divided_difference(&power_sum(1, k + 1), d0b, k).unwrap(), Polynomial::one());
        }
        let sym = Polynomial::z(1) * Polynomial::z(2);
        assert!(divided_difference(&sym, d1, 0).unwrap().is_zero());
        assert_eq!(
            divided_difference(&Polynomial::x(1), d1, 1),
            Ok(Polynomial::zero())
        );
    }

    #[test]
    fn non_divisible_is_reported() {
        let p = Polynomial::z(1) + Polynomial::integer(1);
        assert_eq!(p.div_exact(&Polynomial::z(2)), Err(Error::NotDivisible));
    }

    #[test]
    fn leading_monomials() {
        let p = Polynomial::z(1) + Polynomial::z(2);
        assert_eq!(p.leading_monomial(3).unwrap(), Monomial::var(Var::Z(2)));
        let q = Polynomial::x(1).pow(2) + Polynomial::x(1) * Polynomial::x(2);
        assert_eq!(q.leading_monomial(2).unwrap(), Monomial::var_pow(Var::X(1), 2));
        let m = Polynomial::z(2) * Polynomial::x(4);
        assert_eq!(m.leading_monomial(3).unwrap(), Monomial::new(vec![0, 1], vec![0, 0, 0, 1], vec![]));
        assert_eq!(Polynomial::zero().leading_monomial(2), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn tagged_levels_must_match() {
        let a = Tagged::new(Level::new(2, 1, 0), Polynomial::one());
        let b = Tagged::new(Level::new(2, 2, 0), Polynomial::one());
        assert!(a.same_as(&b).is_err());
        assert_eq!(b.truncate(1).same_as(&a), Ok(true));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn var() -> impl Strategy<Value = Var> {
            prop_oneof![
                (1usize..4).prop_map(Var::Z),
                (1usize..4).prop_map(Var::X),
                (1usize..3).prop_map(Var::T)
            ]
        }

        fn poly() -> impl Strategy<Value = Polynomial> {
            prop::collection::vec((-4i64..5, 1i64..4, prop::collection::vec((var(), 1u32..3), 0..3)), 0..5)
                .prop_map(|ts| {
                    let mut p = Polynomial::zero();
                    for (a, b, fs) in ts {
                        let m = fs
                            .into_iter()
                            .fold(Monomial::one(), |m, (v, e)| m.mul(&Monomial::var_pow(v, e)));
                        p.add_term(BigRational::new(a.into(), b.into()), m);
                    }
                    p
                })
        }

        proptest! {
            #[test]
            fn ring_axioms(a in poly(), b in poly(), c in poly()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert!((&a - &a).is_zero());
            }

            #[test]
            fn division_inverts_multiplication(a in poly(), b in poly()) {
                prop_assume!(!b.is_zero());
                prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
            }

            #[test]
            fn swaps_are_involutions(a in poly(), i in 1u8..3) {
                for g in [Generator::z(Letter::S(i)), Generator::t(Letter::S(i))] {
                    let once = act_generator(&a, g, 5).unwrap();
                    prop_assert_eq!(act_generator(&once, g, 5).unwrap(), a.clone());
                }
            }

            #[test]
            fn inserting_actions_are_involutions(a in poly()) {
                let a = a.truncate_x(2);
                let at_level = |k: usize| a.substitute(|v| match v {
                    Var::X(j) => power_sum(2 * j as u32 - 1, k),
                    other => Polynomial::var(other),
                });
                for g in [Generator::z(Letter::Zero), Generator::z(Letter::OneHat),
                          Generator::t(Letter::Zero), Generator::t(Letter::OneHat)] {
                    let s = g.slack();
                    let once = act_generator(&at_level(3 + 2 * s), g, 3 + s).unwrap();
                    let twice = act_generator(&once, g, 3).unwrap();
                    prop_assert_eq!(twice, at_level(3));
                }
            }

            #[test]
            fn operator_reconstructs_input(a in poly(), i in 1u8..3) {
                for g in [Generator::z(Letter::S(i)), Generator::t(Letter::S(i))] {
                    let op = Operator::new(g, false);
                    let sym = &a + &act_generator(&a, g, 5).unwrap();
                    let f = &sym * &op.denominator() + a.clone();
                    let q = divided_difference(&f, op, 5).unwrap();
                    let back = &(&q * &op.denominator()) + &act_generator(&f, g, 5).unwrap();
                    prop_assert_eq!(back, f.clone());
                    let qq = divided_difference(&q, op, 5).unwrap();
                    prop_assert!(qq.is_zero());
                }
            }
        }
    }
}
