//! Stanley symmetric functions, Schur `s`, `P`, `Q` functions and the
//! bijections between Grassmannian pipe dreams and tableaux.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pipedream::{admissible_moves, apply_move, bottom_dream_on, Base, Block, Part, PipeDream, MOVES};
use crate::poly::{Monomial, Polynomial, Var};
use crate::weyl::{grassmannian_data, reduced_words, GrassmannianData, GroupType, Letter, SignedPermutation};

/// Peaks of a word: 1-based interior positions `i` with
/// `a_{i-1} < a_i > a_{i+1}`, where `1̂` ranks as `1`.
pub fn peaks(a: &[Letter]) -> BTreeSet<usize> {
    let r: Vec<u32> = a.iter().map(|l| l.peak_rank()).collect();
    (1..r.len().saturating_sub(1))
        .filter(|&i| r[i - 1] < r[i] && r[i] > r[i + 1])
        .map(|i| i + 1)
        .collect()
}

/// An admissible index sequence together with its monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Admissible {
    pub seq: Vec<usize>,
    pub monomial: Monomial,
    /// Number of distinct indices, `i(α)`.
    pub distinct: usize,
}

fn admissible(seq: Vec<usize>, var: fn(usize) -> Var) -> Admissible {
    let monomial = seq
        .iter()
        .fold(Monomial::one(), |m, &j| m.mul(&Monomial::var(var(j))));
    let distinct = seq.iter().collect::<BTreeSet<_>>().len();
    Admissible {
        seq,
        monomial,
        distinct,
    }
}

/// Whether `seq` is x-admissible for `a` with indices at most `k`.
pub fn is_x_admissible(a: &[Letter], seq: &[usize], k: usize) -> bool {
    if seq.len() != a.len() || seq.iter().any(|&j| j == 0 || j > k) {
        return false;
    }
    if seq.windows(2).any(|p| p[0] < p[1]) {
        return false;
    }
    let pk = peaks(a);
    (1..seq.len().saturating_sub(1)).all(|i| !(seq[i - 1] == seq[i] && seq[i] == seq[i + 1] && pk.contains(&(i + 1))))
}

/// Whether `seq` is z-admissible for the type-A word `b`.
pub fn is_z_admissible(b: &[Letter], seq: &[usize]) -> bool {
    if seq.len() != b.len() {
        return false;
    }
    for i in 0..seq.len() {
        let ai = match b[i].index() {
            Some(x) => x,
            None => return false,
        };
        if seq[i] == 0 || seq[i] > ai {
            return false;
        }
        if i + 1 < seq.len() {
            if seq[i] > seq[i + 1] {
                return false;
            }
            if seq[i] == seq[i + 1] && b[i].index() <= b[i + 1].index() {
                return false;
            }
        }
    }
    true
}

/// All x-admissible sequences `k >= j_1 >= ... >= j_l >= 1` for `a`.
pub fn x_admissible(a: &[Letter], k: usize) -> Vec<Admissible> {
    let pk = peaks(a);
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(a.len());
    fn rec(a: &[Letter], k: usize, pk: &BTreeSet<usize>, seq: &mut Vec<usize>, out: &mut Vec<Admissible>) {
        let i = seq.len();
        if i == a.len() {
            out.push(admissible(seq.clone(), Var::X));
            return;
        }
        let hi = if i == 0 { k } else { seq[i - 1] };
        for j in 1..=hi {
            if i >= 2 && seq[i - 1] == j && seq[i - 2] == j && pk.contains(&i) {
                continue;
            }
            seq.push(j);
            rec(a, k, pk, seq, out);
            seq.pop();
        }
    }
    rec(a, k, &pk, &mut seq, &mut out);
    out
}

/// All z-admissible sequences for the type-A word `b`.
pub fn z_admissible(b: &[Letter]) -> Vec<Admissible> {
    let mut out = Vec::new();
    fn rec(b: &[Letter], seq: &mut Vec<usize>, out: &mut Vec<Admissible>) {
        let i = seq.len();
        if i == b.len() {
            out.push(admissible(seq.clone(), Var::Z));
            return;
        }
        let ai = b[i].index().unwrap_or(0);
        let lo = if i == 0 { 1 } else { seq[i - 1] };
        for j in lo..=ai {
            if i > 0 && j == seq[i - 1] && b[i - 1].index().unwrap_or(0) <= ai {
                continue;
            }
            seq.push(j);
            rec(b, seq, out);
            seq.pop();
        }
    }
    rec(b, &mut Vec::new(), &mut out);
    out
}

fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::from(1) << e as usize)
    } else {
        BigRational::new(BigInt::from(1), BigInt::from(1) << (-e) as usize)
    }
}

/// Number of letters equal to `1` or `1̂`, `o(a)`.
pub fn one_count(a: &[Letter]) -> usize {
    a.iter().filter(|l| l.is_one_like()).count()
}

/// `F_w = Σ_{a ∈ R(w)} Σ_α 2^{i(α)} x^α`, truncated at level `k`.
pub fn stanley_f(w: &SignedPermutation, k: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    for a in reduced_words(w, GroupType::C) {
        for adm in x_admissible(&a, k) {
            p.add_term(pow2(adm.distinct as i64), adm.monomial);
        }
    }
    p
}

/// `E_w = Σ_{a ∈ R(w)} Σ_α 2^{i(α)-o(a)} x^α`, truncated at level `k`.
pub fn stanley_e(w: &SignedPermutation, k: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    for a in reduced_words(w, GroupType::D) {
        let o = one_count(&a) as i64;
        for adm in x_admissible(&a, k) {
            p.add_term(pow2(adm.distinct as i64 - o), adm.monomial);
        }
    }
    p
}

/// Type-A Schubert polynomial from z-admissible sequences.
pub fn schubert_a_from_words(v: &SignedPermutation) -> Polynomial {
    let mut p = Polynomial::zero();
    for b in reduced_words(v, GroupType::A) {
        for adm in z_admissible(&b) {
            p.add_term(BigRational::from_integer(1.into()), adm.monomial);
        }
    }
    p
}

/// Semistandard Young tableau with entries in `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct YoungTableau {
    pub shape: Vec<usize>,
    pub rows: Vec<Vec<u32>>,
}

impl YoungTableau {
    pub fn is_valid(&self, k: usize) -> bool {
        if self.rows.len() != self.shape.len() {
            return false;
        }
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != self.shape[r] || row.iter().any(|&e| e == 0 || e as usize > k) {
                return false;
            }
            if row.windows(2).any(|p| p[0] > p[1]) {
                return false;
            }
            if r > 0 && row.iter().enumerate().any(|(c, &e)| self.rows[r - 1].get(c).is_none_or(|&u| u >= e)) {
                return false;
            }
        }
        true
    }

    /// `z^T`.
    pub fn weight(&self) -> Monomial {
        self.rows
            .iter()
            .flatten()
            .fold(Monomial::one(), |m, &e| m.mul(&Monomial::var(Var::Z(e as usize))))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"shape": self.shape, "rows": self.rows})
    }

    pub fn to_latex(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|e| format!("{e}")).collect::<Vec<_>>().join(" & "))
            .collect();
        format!("\\begin{{ytableau}} {} \\end{{ytableau}}", rows.join(" \\\\ "))
    }
}

/// Circled shifted tableau. Entries are encoded as `2i - 1` for `i°` and
/// `2i` for `i`; row `r` starts on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShiftedTableau {
    pub shape: Vec<usize>,
    pub rows: Vec<Vec<u32>>,
}

/// Encodes `i°` (circled) or `i`.
pub fn circled(i: u32, circle: bool) -> u32 {
    if circle {
        2 * i - 1
    } else {
        2 * i
    }
}

fn value_of(e: u32) -> u32 {
    e.div_ceil(2)
}

fn is_circled(e: u32) -> bool {
    e % 2 == 1
}

impl ShiftedTableau {
    /// Checks the circled-tableau rules; `primed` also requires every
    /// diagonal entry to be uncircled.
    pub fn is_valid(&self, k: usize, primed: bool) -> bool {
        if self.rows.len() != self.shape.len() || self.shape.windows(2).any(|p| p[0] <= p[1]) {
            return false;
        }
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != self.shape[r] || row.iter().any(|&e| e == 0 || value_of(e) as usize > k) {
                return false;
            }
            if primed && is_circled(row[0]) {
                return false;
            }
            for c in 0..row.len() {
                if c > 0 && (row[c - 1] > row[c] || (row[c - 1] == row[c] && is_circled(row[c]))) {
                    return false;
                }
                if r > 0 {
                    let col = r + c;
                    if col >= r - 1 && col - (r - 1) < self.rows[r - 1].len() {
                        let up = self.rows[r - 1][col - (r - 1)];
                        if up > row[c] || (up == row[c] && !is_circled(up)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `x^T`, each `i°` or `i` contributing `x_i`.
    pub fn weight(&self) -> Monomial {
        self.rows
            .iter()
            .flatten()
            .fold(Monomial::one(), |m, &e| m.mul(&Monomial::var(Var::X(value_of(e) as usize))))
    }

    fn entry_string(e: u32) -> String {
        if is_circled(e) {
            format!("{}'", value_of(e))
        } else {
            format!("{}", value_of(e))
        }
    }

    /// `{"shape":[..],"rows":[[..]]}` with circled entries as `"3'"`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&e| Self::entry_string(e)).collect())
            .collect();
        serde_json::json!({"shape": self.shape, "rows": rows})
    }

    pub fn to_latex(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut cells: Vec<String> = vec!["\\none".into(); r];
                cells.extend(row.iter().map(|&e| {
                    if is_circled(e) {
                        format!("{}^\\circ", value_of(e))
                    } else {
                        value_of(e).to_string()
                    }
                }));
                cells.join(" & ")
            })
            .collect();
        format!("\\begin{{ytableau}} {} \\end{{ytableau}}", rows.join(" \\\\ "))
    }
}

impl fmt::Display for ShiftedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|&e| Self::entry_string(e)).collect();
            writeln!(f, "{}{}", "   ".repeat(r), cells.join("  "))?;
        }
        Ok(())
    }
}

/// All semistandard tableaux of shape `lambda` with entries at most `k`.
pub fn ssyt(lambda: &[usize], k: usize) -> Vec<YoungTableau> {
    let shape: Vec<usize> = lambda.iter().copied().filter(|&x| x > 0).collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = shape.iter().map(|&l| Vec::with_capacity(l)).collect();
    fn rec(i: usize, cells: &[(usize, usize)], k: u32, rows: &mut Vec<Vec<u32>>, shape: &[usize], out: &mut Vec<YoungTableau>) {
        if i == cells.len() {
            out.push(YoungTableau {
                shape: shape.to_vec(),
                rows: rows.clone(),
            });
            return;
        }
        let (r, c) = cells[i];
        let mut lo = 1;
        if c > 0 {
            lo = lo.max(rows[r][c - 1]);
        }
        if r > 0 {
            lo = lo.max(rows[r - 1][c] + 1);
        }
        for v in lo..=k {
            rows[r].push(v);
            rec(i + 1, cells, k, rows, shape, out);
            rows[r].pop();
        }
    }
    rec(0, &cells, k as u32, &mut rows, &shape, &mut out);
    out
}

/// All circled shifted tableaux of shape `mu` with values at most `k`.
pub fn circled_tableaux(mu: &[usize], k: usize, primed: bool) -> Vec<ShiftedTableau> {
    let shape: Vec<usize> = mu.iter().copied().filter(|&x| x > 0).collect();
    if shape.windows(2).any(|p| p[0] <= p[1]) {
        return vec![];
    }
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    fn rec(
        i: usize,
        cells: &[(usize, usize)],
        k: u32,
        primed: bool,
        rows: &mut Vec<Vec<u32>>,
        shape: &[usize],
        out: &mut Vec<ShiftedTableau>,
    ) {
        if i == cells.len() {
            out.push(ShiftedTableau {
                shape: shape.to_vec(),
                rows: rows.clone(),
            });
            return;
        }
        let (r, c) = cells[i];
        let left = if c > 0 { Some(rows[r][c - 1]) } else { None };
        let col = r + c;
        let up = if r > 0 && col - (r - 1) < rows[r - 1].len() {
            Some(rows[r - 1][col - (r - 1)])
        } else {
            None
        };
        let lo = left.unwrap_or(1).max(up.unwrap_or(1));
        for v in lo..=2 * k {
            if primed && c == 0 && is_circled(v) {
                continue;
            }
            if left == Some(v) && is_circled(v) {
                continue;
            }
            if up == Some(v) && !is_circled(v) {
                continue;
            }
            rows[r].push(v);
            rec(i + 1, cells, k, primed, rows, shape, out);
            rows[r].pop();
        }
    }
    let first_choices: Vec<u32> = if cells.is_empty() { vec![] } else { (1..=2 * k as u32).collect() };
    if cells.is_empty() {
        return vec![ShiftedTableau { shape, rows: vec![] }];
    }
    let mut chunks: Vec<Vec<ShiftedTableau>> = first_choices
        .into_par_iter()
        .map(|v| {
            let mut out = Vec::new();
            if primed && is_circled(v) {
                return out;
            }
            let mut rows: Vec<Vec<u32>> = shape.iter().map(|&l| Vec::with_capacity(l)).collect();
            rows[0].push(v);
            rec(1, &cells, k as u32, primed, &mut rows, &shape, &mut out);
            out
        })
        .collect();
    chunks.iter_mut().flat_map(std::mem::take).collect()
}

/// Schur polynomial `s_λ(z_1, ..., z_k)`.
pub fn schur(lambda: &[usize], k: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    for t in ssyt(lambda, k) {
        p.add_term(BigRational::from_integer(1.into()), t.weight());
    }
    p
}

/// Schur `Q`-function `Q_μ(x_1, ..., x_k)`.
pub fn schur_q(mu: &[usize], k: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    for t in circled_tableaux(mu, k, false) {
        p.add_term(BigRational::from_integer(1.into()), t.weight());
    }
    p
}

/// Schur `P`-function `P_μ(x_1, ..., x_k)`.
pub fn schur_p(mu: &[usize], k: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    for t in circled_tableaux(mu, k, true) {
        p.add_term(BigRational::from_integer(1.into()), t.weight());
    }
    p
}

/// A tableau attached to a Grassmannian dream.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tableau {
    Young(YoungTableau),
    Shifted(ShiftedTableau),
}

impl Tableau {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Tableau::Young(t) => t.to_json(),
            Tableau::Shifted(t) => t.to_json(),
        }
    }
}

/// Reduces `d` to its bottom dream, tracking where each element started.
/// Returns the bottom dream and, for every cell, the original cell of the
/// element that ends there.
fn reduce_tracked(d: &PipeDream) -> Result<(PipeDream, Vec<Option<usize>>)> {
    let mut origin: Vec<Option<usize>> = d
        .contents()
        .iter()
        .enumerate()
        .map(|(i, c)| c.is_significant().then_some(i))
        .collect();
    let mut cur = d.clone();
    while let Some(m) = admissible_moves(&cur).into_iter().next() {
        if m.kind != 1 && m.kind != 5 {
            return Err(Error::InapplicableMove(format!("move {} cannot be tracked", m.kind)));
        }
        cur = apply_move(&cur, &m)?;
        origin[m.target] = origin[m.source].take();
    }
    Ok((cur, origin))
}

fn grassmannian_descent(w: &SignedPermutation) -> Result<(usize, Vec<usize>)> {
    match grassmannian_data(w, GroupType::A) {
        Some(GrassmannianData::Unsigned { descent, lambda }) => Ok((descent, lambda)),
        _ => Err(Error::NotGrassmannian(w.to_string())),
    }
}

fn grassmannian_mu(w: &SignedPermutation) -> Result<Vec<usize>> {
    match grassmannian_data(w, GroupType::B) {
        Some(GrassmannianData::Signed { mu }) => Ok(mu),
        _ => Err(Error::NotGrassmannian(w.to_string())),
    }
}

/// Maps a dream of Grassmannian shape to its tableau: a semistandard
/// tableau in type `A`, a circled shifted tableau in types `B` and `C`.
pub fn dream_to_tableau(d: &PipeDream) -> Result<Tableau> {
    let base = d.base();
    let w = d.shape();
    if !d.is_reduced() {
        return Err(Error::DreamMismatch("dream is not reduced".into()));
    }
    let (bottom, origin) = reduce_tracked(d)?;
    match base.group {
        GroupType::A => {
            let (k, lambda) = grassmannian_descent(&w)?;
            let shape: Vec<usize> = lambda.iter().copied().filter(|&x| x > 0).collect();
            let mut rows: Vec<Vec<u32>> = shape.iter().map(|&l| vec![0; l]).collect();
            for (i, cell) in base.cells.iter().enumerate() {
                if !bottom.content(i).is_significant() {
                    continue;
                }
                let orig = &base.cells[origin[i].expect("tracked element")];
                let p = k + 1 - cell.stair_row;
                rows[p - 1][cell.index - 1] = (k + 1 - orig.stair_row) as u32;
            }
            Ok(Tableau::Young(YoungTableau { shape, rows }))
        }
        GroupType::B | GroupType::C => {
            let mu = grassmannian_mu(&w)?;
            let mut rows: Vec<Vec<u32>> = mu.iter().map(|&l| vec![0; l]).collect();
            for (i, cell) in base.cells.iter().enumerate() {
                if !bottom.content(i).is_significant() {
                    continue;
                }
                let Block::Gamma(j) = cell.block else {
                    return Err(Error::DreamMismatch("staircase element in a Grassmannian dream".into()));
                };
                let pos = match (base.group, cell.part) {
                    (GroupType::B, Part::Corner) => 0,
                    (GroupType::B, _) => cell.index,
                    (_, Part::Vertical) => 0,
                    (_, _) => cell.index,
                };
                let orig = &base.cells[origin[i].expect("tracked element")];
                let Block::Gamma(j0) = orig.block else {
                    return Err(Error::DreamMismatch("element started outside the Γ-blocks".into()));
                };
                let circle = orig.part == Part::Vertical;
                rows[j - 1][pos] = circled(j0 as u32, circle);
            }
            Ok(Tableau::Shifted(ShiftedTableau { shape: mu, rows }))
        }
        GroupType::D => Err(Error::NotGrassmannian("no explicit bijection in type D".into())),
    }
}

/// Inverse of [`dream_to_tableau`] on the given base.
pub fn tableau_to_dream(t: &Tableau, w: &SignedPermutation, base: &Arc<Base>) -> Result<PipeDream> {
    let bottom = bottom_dream_on(base, w)?;
    let mut targets: Vec<(usize, Target)> = Vec::new();
    match (t, base.group) {
        (Tableau::Young(y), GroupType::A) => {
            let (k, _) = grassmannian_descent(w)?;
            for (i, cell) in base.cells.iter().enumerate() {
                if bottom.content(i).is_significant() {
                    let p = k + 1 - cell.stair_row;
                    let e = *y
                        .rows
                        .get(p - 1)
                        .and_then(|r| r.get(cell.index - 1))
                        .ok_or_else(|| Error::InvalidTableau("shape mismatch".into()))?;
                    if e == 0 || e as usize > k {
                        return Err(Error::InvalidTableau(format!("entry {e} out of range")));
                    }
                    targets.push((i, Target::Row(k + 1 - e as usize)));
                }
            }
        }
        (Tableau::Shifted(s), GroupType::B | GroupType::C) => {
            for (i, cell) in base.cells.iter().enumerate() {
                if !bottom.content(i).is_significant() {
                    continue;
                }
                let Block::Gamma(j) = cell.block else { continue };
                let pos = match cell.part {
                    Part::Corner | Part::Vertical => 0,
                    _ => cell.index,
                };
                let e = *s
                    .rows
                    .get(j - 1)
                    .and_then(|r| r.get(pos))
                    .ok_or_else(|| Error::InvalidTableau("shape mismatch".into()))?;
                let block = value_of(e) as usize;
                if block == 0 || block > base.k {
                    return Err(Error::InvalidTableau(format!("entry {e} exceeds the base")));
                }
                targets.push((i, Target::Gamma(block, is_circled(e))));
            }
        }
        _ => return Err(Error::InvalidTableau("tableau kind does not match the base type".into())),
    }
    let mut cur = bottom;
    for (start, target) in targets {
        let mut at = start;
        let min_row = target.row_bound(base);
        while !target.reached(&base.cells[at]) {
            let (next, nd) = lift(&cur, at, min_row)
                .ok_or_else(|| Error::InvalidTableau(format!("cannot lift element to {target:?}")))?;
            at = next;
            cur = nd;
        }
    }
    if cur.shape() != *w || !cur.is_reduced() {
        return Err(Error::InvalidTableau("lifting produced a dream of the wrong shape".into()));
    }
    Ok(cur)
}

#[derive(Debug, Clone, Copy)]
enum Target {
    Row(usize),
    Gamma(usize, bool),
}

impl Target {
    fn reached(&self, cell: &crate::pipedream::Cell) -> bool {
        match *self {
            Target::Row(r) => cell.stair_row == r,
            Target::Gamma(j, vertical) => {
                cell.block == Block::Gamma(j) && ((cell.part == Part::Vertical) == vertical)
            }
        }
    }

    fn row_bound(&self, base: &Base) -> usize {
        match *self {
            Target::Row(r) => base
                .cells
                .iter()
                .filter(|c| c.block == Block::Staircase && c.stair_row == r)
                .map(|c| c.row)
                .min()
                .unwrap_or(0),
            Target::Gamma(j, _) => base
                .cells
                .iter()
                .filter(|c| c.block == Block::Gamma(j))
                .map(|c| c.row)
                .min()
                .unwrap_or(0),
        }
    }
}

/// Moves the element at cell `b` up by one inverse move, landing in the
/// nearest row not above `min_row`. Returns the new cell and dream.
fn lift(d: &PipeDream, b: usize, min_row: usize) -> Option<(usize, PipeDream)> {
    let base = d.base();
    let cb = d.content(b);
    let shape = d.shape();
    let mut best: Option<(usize, PipeDream)> = None;
    for (a, cell) in base.cells.iter().enumerate() {
        if cell.row >= base.cells[b].row || cell.row < min_row {
            continue;
        }
        for &(a0, b0, a1, b1) in [MOVES[0], MOVES[4]].iter() {
            if d.content(a) != a1 || cb != b1 || !cell.allows(a0) || !base.cells[b].allows(b0) {
                continue;
            }
            let mut contents = d.contents().to_vec();
            contents[a] = a0;
            contents[b] = b0;
            let Ok(nd) = PipeDream::from_contents(base.clone(), contents) else { continue };
            if !nd.is_reduced() || nd.shape() != shape {
                continue;
            }
            let better = match &best {
                None => true,
                Some((o, _)) => {
                    let oc = &base.cells[*o];
                    (cell.row, cell.col) > (oc.row, oc.col)
                }
            };
            if better {
                best = Some((a, nd));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipedream::enumerate;
    use crate::poly::power_sum;
    use crate::weyl::{elements, parse_word};
    use proptest::prelude::*;

    fn p(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    fn int(v: i64) -> Polynomial {
        Polynomial::integer(v)
    }

    /// `h_d(z_1..z_k)` by listing exponent vectors.
    fn complete_h(d: i64, k: usize) -> Polynomial {
        if d < 0 {
            return Polynomial::zero();
        }
        let mut out = Polynomial::zero();
        let mut stack = vec![(Vec::<u32>::new(), d as u32)];
        while let Some((e, left)) = stack.pop() {
            if e.len() == k {
                if left == 0 {
                    out = out + Polynomial::term(BigRational::from_integer(1.into()), Monomial::new(e, vec![], vec![]));
                }
                continue;
            }
            for a in 0..=left {
                let mut f = e.clone();
                f.push(a);
                stack.push((f, left - a));
            }
        }
        out
    }

    fn det(m: Vec<Vec<Polynomial>>) -> Polynomial {
        let n = m.len();
        if n == 0 {
            return int(1);
        }
        let mut total = Polynomial::zero();
        for c in 0..n {
            let minor: Vec<Vec<Polynomial>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &m[0][c] * &det(minor);
            total = if c % 2 == 0 { total + term } else { total - term };
        }
        total
    }

    /// `q_r(x_1..x_k)`: coefficient of `u^r` in `Π (1 + x_i u)/(1 - x_i u)`.
    fn q_r(r: i64, k: usize) -> Polynomial {
        if r < 0 {
            return Polynomial::zero();
        }
        if r == 0 {
            return int(1);
        }
        let mut series = vec![int(1)];
        for i in 1..=k {
            let x = Polynomial::x(i);
            let factor: Vec<Polynomial> = (0..=r)
                .map(|d| if d == 0 { int(1) } else { x.pow(d as u32).scale(&BigRational::from_integer(2.into())) })
                .collect();
            let mut next = vec![Polynomial::zero(); r as usize + 1];
            for (a, sa) in series.iter().enumerate() {
                for (b, fb) in factor.iter().enumerate() {
                    if a + b <= r as usize {
                        next[a + b] = &next[a + b] + &(sa * fb);
                    }
                }
            }
            series = next;
        }
        series[r as usize].clone()
    }

    #[test]
    fn peaks_example() {
        let a = parse_word("s1 s2 s0 s2 s1^ s2").unwrap();
        assert_eq!(peaks(&a), [2, 4].into_iter().collect());
        assert!(peaks(&parse_word("s1^ s1").unwrap()).is_empty());
    }

    #[test]
    fn x_admissible_matches_brute_force() {
        for word in ["s0 s1 s0", "s1 s2 s1", "s2 s1 s0 s1", "s1 s1^ s2 s1"] {
            let a = parse_word(word).unwrap();
            for k in 1..=3 {
                let fast: BTreeSet<Vec<usize>> = x_admissible(&a, k).into_iter().map(|x| x.seq).collect();
                let mut brute = BTreeSet::new();
                let total = k.pow(a.len() as u32);
                for code in 0..total {
                    let seq: Vec<usize> = (0..a.len()).map(|i| code / k.pow(i as u32) % k + 1).collect();
                    if is_x_admissible(&a, &seq, k) {
                        brute.insert(seq);
                    }
                }
                assert_eq!(fast, brute, "{word} k={k}");
            }
        }
    }

    #[test]
    fn z_admissible_gives_schubert_a() {
        let z = Polynomial::z;
        assert_eq!(schubert_a_from_words(&p("1 3 2")), z(1) + z(2));
        assert_eq!(schubert_a_from_words(&p("2 3 1")), &z(1) * &z(2));
        assert_eq!(schubert_a_from_words(&p("3 1 2")), z(1).pow(2));
        assert_eq!(schubert_a_from_words(&p("3 2 1")), &z(1).pow(2) * &z(2));
        let base = Arc::new(Base::new(GroupType::A, 4, 0, false).unwrap());
        for w in elements(GroupType::A, 4) {
            let dreams: Polynomial = enumerate(&base, &w).unwrap().iter().map(PipeDream::weight).sum();
            assert_eq!(schubert_a_from_words(&w), dreams, "{w}");
        }
    }

    #[test]
    fn schur_matches_jacobi_trudi() {
        for lambda in [vec![1], vec![2], vec![2, 1], vec![3, 1], vec![2, 2], vec![2, 1, 1]] {
            for k in 1..=3 {
                let l = lambda.len();
                let m: Vec<Vec<Polynomial>> = (0..l)
                    .map(|i| (0..l).map(|j| complete_h(lambda[i] as i64 - i as i64 + j as i64, k)).collect())
                    .collect();
                assert_eq!(schur(&lambda, k), det(m), "{lambda:?} k={k}");
            }
        }
    }

    #[test]
    fn schur_q_matches_pfaffian_rows() {
        for k in 1..=3 {
            for r in 1..=4 {
                assert_eq!(schur_q(&[r], k), q_r(r as i64, k), "Q_({r}) k={k}");
                assert_eq!(schur_q(&[r], k), schur_p(&[r], k).scale(&BigRational::from_integer(2.into())));
            }
            for (a, b) in [(2usize, 1usize), (3, 1), (3, 2), (4, 1)] {
                let mut oracle = &q_r(a as i64, k) * &q_r(b as i64, k);
                for i in 1..=b {
                    let t = (&q_r((a + i) as i64, k) * &q_r((b - i) as i64, k)).scale(&BigRational::from_integer(2.into()));
                    oracle = if i % 2 == 1 { oracle - t } else { oracle + t };
                }
                assert_eq!(schur_q(&[a, b], k), oracle, "Q_({a},{b}) k={k}");
                assert_eq!(schur_q(&[a, b], k), schur_p(&[a, b], k).scale(&BigRational::from_integer(4.into())));
            }
        }
        assert_eq!(schur_q(&[1], 3), power_sum(1, 3).scale(&BigRational::from_integer(2.into())));
    }

    #[test]
    fn stanley_functions_of_grassmannian_elements() {
        for n in 1..=3 {
            for w in elements(GroupType::C, n) {
                if let Some(GrassmannianData::Signed { mu }) = grassmannian_data(&w, GroupType::C) {
                    for k in 1..=3 {
                        assert_eq!(stanley_f(&w, k), schur_q(&mu, k), "{w} k={k}");
                    }
                }
            }
            if n >= 2 {
                for w in elements(GroupType::D, n) {
                    if let Some(GrassmannianData::Signed { mu }) = grassmannian_data(&w, GroupType::D) {
                        assert_eq!(stanley_e(&w, 3), schur_p(&mu, 3), "{w}");
                    }
                }
            }
        }
    }

    #[test]
    fn tableau_json_and_latex() {
        let t = ShiftedTableau {
            shape: vec![2],
            rows: vec![vec![circled(1, false), circled(2, true)]],
        };
        assert!(t.is_valid(2, true));
        assert_eq!(t.to_json().to_string(), r#"{"rows":[["1","2'"]],"shape":[2]}"#);
        assert!(t.to_latex().contains("2^\\circ"));
        let y = YoungTableau {
            shape: vec![2, 1],
            rows: vec![vec![1, 1], vec![2]],
        };
        assert!(y.is_valid(2));
        assert_eq!(y.to_latex(), "\\begin{ytableau} 1 & 1 \\\\ 2 \\end{ytableau}");
    }

    fn check_bijection(base: &Arc<Base>, w: &SignedPermutation) -> usize {
        let dreams = enumerate(base, w).unwrap();
        let mut seen = BTreeSet::new();
        for d in &dreams {
            let t = dream_to_tableau(d).unwrap();
            let json = t.to_json().to_string();
            assert!(seen.insert(json), "{w}: duplicate tableau");
            match &t {
                Tableau::Young(y) => {
                    let (k, _) = grassmannian_descent(w).unwrap();
                    assert!(y.is_valid(k), "{w}: {y:?}");
                    let renamed = Polynomial::term(BigRational::from_integer(1.into()), d.monomial())
                        .rename(|v| match v {
                            Var::Z(i) => (Var::Z(k + 1 - i), false),
                            other => (other, false),
                        });
                    assert_eq!(renamed, Polynomial::term(BigRational::from_integer(1.into()), y.weight()));
                }
                Tableau::Shifted(s) => {
                    assert!(s.is_valid(base.k, base.group == GroupType::B), "{w}: {s}");
                    assert_eq!(s.weight(), d.monomial(), "{w}");
                }
            }
            assert_eq!(&tableau_to_dream(&t, w, base).unwrap(), d, "{w}: round trip");
        }
        dreams.len()
    }

    #[test]
    fn type_a_bijection() {
        let base = Arc::new(Base::new(GroupType::A, 5, 0, false).unwrap());
        for w in elements(GroupType::A, 5) {
            if let Some(GrassmannianData::Unsigned { descent, lambda }) = grassmannian_data(&w, GroupType::A) {
                let count = check_bijection(&base, &w);
                assert_eq!(count, ssyt(&lambda, descent).len(), "{w}");
            }
        }
    }

    #[test]
    fn type_bc_bijection() {
        for t in [GroupType::B, GroupType::C] {
            for n in 1..=3 {
                for k in 1..=3 {
                    let base = Arc::new(Base::new(t, n, k, false).unwrap());
                    for w in elements(t, n) {
                        if let Some(GrassmannianData::Signed { mu }) = grassmannian_data(&w, t) {
                            if mu.len() > k {
                                continue;
                            }
                            let count = check_bijection(&base, &w);
                            assert_eq!(count, circled_tableaux(&mu, k, t == GroupType::B).len(), "{t} {w} k={k}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_rejects_bad_tableaux() {
        let base = Arc::new(Base::new(GroupType::C, 2, 2, false).unwrap());
        let bad = Tableau::Shifted(ShiftedTableau {
            shape: vec![2],
            rows: vec![vec![circled(3, false), circled(3, false)]],
        });
        assert!(tableau_to_dream(&bad, &p("-2 1"), &base).is_err());
        let wrong = Tableau::Young(YoungTableau {
            shape: vec![1],
            rows: vec![vec![1]],
        });
        assert!(tableau_to_dream(&wrong, &p("-2 1"), &base).is_err());
    }

    proptest! {
        #[test]
        fn circled_tableaux_are_valid(mu in prop::sample::select(vec![vec![1usize], vec![2], vec![2, 1], vec![3, 1], vec![3, 2]]), k in 1usize..4, primed: bool) {
            for t in circled_tableaux(&mu, k, primed) {
                prop_assert!(t.is_valid(k, primed));
            }
        }

        #[test]
        fn q_is_symmetric(k in 2usize..5, i in 1usize..4) {
            prop_assume!(i < k);
            let q = schur_q(&[2, 1], k);
            let swapped = q.rename(|v| match v {
                Var::X(j) if j == i => (Var::X(i + 1), false),
                Var::X(j) if j == i + 1 => (Var::X(i), false),
                other => (other, false),
            });
            prop_assert_eq!(q, swapped);
        }
    }
}
