//! Bases, signed pipe dreams, enumeration, admissible moves and bottom dreams.
//!
//! A [`Base`] lists its fillable cells in reading order (right to left, top
//! to bottom): the upper staircase of a double base, then the Γ-blocks from
//! block `k` down to block `1`, then the staircase block. Each cell records
//! its global `(row, col)` position, the letter a crossing emits, the weight
//! variable and the admissible contents.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Var};
use crate::weyl::{lehmer_code, GroupType, Letter, SignedPermutation, Word};

/// Content of a single cell.
///
/// The derived order is the canonical order used to sort dreams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellContent {
    Elbow,
    ElbowUp,
    Cross,
    ElbowWithFaucet,
    CrossWithFaucet,
    ElbowTwoFaucets,
    SingleElbow,
}

impl CellContent {
    /// Compact glyph used in ASCII renderings.
    pub fn glyph(self) -> char {
        match self {
            CellContent::Elbow | CellContent::ElbowUp => '.',
            CellContent::Cross => '+',
            CellContent::ElbowWithFaucet => 'o',
            CellContent::CrossWithFaucet => '@',
            CellContent::ElbowTwoFaucets => '%',
            CellContent::SingleElbow => '/',
        }
    }

    /// Exponent the cell contributes to its variable.
    pub fn weight(self) -> u32 {
        match self {
            CellContent::Cross | CellContent::ElbowWithFaucet | CellContent::CrossWithFaucet => 1,
            CellContent::ElbowTwoFaucets => 2,
            _ => 0,
        }
    }

    /// Whether the content carries at least one letter.
    pub fn is_significant(self) -> bool {
        self.weight() > 0
    }

    fn latex(self) -> &'static str {
        match self {
            CellContent::Cross => "+",
            CellContent::ElbowWithFaucet => "\\circ",
            CellContent::CrossWithFaucet => "\\oplus",
            CellContent::ElbowTwoFaucets => "\\%",
            _ => "\\none",
        }
    }
}

/// Which block of the base a cell belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Block {
    /// The north-east staircase of a double base (variables `-t_c`).
    Upper,
    /// The Γ-block with variable `x_j`.
    Gamma(usize),
    /// The staircase block (variables `z_r`).
    Staircase,
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Upper => f.write_str("upper"),
            Block::Gamma(j) => write!(f, "gamma{j}"),
            Block::Staircase => f.write_str("staircase"),
        }
    }
}

/// Position of a cell inside its Γ-block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Part {
    Horizontal,
    Vertical,
    Corner,
    /// Staircase cells.
    Diagonal,
}

/// A fillable cell of a base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub block: Block,
    pub part: Part,
    /// Letter index inside a Γ-block, or the column inside a staircase.
    pub index: usize,
    /// Staircase row (1-based) for staircase cells; 0 otherwise.
    pub stair_row: usize,
    /// Global row, increasing downwards.
    pub row: usize,
    /// Global column, increasing rightwards.
    pub col: usize,
    /// Letter emitted by a plain crossing.
    pub letter: Letter,
    pub var: Var,
    /// Whether the weight variable enters with a minus sign (`-t_c`).
    pub negated: bool,
    /// Allowed contents; the first entry is the empty state.
    pub options: Vec<CellContent>,
}

impl Cell {
    /// Letters emitted by `c` placed in this cell, in reading order.
    pub fn letters(&self, c: CellContent) -> Vec<Letter> {
        match c {
            CellContent::Cross => vec![self.letter],
            CellContent::ElbowWithFaucet => vec![Letter::Zero],
            CellContent::CrossWithFaucet => vec![Letter::OneHat],
            CellContent::ElbowTwoFaucets => vec![Letter::S(1), Letter::OneHat],
            _ => vec![],
        }
    }

    pub fn empty(&self) -> CellContent {
        self.options[0]
    }

    pub fn allows(&self, c: CellContent) -> bool {
        self.options.contains(&c)
    }

    /// Largest number of letters any allowed content emits.
    pub fn capacity(&self) -> usize {
        self.options.iter().map(|&c| self.letters(c).len()).max().unwrap_or(0)
    }
}

/// The block geometry for a group type, rank `n` and `k` Γ-blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Base {
    pub group: GroupType,
    pub n: usize,
    pub k: usize,
    pub double: bool,
    pub cells: Vec<Cell>,
}

impl Base {
    /// Lays out the base. Type `A` ignores `k`.
    pub fn new(group: GroupType, n: usize, k: usize, double: bool) -> Result<Base> {
        if n == 0 || (group == GroupType::D && n < 2) {
            return Err(Error::EmptyBase);
        }
        let k = if group == GroupType::A { 0 } else { k };
        let top = if double { n - 1 } else { 0 };
        let height = match group {
            GroupType::A => 0,
            GroupType::B => n,
            GroupType::C => n + 1,
            GroupType::D => n - 1,
        };
        let plain = vec![CellContent::Elbow, CellContent::Cross];
        let faucet = vec![CellContent::ElbowUp, CellContent::ElbowWithFaucet];
        let mut cells = Vec::new();
        let stair = |block: Block, r: usize, c: usize, row: usize, col: usize, var: Var, neg: bool| Cell {
            block,
            part: Part::Diagonal,
            index: c,
            stair_row: r,
            row,
            col,
            letter: Letter::S((r + c - 1) as u8),
            var,
            negated: neg,
            options: vec![CellContent::Elbow, CellContent::Cross],
        };
        if double {
            for r in 1..n {
                for c in (1..=n - r).rev() {
                    cells.push(stair(Block::Upper, r, c, r, c + n + 1, Var::T(c), true));
                }
            }
        }
        for j in (1..=k).rev() {
            let btop = top + (k - j) * height + 1;
            let base = 1;
            let var = Var::X(j);
            let gamma = |part: Part, i: usize, row: usize, col: usize, letter: Letter, options: &Vec<CellContent>| Cell {
                block: Block::Gamma(j),
                part,
                index: i,
                stair_row: 0,
                row,
                col,
                letter,
                var,
                negated: false,
                options: options.clone(),
            };
            match group {
                GroupType::C => {
                    for i in (1..n).rev() {
                        cells.push(gamma(Part::Horizontal, i, btop, base + 1 + i, Letter::S(i as u8), &plain));
                    }
                    cells.push(gamma(Part::Horizontal, 0, btop, base + 1, Letter::Zero, &faucet));
                    cells.push(gamma(Part::Vertical, 0, btop + 1, base, Letter::Zero, &faucet));
                    for i in 1..n {
                        cells.push(gamma(Part::Vertical, i, btop + 1 + i, base, Letter::S(i as u8), &plain));
                    }
                }
                GroupType::B => {
                    for i in (1..n).rev() {
                        cells.push(gamma(Part::Horizontal, i, btop, base + i, Letter::S(i as u8), &plain));
                    }
                    cells.push(gamma(Part::Corner, 0, btop, base, Letter::Zero, &faucet));
                    for i in 1..n {
                        cells.push(gamma(Part::Vertical, i, btop + i, base, Letter::S(i as u8), &plain));
                    }
                }
                GroupType::D => {
                    for i in (2..n).rev() {
                        cells.push(gamma(Part::Horizontal, i, btop, base + i - 1, Letter::S(i as u8), &plain));
                    }
                    let corner = vec![
                        CellContent::Elbow,
                        CellContent::Cross,
                        CellContent::CrossWithFaucet,
                        CellContent::ElbowTwoFaucets,
                    ];
                    cells.push(gamma(Part::Corner, 1, btop, base, Letter::S(1), &corner));
                    for i in 2..n {
                        cells.push(gamma(Part::Vertical, i, btop + i - 1, base, Letter::S(i as u8), &plain));
                    }
                }
                GroupType::A => unreachable!(),
            }
        }
        for r in 1..n {
            for c in (1..=n - r).rev() {
                cells.push(stair(Block::Staircase, r, c, top + k * height + r, c, Var::Z(r), false));
            }
        }
        Ok(Base {
            group,
            n,
            k,
            double,
            cells,
        })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Index of the staircase cell in row `r`, column `c` of `block`.
    pub fn stair_cell(&self, block: Block, r: usize, c: usize) -> Option<usize> {
        self.cells
            .iter()
            .position(|x| x.block == block && x.part == Part::Diagonal && x.stair_row == r && x.index == c)
    }

    /// Index of the Γ-block cell with the given part and letter index.
    pub fn gamma_cell(&self, j: usize, part: Part, i: usize) -> Option<usize> {
        self.cells
            .iter()
            .position(|x| x.block == Block::Gamma(j) && x.part == part && x.index == i)
    }

    /// Index of the cell at a global position.
    pub fn cell_at(&self, row: usize, col: usize) -> Option<usize> {
        self.cells.iter().position(|x| x.row == row && x.col == col)
    }

    fn length_type(&self) -> GroupType {
        self.group
    }
}

/// The reading word of a dream split by region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DreamWord {
    /// Letters of the whole base in reading order.
    pub word: Word,
    /// Letters from the upper staircase of a double base.
    pub upper: Word,
    /// Letters from the Γ-blocks.
    pub x: Word,
    /// Block index of each letter of `x`.
    pub x_blocks: Vec<usize>,
    /// Letters from the staircase block.
    pub z: Word,
    /// Staircase row of each letter of `z`.
    pub z_rows: Vec<usize>,
}

/// A filling of a base.
#[derive(Debug, Clone)]
pub struct PipeDream {
    base: Arc<Base>,
    contents: Vec<CellContent>,
}

impl PartialEq for PipeDream {
    fn eq(&self, other: &Self) -> bool {
        self.contents == other.contents && self.base_key() == other.base_key()
    }
}

impl Eq for PipeDream {}

impl std::hash::Hash for PipeDream {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.base_key().hash(state);
        self.contents.hash(state);
    }
}

impl PartialOrd for PipeDream {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PipeDream {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.base_key()
            .cmp(&other.base_key())
            .then_with(|| self.contents.cmp(&other.contents))
    }
}

impl PipeDream {
    /// The all-elbow filling.
    pub fn empty(base: Arc<Base>) -> Self {
        let contents = base.cells.iter().map(Cell::empty).collect();
        PipeDream { base, contents }
    }

    /// Builds a dream from a full content vector, checking eligibility.
    pub fn from_contents(base: Arc<Base>, contents: Vec<CellContent>) -> Result<Self> {
        if contents.len() != base.cells.len() {
            return Err(Error::DreamMismatch(format!(
                "expected {} cells, got {}",
                base.cells.len(),
                contents.len()
            )));
        }
        for (cell, &c) in base.cells.iter().zip(&contents) {
            if !cell.allows(c) {
                return Err(Error::DreamMismatch(format!(
                    "{c:?} not allowed in {} cell at ({}, {})",
                    cell.block, cell.row, cell.col
                )));
            }
        }
        Ok(PipeDream { base, contents })
    }

    /// Returns a copy with cell `i` set to `c`.
    pub fn with(&self, i: usize, c: CellContent) -> Result<Self> {
        let mut contents = self.contents.clone();
        contents[i] = c;
        PipeDream::from_contents(self.base.clone(), contents)
    }

    fn base_key(&self) -> (GroupType, usize, usize, bool) {
        (self.base.group, self.base.n, self.base.k, self.base.double)
    }

    pub fn base(&self) -> &Arc<Base> {
        &self.base
    }

    pub fn contents(&self) -> &[CellContent] {
        &self.contents
    }

    pub fn content(&self, i: usize) -> CellContent {
        self.contents[i]
    }

    /// Reading word with its split into upper, Γ and staircase parts.
    pub fn word(&self) -> DreamWord {
        let mut dw = DreamWord {
            word: Word::default(),
            upper: Word::default(),
            x: Word::default(),
            x_blocks: vec![],
            z: Word::default(),
            z_rows: vec![],
        };
        for (cell, &c) in self.base.cells.iter().zip(&self.contents) {
            let part = match cell.block {
                Block::Upper => &mut dw.upper,
                Block::Gamma(_) => &mut dw.x,
                Block::Staircase => &mut dw.z,
            };
            if c == CellContent::ElbowTwoFaucets {
                dw.word.push_marked_pair();
                part.push_marked_pair();
            } else {
                for l in cell.letters(c) {
                    dw.word.push(l);
                    part.push(l);
                }
            }
            let n_letters = cell.letters(c).len();
            match cell.block {
                Block::Gamma(j) => dw.x_blocks.extend(std::iter::repeat_n(j, n_letters)),
                Block::Staircase => dw.z_rows.extend(std::iter::repeat_n(cell.stair_row, n_letters)),
                Block::Upper => {}
            }
        }
        dw
    }

    /// Flat list of letters in reading order.
    pub fn letters(&self) -> Vec<Letter> {
        self.base
            .cells
            .iter()
            .zip(&self.contents)
            .flat_map(|(cell, &c)| cell.letters(c))
            .collect()
    }

    /// Product of the reading word.
    pub fn shape(&self) -> SignedPermutation {
        crate::weyl::product(&self.letters(), self.base.n)
    }

    /// Whether the reading word is reduced.
    pub fn is_reduced(&self) -> bool {
        crate::weyl::is_reduced_word(&self.letters(), self.base.length_type(), self.base.n)
    }

    /// Strand criterion: no two strands cross twice and no strand carries
    /// two faucets. Equivalent to [`PipeDream::is_reduced`].
    pub fn is_reduced_by_strands(&self) -> bool {
        strands_distinct(&self.letters(), self.base.n)
    }

    /// Signed weight `prod var^wt`, with `-t_c` in the upper staircase.
    pub fn weight(&self) -> Polynomial {
        let m = self.monomial();
        let neg = self
            .base
            .cells
            .iter()
            .zip(&self.contents)
            .filter(|(cell, _)| cell.negated)
            .map(|(_, c)| c.weight())
            .sum::<u32>()
            % 2
            == 1;
        let p = Polynomial::term(num_rational::BigRational::from_integer(1.into()), m);
        if neg {
            -p
        } else {
            p
        }
    }

    /// Unsigned weight monomial.
    pub fn monomial(&self) -> Monomial {
        let mut m = Monomial::one();
        for (cell, &c) in self.base.cells.iter().zip(&self.contents) {
            let e = c.weight();
            if e > 0 {
                m = m.mul(&Monomial::var_pow(cell.var, e));
            }
        }
        m
    }

    /// Number of cells holding two faucets.
    pub fn marked_pairs(&self) -> usize {
        self.contents
            .iter()
            .filter(|&&c| c == CellContent::ElbowTwoFaucets)
            .count()
    }

    /// Block-by-block ASCII picture using `+ . o @ %`.
    pub fn render_ascii(&self) -> String {
        let mut out = String::new();
        for block in self.blocks() {
            let idx: Vec<usize> = (0..self.base.cells.len())
                .filter(|&i| self.base.cells[i].block == block)
                .collect();
            let label = match block {
                Block::Upper => "[upper -t]".to_string(),
                Block::Gamma(j) => format!("[x{j}]"),
                Block::Staircase => "[staircase z]".to_string(),
            };
            out.push_str(&label);
            out.push('\n');
            let r0 = idx.iter().map(|&i| self.base.cells[i].row).min().unwrap_or(0);
            let r1 = idx.iter().map(|&i| self.base.cells[i].row).max().unwrap_or(0);
            let c0 = idx.iter().map(|&i| self.base.cells[i].col).min().unwrap_or(0);
            let c1 = idx.iter().map(|&i| self.base.cells[i].col).max().unwrap_or(0);
            for r in r0..=r1 {
                let mut line = String::new();
                for c in c0..=c1 {
                    let g = idx
                        .iter()
                        .find(|&&i| self.base.cells[i].row == r && self.base.cells[i].col == c)
                        .map(|&i| self.contents[i].glyph())
                        .unwrap_or(' ');
                    line.push(g);
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
        }
        out
    }

    fn blocks(&self) -> Vec<Block> {
        let mut v: Vec<Block> = Vec::new();
        for c in &self.base.cells {
            if !v.contains(&c.block) {
                v.push(c.block);
            }
        }
        v
    }

    /// `ytableau` fragment in the compact hook notation; empty Γ-blocks are
    /// omitted and the staircase is shaded.
    pub fn render_latex(&self) -> String {
        let n = self.base.n;
        let mut parts = Vec::new();
        for block in self.blocks() {
            let idx: Vec<usize> = (0..self.base.cells.len())
                .filter(|&i| self.base.cells[i].block == block)
                .collect();
            if matches!(block, Block::Gamma(_)) && idx.iter().all(|&i| !self.contents[i].is_significant()) {
                continue;
            }
            let r0 = idx.iter().map(|&i| self.base.cells[i].row).min().unwrap_or(0);
            let r1 = idx.iter().map(|&i| self.base.cells[i].row).max().unwrap_or(0);
            let c0 = idx.iter().map(|&i| self.base.cells[i].col).min().unwrap_or(0);
            let c1 = idx.iter().map(|&i| self.base.cells[i].col).max().unwrap_or(0);
            let mut rows = Vec::new();
            let mut shape = Vec::new();
            for r in r0..=r1 {
                let mut entries = Vec::new();
                let mut width = 0;
                for c in c0..=c1 {
                    if let Some(&i) = idx
                        .iter()
                        .find(|&&i| self.base.cells[i].row == r && self.base.cells[i].col == c)
                    {
                        entries.push(self.contents[i].latex().to_string());
                        width = c - c0 + 1;
                    } else {
                        entries.push("\\none".into());
                    }
                }
                entries.truncate(width);
                while entries.last().map(|e| e == "\\none").unwrap_or(false) {
                    entries.pop();
                }
                rows.push(entries.concat());
                shape.push(width.to_string());
            }
            let body = rows.join(",");
            let skeleton = shape.join(",");
            let frag = match block {
                Block::Staircase => format!("\\ytableaushort{{{body}}}*[*(white!25!gray)]{{{skeleton}}}"),
                _ => format!("\\ytableaushort{{{body}}}*{{{skeleton}}}"),
            };
            parts.push(frag);
        }
        let _ = n;
        parts.join(" \\quad ")
    }

    /// JSON value `{type,n,k,double,cells:[{block,row,col,content}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<_> = self
            .base
            .cells
            .iter()
            .zip(&self.contents)
            .map(|(cell, c)| {
                serde_json::json!({
                    "block": cell.block.to_string(),
                    "row": cell.row,
                    "col": cell.col,
                    "content": c,
                })
            })
            .collect();
        serde_json::json!({
            "type": self.base.group.to_string(),
            "n": self.base.n,
            "k": self.base.k,
            "double": self.base.double,
            "shape": self.shape().to_string(),
            "monomial": Polynomial::term(BigRational::one(), self.monomial()).to_text(),
            "cells": cells,
        })
    }

    /// Reads the format written by [`PipeDream::to_json`]. Only `type`, `n`,
    /// `k`, `double` and the non-empty cells are required.
    pub fn from_json(v: &serde_json::Value) -> Result<PipeDream> {
        let bad = |reason: &str| Error::Parse {
            input: v.to_string(),
            reason: reason.into(),
        };
        let group: GroupType = v["type"].as_str().ok_or_else(|| bad("missing type"))?.parse()?;
        let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let k = v["k"].as_u64().unwrap_or(0) as usize;
        let double = v["double"].as_bool().unwrap_or(false);
        let base = Arc::new(Base::new(group, n, k, double)?);
        let mut contents: Vec<CellContent> = base.cells.iter().map(Cell::empty).collect();
        for cell in v["cells"].as_array().ok_or_else(|| bad("missing cells"))? {
            let row = cell["row"].as_u64().ok_or_else(|| bad("cell without row"))? as usize;
            let col = cell["col"].as_u64().ok_or_else(|| bad("cell without col"))? as usize;
            let content: CellContent =
                serde_json::from_value(cell["content"].clone()).map_err(|e| bad(&e.to_string()))?;
            let i = base
                .cell_at(row, col)
                .ok_or_else(|| Error::DreamMismatch(format!("no cell at ({row}, {col})")))?;
            contents[i] = content;
        }
        PipeDream::from_contents(base, contents)
    }
}

impl fmt::Display for PipeDream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_ascii())
    }
}

/// Whether the reflections produced along the word are pairwise distinct.
fn strands_distinct(letters: &[Letter], n: usize) -> bool {
    #[derive(PartialEq, Eq, Hash)]
    enum Refl {
        Faucet(i32),
        Swap(i32, i32),
    }
    let swap = |p: i32, q: i32| {
        let (a, b) = if p.abs() < q.abs() { (p, q) } else { (q, p) };
        if a < 0 {
            Refl::Swap(-a, -b)
        } else {
            Refl::Swap(a, b)
        }
    };
    let mut seen = HashSet::new();
    let mut w = SignedPermutation::identity(n);
    for &s in letters {
        let r = match s {
            Letter::Zero => Refl::Faucet(w.at(1).abs()),
            Letter::OneHat => swap(w.at(1), -w.at(2)),
            Letter::S(i) => swap(w.at(i as i32), w.at(i as i32 + 1)),
        };
        if !seen.insert(r) {
            return false;
        }
        w = w.mul_letter(s);
    }
    true
}

static POOL: OnceLock<Option<rayon::ThreadPool>> = OnceLock::new();

/// Runs `f` on the pool sized by `PIPEDREAMS_THREADS`, if set.
pub fn with_thread_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let pool = POOL.get_or_init(|| {
        std::env::var("PIPEDREAMS_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&t| t > 0)
            .and_then(|t| rayon::ThreadPoolBuilder::new().num_threads(t).build().ok())
    });
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

#[derive(Clone)]
struct Partial {
    depth: usize,
    perm: SignedPermutation,
    len: usize,
    contents: Vec<CellContent>,
}

struct Search<'a> {
    base: &'a Base,
    target: Option<(&'a SignedPermutation, usize)>,
    capacity: Vec<usize>,
}

impl Search<'_> {
    fn extend(&self, p: &Partial, c: CellContent) -> Option<Partial> {
        let cell = &self.base.cells[p.depth];
        let mut perm = p.perm.clone();
        let mut len = p.len;
        for s in cell.letters(c) {
            perm = perm.mul_letter(s);
            len += 1;
            if perm.length(self.base.length_type()) != len {
                return None;
            }
        }
        if let Some((w, lw)) = self.target {
            if len > lw || self.capacity[p.depth + 1] < lw - len {
                return None;
            }
            if c.is_significant() && perm.inverse().compose(w).length(self.base.length_type()) != lw - len {
                return None;
            }
        }
        let mut contents = p.contents.clone();
        contents.push(c);
        Some(Partial {
            depth: p.depth + 1,
            perm,
            len,
            contents,
        })
    }

    fn children(&self, p: &Partial) -> Vec<Partial> {
        self.base.cells[p.depth]
            .options
            .iter()
            .filter_map(|&c| self.extend(p, c))
            .collect()
    }

    fn accept(&self, p: &Partial) -> bool {
        match self.target {
            Some((w, lw)) => p.len == lw && p.perm == *w,
            None => true,
        }
    }

    fn dfs(&self, p: Partial, out: &mut Vec<Partial>) {
        if p.depth == self.base.cells.len() {
            if self.accept(&p) {
                out.push(p);
            }
            return;
        }
        for child in self.children(&p) {
            self.dfs(child, out);
        }
    }

    fn run(&self) -> Vec<Partial> {
        let n = self.base.n;
        let root = Partial {
            depth: 0,
            perm: SignedPermutation::identity(n),
            len: 0,
            contents: Vec::with_capacity(self.base.cells.len()),
        };
        let mut frontier = vec![root];
        while frontier.len() < 64 && frontier.iter().all(|p| p.depth < self.base.cells.len()) {
            frontier = frontier.iter().flat_map(|p| self.children(p)).collect();
            if frontier.is_empty() {
                return vec![];
            }
        }
        let chunks: Vec<Vec<Partial>> = with_thread_pool(|| {
            frontier
                .into_par_iter()
                .map(|p| {
                    let mut out = Vec::new();
                    self.dfs(p, &mut out);
                    out
                })
                .collect()
        });
        chunks.into_iter().flatten().collect()
    }
}

fn search(base: &Base, target: Option<&SignedPermutation>) -> Vec<Partial> {
    let mut capacity = vec![0; base.cells.len() + 1];
    for i in (0..base.cells.len()).rev() {
        capacity[i] = capacity[i + 1] + base.cells[i].capacity();
    }
    let t = target.map(|w| (w, w.length(base.length_type())));
    Search {
        base,
        target: t,
        capacity,
    }
    .run()
}

/// All reduced dreams of shape `w` on `base`, in canonical order.
pub fn enumerate(base: &Arc<Base>, w: &SignedPermutation) -> Result<Vec<PipeDream>> {
    if w.n() != base.n {
        return Err(Error::InvalidPermutation(format!("{w} has rank {} but the base has rank {}", w.n(), base.n)));
    }
    w.check_in(base.group)?;
    let mut out: Vec<PipeDream> = search(base, Some(w))
        .into_iter()
        .map(|p| PipeDream {
            base: base.clone(),
            contents: p.contents,
        })
        .collect();
    out.sort();
    Ok(out)
}

/// All reduced dreams on `base`, grouped by shape.
pub fn enumerate_all(base: &Arc<Base>) -> BTreeMap<SignedPermutation, Vec<PipeDream>> {
    let mut map: BTreeMap<SignedPermutation, Vec<PipeDream>> = BTreeMap::new();
    for p in search(base, None) {
        map.entry(p.perm).or_default().push(PipeDream {
            base: base.clone(),
            contents: p.contents,
        });
    }
    for v in map.values_mut() {
        v.sort();
    }
    map
}

/// Sum of the signed weights of all reduced dreams of shape `w`.
pub fn dream_sum(base: &Arc<Base>, w: &SignedPermutation) -> Result<Polynomial> {
    Ok(enumerate(base, w)?.iter().map(PipeDream::weight).sum())
}

/// One of the ten local replacements `(a, b) -> (a', b')` with `a` above `b`.
pub const MOVES: [(CellContent, CellContent, CellContent, CellContent); 10] = {
    use CellContent::*;
    [
        (Cross, Elbow, Elbow, Cross),
        (CrossWithFaucet, Elbow, Elbow, Cross),
        (Cross, Elbow, Elbow, CrossWithFaucet),
        (CrossWithFaucet, Elbow, Elbow, CrossWithFaucet),
        (ElbowWithFaucet, ElbowUp, ElbowUp, ElbowWithFaucet),
        (ElbowTwoFaucets, Elbow, CrossWithFaucet, Cross),
        (ElbowTwoFaucets, Elbow, Cross, CrossWithFaucet),
        (CrossWithFaucet, Cross, Elbow, ElbowTwoFaucets),
        (Cross, CrossWithFaucet, Elbow, ElbowTwoFaucets),
        (ElbowTwoFaucets, Elbow, Cross, Cross),
    ]
};

/// A move from cell `source` (upper) to cell `target` (lower).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AdmissibleMove {
    pub source: usize,
    pub target: usize,
    /// 1-based index into [`MOVES`].
    pub kind: usize,
}

impl AdmissibleMove {
    fn order_key(&self, base: &Base) -> (std::cmp::Reverse<usize>, usize, usize, std::cmp::Reverse<usize>, usize) {
        let a = &base.cells[self.source];
        let b = &base.cells[self.target];
        (
            std::cmp::Reverse(a.row),
            a.col,
            b.row,
            std::cmp::Reverse(b.col),
            self.kind,
        )
    }
}

/// All moves applicable to `d`, in selection order: lowest source row,
/// leftmost source column, nearest target row, rightmost target column.
pub fn admissible_moves(d: &PipeDream) -> Vec<AdmissibleMove> {
    let base = &d.base;
    let shape = d.shape();
    let mut out = Vec::new();
    for (i, a) in base.cells.iter().enumerate() {
        let ca = d.contents[i];
        if !ca.is_significant() {
            continue;
        }
        for (j, b) in base.cells.iter().enumerate() {
            if a.row >= b.row {
                continue;
            }
            for (m, &(a0, b0, a1, b1)) in MOVES.iter().enumerate() {
                if ca != a0 || d.contents[j] != b0 || !a.allows(a1) || !b.allows(b1) {
                    continue;
                }
                let mut contents = d.contents.clone();
                contents[i] = a1;
                contents[j] = b1;
                let nd = PipeDream {
                    base: base.clone(),
                    contents,
                };
                if nd.is_reduced() && nd.shape() == shape {
                    out.push(AdmissibleMove {
                        source: i,
                        target: j,
                        kind: m + 1,
                    });
                }
            }
        }
    }
    out.sort_by_key(|m| m.order_key(base));
    out
}

/// Applies `m`, checking that it is admissible for `d`.
pub fn apply_move(d: &PipeDream, m: &AdmissibleMove) -> Result<PipeDream> {
    if !admissible_moves(d).contains(m) {
        return Err(Error::InapplicableMove(format!("{m:?}")));
    }
    let (_, _, a1, b1) = MOVES[m.kind - 1];
    let mut contents = d.contents.clone();
    contents[m.source] = a1;
    contents[m.target] = b1;
    Ok(PipeDream {
        base: d.base.clone(),
        contents,
    })
}

/// Sum of the rows of all significant cells, weighted by letter count.
/// Every admissible move strictly increases it.
pub fn row_potential(d: &PipeDream) -> usize {
    d.base
        .cells
        .iter()
        .zip(&d.contents)
        .map(|(cell, &c)| cell.row * cell.letters(c).len())
        .sum()
}

/// Greedy sequence of moves, each the first in selection order, ending at a
/// dream with no admissible moves.
pub fn reduce_to_bottom(d: &PipeDream) -> Vec<AdmissibleMove> {
    let mut cur = d.clone();
    let mut seq = Vec::new();
    while let Some(m) = admissible_moves(&cur).into_iter().next() {
        cur = apply_move(&cur, &m).expect("selected move is admissible");
        seq.push(m);
    }
    seq
}

/// Applies a sequence of moves.
pub fn apply_moves(d: &PipeDream, moves: &[AdmissibleMove]) -> Result<PipeDream> {
    moves.iter().try_fold(d.clone(), |cur, m| apply_move(&cur, m))
}

/// Number of Γ-blocks used by the bottom dream of `w`.
pub fn bottom_blocks(t: GroupType, w: &SignedPermutation) -> usize {
    let code = lehmer_code(w);
    match t {
        GroupType::A => 0,
        GroupType::B | GroupType::C => code.n.len(),
        GroupType::D => d_mu(&code.n).len(),
    }
}

fn d_mu(nvec: &[usize]) -> Vec<usize> {
    let mut mu: Vec<usize> = nvec.iter().map(|&x| x - 1).collect();
    if mu.last() == Some(&0) {
        mu.pop();
    }
    mu
}

/// The bottom dream of `w` on the smallest base that holds it.
pub fn bottom_dream(t: GroupType, w: &SignedPermutation) -> Result<PipeDream> {
    let base = Arc::new(Base::new(t, w.n(), bottom_blocks(t, w), false)?);
    bottom_dream_on(&base, w)
}

/// The bottom dream of `w` built from its signed Lehmer code on `base`.
pub fn bottom_dream_on(base: &Arc<Base>, w: &SignedPermutation) -> Result<PipeDream> {
    let t = base.group;
    w.check_in(t)?;
    let need = bottom_blocks(t, w);
    if need > base.k && t != GroupType::A {
        return Err(Error::InsufficientTruncation {
            needed: need,
            given: base.k,
        });
    }
    let code = lehmer_code(w);
    let mut d = PipeDream::empty(base.clone());
    let mut set = |i: Option<usize>, c: CellContent| -> Result<()> {
        let i = i.ok_or_else(|| Error::DreamMismatch("bottom dream cell missing".into()))?;
        d.contents[i] = c;
        Ok(())
    };
    for (r, &l) in code.l.iter().enumerate() {
        for c in 1..=l {
            set(base.stair_cell(Block::Staircase, r + 1, c), CellContent::Cross)?;
        }
    }
    match t {
        GroupType::A => {}
        GroupType::B => {
            for (j, &nj) in code.n.iter().enumerate() {
                set(base.gamma_cell(j + 1, Part::Corner, 0), CellContent::ElbowWithFaucet)?;
                for i in 1..nj {
                    set(base.gamma_cell(j + 1, Part::Horizontal, i), CellContent::Cross)?;
                }
            }
        }
        GroupType::C => {
            for (j, &nj) in code.n.iter().enumerate() {
                set(base.gamma_cell(j + 1, Part::Vertical, 0), CellContent::ElbowWithFaucet)?;
                for i in 1..nj {
                    set(base.gamma_cell(j + 1, Part::Horizontal, i), CellContent::Cross)?;
                }
            }
        }
        GroupType::D => {
            for (j, &mj) in d_mu(&code.n).iter().enumerate() {
                let corner = if j % 2 == 0 {
                    CellContent::CrossWithFaucet
                } else {
                    CellContent::Cross
                };
                set(base.gamma_cell(j + 1, Part::Corner, 1), corner)?;
                for i in 2..=mj {
                    set(base.gamma_cell(j + 1, Part::Horizontal, i), CellContent::Cross)?;
                }
            }
        }
    }
    if !d.is_reduced() || d.shape() != *w {
        return Err(Error::DreamMismatch(format!("bottom construction for {w} gave {}", d.shape())));
    }
    Ok(d)
}

/// Renders a list of dreams with a count header, as printed by the CLI.
pub fn render_list(dreams: &[PipeDream]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", dreams.len());
    for (i, d) in dreams.iter().enumerate() {
        let _ = writeln!(s, "# {} weight {}", i + 1, d.weight());
        s.push_str(&d.render_ascii());
    }
    s
}
