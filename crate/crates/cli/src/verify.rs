//! Verification suites behind `pipedreams verify`.

use std::collections::BTreeSet;
use std::sync::Arc;

use anyhow::{bail, Result};
use clap::ValueEnum;
use pipedreams_core::pipedream::{apply_moves, bottom_blocks, bottom_dream_on, enumerate, reduce_to_bottom};
use pipedreams_core::poly::power_sum;
use pipedreams_core::schubert::{schubert_a, schubert_bcd, schubert_via_bh, verify_divided_difference};
use pipedreams_core::symfun::{dream_to_tableau, schur, schur_p, schur_q, tableau_to_dream};
use pipedreams_core::weyl::{elements, grassmannian_data, parse_word, product, GrassmannianData};
use pipedreams_core::{Base, BigRational, Error, Family, GroupType, Polynomial, SignedPermutation};
use serde_json::json;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    DividedDiff,
    Bottom,
    Oracles,
    Grassmannian,
    Appendix,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::DividedDiff => "divided-diff",
            Suite::Bottom => "bottom",
            Suite::Oracles => "oracles",
            Suite::Grassmannian => "grassmannian",
            Suite::Appendix => "appendix",
        }
    }
}

pub struct Options {
    pub group: Option<GroupType>,
    pub perm: Option<SignedPermutation>,
    pub n: usize,
    pub k: usize,
    pub m: Option<usize>,
}

pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

pub struct Report {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl Report {
    fn push(&mut self, name: String, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            pass,
            detail: detail.into(),
        });
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": 1,
            "suite": self.suite.name(),
            "passed": self.checks.len() - self.failed(),
            "failed": self.failed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "status": if c.pass { "pass" } else { "fail" },
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("{status}  {}\n", c.name));
            } else {
                out.push_str(&format!("{status}  {}  ({})\n", c.name, c.detail));
            }
        }
        out.push_str(&format!(
            "{}: {} passed, {} failed\n",
            self.suite.name(),
            self.checks.len() - self.failed(),
            self.failed()
        ));
        out
    }
}

/// Elements to visit for each requested type.
fn targets(opts: &Options, default: &[GroupType]) -> Result<Vec<(GroupType, Vec<SignedPermutation>)>> {
    let types: Vec<GroupType> = match opts.group {
        Some(t) => vec![t],
        None => default.to_vec(),
    };
    let mut out = Vec::new();
    for t in types {
        let set = match &opts.perm {
            Some(w) => {
                w.check_in(t)?;
                vec![w.clone()]
            }
            None if t == GroupType::D && opts.n < 2 => continue,
            None => elements(t, opts.n),
        };
        out.push((t, set));
    }
    if out.is_empty() {
        bail!("nothing to verify for the given type and rank");
    }
    Ok(out)
}

pub fn run(suite: Suite, opts: &Options) -> Result<Report> {
    let mut report = Report {
        suite,
        checks: Vec::new(),
    };
    match suite {
        Suite::DividedDiff => divided_diff(opts, &mut report)?,
        Suite::Bottom => bottom(opts, &mut report)?,
        Suite::Oracles => oracles(opts, &mut report)?,
        Suite::Grassmannian => grassmannian(opts, &mut report)?,
        Suite::Appendix => appendix(&mut report)?,
    }
    Ok(report)
}

fn divided_diff(opts: &Options, report: &mut Report) -> Result<()> {
    let all = [GroupType::A, GroupType::B, GroupType::C, GroupType::D];
    for (t, set) in targets(opts, &all)? {
        for w in &set {
            for s in t.generators(w.n()) {
                let r = verify_divided_difference(t, w, s, Family::Z, opts.k, None)?;
                report.push(format!("{t} {w}: d_{s} (k={})", r.level.k), r.pass, difference(&r.difference));
                if let Some(m) = opts.m {
                    match verify_divided_difference(t, w, s, Family::T, opts.k, Some(m)) {
                        Ok(r) => report.push(
                            format!("{t} {w}: delta_{s} (k={}, m={m})", r.level.k),
                            r.pass,
                            difference(&r.difference),
                        ),
                        Err(Error::InsufficientTruncation { .. }) => {}
                        Err(e) => return Err(e.into()),
                    }
                }
            }
        }
    }
    Ok(())
}

fn difference(d: &Polynomial) -> String {
    if d.is_zero() {
        String::new()
    } else {
        format!("difference {d}")
    }
}

fn bottom(opts: &Options, report: &mut Report) -> Result<()> {
    let all = [GroupType::A, GroupType::B, GroupType::C, GroupType::D];
    for (t, set) in targets(opts, &all)? {
        let mut monomials = BTreeSet::new();
        for w in &set {
            let k = if t == GroupType::A { 0 } else { opts.k.max(bottom_blocks(t, w)) };
            let base = Arc::new(Base::new(t, w.n(), k, false)?);
            let bottom = bottom_dream_on(&base, w)?;
            let dreams = enumerate(&base, w)?;
            let reached = dreams
                .iter()
                .filter(|d| apply_moves(d, &reduce_to_bottom(d)).map(|e| e == bottom).unwrap_or(false))
                .count();
            report.push(
                format!("{t} {w}: every dream reduces to the bottom (k={k})"),
                reached == dreams.len(),
                format!("{reached}/{}", dreams.len()),
            );
            let poly = schubert_bcd(t, w, k)?.poly;
            let lead = poly.leading_monomial(w.n())?;
            report.push(
                format!("{t} {w}: bottom monomial leads the polynomial"),
                lead == bottom.monomial(),
                Polynomial::from(bottom.monomial()).to_text(),
            );
            monomials.insert(bottom.monomial());
        }
        report.push(
            format!("{t}: bottom monomials are distinct"),
            monomials.len() == set.len(),
            format!("{} monomials for {} elements", monomials.len(), set.len()),
        );
    }
    Ok(())
}

fn oracles(opts: &Options, report: &mut Report) -> Result<()> {
    for (t, set) in targets(opts, &[GroupType::B, GroupType::C, GroupType::D])? {
        for w in &set {
            for k in 0..=opts.k {
                let dream = schubert_bcd(t, w, k)?.poly;
                let bh = schubert_via_bh(t, w, k)?.poly;
                let detail = if dream == bh { String::new() } else { format!("dream {dream}, factorization {bh}") };
                report.push(format!("{t} {w}: dream = factorization sum (k={k})"), dream == bh, detail);
            }
        }
    }
    Ok(())
}

fn grassmannian(opts: &Options, report: &mut Report) -> Result<()> {
    let all = [GroupType::A, GroupType::B, GroupType::C, GroupType::D];
    for (t, set) in targets(opts, &all)? {
        for w in &set {
            match grassmannian_data(w, t) {
                Some(GrassmannianData::Unsigned { descent, lambda }) => {
                    let pass = schubert_a(w)? == schur(&lambda, descent);
                    report.push(format!("{t} {w}: Schur s_{lambda:?}"), pass, "");
                    let base = Arc::new(Base::new(t, w.n(), 0, false)?);
                    bijection(t, w, &base, report)?;
                }
                Some(GrassmannianData::Signed { mu }) => {
                    for k in 1..=opts.k {
                        let expected = match t {
                            GroupType::C => schur_q(&mu, k),
                            _ => schur_p(&mu, k),
                        };
                        let pass = schubert_bcd(t, w, k)?.poly == expected;
                        let name = if t == GroupType::C { "Q" } else { "P" };
                        report.push(format!("{t} {w}: {name}_{mu:?} (k={k})"), pass, "");
                        if t != GroupType::D && mu.len() <= k {
                            let base = Arc::new(Base::new(t, w.n(), k, false)?);
                            bijection(t, w, &base, report)?;
                        }
                    }
                }
                None => {}
            }
        }
    }
    Ok(())
}

fn bijection(t: GroupType, w: &SignedPermutation, base: &Arc<Base>, report: &mut Report) -> Result<()> {
    let dreams = enumerate(base, w)?;
    let mut ok = 0;
    for d in &dreams {
        if let Ok(tab) = dream_to_tableau(d) {
            if tableau_to_dream(&tab, w, base).ok().as_ref() == Some(d) {
                ok += 1;
            }
        }
    }
    report.push(
        format!("{t} {w}: dream/tableau round trip (k={})", base.k),
        ok == dreams.len(),
        format!("{ok}/{}", dreams.len()),
    );
    Ok(())
}

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// One appendix row: word, window, and the closed form in `z_1`, `z_2`,
/// `p_1`, `p_3`.
type Row = (&'static str, &'static str, fn(&[Polynomial; 4]) -> Polynomial);

fn appendix(report: &mut Report) -> Result<()> {
    let b_rows: [Row; 7] = [
        ("s0", "-1 2", |[_, _, p1, _]| p1.clone()),
        ("s1", "2 1", |[z1, _, p1, _]| z1 + &p1.scale(&rat(2, 1))),
        ("s1 s0", "-2 1", |[_, _, p1, _]| p1.pow(2)),
        ("s0 s1", "2 -1", |[z1, _, p1, _]| &(z1 * p1) + &p1.pow(2)),
        ("s0 s1 s0", "-2 -1", |[_, _, p1, p3]| {
            &p1.pow(3).scale(&rat(1, 3)) - &p3.scale(&rat(1, 3))
        }),
        ("s1 s0 s1", "1 -2", |[z1, _, p1, p3]| {
            &(&(z1 * &p1.pow(2)) + &p1.pow(3).scale(&rat(2, 3))) + &p3.scale(&rat(1, 3))
        }),
        ("s1 s0 s1 s0", "-1 -2", |[z1, _, p1, p3]| {
            let third = rat(1, 3);
            &(&(&(z1 * &p1.pow(3)).scale(&third) - &(z1 * p3).scale(&third)) + &p1.pow(4).scale(&third))
                - &(p1 * p3).scale(&third)
        }),
    ];
    let d_rows: [Row; 4] = [
        ("s1 s1^", "-1 -2 3", |[z1, _, p1, _]| &(z1 * p1) + &p1.pow(2)),
        ("s2 s1", "3 1 2", |[z1, _, p1, _]| {
            &(&z1.pow(2) + &(z1 * p1).scale(&rat(2, 1))) + &p1.pow(2)
        }),
        ("s1^ s2", "-2 3 -1", |[z1, z2, p1, _]| &(&(z1 + z2) * p1) + &p1.pow(2)),
        ("s2 s1 s1^", "-1 -3 2", |[z1, _, p1, p3]| {
            &(&(z1 * &p1.pow(2)) + &p1.pow(3).scale(&rat(2, 3))) + &p3.scale(&rat(1, 3))
        }),
    ];
    for (t, n, rows, ks) in [(GroupType::B, 2, &b_rows[..], 2..=4), (GroupType::D, 3, &d_rows[..], 2..=3)] {
        for (word, window, closed) in rows {
            let w = SignedPermutation::parse(window)?;
            let from_word = product(&parse_word(word)?, n);
            report.push(format!("{t} {word} = {window}"), from_word == w, from_word.to_string());
            for k in ks.clone() {
                let vars = [Polynomial::z(1), Polynomial::z(2), power_sum(1, k), power_sum(3, k)];
                let expected = closed(&vars);
                let got = schubert_bcd(t, &w, k)?.poly;
                let detail = if got == expected { String::new() } else { format!("got {got}, expected {expected}") };
                report.push(format!("{t} {word} closed form (k={k})"), got == expected, detail);
            }
        }
    }
    Ok(())
}
