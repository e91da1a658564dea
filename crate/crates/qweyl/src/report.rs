//! Verification suites over `P_{<= max_degree}`, run in parallel with one
//! job per relation and reported in a fixed order.

use std::fmt::Write;

use qweyl_core::modweyl::{iota_consistency, modweyl_generators, modweyl_relation_instances, IotaTable, ModWeylTable};
use qweyl_core::operator::RelationInstance;
use qweyl_core::weyl::{uqsl_relations_through_chi, weyl_relation_instances, WeylTable};
use qweyl_core::{iqg, ActionTable, EqualityReport, ExponentVector, Generator, PhiTable, QPolynomial, SatakeDiagram};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    /// q-Weyl relations.
    Weyl,
    /// `U_q(sl_{r+2})` relations through the oscillator realization.
    Uqsl,
    /// Modified q-Weyl relations, directly and through the embedding, and
    /// the embedding's consistency on generators.
    Modweyl,
    /// iquantum group relations through the realization.
    Iqg,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Clone, Copy)]
enum Table<'a> {
    Weyl(&'a WeylTable),
    Mod(&'a ModWeylTable),
    Iota(&'a IotaTable),
    Phi(&'a PhiTable),
}

impl ActionTable for Table<'_> {
    fn nvars(&self) -> usize {
        match self {
            Table::Weyl(t) => t.nvars(),
            Table::Mod(t) => t.nvars(),
            Table::Iota(t) => t.nvars(),
            Table::Phi(t) => t.nvars(),
        }
    }

    fn act(&self, g: &Generator, a: &ExponentVector) -> qweyl_core::Result<QPolynomial> {
        match self {
            Table::Weyl(t) => t.act(g, a),
            Table::Mod(t) => t.act(g, a),
            Table::Iota(t) => t.act(g, a),
            Table::Phi(t) => t.act(g, a),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualSample {
    pub monomial: Vec<u32>,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub id: String,
    pub monomials_checked: usize,
    pub residuals: usize,
    pub first_residual: Option<ResidualSample>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.residuals == 0
    }

    fn from_report(suite: &'static str, id: String, rep: &EqualityReport) -> Self {
        Self {
            suite,
            id,
            monomials_checked: rep.monomials_checked,
            residuals: rep.residuals.len(),
            first_residual: rep
                .residuals
                .first()
                .map(|r| ResidualSample { monomial: r.monomial.entries().to_vec(), image: r.image.to_string() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub diagram: String,
    pub max_degree: u32,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn failing(&self) -> impl Iterator<Item = &CheckOutcome> + '_ {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// One `RELATION <suite>:<id> PASS|FAIL` line per check, then a summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "diagram {} max-degree {}", self.diagram, self.max_degree);
        for c in &self.checks {
            let _ = write!(out, "RELATION {}:{} ", c.suite, c.id);
            match &c.first_residual {
                None => out.push_str("PASS\n"),
                Some(r) => {
                    let m: Vec<String> = r.monomial.iter().map(ToString::to_string).collect();
                    let _ = writeln!(out, "FAIL residuals={} first={} -> {}", c.residuals, m.join(","), r.image);
                }
            }
        }
        let ok = self.checks.iter().filter(|c| c.passed()).count();
        let _ = writeln!(out, "RESULT {} {ok}/{}", if self.passed { "PASS" } else { "FAIL" }, self.checks.len());
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("reports serialize");
        out.push('\n');
        out
    }
}

/// Runs the selected suites for `d` on all monomials of degree `<= max_degree`.
pub fn verify(d: &SatakeDiagram, suite: Suite, max_degree: u32) -> qweyl_core::Result<VerifyReport> {
    let r = d.r();
    let weyl = WeylTable::for_rank(r);
    let modweyl = ModWeylTable::for_diagram(d);
    let iota = IotaTable::for_diagram(d)?;
    let phi = iqg::phi(d);

    let mut jobs: Vec<(&'static str, RelationInstance, Table<'_>)> = Vec::new();
    if suite.includes(Suite::Weyl) {
        jobs.extend(weyl_relation_instances(r).into_iter().map(|rel| ("weyl", rel, Table::Weyl(&weyl))));
    }
    if suite.includes(Suite::Uqsl) {
        jobs.extend(uqsl_relations_through_chi(r)?.into_iter().map(|rel| ("uqsl", rel, Table::Weyl(&weyl))));
    }
    if suite.includes(Suite::Modweyl) {
        for rel in modweyl_relation_instances(d) {
            jobs.push(("modweyl", rel.clone(), Table::Mod(&modweyl)));
            jobs.push(("modweyl-iota", rel, Table::Iota(&iota)));
        }
    }
    if suite.includes(Suite::Iqg) {
        for rel in iqg::relation_instances(d) {
            jobs.push(("iqg", rel.substitute(|g| phi.image(g))?, Table::Phi(&phi)));
        }
    }

    let mut checks = jobs
        .par_iter()
        .map(|(suite, rel, table)| Ok(CheckOutcome::from_report(suite, rel.id(), &rel.check(table, max_degree)?)))
        .collect::<qweyl_core::Result<Vec<_>>>()?;

    if suite.includes(Suite::Modweyl) {
        let found = iota_consistency(d, max_degree)?;
        for g in modweyl_generators(d.nvars()) {
            let bad: Vec<_> = found.iter().filter(|x| x.generator == g).collect();
            checks.push(CheckOutcome {
                suite: "iota",
                id: g.to_string(),
                monomials_checked: 0,
                residuals: bad.len(),
                first_residual: bad.first().map(|x| ResidualSample {
                    monomial: x.monomial.entries().to_vec(),
                    image: (&x.direct - &x.via_iota).to_string(),
                }),
            });
        }
    }

    let passed = checks.iter().all(CheckOutcome::passed);
    Ok(VerifyReport { diagram: d.spec().to_string(), max_degree, passed, checks })
}
