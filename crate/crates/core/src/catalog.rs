//! Named formulas with pinned bases, as published for well-known sequences.
//!
//! Each entry carries the exact text the builder must reproduce, the start
//! index the formula is claimed from, and the indices in its verification
//! range where the formula, taken literally, is known to disagree with the
//! recurrence. Those lists are data: a run flags only failures outside them.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::eval::{verify_with, NStatus, VerificationReport};
use crate::par::{self, Execution};
use crate::recurrence::Recurrence;
use crate::render::{render, Format};
use crate::synth::{synth, synth_signed, BaseStrategy, HalfMode, RepKind, Representation};

/// Last index every entry is verified to.
pub const CATALOG_LAST_N: u64 = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    /// Group name shared by the formulas of one sequence.
    pub name: &'static str,
    /// Unique label, e.g. `fibonacci-rq`.
    pub label: &'static str,
    pub oeis: &'static str,
    pub alphas: &'static [i64],
    pub initial: &'static [i64],
    pub kind: RepKind,
    pub base: u32,
    pub half: HalfMode,
    /// Built through the shifted sequence `s(n) + c^(n+1)`.
    pub signed: bool,
    pub claimed_n0: u64,
    pub expected_text: &'static str,
    pub known_failures: &'static [u64],
}

impl CatalogEntry {
    pub fn recurrence(&self) -> Recurrence {
        Recurrence::from_i64s(self.alphas, self.initial)
            .expect("catalog recurrences are valid")
            .with_name(self.name)
    }

    /// `[0, 40]` for formulas claimed from `n = 0`, `[1, 40]` otherwise.
    pub fn range(&self) -> (u64, u64) {
        (self.claimed_n0.min(1), CATALOG_LAST_N)
    }

    pub fn build(&self) -> Result<Representation> {
        let rec = self.recurrence();
        let strategy = BaseStrategy::Pinned {
            base: self.base.into(),
            n0: self.claimed_n0,
        };
        let rep = if self.signed {
            synth_signed(&rec, self.kind, self.half, &strategy)?
        } else {
            synth(&rec, self.kind, self.half, &strategy)?
        };
        Ok(rep.with_name(self.label))
    }
}

const ONE_AND_EVENS_2_40: &[u64] = &[
    1, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30, 32, 34, 36, 38, 40,
];
const EVENS_2_40: &[u64] = &[
    2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30, 32, 34, 36, 38, 40,
];
const ZERO_AND_EVENS_2_40: &[u64] = &[
    0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30, 32, 34, 36, 38, 40,
];

macro_rules! entry {
    ($name:literal, $label:literal, $oeis:literal, $alphas:expr, $initial:expr, $kind:ident,
     $base:literal, $half:ident, $signed:literal, $n0:literal, $text:literal, $known:expr) => {
        CatalogEntry {
            name: $name,
            label: $label,
            oeis: $oeis,
            alphas: &$alphas,
            initial: &$initial,
            kind: RepKind::$kind,
            base: $base,
            half: HalfMode::$half,
            signed: $signed,
            claimed_n0: $n0,
            expected_text: $text,
            known_failures: $known,
        }
    };
}

static ENTRIES: &[CatalogEntry] = &[
    entry!("fibonacci", "fibonacci-rq", "A000045", [-1, -1], [0, 1], RemQuot, 3, Ceil, false, 1,
        "floor(3^(n^2) mod (3^(2n) - 3^n - 1) / 3^n)", &[]),
    entry!("fibonacci", "fibonacci-rr", "A000045", [-1, -1], [0, 1], RemRem, 3, Ceil, false, 1,
        "3^(n^2+n) mod (3^(2n) - 3^n - 1) mod 3^n", &[]),
    entry!("lucas", "lucas-rq", "A000032", [-1, -1], [2, 1], RemQuot, 4, Ceil, false, 1,
        "floor((2*4^(n^2+n) - 4^(n^2)) mod (4^(2n) - 4^n - 1) / 4^n)", &[]),
    entry!("lucas", "lucas-rr", "A000032", [-1, -1], [2, 1], RemRem, 5, Ceil, false, 1,
        "(2*5^(n^2+2n) - 5^(n^2+n)) mod (5^(2n) - 5^n - 1) mod 5^n", &[]),
    entry!("pell", "pell-rq", "A000129", [-2, -1], [0, 1], RemQuot, 4, Ceil, false, 1,
        "floor(4^(n^2) mod (4^(2n) - 2*4^n - 1) / 4^n)", &[]),
    entry!("pell", "pell-rr", "A000129", [-2, -1], [0, 1], RemRem, 3, Ceil, false, 1,
        "3^(n^2+n) mod (3^(2n) - 2*3^n - 1) mod 3^n", &[]),
    entry!("pell-lucas", "pell-lucas-rq", "A002203", [-2, -1], [2, 2], RemQuot, 5, Ceil, false, 1,
        "floor((2*5^(n^2+n) - 2*5^(n^2)) mod (5^(2n) - 2*5^n - 1) / 5^n)", &[]),
    entry!("pell-lucas", "pell-lucas-rr", "A002203", [-2, -1], [2, 2], RemRem, 9, Ceil, false, 1,
        "(2*9^(n^2+2n) - 2*9^(n^2+n)) mod (9^(2n) - 2*9^n - 1) mod 9^n", &[]),
    entry!("naturals", "naturals-rq", "A001477", [-2, 1], [0, 1], RemQuot, 4, Floor, false, 1,
        "floor((4^(floor(n/2)) + 4^(n^2)) mod (4^(2n) - 2*4^n + 1) / 4^n)", &[]),
    entry!("naturals", "naturals-rr", "A001477", [-2, 1], [0, 1], RemRem, 2, Ceil, false, 2,
        "(2^(n+ceil(n/2)) - 2^(n^2+n)) mod (2^(2n) - 2*2^n + 1) mod 2^n", &[1, 2, 4]),
    entry!("all-twos", "all-twos-rq", "A007395", [-2, 1], [2, 2], RemQuot, 5, Ceil, false, 1,
        "floor((5^(ceil(n/2)) + 2*5^(n^2+n) - 2*5^(n^2)) mod (5^(2n) - 2*5^n + 1) / 5^n)", &[]),
    entry!("all-twos", "all-twos-rr", "A007395", [-2, 1], [2, 2], RemRem, 2, Floor, false, 2,
        "(2^(n+floor(n/2)) - 2*2^(n^2+2n) + 2*2^(n^2+n)) mod (2^(2n) - 2*2^n + 1) mod 2^n", &[1]),
    entry!("mersenne", "mersenne-rq", "A000225", [-3, 2], [0, 1], RemQuot, 6, Floor, false, 1,
        "floor((6^(floor(n/2)) + 6^(n^2)) mod (6^(2n) - 3*6^n + 2) / 6^n)", &[]),
    entry!("mersenne", "mersenne-rr", "A000225", [-3, 2], [0, 1], RemRem, 4, Ceil, false, 2,
        "((4^(n+ceil(n/2)) - 4^(n^2+n)) mod (4^(2n) - 3*4^n + 2) mod 4^n) / 2", ONE_AND_EVENS_2_40),
    entry!("2n+1", "2n+1-rq", "A000051", [-3, 2], [2, 3], RemQuot, 7, Ceil, false, 1,
        "floor((7^(ceil(n/2)) + 2*7^(n^2+n) - 3*7^(n^2)) mod (7^(2n) - 3*7^n + 2) / 7^n)", &[]),
    entry!("2n+1", "2n+1-rr", "A000051", [-3, 2], [2, 3], RemRem, 7, Ceil, false, 1,
        "((7^(n+ceil(n/2)) - 2*7^(n^2+2n) + 3*7^(n^2+n)) mod (7^(2n) - 3*7^n + 2) mod 7^n) / 2", &[2]),
    entry!("pell7", "pell7-x-rq", "A001081", [-16, 1], [1, 8], RemQuot, 256, Floor, false, 0,
        "floor((256^(floor(n/2)) + 256^(n^2+n) - 8*256^(n^2)) mod (256^(2n) - 16*256^n + 1) / 256^n)", &[0]),
    entry!("pell7", "pell7-x-rr", "A001081", [-16, 1], [1, 8], RemRem, 256, Ceil, false, 0,
        "(256^(n+ceil(n/2)) - 256^(n^2+2n) + 8*256^(n^2+n)) mod (256^(2n) - 16*256^n + 1) mod 256^n", ZERO_AND_EVENS_2_40),
    entry!("pell7", "pell7-y-rq", "A001080", [-16, 1], [0, 3], RemQuot, 256, Floor, false, 0,
        "floor((256^(floor(n/2)) + 3*256^(n^2)) mod (256^(2n) - 16*256^n + 1) / 256^n)", &[0]),
    entry!("pell7", "pell7-y-rr", "A001080", [-16, 1], [0, 3], RemRem, 256, Ceil, false, 0,
        "(256^(n+ceil(n/2)) - 3*256^(n^2+n)) mod (256^(2n) - 16*256^n + 1) mod 256^n", EVENS_2_40),
    entry!("a088137", "a088137-rq", "A088137", [-2, 3], [0, 1], RemQuot, 32, Ceil, true, 1,
        "floor((32^(n+ceil(n/2)) + 3*32^(n^2+2n) - 5*32^(n^2+n) + 6*32^(n^2)) mod (32^(3n) - 5*32^(2n) + 9*32^n - 9) / 32^(2n)) - 3^(n+1)", &[2]),
    entry!("a088137", "a088137-rr", "A088137", [-2, 3], [0, 1], RemRem, 128, Floor, true, 1,
        "((128^(2n+floor(n/2)) + 3*128^(n^2+3n) - 5*128^(n^2+2n) + 6*128^(n^2+n)) mod (128^(3n) - 5*128^(2n) + 9*128^n - 9) mod 128^n) / 9 - 3^(n+1)", &[]),
    entry!("a002249", "a002249-rq", "A002249", [-1, 2], [2, 1], RemQuot, 8, Ceil, true, 1,
        "floor((8^(n+ceil(n/2)) + 4*8^(n^2+2n) - 7*8^(n^2+n) + 6*8^(n^2)) mod (8^(3n) - 3*8^(2n) + 4*8^n - 4) / 8^(2n)) - 2^(n+1)", &[]),
    entry!("a002249", "a002249-rr", "A002249", [-1, 2], [2, 1], RemRem, 32, Floor, true, 1,
        "((32^(2n+floor(n/2)) + 4*32^(n^2+3n) - 7*32^(n^2+2n) + 6*32^(n^2+n)) mod (32^(3n) - 3*32^(2n) + 4*32^n - 4) mod 32^n) / 4 - 2^(n+1)", &[]),
    entry!("tribonacci", "tribonacci-rq", "A000073", [-1, -1, -1], [0, 0, 1], RemQuot, 2, Ceil, false, 1,
        "floor(2^(n^2) mod (2^(3n) - 2^(2n) - 2^n - 1) / 2^(2n))", &[]),
    entry!("tribonacci", "tribonacci-rr", "A000073", [-1, -1, -1], [0, 0, 1], RemRem, 2, Ceil, false, 1,
        "2^(n^2+n) mod (2^(3n) - 2^(2n) - 2^n - 1) mod 2^n", &[]),
    entry!("padovan", "padovan-rq", "A000931", [0, -1, -1], [1, 0, 0], RemQuot, 2, Ceil, false, 1,
        "floor((2^(n^2+2n) - 2^(n^2)) mod (2^(3n) - 2^n - 1) / 2^(2n))", &[]),
    entry!("padovan", "padovan-rr", "A000931", [0, -1, -1], [1, 0, 0], RemRem, 2, Ceil, false, 1,
        "(2^(n^2+3n) - 2^(n^2+n)) mod (2^(3n) - 2^n - 1) mod 2^n", &[]),
    entry!("narayana", "narayana-rq", "A000930", [-1, 0, -1], [1, 1, 1], RemQuot, 3, Ceil, false, 1,
        "floor(3^(n^2+2n) mod (3^(3n) - 3^(2n) - 1) / 3^(2n))", &[]),
    entry!("narayana", "narayana-rr", "A000930", [-1, 0, -1], [1, 1, 1], RemRem, 2, Ceil, false, 1,
        "2^(n^2+3n) mod (2^(3n) - 2^(2n) - 1) mod 2^n", &[]),
];

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

/// Distinct group names in catalog order.
pub fn names() -> Vec<&'static str> {
    let mut names: Vec<&str> = Vec::new();
    for e in ENTRIES {
        if !names.contains(&e.name) {
            names.push(e.name);
        }
    }
    names
}

/// `all`, a group name, or a single label.
pub fn select(selector: &str) -> Result<Vec<&'static CatalogEntry>> {
    let picked: Vec<_> = ENTRIES
        .iter()
        .filter(|e| selector == "all" || e.name == selector || e.label == selector)
        .collect();
    if picked.is_empty() {
        return Err(Error::Validation {
            field: "catalog".into(),
            message: format!("no entry named `{selector}`; known: {}", names().join(", ")),
        });
    }
    Ok(picked)
}

#[derive(Debug, Clone)]
pub struct EntryOutcome {
    pub entry: &'static CatalogEntry,
    pub formula: String,
    pub report: VerificationReport,
    /// Failures not on the entry's known list.
    pub unexpected: Vec<u64>,
    /// Known failures that now pass.
    pub resolved: Vec<u64>,
}

impl EntryOutcome {
    pub fn formula_matches(&self) -> bool {
        self.formula == self.entry.expected_text
    }

    pub fn is_ok(&self) -> bool {
        self.formula_matches() && self.unexpected.is_empty()
    }
}

pub fn run_entry(entry: &'static CatalogEntry, exec: Execution) -> Result<EntryOutcome> {
    let rep = entry.build()?;
    let (from, to) = entry.range();
    let report = verify_with(&rep, &entry.recurrence(), from, to, exec);
    let failures = report.failures();
    Ok(EntryOutcome {
        entry,
        formula: render(&rep, Format::Text),
        unexpected: failures
            .iter()
            .copied()
            .filter(|n| !entry.known_failures.contains(n))
            .collect(),
        resolved: entry
            .known_failures
            .iter()
            .copied()
            .filter(|n| !failures.contains(n))
            .collect(),
        report,
    })
}

#[derive(Debug, Clone)]
pub struct CatalogRun {
    pub outcomes: Vec<EntryOutcome>,
}

impl CatalogRun {
    pub fn all_ok(&self) -> bool {
        self.outcomes.iter().all(EntryOutcome::is_ok)
    }

    /// 0 when every failure is a known one, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_ok() {
            0
        } else {
            1
        }
    }

    pub fn report_text(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            let e = o.entry;
            let r = &o.report;
            let n0 = r
                .empirical_n0
                .map_or_else(|| "none".to_string(), |n| n.to_string());
            let _ = writeln!(out, "{} ({}, b={}, {:?})", e.label, e.oeis, e.base, e.half);
            let _ = writeln!(out, "  formula: {}", o.formula);
            if !o.formula_matches() {
                let _ = writeln!(out, "  expected formula: {}", e.expected_text);
            }
            let _ = writeln!(
                out,
                "  range [{}, {}]: {} of {} pass; claimed n0 = {}, empirical n0 = {}",
                r.range.0,
                r.range.1,
                r.entries.iter().filter(|x| x.status.is_pass()).count(),
                r.entries.len(),
                e.claimed_n0,
                n0
            );
            for entry in r.entries.iter().filter(|x| !x.status.is_pass()) {
                let tag = if e.known_failures.contains(&entry.n) {
                    "known"
                } else {
                    "UNEXPECTED"
                };
                let detail = match &entry.status {
                    NStatus::Mismatch { got, expected } => format!("got {got}, expected {expected}"),
                    NStatus::Error(msg) => msg.clone(),
                    NStatus::Pass => unreachable!(),
                };
                let _ = writeln!(out, "  n = {}: {detail} [{tag}]", entry.n);
            }
            if !o.resolved.is_empty() {
                let _ = writeln!(out, "  known failures that now pass: {:?}", o.resolved);
            }
            let verdict = if o.is_ok() { "ok" } else { "FAIL" };
            let _ = writeln!(out, "  {verdict}");
        }
        out
    }
}

/// Builds and verifies the selected entries; output order is catalog order.
pub fn run_catalog(selector: &str, exec: Execution) -> Result<CatalogRun> {
    let picked = select(selector)?;
    let outcomes = par::map_slice(&picked, exec, |e| run_entry(e, Execution::Sequential))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(CatalogRun { outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_are_unique() {
        let mut labels: Vec<_> = ENTRIES.iter().map(|e| e.label).collect();
        labels.sort_unstable();
        labels.dedup();
        assert_eq!(labels.len(), ENTRIES.len());
        assert_eq!(names().len(), 14);
    }

    #[test]
    fn every_entry_matches_its_data() {
        let run = run_catalog("all", Execution::Parallel).unwrap();
        for o in &run.outcomes {
            assert!(o.formula_matches(), "{}: {}", o.entry.label, o.formula);
            assert!(o.unexpected.is_empty(), "{}: {:?}", o.entry.label, o.unexpected);
            assert!(o.resolved.is_empty(), "{}: {:?}", o.entry.label, o.resolved);
        }
        assert_eq!(run.exit_code(), 0);
    }

    #[test]
    fn selection() {
        assert_eq!(select("pell7").unwrap().len(), 4);
        assert_eq!(select("mersenne-rr").unwrap().len(), 1);
        assert_eq!(select("all").unwrap().len(), ENTRIES.len());
        assert!(select("nope").is_err());
    }
}
