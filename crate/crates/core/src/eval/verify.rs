//! Checking a representation against the recurrence oracle.

use num_bigint::BigInt;

use crate::eval::eval_rep_fast;
use crate::par::{self, Execution};
use crate::recurrence::Recurrence;
use crate::synth::Representation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NStatus {
    Pass,
    Mismatch { got: BigInt, expected: BigInt },
    /// Evaluation itself failed, e.g. a zero modulus at `n = 0`.
    Error(String),
}

impl NStatus {
    pub fn is_pass(&self) -> bool {
        matches!(self, NStatus::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyEntry {
    pub n: u64,
    pub status: NStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub id: String,
    pub range: (u64, u64),
    pub entries: Vec<VerifyEntry>,
    pub first_fail: Option<u64>,
    /// Smallest `n` from which every later `n` in range passes; `None` when
    /// the last one fails.
    pub empirical_n0: Option<u64>,
}

impl VerificationReport {
    pub fn failures(&self) -> Vec<u64> {
        self.entries
            .iter()
            .filter(|e| !e.status.is_pass())
            .map(|e| e.n)
            .collect()
    }

    pub fn all_pass(&self) -> bool {
        self.first_fail.is_none()
    }
}

/// [`verify_with`] using the parallel executor.
pub fn verify(rep: &Representation, rec: &Recurrence, from: u64, to: u64) -> VerificationReport {
    verify_with(rep, rec, from, to, Execution::Parallel)
}

/// Compares [`eval_rep_fast`] with the oracle for every `n` in `[from, to]`.
/// An empty range (`from > to`) gives an empty report.
pub fn verify_with(
    rep: &Representation,
    rec: &Recurrence,
    from: u64,
    to: u64,
    exec: Execution,
) -> VerificationReport {
    let oracle = if from <= to {
        rec.oracle_terms(to as usize)
    } else {
        Vec::new()
    };
    let entries = par::map_range(from..=to, exec, |n| {
        let expected = &oracle[n as usize];
        let status = match eval_rep_fast(rep, n) {
            Ok(got) if &got == expected => NStatus::Pass,
            Ok(got) => NStatus::Mismatch {
                got,
                expected: expected.clone(),
            },
            Err(e) => NStatus::Error(e.to_string()),
        };
        VerifyEntry { n, status }
    });
    let first_fail = entries.iter().find(|e| !e.status.is_pass()).map(|e| e.n);
    let empirical_n0 = match entries.iter().rev().find(|e| !e.status.is_pass()) {
        None => entries.first().map(|e| e.n),
        Some(last) if last.n < to => Some(last.n + 1),
        Some(_) => None,
    };
    VerificationReport {
        id: rep.id(),
        range: (from, to),
        entries,
        first_fail,
        empirical_n0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::BaseCertificate;
    use crate::synth::{assemble, HalfMode, RepKind};

    fn rep(a: &[i64], s: &[i64], kind: RepKind, half: HalfMode, b: u32) -> (Representation, Recurrence) {
        let rec = Recurrence::from_i64s(a, s).unwrap();
        let rep = assemble(&rec, kind, half, BaseCertificate::pinned(b, 1)).unwrap();
        (rep, rec)
    }

    #[test]
    fn fibonacci_passes() {
        let (r, rec) = rep(&[-1, -1], &[0, 1], RepKind::RemRem, HalfMode::Ceil, 3);
        let report = verify(&r, &rec, 1, 40);
        assert!(report.all_pass());
        assert_eq!(report.empirical_n0, Some(1));
        assert_eq!(report.entries.len(), 40);
    }

    #[test]
    fn naturals_boundary() {
        let (r, rec) = rep(&[-2, 1], &[0, 1], RepKind::RemRem, HalfMode::Ceil, 2);
        let report = verify(&r, &rec, 2, 40);
        assert_eq!(report.failures(), vec![2, 4]);
        assert_eq!(report.first_fail, Some(2));
        assert_eq!(report.empirical_n0, Some(5));
        let NStatus::Mismatch { got, expected } = &report.entries[0].status else {
            panic!("expected a mismatch at n = 2");
        };
        assert_eq!((got.clone(), expected.clone()), (3.into(), 2.into()));
    }

    #[test]
    fn errors_are_data() {
        let (r, rec) = rep(&[-2, 1], &[0, 1], RepKind::RemQuot, HalfMode::Floor, 4);
        let report = verify(&r, &rec, 0, 10);
        assert!(matches!(report.entries[0].status, NStatus::Error(_)));
        assert_eq!(report.empirical_n0, Some(1));
    }

    #[test]
    fn sequential_matches_parallel() {
        let (r, rec) = rep(&[-3, 2], &[0, 1], RepKind::RemRem, HalfMode::Ceil, 4);
        assert_eq!(
            verify_with(&r, &rec, 1, 30, Execution::Sequential),
            verify_with(&r, &rec, 1, 30, Execution::Parallel)
        );
    }
}
