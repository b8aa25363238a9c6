//! Reference tables of known sequences, recomputed from scratch.
//!
//! The arithmetic-periodic table lists rulesets certified by the AP-test with
//! their period, saltus and one period of values. The solved table lists the
//! families with closed forms. Every row is checked against freshly computed
//! Grundy values.

use crate::closedform::closed_form;
use crate::engine::{compute_table, EngineError, GrundyValue};
use crate::notation::Notation;
use crate::regularity::{certify, detect, RegularityError};
use crate::ruleset::RulesetSpec;

/// A table entry: the rulesets it covers and their shared sequence.
#[derive(Debug, Clone)]
pub struct ApRow {
    pub label: &'static str,
    pub rulesets: Vec<Vec<usize>>,
    pub sequence: &'static str,
    pub p: usize,
    pub s: GrundyValue,
}

/// All subsets of `pool`, in binary-counter order.
fn subsets(pool: &[usize]) -> Vec<Vec<usize>> {
    (0..1u32 << pool.len())
        .map(|mask| {
            pool.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &c)| c)
                .collect()
        })
        .collect()
}

fn unions(base: &[usize], pool: &[usize], keep: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    subsets(pool)
        .into_iter()
        .filter(|k| keep(k))
        .map(|k| base.iter().chain(&k).copied().collect())
        .collect()
}

fn any_odd(k: &[usize]) -> bool {
    k.iter().any(|c| c % 2 == 1)
}

pub fn ap_rows() -> Vec<ApRow> {
    let row = |label, rulesets, sequence, p, s| ApRow {
        label,
        rulesets,
        sequence,
        p,
        s,
    };
    let mut two_four = unions(&[1, 2, 4], &[6, 7, 8], |_| true);
    two_four.extend(unions(&[1, 2, 6], &[7, 8], |_| true));
    vec![
        row(
            "{1,4} ∪ K, K ⊆ {6,8,10}",
            unions(&[1, 4], &[6, 8, 10], |_| true),
            "((0,1)^2(2,3)^2,1,4,5,4,(3,2)^2(4,5)^2(6,7)^2) (+8)",
            24,
            8,
        ),
        row(
            "{1,6} ∪ K, K ⊆ {8,10}",
            unions(&[1, 6], &[8, 10], |_| true),
            "((0,1)^3(2,3)^3,1,4,(5,4)^2(3,2)^3(4,5)^3(6,7)^3) (+8)",
            36,
            8,
        ),
        row(
            "{1,8}",
            vec![vec![1, 8]],
            "((0,1)^4(2,3)^4,1,4,(5,4)^3(3,2)^4(4,5)^4(6,7)^4) (+8)",
            48,
            8,
        ),
        row(
            "{1,10}",
            vec![vec![1, 10]],
            "((0,1)^5(2,3)^5,1,4,(5,4)^4(3,2)^5(4,5)^5(6,7)^5) (+8)",
            60,
            8,
        ),
        row(
            "{1,4} ∪ K, K ⊆ {3,5,6,7,8}, 3, 5 or 7 ∈ K",
            unions(&[1, 4], &[3, 5, 6, 7, 8], any_odd),
            "(0,1)^2 (+2)",
            4,
            2,
        ),
        row(
            "{1,6} ∪ K, K ⊆ {3,5,7,8}, 3, 5 or 7 ∈ K",
            unions(&[1, 6], &[3, 5, 7, 8], any_odd),
            "(0,1)^3 (+2)",
            6,
            2,
        ),
        row(
            "{1,8} ∪ K, K ⊆ {3,5,7}, K ≠ ∅",
            unions(&[1, 8], &[3, 5, 7], |k| !k.is_empty()),
            "(0,1)^4 (+2)",
            8,
            2,
        ),
        row(
            "{1,2,4} ∪ K, K ⊆ {6,7,8}; {1,2,6} ∪ K', K' ⊆ {7,8}",
            two_four,
            "(0,1,2,3,1,4,3,2,4,5,6,7) (+8)",
            12,
            8,
        ),
        row(
            "{1,2,5} ∪ K, K ⊆ {4,6,7,8}",
            unions(&[1, 2, 5], &[4, 6, 7, 8], |_| true),
            "(0,1,2,3,1,4,3,6,4,5,6,7) (+8)",
            12,
            8,
        ),
        row(
            "{1,2,7}",
            vec![vec![1, 2, 7]],
            "(0,1,2,3,1,4,3,2,4,5,6,7,8,9,7,6,9,8,11,10,12,13,10,11,13,12,15,14) (+16)",
            28,
            16,
        ),
        row(
            "{1,4,9}",
            vec![vec![1, 4, 9]],
            "(0,1,0,1,2,3,2,3,1,4,5,4,3,6,7,6,4,5,8,9,6,7,10,11,9,\
             8,9,12,11,10,11,14,12,13,12,13,14,15,14,15) (+16)",
            40,
            16,
        ),
    ]
}

/// One checked line of a reproduced table.
#[derive(Debug, Clone)]
pub struct RowCheck {
    pub label: String,
    pub ruleset: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Regularity(#[from] RegularityError),
}

/// Certifies every ruleset of every row on a table of length `8p`.
///
/// A row passes when the AP-test proves the expected period and saltus and
/// the whole computed table matches the expected sequence.
pub fn check_ap_table(threads: usize) -> Result<Vec<RowCheck>, TableError> {
    let mut out = Vec::new();
    for row in ap_rows() {
        let expected: Notation = row.sequence.parse().expect("fixture notation");
        debug_assert_eq!((expected.period_len(), expected.saltus), (row.p, row.s));
        for cuts in &row.rulesets {
            let spec = RulesetSpec::finite(cuts).expect("fixture ruleset");
            let n = 8 * row.p;
            let table = compute_table(&spec, n, threads)?;
            let (computed, pass) = match certify(&spec, &table)? {
                Some((h, _)) => {
                    let seq = Notation::new(table.values()[..h.p].to_vec(), h.s);
                    let pass = (h.p, h.s) == (row.p, row.s) && table.values() == expected.expand(n);
                    (format!("p={} s={} {}", h.p, h.s, seq), pass)
                }
                None => ("not certified".to_string(), false),
            };
            out.push(RowCheck {
                label: row.label.to_string(),
                ruleset: spec.to_string(),
                expected: format!("p={} s={} {}", row.p, row.s, row.sequence),
                computed,
                pass,
            });
        }
    }
    Ok(out)
}

/// A solved family and the representatives used to check it.
#[derive(Debug, Clone)]
pub struct SolvedRow {
    pub label: &'static str,
    pub ruleset: &'static str,
    pub sequence: String,
}

/// `(group)^k`, dropping a repeat count of one.
fn power(group: &str, k: usize) -> String {
    if k == 1 {
        format!("({group})")
    } else {
        format!("({group})^{k}")
    }
}

pub fn solved_rows() -> Vec<SolvedRow> {
    let mut rows = Vec::new();
    for r in ["1", "1,3", "1,5,9", "1,odd>=3"] {
        rows.push(SolvedRow {
            label: "{1, odd...}",
            ruleset: r,
            sequence: "(0,1) (+0)".into(),
        });
    }
    for (r, c1) in [("2", 2), ("3", 3), ("2,7", 2), ("all>=4", 4)] {
        rows.push(SolvedRow {
            label: "min C = c1 >= 2",
            ruleset: r,
            sequence: format!("{} (+1)", power("0", c1)),
        });
    }
    for r in ["1,2,3", "1,2,3,6"] {
        rows.push(SolvedRow {
            label: "{1,2,3} ⊆ C",
            ruleset: r,
            sequence: "(0) (+1)".into(),
        });
    }
    for (r, k) in [
        ("1,3,2", 1),
        ("1,3,4", 2),
        ("1,3,6", 3),
        ("1,3,8", 4),
        ("1,3,10", 5),
        ("1,3,12", 6),
    ] {
        rows.push(SolvedRow {
            label: "{1,3,2k}",
            ruleset: r,
            sequence: format!("{} (+2)", power("0,1", k)),
        });
    }
    rows
}

/// Checks each solved row on a table of length `n`: the detected pure
/// hypothesis, the closed form and the table all agree with the expected
/// sequence. Equal sequences may be written with different periods, so the
/// comparison is by expansion.
pub fn check_solved_table(n: usize, threads: usize) -> Result<Vec<RowCheck>, TableError> {
    let mut out = Vec::new();
    for row in solved_rows() {
        let spec: RulesetSpec = row.ruleset.parse().expect("fixture ruleset");
        let expected: Notation = row.sequence.parse().expect("fixture notation");
        let table = compute_table(&spec, n, threads)?;
        let want = expected.expand(n);
        let closed_ok =
            (1..=n).all(|m| closed_form(spec.classify(), m).is_none_or(|v| v == want[m - 1]));
        let (computed, pass) = match detect(&table, n / 8, n / 4)? {
            Some(h) if h.is_pure() => {
                let seq = Notation::new(table.values()[..h.p].to_vec(), h.s);
                let pass = seq.expand(n) == want && table.values() == want && closed_ok;
                (seq.to_string(), pass)
            }
            Some(h) => (h.to_string(), false),
            None => ("no regularity found".to_string(), false),
        };
        out.push(RowCheck {
            label: row.label.to_string(),
            ruleset: spec.to_string(),
            expected: row.sequence,
            computed,
            pass,
        });
    }
    Ok(out)
}
