//! Direct enumeration of options, used as an independent check on the
//! reachable-set tables. Exponential in `n`; keep it at desk scale.

use std::collections::BTreeMap;

use super::{EngineError, GrundyValue, ValueSet};
use crate::ruleset::RulesetSpec;

/// Largest heap size `brute_grundy` accepts.
pub const ORACLE_MAX_N: usize = 64;

/// Calls `f` with every nondecreasing list of `parts` positive integers
/// summing to `n`.
pub fn for_each_partition<F: FnMut(&[usize])>(n: usize, parts: usize, mut f: F) {
    if parts == 0 || parts > n {
        return;
    }
    let mut buf = Vec::with_capacity(parts);
    fill(n, parts, 1, &mut buf, &mut f);
}

fn fill<F: FnMut(&[usize])>(
    remaining: usize,
    parts: usize,
    min: usize,
    buf: &mut Vec<usize>,
    f: &mut F,
) {
    if parts == 1 {
        if remaining >= min {
            buf.push(remaining);
            f(buf);
            buf.pop();
        }
        return;
    }
    // Every later part is at least `first`.
    let mut first = min;
    while first * parts <= remaining {
        buf.push(first);
        fill(remaining - first, parts - 1, first, buf, f);
        buf.pop();
        first += 1;
    }
}

/// Calls `f(c, parts)` for every canonical option of a heap of `n` beans.
pub fn for_each_option<F: FnMut(usize, &[usize])>(spec: &RulesetSpec, n: usize, mut f: F) {
    for c in spec.materialize_cuts(n) {
        for_each_partition(n, c + 1, |parts| f(c, parts));
    }
}

/// Grundy values found by enumerating every option explicitly.
#[derive(Debug, Clone)]
pub struct BruteTable {
    values: Vec<GrundyValue>,
    /// `reach[n][c]`: nim-sums of the `c`-cuts of heap `n`, for `c ∈ C`.
    reach: Vec<BTreeMap<usize, ValueSet>>,
}

impl BruteTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[GrundyValue] {
        &self.values
    }

    pub fn g(&self, n: usize) -> GrundyValue {
        self.values[n - 1]
    }

    /// Nim-sums of all `c`-cuts of heap `n`; empty when `c ∉ C` or `c >= n`.
    pub fn reachable(&self, n: usize, c: usize) -> ValueSet {
        self.reach[n - 1].get(&c).cloned().unwrap_or_default()
    }
}

/// Computes `G(1..=n)` by enumerating all partitions of each heap into
/// `c + 1` parts for every allowed `c`.
pub fn brute_grundy(spec: &RulesetSpec, n: usize) -> Result<BruteTable, EngineError> {
    if n == 0 {
        return Err(EngineError::EmptyTable);
    }
    if n > ORACLE_MAX_N {
        return Err(EngineError::OracleScaleExceeded {
            requested: n,
            limit: ORACLE_MAX_N,
        });
    }
    let mut values: Vec<GrundyValue> = Vec::with_capacity(n);
    let mut reach = Vec::with_capacity(n);
    for m in 1..=n {
        let mut by_cut: BTreeMap<usize, ValueSet> = BTreeMap::new();
        let mut all = ValueSet::new();
        for_each_option(spec, m, |c, parts| {
            let v = parts.iter().fold(0, |acc, &p| acc ^ values[p - 1]);
            by_cut.entry(c).or_default().insert(v);
            all.insert(v);
        });
        values.push(all.mex());
        reach.push(by_cut);
    }
    Ok(BruteTable { values, reach })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, parts: usize) -> usize {
        let mut k = 0;
        for_each_partition(n, parts, |p| {
            assert_eq!(p.len(), parts);
            assert_eq!(p.iter().sum::<usize>(), n);
            assert!(p.windows(2).all(|w| w[0] <= w[1]));
            k += 1;
        });
        k
    }

    #[test]
    fn partition_counts() {
        // p_2(4) = 2, p_3(4) = 1
        assert_eq!(count(4, 2), 2);
        assert_eq!(count(4, 3), 1);
        assert_eq!(count(4, 5), 0);
        assert_eq!(count(10, 3), 8);
        let total: usize = (1..=20).map(|k| count(20, k)).sum();
        assert_eq!(total, 627);
    }

    #[test]
    fn brute_examples() {
        let t = brute_grundy(&"1,2".parse().unwrap(), 5).unwrap();
        assert_eq!(t.values(), &[0, 1, 2, 3, 1]);
        let t = brute_grundy(&"4".parse().unwrap(), 4).unwrap();
        assert_eq!(t.values(), &[0, 0, 0, 0]);
        let t = brute_grundy(&"1,4".parse().unwrap(), 8).unwrap();
        assert_eq!(t.values(), &[0, 1, 0, 1, 2, 3, 2, 3]);
        assert!(matches!(
            brute_grundy(&"1".parse().unwrap(), 65),
            Err(EngineError::OracleScaleExceeded { .. })
        ));
    }
}
