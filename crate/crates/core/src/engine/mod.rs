//! Grundy-value computation for CUT rulesets.
//!
//! The table is built by a reachable-set dynamic program. For every heap size
//! `m` and cut count `c` the engine keeps `R_c(m)`, the set of nim-sums over
//! all splits of `m` into `c + 1` non-empty parts:
//!
//! ```text
//! R_0(m) = { G(m) }
//! R_c(m) = ⋃_{a >= 1} { G(a) ^ v : v ∈ R_{c-1}(m - a) }
//! G(n)   = mex ⋃_{c ∈ C, c < n} R_c(n)
//! ```
//!
//! Infinite tails are handled with cumulative rows: `T_j(m)` collects the
//! nim-sums of every split into `j + 1 + k·d` parts (`k >= 0`, `d` the tail
//! stride), which satisfies the same recursion with `T_0(m) = {G(m)} ∪ T_d(m)`.
//! A tail starting at `t` then contributes `T_t(n)` to the mex.
//!
//! Every row at heap size `n` depends only on rows at strictly smaller sizes,
//! so the work for one `n` can be split across worker threads by split point
//! and OR-merged. Set union is order-independent, which makes the result
//! bit-identical for any thread count.

mod oracle;
mod valueset;

pub use oracle::{brute_grundy, for_each_option, for_each_partition, BruteTable, ORACLE_MAX_N};
pub use valueset::ValueSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::ruleset::{RulesetSpec, Tail};
use valueset::{words_for, xor_translate_words};

/// A Sprague-Grundy value.
pub type GrundyValue = u32;

/// Default upper bound on table length.
pub const DEFAULT_MAX_N: usize = 200_000;

/// Below this many source words per row, a row is built on the calling thread.
const PAR_MIN_WORDS: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("table length must be at least 1")]
    EmptyTable,
    #[error("table length {requested} exceeds the configured limit {limit}")]
    CapacityExceeded { requested: usize, limit: usize },
    #[error("oracle enumeration is limited to n <= {limit}, got {requested}")]
    OracleScaleExceeded { requested: usize, limit: usize },
    #[error("heap size {n} or cut {c} outside the table (length {len})")]
    OutOfRange { n: usize, c: usize, len: usize },
    #[error("ruleset has no even cut-number")]
    NotApplicable,
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}

/// Smallest nonnegative integer not in `s`.
pub fn mex(s: &ValueSet) -> GrundyValue {
    s.mex()
}

/// Bitwise XOR of all values; zero for an empty list.
pub fn nim_sum<I: IntoIterator<Item = GrundyValue>>(values: I) -> GrundyValue {
    values.into_iter().fold(0, |acc, v| acc ^ v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableOptions {
    pub threads: usize,
    pub max_n: usize,
    /// Keep `reach2plus` rows only for heap sizes up to this bound.
    pub reach2plus_upto: Option<usize>,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            threads: 1,
            max_n: DEFAULT_MAX_N,
            reach2plus_upto: None,
        }
    }
}

#[derive(Debug, Clone)]
struct TailRows {
    tail: Tail,
    /// Level holding the splits of the smallest tail cut `>= 2`.
    two_plus_level: usize,
    /// `rows[j][m] = T_j(m)`; index `m = 0` is an empty placeholder.
    rows: Vec<Vec<ValueSet>>,
}

/// Grundy values `G(1..=N)` of a ruleset together with the reachable-set rows
/// used to compute them.
#[derive(Debug, Clone)]
pub struct GrundyTable {
    ruleset: RulesetSpec,
    /// `grundy[n] = G(n)`; index 0 is unused.
    grundy: Vec<GrundyValue>,
    /// `exact[c][m] = R_c(m)` for `1 <= c <= max explicit cut`.
    exact: Vec<Vec<ValueSet>>,
    tail: Option<TailRows>,
    /// Union of `R_c(m)` over `c ∈ C`, `c >= 2`.
    reach2plus: Vec<ValueSet>,
}

/// Computes `G(1..=n)` for `spec` using `threads` workers.
pub fn compute_table(
    spec: &RulesetSpec,
    n: usize,
    threads: usize,
) -> Result<GrundyTable, EngineError> {
    compute_table_with(
        spec,
        n,
        &TableOptions {
            threads,
            ..TableOptions::default()
        },
    )
}

pub fn compute_table_with(
    spec: &RulesetSpec,
    n: usize,
    options: &TableOptions,
) -> Result<GrundyTable, EngineError> {
    if n == 0 {
        return Err(EngineError::EmptyTable);
    }
    if n > options.max_n {
        return Err(EngineError::CapacityExceeded {
            requested: n,
            limit: options.max_n,
        });
    }
    let pool = if options.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(options.threads)
                .build()
                .map_err(|e| EngineError::ThreadPool(e.to_string()))?,
        )
    } else {
        None
    };
    let mut builder = Builder::new(spec, n, options.reach2plus_upto.unwrap_or(n));
    match &pool {
        Some(pool) => pool.install(|| builder.run(n, true)),
        None => builder.run(n, false),
    }
    Ok(builder.finish())
}

struct Builder {
    table: GrundyTable,
    reach2plus_upto: usize,
    max_value: GrundyValue,
}

impl Builder {
    fn new(spec: &RulesetSpec, n: usize, reach2plus_upto: usize) -> Self {
        // Exact rows are needed for every count up to the largest explicit cut.
        let exact_levels = spec
            .base()
            .last()
            .copied()
            .unwrap_or(0)
            .min(n.saturating_sub(1));
        let mut exact = vec![Vec::new()];
        for _ in 0..exact_levels {
            let mut rows = Vec::with_capacity(n + 1);
            rows.push(ValueSet::new());
            exact.push(rows);
        }
        let tail = spec.tail().map(|tail| {
            let two_plus_level = tail.first_at_least(2);
            let levels = two_plus_level.max(tail.stride()).min(n.max(tail.stride()));
            let rows = (0..=levels)
                .map(|_| {
                    let mut r = Vec::with_capacity(n + 1);
                    r.push(ValueSet::new());
                    r
                })
                .collect();
            TailRows {
                tail,
                two_plus_level,
                rows,
            }
        });
        let mut grundy = Vec::with_capacity(n + 1);
        grundy.push(0);
        Builder {
            table: GrundyTable {
                ruleset: spec.clone(),
                grundy,
                exact,
                tail,
                reach2plus: vec![ValueSet::new()],
            },
            reach2plus_upto,
            max_value: 0,
        }
    }

    fn run(&mut self, n: usize, parallel: bool) {
        for m in 1..=n {
            self.step(m, parallel);
        }
    }

    fn step(&mut self, n: usize, parallel: bool) {
        let words = words_for(self.max_value);
        let t = &self.table;
        let g = &t.grundy;

        let mut new_exact = Vec::with_capacity(t.exact.len());
        for c in 1..t.exact.len() {
            let row = if c == 1 {
                let mut row = ValueSet::with_words(words);
                for a in 1..=n / 2 {
                    row.insert(g[a] ^ g[n - a]);
                }
                row
            } else {
                let src = &t.exact[c - 1];
                translate_union(n, c, words, g, src, parallel)
            };
            new_exact.push(row);
        }

        let mut new_tail = Vec::new();
        if let Some(tr) = &t.tail {
            for j in 1..tr.rows.len() {
                new_tail.push(translate_union(n, j, words, g, &tr.rows[j - 1], parallel));
            }
        }

        let mut options = ValueSet::with_words(words);
        for &c in t.ruleset.base() {
            if c < n && c < t.exact.len() {
                options.union_with(&new_exact[c - 1]);
            }
        }
        if let Some(tr) = &t.tail {
            let start = tr.tail.start();
            if start < n {
                options.union_with(&new_tail[start - 1]);
            }
        }
        let value = options.mex();

        let mut reach2 = None;
        if n <= self.reach2plus_upto {
            let mut r = ValueSet::with_words(words);
            for &c in t.ruleset.base() {
                if c >= 2 && c < n && c < t.exact.len() {
                    r.union_with(&new_exact[c - 1]);
                }
            }
            if let Some(tr) = &t.tail {
                if tr.two_plus_level < n {
                    r.union_with(&new_tail[tr.two_plus_level - 1]);
                }
            }
            reach2 = Some(r);
        }

        self.max_value = self.max_value.max(value);
        let t = &mut self.table;
        t.grundy.push(value);
        for (c, row) in new_exact.into_iter().enumerate() {
            t.exact[c + 1].push(row);
        }
        if let Some(tr) = &mut t.tail {
            let mut zero = ValueSet::covering(self.max_value);
            zero.insert(value);
            zero.union_with(&new_tail[tr.tail.stride() - 1]);
            tr.rows[0].push(zero);
            for (j, row) in new_tail.into_iter().enumerate() {
                tr.rows[j + 1].push(row);
            }
        }
        if let Some(r) = reach2 {
            t.reach2plus.push(r);
        }
    }

    fn finish(self) -> GrundyTable {
        self.table
    }
}

/// `⋃_{1 <= a <= n / (level + 1)} G(a) ^ src[n - a]`, sized to `words` words.
///
/// Taking `a` as the smallest part of a split into at least `level + 1`
/// parts bounds it by `n / (level + 1)` without losing any split.
fn translate_union(
    n: usize,
    level: usize,
    words: usize,
    g: &[GrundyValue],
    src: &[ValueSet],
    parallel: bool,
) -> ValueSet {
    if n <= level {
        return ValueSet::with_words(words);
    }
    let last = n / (level + 1);
    let accumulate = |acc: &mut ValueSet, a: usize| {
        xor_translate_words(src[n - a].words(), g[a], acc.words_mut());
    };
    if parallel && last * words >= PAR_MIN_WORDS {
        (1..last + 1)
            .into_par_iter()
            .with_min_len(64)
            .fold(
                || ValueSet::with_words(words),
                |mut acc, a| {
                    accumulate(&mut acc, a);
                    acc
                },
            )
            .reduce(
                || ValueSet::with_words(words),
                |mut x, y| {
                    x.union_with(&y);
                    x
                },
            )
    } else {
        let mut acc = ValueSet::with_words(words);
        for a in 1..=last {
            accumulate(&mut acc, a);
        }
        acc
    }
}

impl GrundyTable {
    pub fn ruleset(&self) -> &RulesetSpec {
        &self.ruleset
    }

    /// Number of heap sizes covered, `N`.
    pub fn len(&self) -> usize {
        self.grundy.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `G(n)` for `1 <= n <= N`.
    ///
    /// # Panics
    ///
    /// Panics when `n` is zero or beyond the table.
    pub fn g(&self, n: usize) -> GrundyValue {
        assert!(
            n >= 1 && n <= self.len(),
            "heap size {n} outside 1..={}",
            self.len()
        );
        self.grundy[n]
    }

    pub fn get(&self, n: usize) -> Option<GrundyValue> {
        (n >= 1 && n <= self.len()).then(|| self.grundy[n])
    }

    /// `G(1..=N)`.
    pub fn values(&self) -> &[GrundyValue] {
        &self.grundy[1..]
    }

    /// The union of `R_c(n)` over `c ∈ C` with `c >= 2`, if it was retained.
    pub fn reach2plus(&self, n: usize) -> Option<&ValueSet> {
        if n == 0 {
            return None;
        }
        self.reach2plus.get(n)
    }

    /// Heap sizes for which `reach2plus` rows were kept.
    pub fn reach2plus_len(&self) -> usize {
        self.reach2plus.len() - 1
    }

    /// Values of all options of a single heap `n`.
    pub fn option_values(&self, n: usize) -> Result<ValueSet, EngineError> {
        self.check_n(n, 0)?;
        let mut out = ValueSet::new();
        for &c in self.ruleset.base() {
            if c < n {
                out.union_with(&self.exact[c][n]);
            }
        }
        if let Some(tr) = &self.tail {
            if tr.tail.start() < n {
                out.union_with(&tr.rows[tr.tail.start()][n]);
            }
        }
        Ok(out)
    }

    fn check_n(&self, n: usize, c: usize) -> Result<(), EngineError> {
        if n == 0 || n > self.len() {
            return Err(EngineError::OutOfRange {
                n,
                c,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// `R_c(n)`: the nim-sums of all splits of `n` into `c + 1` parts.
    ///
    /// Counts above the largest explicit cut are computed on demand.
    pub fn reachable(&self, n: usize, c: usize) -> Result<ValueSet, EngineError> {
        self.check_n(n, c)?;
        if c == 0 {
            return Err(EngineError::OutOfRange {
                n,
                c,
                len: self.len(),
            });
        }
        if c >= n {
            return Ok(ValueSet::new());
        }
        if c < self.exact.len() {
            return Ok(self.exact[c][n].clone());
        }
        Ok(exact_rows(&self.grundy, c, n).pop().unwrap_or_default())
    }

    /// Finds a split of heap `n` whose nim-sum is `target`, trying explicit
    /// cut-numbers in ascending order before the tail, and the smallest first
    /// part first. Returns the cut-number and the parts.
    pub fn realize(&self, n: usize, target: GrundyValue) -> Option<(usize, Vec<usize>)> {
        if n == 0 || n > self.len() {
            return None;
        }
        for &c in self.ruleset.base() {
            if c >= n {
                break;
            }
            if self.exact[c][n].contains(target) {
                let mut parts = Vec::with_capacity(c + 1);
                let found = self.exact_parts(c, n, target, &mut parts);
                debug_assert!(found);
                return Some((c, parts));
            }
        }
        let tr = self.tail.as_ref()?;
        let start = tr.tail.start();
        if start < n && tr.rows[start][n].contains(target) {
            let mut parts = Vec::new();
            let found = self.tail_parts(tr, start, n, target, &mut parts);
            debug_assert!(found);
            return Some((parts.len() - 1, parts));
        }
        None
    }

    fn exact_parts(&self, c: usize, m: usize, target: GrundyValue, out: &mut Vec<usize>) -> bool {
        let g = &self.grundy;
        if c == 0 {
            if g[m] == target {
                out.push(m);
                return true;
            }
            return false;
        }
        for a in 1..=m.saturating_sub(c) {
            let rest = target ^ g[a];
            let hit = if c == 1 {
                g[m - a] == rest
            } else {
                self.exact[c - 1][m - a].contains(rest)
            };
            if hit {
                out.push(a);
                return self.exact_parts(c - 1, m - a, rest, out);
            }
        }
        false
    }

    fn tail_parts(
        &self,
        tr: &TailRows,
        j: usize,
        m: usize,
        target: GrundyValue,
        out: &mut Vec<usize>,
    ) -> bool {
        let g = &self.grundy;
        if j == 0 {
            if g[m] == target {
                out.push(m);
                return true;
            }
            let d = tr.tail.stride();
            return tr.rows[d][m].contains(target) && self.tail_parts(tr, d, m, target, out);
        }
        for (a, &ga) in g.iter().enumerate().take(m.saturating_sub(j) + 1).skip(1) {
            let rest = target ^ ga;
            if tr.rows[j - 1][m - a].contains(rest) {
                out.push(a);
                return self.tail_parts(tr, j - 1, m - a, rest, out);
            }
        }
        false
    }
}

/// Exact rows `R_1..=R_c` at heap size `n`, rebuilt from the Grundy values.
/// Returns `R_1(n), ..., R_c(n)`.
fn exact_rows(g: &[GrundyValue], c: usize, n: usize) -> Vec<ValueSet> {
    let max = g[1..=n].iter().copied().max().unwrap_or(0);
    let words = words_for(max);
    let mut prev: Vec<ValueSet> = (0..=n)
        .map(|m| {
            let mut row = ValueSet::with_words(words);
            for a in 1..=m / 2 {
                row.insert(g[a] ^ g[m - a]);
            }
            row
        })
        .collect();
    let mut at_n = vec![prev[n].clone()];
    for level in 2..=c {
        let next: Vec<ValueSet> = (0..=n)
            .map(|m| translate_union(m, level, words, g, &prev, false))
            .collect();
        at_n.push(next[n].clone());
        prev = next;
    }
    at_n
}

/// Pairs `x1 < x2` in one residue class modulo the smallest even cut that
/// share a Grundy value. An even cut `c` forbids any such pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueDistinctnessReport {
    pub even_cut: usize,
    pub max_n: usize,
    pub violations: Vec<(usize, usize)>,
}

impl ResidueDistinctnessReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn residue_distinctness(table: &GrundyTable) -> Result<ResidueDistinctnessReport, EngineError> {
    let c = table
        .ruleset()
        .smallest_even_cut()
        .ok_or(EngineError::NotApplicable)?;
    let n = table.len();
    let mut seen: Vec<std::collections::HashMap<GrundyValue, Vec<usize>>> =
        vec![Default::default(); c];
    let mut violations = Vec::new();
    for x in 1..=n {
        let class = seen[x % c].entry(table.g(x)).or_default();
        violations.extend(class.iter().map(|&earlier| (earlier, x)));
        class.push(x);
    }
    Ok(ResidueDistinctnessReport {
        even_cut: c,
        max_n: n,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(text: &str) -> RulesetSpec {
        text.parse().unwrap()
    }

    fn values(text: &str, n: usize) -> Vec<GrundyValue> {
        compute_table(&rs(text), n, 1).unwrap().values().to_vec()
    }

    #[test]
    fn nim_sum_examples() {
        assert_eq!(nim_sum([9, 9]), 0);
        assert_eq!(nim_sum([1, 2]), 3);
        assert_eq!(nim_sum([5, 3]), 6);
        assert_eq!(nim_sum([]), 0);
    }

    #[test]
    fn table_examples() {
        assert_eq!(values("1,2", 10), vec![0, 1, 2, 3, 1, 4, 3, 2, 4, 5]);
        assert_eq!(values("2", 6), vec![0, 0, 1, 1, 2, 2]);
        assert_eq!(values("1,2,3", 5), vec![0, 1, 2, 3, 4]);
        assert_eq!(values("1,odd>=3", 6), vec![0, 1, 0, 1, 0, 1]);
        assert_eq!(values("4", 4), vec![0, 0, 0, 0]);
        assert_eq!(values("1,4", 8), vec![0, 1, 0, 1, 2, 3, 2, 3]);
        assert_eq!(values("all>=4", 9), vec![0, 0, 0, 0, 1, 1, 1, 1, 2]);
        assert_eq!(values("1,all>=2", 6), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn errors() {
        assert_eq!(
            compute_table(&rs("1"), 0, 1).unwrap_err(),
            EngineError::EmptyTable
        );
        let opts = TableOptions {
            max_n: 10,
            ..TableOptions::default()
        };
        assert!(matches!(
            compute_table_with(&rs("1"), 11, &opts),
            Err(EngineError::CapacityExceeded {
                requested: 11,
                limit: 10
            })
        ));
    }

    #[test]
    fn reachable_examples() {
        let t = compute_table(&rs("1,2"), 10, 1).unwrap();
        assert_eq!(
            t.reachable(4, 1).unwrap().iter().collect::<Vec<_>>(),
            vec![0, 2]
        );
        assert_eq!(
            t.reachable(2, 1).unwrap().iter().collect::<Vec<_>>(),
            vec![0]
        );
        assert!(t.reachable(3, 3).unwrap().is_empty());
        assert!(matches!(
            t.reachable(11, 1),
            Err(EngineError::OutOfRange { .. })
        ));
        assert!(matches!(
            t.reachable(0, 1),
            Err(EngineError::OutOfRange { .. })
        ));
        // count 3 is not stored for {1,2}; rebuilt on demand: (1,1,1,1) only.
        assert_eq!(
            t.reachable(4, 3).unwrap().iter().collect::<Vec<_>>(),
            vec![0]
        );
    }

    #[test]
    fn reach2plus_rows() {
        let t = compute_table(&rs("1,2"), 6, 1).unwrap();
        // 2-cuts of 5: (1,1,3) -> 2, (1,2,2) -> 0
        assert_eq!(
            t.reach2plus(5).unwrap().iter().collect::<Vec<_>>(),
            vec![0, 2]
        );
        let opts = TableOptions {
            reach2plus_upto: Some(3),
            ..TableOptions::default()
        };
        let t = compute_table_with(&rs("1,2"), 6, &opts).unwrap();
        assert!(t.reach2plus(3).is_some());
        assert!(t.reach2plus(4).is_none());
        assert_eq!(t.reach2plus_len(), 3);
    }

    #[test]
    fn realize_finds_target() {
        let t = compute_table(&rs("1,2"), 10, 1).unwrap();
        assert_eq!(t.realize(4, 0), Some((1, vec![2, 2])));
        assert_eq!(t.realize(1, 0), None);
        let t = compute_table(&rs("1,odd>=3"), 12, 1).unwrap();
        for n in 2..=12 {
            for target in t.option_values(n).unwrap().iter() {
                let (c, parts) = t.realize(n, target).unwrap();
                assert_eq!(parts.len(), c + 1);
                assert!(t.ruleset().contains(c));
                assert_eq!(parts.iter().sum::<usize>(), n);
                assert_eq!(nim_sum(parts.iter().map(|&p| t.g(p))), target);
            }
        }
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let one = compute_table(&rs("1,2,5"), 700, 1).unwrap();
        let four = compute_table(&rs("1,2,5"), 700, 4).unwrap();
        assert_eq!(one.values(), four.values());
        for n in [1, 100, 699, 700] {
            assert_eq!(one.reach2plus(n), four.reach2plus(n));
        }
    }

    #[test]
    fn residue_checker() {
        let t = compute_table(&rs("2"), 100, 1).unwrap();
        let report = residue_distinctness(&t).unwrap();
        assert_eq!(report.even_cut, 2);
        assert!(report.holds());
        let t = compute_table(&rs("1,3"), 20, 1).unwrap();
        assert_eq!(residue_distinctness(&t), Err(EngineError::NotApplicable));
        let t = compute_table(&rs("1,3,all>=5"), 20, 1).unwrap();
        assert_eq!(residue_distinctness(&t).unwrap().even_cut, 6);
    }
}
