//! Test-side oracles, written independently of the library's engine.
#![allow(dead_code)]

use std::collections::BTreeSet;

/// Every nondecreasing list of `parts` positive integers summing to `n`.
pub fn partitions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, parts: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for first in min..=n {
            if first * parts > n {
                break;
            }
            cur.push(first);
            go(n - first, parts - 1, first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, parts, 1, &mut Vec::new(), &mut out);
    out
}

fn mex(set: &BTreeSet<u32>) -> u32 {
    (0..).find(|v| !set.contains(v)).unwrap()
}

/// `G(1..=n)` for a finite CUT ruleset by direct enumeration of every split.
pub fn brute_cut(cuts: &[usize], n: usize) -> Vec<u32> {
    let mut g = vec![0u32; n + 1];
    for m in 1..=n {
        let mut opts = BTreeSet::new();
        for &c in cuts.iter().filter(|&&c| c < m) {
            for p in partitions(m, c + 1) {
                opts.insert(p.iter().fold(0, |acc, &h| acc ^ g[h]));
            }
        }
        g[m] = mex(&opts);
    }
    g[1..].to_vec()
}

/// Grundy values of a take-and-break code on heaps `0..=n`.
///
/// `digits[i]` is `d_i`; bit `j` set allows removing `i` tokens and leaving
/// exactly `j` non-empty heaps (bit 0: only when nothing is left).
pub fn brute_take_break(digits: &[u128], n: usize) -> Vec<u32> {
    let mut g = vec![0u32; n + 1];
    for m in 0..=n {
        let mut opts = BTreeSet::new();
        for (i, &d) in digits.iter().enumerate() {
            if i > m {
                break;
            }
            let rest = m - i;
            for j in 0..128 {
                if d >> j & 1 == 0 {
                    continue;
                }
                if j == 0 {
                    if rest == 0 && i > 0 {
                        opts.insert(0);
                    }
                    continue;
                }
                for p in partitions(rest, j) {
                    opts.insert(p.iter().fold(0, |acc, &h| acc ^ g[h]));
                }
            }
        }
        g[m] = mex(&opts);
    }
    g
}

/// Every legal `(heap index, parts)` move of a sorted multiset of heaps.
pub fn moves(cuts: &[usize], heaps: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for (i, &h) in heaps.iter().enumerate() {
        for &c in cuts.iter().filter(|&&c| c < h) {
            for p in partitions(h, c + 1) {
                let mut next: Vec<usize> = heaps.to_vec();
                next.remove(i);
                next.extend(p);
                next.sort_unstable();
                out.push(next);
            }
        }
    }
    out
}

/// Sorted multisets of 1 to `k` heaps with sizes in `1..=max`.
pub fn positions(k: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for p in &frontier {
            let lo = p.last().copied().unwrap_or(1);
            for h in lo..=max {
                let mut q = p.clone();
                q.push(h);
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// All subsets of `pool`.
pub fn subsets(pool: &[usize]) -> Vec<Vec<usize>> {
    (0..1usize << pool.len())
        .map(|mask| {
            (0..pool.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| pool[i])
                .collect()
        })
        .collect()
}

#[test]
fn oracle_self_checks() {
    assert_eq!(partitions(6, 3).len(), 3);
    assert_eq!(brute_cut(&[1, 2], 10), vec![0, 1, 2, 3, 1, 4, 3, 2, 4, 5]);
    // 0.7: remove one token, leaving zero, one or two heaps.
    assert_eq!(brute_take_break(&[0, 7], 4), vec![0, 1, 0, 1, 0]);
    assert_eq!(positions(3, 20).len(), 20 + 210 + 1540);
}
