//! CUT rulesets: parsing, validation, family classification and the
//! conversion to take-and-break codes.
//!
//! A ruleset is a set `C` of positive cut-numbers. A `c`-cut splits one heap
//! into `c + 1` non-empty heaps, so a heap of `n` beans admits a `c`-cut only
//! when `n >= c + 1`. Besides a finite list of explicit cut-numbers, a ruleset
//! may carry one of two infinite tails: every integer from some point on, or
//! every odd integer from some point on.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest explicit cut-number accepted by [`RulesetSpec::new`].
pub const MAX_CUT: usize = 1_000_000;

/// Largest cut-number whose take-and-break digit `2^(c+2) - 1` fits in a `u128`.
pub const MAX_CODE_CUT: usize = 126;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RulesetError {
    #[error("ruleset has no cut-numbers")]
    EmptyRuleset,
    #[error("cut-numbers must be positive, got {0}")]
    NonPositiveCut(i64),
    #[error("cut-number {0} exceeds the supported maximum {MAX_CUT}")]
    CutTooLarge(usize),
    #[error("malformed ruleset text: {0}")]
    MalformedText(String),
    #[error("explicit cut-number {cut} overlaps the tail starting at {start}")]
    TailOverlap { cut: usize, start: usize },
    #[error("ruleset has an infinite tail")]
    InfiniteRuleset,
    #[error("cut-number {0} is too large for a take-and-break digit")]
    CodeTooWide(usize),
    #[error("code is not the image of a CUT ruleset: {0}")]
    NotACutCode(String),
}

/// An infinite pattern of cut-numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tail {
    /// Every integer `>= t`.
    AllFrom(usize),
    /// Every odd integer `>= t`. The start is kept odd.
    OddFrom(usize),
}

impl Tail {
    pub fn start(self) -> usize {
        match self {
            Tail::AllFrom(t) | Tail::OddFrom(t) => t,
        }
    }

    /// Distance between consecutive cut-numbers of the tail.
    pub fn stride(self) -> usize {
        match self {
            Tail::AllFrom(_) => 1,
            Tail::OddFrom(_) => 2,
        }
    }

    pub fn contains(self, c: usize) -> bool {
        match self {
            Tail::AllFrom(t) => c >= t,
            Tail::OddFrom(t) => c >= t && c % 2 == 1,
        }
    }

    /// Smallest member of the tail that is at least `lo`.
    pub fn first_at_least(self, lo: usize) -> usize {
        match self {
            Tail::AllFrom(t) => t.max(lo),
            Tail::OddFrom(t) => {
                let x = t.max(lo);
                x | 1
            }
        }
    }
}

/// A validated CUT ruleset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RulesetSpec {
    base: Vec<usize>,
    tail: Option<Tail>,
}

impl RulesetSpec {
    /// Builds a ruleset, sorting and deduplicating `base`.
    ///
    /// An `OddFrom` start that is even is moved up to the next odd number.
    pub fn new(mut base: Vec<usize>, tail: Option<Tail>) -> Result<Self, RulesetError> {
        base.sort_unstable();
        base.dedup();
        if base.is_empty() && tail.is_none() {
            return Err(RulesetError::EmptyRuleset);
        }
        if let Some(&first) = base.first() {
            if first == 0 {
                return Err(RulesetError::NonPositiveCut(0));
            }
        }
        if let Some(&last) = base.last() {
            if last > MAX_CUT {
                return Err(RulesetError::CutTooLarge(last));
            }
        }
        let tail = match tail {
            None => None,
            Some(t) => {
                let start = t.start();
                if start == 0 {
                    return Err(RulesetError::NonPositiveCut(0));
                }
                if start > MAX_CUT {
                    return Err(RulesetError::CutTooLarge(start));
                }
                let t = match t {
                    Tail::OddFrom(s) => Tail::OddFrom(s | 1),
                    other => other,
                };
                if let Some(&last) = base.last() {
                    if last >= t.start() {
                        return Err(RulesetError::TailOverlap {
                            cut: last,
                            start: t.start(),
                        });
                    }
                }
                Some(t)
            }
        };
        Ok(RulesetSpec { base, tail })
    }

    /// A finite ruleset from explicit cut-numbers.
    pub fn finite(cuts: &[usize]) -> Result<Self, RulesetError> {
        Self::new(cuts.to_vec(), None)
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn tail(&self) -> Option<Tail> {
        self.tail
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    pub fn contains(&self, c: usize) -> bool {
        self.base.binary_search(&c).is_ok() || self.tail.is_some_and(|t| t.contains(c))
    }

    pub fn min_cut(&self) -> usize {
        match (self.base.first(), self.tail) {
            (Some(&c), _) => c,
            (None, Some(t)) => t.start(),
            (None, None) => unreachable!("validated ruleset is nonempty"),
        }
    }

    /// Largest cut-number, or `None` for an infinite ruleset.
    pub fn max_cut(&self) -> Option<usize> {
        match self.tail {
            Some(_) => None,
            None => self.base.last().copied(),
        }
    }

    /// Smallest even cut-number, if any.
    pub fn smallest_even_cut(&self) -> Option<usize> {
        let explicit = self.base.iter().copied().find(|c| c % 2 == 0);
        let from_tail = match self.tail {
            Some(Tail::AllFrom(t)) => Some(t + t % 2),
            _ => None,
        };
        match (explicit, from_tail) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// All cut-numbers usable on a heap of `n` beans, ascending.
    pub fn materialize_cuts(&self, n: usize) -> Vec<usize> {
        let limit = n.saturating_sub(1);
        let mut out: Vec<usize> = self
            .base
            .iter()
            .copied()
            .take_while(|&c| c <= limit)
            .collect();
        if let Some(t) = self.tail {
            let mut c = t.start();
            while c <= limit {
                out.push(c);
                c += t.stride();
            }
        }
        out
    }

    pub fn classify(&self) -> FamilyClass {
        classify(self)
    }
}

impl fmt::Display for RulesetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.base {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        if let Some(t) = self.tail {
            if !first {
                f.write_str(",")?;
            }
            match t {
                Tail::AllFrom(s) => write!(f, "all>={s}")?,
                Tail::OddFrom(s) => write!(f, "odd>={s}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for RulesetSpec {
    type Err = RulesetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ruleset(s)
    }
}

/// Parses `INT(,INT)*` optionally followed by `,all>=INT` or `,odd>=INT`.
///
/// A tail on its own (`all>=4`) is accepted too.
pub fn parse_ruleset(text: &str) -> Result<RulesetSpec, RulesetError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(RulesetError::EmptyRuleset);
    }
    let items: Vec<&str> = text.split(',').map(str::trim).collect();
    let mut base = Vec::with_capacity(items.len());
    let mut tail = None;
    for (i, item) in items.iter().enumerate() {
        let pattern = item
            .strip_prefix("all>=")
            .map(|rest| (rest, true))
            .or_else(|| item.strip_prefix("odd>=").map(|rest| (rest, false)));
        if let Some((rest, all)) = pattern {
            if i + 1 != items.len() {
                return Err(RulesetError::MalformedText(format!(
                    "tail pattern `{item}` must come last"
                )));
            }
            let t = parse_cut(rest)?;
            tail = Some(if all {
                Tail::AllFrom(t)
            } else {
                Tail::OddFrom(t)
            });
        } else {
            base.push(parse_cut(item)?);
        }
    }
    RulesetSpec::new(base, tail)
}

fn parse_cut(item: &str) -> Result<usize, RulesetError> {
    if item.is_empty() {
        return Err(RulesetError::MalformedText("empty item".into()));
    }
    let value: i64 = item
        .parse()
        .map_err(|_| RulesetError::MalformedText(format!("`{item}` is not an integer")))?;
    if value <= 0 {
        return Err(RulesetError::NonPositiveCut(value));
    }
    let value = value as usize;
    if value > MAX_CUT {
        return Err(RulesetError::CutTooLarge(value));
    }
    Ok(value)
}

/// The solved families a ruleset can belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyClass {
    /// `1 ∈ C` and every cut-number is odd.
    AllOddWithOne,
    /// `min C = c1 >= 2`.
    MinAtLeastTwo(usize),
    /// `{1, 2, 3} ⊆ C`.
    ContainsOneTwoThree,
    /// `C = {1, 3, 2k}` with `k >= 2`.
    OneThreeTwoK(usize),
    /// `C = {1, c}` with `c >= 4` even.
    OneEvenC(usize),
    General,
}

/// Classification precedence: all-odd, `{1,2,3}`, `{1,3,2k}`, `{1,c}`,
/// `min >= 2`, then general.
pub fn classify(spec: &RulesetSpec) -> FamilyClass {
    let base = spec.base();
    let all_odd =
        base.iter().all(|c| c % 2 == 1) && matches!(spec.tail(), None | Some(Tail::OddFrom(_)));
    if spec.contains(1) && all_odd {
        return FamilyClass::AllOddWithOne;
    }
    if spec.contains(1) && spec.contains(2) && spec.contains(3) {
        return FamilyClass::ContainsOneTwoThree;
    }
    if spec.is_finite() {
        if let [1, 3, c] = *base {
            if c % 2 == 0 {
                return FamilyClass::OneThreeTwoK(c / 2);
            }
        }
        if let [1, c] = *base {
            if c % 2 == 0 && c >= 4 {
                return FamilyClass::OneEvenC(c);
            }
        }
    }
    let min = spec.min_cut();
    if min >= 2 {
        return FamilyClass::MinAtLeastTwo(min);
    }
    FamilyClass::General
}

/// A pure take-and-break code `d0.d1d2...dk`.
///
/// Bit `j` of digit `d_i` allows removing `i` tokens and leaving `j`
/// non-empty heaps. Digits are plain integers because `2^(c+2) - 1` outgrows
/// a single hexadecimal digit from `c = 3` on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TakeBreakCode {
    pub d0: u128,
    pub digits: Vec<u128>,
}

impl TakeBreakCode {
    /// Digit `i` (1-based); zero past the end of the code.
    pub fn digit(&self, i: usize) -> u128 {
        if i == 0 {
            self.d0
        } else {
            self.digits.get(i - 1).copied().unwrap_or(0)
        }
    }

    /// Recovers the ruleset of a code produced by [`to_take_and_break`].
    pub fn to_ruleset(&self) -> Result<RulesetSpec, RulesetError> {
        if self.d0 != 0 {
            return Err(RulesetError::NotACutCode(format!("d0 = {}", self.d0)));
        }
        let mut cuts = Vec::new();
        for (i, &d) in self.digits.iter().enumerate() {
            let c = i + 1;
            if d == 0 {
                continue;
            }
            if c > MAX_CODE_CUT || d != full_digit(c) {
                return Err(RulesetError::NotACutCode(format!("digit {c} = {d}")));
            }
            cuts.push(c);
        }
        RulesetSpec::finite(&cuts)
    }
}

fn full_digit(c: usize) -> u128 {
    (1u128 << (c + 2)) - 1
}

impl fmt::Display for TakeBreakCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.", self.d0)?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for TakeBreakCode {
    type Err = RulesetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RulesetError::MalformedText(format!("`{s}` is not a code"));
        let (d0, rest) = s.trim().split_once('.').ok_or_else(bad)?;
        let d0 = d0.parse().map_err(|_| bad())?;
        let digits = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|d| d.trim().parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        };
        Ok(TakeBreakCode { d0, digits })
    }
}

/// Converts a finite ruleset into the equivalent take-and-break code.
///
/// The CUT game on a heap of `n` beans plays exactly like the code on a heap
/// of `n - 1` tokens: cutting a path of `n` vertices at `c` edges is removing
/// `c` vertices from its line graph, leaving at most `c + 1` pieces.
pub fn to_take_and_break(spec: &RulesetSpec) -> Result<TakeBreakCode, RulesetError> {
    let max = spec.max_cut().ok_or(RulesetError::InfiniteRuleset)?;
    if max > MAX_CODE_CUT {
        return Err(RulesetError::CodeTooWide(max));
    }
    let digits = (1..=max)
        .map(|c| if spec.contains(c) { full_digit(c) } else { 0 })
        .collect();
    Ok(TakeBreakCode { d0: 0, digits })
}
