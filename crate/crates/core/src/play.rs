//! Sums of heaps: values, winners and winning moves under normal play.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::engine::{for_each_option, nim_sum, GrundyTable, GrundyValue};
use crate::ruleset::RulesetSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlayError {
    #[error("heap of size {heap} is beyond the table (length {len})")]
    HeapBeyondTable { heap: usize, len: usize },
    #[error("heap sizes must be positive")]
    ZeroHeap,
    #[error("malformed position {0:?}")]
    Malformed(String),
}

/// A multiset of heap sizes, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Position {
    heaps: Vec<usize>,
}

impl Position {
    pub fn new(mut heaps: Vec<usize>) -> Result<Self, PlayError> {
        if heaps.contains(&0) {
            return Err(PlayError::ZeroHeap);
        }
        heaps.sort_unstable();
        Ok(Position { heaps })
    }

    pub fn heaps(&self) -> &[usize] {
        &self.heaps
    }

    pub fn max_heap(&self) -> usize {
        self.heaps.last().copied().unwrap_or(0)
    }

    /// The position after `mv`.
    pub fn apply(&self, mv: &Move) -> Position {
        let mut heaps = self.heaps.clone();
        heaps.remove(mv.heap_index);
        heaps.extend_from_slice(&mv.parts);
        heaps.sort_unstable();
        Position { heaps }
    }
}

impl FromStr for Position {
    type Err = PlayError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Position::default());
        }
        let heaps = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PlayError::Malformed(s.to_string()))?;
        Position::new(heaps)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.heaps.iter().map(|h| h.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// A `c`-cut of the heap at `heap_index` (in sorted order) into `parts`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub heap_index: usize,
    pub heap: usize,
    pub c: usize,
    pub parts: Vec<usize>,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "split {} -> {}", self.heap, parts.join("+"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    PlayerToMoveWins,
    PreviousPlayerWins,
}

fn check(pos: &Position, table: &GrundyTable) -> Result<(), PlayError> {
    match pos.max_heap() {
        h if h > table.len() => Err(PlayError::HeapBeyondTable {
            heap: h,
            len: table.len(),
        }),
        _ => Ok(()),
    }
}

pub fn position_value(pos: &Position, table: &GrundyTable) -> Result<GrundyValue, PlayError> {
    check(pos, table)?;
    Ok(nim_sum(pos.heaps.iter().map(|&h| table.g(h))))
}

pub fn outcome(pos: &Position, table: &GrundyTable) -> Result<Outcome, PlayError> {
    Ok(match position_value(pos, table)? {
        0 => Outcome::PreviousPlayerWins,
        _ => Outcome::PlayerToMoveWins,
    })
}

/// A move to a position of value zero, if the position is nonzero.
///
/// Heaps are tried in sorted order; within a heap, cut-numbers ascending and
/// then the smallest first part.
pub fn best_move(pos: &Position, table: &GrundyTable) -> Result<Option<Move>, PlayError> {
    let total = position_value(pos, table)?;
    if total == 0 {
        return Ok(None);
    }
    for (heap_index, &heap) in pos.heaps.iter().enumerate() {
        if let Some((c, parts)) = table.realize(heap, total ^ table.g(heap)) {
            return Ok(Some(Move {
                heap_index,
                heap,
                c,
                parts,
            }));
        }
    }
    Ok(None)
}

/// Every legal move, one per distinct heap size, with parts nondecreasing.
pub fn legal_moves(pos: &Position, spec: &RulesetSpec) -> Vec<Move> {
    let mut out = Vec::new();
    for (heap_index, &heap) in pos.heaps.iter().enumerate() {
        if heap_index > 0 && pos.heaps[heap_index - 1] == heap {
            continue;
        }
        for_each_option(spec, heap, |c, parts| {
            out.push(Move {
                heap_index,
                heap,
                c,
                parts: parts.to_vec(),
            });
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::compute_table;

    fn table(cuts: &str, n: usize) -> GrundyTable {
        compute_table(&cuts.parse().unwrap(), n, 1).unwrap()
    }

    fn pos(s: &str) -> Position {
        s.parse().unwrap()
    }

    #[test]
    fn values_and_outcomes() {
        let t = table("1,2", 10);
        assert_eq!(position_value(&pos(""), &t), Ok(0));
        assert_eq!(position_value(&pos("2,2"), &t), Ok(0));
        assert_eq!(position_value(&pos("3,5"), &t), Ok(3));
        assert_eq!(outcome(&pos("1"), &t), Ok(Outcome::PreviousPlayerWins));
        assert_eq!(outcome(&pos("4"), &t), Ok(Outcome::PlayerToMoveWins));
        assert_eq!(
            position_value(&pos("11"), &t),
            Err(PlayError::HeapBeyondTable { heap: 11, len: 10 })
        );
    }

    #[test]
    fn best_move_examples() {
        let t = table("1,2", 10);
        let mv = best_move(&pos("4"), &t).unwrap().unwrap();
        assert_eq!(mv.to_string(), "split 4 -> 2+2");
        assert_eq!(best_move(&pos("1"), &t), Ok(None));
        let p = pos("3,2");
        let mv = best_move(&p, &t).unwrap().unwrap();
        assert_eq!(position_value(&p.apply(&mv), &t), Ok(0));
    }

    #[test]
    fn position_text() {
        assert_eq!(pos("7, 4,7").to_string(), "4,7,7");
        assert_eq!("4,0".parse::<Position>(), Err(PlayError::ZeroHeap));
        assert!(matches!(
            "4,x".parse::<Position>(),
            Err(PlayError::Malformed(_))
        ));
    }

    #[test]
    fn legal_moves_skip_duplicate_heaps() {
        let spec: RulesetSpec = "1".parse().unwrap();
        let moves = legal_moves(&pos("4,4"), &spec);
        // (1,3) and (2,2), once for the repeated heap size.
        assert_eq!(moves.len(), 2);
        assert!(moves.iter().all(|m| m.heap_index == 0));
    }
}
