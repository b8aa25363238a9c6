//! Constant-time Grundy values for the solved families, and extension of a
//! certified arithmetic-periodic prefix.

use thiserror::Error;

use crate::engine::GrundyValue;
use crate::ruleset::FamilyClass;

/// `n = p·q + r` with `0 < r <= p`.
///
/// The remainder is never zero because heap sizes start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisionDecomposition {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

/// # Panics
///
/// Panics if `n` or `p` is zero.
pub fn decompose(n: usize, p: usize) -> DivisionDecomposition {
    assert!(n >= 1 && p >= 1, "decompose needs n >= 1 and p >= 1");
    let q = (n - 1) / p;
    DivisionDecomposition {
        n,
        p,
        q,
        r: n - p * q,
    }
}

/// Grundy value of heap `n` for a solved family, or `None` when the class
/// has no closed form (`OneEvenC`, `General`).
pub fn closed_form(class: FamilyClass, n: usize) -> Option<GrundyValue> {
    assert!(n >= 1, "heap sizes start at 1");
    let value = match class {
        FamilyClass::AllOddWithOne => n.is_multiple_of(2) as usize,
        FamilyClass::MinAtLeastTwo(c1) => decompose(n, c1).q,
        FamilyClass::ContainsOneTwoThree => n - 1,
        FamilyClass::OneThreeTwoK(k) => {
            let d = decompose(n, 2 * k);
            2 * d.q + 1 - d.r % 2
        }
        FamilyClass::OneEvenC(_) | FamilyClass::General => return None,
    };
    Some(value as GrundyValue)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("prefix has {len} values but the period is {p}")]
    PrefixTooShort { len: usize, p: usize },
}

/// `G(n) = s·q + G(r)` for an arithmetic-periodic sequence of period `p` and
/// saltus `s`, given its first `p` values.
pub fn extend(
    prefix: &[GrundyValue],
    p: usize,
    s: GrundyValue,
    n: usize,
) -> Result<GrundyValue, ExtendError> {
    if p == 0 || prefix.len() < p {
        return Err(ExtendError::PrefixTooShort {
            len: prefix.len(),
            p,
        });
    }
    let d = decompose(n, p);
    Ok(s * d.q as GrundyValue + prefix[d.r - 1])
}
