use std::fmt;

use super::GrundyValue;

/// Swap masks for XOR-translating the bits inside one word: step `k`
/// exchanges adjacent blocks of `2^k` bits.
const SWAP_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// Moves bit `v` of `w` to bit `v ^ x` for `x < 64`.
#[inline(always)]
fn permute_word(mut w: u64, x: u32) -> u64 {
    for (k, &mask) in SWAP_MASKS.iter().enumerate() {
        if x >> k & 1 == 1 {
            let s = 1 << k;
            w = ((w & mask) << s) | ((w >> s) & mask);
        }
    }
    w
}

/// A set of nonnegative integers stored as a dense bit vector.
///
/// The word count is always zero or a power of two, so the set is closed
/// under XOR-translation by any value below its capacity.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ValueSet {
    words: Vec<u64>,
}

/// Number of words (a power of two, at least one) covering every value `<= max`.
pub(crate) fn words_for(max: GrundyValue) -> usize {
    ((max as usize >> 6) + 1).next_power_of_two()
}

impl ValueSet {
    pub fn new() -> Self {
        ValueSet { words: Vec::new() }
    }

    /// An empty set able to hold every value `<= max` without growing.
    pub fn covering(max: GrundyValue) -> Self {
        ValueSet {
            words: vec![0; words_for(max)],
        }
    }

    pub(crate) fn with_words(words: usize) -> Self {
        debug_assert!(words == 0 || words.is_power_of_two());
        ValueSet {
            words: vec![0; words],
        }
    }

    pub fn capacity(&self) -> usize {
        self.words.len() * 64
    }

    fn grow_to(&mut self, words: usize) {
        if words > self.words.len() {
            self.words.resize(words.next_power_of_two(), 0);
        }
    }

    pub fn insert(&mut self, v: GrundyValue) {
        let (w, b) = (v as usize >> 6, v & 63);
        self.grow_to(w + 1);
        self.words[w] |= 1 << b;
    }

    pub fn contains(&self, v: GrundyValue) -> bool {
        let (w, b) = (v as usize >> 6, v & 63);
        self.words.get(w).is_some_and(|x| x >> b & 1 == 1)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Smallest nonnegative integer not in the set.
    pub fn mex(&self) -> GrundyValue {
        for (i, &w) in self.words.iter().enumerate() {
            if w != u64::MAX {
                return (i * 64) as GrundyValue + (!w).trailing_zeros();
            }
        }
        (self.words.len() * 64) as GrundyValue
    }

    pub fn union_with(&mut self, other: &ValueSet) {
        self.grow_to(other.words.len());
        for (a, &b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Adds `{ v ^ x : v in self }` into `dst`.
    pub fn xor_translate_into(&self, x: GrundyValue, dst: &mut ValueSet) {
        let hi = x as usize >> 6;
        dst.grow_to(self.words.len().max(hi + 1));
        xor_translate_words(&self.words, x, &mut dst.words);
    }

    /// `{ v ^ x : v in self }`.
    pub fn xor_translate(&self, x: GrundyValue) -> ValueSet {
        let mut out = ValueSet::new();
        self.xor_translate_into(x, &mut out);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = GrundyValue> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some((i * 64) as GrundyValue + b)
            })
        })
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }
}

/// ORs the XOR-translate of `src` by `x` into `dst`. Both lengths must be
/// powers of two with `dst.len() >= src.len()` and `dst.len() > x >> 6`.
#[inline]
pub(crate) fn xor_translate_words(src: &[u64], x: GrundyValue, dst: &mut [u64]) {
    let hi = x as usize >> 6;
    let lo = x & 63;
    debug_assert!(dst.len() >= src.len() && hi < dst.len());
    if lo == 0 {
        for (i, &w) in src.iter().enumerate() {
            dst[i ^ hi] |= w;
        }
    } else {
        for (i, &w) in src.iter().enumerate() {
            if w != 0 {
                dst[i ^ hi] |= permute_word(w, lo);
            }
        }
    }
}

impl FromIterator<GrundyValue> for ValueSet {
    fn from_iter<I: IntoIterator<Item = GrundyValue>>(iter: I) -> Self {
        let mut set = ValueSet::new();
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Debug for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mex_examples() {
        assert_eq!(ValueSet::new().mex(), 0);
        assert_eq!([0, 1, 3].into_iter().collect::<ValueSet>().mex(), 2);
        assert_eq!([1, 2].into_iter().collect::<ValueSet>().mex(), 0);
        let full: ValueSet = (0..64).collect();
        assert_eq!(full.mex(), 64);
        let full: ValueSet = (0..200).collect();
        assert_eq!(full.mex(), 200);
    }

    #[test]
    fn capacity_is_power_of_two() {
        let mut s = ValueSet::new();
        s.insert(200);
        assert_eq!(s.capacity(), 256);
        assert_eq!(ValueSet::covering(63).capacity(), 64);
        assert_eq!(ValueSet::covering(64).capacity(), 128);
        assert_eq!(ValueSet::covering(0).capacity(), 64);
    }

    #[test]
    fn permute_word_matches_bitwise() {
        for x in 0..64u32 {
            let w = 0x8000_0000_0000_0001u64 | (1 << 17);
            let expect = [0u32, 63, 17]
                .iter()
                .fold(0u64, |acc, &v| acc | 1 << (v ^ x));
            assert_eq!(permute_word(w, x), expect, "x = {x}");
        }
    }

    proptest! {
        #[test]
        fn translate_is_elementwise_xor(
            values in prop::collection::btree_set(0u32..600, 0..40),
            x in 0u32..1000,
        ) {
            let set: ValueSet = values.iter().copied().collect();
            let got: Vec<_> = set.xor_translate(x).iter().collect();
            let mut expect: Vec<_> = values.iter().map(|v| v ^ x).collect();
            expect.sort_unstable();
            prop_assert_eq!(got, expect);
        }

        #[test]
        fn mex_contract(values in prop::collection::btree_set(0u32..150, 0..120)) {
            let set: ValueSet = values.iter().copied().collect();
            let m = set.mex();
            prop_assert!(!set.contains(m));
            prop_assert!((0..m).all(|v| set.contains(v)));
        }
    }
}
