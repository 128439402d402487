//! Reduced words in the free group on two generators.
//!
//! Words are stored reduced; every constructor restores the invariant that
//! no letter is adjacent to its own inverse. The same representation serves
//! F₂ = ⟨u, v⟩, braid words on a, b, and words in the free generators of the
//! derived modular group — only the display alphabet changes.

use std::fmt;

use thiserror::Error;

/// One letter of a two-generator alphabet: generator index (1 or 2) and sign.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    index: u8,
    sign: i8,
}

impl Letter {
    /// Builds a letter. Panics unless `index ∈ {1, 2}` and `sign ∈ {-1, +1}`.
    pub const fn new(index: u8, sign: i8) -> Self {
        assert!(index == 1 || index == 2, "letter index must be 1 or 2");
        assert!(sign == 1 || sign == -1, "letter sign must be +1 or -1");
        Letter { index, sign }
    }

    pub fn index(self) -> u8 {
        self.index
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    pub fn inverse(self) -> Self {
        Letter { index: self.index, sign: -self.sign }
    }

    fn cancels(self, other: Self) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

/// Exponent sums of the two generators: the image in ℤ².
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct AbVector {
    pub e1: i64,
    pub e2: i64,
}

/// A reduced word in the free group on two generators.
///
/// Equality, hashing, and ordering are on the reduced spelling, which by
/// freeness is equality in the group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    /// The generator with the given index (1 or 2).
    pub fn generator(index: u8) -> Self {
        FreeWord { letters: vec![Letter::new(index, 1)] }
    }

    /// Free reduction: builds the reduced word from an arbitrary letter
    /// sequence by cancelling adjacent inverse pairs.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in raw {
            if out.last().is_some_and(|&t| t.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Product `self · other`, reduced.
    pub fn mul(&self, other: &Self) -> Self {
        // Only the junction can cancel; both factors are already reduced.
        let mut out = self.letters.clone();
        for &l in &other.letters {
            if out.last().is_some_and(|&t| t.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    pub fn inv(&self) -> Self {
        FreeWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Conjugate `x · self · x⁻¹`.
    pub fn conjugated_by(&self, x: &Self) -> Self {
        x.mul(self).mul(&x.inv())
    }

    /// Commutator `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn commutator(x: &Self, y: &Self) -> Self {
        x.inv().mul(&y.inv()).mul(x).mul(y)
    }

    /// Splits `self = conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced. Returns `(core, conjugator)`.
    pub fn cyclic_reduce(&self) -> (Self, Self) {
        let mut core = self.letters.clone();
        let mut prefix: Vec<Letter> = Vec::new();
        while core.len() >= 2 && core.first().unwrap().cancels(*core.last().unwrap()) {
            prefix.push(core.remove(0));
            core.pop();
        }
        (FreeWord { letters: core }, FreeWord { letters: prefix })
    }

    /// Conjugacy test with witness: returns `w` with `y = w⁻¹ x w` when the
    /// words are conjugate.
    pub fn conjugacy_witness(x: &Self, y: &Self) -> Option<Self> {
        let (cx, px) = x.cyclic_reduce();
        let (cy, py) = y.cyclic_reduce();
        if cx.len() != cy.len() {
            return None;
        }
        let m = cx.len();
        if m == 0 {
            return Some(FreeWord::identity());
        }
        for k in 0..m {
            let rotated: Vec<Letter> =
                cx.letters[k..].iter().chain(cx.letters[..k].iter()).copied().collect();
            if rotated == cy.letters {
                // cy = r⁻¹ cx r for r the length-k prefix of cx, hence
                // y = (px · r · py⁻¹)⁻¹ · x · (px · r · py⁻¹).
                let r = FreeWord { letters: cx.letters[..k].to_vec() };
                let w = px.mul(&r).mul(&py.inv());
                debug_assert_eq!(&w.inv().mul(x).mul(&w), y);
                return Some(w);
            }
        }
        None
    }

    pub fn abelianize(&self) -> AbVector {
        let mut v = AbVector::default();
        for l in &self.letters {
            match l.index {
                1 => v.e1 += l.sign as i64,
                _ => v.e2 += l.sign as i64,
            }
        }
        v
    }

    /// All reduced words of length at most `max_len`, shortest first.
    pub fn enumerate_reduced(max_len: usize) -> Vec<FreeWord> {
        let mut all = vec![FreeWord::identity()];
        let mut frontier = vec![FreeWord::identity()];
        let gens: Vec<Letter> = (1..=2u8)
            .flat_map(|i| [Letter::new(i, 1), Letter::new(i, -1)])
            .collect();
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(frontier.len() * 3);
            for w in &frontier {
                for &g in &gens {
                    if w.letters.last().is_some_and(|&t| t.cancels(g)) {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(g);
                    next.push(FreeWord { letters });
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }
}

/// Error from the textual word syntax.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseWordError {
    #[error("unexpected character {0:?} in word (expected u, v, U, V, 1, or whitespace)")]
    BadChar(char),
}

/// Parses the `u v U V` syntax: uppercase means inverse, `1` is the empty
/// word, whitespace is ignored, juxtaposition multiplies.
pub fn parse_word(s: &str) -> Result<FreeWord, ParseWordError> {
    let mut raw = Vec::new();
    for c in s.chars() {
        match c {
            'u' => raw.push(Letter::new(1, 1)),
            'U' => raw.push(Letter::new(1, -1)),
            'v' => raw.push(Letter::new(2, 1)),
            'V' => raw.push(Letter::new(2, -1)),
            '1' => {}
            c if c.is_whitespace() => {}
            c => return Err(ParseWordError::BadChar(c)),
        }
    }
    Ok(FreeWord::reduce(raw))
}

impl fmt::Display for FreeWord {
    /// Displays in the `u v U V` alphabet; the empty word prints as `1`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(out, "1");
        }
        for l in &self.letters {
            let c = match (l.index, l.sign) {
                (1, 1) => 'u',
                (1, -1) => 'U',
                (2, 1) => 'v',
                _ => 'V',
            };
            write!(out, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> FreeWord {
        parse_word(s).unwrap()
    }

    #[test]
    fn reduce_cancels_adjacent_inverses() {
        let u = Letter::new(1, 1);
        let ui = Letter::new(1, -1);
        let v = Letter::new(2, 1);
        let vi = Letter::new(2, -1);
        assert_eq!(FreeWord::reduce([u, ui, u]), w("u"));
        assert_eq!(FreeWord::reduce([v, u, ui, vi, u]), w("u"));
        assert_eq!(FreeWord::reduce([u, ui]), FreeWord::identity());
    }

    #[test]
    fn mul_cancels_at_junction() {
        assert_eq!(w("uv").mul(&w("Vu")), w("uu"));
        assert_eq!(w("uv").mul(&w("VU")), FreeWord::identity());
    }

    #[test]
    fn conjugate_of_commutator() {
        let c = FreeWord::commutator(&w("u"), &w("v"));
        assert_eq!(c, w("UVuv"));
        assert_eq!(c.conjugated_by(&w("vu")), w("uvUV"));
    }

    #[test]
    fn cyclic_reduce_splits_conjugator() {
        let input = w("VU").mul(&w("UVuv")).mul(&w("uv"));
        let (core, conj) = input.cyclic_reduce();
        assert_eq!(core, w("UVuv"));
        assert_eq!(conj, w("VU"));
        assert_eq!(core.conjugated_by(&conj), input);
    }

    #[test]
    fn conjugacy_witness_examples() {
        let c = w("UVuv");
        let y = c.conjugated_by(&w("u"));
        let witness = FreeWord::conjugacy_witness(&c, &y).unwrap();
        assert_eq!(witness, w("U"));
        assert_eq!(FreeWord::conjugacy_witness(&w("u"), &w("vuV")), Some(w("V")));
        assert_eq!(FreeWord::conjugacy_witness(&w("u"), &w("v")), None);
        assert!(FreeWord::conjugacy_witness(&w("uv"), &w("vu")).is_some());
        // Conjugate iff cyclic rotations match: uv vs uV are not conjugate.
        assert_eq!(FreeWord::conjugacy_witness(&w("uv"), &w("uV")), None);
    }

    #[test]
    fn abelianize_counts_exponents() {
        assert_eq!(w("uvUV").abelianize(), AbVector { e1: 0, e2: 0 });
        assert_eq!(w("uuvU").abelianize(), AbVector { e1: 1, e2: 1 });
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!(parse_word("u x"), Err(ParseWordError::BadChar('x')));
    }

    #[test]
    fn display_round_trip() {
        for s in ["1", "u", "UVuv", "uuVV"] {
            assert_eq!(parse_word(&w(s).to_string()).unwrap(), w(s));
        }
    }

    #[test]
    fn enumerate_reduced_counts() {
        // 1 empty word, then 4·3^(l-1) words of each length l.
        let words = FreeWord::enumerate_reduced(3);
        assert_eq!(words.len(), 1 + 4 + 12 + 36);
        assert!(words.iter().all(|x| x.len() <= 3));
        let mut dedup = words.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), words.len());
    }

    /// Brute-force conjugacy: breadth-first search over single-letter
    /// conjugations, keeping intermediate lengths within the larger input
    /// length (a conjugacy path never needs to exceed it).
    fn conjugate_bfs(x: &FreeWord, y: &FreeWord) -> bool {
        use std::collections::{HashSet, VecDeque};
        let cap = x.len().max(y.len());
        let mut seen: HashSet<FreeWord> = HashSet::new();
        let mut queue = VecDeque::from([x.clone()]);
        seen.insert(x.clone());
        while let Some(cur) = queue.pop_front() {
            if &cur == y {
                return true;
            }
            for (i, s) in [(1u8, 1i8), (1, -1), (2, 1), (2, -1)] {
                let g = FreeWord { letters: vec![Letter::new(i, s)] };
                let next = cur.conjugated_by(&g);
                if next.len() <= cap && seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        false
    }

    fn letter_strategy() -> impl Strategy<Value = Letter> {
        (1u8..=2, prop_oneof![Just(1i8), Just(-1i8)]).prop_map(|(i, s)| Letter::new(i, s))
    }

    fn raw_strategy(max: usize) -> impl Strategy<Value = Vec<Letter>> {
        proptest::collection::vec(letter_strategy(), 0..max)
    }

    proptest! {
        #[test]
        fn reduction_is_confluent(raw in raw_strategy(200)) {
            // Right-to-left reduction must agree with the left-to-right one.
            let left = FreeWord::reduce(raw.clone());
            let mut right: Vec<Letter> = Vec::new();
            for &l in raw.iter().rev() {
                if right.last().is_some_and(|&t| l.cancels(t)) {
                    right.pop();
                } else {
                    right.push(l);
                }
            }
            right.reverse();
            prop_assert_eq!(left.letters(), &right[..]);
        }

        #[test]
        fn group_axioms(a in raw_strategy(40), b in raw_strategy(40), c in raw_strategy(40)) {
            let (a, b, c) = (FreeWord::reduce(a), FreeWord::reduce(b), FreeWord::reduce(c));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&a.inv()), FreeWord::identity());
            prop_assert_eq!(a.inv().mul(&a), FreeWord::identity());
            prop_assert_eq!(a.mul(&FreeWord::identity()), a.clone());
        }

        #[test]
        fn mul_length_bound(a in raw_strategy(40), b in raw_strategy(40)) {
            let (a, b) = (FreeWord::reduce(a), FreeWord::reduce(b));
            let p = a.mul(&b);
            prop_assert!(p.len() <= a.len() + b.len());
            let junction_cancels = !a.is_empty()
                && !b.is_empty()
                && a.letters().last().unwrap().index() == b.letters()[0].index()
                && a.letters().last().unwrap().sign() != b.letters()[0].sign();
            prop_assert_eq!(p.len() == a.len() + b.len(), !junction_cancels);
        }

        #[test]
        fn cyclic_reduce_round_trip(raw in raw_strategy(60)) {
            let x = FreeWord::reduce(raw);
            let (core, conj) = x.cyclic_reduce();
            prop_assert_eq!(core.conjugated_by(&conj), x);
            let cyclically_reduced = core.is_empty()
                || !core.letters().first().unwrap().cancels(*core.letters().last().unwrap());
            prop_assert!(cyclically_reduced);
        }

        #[test]
        fn witness_matches_brute_force(a in raw_strategy(8), b in raw_strategy(8)) {
            let (x, y) = (FreeWord::reduce(a), FreeWord::reduce(b));
            match FreeWord::conjugacy_witness(&x, &y) {
                Some(wit) => {
                    prop_assert_eq!(wit.inv().mul(&x).mul(&wit), y.clone());
                    prop_assert!(conjugate_bfs(&x, &y));
                }
                None => prop_assert!(!conjugate_bfs(&x, &y)),
            }
        }

        #[test]
        fn conjugates_always_detected(a in raw_strategy(8), g in raw_strategy(6)) {
            let x = FreeWord::reduce(a);
            let y = x.conjugated_by(&FreeWord::reduce(g));
            let wit = FreeWord::conjugacy_witness(&x, &y);
            prop_assert!(wit.is_some());
            let wit = wit.unwrap();
            prop_assert_eq!(wit.inv().mul(&x).mul(&wit), y);
        }

        #[test]
        fn abelianize_is_homomorphism(a in raw_strategy(40), b in raw_strategy(40)) {
            let (a, b) = (FreeWord::reduce(a), FreeWord::reduce(b));
            let ab = a.mul(&b).abelianize();
            prop_assert_eq!(ab.e1, a.abelianize().e1 + b.abelianize().e1);
            prop_assert_eq!(ab.e2, a.abelianize().e2 + b.abelianize().e2);
        }
    }
}
