//! The braid group B₃ = ⟨a, b | aba = bab⟩.
//!
//! Words are stored freely reduced; the braid relation is applied only
//! through the normal form. Writing s = aba = bab and c = s², the center
//! is ⟨c⟩ and the surjection σ : B₃ → SL(2,ℤ) sending a, b to the
//! elementary matrices A, B has kernel ⟨s⁴⟩ = ⟨c²⟩. Every braid word is
//! a product s^{ν₁}·W(a⁻¹,b)·s^{ν₂}·cⁿ with ν₁, ν₂ ∈ {0,1} and W a word
//! in the letters a⁻¹, b only; this writing is unique outside ⟨s⟩ and
//! solves the word problem. Conjugacy-minimal representatives fall into
//! four cases (central, cyclic, odd center, short torsion) reached by an
//! explicit sequence of conjugations.

use std::fmt;

use thiserror::Error;

use crate::intmat::{self, Mat2, TorsionClassSL};
use crate::words::{FreeWord, Letter};

/// A freely reduced word in the braid generators a (index 1), b (index 2).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BraidWord(FreeWord);

impl BraidWord {
    pub fn identity() -> Self {
        BraidWord(FreeWord::identity())
    }

    pub fn from_word(w: FreeWord) -> Self {
        BraidWord(w)
    }

    pub fn word(&self) -> &FreeWord {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        BraidWord(self.0.mul(&other.0))
    }

    pub fn inv(&self) -> Self {
        BraidWord(self.0.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        BraidWord(self.0.pow(k))
    }

    /// The half-twist s = aba.
    pub fn s() -> Self {
        parse_braid("s").expect("fixed word")
    }

    /// The central generator c = s² = ababab.
    pub fn c() -> Self {
        parse_braid("c").expect("fixed word")
    }
}

impl fmt::Display for BraidWord {
    /// Letters a, b with capitals for inverses; the empty word prints as 1.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(out, "1");
        }
        for l in self.0.letters() {
            let ch = match (l.index(), l.sign()) {
                (1, 1) => 'a',
                (1, _) => 'A',
                (2, 1) => 'b',
                _ => 'B',
            };
            write!(out, "{ch}")?;
        }
        Ok(())
    }
}

/// Error from the braid text syntax.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseBraidError {
    #[error("unexpected character {0:?} in braid word (expected a, b, A, B, s, c, S, C, 1, ^, or whitespace)")]
    BadChar(char),
    #[error("malformed exponent after '^' (expected an optionally signed integer)")]
    BadExponent,
    #[error("exponent {0} out of range (|exponent| ≤ 4096)")]
    ExponentTooLarge(i64),
}

/// Parses braid words: letters `a b A B` (capitals are inverses), macros
/// `s` = aba, `c` = ababab (capitals their inverses), `1` for the empty
/// word, and an optional `^<int>` after any token, e.g. `a^3 s c^-2`.
pub fn parse_braid(text: &str) -> Result<BraidWord, ParseBraidError> {
    let a = || Letter::new(1, 1);
    let b = || Letter::new(2, 1);
    let mut raw: Vec<Letter> = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(ch) = chars.next() {
        if ch.is_whitespace() {
            continue;
        }
        let base: Vec<Letter> = match ch {
            'a' => vec![a()],
            'A' => vec![a().inverse()],
            'b' => vec![b()],
            'B' => vec![b().inverse()],
            's' => vec![a(), b(), a()],
            'S' => vec![a().inverse(), b().inverse(), a().inverse()],
            'c' => vec![a(), b(), a(), b(), a(), b()],
            'C' => vec![
                b().inverse(),
                a().inverse(),
                b().inverse(),
                a().inverse(),
                b().inverse(),
                a().inverse(),
            ],
            '1' => vec![],
            other => return Err(ParseBraidError::BadChar(other)),
        };
        let mut exp: i64 = 1;
        if chars.peek() == Some(&'^') {
            chars.next();
            let mut digits = String::new();
            if chars.peek() == Some(&'-') {
                digits.push('-');
                chars.next();
            }
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            exp = digits.parse().map_err(|_| ParseBraidError::BadExponent)?;
            if exp.abs() > 4096 {
                return Err(ParseBraidError::ExponentTooLarge(exp));
            }
        }
        if exp >= 0 {
            for _ in 0..exp {
                raw.extend(base.iter().copied());
            }
        } else {
            for _ in 0..-exp {
                raw.extend(base.iter().rev().map(|l| l.inverse()));
            }
        }
    }
    Ok(BraidWord(FreeWord::reduce(raw)))
}

/// The matrix image σ(w) under a ↦ A, b ↦ B; always det +1.
pub fn sigma(w: &BraidWord) -> Mat2 {
    let mut out = Mat2::IDENTITY;
    for l in w.0.letters() {
        let base = if l.index() == 1 { Mat2::A } else { Mat2::B };
        let factor = if l.sign() == 1 { base } else { base.inv() };
        out = out.mul(&factor);
    }
    out
}

/// Exponent sum, the abelianization B₃ → ℤ; e(s) = 3, e(c) = 6.
pub fn exponent_sum(w: &BraidWord) -> i64 {
    w.0.letters().iter().map(|l| l.sign() as i64).sum()
}

/// Letter of the inner normal-form word W: only a⁻¹ and b occur.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum NfLetter {
    AInv,
    B,
}

impl NfLetter {
    fn to_letter(self) -> Letter {
        match self {
            NfLetter::AInv => Letter::new(1, -1),
            NfLetter::B => Letter::new(2, 1),
        }
    }

    fn sign(self) -> i64 {
        match self {
            NfLetter::AInv => -1,
            NfLetter::B => 1,
        }
    }
}

impl fmt::Display for NfLetter {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", if *self == NfLetter::AInv { 'A' } else { 'b' })
    }
}

/// The unique writing s^{ν₁}·W(a⁻¹,b)·s^{ν₂}·cⁿ of a braid.
///
/// Central elements sᵐ are stored by convention as (0, ∅, 0, m/2) for even
/// m and (1, ∅, 0, (m-1)/2) for odd m; all other elements have exactly one
/// representing tuple.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BraidNormalForm {
    pub nu1: u8,
    pub w: Vec<NfLetter>,
    pub nu2: u8,
    pub n: i64,
}

/// Conjugacy-minimality measure (2ν₁+ν₂, l(W)), ordered lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct NormalSize {
    pub outer: u8,
    pub len: usize,
}

impl BraidNormalForm {
    pub fn new(nu1: u8, w: Vec<NfLetter>, nu2: u8, n: i64) -> Self {
        assert!(nu1 <= 1 && nu2 <= 1, "ν₁, ν₂ must be 0 or 1");
        BraidNormalForm { nu1, w, nu2, n }
    }

    pub fn identity() -> Self {
        BraidNormalForm::new(0, Vec::new(), 0, 0)
    }

    pub fn is_identity(&self) -> bool {
        *self == BraidNormalForm::identity()
    }

    /// Reassembles the represented braid word.
    pub fn to_braid_word(&self) -> BraidWord {
        let s = BraidWord::s();
        let mut out = s.pow(self.nu1 as i64);
        let inner = FreeWord::reduce(self.w.iter().map(|l| l.to_letter()));
        out = out.mul(&BraidWord(inner));
        out = out.mul(&s.pow(self.nu2 as i64));
        out.mul(&BraidWord::c().pow(self.n))
    }

    /// Exponent sum 3ν₁ + e(W) + 3ν₂ + 6n of the represented braid.
    pub fn exponent_sum(&self) -> i64 {
        let ew: i64 = self.w.iter().map(|l| l.sign()).sum();
        3 * self.nu1 as i64 + ew + 3 * self.nu2 as i64 + 6 * self.n
    }

    pub fn normal_size(&self) -> NormalSize {
        NormalSize { outer: 2 * self.nu1 + self.nu2, len: self.w.len() }
    }
}

impl fmt::Display for BraidNormalForm {
    /// Prints a braid expression such as `s b s c^-1`; parseable back by
    /// the braid syntax. The identity prints as 1.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.nu1 == 1 {
            parts.push("s".into());
        }
        if !self.w.is_empty() {
            parts.push(self.w.iter().map(|l| l.to_string()).collect());
        }
        if self.nu2 == 1 {
            parts.push("s".into());
        }
        match self.n {
            0 => {}
            1 => parts.push("c".into()),
            n => parts.push(format!("c^{n}")),
        }
        if parts.is_empty() {
            return write!(out, "1");
        }
        write!(out, "{}", parts.join(" "))
    }
}

/// Errors from matrix→braid conversion.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Braid3Error {
    #[error("matrix must have determinant +1, got {det}")]
    NotSpecialLinear { det: i128 },
    #[error("no sign pattern makes the matrix nonnegative")]
    NoSignPattern,
    #[error("row subtraction exceeded its iteration bound")]
    NonTermination,
}

/// Writes a det +1 matrix as σ(s^{ν₁}·W·s^{ν₂}·cⁿ) with n ∈ {0,1}.
///
/// The sign pattern ν = (n, ν₁, ν₂) is the lexicographically first one
/// making N = S^{-ν₁}·m·S^{-ν₂}·(-I)ⁿ entrywise nonnegative; W is then
/// read off N by row subtraction: the rules peel one letter per step and
/// strictly decrease the entry sum, so the loop reaches I in at most
/// ‖N‖₁ steps.
pub fn matrix_to_braid(m: &Mat2) -> Result<BraidNormalForm, Braid3Error> {
    let d = m.det();
    if d != 1 {
        return Err(Braid3Error::NotSpecialLinear { det: d });
    }
    let s_inv = Mat2::S.inv();
    let mut pattern = None;
    'search: for n in 0..=1u8 {
        for nu1 in 0..=1u8 {
            for nu2 in 0..=1u8 {
                let mut cand = *m;
                if nu1 == 1 {
                    cand = s_inv.mul(&cand);
                }
                if nu2 == 1 {
                    cand = cand.mul(&s_inv);
                }
                if n == 1 {
                    cand = cand.neg();
                }
                if cand.is_nonneg() {
                    pattern = Some((n, nu1, nu2, cand));
                    break 'search;
                }
            }
        }
    }
    let Some((n, nu1, nu2, mut rem)) = pattern else {
        return Err(Braid3Error::NoSignPattern);
    };

    let mut w = Vec::new();
    let bound = rem.norm1();
    let mut steps = 0i128;
    while !rem.is_identity() {
        steps += 1;
        if steps > bound {
            return Err(Braid3Error::NonTermination);
        }
        let Mat2 { e, f, g, h } = rem;
        if (e == g && f > h) || e > g {
            w.push(NfLetter::AInv);
            rem = Mat2::A.mul(&rem);
        } else if (e == g && f < h) || e < g {
            w.push(NfLetter::B);
            rem = Mat2::B.inv().mul(&rem);
        } else {
            unreachable!("equal rows have determinant 0, not +1");
        }
    }
    Ok(BraidNormalForm::new(nu1, w, nu2, n as i64))
}

/// The normal form of a braid word; equal words get equal forms, so this
/// solves the word problem.
///
/// The matrix image pins down (ν₁, W, ν₂) and n mod 2; the exponent sum
/// pins down n exactly, since the fibers of σ are cosets of ⟨c²⟩ and
/// e(c²) = 12.
pub fn normal_form(w: &BraidWord) -> BraidNormalForm {
    let m = sigma(w);
    let lift = matrix_to_braid(&m).expect("σ-images have det +1");
    let discrepancy = exponent_sum(w) - lift.exponent_sum();
    assert!(
        discrepancy % 12 == 0,
        "exponent discrepancy {discrepancy} not divisible by 12: internal inconsistency"
    );
    let mut nf = lift;
    nf.n += 2 * (discrepancy / 12);
    if nf.w.is_empty() {
        // Central tower sᵐ: store as (0,∅,0,m/2) or (1,∅,0,(m-1)/2).
        let m_total = nf.nu1 as i64 + nf.nu2 as i64 + 2 * nf.n;
        nf = if m_total % 2 == 0 {
            BraidNormalForm::new(0, Vec::new(), 0, m_total / 2)
        } else {
            BraidNormalForm::new(1, Vec::new(), 0, (m_total - 1) / 2)
        };
    }
    nf
}

/// Word problem: equality in B₃ via normal forms.
pub fn braid_equal(w1: &BraidWord, w2: &BraidWord) -> bool {
    normal_form(w1) == normal_form(w2)
}

/// A conjugacy-minimal representative: the four possible shapes of a word
/// of minimal NormalSize in a conjugacy class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConjCase {
    /// cⁿ, size (0,0).
    Central(i64),
    /// W·cⁿ with W a nonempty word in a⁻¹, b, defined up to rotation and
    /// stored as the lexicographically least one; size (0, l(W)).
    CyclicW { w: Vec<NfLetter>, n: i64 },
    /// s·cⁿ = s^{2n+1}, size (1,0).
    OddCenter(i64),
    /// a⁻¹·s^{2n+1} or b·s^{2n+1}, size (1,1); images have order 6 and 3
    /// in PSL(2,ℤ).
    ShortTorsion { letter: NfLetter, n: i64 },
}

impl ConjCase {
    pub fn normal_size(&self) -> NormalSize {
        match self {
            ConjCase::Central(_) => NormalSize { outer: 0, len: 0 },
            ConjCase::CyclicW { w, .. } => NormalSize { outer: 0, len: w.len() },
            ConjCase::OddCenter(_) => NormalSize { outer: 1, len: 0 },
            ConjCase::ShortTorsion { .. } => NormalSize { outer: 1, len: 1 },
        }
    }

    /// The representative as a braid word.
    pub fn representative(&self) -> BraidWord {
        let nf = match self {
            ConjCase::Central(n) => BraidNormalForm::new(0, Vec::new(), 0, *n),
            ConjCase::CyclicW { w, n } => BraidNormalForm::new(0, w.clone(), 0, *n),
            ConjCase::OddCenter(n) => BraidNormalForm::new(0, Vec::new(), 1, *n),
            ConjCase::ShortTorsion { letter, n } => {
                BraidNormalForm::new(0, vec![*letter], 1, *n)
            }
        };
        nf.to_braid_word()
    }
}

impl fmt::Display for ConjCase {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c_part = |n: i64| match n {
            0 => String::new(),
            1 => " c".into(),
            n => format!(" c^{n}"),
        };
        match self {
            ConjCase::Central(0) => write!(out, "central: 1"),
            ConjCase::Central(n) => write!(out, "central:{}", c_part(*n)),
            ConjCase::CyclicW { w, n } => {
                let word: String = w.iter().map(|l| l.to_string()).collect();
                write!(out, "cyclic: {word}{}", c_part(*n))
            }
            ConjCase::OddCenter(n) => write!(out, "odd-center: s{}", c_part(*n)),
            ConjCase::ShortTorsion { letter, n } => {
                write!(out, "short-torsion: {letter} s{}", c_part(*n))
            }
        }
    }
}

/// Lexicographically least cyclic rotation (a⁻¹ < b).
fn least_rotation(w: &[NfLetter]) -> Vec<NfLetter> {
    let mut best = w.to_vec();
    for shift in 1..w.len() {
        let mut cand = w[shift..].to_vec();
        cand.extend_from_slice(&w[..shift]);
        if cand < best {
            best = cand;
        }
    }
    best
}

/// A minimal representative of the conjugacy class of `w`.
///
/// Starting from the normal form, conjugation by s trades outer factors
/// for central ones (s·W·cⁿ ~ W·s·cⁿ and s·W·s·cⁿ ~ W·c^{n+1}); while the
/// shape is W·s·cⁿ with l(W) > 1, conjugating by the first letter of W
/// shortens it, using s·x·s⁻¹ = swap(x), b⁻¹·s = s⁻¹·a·s·c⁰… concretely:
///   a⁻¹Va⁻¹·s ~ V·b,  a⁻¹Vb·s ~ V·s,  bVa⁻¹·s ~ V·s,  bVb·s ~ V·a⁻¹·c.
/// Every step strictly decreases (2ν₁+ν₂, l(W)), so the loop terminates
/// in one of the four minimal shapes.
pub fn conj_min_form(w: &BraidWord) -> ConjCase {
    let nf = normal_form(w);
    let (mut nu1, mut inner, mut nu2, mut n) = (nf.nu1, nf.w, nf.nu2, nf.n);
    loop {
        match (nu1, nu2) {
            (1, 0) => {
                // s·W·cⁿ ~ W·s·cⁿ.
                nu1 = 0;
                nu2 = 1;
            }
            (1, 1) => {
                // s·W·s·cⁿ ~ W·c^{n+1}.
                nu1 = 0;
                nu2 = 0;
                n += 1;
            }
            (0, 1) if inner.len() > 1 => {
                let first = inner[0];
                let last = *inner.last().expect("len > 1");
                let core: Vec<NfLetter> = inner[1..inner.len() - 1].to_vec();
                match (first, last) {
                    (NfLetter::AInv, NfLetter::AInv) => {
                        inner = core;
                        inner.push(NfLetter::B);
                        nu2 = 0;
                    }
                    (NfLetter::B, NfLetter::B) => {
                        inner = core;
                        inner.push(NfLetter::AInv);
                        nu2 = 0;
                        n += 1;
                    }
                    _ => {
                        inner = core;
                    }
                }
            }
            _ => break,
        }
    }
    match (nu2, inner.len()) {
        (0, 0) => ConjCase::Central(n),
        (0, _) => ConjCase::CyclicW { w: least_rotation(&inner), n },
        (1, 0) => ConjCase::OddCenter(n),
        (1, _) => ConjCase::ShortTorsion { letter: inner[0], n },
        _ => unreachable!("ν₂ is 0 or 1"),
    }
}

/// Conjugacy class of the image of `w` in B₃/⟨s⁴⟩ = SL(2,ℤ).
pub fn torsion_class_image(w: &BraidWord) -> TorsionClassSL {
    intmat::torsion_class_sl(&sigma(w)).expect("σ-images have det +1")
}
