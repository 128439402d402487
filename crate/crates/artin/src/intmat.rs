//! Exact 2×2 integer matrices and the modular group.
//!
//! Entries are checked 128-bit integers: overflow panics instead of
//! wrapping, which keeps every computed value exact. The module classifies
//! torsion in SL(2,ℤ) and GL(2,ℤ) up to conjugacy, produces the free
//! generators fₙ of the derived subgroup, and rewrites derived-subgroup
//! matrices as reduced words in f₋₂, f₋₁ by Reidemeister–Schreier descent
//! along the cosets of the abelianization.

use std::fmt;

use thiserror::Error;

use crate::braid3;
use crate::words::{FreeWord, Letter};

/// A 2×2 integer matrix (e f; g h), rows (e, f) and (g, h).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat2 {
    pub e: i128,
    pub f: i128,
    pub g: i128,
    pub h: i128,
}

fn add(x: i128, y: i128) -> i128 {
    x.checked_add(y).expect("matrix entry overflow")
}

fn mul(x: i128, y: i128) -> i128 {
    x.checked_mul(y).expect("matrix entry overflow")
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { e: 1, f: 0, g: 0, h: 1 };
    pub const MINUS_IDENTITY: Mat2 = Mat2 { e: -1, f: 0, g: 0, h: -1 };
    /// A = (1 -1; 0 1), the image of the braid generator a.
    pub const A: Mat2 = Mat2 { e: 1, f: -1, g: 0, h: 1 };
    /// B = (1 0; 1 1), the image of the braid generator b.
    pub const B: Mat2 = Mat2 { e: 1, f: 0, g: 1, h: 1 };
    /// S = ABA = BAB = (0 -1; 1 0); S² = -I.
    pub const S: Mat2 = Mat2 { e: 0, f: -1, g: 1, h: 0 };
    /// M = BA = (1 -1; 1 0), of order 6.
    pub const M: Mat2 = Mat2 { e: 1, f: -1, g: 1, h: 0 };
    /// D = (0 1; 1 0), the swap reflection (det -1).
    pub const D: Mat2 = Mat2 { e: 0, f: 1, g: 1, h: 0 };
    /// SD = (-1 0; 0 1), the reflection congruent to I mod 2 (det -1).
    pub const SD: Mat2 = Mat2 { e: -1, f: 0, g: 0, h: 1 };

    pub fn new(e: i128, f: i128, g: i128, h: i128) -> Self {
        Mat2 { e, f, g, h }
    }

    pub fn det(&self) -> i128 {
        mul(self.e, self.h) - mul(self.f, self.g)
    }

    pub fn trace(&self) -> i128 {
        add(self.e, self.h)
    }

    /// Product `self · other`. Panics on entry overflow.
    pub fn mul(&self, other: &Mat2) -> Mat2 {
        self.checked_mul(other).expect("matrix entry overflow")
    }

    /// Product `self · other`, or None if an entry leaves the i128 range.
    pub fn checked_mul(&self, other: &Mat2) -> Option<Mat2> {
        let p = |x: i128, y: i128| x.checked_mul(y);
        Some(Mat2 {
            e: p(self.e, other.e)?.checked_add(p(self.f, other.g)?)?,
            f: p(self.e, other.f)?.checked_add(p(self.f, other.h)?)?,
            g: p(self.g, other.e)?.checked_add(p(self.h, other.g)?)?,
            h: p(self.g, other.f)?.checked_add(p(self.h, other.h)?)?,
        })
    }

    /// Inverse. Panics unless det = ±1 (the adjugate over ±1 is integral).
    pub fn inv(&self) -> Mat2 {
        let d = self.det();
        assert!(d == 1 || d == -1, "matrix inverse requires det ±1, got {d}");
        Mat2 { e: d * self.h, f: -d * self.f, g: -d * self.g, h: d * self.e }
    }

    /// Integer power; negative exponents invert first (needs det ±1).
    pub fn pow(&self, k: i64) -> Mat2 {
        let base = if k < 0 { self.inv() } else { *self };
        let mut out = Mat2::IDENTITY;
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 { e: -self.e, f: -self.f, g: -self.g, h: -self.h }
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::IDENTITY
    }

    pub fn is_nonneg(&self) -> bool {
        self.e >= 0 && self.f >= 0 && self.g >= 0 && self.h >= 0
    }

    /// Sum of absolute entry values; strictly decreases along the braid
    /// subtraction loop.
    pub fn norm1(&self) -> i128 {
        self.e.abs() + self.f.abs() + self.g.abs() + self.h.abs()
    }

    pub fn congruent_identity_mod2(&self) -> bool {
        self.e.rem_euclid(2) == 1
            && self.h.rem_euclid(2) == 1
            && self.f.rem_euclid(2) == 0
            && self.g.rem_euclid(2) == 0
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "[[{},{}],[{},{}]]", self.e, self.f, self.g, self.h)
    }
}

/// Errors from modular-group operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntmatError {
    #[error("matrix must have determinant {expected}, got {got}")]
    NotUnimodular { expected: i128, got: i128 },
    #[error("matrix is not in the derived subgroup{}", if *.negative_in_derived { " (its negative is)" } else { "" })]
    NotInDerivedGroup { negative_in_derived: bool },
}

/// Error from the textual matrix syntax.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseMatError {
    #[error("matrix must be [[e,f],[g,h]] or four whitespace-separated integers")]
    BadShape,
    #[error("bad integer {0:?} in matrix")]
    BadInt(String),
}

/// Parses `[[e,f],[g,h]]` (whitespace-insensitive) or the flat form
/// `e f g h`.
pub fn parse_mat(s: &str) -> Result<Mat2, ParseMatError> {
    let int = |t: &str| t.parse::<i128>().map_err(|_| ParseMatError::BadInt(t.to_string()));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.starts_with('[') {
        let inner = compact
            .strip_prefix("[[")
            .and_then(|r| r.strip_suffix("]]"))
            .ok_or(ParseMatError::BadShape)?;
        let rows: Vec<&str> = inner.split("],[").collect();
        if rows.len() != 2 {
            return Err(ParseMatError::BadShape);
        }
        let mut entries = Vec::with_capacity(4);
        for row in rows {
            let cols: Vec<&str> = row.split(',').collect();
            if cols.len() != 2 {
                return Err(ParseMatError::BadShape);
            }
            entries.push(int(cols[0])?);
            entries.push(int(cols[1])?);
        }
        Ok(Mat2::new(entries[0], entries[1], entries[2], entries[3]))
    } else {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(ParseMatError::BadShape);
        }
        Ok(Mat2::new(int(parts[0])?, int(parts[1])?, int(parts[2])?, int(parts[3])?))
    }
}

/// Order of `m` in GL(2,ℤ) by direct powering: Some(k) for k ≤ 12, else
/// None (infinite; entry overflow also certifies infinite order).
pub fn order(m: &Mat2) -> Option<u32> {
    let mut p = *m;
    for k in 1..=12u32 {
        if p.is_identity() {
            return Some(k);
        }
        p = p.checked_mul(m)?;
    }
    None
}

/// Conjugacy class of a torsion element of SL(2,ℤ).
///
/// The eight classes are generated by S (order 4), M = BA (order 6), their
/// inverses and powers, and ±I.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TorsionClassSL {
    Id,
    MinusI,
    S,
    Sinv,
    M,
    Minv,
    Msq,
    Minvsq,
    Infinite,
}

impl fmt::Display for TorsionClassSL {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TorsionClassSL::Id => "Id",
            TorsionClassSL::MinusI => "MinusI",
            TorsionClassSL::S => "S",
            TorsionClassSL::Sinv => "Sinv",
            TorsionClassSL::M => "M",
            TorsionClassSL::Minv => "Minv",
            TorsionClassSL::Msq => "Msq",
            TorsionClassSL::Minvsq => "Minvsq",
            TorsionClassSL::Infinite => "Infinite",
        };
        write!(out, "{name}")
    }
}

/// Conjugacy class of a torsion element of GL(2,ℤ). Classes of det +1
/// elements merge with their inverses (D conjugates S to S⁻¹ and M to M⁻¹);
/// det -1 torsion splits into the two reflection classes D and SD.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TorsionClassGL {
    Id,
    MinusI,
    D,
    SD,
    Msq,
    S,
    M,
    Infinite,
}

impl fmt::Display for TorsionClassGL {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TorsionClassGL::Id => "Id",
            TorsionClassGL::MinusI => "MinusI",
            TorsionClassGL::D => "D",
            TorsionClassGL::SD => "SD",
            TorsionClassGL::Msq => "Msq",
            TorsionClassGL::S => "S",
            TorsionClassGL::M => "M",
            TorsionClassGL::Infinite => "Infinite",
        };
        write!(out, "{name}")
    }
}

/// SL(2,ℤ) conjugacy class of `m`, discriminated by (order, braid exponent
/// sum mod 12). The exponent sum of any braid lift is well defined mod 12
/// because ker σ = ⟨s⁴⟩ has exponent sum 12, and it is a class invariant
/// because exponent sum is a homomorphism to ℤ.
pub fn torsion_class_sl(m: &Mat2) -> Result<TorsionClassSL, IntmatError> {
    let d = m.det();
    if d != 1 {
        return Err(IntmatError::NotUnimodular { expected: 1, got: d });
    }
    let Some(k) = order(m) else {
        return Ok(TorsionClassSL::Infinite);
    };
    let nf = braid3::matrix_to_braid(m).expect("det +1 matrices always lift");
    let e = nf.exponent_sum().rem_euclid(12);
    Ok(match (k, e) {
        (1, 0) => TorsionClassSL::Id,
        (2, 6) => TorsionClassSL::MinusI,
        (4, 3) => TorsionClassSL::S,
        (4, 9) => TorsionClassSL::Sinv,
        (3, 4) => TorsionClassSL::Msq,
        (3, 8) => TorsionClassSL::Minvsq,
        (6, 2) => TorsionClassSL::M,
        (6, 10) => TorsionClassSL::Minv,
        other => unreachable!("impossible SL torsion signature {other:?}"),
    })
}

/// GL(2,ℤ) conjugacy class of `m`, discriminated by order and determinant;
/// the two reflection classes are separated by reduction mod 2 (SD ≡ I,
/// D is the swap, and the class mod 2 is a conjugacy invariant).
pub fn torsion_class_gl(m: &Mat2) -> Result<TorsionClassGL, IntmatError> {
    let d = m.det();
    if d != 1 && d != -1 {
        return Err(IntmatError::NotUnimodular { expected: 1, got: d });
    }
    let Some(k) = order(m) else {
        return Ok(TorsionClassGL::Infinite);
    };
    Ok(match (k, d) {
        (1, _) => TorsionClassGL::Id,
        (2, 1) => TorsionClassGL::MinusI,
        (2, -1) => {
            if m.congruent_identity_mod2() {
                TorsionClassGL::SD
            } else {
                TorsionClassGL::D
            }
        }
        (3, 1) => TorsionClassGL::Msq,
        (4, 1) => TorsionClassGL::S,
        (6, 1) => TorsionClassGL::M,
        other => unreachable!("impossible GL torsion signature {other:?}"),
    })
}

fn a_pow(k: i64) -> Mat2 {
    // A = (1 -1; 0 1), so A^k = (1 -k; 0 1).
    Mat2::new(1, -(k as i128), 0, 1)
}

/// The free generator fₙ = A^{-(n+3)} S Aⁿ = A^{-(n+2)} B A^{n+1} of the
/// derived subgroup; f₋₂ = BA⁻¹ = (1 1; 1 2) and f₋₁ = A⁻¹B = (2 1; 1 1).
pub fn f(n: i64) -> Mat2 {
    a_pow(-(n + 3)).mul(&Mat2::S).mul(&a_pow(n))
}

/// Membership in the derived subgroup SL(2,ℤ)′: the abelianization of
/// SL(2,ℤ) is ℤ/12, read off as the braid-lift exponent sum mod 12.
pub fn derived_membership(m: &Mat2) -> Result<bool, IntmatError> {
    let d = m.det();
    if d != 1 {
        return Err(IntmatError::NotUnimodular { expected: 1, got: d });
    }
    let nf = braid3::matrix_to_braid(m).expect("det +1 matrices always lift");
    Ok(nf.exponent_sum().rem_euclid(12) == 0)
}

/// A reduced word in the free generators f₋₂ (letter index 1) and f₋₁
/// (letter index 2) of SL(2,ℤ)′.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FWord(FreeWord);

impl FWord {
    pub fn from_word(w: FreeWord) -> Self {
        FWord(w)
    }

    pub fn word(&self) -> &FreeWord {
        &self.0
    }

    /// Evaluates the word as a matrix product.
    pub fn to_matrix(&self) -> Mat2 {
        let fm2 = f(-2);
        let fm1 = f(-1);
        let mut out = Mat2::IDENTITY;
        for l in self.0.letters() {
            let base = if l.index() == 1 { fm2 } else { fm1 };
            let factor = if l.sign() == 1 { base } else { base.inv() };
            out = out.mul(&factor);
        }
        out
    }
}

impl fmt::Display for FWord {
    /// Space-separated `f-2`, `f-1` tokens with `^-1` marking inverses; the
    /// empty word prints as `1`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(out, "1");
        }
        let mut first = true;
        for l in self.0.letters() {
            if !first {
                write!(out, " ")?;
            }
            first = false;
            let name = if l.index() == 1 { "f-2" } else { "f-1" };
            let sup = if l.sign() == 1 { "" } else { "^-1" };
            write!(out, "{name}{sup}")?;
        }
        Ok(())
    }
}

/// Error from the textual f-word syntax.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseFWordError {
    #[error("bad f-word token {0:?} (expected f-2, f-1, f-2^-1, f-1^-1, or 1)")]
    BadToken(String),
}

/// Parses the f-word display syntax.
pub fn parse_fword(s: &str) -> Result<FWord, ParseFWordError> {
    let mut raw = Vec::new();
    for tok in s.split_whitespace() {
        let (index, sign) = match tok {
            "f-2" => (1, 1),
            "f-1" => (2, 1),
            "f-2^-1" => (1, -1),
            "f-1^-1" => (2, -1),
            "1" => continue,
            other => return Err(ParseFWordError::BadToken(other.to_string())),
        };
        raw.push(Letter::new(index, sign));
    }
    Ok(FWord(FreeWord::reduce(raw)))
}

/// Expresses fₙ as a reduced word in f₋₂, f₋₁ via the recursion
/// fₙ₊₁ fₙ₋₁ = fₙ.
fn f_in_base(n: i64, memo: &mut std::collections::HashMap<i64, FreeWord>) -> FreeWord {
    if let Some(w) = memo.get(&n) {
        return w.clone();
    }
    let w = match n {
        -2 => FreeWord::generator(1),
        -1 => FreeWord::generator(2),
        n if n >= 0 => {
            let a = f_in_base(n - 1, memo);
            let b = f_in_base(n - 2, memo);
            a.mul(&b.inv())
        }
        n => {
            let a = f_in_base(n + 2, memo);
            let b = f_in_base(n + 1, memo);
            a.inv().mul(&b)
        }
    };
    memo.insert(n, w.clone());
    w
}

/// Rewrites a derived-subgroup matrix as a reduced word in f₋₂, f₋₁
/// multiplying back to exactly `m`.
///
/// The matrix is lifted to a braid word, which is rewritten along the
/// Schreier transversal {A⁰, …, A⁵} of the index-6 derived subgroup of
/// PSL(2,ℤ) (coset = exponent sum mod 6); the Schreier generators are
/// A^{r} B A^{-(r+1 mod 6)} = f₋ᵣ₋₂ · A^{6[r=5]} together with the
/// wraparound powers A^{±6} = (f₀ f₋₃)^{∓1} (mod ±I), and every fₙ then
/// descends to the base pair through the recursion. Membership forces the
/// sign ambiguities to cancel: -I is not in the derived subgroup.
pub fn rewrite_in_f(m: &Mat2) -> Result<FWord, IntmatError> {
    let d = m.det();
    if d != 1 {
        return Err(IntmatError::NotUnimodular { expected: 1, got: d });
    }
    let nf = braid3::matrix_to_braid(m).expect("det +1 matrices always lift");
    match nf.exponent_sum().rem_euclid(12) {
        0 => {}
        6 => return Err(IntmatError::NotInDerivedGroup { negative_in_derived: true }),
        _ => return Err(IntmatError::NotInDerivedGroup { negative_in_derived: false }),
    }

    // (n, sign) pairs meaning fₙ^sign, in product order.
    let mut fseq: Vec<(i64, i8)> = Vec::new();
    let a6 = [(-3i64, -1i8), (0, -1)]; // A⁶ = f₋₃⁻¹ f₀⁻¹ mod ±I
    let a6inv = [(0i64, 1i8), (-3, 1)]; // A⁻⁶ = f₀ f₋₃ mod ±I
    let mut r: i64 = 0;
    for l in nf.to_braid_word().word().letters() {
        match (l.index(), l.sign()) {
            (1, 1) => {
                if r == 5 {
                    fseq.extend(a6);
                }
                r = (r + 1) % 6;
            }
            (1, -1) => {
                if r == 0 {
                    fseq.extend(a6inv);
                }
                r = (r + 5) % 6;
            }
            (2, 1) => {
                fseq.push((-r - 2, 1));
                if r == 5 {
                    fseq.extend(a6);
                }
                r = (r + 1) % 6;
            }
            _ => {
                fseq.push((-r - 1, -1));
                if r == 0 {
                    fseq.extend(a6inv);
                }
                r = (r + 5) % 6;
            }
        }
    }
    debug_assert_eq!(r, 0, "exponent sum ≡ 0 mod 6 must close the coset walk");

    let mut memo = std::collections::HashMap::new();
    let mut word = FreeWord::identity();
    for (n, sign) in fseq {
        let base = f_in_base(n, &mut memo);
        word = word.mul(&if sign == 1 { base } else { base.inv() });
    }
    let out = FWord(word);
    let product = out.to_matrix();
    assert_eq!(
        product, *m,
        "rewriting invariant violated: assembled f-word does not multiply back"
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generator_constants() {
        assert_eq!(Mat2::A.mul(&Mat2::B).mul(&Mat2::A), Mat2::S);
        assert_eq!(Mat2::B.mul(&Mat2::A).mul(&Mat2::B), Mat2::S);
        assert_eq!(Mat2::S.pow(2), Mat2::MINUS_IDENTITY);
        assert_eq!(Mat2::S.pow(4), Mat2::IDENTITY);
        assert_eq!(Mat2::B.mul(&Mat2::A), Mat2::M);
        assert_eq!(Mat2::M.pow(3), Mat2::MINUS_IDENTITY);
        assert_eq!(Mat2::M.pow(6), Mat2::IDENTITY);
        assert_eq!(Mat2::A.inv(), Mat2::new(1, 1, 0, 1));
        assert_eq!(Mat2::M.inv(), Mat2::new(0, 1, -1, 1));
        assert_eq!(Mat2::M.pow(2), Mat2::new(0, -1, 1, -1));
        assert_eq!(Mat2::M.pow(-2), Mat2::new(-1, 1, -1, 0));
    }

    #[test]
    fn inverse_and_power() {
        let m = Mat2::new(2, 1, 1, 1);
        assert_eq!(m.mul(&m.inv()), Mat2::IDENTITY);
        assert_eq!(m.inv().mul(&m), Mat2::IDENTITY);
        assert_eq!(m.pow(3), m.mul(&m).mul(&m));
        assert_eq!(m.pow(-2), m.inv().mul(&m.inv()));
        let r = Mat2::SD;
        assert_eq!(r.mul(&r.inv()), Mat2::IDENTITY);
    }

    #[test]
    fn orders_of_torsion_and_parabolic() {
        assert_eq!(order(&Mat2::IDENTITY), Some(1));
        assert_eq!(order(&Mat2::MINUS_IDENTITY), Some(2));
        assert_eq!(order(&Mat2::S), Some(4));
        assert_eq!(order(&Mat2::M), Some(6));
        assert_eq!(order(&Mat2::M.pow(2)), Some(3));
        assert_eq!(order(&Mat2::D), Some(2));
        assert_eq!(order(&Mat2::A), None);
        assert_eq!(order(&f(-2)), None);
    }

    #[test]
    fn f_closed_form_matches_known_values() {
        assert_eq!(f(-2), Mat2::new(1, 1, 1, 2));
        assert_eq!(f(-2), Mat2::B.mul(&Mat2::A.inv()));
        assert_eq!(f(-1), Mat2::new(2, 1, 1, 1));
        assert_eq!(f(-1), Mat2::A.inv().mul(&Mat2::B));
        assert_eq!(f(0), Mat2::new(3, -1, 1, 0));
    }

    #[test]
    fn f_recursion_and_commutator_identity() {
        let a6s2 = Mat2::A.pow(-6).mul(&Mat2::S.pow(2));
        for n in -20..=20i64 {
            assert_eq!(f(n + 1).mul(&f(n - 1)), f(n), "recursion at n={n}");
            assert_eq!(f(n).mul(&f(n - 3)), a6s2, "product identity at n={n}");
            let x = f(n - 1).inv();
            let y = f(n - 2);
            let comm = x.inv().mul(&y.inv()).mul(&x).mul(&y);
            assert_eq!(comm, a6s2, "commutator identity at n={n}");
        }
    }

    #[test]
    fn derived_membership_examples() {
        assert!(derived_membership(&f(-1)).unwrap());
        assert!(derived_membership(&f(5)).unwrap());
        assert!(derived_membership(&Mat2::IDENTITY).unwrap());
        assert!(!derived_membership(&Mat2::A).unwrap());
        assert!(!derived_membership(&Mat2::MINUS_IDENTITY).unwrap());
        assert!(!derived_membership(&Mat2::S).unwrap());
        assert_eq!(
            derived_membership(&Mat2::D),
            Err(IntmatError::NotUnimodular { expected: 1, got: -1 })
        );
    }

    #[test]
    fn sl_torsion_classes_of_representatives() {
        use TorsionClassSL::*;
        assert_eq!(torsion_class_sl(&Mat2::IDENTITY), Ok(Id));
        assert_eq!(torsion_class_sl(&Mat2::MINUS_IDENTITY), Ok(MinusI));
        assert_eq!(torsion_class_sl(&Mat2::S), Ok(S));
        assert_eq!(torsion_class_sl(&Mat2::S.inv()), Ok(Sinv));
        assert_eq!(torsion_class_sl(&Mat2::M), Ok(M));
        assert_eq!(torsion_class_sl(&Mat2::new(0, 1, -1, 1)), Ok(Minv));
        assert_eq!(torsion_class_sl(&Mat2::M.pow(2)), Ok(Msq));
        assert_eq!(torsion_class_sl(&Mat2::M.pow(-2)), Ok(Minvsq));
        assert_eq!(torsion_class_sl(&Mat2::A), Ok(Infinite));
    }

    #[test]
    fn sl_torsion_class_is_conjugation_invariant_example() {
        let p = Mat2::new(1, 5, 0, 1);
        let conj = p.mul(&Mat2::S).mul(&p.inv());
        assert_eq!(torsion_class_sl(&conj), Ok(TorsionClassSL::S));
    }

    #[test]
    fn gl_torsion_classes() {
        use TorsionClassGL::*;
        assert_eq!(torsion_class_gl(&Mat2::IDENTITY), Ok(Id));
        assert_eq!(torsion_class_gl(&Mat2::MINUS_IDENTITY), Ok(MinusI));
        assert_eq!(torsion_class_gl(&Mat2::D), Ok(D));
        assert_eq!(torsion_class_gl(&Mat2::SD), Ok(SD));
        assert_eq!(torsion_class_gl(&Mat2::new(1, 0, 0, -1)), Ok(SD));
        assert_eq!(torsion_class_gl(&Mat2::new(1, 0, 1, -1)), Ok(D));
        assert_eq!(torsion_class_gl(&Mat2::S), Ok(S));
        assert_eq!(torsion_class_gl(&Mat2::S.inv()), Ok(S));
        assert_eq!(torsion_class_gl(&Mat2::M), Ok(M));
        assert_eq!(torsion_class_gl(&Mat2::M.inv()), Ok(M));
        assert_eq!(torsion_class_gl(&Mat2::M.pow(2)), Ok(Msq));
        assert_eq!(torsion_class_gl(&Mat2::A), Ok(Infinite));
        assert!(torsion_class_gl(&Mat2::new(2, 0, 0, 1)).is_err());
    }

    /// Random unimodular conjugators as words in A, B keep classes fixed.
    #[test]
    fn torsion_classes_invariant_under_random_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sl_reps = [
            Mat2::IDENTITY,
            Mat2::MINUS_IDENTITY,
            Mat2::S,
            Mat2::S.inv(),
            Mat2::M,
            Mat2::M.inv(),
            Mat2::M.pow(2),
            Mat2::M.pow(-2),
        ];
        for _ in 0..200 {
            let mut p = Mat2::IDENTITY;
            for _ in 0..rng.gen_range(0..12) {
                let gen = match rng.gen_range(0..4) {
                    0 => Mat2::A,
                    1 => Mat2::A.inv(),
                    2 => Mat2::B,
                    _ => Mat2::B.inv(),
                };
                p = p.mul(&gen);
            }
            // Half the time throw in a reflection: SL classes may move, GL
            // classes must not.
            let reflect = rng.gen_bool(0.5);
            let q = if reflect { p.mul(&Mat2::D) } else { p };
            for rep in sl_reps {
                let conj = q.mul(&rep).mul(&q.inv());
                assert_eq!(torsion_class_gl(&conj), torsion_class_gl(&rep));
                if !reflect {
                    assert_eq!(torsion_class_sl(&conj), torsion_class_sl(&rep));
                }
            }
        }
    }

    #[test]
    fn rewrite_known_words() {
        let fm2 = FreeWord::generator(1);
        let fm1 = FreeWord::generator(2);
        // f₀ = f₋₁ f₋₂⁻¹.
        let got = rewrite_in_f(&f(0)).unwrap();
        assert_eq!(got.word(), &fm1.mul(&fm2.inv()));
        // A⁻⁶S² = [f₋₁⁻¹, f₋₂].
        let a6s2 = Mat2::A.pow(-6).mul(&Mat2::S.pow(2));
        let got = rewrite_in_f(&a6s2).unwrap();
        assert_eq!(got.word(), &FreeWord::commutator(&fm1.inv(), &fm2));
        // The generators rewrite to themselves.
        assert_eq!(rewrite_in_f(&f(-2)).unwrap().word(), &fm2);
        assert_eq!(rewrite_in_f(&f(-1)).unwrap().word(), &fm1);
        assert_eq!(rewrite_in_f(&Mat2::IDENTITY).unwrap().word(), &FreeWord::identity());
    }

    #[test]
    fn rewrite_rejects_non_members() {
        assert_eq!(
            rewrite_in_f(&Mat2::A),
            Err(IntmatError::NotInDerivedGroup { negative_in_derived: false })
        );
        let neg_member = Mat2::A.pow(-6).mul(&Mat2::S.pow(2)).neg();
        assert_eq!(
            rewrite_in_f(&neg_member),
            Err(IntmatError::NotInDerivedGroup { negative_in_derived: true })
        );
        assert_eq!(
            rewrite_in_f(&Mat2::D),
            Err(IntmatError::NotUnimodular { expected: 1, got: -1 })
        );
    }

    #[test]
    fn rewrite_round_trip_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..300 {
            let len = rng.gen_range(0..=14);
            let raw: Vec<Letter> = (0..len)
                .map(|_| Letter::new(rng.gen_range(1..=2), if rng.gen_bool(0.5) { 1 } else { -1 }))
                .collect();
            let word = FWord::from_word(FreeWord::reduce(raw));
            let m = word.to_matrix();
            let back = rewrite_in_f(&m).unwrap();
            assert_eq!(back, word, "round trip through {m}");
        }
    }

    #[test]
    fn mat_parse_and_display() {
        assert_eq!(parse_mat("[[1,-1],[0,1]]").unwrap(), Mat2::A);
        assert_eq!(parse_mat(" [ [ 1 , -1 ] , [ 0 , 1 ] ] ").unwrap(), Mat2::A);
        assert_eq!(parse_mat("1 -1 0 1").unwrap(), Mat2::A);
        assert_eq!(parse_mat(&Mat2::M.to_string()).unwrap(), Mat2::M);
        assert!(parse_mat("[[1,2],[3]]").is_err());
        assert!(parse_mat("1 2 3").is_err());
        assert!(parse_mat("[[1,x],[0,1]]").is_err());
    }

    #[test]
    fn fword_parse_and_display() {
        let w = parse_fword("f-1 f-2^-1").unwrap();
        assert_eq!(w.to_matrix(), f(0));
        assert_eq!(parse_fword(&w.to_string()).unwrap(), w);
        assert_eq!(parse_fword("1").unwrap(), FWord::default());
        assert!(parse_fword("f-3").is_err());
    }
}
