//! Endomorphisms and automorphisms of the free group F₂ = ⟨u, v⟩.
//!
//! An endomorphism is the pair of images (X₁, X₂) of the generators. The
//! braid group acts through Ψ (a ↦ α, b ↦ β), the swap δ extends the
//! action to all of Aut(F₂), and an endomorphism is an automorphism
//! exactly when its commutator [X₁, X₂] is conjugate to [u, v] or its
//! inverse. That criterion is constructive: the conjugating witness plus
//! the abelianized matrix recover an explicit factorization
//! x = φ_w ∘ Ψ(b) ∘ δ^ε into inner × braid × swap parts. Torsion elements
//! have order 1, 2, 3, or 4 (never 6), classified up to conjugacy by the
//! order together with the class of the abelianized matrix.

use std::fmt;

use thiserror::Error;

use crate::braid3::{self, BraidNormalForm, BraidWord};
use crate::intmat::{Mat2, TorsionClassGL, TorsionClassSL};
use crate::words::{parse_word, FreeWord, ParseWordError};

/// An endomorphism of F₂, stored as the reduced images of u and v.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EndoF2 {
    pub x1: FreeWord,
    pub x2: FreeWord,
}

impl EndoF2 {
    pub fn new(x1: FreeWord, x2: FreeWord) -> Self {
        EndoF2 { x1, x2 }
    }

    pub fn identity() -> Self {
        EndoF2::new(FreeWord::generator(1), FreeWord::generator(2))
    }

    pub fn is_identity(&self) -> bool {
        *self == EndoF2::identity()
    }

    /// α: (u, v) ↦ (u, u⁻¹v).
    pub fn alpha() -> Self {
        parse_endo("u->u ; v->Uv").expect("fixed endomorphism")
    }

    /// α⁻¹: (u, v) ↦ (u, uv).
    pub fn alpha_inv() -> Self {
        parse_endo("u->u ; v->uv").expect("fixed endomorphism")
    }

    /// β: (u, v) ↦ (vu, v).
    pub fn beta() -> Self {
        parse_endo("u->vu ; v->v").expect("fixed endomorphism")
    }

    /// β⁻¹: (u, v) ↦ (v⁻¹u, v).
    pub fn beta_inv() -> Self {
        parse_endo("u->Vu ; v->v").expect("fixed endomorphism")
    }

    /// The swap δ: (u, v) ↦ (v, u), the indirect generator.
    pub fn delta() -> Self {
        parse_endo("u->v ; v->u").expect("fixed endomorphism")
    }

    /// σ: (u, v) ↦ (u⁻¹, v⁻¹), of order 2.
    pub fn sigma_aut() -> Self {
        parse_endo("u->U ; v->V").expect("fixed endomorphism")
    }

    /// ι: (u, v) ↦ (v, u⁻¹), of order 4 with ι² = σ.
    pub fn iota() -> Self {
        parse_endo("u->v ; v->U").expect("fixed endomorphism")
    }

    /// ζ: (u, v) ↦ (v, v⁻¹u⁻¹), of order 3.
    pub fn zeta() -> Self {
        parse_endo("u->v ; v->VU").expect("fixed endomorphism")
    }

    /// The inner automorphism φ_g: w ↦ g·w·g⁻¹.
    pub fn inner(g: &FreeWord) -> Self {
        let u = FreeWord::generator(1);
        let v = FreeWord::generator(2);
        EndoF2::new(u.conjugated_by(g), v.conjugated_by(g))
    }

    /// |x| = l(X₁) + l(X₂).
    pub fn size(&self) -> usize {
        self.x1.len() + self.x2.len()
    }
}

impl fmt::Display for EndoF2 {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "u->{} ; v->{}", self.x1, self.x2)
    }
}

/// Error from the endomorphism text syntax.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseEndoError {
    #[error("endomorphism must be written as `u->WORD ; v->WORD`")]
    BadShape,
    #[error(transparent)]
    BadWord(#[from] ParseWordError),
}

/// Parses `u->WORD ; v->WORD` in the free-word syntax.
pub fn parse_endo(s: &str) -> Result<EndoF2, ParseEndoError> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 2 {
        return Err(ParseEndoError::BadShape);
    }
    let lhs = parts[0].trim().strip_prefix("u->").ok_or(ParseEndoError::BadShape)?;
    let rhs = parts[1].trim().strip_prefix("v->").ok_or(ParseEndoError::BadShape)?;
    Ok(EndoF2::new(parse_word(lhs)?, parse_word(rhs)?))
}

/// Substitutes X₁ for u and X₂ for v in `w`, then reduces.
pub fn apply(x: &EndoF2, w: &FreeWord) -> FreeWord {
    let mut out = FreeWord::identity();
    for l in w.letters() {
        let image = if l.index() == 1 { &x.x1 } else { &x.x2 };
        out = out.mul(&if l.sign() == 1 { image.clone() } else { image.inv() });
    }
    out
}

/// Composition (x∘y)(t) = x(y(t)).
pub fn compose(x: &EndoF2, y: &EndoF2) -> EndoF2 {
    EndoF2::new(apply(x, &y.x1), apply(x, &y.x2))
}

/// The abelianized matrix: columns are the exponent vectors of X₁, X₂.
/// Functorial (rho(x∘y) = rho(x)·rho(y)); automorphisms land in GL(2,ℤ)
/// and are "direct" when the determinant is +1.
pub fn rho(x: &EndoF2) -> Mat2 {
    let c1 = x.x1.abelianize();
    let c2 = x.x2.abelianize();
    Mat2::new(c1.e1 as i128, c2.e1 as i128, c1.e2 as i128, c2.e2 as i128)
}

/// The braid action Ψ: B₃ → Aut(F₂), a ↦ α, b ↦ β; injective, with
/// Ψ(s⁴) = φ_{[u,v]}.
pub fn psi(w: &BraidWord) -> EndoF2 {
    let mut out = EndoF2::identity();
    for l in w.word().letters() {
        let gen = match (l.index(), l.sign()) {
            (1, 1) => EndoF2::alpha(),
            (1, _) => EndoF2::alpha_inv(),
            (2, 1) => EndoF2::beta(),
            _ => EndoF2::beta_inv(),
        };
        out = compose(&out, &gen);
    }
    out
}

/// A letter of the dihedral extension DB₃ = ⟨a, b, d⟩ of the braid group:
/// the braid generators, their inverses, and the involution d.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DihedralLetter {
    A,
    AInv,
    B,
    BInv,
    D,
}

/// Error from the dihedral text syntax.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseDihedralError {
    #[error("unexpected character {0:?} in dihedral word (expected a, b, A, B, d, 1, or whitespace)")]
    BadChar(char),
}

/// Parses dihedral words over `a b A B d` (`D` is accepted for d = d⁻¹).
pub fn parse_dihedral(s: &str) -> Result<Vec<DihedralLetter>, ParseDihedralError> {
    let mut out = Vec::new();
    for ch in s.chars() {
        match ch {
            'a' => out.push(DihedralLetter::A),
            'A' => out.push(DihedralLetter::AInv),
            'b' => out.push(DihedralLetter::B),
            'B' => out.push(DihedralLetter::BInv),
            'd' | 'D' => out.push(DihedralLetter::D),
            '1' => {}
            c if c.is_whitespace() => {}
            c => return Err(ParseDihedralError::BadChar(c)),
        }
    }
    Ok(out)
}

/// Evaluates the dihedral action Φ: a ↦ α, b ↦ β, d ↦ δ. The relations
/// d² = 1, a^d = b⁻¹, b^d = a⁻¹ hold extensionally; no rewriting is done.
pub fn phi_dihedral(w: &[DihedralLetter]) -> EndoF2 {
    let mut out = EndoF2::identity();
    for l in w {
        let gen = match l {
            DihedralLetter::A => EndoF2::alpha(),
            DihedralLetter::AInv => EndoF2::alpha_inv(),
            DihedralLetter::B => EndoF2::beta(),
            DihedralLetter::BInv => EndoF2::beta_inv(),
            DihedralLetter::D => EndoF2::delta(),
        };
        out = compose(&out, &gen);
    }
    out
}

fn comm_uv() -> FreeWord {
    FreeWord::commutator(&FreeWord::generator(1), &FreeWord::generator(2))
}

/// How [X₁, X₂] relates to the basic commutator [u, v].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CommutatorVerdict {
    /// [X₁,X₂] = [u,v] exactly.
    C1,
    /// [X₁,X₂] = w⁻¹·[u,v]·w.
    Cw(FreeWord),
    /// [X₁,X₂] = [u,v]⁻¹ exactly.
    C1Inv,
    /// [X₁,X₂] = w⁻¹·[u,v]⁻¹·w.
    CwInv(FreeWord),
    /// Not conjugate to [u,v]^{±1}: not an automorphism.
    Fail,
}

/// Tests whether x preserves the commutator up to conjugacy; this is the
/// automorphism criterion. The direct cases C1/Cw go with det ρ = +1, the
/// inverse cases with det ρ = -1.
pub fn commutator_condition(x: &EndoF2) -> CommutatorVerdict {
    let c = comm_uv();
    let k = FreeWord::commutator(&x.x1, &x.x2);
    if k == c {
        return CommutatorVerdict::C1;
    }
    if k == c.inv() {
        return CommutatorVerdict::C1Inv;
    }
    if let Some(w) = FreeWord::conjugacy_witness(&c, &k) {
        return CommutatorVerdict::Cw(w);
    }
    if let Some(w) = FreeWord::conjugacy_witness(&c.inv(), &k) {
        return CommutatorVerdict::CwInv(w);
    }
    CommutatorVerdict::Fail
}

/// Result of the automorphism test.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AutCheck {
    pub automorphism: bool,
    /// Automorphism with det ρ = +1 (orientation-preserving); always false
    /// for non-automorphisms.
    pub direct: bool,
}

/// Decides whether x is an automorphism (equivalently: surjective).
pub fn is_automorphism(x: &EndoF2) -> AutCheck {
    let automorphism = commutator_condition(x) != CommutatorVerdict::Fail;
    AutCheck { automorphism, direct: automorphism && rho(x).det() > 0 }
}

/// Errors from automorphism-level operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutError {
    #[error("endomorphism is not an automorphism")]
    NotAutomorphism,
    #[error("decomposition search exhausted (internal invariant violated)")]
    SearchExhausted,
    #[error("automorphism has infinite order")]
    NotTorsion,
}

/// A factorization x = φ_inner ∘ Ψ(braid) ∘ δ^dihedral.
///
/// The pair (inner, braid) is unique only up to the central identification
/// Ψ(s⁴) = φ_{[u,v]}; callers needing canonical representatives should
/// normalize at the amalgamated-product level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NielsenDecomposition {
    pub inner: FreeWord,
    pub braid: BraidNormalForm,
    pub dihedral: u8,
}

impl NielsenDecomposition {
    /// Recomposes the represented automorphism.
    pub fn as_endo(&self) -> EndoF2 {
        let mut out = compose(
            &EndoF2::inner(&self.inner),
            &psi(&self.braid.to_braid_word()),
        );
        if self.dihedral == 1 {
            out = compose(&out, &EndoF2::delta());
        }
        out
    }
}

/// Direct case: factor y = φ_w ∘ Ψ(b).
///
/// The commutator witness pins the inner word down to a coset w·⟨[u,v]⟩
/// (the centralizer of [u,v]); the abelianized matrix pins the braid down
/// to a coset b₀·⟨s⁴⟩ (the kernel of σ); and Ψ(s⁴) = φ_{[u,v]} lets both
/// ambiguities merge into a single power [u,v]^k, found by a bounded scan.
fn decompose_direct(y: &EndoF2) -> Result<(FreeWord, BraidNormalForm), AutError> {
    let g = match commutator_condition(y) {
        CommutatorVerdict::C1 => FreeWord::identity(),
        CommutatorVerdict::Cw(w) => w.inv(),
        CommutatorVerdict::Fail => return Err(AutError::NotAutomorphism),
        _ => return Err(AutError::SearchExhausted), // inverse verdict on a det +1 input
    };
    let braid = braid3::normal_form(
        &braid3::matrix_to_braid(&rho(y))
            .map_err(|_| AutError::SearchExhausted)?
            .to_braid_word(),
    );
    let b0 = braid.to_braid_word();
    // h := φ_{g⁻¹} ∘ y ∘ Ψ(b0)⁻¹ must be conjugation by a power of [u,v].
    let h = compose(&compose(&EndoF2::inner(&g.inv()), y), &psi(&b0.inv()));
    let c = comm_uv();
    let bound = (h.x1.len() / 8 + 2) as i64;
    for k in -bound..=bound {
        if h == EndoF2::inner(&c.pow(k)) {
            let inner = g.mul(&c.pow(k));
            return Ok((inner, braid));
        }
    }
    Err(AutError::SearchExhausted)
}

/// Factors an automorphism as φ_inner ∘ Ψ(braid) ∘ δ^ε, with ε = 1 exactly
/// for indirect automorphisms (det ρ = -1, which factor through y = x∘δ).
pub fn nielsen_decompose(x: &EndoF2) -> Result<NielsenDecomposition, AutError> {
    if commutator_condition(x) == CommutatorVerdict::Fail {
        return Err(AutError::NotAutomorphism);
    }
    let direct = rho(x).det() > 0;
    let y = if direct { x.clone() } else { compose(x, &EndoF2::delta()) };
    let (inner, braid) = decompose_direct(&y)?;
    let out = NielsenDecomposition { inner, braid, dihedral: if direct { 0 } else { 1 } };
    if out.as_endo() != *x {
        return Err(AutError::SearchExhausted);
    }
    Ok(out)
}

/// Order of an automorphism: Some(k) with k ∈ {1,2,3,4}, or None for
/// infinite order. The order of ρ(x) divides the order of x, and a power
/// in ker ρ = Int(F₂) is trivial or of infinite order, so one extensional
/// check of x^k settles it.
pub fn order_aut(x: &EndoF2) -> Result<Option<u32>, AutError> {
    if commutator_condition(x) == CommutatorVerdict::Fail {
        return Err(AutError::NotAutomorphism);
    }
    let Some(k) = crate::intmat::order(&rho(x)) else {
        return Ok(None);
    };
    let mut p = EndoF2::identity();
    for _ in 0..k {
        p = compose(&p, x);
    }
    Ok(if p.is_identity() { Some(k) } else { None })
}

/// Conjugacy class of a torsion element of Aut(F₂).
///
/// Direct classes: σ (order 2), ι and ι⁻¹ (order 4), ζ and ζ⁻¹ (order 3).
/// Indirect classes: δ and ιδ (order 2). There is no order-6 class.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TorsionClassAut {
    Id,
    Sigma,
    Iota,
    IotaInv,
    Zeta,
    ZetaInv,
    Delta,
    IotaDelta,
}

impl fmt::Display for TorsionClassAut {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TorsionClassAut::Id => "Id",
            TorsionClassAut::Sigma => "Sigma",
            TorsionClassAut::Iota => "Iota",
            TorsionClassAut::IotaInv => "IotaInv",
            TorsionClassAut::Zeta => "Zeta",
            TorsionClassAut::ZetaInv => "ZetaInv",
            TorsionClassAut::Delta => "Delta",
            TorsionClassAut::IotaDelta => "IotaDelta",
        };
        write!(out, "{name}")
    }
}

/// Classifies a torsion automorphism up to conjugacy in Aut(F₂): the order
/// and the class of ρ(x) determine the class of x.
pub fn torsion_class_aut(x: &EndoF2) -> Result<TorsionClassAut, AutError> {
    let Some(k) = order_aut(x)? else {
        return Err(AutError::NotTorsion);
    };
    let m = rho(x);
    if m.det() == 1 {
        let class = crate::intmat::torsion_class_sl(&m).expect("det +1");
        Ok(match (k, class) {
            (1, _) => TorsionClassAut::Id,
            (2, _) => TorsionClassAut::Sigma,
            (4, TorsionClassSL::S) => TorsionClassAut::Iota,
            (4, TorsionClassSL::Sinv) => TorsionClassAut::IotaInv,
            (3, TorsionClassSL::Msq) => TorsionClassAut::Zeta,
            (3, TorsionClassSL::Minvsq) => TorsionClassAut::ZetaInv,
            other => unreachable!("impossible direct torsion signature {other:?}"),
        })
    } else {
        let class = crate::intmat::torsion_class_gl(&m).expect("det -1");
        Ok(match (k, class) {
            (2, TorsionClassGL::D) => TorsionClassAut::Delta,
            (2, TorsionClassGL::SD) => TorsionClassAut::IotaDelta,
            other => unreachable!("impossible indirect torsion signature {other:?}"),
        })
    }
}

/// Verifies the arithmetic obstruction to an order-6 automorphism.
///
/// An order-6 element would abelianize to the class of M, forcing a fixed
/// vector for I+M mod its determinant: the unique rational solution of
/// (I+M)·X = e₁ is (1/3, -1/3) ∉ ℤ². Independently, any order-6 candidate
/// φ_x∘Ψ(ba) squares to φ_{x·Ψ(ba)(x)·u⁻¹}∘(something of ζ's shape), and
/// x·Ψ(ba)(x)·u⁻¹ = 1 has no solution among words of length ≤ 8.
pub fn order6_obstruction_check() -> bool {
    let i_plus_m = Mat2::new(
        1 + Mat2::M.e,
        Mat2::M.f,
        Mat2::M.g,
        1 + Mat2::M.h,
    );
    if i_plus_m.det() != 3 {
        return false;
    }
    // Adjugate solve: 3·X = adj(I+M)·e₁ must not be divisible by 3.
    let adj_e1 = (i_plus_m.h, -i_plus_m.g);
    if adj_e1.0 % 3 == 0 && adj_e1.1 % 3 == 0 {
        return false;
    }
    // Word-level sweep: x·γ(x)·u⁻¹ ≠ 1 for γ = Ψ(ba) and all l(x) ≤ 8.
    let gamma = psi(&braid3::parse_braid("ba").expect("fixed word"));
    let u = FreeWord::generator(1);
    for x in FreeWord::enumerate_reduced(8) {
        if x.mul(&apply(&gamma, &x)).mul(&u.inv()).is_empty() {
            return false;
        }
    }
    true
}
