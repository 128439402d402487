//! Semidirect products amalgamated over a common subgroup.
//!
//! Generic construction: groups K, L with an action ψ of L on K form the
//! semidirect product (k,l)(k′,l′) = (k·ψ(l)(k′), ll′). A subgroup M
//! embedded in both factors (κ into K, λ into L, with λ(M) normal in L
//! and the strong-interiority condition ψ(l)(κ(m)) = κ∘λ⁻¹(l·λ(m)·l⁻¹))
//! yields a homomorphism μ(m) = (κ(m)⁻¹, λ(m)) with normal image, and the
//! quotient by μ(M) amalgamates the two copies of M. Finite toy instances
//! make the construction exhaustively checkable.
//!
//! The concrete instance: Aut⁺(F₂) = Int(F₂)·Ψ(B₃), amalgamated over
//! ⟨s⁴⟩ = ⟨φ_{[u,v]}⟩. Elements are stored as (inner word, braid normal
//! form) with the braid's central exponent reduced into {0,1} by
//! transferring c² = s⁴-powers into the inner part; the reduced pair is a
//! unique representative, so equality is structural.

use std::fmt;

use thiserror::Error;

use crate::autf2::{self, EndoF2};
use crate::braid3::{self, BraidNormalForm};
use crate::words::FreeWord;

/// Group structure on a value type, as explicit operations.
#[derive(Clone, Copy)]
pub struct GroupOps<T> {
    pub id: T,
    pub mul: fn(&T, &T) -> T,
    pub inv: fn(&T) -> T,
}

impl<T: Clone + Eq> GroupOps<T> {
    /// Exhaustive group-axiom check over an element list.
    pub fn axioms_hold(&self, elements: &[T]) -> bool {
        let mul = self.mul;
        let inv = self.inv;
        for x in elements {
            if mul(&self.id, x) != *x || mul(x, &self.id) != *x {
                return false;
            }
            if mul(x, &inv(x)) != self.id || mul(&inv(x), x) != self.id {
                return false;
            }
            for y in elements {
                if !elements.contains(&mul(x, y)) {
                    return false;
                }
                for z in elements {
                    if mul(&mul(x, y), z) != mul(x, &mul(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// An element (k, l) of a semidirect product K ⋊_ψ L.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SdpElement<K, L> {
    pub k: K,
    pub l: L,
}

/// A semidirect product K ⋊_ψ L given by the factor groups and the action.
#[derive(Clone, Copy)]
pub struct Semidirect<K, L> {
    pub kg: GroupOps<K>,
    pub lg: GroupOps<L>,
    /// ψ(l)(k); must act by automorphisms of K.
    pub action: fn(&L, &K) -> K,
}

impl<K: Clone + Eq, L: Clone + Eq> Semidirect<K, L> {
    pub fn identity(&self) -> SdpElement<K, L> {
        SdpElement { k: self.kg.id.clone(), l: self.lg.id.clone() }
    }

    /// (k,l)(k′,l′) = (k·ψ(l)(k′), ll′).
    pub fn mul(&self, x: &SdpElement<K, L>, y: &SdpElement<K, L>) -> SdpElement<K, L> {
        SdpElement {
            k: (self.kg.mul)(&x.k, &(self.action)(&x.l, &y.k)),
            l: (self.lg.mul)(&x.l, &y.l),
        }
    }

    /// (k,l)⁻¹ = (ψ(l⁻¹)(k⁻¹), l⁻¹).
    pub fn inv(&self, x: &SdpElement<K, L>) -> SdpElement<K, L> {
        let l_inv = (self.lg.inv)(&x.l);
        SdpElement { k: (self.action)(&l_inv, &(self.kg.inv)(&x.k)), l: l_inv }
    }

    pub fn conjugate(&self, g: &SdpElement<K, L>, x: &SdpElement<K, L>) -> SdpElement<K, L> {
        self.mul(&self.mul(g, x), &self.inv(g))
    }
}

/// Errors from amalgamation data and operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AmalgError {
    #[error("amalgamation data invalid: {0}")]
    DataInvalid(String),
}

/// Amalgamation data: M embedded in K via κ and in L via λ, with element
/// lists for exhaustive validation on finite instances.
#[derive(Clone)]
pub struct Amalgam<K, L, M> {
    pub sdp: Semidirect<K, L>,
    pub mg: GroupOps<M>,
    pub kappa: fn(&M) -> K,
    pub lambda: fn(&M) -> L,
    pub k_elements: Vec<K>,
    pub l_elements: Vec<L>,
    pub m_elements: Vec<M>,
}

impl<K: Clone + Eq, L: Clone + Eq, M: Clone + Eq> Amalgam<K, L, M> {
    fn lambda_preimage(&self, l: &L) -> Option<&M> {
        self.m_elements.iter().find(|m| (self.lambda)(m) == *l)
    }

    /// Checks the amalgamation conditions on the stored element lists:
    /// κ, λ injective homomorphisms, λ(M) normal in L, and strong
    /// interiority ψ(l)(κ(m)) = κ∘λ⁻¹(l·λ(m)·l⁻¹).
    pub fn validate(&self) -> Result<(), AmalgError> {
        let bad = |reason: &str| Err(AmalgError::DataInvalid(reason.to_string()));
        for (i, m1) in self.m_elements.iter().enumerate() {
            for m2 in &self.m_elements[i + 1..] {
                if (self.kappa)(m1) == (self.kappa)(m2) {
                    return bad("kappa is not injective");
                }
                if (self.lambda)(m1) == (self.lambda)(m2) {
                    return bad("lambda is not injective");
                }
            }
        }
        for m1 in &self.m_elements {
            for m2 in &self.m_elements {
                let prod = (self.mg.mul)(m1, m2);
                if (self.kappa)(&prod) != (self.sdp.kg.mul)(&(self.kappa)(m1), &(self.kappa)(m2)) {
                    return bad("kappa is not a homomorphism");
                }
                if (self.lambda)(&prod) != (self.sdp.lg.mul)(&(self.lambda)(m1), &(self.lambda)(m2)) {
                    return bad("lambda is not a homomorphism");
                }
            }
        }
        for l in &self.l_elements {
            for m in &self.m_elements {
                let conj = (self.sdp.lg.mul)(
                    &(self.sdp.lg.mul)(l, &(self.lambda)(m)),
                    &(self.sdp.lg.inv)(l),
                );
                let Some(m_conj) = self.lambda_preimage(&conj) else {
                    return bad("lambda(M) is not normal in L");
                };
                if (self.sdp.action)(l, &(self.kappa)(m)) != (self.kappa)(m_conj) {
                    return bad("strong interiority fails");
                }
            }
        }
        Ok(())
    }

    /// μ(m) = (κ(m)⁻¹, λ(m)), a homomorphism with normal image once
    /// `validate` passes.
    pub fn mu(&self, m: &M) -> Result<SdpElement<K, L>, AmalgError> {
        self.validate()?;
        Ok(SdpElement { k: (self.sdp.kg.inv)(&(self.kappa)(m)), l: (self.lambda)(m) })
    }

    pub fn mu_image(&self) -> Result<Vec<SdpElement<K, L>>, AmalgError> {
        self.m_elements.iter().map(|m| self.mu(m)).collect()
    }

    /// All pairs (k, l) from the stored element lists.
    pub fn all_elements(&self) -> Vec<SdpElement<K, L>> {
        let mut out = Vec::new();
        for k in &self.k_elements {
            for l in &self.l_elements {
                out.push(SdpElement { k: k.clone(), l: l.clone() });
            }
        }
        out
    }

    /// Number of cosets of μ(M) in K ⋊ L (finite instances).
    pub fn quotient_order(&self) -> Result<usize, AmalgError> {
        let image = self.mu_image()?;
        let mut reps: Vec<SdpElement<K, L>> = Vec::new();
        'outer: for x in self.all_elements() {
            for r in &reps {
                let diff = self.sdp.mul(&self.sdp.inv(r), &x);
                if image.contains(&diff) {
                    continue 'outer;
                }
            }
            reps.push(x);
        }
        Ok(reps.len())
    }

    /// Exhaustive check of the two amalgamation laws: μ is a homomorphism,
    /// and conjugation satisfies (k,l)·μ(m)·(k,l)⁻¹ = μ(λ⁻¹(l·λ(m)·l⁻¹)).
    pub fn mu_is_normal_embedding(&self) -> Result<bool, AmalgError> {
        for m1 in &self.m_elements {
            for m2 in &self.m_elements {
                let lhs = self.sdp.mul(&self.mu(m1)?, &self.mu(m2)?);
                if lhs != self.mu(&(self.mg.mul)(m1, m2))? {
                    return Ok(false);
                }
            }
        }
        for x in self.all_elements() {
            for m in &self.m_elements {
                let conj = self.sdp.conjugate(&x, &self.mu(m)?);
                let l_conj = (self.sdp.lg.mul)(
                    &(self.sdp.lg.mul)(&x.l, &(self.lambda)(m)),
                    &(self.sdp.lg.inv)(&x.l),
                );
                let Some(m_conj) = self.lambda_preimage(&l_conj) else {
                    return Ok(false);
                };
                if conj != self.mu(m_conj)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn add4(a: &u8, b: &u8) -> u8 {
    (a + b) % 4
}

fn neg4(a: &u8) -> u8 {
    (4 - a) % 4
}

fn trivial_action4(_l: &u8, k: &u8) -> u8 {
    *k
}

const Z4: GroupOps<u8> = GroupOps { id: 0, mul: add4, inv: neg4 };

/// K = L = ℤ/4 with trivial action, amalgamated over M = 2ℤ/4.
pub fn toy_z4() -> Amalgam<u8, u8, u8> {
    Amalgam {
        sdp: Semidirect { kg: Z4, lg: Z4, action: trivial_action4 },
        mg: Z4,
        kappa: |m| *m,
        lambda: |m| *m,
        k_elements: vec![0, 1, 2, 3],
        l_elements: vec![0, 1, 2, 3],
        m_elements: vec![0, 2],
    }
}

/// K = {0,2} and L = ℤ/4 inside the common group ℤ/4, over M = K∩L; the
/// multiplication map p(k,l) = k+l then has kernel exactly μ(M).
pub fn toy_z4_subgroup() -> Amalgam<u8, u8, u8> {
    Amalgam {
        sdp: Semidirect { kg: Z4, lg: Z4, action: trivial_action4 },
        mg: Z4,
        kappa: |m| *m,
        lambda: |m| *m,
        k_elements: vec![0, 2],
        l_elements: vec![0, 1, 2, 3],
        m_elements: vec![0, 2],
    }
}

/// Kernel of p(k,l) = k+l on the subgroup instance equals μ(K∩L).
pub fn toy_kernel_equals_mu_image() -> bool {
    let am = toy_z4_subgroup();
    let Ok(image) = am.mu_image() else {
        return false;
    };
    let kernel: Vec<SdpElement<u8, u8>> = am
        .all_elements()
        .into_iter()
        .filter(|x| (x.k + x.l) % 4 == 0)
        .collect();
    kernel.len() == image.len() && kernel.iter().all(|x| image.contains(x))
}

// S₃ encoded as r + 3f (rotation r ∈ {0,1,2}, flip f ∈ {0,1}), with
// flip·rot(r) = rot(-r)·flip.
fn s3_mul(x: &u8, y: &u8) -> u8 {
    let (r1, f1) = (x % 3, x / 3);
    let (r2, f2) = (y % 3, y / 3);
    let r = if f1 == 1 { (r1 + 3 - r2) % 3 } else { (r1 + r2) % 3 };
    r + 3 * ((f1 + f2) % 2)
}

fn s3_inv(x: &u8) -> u8 {
    let (r, f) = (x % 3, x / 3);
    if f == 1 {
        *x
    } else {
        (3 - r) % 3
    }
}

fn add3(a: &u8, b: &u8) -> u8 {
    (a + b) % 3
}

fn neg3(a: &u8) -> u8 {
    (3 - a) % 3
}

fn s3_action_on_z3(l: &u8, k: &u8) -> u8 {
    if l / 3 == 1 {
        (3 - k) % 3
    } else {
        *k
    }
}

const Z3: GroupOps<u8> = GroupOps { id: 0, mul: add3, inv: neg3 };
const S3: GroupOps<u8> = GroupOps { id: 0, mul: s3_mul, inv: s3_inv };

/// Nonabelian instance: K = ℤ/3, L = S₃ acting by sign, M = A₃ ≅ ℤ/3.
/// Reflections conjugate a rotation to its inverse AND negate K, so the
/// strong-interiority condition holds nontrivially.
pub fn toy_s3() -> Amalgam<u8, u8, u8> {
    Amalgam {
        sdp: Semidirect { kg: Z3, lg: S3, action: s3_action_on_z3 },
        mg: Z3,
        kappa: |m| *m,
        lambda: |m| *m,
        k_elements: vec![0, 1, 2],
        l_elements: vec![0, 1, 2, 3, 4, 5],
        m_elements: vec![0, 1, 2],
    }
}

fn trivial_action3(_l: &u8, k: &u8) -> u8 {
    *k
}

/// The same data with the action forgotten: conjugation by a reflection
/// still inverts rotations, so strong interiority fails.
pub fn toy_s3_broken() -> Amalgam<u8, u8, u8> {
    Amalgam { sdp: Semidirect { kg: Z3, lg: S3, action: trivial_action3 }, ..toy_s3() }
}

fn comm_uv() -> FreeWord {
    FreeWord::commutator(&FreeWord::generator(1), &FreeWord::generator(2))
}

/// An element of Aut⁺(F₂) = Int(F₂) ⋊ B₃ amalgamated over ⟨s⁴⟩, stored as
/// the canonical pair (inner word, braid normal form with n ∈ {0,1}).
///
/// Two pairs represent the same automorphism exactly when they agree after
/// reducing the braid's central exponent mod 2 and absorbing the quotient
/// into the inner word through Ψ(s⁴) = φ_{[u,v]}; structural equality on
/// canonical pairs therefore decides equality in the group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AutAmalgElem {
    inner: FreeWord,
    braid: BraidNormalForm,
}

impl AutAmalgElem {
    /// Builds the canonical representative of φ_inner ∘ Ψ(braid).
    pub fn new(inner: FreeWord, braid: BraidNormalForm) -> Self {
        let q = braid.n.div_euclid(2);
        let r = braid.n.rem_euclid(2);
        let mut b = braid;
        b.n = r;
        AutAmalgElem { inner: inner.mul(&comm_uv().pow(q)), braid: b }
    }

    pub fn identity() -> Self {
        AutAmalgElem::new(FreeWord::identity(), BraidNormalForm::identity())
    }

    pub fn inner(&self) -> &FreeWord {
        &self.inner
    }

    pub fn braid(&self) -> &BraidNormalForm {
        &self.braid
    }

    /// The represented automorphism φ_inner ∘ Ψ(braid).
    pub fn as_endo(&self) -> EndoF2 {
        autf2::compose(
            &EndoF2::inner(&self.inner),
            &autf2::psi(&self.braid.to_braid_word()),
        )
    }
}

impl fmt::Display for AutAmalgElem {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "phi[{}] psi[{}]", self.inner, self.braid)
    }
}

/// Product in the amalgamated group: (φ_{w₁}Ψ(b₁))(φ_{w₂}Ψ(b₂)) =
/// φ_{w₁·Ψ(b₁)(w₂)}·Ψ(b₁b₂), then canonicalized.
pub fn aut_mul(x: &AutAmalgElem, y: &AutAmalgElem) -> AutAmalgElem {
    let b1 = x.braid.to_braid_word();
    let b2 = y.braid.to_braid_word();
    let psi_b1 = autf2::psi(&b1);
    let inner = x.inner.mul(&autf2::apply(&psi_b1, &y.inner));
    let braid = braid3::normal_form(&b1.mul(&b2));
    AutAmalgElem::new(inner, braid)
}

/// Inverse: (φ_w Ψ(b))⁻¹ = φ_{Ψ(b⁻¹)(w⁻¹)}·Ψ(b⁻¹).
pub fn aut_inv(x: &AutAmalgElem) -> AutAmalgElem {
    let b_inv = x.braid.to_braid_word().inv();
    let inner = autf2::apply(&autf2::psi(&b_inv), &x.inner.inv());
    AutAmalgElem::new(inner, braid3::normal_form(&b_inv))
}

/// Equality in Aut⁺(F₂), by canonical representatives.
pub fn aut_equal(x: &AutAmalgElem, y: &AutAmalgElem) -> bool {
    x == y
}

/// μ on the amalgamating subgroup ⟨s⁴⟩: the raw pair ([u,v]⁻ᵏ, s⁴ᵏ), which
/// canonicalizes to the identity; its action is trivial by construction.
pub fn mu_aut(k: i64) -> AutAmalgElem {
    let braid = BraidNormalForm::new(0, Vec::new(), 0, 2 * k);
    AutAmalgElem::new(comm_uv().pow(-k), braid)
}
