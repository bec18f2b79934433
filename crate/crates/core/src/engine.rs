//! The family-agnostic decision core.
//!
//! A `ModuleCategory` packages everything a ring family must provide: a
//! finite universe of indecomposables with canonical forms, hom triviality,
//! projective covers and (optionally) injective envelopes, and the two
//! surjectivity reductions that decide relative subprojectivity and
//! subinjectivity. On top of that, this module offers universe-level
//! operations: membership, full domains as bitsets, hom-vanishing sets, and
//! the soc-projectivity and basic-portfolio tests.
//!
//! All verdicts are relative to the declared universe: a finite universe can
//! certify instances of statements quantified over all modules, never the
//! statements themselves.

use crate::abelian::AbError;
use crate::linalg::LinalgError;
use crate::quiver::QuiverError;
use rayon::prelude::*;
use std::fmt;
use std::hash::Hash;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("cannot parse {0:?}: {1}")]
    Parse(String, String),
    #[error("injective envelopes are not available over {0}")]
    UnsupportedEnvelope(String),
    #[error("module {0} lies outside the declared universe: {1}")]
    OutsideUniverse(String, String),
    #[error("operation does not apply to this ring family: {0}")]
    FamilyMismatch(String),
    #[error(transparent)]
    Ab(#[from] AbError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which relative notion a check or domain refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Sp,
    Si,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Sp => "sp",
            Kind::Si => "si",
        })
    }
}

impl Kind {
    pub fn parse(s: &str) -> Result<Kind, EngineError> {
        match s {
            "sp" => Ok(Kind::Sp),
            "si" => Ok(Kind::Si),
            other => Err(EngineError::Parse(other.to_string(), "expected sp or si".into())),
        }
    }
}

/// Membership bitset over a universe's indecomposables, in universe order.
/// A direct sum belongs to a domain exactly when all of its indecomposable
/// summands do, so these bits describe the domain on every universe member.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DomainSet {
    pub universe_id: String,
    pub bits: Vec<bool>,
}

impl DomainSet {
    pub fn full(universe_id: String, len: usize) -> Self {
        DomainSet { universe_id, bits: vec![true; len] }
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_full(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn and(&self, other: &DomainSet) -> DomainSet {
        debug_assert_eq!(self.universe_id, other.universe_id, "same universe");
        DomainSet {
            universe_id: self.universe_id.clone(),
            bits: self.bits.iter().zip(&other.bits).map(|(&a, &b)| a && b).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &DomainSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Does a sum with the given indecomposable indices belong?
    pub fn contains_support(&self, support: &[usize]) -> bool {
        support.iter().all(|&i| self.bits[i])
    }
}

/// Tilting data of the injective cogenerator over a hereditary family: the
/// module E, its translate, and the generated/cogenerated classes.
#[derive(Debug, Clone)]
pub struct TorsionData {
    pub e_literal: String,
    pub tau_e_literal: String,
    pub is_tilting: bool,
    pub gen_bits: Vec<bool>,
    pub cogen_bits: Vec<bool>,
}

/// Everything a ring family exposes to the engine. Implementations carry a
/// fixed finite universe; all module arguments are expected to be canonical
/// forms produced by `parse` or by sums of universe indecomposables.
pub trait ModuleCategory: Sync {
    type Mod: Clone + PartialEq + Eq + PartialOrd + Ord + Hash + fmt::Display + Send + Sync;

    /// `integers`, `chain`, or `quiver`.
    fn family_name(&self) -> &'static str;
    /// Ring spec string, e.g. `Z`, `Zmod:2^3`, `A4:><>;q=2`.
    fn ring_spec(&self) -> String;
    /// Ring spec plus universe bounds; prefixes cache keys and reports.
    fn universe_id(&self) -> String;
    fn indecomposables(&self) -> &[Self::Mod];
    fn zero(&self) -> Self::Mod;
    fn parse(&self, literal: &str) -> Result<Self::Mod, EngineError>;
    fn sum_of(&self, parts: &[Self::Mod]) -> Self::Mod;
    /// Indecomposable summands with multiplicity.
    fn indec_parts(&self, m: &Self::Mod) -> Vec<Self::Mod>;
    /// All direct summands up to isomorphism.
    fn summands(&self, m: &Self::Mod) -> Vec<Self::Mod>;
    fn is_summand(&self, part: &Self::Mod, of: &Self::Mod) -> bool;
    fn is_projective(&self, m: &Self::Mod) -> bool;
    fn is_injective(&self, m: &Self::Mod) -> bool;
    /// The ring as a module over itself.
    fn regular(&self) -> Self::Mod;
    fn simples(&self) -> Vec<Self::Mod>;
    /// Projective cover of a simple; None when the family is not semiperfect.
    fn projective_cover_of_simple(&self, s: &Self::Mod) -> Option<Self::Mod>;
    fn hom_is_zero(&self, m: &Self::Mod, n: &Self::Mod) -> Result<bool, EngineError>;
    fn supports_envelopes(&self) -> bool;
    fn is_hereditary(&self) -> bool;
    fn is_self_injective(&self) -> bool;
    fn is_semiperfect(&self) -> bool;
    /// Decides whether `m` is `n`-subprojective through one projective cover
    /// of `n`; `redundant_cover` switches to a presentation with an extra
    /// zero-mapped projective summand (the verdict must not change).
    fn subprojective(
        &self,
        m: &Self::Mod,
        n: &Self::Mod,
        redundant_cover: bool,
    ) -> Result<bool, EngineError>;
    /// Decides whether `m` is `n`-subinjective through the injective
    /// envelope of `n`.
    fn subinjective(&self, m: &Self::Mod, n: &Self::Mod) -> Result<bool, EngineError>;
    /// Isomorphism classes of submodules, when enumerable within bounds.
    fn submodule_classes(&self, m: &Self::Mod) -> Option<Vec<Self::Mod>>;
    /// Family-specific candidates for poor modules beyond the generic ones.
    fn extra_poor_candidates(&self, kind: Kind) -> Vec<Self::Mod>;
    /// A closed-form answer for subprojectivity when the family has one
    /// (used as an independent oracle), otherwise None.
    fn closed_form_sp_oracle(&self, _m: &Self::Mod, _n: &Self::Mod) -> Option<bool> {
        None
    }
    /// Torsion-pair data of the injective cogenerator, for families where it
    /// is a tilting module.
    fn tilting_torsion_data(&self) -> Option<TorsionData> {
        None
    }
}

pub fn is_subprojective<C: ModuleCategory>(
    cat: &C,
    m: &C::Mod,
    n: &C::Mod,
) -> Result<bool, EngineError> {
    cat.subprojective(m, n, false)
}

pub fn is_subinjective<C: ModuleCategory>(
    cat: &C,
    m: &C::Mod,
    n: &C::Mod,
) -> Result<bool, EngineError> {
    cat.subinjective(m, n)
}

pub fn membership<C: ModuleCategory>(
    cat: &C,
    kind: Kind,
    m: &C::Mod,
    n: &C::Mod,
) -> Result<bool, EngineError> {
    match kind {
        Kind::Sp => is_subprojective(cat, m, n),
        Kind::Si => is_subinjective(cat, m, n),
    }
}

/// Membership bits of `m`'s domain over every universe indecomposable,
/// computed in parallel and assembled in universe order.
pub fn domain<C: ModuleCategory>(
    cat: &C,
    kind: Kind,
    m: &C::Mod,
) -> Result<DomainSet, EngineError> {
    let bits: Result<Vec<bool>, EngineError> = cat
        .indecomposables()
        .par_iter()
        .map(|n| membership(cat, kind, m, n))
        .collect();
    Ok(DomainSet { universe_id: cat.universe_id(), bits: bits? })
}

/// For sp: `{N : Hom(m, N) = 0}`; for si: `{N : Hom(N, m) = 0}` — the
/// hom-vanishing sets that basic portfolios coincide with.
pub fn hom_vanishing_set<C: ModuleCategory>(
    cat: &C,
    kind: Kind,
    m: &C::Mod,
) -> Result<DomainSet, EngineError> {
    let bits: Result<Vec<bool>, EngineError> = cat
        .indecomposables()
        .par_iter()
        .map(|n| match kind {
            Kind::Sp => cat.hom_is_zero(m, n),
            Kind::Si => cat.hom_is_zero(n, m),
        })
        .collect();
    Ok(DomainSet { universe_id: cat.universe_id(), bits: bits? })
}

/// Sufficient certificate for the subprojectivity domain of `m` to be a pure
/// hom-vanishing class: maps from `m` to the regular module are trivial.
pub fn is_basic_sp<C: ModuleCategory>(cat: &C, m: &C::Mod) -> Result<bool, EngineError> {
    cat.hom_is_zero(m, &cat.regular())
}

/// True when every simple of the universe lies in the subprojectivity domain
/// of `m`; finite semisimples follow by sum closure.
pub fn is_strongly_soc_projective<C: ModuleCategory>(
    cat: &C,
    m: &C::Mod,
) -> Result<bool, EngineError> {
    for s in cat.simples() {
        if !is_subprojective(cat, m, &s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn projective_bits<C: ModuleCategory>(cat: &C) -> DomainSet {
    DomainSet {
        universe_id: cat.universe_id(),
        bits: cat.indecomposables().iter().map(|m| cat.is_projective(m)).collect(),
    }
}

pub fn injective_bits<C: ModuleCategory>(cat: &C) -> DomainSet {
    DomainSet {
        universe_id: cat.universe_id(),
        bits: cat.indecomposables().iter().map(|m| cat.is_injective(m)).collect(),
    }
}

/// The module with one copy of each indecomposable named by `support`.
pub fn support_module<C: ModuleCategory>(cat: &C, support: &[usize]) -> C::Mod {
    let indecs = cat.indecomposables();
    let parts: Vec<C::Mod> = support.iter().map(|&i| indecs[i].clone()).collect();
    cat.sum_of(&parts)
}

/// All square-free supports (index lists) ordered by size then
/// lexicographically; position 0 is the empty support (the zero module).
pub fn all_supports(count: usize) -> Vec<Vec<usize>> {
    assert!(count <= 16, "universes stay small");
    let mut out: Vec<Vec<usize>> = (0u32..(1 << count))
        .map(|mask| (0..count).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Deterministic evenly spaced sample of at most `cap` items.
pub fn sample_evenly<T>(items: &[T], cap: usize) -> Vec<&T> {
    if items.len() <= cap {
        return items.iter().collect();
    }
    (0..cap).map(|i| &items[i * items.len() / cap]).collect()
}
