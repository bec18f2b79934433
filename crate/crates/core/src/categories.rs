//! The three ring families behind the `ModuleCategory` interface.
//!
//! * `ZCategory` — finitely generated abelian groups with bounded prime
//!   support, torsion exponent, and free rank. Projective covers exist
//!   (free-on-generators presentations), injective envelopes do not stay
//!   finitely generated, so subinjectivity is unsupported.
//! * `ChainCategory` — modules over Z/p^k: cyclic summands Z/p^e. The ring
//!   is self-injective, so both decisions are available.
//! * `QuiverCategory` — representations of a type-A line quiver over a prime
//!   field; hereditary, with covers and envelopes computed vertexwise.

use crate::abelian::{
    self, compose_maps, hom, injective_envelope, map_onto_presented, parse_module,
    projective_presentation, submodule_classes, AbModule,
};
use crate::engine::{EngineError, Kind, ModuleCategory};
use crate::linalg::{rank, Coefficients, ExactMatrix};
use crate::quiver::{
    self, hom_space, materialize, parse_expr, tau_expr, LineQuiver, QuiverModuleExpr,
};
use num_bigint::BigInt;

/// Shared composition for both abelian families: express each generator of
/// Hom(m, source-of-g) composed with g in the generators of Hom(m, target),
/// then test surjectivity against the target hom group's relations.
fn ab_postcomposition_onto(
    m: &AbModule,
    g_matrix: &ExactMatrix,
    g_source: &AbModule,
    g_target: &AbModule,
    deciding_ring: Coefficients,
) -> Result<bool, EngineError> {
    let a = hom(m, g_source)?;
    let b = hom(m, g_target)?;
    let mut columns: Vec<Vec<BigInt>> = Vec::with_capacity(a.generators.len());
    for gen in &a.generators {
        let composite = compose_maps(g_matrix, gen, g_target)?;
        columns.push(b.coordinates_of(&composite));
    }
    let rows = b.generators.len();
    let matrix = ExactMatrix::from_fn(Coefficients::Integers, rows, columns.len(), |i, j| {
        columns[j][i].clone()
    });
    Ok(map_onto_presented(&matrix, &b.orders, deciding_ring)?)
}

/// Restriction along an embedding e: n -> E, dually: generators of Hom(E, m)
/// composed with e, tested against Hom(n, m).
fn ab_restriction_onto(
    m: &AbModule,
    e_matrix: &ExactMatrix,
    envelope: &AbModule,
    n: &AbModule,
    deciding_ring: Coefficients,
) -> Result<bool, EngineError> {
    let a = hom(envelope, m)?;
    let b = hom(n, m)?;
    let mut columns: Vec<Vec<BigInt>> = Vec::with_capacity(a.generators.len());
    for gen in &a.generators {
        let composite = compose_maps(gen, e_matrix, m)?;
        columns.push(b.coordinates_of(&composite));
    }
    let rows = b.generators.len();
    let matrix = ExactMatrix::from_fn(Coefficients::Integers, rows, columns.len(), |i, j| {
        columns[j][i].clone()
    });
    Ok(map_onto_presented(&matrix, &b.orders, deciding_ring)?)
}

/// Finitely generated abelian groups with torsion primes in `primes`,
/// torsion exponents at most `maxexp`, and free rank at most `maxrank`.
#[derive(Debug, Clone)]
pub struct ZCategory {
    primes: Vec<u64>,
    maxexp: u32,
    maxrank: usize,
    indecs: Vec<AbModule>,
}

impl ZCategory {
    pub fn new(mut primes: Vec<u64>, maxexp: u32, maxrank: usize) -> Result<Self, EngineError> {
        primes.sort_unstable();
        primes.dedup();
        for &p in &primes {
            if !abelian::is_prime(p) {
                return Err(EngineError::Parse(
                    p.to_string(),
                    "prime support must consist of primes".into(),
                ));
            }
        }
        if maxexp == 0 {
            return Err(EngineError::Parse("0".into(), "maxexp must be at least 1".into()));
        }
        let ring = Coefficients::Integers;
        let mut torsion: Vec<AbModule> = Vec::new();
        for &p in &primes {
            for e in 1..=maxexp {
                torsion.push(AbModule::cyclic(ring, p, e)?);
            }
        }
        // Universe listing: the free module first, then torsion ascending by
        // numeric order p^e.
        torsion.sort_by_key(|m| m.order().expect("torsion modules are finite"));
        let mut indecs = Vec::new();
        if maxrank >= 1 {
            indecs.push(AbModule::free(ring, 1)?);
        }
        indecs.extend(torsion);
        Ok(ZCategory { primes, maxexp, maxrank, indecs })
    }

    fn check_bounds(&self, m: &AbModule) -> Result<(), EngineError> {
        if m.free_rank() > self.maxrank {
            return Err(EngineError::OutsideUniverse(
                m.to_string(),
                format!("free rank exceeds {}", self.maxrank),
            ));
        }
        for &(p, e) in m.torsion_parts() {
            if !self.primes.contains(&p) {
                return Err(EngineError::OutsideUniverse(
                    m.to_string(),
                    format!("prime {p} outside support {:?}", self.primes),
                ));
            }
            if e > self.maxexp {
                return Err(EngineError::OutsideUniverse(
                    m.to_string(),
                    format!("exponent {e} exceeds {}", self.maxexp),
                ));
            }
        }
        Ok(())
    }
}

impl ModuleCategory for ZCategory {
    type Mod = AbModule;

    fn family_name(&self) -> &'static str {
        "integers"
    }

    fn ring_spec(&self) -> String {
        "Z".into()
    }

    fn universe_id(&self) -> String {
        let ps: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        format!("Z;primes={};maxexp={};maxrank={}", ps.join(","), self.maxexp, self.maxrank)
    }

    fn indecomposables(&self) -> &[AbModule] {
        &self.indecs
    }

    fn zero(&self) -> AbModule {
        AbModule::zero(Coefficients::Integers)
    }

    fn parse(&self, literal: &str) -> Result<AbModule, EngineError> {
        let m = parse_module(Coefficients::Integers, literal)?;
        self.check_bounds(&m)?;
        Ok(m)
    }

    fn sum_of(&self, parts: &[AbModule]) -> AbModule {
        AbModule::sum_of(Coefficients::Integers, parts).expect("universe parts share the ring")
    }

    fn indec_parts(&self, m: &AbModule) -> Vec<AbModule> {
        m.indecomposable_summands()
    }

    fn summands(&self, m: &AbModule) -> Vec<AbModule> {
        m.summands()
    }

    fn is_summand(&self, part: &AbModule, of: &AbModule) -> bool {
        of.has_summand(part)
    }

    fn is_projective(&self, m: &AbModule) -> bool {
        m.is_projective()
    }

    fn is_injective(&self, m: &AbModule) -> bool {
        m.is_injective()
    }

    fn regular(&self) -> AbModule {
        AbModule::free(Coefficients::Integers, 1).expect("rank one free module")
    }

    fn simples(&self) -> Vec<AbModule> {
        self.primes
            .iter()
            .map(|&p| AbModule::cyclic(Coefficients::Integers, p, 1).expect("simple cyclic"))
            .collect()
    }

    fn projective_cover_of_simple(&self, _s: &AbModule) -> Option<AbModule> {
        None // Z is not semiperfect: Z -> Z/p is onto but never a cover.
    }

    fn hom_is_zero(&self, m: &AbModule, n: &AbModule) -> Result<bool, EngineError> {
        Ok(hom(m, n)?.is_trivial())
    }

    fn supports_envelopes(&self) -> bool {
        false
    }

    fn is_hereditary(&self) -> bool {
        true
    }

    fn is_self_injective(&self) -> bool {
        false
    }

    fn is_semiperfect(&self) -> bool {
        false
    }

    fn subprojective(
        &self,
        m: &AbModule,
        n: &AbModule,
        redundant_cover: bool,
    ) -> Result<bool, EngineError> {
        let pres = projective_presentation(n, redundant_cover);
        ab_postcomposition_onto(m, &pres.matrix, &pres.cover, n, Coefficients::Integers)
    }

    fn subinjective(&self, _m: &AbModule, _n: &AbModule) -> Result<bool, EngineError> {
        Err(EngineError::UnsupportedEnvelope(
            "Z (injective envelopes of nonzero groups are not finitely generated)".into(),
        ))
    }

    fn submodule_classes(&self, m: &AbModule) -> Option<Vec<AbModule>> {
        submodule_classes(m)
    }

    fn extra_poor_candidates(&self, _kind: Kind) -> Vec<AbModule> {
        Vec::new()
    }

    /// Over Z, m is n-subprojective exactly when no prime carries torsion in
    /// both modules.
    fn closed_form_sp_oracle(&self, m: &AbModule, n: &AbModule) -> Option<bool> {
        let mp = m.torsion_primes();
        Some(n.torsion_primes().is_disjoint(&mp))
    }
}

/// Modules over the chain ring Z/p^k.
#[derive(Debug, Clone)]
pub struct ChainCategory {
    p: u64,
    k: u32,
    ring: Coefficients,
    indecs: Vec<AbModule>,
}

impl ChainCategory {
    pub fn new(p: u64, k: u32) -> Result<Self, EngineError> {
        let ring = Coefficients::cyclic_ring(p, k)?;
        let indecs = (1..=k)
            .map(|e| AbModule::cyclic(ring, p, e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ChainCategory { p, k, ring, indecs })
    }
}

impl ModuleCategory for ChainCategory {
    type Mod = AbModule;

    fn family_name(&self) -> &'static str {
        "chain"
    }

    fn ring_spec(&self) -> String {
        format!("Zmod:{}^{}", self.p, self.k)
    }

    fn universe_id(&self) -> String {
        self.ring_spec()
    }

    fn indecomposables(&self) -> &[AbModule] {
        &self.indecs
    }

    fn zero(&self) -> AbModule {
        AbModule::zero(self.ring)
    }

    fn parse(&self, literal: &str) -> Result<AbModule, EngineError> {
        Ok(parse_module(self.ring, literal)?)
    }

    fn sum_of(&self, parts: &[AbModule]) -> AbModule {
        AbModule::sum_of(self.ring, parts).expect("universe parts share the ring")
    }

    fn indec_parts(&self, m: &AbModule) -> Vec<AbModule> {
        m.indecomposable_summands()
    }

    fn summands(&self, m: &AbModule) -> Vec<AbModule> {
        m.summands()
    }

    fn is_summand(&self, part: &AbModule, of: &AbModule) -> bool {
        of.has_summand(part)
    }

    fn is_projective(&self, m: &AbModule) -> bool {
        m.is_projective()
    }

    fn is_injective(&self, m: &AbModule) -> bool {
        m.is_injective()
    }

    fn regular(&self) -> AbModule {
        AbModule::cyclic(self.ring, self.p, self.k).expect("regular cyclic module")
    }

    fn simples(&self) -> Vec<AbModule> {
        vec![AbModule::cyclic(self.ring, self.p, 1).expect("unique simple")]
    }

    fn projective_cover_of_simple(&self, _s: &AbModule) -> Option<AbModule> {
        Some(self.regular())
    }

    fn hom_is_zero(&self, m: &AbModule, n: &AbModule) -> Result<bool, EngineError> {
        Ok(hom(m, n)?.is_trivial())
    }

    fn supports_envelopes(&self) -> bool {
        true
    }

    fn is_hereditary(&self) -> bool {
        self.k == 1
    }

    fn is_self_injective(&self) -> bool {
        true
    }

    fn is_semiperfect(&self) -> bool {
        true
    }

    fn subprojective(
        &self,
        m: &AbModule,
        n: &AbModule,
        redundant_cover: bool,
    ) -> Result<bool, EngineError> {
        let pres = projective_presentation(n, redundant_cover);
        ab_postcomposition_onto(m, &pres.matrix, &pres.cover, n, self.ring)
    }

    fn subinjective(&self, m: &AbModule, n: &AbModule) -> Result<bool, EngineError> {
        let env = injective_envelope(n)?;
        ab_restriction_onto(m, &env.matrix, &env.envelope, n, self.ring)
    }

    fn submodule_classes(&self, m: &AbModule) -> Option<Vec<AbModule>> {
        submodule_classes(m)
    }

    fn extra_poor_candidates(&self, _kind: Kind) -> Vec<AbModule> {
        Vec::new()
    }
}

/// Representations of a type-A line quiver over F_q.
#[derive(Debug, Clone)]
pub struct QuiverCategory {
    q: LineQuiver,
    indecs: Vec<QuiverModuleExpr>,
}

impl QuiverCategory {
    pub fn new(q: LineQuiver) -> Self {
        let n = q.vertex_count();
        let indecs = q
            .indecomposables()
            .into_iter()
            .map(|iv| QuiverModuleExpr::single(n, iv))
            .collect();
        QuiverCategory { q, indecs }
    }

    pub fn quiver(&self) -> &LineQuiver {
        &self.q
    }

    /// The sum of all indecomposable injectives.
    pub fn injective_cogenerator(&self) -> QuiverModuleExpr {
        let n = self.q.vertex_count();
        let parts = (1..=n).map(|v| self.q.injective(v)).collect();
        QuiverModuleExpr::from_parts(n, parts)
    }

    /// Coordinates of postcomposition with `g` between two hom spaces,
    /// followed by the surjectivity test (a rank comparison over F_q).
    fn maps_onto(
        &self,
        source_basis: &quiver::HomSpace,
        target_basis: &quiver::HomSpace,
        compose: impl Fn(&quiver::RepMap) -> Result<quiver::RepMap, EngineError>,
    ) -> Result<bool, EngineError> {
        let rows = target_basis.dim();
        let mut columns = Vec::with_capacity(source_basis.dim());
        for b in &source_basis.basis {
            columns.push(target_basis.coordinates_of(&compose(b)?));
        }
        let matrix = ExactMatrix::from_fn(self.q.field(), rows, columns.len(), |i, j| {
            columns[j][i].clone()
        });
        Ok(rank(&matrix)? == rows)
    }
}

impl ModuleCategory for QuiverCategory {
    type Mod = QuiverModuleExpr;

    fn family_name(&self) -> &'static str {
        "quiver"
    }

    fn ring_spec(&self) -> String {
        self.q.spec_string()
    }

    fn universe_id(&self) -> String {
        self.q.spec_string()
    }

    fn indecomposables(&self) -> &[QuiverModuleExpr] {
        &self.indecs
    }

    fn zero(&self) -> QuiverModuleExpr {
        QuiverModuleExpr::zero(self.q.vertex_count())
    }

    fn parse(&self, literal: &str) -> Result<QuiverModuleExpr, EngineError> {
        Ok(parse_expr(&self.q, literal)?)
    }

    fn sum_of(&self, parts: &[QuiverModuleExpr]) -> QuiverModuleExpr {
        let mut acc = self.zero();
        for p in parts {
            acc = acc.direct_sum(p).expect("universe parts share the quiver");
        }
        acc
    }

    fn indec_parts(&self, m: &QuiverModuleExpr) -> Vec<QuiverModuleExpr> {
        let n = self.q.vertex_count();
        m.parts().iter().map(|&iv| QuiverModuleExpr::single(n, iv)).collect()
    }

    fn summands(&self, m: &QuiverModuleExpr) -> Vec<QuiverModuleExpr> {
        m.summands()
    }

    fn is_summand(&self, part: &QuiverModuleExpr, of: &QuiverModuleExpr) -> bool {
        of.has_summand(part)
    }

    fn is_projective(&self, m: &QuiverModuleExpr) -> bool {
        m.parts().iter().all(|iv| self.q.is_projective_interval(iv))
    }

    fn is_injective(&self, m: &QuiverModuleExpr) -> bool {
        m.parts().iter().all(|iv| self.q.is_injective_interval(iv))
    }

    fn regular(&self) -> QuiverModuleExpr {
        self.q.regular_module()
    }

    fn simples(&self) -> Vec<QuiverModuleExpr> {
        let n = self.q.vertex_count();
        (1..=n).map(|v| QuiverModuleExpr::single(n, self.q.simple(v))).collect()
    }

    fn projective_cover_of_simple(&self, s: &QuiverModuleExpr) -> Option<QuiverModuleExpr> {
        let v = s.parts().first().map(|iv| iv.lo())?;
        Some(QuiverModuleExpr::single(self.q.vertex_count(), self.q.projective(v)))
    }

    fn hom_is_zero(&self, m: &QuiverModuleExpr, n: &QuiverModuleExpr) -> Result<bool, EngineError> {
        Ok(quiver::hom_dim(&self.q, m, n) == 0)
    }

    fn supports_envelopes(&self) -> bool {
        true
    }

    fn is_hereditary(&self) -> bool {
        true
    }

    fn is_self_injective(&self) -> bool {
        false
    }

    fn is_semiperfect(&self) -> bool {
        true
    }

    fn subprojective(
        &self,
        m: &QuiverModuleExpr,
        n: &QuiverModuleExpr,
        redundant_cover: bool,
    ) -> Result<bool, EngineError> {
        let q = &self.q;
        let cover = if redundant_cover {
            quiver::projective_cover_redundant(q, n)
        } else {
            quiver::projective_cover(q, n)
        };
        let m_rep = materialize(q, m);
        let a = hom_space(q, &m_rep, &materialize(q, &cover.hull));
        let b = hom_space(q, &m_rep, &materialize(q, n));
        self.maps_onto(&a, &b, |phi| {
            Ok(quiver::compose_rep_maps(&cover.map, phi)?)
        })
    }

    fn subinjective(&self, m: &QuiverModuleExpr, n: &QuiverModuleExpr) -> Result<bool, EngineError> {
        let q = &self.q;
        let env = quiver::injective_envelope(q, n);
        let m_rep = materialize(q, m);
        let a = hom_space(q, &materialize(q, &env.hull), &m_rep);
        let b = hom_space(q, &materialize(q, n), &m_rep);
        self.maps_onto(&a, &b, |psi| {
            Ok(quiver::compose_rep_maps(psi, &env.map)?)
        })
    }

    fn submodule_classes(&self, m: &QuiverModuleExpr) -> Option<Vec<QuiverModuleExpr>> {
        match m.parts() {
            [single] => Some(quiver::subrep_classes(&self.q, single)),
            _ => None,
        }
    }

    fn extra_poor_candidates(&self, kind: Kind) -> Vec<QuiverModuleExpr> {
        match kind {
            Kind::Sp => Vec::new(),
            Kind::Si => tau_expr(&self.q, &self.injective_cogenerator())
                .map(|t| vec![t])
                .unwrap_or_default(),
        }
    }

    fn tilting_torsion_data(&self) -> Option<crate::engine::TorsionData> {
        let e = self.injective_cogenerator();
        let tau_e = tau_expr(&self.q, &e).ok()?;
        Some(crate::engine::TorsionData {
            e_literal: e.to_string(),
            tau_e_literal: tau_e.to_string(),
            is_tilting: quiver::is_tilting(&self.q, &e),
            gen_bits: quiver::gen_class(&self.q, &e),
            cogen_bits: quiver::cogen_class(&self.q, &tau_e),
        })
    }
}
