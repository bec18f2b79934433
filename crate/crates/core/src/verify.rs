//! Registered verification suites S1–S16.
//!
//! Each suite quantifies a structural statement over the finite universe and
//! reports one result per checked instance; failing instances carry the
//! module literals needed to replay them. Suites never abort early, and a
//! suite that does not apply to a family reports a single skipped-as-pass
//! entry saying why.
//!
//! Exhaustive quantification is used when the universe is small; larger
//! universes fall back to deterministic, evenly spaced samples (no
//! randomness), so repeated runs check identical instances.

use crate::engine::{
    all_supports, domain, hom_vanishing_set, injective_bits, is_basic_sp,
    is_strongly_soc_projective, is_subinjective, is_subprojective, membership, projective_bits,
    sample_evenly, support_module, DomainSet, EngineError, Kind, ModuleCategory,
};
use crate::profile::{build_profile, maximal_members, poor_modules};
use rayon::prelude::*;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SuiteId(pub u8);

impl SuiteId {
    pub fn all() -> Vec<SuiteId> {
        (1..=16).map(SuiteId).collect()
    }

    pub fn parse(s: &str) -> Result<SuiteId, EngineError> {
        let t = s.trim().to_ascii_uppercase();
        let num = t.strip_prefix('S').unwrap_or(&t);
        match num.parse::<u8>() {
            Ok(n) if (1..=16).contains(&n) => Ok(SuiteId(n)),
            _ => Err(EngineError::Parse(s.to_string(), "expected S1..S16".into())),
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub id: String,
    pub instance: String,
    pub pass: bool,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone)]
pub struct VerdictReport {
    pub suite: String,
    pub ring: String,
    pub universe_id: String,
    pub universe: Vec<String>,
    pub checks: Vec<CheckResult>,
}

impl VerdictReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

fn ok(id: &str, instance: impl Into<String>) -> CheckResult {
    CheckResult { id: id.into(), instance: instance.into(), pass: true, counterexample: None }
}

fn violation(id: &str, instance: impl Into<String>, counterexample: String) -> CheckResult {
    CheckResult {
        id: id.into(),
        instance: instance.into(),
        pass: false,
        counterexample: Some(counterexample),
    }
}

fn check(id: &str, instance: impl Into<String>, pass: bool, detail: String) -> CheckResult {
    if pass {
        ok(id, instance)
    } else {
        violation(id, instance, detail)
    }
}

fn skipped(id: &str, why: &str) -> CheckResult {
    ok(id, format!("skipped: {why}"))
}

/// Kinds available to a family: sp always, si only with envelopes.
fn kinds<C: ModuleCategory>(cat: &C) -> Vec<Kind> {
    if cat.supports_envelopes() {
        vec![Kind::Sp, Kind::Si]
    } else {
        vec![Kind::Sp]
    }
}

/// Deterministic member selection: every support of size <= 2, plus an even
/// sample of the larger ones.
fn member_supports<C: ModuleCategory>(cat: &C, large_cap: usize) -> Vec<Vec<usize>> {
    let supports = all_supports(cat.indecomposables().len());
    let (small, large): (Vec<_>, Vec<_>) = supports.into_iter().partition(|s| s.len() <= 2);
    let mut out = small;
    out.extend(sample_evenly(&large, large_cap).into_iter().cloned());
    out
}

fn indec_domains<C: ModuleCategory>(
    cat: &C,
    kind: Kind,
) -> Result<Vec<DomainSet>, EngineError> {
    cat.indecomposables()
        .par_iter()
        .map(|m| domain(cat, kind, m))
        .collect()
}

/// S1: the domain of a direct sum is the intersection of its summands'
/// domains, recomputed from scratch on both sides; repeated summands do not
/// change the domain.
fn s1<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    let mut out = Vec::new();
    for kind in kinds(cat) {
        let base = indec_domains(cat, kind)?;
        let supports = member_supports(cat, 12);
        let results: Vec<CheckResult> = supports
            .par_iter()
            .map(|sup| -> Result<CheckResult, EngineError> {
                let m = support_module(cat, sup);
                let direct = domain(cat, kind, &m)?;
                let mut meet = DomainSet::full(cat.universe_id(), base.len());
                for &i in sup {
                    meet = meet.and(&base[i]);
                }
                Ok(check(
                    "S1",
                    format!("{kind}: domain(⊕ support {sup:?}) = ∩ of summand domains"),
                    direct == meet,
                    format!("m = {m}; direct domain differs from the intersection"),
                ))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.extend(results);
        // Multiplicity spot check: doubling a summand leaves the domain alone.
        let doubled: Vec<Vec<usize>> = member_supports(cat, 0)
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect();
        for sup in sample_evenly(&doubled, 10) {
            let m = support_module(cat, sup);
            let twice = cat.sum_of(&[m.clone(), cat.indecomposables()[sup[0]].clone()]);
            let a = domain(cat, kind, &m)?;
            let b = domain(cat, kind, &twice)?;
            out.push(check(
                "S1",
                format!("{kind}: doubling a summand of {m} keeps the domain"),
                a == b,
                format!("m = {m}; m' = {twice}; domains differ"),
            ));
        }
    }
    Ok(out)
}

/// S2: membership of a sum forces membership of every summand, verified by
/// direct decisions on both sides.
fn s2<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    let indecs = cat.indecomposables();
    let mut out = Vec::new();
    for kind in kinds(cat) {
        let m_list = member_supports(cat, 4);
        let pairs: Vec<(usize, usize)> = (0..indecs.len())
            .flat_map(|i| (i..indecs.len()).map(move |j| (i, j)))
            .collect();
        for m_sup in sample_evenly(&m_list, 14) {
            let m = support_module(cat, m_sup);
            for &(i, j) in sample_evenly(&pairs, 12) {
                let n = cat.sum_of(&[indecs[i].clone(), indecs[j].clone()]);
                if membership(cat, kind, &m, &n)? {
                    let pi = membership(cat, kind, &m, &indecs[i])?;
                    let pj = membership(cat, kind, &m, &indecs[j])?;
                    out.push(check(
                        "S2",
                        format!("{kind}: summands of {n} stay in domain({m})"),
                        pi && pj,
                        format!("m = {m}; n = {n}; a summand escapes the domain"),
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// S3: finite sums of domain members stay in the domain, by direct decision.
fn s3<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    let indecs = cat.indecomposables();
    let mut out = Vec::new();
    for kind in kinds(cat) {
        let m_list = member_supports(cat, 4);
        let pairs: Vec<(usize, usize)> = (0..indecs.len())
            .flat_map(|i| (i..indecs.len()).map(move |j| (i, j)))
            .collect();
        for m_sup in sample_evenly(&m_list, 14) {
            let m = support_module(cat, m_sup);
            for &(i, j) in sample_evenly(&pairs, 12) {
                let pi = membership(cat, kind, &m, &indecs[i])?;
                let pj = membership(cat, kind, &m, &indecs[j])?;
                if pi && pj {
                    let n = cat.sum_of(&[indecs[i].clone(), indecs[j].clone()]);
                    out.push(check(
                        "S3",
                        format!("{kind}: {n} joins domain({m}) with its summands"),
                        membership(cat, kind, &m, &n)?,
                        format!("m = {m}; n = {n}; sum of members left the domain"),
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// S4: the intersection of all domains is exactly the projectives (sp) or
/// injectives (si).
fn s4<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    let mut out = Vec::new();
    for kind in kinds(cat) {
        let base = indec_domains(cat, kind)?;
        let mut meet = DomainSet::full(cat.universe_id(), base.len());
        for d in &base {
            meet = meet.and(d);
        }
        let target = match kind {
            Kind::Sp => projective_bits(cat),
            Kind::Si => injective_bits(cat),
        };
        out.push(check(
            "S4",
            format!("{kind}: ∩ of all indecomposable domains = trivially-relative class"),
            meet == target,
            format!("intersection bits {:?} differ from {:?}", meet.bits, target.bits),
        ));
        if cat.indecomposables().len() <= 5 {
            // Small universes: intersect over every nonzero square-free sum.
            let mut meet_all = DomainSet::full(cat.universe_id(), base.len());
            for sup in all_supports(base.len()).into_iter().filter(|s| !s.is_empty()) {
                let m = support_module(cat, &sup);
                meet_all = meet_all.and(&domain(cat, kind, &m)?);
            }
            out.push(check(
                "S4",
                format!("{kind}: ∩ over all nonzero square-free sums matches"),
                meet_all == target,
                "exhaustive intersection disagrees with the declared class".into(),
            ));
        }
    }
    Ok(out)
}

/// S5: self-membership characterizes projectivity (sp) and injectivity
/// (si); the verdict is independent of the chosen presentation.
fn s5<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    let mut out = Vec::new();
    let members = member_supports(cat, 8);
    for sup in &members {
        let m = support_module(cat, sup);
        let got = is_subprojective(cat, &m, &m)?;
        out.push(check(
            "S5",
            format!("sp: {m} in its own domain iff projective"),
            got == cat.is_projective(&m),
            format!("m = {m}; self-subprojectivity {got} vs projectivity {}", cat.is_projective(&m)),
        ));
    }
    if cat.supports_envelopes() {
        for sup in sample_evenly(&members, 20) {
            let m = support_module(cat, sup);
            let got = is_subinjective(cat, &m, &m)?;
            out.push(check(
                "S5",
                format!("si: {m} in its own domain iff injective"),
                got == cat.is_injective(&m),
                format!("m = {m}; self-subinjectivity {got} vs injectivity {}", cat.is_injective(&m)),
            ));
        }
    }
    // Presentation independence on 20 evenly spaced pairs.
    let indecs = cat.indecomposables();
    let pairs: Vec<(Vec<usize>, usize)> = members
        .iter()
        .flat_map(|m| (0..indecs.len()).map(move |j| (m.clone(), j)))
        .collect();
    for (m_sup, j) in sample_evenly(&pairs, 20) {
        let m = support_module(cat, m_sup);
        let n = &indecs[*j];
        let plain = cat.subprojective(&m, n, false)?;
        let redundant = cat.subprojective(&m, n, true)?;
        out.push(check(
            "S5",
            format!("presentation independence for ({m}, {n})"),
            plain == redundant,
            format!("m = {m}; n = {n}; cover verdict {plain} vs redundant-cover {redundant}"),
        ));
    }
    Ok(out)
}

/// S6: hom vanishing is sufficient for membership, in both directions.
fn s6<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    let indecs = cat.indecomposables();
    let mut out = Vec::new();
    let members = member_supports(cat, 6);
    for kind in kinds(cat) {
        for m_sup in sample_evenly(&members, 16) {
            let m = support_module(cat, m_sup);
            for n in indecs {
                let trivial = match kind {
                    Kind::Sp => cat.hom_is_zero(&m, n)?,
                    Kind::Si => cat.hom_is_zero(n, &m)?,
                };
                if trivial {
                    out.push(check(
                        "S6",
                        format!("{kind}: hom-vanishing pair ({m}, {n}) is a member"),
                        membership(cat, kind, &m, n)?,
                        format!("m = {m}; n = {n}; vanishing hom but not in domain"),
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// S7: a trivial Hom(m, R) certifies that the domain is the hom-vanishing
/// class; adding a copy of R never changes a domain.
fn s7<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    let mut out = Vec::new();
    let members = member_supports(cat, 6);
    for m_sup in sample_evenly(&members, 16) {
        let m = support_module(cat, m_sup);
        if is_basic_sp(cat, &m)? {
            let dom = domain(cat, Kind::Sp, &m)?;
            let hv = hom_vanishing_set(cat, Kind::Sp, &m)?;
            out.push(check(
                "S7",
                format!("basic certificate for {m} makes the domain hom-determined"),
                dom == hv,
                format!("m = {m}; domain and hom-vanishing set differ"),
            ));
        }
    }
    for m_sup in sample_evenly(&members, 4) {
        let m = support_module(cat, m_sup);
        let padded = cat.sum_of(&[m.clone(), cat.regular()]);
        let a = domain(cat, Kind::Sp, &m)?;
        let b = domain(cat, Kind::Sp, &padded)?;
        out.push(check(
            "S7",
            format!("adding the regular module to {m} keeps the domain"),
            a == b,
            format!("m = {m}; m ⊕ R = {padded}; domains differ"),
        ));
    }
    Ok(out)
}

/// S8: over a self-injective ring the regular module sees every nonzero
/// module from both sides, so only the zero module carries a basic
/// certificate and the only hom-determined domain is everything.
fn s8<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    if !cat.is_self_injective() {
        return Ok(vec![skipped("S8", "ring is not self-injective")]);
    }
    let mut out = Vec::new();
    let r = cat.regular();
    for sup in all_supports(cat.indecomposables().len()) {
        let m = support_module(cat, &sup);
        if sup.is_empty() {
            let dom = domain(cat, Kind::Sp, &m)?;
            out.push(check(
                "S8",
                "the zero module's basic portfolio is the whole universe",
                is_basic_sp(cat, &m)? && dom.is_full(),
                "domain of 0 is not everything".into(),
            ));
            continue;
        }
        let into_r = cat.hom_is_zero(&m, &r)?;
        let from_r = cat.hom_is_zero(&r, &m)?;
        out.push(check(
            "S8",
            format!("{m} admits maps to and from the regular module"),
            !into_r && !from_r,
            format!("m = {m}; Hom(m,R)=0: {into_r}; Hom(R,m)=0: {from_r}"),
        ));
    }
    Ok(out)
}

/// S9: over hereditary families every enumerated submodule of a domain
/// member stays inside; over a non-hereditary chain ring the closure must
/// visibly fail, and the counterexample is reported.
fn s9<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    let indecs = cat.indecomposables();
    let mut out = Vec::new();
    if cat.is_hereditary() {
        let members = member_supports(cat, 4);
        for m_sup in sample_evenly(&members, 12) {
            let m = support_module(cat, m_sup);
            let dom = domain(cat, Kind::Sp, &m)?;
            for (idx, n) in indecs.iter().enumerate() {
                if !dom.bits[idx] {
                    continue;
                }
                let Some(classes) = cat.submodule_classes(n) else { continue };
                for sub in classes {
                    out.push(check(
                        "S9",
                        format!("submodule {sub} of {n} stays in domain({m})"),
                        is_subprojective(cat, &m, &sub)?,
                        format!("m = {m}; n = {n}; submodule = {sub} escaped the domain"),
                    ));
                }
            }
        }
        out.push(ok("S9", "hereditary family: closure verified on enumerated instances"));
    } else {
        // Non-hereditary: search for the guaranteed counterexample.
        let mut found: Option<String> = None;
        'outer: for m in indecs {
            let dom = domain(cat, Kind::Sp, m)?;
            for (idx, n) in indecs.iter().enumerate() {
                if !dom.bits[idx] {
                    continue;
                }
                let Some(classes) = cat.submodule_classes(n) else { continue };
                for sub in classes {
                    if !is_subprojective(cat, m, &sub)? {
                        found = Some(format!("m = {m}; n = {n}; submodule = {sub}"));
                        break 'outer;
                    }
                }
            }
        }
        out.push(check(
            "S9",
            "non-hereditary ring: submodule closure fails somewhere",
            found.is_some(),
            "no closure violation found although the ring is not hereditary".into(),
        ));
        if let Some(instance) = found {
            out.push(ok("S9", format!("closure violation exhibited: {instance}")));
        }
    }
    Ok(out)
}

/// S10: chain rings have no middle class, for either notion.
fn s10<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    if !cat.is_self_injective() {
        return Ok(vec![skipped("S10", "only chain rings are in scope")]);
    }
    let mut out = Vec::new();
    for kind in kinds(cat) {
        let profile = build_profile(cat, kind)?;
        let expected = if cat.indecomposables().len() >= 2 { 2 } else { 1 };
        out.push(check(
            "S10",
            format!("{kind}-profile has exactly {expected} classes"),
            profile.classes.len() == expected,
            format!("found {} classes", profile.classes.len()),
        ));
        let target = match kind {
            Kind::Sp => projective_bits(cat),
            Kind::Si => injective_bits(cat),
        };
        for m in cat.indecomposables() {
            let d = domain(cat, kind, m)?;
            out.push(check(
                "S10",
                format!("{kind}: {m} is trivially-relative or poor"),
                d.is_full() || d == target,
                format!("m = {m}; domain is a middle class: {:?}", d.bits),
            ));
        }
    }
    Ok(out)
}

/// S11: over a semiperfect ring, a simple inside a domain forces either hom
/// vanishing or the simple's projective cover as a summand.
fn s11<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    if !cat.is_semiperfect() {
        return Ok(vec![skipped("S11", "family is not semiperfect")]);
    }
    let mut out = Vec::new();
    let members = member_supports(cat, 6);
    for m_sup in sample_evenly(&members, 20) {
        let m = support_module(cat, m_sup);
        for s in cat.simples() {
            if !is_subprojective(cat, &m, &s)? {
                continue;
            }
            let cover = cat
                .projective_cover_of_simple(&s)
                .expect("semiperfect families cover their simples");
            let lifted = cat.hom_is_zero(&m, &s)? || cat.is_summand(&cover, &m);
            out.push(check(
                "S11",
                format!("simple {s} in domain({m}) forces vanishing or the cover {cover}"),
                lifted,
                format!("m = {m}; s = {s}; P(s) = {cover}; neither condition holds"),
            ));
        }
    }
    Ok(out)
}

/// S12: strong soc-projectivity coincides with projectivity on every family
/// in scope.
fn s12<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    let mut out = Vec::new();
    let members = member_supports(cat, 6);
    for m_sup in sample_evenly(&members, 24) {
        let m = support_module(cat, m_sup);
        let ssp = is_strongly_soc_projective(cat, &m)?;
        out.push(check(
            "S12",
            format!("{m} strongly soc-projective iff projective"),
            ssp == cat.is_projective(&m),
            format!("m = {m}; soc-projectivity {ssp} vs projectivity {}", cat.is_projective(&m)),
        ));
    }
    Ok(out)
}

/// S13: the injective cogenerator is tilting; its generated class is the
/// injectives, the translate cogenerates the complement, and the translate
/// is si-poor.
fn s13<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    let Some(data) = cat.tilting_torsion_data() else {
        return Ok(vec![skipped("S13", "no tilting cogenerator data for this family")]);
    };
    let mut out = Vec::new();
    let e = cat.parse(&data.e_literal)?;
    let tau_e = cat.parse(&data.tau_e_literal)?;
    let inj = injective_bits(cat);
    out.push(check(
        "S13",
        format!("E = {e} is tilting"),
        data.is_tilting,
        "the injective cogenerator is not tilting".into(),
    ));
    out.push(check(
        "S13",
        "Gen(E) consists of the injectives",
        data.gen_bits == inj.bits,
        format!("Gen(E) bits {:?} vs injectives {:?}", data.gen_bits, inj.bits),
    ));
    let si_dom = domain(cat, Kind::Si, &tau_e)?;
    out.push(check(
        "S13",
        format!("τE = {tau_e} is si-poor"),
        si_dom == inj,
        format!("si-domain bits {:?} vs injectives {:?}", si_dom.bits, inj.bits),
    ));
    let partition = data
        .gen_bits
        .iter()
        .zip(&data.cogen_bits)
        .all(|(&g, &c)| g ^ c);
    out.push(check(
        "S13",
        "Gen(E) and Cogen(τE) partition the indecomposables",
        partition,
        format!("gen {:?} cogen {:?}", data.gen_bits, data.cogen_bits),
    ));
    for (idx, n) in cat.indecomposables().iter().enumerate() {
        let torsion_side = cat.hom_is_zero(n, &tau_e)?;
        out.push(check(
            "S13",
            format!("torsion class test Hom({n}, τE) = 0"),
            data.gen_bits[idx] == torsion_side,
            format!("n = {n}; Gen membership {} vs hom-vanishing {torsion_side}", data.gen_bits[idx]),
        ));
        let free_side = cat.hom_is_zero(&e, n)?;
        out.push(check(
            "S13",
            format!("torsion-free class test Hom(E, {n}) = 0"),
            data.cogen_bits[idx] == free_side,
            format!("n = {n}; Cogen membership {} vs hom-vanishing {free_side}", data.cogen_bits[idx]),
        ));
    }
    for (i, t) in cat.indecomposables().iter().enumerate() {
        for (j, f) in cat.indecomposables().iter().enumerate() {
            if data.gen_bits[i] && data.cogen_bits[j] {
                out.push(check(
                    "S13",
                    format!("no maps from torsion {t} to torsion-free {f}"),
                    cat.hom_is_zero(t, f)?,
                    format!("t = {t}; f = {f}; unexpected nonzero hom"),
                ));
            }
        }
    }
    Ok(out)
}

/// S14: over hereditary families with envelopes, si-domains are determined
/// by the non-injective part and are hom-characterized.
fn s14<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    if !(cat.is_hereditary() && cat.supports_envelopes()) {
        return Ok(vec![skipped("S14", "needs a hereditary family with envelopes")]);
    }
    let mut out = Vec::new();
    let members = member_supports(cat, 6);
    for m_sup in sample_evenly(&members, 16) {
        let m = support_module(cat, m_sup);
        let reduced_parts: Vec<C::Mod> = cat
            .indec_parts(&m)
            .into_iter()
            .filter(|p| !cat.is_injective(p))
            .collect();
        let reduced = cat.sum_of(&reduced_parts);
        let full = domain(cat, Kind::Si, &m)?;
        let red = domain(cat, Kind::Si, &reduced)?;
        out.push(check(
            "S14",
            format!("si-domain of {m} equals that of its non-injective part {reduced}"),
            full == red,
            format!("m = {m}; reduced = {reduced}; si-domains differ"),
        ));
        let hv = hom_vanishing_set(cat, Kind::Si, &reduced)?;
        out.push(check(
            "S14",
            format!("si-domain of {m} is the class with no maps into {reduced}"),
            full == hv,
            format!("m = {m}; si-domain is not hom-determined by {reduced}"),
        ));
    }
    Ok(out)
}

/// S15: the generic sp-poor witness generates the torsion pair: it has no
/// maps to the regular module and its hom-vanishing class is exactly the
/// projectives.
fn s15<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    if !(cat.is_hereditary() && cat.is_semiperfect()) {
        return Ok(vec![skipped("S15", "needs a hereditary semiperfect family")]);
    }
    let nonproj: Vec<C::Mod> = cat
        .indecomposables()
        .iter()
        .filter(|m| !cat.is_projective(m))
        .cloned()
        .collect();
    if nonproj.is_empty() {
        return Ok(vec![skipped("S15", "every indecomposable is projective")]);
    }
    let k = cat.sum_of(&nonproj);
    let mut out = Vec::new();
    let proj = projective_bits(cat);
    out.push(check(
        "S15",
        format!("K = {k} is sp-poor"),
        domain(cat, Kind::Sp, &k)? == proj,
        format!("K = {k}; domain is not exactly the projectives"),
    ));
    out.push(check(
        "S15",
        "K admits no maps to the regular module",
        cat.hom_is_zero(&k, &cat.regular())?,
        format!("K = {k}; Hom(K, R) is nonzero"),
    ));
    let hv = hom_vanishing_set(cat, Kind::Sp, &k)?;
    out.push(check(
        "S15",
        "the hom-vanishing class of K is the projectives",
        hv == proj,
        format!("K = {k}; hom-vanishing bits {:?} vs projectives {:?}", hv.bits, proj.bits),
    ));
    Ok(out)
}

/// S16: per-family regression of the worked examples.
fn s16<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    match cat.family_name() {
        "integers" => s16_integers(cat),
        "chain" => s16_chain(cat),
        "quiver" => s16_quiver(cat),
        other => Ok(vec![skipped("S16", &format!("no regression data for {other}"))]),
    }
}

fn s16_integers<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    let mut out = Vec::new();
    // Closed-form oracle: membership is torsion-prime disjointness.
    let members = member_supports(cat, 12);
    for m_sup in &members {
        let m = support_module(cat, m_sup);
        for n in cat.indecomposables() {
            let got = is_subprojective(cat, &m, n)?;
            let want = cat
                .closed_form_sp_oracle(&m, n)
                .expect("the integer family has a closed form");
            out.push(check(
                "S16",
                format!("closed form agrees on ({m}, {n})"),
                got == want,
                format!("m = {m}; n = {n}; engine {got} vs torsion-prime oracle {want}"),
            ));
        }
    }
    // Quotient non-closure: the free module sees Z/2 from its domain, its
    // quotient does not.
    if let (Ok(m), Ok(free)) = (cat.parse("Z/2"), cat.parse("Z")) {
        let in_dom = is_subprojective(cat, &m, &free)?;
        let self_dom = is_subprojective(cat, &m, &m)?;
        out.push(check(
            "S16",
            "quotient non-closure: Z in domain(Z/2) but Z/2 = Z/2Z is not",
            in_dom && !self_dom,
            format!("Z member: {in_dom}; quotient member: {self_dom}"),
        ));
    }
    if let Ok(m) = cat.parse("Z + Z/4") {
        out.push(check(
            "S16",
            "Z ⊕ Z/4 is not strongly soc-projective",
            !is_strongly_soc_projective(cat, &m)?,
            "a torsion module passed the soc-projectivity screen".into(),
        ));
    }
    // Subinjectivity stays rejected with a specific error.
    let zero = cat.zero();
    out.push(check(
        "S16",
        "subinjectivity over the integers reports the missing envelopes",
        matches!(
            is_subinjective(cat, &zero, &zero),
            Err(EngineError::UnsupportedEnvelope(_))
        ),
        "expected an UnsupportedEnvelope error".into(),
    ));
    // The sum of all non-projective indecomposables is sp-poor.
    let poor = poor_modules(cat, Kind::Sp)?;
    let nonproj: Vec<C::Mod> = cat
        .indecomposables()
        .iter()
        .filter(|m| !cat.is_projective(m))
        .cloned()
        .collect();
    let x = cat.sum_of(&nonproj);
    out.push(check(
        "S16",
        format!("⊕ of non-projective indecomposables ({x}) is sp-poor"),
        poor.contains(&x),
        format!("X = {x}; not reported sp-poor"),
    ));
    Ok(out)
}

fn s16_chain<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    let mut out = Vec::new();
    let indecs = cat.indecomposables();
    let k = indecs.len();
    // Every non-projective indecomposable is sp-poor; the regular module has
    // full domain.
    let proj = projective_bits(cat);
    for m in indecs {
        let d = domain(cat, Kind::Sp, m)?;
        if cat.is_projective(m) {
            out.push(check(
                "S16",
                format!("projective {m} has full domain"),
                d.is_full(),
                format!("m = {m}; domain not full"),
            ));
        } else {
            out.push(check(
                "S16",
                format!("non-projective {m} is sp-poor"),
                d == proj,
                format!("m = {m}; domain is not exactly the projectives"),
            ));
        }
    }
    if k >= 2 {
        let simple = &indecs[0];
        let next = &indecs[1];
        if !cat.is_projective(next) {
            out.push(check(
                "S16",
                format!("{simple} is not {next}-subprojective"),
                !is_subprojective(cat, simple, next)?,
                "the simple lifted along a non-projective target".into(),
            ));
        }
        out.push(check(
            "S16",
            format!("{next} has maps to the regular module (no basic certificate)"),
            !is_basic_sp(cat, next)?,
            "unexpected basic certificate over a self-injective ring".into(),
        ));
        let m = &indecs[k - 2];
        out.push(check(
            "S16",
            format!("{m} is not {simple}-subinjective"),
            !is_subinjective(cat, m, simple)?,
            "extension along the envelope unexpectedly exists".into(),
        ));
    }
    for kind in kinds(cat) {
        let profile = build_profile(cat, kind)?;
        out.push(check(
            "S16",
            format!("{kind}-profile has two classes"),
            profile.classes.len() == 2.min(k + 1),
            format!("classes: {}", profile.classes.len()),
        ));
    }
    Ok(out)
}

fn s16_quiver<C: ModuleCategory>(cat: &C) -> Result<Vec<CheckResult>, EngineError> {
    let mut out = Vec::new();
    let spec = cat.ring_spec();
    let shape = spec.split(";q=").next().unwrap_or("").to_string();
    // Golden anchors per quiver shape: projective and injective dimension
    // strings (vertex order) and the translate of the injective cogenerator.
    let anchors: Option<(&[&str], &[&str], &str)> = match shape.as_str() {
        "A2:>" => Some((&["11", "01"], &["10", "11"], "01")),
        "A3:<>" => Some((&["100", "111", "001"], &["110", "010", "011"], "001+100+111")),
        "A4:><>" => Some((
            &["1100", "0100", "0111", "0001"],
            &["1000", "1110", "0010", "0011"],
            "0110+0111+1100+1111",
        )),
        _ => None,
    };
    let data = cat.tilting_torsion_data();
    if let (Some((p_table, i_table, tau_e_want)), Some(data)) = (anchors, data) {
        let projs: Vec<String> = cat
            .indecomposables()
            .iter()
            .filter(|m| cat.is_projective(m))
            .map(|m| m.to_string())
            .collect();
        let mut p_want: Vec<String> = p_table.iter().map(|s| s.to_string()).collect();
        p_want.sort();
        let mut p_got = projs;
        p_got.sort();
        out.push(check(
            "S16",
            "projective indecomposables match the table",
            p_got == p_want,
            format!("got {p_got:?}, want {p_want:?}"),
        ));
        let injs: Vec<String> = cat
            .indecomposables()
            .iter()
            .filter(|m| cat.is_injective(m))
            .map(|m| m.to_string())
            .collect();
        let mut i_want: Vec<String> = i_table.iter().map(|s| s.to_string()).collect();
        i_want.sort();
        let mut i_got = injs;
        i_got.sort();
        out.push(check(
            "S16",
            "injective indecomposables match the table",
            i_got == i_want,
            format!("got {i_got:?}, want {i_want:?}"),
        ));
        out.push(check(
            "S16",
            "translate of the injective cogenerator matches",
            data.tau_e_literal == tau_e_want,
            format!("got {}, want {tau_e_want}", data.tau_e_literal),
        ));
        out.push(check(
            "S16",
            "the injective cogenerator is tilting",
            data.is_tilting,
            "tilting test failed".into(),
        ));
        let tau_e = cat.parse(&data.tau_e_literal)?;
        let si_dom = domain(cat, Kind::Si, &tau_e)?;
        out.push(check(
            "S16",
            "τE is si-poor relative to the universe",
            si_dom == injective_bits(cat),
            "si-domain of τE is not exactly the injectives".into(),
        ));
        // A non-injective target outside the si-domain, when one exists.
        if let Some((idx, witness)) = cat
            .indecomposables()
            .iter()
            .enumerate()
            .find(|(_, m)| !cat.is_injective(m))
        {
            out.push(check(
                "S16",
                format!("τE is not {witness}-subinjective"),
                !si_dom.bits[idx],
                format!("n = {witness}; unexpected si-membership"),
            ));
        }
    } else {
        out.push(skipped("S16", "no golden table for this quiver shape"));
    }
    if shape == "A2:>" {
        // The simple injective non-projective module is maximally
        // subprojective with the not-a-summand characterization.
        let profile = build_profile(cat, Kind::Sp)?;
        let maxes = maximal_members(cat, &profile)?;
        out.push(check(
            "S16",
            "S(1) is a flagged maximal member over A2",
            maxes.iter().any(|m| m.module == "10" && m.summand_characterized),
            format!("maximal members: {maxes:?}"),
        ));
    }
    Ok(out)
}

pub fn run_suite<C: ModuleCategory>(cat: &C, id: SuiteId) -> Result<VerdictReport, EngineError> {
    let checks = match id.0 {
        1 => s1(cat),
        2 => s2(cat),
        3 => s3(cat),
        4 => s4(cat),
        5 => s5(cat),
        6 => s6(cat),
        7 => s7(cat),
        8 => s8(cat),
        9 => s9(cat),
        10 => s10(cat),
        11 => s11(cat),
        12 => s12(cat),
        13 => s13(cat),
        14 => s14(cat),
        15 => s15(cat),
        16 => s16(cat),
        _ => unreachable!("suite ids stay in 1..=16"),
    }?;
    Ok(VerdictReport {
        suite: id.to_string(),
        ring: cat.ring_spec(),
        universe_id: cat.universe_id(),
        universe: cat.indecomposables().iter().map(|m| m.to_string()).collect(),
        checks,
    })
}

/// Runs the requested suites in parallel and returns reports in id order.
pub fn run_suites<C: ModuleCategory>(
    cat: &C,
    ids: &[SuiteId],
) -> Result<Vec<VerdictReport>, EngineError> {
    let mut ids = ids.to_vec();
    ids.sort();
    ids.dedup();
    ids.par_iter().map(|&id| run_suite(cat, id)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::{ChainCategory, QuiverCategory, ZCategory};
    use crate::quiver::LineQuiver;

    fn assert_all_pass(reports: &[VerdictReport]) {
        for r in reports {
            for c in r.failures() {
                panic!(
                    "{} on {}: {} — {}",
                    r.suite,
                    r.ring,
                    c.instance,
                    c.counterexample.as_deref().unwrap_or("")
                );
            }
        }
    }

    #[test]
    fn chain_ring_suites_pass() {
        let cat = ChainCategory::new(2, 3).unwrap();
        let reports = run_suites(&cat, &SuiteId::all()).unwrap();
        assert_eq!(reports.len(), 16);
        assert_all_pass(&reports);
    }

    #[test]
    fn negative_control_is_detected_on_the_small_chain() {
        let cat = ChainCategory::new(2, 2).unwrap();
        let report = run_suite(&cat, SuiteId(9)).unwrap();
        assert!(report.passed());
        let exhibited = report
            .checks
            .iter()
            .find(|c| c.instance.contains("closure violation exhibited"))
            .expect("counterexample reported");
        assert!(exhibited.instance.contains("m = Z/2"), "{}", exhibited.instance);
        assert!(exhibited.instance.contains("n = Z/4"), "{}", exhibited.instance);
        assert!(exhibited.instance.contains("submodule = Z/2"), "{}", exhibited.instance);
    }

    #[test]
    fn integer_suites_pass() {
        let cat = ZCategory::new(vec![2, 3], 2, 1).unwrap();
        let reports = run_suites(&cat, &SuiteId::all()).unwrap();
        assert_all_pass(&reports);
    }

    #[test]
    fn a2_suites_pass() {
        let cat = QuiverCategory::new(LineQuiver::new(2, ">", 2).unwrap());
        let reports = run_suites(&cat, &SuiteId::all()).unwrap();
        assert_all_pass(&reports);
    }

    #[test]
    fn suite_id_parsing() {
        assert_eq!(SuiteId::parse("S3").unwrap(), SuiteId(3));
        assert_eq!(SuiteId::parse("s16").unwrap(), SuiteId(16));
        assert_eq!(SuiteId::parse("7").unwrap(), SuiteId(7));
        assert!(SuiteId::parse("S17").is_err());
        assert!(SuiteId::parse("x").is_err());
    }
}
