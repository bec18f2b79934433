//! Profile semilattices: the set of domains realized over a universe,
//! ordered by inclusion, with witnesses, Hasse diagram, coatoms, minimum,
//! and the poor/maximal module searches.
//!
//! Domains of direct sums are intersections of the summands' domains, so
//! every realizable domain is a meet of indecomposable domains and the whole
//! profile is the meet-closure of finitely many bitsets — no explicit walk
//! over all square-free sums is needed, and the closure is provably the same
//! set of classes.

use crate::engine::{
    self, domain, injective_bits, projective_bits, DomainSet, EngineError, Kind, ModuleCategory,
};
use rayon::prelude::*;
use std::collections::BTreeSet;

/// One realized domain class together with a module attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileClass {
    pub members: DomainSet,
    /// Indices of universe indecomposables whose direct sum attains the
    /// class; irredundant and minimal in (size, lexicographic) order.
    pub witness_support: Vec<usize>,
    pub witness: String,
}

#[derive(Debug, Clone)]
pub struct Profile {
    pub kind: Kind,
    pub universe_id: String,
    pub universe: Vec<String>,
    /// Sorted by (member count, bits); the minimum class sits at index 0 and
    /// the full universe (top) at the end.
    pub classes: Vec<ProfileClass>,
    /// Cover relations (lower, upper) of strict inclusion.
    pub hasse: Vec<(usize, usize)>,
    /// Classes directly covered by the top.
    pub coatoms: Vec<usize>,
    pub minimum: usize,
    pub top: usize,
}

impl Profile {
    pub fn class_of(&self, d: &DomainSet) -> Option<usize> {
        self.classes.iter().position(|c| c.members == *d)
    }
}

/// Smallest support (by size, then lexicographically) whose domain meet
/// equals `class`, drawn from the indecomposables whose domains contain it.
/// Falls back to an irredundant support if the exact search space is large.
fn minimal_support(class: &[bool], indec_domains: &[DomainSet]) -> Vec<usize> {
    let candidates: Vec<usize> = indec_domains
        .iter()
        .enumerate()
        .filter(|(_, d)| class.iter().zip(&d.bits).all(|(&c, &b)| !c || b))
        .map(|(i, _)| i)
        .collect();
    let meet_equals = |support: &[usize]| -> bool {
        class.iter().enumerate().all(|(j, &c)| {
            c == support.iter().all(|&i| indec_domains[i].bits[j])
        })
    };
    // The empty meet is the full universe; covered by size-0 below.
    let mut budget = 100_000usize;
    for size in 0..=candidates.len() {
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
        while let Some((from, chosen)) = stack.pop() {
            if chosen.len() == size {
                if meet_equals(&chosen) {
                    return chosen;
                }
                if budget == 0 {
                    break;
                }
                budget -= 1;
                continue;
            }
            // Push in reverse so lexicographically smaller extensions pop first.
            let needed = size - chosen.len();
            let mut exts: Vec<usize> = (from..candidates.len())
                .filter(|&ci| candidates.len() - ci >= needed)
                .collect();
            exts.reverse();
            for ci in exts {
                let mut next = chosen.clone();
                next.push(candidates[ci]);
                stack.push((ci + 1, next));
            }
        }
        if budget == 0 {
            break;
        }
    }
    // Irredundant fallback: start from all candidates, drop what stays exact.
    let mut support = candidates;
    debug_assert!(meet_equals(&support), "class is a meet of candidate domains");
    let mut i = support.len();
    while i > 0 {
        i -= 1;
        let removed = support.remove(i);
        if !meet_equals(&support) {
            support.insert(i, removed);
        }
    }
    support
}

pub fn build_profile<C: ModuleCategory>(cat: &C, kind: Kind) -> Result<Profile, EngineError> {
    if kind == Kind::Si && !cat.supports_envelopes() {
        return Err(EngineError::UnsupportedEnvelope(cat.ring_spec()));
    }
    let indecs = cat.indecomposables();
    let indec_domains: Vec<DomainSet> = indecs
        .par_iter()
        .map(|m| domain(cat, kind, m))
        .collect::<Result<Vec<_>, _>>()?;
    let universe_id = cat.universe_id();
    let len = indecs.len();

    // Meet-closure of the indecomposable domains plus the top (domain of 0).
    let mut closure: BTreeSet<Vec<bool>> = BTreeSet::new();
    closure.insert(vec![true; len]);
    for d in &indec_domains {
        closure.insert(d.bits.clone());
    }
    loop {
        let snapshot: Vec<Vec<bool>> = closure.iter().cloned().collect();
        let before = closure.len();
        for (i, a) in snapshot.iter().enumerate() {
            for b in snapshot.iter().skip(i + 1) {
                let meet: Vec<bool> = a.iter().zip(b).map(|(&x, &y)| x && y).collect();
                closure.insert(meet);
            }
        }
        if closure.len() == before {
            break;
        }
    }

    let mut class_bits: Vec<Vec<bool>> = closure.into_iter().collect();
    class_bits.sort_by_key(|bits| (bits.iter().filter(|&&b| b).count(), bits.clone()));

    let classes: Vec<ProfileClass> = class_bits
        .iter()
        .map(|bits| {
            let witness_support = minimal_support(bits, &indec_domains);
            let witness = engine::support_module(cat, &witness_support).to_string();
            ProfileClass {
                members: DomainSet { universe_id: universe_id.clone(), bits: bits.clone() },
                witness_support,
                witness,
            }
        })
        .collect();

    // Strict-inclusion cover relations.
    let below = |i: usize, j: usize| -> bool {
        classes[i].members.is_subset_of(&classes[j].members) && classes[i] != classes[j]
    };
    let mut hasse = Vec::new();
    for i in 0..classes.len() {
        for j in 0..classes.len() {
            if below(i, j) && !(0..classes.len()).any(|k| below(i, k) && below(k, j)) {
                hasse.push((i, j));
            }
        }
    }
    let top = classes.len() - 1;
    debug_assert!(classes[top].members.is_full(), "top is the full universe");
    let coatoms: Vec<usize> =
        hasse.iter().filter(|&&(_, up)| up == top).map(|&(lo, _)| lo).collect();
    let minimum = 0;
    debug_assert!(
        classes.iter().all(|c| classes[minimum].members.is_subset_of(&c.members)),
        "least class is comparable below every class"
    );

    Ok(Profile {
        kind,
        universe_id,
        universe: indecs.iter().map(|m| m.to_string()).collect(),
        classes,
        hasse,
        coatoms,
        minimum,
        top,
    })
}

/// Modules whose domain is exactly the projective (sp) or injective (si)
/// indecomposables. Candidates: indecomposable attainers, the sum of all
/// non-projective (non-injective) indecomposables, and family extras; each
/// candidate is verified by recomputing its domain from scratch.
pub fn poor_modules<C: ModuleCategory>(
    cat: &C,
    kind: Kind,
) -> Result<Vec<C::Mod>, EngineError> {
    let target = match kind {
        Kind::Sp => projective_bits(cat),
        Kind::Si => injective_bits(cat),
    };
    let mut candidates: Vec<C::Mod> = Vec::new();
    for m in cat.indecomposables() {
        candidates.push(m.clone());
    }
    let residual: Vec<C::Mod> = cat
        .indecomposables()
        .iter()
        .filter(|m| match kind {
            Kind::Sp => !cat.is_projective(m),
            Kind::Si => !cat.is_injective(m),
        })
        .cloned()
        .collect();
    if !residual.is_empty() {
        candidates.push(cat.sum_of(&residual));
    }
    candidates.extend(cat.extra_poor_candidates(kind));
    candidates.sort();
    candidates.dedup();
    let verdicts: Vec<bool> = candidates
        .par_iter()
        .map(|m| Ok(domain(cat, kind, m)? == target))
        .collect::<Result<Vec<_>, EngineError>>()?;
    Ok(candidates
        .into_iter()
        .zip(verdicts)
        .filter(|(_, poor)| *poor)
        .map(|(m, _)| m)
        .collect())
}

/// A member of a coatom class: its domain is maximal among proper domains.
#[derive(Debug, Clone)]
pub struct MaximalMember {
    pub module: String,
    pub class_index: usize,
    /// True when the domain is exactly `{N : module is not a summand of N}`.
    pub summand_characterized: bool,
}

/// Witnesses of every coatom class: the class witness plus all
/// indecomposables attaining the class, each flagged when the
/// not-a-summand characterization holds.
pub fn maximal_members<C: ModuleCategory>(
    cat: &C,
    profile: &Profile,
) -> Result<Vec<MaximalMember>, EngineError> {
    let indecs = cat.indecomposables();
    let mut out = Vec::new();
    for &ci in &profile.coatoms {
        let class = &profile.classes[ci];
        let mut attainers: Vec<C::Mod> = vec![engine::support_module(cat, &class.witness_support)];
        for (m, d) in indecs.iter().zip(
            indecs
                .par_iter()
                .map(|m| domain(cat, profile.kind, m))
                .collect::<Result<Vec<_>, EngineError>>()?,
        ) {
            if d == class.members {
                attainers.push(m.clone());
            }
        }
        attainers.sort();
        attainers.dedup();
        for m in attainers {
            let not_summand: Vec<bool> = indecs.iter().map(|n| !cat.is_summand(&m, n)).collect();
            out.push(MaximalMember {
                module: m.to_string(),
                class_index: ci,
                summand_characterized: not_summand == class.members.bits,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::{ChainCategory, QuiverCategory, ZCategory};
    use crate::quiver::LineQuiver;

    #[test]
    fn chain_profiles_have_two_classes() {
        let cat = ChainCategory::new(2, 3).unwrap();
        for kind in [Kind::Sp, Kind::Si] {
            let p = build_profile(&cat, kind).unwrap();
            assert_eq!(p.classes.len(), 2, "{kind}");
            assert_eq!(p.hasse, vec![(0, 1)]);
            assert_eq!(p.coatoms, vec![0]);
            assert_eq!(p.minimum, 0);
            let bottom: Vec<&String> = p
                .universe
                .iter()
                .zip(&p.classes[0].members.bits)
                .filter(|(_, &b)| b)
                .map(|(m, _)| m)
                .collect();
            assert_eq!(bottom, vec!["Z/8"]);
        }
    }

    #[test]
    fn chain_poor_modules() {
        let cat = ChainCategory::new(2, 3).unwrap();
        let poor: Vec<String> =
            poor_modules(&cat, Kind::Sp).unwrap().iter().map(|m| m.to_string()).collect();
        assert!(poor.contains(&"Z/2".to_string()));
        assert!(poor.contains(&"Z/4".to_string()));
        assert!(poor.contains(&"Z/4 + Z/2".to_string()));
        assert!(!poor.contains(&"Z/8".to_string()));
        let cat32 = ChainCategory::new(3, 2).unwrap();
        let poor: Vec<String> =
            poor_modules(&cat32, Kind::Sp).unwrap().iter().map(|m| m.to_string()).collect();
        assert!(poor.contains(&"Z/3".to_string()));
    }

    #[test]
    fn z_profile_minimum_is_projectives() {
        let cat = ZCategory::new(vec![2, 3], 2, 1).unwrap();
        let p = build_profile(&cat, Kind::Sp).unwrap();
        assert_eq!(p.classes[p.minimum].members, engine::projective_bits(&cat));
        assert!(p.classes[p.top].members.is_full());
        // The top witness is the zero module (empty support).
        assert_eq!(p.classes[p.top].witness, "0");
        let poor = poor_modules(&cat, Kind::Sp).unwrap();
        let strs: Vec<String> = poor.iter().map(|m| m.to_string()).collect();
        assert!(strs.contains(&"Z/9 + Z/4 + Z/3 + Z/2".to_string()), "{strs:?}");
    }

    #[test]
    fn a2_profile_and_maximal_members() {
        let cat = QuiverCategory::new(LineQuiver::new(2, ">", 2).unwrap());
        let p = build_profile(&cat, Kind::Sp).unwrap();
        assert_eq!(p.classes.len(), 2);
        let maxes = maximal_members(&cat, &p).unwrap();
        assert!(maxes
            .iter()
            .any(|m| m.module == "10" && m.summand_characterized));
        // The bottom class is attained by S(1) and is also the minimum.
        assert_eq!(p.classes[0].witness, "10");
        // si profile: injectives are 10 and 11; only 01 is non-injective.
        let psi = build_profile(&cat, Kind::Si).unwrap();
        assert_eq!(psi.classes.len(), 2);
        let si_poor = poor_modules(&cat, Kind::Si).unwrap();
        let strs: Vec<String> = si_poor.iter().map(|m| m.to_string()).collect();
        assert!(strs.contains(&"01".to_string()));
    }

    #[test]
    fn a4_si_profile_contains_tau_e_class() {
        let cat = QuiverCategory::new(LineQuiver::new(4, "><>", 2).unwrap());
        let p = build_profile(&cat, Kind::Si).unwrap();
        assert_eq!(p.classes[p.minimum].members, engine::injective_bits(&cat));
        let poor = poor_modules(&cat, Kind::Si).unwrap();
        let strs: Vec<String> = poor.iter().map(|m| m.to_string()).collect();
        assert!(strs.contains(&"0110+0111+1100+1111".to_string()), "{strs:?}");
    }

    #[test]
    fn witnesses_recompute_to_their_class() {
        let cat = ZCategory::new(vec![2, 3], 2, 1).unwrap();
        for kind in [Kind::Sp] {
            let p = build_profile(&cat, kind).unwrap();
            for c in &p.classes {
                let m = engine::support_module(&cat, &c.witness_support);
                assert_eq!(domain(&cat, kind, &m).unwrap(), c.members, "{}", c.witness);
            }
        }
    }

    #[test]
    fn hasse_edges_are_covers() {
        let cat = ZCategory::new(vec![2, 3], 2, 1).unwrap();
        let p = build_profile(&cat, Kind::Sp).unwrap();
        for &(lo, hi) in &p.hasse {
            assert!(p.classes[lo].members.is_subset_of(&p.classes[hi].members));
            assert_ne!(p.classes[lo].members, p.classes[hi].members);
        }
        for &c in &p.coatoms {
            for (k, other) in p.classes.iter().enumerate() {
                if k != c && k != p.top {
                    assert!(
                        !(p.classes[c].members.is_subset_of(&other.members)
                            && other.members.is_subset_of(&p.classes[p.top].members)
                            && p.classes[c].members != other.members
                            && other.members != p.classes[p.top].members),
                        "nothing sits strictly between a coatom and top"
                    );
                }
            }
        }
    }
}
