//! Finitely generated modules over Z and over chain rings Z/p^k, in
//! invariant-factor normal form.
//!
//! A module is `Z^r + Z/q1 + Z/q2 + ...` with prime-power torsion orders q.
//! Over a chain ring Z/p^k the free rank is zero and every part is Z/p^e with
//! e <= k; the e = k parts are the projective (= injective) ones.
//!
//! Maps between modules are written on the cyclic slots: a matrix whose (j, i)
//! entry is an integer representative of the image in slot j of the i-th
//! generator, kept reduced modulo the order of slot j. These matrices always
//! carry `Coefficients::Integers`; surjectivity tests against a presented
//! target stack the relation columns on the right and run over the ring that
//! actually decides the question.

use crate::linalg::{is_surjective, Coefficients, ExactMatrix, LinalgError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbError {
    #[error("ring must be Z or a chain ring Z/p^k, not a field")]
    FieldRing,
    #[error("rings differ: {0} vs {1}")]
    RingMismatch(Coefficients, Coefficients),
    #[error("free rank must be zero over a chain ring")]
    FreeRankOverChain,
    #[error("torsion order {0}^{1} does not live in the ring {2}")]
    PartOutsideRing(u64, u32, Coefficients),
    #[error("{0} is not a valid torsion order")]
    BadTorsionOrder(u64),
    #[error("cannot parse module literal {0:?}: {1}")]
    Parse(String, String),
    #[error("injective envelopes are only available over chain rings")]
    UnsupportedEnvelope,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0u32;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn pow_big(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

/// Finitely generated module over Z or Z/p^k in canonical form: free rank
/// plus a multiset of prime-power torsion orders, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbModule {
    ring: Coefficients,
    free_rank: usize,
    torsion_parts: Vec<(u64, u32)>,
}

impl AbModule {
    pub fn new(
        ring: Coefficients,
        free_rank: usize,
        mut torsion_parts: Vec<(u64, u32)>,
    ) -> Result<Self, AbError> {
        match ring {
            Coefficients::Integers => {}
            Coefficients::CyclicRing(p, k) => {
                if free_rank > 0 {
                    return Err(AbError::FreeRankOverChain);
                }
                for &(q, e) in &torsion_parts {
                    if q != p || e == 0 || e > k {
                        return Err(AbError::PartOutsideRing(q, e, ring));
                    }
                }
            }
            Coefficients::PrimeField(_) => return Err(AbError::FieldRing),
        }
        for &(p, e) in &torsion_parts {
            if !is_prime(p) || e == 0 {
                return Err(AbError::BadTorsionOrder(p));
            }
        }
        // Descending by numeric order; prime powers are distinct as numbers
        // unless they are literally the same (p, e).
        torsion_parts.sort_by(|a, b| pow_big(b.0, b.1).cmp(&pow_big(a.0, a.1)));
        Ok(AbModule { ring, free_rank, torsion_parts })
    }

    pub fn zero(ring: Coefficients) -> Self {
        AbModule::new(ring, 0, Vec::new()).expect("zero module is valid over any base ring")
    }

    pub fn free(ring: Coefficients, rank: usize) -> Result<Self, AbError> {
        AbModule::new(ring, rank, Vec::new())
    }

    pub fn cyclic(ring: Coefficients, p: u64, e: u32) -> Result<Self, AbError> {
        AbModule::new(ring, 0, vec![(p, e)])
    }

    pub fn ring(&self) -> Coefficients {
        self.ring
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_parts(&self) -> &[(u64, u32)] {
        &self.torsion_parts
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion_parts.is_empty()
    }

    /// Number of elements; `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        let mut o = BigInt::one();
        for &(p, e) in &self.torsion_parts {
            o *= pow_big(p, e);
        }
        Some(o)
    }

    /// Primes dividing the torsion part.
    pub fn torsion_primes(&self) -> BTreeSet<u64> {
        self.torsion_parts.iter().map(|&(p, _)| p).collect()
    }

    pub fn is_projective(&self) -> bool {
        match self.ring {
            Coefficients::Integers => self.torsion_parts.is_empty(),
            Coefficients::CyclicRing(_, k) => self.torsion_parts.iter().all(|&(_, e)| e == k),
            Coefficients::PrimeField(_) => unreachable!("ab modules never sit over a field"),
        }
    }

    /// Over a chain ring the injectives coincide with the projectives; over Z
    /// no nonzero finitely generated module is injective.
    pub fn is_injective(&self) -> bool {
        match self.ring {
            Coefficients::Integers => self.is_zero(),
            _ => self.is_projective(),
        }
    }

    pub fn direct_sum(&self, other: &AbModule) -> Result<AbModule, AbError> {
        if self.ring != other.ring {
            return Err(AbError::RingMismatch(self.ring, other.ring));
        }
        let mut parts = self.torsion_parts.clone();
        parts.extend_from_slice(&other.torsion_parts);
        AbModule::new(self.ring, self.free_rank + other.free_rank, parts)
    }

    pub fn sum_of(ring: Coefficients, parts: &[AbModule]) -> Result<AbModule, AbError> {
        let mut acc = AbModule::zero(ring);
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// Indecomposable summands with multiplicity: `free_rank` copies of the
    /// base ring plus one cyclic module per torsion part.
    pub fn indecomposable_summands(&self) -> Vec<AbModule> {
        let mut out = Vec::new();
        for _ in 0..self.free_rank {
            out.push(AbModule::free(self.ring, 1).unwrap());
        }
        for &(p, e) in &self.torsion_parts {
            out.push(AbModule::cyclic(self.ring, p, e).unwrap());
        }
        out
    }

    /// All direct summands up to isomorphism: sub-multisets of the
    /// indecomposable decomposition, including zero and the module itself.
    pub fn summands(&self) -> Vec<AbModule> {
        // Group equal parts and choose a count from each group.
        let mut groups: Vec<((u64, u32), u32)> = Vec::new();
        for &part in &self.torsion_parts {
            match groups.last_mut() {
                Some((g, c)) if *g == part => *c += 1,
                _ => groups.push((part, 1)),
            }
        }
        let mut out = Vec::new();
        let mut chosen: Vec<(u64, u32)> = Vec::new();
        fn walk(
            ring: Coefficients,
            max_rank: usize,
            groups: &[((u64, u32), u32)],
            chosen: &mut Vec<(u64, u32)>,
            out: &mut Vec<AbModule>,
        ) {
            match groups.split_first() {
                None => {
                    for r in 0..=max_rank {
                        out.push(AbModule::new(ring, r, chosen.clone()).unwrap());
                    }
                }
                Some((&(part, count), rest)) => {
                    for take in 0..=count {
                        for _ in 0..take {
                            chosen.push(part);
                        }
                        walk(ring, max_rank, rest, chosen, out);
                        for _ in 0..take {
                            chosen.pop();
                        }
                    }
                }
            }
        }
        walk(self.ring, self.free_rank, &groups, &mut chosen, &mut out);
        out.sort();
        out.dedup();
        out
    }

    /// Is `other` isomorphic to a direct summand of `self`? By Krull-Schmidt
    /// this is multiset containment of the indecomposable decompositions.
    pub fn has_summand(&self, other: &AbModule) -> bool {
        if self.ring != other.ring || other.free_rank > self.free_rank {
            return false;
        }
        let mut pool = self.torsion_parts.clone();
        for part in &other.torsion_parts {
            match pool.iter().position(|x| x == part) {
                Some(i) => {
                    pool.swap_remove(i);
                }
                None => return false,
            }
        }
        true
    }

    /// Orders of the cyclic slots in generator order: free slots first
    /// (order 0 means infinite), then the torsion parts.
    pub fn slot_orders(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.free_rank];
        out.extend(self.torsion_parts.iter().map(|&(p, e)| pow_big(p, e)));
        out
    }

    pub fn slot_count(&self) -> usize {
        self.free_rank + self.torsion_parts.len()
    }
}

impl fmt::Display for AbModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        for &(p, e) in &self.torsion_parts {
            terms.push(format!("Z/{}", pow_big(p, e)));
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Parses the module literal grammar: `0`, `Z`, `Z^r`, `Z/n`, `Z/p^e`, joined
/// by `+`. Whitespace is insignificant. Over Z a composite `Z/n` splits into
/// its prime-power parts; over a chain ring every part must be a power of the
/// ring prime within the ring exponent, and free terms are rejected.
pub fn parse_module(ring: Coefficients, literal: &str) -> Result<AbModule, AbError> {
    let compact: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
    let fail = |msg: &str| AbError::Parse(literal.to_string(), msg.to_string());
    if compact.is_empty() {
        return Err(fail("empty literal"));
    }
    if compact == "0" {
        return Ok(AbModule::zero(ring));
    }
    let mut free_rank = 0usize;
    let mut parts = Vec::new();
    for term in compact.split('+') {
        if term == "Z" {
            free_rank += 1;
        } else if let Some(r) = term.strip_prefix("Z^") {
            let r: usize = r.parse().map_err(|_| fail("bad free rank"))?;
            free_rank += r;
        } else if let Some(q) = term.strip_prefix("Z/") {
            let n: u64 = match q.split_once('^') {
                Some((base, exp)) => {
                    let base: u64 = base.parse().map_err(|_| fail("bad torsion base"))?;
                    let exp: u32 = exp.parse().map_err(|_| fail("bad torsion exponent"))?;
                    if !is_prime(base) {
                        return Err(fail("torsion base must be prime in p^e form"));
                    }
                    base.checked_pow(exp).ok_or_else(|| fail("torsion order overflows"))?
                }
                None => q.parse().map_err(|_| fail("bad torsion order"))?,
            };
            if n < 2 {
                return Err(fail("torsion order must be at least 2"));
            }
            if n as i64 >= crate::linalg::ENTRY_BOUND {
                return Err(fail("torsion order must be < 2^31"));
            }
            parts.extend(factorize(n));
        } else {
            return Err(fail("unrecognized term"));
        }
    }
    AbModule::new(ring, free_rank, parts)
}

/// Hom(source, target) presented by independent generators: one generator per
/// (source slot, target slot) pair with nontrivial hom group, so the whole
/// group is the internal direct sum of the cyclics the generators span.
/// Additive order 0 means infinite; in the finite case |Hom| is the product
/// of the orders.
#[derive(Debug, Clone)]
pub struct HomBasis {
    pub source: AbModule,
    pub target: AbModule,
    /// Map matrices over `Coefficients::Integers`, target slots by source
    /// slots, one per generator.
    pub generators: Vec<ExactMatrix>,
    pub orders: Vec<BigInt>,
    /// (target slot, source slot) of the single nonzero entry of each
    /// generator.
    pub positions: Vec<(usize, usize)>,
    /// Value of that entry.
    pub values: Vec<BigInt>,
}

impl HomBasis {
    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// |Hom| when finite.
    pub fn cardinality(&self) -> Option<BigInt> {
        let mut c = BigInt::one();
        for o in &self.orders {
            if o.is_zero() {
                return None;
            }
            c *= o;
        }
        Some(c)
    }

    /// Coordinates of a map (given as a slot matrix) in the generators.
    /// The map must be a genuine homomorphism source -> target.
    pub fn coordinates_of(&self, map: &ExactMatrix) -> Vec<BigInt> {
        let target_orders = self.target.slot_orders();
        let mut coords = Vec::with_capacity(self.generators.len());
        for (t, &(j, i)) in self.positions.iter().enumerate() {
            let entry = reduce_entry(map.at(j, i), &target_orders[j]);
            let (q, r) = entry.div_rem(&self.values[t]);
            debug_assert!(r.is_zero(), "hom entries are multiples of the generator value");
            coords.push(q);
        }
        coords
    }
}

fn reduce_entry(x: &BigInt, order: &BigInt) -> BigInt {
    if order.is_zero() {
        x.clone()
    } else {
        x.mod_floor(order)
    }
}

/// Reduces every entry of a slot matrix into `[0, order_j)` for its row.
fn reduce_map(mut m: ExactMatrix, target: &AbModule) -> ExactMatrix {
    let orders = target.slot_orders();
    for j in 0..m.rows() {
        for i in 0..m.cols() {
            let x = reduce_entry(m.at(j, i), &orders[j]);
            m.set(j, i, x);
        }
    }
    m
}

/// Compose two slot matrices (integer representatives) and reduce into the
/// final target.
pub fn compose_maps(
    second: &ExactMatrix,
    first: &ExactMatrix,
    target: &AbModule,
) -> Result<ExactMatrix, AbError> {
    Ok(reduce_map(second.mul(first)?, target))
}

/// Hom group of two modules over the same base ring. Slot pairs contribute:
/// Hom(Z, Z) = Z on the identity, Hom(Z, Z/q) = Z/q on 1, Hom(Z/a, Z) = 0,
/// and Hom(Z/a, Z/b) = Z/gcd(a,b) on multiplication by b/gcd(a,b).
pub fn hom(source: &AbModule, target: &AbModule) -> Result<HomBasis, AbError> {
    if source.ring() != target.ring() {
        return Err(AbError::RingMismatch(source.ring(), target.ring()));
    }
    let src_orders = source.slot_orders();
    let tgt_orders = target.slot_orders();
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    let mut positions = Vec::new();
    let mut values = Vec::new();
    for (j, b) in tgt_orders.iter().enumerate() {
        for (i, a) in src_orders.iter().enumerate() {
            let (value, order) = match (a.is_zero(), b.is_zero()) {
                (true, true) => (BigInt::one(), BigInt::zero()),
                (true, false) => (BigInt::one(), b.clone()),
                (false, true) => continue,
                (false, false) => {
                    let d = a.gcd(b);
                    if d.is_one() {
                        continue;
                    }
                    (b / &d, d)
                }
            };
            let mut g = ExactMatrix::zero(Coefficients::Integers, tgt_orders.len(), src_orders.len());
            g.set(j, i, value.clone());
            generators.push(g);
            orders.push(order);
            positions.push((j, i));
            values.push(value);
        }
    }
    Ok(HomBasis {
        source: source.clone(),
        target: target.clone(),
        generators,
        orders,
        positions,
        values,
    })
}

/// Is the map described by a slot matrix onto the presented target? The
/// relation columns diag(order_j) are stacked on the right and the question
/// is decided over `ring`: integer SNF for Z targets, chain-ring SNF for
/// Z/p^k, and a rank computation over a prime field.
pub fn map_onto_presented(
    matrix: &ExactMatrix,
    target_orders: &[BigInt],
    ring: Coefficients,
) -> Result<bool, AbError> {
    let rows = matrix.rows();
    debug_assert_eq!(rows, target_orders.len(), "one relation per target row");
    let stacked = ExactMatrix::from_fn(ring, rows, matrix.cols() + rows, |i, j| {
        if j < matrix.cols() {
            matrix.at(i, j).clone()
        } else if j - matrix.cols() == i {
            target_orders[i].clone()
        } else {
            BigInt::zero()
        }
    });
    Ok(is_surjective(&stacked)?)
}

/// An epimorphism from a projective cover onto a module, written on slots.
#[derive(Debug, Clone)]
pub struct PresentationMap {
    pub cover: AbModule,
    pub target: AbModule,
    pub matrix: ExactMatrix,
}

impl PresentationMap {
    pub fn is_epi(&self) -> Result<bool, AbError> {
        map_onto_presented(&self.matrix, &self.target.slot_orders(), self.cover.ring())
    }
}

/// Canonical projective presentation: one free (over Z) or regular (over
/// Z/p^k) slot per generator, mapping identically onto the generators. With
/// `redundant` an extra projective slot mapping to zero is appended; the
/// induced lifting verdicts must not change.
pub fn projective_presentation(target: &AbModule, redundant: bool) -> PresentationMap {
    let n = target.slot_count();
    let extra = usize::from(redundant);
    let cover = match target.ring() {
        Coefficients::Integers => AbModule::free(target.ring(), n + extra).unwrap(),
        Coefficients::CyclicRing(p, k) => {
            AbModule::new(target.ring(), 0, vec![(p, k); n + extra]).unwrap()
        }
        Coefficients::PrimeField(_) => unreachable!("ab modules never sit over a field"),
    };
    let matrix = ExactMatrix::from_fn(Coefficients::Integers, n, n + extra, |i, j| {
        if i == j { BigInt::one() } else { BigInt::zero() }
    });
    let map = PresentationMap { cover, target: target.clone(), matrix: reduce_map(matrix, target) };
    debug_assert!(map.is_epi().unwrap(), "canonical presentation is onto");
    map
}

/// An embedding of a module into its injective envelope, written on slots.
#[derive(Debug, Clone)]
pub struct EnvelopeMap {
    pub source: AbModule,
    pub envelope: AbModule,
    pub matrix: ExactMatrix,
}

/// Injective envelope over a chain ring: Z/p^e sits essentially inside Z/p^k
/// via multiplication by p^(k-e). Over Z the envelope of a nonzero module is
/// not finitely generated and the request is rejected.
pub fn injective_envelope(source: &AbModule) -> Result<EnvelopeMap, AbError> {
    let Coefficients::CyclicRing(p, k) = source.ring() else {
        return Err(AbError::UnsupportedEnvelope);
    };
    let n = source.torsion_parts().len();
    let envelope = AbModule::new(source.ring(), 0, vec![(p, k); n]).unwrap();
    let parts = source.torsion_parts().to_vec();
    let matrix = ExactMatrix::from_fn(Coefficients::Integers, n, n, |i, j| {
        if i == j { pow_big(p, k - parts[i].1) } else { BigInt::zero() }
    });
    Ok(EnvelopeMap { source: source.clone(), envelope: envelope.clone(), matrix: reduce_map(matrix, &envelope) })
}

/// Isomorphism classes of submodules, enumerated by brute force on the
/// underlying finite group. `None` when the torsion part is too large to
/// enumerate (bound: order 16) — callers are expected to skip, not fail.
/// Over Z a subgroup of Z^r + T is Z^s + S with s <= r and S a subgroup
/// of T, so free ranks are attached afterwards.
pub fn submodule_classes(m: &AbModule) -> Option<Vec<AbModule>> {
    const MAX_ORDER: u64 = 16;
    let torsion = AbModule::new(m.ring(), 0, m.torsion_parts().to_vec()).unwrap();
    let order = torsion.order().expect("torsion part is finite").to_u64()?;
    if order > MAX_ORDER {
        return None;
    }
    let slot_orders: Vec<u64> = torsion
        .slot_orders()
        .iter()
        .map(|o| o.to_u64().expect("slot orders fit in u64 under the bound"))
        .collect();
    // Elements as coordinate tuples; subgroups as sorted element sets, grown
    // one generator at a time until closure.
    let mut elements = vec![vec![0u64; slot_orders.len()]];
    for (i, &o) in slot_orders.iter().enumerate() {
        let mut next = Vec::new();
        for e in &elements {
            for v in 0..o {
                let mut e = e.clone();
                e[i] = v;
                next.push(e);
            }
        }
        elements = next;
    }
    let add = |a: &[u64], b: &[u64]| -> Vec<u64> {
        a.iter().zip(b).zip(&slot_orders).map(|((x, y), o)| (x + y) % o).collect()
    };
    let closure = |gens: &BTreeSet<Vec<u64>>| -> BTreeSet<Vec<u64>> {
        let mut set: BTreeSet<Vec<u64>> = BTreeSet::new();
        set.insert(vec![0; slot_orders.len()]);
        loop {
            let mut grew = false;
            let snapshot: Vec<Vec<u64>> = set.iter().cloned().collect();
            for a in &snapshot {
                for g in gens {
                    let s = add(a, g);
                    grew |= set.insert(s);
                }
            }
            if !grew {
                return set;
            }
        }
    };
    let mut subgroups: BTreeSet<BTreeSet<Vec<u64>>> = BTreeSet::new();
    let mut work: Vec<BTreeSet<Vec<u64>>> = vec![BTreeSet::new()];
    subgroups.insert(closure(&work[0]));
    while let Some(gens) = work.pop() {
        let current = closure(&gens);
        for x in &elements {
            if current.contains(x) {
                continue;
            }
            let mut bigger = gens.clone();
            bigger.insert(x.clone());
            if subgroups.insert(closure(&bigger)) {
                work.push(bigger);
            }
        }
    }
    // Classify each subgroup by counting elements killed by p^j.
    let mut classes: BTreeSet<Vec<(u64, u32)>> = BTreeSet::new();
    for sub in &subgroups {
        let mut parts: Vec<(u64, u32)> = Vec::new();
        let primes: BTreeSet<u64> = slot_orders.iter().map(|&o| factorize(o)[0].0).collect();
        for &p in &primes {
            // s_j = log_p #{x : p^j x = 0} = sum over parts of min(e_i, j);
            // the sequence grows strictly until j reaches the largest
            // exponent, which pins down the part multiset.
            let mut s = vec![0u32];
            for j in 1.. {
                let pj = p.pow(j);
                let count = sub
                    .iter()
                    .filter(|x| {
                        x.iter()
                            .zip(&slot_orders)
                            .all(|(&c, &o)| (c as u128 * pj as u128) % o as u128 == 0)
                    })
                    .count() as u64;
                let mut log = 0u32;
                let mut c = count;
                while c % p == 0 {
                    c /= p;
                    log += 1;
                }
                debug_assert_eq!(c, 1, "p-torsion counts are powers of p");
                if log == *s.last().unwrap() {
                    break;
                }
                s.push(log);
            }
            // Parts with exponent >= j number s_j - s_{j-1}.
            for j in 1..s.len() {
                let at_least_j = s[j] - s[j - 1];
                let at_least_next = if j + 1 < s.len() { s[j + 1] - s[j] } else { 0 };
                let exactly_j = at_least_j - at_least_next;
                for _ in 0..exactly_j {
                    parts.push((p, j as u32));
                }
            }
        }
        parts.sort_by(|a, b| pow_big(b.0, b.1).cmp(&pow_big(a.0, a.1)));
        classes.insert(parts);
    }
    let mut out = Vec::new();
    for parts in classes {
        for s in 0..=m.free_rank() {
            out.push(AbModule::new(m.ring(), s, parts.clone()).unwrap());
        }
    }
    out.sort();
    out.dedup();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Z: Coefficients = Coefficients::Integers;
    const Z8: Coefficients = Coefficients::CyclicRing(2, 3);

    fn m(ring: Coefficients, lit: &str) -> AbModule {
        parse_module(ring, lit).unwrap()
    }

    #[test]
    fn literals_round_trip_to_canonical_form() {
        for lit in ["0", "Z", "Z^2", "Z/4", "Z + Z/4 + Z/3", "Z^2 + Z/9 + Z/2"] {
            let module = m(Z, lit);
            assert_eq!(parse_module(Z, &module.to_string()).unwrap(), module);
        }
        // Composite orders split by CRT into prime powers, largest first.
        assert_eq!(m(Z, "Z/12").to_string(), "Z/4 + Z/3");
        assert_eq!(m(Z, "Z/6"), m(Z, "Z/2 + Z/3"));
        assert_eq!(m(Z, "Z/2^3"), m(Z, "Z/8"));
        assert_eq!(m(Z8, "Z/2 + Z/8 + Z/4").to_string(), "Z/8 + Z/4 + Z/2");
    }

    #[test]
    fn literal_rejections() {
        assert!(parse_module(Z, "Z/1").is_err());
        assert!(parse_module(Z, "Q").is_err());
        assert!(parse_module(Z, "Z/4^2").is_err()); // base must be prime in p^e form
        assert!(parse_module(Z8, "Z").is_err());
        assert!(parse_module(Z8, "Z/16").is_err());
        assert!(parse_module(Z8, "Z/3").is_err());
        assert!(parse_module(Coefficients::PrimeField(5), "Z/5").is_err());
    }

    #[test]
    fn projectivity_by_ring() {
        assert!(m(Z, "Z^2").is_projective());
        assert!(!m(Z, "Z + Z/2").is_projective());
        assert!(m(Z8, "Z/8 + Z/8").is_projective());
        assert!(!m(Z8, "Z/4").is_projective());
        assert!(m(Z8, "0").is_projective());
        // Injectives match projectives over the chain ring, vanish over Z.
        assert!(m(Z8, "Z/8").is_injective());
        assert!(!m(Z8, "Z/2").is_injective());
        assert!(!m(Z, "Z").is_injective());
        assert!(m(Z, "0").is_injective());
    }

    #[test]
    fn summands_of_small_modules() {
        let s: Vec<String> =
            m(Z, "Z/4 + Z/2").summands().iter().map(|x| x.to_string()).collect();
        assert_eq!(s, vec!["0", "Z/2", "Z/4", "Z/4 + Z/2"]);
        // Repeated parts collapse isomorphic choices.
        assert_eq!(m(Z, "Z/2 + Z/2").summands().len(), 3);
        assert_eq!(m(Z, "Z^2").summands().len(), 3);
        assert!(m(Z, "Z + Z/4").has_summand(&m(Z, "Z/4")));
        assert!(!m(Z, "Z/4").has_summand(&m(Z, "Z/2")));
    }

    /// Brute-force hom count: Hom(+_i Z/a_i, N) has one factor per source
    /// slot, counting the elements of N killed by a_i by enumeration.
    fn hom_count_oracle(source: &AbModule, target: &AbModule) -> BigInt {
        let tgt: Vec<u64> = target
            .slot_orders()
            .iter()
            .map(|o| o.to_u64().expect("oracle targets are finite"))
            .collect();
        let mut elements = vec![vec![0u64; tgt.len()]];
        for (i, &o) in tgt.iter().enumerate() {
            let mut next = Vec::new();
            for e in &elements {
                for v in 0..o {
                    let mut e = e.clone();
                    e[i] = v;
                    next.push(e);
                }
            }
            elements = next;
        }
        let mut count = BigInt::one();
        for a in source.slot_orders() {
            let a = a.to_u64().expect("oracle sources are finite");
            let killed = elements
                .iter()
                .filter(|x| {
                    x.iter().zip(&tgt).all(|(&c, &o)| (c as u128 * a as u128) % o as u128 == 0)
                })
                .count();
            count *= BigInt::from(killed);
        }
        count
    }

    #[test]
    fn hom_groups_match_the_counting_oracle() {
        let cases = [
            (Z, "Z/4", "Z/6"),
            (Z, "Z/8 + Z/3", "Z/12"),
            (Z, "Z/2 + Z/2", "Z/4 + Z/2"),
            (Z8, "Z/2", "Z/4"),
            (Z8, "Z/8 + Z/2", "Z/4 + Z/4"),
        ];
        for (ring, a, b) in cases {
            let (a, b) = (m(ring, a), m(ring, b));
            let h = hom(&a, &b).unwrap();
            assert_eq!(
                h.cardinality().unwrap(),
                hom_count_oracle(&a, &b),
                "Hom({a}, {b})"
            );
        }
    }

    #[test]
    fn hom_fixed_examples() {
        // Hom(Z/4, Z/6) = Z/2.
        let h = hom(&m(Z, "Z/4"), &m(Z, "Z/6")).unwrap();
        assert_eq!(h.orders, vec![BigInt::from(2)]);
        // Hom(Z/8, Z) = 0, Hom(Z, Z/9) = Z/9.
        assert!(hom(&m(Z, "Z/8"), &m(Z, "Z")).unwrap().is_trivial());
        let h = hom(&m(Z, "Z"), &m(Z, "Z/9")).unwrap();
        assert_eq!(h.orders, vec![BigInt::from(9)]);
        // Hom(Z, Z) = Z: one generator of infinite order.
        let h = hom(&m(Z, "Z"), &m(Z, "Z")).unwrap();
        assert_eq!(h.orders, vec![BigInt::zero()]);
        assert!(h.cardinality().is_none());
        // Over Z/8: Hom(Z/2, Z/4) = Z/2 generated by 1 -> 2.
        let h = hom(&m(Z8, "Z/2"), &m(Z8, "Z/4")).unwrap();
        assert_eq!(h.orders, vec![BigInt::from(2)]);
        assert_eq!(h.values, vec![BigInt::from(2)]);
        // Zero module: no generators either way.
        assert!(hom(&m(Z, "0"), &m(Z, "Z/4")).unwrap().is_trivial());
        assert!(hom(&m(Z, "Z/4"), &m(Z, "0")).unwrap().is_trivial());
    }

    #[test]
    fn generators_are_genuine_homs_and_coordinates_invert() {
        let a = m(Z, "Z + Z/4");
        let b = m(Z, "Z/8 + Z/2");
        let h = hom(&a, &b).unwrap();
        let src = a.slot_orders();
        let tgt = b.slot_orders();
        for g in &h.generators {
            for (j, bo) in tgt.iter().enumerate() {
                for (i, ao) in src.iter().enumerate() {
                    // order(source slot) * entry = 0 in the target slot.
                    if !ao.is_zero() {
                        let prod = ao * g.at(j, i);
                        assert!(reduce_entry(&prod, bo).is_zero(), "entry respects orders");
                    }
                }
            }
        }
        for (t, g) in h.generators.iter().enumerate() {
            let coords = h.coordinates_of(g);
            for (s, c) in coords.iter().enumerate() {
                let expect = if s == t { BigInt::one() } else { BigInt::zero() };
                assert_eq!(reduce_entry(c, &h.orders[s]), expect);
            }
        }
    }

    #[test]
    fn presentations_are_projective_covers_on_generators() {
        let n = m(Z, "Z + Z/4 + Z/3");
        let p = projective_presentation(&n, false);
        assert_eq!(p.cover, m(Z, "Z^3"));
        assert!(p.cover.is_projective());
        assert!(p.is_epi().unwrap());
        // Over the chain ring the cover is a sum of regular modules.
        let n = m(Z8, "Z/2");
        let p = projective_presentation(&n, false);
        assert_eq!(p.cover, m(Z8, "Z/8"));
        assert!(p.is_epi().unwrap());
        // Redundant covers stay epi.
        let p = projective_presentation(&n, true);
        assert_eq!(p.cover, m(Z8, "Z/8 + Z/8"));
        assert!(p.is_epi().unwrap());
    }

    #[test]
    fn envelope_is_injective_and_essential() {
        let n = m(Z8, "Z/2 + Z/8");
        let e = injective_envelope(&n).unwrap();
        assert_eq!(e.envelope, m(Z8, "Z/8 + Z/8"));
        // Brute force: the embedding has zero kernel and every nonzero cyclic
        // submodule of the envelope meets the image.
        let src: Vec<u64> = n.slot_orders().iter().map(|o| o.to_u64().unwrap()).collect();
        let env: Vec<u64> = e.envelope.slot_orders().iter().map(|o| o.to_u64().unwrap()).collect();
        let mut source_elems = vec![vec![0u64; src.len()]];
        for (i, &o) in src.iter().enumerate() {
            let mut next = Vec::new();
            for el in &source_elems {
                for v in 0..o {
                    let mut el = el.clone();
                    el[i] = v;
                    next.push(el);
                }
            }
            source_elems = next;
        }
        let apply = |x: &[u64]| -> Vec<u64> {
            (0..env.len())
                .map(|j| {
                    let mut acc: u128 = 0;
                    for (i, &xi) in x.iter().enumerate() {
                        acc += e.matrix.at(j, i).to_u64().unwrap() as u128 * xi as u128;
                    }
                    (acc % env[j] as u128) as u64
                })
                .collect()
        };
        let image: BTreeSet<Vec<u64>> = source_elems.iter().map(|x| apply(x)).collect();
        for x in &source_elems {
            if x.iter().any(|&c| c != 0) {
                assert!(apply(x).iter().any(|&c| c != 0), "embedding has zero kernel");
            }
        }
        let mut env_elems = vec![vec![0u64; env.len()]];
        for (i, &o) in env.iter().enumerate() {
            let mut next = Vec::new();
            for el in &env_elems {
                for v in 0..o {
                    let mut el = el.clone();
                    el[i] = v;
                    next.push(el);
                }
            }
            env_elems = next;
        }
        for x in env_elems.iter().filter(|x| x.iter().any(|&c| c != 0)) {
            let mut hit = false;
            let mut mult = vec![0u64; env.len()];
            loop {
                for (m, (&xi, &o)) in mult.iter_mut().zip(x.iter().zip(&env)) {
                    *m = (*m + xi) % o;
                }
                if mult.iter().all(|&c| c == 0) {
                    break;
                }
                if image.contains(&mult) {
                    hit = true;
                    break;
                }
            }
            assert!(hit, "cyclic submodule generated by {x:?} meets the image");
        }
        // Over Z envelopes are refused.
        assert_eq!(
            injective_envelope(&m(Z, "Z/2")).unwrap_err(),
            AbError::UnsupportedEnvelope
        );
    }

    #[test]
    fn submodule_classes_by_brute_force() {
        // Z/4: subgroups 0, Z/2, Z/4.
        let classes = submodule_classes(&m(Z, "Z/4")).unwrap();
        assert_eq!(
            classes.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            vec!["0", "Z/2", "Z/4"]
        );
        // Klein four group: 0, Z/2, Z/2+Z/2.
        let classes = submodule_classes(&m(Z, "Z/2 + Z/2")).unwrap();
        assert_eq!(
            classes.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            vec!["0", "Z/2", "Z/2 + Z/2"]
        );
        // Z/8: the full chain.
        let classes = submodule_classes(&m(Z8, "Z/8")).unwrap();
        assert_eq!(
            classes.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            vec!["0", "Z/2", "Z/4", "Z/8"]
        );
        // Free parts attach as Z^s for s <= r.
        let classes = submodule_classes(&m(Z, "Z + Z/2")).unwrap();
        assert!(classes.contains(&m(Z, "Z")));
        assert!(classes.contains(&m(Z, "Z + Z/2")));
        assert!(classes.contains(&m(Z, "Z/2")));
        // Too large to enumerate.
        assert!(submodule_classes(&m(Z, "Z/32")).is_none());
    }

    #[test]
    fn mixed_prime_submodules() {
        let classes = submodule_classes(&m(Z, "Z/12")).unwrap();
        let strs: BTreeSet<String> = classes.iter().map(|x| x.to_string()).collect();
        let want: BTreeSet<String> = ["0", "Z/2", "Z/3", "Z/4", "Z/4 + Z/3", "Z/3 + Z/2"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(strs, want);
    }

    proptest! {
        #[test]
        fn direct_sum_is_commutative_and_canonical(
            a in proptest::sample::select(vec!["Z", "Z/2", "Z/4", "Z/3", "Z/9", "Z + Z/2"]),
            b in proptest::sample::select(vec!["Z", "Z/2", "Z/4", "Z/3", "Z/9", "Z^2 + Z/3"]),
        ) {
            let (a, b) = (m(Z, a), m(Z, b));
            prop_assert_eq!(a.direct_sum(&b).unwrap(), b.direct_sum(&a).unwrap());
        }

        #[test]
        fn hom_cardinality_is_multiplicative_in_the_source(
            a in proptest::sample::select(vec!["Z/2", "Z/4", "Z/8"]),
            b in proptest::sample::select(vec!["Z/2", "Z/4", "Z/8"]),
            n in proptest::sample::select(vec!["Z/2", "Z/4", "Z/8 + Z/2"]),
        ) {
            let (a, b, n) = (m(Z8, a), m(Z8, b), m(Z8, n));
            let sum = a.direct_sum(&b).unwrap();
            let lhs = hom(&sum, &n).unwrap().cardinality().unwrap();
            let rhs = hom(&a, &n).unwrap().cardinality().unwrap()
                * hom(&b, &n).unwrap().cardinality().unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
