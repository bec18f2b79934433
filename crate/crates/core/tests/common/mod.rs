//! Shared oracles for the integration suites.
//!
//! Everything here recomputes results through a different route than the
//! library: hom dimensions by exhaustive enumeration of maps over F_2, the
//! translate via the kernel-of-cover construction with an independent
//! mod-p rank, and random matrices for transformation identities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use profilium::linalg::{Coefficients, ExactMatrix};
use profilium::quiver::{
    compose_rep_maps, hom_space, kernel_rep, materialize, projective_cover, IntervalModule,
    LineQuiver, QuiverModuleExpr,
};
use rand::Rng;

/// All module expressions (multisets of intervals) of total dimension at
/// most `maxd`, including the zero module.
pub fn exprs_up_to(q: &LineQuiver, maxd: usize) -> Vec<QuiverModuleExpr> {
    let ivs = q.indecomposables();
    let n = q.vertex_count();
    let mut out = Vec::new();
    let mut current: Vec<IntervalModule> = Vec::new();
    fn rec(
        ivs: &[IntervalModule],
        from: usize,
        budget: usize,
        n: usize,
        current: &mut Vec<IntervalModule>,
        out: &mut Vec<QuiverModuleExpr>,
    ) {
        out.push(QuiverModuleExpr::from_parts(n, current.clone()));
        for i in from..ivs.len() {
            let len = ivs[i].len();
            if len <= budget {
                current.push(ivs[i]);
                rec(ivs, i, budget - len, n, current, out);
                current.pop();
            }
        }
    }
    rec(&ivs, 0, maxd, n, &mut current, &mut out);
    out
}

fn entry_mod(b: &BigInt, p: u64) -> u64 {
    b.mod_floor(&BigInt::from(p)).to_u64().expect("reduced entry fits")
}

/// Arrow matrices of a materialized representation as u64 entries mod p.
fn arrow_tables(q: &LineQuiver, expr: &QuiverModuleExpr, p: u64) -> (Vec<usize>, Vec<Vec<Vec<u64>>>) {
    let rep = materialize(q, expr);
    let tables = rep
        .maps
        .iter()
        .map(|m| {
            (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| entry_mod(m.at(r, c), p)).collect())
                .collect()
        })
        .collect();
    (rep.dims, tables)
}

/// Hom dimension by brute force over F_2: enumerate every tuple of vertex
/// matrices and count the ones satisfying all intertwining equations. The
/// solution count is a power of two; its log is the dimension.
pub fn brute_hom_dim_f2(q: &LineQuiver, m: &QuiverModuleExpr, n: &QuiverModuleExpr) -> usize {
    assert_eq!(q.field_prime(), 2, "brute force enumerates F_2 maps");
    let (md, mt) = arrow_tables(q, m, 2);
    let (nd, nt) = arrow_tables(q, n, 2);
    let nv = q.vertex_count();
    let mut offsets = Vec::with_capacity(nv);
    let mut total_bits = 0usize;
    for v in 0..nv {
        offsets.push(total_bits);
        total_bits += nd[v] * md[v];
    }
    assert!(total_bits <= 24, "enumeration stays tractable");
    let phi_entry = |mask: u64, v: usize, r: usize, c: usize| -> u64 {
        (mask >> (offsets[v] + r * md[v] + c)) & 1
    };
    let mut count = 0u64;
    'mask: for mask in 0..(1u64 << total_bits) {
        for (a, &(src, tgt)) in q.arrows().iter().enumerate() {
            let (s, t) = (src - 1, tgt - 1);
            // phi_t . M_a == N_a . phi_s, entrywise mod 2.
            for r in 0..nd[t] {
                for c in 0..md[s] {
                    let mut left = 0u64;
                    for k in 0..md[t] {
                        left += phi_entry(mask, t, r, k) * mt[a][k][c];
                    }
                    let mut right = 0u64;
                    for k in 0..nd[s] {
                        right += nt[a][r][k] * phi_entry(mask, s, k, c);
                    }
                    if (left + right) % 2 != 0 {
                        continue 'mask;
                    }
                }
            }
        }
        count += 1;
    }
    assert!(count.is_power_of_two(), "solutions form a vector space");
    count.trailing_zeros() as usize
}

/// Row rank of a matrix over F_p by plain Gaussian elimination on u64
/// entries (independent of the library's exact linear algebra).
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = mod_inverse(rows[rank][col] % p, p);
        for x in rows[rank].iter_mut() {
            *x = (*x % p) * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] % p != 0 {
                let f = rows[r][col] % p;
                for c in 0..cols {
                    let sub = (rows[rank][c] * f) % p;
                    rows[r][c] = (rows[r][c] + p * p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p for prime p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Dimension vector of the translate via the kernel-of-cover route: take
/// the projective cover P0 -> M, its kernel P1 (projective, as the family is
/// hereditary), and measure at each vertex the cokernel of restriction
/// Hom(P0, P(v)) -> Hom(P1, P(v)).
pub fn dtr_tau_dim_vector(q: &LineQuiver, iv: &IntervalModule) -> Vec<usize> {
    let p = q.field_prime();
    let expr = QuiverModuleExpr::single(q.vertex_count(), *iv);
    let cover = projective_cover(q, &expr);
    let p0 = materialize(q, &cover.hull);
    let (p1, inclusion) = kernel_rep(q, &cover.map, &p0);
    (1..=q.vertex_count())
        .map(|v| {
            let target = materialize(
                q,
                &QuiverModuleExpr::single(q.vertex_count(), q.projective(v)),
            );
            let h1 = hom_space(q, &p1, &target);
            let h0 = hom_space(q, &p0, &target);
            let rows: Vec<Vec<u64>> = h0
                .basis
                .iter()
                .map(|phi| {
                    let restricted =
                        compose_rep_maps(phi, &inclusion).expect("restriction composes");
                    h1.coordinates_of(&restricted)
                        .iter()
                        .map(|b| entry_mod(b, p))
                        .collect()
                })
                .collect();
            let image_rank = if rows.is_empty() { 0 } else { rank_mod_p(rows, p) };
            h1.dim() - image_rank
        })
        .collect()
}

/// Random matrix with entries appropriate for the coefficient kind.
pub fn random_matrix<R: Rng>(
    rng: &mut R,
    coeffs: Coefficients,
    rows: usize,
    cols: usize,
) -> ExactMatrix {
    ExactMatrix::from_fn(coeffs, rows, cols, |_, _| {
        let x: i64 = match coeffs {
            Coefficients::Integers => rng.gen_range(-20..=20),
            Coefficients::PrimeField(p) => rng.gen_range(0..p as i64),
            Coefficients::CyclicRing(p, k) => rng.gen_range(0..(p.pow(k)) as i64),
        };
        BigInt::from(x)
    })
}
