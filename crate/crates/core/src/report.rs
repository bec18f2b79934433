//! Report assembly: JSON, CSV, and DOT emitters for the CLI and FFI layers.
//!
//! Every report carries the ring spec and the universe literals, so a
//! verdict is always read relative to the finite universe it was computed
//! over. JSON objects use sorted keys and a trailing newline; all emitters
//! are deterministic byte-for-byte for a fixed invocation.

use crate::cache::DecisionCache;
use crate::engine::EngineError;
use crate::engine::{domain, membership, Kind, ModuleCategory};
use crate::profile::{build_profile, maximal_members, poor_modules, Profile};
use crate::quiver::{hom_dim, is_tilting, tau_expr};
use crate::rings::AnyCategory;
use crate::verify::{run_suites, SuiteId, VerdictReport};
use crate::{abelian, with_category};
use serde_json::{json, Value};

/// Serializes a JSON value per the output contract: sorted keys (the default
/// map is ordered), UTF-8, one trailing newline.
pub fn to_json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("reports serialize");
    s.push('\n');
    s
}

fn universe_literals<C: ModuleCategory>(cat: &C) -> Vec<String> {
    cat.indecomposables().iter().map(|m| m.to_string()).collect()
}

fn base_object<C: ModuleCategory>(cat: &C) -> Value {
    json!({
        "ring": cat.ring_spec(),
        "universe": universe_literals(cat),
    })
}

fn merge(mut base: Value, key: &str, v: Value) -> Value {
    base.as_object_mut()
        .expect("base report is an object")
        .insert(key.to_string(), v);
    base
}

pub fn universe_report(any: &AnyCategory) -> Value {
    with_category!(any, |cat| base_object(cat))
}

/// n = p^e for a prime p, or nothing.
fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..).find(|d| n % d == 0)?;
    let mut m = n;
    let mut e = 0u32;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

/// Canonical description of a hom group between two abelian-family modules:
/// the hom group is itself a direct sum of cyclics, printed as a module
/// literal.
fn ab_hom_structure(basis: &abelian::HomBasis) -> Result<String, EngineError> {
    use num_traits::ToPrimitive;
    let free = basis.orders.iter().filter(|o| num_traits::Zero::is_zero(*o)).count();
    let mut parts: Vec<(u64, u32)> = Vec::new();
    for o in &basis.orders {
        if num_traits::Zero::is_zero(o) {
            continue;
        }
        let n = o.to_u64().expect("orders stay in range for bounded universes");
        if n == 1 {
            continue;
        }
        let (p, e) = prime_power(n).expect("cyclic orders are prime powers");
        parts.push((p, e));
    }
    let module = abelian::AbModule::new(crate::linalg::Coefficients::Integers, free, parts)?;
    Ok(module.to_string())
}

pub fn hom_report(any: &AnyCategory, m: &str, n: &str) -> Result<Value, EngineError> {
    match any {
        AnyCategory::Integers(cat) => ab_hom_report(cat, m, n),
        AnyCategory::Chain(cat) => ab_hom_report(cat, m, n),
        AnyCategory::Quiver(cat) => {
            let me = cat.parse(m)?;
            let ne = cat.parse(n)?;
            let d = hom_dim(cat.quiver(), &me, &ne);
            let hom = json!({
                "source": me.to_string(),
                "target": ne.to_string(),
                "dim": d,
                "structure": format!("F_{}^{}", cat.quiver().field_prime(), d),
                "trivial": d == 0,
            });
            Ok(merge(base_object(cat), "hom", hom))
        }
    }
}

fn ab_hom_report<C>(cat: &C, m: &str, n: &str) -> Result<Value, EngineError>
where
    C: ModuleCategory<Mod = abelian::AbModule>,
{
    let me = cat.parse(m)?;
    let ne = cat.parse(n)?;
    let basis = abelian::hom(&me, &ne)?;
    let cardinality = basis
        .cardinality()
        .map(|c| c.to_string())
        .unwrap_or_else(|| "infinite".to_string());
    let hom = json!({
        "source": me.to_string(),
        "target": ne.to_string(),
        "cardinality": cardinality,
        "structure": ab_hom_structure(&basis)?,
        "trivial": basis.is_trivial(),
    });
    Ok(merge(base_object(cat), "hom", hom))
}

/// Membership of every universe member in the domain of `m`, consulting the
/// decision cache when one is supplied. Returns the canonical literal of `m`
/// and one (member literal, in_domain) pair per indecomposable.
pub fn domain_decisions(
    any: &AnyCategory,
    kind: Kind,
    m: &str,
    cache: &mut Option<DecisionCache>,
) -> Result<(String, Vec<(String, bool)>), EngineError> {
    with_category!(any, |cat| {
        let module = cat.parse(m)?;
        let m_lit = module.to_string();
        let mut rows = Vec::with_capacity(cat.indecomposables().len());
        for n in cat.indecomposables() {
            let n_lit = n.to_string();
            let key = DecisionCache::key(&cat.ring_spec(), &m_lit, &n_lit, &kind.to_string());
            let hit = cache.as_ref().and_then(|c| c.get(&key));
            let inside = match hit {
                Some(v) => v,
                None => {
                    let v = membership(cat, kind, &module, n)?;
                    if let Some(c) = cache.as_mut() {
                        c.put(key, v);
                    }
                    v
                }
            };
            rows.push((n_lit, inside));
        }
        Ok((m_lit, rows))
    })
}

pub fn domain_report(
    any: &AnyCategory,
    kind: Kind,
    m: &str,
    cache: &mut Option<DecisionCache>,
) -> Result<Value, EngineError> {
    let (m_lit, rows) = domain_decisions(any, kind, m, cache)?;
    let members: Vec<String> = rows
        .into_iter()
        .filter(|(_, inside)| *inside)
        .map(|(n, _)| n)
        .collect();
    let entry = json!({
        "kind": kind.to_string(),
        "module": m_lit,
        "members": members,
    });
    let base = with_category!(any, |cat| base_object(cat));
    Ok(merge(base, "domains", json!([entry])))
}

fn profile_value<C: ModuleCategory>(cat: &C, kind: Kind, p: &Profile) -> Result<Value, EngineError> {
    let classes: Vec<Value> = p
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let members: Vec<String> = cat
                .indecomposables()
                .iter()
                .zip(&c.members.bits)
                .filter(|(_, &b)| b)
                .map(|(m, _)| m.to_string())
                .collect();
            json!({
                "index": i,
                "members": members,
                "witness": c.witness,
            })
        })
        .collect();
    let maximal: Vec<Value> = maximal_members(cat, p)?
        .into_iter()
        .map(|m| {
            json!({
                "class": m.class_index,
                "module": m.module,
                "summand_characterized": m.summand_characterized,
            })
        })
        .collect();
    let poor: Vec<String> = poor_modules(cat, kind)?
        .into_iter()
        .map(|m| m.to_string())
        .collect();
    let poor_key = match kind {
        Kind::Sp => "sp_poor",
        Kind::Si => "si_poor",
    };
    let edges: Vec<Value> = p.hasse.iter().map(|&(l, u)| json!([l, u])).collect();
    Ok(json!({
        "kind": kind.to_string(),
        "classes": classes,
        "hasse_edges": edges,
        "coatoms": p.coatoms,
        "minimum": {
            "index": p.minimum,
            "witness": p.classes[p.minimum].witness,
        },
        poor_key: poor,
        "maximal": maximal,
    }))
}

pub fn profile_report(any: &AnyCategory, kind: Kind) -> Result<Value, EngineError> {
    with_category!(any, |cat| {
        let p = build_profile(cat, kind)?;
        let v = profile_value(cat, kind, &p)?;
        Ok(merge(base_object(cat), "profile", v))
    })
}

pub fn tau_report(any: &AnyCategory, m: &str) -> Result<Value, EngineError> {
    match any {
        AnyCategory::Quiver(cat) => {
            let expr = cat.parse(m)?;
            let t = tau_expr(cat.quiver(), &expr)?;
            let v = json!({
                "module": expr.to_string(),
                "translate": t.to_string(),
            });
            Ok(merge(base_object(cat), "tau", v))
        }
        _ => Err(EngineError::FamilyMismatch(
            "tau requires a path-algebra ring spec A<n>:<orient>;q=<p>".into(),
        )),
    }
}

pub fn tilting_report(any: &AnyCategory, m: &str) -> Result<Value, EngineError> {
    match any {
        AnyCategory::Quiver(cat) => {
            let expr = cat.parse(m)?;
            let verdict = is_tilting(cat.quiver(), &expr);
            let v = json!({
                "module": expr.to_string(),
                "distinct_summands": expr.distinct_parts().len(),
                "simples": cat.quiver().vertex_count(),
                "is_tilting": verdict,
            });
            Ok(merge(base_object(cat), "tilting", v))
        }
        _ => Err(EngineError::FamilyMismatch(
            "tilting requires a path-algebra ring spec A<n>:<orient>;q=<p>".into(),
        )),
    }
}

/// Runs suites and reports per-suite verdicts; failing checks are included
/// verbatim so the counterexample is in the report.
pub fn verify_report(any: &AnyCategory, ids: &[SuiteId]) -> Result<(Value, bool), EngineError> {
    let reports: Vec<VerdictReport> = with_category!(any, |cat| run_suites(cat, ids))?;
    let all_passed = reports.iter().all(|r| r.passed());
    let suites: Vec<Value> = reports
        .iter()
        .map(|r| {
            let failures: Vec<Value> = r
                .failures()
                .into_iter()
                .map(|c| {
                    json!({
                        "id": c.id,
                        "instance": c.instance,
                        "counterexample": c.counterexample,
                    })
                })
                .collect();
            json!({
                "suite": r.suite,
                "checks_run": r.checks.len(),
                "passed": r.passed(),
                "failures": failures,
            })
        })
        .collect();
    let v = with_category!(any, |cat| merge(
        base_object(cat),
        "verify",
        json!({ "suites": suites, "all_passed": all_passed }),
    ));
    Ok((v, all_passed))
}

pub fn universe_csv(any: &AnyCategory) -> String {
    let mut out = String::from("member\n");
    with_category!(any, |cat| {
        for m in universe_literals(cat) {
            out.push_str(&m);
            out.push('\n');
        }
    });
    out
}

pub fn domain_csv(
    any: &AnyCategory,
    kind: Kind,
    m: &str,
    cache: &mut Option<DecisionCache>,
) -> Result<String, EngineError> {
    let (m_lit, rows) = domain_decisions(any, kind, m, cache)?;
    let mut out = String::from("module,member,in_domain\n");
    for (n, inside) in rows {
        out.push_str(&format!("{m_lit},{n},{inside}\n"));
    }
    Ok(out)
}

pub fn profile_csv(any: &AnyCategory, kind: Kind) -> Result<String, EngineError> {
    with_category!(any, |cat| {
        let p = build_profile(cat, kind)?;
        let mut out = String::from("class,witness,member\n");
        for (i, c) in p.classes.iter().enumerate() {
            let members: Vec<String> = cat
                .indecomposables()
                .iter()
                .zip(&c.members.bits)
                .filter(|(_, &b)| b)
                .map(|(m, _)| m.to_string())
                .collect();
            if members.is_empty() {
                out.push_str(&format!("{i},{},\n", c.witness));
            }
            for m in members {
                out.push_str(&format!("{i},{},{m}\n", c.witness));
            }
        }
        Ok(out)
    })
}

/// Hasse diagram of the profile; nodes are classes labeled by cardinality,
/// edges point from the smaller class to its cover.
pub fn profile_dot(any: &AnyCategory, kind: Kind) -> Result<String, EngineError> {
    with_category!(any, |cat| {
        let p = build_profile(cat, kind)?;
        let mut out = String::from("digraph profile {\n  rankdir=BT;\n");
        for (i, c) in p.classes.iter().enumerate() {
            out.push_str(&format!("  c{i} [label=\"{}\"];\n", c.members.count()));
        }
        for &(l, u) in &p.hasse {
            out.push_str(&format!("  c{l} -> c{u};\n"));
        }
        out.push_str("}\n");
        Ok(out)
    })
}

/// Golden worked example over `A4:><>;q=2`: tables of projectives and
/// injectives, the injective cogenerator, its translate, and the si-poor
/// verdict, as fixed plain text.
pub fn worked_example_a4() -> Result<String, EngineError> {
    use crate::categories::QuiverCategory;
    use crate::engine::{injective_bits, Kind};
    use crate::quiver::LineQuiver;

    let q = LineQuiver::new(4, "><>", 2)?;
    let cat = QuiverCategory::new(q);
    let mut out = String::new();
    out.push_str(&format!("ring = {}\n", cat.ring_spec()));
    let indecs: Vec<String> = universe_literals(&cat);
    out.push_str(&format!("indecomposables = {}\n", indecs.join(" ")));
    for v in 1..=4 {
        out.push_str(&format!(
            "P({v}) = {}\n",
            cat.quiver().projective(v).dim_string(4)
        ));
    }
    for v in 1..=4 {
        out.push_str(&format!(
            "I({v}) = {}\n",
            cat.quiver().injective(v).dim_string(4)
        ));
    }
    let e = cat.injective_cogenerator();
    out.push_str(&format!("E = {e}\n"));
    out.push_str(&format!("E is tilting: {}\n", is_tilting(cat.quiver(), &e)));
    let gen_bits = crate::quiver::gen_class(cat.quiver(), &e);
    let gen: Vec<String> = cat
        .indecomposables()
        .iter()
        .zip(&gen_bits)
        .filter(|(_, &b)| b)
        .map(|(m, _)| m.to_string())
        .collect();
    out.push_str(&format!("Gen(E) = {}\n", gen.join(" ")));
    let tau_e = tau_expr(cat.quiver(), &e)?;
    out.push_str(&format!("tauE = {tau_e}\n"));
    let dom = domain(&cat, Kind::Si, &tau_e)?;
    let members: Vec<String> = cat
        .indecomposables()
        .iter()
        .zip(&dom.bits)
        .filter(|(_, &b)| b)
        .map(|(m, _)| m.to_string())
        .collect();
    out.push_str(&format!("si-domain(tauE) = {}\n", members.join(" ")));
    out.push_str(&format!(
        "tauE is si-poor relative to U: {}\n",
        dom == injective_bits(&cat)
    ));
    Ok(out)
}
