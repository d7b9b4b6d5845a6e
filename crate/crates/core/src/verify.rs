//! Named identity suites, each an exact check with a pass/fail outcome.
//!
//! Every suite takes an optional size override (`max_n`); the defaults are
//! the sizes the checks are specified at. Oracles used here are written
//! directly against the definitions and share no code with the paths they
//! check.

use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{
    qsym_to_finite, render_rational, AlgebraElement, FiniteVarPoly, QSymElement, Rational,
};
use crate::error::{Error, Result};
use crate::forest::{automorphism_order, enumerate_trees, RootedTree};
use crate::genfun::{cayley_check, u_by_enumeration, u_by_recurrence, verify_functional_equation};
use crate::invariant::{
    brute_force_order_count, brute_force_qsym, collision_report, order_poly, order_spec, qsym_strict,
    qsym_strict_spec, qsym_weak, qsym_weak_spec, strict_order_poly, strict_order_spec, Invariant, InvariantSpec,
};
use crate::operators::{finite_model, lambda, lambda_bar};
use crate::planar::{
    catalan, check_cocycle_consistency, enumerate_planar, enumerate_planar_forests, free_word_family,
    planar_functional_residual, u_planar_by_enumeration, u_planar_by_recurrence, LabelSet,
};

pub const SUITES: &[&str] = &[
    "census",
    "automorphisms",
    "cayley",
    "recurrence",
    "functional",
    "order-poly",
    "qsym",
    "specialization",
    "collisions",
    "planar",
    "cocycle",
    "shift",
];

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub summary: String,
    pub details: Value,
}

impl SuiteReport {
    fn new(suite: &str, failures: Vec<String>, summary: String, details: Value) -> Self {
        let passed = failures.is_empty();
        let mut details = details;
        if let Value::Object(map) = &mut details {
            map.insert("failures".into(), json!(failures));
        }
        SuiteReport {
            suite: suite.to_string(),
            passed,
            summary,
            details,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed,
            "summary": self.summary,
            "details": self.details,
        })
    }
}

/// Runs one suite by name, or every suite for `"all"`.
pub fn run(name: &str, max_n: Option<usize>) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return SUITES.iter().map(|s| run_one(s, max_n)).collect();
    }
    Ok(vec![run_one(name, max_n)?])
}

fn run_one(name: &str, max_n: Option<usize>) -> Result<SuiteReport> {
    match name {
        "census" => census(max_n.unwrap_or(10)),
        "automorphisms" => automorphisms(max_n.unwrap_or(7)),
        "cayley" => cayley(max_n.unwrap_or(12)),
        "recurrence" => recurrence(max_n.unwrap_or(8)),
        "functional" => functional(max_n.unwrap_or(8)),
        "order-poly" => order_polynomials(max_n.unwrap_or(6), 5),
        "qsym" => quasi_symmetric(max_n.unwrap_or(5)),
        "specialization" => specialization(max_n.unwrap_or(6), 6),
        "collisions" => collisions(max_n.unwrap_or(7)),
        "planar" => planar(max_n.unwrap_or(6)),
        "cocycle" => cocycle(max_n.unwrap_or(4)),
        "shift" => shift_identities(),
        other => Err(Error::domain(format!(
            "unknown suite {other:?}; expected one of {} or all",
            SUITES.join(", ")
        ))),
    }
}

/// Number of isomorphism classes among all preorder level sequences of
/// length `n`, each classified by bottom-up relabelling.
fn level_sequence_count(n: usize) -> usize {
    fn go(n: usize, levels: &mut Vec<usize>, classes: &mut HashMap<Vec<usize>, usize>, roots: &mut HashSet<usize>) {
        if levels.len() == n {
            roots.insert(classify(levels, classes));
            return;
        }
        let last = *levels.last().expect("root is present");
        for l in 1..=last + 1 {
            levels.push(l);
            go(n, levels, classes, roots);
            levels.pop();
        }
    }
    fn classify(levels: &[usize], classes: &mut HashMap<Vec<usize>, usize>) -> usize {
        // pending[d] collects child classes of the open vertex at depth d
        let mut pending: Vec<Vec<usize>> = Vec::new();
        let close = |pending: &mut Vec<Vec<usize>>, classes: &mut HashMap<Vec<usize>, usize>| {
            let mut sig = pending.pop().expect("open vertex");
            sig.sort_unstable();
            let next = classes.len();
            let c = *classes.entry(sig).or_insert(next);
            if let Some(parent) = pending.last_mut() {
                parent.push(c);
            }
            c
        };
        for &l in levels {
            while pending.len() > l {
                close(&mut pending, classes);
            }
            pending.push(Vec::new());
        }
        let mut root = 0;
        while !pending.is_empty() {
            root = close(&mut pending, classes);
        }
        root
    }
    if n == 0 {
        return 0;
    }
    let mut classes = HashMap::new();
    let mut roots = HashSet::new();
    go(n, &mut vec![0], &mut classes, &mut roots);
    roots.len()
}

fn census(max_n: usize) -> Result<SuiteReport> {
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for n in 1..=max_n {
        let got = enumerate_trees(n)?.len();
        let want = level_sequence_count(n);
        if got != want {
            failures.push(format!("n={n}: enumerated {got}, level sequences give {want}"));
        }
        counts.push(got);
    }
    Ok(SuiteReport::new(
        "census",
        failures,
        format!("tree counts for n=1..{max_n}: {counts:?}"),
        json!({ "counts": counts }),
    ))
}

/// Root-preserving permutations that map every edge onto an edge.
fn brute_force_automorphisms(parents: &[Option<usize>]) -> u64 {
    fn go(v: usize, parents: &[Option<usize>], image: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let n = parents.len();
        if v == n {
            return 1;
        }
        let mut total = 0;
        for w in 0..n {
            // parents come first in preorder, so their images are fixed
            let fits = match parents[v] {
                None => w == 0,
                Some(p) => parents[w] == Some(image[p]),
            };
            if used[w] || !fits {
                continue;
            }
            used[w] = true;
            image.push(w);
            total += go(v + 1, parents, image, used);
            image.pop();
            used[w] = false;
        }
        total
    }
    go(0, parents, &mut Vec::new(), &mut vec![false; parents.len()])
}

fn automorphisms(max_n: usize) -> Result<SuiteReport> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 1..=max_n {
        for t in enumerate_trees(n)? {
            checked += 1;
            let want = brute_force_automorphisms(&t.parent_array());
            if automorphism_order(&t) != want.into() {
                failures.push(format!("{t}: brute force gives {want}"));
            }
        }
    }
    Ok(SuiteReport::new(
        "automorphisms",
        failures,
        format!("{checked} trees with n<={max_n} checked against permutation counts"),
        json!({ "trees_checked": checked }),
    ))
}

fn cayley(max_n: usize) -> Result<SuiteReport> {
    let report = cayley_check(max_n)?;
    let failures = report
        .rows
        .iter()
        .filter(|r| !r.holds())
        .map(|r| format!("n={}: {} != {}", r.n, render_rational(&r.lhs), render_rational(&r.rhs)))
        .chain((!report.series_identity).then(|| "series identity fails".to_string()))
        .collect();
    Ok(SuiteReport::new(
        "cayley",
        failures,
        format!("sum of 1/alpha equals n^(n-1)/n! for n=1..{max_n}"),
        report.to_json(),
    ))
}

fn four_specs<R>(
    max_degree: usize,
    mut poly: impl FnMut(InvariantSpec<crate::algebra::Polynomial>) -> Result<R>,
    mut qsym: impl FnMut(InvariantSpec<QSymElement>) -> Result<R>,
) -> Result<Vec<R>> {
    Ok(vec![
        poly(strict_order_spec())?,
        poly(order_spec())?,
        qsym(qsym_strict_spec(max_degree))?,
        qsym(qsym_weak_spec(max_degree))?,
    ])
}

fn compare_sequences<A: AlgebraElement>(spec: InvariantSpec<A>, max_n: usize) -> Result<(String, Vec<String>)> {
    let inv = Invariant::new(spec);
    let rec = u_by_recurrence(&inv, max_n)?;
    let enu = u_by_enumeration(&inv, max_n)?;
    let failures = (1..=max_n)
        .filter(|&n| rec.term(n) != enu.term(n))
        .map(|n| format!("{}: U_{n} differs", inv.name()))
        .collect();
    Ok((inv.name().to_string(), failures))
}

fn recurrence(max_n: usize) -> Result<SuiteReport> {
    let results = four_specs(max_n, |s| compare_sequences(s, max_n), |s| compare_sequences(s, max_n))?;
    let names: Vec<String> = results.iter().map(|(n, _)| n.clone()).collect();
    let failures = results.into_iter().flat_map(|(_, f)| f).collect();
    Ok(SuiteReport::new(
        "recurrence",
        failures,
        format!("recurrence equals enumeration for n<={max_n}"),
        json!({ "invariants": names }),
    ))
}

fn residual<A: AlgebraElement>(spec: InvariantSpec<A>, max_n: usize) -> Result<(String, Vec<String>)> {
    let inv = Invariant::new(spec);
    let r = verify_functional_equation(&inv, max_n)?;
    let failures = (0..=max_n)
        .filter(|&k| !r.coeff(k).is_zero_value())
        .map(|k| format!("{}: residual at q^{k} is {}", inv.name(), r.coeff(k).canonical_text()))
        .collect();
    Ok((inv.name().to_string(), failures))
}

fn functional(max_n: usize) -> Result<SuiteReport> {
    let results = four_specs(max_n, |s| residual(s, max_n), |s| residual(s, max_n))?;
    let names: Vec<String> = results.iter().map(|(n, _)| n.clone()).collect();
    let failures = results.into_iter().flat_map(|(_, f)| f).collect();
    Ok(SuiteReport::new(
        "functional",
        failures,
        format!("functional-equation residuals vanish through q^{max_n}"),
        json!({ "invariants": names }),
    ))
}

fn all_trees(max_n: usize) -> Result<Vec<RootedTree>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate_trees(n)?);
    }
    Ok(out)
}

fn order_polynomials(max_n: usize, max_m: usize) -> Result<SuiteReport> {
    let mut failures = Vec::new();
    let trees = all_trees(max_n)?;
    for t in &trees {
        let (strict, weak) = (strict_order_poly(t), order_poly(t));
        for m in 1..=max_m {
            let at = Rational::from_integer(m.into());
            for (name, poly, flag) in [("strict", &strict, true), ("weak", &weak, false)] {
                let want = brute_force_order_count(t, m, flag)?;
                if poly.eval_at(&at) != Rational::from_integer(want.into()) {
                    failures.push(format!("{name} {t} at m={m}: brute force gives {want}"));
                }
            }
        }
    }
    Ok(SuiteReport::new(
        "order-poly",
        failures,
        format!("{} trees with n<={max_n}, m<={max_m}", trees.len()),
        json!({ "trees_checked": trees.len() }),
    ))
}

fn quasi_symmetric(max_n: usize) -> Result<SuiteReport> {
    let mut failures = Vec::new();
    let trees = all_trees(max_n)?;
    for t in &trees {
        let v = t.vertex_count();
        let m = v + 2;
        for (name, value, flag) in [("strict", qsym_strict(t, v)?, true), ("weak", qsym_weak(t, v)?, false)] {
            if qsym_to_finite(&value, m, v)? != brute_force_qsym(t, m, flag)? {
                failures.push(format!("{name} {t} over {m} variables"));
            }
        }
    }
    Ok(SuiteReport::new(
        "qsym",
        failures,
        format!("{} trees with n<={max_n} expanded over n+2 variables", trees.len()),
        json!({ "trees_checked": trees.len() }),
    ))
}

fn specialization(max_n: usize, max_m: u64) -> Result<SuiteReport> {
    let mut failures = Vec::new();
    let trees = all_trees(max_n)?;
    for t in &trees {
        let k = qsym_strict(t, t.vertex_count())?;
        let p = strict_order_poly(t);
        for m in 1..=max_m {
            if k.principal_specialization(m) != p.eval_at(&Rational::from_integer(m.into())) {
                failures.push(format!("{t} at m={m}"));
            }
        }
    }
    Ok(SuiteReport::new(
        "specialization",
        failures,
        format!("{} trees with n<={max_n}, m<={max_m}", trees.len()),
        json!({ "trees_checked": trees.len() }),
    ))
}

/// Collisions are findings rather than failures, so this suite always
/// passes; the report lists any it finds.
fn collisions(max_n: usize) -> Result<SuiteReport> {
    let inv = Invariant::new(qsym_strict_spec(max_n));
    let found = collision_report(&inv, max_n);
    Ok(SuiteReport::new(
        "collisions",
        Vec::new(),
        format!("{} collisions for {} on n<={max_n}", found.len(), inv.name()),
        json!({ "collisions": found.iter().map(|c| c.to_json()).collect::<Vec<_>>() }),
    ))
}

fn planar(max_n: usize) -> Result<SuiteReport> {
    let mut failures = Vec::new();
    for labels in [vec!["a"], vec!["a", "b"]] {
        let d = LabelSet::new(labels)?;
        let ops = free_word_family(&d, max_n);
        let rec = u_planar_by_recurrence(&ops, max_n)?;
        let enu = u_planar_by_enumeration(&ops, max_n)?;
        if rec != enu {
            failures.push(format!("|D|={}: recurrence differs from enumeration", d.len()));
        }
        for n in 1..=max_n {
            let got = enumerate_planar(n, &d)?.len();
            let want = catalan(n - 1) * num_bigint::BigUint::from(d.len()).pow(n as u32);
            if num_bigint::BigUint::from(got) != want {
                failures.push(format!("|D|={}, n={n}: {got} planar trees, expected {want}", d.len()));
            }
        }
        let r = planar_functional_residual(&ops, max_n)?;
        if !r.is_zero() {
            failures.push(format!("|D|={}: planar residual is nonzero", d.len()));
        }
    }
    Ok(SuiteReport::new(
        "planar",
        failures,
        format!("planar recurrence, census and residual through n={max_n}, |D|<=2"),
        json!({}),
    ))
}

fn cocycle(max_n: usize) -> Result<SuiteReport> {
    let d = LabelSet::new(["a", "b"])?;
    let bound = max_n + 1;
    let mut samples = Vec::new();
    for n in 0..=max_n {
        samples.extend(enumerate_planar_forests(n, &d)?);
    }
    let report = check_cocycle_consistency(&samples, &free_word_family(&d, bound), bound)?;
    Ok(SuiteReport::new(
        "cocycle",
        report.failures.clone(),
        format!(
            "{} planar forests with <={max_n} vertices, {} graft checks",
            report.forests_checked, report.graft_checks
        ),
        report.to_json(),
    ))
}

/// All monomials in `x_1..x_m` of degree at most `d`. By linearity these
/// inputs cover every polynomial in that space.
fn monomials(m: usize, d: usize) -> Vec<FiniteVarPoly> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, m: usize, d: usize, out: &mut Vec<FiniteVarPoly>) {
        if i == m {
            let mut p = FiniteVarPoly::zero(m, d);
            p.add_term(cur.clone(), Rational::one());
            out.push(p);
            return;
        }
        for e in 0..=left {
            cur.push(e);
            go(i + 1, left - e, cur, m, d, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d as u32, &mut Vec::new(), m, d, &mut out);
    out
}

fn compositions_of(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=n)
        .flat_map(|first| {
            compositions_of(n - first).into_iter().map(move |rest| {
                let mut c = vec![first];
                c.extend(rest);
                c
            })
        })
        .collect()
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

fn shift_identities() -> Result<SuiteReport> {
    let mut failures = Vec::new();

    // x_m S^k = S^k x_{m-k}, 1 <= k < m <= 6, inputs of degree <= 4
    let inputs = monomials(6, 4);
    let widen = |p: &FiniteVarPoly| p.restrict(6, 5);
    for p in inputs.iter().map(widen) {
        for m in 2..=6 {
            for k in 1..m {
                let lhs = p.shift_pow(k).mul_var(m);
                let rhs = p.mul_var(m - k).shift_pow(k);
                if lhs != rhs {
                    failures.push(format!("x_{m} S^{k} on {p}"));
                }
            }
        }
    }

    // (1 - S) Λ̄ = x_1 S where Λ̄ stays within the degree bound
    for p in inputs.iter().map(widen) {
        let lb = finite_model::lambda_bar(&p);
        let lhs = lb.add(&finite_model::shift_s(&lb).scale(&-Rational::one()));
        let rhs = finite_model::shift_s(&p).mul_var(1);
        if lhs != rhs {
            failures.push(format!("(1-S) lambda-bar on {p}"));
        }
    }

    // closed-form basis action against the defining sums, shift-safe region
    let (m, d) = (10usize, 5usize);
    let safe = m - d;
    for w in 0..d as u32 {
        for alpha in compositions_of(w) {
            let mono = QSymElement::m(&alpha, d);
            let finite = qsym_to_finite(&mono, m, d)?;
            let pairs = [
                ("lambda-bar", lambda_bar(&mono), finite_model::lambda_bar(&finite)),
                ("lambda", lambda(&mono), finite_model::lambda(&finite)),
            ];
            for (name, closed, direct) in pairs {
                if qsym_to_finite(&closed, m, d)?.support_within(safe) != direct.support_within(safe) {
                    failures.push(format!("{name} on M{alpha:?}"));
                }
            }
        }
    }

    // injectivity: full column rank from degree n to degree n+1
    let mut ranks = Vec::new();
    for n in 0..=5u32 {
        let cols = compositions_of(n);
        let targets = compositions_of(n + 1);
        for (name, op) in [("lambda-bar", lambda_bar as fn(&QSymElement) -> QSymElement), ("lambda", lambda)] {
            let images: Vec<QSymElement> = cols.iter().map(|a| op(&QSymElement::m(a, n as usize + 1))).collect();
            let rows: Vec<Vec<Rational>> = targets
                .iter()
                .map(|b| images.iter().map(|img| img.coeff(b)).collect())
                .collect();
            let r = rank(rows);
            if r != cols.len() {
                failures.push(format!("{name} on degree {n}: rank {r} < {}", cols.len()));
            }
            ranks.push(json!({ "operator": name, "degree": n, "rank": r, "columns": cols.len() }));
        }
    }

    Ok(SuiteReport::new(
        "shift",
        failures,
        "shift commutation, (1-S) lambda-bar = x1 S, basis action and injectivity".to_string(),
        json!({ "ranks": ranks }),
    ))
}
