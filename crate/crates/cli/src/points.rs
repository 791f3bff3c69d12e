//! Expansion of suite grids into parameter points.

use qcti::identities::{IdentityParams, VanishingCase, Which};
use qcti::partitions::{partitions_up_to, Partition};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{CombinatoricsGrid, ExtensionGrid, IdentityGrid, SplittingGrid, SuiteSpec, VanishingGrid};

/// What to evaluate at one point.
#[derive(Clone, Debug)]
pub enum Task {
    Identity(IdentityParams),
    Splitting { form: String, n: usize, n0: usize, c: u32 },
    Vanishing(VanishingCase),
    Monotone { s: usize },
    Key { s: usize, b: u32, c: u32, t: u32 },
    Subs { s: usize, b: u32, c: u32, tt: u32 },
    SpecialCase { n: usize, b: u32, c: u32 },
    Roots(Which, IdentityParams),
    Polynomiality(Which, IdentityParams, usize),
    SpecialPoint(Which, IdentityParams),
}

/// One parameter point of a suite.
#[derive(Clone, Debug)]
pub struct Point {
    pub suite: &'static str,
    pub task: Task,
    /// Compact `key=value` rendering for the text report.
    pub label: String,
    pub params: Value,
    /// Set when the point is outside the suite's domain.
    pub skip: Option<String>,
}

impl Point {
    fn new(suite: &'static str, task: Task, params: Value) -> Self {
        let label = label_of(&params);
        Point { suite, task, label, params, skip: None }
    }

    fn skip_if(mut self, reason: Option<&str>) -> Self {
        self.skip = reason.map(str::to_string);
        self
    }
}

fn label_of(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| match x {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={}", other.to_string().replace(' ', "")),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn to_json<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).unwrap_or(Value::Null)
}

/// Negative values cannot be represented in unsigned slots; the point is
/// then skipped with the constraint name.
fn nat(v: i64) -> Option<u32> {
    u32::try_from(v).ok()
}

fn nat_usize(v: i64) -> Option<usize> {
    usize::try_from(v).ok()
}

fn identity_points(suite: &'static str, g: &IdentityGrid) -> Vec<Point> {
    let mut out = Vec::new();
    let vals = |r: &crate::config::Range| r.values();
    let single = [0i64];
    let uses = |field: &str| -> bool {
        matches!(
            (suite, field),
            ("thm11", "n0" | "l" | "mu") | ("thm12", "n0" | "l" | "m") | ("aflt", "lambda" | "mu")
        )
    };
    let n0s = if uses("n0") { vals(&g.n0) } else { single.to_vec() };
    let ls = if uses("l") { vals(&g.l) } else { single.to_vec() };
    let ms = if uses("m") { vals(&g.m) } else { single.to_vec() };
    let mus = if uses("mu") { g.mu.clone() } else { vec![Partition::empty()] };
    let lambdas = if uses("lambda") { g.lambda.clone() } else { vec![Partition::empty()] };
    for n in vals(&g.n) {
        for &n0 in &n0s {
            for &m in &ms {
                for b in vals(&g.b) {
                    for c in vals(&g.c) {
                        for &l in &ls {
                            for lambda in &lambdas {
                                for mu in &mus {
                                    for a in vals(&g.a) {
                                        out.push(identity_point(suite, n, n0, a, b, c, l, m, lambda, mu));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn identity_point(
    suite: &'static str,
    n: i64,
    n0: i64,
    a: i64,
    b: i64,
    c: i64,
    l: i64,
    m: i64,
    lambda: &Partition,
    mu: &Partition,
) -> Point {
    let mut params = serde_json::Map::new();
    params.insert("n".into(), json!(n));
    if matches!(suite, "thm11" | "thm12") {
        params.insert("n0".into(), json!(n0));
    }
    params.insert("a".into(), json!(a));
    params.insert("b".into(), json!(b));
    params.insert("c".into(), json!(c));
    if matches!(suite, "thm11" | "thm12") {
        params.insert("l".into(), json!(l));
    }
    if suite == "thm12" {
        params.insert("m".into(), json!(m));
    }
    if suite == "aflt" {
        params.insert("lambda".into(), to_json(lambda));
    }
    if matches!(suite, "thm11" | "aflt") {
        params.insert("mu".into(), to_json(mu));
    }
    let params = Value::Object(params);
    let c_name = if suite == "qmorris" { "c >= 0" } else { "c >= 1" };
    let neg = [(n, "n >= 1"), (n0, "0 <= n0 < n"), (b, "b >= 0"), (c, c_name), (l, "l >= 0"), (m, "m >= 0")];
    let bad = neg.iter().find(|(v, _)| *v < 0).map(|(_, w)| *w);
    let ip = match bad {
        Some(_) => IdentityParams::qmorris(1, 0, 0, 0),
        None => {
            let (n, n0, b, c, l, m) = (n as usize, n0 as usize, b as u32, c as u32, l as u32, m as usize);
            match suite {
                "qmorris" => IdentityParams::qmorris(n, a, b, c),
                "thm11" => IdentityParams::thm11(n, n0, a, b, c, l, mu.clone()),
                "thm12" => IdentityParams::thm12(n, n0, a, b, c, l, m),
                _ => IdentityParams::aflt(n, a, b, c, lambda.clone(), mu.clone()),
            }
        }
    };
    let skip = bad.or_else(|| ip.violated_constraint());
    Point::new(suite, Task::Identity(ip), params).skip_if(skip)
}

fn splitting_points(g: &SplittingGrid) -> Vec<Point> {
    let mut out = Vec::new();
    for n in g.n.values() {
        for n0 in g.n0.values() {
            for c in g.c.values() {
                for form in &g.forms {
                    let params = json!({ "form": form, "n": n, "n0": n0, "c": c });
                    let skip = if n < 1 {
                        Some("n >= 1")
                    } else if n0 < 0 || n0 > n {
                        Some("0 <= n0 <= n")
                    } else if c < 0 {
                        Some("c >= 0")
                    } else {
                        None
                    };
                    let task = Task::Splitting {
                        form: form.clone(),
                        n: n.max(0) as usize,
                        n0: n0.max(0) as usize,
                        c: c.max(0) as u32,
                    };
                    out.push(Point::new("splitting", task, params).skip_if(skip));
                }
            }
        }
    }
    out
}

fn compositions(n: usize, total: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All `v` in `[lo, hi]^n` with the given sum.
fn bounded_vectors(n: usize, lo: i32, hi: i32, sum: i32) -> Vec<Vec<i32>> {
    if n == 0 {
        return if sum == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for x in lo..=hi {
        for mut rest in bounded_vectors(n - 1, lo, hi, sum - x) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

fn vanishing_cases(g: &VanishingGrid) -> Vec<VanishingCase> {
    let mut cases = Vec::new();
    let has = |k: &str| g.kinds.iter().any(|x| x == k);
    let pos = |v: i64| v >= 0;
    let cs: Vec<u32> = g.c.values().into_iter().filter(|&c| c >= 1).map(|c| c as u32).collect();
    if has("ex38") {
        cases.extend(cs.iter().map(|&c| VanishingCase::Ex38 { c }));
    }
    for n in g.n.values().into_iter().filter(|&n| n >= 1).map(|n| n as usize) {
        for n0 in g.n0.values().into_iter().filter(|&v| pos(v) && v as usize <= n).map(|v| v as usize) {
            for &c in &cs {
                if has("lem36") {
                    for lambda in partitions_up_to(g.max_size).into_iter().filter(|l| !l.is_empty()) {
                        for v in bounded_vectors(n, -2, lambda.part(1) as i32 - 1, lambda.size() as i32) {
                            cases.push(VanishingCase::Lem36 { n, n0, c, v, lambda: lambda.clone() });
                        }
                    }
                }
                if has("lem37") {
                    for l in g.l.values().into_iter().filter(|&v| v >= 1) {
                        for m in g.m.values().into_iter().filter(|&v| pos(v)) {
                            cases.push(VanishingCase::Lem37 { n, n0, c, l: l as u32, m: m as u32 });
                        }
                    }
                }
                if has("lem310") && n0 >= 2 && n0 < n {
                    for h in 1..n0 as u32 {
                        let sum = h as i64 * (n - n0) as i64 - n0 as i64;
                        if sum < 0 || sum > g.max_sum as i64 {
                            continue;
                        }
                        for t in compositions(n, sum as u32) {
                            cases.push(VanishingCase::Lem310 { n, n0, c, h, t });
                        }
                    }
                }
            }
        }
    }
    cases.extend(g.cases.iter().cloned());
    cases
}

fn combinatorics_points(g: &CombinatoricsGrid) -> Vec<Point> {
    let mut out = Vec::new();
    let has = |k: &str| g.kinds.iter().any(|x| x == k);
    let ss: Vec<i64> = g.s.values();
    let push = |out: &mut Vec<Point>, task: Task, params: Value, skip: Option<&str>| {
        out.push(Point::new("combinatorics", task, params).skip_if(skip));
    };
    for &s in &ss {
        let s_ok = (s >= 1).then_some(s as usize);
        if has("monotone") {
            let skip = s_ok.is_none().then_some("s >= 1");
            push(&mut out, Task::Monotone { s: s_ok.unwrap_or(1) }, json!({"check": "monotone", "s": s}), skip);
        }
        for b in g.b.values() {
            for c in g.c.values() {
                let skip = if s_ok.is_none() {
                    Some("s >= 1")
                } else if b < 0 {
                    Some("b >= 0")
                } else if c < 1 {
                    Some("c >= 1")
                } else {
                    None
                };
                let (su, bu, cu) = (s_ok.unwrap_or(1), nat(b).unwrap_or(0), nat(c).unwrap_or(1));
                if has("key") {
                    for t in g.t.values() {
                        let skip = skip.or((t < 1).then_some("t >= 1"));
                        let task = Task::Key { s: su, b: bu, c: cu, t: nat(t).unwrap_or(1) };
                        push(&mut out, task, json!({"check": "key", "s": s, "b": b, "c": c, "t": t}), skip);
                    }
                }
                if has("subs") {
                    for tt in g.t.values() {
                        let skip = skip.or((tt < 0).then_some("tt >= 0"));
                        let task = Task::Subs { s: su, b: bu, c: cu, tt: nat(tt).unwrap_or(0) };
                        push(&mut out, task, json!({"check": "subs", "s": s, "b": b, "c": c, "tt": tt}), skip);
                    }
                }
                if has("specialcase") {
                    let task = Task::SpecialCase { n: su, b: bu, c: cu };
                    push(&mut out, task, json!({"check": "specialcase", "n": s, "b": b, "c": c}), skip);
                }
            }
        }
    }
    out
}

fn extension_points(suite: &'static str, g: &ExtensionGrid) -> Vec<Point> {
    let mut out = Vec::new();
    for which in &g.which {
        let w = if which == "B" { Which::B } else { Which::C };
        for n in g.n.values() {
            for n0 in g.n0.values() {
                for b in g.b.values() {
                    for c in g.c.values() {
                        for l in g.l.values() {
                            let rows: Vec<(i64, Partition)> = match w {
                                Which::B => g.mu.iter().map(|mu| (0, mu.clone())).collect(),
                                Which::C => g.m.values().into_iter().map(|m| (m, Partition::empty())).collect(),
                            };
                            for (m, mu) in rows {
                                let mut params = json!({ "which": which, "n": n, "n0": n0, "b": b, "c": c, "l": l });
                                if w == Which::B {
                                    params["mu"] = to_json(&mu);
                                } else {
                                    params["m"] = json!(m);
                                }
                                let bad = [(n, "n >= 1"), (n0, "0 <= n0 < n"), (b, "b >= 0"), (c, "c >= 1"), (l, "l >= 0"), (m, "m >= 0")]
                                    .into_iter()
                                    .find(|(v, _)| *v < 0)
                                    .map(|(_, k)| k);
                                let u = |v: i64| nat(v).unwrap_or(0);
                                let ip = match w {
                                    Which::B => IdentityParams::thm11(
                                        nat_usize(n).unwrap_or(0),
                                        nat_usize(n0).unwrap_or(0),
                                        0,
                                        u(b),
                                        u(c),
                                        u(l),
                                        mu,
                                    ),
                                    Which::C => IdentityParams::thm12(
                                        nat_usize(n).unwrap_or(0),
                                        nat_usize(n0).unwrap_or(0),
                                        0,
                                        u(b),
                                        u(c),
                                        u(l),
                                        nat_usize(m).unwrap_or(0),
                                    ),
                                };
                                let skip = bad.or_else(|| ip.violated_constraint());
                                let task = match suite {
                                    "roots" => Task::Roots(w, ip),
                                    "polynomiality" => Task::Polynomiality(w, ip, g.extra),
                                    _ => Task::SpecialPoint(w, ip),
                                };
                                out.push(Point::new(suite, task, params).skip_if(skip));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// All points of one suite, in a fixed order.
pub fn expand(suite: &SuiteSpec) -> Vec<Point> {
    match suite {
        SuiteSpec::Qmorris(g) => identity_points("qmorris", g),
        SuiteSpec::Thm11(g) => identity_points("thm11", g),
        SuiteSpec::Thm12(g) => identity_points("thm12", g),
        SuiteSpec::Aflt(g) => identity_points("aflt", g),
        SuiteSpec::Splitting(g) => splitting_points(g),
        SuiteSpec::Vanishing(g) => vanishing_cases(g)
            .into_iter()
            .map(|case| {
                let params = to_json(&case);
                Point::new("vanishing", Task::Vanishing(case), params)
            })
            .collect(),
        SuiteSpec::Combinatorics(g) => combinatorics_points(g),
        SuiteSpec::Roots(g) => extension_points("roots", g),
        SuiteSpec::Polynomiality(g) => extension_points("polynomiality", g),
        SuiteSpec::SpecialPoints(g) => extension_points("special_points", g),
    }
}
