//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use common::{fixture_names, fixtures_dir, Fixture};
use flatjava::advisory::{advise, Application};
use flatjava::cli::{run, Io};
use flatjava::flatten::{flatten_all, FlattenOutcome, Rule};
use flatjava::metrics::{attribute_uses, compare, measure_original, PairCounts, View};
use flatjava::model::{compute_access_graph, ClassModel, MemberKind};
use flatjava::syntax::{parse_source, tokenize, FileId, SourceUnit};
use flatjava::EmitOptions;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::panic;
use std::path::Path;
use std::time::{Duration, Instant};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn parse_all(srcs: &[String]) -> Result<Vec<SourceUnit>, String> {
    srcs.iter()
        .enumerate()
        .map(|(i, s)| parse_source(FileId(i as u32), s).map_err(|e| format!("{e}\n{s}")))
        .collect()
}

fn model_of(srcs: &[String]) -> Result<ClassModel, String> {
    ClassModel::build(&parse_all(srcs)?).map_err(|e| e.to_string())
}

fn lexemes(text: &str) -> Vec<String> {
    tokenize(text).expect("lexes").into_iter().map(|t| t.lexeme).collect()
}

// ---------------------------------------------------------------- 1

#[derive(Clone, Copy, Debug, PartialEq)]
enum Kind {
    Attribute,
    Method,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Access {
    None,
    Direct,
    Chain,
}

/// (superclass member static, subclass member static)
const STATICNESS: [(bool, bool); 4] = [(false, false), (true, true), (true, false), (false, true)];
const VISIBILITIES: [&str; 4] = ["public", "", "protected", "private"];

#[derive(Clone, Copy, Debug)]
struct Case {
    kind: Kind,
    vis: &'static str,
    overridden: bool,
    access: Access,
    statics: (bool, bool),
}

impl Case {
    fn all() -> Vec<Case> {
        let mut out = Vec::new();
        for kind in [Kind::Attribute, Kind::Method] {
            for vis in VISIBILITIES {
                for overridden in [false, true] {
                    for access in [Access::None, Access::Direct, Access::Chain] {
                        for statics in STATICNESS {
                            out.push(Case {
                                kind,
                                vis,
                                overridden,
                                access,
                                statics,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    fn decl(&self, is_static: bool) -> String {
        let mut mods: Vec<&str> = Vec::new();
        if !self.vis.is_empty() {
            mods.push(self.vis);
        }
        if is_static {
            mods.push("static");
        }
        let head = mods.iter().map(|m| format!("{m} ")).collect::<String>();
        match self.kind {
            Kind::Attribute => format!("{head}int m;"),
            Kind::Method => format!("{head}void m() {{ }}"),
        }
    }

    fn sources(&self) -> Vec<String> {
        let touch = match self.kind {
            Kind::Attribute => "m = 1;",
            Kind::Method => "m();",
        };
        let (in_entry, in_hop, call_hop) = match self.access {
            Access::None => ("", "", ""),
            Access::Direct => (touch, "", ""),
            Access::Chain => ("", touch, "hop();"),
        };
        let a = format!(
            "class A {{\n  {}\n  public void entry() {{ {in_entry} {call_hop} }}\n  private void hop() {{ {in_hop} }}\n}}\n",
            self.decl(self.statics.0)
        );
        let b = if self.overridden {
            format!("class B extends A {{\n  {}\n}}\n", self.decl(self.statics.1))
        } else {
            "class B extends A {\n}\n".to_string()
        };
        vec![a, b]
    }

    /// Expected `(member, rule id, decision)` for every member of A,
    /// written out from the decision table without using the library.
    fn oracle(&self) -> BTreeSet<(String, String, String)> {
        let visible = self.vis != "private";
        let used = self.access != Access::None;
        let legal = self.statics.0 == self.statics.1;
        let overriding = self.overridden && legal;
        let (rule, pulled) = match (self.kind, overriding) {
            (Kind::Attribute, false) if visible => ("R1", true),
            (Kind::Attribute, false) if used => ("R2", true),
            (Kind::Attribute, false) => ("R3", false),
            (Kind::Attribute, true) if used => ("R4a", true),
            (Kind::Attribute, true) if visible => ("R4b", true),
            (Kind::Attribute, true) => ("R4c", false),
            (Kind::Method, false) if visible => ("R5", true),
            (Kind::Method, true) if visible => ("R6", true),
            (Kind::Method, _) if used => ("R7", true),
            (Kind::Method, _) => ("R8", false),
        };
        let decision = if !pulled {
            if self.overridden && !legal && !["R3", "R4c", "R8"].contains(&rule) {
                "Drop"
            } else {
                "DropAnomaly"
            }
        } else if self.overridden && !legal {
            "Drop"
        } else if overriding {
            "PullDownRenamed"
        } else {
            "PullDown"
        };
        let hop = if self.access == Access::Chain {
            ("R7", "PullDown")
        } else {
            ("R8", "DropAnomaly")
        };
        let kind = match self.kind {
            Kind::Attribute => "attribute",
            Kind::Method => "method",
        };
        let m = if self.kind == Kind::Method { "m()" } else { "m" };
        [
            (format!("{kind} A.{m}"), rule, decision),
            ("method A.entry()".to_string(), "R5", "PullDown"),
            ("method A.hop()".to_string(), hop.0, hop.1),
        ]
        .into_iter()
        .map(|(a, b, c)| (a, b.to_string(), c.to_string()))
        .collect()
    }
}

fn decision_table() -> Check {
    let start = Instant::now();
    let cases = Case::all();
    ensure(cases.len() >= 128, || format!("only {} cases", cases.len()))?;
    let mut fired = BTreeSet::new();
    for case in &cases {
        let srcs = case.sources();
        let model = model_of(&srcs).map_err(|e| format!("{case:?}: {e}"))?;
        let out = flatten_all(&model);
        let plan = out
            .plans
            .get("B")
            .ok_or_else(|| format!("{case:?}: no plan for B: {:?}", out.errors))?;
        let got: BTreeSet<(String, String, String)> = plan
            .lines()
            .iter()
            .map(|l| {
                let f: Vec<&str> = l.split(' ').collect();
                (format!("{} {}", f[1], f[2]), f[3].to_string(), f[4].to_string())
            })
            .collect();
        let want = case.oracle();
        ensure(got == want, || format!("{case:?}\n{}{}\n got {got:?}\nwant {want:?}", srcs[0], srcs[1]))?;
        fired.extend(got.into_iter().map(|(_, r, _)| r));
    }
    let elapsed = start.elapsed();
    ensure(fired.len() == Rule::ALL.len(), || format!("rules reached: {fired:?}"))?;
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("{} cases agree with the table oracle in {elapsed:.2?}", cases.len()))
}

// ---------------------------------------------------------------- 2

struct Gen<'r> {
    rng: &'r mut ChaCha8Rng,
}

impl Gen<'_> {
    fn vis(&mut self) -> &'static str {
        ["public ", "", "protected ", "private "].choose(self.rng).unwrap()
    }

    fn atom(&mut self, names: &[String]) -> String {
        if names.is_empty() || self.rng.gen_bool(0.3) {
            self.rng.gen_range(0..10).to_string()
        } else {
            names.choose(self.rng).unwrap().clone()
        }
    }

    fn expr(&mut self, names: &[String]) -> String {
        let a = self.atom(names);
        match self.rng.gen_range(0..3) {
            0 => a,
            1 => format!("{a} + {}", self.atom(names)),
            _ => format!("({a} - {}) * 2", self.atom(names)),
        }
    }

    /// A superclass-free class in loose formatting.
    fn class(&mut self, index: usize) -> String {
        let name = format!("Gen{index}");
        let mut out = String::new();
        if self.rng.gen_bool(0.3) {
            writeln!(out, "package gen.p{index};").unwrap();
        }
        let public = if self.rng.gen_bool(0.5) { "public " } else { "" };
        writeln!(out, "{public}class {name} {{").unwrap();
        let fields: Vec<String> = (0..self.rng.gen_range(0..5)).map(|i| format!("f{i}")).collect();
        for f in &fields {
            let stat = if self.rng.gen_bool(0.2) { "static " } else { "" };
            let init = if self.rng.gen_bool(0.4) { format!(" = {}", self.rng.gen_range(0..9)) } else { String::new() };
            writeln!(out, "  {}{stat}int {f}{init};", self.vis()).unwrap();
        }
        if self.rng.gen_bool(0.4) {
            let f = fields.first().cloned().unwrap_or_else(|| "v".into());
            let body = if fields.is_empty() { String::new() } else { format!("this.{f} = v;") };
            writeln!(out, "  {public}{name}(int v) {{ {body} }}").unwrap();
        }
        let arities: Vec<usize> = (0..self.rng.gen_range(0..5)).map(|_| self.rng.gen_range(0..3)).collect();
        for (i, &arity) in arities.iter().enumerate() {
            let params: Vec<String> = (0..arity).map(|k| format!("p{k}")).collect();
            let returns = self.rng.gen_bool(0.5);
            let ret = if returns { "int" } else { "void" };
            let plist: Vec<String> = params.iter().map(|p| format!("int {p}")).collect();
            write!(out, "  {}{ret} m{i}({}) {{", self.vis(), plist.join(", ")).unwrap();
            let mut names: Vec<String> = fields.iter().chain(&params).cloned().collect();
            for s in 0..self.rng.gen_range(0..4) {
                match self.rng.gen_range(0..5) {
                    0 => {
                        let e = self.expr(&names);
                        write!(out, " int t{s} = {e};").unwrap();
                        names.push(format!("t{s}"));
                    }
                    1 if !fields.is_empty() => {
                        let f = fields.choose(self.rng).unwrap().clone();
                        let q = if self.rng.gen_bool(0.5) { "this." } else { "" };
                        write!(out, " {q}{f} = {};", self.expr(&names)).unwrap();
                    }
                    2 if !arities.is_empty() => {
                        let j = self.rng.gen_range(0..arities.len());
                        let args: Vec<String> = (0..arities[j]).map(|_| self.atom(&names)).collect();
                        write!(out, " m{j}({});", args.join(", ")).unwrap();
                    }
                    3 => {
                        let c = self.atom(&names);
                        write!(out, "\n    if ({c} > 0) {{ int u{s} = {c}; }} else {{ }}").unwrap();
                    }
                    4 if !names.is_empty() => {
                        let n = names.choose(self.rng).unwrap().clone();
                        write!(out, "\n    while ({n} < 3) {{ {n} = {n} + 1; }}").unwrap();
                    }
                    _ => {}
                }
            }
            if returns {
                write!(out, " return {};", self.expr(&names)).unwrap();
            }
            writeln!(out, " }}").unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

fn flatten_sources(srcs: &[String]) -> Result<(ClassModel, FlattenOutcome), String> {
    let model = model_of(srcs)?;
    let out = flatten_all(&model);
    ensure(out.errors.is_empty(), || format!("{:?}", out.errors))?;
    Ok((model, out))
}

fn identity_and_idempotence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let opts = EmitOptions::default();
    let mut members = 0;
    for i in 0..50 {
        let src = Gen { rng: &mut rng }.class(i);
        let (model, out) = flatten_sources(std::slice::from_ref(&src)).map_err(|e| format!("{e}\n{src}"))?;
        let name = format!("Gen{i}");
        let flat = &out.classes[&name];
        ensure(flat.decl == model.class(&name).unwrap().decl, || format!("decl changed:\n{src}"))?;
        let text = flat.emit(&opts);
        ensure(lexemes(&text) == lexemes(&src), || format!("tokens differ:\n{src}\n---\n{text}"))?;
        let (_, again) = flatten_sources(std::slice::from_ref(&text))?;
        let text2 = again.classes[&name].emit(&opts);
        ensure(text2 == text, || format!("not idempotent:\n{text}\n---\n{text2}"))?;
        members += flat.decl.members.len();
    }
    // every flattened class in the corpus is itself superclass-free
    let mut reflattened = 0;
    for fx in fixture_names() {
        let out = Fixture::load(&fx).flatten();
        let texts: Vec<String> = out.classes.values().map(|c| c.emit(&opts)).collect();
        let (_, again) = flatten_sources(&texts).map_err(|e| format!("{fx}: {e}"))?;
        for (name, c) in &out.classes {
            ensure(again.classes[name].emit(&opts) == c.emit(&opts), || format!("{fx}/{name} changed on re-flattening"))?;
            reflattened += 1;
        }
    }
    Ok(format!(
        "50 generated classes ({members} members) unchanged and stable; {reflattened} corpus outputs re-flatten to themselves"
    ))
}

// ---------------------------------------------------------------- 3

fn closure() -> Check {
    let names = fixture_names();
    ensure(names.len() >= 25, || format!("{} fixtures", names.len()))?;
    ensure(names.iter().any(|n| n.contains("three_level")), || "no 3-level chain".into())?;
    let mut rule_counts: BTreeMap<Rule, usize> = BTreeMap::new();
    let mut files = 0;
    let opts = EmitOptions::default().with_provenance(true);
    for fx in &names {
        let out = Fixture::load(fx).flatten();
        ensure(out.errors.is_empty(), || format!("{fx}: {:?}", out.errors))?;
        for p in out.plans.values() {
            for (r, n) in p.rule_counts() {
                *rule_counts.entry(r).or_default() += n;
            }
        }
        let texts: Vec<String> = out.classes.values().map(|c| c.emit(&opts)).collect();
        let model = model_of(&texts).map_err(|e| format!("{fx}: {e}"))?;
        compute_access_graph(&model).map_err(|e| format!("{fx}: {e}"))?;
        let again = flatten_all(&model);
        ensure(again.errors.is_empty(), || format!("{fx}: {:?}", again.errors))?;
        files += texts.len();
    }
    for r in Rule::ALL {
        ensure(rule_counts.get(&r).copied().unwrap_or(0) >= 2, || format!("{r} fired {rule_counts:?}"))?;
    }
    Ok(format!("{files} emitted files from {} fixtures re-parse and resolve cleanly", names.len()))
}

// ---------------------------------------------------------------- 4

fn goldens() -> Check {
    let opts = EmitOptions::default().with_provenance(true);
    let (mut files, mut rewriting) = (0, 0);
    for fx in fixture_names() {
        let fixture = Fixture::load(&fx);
        let out = fixture.flatten();
        let rewrites = fixture.sources.files().iter().any(|f| f.text.contains("super.")) || out.plans.values().any(|p| p.fates.iter().any(|f| f.new_name.is_some()));
        rewriting += usize::from(rewrites);
        for (class, flat) in &out.classes {
            let got = flat.emit(&opts);
            let want = fixture.golden(class);
            ensure(got == want, || format!("{fx}/{class}:\n{got}---\n{want}"))?;
            files += 1;
        }
    }
    Ok(format!("{files} outputs byte-equal their goldens ({rewriting} fixtures with super. or renames)"))
}

// ---------------------------------------------------------------- 5

fn lcom_oracle() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for i in 0..200 {
        let noa = rng.gen_range(0..=8);
        let nom = rng.gen_range(0..=8);
        let mut src = format!("class L{i} {{\n");
        for a in 0..noa {
            writeln!(src, "  int a{a};").unwrap();
        }
        let mut uses: Vec<BTreeSet<usize>> = Vec::new();
        for m in 0..nom {
            let set: BTreeSet<usize> = (0..noa).filter(|_| rng.gen_bool(0.3)).collect();
            write!(src, "  void m{m}() {{").unwrap();
            for &a in &set {
                match rng.gen_range(0..3) {
                    0 => write!(src, " a{a} = 1;").unwrap(),
                    1 => write!(src, " this.a{a} = 2;").unwrap(),
                    _ => write!(src, " int r{a} = a{a};").unwrap(),
                }
            }
            // noise that must not count as attribute use
            if nom > 1 && rng.gen_bool(0.5) {
                write!(src, " m{}();", (m + 1) % nom).unwrap();
            }
            if let Some(a) = (0..noa).find(|a| !set.contains(a)) {
                if rng.gen_bool(0.5) {
                    write!(src, " int a{a} = 0; a{a} = a{a} + 1;").unwrap();
                }
            }
            writeln!(src, " }}").unwrap();
            uses.push(set);
        }
        src.push_str("}\n");

        let (mut p, mut q) = (0, 0);
        for x in 0..nom {
            for y in x + 1..nom {
                if uses[x].intersection(&uses[y]).next().is_none() {
                    p += 1;
                } else {
                    q += 1;
                }
            }
        }
        let model = model_of(std::slice::from_ref(&src))?;
        let name = format!("L{i}");
        let r = measure_original(&model, &name).map_err(|e| e.to_string())?;
        ensure(r.lcom1 == p && r.lcom2 == p.saturating_sub(q), || {
            format!("{src}got ({}, {}), want ({p}, {})", r.lcom1, r.lcom2, p.saturating_sub(q))
        })?;
        let access = model.analyze(&name).map_err(|e| e.to_string())?;
        let pairs = PairCounts::of(&attribute_uses(&model.class(&name).unwrap().decl, &access));
        ensure(r.lcom1 + pairs.sharing == r.nom * r.nom.saturating_sub(1) / 2, || format!("partition broken:\n{src}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("200 random classes match brute force in {elapsed:.2?}"))
}

// ---------------------------------------------------------------- 6

fn monotonicity() -> Check {
    let mut rows = 0;
    for fx in fixture_names() {
        let fixture = Fixture::load(&fx);
        let out = fixture.flatten();
        let cmp = compare(&fixture.model, &out).map_err(|e| format!("{fx}: {e}"))?;
        for c in cmp {
            let (o, f) = (&c.original, &c.flattened);
            ensure(f.noa >= o.noa && f.nom >= o.nom && f.sloc >= o.sloc, || format!("{fx}/{}: {o:?} vs {f:?}", c.name))?;
            let plan = &out.plans[&c.name];
            let attrs = plan.pulled(MemberKind::Attribute) as i64;
            let methods = plan.pulled(MemberKind::Method) as i64;
            let by_hand_attrs = plan.fates.iter().filter(|f| f.kind == MemberKind::Attribute && f.decision.name().starts_with("PullDown")).count() as i64;
            ensure(attrs == by_hand_attrs, || format!("{fx}/{}: pulled attribute count", c.name))?;
            ensure(c.delta.noa == attrs && c.delta.nom == methods, || {
                format!("{fx}/{}: delta ({}, {}) vs pulled ({attrs}, {methods})", c.name, c.delta.noa, c.delta.nom)
            })?;
            rows += 1;
        }
    }
    Ok(format!("{rows} classes grow monotonically and NOA/NOM deltas equal pulled fates"))
}

// ---------------------------------------------------------------- 7

const ADVISORY_SNAPSHOT: &str = include_str!("snapshots/advise.txt");

fn advisory() -> Check {
    let expected = [
        ("refactoring", View::Original),
        ("adaptability", View::Flattened),
        ("reusability", View::Flattened),
        ("understandability", View::Flattened),
        ("maintainability", View::Flattened),
        ("completeness", View::Flattened),
        ("testability-class", View::Original),
        ("testability-cluster", View::Flattened),
    ];
    ensure(Application::ALL.len() == expected.len(), || "application count".into())?;
    let mut rendered = String::new();
    for (name, view) in expected {
        let app: Application = name.parse()?;
        let a = advise(app);
        ensure(a.view == view, || format!("{name}: {}", a.view))?;
        ensure(!a.justification.trim().is_empty(), || format!("{name}: empty justification"))?;
        let r = cli(&["advise", name]);
        ensure(r.0 == 0, || format!("advise {name} exited {}", r.0))?;
        rendered.push_str(&r.1);
    }
    ensure(rendered == ADVISORY_SNAPSHOT, || format!("snapshot differs:\n{rendered}"))?;
    Ok("8 applications match the fixed mapping and snapshot".into())
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("flatjava").chain(args.iter().copied()),
        &mut Io {
            out: &mut out,
            err: &mut err,
            color: false,
        },
    );
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

// ---------------------------------------------------------------- 8

fn full_run(dir: &Path) -> Result<BTreeMap<String, String>, String> {
    let mut artifacts = BTreeMap::new();
    for fx in fixture_names() {
        let src = fixtures_dir().join(&fx);
        let src = src.to_str().unwrap();
        let out = dir.join(&fx);
        let r = cli(&["flatten", src, "--provenance", "--out", out.to_str().unwrap()]);
        ensure(r.0 == 0, || format!("{fx}: {}", r.2))?;
        artifacts.insert(format!("{fx}/flatten.stderr"), r.2);
        for view in ["original", "flattened"] {
            for format in ["json", "csv", "markdown"] {
                let r = cli(&["metrics", src, "--view", view, "--format", format]);
                artifacts.insert(format!("{fx}/metrics-{view}.{format}"), r.1);
            }
        }
        for format in ["json", "csv", "markdown"] {
            artifacts.insert(format!("{fx}/compare.{format}"), cli(&["compare", src, "--format", format]).1);
        }
        let mut files: Vec<_> = fs::read_dir(&out).map_err(|e| e.to_string())?.map(|e| e.unwrap().path()).collect();
        files.sort();
        for f in files {
            artifacts.insert(
                format!("{fx}/{}", f.file_name().unwrap().to_string_lossy()),
                fs::read_to_string(&f).map_err(|e| e.to_string())?,
            );
        }
    }
    // the whole corpus as one input as well
    let all = cli(&["compare", fixtures_dir().join("10_three_level_chain").to_str().unwrap(), fixtures_dir().join("25_siblings").to_str().unwrap()]);
    artifacts.insert("mixed/compare.json".into(), all.1);
    Ok(artifacts)
}

fn determinism() -> Check {
    let a = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let b = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let first = full_run(a.path())?;
    let second = full_run(b.path())?;
    ensure(first.keys().eq(second.keys()), || "different artifact sets".into())?;
    for (k, v) in &first {
        ensure(&second[k] == v, || format!("{k} differs between runs"))?;
    }
    Ok(format!("{} artifacts byte-identical across two runs", first.len()))
}

// ----------------------------------------------------------------

fn main() {
    let criteria: [Criterion; 8] = [
        ("decision table", decision_table),
        ("identity and idempotence", identity_and_idempotence),
        ("closure", closure),
        ("rewrite goldens", goldens),
        ("metrics oracle", lcom_oracle),
        ("monotonicity", monotonicity),
        ("advisory contract", advisory),
        ("determinism", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let result = panic::catch_unwind(check).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match result {
            Ok(detail) => println!("AC{} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("AC{} FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
