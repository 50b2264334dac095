//! Show the plan behind a flattening: which rule decided each inherited
//! member, what was renamed, and which references were rewritten.
//!
//!     cargo run --example flatten_plan [-- --json]

use flatjava::flatten::{flatten_class, plans_to_json, FlattenedClass};
use flatjava::pipeline::analyze_sources;

const SOURCES: [(&str, &str); 2] = [
    (
        "Base.java",
        "class Base {
            public int size;
            private int hidden;
            private int spare;
            public int grow() { size = size + step(); return size; }
            private int step() { return hidden + 1; }
            private void unused() { }
        }",
    ),
    (
        "Derived.java",
        "class Derived extends Base {
            int size;
            int both() { return size + super.size + super.grow(); }
        }",
    ),
];

fn main() {
    let json = std::env::args().any(|a| a == "--json");
    let analysis = analyze_sources(&SOURCES).expect("sample is valid");
    let model = &analysis.model;

    let base_decl = model.class("Base").unwrap().decl.clone();
    let base = FlattenedClass::identity(None, base_decl);
    let derived = flatten_class(model, "Derived", Some(&base)).expect("Derived flattens");
    let plan = &derived.plan;

    if json {
        print!("{}", plans_to_json([plan]));
        return;
    }
    println!("fates:");
    for line in plan.lines() {
        println!("  {line}");
    }
    println!("\nrewrites:");
    for r in &plan.rewrites {
        let new = &r.new;
        println!("  {} at {}: {} -> {new}", if r.in_pulled_body { "pulled" } else { "own" }, r.site, r.old_text());
    }
    println!("\nrule counts:");
    for (rule, n) in plan.rule_counts() {
        println!("  {rule}: {n}");
    }
    for d in &plan.diagnostics {
        println!("\n{d}");
    }
}
