//! Build the class model for a small hierarchy and list what it knows:
//! flatten order, overrides, member accesses and warnings.
//!
//!     cargo run --example inspect_model [-- DIR_OR_FILES... [--json]]

use flatjava::model::compute_access_graph;
use flatjava::pipeline::{analyze, analyze_sources};
use std::path::PathBuf;

const SHAPES: [(&str, &str); 2] = [
    (
        "Shape.java",
        "class Shape {
            protected double x;
            private String label;
            public void move(double dx) { x = x + dx; }
            public static final String describe() { return \"shape\"; }
        }",
    ),
    (
        "Square.java",
        "class Square extends Shape {
            double x;
            public void move(double dx) { super.move(dx * 2); }
            public static String describe() { return \"square\"; }
        }",
    ),
];

fn main() {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    let json = args.iter().any(|a| a == "--json");
    args.retain(|a| a != "--json");
    let analysis = if args.is_empty() {
        analyze_sources(&SHAPES)
    } else {
        analyze(&args.iter().map(PathBuf::from).collect::<Vec<_>>())
    };
    let analysis = analysis.unwrap_or_else(|problems| {
        problems.iter().for_each(|p| eprintln!("{p}"));
        std::process::exit(2)
    });
    let model = &analysis.model;
    let graph = compute_access_graph(model).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        std::process::exit(2)
    });
    if json {
        println!("{}", model.to_json(&graph));
        return;
    }
    println!("order: {}", model.topological_order().join(" -> "));
    println!("\noverrides:");
    for o in model.overrides() {
        println!("  {} over {} ({:?})", o.sub, o.sup, o.legality);
    }
    println!("\naccesses:");
    for e in &graph.edges {
        println!("  {e}");
    }
    println!("\nwarnings:");
    for d in model.diagnostics() {
        println!("  {d}");
    }
}
