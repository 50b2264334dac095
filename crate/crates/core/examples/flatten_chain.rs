//! Flatten a three-level hierarchy and print every class with the origin
//! of each inherited member.
//!
//!     cargo run --example flatten_chain [-- DIR_OR_FILES...]

use flatjava::flatten::flatten_all;
use flatjava::pipeline::{analyze, analyze_sources};
use flatjava::EmitOptions;
use std::path::PathBuf;

const CHAIN: [(&str, &str); 3] = [
    (
        "Account.java",
        "class Account {
            protected int balance;
            private int ops;
            public void deposit(int v) { balance = balance + v; count(); }
            private void count() { ops = ops + 1; }
        }",
    ),
    (
        "Savings.java",
        "class Savings extends Account {
            public double rate;
            public void accrue() { deposit(1); }
        }",
    ),
    (
        "Junior.java",
        "class Junior extends Savings {
            protected int balance;
            public void deposit(int v) { super.deposit(v); }
            int total() { return super.balance + balance; }
        }",
    ),
];

fn main() {
    let args: Vec<PathBuf> = std::env::args().skip(1).map(PathBuf::from).collect();
    let analysis = if args.is_empty() { analyze_sources(&CHAIN) } else { analyze(&args) };
    let analysis = analysis.unwrap_or_else(|problems| {
        problems.iter().for_each(|p| eprintln!("{p}"));
        std::process::exit(2)
    });
    let outcome = flatten_all(&analysis.model);
    for (class, e) in &outcome.errors {
        eprintln!("{}", analysis.flatten_problem(class, e));
    }
    let opts = EmitOptions::default().with_provenance(true);
    for name in analysis.model.topological_order() {
        if let Some(flat) = outcome.classes.get(name) {
            println!("// {name}.flat.java");
            print!("{}", flat.emit(&opts));
        }
    }
    for d in outcome.diagnostics() {
        eprintln!("{d}");
    }
}
