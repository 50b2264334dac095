//! Metrics of the original and flattened views side by side.
//!
//!     cargo run --example metrics_compare [-- DIR_OR_FILES... [--csv|--json]]

use flatjava::flatten::flatten_all;
use flatjava::metrics::compare;
use flatjava::pipeline::{analyze, analyze_sources};
use flatjava::report::{compare_report, Format};
use std::path::PathBuf;

const SOURCES: [(&str, &str); 3] = [
    (
        "Vehicle.java",
        "class Vehicle {
            protected int speed;
            protected int fuel;
            public void accelerate() { speed = speed + 1; fuel = fuel - 1; }
            public void refuel(int f) { fuel = fuel + f; }
            public int getSpeed() { return speed; }
        }",
    ),
    ("Engine.java", "class Engine { int power; }"),
    (
        "Car.java",
        "class Car extends Vehicle {
            Engine engine;
            int doors;
            int doorCount() { return doors; }
        }",
    ),
];

fn main() {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    let format = if args.iter().any(|a| a == "--csv") {
        Format::Csv
    } else if args.iter().any(|a| a == "--json") {
        Format::Json
    } else {
        Format::Markdown
    };
    args.retain(|a| !a.starts_with("--"));
    let analysis = if args.is_empty() {
        analyze_sources(&SOURCES)
    } else {
        analyze(&args.iter().map(PathBuf::from).collect::<Vec<_>>())
    };
    let analysis = analysis.unwrap_or_else(|problems| {
        problems.iter().for_each(|p| eprintln!("{p}"));
        std::process::exit(2)
    });
    let outcome = flatten_all(&analysis.model);
    for (class, e) in &outcome.errors {
        eprintln!("skipping {}", analysis.flatten_problem(class, e));
    }
    match compare(&analysis.model, &outcome) {
        Ok(rows) => print!("{}", compare_report(&rows, format)),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
