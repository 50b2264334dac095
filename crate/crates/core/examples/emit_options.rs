//! The same flattened class under different output settings.
//!
//!     cargo run --example emit_options

use flatjava::flatten::flatten_all;
use flatjava::pipeline::analyze_sources;
use flatjava::{EmitOptions, Indent, Newline};

fn main() {
    let analysis = analyze_sources(&[
        ("P.java", "package zoo; public class P { protected String name; public String getName() { return name; } }"),
        ("Q.java", "package zoo; public class Q extends P { int legs; Q(int n) { legs = n; } }"),
    ])
    .expect("sample is valid");
    let outcome = flatten_all(&analysis.model);
    let q = &outcome.classes["Q"];

    let variants = [
        ("default", EmitOptions::default()),
        ("with provenance", EmitOptions::default().with_provenance(true)),
        (
            "two-space indent",
            EmitOptions {
                indent: Indent::Two,
                ..EmitOptions::default()
            },
        ),
    ];
    for (label, opts) in variants {
        println!("== {label}");
        print!("{}", q.emit(&opts));
    }
    let crlf = q.emit(&EmitOptions {
        newline: Newline::CrLf,
        ..EmitOptions::default()
    });
    println!("== CRLF: {} lines end in \\r\\n", crlf.matches("\r\n").count());
}
