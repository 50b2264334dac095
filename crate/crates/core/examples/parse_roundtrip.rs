//! Parse a Java file and print it back in canonical layout.
//!
//!     cargo run --example parse_roundtrip [-- File.java]

use flatjava::emit::emit_unit;
use flatjava::syntax::{parse_source, tokenize, FileId};
use flatjava::EmitOptions;

const SAMPLE: &str = "package demo;
public class Counter { private int n ;
  public Counter(int start){ n = start; }
  public void tick() { n = n + 1; }   // comments are not kept
  public int value() { return n; } }
";

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable file"),
        None => SAMPLE.to_string(),
    };
    let unit = match parse_source(FileId(0), &text) {
        Ok(u) => u,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    let canonical = emit_unit(&unit, &EmitOptions::default());
    print!("{canonical}");

    let again = emit_unit(&parse_source(FileId(0), &canonical).expect("canonical output parses"), &EmitOptions::default());
    assert_eq!(again, canonical);
    let count = |s: &str| tokenize(s).expect("lexes").len();
    eprintln!("{} tokens in, {} tokens out, stable on re-parse", count(&text), count(&canonical));
}
