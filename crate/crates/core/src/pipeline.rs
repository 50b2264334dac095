//! Reading inputs: files and directories to parsed units and a model.

use crate::flatten::FlattenError;
use crate::model::{ClassModel, ResolveError};
use crate::syntax::{parse_file, SourceMap, SourceUnit, Span, SyntaxError};
use std::fmt;
use std::path::PathBuf;
use walkdir::WalkDir;

/// An error tied to an input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub path: String,
    pub span: Option<Span>,
    pub message: String,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.span {
            Some(s) => write!(f, "{}:{}: error: {}", self.path, s, self.message),
            None => write!(f, "{}: error: {}", self.path, self.message),
        }
    }
}

/// `.java` files under `paths`: files are taken as given, directories are
/// searched recursively, skipping earlier `.flat.java` output. The result
/// is sorted and free of duplicates.
pub fn java_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>, Problem> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            for entry in WalkDir::new(p).sort_by_file_name() {
                let entry = entry.map_err(|e| Problem {
                    path: p.display().to_string(),
                    span: None,
                    message: e.to_string(),
                })?;
                let name = entry.file_name().to_string_lossy();
                if entry.file_type().is_file() && name.ends_with(".java") && !name.ends_with(".flat.java") {
                    out.push(entry.into_path());
                }
            }
        } else if p.exists() {
            out.push(p.clone());
        } else {
            return Err(Problem {
                path: p.display().to_string(),
                span: None,
                message: "no such file or directory".into(),
            });
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Parsed inputs and the model built from them.
#[derive(Debug)]
pub struct Analysis {
    pub sources: SourceMap,
    pub units: Vec<SourceUnit>,
    pub model: ClassModel,
}

impl Analysis {
    fn path_of_class(&self, class: &str) -> String {
        match self.model.class(class) {
            Some(c) => self.sources.path(c.file).to_string(),
            None => class.to_string(),
        }
    }

    pub fn resolve_problem(&self, class: &str, e: &ResolveError) -> Problem {
        Problem {
            path: self.sources.path(e.span().file).to_string(),
            span: Some(e.span()),
            message: format!("in {class}: {}", strip_span(&e.to_string())),
        }
    }

    pub fn flatten_problem(&self, class: &str, e: &FlattenError) -> Problem {
        Problem {
            path: e
                .span()
                .map(|s| self.sources.path(s.file).to_string())
                .unwrap_or_else(|| self.path_of_class(class)),
            span: e.span(),
            message: strip_span(&e.to_string()),
        }
    }
}

/// Error messages start with their span; the problem line prints it once.
fn strip_span(msg: &str) -> String {
    match msg.split_once(": ") {
        Some((head, rest)) if head.contains(':') && head.chars().all(|c| c.is_ascii_digit() || c == ':') => rest.to_string(),
        _ => msg.to_string(),
    }
}

fn syntax_problem(path: &str, e: &SyntaxError) -> Problem {
    Problem {
        path: path.to_string(),
        span: Some(e.span()),
        message: strip_span(&e.to_string()),
    }
}

/// Reads and parses every file. Files are parsed on worker threads; the
/// result keeps input order. Each failing file contributes its first error.
pub fn parse_all(files: &[PathBuf]) -> (SourceMap, Vec<SourceUnit>, Vec<Problem>) {
    let mut sources = SourceMap::new();
    let mut problems = Vec::new();
    let mut ids = Vec::new();
    for f in files {
        match std::fs::read_to_string(f) {
            Ok(text) => ids.push(sources.add(f.display().to_string(), text)),
            Err(e) => problems.push(Problem {
                path: f.display().to_string(),
                span: None,
                message: e.to_string(),
            }),
        }
    }
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(ids.len().max(1));
    let chunk = ids.len().div_ceil(threads).max(1);
    let results: Vec<Result<SourceUnit, SyntaxError>> = std::thread::scope(|s| {
        let handles: Vec<_> = ids
            .chunks(chunk)
            .map(|part| {
                let sources = &sources;
                s.spawn(move || {
                    part.iter()
                        .map(|id| parse_file(sources.get(*id).expect("file registered")))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("parser thread"))
            .collect()
    });
    let mut units = Vec::new();
    for (id, r) in ids.iter().zip(results) {
        match r {
            Ok(u) => units.push(u),
            Err(e) => problems.push(syntax_problem(sources.path(*id), &e)),
        }
    }
    (sources, units, problems)
}

/// Files → parsed units → model. Any problem stops before the model.
pub fn analyze(paths: &[PathBuf]) -> Result<Analysis, Vec<Problem>> {
    let files = java_files(paths).map_err(|p| vec![p])?;
    if files.is_empty() {
        return Err(vec![Problem {
            path: paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(" "),
            span: None,
            message: "no .java files found".into(),
        }]);
    }
    let (sources, units, problems) = parse_all(&files);
    if !problems.is_empty() {
        return Err(problems);
    }
    let model = ClassModel::build(&units).map_err(|e| {
        vec![Problem {
            path: sources.path(e.span().file).to_string(),
            span: Some(e.span()),
            message: strip_span(&e.to_string()),
        }]
    })?;
    Ok(Analysis { sources, units, model })
}

/// Convenience for in-memory sources (tests and examples).
pub fn analyze_sources(files: &[(&str, &str)]) -> Result<Analysis, Vec<Problem>> {
    let mut sources = SourceMap::new();
    let mut units = Vec::new();
    let mut problems = Vec::new();
    for (path, text) in files {
        let id = sources.add(*path, *text);
        match parse_file(sources.get(id).expect("file registered")) {
            Ok(u) => units.push(u),
            Err(e) => problems.push(syntax_problem(path, &e)),
        }
    }
    if !problems.is_empty() {
        return Err(problems);
    }
    let model = ClassModel::build(&units).map_err(|e| {
        vec![Problem {
            path: sources.path(e.span().file).to_string(),
            span: Some(e.span()),
            message: strip_span(&e.to_string()),
        }]
    })?;
    Ok(Analysis { sources, units, model })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_error_per_file() {
        let err = analyze_sources(&[("A.java", "class A<T> {}"), ("B.java", "class B { int x }")]).unwrap_err();
        assert_eq!(err.len(), 2);
        assert!(err[0].to_string().starts_with("A.java:1:8: error: "), "{}", err[0]);
        assert_eq!(err[1].path, "B.java");
    }

    #[test]
    fn model_errors_carry_file() {
        let err = analyze_sources(&[("B.java", "class B extends Q {}")]).unwrap_err();
        assert_eq!(err[0].path, "B.java");
        assert!(err[0].message.contains("unknown class Q"));
    }

    #[test]
    fn span_prefix_is_stripped() {
        assert_eq!(strip_span("3:4: bad thing"), "bad thing");
        assert_eq!(strip_span("B is not flattened: x"), "B is not flattened: x");
    }
}
