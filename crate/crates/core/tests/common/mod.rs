#![allow(dead_code)]

use flatjava::flatten::{flatten_all, FlattenOutcome};
use flatjava::model::{compute_access_graph, ClassModel};
use flatjava::syntax::{parse_file, SourceMap, SourceUnit};
use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(fixtures_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
}

pub struct Fixture {
    pub name: String,
    pub dir: PathBuf,
    pub sources: SourceMap,
    pub units: Vec<SourceUnit>,
    pub model: ClassModel,
}

impl Fixture {
    pub fn load(name: &str) -> Fixture {
        let dir = fixtures_dir().join(name);
        let mut files: Vec<PathBuf> = fs::read_dir(&dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().is_some_and(|e| e == "java"))
            .collect();
        files.sort();
        let mut sources = SourceMap::new();
        let mut units = Vec::new();
        for f in files {
            let id = sources.add(f.display().to_string(), fs::read_to_string(&f).unwrap());
            units.push(parse_file(sources.get(id).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}")));
        }
        let model = ClassModel::build(&units).unwrap_or_else(|e| panic!("{name}: {e}"));
        Fixture {
            name: name.to_string(),
            dir,
            sources,
            units,
            model,
        }
    }

    pub fn flatten(&self) -> FlattenOutcome {
        flatten_all(&self.model)
    }

    pub fn edges(&self) -> BTreeSet<String> {
        compute_access_graph(&self.model)
            .unwrap()
            .edges
            .iter()
            .map(|e| e.to_string())
            .collect()
    }

    pub fn expected_lines(&self, file: &str) -> BTreeSet<String> {
        fs::read_to_string(self.dir.join(file))
            .unwrap()
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(str::to_string)
            .collect()
    }

    pub fn golden(&self, class: &str) -> String {
        fs::read_to_string(self.dir.join("expected").join(format!("{class}.flat.java"))).unwrap()
    }
}
