//! `model/v1` JSON dump of a resolved model.

use super::{AccessGraph, ClassModel, MemberInfo, OverrideRelation};
use serde::Serialize;

pub const MODEL_SCHEMA: &str = "model/v1";

#[derive(Debug, Serialize)]
pub struct ModelDump<'a> {
    pub schema: &'static str,
    pub order: &'a [String],
    pub classes: Vec<ClassDump<'a>>,
    pub overrides: &'a [OverrideRelation],
    pub edges: Vec<String>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ClassDump<'a> {
    pub name: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub package: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub superclass: Option<&'a str>,
    pub attributes: &'a [MemberInfo],
    pub methods: &'a [MemberInfo],
}

impl ClassModel {
    pub fn dump<'a>(&'a self, graph: &AccessGraph) -> ModelDump<'a> {
        ModelDump {
            schema: MODEL_SCHEMA,
            order: self.topological_order(),
            classes: self
                .classes()
                .map(|c| ClassDump {
                    name: &c.name,
                    package: c.package.as_deref(),
                    superclass: c.superclass.as_deref(),
                    attributes: &c.members.attributes,
                    methods: &c.members.methods,
                })
                .collect(),
            overrides: self.overrides(),
            edges: graph.edges.iter().map(|e| e.to_string()).collect(),
            diagnostics: self.diagnostics().iter().map(|d| d.to_string()).collect(),
        }
    }

    pub fn to_json(&self, graph: &AccessGraph) -> String {
        serde_json::to_string_pretty(&self.dump(graph)).expect("model dump serializes")
    }
}
