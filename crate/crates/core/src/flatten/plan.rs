//! Per-class record of what happened to each superclass member, and the
//! `plan/v1` JSON form.

use super::rules::{Decision, Rule};
use crate::diag::Diagnostic;
use crate::model::{MemberKey, MemberKind};
use crate::syntax::Span;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

pub const PLAN_SCHEMA: &str = "plan/v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberFate {
    pub kind: MemberKind,
    /// Class the member was originally declared in.
    pub owner: String,
    /// Key of the member in the flattened superclass.
    pub member: MemberKey,
    pub rule: Rule,
    pub decision: Decision,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub new_name: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RefForm {
    Bare,
    This,
    Super,
    /// `Owner.name`
    Class,
}

/// One reference site changed by flattening.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteDirective {
    /// The class being flattened.
    pub class: String,
    /// The site is in a body copied from the superclass (as opposed to one
    /// of the class's own bodies).
    pub in_pulled_body: bool,
    pub site: Span,
    pub form: RefForm,
    pub kind: MemberKind,
    pub old: String,
    pub new: String,
    /// Class the referenced member was declared in.
    pub owner: String,
}

impl RewriteDirective {
    /// The reference as written before the rewrite.
    pub fn old_text(&self) -> String {
        match self.form {
            RefForm::Bare => self.old.clone(),
            RefForm::This => format!("this.{}", self.old),
            RefForm::Super => format!("super.{}", self.old),
            RefForm::Class => format!("{}.{}", self.owner, self.old),
        }
    }
}

impl fmt::Display for RewriteDirective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {} -> {}", self.class, self.site, self.old_text(), self.new)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlattenPlan {
    pub class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub superclass: Option<String>,
    pub fates: Vec<MemberFate>,
    pub rewrites: Vec<RewriteDirective>,
    #[serde(skip)]
    pub diagnostics: Vec<Diagnostic>,
}

impl FlattenPlan {
    pub fn empty(class: &str) -> Self {
        FlattenPlan {
            class: class.to_string(),
            superclass: None,
            fates: Vec::new(),
            rewrites: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    /// One line per fate: `B attribute A.x R4a PullDownRenamed x$A`.
    pub fn lines(&self) -> Vec<String> {
        self.fates
            .iter()
            .map(|f| {
                let mut s = format!("{} {} {}.{} {} {}", self.class, f.kind, f.owner, f.member, f.rule, f.decision);
                if let Some(n) = &f.new_name {
                    s.push(' ');
                    s.push_str(n);
                }
                s
            })
            .collect()
    }

    /// How many members each rule decided.
    pub fn rule_counts(&self) -> BTreeMap<Rule, usize> {
        let mut out = BTreeMap::new();
        for f in &self.fates {
            *out.entry(f.rule).or_insert(0) += 1;
        }
        out
    }

    pub fn pulled(&self, kind: MemberKind) -> usize {
        self.fates
            .iter()
            .filter(|f| f.kind == kind && f.decision.is_pulled())
            .count()
    }
}

#[derive(Serialize)]
struct PlanDoc<'a> {
    schema: &'static str,
    plans: Vec<PlanEntry<'a>>,
}

#[derive(Serialize)]
struct PlanEntry<'a> {
    #[serde(flatten)]
    plan: &'a FlattenPlan,
    diagnostics: Vec<String>,
}

/// `plan/v1` document for a set of plans, in the given order.
pub fn plans_to_json<'a>(plans: impl IntoIterator<Item = &'a FlattenPlan>) -> String {
    let doc = PlanDoc {
        schema: PLAN_SCHEMA,
        plans: plans
            .into_iter()
            .map(|plan| PlanEntry {
                plan,
                diagnostics: plan.diagnostics.iter().map(|d| d.to_string()).collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plan serializes");
    s.push('\n');
    s
}
