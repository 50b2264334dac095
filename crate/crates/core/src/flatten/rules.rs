//! The attribute (R1-R4c) and method (R5-R8) decision table.

use crate::model::MemberKind;
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4a,
    R4b,
    R4c,
    R5,
    R6,
    R7,
    R8,
}

impl Rule {
    pub const ALL: [Rule; 10] = [
        Rule::R1,
        Rule::R2,
        Rule::R3,
        Rule::R4a,
        Rule::R4b,
        Rule::R4c,
        Rule::R5,
        Rule::R6,
        Rule::R7,
        Rule::R8,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4a => "R4a",
            Rule::R4b => "R4b",
            Rule::R4c => "R4c",
            Rule::R5 => "R5",
            Rule::R6 => "R6",
            Rule::R7 => "R7",
            Rule::R8 => "R8",
        }
    }

    pub fn from_id(id: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.id() == id)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Decision {
    PullDown,
    PullDownRenamed,
    /// Not carried over because the subclass member cannot legally override it.
    Drop,
    /// Private and unreachable: dropped and reported.
    DropAnomaly,
}

impl Decision {
    pub fn is_pulled(self) -> bool {
        matches!(self, Decision::PullDown | Decision::PullDownRenamed)
    }

    pub fn name(self) -> &'static str {
        match self {
            Decision::PullDown => "PullDown",
            Decision::PullDownRenamed => "PullDownRenamed",
            Decision::Drop => "Drop",
            Decision::DropAnomaly => "DropAnomaly",
        }
    }

    pub fn from_name(s: &str) -> Option<Decision> {
        [
            Decision::PullDown,
            Decision::PullDownRenamed,
            Decision::Drop,
            Decision::DropAnomaly,
        ]
        .into_iter()
        .find(|d| d.name() == s)
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What the table needs to know about one superclass member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemberFacts {
    pub kind: MemberKind,
    /// Not private.
    pub visible: bool,
    /// The subclass declares the same attribute name or method signature.
    pub overridden: bool,
    /// The override passes the static/final checks. Ignored when not overridden.
    pub legal: bool,
    /// Attributes: read or written by a pulled body. Methods: reachable
    /// through calls from a pulled body.
    pub used: bool,
}

/// Applies the table. An illegal override is judged as if the member were
/// not overridden, then dropped (silently unless the rule already says
/// anomaly).
pub fn decide(f: &MemberFacts) -> (Rule, Decision) {
    let illegal = f.overridden && !f.legal;
    let overridden = f.overridden && f.legal;
    let rule = match f.kind {
        MemberKind::Attribute => match (overridden, f.used, f.visible) {
            (true, true, _) => Rule::R4a,
            (true, false, true) => Rule::R4b,
            (true, false, false) => Rule::R4c,
            (false, _, true) => Rule::R1,
            (false, true, false) => Rule::R2,
            (false, false, false) => Rule::R3,
        },
        MemberKind::Method => match (f.visible, overridden, f.used) {
            (true, true, _) => Rule::R6,
            (true, false, _) => Rule::R5,
            (false, _, true) => Rule::R7,
            (false, _, false) => Rule::R8,
        },
    };
    let decision = match rule {
        Rule::R3 | Rule::R4c | Rule::R8 => Decision::DropAnomaly,
        _ if illegal => Decision::Drop,
        Rule::R1 | Rule::R2 | Rule::R5 => Decision::PullDown,
        Rule::R4a | Rule::R4b | Rule::R6 => Decision::PullDownRenamed,
        Rule::R7 if overridden => Decision::PullDownRenamed,
        Rule::R7 => Decision::PullDown,
    };
    (rule, decision)
}
