//! Which view of a class to measure for a given purpose.

use crate::metrics::View;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Application {
    Refactoring,
    Adaptability,
    Reusability,
    Understandability,
    Maintainability,
    Completeness,
    TestabilityClass,
    TestabilityCluster,
}

impl Application {
    pub const ALL: [Application; 8] = [
        Application::Refactoring,
        Application::Adaptability,
        Application::Reusability,
        Application::Understandability,
        Application::Maintainability,
        Application::Completeness,
        Application::TestabilityClass,
        Application::TestabilityCluster,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Application::Refactoring => "refactoring",
            Application::Adaptability => "adaptability",
            Application::Reusability => "reusability",
            Application::Understandability => "understandability",
            Application::Maintainability => "maintainability",
            Application::Completeness => "completeness",
            Application::TestabilityClass => "testability-class",
            Application::TestabilityCluster => "testability-cluster",
        }
    }
}

impl fmt::Display for Application {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Application {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Application::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Application::ALL.iter().map(|a| a.as_str()).collect();
                format!("unknown application `{s}` (expected one of: {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Advisory {
    pub application: Application,
    pub view: View,
    pub justification: &'static str,
}

impl fmt::Display for Advisory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: use the {} view\n  {}", self.application, self.view, self.justification)
    }
}

pub fn advise(app: Application) -> Advisory {
    let (view, justification) = match app {
        Application::Refactoring => (
            View::Original,
            "Refactoring tools judge the code a developer actually wrote. A flattened subclass carries \
             its superclass code too, so it looks bigger and less cohesive than it is and invites \
             splitting it for the wrong reason.",
        ),
        Application::Adaptability => (
            View::Flattened,
            "Moving a subclass to another setting drags its whole superclass chain along, so the \
             measured unit should include that chain.",
        ),
        Application::Reusability => (
            View::Flattened,
            "Reusing a subclass means reusing the superclasses it depends on; their members belong \
             in the measurement.",
        ),
        Application::Understandability => (
            View::Flattened,
            "Reading a subclass in isolation does not explain its behaviour; inherited members have \
             to be read as well.",
        ),
        Application::Maintainability => (
            View::Flattened,
            "Changing a subclass safely requires knowing the inherited code it builds on, so \
             maintenance effort follows the flattened form.",
        ),
        Application::Completeness => (
            View::Flattened,
            "What a subclass can do depends on what it inherits; without those members it is only \
             a fragment.",
        ),
        Application::TestabilityClass => (
            View::Original,
            "Class-level tests target the code inside one class, so the class as written is the \
             relevant unit.",
        ),
        Application::TestabilityCluster => (
            View::Flattened,
            "Cluster-level tests exercise classes related by inheritance together, which the \
             flattened subclass represents.",
        ),
    };
    Advisory {
        application: app,
        view,
        justification,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for a in Application::ALL {
            assert_eq!(a.as_str().parse::<Application>(), Ok(a));
        }
        assert!("testability".parse::<Application>().is_err());
    }

    #[test]
    fn only_refactoring_and_class_testing_use_original() {
        let original: Vec<_> = Application::ALL
            .into_iter()
            .filter(|a| advise(*a).view == View::Original)
            .collect();
        assert_eq!(original, [Application::Refactoring, Application::TestabilityClass]);
    }
}
