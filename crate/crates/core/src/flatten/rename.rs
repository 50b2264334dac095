use std::collections::BTreeSet;

/// `name$Owner`, or `name$Owner$1`, `$2`, ... if that is already taken.
/// Attribute and method names share one pool here even though Java keeps
/// them apart, so a renamed method never looks like an existing field.
pub fn fresh_name(name: &str, owner: &str, taken: &BTreeSet<String>) -> String {
    let base = format!("{name}${owner}");
    if !taken.contains(&base) {
        return base;
    }
    (1..)
        .map(|k| format!("{base}${k}"))
        .find(|c| !taken.contains(c))
        .expect("some suffix is free")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::is_identifier;
    use proptest::prelude::*;

    fn set(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn base_scheme_and_collisions() {
        assert_eq!(fresh_name("x", "A", &set(&[])), "x$A");
        assert_eq!(fresh_name("x", "A", &set(&["x$A"])), "x$A$1");
        assert_eq!(fresh_name("x", "A", &set(&["x$A", "x$A$1"])), "x$A$2");
        assert_eq!(fresh_name("f", "A", &set(&["f$A"])), "f$A$1");
    }

    proptest! {
        #[test]
        fn result_is_free_and_well_formed(
            name in "[a-z][a-z0-9]{0,3}",
            owner in "[A-Z][a-z]{0,3}",
            extra in proptest::collection::vec(0usize..6, 0..6),
        ) {
            let base = format!("{name}${owner}");
            let mut taken: BTreeSet<String> = BTreeSet::new();
            for k in extra {
                taken.insert(if k == 0 { base.clone() } else { format!("{base}${k}") });
            }
            let got = fresh_name(&name, &owner, &taken);
            prop_assert!(!taken.contains(&got));
            prop_assert!(is_identifier(&got));
            prop_assert!(got.starts_with(&base));
            // smallest free candidate
            let expected = std::iter::once(base.clone())
                .chain((1..).map(|k| format!("{base}${k}")))
                .find(|c| !taken.contains(c))
                .unwrap();
            prop_assert_eq!(got, expected);
        }
    }
}
