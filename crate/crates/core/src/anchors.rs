//! Anchor strings attached to every report, keyed by operation.

use std::collections::BTreeMap;
use std::sync::OnceLock;

static TABLE: OnceLock<BTreeMap<String, String>> = OnceLock::new();

fn table() -> &'static BTreeMap<String, String> {
    TABLE.get_or_init(|| {
        serde_json::from_str(include_str!("anchors.json")).expect("anchors.json is valid")
    })
}

/// The anchor for `op`; panics on an unknown key, which is a programming error.
pub fn anchor(op: &str) -> &'static str {
    table()
        .get(op)
        .unwrap_or_else(|| panic!("no anchor for {op:?}"))
}

pub fn ops() -> impl Iterator<Item = &'static str> {
    table().keys().map(String::as_str)
}

#[cfg(test)]
mod tests {
    #[test]
    fn every_anchor_is_nonempty() {
        assert!(super::ops().count() > 10);
        for op in super::ops() {
            assert!(!super::anchor(op).is_empty());
        }
    }
}
