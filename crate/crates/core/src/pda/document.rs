use serde::{Deserialize, Serialize};

/// JSON form of a DPDA. Stack words in `push` are listed topmost first and an
/// empty `label` denotes an ε-rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DpdaDocument {
    pub states: Vec<String>,
    pub input_alphabet: Vec<String>,
    pub stack_alphabet: Vec<String>,
    pub rules: Vec<RuleDocument>,
    pub start_state: String,
    pub start_symbol: String,
    pub accepting: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDocument {
    pub from: String,
    pub top: String,
    pub label: String,
    pub to: String,
    pub push: Vec<String>,
}

impl DpdaDocument {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}
