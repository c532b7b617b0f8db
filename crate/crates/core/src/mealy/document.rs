use serde::{Deserialize, Serialize};

/// JSON form of an oracle Mealy machine. A `(state, symbol)` pair missing
/// from `delta` is undefined and rejects. Table rows are indexed by the
/// answer tuple read as a binary number, first query most significant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MealyDocument {
    pub states: Vec<String>,
    pub input_alphabet: Vec<String>,
    pub oracle_alphabet: Vec<String>,
    pub delta: Vec<DeltaDocument>,
    pub lambda: Vec<LambdaDocument>,
    pub start_state: String,
    pub queries: Vec<QueriesDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaDocument {
    pub from: String,
    pub on: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaDocument {
    pub from: String,
    pub on: String,
    pub out: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueriesDocument {
    pub state: String,
    pub suffixes: Vec<String>,
    pub table: Vec<u8>,
}

impl MealyDocument {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}
