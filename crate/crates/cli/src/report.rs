use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// What a command found, before rendering.
pub struct Outcome {
    pub code: u8,
    pub text: String,
    pub result: Value,
}

impl Outcome {
    pub fn new(code: u8, text: impl Into<String>, result: impl Serialize) -> Outcome {
        Outcome { code, text: text.into(), result: serde_json::to_value(result).expect("reports serialise") }
    }
}

/// Inputs read by a command, kept for the digests in the JSON envelope.
#[derive(Default)]
pub struct Inputs {
    digests: BTreeMap<String, String>,
}

impl Inputs {
    pub fn record(&mut self, name: &str, bytes: &[u8]) {
        self.digests.insert(name.to_string(), hex::encode(Sha256::digest(bytes)));
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    seed: Option<u64>,
    inputs: &'a BTreeMap<String, String>,
    exit: u8,
    result: &'a Value,
}

pub fn render_json(command: &str, seed: Option<u64>, inputs: &Inputs, out: &Outcome) -> String {
    let env = Envelope {
        tool: "clc",
        version: env!("CARGO_PKG_VERSION"),
        command,
        seed,
        inputs: &inputs.digests,
        exit: out.code,
        result: &out.result,
    };
    serde_json::to_string_pretty(&env).expect("reports serialise")
}
