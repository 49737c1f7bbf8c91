//! Reading versioned JSON inputs and telling their kinds apart.

use std::io::Read;

use hvb_core::bundlecat::{GroundContext, HomogBundle};
use hvb_core::galois::GaloisModule;
use hvb_core::isogeny::IsogenyData;
use hvb_core::{Error, NilModule, Result};
use serde_json::Value;

pub const SCHEMA_VERSION: u64 = 1;

/// Reads `path` (or stdin for `-`), checks and strips the `"v"` field.
pub fn read(path: &str) -> Result<Value> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::input(format!("{path}: {e}")))?
    };
    let mut v: Value = serde_json::from_str(&text).map_err(|e| Error::input(format!("{path}: invalid JSON: {e}")))?;
    let obj = v.as_object_mut().ok_or_else(|| Error::input(format!("{path}: top level must be an object")))?;
    match obj.remove("v") {
        None => Err(Error::input(format!("{path}: missing schema version field \"v\""))),
        Some(Value::Number(n)) if n.as_u64() == Some(SCHEMA_VERSION) => Ok(v),
        Some(other) => Err(Error::input(format!(
            "{path}: unsupported schema version {other}, expected {SCHEMA_VERSION}"
        ))),
    }
}

/// Adds the schema version to an object payload.
pub fn versioned(mut v: Value) -> Value {
    if let Some(obj) = v.as_object_mut() {
        obj.insert("v".into(), SCHEMA_VERSION.into());
    }
    v
}

pub enum Input {
    Module(NilModule),
    Bundle(HomogBundle),
    Isogeny(IsogenyData),
    Characters(GaloisModule),
    Context(GroundContext),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Module(_) => "module",
            Input::Bundle(_) => "bundle",
            Input::Isogeny(_) => "isogeny",
            Input::Characters(_) => "characters",
            Input::Context(_) => "context",
        }
    }

    pub fn parse(v: &Value) -> Result<Self> {
        let has = |k: &str| v.get(k).is_some();
        if has("mats") {
            Ok(Input::Module(NilModule::from_json(v)?))
        } else if has("summands") {
            Ok(Input::Bundle(HomogBundle::from_json(v)?))
        } else if has("dual_map") {
            Ok(Input::Isogeny(IsogenyData::from_json(v)?))
        } else if has("characters") {
            Ok(Input::Context(GroundContext::from_json(v)?))
        } else if has("orders") {
            Ok(Input::Characters(GaloisModule::from_json(v)?))
        } else {
            Err(Error::input("unrecognized input: expected a module, bundle, isogeny, context or character module"))
        }
    }
}

pub fn load(path: &str) -> Result<Input> {
    Input::parse(&read(path)?)
}

pub fn load_module(path: &str) -> Result<NilModule> {
    match load(path)? {
        Input::Module(m) => Ok(m),
        other => Err(Error::input(format!("{path}: expected a module, got kind {:?}", other.kind()))),
    }
}

pub fn load_bundle(path: &str) -> Result<HomogBundle> {
    match load(path)? {
        Input::Bundle(b) => Ok(b),
        other => Err(Error::input(format!("{path}: expected a bundle, got kind {:?}", other.kind()))),
    }
}

pub fn load_isogeny(path: &str) -> Result<IsogenyData> {
    match load(path)? {
        Input::Isogeny(i) => Ok(i),
        other => Err(Error::input(format!("{path}: expected an isogeny, got kind {:?}", other.kind()))),
    }
}
