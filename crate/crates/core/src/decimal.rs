//! Serde helpers that put big integers on the wire as decimal strings.

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    let raw = String::deserialize(d)?;
    raw.parse::<BigUint>()
        .map_err(|e| serde::de::Error::custom(format!("bad decimal integer {raw:?}: {e}")))
}

/// Same helpers for `Option<BigUint>` fields.
pub mod opt {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|x| x.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        let raw: Option<String> = Option::deserialize(d)?;
        raw.map(|r| {
            r.parse::<BigUint>()
                .map_err(|e| serde::de::Error::custom(format!("bad decimal integer {r:?}: {e}")))
        })
        .transpose()
    }
}
