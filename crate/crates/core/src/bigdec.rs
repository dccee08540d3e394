//! Serializes a `BigUint` as a JSON number when it fits in `u64`, otherwise
//! as a decimal string. Both forms are accepted back.

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Small(u64),
    Big(String),
}

pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match u64::try_from(v) {
        Ok(x) => Repr::Small(x).serialize(s),
        Err(_) => Repr::Big(v.to_string()).serialize(s),
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    match Repr::deserialize(d)? {
        Repr::Small(x) => Ok(BigUint::from(x)),
        Repr::Big(s) => s.parse().map_err(serde::de::Error::custom),
    }
}
