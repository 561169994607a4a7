//! Serde helpers for big integers: JSON numbers when the value fits in
//! `i64`, decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Small(i64),
    Big(String),
}

impl Repr {
    fn of(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => Repr::Small(v),
            None => Repr::Big(x.to_string()),
        }
    }

    fn value<E: serde::de::Error>(self) -> Result<BigInt, E> {
        match self {
            Repr::Small(v) => Ok(BigInt::from(v)),
            Repr::Big(s) => s
                .parse()
                .map_err(|_| E::custom(format!("not an integer: {s:?}"))),
        }
    }
}

pub(crate) mod vec {
    use super::*;

    pub(crate) fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(Repr::of))
    }

    pub(crate) fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?
            .into_iter()
            .map(|r| r.value::<D::Error>())
            .collect()
    }
}
