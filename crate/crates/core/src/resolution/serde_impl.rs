//! Wire form of the reality fields: `"real+"`, `"real0"`, `"real"` or `{"pair": id}`.

use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ComponentReality, PointReality};

fn serialize_pair<S: Serializer>(serializer: S, id: &str) -> Result<S::Ok, S::Error> {
    let mut map = serializer.serialize_map(Some(1))?;
    map.serialize_entry("pair", id)?;
    map.end()
}

fn read_pair<'de, A: MapAccess<'de>>(mut map: A) -> Result<String, A::Error> {
    let mut partner: Option<String> = None;
    while let Some(key) = map.next_key::<String>()? {
        match key.as_str() {
            "pair" if partner.is_none() => partner = Some(map.next_value()?),
            "pair" => return Err(de::Error::duplicate_field("pair")),
            other => return Err(de::Error::unknown_field(other, &["pair"])),
        }
    }
    partner.ok_or_else(|| de::Error::missing_field("pair"))
}

impl Serialize for ComponentReality {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ComponentReality::RealWithRealPoints => serializer.serialize_str("real+"),
            ComponentReality::RealWithoutRealPoints => serializer.serialize_str("real0"),
            ComponentReality::ImaginaryPairedWith(id) => serialize_pair(serializer, id),
        }
    }
}

impl<'de> Deserialize<'de> for ComponentReality {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ComponentReality;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str(r#""real+", "real0" or {"pair": "<id>"}"#)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                match v {
                    "real+" => Ok(ComponentReality::RealWithRealPoints),
                    "real0" => Ok(ComponentReality::RealWithoutRealPoints),
                    other => Err(E::unknown_variant(other, &["real+", "real0"])),
                }
            }

            fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<Self::Value, A::Error> {
                read_pair(map).map(ComponentReality::ImaginaryPairedWith)
            }
        }
        deserializer.deserialize_any(V)
    }
}

impl Serialize for PointReality {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            PointReality::RealPoint => serializer.serialize_str("real"),
            PointReality::ImaginaryPairedWith(id) => serialize_pair(serializer, id),
        }
    }
}

impl<'de> Deserialize<'de> for PointReality {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = PointReality;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str(r#""real" or {"pair": "<id>"}"#)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                match v {
                    "real" => Ok(PointReality::RealPoint),
                    other => Err(E::unknown_variant(other, &["real"])),
                }
            }

            fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<Self::Value, A::Error> {
                read_pair(map).map(PointReality::ImaginaryPairedWith)
            }
        }
        deserializer.deserialize_any(V)
    }
}
