//! Persisted result documents and their checksums.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::exactring::{ClassRepr, MotClass};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub r_max: u32,
    pub d_max: u32,
    /// Twist `e` used to reach nonnegative, stable degrees.
    pub twist: i64,
}

/// Everything the checksum covers, in serialization order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentBody {
    pub schema_version: String,
    pub genus: u32,
    pub rank: u32,
    pub degree: i64,
    pub truncation: Truncation,
    pub class: ClassRepr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDocument {
    #[serde(flatten)]
    pub body: DocumentBody,
    pub checksum: String,
}

impl DocumentBody {
    /// Compact JSON of the body; the input of the checksum.
    pub fn canonical(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }

    pub fn checksum(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }
}

impl ClassDocument {
    pub fn new(genus: u32, rank: u32, degree: i64, truncation: Truncation, class: &MotClass) -> Self {
        let body = DocumentBody {
            schema_version: SCHEMA_VERSION.to_string(),
            genus,
            rank,
            degree,
            truncation,
            class: class.clone().into(),
        };
        let checksum = body.checksum();
        ClassDocument { body, checksum }
    }

    pub fn checksum_matches(&self) -> bool {
        self.body.checksum() == self.checksum
    }

    pub fn class(&self) -> Result<MotClass, crate::exactring::ExactRingError> {
        MotClass::try_from(self.body.class.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ClassDocument {
        let l = MotClass::lefschetz();
        let x = MotClass::one().checked_div(&(&l - &MotClass::one())).unwrap();
        ClassDocument::new(0, 1, 0, Truncation { r_max: 1, d_max: 1, twist: 0 }, &x)
    }

    #[test]
    fn json_roundtrip_is_identity() {
        let doc = sample();
        let back = ClassDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert!(back.checksum_matches());
        let l = MotClass::lefschetz();
        assert_eq!(back.class().unwrap(), MotClass::one().checked_div(&(&l - &MotClass::one())).unwrap());
    }

    #[test]
    fn checksum_covers_the_class() {
        let mut doc = sample();
        doc.body.class.numerator[0].coefficient = "2".into();
        assert!(!doc.checksum_matches());
        assert_eq!(sample().checksum.len(), 64);
    }
}
