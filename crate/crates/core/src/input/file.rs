//! Sequence file layout (all integers little-endian `u64`):
//!
//! ```text
//! "ISRT" | 0x01 | case_id | n | M | seed | key[0] .. key[n-1]
//! ```
//!
//! Tags are not stored. Readers assign `tag = position`.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use thiserror::Error;

use super::InputSpec;
use crate::sorting::{Key, Record};

pub const MAGIC: [u8; 4] = *b"ISRT";
pub const VERSION: u8 = 0x01;
/// Magic, version byte and four header fields.
pub const HEADER_LEN: usize = 4 + 1 + 4 * 8;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("bad magic bytes {0:02x?}")]
    BadMagic([u8; 4]),
    #[error("unsupported format version {0}")]
    BadVersion(u8),
    #[error("file truncated: expected {expected} bytes, found {actual}")]
    Truncated { expected: u128, actual: usize },
    #[error("{extra} unexpected bytes after the last key")]
    TrailingBytes { extra: usize },
    #[error("key {key} at position {position} exceeds the declared bound {max_key}")]
    KeyOutOfRange {
        position: usize,
        key: Key,
        max_key: Key,
    },
}

/// A sequence together with the header describing where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceFile {
    pub case_id: u64,
    pub max_key: Key,
    pub seed: u64,
    pub records: Vec<Record>,
}

impl SequenceFile {
    pub fn from_spec(spec: &InputSpec, records: Vec<Record>) -> Self {
        Self {
            case_id: spec.case.number(),
            max_key: spec.max_key,
            seed: spec.seed,
            records,
        }
    }

    /// Same header, different records.
    pub fn with_records(&self, records: Vec<Record>) -> Self {
        Self {
            case_id: self.case_id,
            max_key: self.max_key,
            seed: self.seed,
            records,
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::with_capacity(HEADER_LEN + 8 * self.records.len());
        buf.extend_from_slice(&MAGIC);
        buf.push(VERSION);
        for field in [
            self.case_id,
            self.records.len() as u64,
            self.max_key,
            self.seed,
        ] {
            buf.extend_from_slice(&field.to_le_bytes());
        }
        for r in &self.records {
            buf.extend_from_slice(&r.key.to_le_bytes());
        }
        buf
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, FormatError> {
        if bytes.len() < HEADER_LEN {
            if bytes.len() >= 4 && bytes[..4] != MAGIC {
                return Err(FormatError::BadMagic(bytes[..4].try_into().unwrap()));
            }
            return Err(FormatError::Truncated {
                expected: HEADER_LEN as u128,
                actual: bytes.len(),
            });
        }
        let magic: [u8; 4] = bytes[..4].try_into().unwrap();
        if magic != MAGIC {
            return Err(FormatError::BadMagic(magic));
        }
        if bytes[4] != VERSION {
            return Err(FormatError::BadVersion(bytes[4]));
        }
        let field = |i: usize| {
            let at = 5 + 8 * i;
            u64::from_le_bytes(bytes[at..at + 8].try_into().unwrap())
        };
        let (case_id, n, max_key, seed) = (field(0), field(1), field(2), field(3));

        let expected = HEADER_LEN as u128 + 8 * n as u128;
        let actual = bytes.len();
        if (actual as u128) < expected {
            return Err(FormatError::Truncated { expected, actual });
        }
        if actual as u128 > expected {
            return Err(FormatError::TrailingBytes {
                extra: (actual as u128 - expected) as usize,
            });
        }

        let records = bytes[HEADER_LEN..]
            .chunks_exact(8)
            .enumerate()
            .map(|(position, chunk)| {
                let key = u64::from_le_bytes(chunk.try_into().unwrap());
                if key > max_key {
                    Err(FormatError::KeyOutOfRange {
                        position,
                        key,
                        max_key,
                    })
                } else {
                    Ok(Record::new(key, position as u64))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;

        Ok(Self {
            case_id,
            max_key,
            seed,
            records,
        })
    }

    pub fn write_to(&self, mut dest: impl Write) -> Result<(), FormatError> {
        dest.write_all(&self.to_bytes())?;
        dest.flush()?;
        Ok(())
    }

    pub fn read_from(mut source: impl Read) -> Result<Self, FormatError> {
        let mut bytes = Vec::new();
        source.read_to_end(&mut bytes)?;
        Self::from_bytes(&bytes)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), FormatError> {
        fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FormatError> {
        Self::from_bytes(&fs::read(path)?)
    }
}
