//! `key = expr` map files.

use std::path::Path;

use swt_core::polycore::{parse, ParseError, PolyMap, Polynomial};

#[derive(Debug, thiserror::Error)]
pub enum MapFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected `key = expression`")]
    Malformed { line: usize },
    #[error("line {line}: unknown key `{key}` (expected f1, f2, f3 or u)")]
    UnknownKey { key: String, line: usize },
    #[error("line {line}: key `{key}` already defined on line {first}")]
    DuplicateKey {
        key: String,
        line: usize,
        first: usize,
    },
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("line {line}, key `{key}`: {source}")]
    Expression {
        key: String,
        line: usize,
        #[source]
        source: ParseError,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapFile {
    pub map: PolyMap,
    pub region: Option<Polynomial>,
}

const KEYS: [&str; 4] = ["f1", "f2", "f3", "u"];

impl MapFile {
    pub fn read(path: &Path) -> Result<Self, MapFileError> {
        let text = std::fs::read_to_string(path).map_err(|source| MapFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, MapFileError> {
        let mut found: [Option<(usize, Polynomial)>; 4] = Default::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let (key, expr) = content
                .split_once('=')
                .ok_or(MapFileError::Malformed { line })?;
            let key = key.trim();
            let slot =
                KEYS.iter()
                    .position(|k| *k == key)
                    .ok_or_else(|| MapFileError::UnknownKey {
                        key: key.to_string(),
                        line,
                    })?;
            if let Some((first, _)) = &found[slot] {
                return Err(MapFileError::DuplicateKey {
                    key: key.to_string(),
                    line,
                    first: *first,
                });
            }
            let poly = parse(expr).map_err(|source| MapFileError::Expression {
                key: key.to_string(),
                line,
                source,
            })?;
            found[slot] = Some((line, poly));
        }
        let [f1, f2, f3, u] = found;
        let take = |slot: Option<(usize, Polynomial)>, key| {
            slot.map(|(_, p)| p).ok_or(MapFileError::MissingKey(key))
        };
        let map = PolyMap::new(take(f1, "f1")?, take(f2, "f2")?, take(f3, "f3")?);
        Ok(MapFile {
            map,
            region: u.map(|(_, p)| p),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_all_keys_and_comments() {
        let m = MapFile::parse("# fold\nf1 = x^2\n\n  f2=y\nf3 = z # not a comment\n").unwrap_err();
        assert!(matches!(m, MapFileError::Expression { line: 5, .. }));
        let m = MapFile::parse("# fold\nf1 = x^2\n\n  f2=y\nf3 = z\nu = 1 - x^2\n").unwrap();
        assert_eq!(m.map.f[0].to_string(), "x^2");
        assert_eq!(m.region.unwrap().to_string(), "-x^2 + 1");
    }

    #[test]
    fn missing_and_duplicate_keys() {
        let e = MapFile::parse("f1 = x\nf2 = y\n").unwrap_err();
        assert!(e.to_string().contains("f3"));
        let e = MapFile::parse("f1 = x\nf1 = y\n").unwrap_err();
        assert!(matches!(
            e,
            MapFileError::DuplicateKey {
                line: 2,
                first: 1,
                ..
            }
        ));
        let e = MapFile::parse("f4 = x\n").unwrap_err();
        assert!(matches!(e, MapFileError::UnknownKey { .. }));
        let e = MapFile::parse("f1 x\n").unwrap_err();
        assert!(matches!(e, MapFileError::Malformed { line: 1 }));
    }
}
