//! Declarative description of a benchmark run and its canonical JSON form.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RNG_ALGORITHM;

/// The three degradation families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaskType {
    Box,
    CellularAutomata,
    FreeForm,
}

impl MaskType {
    pub const ALL: [MaskType; 3] = [
        MaskType::Box,
        MaskType::CellularAutomata,
        MaskType::FreeForm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MaskType::Box => "box",
            MaskType::CellularAutomata => "cellular_automata",
            MaskType::FreeForm => "free_form",
        }
    }
}

impl fmt::Display for MaskType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MaskType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "box" => Ok(MaskType::Box),
            "cellular_automata" | "ca" => Ok(MaskType::CellularAutomata),
            "free_form" | "freeform" => Ok(MaskType::FreeForm),
            other => Err(Error::InvalidParameter {
                what: "mask type".into(),
                detail: format!("'{other}' (expected box, cellular_automata or free_form)"),
            }),
        }
    }
}

/// Which part of the three-way dataset partition a run draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitTag {
    Track1Only,
    Track2Only,
    Shared,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageEntry {
    pub id: String,
    pub image: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semantic: Option<PathBuf>,
}

/// One mask per image: either a stored mask file or the recipe to regenerate it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskAssignment {
    pub image_id: String,
    pub mask_type: MaskType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mask_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub images: Vec<ImageEntry>,
    pub mask_assignments: Vec<MaskAssignment>,
    pub rng_algorithm: String,
    pub track: u8,
    pub split_tag: SplitTag,
}

impl RunManifest {
    pub fn new(
        images: Vec<ImageEntry>,
        mask_assignments: Vec<MaskAssignment>,
        track: u8,
        split_tag: SplitTag,
    ) -> Result<Self> {
        let manifest = Self {
            images,
            mask_assignments,
            rng_algorithm: RNG_ALGORITHM.to_owned(),
            track,
            split_tag,
        };
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn validate(&self) -> Result<()> {
        if self.track != 1 && self.track != 2 {
            return Err(Error::InvalidManifest {
                detail: format!("track must be 1 or 2, got {}", self.track),
            });
        }
        for assignment in &self.mask_assignments {
            if !self.images.iter().any(|e| e.id == assignment.image_id) {
                return Err(Error::InvalidManifest {
                    detail: format!(
                        "mask assignment references undeclared image id '{}'",
                        assignment.image_id
                    ),
                });
            }
            if assignment.mask_path.is_none() && assignment.seed.is_none() {
                return Err(Error::InvalidManifest {
                    detail: format!(
                        "mask assignment for '{}' has neither a path nor a seed",
                        assignment.image_id
                    ),
                });
            }
        }
        if self.track == 2 {
            if let Some(entry) = self.images.iter().find(|e| e.semantic.is_none()) {
                return Err(Error::InvalidManifest {
                    detail: format!("track 2 requires a semantic map for image '{}'", entry.id),
                });
            }
        }
        Ok(())
    }

    pub fn image(&self, id: &str) -> Option<&ImageEntry> {
        self.images.iter().find(|e| e.id == id)
    }

    pub fn assignment(&self, id: &str) -> Option<&MaskAssignment> {
        self.mask_assignments.iter().find(|a| a.image_id == id)
    }

    /// Canonical form: UTF-8 JSON with sorted keys and a trailing newline.
    pub fn to_canonical_json(&self) -> String {
        // serde_json::Value orders object keys, which gives the sorted form.
        let value = serde_json::to_value(self).expect("manifest serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let manifest: RunManifest =
            serde_json::from_str(s).map_err(|e| Error::InvalidManifest {
                detail: e.to_string(),
            })?;
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_canonical_json()).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let s = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::from_json(&s)
    }
}

/// Join a manifest-relative path onto the manifest's directory.
pub fn resolve_path(root: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_owned()
    } else {
        root.join(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunManifest {
        RunManifest::new(
            vec![ImageEntry {
                id: "img0".into(),
                image: "images/img0.png".into(),
                semantic: None,
            }],
            vec![MaskAssignment {
                image_id: "img0".into(),
                mask_type: MaskType::Box,
                mask_path: Some("masks/img0.png".into()),
                seed: Some(7),
            }],
            1,
            SplitTag::Track1Only,
        )
        .unwrap()
    }

    #[test]
    fn canonical_json_round_trips_byte_identically() {
        let m = sample();
        let json = m.to_canonical_json();
        let back = RunManifest::from_json(&json).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_canonical_json(), json);
    }

    #[test]
    fn canonical_json_keys_are_sorted() {
        let json = sample().to_canonical_json();
        let images_pos = json.find("\"images\"").unwrap();
        let masks_pos = json.find("\"mask_assignments\"").unwrap();
        let track_pos = json.find("\"track\"").unwrap();
        assert!(images_pos < masks_pos && masks_pos < track_pos);
    }

    #[test]
    fn rejects_undeclared_image_id() {
        let mut m = sample();
        m.mask_assignments[0].image_id = "ghost".into();
        assert!(m.validate().is_err());
    }

    #[test]
    fn track2_requires_semantics() {
        let mut m = sample();
        m.track = 2;
        assert!(m.validate().is_err());
        m.images[0].semantic = Some("sem/img0.png".into());
        assert!(m.validate().is_ok());
    }
}
