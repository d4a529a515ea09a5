//! Dataset curation: class frequency statistics, class selection, coverage
//! filtering, label translation and the three-way track split.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SeededRng;
use crate::semantic::{SemanticMap, UNMAPPED_LABEL};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    /// Number of images in which the class occurs at least once.
    pub image_count: usize,
    /// Total pixels of the class across all images.
    pub pixel_count: u64,
}

/// Per-class occurrence statistics over a set of semantic maps.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassStats {
    pub per_class: BTreeMap<u16, ClassCount>,
    pub total_images: usize,
}

impl ClassStats {
    pub fn add_map(&mut self, map: &SemanticMap) {
        let mut local: BTreeMap<u16, u64> = BTreeMap::new();
        for &label in map.labels() {
            *local.entry(label).or_insert(0) += 1;
        }
        for (label, pixels) in local {
            let entry = self.per_class.entry(label).or_default();
            entry.image_count += 1;
            entry.pixel_count += pixels;
        }
        self.total_images += 1;
    }

    /// Associative merge for parallel reduction.
    pub fn merge(mut self, other: ClassStats) -> ClassStats {
        for (label, count) in other.per_class {
            let entry = self.per_class.entry(label).or_default();
            entry.image_count += count.image_count;
            entry.pixel_count += count.pixel_count;
        }
        self.total_images += other.total_images;
        self
    }
}

/// Single-pass exact counting over a stream of semantic maps.
pub fn compute_class_stats<'a>(maps: impl IntoIterator<Item = &'a SemanticMap>) -> ClassStats {
    let mut stats = ClassStats::default();
    for map in maps {
        stats.add_map(map);
    }
    stats
}

fn top_k_by<F: Fn(&ClassCount) -> u64>(stats: &ClassStats, k: usize, key: F) -> Vec<u16> {
    let mut ranked: Vec<(u16, u64)> = stats
        .per_class
        .iter()
        .map(|(&label, count)| (label, key(count)))
        .collect();
    // Ties broken by lower class id for determinism.
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked.into_iter().take(k).map(|(label, _)| label).collect()
}

/// Union of the top-k classes by image occurrence and the top-k by pixel count.
pub fn select_classes(stats: &ClassStats, k_image: usize, k_pixel: usize) -> Result<BTreeSet<u16>> {
    if k_image == 0 || k_pixel == 0 {
        return Err(Error::InvalidParameter {
            what: "class selection k".into(),
            detail: "k_image and k_pixel must be >= 1".into(),
        });
    }
    let mut selected: BTreeSet<u16> =
        top_k_by(stats, k_image, |c| c.image_count as u64).into_iter().collect();
    selected.extend(top_k_by(stats, k_pixel, |c| c.pixel_count));
    Ok(selected)
}

/// Keep an image iff at least `threshold` of its pixels carry an allowed class.
pub fn filter_by_coverage<'a>(
    pairs: impl IntoIterator<Item = (&'a str, &'a SemanticMap)>,
    allowed: &BTreeSet<u16>,
    threshold: f64,
) -> Result<Vec<String>> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::InvalidParameter {
            what: "coverage threshold".into(),
            detail: format!("{threshold} outside (0, 1]"),
        });
    }
    let mut kept = Vec::new();
    for (id, map) in pairs {
        let total = map.labels().len();
        let covered = map
            .labels()
            .iter()
            .filter(|label| allowed.contains(label))
            .count();
        if covered as f64 / total as f64 >= threshold {
            kept.push(id.to_owned());
        }
    }
    Ok(kept)
}

/// The three-way track partition of a curated image list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeWaySplit {
    pub track1_only: Vec<String>,
    pub track2_only: Vec<String>,
    pub shared: Vec<String>,
}

/// Uniform random permutation then contiguous thirds; a remainder of 1 goes to
/// track1, a remainder of 2 to track1 and track2.
pub fn three_way_split(ids: &[String], rng: &mut SeededRng) -> Result<ThreeWaySplit> {
    let n = ids.len();
    if n < 3 {
        return Err(Error::InvalidParameter {
            what: "split input".into(),
            detail: format!("need at least 3 ids, got {n}"),
        });
    }
    let mut shuffled = ids.to_vec();
    shuffled.shuffle(rng);
    let base = n / 3;
    let rem = n % 3;
    let n1 = base + usize::from(rem >= 1);
    let n2 = base + usize::from(rem >= 2);
    let track1_only = shuffled[..n1].to_vec();
    let track2_only = shuffled[n1..n1 + n2].to_vec();
    let shared = shuffled[n1 + n2..].to_vec();
    Ok(ThreeWaySplit {
        track1_only,
        track2_only,
        shared,
    })
}

/// Class translation table between label vocabularies.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelMapping {
    map: BTreeMap<u16, u16>,
}

impl LabelMapping {
    pub fn new(pairs: impl IntoIterator<Item = (u16, u16)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (src, dst) in pairs {
            if map.insert(src, dst).is_some() {
                return Err(Error::InvalidMapping {
                    detail: format!("duplicate source class {src}"),
                });
            }
        }
        Ok(Self { map })
    }

    /// Two whitespace-separated columns per line; '#' starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (line_no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split_whitespace();
            let parse_col = |col: Option<&str>| -> Result<u16> {
                col.and_then(|c| c.parse().ok()).ok_or_else(|| Error::InvalidMapping {
                    detail: format!("line {}: expected two class ids, got '{raw}'", line_no + 1),
                })
            };
            let src = parse_col(cols.next())?;
            let dst = parse_col(cols.next())?;
            if cols.next().is_some() {
                return Err(Error::InvalidMapping {
                    detail: format!("line {}: trailing columns in '{raw}'", line_no + 1),
                });
            }
            pairs.push((src, dst));
        }
        Self::new(pairs)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn get(&self, src: u16) -> Option<u16> {
        self.map.get(&src).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Pointwise label translation. Labels absent from the mapping become
/// [`UNMAPPED_LABEL`]; the count of such pixels is returned alongside.
pub fn translate_labels(map: &SemanticMap, mapping: &LabelMapping) -> (SemanticMap, u64) {
    let mut unmapped = 0u64;
    let labels = map
        .labels()
        .iter()
        .map(|&label| match mapping.get(label) {
            Some(dst) => dst,
            None => {
                unmapped += 1;
                UNMAPPED_LABEL
            }
        })
        .collect();
    let translated = SemanticMap::new(map.width(), map.height(), labels)
        .expect("same dimensions as input");
    (translated, unmapped)
}
