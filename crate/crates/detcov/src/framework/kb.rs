//! The category knowledge base driving detector combination.
//!
//! Detectors are grouped into categories by the kind of image structure
//! they respond to. The knowledge base maps detector names to categories,
//! and for each category stores a preference-ordered list of partner
//! categories: when a detector's own output covers an image poorly, the
//! best complement is usually a detector that fires on a different kind
//! of structure, and the ordering encodes which kinds pair best. A list
//! of ranked three-category combinations is carried as advisory data for
//! tooling that plans larger combinations.
//!
//! The whole base is plain TOML (see `data/kb_default.toml` for the
//! shipped one), so the pairing knowledge can be edited or replaced
//! without touching code:
//!
//! ```toml
//! categories = ["corner", "spiral"]
//!
//! [detectors]
//! EBR = "corner"
//! SFOP = "spiral"
//!
//! [preferences]
//! corner = ["spiral"]
//! spiral = ["corner"]
//!
//! [[triplets]]
//! rank = 1
//! pool = "all"
//! categories = ["corner", "spiral", "corner"]  # must be three distinct
//! ```
//!
//! Loading validates the cross-references: every category mentioned
//! anywhere must be declared, preference lists may not name their own
//! category or repeat entries, and triplets must hold three distinct
//! declared categories with unique ranks per pool.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;
use thiserror::Error;

/// The kind of image structure a detector responds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DetectorCategory {
    #[serde(rename = "laplacian-based")]
    Laplacian,
    #[serde(rename = "hessian-matrix-based")]
    HessianMatrix,
    #[serde(rename = "hybrid")]
    Hybrid,
    #[serde(rename = "corner")]
    Corner,
    #[serde(rename = "spiral")]
    Spiral,
    #[serde(rename = "entropy-based")]
    Entropy,
    #[serde(rename = "segmentation-based")]
    Segmentation,
}

impl DetectorCategory {
    pub fn as_str(&self) -> &'static str {
        match self {
            DetectorCategory::Laplacian => "laplacian-based",
            DetectorCategory::HessianMatrix => "hessian-matrix-based",
            DetectorCategory::Hybrid => "hybrid",
            DetectorCategory::Corner => "corner",
            DetectorCategory::Spiral => "spiral",
            DetectorCategory::Entropy => "entropy-based",
            DetectorCategory::Segmentation => "segmentation-based",
        }
    }

    /// All known categories.
    pub const ALL: [DetectorCategory; 7] = [
        DetectorCategory::Laplacian,
        DetectorCategory::HessianMatrix,
        DetectorCategory::Hybrid,
        DetectorCategory::Corner,
        DetectorCategory::Spiral,
        DetectorCategory::Entropy,
        DetectorCategory::Segmentation,
    ];
}

impl std::fmt::Display for DetectorCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for DetectorCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DetectorCategory::ALL
            .iter()
            .find(|c| c.as_str() == s)
            .copied()
            .ok_or_else(|| format!("unknown detector category {s:?}"))
    }
}

/// Which detector pool a triplet ranking applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TripletPool {
    /// Ranking over all categories.
    All,
    /// Ranking restricted to fast detectors: entropy-based ones are too
    /// slow for online use and are left out.
    ExcludingEntropy,
}

impl std::fmt::Display for TripletPool {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TripletPool::All => "all",
            TripletPool::ExcludingEntropy => "excluding-entropy",
        })
    }
}

/// A ranked three-category combination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripletPattern {
    /// 1 is best within its pool.
    pub rank: u32,
    pub pool: TripletPool,
    pub categories: [DetectorCategory; 3],
}

/// Why a knowledge base failed to load or validate.
#[derive(Debug, Error)]
pub enum KbError {
    #[error("cannot read knowledge base: {0}")]
    Io(#[from] std::io::Error),
    #[error("knowledge base syntax: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("category {category} is declared twice")]
    DuplicateCategory { category: DetectorCategory },
    #[error("{context} references undeclared category {category}")]
    UndeclaredCategory {
        category: DetectorCategory,
        context: String,
    },
    #[error("preference list for {category} contains the category itself")]
    SelfPreference { category: DetectorCategory },
    #[error("preference list for {category} repeats {repeated}")]
    RepeatedPreference {
        category: DetectorCategory,
        repeated: DetectorCategory,
    },
    #[error("triplet with rank {rank} must have exactly 3 distinct categories")]
    BadTriplet { rank: u32 },
    #[error("triplet rank {rank} appears twice in pool {pool}")]
    DuplicateTripletRank { rank: u32, pool: TripletPool },
    #[error("triplet rank must be at least 1")]
    ZeroTripletRank,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKb {
    categories: Vec<DetectorCategory>,
    detectors: BTreeMap<String, DetectorCategory>,
    #[serde(default)]
    preferences: BTreeMap<DetectorCategory, Vec<DetectorCategory>>,
    #[serde(default)]
    triplets: Vec<RawTriplet>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTriplet {
    rank: u32,
    pool: TripletPool,
    categories: Vec<DetectorCategory>,
}

/// Validated pairing knowledge: detector categories, partner preferences,
/// and advisory triplet rankings.
#[derive(Debug, Clone, PartialEq)]
pub struct KnowledgeBase {
    categories: Vec<DetectorCategory>,
    detectors: BTreeMap<String, DetectorCategory>,
    preferences: BTreeMap<DetectorCategory, Vec<DetectorCategory>>,
    triplets: Vec<TripletPattern>,
}

impl KnowledgeBase {
    /// Parses and validates knowledge base TOML.
    pub fn from_toml(input: &str) -> Result<Self, KbError> {
        let raw: RawKb = toml::from_str(input)?;

        let mut declared = std::collections::BTreeSet::new();
        for &category in &raw.categories {
            if !declared.insert(category) {
                return Err(KbError::DuplicateCategory { category });
            }
        }
        let check_declared = |category: DetectorCategory, context: String| {
            if declared.contains(&category) {
                Ok(())
            } else {
                Err(KbError::UndeclaredCategory { category, context })
            }
        };

        for (name, &category) in &raw.detectors {
            check_declared(category, format!("detector {name:?}"))?;
        }

        for (&category, partners) in &raw.preferences {
            check_declared(category, "preference table".to_string())?;
            let mut seen = std::collections::BTreeSet::new();
            for &partner in partners {
                check_declared(partner, format!("preference list for {category}"))?;
                if partner == category {
                    return Err(KbError::SelfPreference { category });
                }
                if !seen.insert(partner) {
                    return Err(KbError::RepeatedPreference { category, repeated: partner });
                }
            }
        }

        let mut triplets = Vec::with_capacity(raw.triplets.len());
        let mut ranks_seen = std::collections::BTreeSet::new();
        for raw_triplet in &raw.triplets {
            if raw_triplet.rank == 0 {
                return Err(KbError::ZeroTripletRank);
            }
            let distinct: std::collections::BTreeSet<_> =
                raw_triplet.categories.iter().copied().collect();
            if raw_triplet.categories.len() != 3 || distinct.len() != 3 {
                return Err(KbError::BadTriplet { rank: raw_triplet.rank });
            }
            for &category in &raw_triplet.categories {
                check_declared(category, format!("triplet with rank {}", raw_triplet.rank))?;
            }
            if !ranks_seen.insert((raw_triplet.pool, raw_triplet.rank)) {
                return Err(KbError::DuplicateTripletRank {
                    rank: raw_triplet.rank,
                    pool: raw_triplet.pool,
                });
            }
            triplets.push(TripletPattern {
                rank: raw_triplet.rank,
                pool: raw_triplet.pool,
                categories: [
                    raw_triplet.categories[0],
                    raw_triplet.categories[1],
                    raw_triplet.categories[2],
                ],
            });
        }
        triplets.sort_by_key(|t| (t.pool, t.rank));

        Ok(KnowledgeBase {
            categories: raw.categories,
            detectors: raw.detectors,
            preferences: raw.preferences,
            triplets,
        })
    }

    /// Reads and validates a knowledge base file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, KbError> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    /// The knowledge base shipped with the crate: eleven classic
    /// detectors across seven categories, with pairing preferences and
    /// triplet rankings distilled from published mutual-coverage studies.
    pub fn builtin() -> &'static KnowledgeBase {
        static BUILTIN: OnceLock<KnowledgeBase> = OnceLock::new();
        BUILTIN.get_or_init(|| {
            KnowledgeBase::from_toml(include_str!("../../data/kb_default.toml"))
                .expect("embedded knowledge base is valid")
        })
    }

    /// Category of a detector, by exact (case-sensitive) name.
    pub fn category_of(&self, detector: &str) -> Option<DetectorCategory> {
        self.detectors.get(detector).copied()
    }

    /// Partner categories for `category`, most promising first. Empty
    /// when the base stores no preferences for it.
    pub fn preferred_partners(&self, category: DetectorCategory) -> &[DetectorCategory] {
        self.preferences.get(&category).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Declared categories, in declaration order.
    pub fn categories(&self) -> &[DetectorCategory] {
        &self.categories
    }

    /// Known detector names with their categories, sorted by name.
    pub fn detectors(&self) -> impl Iterator<Item = (&str, DetectorCategory)> {
        self.detectors.iter().map(|(name, &category)| (name.as_str(), category))
    }

    /// Advisory triplet rankings, sorted by pool then rank.
    pub fn triplets(&self) -> &[TripletPattern] {
        &self.triplets
    }
}
