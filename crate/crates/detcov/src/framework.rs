//! Choosing which detectors to combine on a set of images.
//!
//! Running every detector on every image is wasteful; running just one
//! risks poor point distribution on scenes it does not suit. The planner
//! here starts from a single preferred detector and adds a second one
//! only when measurements say it must:
//!
//! 1. Run the start detector. If its coverage reaches the
//!    area/perimeter threshold on every image of the task, stay in
//!    single-detector mode.
//! 2. Otherwise walk the knowledge base's partner-category preference
//!    list for the start detector's category. For each category, take
//!    the first registered detector (registration order) whose output is
//!    available on every image, and measure the combined coverage of its
//!    points merged with the start detector's. Accept the first
//!    combination that clears the threshold on every image.
//! 3. If nothing clears the bar, fall back to the tried combination
//!    whose worst per-image combined coverage was highest, earliest
//!    trial winning ties.
//!
//! Every coverage measurement taken along the way is recorded in the
//! decision's trace, so a run can be audited or re-scored offline (see
//! [`trace_csv`]).
//!
//! A coverage score can be undefined when a detector yields fewer than
//! two distinct points on an image; the planner treats that as "below
//! threshold" rather than an error, since it is precisely the situation
//! where combining detectors helps. Trace entries hold `None` for such
//! measurements.

pub mod kb;

use crate::keypoint::{ImageDims, KeyPointSet};
use crate::metrics::{coverage, mutual_coverage};
use crate::stats::area_perimeter_threshold;
use kb::KnowledgeBase;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

/// One unit of planning work: an id plus the images it concerns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Task {
    pub id: String,
    pub images: Vec<String>,
}

impl Task {
    pub fn new(id: impl Into<String>, images: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Task {
            id: id.into(),
            images: images.into_iter().map(Into::into).collect(),
        }
    }
}

/// Supplies a detector's output for an image, or `None` when the
/// detector has no output there.
pub type Provider = Box<dyn Fn(&str) -> Option<KeyPointSet> + Send + Sync>;

/// The detectors a planning run may draw on.
///
/// Registration order matters: within a partner category, the first
/// registered detector with output on every task image is the one tried.
#[derive(Default)]
pub struct DetectorRegistry {
    entries: Vec<(String, Provider)>,
}

impl DetectorRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a detector under a unique name.
    pub fn register(
        &mut self,
        name: impl Into<String>,
        provider: Provider,
    ) -> Result<(), FrameworkError> {
        let name = name.into();
        if self.entries.iter().any(|(existing, _)| *existing == name) {
            return Err(FrameworkError::DuplicateDetector { name });
        }
        self.entries.push((name, provider));
        Ok(())
    }

    /// Registers a detector backed by pre-loaded sets, keyed by their
    /// `image_id`. Images absent from `sets` count as unavailable.
    pub fn register_sets(
        &mut self,
        name: impl Into<String>,
        sets: Vec<KeyPointSet>,
    ) -> Result<(), FrameworkError> {
        let name = name.into();
        let mut by_image: BTreeMap<String, KeyPointSet> = BTreeMap::new();
        for set in sets {
            let image = set.image_id.clone();
            if by_image.insert(image.clone(), set).is_some() {
                return Err(FrameworkError::DuplicateImageSet { detector: name, image });
            }
        }
        self.register(name, Box::new(move |image| by_image.get(image).cloned()))
    }

    /// Detector names in registration order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(name, _)| name.as_str())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.iter().any(|(existing, _)| existing == name)
    }

    /// The detector's output for an image, if it has any.
    pub fn fetch(&self, detector: &str, image: &str) -> Option<KeyPointSet> {
        self.entries
            .iter()
            .find(|(name, _)| name == detector)
            .and_then(|(_, provider)| provider(image))
    }
}

impl std::fmt::Debug for DetectorRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DetectorRegistry")
            .field("detectors", &self.names().collect::<Vec<_>>())
            .finish()
    }
}

/// Why planning failed for a task.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameworkError {
    #[error("detector {name:?} is already registered")]
    DuplicateDetector { name: String },
    #[error("detector {detector:?} provides two sets for image {image:?}")]
    DuplicateImageSet { detector: String, image: String },
    #[error("task {task:?} lists no images")]
    EmptyTask { task: String },
    #[error("start detector {detector:?} is not registered")]
    UnknownStartDetector { detector: String },
    #[error("start detector {detector:?} is not in the knowledge base")]
    UncategorizedStartDetector { detector: String },
    #[error("start detector {detector:?} has no output for image {image:?}")]
    StartUnavailable { detector: String, image: String },
    #[error("no dimensions known for image {image:?}")]
    MissingDims { image: String },
    #[error("task {task:?}: no partner detector could be tried")]
    NoCandidates { task: String },
}

/// Single detector, or a combination of several.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CombinationMode {
    Single,
    Multi,
}

impl std::fmt::Display for CombinationMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CombinationMode::Single => "single",
            CombinationMode::Multi => "multi",
        })
    }
}

/// One measurement round during planning.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceStep {
    /// 0 for the start detector alone, then 1, 2, ... per tried partner.
    pub step: usize,
    /// Detectors whose merged output was measured.
    pub detectors: Vec<String>,
    /// Coverage per task image, aligned with the task's image order.
    /// `None` when the merged output had fewer than two distinct points.
    pub values: Vec<Option<f64>>,
}

/// The outcome of planning one task.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameworkDecision {
    pub task_id: String,
    pub images: Vec<String>,
    /// Pass bar per image, aligned with `images`.
    pub thresholds: Vec<f64>,
    pub mode: CombinationMode,
    /// The chosen detectors; one name in single mode, two in multi mode.
    pub detectors: Vec<String>,
    /// `true` when no tried combination reached the threshold and the
    /// best-scoring one was chosen instead.
    pub fallback: bool,
    pub trace: Vec<TraceStep>,
}

fn score_sets(sets: &[KeyPointSet]) -> Option<f64> {
    if sets.len() == 1 {
        coverage(&sets[0]).ok().map(|c| c.value())
    } else {
        mutual_coverage(sets).ok().map(|c| c.value())
    }
}

/// Plans detector use for one task.
///
/// `dims` must contain every image of the task; `start` must be
/// registered, categorized in the knowledge base, and have output on
/// every image. Detectors other than `start` may be missing anywhere,
/// which simply removes them from consideration.
pub fn decide(
    task: &Task,
    start: &str,
    registry: &DetectorRegistry,
    kb: &KnowledgeBase,
    dims: &BTreeMap<String, ImageDims>,
) -> Result<FrameworkDecision, FrameworkError> {
    if task.images.is_empty() {
        return Err(FrameworkError::EmptyTask { task: task.id.clone() });
    }
    if !registry.contains(start) {
        return Err(FrameworkError::UnknownStartDetector { detector: start.to_string() });
    }
    let start_category = kb
        .category_of(start)
        .ok_or_else(|| FrameworkError::UncategorizedStartDetector { detector: start.to_string() })?;

    let thresholds: Vec<f64> = task
        .images
        .iter()
        .map(|image| {
            dims.get(image)
                .map(|&d| area_perimeter_threshold(d))
                .ok_or_else(|| FrameworkError::MissingDims { image: image.clone() })
        })
        .collect::<Result<_, _>>()?;

    let start_sets: Vec<KeyPointSet> = task
        .images
        .iter()
        .map(|image| {
            registry.fetch(start, image).ok_or_else(|| FrameworkError::StartUnavailable {
                detector: start.to_string(),
                image: image.clone(),
            })
        })
        .collect::<Result<_, _>>()?;

    let mut trace = Vec::new();
    let clears_bar = |values: &[Option<f64>]| {
        values
            .iter()
            .zip(&thresholds)
            .all(|(value, &threshold)| value.is_some_and(|v| v >= threshold))
    };

    let start_values: Vec<Option<f64>> = start_sets
        .iter()
        .map(|set| score_sets(std::slice::from_ref(set)))
        .collect();
    trace.push(TraceStep {
        step: 0,
        detectors: vec![start.to_string()],
        values: start_values.clone(),
    });
    if clears_bar(&start_values) {
        return Ok(FrameworkDecision {
            task_id: task.id.clone(),
            images: task.images.clone(),
            thresholds,
            mode: CombinationMode::Single,
            detectors: vec![start.to_string()],
            fallback: false,
            trace,
        });
    }

    // The start detector alone is not enough; try partners category by
    // category in knowledge base preference order.
    let mut best_partner: Option<(usize, String, f64)> = None;
    let mut step = 0usize;
    for &partner_category in kb.preferred_partners(start_category) {
        let candidate = registry.names().find(|&name| {
            name != start
                && kb.category_of(name) == Some(partner_category)
                && task.images.iter().all(|image| registry.fetch(name, image).is_some())
        });
        let Some(candidate) = candidate else {
            continue;
        };
        let values: Vec<Option<f64>> = task
            .images
            .iter()
            .zip(&start_sets)
            .map(|(image, start_set)| {
                let candidate_set =
                    registry.fetch(candidate, image).expect("availability checked above");
                score_sets(&[start_set.clone(), candidate_set])
            })
            .collect();
        step += 1;
        trace.push(TraceStep {
            step,
            detectors: vec![start.to_string(), candidate.to_string()],
            values: values.clone(),
        });
        if clears_bar(&values) {
            return Ok(FrameworkDecision {
                task_id: task.id.clone(),
                images: task.images.clone(),
                thresholds,
                mode: CombinationMode::Multi,
                detectors: vec![start.to_string(), candidate.to_string()],
                fallback: false,
                trace,
            });
        }
        // Worst image decides the fallback score; an undefined score
        // ranks below every defined one. Strict comparison keeps the
        // earliest trial on ties.
        let floor = values
            .iter()
            .map(|v| v.unwrap_or(f64::NEG_INFINITY))
            .fold(f64::INFINITY, f64::min);
        if best_partner.as_ref().is_none_or(|&(_, _, best)| floor > best) {
            best_partner = Some((step, candidate.to_string(), floor));
        }
    }

    let Some((_, partner, _)) = best_partner else {
        return Err(FrameworkError::NoCandidates { task: task.id.clone() });
    };
    Ok(FrameworkDecision {
        task_id: task.id.clone(),
        images: task.images.clone(),
        thresholds,
        mode: CombinationMode::Multi,
        detectors: vec![start.to_string(), partner],
        fallback: true,
        trace,
    })
}

/// Plans every task, collecting per-task outcomes; one task's failure
/// does not stop the others.
pub fn run_batch(
    tasks: &[Task],
    start: &str,
    registry: &DetectorRegistry,
    kb: &KnowledgeBase,
    dims: &BTreeMap<String, ImageDims>,
) -> Vec<Result<FrameworkDecision, FrameworkError>> {
    tasks.iter().map(|task| decide(task, start, registry, kb, dims)).collect()
}

/// Renders decisions as CSV, one row per trace measurement per image.
///
/// Columns: `pair_id,image_id,step,detectors,value,threshold,mode,fallback`.
/// `detectors` joins the measured combination with `+`; `value` is empty
/// when the measurement was undefined; `mode` and `fallback` describe the
/// decision's final outcome on every row of that decision.
pub fn trace_csv(decisions: &[FrameworkDecision]) -> String {
    let mut out = String::from("pair_id,image_id,step,detectors,value,threshold,mode,fallback\n");
    for decision in decisions {
        for step in &decision.trace {
            for (i, image) in decision.images.iter().enumerate() {
                let value = step.values[i].map(|v| v.to_string()).unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    decision.task_id,
                    image,
                    step.step,
                    step.detectors.join("+"),
                    value,
                    decision.thresholds[i],
                    decision.mode,
                    decision.fallback,
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use kb::DetectorCategory;

    // A 10x10 image has threshold 100 / 40 = 2.5. The corner layout
    // scores well above it (about 9.97) and the huddle well below
    // (0.6). The huddle's tight spacing contributes a large reciprocal
    // mass that drags any union down, so a partner must spread points
    // densely across the frame to lift the union over the bar; the 3x3
    // spread does (union scores about 4.3), the corner layout does not
    // (union scores about 2.4).
    const DIMS_SIDE: u32 = 10;
    const CORNERS: [(f64, f64); 4] = [(0.0, 0.0), (9.0, 0.0), (0.0, 9.0), (9.0, 9.0)];
    const HUDDLE: [(f64, f64); 3] = [(0.0, 0.0), (0.5, 0.0), (1.0, 0.0)];
    const SPREAD9: [(f64, f64); 9] = [
        (0.0, 0.0),
        (4.5, 0.0),
        (9.0, 0.0),
        (0.0, 4.5),
        (4.5, 4.5),
        (9.0, 4.5),
        (0.0, 9.0),
        (4.5, 9.0),
        (9.0, 9.0),
    ];

    fn test_kb() -> KnowledgeBase {
        KnowledgeBase::from_toml(
            r#"
categories = ["spiral", "entropy-based", "segmentation-based", "corner"]

[detectors]
SFOP = "spiral"
Salient = "entropy-based"
MSER = "segmentation-based"
IBR = "segmentation-based"
EBR = "corner"

[preferences]
spiral = ["entropy-based", "segmentation-based", "corner"]
"#,
        )
        .unwrap()
    }

    fn dims_for(images: &[&str]) -> BTreeMap<String, ImageDims> {
        images
            .iter()
            .map(|&i| (i.to_string(), ImageDims::new(DIMS_SIDE, DIMS_SIDE).unwrap()))
            .collect()
    }

    fn sets(detector: &str, layouts: &[(&str, &[(f64, f64)])]) -> Vec<KeyPointSet> {
        layouts
            .iter()
            .map(|(image, coords)| KeyPointSet::from_xy(detector, *image, coords))
            .collect()
    }

    fn task_ab() -> Task {
        Task::new("t", ["a", "b"])
    }

    #[test]
    fn single_mode_when_start_covers_every_image() {
        let mut registry = DetectorRegistry::new();
        registry
            .register_sets("SFOP", sets("SFOP", &[("a", &CORNERS), ("b", &CORNERS)]))
            .unwrap();
        let decision =
            decide(&task_ab(), "SFOP", &registry, &test_kb(), &dims_for(&["a", "b"])).unwrap();
        assert_eq!(decision.mode, CombinationMode::Single);
        assert_eq!(decision.detectors, vec!["SFOP"]);
        assert!(!decision.fallback);
        assert_eq!(decision.trace.len(), 1);
        assert_eq!(decision.trace[0].step, 0);
        assert_eq!(decision.thresholds, vec![2.5, 2.5]);
    }

    #[test]
    fn multi_mode_accepts_first_clearing_combination() {
        let mut registry = DetectorRegistry::new();
        registry
            .register_sets("SFOP", sets("SFOP", &[("a", &HUDDLE), ("b", &CORNERS)]))
            .unwrap();
        registry
            .register_sets("Salient", sets("Salient", &[("a", &SPREAD9), ("b", &SPREAD9)]))
            .unwrap();
        registry
            .register_sets("MSER", sets("MSER", &[("a", &SPREAD9), ("b", &SPREAD9)]))
            .unwrap();
        let decision =
            decide(&task_ab(), "SFOP", &registry, &test_kb(), &dims_for(&["a", "b"])).unwrap();
        assert_eq!(decision.mode, CombinationMode::Multi);
        assert_eq!(decision.detectors, vec!["SFOP", "Salient"]);
        assert!(!decision.fallback);
        // Step 0 plus exactly one partner trial: MSER is never measured.
        assert_eq!(decision.trace.len(), 2);
        assert_eq!(decision.trace[1].detectors, vec!["SFOP", "Salient"]);
    }

    #[test]
    fn unavailable_partner_is_skipped_for_next_category() {
        let mut registry = DetectorRegistry::new();
        registry
            .register_sets("SFOP", sets("SFOP", &[("a", &HUDDLE), ("b", &HUDDLE)]))
            .unwrap();
        // Salient misses image b entirely, so the entropy category has
        // no usable candidate.
        registry.register_sets("Salient", sets("Salient", &[("a", &SPREAD9)])).unwrap();
        registry
            .register_sets("MSER", sets("MSER", &[("a", &SPREAD9), ("b", &SPREAD9)]))
            .unwrap();
        let decision =
            decide(&task_ab(), "SFOP", &registry, &test_kb(), &dims_for(&["a", "b"])).unwrap();
        assert_eq!(decision.detectors, vec!["SFOP", "MSER"]);
        assert!(!decision.fallback);
        assert_eq!(decision.trace.len(), 2);
    }

    #[test]
    fn registration_order_breaks_in_category_ties() {
        let mut registry = DetectorRegistry::new();
        registry
            .register_sets("SFOP", sets("SFOP", &[("a", &HUDDLE), ("b", &HUDDLE)]))
            .unwrap();
        registry
            .register_sets("IBR", sets("IBR", &[("a", &SPREAD9), ("b", &SPREAD9)]))
            .unwrap();
        registry
            .register_sets("MSER", sets("MSER", &[("a", &SPREAD9), ("b", &SPREAD9)]))
            .unwrap();
        let decision =
            decide(&task_ab(), "SFOP", &registry, &test_kb(), &dims_for(&["a", "b"])).unwrap();
        assert_eq!(decision.detectors, vec!["SFOP", "IBR"]);
        assert!(!decision.fallback);
    }

    #[test]
    fn fallback_picks_best_floor_earliest_on_tie() {
        let mut registry = DetectorRegistry::new();
        registry
            .register_sets("SFOP", sets("SFOP", &[("a", &HUDDLE), ("b", &HUDDLE)]))
            .unwrap();
        // Salient improves things a little, MSER a little more, EBR
        // exactly as much as MSER; nobody reaches 2.5 everywhere.
        let slight = [(0.0, 0.0), (2.0, 0.0)];
        let better = [(0.0, 0.0), (0.0, 4.0)];
        registry
            .register_sets("Salient", sets("Salient", &[("a", &slight), ("b", &slight)]))
            .unwrap();
        registry
            .register_sets("MSER", sets("MSER", &[("a", &better), ("b", &better)]))
            .unwrap();
        registry
            .register_sets("EBR", sets("EBR", &[("a", &better), ("b", &better)]))
            .unwrap();
        let decision =
            decide(&task_ab(), "SFOP", &registry, &test_kb(), &dims_for(&["a", "b"])).unwrap();
        assert_eq!(decision.mode, CombinationMode::Multi);
        assert!(decision.fallback);
        assert_eq!(decision.detectors, vec!["SFOP", "MSER"]);
        assert_eq!(decision.trace.len(), 4);
    }

    #[test]
    fn undefined_coverage_counts_as_below_threshold() {
        let mut registry = DetectorRegistry::new();
        // One distinct location on image a: coverage is undefined there.
        registry
            .register_sets(
                "SFOP",
                sets("SFOP", &[("a", &[(1.0, 1.0), (1.0, 1.0)]), ("b", &CORNERS)]),
            )
            .unwrap();
        registry
            .register_sets("Salient", sets("Salient", &[("a", &CORNERS), ("b", &CORNERS)]))
            .unwrap();
        let decision =
            decide(&task_ab(), "SFOP", &registry, &test_kb(), &dims_for(&["a", "b"])).unwrap();
        assert_eq!(decision.trace[0].values[0], None);
        assert!(decision.trace[0].values[1].is_some());
        assert_eq!(decision.mode, CombinationMode::Multi);
        assert_eq!(decision.detectors, vec!["SFOP", "Salient"]);
        assert!(!decision.fallback);
    }

    #[test]
    fn no_candidates_when_registry_has_only_start() {
        let mut registry = DetectorRegistry::new();
        registry
            .register_sets("SFOP", sets("SFOP", &[("a", &HUDDLE), ("b", &HUDDLE)]))
            .unwrap();
        assert_eq!(
            decide(&task_ab(), "SFOP", &registry, &test_kb(), &dims_for(&["a", "b"])),
            Err(FrameworkError::NoCandidates { task: "t".into() })
        );
    }

    #[test]
    fn precondition_errors() {
        let kb = test_kb();
        let dims = dims_for(&["a", "b"]);
        let mut registry = DetectorRegistry::new();
        registry.register_sets("SFOP", sets("SFOP", &[("a", &HUDDLE)])).unwrap();

        assert_eq!(
            decide(&Task::new("t", Vec::<String>::new()), "SFOP", &registry, &kb, &dims),
            Err(FrameworkError::EmptyTask { task: "t".into() })
        );
        assert_eq!(
            decide(&task_ab(), "ghost", &registry, &kb, &dims),
            Err(FrameworkError::UnknownStartDetector { detector: "ghost".into() })
        );
        assert_eq!(
            decide(&task_ab(), "SFOP", &registry, &kb, &dims),
            Err(FrameworkError::StartUnavailable { detector: "SFOP".into(), image: "b".into() })
        );
        assert_eq!(
            decide(&Task::new("t", ["a"]), "SFOP", &registry, &kb, &BTreeMap::new()),
            Err(FrameworkError::MissingDims { image: "a".into() })
        );

        let mut unknown = DetectorRegistry::new();
        unknown.register_sets("Mystery", sets("Mystery", &[("a", &CORNERS)])).unwrap();
        assert_eq!(
            decide(&Task::new("t", ["a"]), "Mystery", &unknown, &kb, &dims),
            Err(FrameworkError::UncategorizedStartDetector { detector: "Mystery".into() })
        );
    }

    #[test]
    fn duplicate_registration_is_rejected() {
        let mut registry = DetectorRegistry::new();
        registry.register_sets("SFOP", vec![]).unwrap();
        assert_eq!(
            registry.register_sets("SFOP", vec![]),
            Err(FrameworkError::DuplicateDetector { name: "SFOP".into() })
        );
        let twice = vec![
            KeyPointSet::from_xy("MSER", "a", &[(0.0, 0.0)]),
            KeyPointSet::from_xy("MSER", "a", &[(1.0, 1.0)]),
        ];
        assert_eq!(
            registry.register_sets("MSER", twice),
            Err(FrameworkError::DuplicateImageSet { detector: "MSER".into(), image: "a".into() })
        );
    }

    #[test]
    fn run_batch_isolates_task_failures() {
        let mut registry = DetectorRegistry::new();
        registry
            .register_sets("SFOP", sets("SFOP", &[("a", &CORNERS), ("b", &CORNERS)]))
            .unwrap();
        let tasks =
            vec![Task::new("ok", ["a", "b"]), Task::new("broken", ["a", "ghost"])];
        let results =
            run_batch(&tasks, "SFOP", &registry, &test_kb(), &dims_for(&["a", "b"]));
        assert_eq!(results.len(), 2);
        assert!(results[0].is_ok());
        assert_eq!(
            results[1],
            Err(FrameworkError::MissingDims { image: "ghost".into() })
        );
    }

    #[test]
    fn trace_csv_layout() {
        let decision = FrameworkDecision {
            task_id: "p1".into(),
            images: vec!["a".into(), "b".into()],
            thresholds: vec![2.5, 2.5],
            mode: CombinationMode::Multi,
            detectors: vec!["SFOP".into(), "MSER".into()],
            fallback: true,
            trace: vec![
                TraceStep {
                    step: 0,
                    detectors: vec!["SFOP".into()],
                    values: vec![Some(0.6), None],
                },
                TraceStep {
                    step: 1,
                    detectors: vec!["SFOP".into(), "MSER".into()],
                    values: vec![Some(1.5), Some(2.0)],
                },
            ],
        };
        let csv = trace_csv(&[decision]);
        let expected = "\
pair_id,image_id,step,detectors,value,threshold,mode,fallback
p1,a,0,SFOP,0.6,2.5,multi,true
p1,b,0,SFOP,,2.5,multi,true
p1,a,1,SFOP+MSER,1.5,2.5,multi,true
p1,b,1,SFOP+MSER,2,2.5,multi,true
";
        assert_eq!(csv, expected);
    }

    #[test]
    fn kb_category_lookup_is_exact() {
        assert_eq!(test_kb().category_of("SFOP"), Some(DetectorCategory::Spiral));
        assert_eq!(test_kb().category_of("sfop"), None);
    }
}
