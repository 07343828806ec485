//! Scenario and chain files: TOML parsing, validation against the library
//! invariants, normalization, and content digests.
//!
//! Unknown keys are rejected. The digest is the SHA-256 of the normalized
//! form (defaults filled in, canonical field order), so it is stable under
//! key reordering of the input file.

use anyhow::{bail, Context, Result};
use eg2::{ComponentSet, GridSpec, MatrixClass, ParamMatrix, Spacing, SystemKind, TTransform};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

/// CLI cap on components per system, keeping grid sweeps interactive.
pub const MAX_COMPONENTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindField {
    Series,
    Parallel,
}

impl From<KindField> for SystemKind {
    fn from(k: KindField) -> SystemKind {
        match k {
            KindField::Series => SystemKind::Series,
            KindField::Parallel => SystemKind::Parallel,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderField {
    St,
    Fr,
    Rf,
    Lr,
}

impl std::fmt::Display for OrderField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OrderField::St => "st",
            OrderField::Fr => "fr",
            OrderField::Rf => "rf",
            OrderField::Lr => "lr",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpacingField {
    Linear,
    Log,
}

impl From<SpacingField> for Spacing {
    fn from(s: SpacingField) -> Spacing {
        match s {
            SpacingField::Linear => Spacing::Linear,
            SpacingField::Log => Spacing::Log,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentField {
    pub theta: f64,
    pub phi: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: Option<usize>,
    pub spacing: Option<SpacingField>,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceSection {
    pub dominance: Option<f64>,
}

/// A scenario file as written by the user.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub kind: KindField,
    pub order: OrderField,
    pub system_a: Vec<ComponentField>,
    pub system_b: Vec<ComponentField>,
    #[serde(default)]
    pub grid: Option<GridSection>,
    #[serde(default)]
    pub tolerances: Option<ToleranceSection>,
}

/// Grid/tolerance overrides from command-line flags; highest precedence.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: Option<usize>,
    pub spacing: Option<SpacingField>,
    pub tol: Option<f64>,
}

/// A fully resolved scenario: every field concrete, systems validated.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub kind: KindField,
    pub order: OrderField,
    pub system_a: Vec<ComponentField>,
    pub system_b: Vec<ComponentField>,
    pub grid: ResolvedGrid,
    pub tolerances: ResolvedTolerances,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolvedGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub spacing: SpacingField,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolvedTolerances {
    pub dominance: f64,
}

impl Scenario {
    pub fn grid_spec(&self) -> Result<GridSpec> {
        GridSpec::new(
            self.grid.x_min,
            self.grid.x_max,
            self.grid.points,
            self.grid.spacing.into(),
        )
        .context("invalid grid")
    }

    pub fn component_set(&self, components: &[ComponentField]) -> Result<ComponentSet> {
        let triples: Vec<(f64, f64, f64)> = components
            .iter()
            .map(|c| (c.theta, c.phi, c.alpha))
            .collect();
        ComponentSet::from_triples(&triples).context("invalid component")
    }

    pub fn systems(&self) -> Result<(ComponentSet, ComponentSet)> {
        Ok((
            self.component_set(&self.system_a)
                .context("in system_a")?,
            self.component_set(&self.system_b)
                .context("in system_b")?,
        ))
    }

    /// Canonical TOML rendering of the normalized scenario.
    pub fn normalized_toml(&self) -> Result<String> {
        toml::to_string(self).context("serializing normalized scenario")
    }

    /// Hex SHA-256 of the normalized rendering.
    pub fn digest(&self) -> Result<String> {
        let text = self.normalized_toml()?;
        Ok(hex_digest(text.as_bytes()))
    }
}

pub fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn load_scenario(path: &Path, overrides: &Overrides) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading scenario file {}", path.display()))?;
    let file: ScenarioFile = toml::from_str(&text)
        .with_context(|| format!("parsing scenario file {}", path.display()))?;
    resolve_scenario(file, overrides)
}

pub fn resolve_scenario(file: ScenarioFile, overrides: &Overrides) -> Result<Scenario> {
    let grid_in = file.grid.unwrap_or_default();
    let tol_in = file.tolerances.unwrap_or_default();
    let scenario = Scenario {
        kind: file.kind,
        order: file.order,
        system_a: file.system_a,
        system_b: file.system_b,
        grid: ResolvedGrid {
            x_min: overrides.x_min.or(grid_in.x_min).unwrap_or(1e-2),
            x_max: overrides.x_max.or(grid_in.x_max).unwrap_or(1e2),
            points: overrides.points.or(grid_in.points).unwrap_or(4096),
            spacing: overrides
                .spacing
                .or(grid_in.spacing)
                .unwrap_or(SpacingField::Log),
        },
        tolerances: ResolvedTolerances {
            dominance: overrides
                .tol
                .or(tol_in.dominance)
                .unwrap_or(eg2::DEFAULT_DOMINANCE_TOL),
        },
    };
    validate_scenario(&scenario)?;
    Ok(scenario)
}

fn validate_scenario(s: &Scenario) -> Result<()> {
    for (name, sys) in [("system_a", &s.system_a), ("system_b", &s.system_b)] {
        if sys.is_empty() {
            bail!("{name} must list at least one component");
        }
        if sys.len() > MAX_COMPONENTS {
            bail!("{name} has {} components; the cap is {MAX_COMPONENTS}", sys.len());
        }
    }
    if s.order == OrderField::Rf && s.kind != KindField::Parallel {
        bail!("order = \"rf\" compares parallel lifetimes; set kind = \"parallel\"");
    }
    s.systems().map(|_| ())?;
    s.grid_spec().map(|_| ())?;
    if !(s.tolerances.dominance.is_finite() && s.tolerances.dominance > 0.0) {
        bail!("tolerances.dominance must be positive and finite");
    }
    Ok(())
}

/// A chain-verification file: the starting matrix, the membership class,
/// and the transform list (1-based coordinates).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub set: ChainSet,
    pub alphas: Vec<f64>,
    pub thetas: Vec<f64>,
    #[serde(default)]
    pub transforms: Vec<TransformField>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainSet {
    S,
    T,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformField {
    pub i: usize,
    pub j: usize,
    pub w: f64,
}

pub struct ChainInput {
    pub matrix: ParamMatrix,
    pub class: MatrixClass,
    pub transforms: Vec<TTransform>,
}

pub fn load_chain(path: &Path) -> Result<ChainInput> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading chain file {}", path.display()))?;
    let file: ChainFile = toml::from_str(&text)
        .with_context(|| format!("parsing chain file {}", path.display()))?;
    let matrix = ParamMatrix::new(file.alphas.clone(), file.thetas.clone())
        .context("invalid parameter matrix")?;
    let n = matrix.order();
    let transforms = file
        .transforms
        .iter()
        .map(|t| {
            if t.i == 0 || t.j == 0 {
                bail!("transform coordinates are 1-based; got ({}, {})", t.i, t.j);
            }
            TTransform::new(n, t.i - 1, t.j - 1, t.w)
                .with_context(|| format!("invalid transform ({}, {}, {})", t.i, t.j, t.w))
        })
        .collect::<Result<Vec<_>>>()?;
    let class = match file.set {
        ChainSet::S => MatrixClass::S,
        ChainSet::T => MatrixClass::T,
    };
    Ok(ChainInput {
        matrix,
        class,
        transforms,
    })
}
