//! JSON configuration and map files; the schema here is the normative
//! on-disk contract.

use std::path::Path;

use inversive::{Configuration, ExtendedPoint, LorentzMap, OrientedBall, Side};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigFile {
    pub version: u32,
    pub dim: usize,
    pub kind: String,
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Item {
    pub label: String,
    #[serde(flatten)]
    pub body: ItemBody,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ItemBody {
    Sphere { center: Vec<f64>, radius: f64, side: SideRepr },
    Halfspace { normal: Vec<f64>, offset: f64 },
    Finite { coords: Vec<f64> },
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideRepr {
    Inside,
    Outside,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapFile {
    pub version: u32,
    pub dim: usize,
    pub matrix: Vec<Vec<f64>>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn load_config(path: &Path) -> Result<(ConfigFile, Configuration)> {
    let file: ConfigFile = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if file.version != SCHEMA_VERSION {
        return Err(CliError::Input(format!(
            "{}: unsupported version {}",
            path.display(),
            file.version
        )));
    }
    let conf = to_core(&file)
        .map_err(|e| match e {
            CliError::Input(m) | CliError::Invariant(m) | CliError::Refusal(m) => {
                CliError::Invariant(format!("{}: {m}", path.display()))
            }
        })?;
    Ok((file, conf))
}

pub fn to_core(file: &ConfigFile) -> Result<Configuration> {
    let bad_item = |label: &str, what: &str| {
        CliError::Invariant(format!("item {label}: {what}"))
    };
    match file.kind.as_str() {
        "balls" => {
            let mut entries = Vec::with_capacity(file.items.len());
            for item in &file.items {
                let ball = match &item.body {
                    ItemBody::Sphere { center, radius, side } => OrientedBall::sphere(
                        DVector::from_vec(center.clone()),
                        *radius,
                        match side {
                            SideRepr::Inside => Side::Inside,
                            SideRepr::Outside => Side::Outside,
                        },
                    )
                    .map_err(|e| bad_item(&item.label, &e.to_string()))?,
                    ItemBody::Halfspace { normal, offset } => {
                        OrientedBall::half_space(DVector::from_vec(normal.clone()), *offset)
                            .map_err(|e| bad_item(&item.label, &e.to_string()))?
                    }
                    _ => return Err(bad_item(&item.label, "point item in a balls file")),
                };
                entries.push((item.label.clone(), ball));
            }
            Ok(Configuration::balls(file.dim, entries)?)
        }
        "points" => {
            let mut entries = Vec::with_capacity(file.items.len());
            for item in &file.items {
                let point = match &item.body {
                    ItemBody::Finite { coords } => {
                        ExtendedPoint::finite(DVector::from_vec(coords.clone()))
                            .map_err(|e| bad_item(&item.label, &e.to_string()))?
                    }
                    ItemBody::Infinity => ExtendedPoint::Infinity(file.dim),
                    _ => return Err(bad_item(&item.label, "ball item in a points file")),
                };
                entries.push((item.label.clone(), point));
            }
            Ok(Configuration::points(file.dim, entries)?)
        }
        other => Err(CliError::Input(format!("unknown kind {other:?}"))),
    }
}

pub fn ball_body(ball: &OrientedBall) -> ItemBody {
    match ball {
        OrientedBall::Sphere { center, radius, side } => ItemBody::Sphere {
            center: center.iter().cloned().collect(),
            radius: *radius,
            side: match side {
                Side::Inside => SideRepr::Inside,
                Side::Outside => SideRepr::Outside,
            },
        },
        OrientedBall::HalfSpace { normal, offset } => ItemBody::Halfspace {
            normal: normal.iter().cloned().collect(),
            offset: *offset,
        },
    }
}

pub fn from_core(conf: &Configuration) -> ConfigFile {
    let (kind, items) = match conf.ball_items() {
        Ok(balls) => (
            "balls",
            conf.labels()
                .iter()
                .zip(balls.iter())
                .map(|(label, ball)| Item { label: label.clone(), body: ball_body(ball) })
                .collect(),
        ),
        Err(_) => (
            "points",
            conf.labels()
                .iter()
                .zip(conf.point_items().expect("points").iter())
                .map(|(label, point)| Item {
                    label: label.clone(),
                    body: match point {
                        ExtendedPoint::Finite(v) => {
                            ItemBody::Finite { coords: v.iter().cloned().collect() }
                        }
                        ExtendedPoint::Infinity(_) => ItemBody::Infinity,
                    },
                })
                .collect(),
        ),
    };
    ConfigFile {
        version: SCHEMA_VERSION,
        dim: conf.dim(),
        kind: kind.to_string(),
        items,
    }
}

pub fn load_map(path: &Path) -> Result<LorentzMap> {
    let file: MapFile = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if file.version != SCHEMA_VERSION {
        return Err(CliError::Input(format!(
            "{}: unsupported version {}",
            path.display(),
            file.version
        )));
    }
    let m = file.dim + 2;
    if file.matrix.len() != m || file.matrix.iter().any(|row| row.len() != m) {
        return Err(CliError::Input(format!(
            "{}: expected a {m}x{m} matrix",
            path.display()
        )));
    }
    let matrix = DMatrix::from_fn(m, m, |i, j| file.matrix[i][j]);
    let map = LorentzMap::with_tolerance(matrix, 1e-6)
        .map_err(|e| CliError::Invariant(format!("{}: {e}", path.display())))?;
    if map.validate().residual > 1e-9 {
        eprintln!(
            "warning: {} has Lorentz residual {:.3e}",
            path.display(),
            map.validate().residual
        );
    }
    Ok(map)
}

pub fn map_to_file(map: &LorentzMap, dim: usize) -> MapFile {
    let m = map.matrix();
    MapFile {
        version: SCHEMA_VERSION,
        dim,
        matrix: (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
            .collect(),
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
    std::fs::write(path, text + "\n")
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}
