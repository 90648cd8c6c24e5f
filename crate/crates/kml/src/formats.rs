//! JSON input documents and their conversion into `kml-core` objects.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use kml_core::{
    AffineObject, GradedModule, Matrix, ModulePresentation, PresentedModule, Ring, SCube, Submodule,
};
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

/// A schema or content violation, located by a path into the input document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl InputError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> InputError {
        InputError {
            path: path.into(),
            message: message.into(),
        }
    }

    fn core(path: &str, err: kml_core::error::Error) -> InputError {
        InputError::new(path, err.to_string())
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() || self.path == "." {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for InputError {}

type Result<T> = std::result::Result<T, InputError>;

/// Deserializes `text`, reporting failures with their path into the document.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        InputError::new(path, e.into_inner().to_string())
    })
}

/// Parses `Z`, `Q`, `Fp:<p>` (or `Fp` with a separate modulus).
pub fn parse_ring(name: &str, p: Option<u64>) -> std::result::Result<Ring, String> {
    let bad_modulus = |e: kml_core::error::Error| e.to_string();
    match name.trim() {
        "Z" => Ok(Ring::Integers),
        "Q" => Ok(Ring::Rationals),
        "Fp" => {
            let p = p.ok_or("ring Fp needs a modulus `p`")?;
            Ring::prime_field(p).map_err(bad_modulus)
        }
        other => {
            let Some(rest) = other.strip_prefix("Fp:") else {
                return Err(format!("unknown ring `{other}`; expected Z, Q or Fp:<p>"));
            };
            let q: u64 = rest.parse().map_err(|_| format!("malformed modulus `{rest}`"))?;
            if p.is_some_and(|p| p != q) {
                return Err(format!("modulus {q} disagrees with p = {}", p.unwrap_or(0)));
            }
            Ring::prime_field(q).map_err(bad_modulus)
        }
    }
}

/// Chooses between a ring declared in the document and one given on the command line.
pub fn resolve_base(declared: Option<Ring>, flag: Option<Ring>, path: &str) -> Result<Ring> {
    match (declared, flag) {
        (Some(d), Some(f)) if d != f => Err(InputError::new(
            path,
            format!("document declares {d} but --base is {f}"),
        )),
        (Some(r), _) | (None, Some(r)) => Ok(r),
        (None, None) => Ok(Ring::Integers),
    }
}

fn declared_ring(name: Option<&str>, p: Option<u64>, path: &str) -> Result<Option<Ring>> {
    name.map(|n| parse_ring(n, p).map_err(|m| InputError::new(path, m)))
        .transpose()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum EntryDoc {
    Text(String),
    Int(i64),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub ring: Option<String>,
    pub p: Option<u64>,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<EntryDoc>>,
}

impl MatrixDoc {
    /// Builds the matrix over `base`; a ring declared on the literal must agree.
    pub fn build(&self, base: Ring, path: &str) -> Result<Matrix> {
        let declared = declared_ring(self.ring.as_deref(), self.p, &format!("{path}.ring"))?;
        let ring = resolve_base(declared, Some(base), &format!("{path}.ring"))?;
        if self.entries.len() != self.rows {
            return Err(InputError::new(
                format!("{path}.entries"),
                format!("expected {} rows, found {}", self.rows, self.entries.len()),
            ));
        }
        let mut values = Vec::with_capacity(self.rows * self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return Err(InputError::new(
                    format!("{path}.entries[{i}]"),
                    format!("expected {} entries, found {}", self.cols, row.len()),
                ));
            }
            for (j, e) in row.iter().enumerate() {
                let here = format!("{path}.entries[{i}][{j}]");
                let v = match e {
                    EntryDoc::Int(v) => BigRational::from_integer((*v).into()),
                    EntryDoc::Text(s) => BigRational::from_str(s.trim())
                        .map_err(|_| InputError::new(&here, format!("`{s}` is not a decimal integer or fraction")))?,
                };
                values.push(ring.normalize(v).map_err(|err| InputError::core(&here, err))?);
            }
        }
        Matrix::from_entries(ring, self.rows, self.cols, values).map_err(|e| InputError::core(path, e))
    }
}

/// A vertex or component: a free rank, or generators modulo relation columns.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ModuleDoc {
    Free(usize),
    Presented { generators: usize, relations: MatrixDoc },
}

impl ModuleDoc {
    pub fn build(&self, base: Ring, path: &str) -> Result<PresentedModule> {
        match self {
            ModuleDoc::Free(r) => Ok(PresentedModule::free(base, *r)),
            ModuleDoc::Presented { generators, relations } => {
                let rel_path = format!("{path}.relations");
                let m = relations.build(base, &rel_path)?;
                if m.rows() != *generators {
                    return Err(InputError::new(
                        rel_path,
                        format!("relations need {generators} rows, found {}", m.rows()),
                    ));
                }
                Ok(PresentedModule::from_relations(&m))
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeDoc {
    pub base: Option<String>,
    pub p: Option<u64>,
    pub directions: Vec<String>,
    /// Keyed by subset strings such as `{}` or `{1,3}`.
    pub vertices: BTreeMap<String, ModuleDoc>,
    /// `boundaries[subset][direction]` maps `x_T → x_{T∖{t}}`.
    #[serde(default)]
    pub boundaries: BTreeMap<String, BTreeMap<String, MatrixDoc>>,
}

fn parse_subset_label(label: &str, directions: &[String], path: &str) -> Result<u32> {
    let inner = label
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| InputError::new(path, format!("malformed subset `{label}`")))?;
    let mut mask = 0u32;
    for name in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i = directions
            .iter()
            .position(|d| d == name)
            .ok_or_else(|| InputError::new(path, format!("unknown direction `{name}`")))?;
        if mask & (1 << i) != 0 {
            return Err(InputError::new(path, format!("direction `{name}` repeated")));
        }
        mask |= 1 << i;
    }
    Ok(mask)
}

impl CubeDoc {
    pub fn build(&self, flag: Option<Ring>) -> Result<SCube> {
        let declared = declared_ring(self.base.as_deref(), self.p, "base")?;
        let ring = resolve_base(declared, flag, "base")?;
        let n = self.directions.len();
        if n > 8 {
            return Err(InputError::new("directions", format!("{n} directions; at most 8 are supported")));
        }
        let mut vertices: Vec<Option<PresentedModule>> = vec![None; 1 << n];
        for (label, doc) in &self.vertices {
            let path = format!("vertices.{label}");
            let mask = parse_subset_label(label, &self.directions, &path)?;
            if vertices[mask as usize].is_some() {
                return Err(InputError::new(path, "vertex given twice"));
            }
            vertices[mask as usize] = Some(doc.build(ring, &path)?);
        }
        let vertices = vertices
            .into_iter()
            .enumerate()
            .map(|(mask, v)| {
                v.ok_or_else(|| {
                    InputError::new("vertices", format!("missing vertex {}", label_of(mask as u32, &self.directions)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut boundaries = BTreeMap::new();
        for (label, per_direction) in &self.boundaries {
            let path = format!("boundaries.{label}");
            let mask = parse_subset_label(label, &self.directions, &path)?;
            for (dir, doc) in per_direction {
                let here = format!("{path}.{dir}");
                let t = self
                    .directions
                    .iter()
                    .position(|d| d == dir)
                    .ok_or_else(|| InputError::new(&here, format!("unknown direction `{dir}`")))?;
                if mask & (1 << t) == 0 {
                    return Err(InputError::new(&here, format!("direction `{dir}` is not in {label}")));
                }
                let m = doc.build(ring, &here)?;
                let want = (
                    vertices[(mask & !(1 << t)) as usize].generators(),
                    vertices[mask as usize].generators(),
                );
                if m.shape() != want {
                    return Err(InputError::new(
                        here,
                        format!("expected a {}x{} matrix, found {}x{}", want.0, want.1, m.rows(), m.cols()),
                    ));
                }
                boundaries.insert((mask, t), m);
            }
        }
        SCube::new(ring, self.directions.clone(), vertices, boundaries).map_err(|e| InputError::core("boundaries", e))
    }
}

fn label_of(mask: u32, directions: &[String]) -> String {
    let names: Vec<&str> = (0..directions.len())
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| directions[i].as_str())
        .collect();
    format!("{{{}}}", names.join(","))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedDoc {
    pub vars: usize,
    pub truncation: usize,
    pub base: Option<String>,
    pub p: Option<u64>,
    pub components: Vec<ModuleDoc>,
    /// `maps["t<i>"][d] : x_d → x_{d+1}`.
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<MatrixDoc>>,
}

impl GradedDoc {
    pub fn build(&self, flag: Option<Ring>) -> Result<GradedModule> {
        let declared = declared_ring(self.base.as_deref(), self.p, "base")?;
        let ring = resolve_base(declared, flag, "base")?;
        if self.components.len() != self.truncation + 1 {
            return Err(InputError::new(
                "components",
                format!("expected {} components, found {}", self.truncation + 1, self.components.len()),
            ));
        }
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(d, c)| c.build(ring, &format!("components[{d}]")))
            .collect::<Result<Vec<_>>>()?;
        for key in self.maps.keys() {
            let known = key
                .strip_prefix('t')
                .and_then(|i| i.parse::<usize>().ok())
                .is_some_and(|i| (1..=self.vars).contains(&i));
            if !known {
                return Err(InputError::new(format!("maps.{key}"), format!("expected t1..t{}", self.vars)));
            }
        }
        let mut maps = Vec::with_capacity(self.vars);
        for i in 1..=self.vars {
            let key = format!("t{i}");
            let path = format!("maps.{key}");
            let per_degree = match self.maps.get(&key) {
                Some(list) => {
                    if list.len() != self.truncation {
                        return Err(InputError::new(
                            path,
                            format!("expected {} matrices, found {}", self.truncation, list.len()),
                        ));
                    }
                    list.iter()
                        .enumerate()
                        .map(|(d, m)| {
                            let here = format!("{path}[{d}]");
                            let m = m.build(ring, &here)?;
                            let want = (components[d + 1].generators(), components[d].generators());
                            if m.shape() != want {
                                return Err(InputError::new(
                                    here,
                                    format!("expected a {}x{} matrix, found {}x{}", want.0, want.1, m.rows(), m.cols()),
                                ));
                            }
                            Ok(m)
                        })
                        .collect::<Result<Vec<_>>>()?
                }
                None => (0..self.truncation)
                    .map(|d| Matrix::zeros(ring, components[d + 1].generators(), components[d].generators()))
                    .collect(),
            };
            maps.push(per_degree);
        }
        GradedModule::new(ring, self.vars, components, maps).map_err(|e| InputError::core("maps", e))
    }
}

/// An affine object with an optional endomorphism family, subobject and filtration.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineDoc {
    pub base: Option<String>,
    pub p: Option<u64>,
    pub dim: usize,
    /// Relation columns; the carrier is `R^dim / relations`.
    pub relations: Option<MatrixDoc>,
    pub endos: Vec<MatrixDoc>,
    /// 1-based endomorphism indices; all of them when absent.
    pub family: Option<Vec<usize>>,
    /// Generator columns of a subobject.
    pub sub: Option<MatrixDoc>,
    /// Generator columns of `x_1, x_2, …`; `x_0` is the whole object.
    pub filtration: Option<Vec<MatrixDoc>>,
}

#[derive(Debug, Clone)]
pub struct AffineInput {
    pub object: AffineObject,
    pub family: Vec<usize>,
    pub sub: Option<Submodule>,
    pub filtration: Option<Vec<Submodule>>,
}

impl AffineDoc {
    pub fn build(&self, flag: Option<Ring>) -> Result<AffineInput> {
        let declared = declared_ring(self.base.as_deref(), self.p, "base")?;
        let ring = resolve_base(declared, flag, "base")?;
        let module = match &self.relations {
            None => PresentedModule::free(ring, self.dim),
            Some(doc) => {
                let m = doc.build(ring, "relations")?;
                if m.rows() != self.dim {
                    return Err(InputError::new("relations", format!("expected {} rows", self.dim)));
                }
                PresentedModule::from_relations(&m)
            }
        };
        let endos = self
            .endos
            .iter()
            .enumerate()
            .map(|(i, doc)| {
                let path = format!("endos[{i}]");
                let m = doc.build(ring, &path)?;
                if m.shape() != (self.dim, self.dim) {
                    return Err(InputError::new(path, format!("expected a {0}x{0} matrix", self.dim)));
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        let object = AffineObject::new(module, endos).map_err(|e| InputError::core("endos", e))?;
        let family = match &self.family {
            None => (0..self.endos.len()).collect(),
            Some(list) => list
                .iter()
                .enumerate()
                .map(|(k, &i)| {
                    if (1..=self.endos.len()).contains(&i) {
                        Ok(i - 1)
                    } else {
                        Err(InputError::new(format!("family[{k}]"), format!("no endomorphism {i}")))
                    }
                })
                .collect::<Result<Vec<_>>>()?,
        };
        let columns = |doc: &MatrixDoc, path: &str| -> Result<Submodule> {
            let m = doc.build(ring, path)?;
            if m.rows() != self.dim {
                return Err(InputError::new(path, format!("generators need {} rows", self.dim)));
            }
            object
                .subobject(&Submodule::new(&m))
                .map_err(|e| InputError::core(path, e))
        };
        let sub = self.sub.as_ref().map(|d| columns(d, "sub")).transpose()?;
        let filtration = self
            .filtration
            .as_ref()
            .map(|steps| {
                let mut out = vec![object.whole()];
                for (i, d) in steps.iter().enumerate() {
                    out.push(columns(d, &format!("filtration[{i}]"))?);
                }
                Ok(out)
            })
            .transpose()?;
        Ok(AffineInput {
            object,
            family,
            sub,
            filtration,
        })
    }
}

/// Matrix literal with decimal-string entries.
pub fn matrix_json(m: &Matrix) -> Value {
    let (ring, p) = match m.ring() {
        Ring::Integers => ("Z", None),
        Ring::Rationals => ("Q", None),
        Ring::PrimeField(p) => ("Fp", Some(p)),
    };
    let entries: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect();
    let mut v = json!({ "ring": ring, "rows": m.rows(), "cols": m.cols(), "entries": entries });
    if let Some(p) = p {
        v["p"] = json!(p);
    }
    v
}

pub fn module_json(m: &ModulePresentation) -> Value {
    json!({
        "group": m.to_string(),
        "free_rank": m.free_rank,
        "torsion": m.invariant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_names() {
        assert_eq!(parse_ring("Z", None), Ok(Ring::Integers));
        assert_eq!(parse_ring("Fp:7", None), Ok(Ring::PrimeField(7)));
        assert_eq!(parse_ring("Fp", Some(5)), Ok(Ring::PrimeField(5)));
        assert!(parse_ring("Fp:8", None).is_err());
        assert!(parse_ring("R", None).is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let doc: MatrixDoc = parse(r#"{"ring":"Q","rows":1,"cols":2,"entries":[["1/2","-3"]]}"#).unwrap();
        let m = doc.build(Ring::Rationals, "m").unwrap();
        let back: MatrixDoc = parse(&matrix_json(&m).to_string()).unwrap();
        assert_eq!(back.build(Ring::Rationals, "m").unwrap(), m);
    }

    #[test]
    fn schema_errors_carry_paths() {
        let err = parse::<GradedDoc>(r#"{"vars":1,"truncation":1,"components":[1,"x"]}"#).unwrap_err();
        assert!(err.path.starts_with("components"), "{err}");
        let doc: MatrixDoc = parse(r#"{"rows":1,"cols":1,"entries":[["1/2"]]}"#).unwrap();
        let err = doc.build(Ring::Integers, "m").unwrap_err();
        assert_eq!(err.path, "m.entries[0][0]");
    }

    #[test]
    fn fp_entries_are_reduced() {
        let doc: MatrixDoc = parse(r#"{"ring":"Fp","p":5,"rows":1,"cols":2,"entries":[["7","-1"]]}"#).unwrap();
        let m = doc.build(Ring::PrimeField(5), "m").unwrap();
        assert_eq!(m, Matrix::from_i64(Ring::PrimeField(5), &[&[2, 4]]));
    }

    #[test]
    fn cube_with_missing_vertex_is_rejected() {
        let doc: CubeDoc = parse(r#"{"directions":["1"],"vertices":{"{}":1}}"#).unwrap();
        let err = doc.build(None).unwrap_err();
        assert!(err.message.contains("missing vertex {1}"), "{err}");
    }

    #[test]
    fn graded_literal_builds() {
        let doc: GradedDoc = parse(
            r#"{"vars":1,"truncation":2,"base":"Q","components":[1,1,0],
                "maps":{"t1":[{"rows":1,"cols":1,"entries":[["1"]]},{"rows":0,"cols":1,"entries":[]}]}}"#,
        )
        .unwrap();
        let x = doc.build(None).unwrap();
        assert_eq!(x.ranks(), vec![1, 1, 0]);
    }
}
