//! The JSON lattice file format.
//!
//! ```json
//! {
//!   "rank": 3,
//!   "gram": [[0, 1, 0], [1, 0, 0], [0, 0, -2]],
//!   "vectors": { "ell": [1, 0, 0], "kappa": [1, 1, 0] },
//!   "walls": [[0, 0, 1]],
//!   "mbm": [[0, 0, 1]]
//! }
//! ```
//!
//! Only `rank` and `gram` are required. Unknown keys are ignored.

use std::collections::BTreeMap;

use hyperlattice_core::{Lattice, LatticeVector, Matrix};
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::json;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFile {
    pub lattice: Lattice,
    pub vectors: BTreeMap<String, LatticeVector>,
    pub walls: Vec<LatticeVector>,
    pub mbm: Vec<LatticeVector>,
}

impl LatticeFile {
    pub fn new(lattice: Lattice) -> Self {
        LatticeFile { lattice, vectors: BTreeMap::new(), walls: Vec::new(), mbm: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// A vector given as a JSON array literal or as the name of a stored vector.
    pub fn vector(&self, spec: &str) -> CliResult<LatticeVector> {
        let spec = spec.trim();
        if spec.starts_with('[') {
            let value = literal(spec)?;
            return json::parse_vector(&value, self.rank(), "argument").map_err(usage);
        }
        self.vectors
            .get(spec)
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("no vector named '{spec}' in the lattice file")))
    }

    /// A list given as a JSON array of arrays, `walls`, `mbm`, or
    /// comma-separated vector names; the empty string is the empty list.
    pub fn vector_list(&self, spec: &str) -> CliResult<Vec<LatticeVector>> {
        let spec = spec.trim();
        match spec {
            "" => Ok(Vec::new()),
            "walls" => Ok(self.walls.clone()),
            "mbm" => Ok(self.mbm.clone()),
            _ if spec.starts_with('[') => {
                let value = literal(spec)?;
                json::parse_vectors(&value, self.rank(), "argument").map_err(usage)
            }
            _ => spec.split(',').map(|name| self.vector(name)).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let vectors = self.vectors.iter().map(|(k, v)| (k.clone(), json::vector(v))).collect();
        let mut entries = vec![
            ("rank", json::uint(self.rank())),
            ("gram", json::matrix(self.lattice.gram())),
            ("vectors", Value::Object(vectors)),
        ];
        if !self.walls.is_empty() {
            entries.push(("walls", json::vectors(&self.walls)));
        }
        if !self.mbm.is_empty() {
            entries.push(("mbm", json::vectors(&self.mbm)));
        }
        json::object(entries)
    }
}

fn literal(spec: &str) -> CliResult<Value> {
    serde_json::from_str(spec).map_err(|e| CliError::Usage(format!("cannot parse '{spec}' as JSON: {e}")))
}

fn usage(e: CliError) -> CliError {
    match e {
        CliError::Format(m) => CliError::Usage(m),
        other => other,
    }
}

pub fn parse_lattice_file(text: &str) -> CliResult<LatticeFile> {
    let value: Value = serde_json::from_str(text).map_err(CliError::from_json)?;
    from_value(&value)
}

pub fn from_value(value: &Value) -> CliResult<LatticeFile> {
    let Value::Object(map) = value else {
        return Err(CliError::Format("top level must be an object".into()));
    };
    let rank_value = map.get("rank").ok_or_else(|| CliError::Format("missing \"rank\"".into()))?;
    let rank = json::parse_int(rank_value, "rank")?;
    let rank: usize = (&rank).try_into().map_err(|_| CliError::Format(format!("rank: {rank} is not a valid rank")))?;
    let gram_value = map.get("gram").ok_or_else(|| CliError::Format("missing \"gram\"".into()))?;
    let Value::Array(rows) = gram_value else {
        return Err(CliError::Format("gram: expected an array of rows".into()));
    };
    if rows.len() != rank {
        return Err(CliError::Format(format!("gram: rank is {rank} but there are {} rows", rows.len())));
    }
    let mut parsed = Vec::with_capacity(rank);
    for (i, row) in rows.iter().enumerate() {
        let row = json::parse_ints(row, &format!("gram[{i}]"))?;
        if row.len() != rank {
            return Err(CliError::Format(format!("gram[{i}]: expected {rank} entries, found {}", row.len())));
        }
        parsed.push(row);
    }
    let gram = Matrix::from_rows(parsed, rank).ok_or_else(|| CliError::Format("gram: ragged rows".into()))?;
    let lattice = Lattice::new(gram)?;
    let mut file = LatticeFile::new(lattice);
    if let Some(vectors) = map.get("vectors") {
        let Value::Object(named) = vectors else {
            return Err(CliError::Format("vectors: expected an object of named vectors".into()));
        };
        for (name, v) in named {
            let vector = json::parse_vector(v, rank, &format!("vectors.{name}"))?;
            file.vectors.insert(name.clone(), vector);
        }
    }
    if let Some(walls) = map.get("walls") {
        file.walls = json::parse_vectors(walls, rank, "walls")?;
    }
    if let Some(mbm) = map.get("mbm") {
        file.mbm = json::parse_vectors(mbm, rank, "mbm")?;
    }
    Ok(file)
}

pub fn read_lattice_file(path: &std::path::Path) -> CliResult<LatticeFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    parse_lattice_file(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperlattice_core::Error;

    #[test]
    fn hyperbolic_plane() {
        let f = parse_lattice_file(r#"{"rank":2,"gram":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(f.lattice, Lattice::hyperbolic_plane());
    }

    #[test]
    fn asymmetric_gram() {
        let e = parse_lattice_file(r#"{"rank":2,"gram":[[0,1],[2,0]]}"#).unwrap_err();
        assert!(matches!(e, CliError::Lattice(Error::Asymmetric { .. })));
    }

    #[test]
    fn worked_fixture() {
        let text = r#"{"rank":3,"gram":[[0,1,0],[1,0,0],[0,0,-2]],"vectors":{"ell":[1,0,0],"kappa":[1,1,0]}}"#;
        let f = parse_lattice_file(text).unwrap();
        assert_eq!(f.vector("ell").unwrap(), LatticeVector::from([1, 0, 0]));
        assert_eq!(f.vector("[0, 0, 1]").unwrap(), LatticeVector::from([0, 0, 1]));
        assert_eq!(f.vector_list("ell,kappa").unwrap().len(), 2);
        assert_eq!(parse_lattice_file(&f.to_json().to_string()).unwrap(), f);
    }

    #[test]
    fn diagnostics() {
        let e = parse_lattice_file("{\"rank\": 2,\n \"gram\": [[0,1],[1,0]\n").unwrap_err();
        assert!(matches!(e, CliError::Json { line: 3, .. }), "{e:?}");
        let e = parse_lattice_file(r#"{"rank":2,"gram":[[0,1],[1,0,0]]}"#).unwrap_err();
        assert!(e.to_string().contains("gram[1]"));
        let e = parse_lattice_file(r#"{"rank":2,"gram":[[0,1],[1,0]],"vectors":{"x":[1]}}"#).unwrap_err();
        assert!(e.to_string().contains("vectors.x"));
        let e = parse_lattice_file(r#"{"rank":1,"gram":[[1.5]]}"#).unwrap_err();
        assert!(matches!(e, CliError::Format(_)));
    }

    #[test]
    fn big_integers_survive() {
        let text = r#"{"rank":1,"gram":[[-123456789012345678901234567890]]}"#;
        let f = parse_lattice_file(text).unwrap();
        assert!(f.to_json().to_string().contains("-123456789012345678901234567890"));
    }
}
