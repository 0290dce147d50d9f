//! Input loading with provenance: every file read is hashed into the report.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};
use wallkit::io::{parse_json, IsometryFile, LatticeFile, VectorFile};
use wallkit::io::from_json_matrix;
use wallkit::lattice::standard::standard_lattice;
use wallkit::monodromy::{Og10Fixture, OG10_EMBEDDING, OG10_LATTICE};
use wallkit::{Isometry, Lattice, LatticeVector, StandardLattice};

#[derive(Clone, Debug, Serialize)]
pub struct InputRecord {
    pub name: String,
    pub source: String,
    pub sha256: String,
}

#[derive(Default)]
pub struct Inputs {
    pub records: Vec<InputRecord>,
    og10: Option<Og10Fixture>,
}

fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Inputs {
    pub fn read(&mut self, name: &str, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        self.record(name, &path.display().to_string(), &text);
        Ok(text)
    }

    fn record(&mut self, name: &str, source: &str, text: &str) {
        self.records.push(InputRecord { name: name.into(), source: source.into(), sha256: sha256(text.as_bytes()) });
    }

    /// A lattice file path, a standard label, or `og10`.
    pub fn lattice(&mut self, name: &str, source: &str) -> Result<Lattice> {
        let path = Path::new(source);
        if path.is_file() {
            let text = self.read(name, path)?;
            let f: LatticeFile = parse_json(&text)?;
            return Ok(f.to_lattice()?);
        }
        self.label(source)
    }

    pub fn label(&mut self, label: &str) -> Result<Lattice> {
        if label == "og10" {
            return Ok(self.og10_default()?.lattice.clone());
        }
        let which: StandardLattice = label.parse().with_context(|| format!("resolving lattice label {label:?}"))?;
        Ok(standard_lattice(which)?)
    }

    pub fn vector(&mut self, name: &str, path: &Path, lattice: Option<&Lattice>) -> Result<LatticeVector> {
        let text = self.read(name, path)?;
        let f: VectorFile = parse_json(&text)?;
        let l = match lattice {
            Some(l) => l.clone(),
            None => self.label(&f.lattice)?,
        };
        Ok(f.to_vector(&l)?)
    }

    pub fn isometry(&mut self, name: &str, path: &Path, lattice: &Lattice) -> Result<Isometry> {
        let text = self.read(name, path)?;
        let f: IsometryFile = parse_json(&text)?;
        Ok(Isometry::new(lattice, from_json_matrix(&f.matrix)?)?)
    }

    /// Shipped fixture, or the files in `$WALLKIT_FIXTURES` when set.
    pub fn og10_default(&mut self) -> Result<&Og10Fixture> {
        if self.og10.is_none() {
            let fx = match std::env::var_os("WALLKIT_FIXTURES") {
                Some(dir) => {
                    let dir = PathBuf::from(dir);
                    self.og10_from(&dir.join("og10_lattice.json"), &dir.join("og10_embedding.json"))?
                }
                None => {
                    self.record("fixture", "builtin:og10_lattice.json", OG10_LATTICE);
                    self.record("embedding", "builtin:og10_embedding.json", OG10_EMBEDDING);
                    Og10Fixture::load(OG10_LATTICE, OG10_EMBEDDING)?
                }
            };
            self.og10 = Some(fx);
        }
        Ok(self.og10.as_ref().expect("just set"))
    }

    pub fn og10_from(&mut self, lattice: &Path, embedding: &Path) -> Result<Og10Fixture> {
        let l = self.read("fixture", lattice)?;
        let e = self.read("embedding", embedding)?;
        Ok(Og10Fixture::load(&l, &e)?)
    }

    pub fn set_og10(&mut self, fx: Og10Fixture) {
        self.og10 = Some(fx);
    }
}

pub fn require_same(a: &Lattice, b: &Lattice, what: &str) -> Result<()> {
    if !a.same_as(b) {
        bail!("{what} does not live in the expected lattice");
    }
    Ok(())
}
