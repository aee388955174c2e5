//! Representations given by generator matrices.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Matrix, Ring, Scalar};
use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// A word in the generators. Serialized as signed 1-based indices:
/// `[1, 1, -2]` is `g1·g1·g2⁻¹`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<i64>", try_from = "Vec<i64>")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Word(vec![Letter { generator: i, inverse: false }])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| Letter { generator: l.generator, inverse: !l.inverse }).collect())
    }

    /// Uniform word of the given length over `ngens` generators and inverses.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, ngens: usize, len: usize, allow_inverses: bool) -> Word {
        Word(
            (0..len)
                .map(|_| Letter { generator: rng.gen_range(0..ngens), inverse: allow_inverses && rng.gen_bool(0.5) })
                .collect(),
        )
    }

    fn max_index(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }
}

impl From<Word> for Vec<i64> {
    fn from(w: Word) -> Self {
        w.0.iter().map(|l| if l.inverse { -(l.generator as i64 + 1) } else { l.generator as i64 + 1 }).collect()
    }
}

impl TryFrom<Vec<i64>> for Word {
    type Error = String;

    fn try_from(v: Vec<i64>) -> std::result::Result<Self, String> {
        v.into_iter()
            .map(|x| match x {
                0 => Err("generator indices are 1-based; 0 is not a letter".to_string()),
                x => Ok(Letter { generator: x.unsigned_abs() as usize - 1, inverse: x < 0 }),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| if l.inverse { format!("g{}^-1", l.generator + 1) } else { format!("g{}", l.generator + 1) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Generators of a group action on R^d.
///
/// Inverses are cached. They live in the base ring when they can, and in
/// its fraction field otherwise.
#[derive(Clone, Debug)]
pub struct Representation {
    ring: Ring,
    dim: usize,
    generators: Vec<Matrix>,
    inverses: Vec<Matrix>,
    relations: Vec<Word>,
    label: String,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators == other.generators && self.relations == other.relations
    }
}

impl Representation {
    pub fn new(ring: &Ring, generators: Vec<Matrix>, relations: Vec<Word>, label: impl Into<String>) -> Result<Self> {
        let first = generators.first().ok_or_else(|| Error::InvalidRepresentation("no generators".into()))?;
        let dim = first.rows();
        if dim == 0 {
            return Err(Error::InvalidRepresentation("dimension must be at least 1".into()));
        }
        let mut inverses = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.ring() != ring {
                return Err(Error::InvalidRepresentation(format!("generator {} is over {}, expected {ring}", i + 1, g.ring())));
            }
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::Shape(format!("generator {} is {}x{}, expected {dim}x{dim}", i + 1, g.rows(), g.cols())));
            }
            let inv = g.inverse().map_err(|_| Error::InvalidRepresentation(format!("generator {} is singular", i + 1)))?;
            inverses.push(inv.retract(ring).unwrap_or(inv));
        }
        let rep = Representation { ring: ring.clone(), dim, generators, inverses, relations: Vec::new(), label: label.into() };
        for (index, w) in relations.iter().enumerate() {
            if w.max_index().is_some_and(|m| m >= rep.generators.len()) {
                return Err(Error::InvalidRepresentation(format!("relation {} uses an unknown generator", index + 1)));
            }
            if !rep.evaluate(w).is_identity() {
                return Err(Error::RelationViolated { index: index + 1 });
            }
        }
        Ok(Representation { relations, ..rep })
    }

    /// Shorthand without relations or label.
    pub fn from_generators(ring: &Ring, generators: Vec<Matrix>) -> Result<Self> {
        Self::new(ring, generators, Vec::new(), "")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn inverses(&self) -> &[Matrix] {
        &self.inverses
    }

    pub fn relations(&self) -> &[Word] {
        &self.relations
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Whether every cached inverse has entries in the base ring.
    pub fn inverses_integral(&self) -> bool {
        self.inverses.iter().all(|m| m.ring() == &self.ring)
    }

    /// Product of generators and inverses in word order; identity for the
    /// empty word. Lands in the fraction field when an inverse leaves the ring.
    pub fn evaluate(&self, w: &Word) -> Matrix {
        let needs_k = w.letters().iter().any(|l| l.inverse && self.inverses[l.generator].ring() != &self.ring);
        let target = if needs_k { self.ring.fraction_field() } else { self.ring.clone() };
        let mut acc = Matrix::identity(&target, self.dim);
        for l in w.letters() {
            let m = if l.inverse { &self.inverses[l.generator] } else { &self.generators[l.generator] };
            let m = if m.ring() == &target { m.clone() } else { m.change_ring(&target).expect("fraction field embedding") };
            acc = acc.mul(&m);
        }
        acc
    }

    /// Generators and their inverses, all over the fraction field.
    pub fn generators_and_inverses_over_k(&self) -> Vec<Matrix> {
        self.generators.iter().chain(&self.inverses).map(Matrix::over_fraction_field).collect()
    }

    pub fn over_fraction_field(&self) -> Representation {
        let k = self.ring.fraction_field();
        if k == self.ring {
            return self.clone();
        }
        self.map_generators(&k, |g| Ok(g.over_fraction_field())).expect("embedding preserves invertibility")
    }

    /// Apply `f` to every generator, keeping relations and label.
    pub fn map_generators(&self, ring: &Ring, f: impl Fn(&Matrix) -> Result<Matrix>) -> Result<Representation> {
        let gens = self.generators.iter().map(f).collect::<Result<Vec<_>>>()?;
        let mut rep = Representation::new(ring, gens, Vec::new(), self.label.clone())?;
        rep.relations = self.relations.clone();
        Ok(rep)
    }

    /// The same generators viewed in a subring, when every entry lies there.
    pub fn retract(&self, ring: &Ring) -> Option<Representation> {
        self.map_generators(ring, |g| g.retract(ring).ok_or(Error::Integrality(String::new()))).ok()
    }

    /// `g ↦ c·g·c⁻¹`, over the fraction field.
    pub fn conjugate(&self, c: &Matrix) -> Result<Representation> {
        let k = self.ring.fraction_field();
        let c = c.change_ring(&k)?;
        let c_inv = c.inverse()?;
        self.map_generators(&k, |g| Ok(c.mul(&g.over_fraction_field()).mul(&c_inv)))
    }

    /// Action on d×d matrices by `X ↦ g·X·g⁻¹`, with X flattened row-major.
    pub fn adjoint(&self) -> Result<Representation> {
        if !self.ring.is_field() {
            return Err(Error::NotAField(self.ring.to_string()));
        }
        let d = self.dim;
        let r = &self.ring;
        let gens = self
            .generators
            .iter()
            .zip(&self.inverses)
            .map(|(g, gi)| Matrix::from_fn(r, d * d, d * d, |row, col| r.mul(g.get(row / d, col / d), gi.get(col % d, row % d))))
            .collect();
        let mut rep = Representation::new(r, gens, Vec::new(), format!("ad({})", self.label))?;
        rep.relations = self.relations.clone();
        Ok(rep)
    }

    /// Block diagonal action on the sum of the two spaces.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.ring != other.ring || self.generators.len() != other.generators.len() {
            return Err(Error::InvalidRepresentation("direct sum needs matching rings and generator counts".into()));
        }
        let gens = self.generators.iter().zip(&other.generators).map(|(a, b)| a.direct_sum(b)).collect();
        Representation::new(&self.ring, gens, Vec::new(), format!("{} + {}", self.label, other.label))
    }

    /// Generator transposes: the dual action up to inversion.
    pub fn transposed_generators(&self) -> Vec<Matrix> {
        self.generators.iter().map(Matrix::transpose).collect()
    }

    pub fn to_file(&self) -> RepFile {
        RepFile {
            ring: self.ring.to_string(),
            dim: self.dim,
            generators: self.generators.iter().map(|g| GeneratorEntries::Rows(g.to_strings())).collect(),
            relations: self.relations.clone(),
            label: self.label.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Representation> {
        serde_json::from_str::<RepFile>(text)?.build()
    }

    /// Canonical JSON text; equal representations give equal text.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("serializable")
    }
}

/// Generator entries in a representation file: nested rows or one flat
/// row-major list.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum GeneratorEntries {
    Rows(Vec<Vec<String>>),
    Flat(Vec<String>),
}

/// On-disk form of a [`Representation`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RepFile {
    pub ring: String,
    pub dim: usize,
    pub generators: Vec<GeneratorEntries>,
    #[serde(default)]
    pub relations: Vec<Word>,
    #[serde(default)]
    pub label: String,
}

impl RepFile {
    pub fn build(&self) -> Result<Representation> {
        let ring = Ring::parse_descriptor(&self.ring)?;
        let d = self.dim;
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let rows: Vec<Vec<String>> = match g {
                    GeneratorEntries::Rows(r) => r.clone(),
                    GeneratorEntries::Flat(v) => {
                        if v.len() != d * d {
                            return Err(Error::Shape(format!("flat generator with {} entries, expected {}", v.len(), d * d)));
                        }
                        v.chunks(d.max(1)).map(<[String]>::to_vec).collect()
                    }
                };
                let m = Matrix::parse_rows(&ring, &rows)?;
                if m.rows() != d || m.cols() != d {
                    return Err(Error::Shape(format!("generator is {}x{}, expected {d}x{d}", m.rows(), m.cols())));
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Representation::new(&ring, gens, self.relations.clone(), self.label.clone())
    }
}

/// Entries of a vector as strings.
pub fn vector_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Parse a list of vectors over `ring`.
pub fn parse_vectors(ring: &Ring, rows: &[Vec<String>]) -> Result<Vec<Vec<Scalar>>> {
    rows.iter().map(|r| r.iter().map(|s| ring.parse(s)).collect()).collect()
}
