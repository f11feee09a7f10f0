use crate::cylinder::Cylinder;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

/// Three-valued answer used by every decision procedure in the crate.
///
/// `Holds` and `Fails` from an exact lane are unconditional.  From a
/// bounded lane they are claims at the bounds the operation was given;
/// the operation's report carries those bounds.  `Unknown` means the
/// search space within bounds was not exhausted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails { witness: Witness },
    Unknown { bounds: String },
}

impl Verdict {
    pub fn fails(witness: Witness) -> Verdict {
        Verdict::Fails { witness }
    }

    pub fn unknown(bounds: impl Into<String>) -> Verdict {
        Verdict::Unknown { bounds: bounds.into() }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    /// "holds" / "fails" / "unknown", ignoring any payload.
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails { .. } => "fails",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    /// Same outcome, payloads aside.  `Unknown` only matches `Unknown`.
    pub fn same_tag(&self, other: &Verdict) -> bool {
        self.tag() == other.tag()
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails { witness } => Some(witness),
            _ => None,
        }
    }
}

/// The instantiation that refutes a failed claim.  Every variant holds
/// enough data to re-run the refuted check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Shift vector of a family-membership counterexample.
    NVector(Vec<u64>),
    /// As `NVector`, for conjunctions indexed by a truncation depth.
    NVectorAtDepth { depth: u64, n: Vec<u64> },
    /// Residue tuple not realized by any dilation `(a_1 k, ..., a_r k)`.
    ResidueVector { residues: Vec<u64>, modulus: u64 },
    /// Pair of opens with empty hitting-time set.
    CylinderPair { u: Cylinder, v: Cylinder },
    /// Tuple of opens refuting product transitivity.
    CylinderTuple { us: Vec<Cylinder>, vs: Vec<Cylinder> },
    /// Single open (e.g. one whose points admit no separation).
    Cylinder(Cylinder),
    /// Free-form description for harness-level refutations.
    Note(String),
}

impl Witness {
    pub fn display(&self) -> String {
        match self {
            Witness::NVector(n) => format!("n={n:?}"),
            Witness::NVectorAtDepth { depth, n } => format!("depth={depth} n={n:?}"),
            Witness::ResidueVector { residues, modulus } => {
                format!("residues={residues:?} mod {modulus}")
            }
            Witness::CylinderPair { u, v } => format!("u={} v={}", u.display(), v.display()),
            Witness::CylinderTuple { us, vs } => {
                let u: Vec<String> = us.iter().map(|c| c.display()).collect();
                let v: Vec<String> = vs.iter().map(|c| c.display()).collect();
                format!("us=({}) vs=({})", u.join(","), v.join(","))
            }
            Witness::Cylinder(c) => c.display(),
            Witness::Note(s) => s.clone(),
        }
    }
}

// An `NVector` witness serializes as a bare array so that family queries
// print `{"verdict":"fails","witness":[0,0]}`.  Other shapes carry a tag.
impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Witness::NVector(n) => n.serialize(serializer),
            Witness::NVectorAtDepth { depth, n } => {
                let mut m = serializer.serialize_map(Some(2))?;
                m.serialize_entry("depth", depth)?;
                m.serialize_entry("n", n)?;
                m.end()
            }
            Witness::ResidueVector { residues, modulus } => {
                let mut m = serializer.serialize_map(Some(3))?;
                m.serialize_entry("kind", "residue_vector")?;
                m.serialize_entry("residues", residues)?;
                m.serialize_entry("modulus", modulus)?;
                m.end()
            }
            Witness::CylinderPair { u, v } => {
                let mut m = serializer.serialize_map(Some(3))?;
                m.serialize_entry("kind", "cylinder_pair")?;
                m.serialize_entry("u", u)?;
                m.serialize_entry("v", v)?;
                m.end()
            }
            Witness::CylinderTuple { us, vs } => {
                let mut m = serializer.serialize_map(Some(3))?;
                m.serialize_entry("kind", "cylinder_tuple")?;
                m.serialize_entry("us", us)?;
                m.serialize_entry("vs", vs)?;
                m.end()
            }
            Witness::Cylinder(c) => {
                let mut m = serializer.serialize_map(Some(2))?;
                m.serialize_entry("kind", "cylinder")?;
                m.serialize_entry("u", c)?;
                m.end()
            }
            Witness::Note(s) => {
                let mut m = serializer.serialize_map(Some(2))?;
                m.serialize_entry("kind", "note")?;
                m.serialize_entry("text", s)?;
                m.end()
            }
        }
    }
}
