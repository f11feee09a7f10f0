use serde::{Deserialize, Serialize};

/// An open set in whichever topology the system at hand carries.
///
/// Finite systems are discrete, so any non-empty point set is open.  For
/// one-sided shift spaces a cylinder fixes the coordinates `0..len` to an
/// admissible word; `Word` holds vertex labels, `Bits` holds 0/1 symbols
/// of a spacing shift.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cylinder {
    Points(Vec<usize>),
    Word(Vec<usize>),
    Bits(Vec<u8>),
}

impl Cylinder {
    pub fn points(mut pts: Vec<usize>) -> Cylinder {
        pts.sort_unstable();
        pts.dedup();
        Cylinder::Points(pts)
    }

    pub fn word(w: Vec<usize>) -> Cylinder {
        Cylinder::Word(w)
    }

    pub fn bits(b: Vec<u8>) -> Cylinder {
        Cylinder::Bits(b)
    }

    pub fn len(&self) -> usize {
        match self {
            Cylinder::Points(p) => p.len(),
            Cylinder::Word(w) => w.len(),
            Cylinder::Bits(b) => b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Compact human-readable form used in reports and witnesses.
    pub fn display(&self) -> String {
        match self {
            Cylinder::Points(p) => {
                let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", parts.join(" "))
            }
            Cylinder::Word(w) => {
                let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                format!("[{}]", parts.join("."))
            }
            Cylinder::Bits(b) => {
                let s: String = b.iter().map(|&x| if x == 0 { '0' } else { '1' }).collect();
                format!("[{s}]")
            }
        }
    }
}
