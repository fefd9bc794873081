//! A uniform face over the three live encodings, used by replay drivers:
//! op parsing, capability gating, and canonical dumps.

use crate::error::{Error, Result};
use crate::joint::JointState;
use crate::pivots::{format_dump, PivotSet};
use crate::psam::PsamState;
use crate::sequences::{Alphabet, Sequence};
use crate::ssam::SsamState;
use crate::counters::OpCounters;

/// Which encoding a session drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Ssam,
    Psam,
    Joint,
}

impl StateKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "SSAM" => Ok(StateKind::Ssam),
            "PSAM" => Ok(StateKind::Psam),
            "JOINT" => Ok(StateKind::Joint),
            other => Err(Error::Parse(format!("unknown state kind {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StateKind::Ssam => "SSAM",
            StateKind::Psam => "PSAM",
            StateKind::Joint => "JOINT",
        }
    }
}

/// One replayable mutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    PrependA,
    AppendA,
    AppendB,
}

impl OpKind {
    pub fn code(self) -> &'static str {
        match self {
            OpKind::PrependA => "PA",
            OpKind::AppendA => "AA",
            OpKind::AppendB => "AB",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "PA" => Ok(OpKind::PrependA),
            "AA" => Ok(OpKind::AppendA),
            "AB" => Ok(OpKind::AppendB),
            other => Err(Error::Parse(format!("unknown op {other:?}"))),
        }
    }

    /// Ops a state kind supports.
    pub fn legal_for(kind: StateKind) -> &'static [OpKind] {
        match kind {
            StateKind::Ssam => &[OpKind::PrependA, OpKind::AppendA],
            StateKind::Psam => &[OpKind::PrependA, OpKind::AppendB],
            StateKind::Joint => &[OpKind::AppendA, OpKind::AppendB],
        }
    }
}

/// An op with its symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Op {
    pub kind: OpKind,
    pub sym: u8,
}

/// A live encoding of any kind.
pub enum DynState {
    Ssam(SsamState),
    Psam(PsamState),
    Joint(JointState),
}

impl DynState {
    pub fn build(kind: StateKind, a: &[u8], b: &[u8], alphabet: Alphabet) -> Result<Self> {
        Ok(match kind {
            StateKind::Ssam => DynState::Ssam(SsamState::new(a, b, alphabet)?),
            StateKind::Psam => DynState::Psam(PsamState::new(a, b, alphabet)?),
            StateKind::Joint => DynState::Joint(JointState::new(a, b, alphabet)?),
        })
    }

    pub fn kind(&self) -> StateKind {
        match self {
            DynState::Ssam(_) => StateKind::Ssam,
            DynState::Psam(_) => StateKind::Psam,
            DynState::Joint(_) => StateKind::Joint,
        }
    }

    /// Apply one op, rejecting combinations the encoding cannot support.
    pub fn apply(&mut self, op: Op) -> Result<()> {
        match (self, op.kind) {
            (DynState::Ssam(st), OpKind::PrependA) => st.prepend_a(op.sym),
            (DynState::Ssam(st), OpKind::AppendA) => st.append_a(op.sym),
            (DynState::Ssam(_), OpKind::AppendB) => Err(Error::Capability(
                "the substring/string encoding keeps B fixed: growing B adds a density \
                 column the stored pivots cannot determine"
                    .into(),
            )),
            (DynState::Psam(st), OpKind::PrependA) => st.prepend_a(op.sym),
            (DynState::Psam(st), OpKind::AppendB) => st.append_b(op.sym),
            (DynState::Psam(_), OpKind::AppendA) => Err(Error::Capability(
                "the suffix/prefix encoding supports prepend-to-A and append-to-B only".into(),
            )),
            (DynState::Joint(st), OpKind::AppendA) => st.append_a(op.sym),
            (DynState::Joint(st), OpKind::AppendB) => st.append_b(op.sym),
            (DynState::Joint(_), OpKind::PrependA) => Err(Error::Capability(
                "the joint encoding supports appends only".into(),
            )),
        }
    }

    /// Pivot sets in a fixed order (substring/string first for JOINT).
    pub fn pivot_sets(&self) -> Vec<&PivotSet> {
        match self {
            DynState::Ssam(st) => vec![st.pivots()],
            DynState::Psam(st) => vec![st.pivots()],
            DynState::Joint(st) => vec![st.k_pivots(), st.psi_pivots()],
        }
    }

    /// Canonical dump, one section per matrix.
    pub fn dump(&self) -> String {
        self.pivot_sets().iter().map(|p| format_dump(p)).collect()
    }

    pub fn a_bytes(&self) -> Vec<u8> {
        match self {
            DynState::Ssam(st) => st.a_bytes(),
            DynState::Psam(st) => st.a_bytes(),
            DynState::Joint(st) => st.a_bytes(),
        }
    }

    pub fn b_sequence(&self) -> &Sequence {
        match self {
            DynState::Ssam(st) => st.b(),
            DynState::Psam(st) => st.b(),
            DynState::Joint(st) => st.b(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            DynState::Ssam(st) => st.alphabet(),
            DynState::Psam(st) => st.alphabet(),
            DynState::Joint(st) => st.alphabet(),
        }
    }

    pub fn last_op(&self) -> OpCounters {
        match self {
            DynState::Ssam(st) => st.last_op(),
            DynState::Psam(st) => st.last_op(),
            DynState::Joint(st) => st.last_op(),
        }
    }
}
