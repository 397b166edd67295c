//! Exact evaluation of graded substructure conditions for intuitionistic
//! fuzzy semiautomata whose state set is a finite group.
//!
//! Truth values are rationals in `[0,1]`; every degree is computed exactly
//! with the Łukasiewicz implication.

pub mod group;
pub mod harness;
pub mod ifs;
pub mod machine;
pub mod report;
pub mod substructures;
pub mod truthval;

pub use group::{Family, FiniteGroup, GroupDoc, GroupError, GroupHomomorphism, GroupSpec, HomomorphismDoc};
pub use harness::{InstanceGrid, Sampler, SearchConfig, SearchReport, TheoremId};
pub use ifs::{CarrierKind, IFSubset, IfsDoc, IfsError};
pub use machine::{Composition, Machine, MachineDoc, MachineError, Matrix, StructureMode, TransitionMatrixPair, Word};
pub use report::{Binding, BoundValue, DegreeReport, Witness};
pub use substructures::{Evaluator, Relation, RelationVerdict, SubstructureError};
pub use truthval::{Implication, TruthError, TruthValue};
