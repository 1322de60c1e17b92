//! Finite-model semantics for the conservativity logic CL and its
//! extensions: derived-set bitopological semantics, Visser frames, the
//! frame/space correspondence, finite bouquets, and bounded countermodel
//! search.
//!
//! ```
//! use clspace_core::{parse, search, FrameClass};
//!
//! let j5 = parse("<>p0 |> p0").unwrap();
//! let r = search::find_countermodel(&j5, FrameClass::Cl, 3).unwrap();
//! assert!(r.witness.is_some());
//! ```

pub mod bitopology;
pub mod bouquet;
pub mod correspondence;
pub mod error;
pub mod formula;
pub mod frames;
pub mod gen;
pub mod model_file;
pub mod relation;
pub mod search;
pub mod subset;
pub mod topology;
pub mod valuation;

pub use bitopology::{BitopSpace, IlClauses};
pub use bouquet::{BouquetPoint, BouquetSpace, BouquetSpec};
pub use correspondence::{frame_to_space, space_to_frame};
pub use error::{Error, Result};
pub use formula::{delta_family, parse, Formula, Schema};
pub use frames::{FramePropertyReport, Logic, VisserFrame, VisserModel};
pub use model_file::{Loaded, ModelFile};
pub use relation::Relation;
pub use search::{FrameClass, SearchOptions, SearchResult, Verdict, Witness};
pub use subset::Subset;
pub use topology::FiniteSpace;
pub use valuation::Valuation;
