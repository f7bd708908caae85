//! Seed selection and independent-cascade diffusion on multilayer social
//! networks.
//!
//! The core is generic over the floating-point type (`f32` or `f64`) used
//! for probabilities, coverage and statistics; the aliases below fix it to
//! `f64`.

pub mod analysis;
pub mod cascade;
mod error;
pub mod experiment;
pub mod graph;
pub mod ingest;
pub mod num;
pub mod seeding;
pub mod synth;

pub use error::{Error, Result};
pub use graph::{ActorId, ActorTable, Layer, MultilayerNetwork};
pub use ingest::{Action, InteractionRecord};
pub use seeding::{Method, SeedSet};

pub type Scalar = f64;
pub type SeedRanking = seeding::SeedRanking<Scalar>;
pub type SimConfig = cascade::SimConfig<Scalar>;
pub type CascadeTrace = cascade::CascadeTrace<Scalar>;
pub type AucResult = analysis::AucResult<Scalar>;
pub type FriedmanResult = analysis::FriedmanResult<Scalar>;
pub type NemenyiResult = analysis::NemenyiResult<Scalar>;
