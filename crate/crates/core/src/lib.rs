//! Motivic classes of moduli of semistable Higgs bundles and connections on
//! curves, computed exactly in the Hodge realization.

pub mod cli;
pub mod curvezeta;
pub mod exactring;
pub mod partitions;
pub mod pipeline;
pub mod plethystic;
pub mod residues;
pub mod univariate;
