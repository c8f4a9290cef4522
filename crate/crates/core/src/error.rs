use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::boundary::BoundaryError;
use crate::digraph::DigraphError;
use crate::farey::FareyError;
use crate::itopoly::ItoError;
use crate::realize::RealizeError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error(transparent)]
    Ito(#[from] ItoError),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Realize(#[from] RealizeError),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
}
