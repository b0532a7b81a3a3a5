pub mod cli;
pub mod corpus;
pub mod correspondence;
pub mod curve;
pub mod domain;
pub mod expr;
pub mod jet;
pub mod quadrature;
pub mod roots;
pub mod scene;
pub mod space;
pub mod surface;
pub mod verify;
