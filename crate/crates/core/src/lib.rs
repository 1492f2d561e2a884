pub mod angle;
pub mod bordism;
pub mod error;
pub mod io;
pub mod jet;
pub mod linalg;
pub mod maslov;
pub mod metaplectic;
pub mod scan;
pub mod selftest;
pub mod symplectic;
pub mod witt;
