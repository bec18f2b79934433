pub mod abelian;
pub mod categories;
pub mod engine;
pub mod linalg;
pub mod profile;
pub mod cache;
pub mod quiver;
pub mod report;
pub mod rings;
pub mod verify;
