//! Doc-test shim: each module's documentation is a chapter of the book,
//! so `cargo test` compiles and runs every fenced example the reader sees.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/time-evolution.md")]
pub mod time_evolution {}

#[doc = include_str!("../../../book/src/bloch-sphere.md")]
pub mod bloch_sphere {}

#[doc = include_str!("../../../book/src/entanglement.md")]
pub mod entanglement {}

#[doc = include_str!("../../../book/src/real-embeddings.md")]
pub mod real_embeddings {}

#[doc = include_str!("../../../book/src/operator-bases.md")]
pub mod operator_bases {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
