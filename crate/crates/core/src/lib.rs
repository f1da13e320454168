//! Exact depth and h-depth of finite group inclusions over the complex
//! numbers, computed from mod-p character tables.
//!
//! The pipeline for a pair `H ≤ G`: enumerate both groups ([`permgrp`]),
//! compute their character tables modulo a common prime ([`chartab`]), fuse
//! classes and form the induction–restriction matrix ([`inclusion`]), then
//! read depths off zero patterns of its alternating powers ([`matdepth`]).

pub mod cache;
pub mod chains;
pub mod chartab;
pub mod cli;
pub mod error;
pub mod groupspec;
pub mod inclusion;
pub mod matdepth;
pub mod modp;
pub mod permgrp;

pub use error::DepthError;
