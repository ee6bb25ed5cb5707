//! Twisted forms of almost-simple group schemes over Hasse domains of
//! function fields over finite fields.
//!
//! The engine reduces a classification to finite abelian invariants (Picard
//! quotients, torsion in Brauer groups, quadratic etale extensions and orbit
//! counts) and computes each of them exactly for curves of genus 0 and 1.

pub mod abgrp;
pub mod brauer;
pub mod classify;
pub mod covers;
pub mod curve;
pub mod error;
pub mod ff;
pub mod hasse;
pub mod poly;
pub mod report;
pub mod rr;
pub mod typea;

pub use error::{Error, Result};
