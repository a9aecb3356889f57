//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

pub mod brute;
pub mod characters;
