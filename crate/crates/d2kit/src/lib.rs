//! Depth-two ring extensions computed exactly.

pub mod algcore;
pub mod exactla;
pub mod extcore;
pub mod morita;
pub mod bialgd;
pub mod checks;
pub mod frobtower;
pub mod quantum;
pub mod cli;

#[doc = include_str!("../../../book/src/intro.md")]
pub mod ch01_intro {}
#[doc = include_str!("../../../book/src/exact.md")]
pub mod ch02_exact {}
#[doc = include_str!("../../../book/src/depth-two.md")]
pub mod ch03_depth_two {}
#[doc = include_str!("../../../book/src/bialgebroids.md")]
pub mod ch04_bialgebroids {}
#[doc = include_str!("../../../book/src/morita.md")]
pub mod ch05_morita {}
#[doc = include_str!("../../../book/src/frobenius.md")]
pub mod ch06_frobenius {}
#[doc = include_str!("../../../book/src/weak-hopf.md")]
pub mod ch07_weak_hopf {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod ch08_cli {}
