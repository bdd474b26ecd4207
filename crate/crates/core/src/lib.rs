//! Weak multiplier bialgebras given by structure constants, their module and
//! comodule categories, and Yetter–Drinfeld modules over them.

pub mod algebra;
pub mod exact;
pub mod examples;
pub mod rep;
pub mod report;
pub mod wmb;
pub mod yd;
