pub mod aggregate;
pub mod lfp;
pub mod minimax;
pub mod risk;
pub mod simulate;
