pub mod arith;
pub mod documents;
pub mod exact_linalg;
pub mod gamma_cw;
pub mod kk_pipeline;
pub mod rep_theory;
