mod counts;
mod eval;
mod gaudin;
mod young;

pub use counts::{asm_count, aht_count, nn_number, nn_squared, spin_sum, CountRow, CountTable};
pub use eval::{
    common_factor_heuristic, even_sum_rule, gl_dim, odd_sum_rule, okada_check, punctured_sum_rule, resultant,
    schur_bialternant, schur_eval, CommonFactorReport,
};
pub use gaudin::{gaudin_at_infinity, gaudin_eval, theta_base_eval};
pub use young::YoungDiagram;
