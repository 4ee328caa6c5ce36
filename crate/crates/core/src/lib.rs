pub mod cameras;
pub mod checks;
pub mod cone;
pub mod degeneration;
pub mod exactalg;
pub mod groebner;
pub mod hilbscheme;
pub mod monomial;
pub mod polyring;
pub mod symmetry;
pub mod tangent;
pub mod toric;
