pub mod c2_poisson;
pub mod fock;
pub mod linalg;
pub mod vertex;
pub mod zhu;
