mod decide;
mod sweep;
mod tables;
mod trace;
mod validate;

pub use decide::decide;
pub use sweep::sweep;
pub use tables::tables;
pub use trace::trace;
pub use validate::validate;
