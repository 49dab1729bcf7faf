pub mod design;
pub mod dynamics;
pub mod exact;
pub mod game;
pub mod report;
pub mod rules;
pub mod scenario;
pub mod solver;
