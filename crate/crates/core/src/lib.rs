pub mod algebra;
pub mod cli;
pub mod connection;
pub mod curvature;
pub mod frame;
pub mod tensor;
pub mod soliton;
pub mod report;
pub mod spec_file;
