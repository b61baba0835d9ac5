//! Migration toolchain for embedded robotic control sketches: classifies
//! source constructs, extracts pin mappings from a schematic, ranks target
//! software libraries and generates adapter-pattern target code with an
//! explicit manual-completion task list.

pub mod codegen;
pub mod hardware_graph;
pub mod platform_kb;
pub mod recommender;
pub mod source_analysis;

#[cfg(test)]
pub mod test_support;
