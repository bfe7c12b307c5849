//! Text formats, SVG output and instance generators.

pub mod format;
pub mod generate;
pub mod svg;

pub use format::{
    parse_drawing, parse_instance, parse_kernel, serialize_drawing, serialize_instance, serialize_kernel, KernelFile,
};
pub use generate::{generate_instance, GenKind};
pub use svg::{render_svg, SvgStyle};
