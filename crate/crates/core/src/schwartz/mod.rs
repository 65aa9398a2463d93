//! Test functions on `K^N`, Haar integration, the additive character and the
//! exact Fourier transform.

mod character;
mod fourier;
mod function;
mod io;
mod window;

pub use character::{root_of_unity, Character};
pub use fourier::{Direction, FourierMethod, MAX_DIRECT_TRANSFORM};
pub use function::{ConvolutionMethod, TestFunction, MAX_DIRECT_CONVOLUTION};
pub use io::{CellEntry, TestFunctionJson};
pub use window::{CellLayout, LatticeWindow, MAX_CELLS};
