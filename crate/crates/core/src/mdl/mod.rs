//! Two-part codec for graphs containing a generated pattern, with exact
//! bit accounting.

mod bounds;
mod codec;
pub mod rank;

pub use bounds::{compressor_proxy, gain, asymptotic_bounds, threshold_exact, AsymptoticBounds, Pow2Bound};
pub use codec::{decode_alt, encode_alt, AltEncoding, Generator, LengthReport, Occurrence, SideInfo};
