//! Path algebra of the doubled quiver and the necklace calculus on its loops.

mod necklace;
mod quiver;

pub use necklace::{
    canonical_rotation, necklace_bracket, necklace_derive, parse_word, substitute_loops, word_to_string,
    Alphabet, FreePoly, Letter, LoopMode, Necklace, NecklaceError,
};
pub use quiver::{path_mul, symplectic_c, Arrow, NcPoly, Path, PathError, Vertex};
