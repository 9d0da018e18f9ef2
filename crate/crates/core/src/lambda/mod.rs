//! The simplex category, Connes' cyclic category and the r-cyclic categories.

mod cyclic;
mod delta;
mod enumerate;
mod rcyclic;
mod word;

pub use cyclic::LambdaMor;
pub use delta::{delta_count, DeltaMor};
pub use enumerate::{
    enumerate, enumerate_delta, enumerate_lambda, enumerate_rcyclic, hom_count, Morphism, MorphismKind,
    DEFAULT_MORPHISM_CAP,
};
pub use rcyclic::{quotient_p_r, sd_on_morphism, RCyclicMor};
pub use word::{to_generator_word, Atom, Generator, GeneratorWord};


/// Composition computed directly on function models: sample `g(f(x))` over
/// one period and renormalize. Independent of the normal-form algebra.
pub fn compose_by_function_model(g: &LambdaMor, f: &LambdaMor) -> crate::error::Result<LambdaMor> {
    if f.target() != g.source() {
        return Err(crate::error::Error::LevelMismatch { expected: g.source(), found: f.target() });
    }
    let sample: Vec<i64> = (0..=f.source() as i64).map(|x| g.eval(f.eval(x))).collect();
    LambdaMor::normal_form(&sample, g.target())
}
