//! Lifting independence relations along functors.

pub mod completion;
pub mod functor;
pub mod lift;
pub mod multi;

pub use completion::{
    admits_completions_check, check_horn_amalgamation, completion_implication_check, find_completion, CompletionRequest, CompletionResult,
};
pub use functor::{Functor, FunctorProps};
pub use lift::{
    check_functor_laws, check_reflects_amalgamation, compose_lift_law_check, functor_product, image_of, lift_relation,
    preserves_joins_check, product_class, product_relation, ConcreteFunctor,
};
pub use multi::{cocone_factorization, compare_cocones, multi_reflection_at, CoconeFactorization, MultiReflection};
