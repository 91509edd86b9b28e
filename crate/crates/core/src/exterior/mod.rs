//! Pointwise multilinear algebra: tensors, forms, Hodge star, 2-form and
//! endomorphism identification.

pub mod forms;
pub mod tensor;

pub use forms::{
    commutator, compose, differential, endomorphism, exterior_derivative, form_inner,
    form_of_endomorphism, hodge, interior, permutation_sign, skew_part, tensor_norm,
    volume_form, wedge, Orientation, SelfDualSplit, TwoForm, BIVECTORS,
};
pub use tensor::{det4, MetricContext, Slot, Tensor, DIM, SPD_FLOOR};
