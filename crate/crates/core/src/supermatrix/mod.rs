//! Graded matrices over any coefficient ring and the supergroup `UOSP(1,2)`.

mod matrix;
mod uosp;

pub use matrix::GradedMatrix;
pub use uosp::{
    one_parameter_product, osp12_generators, random_self_conjugate_even, random_uosp, super_u1_act,
    uosp_adjoint_closed_form, uosp_closed_form, uosp_element, Osp12Generators, SuperU1Element,
    UospElement, SIGNATURE_1_2,
};
