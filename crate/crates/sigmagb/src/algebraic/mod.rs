//! Exact real and complex algebraic numbers.

mod circle;
mod complex;
mod real;
mod rect;

pub use circle::{has_root_outside, ratio_order, roots_on_circle};
pub(crate) use circle::unit_ratio_order;
pub use complex::{count_roots_in_rect, isolate_complex_roots, RootBox};
pub(crate) use real::REFINE_CAP;
pub use real::{compare, compare_to_rational, count_positive_roots, isolate_real_roots, sign_at, sturm_count, RealAlgebraic};
pub use rect::Rect;
