//! The algebra `W(l1, l2, Gamma)`: basis symbols, sparse elements, the
//! associative product and its commutator, the action on `A`, changes of
//! derivation basis, filtrations and the reordering identities.

mod dbasis;
mod element;
mod filtration;
mod identities;
mod multi_index;
mod product;

pub use dbasis::change_d_basis;
pub use element::{Element, Monomial, Signature};
pub(crate) use element::Accumulator;
pub use filtration::{filtration_data, gamma_min, FiltrationData};
pub use identities::{alternating_binomial_sum, neg_d_power, reordering_sides, x_monomial};
pub use multi_index::{binomial, multi_binomial, total_order_cmp, MultiIndex};
pub use product::{act_on_a, bracket, derivation_apply, mul, partial};
