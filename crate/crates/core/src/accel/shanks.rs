use crate::scalar::Scalar;

use super::{AccelError, SequencePair};

/// Sets up the Shanks transformation as a G-transformation problem:
/// `u_k = A_{k+1} - A_k`.
///
/// For `2L + 1` terms the pair keeps `A_0..A_L` and the `2L` available
/// differences; `u_{2L}` would need `A_{2L+1}` and is left absent. Given an
/// even number `2L + 2` of terms all `2L + 1` differences are kept.
pub fn shanks_prepare<S: Scalar>(a: &[S]) -> Result<SequencePair<S>, AccelError> {
    if a.is_empty() {
        return Err(AccelError::Empty("A"));
    }
    let levels = (a.len() - 1) / 2;
    let u: Vec<S> = a.windows(2).take(2 * levels + 1).map(|w| w[1].clone() - w[0].clone()).collect();
    if let Some(index) = u.iter().position(Scalar::is_zero) {
        return Err(AccelError::ZeroDifference { index });
    }
    SequencePair::new(a[..=levels].to_vec(), u)
}
