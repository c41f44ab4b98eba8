use bpq_core::quaternion::{
    qp_sequence, qp_symbolic_terms, qr_sequence, qr_symbolic_terms, SymQuat,
};
use bpq_core::sequences::{
    gf_expand_mod, gf_expand_symbolic, padovan_gf_numerator, padovan_quaternion_numerators,
    perrin_quaternion_numerators, terms_symbolic, SeqKind, SeqParams, SeriesNumerator,
};

const N: usize = 51;

fn expand_components(nums: &[SeriesNumerator; 4]) -> Vec<SymQuat> {
    let parts: Vec<_> = nums.iter().map(|num| gf_expand_symbolic(num, N)).collect();
    (0..N)
        .map(|n| SymQuat::new([0, 1, 2, 3].map(|c| parts[c][n].clone())))
        .collect()
}

#[test]
fn padovan_series() {
    assert_eq!(
        gf_expand_symbolic(&padovan_gf_numerator(), N),
        terms_symbolic(SeqKind::Padovan, N)
    );
}

#[test]
fn padovan_quaternion_series() {
    assert_eq!(
        expand_components(&padovan_quaternion_numerators()),
        qp_symbolic_terms(N)
    );
}

#[test]
fn perrin_quaternion_series() {
    assert_eq!(
        expand_components(&perrin_quaternion_numerators()),
        qr_symbolic_terms(N)
    );
}

#[test]
fn modular_series_match_modular_sequences() {
    for p in [5u64, 7, 13, 181] {
        let params = SeqParams::twin_prime(p).unwrap();
        for (nums, seq) in [
            (
                padovan_quaternion_numerators(),
                qp_sequence(&params, N).unwrap(),
            ),
            (
                perrin_quaternion_numerators(),
                qr_sequence(&params, N).unwrap(),
            ),
        ] {
            let parts: Vec<_> = nums
                .iter()
                .map(|num| gf_expand_mod(num, &params, N).unwrap())
                .collect();
            for (n, q) in seq.iter().enumerate() {
                assert_eq!(q.coeffs(), [0, 1, 2, 3].map(|c| parts[c][n]), "p={p} n={n}");
            }
        }
    }
}
