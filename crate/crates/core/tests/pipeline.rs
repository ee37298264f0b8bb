use num_traits::Zero;
use siegel_core::elliptic::mf_basis;
use siegel_core::formal_fj::{
    compute_siegel_space, extract_siegel_fourier, precision_floor, solve_fm_space, FormalFJTruncation,
};
use siegel_core::jacobi::{cusp_subspace, jacobi_basis};
use siegel_core::linalg::{echelonize, rat};
use siegel_core::oracles::{dim_elliptic, dim_siegel_even, saito_kurokawa_lift, siegel_product};

fn generator(k: i64, precision: usize) -> FormalFJTruncation {
    let fm = solve_fm_space(k, precision).unwrap();
    assert_eq!(fm.dim(), 1, "weight {k}");
    fm.elements().remove(0)
}

#[test]
fn siegel_eisenstein_weight_four() {
    let e4 = extract_siegel_fourier(&generator(4, 4)).unwrap();
    assert_eq!(e4.get(0, 0, 0), Some(rat(1)));
    // Phi operator image is the elliptic E4: 240 sigma_3(n)
    assert_eq!(e4.get(0, 0, 1), Some(rat(240)));
    assert_eq!(e4.get(0, 0, 2), Some(rat(2160)));
    assert_eq!(e4.get(3, 0, 0), Some(rat(6720)));
    assert_eq!(e4.get(1, 1, 1), Some(rat(13440)));
    assert_eq!(e4.get(1, 0, 1), Some(rat(30240)));
    // GL2(Z)-equivalent matrices
    assert_eq!(e4.get(1, -1, 1), e4.get(1, 1, 1));
    assert_eq!(e4.get(2, 3, 2), e4.get(1, 1, 2));
}

#[test]
fn igusa_cusp_form_from_lift() {
    let phi = cusp_subspace(&jacobi_basis(10, 1, 5).unwrap()).elements().remove(0);
    let lift = saito_kurokawa_lift(&phi, 3).unwrap();
    let sf = extract_siegel_fourier(&lift).unwrap();
    let scale = sf.get(1, 1, 1).unwrap().recip();
    let normalized = |n, r, m| sf.get(n, r, m).unwrap() * &scale;
    assert_eq!(normalized(1, 0, 1), rat(-2));
    assert_eq!(normalized(1, 1, 2), rat(-16));
    assert_eq!(normalized(1, 0, 2), rat(36));
    assert!(sf.get(0, 0, 2).unwrap().is_zero());
}

#[test]
fn algorithm_dimensions_through_weight_24() {
    for k in (0..=24).step_by(2) {
        let (fm, b) = compute_siegel_space(k).unwrap();
        assert_eq!(fm.dim(), dim_siegel_even(k).unwrap(), "k = {k}");
        assert!(b >= precision_floor(k));
        for e in fm.elements() {
            assert_eq!(e.symmetry_violation(), None, "k = {k}");
        }
    }
}

#[test]
fn monotone_inclusion() {
    for (k, b) in [(4, 2), (10, 3), (12, 3), (16, 3), (20, 4)] {
        let small = solve_fm_space(k, b).unwrap();
        let large = solve_fm_space(k, b + 1).unwrap();
        let space = small.coefficient_space(b);
        for e in large.elements() {
            assert!(space.contains(&e.truncate(b).coefficient_vector(b)), "k = {k}");
        }
        let truncated = echelonize(large.elements().iter().map(|e| e.coefficient_vector(b)));
        assert_eq!(truncated.rank(), small.dim());
    }
}

#[test]
fn pivots_sit_in_low_index_block() {
    for k in (0..=30).step_by(2) {
        let (fm, _) = compute_siegel_space(k).unwrap();
        if let Some(max) = fm.max_pivot_index() {
            assert!(max as i64 <= k / 10, "k = {k}: pivot at m = {max}");
        }
    }
}

#[test]
fn products_and_lifts_land_in_computed_spaces() {
    let b = 3;
    let e4 = generator(4, b);
    let e6 = generator(6, b);
    let weight8 = solve_fm_space(8, b).unwrap().coefficient_space(b);
    let weight10 = solve_fm_space(10, b).unwrap().coefficient_space(b);
    let weight12 = solve_fm_space(12, b).unwrap().coefficient_space(b);

    let e4_sq = siegel_product(&e4, &e4).unwrap();
    assert!(weight8.contains(&e4_sq.coefficient_vector(b)));
    let e4e6 = siegel_product(&e4, &e6).unwrap();
    assert!(weight10.contains(&e4e6.coefficient_vector(b)));
    let e6_sq = siegel_product(&e6, &e6).unwrap();
    assert!(weight12.contains(&e6_sq.coefficient_vector(b)));
    let e4_cube = siegel_product(&e4_sq, &e4).unwrap();
    assert!(weight12.contains(&e4_cube.coefficient_vector(b)));

    // commutative and associative on the window
    assert_eq!(siegel_product(&e6, &e4).unwrap(), e4e6);
    let left = siegel_product(&siegel_product(&e4, &e6).unwrap(), &e4).unwrap();
    let right = siegel_product(&e4, &siegel_product(&e6, &e4).unwrap()).unwrap();
    assert_eq!(left, right);

    // a symmetric input pair gives a symmetric product
    assert_eq!(e4_sq.symmetry_violation(), None);
}

#[test]
fn lifted_cusp_forms_are_symmetric_and_members() {
    for k in [10i64, 12, 14, 16, 18] {
        let b = precision_floor(k);
        let lift_precision = (b - 1) * (b - 1) + 1;
        let cusp = cusp_subspace(&jacobi_basis(k, 1, lift_precision.max(3)).unwrap());
        assert_eq!(cusp.dim(), dim_elliptic(k) + dim_elliptic(k + 2) - 2, "k = {k}");
        let (fm, b_final) = compute_siegel_space(k).unwrap();
        let space = fm.coefficient_space(b_final);
        for phi in cusp.elements() {
            let lift = saito_kurokawa_lift(&phi, b_final).unwrap();
            assert_eq!(lift.symmetry_violation(), None);
            assert!(space.contains(&lift.coefficient_vector(b_final)), "k = {k}");
        }
    }
}

#[test]
fn jacobi_layer_consistency() {
    for k in (0..=16).step_by(2) {
        for m in 0..=6i64 {
            let b = ((k + 2 * m) / 12 + 2) as usize;
            let basis = jacobi_basis(k, m, b).unwrap();
            let wider = jacobi_basis(k, m, b + 1).unwrap();
            assert_eq!(basis.dim(), wider.dim(), "k={k} m={m}");
            // truncating the wider basis reproduces the narrower one
            let truncated = echelonize(wider.elements().iter().map(|e| e.truncate(b).coeffs().clone()));
            assert_eq!(&truncated, basis.echelon(), "k={k} m={m}");

            let elliptic = mf_basis(k, b).unwrap();
            for e in basis.elements() {
                for (key, c) in e.coeffs().iter() {
                    assert!(4 * key.0 * m - key.1 * key.1 >= 0 && !c.is_zero());
                }
                assert!(elliptic.contains(&e.specialize_z0()), "k={k} m={m}");
            }
        }
    }
}
