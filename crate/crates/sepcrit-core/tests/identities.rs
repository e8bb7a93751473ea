//! Structural identities of unfoldings and norms on randomized inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepcrit_core::{
    for_each_index, hermitian_eigen, k_mode_product, mixed_mode_unfold, tensor_trace_norm,
    trace_norm_matrix, vec_k, C64, Mat64, Tensor64, UnfoldingSpec,
};
use sepcrit_core::matrix::outer_vec;

fn rand_complex(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
}

fn rand_tensor(rng: &mut ChaCha8Rng, shape: &[usize]) -> Tensor64 {
    Tensor64::from_fn(shape, |_| rand_complex(rng)).unwrap()
}

fn rand_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Mat64 {
    Mat64::from_fn(rows, cols, |_, _| rand_complex(rng))
}

fn rand_unitary(rng: &mut ChaCha8Rng, n: usize) -> Mat64 {
    let raw = rand_mat(rng, n, n);
    let h = raw.add(&raw.dagger()).unwrap();
    hermitian_eigen(&h).unwrap().eigenvectors.unwrap()
}

/// Random split of modes 1..=order into nonempty row and column groups,
/// with random rotation pivots.
fn rand_spec(rng: &mut ChaCha8Rng, order: usize) -> UnfoldingSpec {
    loop {
        let mask: u32 = rng.gen_range(1..(1u32 << order) - 1);
        let rows: Vec<usize> = (1..=order).filter(|k| mask & (1 << (k - 1)) != 0).collect();
        let cols: Vec<usize> = (1..=order).filter(|k| mask & (1 << (k - 1)) == 0).collect();
        if rows.is_empty() || cols.is_empty() {
            continue;
        }
        let n = rng.gen_range(1..=rows.len());
        let m = rng.gen_range(1..=cols.len());
        return UnfoldingSpec::new(&rows, &cols, n, m).unwrap();
    }
}

/// Unfolding a product tensor built from factors on the row and column
/// mode groups yields the outer product of the rotated vectorizations.
#[test]
fn product_tensor_unfolds_to_outer_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let order = rng.gen_range(2..=4usize);
        let dims: Vec<usize> = (0..order).map(|_| rng.gen_range(1..=3usize)).collect();
        let spec = rand_spec(&mut rng, order);

        let row_dims: Vec<usize> = spec.rows().iter().map(|&k| dims[k - 1]).collect();
        let col_dims: Vec<usize> = spec.cols().iter().map(|&k| dims[k - 1]).collect();
        let a = rand_tensor(&mut rng, &row_dims);
        let b = rand_tensor(&mut rng, &col_dims);

        let mut ai = vec![0usize; row_dims.len()];
        let mut bi = vec![0usize; col_dims.len()];
        let d = Tensor64::from_fn(&dims, |idx| {
            for (slot, &k) in spec.rows().iter().enumerate() {
                ai[slot] = idx[k - 1];
            }
            for (slot, &k) in spec.cols().iter().enumerate() {
                bi[slot] = idx[k - 1];
            }
            a.at(&ai) * b.at(&bi)
        })
        .unwrap();

        let lhs = mixed_mode_unfold(&d, &spec).unwrap();
        let va = vec_k(&a, spec.row_pivot()).unwrap();
        let vb = vec_k(&b, spec.col_pivot()).unwrap();
        let rhs = outer_vec(&va, &vb);
        let diff = lhs.max_abs_diff(&rhs).unwrap();
        worst = worst.max(diff);
    }
    assert!(worst <= 1e-12, "worst deviation {worst:.3e}");
}

/// Unfolding a tensor after mode-wise matrix products equals sandwiching
/// the original unfolding between Kronecker factors (plain transpose on
/// the column side).
#[test]
fn mode_products_factor_through_unfoldings() {
    let mut rng = ChaCha8Rng::seed_from_u64(7781);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let order = rng.gen_range(2..=4usize);
        let dims: Vec<usize> = (0..order).map(|_| rng.gen_range(1..=3usize)).collect();
        let spec = rand_spec(&mut rng, order);
        let a = rand_tensor(&mut rng, &dims);
        let mats: Vec<Mat64> = dims.iter().map(|&d| rand_mat(&mut rng, d, d)).collect();

        let mut b = a.clone();
        for (k, u) in mats.iter().enumerate() {
            b = k_mode_product(&b, u, k + 1).unwrap();
        }
        let lhs = mixed_mode_unfold(&b, &spec).unwrap();

        let kron_chain = |modes: &[usize]| -> Mat64 {
            let mut acc = Mat64::identity(1);
            for &k in modes {
                acc = acc.kron(&mats[k - 1]);
            }
            acc
        };
        let left = kron_chain(&spec.row_order());
        let right = kron_chain(&spec.col_order());
        let rhs = left
            .mul(&mixed_mode_unfold(&a, &spec).unwrap())
            .unwrap()
            .mul(&right.transpose())
            .unwrap();

        let scale = rhs.max_abs().max(1.0);
        let diff = lhs.max_abs_diff(&rhs).unwrap();
        worst = worst.max(diff / scale);
    }
    assert!(worst <= 1e-11, "worst relative deviation {worst:.3e}");
}

#[test]
fn kron_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let a = rand_mat(&mut rng, 2, 3);
        let b = rand_mat(&mut rng, 3, 2);
        let c = rand_mat(&mut rng, 2, 2);
        let lhs = a.kron(&b).kron(&c);
        let rhs = a.kron(&b.kron(&c));
        assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-13);
    }
}

#[test]
fn trace_norm_axioms_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(97);
    for _ in 0..30 {
        let shape: Vec<usize> = (0..rng.gen_range(2..=3usize))
            .map(|_| rng.gen_range(2..=3usize))
            .collect();
        let a = rand_tensor(&mut rng, &shape);
        let b = rand_tensor(&mut rng, &shape);
        let na = tensor_trace_norm(&a).unwrap();
        let nb = tensor_trace_norm(&b).unwrap();

        // Homogeneity.
        let factor = C64::new(rng.gen::<f64>() * 4.0 - 2.0, rng.gen::<f64>() * 4.0 - 2.0);
        let scaled = tensor_trace_norm(&a.scale(factor)).unwrap();
        assert!(
            (scaled - factor.norm() * na).abs() <= 1e-10 * (1.0 + na),
            "homogeneity violated"
        );

        // Triangle inequality.
        let sum = tensor_trace_norm(&a.add(&b).unwrap()).unwrap();
        assert!(sum <= na + nb + 1e-10, "triangle inequality violated");

        // Definiteness on this sample.
        assert!(na > 0.0);
    }
}

#[test]
fn mode_product_consistency_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(131);
    for _ in 0..20 {
        let shape = [2, 3, 2];
        let a = rand_tensor(&mut rng, &shape);
        let k = rng.gen_range(1..=3usize);
        let u = rand_mat(&mut rng, shape[k - 1], shape[k - 1]);
        let prod = k_mode_product(&a, &u, k).unwrap();
        let lhs = tensor_trace_norm(&prod).unwrap();
        let rhs = tensor_trace_norm(&a).unwrap() * trace_norm_matrix(&u).unwrap();
        assert!(lhs <= rhs + 1e-9, "consistency violated: {lhs} > {rhs}");
    }
}

#[test]
fn per_mode_unitaries_preserve_tensor_trace_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10 {
        let shape = [2, 2, 3];
        let a = rand_tensor(&mut rng, &shape);
        let mut b = a.clone();
        for (k, &d) in shape.iter().enumerate() {
            let u = rand_unitary(&mut rng, d);
            b = k_mode_product(&b, &u, k + 1).unwrap();
        }
        let na = tensor_trace_norm(&a).unwrap();
        let nb = tensor_trace_norm(&b).unwrap();
        assert!((na - nb).abs() <= 1e-9, "{na} vs {nb}");
    }
}

/// The whole stack is generic over the component type; exercise the f32
/// instantiation end to end on a small case.
#[test]
fn f32_instantiation_works() {
    type C32 = num_complex::Complex<f32>;
    let t = sepcrit_core::Tensor::<f32>::from_fn(&[2, 2], |idx| {
        C32::new((idx[0] + 2 * idx[1]) as f32, 0.0)
    })
    .unwrap();
    let tn = tensor_trace_norm(&t).unwrap();
    // Entries [[0,2],[1,3]]: singular values of that matrix.
    let m = sepcrit_core::Mat::<f32>::from_data(2, 2, t.data().to_vec()).unwrap();
    let tn_mat = trace_norm_matrix(&m).unwrap();
    assert!((tn - tn_mat).abs() < 1e-4);
    assert!(tn > 3.0);
}

/// Multi-index visitation matches the documented row-major order.
#[test]
fn index_iteration_is_row_major() {
    let mut seen = Vec::new();
    for_each_index(&[2, 2], |idx| seen.push((idx[0], idx[1])));
    assert_eq!(seen, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
}
