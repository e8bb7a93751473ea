//! Regression anchors for the built-in detection setups: endpoint
//! tensor norms, fixed-scale margins, and detection thresholds pinned
//! to high-precision values from an independent reference
//! implementation of the same algorithms.

use sepcrit_core::{mixed_mode_unfold, tensor_trace_norm, trace_norm_matrix, UnfoldingSpec};
use sepcrit_criteria::{
    Bipartition, DetectionMode, Preset, PresetContext, ScanStatus, Verdict,
};
use sepcrit_quantum::{bennett_state, decompose, heisenberg_weyl_basis, horodecki_state};

fn close(got: f64, want: f64, tol: f64, what: &str) {
    assert!(
        (got - want).abs() < tol,
        "{what}: got {got}, want {want} (tol {tol})"
    );
}

#[test]
fn two_qutrit_endpoint_tensor_norms() {
    let hw3 = heisenberg_weyl_basis(3).unwrap();
    let dec = decompose(&bennett_state(), &[hw3.clone(), hw3]).unwrap();
    let ta = dec.tensor(&[1]).unwrap().frobenius_norm();
    let tb = dec.tensor(&[2]).unwrap().frobenius_norm();
    let tab = dec.tensor(&[1, 2]).unwrap();
    close(ta, 0.306186217847897, 1e-12, "first marginal norm");
    close(tb, 0.306186217847897, 1e-12, "second marginal norm");
    close(tab.frobenius_norm(), 1.030776406404415, 1e-12, "pair norm");
    let spec = UnfoldingSpec::new(&[1], &[2], 1, 1).unwrap();
    let unf = mixed_mode_unfold(tab, &spec).unwrap();
    close(
        trace_norm_matrix(&unf).unwrap(),
        2.106843264540335,
        1e-11,
        "pair trace norm",
    );
}

#[test]
fn two_qutrit_margins_at_fixed_scale() {
    let ctx = PresetContext::new(Preset::t1().unwrap()).unwrap();
    let scaled = ctx.preset().scaled.clone().unwrap();
    let m85 = ctx.margin_fixed(0.85, &scaled.at(0.01)).unwrap();
    let m90 = ctx.margin_fixed(0.90, &scaled.at(0.01)).unwrap();
    close(m85, -0.006808624497371893, 1e-12, "margin at p=0.85");
    close(m90, -0.006142940713364313, 1e-12, "margin at p=0.90");
}

#[test]
fn two_qutrit_detection_threshold() {
    let ctx = PresetContext::new(Preset::t1().unwrap()).unwrap();
    let scan = ctx.scan(0.0, 1.0, 0.01, 1e-6).unwrap();
    assert_eq!(scan.status, ScanStatus::Converged);
    let p = scan.threshold.unwrap();
    close(p, 0.8821994018554693, 1e-6, "detection threshold");
}

#[test]
fn two_by_four_endpoint_anchors() {
    let ctx = PresetContext::new(Preset::t2().unwrap()).unwrap();
    let preset = Preset::t2().unwrap();
    let dec = decompose(&horodecki_state(0.9).unwrap(), &preset.bases).unwrap();
    close(
        dec.tensor(&[1]).unwrap().frobenius_norm(),
        0.013698630136986356,
        1e-12,
        "first marginal norm",
    );
    close(
        dec.tensor(&[2]).unwrap().frobenius_norm(),
        0.17109583557255884,
        1e-12,
        "second marginal norm",
    );
    let tab = dec.tensor(&[1, 2]).unwrap();
    close(tab.frobenius_norm(), 1.716870688645841, 1e-12, "pair norm");
    let spec = UnfoldingSpec::new(&[1], &[2], 1, 1).unwrap();
    let unf = mixed_mode_unfold(tab, &spec).unwrap();
    close(
        trace_norm_matrix(&unf).unwrap(),
        2.587030924345008,
        1e-11,
        "pair trace norm",
    );

    // Positive margin over the whole family, growing toward the pure
    // injected end.
    close(
        ctx.best_margin(0.0).unwrap(),
        1.0106568007183867,
        1e-8,
        "margin at p=0",
    );
    close(
        ctx.best_margin(1.0).unwrap(),
        51.41624211876577,
        1e-7,
        "margin at p=1",
    );
}

#[test]
fn tripartite_endpoint_tensor_anchors() {
    let ctx = PresetContext::new(Preset::t3().unwrap()).unwrap();
    let dec = ctx.decomposition_at(1.0).unwrap();
    let full = dec.tensor(&[1, 2, 3]).unwrap();
    close(
        full.frobenius_norm(),
        3.3466401061363014,
        1e-12,
        "full tensor norm",
    );
    close(
        tensor_trace_norm(full).unwrap(),
        9.132121714492243,
        1e-10,
        "full tensor trace norm",
    );
}

#[test]
fn tripartite_genuine_margins() {
    let ctx = PresetContext::new(Preset::t3().unwrap()).unwrap();
    close(
        ctx.best_margin(0.3).unwrap(),
        -1.133557923204254,
        1e-9,
        "margin at p=0.3",
    );
    close(
        ctx.best_margin(0.8).unwrap(),
        0.08759962646582586,
        1e-9,
        "margin at p=0.8",
    );
    close(
        ctx.best_margin(1.0).unwrap(),
        0.5844124585998753,
        1e-9,
        "margin at p=1",
    );
    let det = ctx.detect_at(1.0).unwrap();
    assert_eq!(det.report.verdict(), Verdict::Genuine);
}

#[test]
fn tripartite_single_partition_thresholds() {
    // Same tuned weights, evaluated on each bipartition separately.
    let base = Preset::t3().unwrap();
    let cases = [
        (&[1usize][..], 0.3384524536132814),
        (&[1, 2][..], 0.46879180908203144),
        (&[1, 3][..], 0.33837310791015635),
    ];
    for (left, want) in cases {
        let mut preset = base.clone();
        preset.mode = DetectionMode::Partition(Bipartition::new(left, 3).unwrap());
        let ctx = PresetContext::new(preset).unwrap();
        let scan = ctx.scan(0.0, 1.0, 0.01, 1e-6).unwrap();
        assert_eq!(scan.status, ScanStatus::Converged);
        close(
            scan.threshold.unwrap(),
            want,
            1e-6,
            &format!("threshold for left side {left:?}"),
        );
    }
}

#[test]
fn tripartite_genuine_threshold() {
    let ctx = PresetContext::new(Preset::t3().unwrap()).unwrap();
    let scan = ctx.scan(0.0, 1.0, 0.01, 1e-6).unwrap();
    assert_eq!(scan.status, ScanStatus::Converged);
    close(
        scan.threshold.unwrap(),
        0.7645193481445316,
        1e-6,
        "genuine threshold",
    );
}

#[test]
fn ghz_family_anchors() {
    let small = PresetContext::new(Preset::t4(0.1).unwrap()).unwrap();
    let dec = small.decomposition_at(1.0).unwrap();
    let full = dec.tensor(&[1, 2, 3]).unwrap();
    close(
        full.frobenius_norm(),
        1.9975046932063028,
        1e-12,
        "full tensor norm eps=0.1",
    );
    close(
        tensor_trace_norm(full).unwrap(),
        2.921009251466736,
        1e-10,
        "trace norm eps=0.1",
    );
    let scan = small.scan(0.0, 1.0, 0.01, 1e-6).unwrap();
    close(
        scan.threshold.unwrap(),
        0.3423477172851564,
        1e-6,
        "threshold eps=0.1",
    );

    let big = PresetContext::new(Preset::t4(1.0).unwrap()).unwrap();
    let dec = big.decomposition_at(1.0).unwrap();
    let full = dec.tensor(&[1, 2, 3]).unwrap();
    close(
        full.frobenius_norm(),
        1.7950549357115018,
        1e-12,
        "full tensor norm eps=1",
    );
    close(
        tensor_trace_norm(full).unwrap(),
        3.0547570692584336,
        1e-10,
        "trace norm eps=1",
    );
    let scan = big.scan(0.0, 1.0, 0.01, 1e-6).unwrap();
    close(
        scan.threshold.unwrap(),
        0.3273580932617189,
        1e-6,
        "threshold eps=1",
    );

    // Scans are bit-reproducible.
    let again = small.scan(0.0, 1.0, 0.01, 1e-6).unwrap();
    assert_eq!(
        again.threshold.unwrap().to_bits(),
        small.scan(0.0, 1.0, 0.01, 1e-6).unwrap().threshold.unwrap().to_bits()
    );
}
