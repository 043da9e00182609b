//! Every example runs to completion.

macro_rules! example {
    ($module:ident, $test:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(reliability_polys, reliability_polys_runs, "reliability_polys.rs");
example!(certify_sign, certify_sign_runs, "certify_sign.rs");
example!(ber_gap, ber_gap_runs, "ber_gap.rs");
example!(closure_chain, closure_chain_runs, "closure_chain.rs");
example!(rule_matrices, rule_matrices_runs, "rule_matrices.rs");
example!(rankings_kendall, rankings_kendall_runs, "rankings_kendall.rs");
example!(influence_slope, influence_slope_runs, "influence_slope.rs");
example!(verify_suites, verify_suites_runs, "verify_suites.rs");
example!(render_matrix, render_matrix_runs, "render_matrix.rs");
example!(total_orders, total_orders_runs, "total_orders.rs");
