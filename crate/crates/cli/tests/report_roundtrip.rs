use meixner_cli::report::{Report, ReportRow};
use num_complex::Complex64;
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![-1e300..1e300f64, -1.0..1.0f64, Just(0.0), Just(f64::MIN_POSITIVE)]
}

fn row() -> impl Strategy<Value = ReportRow> {
    let numeric = ("[a-z/=0-9]{1,12}", finite(), finite(), finite(), finite(), 1e-12..1e-3f64, any::<bool>()).prop_map(
        |(id, er, ei, ar, ai, tol, fails)| {
            let actual = if fails { Err("no convergence".to_string()) } else { Ok(Complex64::new(ar, ai)) };
            ReportRow::numeric(id, "inputs", Complex64::new(er, ei), actual, tol, 1.0)
        },
    );
    let exact = ("[a-z/=0-9]{1,12}", "[-0-9/ ]{0,10}", "[-0-9/ ]{0,10}").prop_map(|(id, e, a)| ReportRow::exact(id, "n=1", e, a));
    prop_oneof![numeric, exact]
}

proptest! {
    #[test]
    fn json_reports_reparse_to_the_same_rows(rows in prop::collection::vec(row(), 0..20), seed in any::<u64>()) {
        let report = Report::new("numeric", seed, rows);
        let back: Report = serde_json::from_str(&report.to_json()).unwrap();
        prop_assert_eq!(back, report);
    }
}
