//! Regenerate the golden chart and page renders. Run from the workspace
//! root after a verified change to the chart pipeline, then review the
//! diff before committing.

use std::fs;

use mb13::graded::thom_module;
use mb13::resolution::ResolveOptions;
use mb13::selftest::compute_reference_chart;
use mb13::sseq::page_chart;

fn main() {
    let chart = compute_reference_chart(ResolveOptions::default()).unwrap();
    fs::write("crates/core/golden/ext_chart_a2.json", chart.to_json()).unwrap();
    fs::write("crates/core/golden/ext_chart_a2.txt", chart.to_ascii()).unwrap();
    let m = thom_module(1, 4, 8).unwrap();
    let page = page_chart(&m, &[12, 13, 14]);
    fs::write("crates/core/golden/aahss_page.json", page.to_json()).unwrap();
    println!("golden files written");
}
