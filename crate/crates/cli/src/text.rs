//! Plain-text renderings.

use arlab_core::verify::VerifyReport;
use arlab_core::RauzyGraph;

/// Left-aligned columns under a comma-separated header.
pub fn render(header: &str, rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut table: Vec<Vec<String>> = vec![header.split(',').map(str::to_string).collect()];
    table.extend(rows);
    let cols = table[0].len();
    let widths: Vec<usize> =
        (0..cols).map(|c| table.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &table {
        let line: Vec<String> = row.iter().zip(&widths).map(|(f, w)| format!("{f:<w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn report(r: &VerifyReport) -> String {
    let mut out = format!(
        "{} (d = {}, n <= {}): {}, stable rows {}\n",
        r.directive,
        r.directive.d(),
        r.n_max,
        if r.passed() { "pass" } else { "FAIL" },
        r.stable_fraction()
    );
    for f in &r.failures {
        let n = f.n.map(|n| format!("n = {n}: ")).unwrap_or_default();
        out.push_str(&format!("  {}{}: {}\n", n, f.check, f.detail));
    }
    out
}

pub fn graph(g: &RauzyGraph) -> String {
    let mut out = format!("order {}: {} vertices, {} edges\n", g.n(), g.vertices().len(), g.edges().len());
    for (v, w) in g.vertices().iter().enumerate() {
        out.push_str(&format!("{w}\tin {}\tout {}\n", g.in_degree(v), g.out_degree(v)));
    }
    out
}
