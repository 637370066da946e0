//! Collapse against decoherence for the built-in scenarios, then a scan.
use gqsr::feasibility::{dominance_scan, preset, verdict_counts, ScanAxis, ScanParam, ScanRequest, Spacing, PRESETS};

fn main() -> gqsr::Result<()> {
    for name in PRESETS {
        let r = preset(name)?.evaluate()?;
        println!("{name:<20} tau {:.3e} s, ratio {:.4e}, {}", r.tau, r.ratio, r.verdict.as_str());
    }
    let req = ScanRequest {
        base: preset("tf-threebody")?,
        axes: vec![
            ScanAxis { param: ScanParam::NAtoms, min: 1e8, max: 1e11, points: 7, spacing: Spacing::Log },
            ScanAxis { param: ScanParam::Radius, min: 1e-6, max: 1e-4, points: 5, spacing: Spacing::Log },
        ],
    };
    let pts = dominance_scan(&req)?;
    println!("scan of {} points: {:?}", pts.len(), verdict_counts(&pts));
    Ok(())
}
