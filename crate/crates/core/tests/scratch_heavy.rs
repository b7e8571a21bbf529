use ffmds_core::mds::*;
use ffmds_core::report::Status;

#[test]
fn heavy_7_3_parts() {
    let t0 = std::time::Instant::now();
    let inst = MdsInstance::new(7, 3, 4, 4, None).unwrap();
    println!("build (7,3): {:?}", t0.elapsed());
    for suite in [Suite::Reciprocity, Suite::Vanishing, Suite::Lfe, Suite::Pparts, Suite::Z1, Suite::Z2] {
        let t = std::time::Instant::now();
        let results = run_suite(&inst, suite).unwrap();
        let fails = results.iter().filter(|r| r.status != Status::Pass).count();
        println!("(7,3) suite {suite}: {} checks, {} failed ({:?})", results.len(), fails, t.elapsed());
    }
}
