use ffmds_core::mds::*;
use ffmds_core::report::Status;

#[test]
fn scratch_7_3() {
    let inst = MdsInstance::new(7, 3, 3, 3, None).unwrap();
    for suite in [Suite::Z1, Suite::Z2, Suite::Thm11, Suite::Thm32, Suite::Correspondence, Suite::Prop41, Suite::Section6] {
        let t = std::time::Instant::now();
        let results = run_suite(&inst, suite).unwrap();
        let fails: Vec<_> = results.iter().filter(|r| r.status != Status::Pass).collect();
        println!("suite {suite}: {} checks, {} failed ({:?})", results.len(), fails.len(), t.elapsed());
        for r in fails {
            println!("  FAIL {}\n   lhs {:?}\n   rhs {:?}", r.check, r.lhs, r.rhs);
        }
    }
}
