use ffmds_core::mds::*;

#[test]
fn scratch_5_2() {
    let inst = MdsInstance::new(5, 2, 4, 4, None).unwrap();
    for suite in [Suite::Z1, Suite::Z2, Suite::Thm11, Suite::Thm32, Suite::Correspondence, Suite::Pparts, Suite::Prop41, Suite::Section6] {
        let results = run_suite(&inst, suite).unwrap();
        for r in &results {
            let status = if r.status == ffmds_core::report::Status::Pass { "PASS" } else { "FAIL" };
            println!("{status} {} [{}]", r.check, suite);
            if r.status != ffmds_core::report::Status::Pass {
                println!("   lhs: {:?}", r.lhs);
                println!("   rhs: {:?}", r.rhs);
            }
        }
    }
}
