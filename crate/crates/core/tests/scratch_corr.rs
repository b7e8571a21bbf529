use ffmds_core::chars::CharCtx;
use ffmds_core::cyclo::CycNum;
use ffmds_core::formal::FormalScalar;
use ffmds_core::mds::*;
use ffmds_core::poly::FieldCtx;
use ffmds_core::series::{Monomial, Scalar};

// The remark's substitution list read with an unnormalized Gauss-sum image
// (G_i -> tau(eps^i) while v -> q^{-1/2}) overshoots by a factor q on each
// Gauss term; this pins the corrected normalized reading used in the
// correspondence suite.
#[test]
fn literal_gauss_image_fails_by_q() {
    let ctx = CharCtx::new(FieldCtx::new(5, 2, None).unwrap(), 2);
    let cyclo = ctx.cyclo();
    let v_img = CycNum::sqrt_q_pow(cyclo, -1);
    let g_imgs: Vec<CycNum> = (1..2u32).map(|i| ctx.tau(i).clone()).collect();
    let mapped = h2_closed(&ctx)
        .map_scalars(&mut |c: &FormalScalar| c.eval(&v_img, &g_imgs))
        .unwrap();
    let qx = Monomial::new(ffmds_core::series::build::q_pow(cyclo, 1), 1, 0);
    let qy = Monomial::new(ffmds_core::series::build::q_pow(cyclo, 1), 0, 1);
    let mapped = mapped.substitute(&qx, &qy).unwrap();
    let target = z2_closed(&ctx);
    assert!(!mapped.equal(&target), "literal reading unexpectedly matches");
    // the y-coefficient comes out q times too large
    let got = mapped.expand(0, 1).unwrap();
    let want = target.expand(0, 1).unwrap();
    assert_eq!(got.get(0, 1), &want.get(0, 1).mul(&ffmds_core::series::build::q_pow(cyclo, 1)));
}
