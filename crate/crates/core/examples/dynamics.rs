//! No-regret learning on games with a certified unique CCE: the empirical
//! distribution of play approaches the certified profile.

use eqcert::certify::certify_unique_pure_cce;
use eqcert::dynamics::{run, Algorithm};
use eqcert::generators::{parking, prisoners_dilemma};
use eqcert::rational::{int, rat, to_f64};
use eqcert::JointDistribution;

fn main() -> eqcert::Result<()> {
    let games = [prisoners_dilemma(), parking(3, &int(1), &rat(1, 4), &rat(3, 5))?];
    for g in &games {
        let cert = certify_unique_pure_cce(g)?;
        let target = JointDistribution::point_mass(g.profile_index(cert.certificate().unwrap().a_star.actions())?);
        for alg in [Algorithm::ExternalMw, Algorithm::InternalRm] {
            let r = run(g, alg, 20_000, 7, 10.0)?;
            println!(
                "{:<20} {alg}: external regret {:.5}, internal regret {:.5}, distance to certified {:.5}",
                g.name().unwrap_or("?"),
                to_f64(&r.max_external_regret),
                to_f64(&r.max_internal_regret),
                to_f64(&r.empirical.total_variation(&target))
            );
        }
    }
    Ok(())
}
