//! The parking game across fine levels: where paying is the unique IRCP and
//! where a second one appears.

use eqcert::certify::{certify_unique_ircp, Certification};
use eqcert::generators::parking;
use eqcert::polytope::{build, Concept, Singleton};
use eqcert::rational::{format_rational, int, rat};

fn main() -> eqcert::Result<()> {
    let (v, c) = (int(1), rat(1, 4));
    for t in [rat(2, 5), rat(1, 2), rat(11, 20), rat(3, 5), rat(7, 10), rat(3, 4), rat(4, 5)] {
        let g = parking(3, &v, &c, &t)?;
        let unique = matches!(build(&g, Concept::Ircp).is_singleton()?, Singleton::Singleton(_));
        let verdict = match certify_unique_ircp(&g)? {
            Certification::Certificate(cert) => format!(
                "certified at {} with gamma ({}) slack {}",
                g.profile_label(g.profile_index(cert.a_star.actions())?),
                cert.gamma.iter().map(format_rational).collect::<Vec<_>>().join(", "),
                format_rational(&cert.slack)
            ),
            Certification::Refuted(r) => format!("refuted: {}", r.reason),
            Certification::UniqueMixed(_) => "unique mixed".into(),
        };
        println!("t = {:>5}  singleton IRCP = {unique:<5}  {verdict}", format_rational(&t));
    }
    Ok(())
}
