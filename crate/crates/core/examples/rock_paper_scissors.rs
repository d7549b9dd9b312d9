//! The three polytopes of rock-paper-scissors and the two distributions that
//! separate them.

use eqcert::generators::rock_paper_scissors;
use eqcert::polytope::{build, Concept, Singleton};
use eqcert::rational::format_rational;
use eqcert::{Game, JointDistribution};

fn show(g: &Game, mu: &JointDistribution) -> String {
    mu.iter().map(|(&k, p)| format!("{} {}", format_rational(p), g.profile_label(k))).collect::<Vec<_>>().join(" + ")
}

fn main() -> eqcert::Result<()> {
    let g = rock_paper_scissors();
    for concept in [Concept::Ce, Concept::Cce, Concept::Ircp] {
        match build(&g, concept).is_singleton()? {
            Singleton::Singleton(mu) => println!("{concept}: unique, {}", show(&g, &mu)),
            Singleton::NotSingleton(a, b) => println!("{concept}: not unique\n  {}\n  {}", show(&g, &a), show(&g, &b)),
        }
    }

    let diagonal = JointDistribution::uniform(&[g.profile_index(&[0, 0])?, g.profile_index(&[1, 1])?, g.profile_index(&[2, 2])?]);
    let swap = JointDistribution::uniform(&[g.profile_index(&[0, 1])?, g.profile_index(&[1, 0])?]);
    for (name, mu) in [("diagonal", &diagonal), ("rock/paper swap", &swap)] {
        let flags: Vec<String> = [Concept::Ce, Concept::Cce, Concept::Ircp]
            .iter()
            .map(|&c| format!("{c}={}", build(&g, c).membership(mu).is_member()))
            .collect();
        println!("{name}: {}", flags.join(" "));
    }
    Ok(())
}
