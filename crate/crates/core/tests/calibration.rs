mod common;

use common::*;
use knot_cluster::kauffman::{poset, Clock, LatticeConfig, CLOCK_UP};
use knot_cluster::{LaurentPoly, Perm};

fn fixed(clock: Clock) -> LatticeConfig {
    LatticeConfig { clock, fallback: false }
}

fn reflect(f: &LaurentPoly, top: &[u32]) -> LaurentPoly {
    let terms = f.terms().map(|(e, c)| (e.iter().zip(top).map(|(&v, &t)| t as i32 - v).collect(), c.clone()));
    LaurentPoly::from_terms(f.vars(), terms)
}

#[test]
fn clock_up_reproduces_figure_eight_cluster() {
    let d = fixture("figure8.json");
    let sigma = Perm::from_cycles(8, &[vec![1, 5], vec![2, 6], vec![3, 7], vec![4, 8]]).unwrap();
    for (k, tex) in FIG8_F.iter().enumerate() {
        let i = k as u32 + 1;
        let p = poset(&d, sigma.apply(i), &fixed(CLOCK_UP)).unwrap();
        assert_eq!(p.clock, CLOCK_UP);
        assert_eq!(p.f_poly().to_tex(), *tex, "F_{i}");
    }
}

#[test]
fn opposite_clock_reflects_the_lattice() {
    for (name, d) in corpus() {
        for i in d.labels() {
            let up = poset(&d, i, &fixed(CLOCK_UP)).unwrap();
            let down = poset(&d, i, &fixed(CLOCK_UP.opposite())).unwrap();
            assert_eq!(down.f_poly(), reflect(&up.f_poly(), &up.dims()), "{name}, segment {i}");
        }
    }
}

#[test]
fn clock_parses() {
    assert_eq!("cw".parse::<Clock>(), Ok(Clock::Cw));
    assert_eq!("ccw".parse::<Clock>(), Ok(Clock::Ccw));
    assert!("up".parse::<Clock>().is_err());
    assert_eq!(Clock::Cw.opposite(), Clock::Ccw);
}
