use innerbody::bodies;
use innerbody::polytope::{Body, Vector};
use innerbody::functionals::{curve_family, aniso_perimeter};
use innerbody::erosion::{inner_parallel, inradius};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mix_seed(base: u64, salt: u64) -> u64 {
    let mut z = base.wrapping_add(0x9E3779B97F4A7C15).wrapping_mul(0xBF58476D1CE4E5B9)
        ^ salt.wrapping_mul(0x94D049BB133111EB);
    z ^= z >> 30; z = z.wrapping_mul(0xBF58476D1CE4E5B9);
    z ^= z >> 27; z = z.wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn rebuild(dim: usize, seed: u64) -> (Body, Body) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m_omega = rng.gen_range(dim + 3..=12);
    let omega0 = bodies::random_hull(dim, m_omega, &mut rng).unwrap();
    let scale = rng.gen_range(0.5..2.0);
    let shift: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let omega = omega0.scale_translate(scale, &Vector::from_slice(&shift).unwrap()).unwrap();
    let m_k = rng.gen_range(dim + 3..=12);
    let k = bodies::centered_at_centroid(&bodies::random_hull(dim, m_k, &mut rng).unwrap()).unwrap();
    (omega, k)
}

fn main() {
    for dim in [2usize, 3] {
        let count = if dim == 2 { 200 } else { 50 };
        for i in 0..count {
            let seed = mix_seed(0, ((dim as u64) << 32) | i as u64);
            let (omega, k) = rebuild(dim, seed);
            let r = inradius(&omega, &k).unwrap().r;
            let fam = curve_family(&omega, &k, 65).unwrap();
            let delta = 1e-6 * r;
            eprint!("\r{dim}d-{i:03} ");
            use std::io::Write;
            std::io::stderr().flush().unwrap();
            for s in &fam.samples {
                let b = inner_parallel(&omega, &k, s.lambda + delta).unwrap().unwrap();
                let _ = aniso_perimeter(&b, &k).unwrap();
            }
        }
    }
    eprintln!("\nall fine");
}
