use proptest::prelude::*;

use solar::instances::{instance_spec, prepare};
use solar::simulation::{resolution, NoiseStream};
use solar::thermal_loop::{receiver_absorb, PlantState, ReceiverSpec};

#[test]
fn solar6_day_conserves_energy_and_mass() {
    let s = instance_spec(6).unwrap();
    let prep = prepare(s, &s.x0, resolution(&s.window, 1.0));
    let run = prep.plant_run(&mut NoiseStream::quiet(), true).unwrap();
    assert!(run.converged);
    assert_eq!(run.trace.len(), 1440);
    let m0 = PlantState::initial(&prep.cycle_config(), prep.design.cold_min_t).total_mass();
    for (state, rec) in &run.trace {
        assert!(rec.energy_residual < 1e-6);
        assert!(((state.total_mass() - m0) / m0).abs() < 1e-9);
    }
    assert!(run.absorbed_kwh <= run.incident_kwh);
}

#[test]
fn noisy_plant_run_stays_consistent() {
    let s = instance_spec(4).unwrap();
    let prep = prepare(s, &s.x0, resolution(&s.window, 0.2));
    let noise = NoiseStream::new(s.noise, solar::detrng::seed_stream(5, 1));
    let run = prep.plant_run(&mut { noise }, false).unwrap();
    assert!(run.max_residual < 1e-6);
    assert!(run.mass_drift < 1e-9);
    assert!(run.unmet_kwh <= run.demand_kwh + 1e-9);
}

proptest! {
    #[test]
    fn receiver_never_creates_energy(
        h in 1.0..30.0f64,
        w in 1.0..30.0f64,
        tubes in 1u32..3000,
        d_in in 0.005..0.09f64,
        q in 0.0..5e5f64,
        outlet in 793.0..995.0f64,
    ) {
        let spec = ReceiverSpec { aperture_h: h, aperture_w: w, n_tubes: tubes, d_in, d_out: d_in + 0.005, insul_t: 0.3 };
        let r = receiver_absorb(&spec, q, 560.0, outlet);
        prop_assert!(r.absorbed_kw >= 0.0 && r.absorbed_kw <= q);
        prop_assert!(r.salt_flow >= 0.0);
    }
}
