//! Regenerates the bundled world files under `worlds/`.

use std::path::PathBuf;

use care_sim::scenarios::{
    corridor_instance, dynamic_world, empty_corridor, exploration_world, DynamicScenario,
    CORRIDOR_INSTANCES, EXPLORATION_SEED,
};

fn main() -> care_sim::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("worlds");
    std::fs::create_dir_all(&dir).map_err(|source| care_sim::SimError::Write {
        path: dir.clone(),
        source,
    })?;
    let mut worlds = vec![
        ("exploration".to_string(), exploration_world(EXPLORATION_SEED)),
        ("corridor_empty".to_string(), empty_corridor()),
    ];
    for i in 0..CORRIDOR_INSTANCES {
        worlds.push((format!("corridor_{i:02}"), corridor_instance(i)));
    }
    for s in DynamicScenario::ALL {
        worlds.push((s.name().to_string(), dynamic_world(s)));
    }
    for (name, world) in worlds {
        let path = dir.join(format!("{name}.toml"));
        world.save(&path)?;
        println!("{}", path.display());
    }
    Ok(())
}
