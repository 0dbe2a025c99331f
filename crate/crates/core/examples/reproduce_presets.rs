//! Runs every reproduction preset with default options and prints the check
//! table; with an argument, writes the bundles under that directory.
//!
//! cargo run --release --example reproduce_presets [out-dir]

use hconv::app::presets::{run_preset, Preset, PresetOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1);
    for preset in Preset::ALL {
        let run = run_preset(preset, &PresetOptions::new(256))?;
        println!("{} ({}): exit {}", preset.id(), preset.summary(), run.exit_code());
        for c in &run.checks {
            println!(
                "  {:<28} {:<12} {:<7} value {:.6}",
                c.id,
                format!("{:?}", c.class),
                if c.report.pass { "pass" } else { "fail" },
                c.report.extremal_value
            );
        }
        if let Some(dir) = &out {
            run.write(&std::path::Path::new(dir).join(preset.id()))?;
        }
    }
    Ok(())
}
