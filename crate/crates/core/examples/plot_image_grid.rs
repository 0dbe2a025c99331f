//! Writes SVG image-grid plots of three maps into the given directory
//! (default: the system temp directory).
//!
//! cargo run --example plot_image_grid [out-dir]

use hconv::app::plot::{render_svg, PlotSpec};
use hconv::families::{f_alpha_prefunction, slanted_halfplane_prefunction, Dilatation};
use hconv::{shear_construct, Direction, DiskMap, TruncatedSeries};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(Into::into).unwrap_or_else(std::env::temp_dir);
    let n = 256;
    let d = Direction::IMAGINARY_AXIS;
    let omega = Dilatation::monomial(1, Complex64::new(1.0, 0.0))?.series(n);
    let sheared = shear_construct(&f_alpha_prefunction(0.5, n)?, &omega, d)?;
    let maps: Vec<(&str, Box<dyn DiskMap>)> = vec![
        ("identity", Box::new(TruncatedSeries::z(n))),
        ("slanted0", Box::new(slanted_halfplane_prefunction(0.0, n)?)),
        ("f_alpha_shear", Box::new(sheared)),
    ];
    for (name, map) in maps {
        let svg = render_svg(map.as_ref(), &PlotSpec::new(name, d))?;
        let path = dir.join(format!("{name}.svg"));
        std::fs::write(&path, svg)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
