use std::io::Write;

fn main() -> std::io::Result<()> {
    let path = std::env::temp_dir().join("sigmagb_batch_example.txt");
    let mut file = std::fs::File::create(&path)?;
    writeln!(file, "# one polynomial per line")?;
    for line in ["x^2+x+1", "x^2-3*x+1", "x^3-x^2+x-2", "2x"] {
        writeln!(file, "{line}")?;
    }
    drop(file);
    let path = path.to_string_lossy().into_owned();
    for json in [false, true] {
        let mut args = vec!["sigmagb", "phi1", "--batch", path.as_str()];
        if json {
            args.push("--json");
        }
        let out = sigmagb::cli::run(args);
        print!("{}", out.stdout);
        println!("exit {}\n", out.exit);
    }
    Ok(())
}
