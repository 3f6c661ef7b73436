use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR");
    let out_path = PathBuf::from(env::var("OUT_DIR").expect("OUT_DIR")).join("carter_linkage.h");

    let config = cbindgen::Config::from_file(PathBuf::from(&crate_dir).join("cbindgen.toml"))
        .expect("reading cbindgen.toml");
    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("generating the C header")
        .write_to_file(&out_path);

    // A unit test compares this generated header with the committed copy in
    // include/, so the two cannot drift apart silently.
    println!("cargo:rustc-env=CLK_GENERATED_HEADER={}", out_path.display());
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
