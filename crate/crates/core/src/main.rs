fn main() {
    std::process::exit(prim_lattice::cli::run(std::env::args_os()));
}
