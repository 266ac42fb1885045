fn main() {
    std::process::exit(pbr::cli::run());
}
