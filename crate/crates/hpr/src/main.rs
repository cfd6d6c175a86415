fn main() {
    std::process::exit(hpr::run(std::env::args_os()));
}
