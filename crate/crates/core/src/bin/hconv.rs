fn main() {
    std::process::exit(hconv::app::run(std::env::args_os()));
}
