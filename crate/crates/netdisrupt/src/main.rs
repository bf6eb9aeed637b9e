fn main() {
    std::process::exit(netdisrupt::cli::run());
}
