fn main() {
    env_logger::init();
    std::process::exit(l2lab::lab::cli_main(std::env::args_os()));
}
