fn main() {
    let (code, out) = wreathcover::cli::run(std::env::args_os());
    if code == wreathcover::cli::EXIT_INVALID_INPUT {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
