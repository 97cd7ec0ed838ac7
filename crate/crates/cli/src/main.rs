fn main() {
    eprintln!("uqtwist: command-line interface not yet wired up");
    std::process::exit(2);
}
