fn main() {
    std::process::exit(symspace::cli::main_entry());
}
