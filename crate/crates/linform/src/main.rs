fn main() {
    std::process::exit(linform::cli::main_entry());
}
