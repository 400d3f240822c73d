fn main() {
    let code = aurellion::cli::run(
        std::env::args_os(),
        &mut std::io::stdin().lock(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
        &|key| std::env::var(key).ok(),
    );
    std::process::exit(code);
}
