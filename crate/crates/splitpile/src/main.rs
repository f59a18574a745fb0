use std::io::Write;

fn main() {
    let budget_env = std::env::var("SPLITPILE_BUDGET").ok();
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let code = splitpile::cli::run(std::env::args(), budget_env.as_deref(), &mut stdout, &mut stderr);
    let _ = stdout.flush();
    std::process::exit(code);
}
