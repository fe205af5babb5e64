use ar_duality::cli;

fn main() {
    let report = cli::run(std::env::args_os());
    if report.exit_status == cli::EXIT_OK {
        println!("{}", report.text.trim_end());
    } else {
        eprintln!("{}", report.text.trim_end());
    }
    for line in &report.log {
        println!("  {line}");
    }
    std::process::exit(report.exit_status);
}
