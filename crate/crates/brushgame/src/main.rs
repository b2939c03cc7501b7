use std::io;

fn main() {
    let code = brushgame::cli::dispatch(std::env::args().collect(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
