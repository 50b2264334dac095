//! Which view to measure for each application.
//!
//!     cargo run --example advisory [-- APPLICATION]

use flatjava::advisory::{advise, Application};

fn main() {
    match std::env::args().nth(1) {
        Some(name) => match name.parse::<Application>() {
            Ok(app) => println!("{}", advise(app)),
            Err(e) => {
                eprintln!("error: {e}");
                std::process::exit(2);
            }
        },
        None => {
            for app in Application::ALL {
                let a = advise(app);
                println!("{:<20} {}", app.as_str(), a.view);
            }
        }
    }
}
