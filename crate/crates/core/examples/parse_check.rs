fn main() {
    for path in std::env::args().skip(1) {
        let src = std::fs::read_to_string(&path).unwrap();
        match scenelua::lang::parse_source(&src) {
            Ok(_) => println!("{path}: ok"),
            Err(e) => println!("{path}: {e}"),
        }
    }
}
