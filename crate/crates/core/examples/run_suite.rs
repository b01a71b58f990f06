fn main() {
    let t = std::time::Instant::now();
    for i in deco_core::suite::run_suite(deco_core::suite::Scale::Full) {
        println!("{}", i.line());
    }
    eprintln!("{:?}", t.elapsed());
}
