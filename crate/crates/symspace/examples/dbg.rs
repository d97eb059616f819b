fn main() {
    let x = f64::from_bits(0x40023a33b1c71918);
    let text = format!("{x:.16e}");
    let back: f64 = text.parse().unwrap();
    eprintln!("x     = {} (bits {:016x})", x, x.to_bits());
    eprintln!("text  = {text}");
    eprintln!("back  = {} (bits {:016x})", back, back.to_bits());
    eprintln!("17-digit exact? {}", back == x);
    let y = 2.278418911827554f64;
    eprintln!("shortest {y} -> {:.16e} / {:e}", y, y);
}
