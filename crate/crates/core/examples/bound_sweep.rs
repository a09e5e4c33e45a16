use qfft_core::*;
fn main() {
    let mut worst: (f64, String) = (0.0, String::new());
    let mut violations = 0;
    let mut built = 0;
    for w in 6..=16u32 {
        for a in [4u32, 8, 12] {
            for n in [4u64, 8, 16, 32, 64, 128] {
                for k in 0..n / 2 {
                    let c = build_butterfly(w, a, k, n).unwrap();
                    built += 1;
                    let count = c.stats().expanded_count;
                    let bound = butterfly_gate_bound(w, a);
                    let ratio = count as f64 / bound as f64;
                    if ratio > worst.0 {
                        worst = (ratio, format!("w={w} A={a} N={n} k={k}: {count}/{bound}"));
                    }
                    if count > bound { violations += 1; }
                }
            }
        }
    }
    println!("built {built}, violations: {violations}");
    println!("worst ratio: {:.4} at {}", worst.0, worst.1);
}
