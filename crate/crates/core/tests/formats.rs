use skolem::benchgen::{bphp_lexfirst_skolem, BphpParams, BphpRegime};
use skolem::formula::{emit_skolem, parse_skolem, SkolemFormat};

#[test]
fn both_formats_preserve_the_function() {
    for (k, m) in [(3, 1), (3, 2), (5, 2), (2, 3)] {
        let p = BphpParams::new(k, m, BphpRegime::Any).unwrap();
        let v = bphp_lexfirst_skolem(p);
        let n = v.inputs().len();
        for fmt in [SkolemFormat::GateList, SkolemFormat::AigerAscii] {
            let text = emit_skolem(&v, fmt);
            let back = parse_skolem(&text, fmt, v.inputs(), v.outputs()).unwrap();
            // gate lists are a fixed point of emit ∘ parse
            if fmt == SkolemFormat::GateList {
                assert_eq!(emit_skolem(&back, fmt), text);
            }
            for x in 0..1u64 << n {
                let bits: Vec<bool> = (0..n).map(|i| (x >> i) & 1 == 1).collect();
                assert_eq!(back.eval(&bits), v.eval(&bits), "k={k} m={m} {fmt:?}");
            }
        }
    }
}
