mod common;

#[test]
fn corpus_verdicts() {
    for (name, spec, expected) in common::algebroid_corpus() {
        let r = spec.check();
        println!(
            "{name}: ham={} ax={} mumu={}",
            r.hamiltonian_route(),
            r.axiom_route(),
            r.mu_mu
        );
        assert!(r.routes_agree(), "{name}");
        assert_eq!(r.passed(), expected, "{name}");
    }
}
