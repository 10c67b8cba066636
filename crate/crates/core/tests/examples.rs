macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run().expect("example runs");
        }
    };
}

example!(word_algebra);
example!(extended_metric);
example!(graev_norm);
example!(abelian_norm);
example!(frink_chain);
example!(fine_quasi_uniformity);
example!(factorization);
example!(group_chains);
example!(extension);
