//! Every runnable example also runs as a test.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run_example().expect(concat!("example ", stringify!($name)));
        }
    };
}

example!(posets);
example!(homology);
example!(cohen_macaulay);
example!(noncrossing);
example!(injective_words);
example!(fiber_theorems);
example!(constructibility);
example!(acceptance_suite);
example!(command_line);
