//! Runs every program under `examples/` so they cannot rot.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run().expect(concat!(stringify!($name), " failed"));
        }
    };
}

example!(well_defined);
example!(spike_train);
example!(firing_rate);
example!(displacement);
example!(discontinuities);
example!(almost_periods);
example!(stepanov_to_displacement);
example!(limit_periodic);
example!(isi);
