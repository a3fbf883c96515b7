#![no_main]

use std::sync::Arc;

use evokit::gp::{format_tree, parse_tree, FunctionSet, TerminalSet};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let functions = Arc::new(FunctionSet::default());
    let terminals = Arc::new(TerminalSet::default());
    if let Ok(tree) = parse_tree(text, &functions, &terminals) {
        let again =
            parse_tree(&format_tree(&tree), &functions, &terminals).expect("formatted tree parses");
        assert_eq!(tree, again);
        let _ = tree.execute_values(&[1.0, 2.0, 3.0]);
    }
});
