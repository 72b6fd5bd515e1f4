use pyo3::prelude::*;
use twistgt::twistgt as bindings;

#[test]
fn module_from_embedded_interpreter() {
    pyo3::append_to_inittab!(bindings);
    Python::initialize();
    Python::attach(|py| {
        py.run(
            cr#"
import json
from fractions import Fraction
import twistgt

cb = twistgt.ChevalleyBasis("C", 2)
assert cb.jacobi_residual() == 0
assert cb.highest_root() == [2, 1]

w = twistgt.TwistedModule("A", 1, lam=[Fraction(1, 3)])
v = {((2,), 0): Fraction(1)}
# e . f^{-3} = -3 (c + 4) f^{-4}
assert w.act("e1", v) == {((3,), 0): Fraction(-3) * (Fraction(1, 3) + 4)}

ff = twistgt.FreeField("A", 2, lam=[Fraction(1, 5), 2])
assert ff.q([1, 1]) == "0"
assert ff.p([1, 1]) == "-d[11]"

try:
    twistgt.TwistedModule("A", 2, sigma=[1], lam=[Fraction(1, 2), 0])
    raise AssertionError
except ValueError:
    pass

code, text = twistgt.run_job(json.dumps({
    "command": "lattice", "series": "A", "rank": 2, "sigma": [], "lambda": [],
    "alpha": "simple:1", "cutoff": 3, "depth": None, "seed": 0,
    "module": "twisted", "format": "json",
}))
assert code == 0 and json.loads(text)["result"]["lattice"]["predicted"] == "finite"
"#,
            None,
            None,
        )
        .unwrap();
    });
}
