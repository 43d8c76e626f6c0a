"""Smoke test for the trilie_py extension.

Build first with `cargo build -p trilie-py --features extension-module`, then run
`python3 crates/py/python/smoke_test.py`. The script loads the freshly built shared
library from target/ unless trilie_py is already importable.
"""

import importlib.util
import json
import pathlib
import sys


def load():
    try:
        import trilie_py

        return trilie_py
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parents[3]
    for profile in ("release", "debug"):
        for name in ("libtrilie_py.so", "libtrilie_py.dylib", "trilie_py.dll"):
            lib = root / "target" / profile / name
            if lib.exists():
                spec = importlib.util.spec_from_file_location("trilie_py", lib)
                module = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(module)
                return module
    sys.exit("trilie_py not built; run cargo build -p trilie-py --features extension-module")


def main():
    t = load()

    t4 = t.Algebra.nilpotent(4)
    assert t4.dim == 6
    assert t4.count()["summary"] == "n_I = 2 (dim 6, rank 4)"
    assert t4.bracket("N_1_2", "N_2_4") == {"N_1_4": "1"}
    assert t4.verify("n_1_3*n_2_4 - n_1_4*n_2_3")["pass"]
    bad = t4.verify("n_1_2")
    assert not bad["pass"] and bad["residuals"]

    special = t.Algebra.l4(1, {"a12": 1, "a23": 0, "a34": -1})
    assert special.count()["count"] == 3
    generic = t.Algebra.l4(1, {"a12": "1/2", "a23": 2, "a34": 3})
    assert generic.count()["rank"] == 6

    again = t.Algebra.from_json(special.to_json())
    assert json.loads(again.to_json()) == json.loads(special.to_json())

    for family, kwargs in [
        ("l41-case3", {}),
        ("l42-case3", {"parameters": {"sigma12": "-5/3"}}),
        ("full-rank", {"m": 6}),
        ("diag-case1", {"diag": [1, 2, 0, -2, -1]}),
        ("t", {"m": 7}),
    ]:
        entry = t.invariants(family, **kwargs)
        assert len(entry.invariants) == entry.expected_count
        for inv in entry.invariants:
            assert entry.algebra.verify(inv)["pass"], (family, inv)
        assert entry.algebra.jacobian_rank(entry.invariants) == entry.expected_count

    try:
        t.invariants("l41-case1", parameters={"a23": 1})
    except ValueError as err:
        assert "condition" in str(err)
    else:
        raise AssertionError("expected a condition violation")

    assert t.normalize("n_1_2*n_2_3/n_1_2") == "n_2_3"
    print("trilie_py smoke test passed")


if __name__ == "__main__":
    main()
