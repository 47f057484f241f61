"""Smoke test for the Python extension.

Build first:  cargo build -p stokes-gauss-py --features extension-module
Then:         python3 python/smoke_test.py
"""

import importlib.util
import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    for profile in ("release", "debug"):
        for name in ("libstokes_gauss_py.so", "libstokes_gauss_py.dylib"):
            lib = ROOT / "target" / profile / name
            if lib.exists():
                tmp = pathlib.Path(tempfile.mkdtemp()) / "stokes_gauss_py.so"
                shutil.copy(lib, tmp)
                spec = importlib.util.spec_from_file_location("stokes_gauss_py", tmp)
                mod = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(mod)
                return mod
    sys.exit("extension not built; run cargo build -p stokes-gauss-py --features extension-module")


def main():
    sg = load_module()

    code, out = sg.run(["gen-random", "--ranks", "2,1", "--seed", "5", "--aligned"])
    assert code == 0, out
    doc = json.loads(out)
    assert doc["kind"] == "stokes-matrices" and doc["payload"]["field"] == "Q"
    assert sg.validate(out) == []

    code, rep = sg.run(["validate", "-"], out)
    assert code == 0 and json.loads(rep)["payload"]["valid"] is True

    assert sg.rigidity(out) > 2

    there = sg.laplace(out)
    back = sg.laplace(there, inverse=True)
    assert back == sg.filtrations(out)

    report = json.loads(sg.verify_laplace(out))
    assert report["payload"]["pass"] is True, report

    try:
        sg.validate('{"kind": "stokes-matrices", "version": "1", "payload": {}}')
    except ValueError as e:
        assert "ParseError" in str(e)
    else:
        raise AssertionError("malformed document accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
