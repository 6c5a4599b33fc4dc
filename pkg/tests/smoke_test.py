#!/usr/bin/env python3
"""
Smoke Test for pyfabgupta

Validates:
    - Package importability
    - CLI availability (--version, --help, command groups)
    - Normal forms and the wreath recursion on the generators
    - A radius-1 ball and its growth row
    - Config subsystem reads/writes (in a temporary PYFABGUPTA_HOME)

Runs in a few seconds; no cache directory is touched.
"""

import os
import subprocess
import sys
import tempfile

print("\n=== Smoke Test: pyfabgupta ===")

# ------------------------------------------------------------
# 1. Verify imports
# ------------------------------------------------------------
print("[1] Importing modules...")

try:
    import pyfabgupta
    import pyfabgupta.bounds
    import pyfabgupta.cli
    import pyfabgupta.config
    import pyfabgupta.errors
    import pyfabgupta.lemmas
    import pyfabgupta.metric_enum
    import pyfabgupta.seqcomb
    import pyfabgupta.torsion
    import pyfabgupta.tree_group
    import pyfabgupta.utils
    print("    ✔ Imports OK")
except Exception as exc:
    print("    ✘ Import failure:", exc)
    sys.exit(1)


# ------------------------------------------------------------
# 2. Validate CLI --version
# ------------------------------------------------------------
print("[2] Checking CLI version...")

try:
    out = subprocess.check_output(
        ["pyfabgupta", "--version"],
        stderr=subprocess.STDOUT,
        text=True
    )
    print("    ✔ Version OK:", out.strip())
except Exception as exc:
    print("    ✘ CLI version failed:", exc)
    sys.exit(1)


# ------------------------------------------------------------
# 3. Validate the wreath recursion on t
# ------------------------------------------------------------
print("[3] Checking t = <a, 1, t>...")

from pyfabgupta.tree_group import a_power, decompose, identity, normalize

try:
    d = decompose(normalize("t"))
    assert d.root == 0
    assert d.sections == (a_power(1), identity(), normalize("t"))
    print("    ✔ Recursion OK")
except Exception as exc:
    print("    ✘ Recursion failed:", exc)
    sys.exit(1)


# ------------------------------------------------------------
# 4. Validate a small ball
# ------------------------------------------------------------
print("[4] Enumerating the radius-1 ball...")

from pyfabgupta.metric_enum import enumerate_ball, growth

try:
    series = growth(enumerate_ball(1))
    assert series.gamma == [3, 21]
    assert series.delta[0] == 3
    print("    ✔ Ball OK:", series.gamma)
except Exception as exc:
    print("    ✘ Ball enumeration failed:", exc)
    sys.exit(1)


# ------------------------------------------------------------
# 5. Validate config subsystem reads/writes
# ------------------------------------------------------------
print("[5] Testing config subsystem...")

with tempfile.TemporaryDirectory() as home:
    env = dict(os.environ, PYFABGUPTA_HOME=home)
    try:
        subprocess.check_output(["pyfabgupta", "config", "set", "max_len", "4"], env=env, text=True)
        out = subprocess.check_output(["pyfabgupta", "config", "show"], env=env, text=True)
        assert "max_len:" in out and "4" in out
        print("    ✔ Config subsystem OK")
    except Exception as exc:
        print("    ✘ Config subsystem failed:", exc)
        sys.exit(1)


# ------------------------------------------------------------
# 6. Validate click command structure (no execution)
# ------------------------------------------------------------
print("[6] Checking CLI command groups...")

expected = [
    "config",
    "growth",
    "lemma",
    "bounds",
    "order",
    "portrait",
    "inject",
    "ball",
    "cache",
]

try:
    out = subprocess.check_output(
        ["pyfabgupta", "--help"],
        stderr=subprocess.STDOUT,
        text=True
    )
    for cmd in expected:
        if cmd not in out:
            raise AssertionError(f"Missing CLI command: {cmd}")

    print("    ✔ CLI command groups OK")
except Exception as exc:
    print("    ✘ CLI structure invalid:", exc)
    sys.exit(1)


print("\n=== ALL SMOKE TESTS PASSED ✔ ===\n")
