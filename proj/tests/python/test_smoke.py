import math

import numpy as np
import pytest

import teleqec


def test_pauli_algebra():
    assert teleqec.multiply("X", 0, "Z", 0) == ("Y", 0)
    assert teleqec.multiply("Z", 0, "X", 0) == ("Y", 2)
    assert not teleqec.commutes("X", "Z")
    assert teleqec.commutes("XX", "ZZ")
    assert teleqec.nu("YYY") == 3
    with pytest.raises(teleqec.PauliParseError):
        teleqec.nu("Q")


def test_five_qubit_code():
    code = teleqec.Code.library("five_qubit")
    assert (code.n, code.k) == (5, 1)
    assert code.min_distance() == 3
    assert code.syndrome("IIIII") == [0, 0, 0, 0]
    assert code.is_erasure_correctable([0, 1])
    assert not code.is_erasure_correctable([0, 1, 2])
    exact = code.logical_erasure_rate_exact(0.3)
    mc = code.logical_erasure_rate(0.3, 20000, 5)
    assert abs(mc["rate"] - exact) < 4 * math.sqrt(exact * (1 - exact) / 20000)


def test_invalid_code_is_rejected():
    with pytest.raises(teleqec.CodeValidationError):
        teleqec.Code.from_rows(["XI", "ZI"])


def test_bell_pair_has_infinite_distance():
    assert math.isinf(teleqec.Code.library("bell_pair").min_distance())


def test_dense_teleport_matches_direct_projection():
    rng = np.random.default_rng(3)
    code = teleqec.Code.from_rows(["ZZ"])
    # Random superposition of |00> and |11>, both in the +1 eigenspace of ZZ.
    a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
    amps = np.array([a, 0, 0, b]) / math.hypot(abs(a), abs(b))
    result = teleqec.dense_teleport(code, list(amps), "XI", 11)
    assert result["syndrome"] == [1]
    assert result["direct_probability"] > 0.999999
    assert result["fidelity"] > 1 - 1e-9


def test_rate_formulas():
    x = 1 - 1 / math.sqrt(2)
    assert abs(teleqec.threshold_curve_point(x) - x) < 1e-12
    assert abs(teleqec.erasure_effective_rate(0.1, 0.2) - 0.28) < 1e-12
    assert abs(teleqec.depolarizing_effective_rate(0.1, 0.2, 0) - teleqec.depolarizing_oracle_rate(0.1, 0.2, 0)) < 1e-12
    assert teleqec.concatenated_rate(math.exp(-5.0), 6, 1) <= teleqec.concatenation_bound(5, 6, 1.0)


def test_cli_is_deterministic():
    args = ["sweep", "--model", "erasure", "--code", "five_qubit", "--em", "0.1", "--eb", "0.1", "--trials", "500",
            "--seed", "4"]
    first = teleqec.run_cli(args)
    assert first[0] == 0
    assert first == teleqec.run_cli(args)
    assert teleqec.run_cli([])[0] == 2
