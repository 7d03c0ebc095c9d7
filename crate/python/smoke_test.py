"""Smoke test for the autoeq extension module.

Build first:  maturin develop -m crates/python/Cargo.toml --release
"""

import math

import autoeq


def main():
    econ = autoeq.calibrate(1.0)
    assert 2.9 < econ.a_old < 3.1, econ
    base = econ.equilibrium()
    assert 18 < base.l_star < 22, base
    assert base.k_auto == 0.0

    gone = econ.equilibrium(a_auto=1.5)
    assert gone.l_star == 0.0 and gone.auto_share == 1.0
    assert math.isclose(gone.f_star, 1.5 * econ.k_bar, rel_tol=1e-12)

    brute = econ.with_a_auto(1.1).brute_force(100_000)
    fast = econ.equilibrium(1.1)
    assert fast.profit >= brute.profit * (1 - 1e-9)

    split = autoeq.optimal_capital_split(50.0, 20.0, 0.5, econ.a_old, 1.1)
    assert math.isclose(sum(split), 50.0)
    assert math.isclose(autoeq.c0_from_wmin(2.0, 0.5, 500.0), 1000.0)

    sweep = econ.sweep(0.0, 2.0, 201)
    assert len(sweep) == 201
    assert abs(sweep.transition_onset - 1.0) < 0.02
    assert 1.15 <= sweep.displacement_complete <= 1.25
    assert 0.35 <= sweep.drop_fraction <= 0.42
    assert abs(sweep.recovery_a_auto - sweep.f_pre / econ.k_bar) < 0.01
    assert sweep.to_csv().startswith("a_auto,l_star")

    try:
        autoeq.Economy(alpha=1.5, a_old=3.0)
    except ValueError:
        pass
    else:
        raise AssertionError("alpha=1.5 accepted")
    try:
        autoeq.calibrate(1e9)
    except RuntimeError:
        pass
    else:
        raise AssertionError("unreachable calibration target accepted")

    print(econ)
    print(sweep)
    print("smoke test ok")


if __name__ == "__main__":
    main()
