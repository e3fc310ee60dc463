from fractions import Fraction
from pathlib import Path

import pytest

from ncsos_workbench.config import ReductionConfig, SolverConfig, load_config


def test_default_config() -> None:
    config = load_config()
    r = config.reduction
    assert (r.C, r.k, r.Lambda, r.D) == (16, 4, 64, 8)
    assert r.Lambda_tilde == 6 * 8 * 64
    assert r.k_prime == 5
    assert r.Gamma == 2 * (16 + 25)
    assert r.Gamma_tilde == 8 * 8 * 82
    assert r.d_s(2) == 8
    assert config.solver == SolverConfig()


def test_penalties_and_bound() -> None:
    r = ReductionConfig()
    assert r.alpha_penalty(1) == Fraction(1, 3072**2)
    assert r.beta_penalty(2) == Fraction(1, 5248**2 * 2**10)
    assert r.size_bound(2, 1) == 16 * 4**4


def test_line_form_and_rationals(tmp_path: Path) -> None:
    path = tmp_path / "consts.cfg"
    path.write_text("C = 3/2\nk = 2\nsolver.tolerance = 1e-6\n")
    config = load_config(path)
    assert config.reduction.C == Fraction(3, 2)
    assert config.reduction.k_prime == 3
    assert config.solver.tolerance == 1e-6


def test_yaml_overrides_derived(tmp_path: Path) -> None:
    path = tmp_path / "c.yaml"
    path.write_text("Lambda_tilde: 10\nsolver:\n  max_basis: 20\n")
    config = load_config(path)
    assert config.reduction.Lambda_tilde == 10
    assert config.solver.max_basis == 20


@pytest.mark.parametrize(
    "text",
    ["C: -1\n", "k: 3/2\n", "bogus: 1\n", "solver:\n  nope: 1\n", "solver:\n  tolerance: 1.0\n"],
)
def test_invalid_configs(tmp_path: Path, text: str) -> None:
    path = tmp_path / "bad.yaml"
    path.write_text(text)
    with pytest.raises(ValueError):
        load_config(path)
