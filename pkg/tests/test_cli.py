import json
from typing import List, Tuple

import pytest

from polygonal import caterpillar, lattice_count, moment_polytope
from polygonal.cli import main
from polygonal.config import RunConfig
from polygonal.errors import InvalidArgumentError
from polygonal.verify import PENTAGON_CATERPILLAR


def run(capsys: pytest.CaptureFixture, argv: List[str]) -> Tuple[int, str, str]:
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out.strip(), err


@pytest.mark.cli
def test_triangulations(capsys: pytest.CaptureFixture) -> None:
    code, out, _ = run(capsys, ["triangulations", "--n", "5"])
    assert code == 0
    assert len(out.split("\n")) == 5
    code, out, _ = run(capsys, ["triangulations", "--n", "6", "--format", "json"])
    assert len(json.loads(out)["triangulations"]) == 14


@pytest.mark.cli
def test_reflexive(capsys: pytest.CaptureFixture) -> None:
    code, out, _ = run(
        capsys, ["polytope", "reflexive", "--n", "4", "--caterpillar", "--perimeter", "4"]
    )
    assert code == 0
    assert out == "true interior (2,2,2,1)"


@pytest.mark.cli
def test_lattice(capsys: pytest.CaptureFixture) -> None:
    code, out, _ = run(capsys, ["polytope", "lattice", "--n", "4"])
    assert code == 0
    assert int(out) == lattice_count(moment_polytope(caterpillar(4), 4))
    _, out, _ = run(capsys, ["polytope", "lattice", "--n", "4", "--dilate", "2"])
    assert int(out) == lattice_count(moment_polytope(caterpillar(4), 4), 2)


@pytest.mark.cli
def test_bending(capsys: pytest.CaptureFixture) -> None:
    code, out, _ = run(
        capsys,
        ["polytope", "bending", "--n", "5", "--gamma", "2,3;2,3,4", "--lengths", "rectangle"],
    )
    assert code == 0
    assert "vertex (3,2)" in out.split("\n")


@pytest.mark.cli
def test_gc_map(capsys: pytest.CaptureFixture) -> None:
    code, out, _ = run(capsys, ["gc", "map", "--n", "4", "--point", "2,2,2,1"])
    assert (code, out) == (0, "(2,3,1,2)")
    code, _, err = run(capsys, ["gc", "map", "--n", "4"])
    assert code == 2
    assert err.startswith("error:")


@pytest.mark.cli
def test_pluecker(capsys: pytest.CaptureFixture) -> None:
    code, out, _ = run(capsys, ["pluecker", "deform", "--n", "5"])
    assert code == 0
    assert tuple(out.split("\n")) == PENTAGON_CATERPILLAR
    _, out, _ = run(capsys, ["pluecker", "deform", "--n", "5", "--stage", "1"])
    assert out.split("\n")[0] == "t*Z12*Z34 - Z13*Z24 + Z14*Z23"


@pytest.mark.cli
def test_verify(capsys: pytest.CaptureFixture) -> None:
    code, out, _ = run(capsys, ["verify", "triangulations", "--n", "6"])
    assert code == 0
    assert out.startswith("PASS triangulations.catalan")
    code, out, _ = run(capsys, ["verify", "plmap", "--n", "4"])
    assert code == 0
    code, out, _ = run(capsys, ["verify", "plmap", "--n", "4", "--corrupt"])
    assert code == 1
    assert "FAIL plmap.path" in out


@pytest.mark.cli
def test_lift_pair(capsys: pytest.CaptureFixture) -> None:
    code, out, _ = run(
        capsys,
        ["verify", "lift", "--n", "5", "--from", "pentagon-rectangle", "--to", "caterpillar"],
    )
    assert code == 0
    assert "potential" in out


@pytest.mark.cli
def test_bad_input(capsys: pytest.CaptureFixture) -> None:
    assert run(capsys, ["triangulations", "--n", "2"])[0] == 2
    assert run(capsys, ["polytope", "reflexive", "--n", "4", "--perimeter", "7/2"])[0] == 2
    assert run(capsys, ["plmap", "derive", "--n", "5"])[0] == 2
    assert run(capsys, ["polytope", "hrep", "--n", "5", "--gamma", "pentagon-rectangle"])[0] == 0
    assert run(capsys, ["polytope", "hrep", "--n", "6", "--gamma", "pentagon-rectangle"])[0] == 2


@pytest.mark.cli
def test_json_deterministic(capsys: pytest.CaptureFixture) -> None:
    argv = ["verify", "identities", "--samples", "50", "--seed", "7", "--format", "json"]
    _, first, _ = run(capsys, argv)
    _, second, _ = run(capsys, argv)
    assert first == second
    assert json.loads(first)["passed"] is True


@pytest.mark.cli
def test_config() -> None:
    config = RunConfig.from_dict({"n": 5})
    assert config.perimeter == 5
    with pytest.raises(InvalidArgumentError):
        RunConfig.from_dict({"n": 5, "colour": "red"})
    with pytest.raises(InvalidArgumentError):
        RunConfig(n=5, perimeter=0)
    with pytest.raises(InvalidArgumentError):
        RunConfig(n=5, format="yaml")
