"""pytest fixtures."""
from pathlib import Path

import pytest

from equm.hyperreal import parse_literal
from equm.mixture import Lottery, LotterySpace
from equm.preference import UtilityModel

FIXTURES = Path(__file__).parent / "fixtures"


def model_of(**literals: str) -> UtilityModel:
    return UtilityModel({o: parse_literal(text) for o, text in literals.items()})


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def points():
    """Point masses on the outcomes P, Q and R."""
    return Lottery.point("P"), Lottery.point("Q"), Lottery.point("R")


@pytest.fixture
def space():
    return LotterySpace.of_outcomes(["P", "Q", "R"])


@pytest.fixture
def independence_model():
    """Infinitesimal stakes drowned by a standard consolation."""
    return model_of(P="2e1", Q="1e1", R="1")


@pytest.fixture
def continuity_model():
    return model_of(P="1", Q="2e1", R="1e1")


@pytest.fixture
def standard_model():
    return model_of(P="3", Q="2", R="1")
