import json
import logging
from typing import Tuple

from .bounds import SetPairSystem
from .exceptions import UsageError
from .family import SetFamily

logger = logging.getLogger("setfam")


def read_json(path: str):
    try:
        with open(path, "r") as f:
            return json.load(f)
    except FileNotFoundError:
        raise UsageError(f"Witness file {path} does not exist.")
    except json.JSONDecodeError as err:
        raise UsageError(f"Witness file {path} is not valid JSON: {err}")


def from_json(cls, path: str) -> SetFamily:
    """Load a family stored as {"n": .., "k": .., "sets": [[..], ..]}."""
    fam = cls.from_dict(read_json(path))
    logger.info(f"Loaded a family of {len(fam)} {fam.k}-sets from {path}.")
    return fam


def load_family(path: str) -> SetFamily:
    return from_json(SetFamily, path)


def load_pair(path: str) -> Tuple[SetFamily, SetFamily]:
    """Load a pair stored as {"A": {family}, "B": {family}}."""
    data = read_json(path)
    if not isinstance(data, dict) or "A" not in data or "B" not in data:
        raise UsageError(f'Pair file {path} needs keys "A" and "B".')
    a_fam = SetFamily.from_dict(data["A"])
    b_fam = SetFamily.from_dict(data["B"])
    if a_fam.n != b_fam.n:
        raise UsageError(
            f"Pair file {path} mixes universes [{a_fam.n}] and [{b_fam.n}]."
        )
    logger.info(
        f"Loaded a pair of families with {len(a_fam)} and {len(b_fam)} "
        f"sets from {path}."
    )
    return a_fam, b_fam


def load_set_pair_system(path: str) -> SetPairSystem:
    """Load {"n": .., "a": .., "b": .., "pairs": [[[A], [B]], ..]}."""
    system = SetPairSystem.from_dict(read_json(path))
    logger.info(f"Loaded a set-pair system of {len(system)} pairs.")
    return system
