import numpy as np
import pytest

from vago.lexicon import Language, Lexicon, LexiconEntry, VaguenessCategory, load_builtin_lexicon

# The three-sentence walkthrough text used across the scorer/service tests.
TOY_TEXT = (
    "Most sensational news articles are sometimes hard to believe. "
    "Two plus two equals four. "
    "Mary left Paris around 2pm."
)

TOY_TRIGGERS = [
    ("most", VaguenessCategory.GENERALITY),
    ("sensational", VaguenessCategory.COMBINATORIAL),
    ("sometimes", VaguenessCategory.GENERALITY),
    ("hard", VaguenessCategory.COMBINATORIAL),
    ("around", VaguenessCategory.APPROXIMATION),
]


@pytest.fixture(scope="session")
def en_lexicon() -> Lexicon:
    return load_builtin_lexicon(Language.EN)


@pytest.fixture(scope="session")
def fr_lexicon() -> Lexicon:
    return load_builtin_lexicon(Language.FR)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


def make_lexicon(*entries: tuple, language=Language.EN) -> Lexicon:
    """Build a lexicon from (surface, category[, pos]) tuples."""
    built = []
    for entry in entries:
        surface, category = entry[0], entry[1]
        pos = entry[2] if len(entry) > 2 else None
        built.append(
            LexiconEntry(
                tuple(surface.lower().split()),
                VaguenessCategory(category) if isinstance(category, str) else category,
                language,
                pos,
            )
        )
    return Lexicon(language, built)
