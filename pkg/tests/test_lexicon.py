import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from vago.errors import LexiconFormatError
from vago.lexicon import (
    Language,
    VaguenessCategory,
    builtin_lexicon_path,
    language_from_filename,
    load_builtin_lexicon,
    load_lexicon,
    parse_lexicon,
)

from conftest import make_lexicon


class TestCategories:
    def test_exactly_four(self):
        assert len(VaguenessCategory) == 4

    def test_subjective_split(self):
        assert not VaguenessCategory.APPROXIMATION.subjective
        assert not VaguenessCategory.GENERALITY.subjective
        assert VaguenessCategory.DEGREE.subjective
        assert VaguenessCategory.COMBINATORIAL.subjective

    def test_factual_is_complement(self):
        for cat in VaguenessCategory:
            assert cat.factual != cat.subjective

    def test_labels(self):
        assert VaguenessCategory.APPROXIMATION.label == "V_A"
        assert VaguenessCategory.COMBINATORIAL.label == "V_C"


class TestLoad:
    def test_basic_file(self):
        source = "around\tVA\nsome\tVG\ntall\tVD\nsensational\tVC\n"
        lex = load_lexicon(source, Language.EN)
        counts = lex.category_counts()
        assert counts == {
            VaguenessCategory.APPROXIMATION: 1,
            VaguenessCategory.GENERALITY: 1,
            VaguenessCategory.DEGREE: 1,
            VaguenessCategory.COMBINATORIAL: 1,
        }

    def test_multiword_entry(self):
        lex = load_lexicon("at least\tVG\n", Language.EN)
        entry = lex.get("at least")
        assert entry is not None
        assert entry.surface == ("at", "least")
        assert entry.category is VaguenessCategory.GENERALITY

    def test_comments_and_blank_lines_ignored(self):
        lex = load_lexicon("# header\n\naround\tVA\n", Language.EN)
        assert len(lex) == 1

    def test_pos_field(self):
        lex = load_lexicon("tall\tVD\tadjective\n", Language.EN)
        assert lex.get("tall").part_of_speech == "adjective"

    def test_surfaces_lowercased(self):
        lex = load_lexicon("Around\tVA\n", Language.EN)
        assert lex.get("around") is not None

    def test_unknown_category_tag(self):
        with pytest.raises(LexiconFormatError, match="line 2.*VX"):
            load_lexicon("around\tVA\nfoo\tVX\n", Language.EN)

    def test_malformed_line_number(self):
        with pytest.raises(LexiconFormatError, match="line 3"):
            load_lexicon("around\tVA\nsome\tVG\nbroken-line\n", Language.EN)

    def test_duplicate_entry_rejected(self):
        with pytest.raises(LexiconFormatError, match="duplicate"):
            load_lexicon("around\tVA\naround\tVA\n", Language.EN)

    def test_duplicate_differing_category_rejected(self):
        with pytest.raises(LexiconFormatError, match="duplicate"):
            load_lexicon("around\tVA\naround\tVG\n", Language.EN)

    def test_too_many_tokens(self):
        with pytest.raises(LexiconFormatError, match="max 5"):
            load_lexicon("a b c d e f\tVG\n", Language.EN)

    def test_too_many_fields(self):
        with pytest.raises(LexiconFormatError, match="line 1"):
            load_lexicon("around\tVA\tadv\textra\n", Language.EN)


class TestLookupLongest:
    def test_single_word(self, en_lexicon):
        entry, n = en_lexicon.lookup_longest(["around", "2pm"], 0)
        assert entry.surface_text == "around"
        assert entry.category is VaguenessCategory.APPROXIMATION
        assert n == 1

    def test_multiword_preferred(self, en_lexicon):
        entry, n = en_lexicon.lookup_longest(["at", "least", "three"], 0)
        assert entry.surface_text == "at least"
        assert n == 2

    def test_no_match(self, en_lexicon):
        assert en_lexicon.lookup_longest(["table"], 0) is None

    def test_case_insensitive(self, en_lexicon):
        entry, _ = en_lexicon.lookup_longest(["Around"], 0)
        assert entry.surface_text == "around"

    def test_longest_match_dominance(self):
        lex = make_lexicon(("at", "VG"), ("at least", "VG"))
        entry, n = lex.lookup_longest(["at", "least"], 0)
        assert n == 2

    def test_partial_multiword_no_match(self):
        lex = make_lexicon(("at least", "VG"))
        assert lex.lookup_longest(["at", "most"], 0) is None
        # suffix alone does not match either
        assert lex.lookup_longest(["least"], 0) is None

    def test_position_out_of_range(self, en_lexicon):
        with pytest.raises(IndexError):
            en_lexicon.lookup_longest(["around"], 1)

    @given(
        st.lists(
            st.sampled_from(["around", "at", "least", "most", "table", "word"]),
            min_size=1,
            max_size=8,
        ),
        st.data(),
    )
    def test_match_window_equals_surface(self, tokens, data):
        lex = make_lexicon(("around", "VA"), ("at least", "VG"), ("at most", "VG"))
        pos = data.draw(st.integers(min_value=0, max_value=len(tokens) - 1))
        hit = lex.lookup_longest(tokens, pos)
        if hit is not None:
            entry, n = hit
            assert tuple(t.lower() for t in tokens[pos : pos + n]) == entry.surface


class TestRoundTrip:
    def test_load_dump_load_identical(self, en_lexicon):
        dumped = en_lexicon.dumps()
        reloaded = parse_lexicon(dumped, Language.EN)
        assert reloaded == en_lexicon
        assert reloaded.dumps() == dumped


class TestBuiltinLexicons:
    @pytest.mark.parametrize("language", list(Language))
    def test_counts_match_manifest(self, language):
        # oracle: line-level scan of the shipped TSV, independent of the parser
        path = builtin_lexicon_path(language)
        per_category = {"VA": 0, "VG": 0, "VD": 0, "VC": 0}
        for line in path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            per_category[line.split("\t")[1]] += 1

        manifest = json.loads(
            (Path(__file__).parent.parent / "src/vago/data/lexicon_manifest.json").read_text()
        )[language.value]
        lex = load_builtin_lexicon(language)
        counts = {cat.value: n for cat, n in lex.category_counts().items()}
        assert counts == per_category
        assert counts == {k: manifest[k] for k in per_category}
        assert sum(counts.values()) == manifest["total"] == len(lex)

    def test_toy_trigger_words_present(self, en_lexicon):
        for word, category in [
            ("most", "VG"), ("sensational", "VC"), ("sometimes", "VG"),
            ("hard", "VC"), ("around", "VA"),
        ]:
            entry = en_lexicon.get(word)
            assert entry is not None, word
            assert entry.category.value == category

    def test_modal_should_flagged(self, en_lexicon):
        entry = en_lexicon.get("should")
        assert entry.category is VaguenessCategory.COMBINATORIAL
        assert entry.part_of_speech == "modal"


class TestFilenames:
    def test_language_from_filename(self):
        assert language_from_filename("foo/lexicon.en.tsv") is Language.EN
        assert language_from_filename("lexicon.fr.tsv") is Language.FR

    def test_bad_filename(self):
        with pytest.raises(LexiconFormatError):
            language_from_filename("lexicon.tsv")
