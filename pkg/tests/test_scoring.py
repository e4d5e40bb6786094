import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vago.errors import EmptySentence, EmptyText
from vago.lexicon import Language, VaguenessCategory
from vago.scoring import (
    barometer_summary,
    report_to_dict,
    round_half_up_percent,
    score_sentence,
    score_text,
    score_text_autodetect,
)
from vago.textproc import split_sentences

from conftest import TOY_TEXT, TOY_TRIGGERS, make_lexicon

NEUTRAL_VOCAB = [
    "committee", "report", "meeting", "budget", "school", "road", "market",
    "company", "workers", "officials", "statement", "figures", "water",
    "energy", "project", "region", "council", "minister", "agency", "season",
    "weather", "traffic", "hospital", "students", "teachers", "election",
    "votes", "policy", "system", "network",
]


def naive_trigger_counts(surfaces, lexicon):
    """Independent O(n * |lexicon|) reimplementation of the match contract.

    At every position every entry is tried (no first-token index); the
    longest match wins and its tokens are consumed, exactly as documented
    for the scorer. Only the policy is shared with the implementation, not
    any code or data structure.
    """
    lowered = [s.lower() for s in surfaces]
    counts = {cat: 0 for cat in VaguenessCategory}
    i = 0
    while i < len(lowered):
        best = None
        for entry in lexicon.entries:
            n = len(entry.surface)
            if tuple(lowered[i : i + n]) == entry.surface:
                if best is None or n > len(best.surface):
                    best = entry
        if best is None:
            i += 1
        else:
            counts[best.category] += 1
            i += len(best.surface)
    return counts


def single_sentence(text):
    sentences = split_sentences(text)
    assert len(sentences) == 1
    return sentences[0]


class TestScoreSentence:
    def test_precise_sentence(self, en_lexicon):
        sa = score_sentence(single_sentence("Two plus two equals four"), en_lexicon)
        assert sa.r_vague == 0
        assert sa.r_subjective == 0
        assert sa.triggers == ()

    def test_mary_sentence(self, en_lexicon):
        sa = score_sentence(single_sentence("Mary left Paris around 2pm"), en_lexicon)
        assert sa.n_words == 5
        assert [(t.surface, t.category) for t in sa.triggers] == [
            ("around", VaguenessCategory.APPROXIMATION)
        ]
        assert sa.r_vague == Fraction(1, 5)
        assert sa.r_subjective == 0

    def test_most_sentence(self, en_lexicon):
        sa = score_sentence(
            single_sentence("Most sensational news articles are sometimes hard to believe"),
            en_lexicon,
        )
        assert sa.n_words == 9
        assert [(t.surface, t.category.value) for t in sa.triggers] == [
            ("most", "VG"), ("sensational", "VC"), ("sometimes", "VG"), ("hard", "VC"),
        ]
        assert sa.r_vague == Fraction(4, 9)
        assert sa.r_subjective == Fraction(2, 9)

    def test_empty_sentence_error(self, en_lexicon):
        sentence = single_sentence("!!!")
        with pytest.raises(EmptySentence):
            score_sentence(sentence, en_lexicon)

    def test_multiword_counts_once(self):
        lex = make_lexicon(("at least", "VG"))
        sa = score_sentence(single_sentence("there were at least three"), lex)
        assert sa.category_counts[VaguenessCategory.GENERALITY] == 1
        assert sa.triggers[0].token_span == (2, 2)

    def test_consumed_tokens_not_rematched(self):
        # "least" alone is also an entry; the two-token match must absorb it
        lex = make_lexicon(("at least", "VG"), ("least", "VD"))
        sa = score_sentence(single_sentence("at least ten people came"), lex)
        assert len(sa.triggers) == 1
        assert sa.triggers[0].surface == "at least"

    def test_repeat_policy(self):
        lex = make_lexicon(("some", "VG"))
        sentence = single_sentence("some words and some more words")
        per_occurrence = score_sentence(sentence, lex)
        assert per_occurrence.category_counts[VaguenessCategory.GENERALITY] == 2
        once = score_sentence(sentence, lex, count_repeats=False)
        assert once.category_counts[VaguenessCategory.GENERALITY] == 1

    def test_punctuation_denominator_flag(self, en_lexicon):
        sentence = single_sentence("Mary left Paris around 2pm.")
        default = score_sentence(sentence, en_lexicon)
        assert default.n_words == 5
        with_punct = score_sentence(sentence, en_lexicon, count_punctuation=True)
        assert with_punct.n_words == 6
        assert with_punct.r_vague == Fraction(1, 6)

    def test_trigger_char_span(self, en_lexicon):
        text = "Mary left Paris around 2pm"
        sa = score_sentence(single_sentence(text), en_lexicon)
        start, end = sa.triggers[0].char_span
        assert text[start:end] == "around"

    def test_subjective_never_exceeds_vague(self, en_lexicon):
        sa = score_sentence(
            single_sentence("some tall tales are hard to believe"), en_lexicon
        )
        assert sa.r_subjective <= sa.r_vague

    @settings(max_examples=60, deadline=None)
    @given(data=st.data())
    def test_brute_force_oracle(self, en_lexicon, data):
        # random sentences over a neutral vocabulary with planted triggers
        planted = data.draw(
            st.lists(
                st.sampled_from(
                    ["around", "some", "at least", "at most", "tall", "hard",
                     "sensational", "most", "sometimes", "should"]
                ),
                min_size=0,
                max_size=4,
            )
        )
        base = data.draw(
            st.lists(st.sampled_from(NEUTRAL_VOCAB), min_size=1, max_size=12)
        )
        tokens = list(base)
        for surface in planted:
            pos = data.draw(st.integers(0, len(tokens)))
            for tok in reversed(surface.split()):
                tokens.insert(pos, tok)
        sentence = single_sentence(" ".join(tokens))
        sa = score_sentence(sentence, en_lexicon)
        assert sa.category_counts == naive_trigger_counts(sentence.surfaces, en_lexicon)
        assert sa.n_words == len(tokens)


class TestScoreText:
    def test_toy_text(self, en_lexicon):
        report = score_text(TOY_TEXT, en_lexicon)
        assert report.n_sentences == 3
        assert report.r_vague_text == Fraction(2, 3)
        assert report.r_subjective_text == Fraction(1, 3)
        assert [(t.surface, t.category) for t in report.triggers] == TOY_TRIGGERS

    def test_single_precise_sentence(self, en_lexicon):
        report = score_text("Two plus two equals four.", en_lexicon)
        assert report.r_vague_text == 0
        assert report.r_subjective_text == 0

    def test_duplicated_factual_sentence(self, en_lexicon):
        text = " ".join(["Mary left Paris around 2pm."] * 4)
        report = score_text(text, en_lexicon)
        assert report.n_sentences == 4
        assert report.r_vague_text == 1
        assert report.r_subjective_text == 0

    def test_empty_text_error(self, en_lexicon):
        with pytest.raises(EmptyText):
            score_text("", en_lexicon)
        with pytest.raises(EmptyText):
            score_text("   \n  ", en_lexicon)

    def test_punctuation_only_text_error(self, en_lexicon):
        with pytest.raises(EmptyText):
            score_text("... !!!", en_lexicon)

    def test_subjective_le_vague_per_text(self, en_lexicon):
        report = score_text(TOY_TEXT, en_lexicon)
        assert report.r_subjective_text <= report.r_vague_text

    def test_monotonicity_appending_subjective_sentence(self, en_lexicon):
        base = score_text(TOY_TEXT, en_lexicon)
        extended = score_text(TOY_TEXT + " The plan seemed idiotic to everyone.", en_lexicon)
        base_subj = base.r_subjective_text * base.n_sentences
        ext_subj = extended.r_subjective_text * extended.n_sentences
        assert ext_subj >= base_subj

    def test_determinism(self, en_lexicon):
        a = report_to_dict(score_text(TOY_TEXT, en_lexicon))
        b = report_to_dict(score_text(TOY_TEXT, en_lexicon))
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    def test_autodetect_language(self, en_lexicon, fr_lexicon):
        lexicons = {Language.EN: en_lexicon, Language.FR: fr_lexicon}
        report = score_text_autodetect(
            "Le projet est presque fini et certains le trouvent beau.", lexicons
        )
        assert report.language is Language.FR
        assert report.r_vague_text == 1

    def test_french_lexicon_used_for_french(self, fr_lexicon):
        report = score_text("Le batiment est presque fini.", fr_lexicon)
        assert [t.surface for t in report.triggers] == ["presque"]


class TestBarometers:
    def test_toy_ratios(self, en_lexicon):
        report = score_text(TOY_TEXT, en_lexicon)
        assert barometer_summary(report) == (67, 33)

    def test_zero(self, en_lexicon):
        report = score_text("Two plus two equals four.", en_lexicon)
        assert barometer_summary(report) == (0, 0)

    def test_full(self, en_lexicon):
        report = score_text("The plan is hard. It is all sensational.", en_lexicon)
        assert barometer_summary(report) == (100, 100)

    @pytest.mark.parametrize(
        "ratio,expected",
        [
            (Fraction(2, 3), 67),
            (Fraction(1, 3), 33),
            (Fraction(1, 2), 50),
            (Fraction(1, 200), 1),  # 0.5% rounds half-up
            (Fraction(3, 200), 2),  # 1.5% rounds half-up
            (Fraction(0), 0),
            (Fraction(1), 100),
        ],
    )
    def test_half_up_rounding(self, ratio, expected):
        assert round_half_up_percent(ratio) == expected


class TestReportJson:
    def test_schema(self, en_lexicon):
        body = report_to_dict(score_text(TOY_TEXT, en_lexicon))
        assert body["language"] == "EN"
        assert body["n_sentences"] == 3
        assert body["r_vague"] == {"num": 2, "den": 3, "value": pytest.approx(2 / 3)}
        assert body["r_subjective"]["num"] == 1
        assert len(body["sentences"]) == 3
        first = body["sentences"][0]
        assert first["n_words"] == 9
        assert first["triggers"][0]["surface"] == "most"
        assert first["triggers"][0]["category"] == "VG"
        span = first["triggers"][0]["char_span"]
        assert TOY_TEXT[span[0] : span[1]].lower() == "most"
