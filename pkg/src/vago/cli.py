"""Command-line interface tying the scorer, classifier, and analyses together.

Exit codes: 0 success, 1 operational failure (bad file, degenerate data,
failed check), 2 usage error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import click

from . import analysis
from .analysis import (
    SyntheticSpec,
    candidates_to_tsv,
    evaluate,
    expansion_candidates,
    generate_synthetic_corpus,
    ingest_corpus,
    manifest_json,
    vagueness_bias_study,
    word_cam_table,
    word_table_text,
)
from .clf import (
    ModelConfig,
    TrainOptions,
    load_checkpoint,
    predict,
    run_gradient_checks,
    save_checkpoint,
    train,
)
from .embeddings import DEFAULT_DIMENSION, EmbeddingTable, load_vectors_file
from .errors import VagoError
from .lexicon import Language, load_builtin_lexicon, load_lexicon_file
from .scoring import barometer_summary, report_to_dict, score_text
from .service import ServiceConfig, load_config, run_server
from .textproc import detect_language

GRADCHECK_TOLERANCE = 1e-4


def _read_input(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    return Path(source).read_text(encoding="utf-8")


def _load_table(
    embeddings: Optional[str], dim: int, seed: int
) -> EmbeddingTable:
    if embeddings:
        return load_vectors_file(embeddings)
    return EmbeddingTable(dim, oov_policy="hashed", seed=seed)


def _load_model(path: str):
    return load_checkpoint(Path(path).read_bytes())


def _load_corpus(path, format, text_col, label_col, source_col, id_col):
    column_map = {}
    if text_col:
        column_map["text"] = text_col
    if label_col:
        column_map["label"] = label_col
    if source_col:
        column_map["source"] = source_col
    if id_col:
        column_map["id"] = id_col
    return ingest_corpus(path, format=format, column_map=column_map)


def _lexicon_for(lang: str, lexicon_path: Optional[str]):
    if lexicon_path:
        return load_lexicon_file(lexicon_path)
    return load_builtin_lexicon(Language(lang.upper()))


corpus_options = [
    click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True)),
    click.option("--format", "corpus_format", default="jsonl", type=click.Choice(["jsonl", "csv"])),
    click.option("--text-col", default=None, help="CSV column holding the text"),
    click.option("--label-col", default=None),
    click.option("--source-col", default=None),
    click.option("--id-col", default=None),
]

model_options = [
    click.option("--model", "model_path", required=True, type=click.Path(exists=True)),
    click.option("--embeddings", default=None, type=click.Path(exists=True)),
    click.option("--dim", default=DEFAULT_DIMENSION, show_default=True),
]


def add_options(options):
    def wrap(fn):
        for option in reversed(options):
            fn = option(fn)
        return fn

    return wrap


@click.group()
def cli():
    """Text vagueness scoring and explainable bias classification."""


@cli.command()
@click.argument("source", default="-")
@click.option("--lang", default=None, type=click.Choice(["EN", "FR", "en", "fr"]))
@click.option("--lexicon", "lexicon_path", default=None, type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
@click.option("--seed", default=0, hidden=True)
@click.option("--config", default=None, hidden=True)
def analyze(source, lang, lexicon_path, as_json, seed, config):
    """Score a text file (or '-' for stdin) for vagueness and subjectivity."""
    text = _read_input(source)
    if lang is None:
        language, confidence = detect_language(text)
    else:
        language, confidence = Language(lang.upper()), None
    lexicon = _lexicon_for(language.value, lexicon_path)
    report = score_text(text, lexicon)
    vague_pct, opinion_pct = barometer_summary(report)
    if as_json:
        body = report_to_dict(report)
        body["barometers"] = {"vague_pct": vague_pct, "opinion_pct": opinion_pct}
        click.echo(json.dumps(body, ensure_ascii=False))
        return
    click.echo(f"language: {language.value}"
               + (f" (confidence {confidence:.2f})" if confidence is not None else ""))
    click.echo(f"sentences: {report.n_sentences}")
    click.echo(f"vague barometer:   {vague_pct:3d}%  ({report.r_vague_text})")
    click.echo(f"opinion barometer: {opinion_pct:3d}%  ({report.r_subjective_text})")
    for idx, sa in enumerate(report.sentence_analyses):
        if not sa.triggers:
            continue
        start, end = sa.sentence.source_span
        click.echo(f"  sentence {idx + 1}: {text[start:end]!r}")
        for t in sa.triggers:
            click.echo(f"    - {t.surface!r} [{t.category.label}]")


@cli.command()
@click.option("--host", default=None)
@click.option("--port", default=None, type=int)
@click.option("--config", default=None, type=click.Path(exists=True))
@click.option("--checkpoint", default=None, type=click.Path(exists=True))
@click.option("--embeddings", default=None, type=click.Path(exists=True))
@click.option("--lexicon-dir", default=None, type=click.Path(exists=True))
@click.option("--seed", default=0, hidden=True)
def serve(host, port, config, checkpoint, embeddings, lexicon_dir, seed):
    """Run the HTTP analysis service."""
    service_config = load_config(config) if config else ServiceConfig()
    if host is not None:
        service_config.host = host
    if port is not None:
        service_config.port = port
    if checkpoint is not None:
        service_config.checkpoint_path = checkpoint
    if embeddings is not None:
        service_config.embeddings_path = embeddings
    if lexicon_dir is not None:
        service_config.lexicon_dir = lexicon_dir
    run_server(service_config)


@cli.command(name="train")
@add_options(corpus_options)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--embeddings", default=None, type=click.Path(exists=True))
@click.option("--dim", default=DEFAULT_DIMENSION, show_default=True)
@click.option("--epochs", default=20, show_default=True)
@click.option("--batch-size", default=32, show_default=True)
@click.option("--learning-rate", default=1e-3, show_default=True)
@click.option("--val-fraction", default=0.1, show_default=True)
@click.option("--max-tokens", default=512, show_default=True)
@click.option("--layers", default=3, show_default=True)
@click.option("--kernels", default=128, show_default=True)
@click.option("--kernel-size", default=5, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--config", default=None, hidden=True)
@click.option("--json", "as_json", is_flag=True)
def train_cmd(
    corpus_path, corpus_format, text_col, label_col, source_col, id_col,
    out_path, embeddings, dim, epochs, batch_size, learning_rate,
    val_fraction, max_tokens, layers, kernels, kernel_size, seed, config,
    as_json,
):
    """Train the convolutional classifier and write a checkpoint."""
    corpus = _load_corpus(corpus_path, corpus_format, text_col, label_col, source_col, id_col)
    table = _load_table(embeddings, dim, seed)
    model_config = ModelConfig(
        n_layers=layers,
        kernels_per_layer=kernels,
        kernel_size=kernel_size,
        embed_dim=table.dimension,
    )
    options = TrainOptions(
        epochs=epochs,
        batch_size=batch_size,
        learning_rate=learning_rate,
        seed=seed,
        max_tokens=max_tokens,
        val_fraction=val_fraction,
    )
    params, log = train(model_config, corpus, table, options)
    Path(out_path).write_bytes(save_checkpoint(params))
    entries = [
        {"epoch": e.epoch, "loss": e.train_loss, "val_f1": e.val_f1}
        for e in log.epochs
    ]
    if as_json:
        click.echo(json.dumps({"checkpoint": str(out_path), "epochs": entries}))
        return
    for e in entries:
        f1 = "n/a" if e["val_f1"] is None else f"{e['val_f1']:.3f}"
        click.echo(f"epoch {e['epoch']:3d}  loss {e['loss']:.4f}  val_f1 {f1}")
    click.echo(f"checkpoint written to {out_path}")


@cli.command(name="predict")
@click.argument("source", default="-")
@add_options(model_options)
@click.option("--seed", default=0, hidden=True)
@click.option("--config", default=None, hidden=True)
@click.option("--json", "as_json", is_flag=True)
def predict_cmd(source, model_path, embeddings, dim, seed, config, as_json):
    """Classify a text file (or stdin) and print the per-token activations."""
    text = _read_input(source)
    params = _load_model(model_path)
    table = _load_table(embeddings, params.config.embed_dim, seed)
    bias_score, cam, tokens = predict(params, text, table)
    if as_json:
        click.echo(
            json.dumps(
                {
                    "bias_score": bias_score,
                    "tokens": [t.surface for t in tokens],
                    "cam_scores": [float(s) for s in cam.scores],
                }
            )
        )
        return
    click.echo(f"bias score: {bias_score:.4f}")
    for token, score in zip(tokens, cam.scores):
        click.echo(f"  {token.surface:<20} {score:+.4f}")


@cli.command(name="evaluate")
@add_options(corpus_options)
@add_options(model_options)
@click.option("--seed", default=0, hidden=True)
@click.option("--config", default=None, hidden=True)
@click.option("--json", "as_json", is_flag=True)
def evaluate_cmd(
    corpus_path, corpus_format, text_col, label_col, source_col, id_col,
    model_path, embeddings, dim, seed, config, as_json,
):
    """Evaluate a checkpoint on a labeled corpus."""
    corpus = _load_corpus(corpus_path, corpus_format, text_col, label_col, source_col, id_col)
    params = _load_model(model_path)
    table = _load_table(embeddings, params.config.embed_dim, seed)
    report = evaluate(params, corpus, table)
    if as_json:
        click.echo(json.dumps(report.as_dict()))
        return
    m = report.metrics
    click.echo(
        f"F1 {m.f1:.4f}  precision {m.precision:.4f}  "
        f"recall {m.recall:.4f}  accuracy {m.accuracy:.4f}  (n={m.n})"
    )
    for source_name, summary in sorted(report.per_source.items()):
        click.echo(
            f"  {source_name or '(no source)':<16} median {summary.median:.3f} "
            f"quartiles [{summary.lower_quartile:.3f}, {summary.upper_quartile:.3f}]"
        )


@cli.command(name="study")
@add_options(corpus_options)
@add_options(model_options)
@click.option("--lang", default="EN", type=click.Choice(["EN", "FR", "en", "fr"]))
@click.option("--lexicon", "lexicon_path", default=None, type=click.Path(exists=True))
@click.option("--seed", default=0, hidden=True)
@click.option("--config", default=None, hidden=True)
@click.option("--json", "as_json", is_flag=True)
def study_cmd(
    corpus_path, corpus_format, text_col, label_col, source_col, id_col,
    model_path, embeddings, dim, lang, lexicon_path, seed, config, as_json,
):
    """Correlate classifier predictions with vagueness/subjectivity ratios."""
    corpus = _load_corpus(corpus_path, corpus_format, text_col, label_col, source_col, id_col)
    params = _load_model(model_path)
    table = _load_table(embeddings, params.config.embed_dim, seed)
    lexicon = _lexicon_for(lang, lexicon_path)
    report = vagueness_bias_study(params, corpus, lexicon, table)
    if as_json:
        click.echo(json.dumps(report.as_dict()))
        return
    click.echo(f"r(predicted biased, vague ratio)      = {report.vague.r:+.4f}  (n={report.vague.n})")
    click.echo(f"r(predicted biased, subjective ratio) = {report.subjective.r:+.4f}")
    click.echo(f"r(bias score, vague ratio)            = {report.vague_continuous.r:+.4f}")
    click.echo(f"r(bias score, subjective ratio)       = {report.subjective_continuous.r:+.4f}")


@cli.command(name="word-table")
@add_options(corpus_options)
@add_options(model_options)
@click.option("--lang", default="EN", type=click.Choice(["EN", "FR", "en", "fr"]))
@click.option("--lexicon", "lexicon_path", default=None, type=click.Path(exists=True))
@click.option("--min-occurrences", default=10, show_default=True)
@click.option("--pos", default="adj+adv", type=click.Choice(["adj+adv", "any"]), show_default=True)
@click.option("--limit", default=30, show_default=True, help="rows to print")
@click.option("--seed", default=0, hidden=True)
@click.option("--config", default=None, hidden=True)
@click.option("--json", "as_json", is_flag=True)
def word_table_cmd(
    corpus_path, corpus_format, text_col, label_col, source_col, id_col,
    model_path, embeddings, dim, lang, lexicon_path, min_occurrences, pos,
    limit, seed, config, as_json,
):
    """Per-word average activation table (most bias-inducing first)."""
    corpus = _load_corpus(corpus_path, corpus_format, text_col, label_col, source_col, id_col)
    params = _load_model(model_path)
    table = _load_table(embeddings, params.config.embed_dim, seed)
    lexicon = _lexicon_for(lang, lexicon_path)
    pos_filter = (analysis.ADJECTIVE, analysis.ADVERB) if pos == "adj+adv" else None
    rows = word_cam_table(
        params, corpus, lexicon, table,
        min_occurrences=min_occurrences, pos_filter=pos_filter,
    )
    rows = rows[:limit] if limit else rows
    if as_json:
        click.echo(json.dumps([r.as_dict() for r in rows]))
        return
    click.echo(word_table_text(rows), nl=False)


@cli.command(name="expand-lexicon")
@add_options(corpus_options)
@add_options(model_options)
@click.option("--lang", default="EN", type=click.Choice(["EN", "FR", "en", "fr"]))
@click.option("--lexicon", "lexicon_path", default=None, type=click.Path(exists=True))
@click.option("--top-n", default=20, show_default=True)
@click.option("--min-occurrences", default=10, show_default=True)
@click.option("--out", "out_path", default=None, type=click.Path())
@click.option("--seed", default=0, hidden=True)
@click.option("--config", default=None, hidden=True)
def expand_lexicon_cmd(
    corpus_path, corpus_format, text_col, label_col, source_col, id_col,
    model_path, embeddings, dim, lang, lexicon_path, top_n, min_occurrences,
    out_path, seed, config,
):
    """Propose new lexicon entries from high-activation non-lexicon words."""
    corpus = _load_corpus(corpus_path, corpus_format, text_col, label_col, source_col, id_col)
    params = _load_model(model_path)
    table = _load_table(embeddings, params.config.embed_dim, seed)
    lexicon = _lexicon_for(lang, lexicon_path)
    rows = word_cam_table(params, corpus, lexicon, table, min_occurrences=min_occurrences)
    tsv = candidates_to_tsv(expansion_candidates(rows, top_n=top_n))
    if out_path:
        Path(out_path).write_text(tsv, encoding="utf-8")
        click.echo(f"wrote {out_path}")
    else:
        click.echo(tsv, nl=False)


@cli.command(name="gen-corpus")
@click.option("--n-docs", default=2000, show_default=True)
@click.option("--bias-fraction", default=0.5, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--manifest-out", default=None, type=click.Path())
@click.option("--config", default=None, hidden=True)
def gen_corpus_cmd(n_docs, bias_fraction, seed, out_path, manifest_out, config):
    """Generate the synthetic corpus with planted class signals."""
    spec = SyntheticSpec(n_docs=n_docs, bias_fraction=bias_fraction, seed=seed)
    corpus = generate_synthetic_corpus(spec)
    Path(out_path).write_text(corpus.to_jsonl(), encoding="utf-8")
    if manifest_out:
        Path(manifest_out).write_text(manifest_json(corpus), encoding="utf-8")
    click.echo(f"wrote {len(corpus)} documents to {out_path}")


@cli.command(name="gradcheck")
@click.option("--models", "n_models", default=20, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--config", default=None, hidden=True)
@click.option("--json", "as_json", is_flag=True)
def gradcheck_cmd(n_models, seed, config, as_json):
    """Verify analytic gradients against finite differences."""
    worst = run_gradient_checks(n_models=n_models, seed=seed)
    ok = worst < GRADCHECK_TOLERANCE
    if as_json:
        click.echo(json.dumps({"max_relative_error": worst, "ok": ok}))
    else:
        click.echo(
            f"max relative error over {n_models} models: {worst:.3e} "
            f"({'OK' if ok else 'FAIL'} at {GRADCHECK_TOLERANCE:.0e})"
        )
    if not ok:
        raise VagoError("gradient check failed")


def main():
    try:
        cli.main(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.Abort:
        sys.exit(1)
    except (VagoError, OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
