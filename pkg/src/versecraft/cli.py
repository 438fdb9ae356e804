"""Command-line interface: training, analysis, generation, serving."""
from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import click

from . import neural, ranker
from .artifacts import (LSA_FILE, NN_FILE, ModelBundle, load_bundle,
                        rank_model_file)
from .corpus import ingest, load_corpus, split_by_artist
from .evaluation import (NextLineEvaluator, build_queries, next_line_eval,
                         preference_agreement)
from .features import TIER_FEATURES, fit_lsa_on_lines
from .generator import GenerationConfig, generate, suggest
from .rhyme import corpus_rhyme_report, density_histogram
from .service import read_feedback_log


@click.group()
@click.option("--corpus", "corpus_path", type=click.Path(), default=None,
              help="Corpus JSONL file (default: packaged sample corpus).")
@click.option("--models-dir", type=click.Path(), default="models",
              help="Directory holding trained model files.")
@click.option("--seed", type=int, default=0, help="Random seed.")
@click.pass_context
def main(ctx, corpus_path, models_dir, seed):
    """versecraft: retrieval-based lyrics analysis and generation."""
    ctx.ensure_object(dict)
    ctx.obj["corpus_path"] = corpus_path
    ctx.obj["models_dir"] = Path(models_dir)
    ctx.obj["seed"] = seed


@main.command("ingest")
@click.pass_context
def cmd_ingest(ctx):
    """Validate a corpus file and print its statistics."""
    raw = ingest(ctx.obj["corpus_path"])
    corpus = load_corpus(ctx.obj["corpus_path"])
    click.echo(f"songs (raw): {len(raw.songs)}")
    click.echo(f"songs (normalized): {len(corpus.songs)}")
    click.echo(f"lines: {len(corpus.lines)}")
    click.echo(f"artists: {len(corpus.artists)}")
    click.echo(f"digest: {corpus.digest()}")


@main.command("analyze")
@click.option("--out", type=click.Path(), default="rhyme_densities.csv")
@click.option("--histogram", type=click.Path(), default="density_hist.csv")
@click.pass_context
def cmd_analyze(ctx, out, histogram):
    """Compute rhyme densities per artist; write CSV + histogram."""
    corpus = load_corpus(ctx.obj["corpus_path"])
    report = corpus_rhyme_report(corpus)
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["artist", "density", "songs"])
        for artist, density, n_songs in report.to_csv_rows(corpus):
            writer.writerow([artist, f"{density:.4f}", n_songs])
    with open(histogram, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["bin_low", "bin_high", "count"])
        for lo, hi, count in density_histogram(report):
            writer.writerow([f"{lo:.4f}", f"{hi:.4f}", count])
    click.echo(f"corpus mean density: {report.corpus_mean:.4f}")
    click.echo(f"wrote {out} and {histogram}")


@main.command("train-lsa")
@click.option("--rank", type=int, default=100)
@click.pass_context
def cmd_train_lsa(ctx, rank):
    """Fit the LSA model on the training artists."""
    corpus = load_corpus(ctx.obj["corpus_path"])
    split = split_by_artist(corpus, ctx.obj["seed"])
    train_lines = [ln for ln in corpus.lines if ln.artist_id in split.train]
    model = fit_lsa_on_lines(train_lines, rank=rank, seed=ctx.obj["seed"])
    ctx.obj["models_dir"].mkdir(parents=True, exist_ok=True)
    model.save(ctx.obj["models_dir"] / LSA_FILE)
    click.echo(f"LSA rank {model.rank}, vocabulary {len(model.vocabulary)}")


@main.command("train-nn")
@click.option("--epochs", type=int, default=20)
@click.option("--word-hidden", type=int, default=500)
@click.option("--line-hidden", type=int, default=256)
@click.option("--final-hidden", type=int, default=256)
@click.pass_context
def cmd_train_nn(ctx, epochs, word_hidden, line_hidden, final_hidden):
    """Train the neural next-line scorer (CPU; use smaller layers for
    quick experiments on the sample corpus)."""
    corpus = load_corpus(ctx.obj["corpus_path"])
    split = split_by_artist(corpus, ctx.obj["seed"])
    config = neural.TrainConfig(
        epochs=epochs, seed=ctx.obj["seed"],
        word_hidden=(word_hidden, word_hidden),
        line_hidden=line_hidden, final_hidden=final_hidden)
    params = neural.train(corpus, split.train, config)
    ctx.obj["models_dir"].mkdir(parents=True, exist_ok=True)
    params.save(ctx.obj["models_dir"] / NN_FILE)
    params.save_loss_log(ctx.obj["models_dir"] / "nn_loss.csv")
    click.echo(f"final epoch loss: {params.loss_log[-1]:.4f}")


@main.command("train-rank")
@click.option("--tier", type=click.Choice(sorted(TIER_FEATURES)),
              default="FastFeats")
@click.option("--samples-per-line", type=int, default=1)
@click.option("--val-queries", type=int, default=200)
@click.pass_context
def cmd_train_rank(ctx, tier, samples_per_line, val_queries):
    """Extract corpus preferences and train the ranking model."""
    bundle = _bundle(ctx)
    corpus = bundle.corpus
    split = split_by_artist(corpus, ctx.obj["seed"])
    pairs = ranker.extract_corpus_prefs(
        corpus, split.train, samples_per_line, seed=ctx.obj["seed"])
    queries = build_queries(corpus, split.validation, val_queries,
                            ctx.obj["seed"])
    evaluator = NextLineEvaluator(queries, bundle.extractor, tier)
    model = ranker.train(pairs, tier, bundle.extractor,
                         validation_scorer=lambda m:
                         evaluator.evaluate_model(m).mrr)
    ctx.obj["models_dir"].mkdir(parents=True, exist_ok=True)
    model.save(ctx.obj["models_dir"] / rank_model_file(tier))
    click.echo(f"trained {tier} model, C={model.c_value:g}")
    click.echo("weights: " + ", ".join(
        f"{n}={w:.3f}" for n, w in zip(model.feature_names, model.weights)))


@main.command("evaluate")
@click.option("--tier", type=click.Choice(sorted(TIER_FEATURES)),
              default="FastFeats")
@click.option("--num-queries", type=int, default=1000)
@click.option("--out", type=click.Path(), default=None)
@click.pass_context
def cmd_evaluate(ctx, tier, num_queries, out):
    """Run the next-line prediction benchmark on the test artists."""
    bundle = _bundle(ctx)
    model = bundle.require_tier(tier)
    split = split_by_artist(bundle.corpus, ctx.obj["seed"])
    report = next_line_eval(model, bundle.corpus, split.test,
                            bundle.extractor, num_queries, ctx.obj["seed"])
    click.echo(report.to_table())
    if out:
        Path(out).write_text(report.to_json(), encoding="utf-8")
        click.echo(f"wrote {out}")


@main.command("generate")
@click.option("--lines", "num_lines", type=int, default=16)
@click.option("--seed-line", default=None)
@click.option("--keywords", default="", help="Comma-separated keywords.")
@click.option("--tier", type=click.Choice(sorted(TIER_FEATURES)),
              default="FastFeats")
@click.option("--rhyme-block", type=int, default=4)
@click.option("--json", "as_json", is_flag=True, default=False)
@click.pass_context
def cmd_generate(ctx, num_lines, seed_line, keywords, tier, rhyme_block,
                 as_json):
    """Generate a verse and print it with per-line attribution."""
    bundle = _bundle(ctx)
    bundle.require_tier(tier)
    config = GenerationConfig(
        num_lines=num_lines, seed_line=seed_line, tier=tier,
        rhyme_block_len=rhyme_block,
        keywords=tuple(k.strip() for k in keywords.split(",") if k.strip()),
        seed=ctx.obj["seed"])
    verse = generate(bundle.corpus, bundle.index, bundle.extractor,
                     bundle.rank_models, config)
    if as_json:
        click.echo(json.dumps({"lines": verse.to_annotated()}, indent=2))
        return
    for text in verse.texts():
        click.echo(text)
    click.echo("")
    for ln, (artist, title) in zip(verse.lines, verse.attributions):
        click.echo(f"  ({artist} - {title})")


@main.command("suggest")
@click.option("--context", multiple=True, required=True,
              help="Context line; repeat for multiple lines.")
@click.option("--tier", type=click.Choice(sorted(TIER_FEATURES)),
              default="FastFeats")
@click.option("--count", type=int, default=20)
@click.pass_context
def cmd_suggest(ctx, context, tier, count):
    """Print ranked next-line suggestions for a context."""
    import random as _random

    bundle = _bundle(ctx)
    bundle.require_tier(tier)
    suggestions = suggest(list(context), bundle.corpus, bundle.index,
                          bundle.extractor, bundle.rank_models, tier=tier,
                          count=count,
                          rng=_random.Random(ctx.obj["seed"]))
    for s in suggestions:
        click.echo(f"{s.rank:3d}  {s.score:8.3f}  {s.line.text}")


@main.command("serve")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
@click.option("--feedback-log", type=click.Path(), default="feedback.jsonl")
@click.pass_context
def cmd_serve(ctx, host, port, feedback_log):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    bundle = _bundle(ctx)
    if not bundle.tiers_available:
        raise click.ClickException(
            "no rank models found; run train-rank first")
    app = create_app(bundle, feedback_log)
    uvicorn.run(app, host=host, port=port)


@main.command("analyze-feedback")
@click.option("--feedback-log", type=click.Path(), default="feedback.jsonl")
@click.option("--tier", type=click.Choice(sorted(TIER_FEATURES)),
              default="FastFeats")
@click.option("--bins", type=int, default=8)
@click.option("--out", type=click.Path(), default="agreement.csv")
@click.pass_context
def cmd_analyze_feedback(ctx, feedback_log, tier, bins, out):
    """Bin logged preferences by score difference and report agreement."""
    bundle = _bundle(ctx)
    model = bundle.require_tier(tier)
    records = read_feedback_log(feedback_log)
    if not records:
        raise click.ClickException(f"no records in {feedback_log}")
    curve = preference_agreement(records, model, bundle.extractor,
                                 bundle.corpus, n_bins=bins)
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["bin_low", "bin_high", "p_select_higher", "count"])
        for lo, hi, p, count in curve.to_csv_rows():
            writer.writerow([f"{lo:.4f}", f"{hi:.4f}", f"{p:.4f}", count])
    click.echo(f"wrote {out}")


def _bundle(ctx) -> ModelBundle:
    return load_bundle(ctx.obj["corpus_path"], ctx.obj["models_dir"])


if __name__ == "__main__":
    sys.exit(main())
