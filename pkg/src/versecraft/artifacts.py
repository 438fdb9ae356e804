"""Loading and saving the trained artifacts a running engine needs."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import index as index_mod
from .corpus import Corpus, load_corpus
from .features import FeatureExtractor, LsaModel, TIER_FEATURES
from .index import CandidateIndex
from .neural import NetParams, NeuralScorer
from .ranker import RankModel

LSA_FILE = "lsa.npz"
NN_FILE = "nn.npz"
INDEX_FILE = "index.json"


def rank_model_file(tier: str) -> str:
    return f"rank_{tier}.txt"


@dataclass
class ModelBundle:
    """Everything needed to score, suggest, and generate."""

    corpus: Corpus
    index: CandidateIndex
    extractor: FeatureExtractor
    rank_models: dict[str, RankModel]

    @property
    def tiers_available(self) -> list[str]:
        tiers = []
        for tier in TIER_FEATURES:
            model = self.rank_models.get(tier)
            if model is None:
                continue
            names = TIER_FEATURES[tier]
            if "lsa" in names and self.extractor.lsa is None:
                continue
            if "nn5" in names and self.extractor.nn is None:
                continue
            tiers.append(tier)
        return tiers

    def require_tier(self, tier: str) -> RankModel:
        if tier not in self.tiers_available:
            raise KeyError(
                f"tier {tier!r} unavailable; have {self.tiers_available}")
        return self.rank_models[tier]


def load_bundle(corpus_path: str | Path | None,
                models_dir: str | Path) -> ModelBundle:
    """Load the corpus plus whatever models exist in models_dir."""
    models_dir = Path(models_dir)
    corpus = load_corpus(corpus_path)

    lsa = None
    lsa_path = models_dir / LSA_FILE
    if lsa_path.exists():
        lsa = LsaModel.load(lsa_path)
    nn = None
    nn_path = models_dir / NN_FILE
    if nn_path.exists():
        nn = NeuralScorer(NetParams.load(nn_path))
    extractor = FeatureExtractor(corpus=corpus, lsa=lsa, nn=nn)

    index_path = models_dir / INDEX_FILE
    if index_path.exists():
        idx = CandidateIndex.load(index_path)
    else:
        idx = index_mod.build(corpus)

    rank_models: dict[str, RankModel] = {}
    for tier in TIER_FEATURES:
        path = models_dir / rank_model_file(tier)
        if path.exists():
            rank_models[tier] = RankModel.load(path)
    return ModelBundle(corpus=corpus, index=idx, extractor=extractor,
                       rank_models=rank_models)
