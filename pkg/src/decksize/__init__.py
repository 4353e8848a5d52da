"""Edge-count reconstruction from partial vertex-deleted decks."""

from decksize.adversary import MixedCollection, bbf_pair, forge_collection, solve_mixed
from decksize.deck import CardStats, PartialDeck, card_stats, deal, drop_cards, parse_deck, serialize_deck
from decksize.graph import Graph, gen_graph
from decksize.reconstruct import (
    PipelineError,
    ReconstructionReport,
    RecoveryParams,
    estimate_size,
    reconstruct_size,
)

__all__ = [
    "CardStats",
    "Graph",
    "MixedCollection",
    "PartialDeck",
    "PipelineError",
    "ReconstructionReport",
    "RecoveryParams",
    "bbf_pair",
    "card_stats",
    "deal",
    "drop_cards",
    "estimate_size",
    "forge_collection",
    "gen_graph",
    "parse_deck",
    "reconstruct_size",
    "serialize_deck",
    "solve_mixed",
]
