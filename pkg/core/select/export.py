"""CSV renderings of rankings and selection curves."""
from typing import Iterable, Optional

import pandas as pd

from core.schemas.outputs import Provenance, RankingResult, SelectionResult

FLOAT_FORMAT = "%.4f"


def provenance_comment(provenance: Provenance) -> str:
    return (
        f"# config_hash={provenance.config_hash} seed={provenance.seed} "
        f"dataset={provenance.dataset_id} schema={provenance.schema_version}\n"
    )


def _csv(frame: pd.DataFrame, provenance: Optional[Provenance]) -> str:
    body = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return (provenance_comment(provenance) if provenance else "") + body


def ranking_csv(ranking: RankingResult, provenance: Optional[Provenance] = None,
                sources: Optional[Iterable[str]] = None, limit: Optional[int] = None) -> str:
    """feature,score,source rows; optionally restricted to some sources and the top `limit`."""
    wanted = set(sources) if sources is not None else None
    rows = [
        {"feature": s.feature, "score": s.score, "source": s.source}
        for s in ranking.scores if wanted is None or s.source in wanted
    ][:limit]
    return _csv(pd.DataFrame(rows, columns=["feature", "score", "source"]), provenance)


def curve_csv(selection: SelectionResult, provenance: Optional[Provenance] = None) -> str:
    rows = [
        {"k": p.k, "accuracy": p.mean_accuracy, "seconds": p.runtime_seconds}
        for p in selection.accuracy_curve
    ]
    return _csv(pd.DataFrame(rows, columns=["k", "accuracy", "seconds"]), provenance)
