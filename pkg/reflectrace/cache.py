"""
Persistent Cayley-ball cache.

A ball is stored as JSON: reduced words by length layer, each with a digest
of its matrix. Files are keyed by a fingerprint of the Coxeter matrix and
the package version; anything that does not match is ignored.
"""

import hashlib
import json
import logging
import os
import tempfile
from typing import Any, Dict, List, Optional

from . import __version__
from .coxeter import DEFAULT_BALL_CAP, CayleyBall, CoxeterSystem, Element, elem_from_word, format_label
from .scalars import QMatrix

logger = logging.getLogger(__name__)

CACHE_FORMAT = 1


def system_fingerprint(sys: CoxeterSystem) -> str:
    payload = {
        "format": CACHE_FORMAT,
        "version": __version__,
        "matrix": [[format_label(sys.matrix[i, j]) for j in range(sys.rank)] for i in range(sys.rank)],
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode("utf-8")).hexdigest()


def matrix_digest(matrix: QMatrix) -> str:
    text = ";".join(",".join(str(x) for x in row) for row in matrix.rows)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


class BallCache:
    """Load and save CayleyBall layers under one cache directory."""

    def __init__(self, cache_dir: str):
        self.cache_dir = cache_dir

    def path_for(self, sys: CoxeterSystem) -> str:
        stem = sys.name or "system"
        return os.path.join(self.cache_dir, f"{stem}-{system_fingerprint(sys)[:16]}.json")

    def load(self, sys: CoxeterSystem, cap: int = DEFAULT_BALL_CAP) -> Optional[CayleyBall]:
        """
        Loads a cached ball for `sys`.

        Args:
            sys: The Coxeter system the ball belongs to
            cap: Cap for the returned ball when it is extended later

        Returns:
            CayleyBall if a valid cache file exists, None otherwise
        """
        path = self.path_for(sys)
        if not os.path.exists(path):
            return None
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (json.JSONDecodeError, IOError) as e:
            logger.warning(f"Failed to load ball cache: {e}")
            return None

        if data.get("fingerprint") != system_fingerprint(sys):
            logger.warning(f"Ignoring ball cache {path}: fingerprint mismatch")
            return None

        layers: List[List[Element]] = []
        seen = set()
        try:
            for k, layer in enumerate(data["layers"]):
                elements = []
                for word, digest in layer:
                    w = elem_from_word(sys, tuple(word))
                    if len(word) != k or matrix_digest(w.matrix) != digest or w.matrix in seen:
                        logger.warning(f"Ignoring ball cache {path}: element {word} does not validate")
                        return None
                    seen.add(w.matrix)
                    elements.append(w)
                layers.append(elements)
        except (KeyError, TypeError, ValueError, IndexError) as e:
            logger.warning(f"Ignoring ball cache {path}: malformed ({e})")
            return None

        if not layers or len(layers[0]) != 1 or not layers[0][0].is_identity():
            logger.warning(f"Ignoring ball cache {path}: missing identity layer")
            return None
        logger.info(f"Loaded ball of radius {len(layers) - 1} from {path}")
        return CayleyBall.from_layers(sys, layers, cap)

    def save(self, sys: CoxeterSystem, ball: CayleyBall) -> bool:
        """
        Saves the ball's layers, writing a temp file and renaming it over the target.

        Returns:
            True if successful, False otherwise
        """
        path = self.path_for(sys)
        payload: Dict[str, Any] = {
            "fingerprint": system_fingerprint(sys),
            "system": sys.name,
            "layers": [[[list(w.word), matrix_digest(w.matrix)] for w in layer] for layer in ball.layers],
        }
        try:
            os.makedirs(self.cache_dir, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.cache_dir, suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as f:
                    json.dump(payload, f)
                os.replace(tmp, path)
            except BaseException:
                if os.path.exists(tmp):
                    os.remove(tmp)
                raise
            logger.info(f"Ball cached to {path}")
            return True
        except OSError as e:
            logger.warning(f"Failed to save ball cache: {e}")
            return False
