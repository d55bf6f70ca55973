# File: utils/cache.py

import hashlib
import json
import logging
import os
import tempfile

from config.settings import VERSION, get_cache_dir
from utils.formatting import polynomial_from_json, polynomial_to_json
from utils.matroid_dsl import canonical_spec

logger = logging.getLogger(__name__)


class ResultCache:
    """
    Content-addressed store of computed Tutte polynomials.

    Each result is one JSON file named by the sha256 of (canonical spec,
    method, version). Files are written to a temporary name in the same
    directory and renamed into place.

    Args:
        directory (str, optional): Defaults to the configured cache directory.
    """

    def __init__(self, directory=None):
        self.directory = directory or get_cache_dir()

    @staticmethod
    def key(spec, method):
        payload = json.dumps(
            {"spec": canonical_spec(spec), "method": method, "version": VERSION},
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def path(self, spec, method):
        return os.path.join(self.directory, self.key(spec, method) + ".json")

    def get(self, spec, method):
        """Returns (polynomial, n, r), or None on a miss or an unreadable entry."""
        path = self.path(spec, method)
        if not os.path.exists(path):
            logger.debug("Cache miss for %s by %s.", spec, method)
            return None
        try:
            with open(path, encoding="utf-8") as handle:
                payload = json.load(handle)
            result = polynomial_from_json(payload["result"])
        except (OSError, ValueError, KeyError) as exc:
            logger.warning("Ignoring unreadable cache entry %s: %s", path, exc)
            return None
        logger.debug("Cache hit for %s by %s.", spec, method)
        return result

    def put(self, spec, method, poly, n, r):
        os.makedirs(self.directory, exist_ok=True)
        payload = {
            "spec": canonical_spec(spec),
            "method": method,
            "version": VERSION,
            "result": polynomial_to_json(poly, n, r),
        }
        handle = tempfile.NamedTemporaryFile(
            "w", dir=self.directory, suffix=".tmp", delete=False, encoding="utf-8"
        )
        try:
            with handle:
                json.dump(payload, handle, sort_keys=True)
            os.replace(handle.name, self.path(spec, method))
        except OSError:
            if os.path.exists(handle.name):
                os.remove(handle.name)
            raise
        logger.info("Result for %s by %s cached successfully.", spec, method)
