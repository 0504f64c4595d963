"""Best-effort on-disk cache for expensive tables.

Entries are JSON files named by the sha256 of their key.  Each file stores
its own checksum; anything that fails to parse or verify is treated as a
miss and silently recomputed.  Writes go to a temporary file that is then
renamed into place, so concurrent writers never leave half a file behind.
"""

import hashlib
import json
import logging
import os
import tempfile

log = logging.getLogger(__name__)

ENV_VAR = "DIAGSTRAT_CACHE"
DEFAULT_DIR = ".diagstrat-cache"

stats = {"hits": 0, "misses": 0, "writes": 0}


def cache_dir():
    return os.environ.get(ENV_VAR, DEFAULT_DIR)


def enabled():
    return os.environ.get(ENV_VAR, None) != ""


def _path(key):
    h = hashlib.sha256(key.encode()).hexdigest()
    return os.path.join(cache_dir(), h[:2], h + ".json")


def _checksum(payload):
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def cache_get(key):
    if not enabled():
        return None
    path = _path(key)
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        if doc.get("key") != key or doc.get("checksum") != _checksum(doc["payload"]):
            log.info("cache entry for %s failed verification", key)
            stats["misses"] += 1
            return None
    except (OSError, ValueError, KeyError, TypeError):
        stats["misses"] += 1
        return None
    stats["hits"] += 1
    return doc["payload"]


def cache_put(key, payload):
    if not enabled():
        return
    path = _path(key)
    doc = {"key": key, "checksum": _checksum(payload), "payload": payload}
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, path)
        stats["writes"] += 1
    except OSError as exc:
        log.warning("cache write failed: %s", exc)
