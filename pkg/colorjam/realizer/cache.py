import hashlib
import logging
from pathlib import Path

from appdirs import user_cache_dir

from .. import exception as exc
from ..graph.document import serialize
from .realizer import (
    RealizationProblem,
    RealizerCertificate,
    RealizerLimits,
    load_realizer,
    serialize_problem,
)

logger = logging.getLogger(__name__)

CACHE_DIR = Path(user_cache_dir('colorjam')) / 'realizers'


def ensure_cache_dir(cache_dir: Path | None = None) -> Path:
    path = cache_dir or CACHE_DIR
    path.mkdir(parents=True, exist_ok=True)
    return path


def cache_key(p: RealizationProblem, limits: RealizerLimits) -> str:
    """A digest of the problem document and the search limits.

    Args:
        p (RealizationProblem): The realization problem.
        limits (RealizerLimits): Limits the certificate was searched under.

    Returns:
        str: A hex digest naming the cache entry.
    """
    text = serialize_problem(p) + limits.model_dump_json()
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def lookup(
    p: RealizationProblem, limits: RealizerLimits, cache_dir: Path | None = None
) -> RealizerCertificate | None:
    """Load a cached realizer, re-verifying it against the problem.

    Entries that fail verification are removed and treated as missing.

    Args:
        p (RealizationProblem): The realization problem.
        limits (RealizerLimits): The search limits.
        cache_dir (Path | None): Overrides the per-user cache directory.

    Returns:
        RealizerCertificate | None: The verified certificate, if cached.
    """
    path = ensure_cache_dir(cache_dir) / f'{cache_key(p, limits)}.yaml'
    if not path.exists():
        return None
    try:
        cert = load_realizer(path, p)
    except (exc.DocumentException, exc.RealizerVerificationException) as e:
        logger.warning('discarding cache entry %s: %s', path.name, e)
        path.unlink(missing_ok=True)
        return None
    logger.debug('realizer cache hit %s', path.name)
    return cert


def store(
    p: RealizationProblem,
    limits: RealizerLimits,
    cert: RealizerCertificate,
    cache_dir: Path | None = None,
) -> Path:
    """Write a verified certificate's graph to the cache.

    Args:
        p (RealizationProblem): The realization problem.
        limits (RealizerLimits): The search limits.
        cert (RealizerCertificate): The certificate to store.
        cache_dir (Path | None): Overrides the per-user cache directory.

    Returns:
        Path: The written cache file.
    """
    path = ensure_cache_dir(cache_dir) / f'{cache_key(p, limits)}.yaml'
    path.write_text(serialize(cert.graph), encoding='utf-8')
    return path


def clear(cache_dir: Path | None = None) -> int:
    """Remove every cached realizer.

    Returns:
        int: The number of entries removed.
    """
    path = ensure_cache_dir(cache_dir)
    entries = list(path.glob('*.yaml'))
    for entry in entries:
        entry.unlink()
    return len(entries)
