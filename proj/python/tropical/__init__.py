"""Realizability of tropical maps: decide, certify and verify.

Instances, certificates and reports are plain JSON-compatible dicts (or JSON
strings); rationals are "p/q" strings.
"""

import json

from . import _core

__all__ = ["check", "certify", "verify", "hurwitz", "instance_hash", "to_dot"]


def _text(x):
    return x if isinstance(x, str) else json.dumps(x)


def check(instance, max_degree=8, basis=None):
    """Verdict report for an instance (dict). 'exit_code' matches the CLI."""
    report, _ = _core.check(_text(instance), max_degree, basis or [])
    return json.loads(report)


def certify(instance, max_degree=8):
    """(report, certificate or None); the certificate is bound to the instance hash."""
    report, cert = _core.check(_text(instance), max_degree, [])
    return json.loads(report), (json.loads(cert) if cert is not None else None)


def verify(instance, certificate, max_degree=8):
    """{'verdict': 'ACCEPT'|'REJECT', ...}"""
    return json.loads(_core.verify(_text(instance), _text(certificate), max_degree))


def hurwitz(problem, max_degree=8):
    return json.loads(_core.hurwitz(_text(problem), max_degree))


def instance_hash(instance):
    return _core.instance_hash(_text(instance))


def to_dot(instance_or_certificate):
    return _core.to_dot(_text(instance_or_certificate))
