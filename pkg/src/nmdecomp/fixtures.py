"""Bundled example complexes and gluing scripts."""

from __future__ import annotations

from importlib import resources

from .complexes import Complex, parse_tv


def load_text(name: str) -> str:
    return resources.files("nmdecomp.data").joinpath(name).read_text()


def load_tv(name: str) -> Complex:
    return parse_tv(load_text(name))
