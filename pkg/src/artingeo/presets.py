"""Shipped study presentations, loadable by name or from presentation files."""

from __future__ import annotations

from importlib import resources

from .presentation import CoxeterPresentation, load_presentation, parse_presentation

PRESET_NAMES = (
    "da3",
    "da4",
    "da5",
    "dainf",
    "triangle345",
    "triangle444",
    "counterexample433",
)


def load_preset(name: str) -> CoxeterPresentation:
    if name not in PRESET_NAMES:
        raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    text = resources.files("artingeo").joinpath(f"presets/{name}.txt").read_text()
    return parse_presentation(text)


def resolve_presentation(spec: str) -> tuple[str, CoxeterPresentation]:
    """A preset name or a path to a presentation file; returns (id, presentation)."""
    if spec in PRESET_NAMES:
        return spec, load_preset(spec)
    return spec, load_presentation(spec)
