"""Planar rotation systems of 2-complexes: decision, obstructions and certificates."""
from .catalog import gen, names
from .core import Complex2, ComplexError, Edge, Face, Traversal, simplicial_complex, validate_complex
from .decision import Obstruction, Verdict, decide, decide_general, decide_locally_3_connected, find_obstruction
from .homology import homology_trivial
from .minors import apply_script, replay, script_from_json, script_to_json
from .rotation import RotationSystem, is_planar_rotation_system, local_surfaces
from .search import find_planar_rotation_system
from .stretching import normalize

__all__ = [
    "Complex2", "ComplexError", "Edge", "Face", "Traversal", "simplicial_complex", "validate_complex",
    "RotationSystem", "is_planar_rotation_system", "local_surfaces", "find_planar_rotation_system",
    "homology_trivial", "apply_script", "replay", "script_from_json", "script_to_json",
    "Obstruction", "Verdict", "decide", "decide_general", "decide_locally_3_connected", "find_obstruction",
    "normalize", "gen", "names",
]
