"""Search limits for the exhaustive routines, gathered in one place."""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace

from .face_trees import DEFAULT_FACE_GUARD
from .hamiltonian import DEFAULT_HAM_GUARD, DEFAULT_PAYAN_GUARD


@dataclass(frozen=True)
class Guards:
    face_tree: int = DEFAULT_FACE_GUARD  # bounded faces for brute_force_face_tree
    payan: int = DEFAULT_PAYAN_GUARD  # vertices of g0 for payan_set
    hamiltonian: int = DEFAULT_HAM_GUARD  # vertices for brute_force_hamiltonian

    @classmethod
    def uniform(cls, limit: int | None) -> "Guards":
        """Defaults, or the same ``limit`` for the vertex-count guards (the CLI's --guard)."""
        g = cls()
        return g if limit is None else replace(g, payan=limit, hamiltonian=limit)

    def pipeline_kwargs(self) -> dict:
        return {"payan_guard": self.payan, "ham_guard": self.hamiltonian}

    def as_dict(self) -> dict:
        return asdict(self)
