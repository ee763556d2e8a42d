"""Run configuration shared by the library entry points and the CLI."""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace


@dataclass(frozen=True)
class Config:
    seed: int = 0
    affine_cap: int = 1 << 24
    projective_cap: int = 1 << 24
    group_budget: int = 200_000
    threads: int = 1
    root_cap: int = 4096
    sample_budget: int = 1000
    pair_cap: int = 20_000

    def caps(self) -> dict:
        return {"affine_cap": self.affine_cap, "projective_cap": self.projective_cap,
                "group_budget": self.group_budget, "root_cap": self.root_cap,
                "sample_budget": self.sample_budget, "pair_cap": self.pair_cap}

    def to_dict(self) -> dict:
        return asdict(self)

    def with_(self, **kw) -> Config:
        return replace(self, **kw)
