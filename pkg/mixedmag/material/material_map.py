"""Assignment of material laws, conductivity and sources to mesh regions."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
import logging

import numpy as np
import numpy.typing as npt

from mixedmag.const import CERTIFY_SAMPLES, DEFAULT_SEED
from mixedmag.exceptions import InvalidParamsError, UncertifiedMaterialError
from mixedmag.material.certify import certify_monotonicity, duality_error
from mixedmag.material.laws import MaterialLaw
from mixedmag.models import CertificationReport, FloatArray, IntArray

_LOGGER = logging.getLogger("mixedmag.log")

CurrentFunction = Callable[[FloatArray], FloatArray]


@dataclass
class MaterialMap:
    """Region tag to law map with per-region conductivity and current density.

    `current` is either a per-region constant or a function of physical
    points (..., 2) that overrides the region values.
    """

    laws: dict[int, MaterialLaw]
    sigma: dict[int, float] = field(default_factory=dict)
    current: dict[int, float] | CurrentFunction = field(default_factory=dict)
    certified: bool = False
    reports: list[CertificationReport] = field(default_factory=list)

    def __post_init__(self) -> None:
        """Validate conductivities."""
        negative = [tag for tag, value in self.sigma.items() if value < 0]
        if negative:
            raise InvalidParamsError(f"negative conductivity in region {negative[0]}")

    @classmethod
    def uniform(
        cls,
        law: MaterialLaw,
        sigma: float = 0.0,
        current: float | CurrentFunction = 0.0,
    ) -> MaterialMap:
        """Use one law everywhere (region tag 0)."""
        return cls(
            {0: law},
            {0: sigma},
            current if callable(current) else {0: float(current)},
        )

    def check_regions(self, region_tags: npt.ArrayLike) -> None:
        """Raise if a region of the mesh has no law."""
        missing = sorted(set(np.unique(np.asarray(region_tags)).tolist()) - set(self.laws))
        if missing:
            raise InvalidParamsError(f"no material law for region {missing[0]}")

    def certify(
        self, n_samples: int = CERTIFY_SAMPLES, seed: int = DEFAULT_SEED
    ) -> list[CertificationReport]:
        """Certify every law; solving requires a certified map."""
        self.reports = []
        for region, law in sorted(self.laws.items()):
            alpha, lipschitz = certify_monotonicity(law, n_samples=n_samples, seed=seed)
            self.reports.append(
                CertificationReport(
                    region=region,
                    law=law.material_type.value,
                    alpha=alpha,
                    lipschitz=lipschitz,
                    duality_error=duality_error(law, seed=seed),
                )
            )
        self.certified = True
        _LOGGER.info("Certified %s material regions", len(self.reports))
        return self.reports

    def require_certified(self) -> None:
        """Raise UncertifiedMaterialError unless certify() succeeded."""
        if not self.certified:
            raise UncertifiedMaterialError("material map must be certified before solving")

    def sigma_per_element(self, region_tags: IntArray) -> FloatArray:
        """Conductivity of every element."""
        return np.array([self.sigma.get(int(tag), 0.0) for tag in region_tags], dtype=np.float64)

    def current_at(self, region_tags: IntArray, points: FloatArray) -> FloatArray:
        """Current density at physical points (T, q, 2)."""
        if callable(self.current):
            return np.asarray(self.current(points), dtype=np.float64)
        per_element = np.array(
            [self.current.get(int(tag), 0.0) for tag in region_tags], dtype=np.float64
        )
        return np.broadcast_to(per_element[:, None], points.shape[:-1]).copy()

    def _by_region(
        self,
        region_tags: IntArray,
        vectors: FloatArray,
        evaluate: Callable[[MaterialLaw, FloatArray], FloatArray],
        tail: tuple[int, ...],
    ) -> FloatArray:
        result = np.empty(vectors.shape[:-1] + tail)
        for tag in np.unique(region_tags):
            mask = region_tags == tag
            result[mask] = evaluate(self.laws[int(tag)], vectors[mask])
        return result

    def g_grad(self, region_tags: IntArray, field_h: FloatArray) -> FloatArray:
        """B = g'(H) at per-element points (T, q, 2)."""
        return self._by_region(region_tags, field_h, lambda law, v: law.g_grad(v), (2,))

    def g_hess(self, region_tags: IntArray, field_h: FloatArray) -> FloatArray:
        """g''(H) at per-element points, shape (T, q, 2, 2)."""
        return self._by_region(region_tags, field_h, lambda law, v: law.g_hess(v), (2, 2))

    def f_grad(self, region_tags: IntArray, flux_b: FloatArray) -> FloatArray:
        """H = f'(B) at per-element points (T, q, 2)."""
        return self._by_region(region_tags, flux_b, lambda law, v: law.f_grad(v), (2,))

    def f_hess(self, region_tags: IntArray, flux_b: FloatArray) -> FloatArray:
        """f''(B) at per-element points, shape (T, q, 2, 2)."""
        return self._by_region(region_tags, flux_b, lambda law, v: law.f_hess(v), (2, 2))

