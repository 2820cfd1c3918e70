"""Chart generation for descent distributions and Hodge profiles using matplotlib."""

import os
from math import factorial
from typing import Optional

import matplotlib
matplotlib.use('Agg')  # Non-interactive backend
import matplotlib.pyplot as plt

from src.config import Config
from src.schemas import EulerianDistribution, HodgeTable
from src.tools.hodge_eulerian import eulerian_row
from src.utils.logger import get_logger

logger = get_logger(__name__)


class ProfilePlotter:
    """Saves PNG charts of Eulerian distributions and Hodge profiles."""

    def __init__(self, output_dir: Optional[str] = None):
        """Initialize the plotter and create its output directory."""
        self.output_dir = output_dir or os.path.join(Config.OUTPUT_DIR, "images")
        os.makedirs(self.output_dir, exist_ok=True)

    def _save(self, fig, name: str) -> str:
        filepath = os.path.join(self.output_dir, f"{name}.png")
        plt.tight_layout()
        plt.savefig(filepath, dpi=150, bbox_inches='tight')
        plt.close(fig)
        logger.info(f"Chart saved to: {filepath}")
        return filepath

    def plot_distribution(self, dist: EulerianDistribution) -> str:
        """
        Bar chart of beta_p over p = -(n-1)..(n-1).

        Args:
            dist: Distribution to plot

        Returns:
            Path to the PNG file, or "" on failure
        """
        try:
            logger.info(f"Plotting descent distribution for n = {dist.n}")
            fig, ax = plt.subplots(figsize=(10, 6))
            ps = list(range(-(dist.n - 1), dist.n))
            ax.bar(ps, [float(dist.beta_at(p)) for p in ps], width=1.0)
            ax.set_xlabel("p")
            ax.set_ylabel("beta_p")
            ax.set_title(f"Sum of two centred descent counts, n = {dist.n} ({dist.mode.value})",
                         fontsize=14, fontweight='bold')
            ax.grid(True, alpha=0.3)
            return self._save(fig, f"eulerian_n{dist.n}_{dist.mode.value}")
        except Exception as e:
            logger.error(f"Error plotting distribution for n = {dist.n}: {e}")
            return ""

    def plot_hodge(self, table: HodgeTable, volume: Optional[int] = None) -> str:
        """
        Hodge numbers h(q) of one eigenspace, with the Eulerian profile A(n,q)·Vol when the
        normalized volume is given.

        Returns:
            Path to the PNG file, or "" on failure
        """
        try:
            logger.info(f"Plotting Hodge profile of class {table.lam.lam} mod {table.m}")
            fig, ax = plt.subplots(figsize=(10, 6))
            qs = list(range(table.n))
            ax.bar(qs, [table.h[q] for q in qs], label="h(q)")
            if volume is not None:
                row = eulerian_row(table.n)
                ax.plot(qs, [row[q] * volume / factorial(table.n) for q in qs], marker='o', color="black",
                        label="A(n,q)·Vol")
                ax.legend()
            ax.set_xlabel("q")
            ax.set_title(f"Hodge numbers, m = {table.m}, lambda = {table.lam.lam}", fontsize=14, fontweight='bold')
            ax.grid(True, alpha=0.3)
            label = "_".join(str(x) for x in table.lam.lam)
            return self._save(fig, f"hodge_m{table.m}_{label}")
        except Exception as e:
            logger.error(f"Error plotting Hodge profile: {e}")
            return ""
