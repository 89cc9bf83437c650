"""
Report rendering: heatmaps as SVG (hand-written markup) or PNG (Pillow),
tile grids as CSV, and monospaced text tables for the console.
"""

import io
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

import pandas as pd
from PIL import Image, ImageDraw, ImageFont

from ..harness.reports import DeltaRow, HeatmapGrid, HeatmapTile, SimilarityRow
from ..mds.stats import MdsStats

TILE_W = 124
TILE_H = 78
MARGIN_LEFT = 64
MARGIN_TOP = 48
MARGIN_BOTTOM = 40

GREY = (189, 189, 189)
WHITE = (255, 255, 255)
# Below 50 %: the baseline wins more often; above: the mds-filtered variant
WORSE = (215, 48, 39)
BETTER = (26, 152, 80)

TILE_CSV_COLUMNS = (
    "mu",
    "budget",
    "mean_delta",
    "significant",
    "insignificant",
    "failed_no_start",
    "failed_mds_too_small",
    "pct_mds_better",
)


def _mix(a: Tuple[int, int, int], b: Tuple[int, int, int], t: float) -> Tuple[int, int, int]:
    return tuple(round(x + (y - x) * t) for x, y in zip(a, b))  # type: ignore[return-value]


def tile_colour(pct: Optional[float]) -> Tuple[int, int, int]:
    """Diverging scale centred on 50 %; grey when undefined."""
    if pct is None:
        return GREY
    pct = min(max(pct, 0.0), 100.0)
    if pct < 50:
        return _mix(WORSE, WHITE, pct / 50)
    return _mix(WHITE, BETTER, (pct - 50) / 50)


def _hex(rgb: Tuple[int, int, int]) -> str:
    return "#%02x%02x%02x" % rgb


def tile_lines(tile: HeatmapTile) -> List[str]:
    """The six tile values as four text lines."""
    delta = "n/a" if tile.mean_delta is None else f"{tile.mean_delta:+.3f}"
    pct = "n/a" if tile.pct_mds_better is None else f"{tile.pct_mds_better:.0f}%"
    return [
        f"Δ {delta}",
        f"sig {tile.significant} / ins {tile.insignificant}",
        f"nostart {tile.failed_no_start} / small {tile.failed_mds_too_small}",
        f"mds better {pct}",
    ]


def _canvas_size(grid: HeatmapGrid) -> Tuple[int, int]:
    width = MARGIN_LEFT + TILE_W * len(grid.budgets) + 8
    height = MARGIN_TOP + TILE_H * len(grid.thresholds) + MARGIN_BOTTOM
    return width, height


def render_heatmap_svg(grid: HeatmapGrid, label: str) -> str:
    width, height = _canvas_size(grid)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="monospace" font-size="10">',
        f'<text x="{MARGIN_LEFT}" y="20" font-size="13">{escape(label)}</text>',
        f'<text x="8" y="{MARGIN_TOP - 8}">μ</text>',
    ]
    for r, row in enumerate(grid.rows()):
        y = MARGIN_TOP + r * TILE_H
        parts.append(
            f'<text x="8" y="{y + TILE_H // 2}">{grid.thresholds[r]:g}</text>'
        )
        for c, tile in enumerate(row):
            x = MARGIN_LEFT + c * TILE_W
            parts.append(
                f'<rect x="{x}" y="{y}" width="{TILE_W}" height="{TILE_H}" '
                f'fill="{_hex(tile_colour(tile.pct_mds_better))}" stroke="#ffffff"/>'
            )
            for i, line in enumerate(tile_lines(tile)):
                parts.append(
                    f'<text x="{x + 6}" y="{y + 18 + i * 16}">{escape(line)}</text>'
                )
    base_y = MARGIN_TOP + len(grid.thresholds) * TILE_H + 18
    for c, s in enumerate(grid.budgets):
        x = MARGIN_LEFT + c * TILE_W + TILE_W // 2
        parts.append(f'<text x="{x}" y="{base_y}" text-anchor="middle">{s:g}</text>')
    parts.append(
        f'<text x="{MARGIN_LEFT}" y="{base_y + 16}">s (budget, share of actors)</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_heatmap_png(grid: HeatmapGrid, label: str) -> bytes:
    width, height = _canvas_size(grid)
    img = Image.new("RGB", (width, height), WHITE)
    draw = ImageDraw.Draw(img)
    font = ImageFont.load_default()
    draw.text((MARGIN_LEFT, 8), label, fill=(0, 0, 0), font=font)
    draw.text((8, MARGIN_TOP - 16), "mu", fill=(0, 0, 0), font=font)
    for r, row in enumerate(grid.rows()):
        y = MARGIN_TOP + r * TILE_H
        draw.text((8, y + TILE_H // 2 - 6), f"{grid.thresholds[r]:g}", fill=(0, 0, 0), font=font)
        for c, tile in enumerate(row):
            x = MARGIN_LEFT + c * TILE_W
            draw.rectangle(
                (x, y, x + TILE_W - 1, y + TILE_H - 1),
                fill=tile_colour(tile.pct_mds_better),
                outline=WHITE,
            )
            for i, line in enumerate(tile_lines(tile)):
                # Default bitmap font has no Greek glyphs
                draw.text(
                    (x + 6, y + 6 + i * 16),
                    line.replace("Δ", "d"),
                    fill=(0, 0, 0),
                    font=font,
                )
    base_y = MARGIN_TOP + len(grid.thresholds) * TILE_H + 6
    for c, s in enumerate(grid.budgets):
        draw.text((MARGIN_LEFT + c * TILE_W + TILE_W // 2 - 10, base_y), f"{s:g}", fill=(0, 0, 0), font=font)
    draw.text((MARGIN_LEFT, base_y + 16), "s (budget, share of actors)", fill=(0, 0, 0), font=font)
    buffer = io.BytesIO()
    img.save(buffer, format="PNG")
    return buffer.getvalue()


def tiles_csv(grid: HeatmapGrid) -> str:
    frame = pd.DataFrame(
        [
            {
                "mu": t.mu,
                "budget": t.budget,
                "mean_delta": t.mean_delta,
                "significant": t.significant,
                "insignificant": t.insignificant,
                "failed_no_start": t.failed_no_start,
                "failed_mds_too_small": t.failed_mds_too_small,
                "pct_mds_better": t.pct_mds_better,
            }
            for t in grid.iter_tiles()
        ],
        columns=list(TILE_CSV_COLUMNS),
    )
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, na_rep="", lineterminator="\n")
    return buffer.getvalue()


# -- text tables ----------------------------------------------------------------


def _num(value: Optional[float], spec: str = ".3f") -> str:
    return "NaN" if value is None else format(value, spec)


def render_table(title: str, headers: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    rows = [list(r) for r in rows]
    widths = [
        max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(headers)
    ]
    lines = [title, "  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    for row in rows:
        cells = [row[0].ljust(widths[0])] + [
            cell.rjust(w) for cell, w in zip(row[1:], widths[1:])
        ]
        lines.append("  ".join(cells))
    return "\n".join(lines)


def render_mds_stats_table(report: Dict[str, MdsStats]) -> str:
    rows = []
    for network, st in report.items():
        rows.append(
            [
                network,
                f"{st.size_range[0]:.2f}-{st.size_range[1]:.2f}",
                f"{st.avg_size:.2f} ({st.std_size:.2f})",
                f"{st.unique_count} / {st.n_sets}",
                _num(st.avg_iou, ".2f"),
                _num(st.entropy_bits, ".2f"),
                f"{st.avg_size_reduction:.2f} ({st.std_size_reduction:.2f})",
            ]
        )
    return render_table(
        "MDS draws",
        ["network", "size range", "avg size", "unique", "IoU", "entropy", "avg size red."],
        rows,
    )


def render_similarity_table(rows: Iterable[SimilarityRow]) -> str:
    return render_table(
        "Seed-set similarity (baseline vs mds-filtered)",
        ["type", "method", "budget", "IoU", "pairs"],
        (
            [r.network_type, r.method, f"{r.budget:g}", f"{r.mean_iou:.2f} ({r.std_iou:.2f})", str(r.n_pairs)]
            for r in rows
        ),
    )


def render_delta_table(rows: Iterable[DeltaRow], metric: str) -> str:
    return render_table(
        f"Mean difference of {metric} (mds-filtered - baseline)",
        ["network", "type", "delta", "pairs"],
        (
            [r.network, r.network_type, f"{r.mean_delta:+.2f} ({r.std_delta:.2f})", str(r.n_pairs)]
            for r in rows
        ),
    )
