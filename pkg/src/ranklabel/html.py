"""Self-contained HTML rendering of a nutritional label.

Six collapsible widget sections (recipe, ingredients, stability, fairness,
diversity, methodology), overview visible and detail behind a native
<details> disclosure. No scripts, no external resources; every number shown
is a field of the label JSON, formatted with the same shortest round-trip
representation. The markup is XML-well-formed so it can be checked with a
strict parser.
"""

from __future__ import annotations

from html import escape

from .label import NutritionalLabel, label_to_dict

_STYLE = """
body { font-family: system-ui, sans-serif; margin: 2rem; background: #fafafa; }
h1 { font-size: 1.4rem; }
section.widget { background: #fff; border: 1px solid #ddd; border-radius: 6px;
                 padding: 1rem; margin-bottom: 1rem; }
section.widget h2 { margin-top: 0; font-size: 1.1rem; }
table { border-collapse: collapse; margin: 0.5rem 0; }
th, td { border: 1px solid #ccc; padding: 0.25rem 0.6rem; text-align: left; }
details { margin-top: 0.5rem; }
summary { cursor: pointer; color: #345; }
.badge { display: inline-block; padding: 0.1rem 0.5rem; border-radius: 4px;
         font-size: 0.85rem; margin-left: 0.4rem; }
.fair { background: #d8f2d8; } .unfair { background: #f6d0d0; }
.stable { background: #d8f2d8; } .unstable { background: #f6d0d0; }
.strong { background: #dde6f6; }
"""


def _num(value) -> str:
    # repr matches the JSON rendering, so shown numbers equal JSON fields
    return escape(repr(value) if isinstance(value, float) else str(value))


def _cell(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    if isinstance(value, (int, float)):
        return _num(value)
    if isinstance(value, (list, tuple)):
        return escape(", ".join(_cell(v) for v in value))
    return escape(str(value))


def _stats_rows(name: str, stats_topk: dict, stats_overall: dict) -> str:
    cells_topk = "".join(
        f"<td>{_cell(stats_topk[f])}</td>"
        for f in ("minimum", "maximum", "median", "count", "missing")
    )
    cells_overall = "".join(
        f"<td>{_cell(stats_overall[f])}</td>"
        for f in ("minimum", "maximum", "median", "count", "missing")
    )
    return (
        f"<tr><td rowspan=\"2\">{escape(name)}</td><td>top-k</td>{cells_topk}</tr>"
        f"<tr><td>overall</td>{cells_overall}</tr>"
    )


_STATS_HEADER = (
    "<tr><th>attribute</th><th>scope</th><th>min</th><th>max</th>"
    "<th>median</th><th>count</th><th>missing</th></tr>"
)


def _section(widget: str, heading: str, overview: str, detail: str, extra_attrs: str = "") -> str:
    return (
        f"<section class=\"widget\" data-widget=\"{widget}\"{extra_attrs}>"
        f"<h2>{escape(heading)}</h2>{overview}"
        f"<details><summary>Details</summary>{detail}</details>"
        "</section>"
    )


def _recipe_section(doc: dict) -> str:
    entries = doc["recipe"]["entries"]
    rows = "".join(
        f"<tr><td>{escape(e['attribute'])}</td><td>{_num(e['weight'])}</td>"
        f"<td>{_num(e['share'])}</td></tr>"
        for e in entries
    )
    overview = (
        "<table><tr><th>attribute</th><th>weight</th><th>share</th></tr>"
        f"{rows}</table>"
    )
    detail_rows = "".join(
        _stats_rows(e["attribute"], e["stats_topk"], e["stats_overall"]) for e in entries
    )
    detail = f"<table>{_STATS_HEADER}{detail_rows}</table>"
    return _section("recipe", "Recipe", overview, detail)


def _ingredients_section(doc: dict) -> str:
    entries = doc["ingredients"]["entries"]
    rows = "".join(
        f"<tr data-strong=\"{str(e['strong']).lower()}\">"
        f"<td>{escape(e['attribute'])}"
        + ("<span class=\"badge strong\">strong</span>" if e["strong"] else "")
        + f"</td><td>{_num(e['importance'])}</td><td>{_num(e['correlation'])}</td></tr>"
        for e in entries
    )
    overview = (
        "<table><tr><th>attribute</th><th>importance</th><th>correlation</th></tr>"
        f"{rows}</table>"
    )
    detail_rows = "".join(
        _stats_rows(e["attribute"], e["stats_topk"], e["stats_overall"]) for e in entries
    )
    detail = f"<table>{_STATS_HEADER}{detail_rows}</table>"
    return _section("ingredients", "Ingredients", overview, detail)


def _stability_section(doc: dict) -> str:
    st = doc["stability"]

    def row(scope: str, slope, stable: bool) -> str:
        badge = "stable" if stable else "unstable"
        return (
            f"<tr data-stable=\"{str(stable).lower()}\"><td>{scope}</td>"
            f"<td>{_num(slope)}</td>"
            f"<td><span class=\"badge {badge}\">{badge}</span></td></tr>"
        )

    overview = (
        "<table><tr><th>scope</th><th>slope</th><th>verdict</th></tr>"
        + row("top-k", st["slope_topk"], st["stable_topk"])
        + row("overall", st["slope_overall"], st["stable_overall"])
        + "</table>"
    )
    detail = (
        "<p>A ranking is unstable when the magnitude of the fitted slope is at "
        f"or below the threshold {_num(st['threshold'])}.</p>"
    )
    return _section("stability", "Stability", overview, detail)


def _fairness_section(doc: dict) -> str:
    results = doc["fairness"]
    any_unfair = any(not r["fair"] for r in results)
    rows = []
    detail_blocks = []
    for r in results:
        verdict = "fair" if r["fair"] else "unfair"
        rows.append(
            f"<tr data-fair=\"{str(r['fair']).lower()}\">"
            f"<td>{escape(r['measure'])}</td>"
            f"<td>{escape(r['protected_attribute'])} = {escape(r['protected_value'])}</td>"
            f"<td><span class=\"badge {verdict}\">{verdict}</span></td></tr>"
        )
        fields = [
            ("statistic", r["statistic"]),
            ("p_value", r.get("p_value")),
            ("direction", r["direction"]),
        ] + sorted(r["details"].items())
        field_rows = "".join(
            f"<tr><td>{escape(k)}</td><td>{_cell(v)}</td></tr>"
            for k, v in fields
            if v is not None
        )
        detail_blocks.append(
            f"<h3>{escape(r['measure'])}: {escape(r['protected_value'])}</h3>"
            f"<table>{field_rows}</table>"
        )
    overview = (
        "<table><tr><th>measure</th><th>protected feature</th><th>verdict</th></tr>"
        + "".join(rows)
        + "</table>"
    )
    extra = " data-verdict=\"unfair\"" if any_unfair else " data-verdict=\"fair\""
    return _section("fairness", "Fairness", overview, "".join(detail_blocks), extra)


def _diversity_section(doc: dict) -> str:
    blocks = []
    details = []
    for report in doc["diversity"]:
        topk_rows = "".join(
            f"<tr><td>{escape(cat)}</td><td>{_num(frac)}</td></tr>"
            for cat, frac in report["topk"].items()
        )
        blocks.append(
            f"<h3>{escape(report['attribute'])} (top-k)</h3>"
            f"<table><tr><th>category</th><th>proportion</th></tr>{topk_rows}</table>"
        )
        overall_rows = "".join(
            f"<tr><td>{escape(cat)}</td><td>{_num(frac)}</td></tr>"
            for cat, frac in report["overall"].items()
        )
        details.append(
            f"<h3>{escape(report['attribute'])} (overall)</h3>"
            f"<table><tr><th>category</th><th>proportion</th></tr>{overall_rows}</table>"
        )
    return _section("diversity", "Diversity", "".join(blocks), "".join(details))


def _methodology_section(doc: dict) -> str:
    meta = doc["metadata"]
    overview_keys = [
        "dataset_digest",
        "row_count",
        "dropped_rows",
        "k",
        "alpha",
        "normalization",
        "sensitive_attribute",
        "engine_version",
    ]
    rows = "".join(
        f"<tr><td>{escape(k)}</td><td>{_cell(meta[k])}</td></tr>" for k in overview_keys
    )
    if "p_override" in meta:
        rows += f"<tr><td>p_override</td><td>{_num(meta['p_override'])}</td></tr>"
    weight_rows = "".join(
        f"<tr><td>{escape(name)}</td><td>{_num(w)}</td></tr>"
        for name, w in meta["weights"].items()
    )
    notes = "".join(
        f"<tr><td>{escape(k)}</td><td>{escape(v)}</td></tr>"
        for k, v in meta["methodology"].items()
    )
    detail = (
        "<table><tr><th>attribute</th><th>weight</th></tr>"
        + weight_rows
        + "</table><table><tr><th>note</th><th>text</th></tr>"
        + notes
        + f"<tr><td>strength_threshold</td><td>{_num(meta['strength_threshold'])}</td></tr>"
        + f"<tr><td>stability_threshold</td><td>{_num(meta['stability_threshold'])}</td></tr>"
        + "</table>"
    )
    return _section("methodology", "Methodology", f"<table>{rows}</table>", detail)


def render_html(label: NutritionalLabel) -> bytes:
    """Render the label as one dependency-free HTML document."""
    doc = label_to_dict(label)
    sections = (
        _recipe_section(doc)
        + _ingredients_section(doc)
        + _stability_section(doc)
        + _fairness_section(doc)
        + _diversity_section(doc)
        + _methodology_section(doc)
    )
    page = (
        "<!DOCTYPE html>\n"
        "<html lang=\"en\"><head><meta charset=\"utf-8\"/>"
        "<title>Ranking Nutritional Label</title>"
        f"<style>{_STYLE}</style></head>"
        f"<body><h1>Ranking Nutritional Label</h1>{sections}</body></html>\n"
    )
    return page.encode("utf-8")
