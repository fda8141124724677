import type { RoundMetrics } from "./types";

const WIDTH = 640;
const HEIGHT = 320;
const MARGIN = { left: 48, right: 130, top: 16, bottom: 36 };

const SERIES: { key: "accuracy" | "precision_macro" | "recall_macro"; color: string }[] = [
  { key: "accuracy", color: "#1f77b4" },
  { key: "precision_macro", color: "#2ca02c" },
  { key: "recall_macro", color: "#d62728" },
];
const ENTROPY_COLOR = "#9467bd";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  return el;
}

/**
 * Learning-curve chart plus the per-round table of exact values. Metric
 * series live in [0, 1]; when the server provides mean pool entropy it is
 * plotted normalized by ln(C) so it shares the axis.
 */
export function renderCurve(
  container: HTMLElement,
  curve: RoundMetrics[],
  labelCount: number,
): void {
  container.textContent = "";
  if (!curve.length) {
    const empty = document.createElement("p");
    empty.className = "curve-placeholder";
    empty.textContent = "No rounds yet — label the first batch to start the curve.";
    container.appendChild(empty);
    return;
  }

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const xMax = Math.max(curve[curve.length - 1].n_labels, 1);
  const sx = (n: number) => MARGIN.left + (n / xMax) * plotW;
  const sy = (v: number) => MARGIN.top + (1 - v) * plotH;

  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: String(WIDTH),
    height: String(HEIGHT),
    class: "curve-chart",
  });

  for (let i = 0; i <= 5; i++) {
    const v = i / 5;
    svg.appendChild(svgEl("line", {
      x1: String(MARGIN.left), y1: String(sy(v)),
      x2: String(MARGIN.left + plotW), y2: String(sy(v)),
      stroke: "#e5e5e5",
    }));
    const tick = svgEl("text", {
      x: String(MARGIN.left - 6), y: String(sy(v) + 4),
      "text-anchor": "end", "font-size": "10",
    });
    tick.textContent = v.toFixed(1);
    svg.appendChild(tick);
  }

  const plotted: { name: string; color: string; points: [number, number][] }[] =
    SERIES.map(({ key, color }) => ({
      name: key,
      color,
      points: curve.map((m) => [m.n_labels, m[key]] as [number, number]),
    }));
  const lnC = Math.log(Math.max(labelCount, 2));
  if (curve.every((m) => typeof m.mean_pool_entropy === "number")) {
    plotted.push({
      name: "pool entropy / ln C",
      color: ENTROPY_COLOR,
      points: curve.map((m) => [m.n_labels, (m.mean_pool_entropy as number) / lnC]),
    });
  }

  plotted.forEach((series, seriesIndex) => {
    svg.appendChild(svgEl("polyline", {
      points: series.points.map(([x, y]) => `${sx(x)},${sy(y)}`).join(" "),
      fill: "none",
      stroke: series.color,
      "stroke-width": "1.8",
      "data-series": series.name,
    }));
    for (const [x, y] of series.points) {
      const dot = svgEl("circle", {
        cx: String(sx(x)), cy: String(sy(y)), r: "3",
        fill: series.color, "data-series": series.name,
      });
      const title = svgEl("title", {});
      title.textContent = `${series.name} @ ${x} labels: ${y.toFixed(6)}`;
      dot.appendChild(title);
      svg.appendChild(dot);
    }
    const legendY = MARGIN.top + 12 + seriesIndex * 16;
    svg.appendChild(svgEl("line", {
      x1: String(MARGIN.left + plotW + 8), y1: String(legendY - 4),
      x2: String(MARGIN.left + plotW + 24), y2: String(legendY - 4),
      stroke: series.color, "stroke-width": "2",
    }));
    const label = svgEl("text", {
      x: String(MARGIN.left + plotW + 28), y: String(legendY), "font-size": "10",
    });
    label.textContent = series.name;
    svg.appendChild(label);
  });

  for (const m of curve) {
    const tick = svgEl("text", {
      x: String(sx(m.n_labels)), y: String(MARGIN.top + plotH + 14),
      "text-anchor": "middle", "font-size": "10",
    });
    tick.textContent = String(m.n_labels);
    svg.appendChild(tick);
  }
  container.appendChild(svg);

  const table = document.createElement("table");
  table.className = "curve-table";
  const head = document.createElement("tr");
  for (const h of ["labels", "accuracy", "precision (macro)", "recall (macro)"]) {
    const th = document.createElement("th");
    th.textContent = h;
    head.appendChild(th);
  }
  table.appendChild(head);
  for (const m of curve) {
    const tr = document.createElement("tr");
    for (const value of [
      String(m.n_labels),
      m.accuracy.toFixed(6),
      m.precision_macro.toFixed(6),
      m.recall_macro.toFixed(6),
    ]) {
      const td = document.createElement("td");
      td.textContent = value;
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  container.appendChild(table);
}
