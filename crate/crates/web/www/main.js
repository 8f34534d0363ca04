import init, { bounds_curve, threshold, construct } from "./pkg/unigraph_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function show(id, text, ok) {
  const el = $(id);
  el.textContent = text;
  el.className = ok === undefined ? "" : ok ? "ok" : "bad";
}

function plotCurve(points) {
  const c = $("curve");
  const ctx = c.getContext("2d");
  const pad = 36;
  const w = c.width - 2 * pad;
  const h = c.height - 2 * pad;
  ctx.clearRect(0, 0, c.width, c.height);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w, h);
  ctx.fillStyle = "#555";
  ctx.font = "12px sans-serif";
  ctx.fillText("1", pad - 14, pad + 4);
  ctx.fillText("0", pad - 14, pad + h + 4);
  const logs = points.map((p) => Math.log(Number(p.m)));
  const maxLog = Math.max(...logs) || 1;
  const x = (i) => pad + (logs[i] / maxLog) * w;
  const y = (f) => pad + (1 - f) * h;
  for (const [key, colour] of [["lower_fraction", "#2e86c1"], ["upper_fraction", "#c0392b"]]) {
    ctx.strokeStyle = colour;
    ctx.lineWidth = 2;
    ctx.beginPath();
    points.forEach((p, i) => (i ? ctx.lineTo(x(i), y(p[key])) : ctx.moveTo(x(i), y(p[key]))));
    ctx.stroke();
  }
  let last = null;
  points.forEach((p, i) => {
    if (p.regime !== last) {
      ctx.fillStyle = "#777";
      ctx.fillRect(x(i), pad, 1, h);
      ctx.fillText(p.regime, x(i) + 3, pad + h - 6 - 14 * (i % 3));
      last = p.regime;
    }
  });
}

function drawGraph(n, edges) {
  const c = $("graph");
  const ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  const r = c.width / 2 - 20;
  const pos = [...Array(n).keys()].map((i) => {
    const a = (2 * Math.PI * i) / Math.max(n, 1) - Math.PI / 2;
    return [c.width / 2 + r * Math.cos(a), c.height / 2 + r * Math.sin(a)];
  });
  ctx.strokeStyle = "rgba(40, 80, 140, 0.25)";
  for (const [u, v] of edges) {
    ctx.beginPath();
    ctx.moveTo(...pos[u]);
    ctx.lineTo(...pos[v]);
    ctx.stroke();
  }
  ctx.fillStyle = "#1b4f72";
  for (const [px, py] of pos) {
    ctx.beginPath();
    ctx.arc(px, py, 4, 0, 2 * Math.PI);
    ctx.fill();
  }
}

function guard(outId, f) {
  return (ev) => {
    ev.preventDefault();
    try {
      f();
    } catch (e) {
      show(outId, String(e.message ?? e), false);
    }
  };
}

await init();

$("curve-form").addEventListener("submit", guard("curve-out", () => {
  const pts = JSON.parse(bounds_curve(num("curve-n"), num("curve-eps"), num("curve-points")));
  plotCurve(pts);
  const regimes = [...new Set(pts.map((p) => p.regime))].join(", ");
  show("curve-out", `${pts.length} points; regimes crossed: ${regimes}`);
}));

$("thr-form").addEventListener("submit", guard("thr-out", () => {
  const r = JSON.parse(threshold(num("thr-n"), num("thr-p"), num("thr-r"), num("thr-s"), num("thr-t")));
  const verdict = r.holds ? "holds" : "fails";
  show("thr-out", `${verdict}: 3 ln n = ${r.lhs.toFixed(4)}, p^s min(r/s, t) = ${r.rhs.toFixed(4)}, ` +
    `footprint r + st = ${r.footprint}`, r.holds);
}));

$("build-form").addEventListener("submit", guard("build-out", () => {
  const n = num("build-n");
  const r = JSON.parse(construct(n, num("build-m"), num("build-seed"), $("build-scaled").checked));
  drawGraph(n, r.edge_list);
  const lines = [
    `${r.regime}: ${r.edges} edges, ${r.missing_edges} missing`,
    `verified: ${r.verified} (${r.method}), domination certificate: ${r.cert}`,
    r.feasible ? "construction preconditions hold" : `fallback: ${r.reason}`,
    ...r.notes,
    `graph6: ${r.graph6}`,
  ];
  show("build-out", lines.join("\n"), r.verified);
}));

$("curve-form").requestSubmit();
$("thr-form").requestSubmit();
