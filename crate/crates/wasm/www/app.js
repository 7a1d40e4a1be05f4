import init, { analyze, mixing_curve, search_trace } from "./pkg/robustkit_wasm.js";

const $ = (id) => document.getElementById(id);
const fmt = (x) => (x === null || x === undefined ? "n/a" : x.toFixed(6));

function weights() {
  return Float64Array.from(document.querySelectorAll("#sliders input"), (el) => Number(el.value));
}

function buildSliders() {
  const n = Number($("dim").value);
  const box = $("sliders");
  box.innerHTML = "";
  for (let i = 0; i < n; i++) {
    const label = document.createElement("label");
    label.textContent = `a${i + 1} `;
    const input = document.createElement("input");
    input.type = "range";
    input.min = "0";
    input.max = "1";
    input.step = "0.001";
    input.value = i === 0 ? "1" : (0.6 / i).toFixed(3);
    input.addEventListener("input", refresh);
    label.appendChild(input);
    box.appendChild(label);
  }
}

function drawMatrix(canvas, m) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (!m) {
    ctx.fillStyle = "#999";
    ctx.fillText("product state", 10, 20);
    return;
  }
  const d = m.length;
  const cell = canvas.width / d;
  const peak = Math.max(1e-12, ...m.flat().map(Math.abs));
  for (let i = 0; i < d; i++) {
    for (let j = 0; j < d; j++) {
      const v = m[i][j] / peak;
      const s = Math.round(255 * (1 - Math.min(1, Math.abs(v))));
      ctx.fillStyle = v >= 0 ? `rgb(${s},${s},255)` : `rgb(255,${s},${s})`;
      ctx.fillRect(j * cell, i * cell, cell, cell);
    }
  }
  ctx.strokeStyle = "#eee";
  for (let k = 0; k <= d; k++) {
    ctx.beginPath(); ctx.moveTo(k * cell, 0); ctx.lineTo(k * cell, canvas.height); ctx.stroke();
    ctx.beginPath(); ctx.moveTo(0, k * cell); ctx.lineTo(canvas.width, k * cell); ctx.stroke();
  }
}

function axes(ctx, w, h, pad, yLo, yHi) {
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#888";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#555";
  ctx.font = "11px sans-serif";
  ctx.fillText(yHi.toFixed(3), 2, pad + 4);
  ctx.fillText(yLo.toFixed(3), 2, h - pad);
}

function drawCurve(data) {
  const canvas = $("curve");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 36;
  const all = data.curves.flatMap((c) => c.min_eigenvalue);
  const lo = Math.min(...all, 0);
  const hi = Math.max(...all, 0);
  const x = (a) => pad + a * (w - 2 * pad);
  const y = (v) => h - pad - ((v - lo) / (hi - lo || 1)) * (h - 2 * pad);
  axes(ctx, w, h, pad, lo, hi);
  ctx.strokeStyle = "#bbb";
  ctx.setLineDash([4, 4]);
  ctx.beginPath(); ctx.moveTo(pad, y(0)); ctx.lineTo(w - pad, y(0)); ctx.stroke();
  ctx.beginPath(); ctx.moveTo(x(data.o), pad); ctx.lineTo(x(data.o), h - pad); ctx.stroke();
  ctx.setLineDash([]);
  ctx.fillText("a = 0", pad, h - pad + 14);
  ctx.fillText("a = 1", w - pad - 24, h - pad + 14);
  ctx.fillText("O", x(data.o) - 3, pad - 4);
  const colors = ["#2a6fdb", "#d9822b"];
  data.curves.forEach((c, k) => {
    ctx.strokeStyle = colors[k];
    ctx.lineWidth = 2;
    ctx.beginPath();
    c.min_eigenvalue.forEach((v, i) => {
      const px = x(data.a[i]);
      const py = y(v);
      i === 0 ? ctx.moveTo(px, py) : ctx.lineTo(px, py);
    });
    ctx.stroke();
    ctx.lineWidth = 1;
  });
  $("curve-stats").textContent = data.curves
    .map((c) => `${c.mixer}: largest PPT weight ${fmt(c.max_a)}, witness bound ${fmt(c.witness_bound_a)}`)
    .join(" | ");
}

function drawTrace(data) {
  const canvas = $("trace");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 36;
  const pts = data.trace.slice();
  const last = Math.max(1, data.iterations);
  pts.push([last, data.best_a]);
  const hi = Math.max(data.o, data.best_a) * 1.05;
  const lo = Math.min(...pts.map((p) => p[1])) * 0.95;
  const x = (it) => pad + (it / last) * (w - 2 * pad);
  const y = (v) => h - pad - ((v - lo) / (hi - lo || 1)) * (h - 2 * pad);
  axes(ctx, w, h, pad, lo, hi);
  ctx.strokeStyle = "#bbb";
  ctx.setLineDash([4, 4]);
  ctx.beginPath(); ctx.moveTo(pad, y(data.o)); ctx.lineTo(w - pad, y(data.o)); ctx.stroke();
  ctx.setLineDash([]);
  ctx.fillText("O", w - pad + 4, y(data.o) + 4);
  ctx.strokeStyle = "#2a6fdb";
  ctx.lineWidth = 2;
  ctx.beginPath();
  pts.forEach(([it, a], i) => {
    if (i === 0) { ctx.moveTo(x(it), y(a)); return; }
    ctx.lineTo(x(it), y(pts[i - 1][1]));
    ctx.lineTo(x(it), y(a));
  });
  ctx.stroke();
  ctx.lineWidth = 1;
  $("trace-stats").textContent =
    `best weight ${fmt(data.best_a)} vs O = ${fmt(data.o)}; largest PPT weight examined ${fmt(data.max_ppt_a_examined)}` +
    (data.ppt_relaxation ? " (PPT relaxation at n = 3)" : "");
}

function guard(fn) {
  try {
    $("error").textContent = "";
    fn();
  } catch (e) {
    $("error").textContent = String(e.message || e);
  }
}

function refresh() {
  guard(() => {
    const w = weights();
    const a = JSON.parse(analyze(w));
    $("coeffs").textContent = a.coeffs.map((c) => c.toFixed(4)).join(", ");
    $("r").textContent = fmt(a.r);
    $("o").textContent = fmt(a.o);
    $("negs").textContent = a.negatives.length
      ? a.negatives.map((e) => `${e.value.toFixed(4)} (${e.pair.join(",")})`).join("  ")
      : "none";
    drawMatrix($("state"), a.state);
    drawMatrix($("mixer"), a.gershgorin && a.gershgorin.mixer);
    drawMatrix($("mixture"), a.gershgorin && a.gershgorin.mixture);
    drawCurve(JSON.parse(mixing_curve(w, 201)));
  });
}

function runSearch() {
  guard(() => {
    const iters = Number($("iters").value);
    const seed = BigInt(Math.max(0, Math.floor(Number($("seed").value))));
    drawTrace(JSON.parse(search_trace(weights(), iters, seed, $("gseed").checked)));
  });
}

await init();
$("dim").addEventListener("change", () => { buildSliders(); refresh(); });
$("run").addEventListener("click", runSearch);
buildSliders();
refresh();
