// Plain-canvas front end for the wasm exports; no framework, no bundler.
// Build the module first (see README):
//   wasm-pack build crates/aqrm-web --target web --out-dir ../../www/pkg
import init, { scan_spectrum, potential_profile, wavefunction } from "./pkg/aqrm_web.js";

const PALETTE = ["#5b9bd5", "#ed7d31", "#70ad47", "#ffc000", "#b55fb5", "#4ac7c7", "#d1605e", "#9aa0a8"];

const errorBox = document.getElementById("error");

function showError(err) {
  errorBox.textContent = String(err?.message ?? err);
  errorBox.style.display = "block";
}

function clearError() {
  errorBox.style.display = "none";
}

function num(id) {
  const v = Number(document.getElementById(id).value);
  if (!Number.isFinite(v)) throw new Error(`field ${id} is not a number`);
  return v;
}

// Margins and tick layout for every plot.
function frame(canvas, xmin, xmax, ymin, ymax) {
  const ctx = canvas.getContext("2d");
  const L = 64, R = 16, T = 14, B = 34;
  const W = canvas.width, H = canvas.height;
  if (ymax === ymin) { ymax += 1; ymin -= 1; }
  const sx = x => L + ((x - xmin) / (xmax - xmin)) * (W - L - R);
  const sy = y => H - B - ((y - ymin) / (ymax - ymin)) * (H - T - B);
  ctx.clearRect(0, 0, W, H);
  ctx.strokeStyle = "#2c313a";
  ctx.fillStyle = "#9aa0a8";
  ctx.font = "12px system-ui";
  ctx.lineWidth = 1;
  ctx.strokeRect(L, T, W - L - R, H - T - B);
  for (let i = 0; i <= 4; i++) {
    const x = xmin + (i / 4) * (xmax - xmin);
    const y = ymin + (i / 4) * (ymax - ymin);
    ctx.textAlign = "center";
    ctx.fillText(x.toPrecision(3), sx(x), H - B + 16);
    ctx.textAlign = "right";
    ctx.fillText(y.toPrecision(3), L - 6, sy(y) + 4);
  }
  return { ctx, sx, sy, T, B, L, R, W, H };
}

function polyline(f, xs, ys, color, dash = []) {
  f.ctx.strokeStyle = color;
  f.ctx.lineWidth = 1.6;
  f.ctx.setLineDash(dash);
  f.ctx.beginPath();
  xs.forEach((x, i) => {
    if (i === 0) f.ctx.moveTo(f.sx(x), f.sy(ys[i]));
    else f.ctx.lineTo(f.sx(x), f.sy(ys[i]));
  });
  f.ctx.stroke();
  f.ctx.setLineDash([]);
}

function legend(f, entries) {
  let y = f.T + 16;
  f.ctx.textAlign = "left";
  for (const [label, color] of entries) {
    f.ctx.strokeStyle = color;
    f.ctx.lineWidth = 2;
    f.ctx.beginPath();
    f.ctx.moveTo(f.L + 10, y - 4);
    f.ctx.lineTo(f.L + 34, y - 4);
    f.ctx.stroke();
    f.ctx.fillStyle = "#e6e6e6";
    f.ctx.fillText(label, f.L + 40, y);
    y += 16;
  }
}

function extent(arrays) {
  let lo = Infinity, hi = -Infinity;
  for (const a of arrays) for (const v of a) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  const pad = 0.05 * (hi - lo || 1);
  return [lo - pad, hi + pad];
}

async function onSubmit(formId, handler) {
  const form = document.getElementById(formId);
  form.addEventListener("submit", async ev => {
    ev.preventDefault();
    const button = form.querySelector("button");
    button.disabled = true;
    clearError();
    try {
      // Yield one frame so the disabled state paints before the solve.
      await new Promise(r => requestAnimationFrame(r));
      handler();
    } catch (err) {
      showError(err);
    } finally {
      button.disabled = false;
    }
  });
}

function drawScan() {
  const data = JSON.parse(scan_spectrum(
    num("scan-delta"), num("scan-eta"),
    num("scan-min"), num("scan-max"),
    num("scan-steps"), num("scan-levels")));
  const canvas = document.getElementById("scan-canvas");
  const levels = data.energies[0].length;
  const series = Array.from({ length: levels }, (_, k) => data.energies.map(row => row[k]));
  const [ymin, ymax] = extent(series);
  const f = frame(canvas, data.values[0], data.values.at(-1), ymin, ymax);
  if (data.values[0] < 1 && data.values.at(-1) > 1) {
    polyline(f, [1, 1], [ymin, ymax], "#555c66", [3, 4]);
  }
  series.forEach((ys, k) => polyline(f, data.values, ys, PALETTE[k % PALETTE.length]));
  legend(f, series.map((_, k) => [`E${k}`, PALETTE[k % PALETTE.length]]));
}

function drawPotential() {
  const data = JSON.parse(potential_profile(num("pot-delta"), num("pot-g"), num("pot-eta"), 501));
  const canvas = document.getElementById("pot-canvas");
  const [ymin, ymax] = extent([data.v]);
  const f = frame(canvas, data.xi[0], data.xi.at(-1), ymin, ymax);
  polyline(f, data.xi, data.v, PALETTE[0]);
  f.ctx.fillStyle = PALETTE[1];
  for (const m of data.minima) {
    f.ctx.beginPath();
    f.ctx.arc(f.sx(m.xi), f.sy(m.v), 4, 0, 2 * Math.PI);
    f.ctx.fill();
  }
  if (data.barrier) {
    f.ctx.fillStyle = PALETTE[3];
    f.ctx.beginPath();
    f.ctx.arc(f.sx(data.barrier.xi), f.sy(data.barrier.v), 4, 0, 2 * Math.PI);
    f.ctx.fill();
  }
  const info = document.getElementById("pot-info");
  const bits = [`shape: ${data.shape}`, `g/g_c = ${data.g_over_gc.toFixed(3)}`];
  if (data.offset !== null) bits.push(`well offset = ${data.offset.toFixed(4)}`);
  if (data.matched_level !== null) bits.push(`2η matches level n = ${data.matched_level}`);
  info.textContent = bits.join(" · ");
}

function drawWavefunction() {
  const data = JSON.parse(wavefunction(
    num("wf-delta"), num("wf-g"), num("wf-eta"), num("wf-level"), 801));
  const canvas = document.getElementById("wf-canvas");
  const [ymin, ymax] = extent([data.up, data.down, data.density]);
  const f = frame(canvas, data.xi[0], data.xi.at(-1), ymin, ymax);
  polyline(f, [data.xi[0], data.xi.at(-1)], [0, 0], "#555c66", [3, 4]);
  polyline(f, data.xi, data.up, PALETTE[0]);
  polyline(f, data.xi, data.down, PALETTE[1], [6, 4]);
  polyline(f, data.xi, data.density, PALETTE[2]);
  legend(f, [["Ψ↑", PALETTE[0]], ["Ψ↓", PALETTE[1]], ["|Ψ|²", PALETTE[2]]]);
  document.getElementById("wf-info").textContent =
    `level ${data.level}: E = ${data.energy.toFixed(6)} (adiabatic, includes the +½ zero point)`;
}

await init();
onSubmit("scan-form", drawScan);
onSubmit("pot-form", drawPotential);
onSubmit("wf-form", drawWavefunction);
try {
  drawScan();
  drawPotential();
  drawWavefunction();
} catch (err) {
  showError(err);
}
